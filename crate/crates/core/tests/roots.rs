use std::collections::HashSet;

use aurum_core::golden::DyadicGolden;
use aurum_core::quaternion::{self, QuatR};
use aurum_core::roots::{self, half_vector, Dimension, Family, Filtration, RootTag, Side};
use aurum_core::verify;
use proptest::prelude::*;

#[test]
fn reflection_example_shifts_level() {
    let a = half_vector([(0, 0), (1, 0), (0, -1), (-1, 1)]);
    let x = half_vector([(0, 0), (1, 0), (1, -1), (0, 1)]);
    let tag = roots::classify(&quaternion::reflect(&a, &x).unwrap(), Dimension::Four).unwrap();
    assert_eq!((tag.level, tag.family), (2, Family::DotSPrime));
}

#[test]
fn level_one_is_the_tau_bearing_roots() {
    for dim in [Dimension::Four, Dimension::Three] {
        let f = Filtration::generate(1, dim, 1).unwrap();
        for (side, conj) in [(Side::Dot, false), (Side::DotPrime, true)] {
            let got: HashSet<&QuatR> = f.roots(1, side).collect();
            let dot = roots::dot_delta(dim, conj);
            assert_eq!(got, dot.iter().collect::<HashSet<_>>());
        }
    }
}

#[test]
fn half_lattice_enumeration_is_delta_union() {
    let units = verify::enumerate_half_lattice_units();
    assert_eq!(units.len(), 216);
    assert!(units.iter().all(QuatR::is_unit));
    // classification of the 216: 24 in K, 96 + 96 at level 1
    let mut k = 0;
    let mut fams = [0; 2];
    for x in &units {
        match roots::classify(x, Dimension::Four).unwrap().family {
            Family::K0 | Family::Kn => k += 1,
            Family::DotS => fams[0] += 1,
            Family::DotSPrime => fams[1] += 1,
        }
    }
    assert_eq!((k, fams), (24, [96, 96]));
}

#[test]
fn every_generated_root_has_the_expected_tag() {
    let f = Filtration::generate(3, Dimension::Four, 3).unwrap();
    for n in 1..=3 {
        for side in [Side::Dot, Side::DotPrime] {
            let want = RootTag { level: n, family: side.family(), dimension: Dimension::Four };
            for x in f.roots(n, side) {
                assert_eq!(roots::classify(x, Dimension::Four).unwrap(), want, "{x}");
            }
        }
    }
}

#[test]
fn three_dimensional_filtration_is_pure() {
    let f = Filtration::generate(4, Dimension::Three, 4).unwrap();
    for n in 1..=4 {
        for side in [Side::Dot, Side::DotPrime] {
            assert!(f.roots(n, side).all(|x| x.is_pure() && x.is_unit()));
        }
    }
}

/// Elements of `K_2`, reached by one reflection from level 2.
fn k_two(f: &Filtration) -> HashSet<QuatR> {
    let dot = roots::dot_delta(Dimension::Four, false).sign_classes();
    let mut out = HashSet::new();
    for side in [Side::Dot, Side::DotPrime] {
        for x in f.roots(2, side) {
            for a in &dot {
                let y = quaternion::reflect(a, x).unwrap();
                let tag = roots::classify(&y, Dimension::Four).unwrap();
                if tag.family == Family::Kn && tag.level == 2 {
                    out.insert(y);
                }
            }
        }
    }
    out
}

#[test]
fn k_n_keeps_its_level_and_feeds_s_n() {
    let f = Filtration::generate(2, Dimension::Four, 2).unwrap();
    let kn = k_two(&f);
    assert!(!kn.is_empty());
    let dot = roots::dot_delta(Dimension::Four, false).sign_classes();
    for x in &kn {
        let tags: Vec<RootTag> = dot
            .iter()
            .map(|a| roots::classify(&quaternion::reflect(a, x).unwrap(), Dimension::Four).unwrap())
            .collect();
        assert!(tags.iter().all(|t| t.level == 2), "{x}");
        assert!(tags.iter().any(|t| t.family == Family::DotS), "{x}");
    }
}

#[test]
fn alternating_reflections_raise_the_level() {
    let dot = roots::dot_delta(Dimension::Four, false).sign_classes();
    let dot_p = roots::dot_delta(Dimension::Four, true).sign_classes();
    for alpha in &dot {
        for beta in &dot_p {
            let tags = roots::infinite_order_witness(alpha, beta, 10).unwrap();
            let levels: Vec<u32> = tags.iter().map(|t| t.level).collect();
            assert_eq!(levels, (2..12).collect::<Vec<_>>(), "{alpha} {beta}");
        }
    }
}

#[test]
fn three_dimensional_droppers_lower_the_level() {
    let f = Filtration::generate(3, Dimension::Three, 3).unwrap();
    for x in f.roots(3, Side::Dot) {
        let d = roots::three_droppers(x, Dimension::Three).unwrap();
        assert!(!d.is_empty());
        for a in d {
            let tag = roots::classify(&quaternion::reflect(&a, x).unwrap(), Dimension::Three).unwrap();
            assert_eq!((tag.level, tag.family), (2, Family::DotSPrime));
        }
    }
}

#[test]
fn level_guard_and_env_default() {
    assert!(Filtration::generate(4, Dimension::Four, 3).is_err());
    assert!(roots::configured_max_level() >= 1);
}

#[test]
fn mirror_words_reflect_like_their_root() {
    let f = Filtration::generate(3, Dimension::Four, 3).unwrap();
    let probe = QuatR::from_scaled([(3, 1), (-1, 2), (0, 1), (5, -3)], 3);
    for x in f.roots(3, Side::DotPrime).step_by(509) {
        let word = f.generation(x).unwrap().mirror_word();
        assert_eq!(word.len(), 5);
        assert_eq!(quaternion::apply_word(&word, &probe).unwrap(), quaternion::reflect(x, &probe).unwrap());
    }
}

fn residue_vector() -> impl Strategy<Value = [(i64, i64); 4]> {
    prop::array::uniform4((-9i64..9, -9i64..9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    /// Non-units never classify, and units of the half lattice always do.
    #[test]
    fn classification_needs_a_unit(v in residue_vector(), k in 0u32..3) {
        let x = QuatR::from_scaled(v, k);
        prop_assert_eq!(roots::classify(&x, Dimension::Four).is_ok(), x.is_unit());
    }

    #[test]
    fn residues_scale(v in residue_vector()) {
        let x = QuatR::from_scaled(v, 0);
        let half = x.scale(&DyadicGolden::half());
        prop_assert_eq!(roots::residue(&half, 1), roots::residue(&x, 0));
    }
}
