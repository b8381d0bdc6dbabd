use aurum_core::approx::{self, MirrorSet, Pivot, DEFAULT_MAX_ITER};
use aurum_core::group;
use aurum_core::quaternion::{self, QuatR};
use aurum_core::roots::{Dimension, Filtration};
use aurum_core::{sample, Error};
use proptest::prelude::*;
use std::sync::OnceLock;

fn setup() -> &'static (Filtration, MirrorSet) {
    static S: OnceLock<(Filtration, MirrorSet)> = OnceLock::new();
    S.get_or_init(|| {
        let f = Filtration::generate(2, Dimension::Four, 2).unwrap();
        let m = MirrorSet::build(&f, 2).unwrap();
        (f, m)
    })
}

#[test]
fn witness_keeps_one_at_a_vertex() {
    let (_, m) = setup();
    assert!(m.contains_exact(&QuatR::one()));
    let z = m.witness();
    assert!(m.contains(&z, 0.0));
    for a in &m.roots {
        assert!(a.coords()[0].sign() <= 0, "{a}");
    }
}

#[test]
fn explicit_witness_is_checked() {
    let (f, _) = setup();
    assert!(matches!(MirrorSet::build_with(f, 2, Some([1, 0, 0, 0])), Err(Error::DegenerateWitness(2))));
    assert!(MirrorSet::build_with(f, 2, Some([1 << 20, 4, 2, 1])).is_ok());
    assert!(matches!(MirrorSet::build(f, 3), Err(Error::LevelGuard { .. })));
    assert!(MirrorSet::build(f, 0).is_err());
}

#[test]
fn non_unit_targets_are_rejected() {
    let (_, m) = setup();
    assert!(matches!(approx::approximate(&[1.0, 1.0, 0.0, 0.0], m, 10), Err(Error::NonUnit(_))));
    assert!(approx::approximate(&[f64::NAN, 0.0, 0.0, 0.0], m, 10).is_err());
    let two = QuatR::one().scale(&aurum_core::DyadicGolden::from_int(2));
    assert!(approx::approximate_exact(&two, m, 10).is_err());
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let (_, m) = setup();
    let t = sample::haar_quaternions(50, 3).into_iter().find(|t| {
        approx::approximate(t, m, DEFAULT_MAX_ITER).unwrap().word.len() > 2
    });
    let r = approx::approximate(&t.unwrap(), m, 1).unwrap();
    assert!(!r.converged);
    assert_eq!(r.word.len(), 1);
}

#[test]
fn boundary_targets_are_nudged_into_the_chamber() {
    let (_, m) = setup();
    // a point on the mirror of a pure root: orthogonal to it, off the identity
    let a = m.roots.iter().find(|a| a.coords()[0].is_zero()).unwrap().to_f64().unwrap();
    let b = if a[1].abs() + a[2].abs() > 0.0 { [0.0, -a[2], a[1], 0.0] } else { [0.0, 0.0, -a[3], a[2]] };
    let nb = sample::norm(&b);
    let x: [f64; 4] = std::array::from_fn(|n| if n == 0 { 0.6 } else { 0.8 * b[n] / nb });
    assert!(sample::dot(&a, &x).abs() < 1e-15);
    let r = approx::approximate(&x, m, DEFAULT_MAX_ITER).unwrap();
    assert!(r.converged && m.contains(&r.final_point, 1e-12));
    assert!(r.residual < 0.2);
}

#[test]
fn generator_expansion_acts_alike() {
    let (f, m) = setup();
    let r = approx::approximate(&[0.3, -0.5, 0.1, 0.806225774829855], m, DEFAULT_MAX_ITER).unwrap();
    let basic = approx::expand_word(&r.word, f).unwrap();
    let gens = approx::expand_to_generators(&basic).unwrap();
    assert!(gens.iter().all(|&g| (1..=5).contains(&g)));
    assert!(gens.windows(2).all(|w| w[0] != w[1]));
    let roots = group::GeneratorWord(gens).roots();
    assert!(approx::same_action(&roots, &r.word).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn descent_is_certified(seed in any::<u64>(), dot in any::<bool>()) {
        let (f, m) = setup();
        let t = sample::haar_quaternions(1, seed)[0];
        let rule = if dot { Pivot::MaxDot } else { Pivot::MaxDecrease };
        let r = approx::approximate_with(&t, m, DEFAULT_MAX_ITER, rule).unwrap();
        prop_assert!(r.converged);
        prop_assert!(m.contains(&r.final_point, 1e-12));
        prop_assert!(r.approximant.is_unit());
        // the word moves the target to the final point
        let rev: Vec<QuatR> = r.word.iter().rev().cloned().collect();
        prop_assert_eq!(&approx::emit_product(&r.word), &quaternion::apply_word(&rev, &QuatR::one()).unwrap());
        let d = sample::distance(&r.final_point, &[1.0, 0.0, 0.0, 0.0]);
        prop_assert!((d - r.residual_signed).abs() < 1e-10);
        prop_assert!(r.residual <= r.residual_signed && r.residual <= r.residual_negated);
        // level budget
        let budget: u32 = r.word.iter().map(|a| 2 * a.level()).sum();
        prop_assert!(r.approximant.level() <= budget);
        let expanded = approx::expand_word(&r.word, f).unwrap();
        prop_assert!(approx::same_action(&expanded, &r.word).unwrap());
    }

    #[test]
    fn descent_is_deterministic(seed in any::<u64>()) {
        let (_, m) = setup();
        let t = sample::haar_quaternions(1, seed)[0];
        let a = approx::approximate(&t, m, DEFAULT_MAX_ITER).unwrap();
        let b = approx::approximate(&t, m, DEFAULT_MAX_ITER).unwrap();
        prop_assert_eq!(a.word, b.word);
    }

    #[test]
    fn exact_targets_land_exactly_in_the_chamber(seed in any::<u64>(), n in 0usize..5) {
        let (_, m) = setup();
        let x = group::random_normal_form(&mut sample::rng(seed), n).evaluate();
        let r = approx::approximate_exact(&x, m, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(r.converged);
        let end = quaternion::apply_word(&r.word, &x).unwrap();
        prop_assert!(m.contains_exact(&end));
    }
}
