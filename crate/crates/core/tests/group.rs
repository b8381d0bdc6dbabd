use std::collections::HashSet;

use aurum_core::approx;
use aurum_core::group::{self, GeneratorWord, SigmaNormalForm};
use aurum_core::quaternion::{self, QuatR};
use aurum_core::roots::{self, coxeter_generators, Dimension, Filtration, Side};
use aurum_core::sample;
use proptest::prelude::*;
use rayon::prelude::*;

#[test]
fn normal_forms_up_to_five_factors_are_unique() {
    let forms = group::all_normal_forms(5);
    // 24 (1 + 8 + 32 + 128 + 512 + 2048)
    assert_eq!(forms.len(), 65496);
    let values: Vec<QuatR> = forms
        .par_iter()
        .map(|f| {
            let x = f.evaluate();
            assert_eq!(&group::decompose(&x).unwrap(), f);
            x
        })
        .collect();
    let distinct: HashSet<&QuatR> = values.iter().collect();
    assert_eq!(distinct.len(), forms.len());
}

#[test]
fn decompose_of_k_has_no_factors() {
    let x = QuatR::from_scaled([(1, 0); 4], 1);
    let form = group::decompose(&x).unwrap();
    assert_eq!(form, SigmaNormalForm { w: x, factors: vec![] });
}

#[test]
fn decompose_rejects_non_units() {
    let x = QuatR::from_scaled([(1, 0), (1, 0), (0, 0), (0, 0)], 0);
    assert!(group::decompose(&x).is_err());
}

#[test]
fn generated_roots_decompose() {
    let f = Filtration::generate(2, Dimension::Four, 2).unwrap();
    for side in [Side::Dot, Side::DotPrime] {
        for x in f.roots(2, side).step_by(17) {
            let form = group::decompose(x).unwrap();
            assert_eq!(form.factors.len(), 3);
            assert_eq!(&form.evaluate(), x);
        }
    }
}

#[test]
fn rewrite_examples() {
    let g = coxeter_generators();
    let r = quaternion::reflect(&g[1], &g[0]).unwrap();
    assert_eq!(group::rewrite_to_base(&r).unwrap(), GeneratorWord(vec![2, 1, 2]));
    for (i, a) in g.iter().enumerate() {
        assert_eq!(group::rewrite_to_base(a).unwrap(), GeneratorWord(vec![i as u8 + 1]));
        assert_eq!(group::rewrite_to_base(&-a).unwrap(), GeneratorWord(vec![i as u8 + 1]));
    }
}

#[test]
fn transport_words_reach_generated_roots() {
    let f = Filtration::generate(3, Dimension::Four, 3).unwrap();
    let base = group::base_transport_words();
    for side in [Side::Dot, Side::DotPrime] {
        for x in f.roots(3, side).step_by(997) {
            let w = group::transport_word(&f, x, &base).unwrap();
            assert_eq!(&quaternion::apply_word(&w, &QuatR::one()).unwrap(), x);
        }
    }
}

#[test]
fn iota_and_s_relations() {
    assert_eq!(group::relation_check_s(), Ok(()));
    assert_eq!(group::iota_check(), Ok(()));
    assert_eq!(group::normalizer_orders(), Ok((192, 576)));
    let x = QuatR::from_scaled([(1, 0), (0, 1), (2, -1), (0, 0)], 2);
    assert_eq!(group::iota(&group::iota(&x)), x);
}

#[test]
fn published_table_is_reproduced() {
    let computed: HashSet<_> = group::four_cc_products(false).into_iter().collect();
    let published: HashSet<_> = group::published_cc_table().into_iter().collect();
    assert_eq!(computed.len(), 16);
    assert_eq!(computed, published);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_forms_round_trip(seed in any::<u64>(), n in 0usize..12) {
        let form = group::random_normal_form(&mut sample::rng(seed), n);
        let x = form.evaluate();
        prop_assert!(x.is_unit());
        prop_assert_eq!(group::decompose(&x).unwrap(), form);
    }

    /// Every root of `Delta ∪ Delta'` rewritten in generators reflects like itself.
    #[test]
    fn rewritten_roots_act_alike(i in 0usize..216) {
        let mut all: Vec<QuatR> = roots::gen_delta(Dimension::Four, false).iter().cloned().collect();
        all.extend(roots::dot_delta(Dimension::Four, true).iter().cloned());
        let a = &all[i];
        let w = group::rewrite_to_base(a).unwrap();
        prop_assert_eq!(w.0.len() % 2, 1);
        prop_assert!(approx::same_action(&w.roots(), std::slice::from_ref(a)).unwrap());
    }
}
