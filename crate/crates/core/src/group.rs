//! `Sigma` as a group under quaternion multiplication: the finite groups
//! `K`, `Delta`, `Delta'`, coset representatives, the residue sets `E`, `E'`,
//! the amalgamated normal form, and rewriting of root reflections into the
//! five generating reflections.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use dashu_int::IBig;
use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{DyadicGolden, GoldenInt};
use crate::quaternion::{self, QuatR};
use crate::roots::{self, classify, coxeter_generators, Dimension, Family, Filtration, RootSet};

/// Outcome of an executable check: `Err` carries a human-readable counterexample.
pub type Check<T = ()> = std::result::Result<T, String>;

const T: (i64, i64) = (0, 1);
const TP: (i64, i64) = (1, -1);

/// Representatives of the four nontrivial right cosets `K c` in `Delta`,
/// or in `Delta'` when `conjugated`.
pub fn coset_reps(conjugated: bool) -> [QuatR; 4] {
    let reps = [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]].map(|[s1, s2, s3]| {
        let q = QuatR::from_scaled([(0, 0), (s1, 0), (s2 * TP.0, s2 * TP.1), (s3 * T.0, s3 * T.1)], 1);
        if conjugated {
            q.galois()
        } else {
            q
        }
    });
    reps
}

fn k_cached() -> &'static RootSet {
    static K: OnceLock<RootSet> = OnceLock::new();
    K.get_or_init(roots::k_roots)
}

/// Closure of `set` under products and inverses; returns the order.
pub fn group_closure_check(set: &RootSet) -> Check<usize> {
    for x in set.iter() {
        if !set.contains(&x.conj()) {
            return Err(format!("inverse of {x} is missing"));
        }
        for y in set.iter() {
            let p = x * y;
            if !set.contains(&p) {
                return Err(format!("{x} * {y} = {p} leaves the set"));
            }
        }
    }
    Ok(set.len())
}

/// `K Delta-dot ⊂ Delta-dot` and `K Delta-dot' ⊂ Delta-dot'`.
pub fn k_action_check() -> Check {
    let k = roots::k_roots();
    for conj in [false, true] {
        let dot = roots::dot_delta(Dimension::Four, conj);
        for w in k.iter() {
            for d in dot.iter() {
                if !dot.contains(&(w * d)) {
                    return Err(format!("{w} * {d} is not in the tau-bearing roots"));
                }
            }
        }
    }
    Ok(())
}

/// `Delta` and `Delta'` split into `K` and the four cosets `K c`.
pub fn coset_cover_check() -> Check {
    let k = roots::k_roots();
    for conj in [false, true] {
        let delta = roots::gen_delta(Dimension::Four, conj);
        let mut seen: HashSet<QuatR> = k.elements.iter().cloned().collect();
        for c in coset_reps(conj) {
            for w in k.iter() {
                let x = w * &c;
                if !delta.contains(&x) || !seen.insert(x.clone()) {
                    return Err(format!("coset element {x} is outside Delta or repeated"));
                }
            }
        }
        if seen.len() != delta.len() {
            return Err(format!("cosets cover {} of {} roots", seen.len(), delta.len()));
        }
    }
    Ok(())
}

/// A vector of `(Z[tau] / 4 Z[tau])^4` in `x + y tau` coordinates, entries in `0..4`.
pub type Mod4Vector = [(u8, u8); 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EClass {
    E,
    EPrime,
    Neither,
}

fn mod4(x: &IBig) -> u8 {
    let r = x % IBig::from(4);
    let r = if r < IBig::ZERO { r + IBig::from(4) } else { r };
    u8::try_from(r).expect("residue in 0..4")
}

pub fn reduce_mod4(v: &[GoldenInt; 4]) -> Mod4Vector {
    std::array::from_fn(|n| (mod4(v[n].a()), mod4(v[n].b())))
}

/// Membership in `E` or `E'`: all `x_i` odd, all `y_i` even, an odd number
/// of `y_i = 2`; an even number of `x_i = 1` for `E`, odd for `E'`.
pub fn e_class(r: &Mod4Vector) -> EClass {
    if !r.iter().all(|&(x, y)| x % 2 == 1 && y % 2 == 0) {
        return EClass::Neither;
    }
    if r.iter().filter(|&&(_, y)| y == 2).count() % 2 == 0 {
        return EClass::Neither;
    }
    if r.iter().filter(|&&(x, _)| x == 1).count() % 2 == 0 {
        EClass::E
    } else {
        EClass::EPrime
    }
}

pub fn e_membership(v: &[GoldenInt; 4]) -> EClass {
    e_class(&reduce_mod4(v))
}

/// All 64 elements of `E` (or `E'`).
pub fn e_set(prime: bool) -> Vec<Mod4Vector> {
    let want = if prime { EClass::EPrime } else { EClass::E };
    let mut out = Vec::new();
    for xs in 0..16u32 {
        for ys in 0..16u32 {
            let v: Mod4Vector = std::array::from_fn(|n| {
                (if xs & (1 << n) != 0 { 1 } else { 3 }, if ys & (1 << n) != 0 { 2 } else { 0 })
            });
            if e_class(&v) == want {
                out.push(v);
            }
        }
    }
    out
}

fn integral_quat(v: &[GoldenInt; 4]) -> QuatR {
    QuatR(v.clone().map(DyadicGolden::from_golden))
}

fn lift(r: &Mod4Vector, shift: [(i64, i64); 4]) -> [GoldenInt; 4] {
    std::array::from_fn(|n| {
        GoldenInt::new(r[n].0 as i64 + 4 * shift[n].0, r[n].1 as i64 + 4 * shift[n].1)
    })
}

fn integral_numerators(q: &QuatR) -> Option<[GoldenInt; 4]> {
    let c = q.coords();
    Some([c[0].scaled_numerator(0)?, c[1].scaled_numerator(0)?, c[2].scaled_numerator(0)?, c[3].scaled_numerator(0)?])
}

/// `(1/2) E E = E` and `(1/2) E' E' = E'`, checked on all 4096 products, with
/// canonical lifts and with a second set of lifts shifted by multiples of 4.
/// Also checks `|E| = |E'| = 64`, disjointness, and that every element is hit.
pub fn ee_halfproduct_check() -> Check {
    let shifted = [(1, -1), (-1, 2), (0, 1), (2, 0)];
    for prime in [false, true] {
        let set = e_set(prime);
        if set.len() != 64 {
            return Err(format!("|E| = {}", set.len()));
        }
        let want = if prime { EClass::EPrime } else { EClass::E };
        let mut hit = HashSet::new();
        for a in &set {
            for b in &set {
                for (sa, sb) in [([(0, 0); 4], [(0, 0); 4]), (shifted, [(0, 0), (1, 1), (-1, 0), (0, -1)])] {
                    let p = &integral_quat(&lift(a, sa)) * &integral_quat(&lift(b, sb));
                    let half = p.scale(&DyadicGolden::half());
                    let Some(v) = integral_numerators(&half) else {
                        return Err(format!("product of {a:?} and {b:?} is not divisible by 2"));
                    };
                    let r = reduce_mod4(&v);
                    if e_class(&r) != want {
                        return Err(format!("(1/2) {a:?} {b:?} = {r:?} is not in the set"));
                    }
                    hit.insert(r);
                }
            }
        }
        if hit.len() != 64 {
            return Err(format!("half-products reach only {} elements", hit.len()));
        }
    }
    let e: HashSet<_> = e_set(false).into_iter().collect();
    if e_set(true).iter().any(|v| e.contains(v)) {
        return Err("E and E' intersect".into());
    }
    Ok(())
}

/// The 16 products `4 c c'` with `c ∈ C`, `c' ∈ C'`, in `C`-major order.
pub fn four_cc_products(c_first_conjugated: bool) -> Vec<[GoldenInt; 4]> {
    let (left, right) = (coset_reps(c_first_conjugated), coset_reps(!c_first_conjugated));
    let four = DyadicGolden::from_int(4);
    let mut out = Vec::new();
    for c in &left {
        for d in &right {
            let q = (c * d).scale(&four);
            out.push(integral_numerators(&q).expect("4 c c' is integral"));
        }
    }
    out
}

/// The 16 products `4 C C'` as printed in the source table, with `sqrt 5 = 2 tau - 1`.
pub fn published_cc_table() -> Vec<[GoldenInt; 4]> {
    // 5 encodes sqrt 5 and -5 its negative
    const ROWS: [[i64; 4]; 16] = [
        [1, -5, 5, 5],
        [3, -5, -1, 1],
        [-1, 3, 5, -1],
        [-1, -3, 1, 5],
        [3, -5, 1, -1],
        [1, -5, -5, -5],
        [1, 3, 1, 5],
        [1, -3, 5, -1],
        [-1, -3, 5, 1],
        [1, -3, -1, 5],
        [1, 5, 5, -5],
        [-3, -5, 1, 1],
        [-1, 3, -1, 5],
        [1, 3, 5, 1],
        [-3, -5, -1, -1],
        [1, 5, -5, 5],
    ];
    ROWS.iter()
        .map(|row| {
            row.map(|c| match c {
                5 => GoldenInt::sqrt5(),
                -5 => -GoldenInt::sqrt5(),
                n => GoldenInt::from_int(n),
            })
        })
        .collect()
}

/// `4 C C' ⊂ E`, `4 C' C ⊂ E'`, and the computed products agree with the
/// published table as sets.
pub fn cc_table_check() -> Check {
    let computed = four_cc_products(false);
    for (v, want) in [(computed.clone(), EClass::E), (four_cc_products(true), EClass::EPrime)] {
        if let Some(bad) = v.iter().find(|x| e_membership(x) != want) {
            return Err(format!("{bad:?} is not in {want:?}"));
        }
    }
    let a: HashSet<_> = computed.into_iter().collect();
    let b: HashSet<_> = published_cc_table().into_iter().collect();
    if a != b {
        return Err(format!("table mismatch: {} computed vs {} published entries in common", a.len(), a.intersection(&b).count()));
    }
    Ok(())
}

/// `x = w a_m ... a_1` with `w ∈ K` and the `a_i` alternating between `C`
/// and `C'`. `factors[0]` is `a_1`, the rightmost factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaNormalForm {
    pub w: QuatR,
    pub factors: Vec<QuatR>,
}

impl SigmaNormalForm {
    pub fn evaluate(&self) -> QuatR {
        self.factors.iter().rev().fold(self.w.clone(), |acc, a| &acc * a)
    }
}

/// Normal-form length read off from level and family: 0 on `K`, `2L - 1` on
/// the `tau`-bearing families at level `L`, and `2(L - 1)` on `K_L`, `L >= 2`.
fn normal_form_length(x: &QuatR) -> Result<usize> {
    let tag = classify(x, Dimension::Four)?;
    let l = tag.level as usize;
    Ok(match tag.family {
        Family::K0 => 0,
        Family::Kn if l <= 1 => 0,
        Family::Kn => 2 * (l - 1),
        Family::DotS | Family::DotSPrime => 2 * l - 1,
    })
}

/// Splits an element of `Sigma` into its normal form by peeling off the
/// rightmost coset representative, the unique one whose removal shortens
/// the normal-form length.
pub fn decompose(x: &QuatR) -> Result<SigmaNormalForm> {
    let mut len = normal_form_length(x)?;
    let candidates: Vec<(bool, QuatR)> = [false, true]
        .into_iter()
        .flat_map(|side| coset_reps(side).into_iter().map(move |c| (side, c)))
        .collect();
    let mut y = x.clone();
    let mut factors = Vec::with_capacity(len);
    let mut last_side: Option<bool> = None;
    while len > 0 {
        let step = candidates
            .iter()
            .filter(|(side, _)| last_side != Some(*side))
            .find_map(|(side, c)| {
                let z = &y * &c.conj();
                (normal_form_length(&z).ok()? == len - 1).then_some((*side, c.clone(), z))
            });
        let Some((side, c, z)) = step else {
            return Err(Error::NotInSigma(x.to_string()));
        };
        factors.push(c);
        last_side = Some(side);
        y = z;
        len -= 1;
    }
    if !k_cached().contains(&y) {
        return Err(Error::NotInSigma(x.to_string()));
    }
    Ok(SigmaNormalForm { w: y, factors })
}

/// Every normal form with at most `max_factors` factors.
pub fn all_normal_forms(max_factors: usize) -> Vec<SigmaNormalForm> {
    let k: Vec<QuatR> = roots::k_roots().elements.into_iter().collect();
    let mut sequences: Vec<Vec<(bool, usize)>> = vec![vec![]];
    let mut frontier = sequences.clone();
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for s in &frontier {
            for side in [false, true] {
                if s.last().is_some_and(|&(prev, _)| prev == side) {
                    continue;
                }
                for i in 0..4 {
                    let mut t = s.clone();
                    t.push((side, i));
                    next.push(t);
                }
            }
        }
        sequences.extend(next.iter().cloned());
        frontier = next;
    }
    let reps = [coset_reps(false), coset_reps(true)];
    let mut out = Vec::with_capacity(k.len() * sequences.len());
    for w in &k {
        for s in &sequences {
            out.push(SigmaNormalForm {
                w: w.clone(),
                factors: s.iter().map(|&(side, i)| reps[side as usize][i].clone()).collect(),
            });
        }
    }
    out
}

/// A uniformly chosen `w ∈ K` followed by `factors` coset representatives
/// with alternating sides; the first side is a coin flip.
pub fn random_normal_form<R: rand::Rng + ?Sized>(rng: &mut R, factors: usize) -> SigmaNormalForm {
    let k = k_cached();
    let w = k.iter().nth(rng.gen_range(0..k.len())).expect("K is nonempty").clone();
    let mut side: bool = rng.gen();
    let reps = [coset_reps(false), coset_reps(true)];
    let factors = (0..factors)
        .map(|_| {
            let c = reps[side as usize][rng.gen_range(0..4)].clone();
            side = !side;
            c
        })
        .collect();
    SigmaNormalForm { w, factors }
}

/// `s = r_u r_v = r_{u'} r_{v'}` with `u = (0, -1, tau', tau) / 2`,
/// `v = (0, tau', tau, -1) / 2`: both agree on the standard basis, `s`
/// cycles the last three coordinates, has order 3, and preserves `K`.
pub fn relation_check_s() -> Check {
    let u = QuatR::from_scaled([(0, 0), (-1, 0), TP, T], 1);
    let v = QuatR::from_scaled([(0, 0), TP, T, (-1, 0)], 1);
    let s = quaternion::word_product(&[v.clone(), u.clone()]).map_err(|e| e.to_string())?;
    let s_prime = quaternion::word_product(&[v.galois(), u.galois()]).map_err(|e| e.to_string())?;
    for n in 0..4 {
        let e = QuatR::basis(n);
        let (a, b) = (s.apply(&e), s_prime.apply(&e));
        if a != b {
            return Err(format!("r_u r_v and r_u' r_v' differ on e{}: {a} vs {b}", n + 1));
        }
        let want = QuatR::basis([0, 3, 1, 2][n]);
        if a != want {
            return Err(format!("s(e{}) = {a}, expected {want}", n + 1));
        }
    }
    let probe = QuatR::from_scaled([(1, 0), (2, 0), (3, 1), (4, -1)], 1);
    let cubed = s.apply(&s.apply(&s.apply(&probe)));
    if cubed != probe {
        return Err(format!("s^3 moves {probe} to {cubed}"));
    }
    let k = roots::k_roots();
    if let Some(bad) = k.iter().find(|x| !k.contains(&s.apply(x))) {
        return Err(format!("s sends {bad} outside K"));
    }
    if &u * &v != QuatR::from_scaled([(1, 0), (-1, 0), (-1, 0), (-1, 0)], 1) {
        return Err("u v differs from (1, -1, -1, -1) / 2".into());
    }
    Ok(())
}

/// Order of the group generated by permutations of `points` given as images.
fn permutation_closure(generators: &[Vec<usize>]) -> usize {
    let n = generators.first().map_or(0, Vec::len);
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Orders of `W(K)` and of `N(K) = <W(K), s>`, both acting faithfully on `K`.
pub fn normalizer_orders() -> Check<(usize, usize)> {
    let k: IndexSet<QuatR> = roots::k_roots().elements;
    let as_perm = |f: &dyn Fn(&QuatR) -> QuatR| -> Check<Vec<usize>> {
        k.iter()
            .map(|x| k.get_index_of(&f(x)).ok_or_else(|| format!("{x} leaves K")))
            .collect()
    };
    let mut gens = Vec::new();
    for a in (RootSet { dimension: Dimension::Four, elements: k.clone() }).sign_classes() {
        gens.push(as_perm(&|x| QuatR::reflect_unit(&a, x))?);
    }
    let w_k = permutation_closure(&gens);
    let u = QuatR::from_scaled([(0, 0), (-1, 0), TP, T], 1);
    let v = QuatR::from_scaled([(0, 0), TP, T, (-1, 0)], 1);
    gens.push(as_perm(&|x| QuatR::reflect_unit(&u, &QuatR::reflect_unit(&v, x)))?);
    Ok((w_k, permutation_closure(&gens)))
}

/// The swap of the last two coordinates.
pub fn iota(x: &QuatR) -> QuatR {
    let [a, b, c, d] = x.coords().clone();
    QuatR([a, b, d, c])
}

/// `iota` exchanges `Delta-dot` and `Delta-dot'` and fixes `K` setwise.
pub fn iota_check() -> Check {
    let dot = roots::dot_delta(Dimension::Four, false);
    let dot_p = roots::dot_delta(Dimension::Four, true);
    for (from, to) in [(&dot, &dot_p), (&dot_p, &dot)] {
        if let Some(x) = from.iter().find(|x| !to.contains(&iota(x))) {
            return Err(format!("iota({x}) is on the wrong side"));
        }
    }
    let k = roots::k_roots();
    if let Some(x) = k.iter().find(|x| !k.contains(&iota(x))) {
        return Err(format!("iota({x}) leaves K"));
    }
    Ok(())
}

/// A word over the five generating reflections, indices `1..=5`, in
/// application order (the first index acts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord(pub Vec<u8>);

impl GeneratorWord {
    pub fn roots(&self) -> Vec<QuatR> {
        let g = coxeter_generators();
        self.0.iter().map(|&i| g[i as usize - 1].clone()).collect()
    }

    pub fn apply(&self, x: &QuatR) -> QuatR {
        self.roots().iter().fold(x.clone(), |y, a| QuatR::reflect_unit(a, &y))
    }
}

/// Generator indices of `H4` and `H4'`.
const H4_GENS: [u8; 4] = [1, 2, 3, 4];
const H4_PRIME_GENS: [u8; 4] = [1, 2, 3, 5];

/// Breadth-first orbit of the generator roots under their own reflections,
/// up to sign. Maps each sign class to `(base generator, path)` with
/// `class = r_{path[last]} ... r_{path[0]} (base)`, shortest path first and
/// lexicographic among equals.
fn generator_orbit(gens: &[u8]) -> HashMap<QuatR, (u8, Vec<u8>)> {
    let all = coxeter_generators();
    let mut found: HashMap<QuatR, (u8, Vec<u8>)> = HashMap::new();
    let mut queue = VecDeque::new();
    for &b in gens {
        let r = all[b as usize - 1].oriented();
        if !found.contains_key(&r) {
            found.insert(r.clone(), (b, vec![]));
            queue.push_back(r);
        }
    }
    while let Some(x) = queue.pop_front() {
        let (b, path) = found[&x].clone();
        for &g in gens {
            let y = QuatR::reflect_unit(&all[g as usize - 1], &x).oriented();
            if !found.contains_key(&y) {
                let mut p = path.clone();
                p.push(g);
                found.insert(y.clone(), (b, p));
                queue.push_back(y);
            }
        }
    }
    found
}

fn orbits() -> &'static [HashMap<QuatR, (u8, Vec<u8>)>; 2] {
    static ORBITS: std::sync::OnceLock<[HashMap<QuatR, (u8, Vec<u8>)>; 2]> = std::sync::OnceLock::new();
    ORBITS.get_or_init(|| [generator_orbit(&H4_GENS), generator_orbit(&H4_PRIME_GENS)])
}

/// A generator word for the reflection `r_a`, `a ∈ Delta ∪ Delta'`:
/// `r_a = W r_b W^-1` with `b` a generator, written out as one word.
pub fn rewrite_to_base(a: &QuatR) -> Result<GeneratorWord> {
    let key = a.oriented();
    let tag = classify(a, Dimension::Four)?;
    if tag.level > 1 {
        return Err(Error::WrongFamily { expected: "a root of level at most 1".into(), found: tag.to_string() });
    }
    let (b, path) = orbits()
        .iter()
        .find_map(|orbit| orbit.get(&key))
        .ok_or_else(|| Error::NotInSigma(a.to_string()))?;
    let mut word: Vec<u8> = path.iter().rev().copied().collect();
    word.push(*b);
    word.extend(path.iter().copied());
    Ok(GeneratorWord(word))
}

/// Reflection words (in application order) sending `1` to `x` for every
/// `x ∈ Delta ∪ Delta'` (found by search) and every generated root of the
/// filtration up to level `n` (from generation records). Every word is
/// verified by application. Returns the number of elements covered.
pub fn transitivity_check(filtration: &Filtration, n: u32) -> Check<usize> {
    let one = QuatR::one();
    let base = base_transport_words();
    let mut targets: IndexSet<QuatR> = roots::gen_delta(Dimension::Four, false).elements;
    targets.extend(roots::gen_delta(Dimension::Four, true).elements);
    targets.extend(filtration.union_up_to(n));
    for x in &targets {
        let w = match base.get(x) {
            Some(w) => w.clone(),
            None => transport_word(filtration, x, &base).map_err(|e| e.to_string())?,
        };
        if quaternion::apply_word(&w, &one).map_err(|e| e.to_string())? != *x {
            return Err(format!("transport word for {x} is wrong"));
        }
    }
    Ok(targets.len())
}

/// Words sending `1` to each signed root of `Delta ∪ Delta'`, by breadth-first
/// search over reflections in the generators of `H4` and `H4'`.
pub fn base_transport_words() -> HashMap<QuatR, Vec<QuatR>> {
    let all = coxeter_generators();
    let mut found: HashMap<QuatR, Vec<QuatR>> = HashMap::from([(QuatR::one(), vec![])]);
    for gens in [H4_GENS, H4_PRIME_GENS] {
        let mut queue = VecDeque::from([QuatR::one()]);
        let mut local: HashSet<QuatR> = HashSet::from([QuatR::one()]);
        while let Some(x) = queue.pop_front() {
            let path = found[&x].clone();
            for &g in &gens {
                let a = &all[g as usize - 1];
                let y = QuatR::reflect_unit(a, &x);
                if local.insert(y.clone()) {
                    found.entry(y.clone()).or_insert_with(|| {
                        let mut p = path.clone();
                        p.push(a.clone());
                        p
                    });
                    queue.push_back(y);
                }
            }
        }
    }
    found
}

/// A reflection word sending `1` to `x` for a generated root `x`.
pub fn transport_word(filtration: &Filtration, x: &QuatR, base: &HashMap<QuatR, Vec<QuatR>>) -> Result<Vec<QuatR>> {
    let g = filtration.generation(x)?;
    let mut word = base.get(&g.seed).cloned().ok_or_else(|| Error::MissingProvenance(g.seed.to_string()))?;
    word.extend(g.steps);
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::gen_delta;

    #[test]
    fn finite_groups_close() {
        assert_eq!(group_closure_check(&roots::k_roots()), Ok(24));
        assert_eq!(group_closure_check(&gen_delta(Dimension::Four, false)), Ok(120));
        assert_eq!(group_closure_check(&gen_delta(Dimension::Four, true)), Ok(120));
        assert!(group_closure_check(&roots::dot_delta(Dimension::Four, false)).is_err());
        assert_eq!(k_action_check(), Ok(()));
        assert_eq!(coset_cover_check(), Ok(()));
    }

    #[test]
    fn e_sets() {
        assert_eq!(e_set(false).len(), 64);
        assert_eq!(e_class(&[(0, 0); 4]), EClass::Neither);
        assert_eq!(ee_halfproduct_check(), Ok(()));
        assert_eq!(cc_table_check(), Ok(()));
    }

    #[test]
    fn first_table_entry() {
        let c = QuatR::from_scaled([(0, 0), (1, 0), TP, T], 1);
        let d = QuatR::from_scaled([(0, 0), (1, 0), T, TP], 1);
        let p = (&c * &d).scale(&DyadicGolden::from_int(4));
        let s5 = DyadicGolden::from_golden(GoldenInt::sqrt5());
        assert_eq!(p, QuatR::new(DyadicGolden::one(), -&s5, s5.clone(), s5));
    }

    #[test]
    fn decompose_small_cases() {
        for w in roots::k_roots().iter() {
            let nf = decompose(w).unwrap();
            assert_eq!((&nf.w, nf.factors.len()), (w, 0));
        }
        let c = coset_reps(false)[2].clone();
        let d = coset_reps(true)[1].clone();
        let nf = decompose(&(&c * &d)).unwrap();
        assert_eq!(nf.w, QuatR::one());
        assert_eq!(nf.factors, vec![d, c]);
    }

    #[test]
    fn decompose_round_trips_short_forms() {
        for nf in all_normal_forms(3).iter().step_by(7) {
            let x = nf.evaluate();
            assert_eq!(&decompose(&x).unwrap(), nf, "{x}");
        }
    }

    #[test]
    fn relation_and_normalizer() {
        assert_eq!(relation_check_s(), Ok(()));
        assert_eq!(normalizer_orders(), Ok((192, 576)));
        assert_eq!(iota_check(), Ok(()));
    }

    #[test]
    fn generator_words() {
        let g = coxeter_generators();
        assert_eq!(rewrite_to_base(&g[0]).unwrap(), GeneratorWord(vec![1]));
        let a = QuatR::reflect_unit(&g[1], &g[0]);
        assert_eq!(rewrite_to_base(&a).unwrap(), GeneratorWord(vec![2, 1, 2]));
        let probe = QuatR::from_scaled([(1, 2), (0, -1), (3, 0), (1, 1)], 2);
        for conj in [false, true] {
            for a in roots::dot_delta(Dimension::Four, conj).sign_classes() {
                let w = rewrite_to_base(&a).unwrap();
                assert_eq!(w.apply(&probe), QuatR::reflect_unit(&a, &probe), "{a}");
            }
        }
    }

    #[test]
    fn transitivity_small() {
        let f = Filtration::generate(2, Dimension::Four, 4).unwrap();
        assert_eq!(transitivity_check(&f, 2), Ok(216 + 2 * 1536));
    }
}
