//! Approximation of `SU(2)` elements by products of reflections in the
//! mirrors of `U_n`: fix a chamber `C_0` at 1, reflect the target into it
//! greedily, and read the approximant off the reversed word.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::DyadicGolden;
use crate::group;
use crate::quaternion::{self, ExactSu2, FloatSu2, QuatR};
use crate::roots::{Dimension, Filtration, Side};
use crate::sample;

pub const DEFAULT_MAX_ITER: usize = 500;

/// A step is taken only when some `a . x` exceeds this; at termination every
/// oriented root satisfies `a . x <= STEP_EPS`.
const STEP_EPS: f64 = 1e-13;
/// Targets closer than this to a mirror are nudged towards the witness.
const BOUNDARY_EPS: f64 = 1e-12;
const PERTURBATION: f64 = 1e-9;
/// Float targets must have norm 1 to within this before renormalization.
pub const TARGET_NORM_TOL: f64 = 1e-4;

/// Default witness, close to 1; its first coordinate is doubled until it
/// separates the mirrors.
pub const DEFAULT_WITNESS: [i64; 4] = [1 << 16, 4, 2, 1];

/// The oriented mirrors `U_n^-` with chamber witness `z`.
#[derive(Clone, Debug)]
pub struct MirrorSet {
    pub level: u32,
    /// Witness direction, unnormalized; `a . z < 0` for every root.
    pub z: [i64; 4],
    /// One root per sign pair, oriented against `z`, sorted by exact coordinates.
    pub roots: Vec<QuatR>,
    floats: Vec<[f64; 4]>,
    z_unit: [f64; 4],
}

/// Larger score wins; ties go to the smaller index.
fn pick(p: (usize, f64), q: (usize, f64)) -> (usize, f64) {
    if q.1 > p.1 || (q.1 == p.1 && q.0 < p.0) {
        q
    } else {
        p
    }
}

/// How the descent chooses among the roots with `a . x > 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pivot {
    /// Largest `a . x`.
    MaxDot,
    /// Largest drop of `|x - z|^2`, which is `-4 (a . x)(a . z)`.
    #[default]
    MaxDecrease,
}

fn dot_z(a: &QuatR, z: &[i64; 4]) -> DyadicGolden {
    a.coords()
        .iter()
        .zip(z)
        .map(|(c, &w)| c * &DyadicGolden::from_int(w))
        .sum()
}

/// Accepts `z` when no root is orthogonal to it and every root with nonzero
/// first coordinate agrees in sign with its first coordinate, so that `1`
/// lies in the closure of the chamber of `z`.
fn separates(roots: &[QuatR], z: &[i64; 4]) -> bool {
    roots.par_iter().all(|a| {
        let s = dot_z(a, z).sign();
        s != 0 && (a.coords()[0].is_zero() || a.coords()[0].sign() == s)
    })
}

fn choose_witness(roots: &[QuatR], level: u32) -> Result<[i64; 4]> {
    let [w, x, y, z] = DEFAULT_WITNESS;
    (0..24)
        .map(|j| [w << j, x, y, z])
        .find(|z| separates(roots, z))
        .ok_or(Error::DegenerateWitness(level))
}

impl MirrorSet {
    /// Orients `U_n`, the generated roots of levels `1..=n`, against a witness.
    pub fn build(filtration: &Filtration, n: u32) -> Result<Self> {
        Self::build_with(filtration, n, None)
    }

    /// As [`MirrorSet::build`], with an explicit witness instead of the search.
    pub fn build_with(filtration: &Filtration, n: u32, witness: Option<[i64; 4]>) -> Result<Self> {
        if filtration.dimension() != Dimension::Four {
            return Err(Error::InvalidInput("mirror sets live in four dimensions".into()));
        }
        if n == 0 || n > filtration.max_level() {
            return Err(Error::LevelGuard { requested: n, max: filtration.max_level() });
        }
        if filtration.cardinality(n, Side::Dot) == 0 {
            return Err(Error::InvalidInput(format!("filtration not generated up to level {n}")));
        }
        let mut classes: Vec<QuatR> = filtration.union_up_to(n).iter().map(QuatR::oriented).collect();
        classes.sort();
        classes.dedup();
        let z = match witness {
            Some(z) if separates(&classes, &z) => z,
            Some(_) => return Err(Error::DegenerateWitness(n)),
            None => choose_witness(&classes, n)?,
        };
        let mut roots: Vec<QuatR> = classes
            .into_par_iter()
            .map(|a| if dot_z(&a, &z).sign() > 0 { -a } else { a })
            .collect();
        roots.sort();
        let floats = roots.iter().map(QuatR::to_f64).collect::<Result<Vec<_>>>()?;
        let zf = z.map(|c| c as f64);
        let norm = sample::norm(&zf);
        log::debug!("mirror set at level {n}: {} oriented roots, witness {z:?}", roots.len());
        Ok(Self { level: n, z, roots, floats, z_unit: zf.map(|c| c / norm) })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Number of signed roots, both members of every pair counted.
    pub fn signed_count(&self) -> usize {
        2 * self.roots.len()
    }

    /// Index and value of the largest `a . x`; ties go to the smaller index.
    fn argmax(&self, x: &[f64; 4]) -> (usize, f64) {
        self.floats
            .par_iter()
            .enumerate()
            .map(|(i, a)| (i, sample::dot(a, x)))
            .reduce(|| (usize::MAX, f64::NEG_INFINITY), pick)
    }

    /// The pivot for `x` under `rule`, if some root has `a . x > STEP_EPS`.
    fn pivot(&self, x: &[f64; 4], rule: Pivot) -> Option<usize> {
        let z = &self.z_unit;
        self.floats
            .par_iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let d = sample::dot(a, x);
                (d > STEP_EPS).then(|| match rule {
                    Pivot::MaxDot => (i, d),
                    Pivot::MaxDecrease => (i, -d * sample::dot(a, z)),
                })
            })
            .reduce_with(pick)
            .map(|(i, _)| i)
    }

    fn min_abs_dot(&self, x: &[f64; 4]) -> f64 {
        self.floats
            .par_iter()
            .map(|a| sample::dot(a, x).abs())
            .reduce(|| f64::INFINITY, f64::min)
    }

    /// Exact membership of `x` in the closed chamber `C_0`.
    pub fn contains_exact(&self, x: &QuatR) -> bool {
        self.roots.par_iter().all(|a| a.dot(x).sign() <= 0)
    }

    /// Membership of a float point in `C_0`, with tolerance `tol`.
    pub fn contains(&self, x: &[f64; 4], tol: f64) -> bool {
        self.argmax(x).1 <= tol
    }

    /// The unit witness direction.
    pub fn witness(&self) -> [f64; 4] {
        self.z_unit
    }
}

/// Outcome of a descent. `word` lists `a_1, ..., a_k` in the order applied to
/// the target; the approximant is `r_{a_1} ... r_{a_k}(1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApproxResult {
    pub word: Vec<QuatR>,
    pub approximant: QuatR,
    /// `min(|x - q|, |x + q|)`; both lifts map to the same rotation.
    pub residual: f64,
    /// `|x - q|` for the approximant `q` as computed.
    pub residual_signed: f64,
    /// `|x + q|`.
    pub residual_negated: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Where the descent left the target, `r_{a_k} ... r_{a_1}(x)`.
    pub final_point: [f64; 4],
    /// The target as a unit float quaternion.
    pub target: [f64; 4],
}

impl ApproxResult {
    /// The approximant with the sign that attains `residual`.
    pub fn best_lift(&self) -> QuatR {
        if self.residual_negated < self.residual_signed {
            -&self.approximant
        } else {
            self.approximant.clone()
        }
    }

    pub fn approximant_matrix(&self) -> Result<ExactSu2> {
        quaternion::to_su2(&self.approximant)
    }

    /// `target - best lift`, entrywise, as a float matrix.
    pub fn residual_matrix(&self) -> Result<FloatSu2> {
        let approx = quaternion::to_su2(&self.best_lift())?.to_float()?;
        Ok(FloatSu2::from_quaternion(self.target).sub(&approx))
    }
}

fn reflect_f(a: &[f64; 4], x: &[f64; 4]) -> [f64; 4] {
    let c = 2.0 * sample::dot(a, x);
    std::array::from_fn(|n| x[n] - c * a[n])
}

fn normalized(x: &[f64; 4]) -> Result<[f64; 4]> {
    let n = sample::norm(x);
    if !n.is_finite() || (n - 1.0).abs() > TARGET_NORM_TOL {
        return Err(Error::NonUnit(format!("{n}")));
    }
    Ok(x.map(|c| c / n))
}

fn finish(target: [f64; 4], word: Vec<QuatR>, iterations: usize, converged: bool, final_point: [f64; 4]) -> Result<ApproxResult> {
    let approximant = emit_product(&word);
    let q = approximant.to_f64()?;
    let residual_signed = sample::distance(&target, &q);
    let residual_negated = sample::distance(&target, &q.map(|c| -c));
    Ok(ApproxResult {
        word,
        approximant,
        residual: residual_signed.min(residual_negated),
        residual_signed,
        residual_negated,
        iterations,
        converged,
        final_point,
        target,
    })
}

/// Greedy descent of a float target into `C_0`. The search runs in floating
/// point; the approximant is rebuilt exactly from the word.
pub fn approximate(x: &[f64; 4], mirrors: &MirrorSet, max_iter: usize) -> Result<ApproxResult> {
    approximate_with(x, mirrors, max_iter, Pivot::default())
}

pub fn approximate_with(x: &[f64; 4], mirrors: &MirrorSet, max_iter: usize, rule: Pivot) -> Result<ApproxResult> {
    let target = normalized(x)?;
    let mut y = target;
    if mirrors.min_abs_dot(&y) < BOUNDARY_EPS {
        log::warn!("target lies on a mirror; nudging it by {PERTURBATION} towards the chamber witness");
        let z = mirrors.witness();
        y = normalized(&std::array::from_fn(|n| y[n] + PERTURBATION * z[n]))?;
    }
    let mut word = Vec::new();
    for iter in 0..=max_iter {
        let Some(i) = mirrors.pivot(&y, rule) else {
            return finish(target, word, iter, true, y);
        };
        if iter == max_iter {
            break;
        }
        y = reflect_f(&mirrors.floats[i], &y);
        let n = sample::norm(&y);
        y = y.map(|c| c / n);
        word.push(mirrors.roots[i].clone());
    }
    log::warn!("descent did not reach the chamber within {max_iter} steps");
    finish(target, word, max_iter, false, y)
}

/// Descent of an exact element of `Sigma`, with every sign decided exactly.
/// Among the roots with `a . x > 0` the pivot rule is scored in floating point.
pub fn approximate_exact(x: &QuatR, mirrors: &MirrorSet, max_iter: usize) -> Result<ApproxResult> {
    approximate_exact_with(x, mirrors, max_iter, Pivot::default())
}

pub fn approximate_exact_with(x: &QuatR, mirrors: &MirrorSet, max_iter: usize, rule: Pivot) -> Result<ApproxResult> {
    x.ensure_unit()?;
    let z = mirrors.z_unit;
    let target = x.to_f64()?;
    let mut y = x.clone();
    let mut word = Vec::new();
    for iter in 0..=max_iter {
        let best = mirrors
            .roots
            .par_iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let d = a.dot(&y);
                (d.sign() > 0).then(|| {
                    let d = d.to_f64().unwrap_or(f64::INFINITY);
                    match rule {
                        Pivot::MaxDot => (i, d),
                        Pivot::MaxDecrease => (i, -d * sample::dot(&mirrors.floats[i], &z)),
                    }
                })
            })
            .reduce_with(pick);
        let Some((i, _)) = best else {
            return finish(target, word, iter, true, y.to_f64()?);
        };
        if iter == max_iter {
            break;
        }
        y = QuatR::reflect_unit(&mirrors.roots[i], &y);
        word.push(mirrors.roots[i].clone());
    }
    finish(target, word, max_iter, false, y.to_f64()?)
}

/// `r_{a_1} ... r_{a_k}(1)` in closed form: `(-1)^k P P^rev` with
/// `P = a_1 a_2~ a_3 a_4~ ...`, the factors alternately conjugated starting
/// with `a_1` plain, and `P^rev` the same factors in reverse order.
pub fn emit_product(word: &[QuatR]) -> QuatR {
    let factors: Vec<QuatR> = word
        .iter()
        .enumerate()
        .map(|(i, a)| if i % 2 == 0 { a.clone() } else { a.conj() })
        .collect();
    let p = factors.iter().fold(QuatR::one(), |acc, f| &acc * f);
    let p_rev = factors.iter().rev().fold(QuatR::one(), |acc, f| &acc * f);
    let q = &p * &p_rev;
    if word.len() % 2 == 1 {
        -q
    } else {
        q
    }
}

/// True when two reflection words act identically on `R^4`.
pub fn same_action(w1: &[QuatR], w2: &[QuatR]) -> Result<bool> {
    let (p, q) = (quaternion::word_product(w1)?, quaternion::word_product(w2)?);
    Ok((0..4).all(|n| {
        let e = QuatR::basis(n);
        p.apply(&e) == q.apply(&e)
    }))
}

/// Cancels adjacent repeats, since `r_a r_{-a}` and `r_a r_a` are trivial.
fn free_reduce<T: Clone, K: PartialEq>(word: Vec<T>, key: impl Fn(&T) -> K) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(word.len());
    for x in word {
        if out.last().is_some_and(|y| key(y) == key(&x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Rewrites a mirror word over `U_n` as a word over the level-one roots,
/// replacing each `r_a` by `w r_b w^-1` from its generation record and
/// cancelling adjacent repeats. Application order is kept.
pub fn expand_word(word: &[QuatR], filtration: &Filtration) -> Result<Vec<QuatR>> {
    let mut out = Vec::new();
    for a in word {
        out.extend(filtration.generation(a)?.mirror_word());
    }
    Ok(free_reduce(out, QuatR::oriented))
}

/// Rewrites a word over level-one roots into the five generating
/// reflections, as indices `1..=5`, cancelling adjacent repeats.
pub fn expand_to_generators(basic: &[QuatR]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for b in basic {
        out.extend(group::rewrite_to_base(b)?.0);
    }
    Ok(free_reduce(out, |&i| i))
}

/// Largest residual over `samples` Haar-random targets: a Monte Carlo lower
/// bound on the chamber diameter.
pub fn chamber_diameter_estimate(mirrors: &MirrorSet, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let targets = sample::haar_quaternions(samples, seed);
    let residuals = targets
        .par_iter()
        .map(|t| approximate(t, mirrors, DEFAULT_MAX_ITER).map(|r| r.residual))
        .collect::<Result<Vec<f64>>>()?;
    Ok(residuals.into_iter().fold(0.0, f64::max))
}
