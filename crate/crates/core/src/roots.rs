//! The root systems `Delta`, `Delta'` and their 3D counterparts, the residue
//! spaces `A`, `A'` over `F4`, the level of a unit vector, and the filtration
//! `S_n`, `S_n'` of the infinite root system.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use indexmap::{IndexMap, IndexSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{DyadicGolden, GoldenInt, F4};
use crate::quaternion::QuatR;
use crate::sample;

/// Default cap on generated levels; each level is sixteen times the last in 4D.
pub const DEFAULT_MAX_LEVEL: u32 = 4;

/// Reads `AURUM_MAX_LEVEL`, falling back to [`DEFAULT_MAX_LEVEL`].
pub fn configured_max_level() -> u32 {
    std::env::var("AURUM_MAX_LEVEL")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_LEVEL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Dimension {
    Three,
    Four,
}

impl Dimension {
    pub fn as_u8(self) -> u8 {
        match self {
            Dimension::Three => 3,
            Dimension::Four => 4,
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        d.as_u8()
    }
}

impl TryFrom<u8> for Dimension {
    type Error = Error;
    fn try_from(d: u8) -> Result<Self> {
        match d {
            3 => Ok(Dimension::Three),
            4 => Ok(Dimension::Four),
            _ => Err(Error::InvalidInput(format!("dimension must be 3 or 4, got {d}"))),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A finite set of unit quaternions, deduplicated, in generation order.
/// In 3D the vectors live in the pure quaternions (first coordinate 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub dimension: Dimension,
    pub elements: IndexSet<QuatR>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &QuatR) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuatR> {
        self.elements.iter()
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        RootSet {
            dimension: self.dimension,
            elements: self.elements.intersection(&other.elements).cloned().collect(),
        }
    }

    /// One representative per pair `{a, -a}`, first nonzero coordinate positive.
    pub fn sign_classes(&self) -> Vec<QuatR> {
        let mut seen = IndexSet::new();
        for x in &self.elements {
            seen.insert(x.oriented());
        }
        seen.into_iter().collect()
    }
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if HashSet::<usize>::from_iter(p).len() < 4 {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// All sign choices applied to `base`, skipping sign flips of zero entries.
fn signed_variants(base: [(i64, i64); 4]) -> Vec<[(i64, i64); 4]> {
    let mut out = Vec::new();
    for mask in 0..16u32 {
        if (0..4).any(|n| mask & (1 << n) != 0 && base[n] == (0, 0)) {
            continue;
        }
        out.push(std::array::from_fn(|n| {
            let (a, b) = base[n];
            if mask & (1 << n) != 0 {
                (-a, -b)
            } else {
                (a, b)
            }
        }));
    }
    out
}

/// `(a, b)` pairs for 1, tau', tau, or for 1, tau, tau' after conjugation.
fn golden_triple(conjugated: bool) -> [(i64, i64); 3] {
    let (t, tp) = ((0, 1), (1, -1));
    if conjugated {
        [(1, 0), t, tp]
    } else {
        [(1, 0), tp, t]
    }
}

/// The 96 (4D) or 24 (3D) roots of `Delta` that involve `tau`.
pub fn dot_delta(dimension: Dimension, conjugated: bool) -> RootSet {
    let [one, t1, t2] = golden_triple(conjugated);
    let mut elements = IndexSet::new();
    match dimension {
        Dimension::Four => {
            let base = [(0, 0), one, t1, t2];
            for p in even_permutations() {
                for v in signed_variants(std::array::from_fn(|n| base[p[n]])) {
                    elements.insert(QuatR::from_scaled(v, 1));
                }
            }
        }
        Dimension::Three => {
            let base = [one, t1, t2];
            for shift in 0..3 {
                let c: [(i64, i64); 4] =
                    std::array::from_fn(|n| if n == 0 { (0, 0) } else { base[(n - 1 + shift) % 3] });
                for v in signed_variants(c) {
                    elements.insert(QuatR::from_scaled(v, 1));
                }
            }
        }
    }
    RootSet { dimension, elements }
}

/// The rational roots: `+-e_i` and, in 4D, `(+-1, +-1, +-1, +-1) / 2`.
pub fn crystallographic_roots(dimension: Dimension) -> RootSet {
    let mut elements = IndexSet::new();
    let first = match dimension {
        Dimension::Four => 0,
        Dimension::Three => 1,
    };
    for n in first..4 {
        let e = QuatR::basis(n);
        elements.insert(e.clone());
        elements.insert(-e);
    }
    if dimension == Dimension::Four {
        for v in signed_variants([(1, 0); 4]) {
            elements.insert(QuatR::from_scaled(v, 1));
        }
    }
    RootSet { dimension, elements }
}

/// `Delta` (or `Delta'` when `conjugated`): 120 roots in 4D, 30 in 3D.
pub fn gen_delta(dimension: Dimension, conjugated: bool) -> RootSet {
    let mut set = crystallographic_roots(dimension);
    set.elements.extend(dot_delta(dimension, conjugated).elements);
    set
}

/// `K = Delta ∩ Delta'`, the 24 roots of type `D4`.
pub fn k_roots() -> RootSet {
    gen_delta(Dimension::Four, false).intersection(&gen_delta(Dimension::Four, true))
}

pub type Residue = [F4; 4];

/// Reduction of `2^level x` modulo 2. `None` if `2^level x` is not integral.
pub fn residue(x: &QuatR, level: u32) -> Option<Residue> {
    let mut out = [F4::O; 4];
    for (slot, c) in out.iter_mut().zip(x.coords()) {
        *slot = c.scaled_numerator(level)?.reduce_mod2();
    }
    Some(out)
}

fn f4_dot(a: &Residue, b: &Residue) -> F4 {
    a.iter().zip(b).fold(F4::O, |acc, (&x, &y)| acc + x * y)
}

/// The residue spaces: `A`, its nonzero part, its `tau`-bearing part, and
/// their primed versions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpace {
    pub dimension: Dimension,
    pub a: Vec<Residue>,
    pub a_ring: Vec<Residue>,
    pub a_dot: Vec<Residue>,
    pub a_prime: Vec<Residue>,
    pub a_ring_prime: Vec<Residue>,
    pub a_dot_prime: Vec<Residue>,
}

impl ClassSpace {
    pub fn new(dimension: Dimension) -> Self {
        let (a, a_ring, a_dot) = Self::build(dimension, false);
        let (a_prime, a_ring_prime, a_dot_prime) = Self::build(dimension, true);
        Self { dimension, a, a_ring, a_dot, a_prime, a_ring_prime, a_dot_prime }
    }

    fn build(dimension: Dimension, conjugated: bool) -> (Vec<Residue>, Vec<Residue>, Vec<Residue>) {
        use F4::*;
        let ones = [I, I, I, I];
        let second = if conjugated { [O, I, T, Tp] } else { [O, I, Tp, T] };
        let mut span = Vec::new();
        for c1 in F4::ALL {
            for c2 in F4::ALL {
                span.push(std::array::from_fn(|n| c1 * ones[n] + c2 * second[n]));
            }
        }
        if dimension == Dimension::Three {
            span.retain(|v: &Residue| v[0] == O);
        }
        let ring: Vec<Residue> = span.iter().copied().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        let dot = ring
            .iter()
            .copied()
            .filter(|v| !v.iter().all(|&c| c == v[0]))
            .collect();
        (span, ring, dot)
    }

    pub fn is_isotropic(vectors: &[Residue]) -> bool {
        vectors.iter().all(|a| vectors.iter().all(|b| f4_dot(a, b).is_zero()))
    }

    pub fn dot(a: &Residue, b: &Residue) -> F4 {
        f4_dot(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    K0,
    Kn,
    DotS,
    DotSPrime,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::K0 => "K0",
            Family::Kn => "Kn",
            Family::DotS => "DotS",
            Family::DotSPrime => "DotSPrime",
        })
    }
}

/// Which of the two filtrations a generated root belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Dot,
    DotPrime,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Dot => Side::DotPrime,
            Side::DotPrime => Side::Dot,
        }
    }

    pub fn family(self) -> Family {
        match self {
            Side::Dot => Family::DotS,
            Side::DotPrime => Family::DotSPrime,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::Dot => 0,
            Side::DotPrime => 1,
        }
    }

    fn conjugated(self) -> bool {
        self == Side::DotPrime
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootTag {
    pub level: u32,
    pub family: Family,
    pub dimension: Dimension,
}

impl RootTag {
    pub fn side(&self) -> Option<Side> {
        match self.family {
            Family::DotS => Some(Side::Dot),
            Family::DotSPrime => Some(Side::DotPrime),
            _ => None,
        }
    }
}

impl fmt::Display for RootTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.family, self.level)
    }
}

fn is_line_of_ones(r: &Residue) -> bool {
    !r[0].is_zero() && r.iter().all(|&c| c == r[0])
}

/// Membership in `A-dot` (or `A-dot'`). The 3D spaces are the slices of the
/// 4D ones with first coordinate zero, so the 4D tables serve both.
fn in_dot_space(r: &Residue, conjugated: bool) -> bool {
    static SPACES: OnceLock<[HashSet<Residue>; 2]> = OnceLock::new();
    let spaces = SPACES.get_or_init(|| {
        let c = ClassSpace::new(Dimension::Four);
        [c.a_dot.into_iter().collect(), c.a_dot_prime.into_iter().collect()]
    });
    spaces[conjugated as usize].contains(r)
}

/// Level and family of a unit vector of `R^4` (or of the pure part in 3D).
pub fn classify(x: &QuatR, dimension: Dimension) -> Result<RootTag> {
    x.ensure_unit()?;
    if dimension == Dimension::Three && !x.is_pure() {
        return Err(Error::InvalidInput(format!("{x} is not a pure quaternion")));
    }
    let level = x.level();
    let tag = |family| Ok(RootTag { level, family, dimension });
    if level == 0 {
        return tag(Family::K0);
    }
    let r = residue(x, level).expect("level makes the vector integral");
    if in_dot_space(&r, false) {
        tag(Family::DotS)
    } else if in_dot_space(&r, true) {
        tag(Family::DotSPrime)
    } else if dimension == Dimension::Four && is_line_of_ones(&r) {
        tag(Family::Kn)
    } else {
        Err(Error::NotInSigma(x.to_string()))
    }
}

/// Where a root of level `n + 1` came from: the index of its parent in level
/// `n` of the opposite side, and the index of the reflecting root among that
/// side's reflectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub parent: usize,
    pub reflector: usize,
}

/// `x = r_{steps[last]} ... r_{steps[0]} (seed)` with `seed` a root of level 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generation {
    pub seed: QuatR,
    pub steps: Vec<QuatR>,
}

impl Generation {
    /// A word for the reflection `r_x`, in application order:
    /// `w r_seed w^-1` with `w` the composite of `steps`.
    pub fn mirror_word(&self) -> Vec<QuatR> {
        let mut word: Vec<QuatR> = self.steps.iter().rev().cloned().collect();
        word.push(self.seed.clone());
        word.extend(self.steps.iter().cloned());
        word
    }
}

type LevelMap = IndexMap<QuatR, Option<Provenance>>;

/// The sets `S_1, ..., S_n` and `S_1', ..., S_n'` with a generation record for
/// every element.
#[derive(Clone, Debug)]
pub struct Filtration {
    dimension: Dimension,
    reflectors: [Vec<QuatR>; 2],
    levels: Vec<[LevelMap; 2]>,
}

/// Sources are processed in blocks so that peak memory stays proportional to
/// one block of images rather than to a whole level.
const BLOCK: usize = 2048;

impl Filtration {
    /// Builds levels `1..=n`, refusing `n > max_level`.
    pub fn generate(n: u32, dimension: Dimension, max_level: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("filtration level must be at least 1".into()));
        }
        if n > max_level {
            return Err(Error::LevelGuard { requested: n, max: max_level });
        }
        let mut f = Self::base(dimension);
        while f.max_level() < n {
            f.extend();
        }
        Ok(f)
    }

    fn base(dimension: Dimension) -> Self {
        let mut levels = [LevelMap::new(), LevelMap::new()];
        let mut reflectors = [Vec::new(), Vec::new()];
        for side in [Side::Dot, Side::DotPrime] {
            let set = dot_delta(dimension, side.conjugated());
            reflectors[side.index()] = set.sign_classes();
            levels[side.index()] = set.elements.into_iter().map(|x| (x, None)).collect();
        }
        Self { dimension, reflectors, levels: vec![levels] }
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Sign-class representatives of `Delta-dot` or `Delta-dot'`.
    pub fn reflectors(&self, side: Side) -> &[QuatR] {
        &self.reflectors[side.index()]
    }

    /// Appends the next level: `S'_{m+1} = r_{a'} S_m` and `S_{m+1} = r_a S'_m`.
    pub fn extend(&mut self) {
        let last = self.levels.last().expect("at least one level");
        let mut next = [LevelMap::new(), LevelMap::new()];
        for side in [Side::Dot, Side::DotPrime] {
            let sources = &last[side.opposite().index()];
            let reflectors = &self.reflectors[side.index()];
            let out = &mut next[side.index()];
            let keys: Vec<&QuatR> = sources.keys().collect();
            for (block_no, block) in keys.chunks(BLOCK).enumerate() {
                let images: Vec<Vec<QuatR>> = block
                    .par_iter()
                    .map(|y| reflectors.iter().map(|a| QuatR::reflect_unit(a, y)).collect())
                    .collect();
                for (offset, row) in images.into_iter().enumerate() {
                    let parent = block_no * BLOCK + offset;
                    for (reflector, z) in row.into_iter().enumerate() {
                        out.entry(z).or_insert(Some(Provenance { parent, reflector }));
                    }
                }
            }
        }
        self.levels.push(next);
    }

    /// `S_n` or `S_n'` with its generation records.
    pub fn level(&self, n: u32, side: Side) -> Option<&IndexMap<QuatR, Option<Provenance>>> {
        let idx = (n as usize).checked_sub(1)?;
        self.levels.get(idx).map(|l| &l[side.index()])
    }

    pub fn roots(&self, n: u32, side: Side) -> impl Iterator<Item = &QuatR> {
        self.level(n, side).into_iter().flat_map(|m| m.keys())
    }

    pub fn cardinality(&self, n: u32, side: Side) -> usize {
        self.level(n, side).map_or(0, IndexMap::len)
    }

    /// Every element of `S_k ∪ S_k'` for `k <= n`; `K_n` is not included.
    pub fn union_up_to(&self, n: u32) -> Vec<QuatR> {
        (1..=n.min(self.max_level()))
            .flat_map(|k| [Side::Dot, Side::DotPrime].map(|s| (k, s)))
            .flat_map(|(k, s)| self.roots(k, s).cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Generation record of a generated root, or of a root of `Delta ∪ Delta'`.
    pub fn generation(&self, x: &QuatR) -> Result<Generation> {
        let tag = classify(x, self.dimension)?;
        let side = match tag.side() {
            Some(side) => side,
            None if tag.level <= 1 => return Ok(Generation { seed: x.clone(), steps: vec![] }),
            None => return Err(Error::MissingProvenance(x.to_string())),
        };
        let map = self
            .level(tag.level, side)
            .ok_or(Error::LevelGuard { requested: tag.level, max: self.max_level() })?;
        let mut idx = map.get_index_of(x).ok_or_else(|| Error::MissingProvenance(x.to_string()))?;
        let (mut n, mut side) = (tag.level, side);
        let mut steps = Vec::new();
        loop {
            let (root, prov) = self.levels[n as usize - 1][side.index()]
                .get_index(idx)
                .expect("provenance indices are valid");
            match prov {
                None => {
                    steps.reverse();
                    return Ok(Generation { seed: root.clone(), steps });
                }
                Some(p) => {
                    steps.push(self.reflectors[side.index()][p.reflector].clone());
                    idx = p.parent;
                    side = side.opposite();
                    n -= 1;
                }
            }
        }
    }
}

/// The roots of `Delta-dot` (one per sign class) whose reflection sends
/// `x ∈ S_n`, `n >= 2`, down to `S'_{n-1}`.
pub fn three_droppers(x: &QuatR, dimension: Dimension) -> Result<Vec<QuatR>> {
    let tag = classify(x, dimension)?;
    if tag.family != Family::DotS || tag.level < 2 {
        return Err(Error::WrongFamily {
            expected: "DotS at level >= 2".into(),
            found: tag.to_string(),
        });
    }
    let target = RootTag { level: tag.level - 1, family: Family::DotSPrime, dimension };
    Ok(dot_delta(dimension, false)
        .sign_classes()
        .into_iter()
        .filter(|a| classify(&QuatR::reflect_unit(a, x), dimension).ok() == Some(target))
        .collect())
}

/// Tags of `r_b' a`, `r_a r_b' a`, `r_b' r_a r_b' a`, ...: `steps` entries
/// starting from the seed `a ∈ S_1`.
pub fn infinite_order_witness(alpha: &QuatR, beta_prime: &QuatR, steps: usize) -> Result<Vec<RootTag>> {
    let dim = Dimension::Four;
    for (root, side) in [(alpha, Side::Dot), (beta_prime, Side::DotPrime)] {
        let tag = classify(root, dim)?;
        if tag.level != 1 || tag.side() != Some(side) {
            return Err(Error::WrongFamily { expected: side.family().to_string(), found: tag.to_string() });
        }
    }
    let mut x = alpha.clone();
    let mut out = Vec::with_capacity(steps);
    for t in 0..steps {
        let r = if t % 2 == 0 { beta_prime } else { alpha };
        x = QuatR::reflect_unit(r, &x);
        out.push(classify(&x, dim)?);
    }
    Ok(out)
}

/// Largest distance from a sampled point of the sphere to the nearest point
/// of `points` (taken up to sign). An observational density statistic.
pub fn max_gap_estimate(points: &[QuatR], samples: usize, seed: u64) -> Result<f64> {
    let pts: Vec<[f64; 4]> = points.iter().map(QuatR::to_f64).collect::<Result<_>>()?;
    let targets = sample::haar_quaternions(samples, seed);
    Ok(targets
        .par_iter()
        .map(|t| {
            pts.iter()
                .map(|p| sample::distance(t, p).min(sample::distance(t, &p.map(|c| -c))))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max))
}

/// The five generating roots `a_1, ..., a_5`; `a_1..a_4` generate `H4`,
/// `a_1, a_2, a_3, a_5` generate `H4'`.
pub fn coxeter_generators() -> [QuatR; 5] {
    let (tp, t) = ((1, -1), (0, 1));
    [
        QuatR::one(),
        QuatR::from_scaled([(-1, 0); 4], 1),
        QuatR::basis(2),
        QuatR::from_scaled([(0, 0), (-1, 0), tp, t], 1),
        QuatR::from_scaled([(0, 0), (1, 0), (0, -1), (-1, 1)], 1),
    ]
}

/// Convenience: the vector `(c_1, ..., c_4) / 2` from integer-and-tau pairs.
pub fn half_vector(coords: [(i64, i64); 4]) -> QuatR {
    QuatR::from_scaled(coords, 1)
}

/// Convenience for `a + b tau` literals in tests and reports.
pub fn golden(a: i64, b: i64) -> DyadicGolden {
    DyadicGolden::from_golden(GoldenInt::new(a, b))
}
