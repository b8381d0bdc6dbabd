//! Quaternions over the dyadic golden numbers and their matrix pictures.
//!
//! A quaternion `x1 + x2 i + x3 j + x4 k` is stored as its coordinate vector.
//! The same vector is read as a point of `R^4`, so `dot` is the coordinate dot
//! product and unit quaternions double as elements of `SU(2)`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::DyadicGolden;

/// A quaternion with coordinates in `Z[1/2, tau]` with respect to `1, i, j, k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuatR(pub [DyadicGolden; 4]);

impl QuatR {
    pub fn new(x1: DyadicGolden, x2: DyadicGolden, x3: DyadicGolden, x4: DyadicGolden) -> Self {
        Self([x1, x2, x3, x4])
    }

    /// Coordinates `(a_i + b_i tau) / 2^k`.
    pub fn from_scaled(coords: [(i64, i64); 4], k: u32) -> Self {
        Self(coords.map(|(a, b)| DyadicGolden::from_parts(a, b, k)))
    }

    pub fn zero() -> Self {
        Self(Default::default())
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn i() -> Self {
        Self::basis(1)
    }

    pub fn j() -> Self {
        Self::basis(2)
    }

    pub fn k() -> Self {
        Self::basis(3)
    }

    /// The `n`-th standard basis vector, `n` in `0..4`.
    pub fn basis(n: usize) -> Self {
        let mut q = Self::zero();
        q.0[n] = DyadicGolden::one();
        q
    }

    pub fn coords(&self) -> &[DyadicGolden; 4] {
        &self.0
    }

    /// Quaternion conjugate: negates the `i`, `j`, `k` parts.
    pub fn conj(&self) -> Self {
        let [x1, x2, x3, x4] = &self.0;
        Self([x1.clone(), -x2, -x3, -x4])
    }

    /// Galois conjugation `tau -> tau'` applied coordinatewise.
    pub fn galois(&self) -> Self {
        Self(self.0.clone().map(|c| c.conj()))
    }

    /// Coordinate dot product, which equals `(x y~ + y x~) / 2`.
    pub fn dot(&self, other: &Self) -> DyadicGolden {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum()
    }

    /// `|q|^2 = q q~`.
    pub fn norm_sq(&self) -> DyadicGolden {
        self.dot(self)
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(DyadicGolden::is_zero)
    }

    /// True when the real part vanishes.
    pub fn is_pure(&self) -> bool {
        self.0[0].is_zero()
    }

    /// The largest denominator exponent among the coordinates.
    pub fn level(&self) -> u32 {
        self.0.iter().map(DyadicGolden::exponent).max().unwrap_or(0)
    }

    pub(crate) fn ensure_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NonUnit(self.norm_sq().to_string()))
        }
    }

    /// `r_a(x) = -a x~ a`. The caller guarantees `|a| = 1`.
    pub(crate) fn reflect_unit(a: &Self, x: &Self) -> Self {
        -(&(a * &x.conj()) * a)
    }

    pub fn scale(&self, c: &DyadicGolden) -> Self {
        Self(self.0.clone().map(|x| &x * c))
    }

    pub fn to_f64(&self) -> Result<[f64; 4]> {
        let [x1, x2, x3, x4] = &self.0;
        Ok([x1.to_f64()?, x2.to_f64()?, x3.to_f64()?, x4.to_f64()?])
    }

    /// The representative of `{q, -q}` whose first nonzero coordinate is positive.
    pub fn oriented(&self) -> Self {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.sign() < 0 => -self,
            _ => self.clone(),
        }
    }
}

impl fmt::Display for QuatR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x1, x2, x3, x4] = &self.0;
        write!(f, "({x1}, {x2}, {x3}, {x4})")
    }
}

impl<'a> Mul<&'a QuatR> for &'a QuatR {
    type Output = QuatR;

    /// Hamilton product with `ij = k`, `jk = i`, `ki = j`.
    fn mul(self, rhs: &QuatR) -> QuatR {
        let [a1, b1, c1, d1] = &self.0;
        let [a2, b2, c2, d2] = &rhs.0;
        QuatR([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

impl Mul for QuatR {
    type Output = QuatR;
    fn mul(self, rhs: QuatR) -> QuatR {
        &self * &rhs
    }
}

impl Neg for &QuatR {
    type Output = QuatR;
    fn neg(self) -> QuatR {
        QuatR(self.0.clone().map(|c| -c))
    }
}

impl Neg for QuatR {
    type Output = QuatR;
    fn neg(self) -> QuatR {
        -&self
    }
}

pub fn q_mul(p: &QuatR, q: &QuatR) -> QuatR {
    p * q
}

pub fn q_conj(q: &QuatR) -> QuatR {
    q.conj()
}

pub fn q_dot(p: &QuatR, q: &QuatR) -> DyadicGolden {
    p.dot(q)
}

/// The reflection in the hyperplane orthogonal to the unit quaternion `a`.
pub fn reflect(a: &QuatR, x: &QuatR) -> Result<QuatR> {
    a.ensure_unit()?;
    Ok(QuatR::reflect_unit(a, x))
}

/// A composite of reflections `x -> left * x * right` or `x -> left * x~ * right`.
///
/// Odd words conjugate their argument, even words do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSided {
    pub left: QuatR,
    pub right: QuatR,
    pub conjugates: bool,
}

impl TwoSided {
    pub fn identity() -> Self {
        Self {
            left: QuatR::one(),
            right: QuatR::one(),
            conjugates: false,
        }
    }

    /// Precomposes with nothing and postcomposes with `r_a`:
    /// `-a (L y R)~ a = (-a R~) y~ (L~ a)`.
    pub fn then_reflect(&self, a: &QuatR) -> Self {
        Self {
            left: -(a * &self.right.conj()),
            right: &self.left.conj() * a,
            conjugates: !self.conjugates,
        }
    }

    pub fn apply(&self, x: &QuatR) -> QuatR {
        let y = if self.conjugates { x.conj() } else { x.clone() };
        &(&self.left * &y) * &self.right
    }
}

/// Collapses the word `[a_1, ..., a_k]`, meaning `r_{a_k} ... r_{a_1}`, into one
/// two-sided product.
pub fn word_product(word: &[QuatR]) -> Result<TwoSided> {
    word.iter().try_fold(TwoSided::identity(), |acc, a| {
        a.ensure_unit()?;
        Ok(acc.then_reflect(a))
    })
}

/// Applies `r_{a_k} ... r_{a_1}` to `x`; the first root of the word acts first.
pub fn apply_word(word: &[QuatR], x: &QuatR) -> Result<QuatR> {
    word.iter().try_fold(x.clone(), |y, a| reflect(a, &y))
}

/// Complex number with real and imaginary parts of type `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

/// A 2x2 complex matrix, used for elements of `SU(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Su2Matrix<T>(pub [[Complex<T>; 2]; 2]);

pub type ExactSu2 = Su2Matrix<DyadicGolden>;
pub type FloatSu2 = Su2Matrix<f64>;

/// `x1 + x2 i + x3 j + x4 k -> [[x1 + x2 sqrt(-1), x3 + x4 sqrt(-1)], [-x3 + x4 sqrt(-1), x1 - x2 sqrt(-1)]]`.
fn matrix_of<T: Clone + Neg<Output = T>>(x: [T; 4]) -> Su2Matrix<T> {
    let [x1, x2, x3, x4] = x;
    Su2Matrix([
        [
            Complex { re: x1.clone(), im: x2.clone() },
            Complex { re: x3.clone(), im: x4.clone() },
        ],
        [
            Complex { re: -x3, im: x4 },
            Complex { re: x1, im: -x2 },
        ],
    ])
}

/// The standard representation of a unit quaternion as a matrix in `SU(2)`.
pub fn to_su2(q: &QuatR) -> Result<ExactSu2> {
    q.ensure_unit()?;
    Ok(matrix_of(q.0.clone()))
}

impl ExactSu2 {
    pub fn identity() -> Self {
        matrix_of(QuatR::one().0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = &self.0;
        let n = &other.0;
        let entry = |r: usize, c: usize| {
            let (p, q) = (&m[r][0], &n[0][c]);
            let (s, t) = (&m[r][1], &n[1][c]);
            Complex {
                re: &p.re * &q.re - &p.im * &q.im + (&s.re * &t.re - &s.im * &t.im),
                im: &p.re * &q.im + &p.im * &q.re + (&s.re * &t.im + &s.im * &t.re),
            }
        };
        Su2Matrix([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        let c = |z: &Complex<DyadicGolden>| Complex { re: z.re.clone(), im: -&z.im };
        Su2Matrix([[c(&m[0][0]), c(&m[1][0])], [c(&m[0][1]), c(&m[1][1])]])
    }

    /// `M^dagger M = I`, decided exactly.
    pub fn is_unitary(&self) -> bool {
        self.adjoint().mul(self) == Self::identity()
    }

    /// The determinant, which is real for matrices of this shape.
    pub fn det(&self) -> Complex<DyadicGolden> {
        let m = &self.0;
        let prod = |p: &Complex<DyadicGolden>, q: &Complex<DyadicGolden>| Complex {
            re: &p.re * &q.re - &p.im * &q.im,
            im: &p.re * &q.im + &p.im * &q.re,
        };
        let d1 = prod(&m[0][0], &m[1][1]);
        let d2 = prod(&m[0][1], &m[1][0]);
        Complex { re: d1.re - d2.re, im: d1.im - d2.im }
    }

    pub fn to_float(&self) -> Result<FloatSu2> {
        let c = |z: &Complex<DyadicGolden>| -> Result<Complex<f64>> {
            Ok(Complex { re: z.re.to_f64()?, im: z.im.to_f64()? })
        };
        let m = &self.0;
        Ok(Su2Matrix([[c(&m[0][0])?, c(&m[0][1])?], [c(&m[1][0])?, c(&m[1][1])?]]))
    }
}

impl FloatSu2 {
    pub fn from_quaternion(x: [f64; 4]) -> Self {
        matrix_of(x)
    }

    /// Reads the quaternion back from the first row, normalized.
    ///
    /// Rejects matrices that are not within `tol` of `SU(2)` in any entry.
    pub fn to_quaternion(&self, tol: f64) -> Result<[f64; 4]> {
        let m = &self.0;
        let q = [m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im];
        let rebuilt = matrix_of(q);
        let off = m
            .iter()
            .flatten()
            .zip(rebuilt.0.iter().flatten())
            .map(|(a, b)| (a.re - b.re).abs().max((a.im - b.im).abs()))
            .fold(0.0, f64::max);
        let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if off > tol || (norm - 1.0).abs() > tol || !norm.is_finite() {
            return Err(Error::InvalidInput(format!(
                "matrix is not in SU(2) to within {tol}"
            )));
        }
        Ok(q.map(|c| c / norm))
    }

    /// Entrywise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        let d = |a: &Complex<f64>, b: &Complex<f64>| Complex { re: a.re - b.re, im: a.im - b.im };
        let (m, n) = (&self.0, &other.0);
        Su2Matrix([
            [d(&m[0][0], &n[0][0]), d(&m[0][1], &n[0][1])],
            [d(&m[1][0], &n[1][0]), d(&m[1][1], &n[1][1])],
        ])
    }

    /// Largest absolute value of any real or imaginary part.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.re.abs().max(z.im.abs()))
            .fold(0.0, f64::max)
    }
}

/// A 3x3 matrix over `Z[1/2, tau]`, acting on pure quaternions `(x2, x3, x4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct So3Matrix(pub [[DyadicGolden; 3]; 3]);

impl So3Matrix {
    pub fn identity() -> Self {
        let mut m: [[DyadicGolden; 3]; 3] = Default::default();
        for (n, row) in m.iter_mut().enumerate() {
            row[n] = DyadicGolden::one();
        }
        So3Matrix(m)
    }

    pub fn diag(d: [i64; 3]) -> Self {
        let mut m = Self::identity();
        for n in 0..3 {
            m.0[n][n] = DyadicGolden::from_int(d[n]);
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: [[DyadicGolden; 3]; 3] = Default::default();
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|n| &self.0[r][n] * &other.0[n][c]).sum();
            }
        }
        So3Matrix(out)
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        So3Matrix(std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone())))
    }

    pub fn det(&self) -> DyadicGolden {
        let m = &self.0;
        let minor = |a: usize, b: usize| &m[1][a] * &m[2][b] - &m[1][b] * &m[2][a];
        &m[0][0] * &minor(1, 2) - &m[0][1] * &minor(0, 2) + &m[0][2] * &minor(0, 1)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Self::identity()
    }

    pub fn apply(&self, v: &[DyadicGolden; 3]) -> [DyadicGolden; 3] {
        std::array::from_fn(|r| (0..3).map(|c| &self.0[r][c] * &v[c]).sum())
    }
}

/// The rotation `x -> a x a~` of pure quaternions, in the basis `i, j, k`.
pub fn gamma(a: &QuatR) -> Result<So3Matrix> {
    a.ensure_unit()?;
    let ac = a.conj();
    let cols: [QuatR; 3] = std::array::from_fn(|n| &(a * &QuatR::basis(n + 1)) * &ac);
    Ok(So3Matrix(std::array::from_fn(|r| {
        std::array::from_fn(|c| cols[c].0[r + 1].clone())
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(coords: [(i64, i64); 4]) -> QuatR {
        QuatR::from_scaled(coords, 1)
    }

    /// `(0, -1, tau', tau) / 2`.
    fn u() -> QuatR {
        half([(0, 0), (-1, 0), (1, -1), (0, 1)])
    }

    /// `(0, tau', tau, -1) / 2`.
    fn v() -> QuatR {
        half([(0, 0), (1, -1), (0, 1), (-1, 0)])
    }

    /// Dot-product form of the reflection, kept as an independent oracle.
    fn reflect_oracle(a: &QuatR, x: &QuatR) -> QuatR {
        let c = &x.dot(a) * &DyadicGolden::from_int(2);
        let ca = a.scale(&c);
        QuatR(std::array::from_fn(|n| &x.0[n] - &ca.0[n]))
    }

    #[test]
    fn hamilton_relations() {
        assert_eq!(QuatR::i() * QuatR::j(), QuatR::k());
        assert_eq!(QuatR::j() * QuatR::k(), QuatR::i());
        assert_eq!(QuatR::k() * QuatR::i(), QuatR::j());
        assert_eq!(QuatR::i() * QuatR::i(), -QuatR::one());
    }

    #[test]
    fn uv_product() {
        assert_eq!(&u() * &v(), half([(1, 0), (-1, 0), (-1, 0), (-1, 0)]));
        let q = half([(1, 0); 4]);
        assert_eq!(&q * &q.conj(), QuatR::one());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(QuatR::one().conj(), QuatR::one());
        assert_eq!(QuatR::i().conj(), -QuatR::i());
        let q = half([(1, 0), (1, -1), (0, 0), (0, 1)]);
        assert_eq!(q.conj(), half([(1, 0), (-1, 1), (0, 0), (0, -1)]));
    }

    #[test]
    fn dot_examples() {
        assert!(QuatR::one().dot(&QuatR::one()).is_one());
        let w = QuatR::from_scaled([(0, 0), (1, 0), (1, -1), (0, 1)], 0);
        assert_eq!(w.dot(&w), DyadicGolden::from_int(4));
        // dot agrees with (x y~ + y x~) / 2
        let (x, y) = (u(), v());
        let sym = &x * &y.conj();
        let sym2 = &y * &x.conj();
        assert_eq!(&(&sym.0[0] + &sym2.0[0]) * &DyadicGolden::half(), x.dot(&y));
        assert!((&sym.0[1] + &sym2.0[1]).is_zero());
    }

    #[test]
    fn reflection_examples() {
        let a = u();
        assert_eq!(reflect(&a, &a).unwrap(), -&a);
        assert_eq!(reflect(&QuatR::one(), &QuatR::i()).unwrap(), QuatR::i());
        let x = QuatR::from_scaled([(1, 2), (3, -1), (0, 5), (-2, 7)], 3);
        assert_eq!(reflect(&a, &x).unwrap(), reflect_oracle(&a, &x));
        assert!(matches!(reflect(&x, &a), Err(Error::NonUnit(_))));
    }

    #[test]
    fn rotation_by_uv_permutes_coordinates() {
        let x = QuatR::from_scaled([(1, 0), (2, 0), (3, 0), (4, 0)], 0);
        let y = apply_word(&[v(), u()], &x).unwrap();
        assert_eq!(y, QuatR::from_scaled([(1, 0), (3, 0), (4, 0), (2, 0)], 0));
    }

    #[test]
    fn word_application() {
        let x = QuatR::from_scaled([(1, 1), (0, 3), (-1, 0), (2, -1)], 2);
        assert_eq!(apply_word(&[], &x).unwrap(), x);
        assert_eq!(apply_word(&[u()], &x).unwrap(), reflect(&u(), &x).unwrap());
        assert_eq!(apply_word(&[u(), u()], &x).unwrap(), x);
        let word = [u(), v(), QuatR::j(), half([(1, 0); 4]), v()];
        for len in 0..=word.len() {
            let w = &word[..len];
            assert_eq!(word_product(w).unwrap().apply(&x), apply_word(w, &x).unwrap());
        }
    }

    #[test]
    fn su2_examples() {
        assert_eq!(to_su2(&QuatR::one()).unwrap(), ExactSu2::identity());
        let i = to_su2(&QuatR::i()).unwrap();
        assert!(i.0[0][0].im.is_one() && (-&i.0[1][1].im).is_one());
        let j = to_su2(&QuatR::j()).unwrap();
        assert!(j.0[0][1].re.is_one() && (-&j.0[1][0].re).is_one());
        let (p, q) = (u(), v());
        let pq = to_su2(&(&p * &q)).unwrap();
        assert_eq!(pq, to_su2(&p).unwrap().mul(&to_su2(&q).unwrap()));
        assert!(pq.is_unitary());
        assert!(pq.det().re.is_one() && pq.det().im.is_zero());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&QuatR::one()).unwrap(), So3Matrix::identity());
        assert_eq!(gamma(&QuatR::i()).unwrap(), So3Matrix::diag([1, -1, -1]));
        assert_eq!(gamma(&QuatR::k()).unwrap(), So3Matrix::diag([-1, -1, 1]));
        let g = gamma(&u()).unwrap();
        assert!(g.is_orthogonal() && g.det().is_one());
        assert_eq!(g, gamma(&-u()).unwrap());
        assert_eq!(gamma(&(&u() * &v())).unwrap(), g.mul(&gamma(&v()).unwrap()));
    }

    #[test]
    fn float_round_trip() {
        let q = [0.5, -0.5, 0.5, 0.5];
        let m = FloatSu2::from_quaternion(q);
        assert_eq!(m.to_quaternion(1e-9).unwrap(), q);
        let mut bad = m.clone();
        bad.0[1][1].re = 3.0;
        assert!(bad.to_quaternion(1e-6).is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(QuatR::i()).unwrap();
        assert_eq!(v[1], serde_json::json!({"a": "1", "b": "0", "k": 0}));
        let m = serde_json::to_value(FloatSu2::from_quaternion([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(m[0][0], serde_json::json!({"re": 1.0, "im": 0.0}));
    }
}
