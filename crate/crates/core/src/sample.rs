//! Seeded random sampling on the unit sphere of `R^4`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Deterministic generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Haar-random unit quaternion: a normalized standard Gaussian vector.
pub fn haar_quaternion<R: rand::Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = norm(&v);
        if n > 1e-9 {
            return v.map(|c| c / n);
        }
    }
}

/// `count` Haar-random unit quaternions from `seed`.
pub fn haar_quaternions(count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut r = rng(seed);
    (0..count).map(|_| haar_quaternion(&mut r)).collect()
}

pub fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64; 4]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
