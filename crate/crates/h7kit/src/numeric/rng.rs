use super::C64;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Prng = ChaCha8Rng;

/// Deterministic generator for a (seed, stream name) pair.
pub fn stream(seed: u64, name: &str) -> Prng {
    // FNV-1a keeps stream ids stable across toolchains
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    Prng::seed_from_u64(seed ^ h.rotate_left(17))
}

pub fn gauss(rng: &mut Prng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) / 2f64.sqrt()
}

pub fn gauss_vec(rng: &mut Prng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gauss(rng)).collect()
}

pub fn real_gauss(rng: &mut Prng) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn unitary(rng: &mut Prng, n: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| gauss(rng));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q.clone();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] = q[(i, j)] * ph;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a = gauss_vec(&mut stream(1, "x"), 3);
        let b = gauss_vec(&mut stream(1, "x"), 3);
        let c = gauss_vec(&mut stream(1, "y"), 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unitary_is_unitary() {
        let u = unitary(&mut stream(3, "u"), 4);
        let e = &u.adjoint() * &u - DMatrix::identity(4, 4);
        assert!(e.norm() < 1e-12);
    }
}
