//! Complex floating-point toolkit: SVD-based linear algebra, univariate and
//! binary-form roots, plane curve intersections and point clustering.

pub mod cluster;
pub mod linalg;
pub mod plane;
pub mod roots;
pub mod rng;

use num_complex::Complex64;

pub type C64 = Complex64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum NumericError {
    #[error("root finding did not converge: {0}")]
    NoConvergence(String),
    #[error("ambiguous clustering: gap {gap:.3e} inside the band [{tol:.1e}, {band:.1e}]")]
    AmbiguousClustering { gap: f64, tol: f64, band: f64 },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &[C64]) -> Vec<C64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

/// Hermitian product Σ conj(aᵢ) bᵢ.
pub fn hdot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Bilinear product Σ aᵢ bᵢ.
pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sine of the Fubini–Study angle between two projective points, in [0, 1].
pub fn proj_dist(a: &[C64], b: &[C64]) -> f64 {
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    // ‖â − ⟨b̂, â⟩ b̂‖, accurate near zero
    let c = hdot(b, a) / (na * nb);
    a.iter().zip(b).map(|(x, y)| (x / na - y / nb * c).norm_sqr()).sum::<f64>().sqrt().min(1.0)
}

/// Scales v so its entry of largest modulus is 1.
pub fn proj_normalize(v: &[C64]) -> Vec<C64> {
    let k = (0..v.len())
        .max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
        .expect("nonempty");
    let s = v[k];
    v.iter().map(|z| z / s).collect()
}

pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|x| x * s).collect()
}

/// Cross product in C³ (the line through two points, or the point on two lines).
pub fn cross(a: &[C64], b: &[C64]) -> Vec<C64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
