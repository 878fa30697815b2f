//! Heisenberg-invariant elliptic normal curves of degree 7 from level-7
//! theta series, and the plane and space sections of their translation
//! scrolls.

use crate::exactcore::CycNum;
use crate::numeric::{self, linalg, rng, NumericError, C64};
use crate::vsp::{scheme_type, PointScheme, VspError};
use nalgebra::DMatrix;
use std::f64::consts::PI;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum ThetaError {
    #[error("tau must have positive imaginary part, got {0}")]
    BadTau(C64),
    #[error("series truncation {0} insufficient for the requested tolerance")]
    TruncationInsufficient(usize),
    #[error("line does not meet the subspace (residual {0:.2e})")]
    NoIntersection(f64),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Vsp(#[from] VspError),
    #[error(transparent)]
    Apolarity(#[from] crate::apolarity::ApolarityError),
}

pub const TAIL_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct EllipticModel {
    pub tau: C64,
    /// Terms |m| ≤ max_terms are summed; enough on the reduced domain.
    pub max_terms: usize,
}

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

impl EllipticModel {
    pub fn new(tau: C64) -> Result<Self, ThetaError> {
        if tau.im <= 0.0 {
            return Err(ThetaError::BadTau(tau));
        }
        // on the reduced domain |Im w| ≤ 2 Im τ
        let m = Self::cutoff(tau, 2.0 * tau.im);
        if m > 10_000 {
            return Err(ThetaError::TruncationInsufficient(m));
        }
        Ok(EllipticModel { tau, max_terms: m })
    }

    /// Smallest M with every term |m| > M below TAIL_TOL times the largest.
    fn cutoff(tau: C64, im_w: f64) -> usize {
        // exponent −π Im τ m²/7 + 2π |m| |Im w|, peak at m₀ = 7|Im w|/Im τ
        let a = PI * tau.im / 7.0;
        let m0 = im_w.abs() / tau.im * 7.0;
        let drop = -TAIL_TOL.ln();
        (m0 + (drop / a).sqrt()).ceil() as usize + 2
    }

    pub fn random(seed: u64) -> Self {
        let mut r = rng::stream(seed, "elliptic_model");
        use rand::Rng;
        let re = r.gen_range(-0.5..0.5);
        let im = r.gen_range(0.9..1.6);
        Self::new(C64::new(re, im)).expect("valid tau")
    }

    /// θ_k(w) = Σ_{m ≡ k} exp(πiτm²/7 + 2πimw), and optionally its derivative.
    fn theta(&self, w: C64, deriv: bool) -> Vec<C64> {
        let m_max = self.max_terms as i64;
        let mut out = vec![C64::new(0.0, 0.0); 7];
        // factor out the largest term to avoid overflow
        let expo = |m: f64| i() * PI * self.tau * m * m / 7.0 + i() * 2.0 * PI * m * w;
        let peak = (-m_max..=m_max).map(|m| expo(m as f64).re).fold(f64::NEG_INFINITY, f64::max);
        for m in -m_max..=m_max {
            let e = expo(m as f64);
            let mut t = (e - peak).exp();
            if deriv {
                t *= i() * 2.0 * PI * m as f64;
            }
            out[m.rem_euclid(7) as usize] += t;
        }
        out
    }

    /// z reduced modulo Λ; f is projectively Λ-periodic.
    fn reduce(&self, z: C64) -> C64 {
        let b = (z.im / self.tau.im).round();
        let z = z - self.tau * b;
        z - z.re.round()
    }

    /// f(z) = θ(z + (1+τ)/2), as a unit vector.
    pub fn point(&self, z: C64) -> Vec<C64> {
        let w = self.reduce(z) + (self.tau + 1.0) / 2.0;
        numeric::normalize(&self.theta(w, false))
    }

    /// A basis of the tangent line at f(z).
    pub fn tangent(&self, z: C64) -> [Vec<C64>; 2] {
        let w = self.reduce(z) + (self.tau + 1.0) / 2.0;
        let v = self.theta(w, false);
        let d = self.theta(w, true);
        let n = numeric::norm(&v);
        [numeric::scale(&v, C64::new(1.0 / n, 0.0)), numeric::scale(&d, C64::new(1.0 / n, 0.0))]
    }

    pub fn half_periods(&self) -> [C64; 3] {
        [C64::new(0.5, 0.0), self.tau / 2.0, (self.tau + 1.0) / 2.0]
    }
}

/// Even part (U₄ coordinates y₀..y₃) and odd part (W₃ coordinates x₁..x₃).
pub fn even_part(v: &[C64]) -> Vec<C64> {
    let mut out = vec![v[0]];
    out.extend((1..4).map(|k| (v[k] + v[7 - k]) / 2.0));
    out
}

pub fn odd_part(v: &[C64]) -> Vec<C64> {
    (1..4).map(|k| (v[k] - v[7 - k]) / 2.0).collect()
}

/// ‖odd part‖/‖v‖, the distance from U₄.
pub fn off_u4(v: &[C64]) -> f64 {
    numeric::norm(&odd_part(v)) * 2f64.sqrt() / numeric::norm(v)
}

/// ‖even part‖/‖v‖, the distance from W₃.
pub fn off_w3(v: &[C64]) -> f64 {
    let e = even_part(v);
    let n = (e[0].norm_sqr() + 2.0 * e[1..].iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
    n / numeric::norm(v)
}

fn apply(g: &crate::heisenberg::GroupElement, v: &[C64]) -> Vec<C64> {
    crate::septimics::apply_c64(g, v)
}

pub struct ModelChecks {
    pub equivariance: f64,
    pub origin_in_w3: f64,
    pub half_periods_in_u4: [f64; 3],
}

/// f(z+1/7) ∝ τ·f(z), f(z+τ/7) ∝ σ⁻¹·f(z), f(0) ∈ W₃, f(half-period) ∈ U₄.
pub fn model_checks(model: &EllipticModel, samples: usize, seed: u64) -> ModelChecks {
    let g = crate::heisenberg::generators();
    let sigma_inv = g.sigma.inverse();
    let mut r = rng::stream(seed, "model_checks");
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = rng::gauss(&mut r) * 0.5;
        let f = model.point(z);
        let a = model.point(z + 1.0 / 7.0);
        let b = model.point(z + model.tau / 7.0);
        worst = worst.max(numeric::proj_dist(&a, &apply(&g.tau, &f)));
        worst = worst.max(numeric::proj_dist(&b, &apply(&sigma_inv, &f)));
    }
    let hp = model.half_periods();
    ModelChecks {
        equivariance: worst,
        origin_in_w3: off_w3(&model.point(C64::new(0.0, 0.0))),
        half_periods_in_u4: hp.map(|h| off_u4(&model.point(h))),
    }
}

/// max over samples and basis septimics of the normalized values on the curve.
pub fn septimic_on_curve(model: &EllipticModel, samples: usize, seed: u64) -> f64 {
    let sys = crate::septimics::system();
    let mut r = rng::stream(seed, "septimic_on_curve");
    (0..samples)
        .map(|_| {
            let z = rng::gauss(&mut r) * 0.5;
            sys.rel_values(&model.point(z)).into_iter().fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// The point of span{u, w} in the kernel of `proj` (a linear map on C⁷).
fn meet(u: &[C64], w: &[C64], proj: impl Fn(&[C64]) -> Vec<C64>) -> (Vec<C64>, f64) {
    let (pu, pw) = (proj(u), proj(w));
    let m = DMatrix::from_fn(pu.len(), 2, |i, j| if j == 0 { pu[i] } else { pw[i] });
    let (vecs, sv) = linalg::right_singular(&m);
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let c = &vecs[0];
    let p: Vec<C64> = (0..7).map(|k| u[k] * c[0] + w[k] * c[1]).collect();
    (numeric::normalize(&p), sv[0] / top)
}

/// Spanning points of the scroll line through f(z) and f(z + σ); the tangent
/// line when the two coincide.
pub fn scroll_line(model: &EllipticModel, z: C64, sigma: C64) -> [Vec<C64>; 2] {
    let a = model.point(z);
    let b = model.point(z + sigma);
    if numeric::proj_dist(&a, &b) < 1e-6 {
        model.tangent(z)
    } else {
        [a, b]
    }
}

#[derive(Clone, Debug)]
pub struct ScrollSection {
    pub sigma: C64,
    /// Points in W₃ coordinates (x₁, x₂, x₃) or U₄ coordinates (y₀..y₃).
    pub points: Vec<(Vec<C64>, usize)>,
    pub scheme: PointScheme,
    /// Largest line-versus-subspace residual.
    pub residual: f64,
}

impl ScrollSection {
    pub fn length(&self) -> usize {
        self.scheme.length()
    }

    pub fn label(&self) -> String {
        self.scheme.label(None, 0.0)
    }
}

/// Lines of the scroll (E, ±σ) fixed by ι: z = −σ/2 + h, h ∈ ½Λ/Λ.
pub fn invariant_line_parameters(model: &EllipticModel, sigma: C64) -> Vec<C64> {
    let mut hs = vec![C64::new(0.0, 0.0)];
    hs.extend(model.half_periods());
    hs.into_iter().map(|h| -sigma / 2.0 + h).collect()
}

fn w3_coords(v: &[C64]) -> Vec<C64> {
    numeric::normalize(&(1..4).map(|k| v[k]).collect::<Vec<_>>())
}

fn u4_coords(v: &[C64]) -> Vec<C64> {
    numeric::normalize(&(0..4).map(|k| v[k]).collect::<Vec<_>>())
}

pub const LINE_TOL: f64 = 1e-7;

/// (E, ±σ) ∩ P²₊: one point on each invariant line and f(0) doubled.
pub fn scroll_plane_section(model: &EllipticModel, sigma: C64) -> Result<ScrollSection, ThetaError> {
    let mut pts = Vec::new();
    let mut residual: f64 = 0.0;
    for z in invariant_line_parameters(model, sigma) {
        let [u, w] = scroll_line(model, z, sigma);
        let (p, res) = meet(&u, &w, even_part);
        residual = residual.max(res);
        pts.push((w3_coords(&p), 1));
    }
    if residual > LINE_TOL {
        return Err(ThetaError::NoIntersection(residual));
    }
    pts.push((w3_coords(&model.point(C64::new(0.0, 0.0))), 2));
    let scheme = scheme_type(&pts)?;
    Ok(ScrollSection { sigma, points: pts, scheme, residual })
}

/// (E, ±σ) ∩ P³₋: one point on each invariant line and the three nonzero
/// half-periods of E doubled.
pub fn scroll_space_section(model: &EllipticModel, sigma: C64) -> Result<ScrollSection, ThetaError> {
    let mut pts = Vec::new();
    let mut residual: f64 = 0.0;
    for z in invariant_line_parameters(model, sigma) {
        let [u, w] = scroll_line(model, z, sigma);
        let (p, res) = meet(&u, &w, odd_part);
        residual = residual.max(res);
        pts.push((u4_coords(&p), 1));
    }
    if residual > LINE_TOL {
        return Err(ThetaError::NoIntersection(residual));
    }
    for h in model.half_periods() {
        pts.push((u4_coords(&model.point(h)), 2));
    }
    let scheme = scheme_type(&pts)?;
    Ok(ScrollSection { sigma, points: pts, scheme, residual })
}

pub struct ConicReport {
    /// σ_min/σ_max of the ν₂ evaluation matrix.
    pub smallest: f64,
    pub next: f64,
    pub conic: Vec<C64>,
}

/// Whether the given plane points lie on one conic.
pub fn common_conic(points: &[Vec<C64>]) -> ConicReport {
    let rows: Vec<Vec<C64>> = points.iter().map(|p| numeric::normalize(&crate::apolarity::nu2_c64(&numeric::normalize(p)))).collect();
    let m = linalg::from_rows(&rows);
    let (vecs, sv) = linalg::right_singular(&m);
    let mut sorted = sv.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let top = sorted[0];
    let smallest = if rows.len() >= 6 { sorted[5] / top } else { 0.0 };
    ConicReport { smallest, next: sorted[4] / top, conic: vecs[0].clone() }
}

/// f(0) in W₃ coordinates; a point of K'₄.
pub fn origin_point(model: &EllipticModel) -> Vec<C64> {
    w3_coords(&model.point(C64::new(0.0, 0.0)))
}

/// Largest normalized value of the antipolar conic of f(0) on the plane
/// sections of the scrolls (E, ±σ).
pub fn antipolar_conic_residual(model: &EllipticModel, sigmas: &[C64]) -> Result<f64, ThetaError> {
    let kl = crate::apolarity::klein();
    let conic = crate::apolarity::antipolar_conic(&kl.cat, &origin_point(model))?;
    let mut worst: f64 = 0.0;
    for &s in sigmas {
        for (p, _) in scroll_plane_section(model, s)?.points {
            worst = worst.max(conic.rel_value(&p));
        }
    }
    Ok(worst)
}

pub struct TwoTorsionReport {
    /// For each sampled P³₋, the least residual of a candidate scroll line lying in it.
    pub line_residuals: Vec<f64>,
    /// Rank of sampled points of the found lines in each space.
    pub section_ranks: Vec<usize>,
    pub septimic_residual: f64,
}

/// Degree count: a septimic containing E and meeting each of the 49 spaces
/// in a line meets the scroll in degree 49·1 + 7 > 7·7.
pub const BEZOUT_DEGREE: (usize, usize) = (49 + 7, 7 * 7);

/// The scroll (E, ω) for a nonzero half-period ω.
pub fn two_torsion_scroll_checks(model: &EllipticModel, spaces: &[(i64, i64)], seed: u64) -> Result<TwoTorsionReport, ThetaError> {
    let omega = model.half_periods()[0];
    let mut r = rng::stream(seed, "two_torsion");
    let mut line_residuals = Vec::new();
    let mut section_ranks = Vec::new();
    let hs = {
        let mut v = vec![C64::new(0.0, 0.0)];
        v.extend(model.half_periods());
        v
    };
    for &(u, v) in spaces {
        let basis: Vec<Vec<C64>> = crate::septimics::p3minus_basis(u, v)
            .iter()
            .map(|b| b.iter().map(CycNum::embed).collect())
            .collect();
        let q = numeric::linalg::from_rows(&basis).transpose();
        let dist = |x: &[C64]| linalg::lstsq(&q, x).1;
        let mut best = (f64::INFINITY, C64::new(0.0, 0.0));
        for a in 0..7 {
            for b in 0..7 {
                for h in &hs {
                    let z = (model.tau * b as f64 + a as f64) / 7.0 + h;
                    let d = dist(&model.point(z)).max(dist(&model.point(z + omega)));
                    if d < best.0 {
                        best = (d, z);
                    }
                }
            }
        }
        line_residuals.push(best.0);
        let (p0, p1) = (model.point(best.1), model.point(best.1 + omega));
        let samples: Vec<Vec<C64>> = (0..6)
            .map(|_| {
                let (s, t) = (rng::gauss(&mut r), rng::gauss(&mut r));
                (0..7).map(|k| p0[k] * s + p1[k] * t).collect()
            })
            .collect();
        section_ranks.push(linalg::numeric_rank(&linalg::from_rows(&samples), 1e-8));
    }
    let sys = crate::septimics::system();
    let mut sept: f64 = 0.0;
    for _ in 0..20 {
        let z = rng::gauss(&mut r) * 0.5;
        let (p0, p1) = (model.point(z), model.point(z + omega));
        let (s, t) = (rng::gauss(&mut r), rng::gauss(&mut r));
        let x: Vec<C64> = (0..7).map(|k| p0[k] * s + p1[k] * t).collect();
        sept = sept.max(sys.rel_values(&x).into_iter().fold(0.0, f64::max));
    }
    Ok(TwoTorsionReport { line_residuals, section_ranks, septimic_residual: sept })
}

pub struct SectionCount {
    pub plane_length: usize,
    pub space_length: usize,
    /// Whether σ and −σ give the same schemes.
    pub symmetric: bool,
}

fn same_points(a: &ScrollSection, b: &ScrollSection) -> bool {
    a.scheme.partition == b.scheme.partition
        && a.scheme.points.iter().all(|(p, m)| b.scheme.points.iter().any(|(q, n)| m == n && numeric::proj_dist(p, q) < 1e-7))
}

pub fn abelian_section_count(model: &EllipticModel, sigma: C64) -> Result<SectionCount, ThetaError> {
    let plane = scroll_plane_section(model, sigma)?;
    let space = scroll_space_section(model, sigma)?;
    let plane_neg = scroll_plane_section(model, -sigma)?;
    let space_neg = scroll_space_section(model, -sigma)?;
    Ok(SectionCount {
        plane_length: plane.length(),
        space_length: space.length(),
        symmetric: same_points(&plane, &plane_neg) && same_points(&space, &space_neg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_recombine() {
        let v: Vec<C64> = (0..7).map(|k| C64::new(k as f64, 1.0 - k as f64)).collect();
        let e = even_part(&v);
        let o = odd_part(&v);
        for k in 1..4 {
            assert!((e[k] + o[k - 1] - v[k]).norm() < 1e-15);
            assert!((e[k] - o[k - 1] - v[7 - k]).norm() < 1e-15);
        }
    }

    #[test]
    fn cutoff_grows_as_tau_degenerates() {
        let a = EllipticModel::new(C64::new(0.0, 1.0)).unwrap();
        let b = EllipticModel::new(C64::new(0.0, 0.3)).unwrap();
        assert!(b.max_terms > a.max_terms);
        assert!(EllipticModel::new(C64::new(0.0, -1.0)).is_err());
    }
}
