//! The 8-dimensional system of G₇-invariant septimics on P⁶, the distinguished
//! line X₇ fixed by the normalizer, its complement W₇ and the map κ.
//!
//! ι has determinant −1 on V₀; the lift of ι inside SL(V₀) is −ι, and in odd
//! degree invariance under −ι means P(ιx) = −P(x).

use crate::exactcore::{monomials, rat_int, CycNum, ExactError, MPoly, Mat, Mono, Rat, Ring};
use crate::heisenberg::{act_on_poly, generators, heis, restrict_poly, u4_basis, w3_basis, GroupElement, HeisenbergError};
use crate::numeric::{plane, rng, C64};
use std::collections::BTreeSet;
use std::sync::OnceLock;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SeptimicError {
    #[error("invariant space has dimension {0}, expected 8")]
    DimensionMismatch(usize),
    #[error("fixed subspace has dimension {0}, expected 1")]
    UniquenessFailure(usize),
    #[error("restriction to the plane is not divisible by the quartic")]
    DivisionFailure,
    #[error("point lies on the base locus (max relative value {0:.2e})")]
    BaseLocusPoint(f64),
    #[error("polynomial is not in the invariant span")]
    NotInSpan,
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub struct SeptimicSystem {
    /// Basis Oₖ − ιOₖ, sorted by descending leading monomial.
    pub basis: Vec<MPoly<CycNum>>,
    /// A monomial of the positive orbit of each basis element (coefficient 1).
    pub reps: Vec<Mono>,
    pub trivial_line: MPoly<CycNum>,
    /// Coordinates of X₇ in `basis`.
    pub trivial_coords: Vec<CycNum>,
    pub w7_part: Vec<MPoly<CycNum>>,
    pub w7_coords: Vec<Vec<CycNum>>,
    /// Degree-7 exponent vectors scanned by the weight filter.
    pub scanned: usize,
    pub basis_c64: Vec<MPoly<C64>>,
}

fn shift(e: &[u16], s: usize) -> Vec<u16> {
    // σ moves the exponent of xᵢ to xᵢ₊ₛ
    let n = e.len();
    let mut out = vec![0; n];
    for i in 0..n {
        out[(i + s) % n] = e[i];
    }
    out
}

fn negate(e: &[u16]) -> Vec<u16> {
    let n = e.len();
    (0..n).map(|i| e[(n - i) % n]).collect()
}

fn orbit(e: &[u16]) -> BTreeSet<Vec<u16>> {
    (0..e.len()).map(|s| shift(e, s)).collect()
}

/// Candidate invariants O − ιO from weight-0 monomials, and the scan count.
pub fn orbit_invariants() -> (Vec<MPoly<CycNum>>, usize) {
    let all = monomials(7, 7);
    let scanned = all.len();
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut out = Vec::new();
    for m in &all {
        let w: usize = m.0.iter().enumerate().map(|(i, &a)| i * a as usize).sum();
        if w % 7 != 0 || seen.contains(&m.0) {
            continue;
        }
        let o = orbit(&m.0);
        let io: BTreeSet<Vec<u16>> = o.iter().map(|e| negate(e)).collect();
        seen.extend(o.iter().cloned());
        seen.extend(io.iter().cloned());
        if o == io {
            continue;
        }
        let mut p = MPoly::zero(7);
        for e in &o {
            p.add_term(Mono(e.clone()), &CycNum::one());
        }
        for e in &io {
            p.add_term(Mono(e.clone()), &CycNum::from_int(-1));
        }
        out.push(p.monic());
    }
    (out, scanned)
}

/// The SL(V₀) lift −ι.
pub fn iota_sl() -> GroupElement {
    let i = generators().iota;
    GroupElement::new(i.matrix.scale(&CycNum::from_int(-1)), "−ι")
}

/// The SL(V₀) lift −S.
pub fn fourier_sl() -> GroupElement {
    let s = generators().fourier_s;
    GroupElement::new(s.matrix.scale(&CycNum::from_int(-1)), "−S")
}

/// Bombieri weight ‖xᵃ‖² = a!/7! up to the common factor 1/7!.
fn bombieri_weight(m: &Mono) -> Rat {
    rat_int(m.factorial() as i64)
}

pub fn invariant_septimic_basis() -> Result<SeptimicSystem, SeptimicError> {
    let (mut basis, scanned) = orbit_invariants();
    basis.sort_by(|a, b| b.leading().unwrap().0.cmp(a.leading().unwrap().0));
    let mons = monomials(7, 7);
    let rows: Vec<Vec<CycNum>> = basis.iter().map(|p| p.coeff_vector(&mons)).collect();
    let rank = Mat::from_rows(rows).rank();
    if rank != 8 || basis.len() != 8 {
        return Err(SeptimicError::DimensionMismatch(rank));
    }
    let reps: Vec<Mono> = basis.iter().map(|p| p.leading().unwrap().0.clone()).collect();
    let partial = SeptimicSystem {
        basis_c64: basis.iter().map(|p| p.to_c64()).collect(),
        basis,
        reps,
        trivial_line: MPoly::zero(7),
        trivial_coords: vec![],
        w7_part: vec![],
        w7_coords: vec![],
        scanned,
    };
    let fixed = fixed_subspace(&partial, &[fourier_sl(), generators().gauss_v])?;
    if fixed.len() != 1 {
        return Err(SeptimicError::UniquenessFailure(fixed.len()));
    }
    let mut x = partial.combine(&fixed[0]);
    let lc = x.leading().unwrap().1.inverse()?;
    x = x.scale(&lc);
    let xc = partial.coords(&x)?;
    // Hermitian complement for the Bombieri product; basis elements are orthogonal
    let weights: Vec<Rat> = partial
        .basis
        .iter()
        .map(|p| p.terms().map(|(m, _)| bombieri_weight(m)).fold(rat_int(0), |a, b| a + b))
        .collect();
    let row: Vec<CycNum> = xc.iter().zip(&weights).map(|(c, w)| c.conj().scale(w)).collect();
    let w7c = Mat::from_rows(vec![row]).kernel();
    let w7: Vec<MPoly<CycNum>> = w7c.iter().map(|c| partial.combine(c)).collect();
    Ok(SeptimicSystem { trivial_line: x, trivial_coords: xc, w7_part: w7, w7_coords: w7c, ..partial })
}

static SYSTEM: OnceLock<SeptimicSystem> = OnceLock::new();

/// Shared, lazily computed system.
pub fn system() -> &'static SeptimicSystem {
    SYSTEM.get_or_init(|| invariant_septimic_basis().expect("invariant septimic basis"))
}

impl SeptimicSystem {
    pub fn combine(&self, c: &[CycNum]) -> MPoly<CycNum> {
        let mut p = MPoly::zero(7);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                p = p.plus(&b.scale(x));
            }
        }
        p
    }

    /// Coordinates of P in the basis, verified exactly.
    pub fn coords(&self, p: &MPoly<CycNum>) -> Result<Vec<CycNum>, SeptimicError> {
        let c: Vec<CycNum> = self.reps.iter().map(|m| p.coeff(m)).collect();
        if &self.combine(&c) != p {
            return Err(SeptimicError::NotInSpan);
        }
        Ok(c)
    }

    /// Matrix of P ↦ act(g, P) on the basis (columns are images).
    pub fn action_matrix(&self, g: &GroupElement) -> Result<Mat<CycNum>, SeptimicError> {
        let cols: Result<Vec<Vec<CycNum>>, SeptimicError> = self
            .basis
            .iter()
            .map(|b| self.coords(&act_on_poly(g, b)?))
            .collect();
        Ok(Mat::from_cols(&cols?))
    }

    /// Values (X₇(p), w₁(p), …, w₇(p)).
    pub fn split_values(&self, vals: &[C64]) -> Vec<C64> {
        let lin = |c: &[CycNum]| c.iter().zip(vals).map(|(a, v)| a.embed() * v).sum::<C64>();
        let mut out = vec![lin(&self.trivial_coords)];
        out.extend(self.w7_coords.iter().map(|c| lin(c)));
        out
    }

    /// Basis values at p divided by ‖bᵢ‖₁‖p‖⁷.
    pub fn rel_values(&self, p: &[C64]) -> Vec<f64> {
        self.basis_c64.iter().map(|b| plane::rel_value(b, p)).collect()
    }
}

/// Common fixed vectors (in basis coordinates) of the given elements.
pub fn fixed_subspace(sys: &SeptimicSystem, gens: &[GroupElement]) -> Result<Vec<Vec<CycNum>>, SeptimicError> {
    let mut stacked: Option<Mat<CycNum>> = None;
    for g in gens {
        let a = sys.action_matrix(g)?;
        let d = a.plus(&Mat::identity(8).scale(&CycNum::from_int(-1)));
        stacked = Some(match stacked {
            None => d,
            Some(s) => s.vstack(&d),
        });
    }
    Ok(stacked.map_or_else(|| identity_cols(8), |s| s.kernel()))
}

fn identity_cols(n: usize) -> Vec<Vec<CycNum>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { CycNum::one() } else { CycNum::zero() }).collect())
        .collect()
}

pub fn n7_invariant_septimic() -> &'static MPoly<CycNum> {
    &system().trivial_line
}

pub fn restrict_to_subspace(p: &MPoly<CycNum>, basis: &[Vec<CycNum>]) -> Result<MPoly<CycNum>, SeptimicError> {
    Ok(restrict_poly(p, basis)?)
}

/// Basis of the 3-space b·U₄ of the involution b ι b⁻¹, b = σᵘτᵛ.
pub fn p3minus_basis(u: i64, v: i64) -> Vec<Vec<CycNum>> {
    let b = heis(u, v);
    u4_basis().iter().map(|x| b.matrix.mul_vec(x)).collect()
}

/// Basis of the plane b·W₃.
pub fn p2plus_basis(u: i64, v: i64) -> Vec<Vec<CycNum>> {
    let b = heis(u, v);
    w3_basis().iter().map(|x| b.matrix.mul_vec(x)).collect()
}

/// Number of (septimic, 3-space) pairs whose restriction is not zero.
pub fn count_nonvanishing_on_p3minus(sys: &SeptimicSystem) -> usize {
    use rayon::prelude::*;
    (0..49)
        .into_par_iter()
        .map(|k| {
            let basis = p3minus_basis(k / 7, k % 7);
            sys.basis
                .iter()
                .filter(|p| !restrict_poly(p, &basis).expect("7 variables").is_zero())
                .count()
        })
        .sum()
}

pub struct PlaneFactorization {
    pub restrictions: Vec<MPoly<CycNum>>,
    pub cubic_factors: Vec<MPoly<CycNum>>,
    pub span_dim: usize,
    pub trivial_cubic: MPoly<CycNum>,
}

/// Restrictions of the basis to P²₊ = P(W₃) in the coordinates x = Σ tₖwₖ,
/// each divided exactly by the quartic.
pub fn p2plus_factorization(sys: &SeptimicSystem, quartic: &MPoly<CycNum>) -> Result<PlaneFactorization, SeptimicError> {
    let w = w3_basis();
    let mut restrictions = Vec::new();
    let mut cubics = Vec::new();
    for b in &sys.basis {
        let r = restrict_poly(b, &w)?;
        let q = r.div_exact(quartic).ok_or(SeptimicError::DivisionFailure)?;
        restrictions.push(r);
        cubics.push(q);
    }
    let mons = monomials(3, 3);
    let span_dim = Mat::from_rows(cubics.iter().map(|c| c.coeff_vector(&mons)).collect()).rank();
    let xr = restrict_poly(&sys.trivial_line, &w)?;
    let trivial_cubic = xr.div_exact(quartic).ok_or(SeptimicError::DivisionFailure)?;
    Ok(PlaneFactorization { restrictions, cubic_factors: cubics, span_dim, trivial_cubic })
}

pub struct VeroneseDegree {
    pub map_rank: usize,
    pub degree: usize,
    pub max_residual: f64,
}

/// Degree of the map P²₊ → P(W₇) as the intersection number of two random
/// members of the cubic span.
pub fn veronese_degree_check(fact: &PlaneFactorization, seed: u64) -> Result<VeroneseDegree, crate::numeric::NumericError> {
    let mut r = rng::stream(seed, "veronese");
    let cubics: Vec<MPoly<C64>> = fact.cubic_factors.iter().map(|c| c.to_c64()).collect();
    let mut member = || {
        let mut p = MPoly::zero(3);
        for c in &cubics {
            p = p.plus(&c.scale(&rng::gauss(&mut r)));
        }
        p
    };
    let (f, g) = (member(), member());
    let pts = plane::intersect(&f, &g, seed)?;
    Ok(VeroneseDegree {
        map_rank: fact.span_dim,
        degree: pts.iter().map(|p| p.mult).sum(),
        max_residual: pts.iter().map(|p| p.residual).fold(0.0, f64::max),
    })
}

#[derive(Clone, Debug)]
pub struct KappaImagePoint {
    pub coords: Vec<C64>,
}

pub const BASE_LOCUS_TOL: f64 = 1e-10;

/// κ(p) in the split coordinates (X₇, W₇).
pub fn kappa(sys: &SeptimicSystem, p: &[C64]) -> Result<KappaImagePoint, SeptimicError> {
    let rel = sys.rel_values(p);
    let top = rel.iter().cloned().fold(0.0, f64::max);
    if top < BASE_LOCUS_TOL {
        return Err(SeptimicError::BaseLocusPoint(top));
    }
    let vals: Vec<C64> = sys.basis_c64.iter().map(|b| b.eval_c64(p)).collect();
    Ok(KappaImagePoint { coords: sys.split_values(&vals) })
}

pub fn apply_c64(g: &GroupElement, p: &[C64]) -> Vec<C64> {
    let m = g.matrix.to_dmatrix();
    crate::numeric::linalg::mat_vec(&m, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_invariants_from_1716_monomials() {
        let sys = system();
        assert_eq!(sys.basis.len(), 8);
        assert_eq!(sys.scanned, 1716);
        assert_eq!(sys.w7_part.len(), 7);
    }

    #[test]
    fn product_monomial_is_iota_symmetric() {
        // x₀⋯x₆ is fixed by σ and ι, so it cancels in O − ιO
        let m = Mono(vec![1; 7]);
        assert!(system().basis.iter().all(|b| b.coeff(&m).is_zero()));
    }

    #[test]
    fn restriction_of_x0_power_to_plane() {
        let p = MPoly::<CycNum>::var(7, 0).pow(7);
        assert!(restrict_to_subspace(&p, &w3_basis()).unwrap().is_zero());
    }

    #[test]
    fn restriction_to_full_space_is_identity() {
        let sys = system();
        let e: Vec<Vec<CycNum>> = identity_cols(7);
        assert_eq!(restrict_to_subspace(&sys.basis[0], &e).unwrap(), sys.basis[0]);
    }
}
