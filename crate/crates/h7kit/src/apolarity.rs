//! Apolarity for plane quartics: the catalecticant α_F, antipolar conics,
//! the dual quartic F♭, the sextic H_F, and the order-168 action on P²₊.

use crate::exactcore::cyc::as_signed_root;
use crate::exactcore::{monomials, rat_int, CycNum, ExactError, MPoly, Mat, Mono, Ring};
use crate::heisenberg::{generators, group_closure, restrict, w3_basis, GroupElement, HeisenbergError};
use crate::numeric::{self, linalg, plane, NumericError, C64};
use nalgebra::DMatrix;
use std::sync::OnceLock;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum ApolarityError {
    #[error("catalecticant is singular (rank {0})")]
    SingularCatalecticant(usize),
    #[error("invariant space has dimension {0}, expected 1")]
    UniquenessFailure(usize),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Degree-4 ternary form.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneQuartic {
    pub form: MPoly<CycNum>,
}

impl PlaneQuartic {
    pub fn new(form: MPoly<CycNum>) -> Self {
        assert!(form.nvars() == 3 && form.is_homogeneous() && form.degree() == Some(4));
        PlaneQuartic { form }
    }

    pub fn from_terms(terms: &[([u16; 3], i64)]) -> Self {
        Self::new(MPoly::from_terms(3, terms.iter().map(|(e, c)| (Mono(e.to_vec()), CycNum::from_int(*c)))))
    }
}

/// The quadratic monomials a², b², c², ab, ac, bc.
pub fn e2() -> Vec<Mono> {
    [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
        .iter()
        .map(|e| Mono(e.to_vec()))
        .collect()
}

pub struct Catalecticant {
    /// A[m][m'] = ∂^{m+m'} F.
    pub matrix: Mat<CycNum>,
    pub rank: usize,
    inverse: Option<Mat<CycNum>>,
    inverse_c64: Option<DMatrix<C64>>,
}

impl Catalecticant {
    pub fn is_clebsch(&self) -> bool {
        self.rank <= 5
    }

    pub fn inverse(&self) -> Result<&Mat<CycNum>, ApolarityError> {
        self.inverse.as_ref().ok_or(ApolarityError::SingularCatalecticant(self.rank))
    }

    pub fn inverse_c64(&self) -> Result<&DMatrix<C64>, ApolarityError> {
        self.inverse_c64.as_ref().ok_or(ApolarityError::SingularCatalecticant(self.rank))
    }
}

pub fn catalecticant(f: &PlaneQuartic) -> Catalecticant {
    let b = e2();
    let m = Mat::from_fn(6, 6, |i, j| {
        let s = b[i].mul(&b[j]);
        f.form.coeff(&s).times(&CycNum::from_int(s.factorial() as i64))
    });
    let rank = m.rank();
    let inverse = if rank == 6 { m.inverse().ok() } else { None };
    let inverse_c64 = inverse.as_ref().map(|x| x.to_dmatrix());
    Catalecticant { matrix: m, rank, inverse, inverse_c64 }
}

pub fn nu2_c64(x: &[C64]) -> Vec<C64> {
    e2().iter().map(|m| m.eval(x)).collect()
}

/// Conic given by a symmetric Gram matrix: Q(x) = xᵀ G x.
#[derive(Clone, Debug)]
pub struct ConicForm {
    pub gram: DMatrix<C64>,
}

impl ConicForm {
    /// From coefficients on a², b², c², ab, ac, bc.
    pub fn from_coeffs(c: &[C64]) -> Self {
        let h = C64::new(0.5, 0.0);
        let g = DMatrix::from_row_slice(
            3,
            3,
            &[c[0], c[3] * h, c[4] * h, c[3] * h, c[1], c[5] * h, c[4] * h, c[5] * h, c[2]],
        );
        ConicForm { gram: g }
    }

    pub fn coeffs(&self) -> Vec<C64> {
        let g = &self.gram;
        vec![g[(0, 0)], g[(1, 1)], g[(2, 2)], g[(0, 1)] * 2.0, g[(0, 2)] * 2.0, g[(1, 2)] * 2.0]
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        numeric::dot(x, &linalg::mat_vec(&self.gram, x))
    }

    /// B(x, y) = xᵀ G y.
    pub fn bilinear(&self, x: &[C64], y: &[C64]) -> C64 {
        numeric::dot(x, &linalg::mat_vec(&self.gram, y))
    }

    /// |Q(x)| / (‖G‖ ‖x‖²).
    pub fn rel_value(&self, x: &[C64]) -> f64 {
        self.eval(x).norm() / (self.gram.norm() * numeric::norm(x).powi(2))
    }

    pub fn rank(&self, rel: f64) -> usize {
        linalg::numeric_rank(&self.gram, rel)
    }

    pub fn det(&self) -> C64 {
        linalg::det(&self.gram)
    }

    pub fn to_mpoly(&self) -> MPoly<C64> {
        MPoly::from_terms(3, e2().into_iter().zip(self.coeffs()))
    }

    /// Splits a conic of rank ≤ 2 into two lines (as coefficient vectors).
    pub fn split_lines(&self) -> Option<(Vec<C64>, Vec<C64>)> {
        split_degenerate_conic(&self.gram)
    }
}

/// Lines l, m with G ∝ (l mᵀ + m lᵀ)/2 for a singular symmetric G.
pub fn split_degenerate_conic(g: &DMatrix<C64>) -> Option<(Vec<C64>, Vec<C64>)> {
    let (vecs, sv) = linalg::right_singular(g);
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return None;
    }
    let p = &vecs[0];
    // restrict to a line missing the vertex p and factor the binary quadratic
    let basis: Vec<Vec<C64>> = vecs[1..].to_vec();
    let q = |s: C64, t: C64| {
        let x: Vec<C64> = (0..3).map(|i| basis[0][i] * s + basis[1][i] * t).collect();
        numeric::dot(&x, &linalg::mat_vec(g, &x))
    };
    let roots = numeric::roots::binary_roots(2, q).ok()?;
    let pts: Vec<Vec<C64>> = roots
        .iter()
        .flat_map(|r| std::iter::repeat(r).take(r.mult))
        .map(|r| (0..3).map(|i| basis[0][i] * r.point[0] + basis[1][i] * r.point[1]).collect())
        .collect();
    if pts.len() != 2 {
        return None;
    }
    Some((numeric::cross(p, &pts[0]), numeric::cross(p, &pts[1])))
}

/// C_ℓ = {x : ν₂(x)ᵀ α_F⁻¹ ν₂(ℓ) = 0}.
pub fn antipolar_conic(cat: &Catalecticant, l: &[C64]) -> Result<ConicForm, ApolarityError> {
    let ainv = cat.inverse_c64()?;
    let c = linalg::mat_vec(ainv, &nu2_c64(l));
    Ok(ConicForm::from_coeffs(&c))
}

/// Exact coefficient vector of C_ℓ on a², b², c², ab, ac, bc.
pub fn antipolar_conic_exact(cat: &Catalecticant, l: &[CycNum]) -> Result<Vec<CycNum>, ApolarityError> {
    let ainv = cat.inverse()?;
    let nu: Vec<CycNum> = e2().iter().map(|m| m.eval(l)).collect();
    Ok(ainv.mul_vec(&nu))
}

/// Symbolic α_F⁻¹ ν₂(ℓ): six quadrics in ℓ.
pub fn conic_coefficient_forms(cat: &Catalecticant) -> Result<Vec<MPoly<CycNum>>, ApolarityError> {
    let ainv = cat.inverse()?;
    let b = e2();
    Ok((0..6)
        .map(|i| MPoly::from_terms(3, (0..6).map(|j| (b[j].clone(), ainv.get(i, j).clone()))))
        .collect())
}

/// F♭(ℓ) = ν₂(ℓ)ᵀ α_F⁻¹ ν₂(ℓ).
pub fn dual_quartic(cat: &Catalecticant) -> Result<PlaneQuartic, ApolarityError> {
    let forms = conic_coefficient_forms(cat)?;
    let mut f = MPoly::zero(3);
    for (m, q) in e2().iter().zip(&forms) {
        f = f.plus(&q.times(&MPoly::monomial(m.clone(), CycNum::one())));
    }
    Ok(PlaneQuartic::new(f))
}

/// H_F(ℓ) = det of the Gram matrix of C_ℓ, a sextic in ℓ.
pub fn singular_locus_sextic(cat: &Catalecticant) -> Result<MPoly<CycNum>, ApolarityError> {
    let c = conic_coefficient_forms(cat)?;
    let half = CycNum::from_rat(crate::exactcore::rat(1, 2));
    let g = [
        [c[0].clone(), c[3].scale(&half), c[4].scale(&half)],
        [c[3].scale(&half), c[1].clone(), c[5].scale(&half)],
        [c[4].scale(&half), c[5].scale(&half), c[2].clone()],
    ];
    Ok(det3(&g))
}

fn det3<C: Ring>(g: &[[MPoly<C>; 3]; 3]) -> MPoly<C> {
    let t = |a: &MPoly<C>, b: &MPoly<C>, c: &MPoly<C>| a.times(b).times(c);
    t(&g[0][0], &g[1][1], &g[2][2])
        .plus(&t(&g[0][1], &g[1][2], &g[2][0]))
        .plus(&t(&g[0][2], &g[1][0], &g[2][1]))
        .minus(&t(&g[0][2], &g[1][1], &g[2][0]))
        .minus(&t(&g[0][0], &g[1][2], &g[2][1]))
        .minus(&t(&g[0][1], &g[1][0], &g[2][2]))
}

/// Determinant of the matrix of second partials.
pub fn hessian<C: Ring>(f: &MPoly<C>) -> MPoly<C> {
    let d: Vec<MPoly<C>> = (0..3).map(|i| f.partial(i)).collect();
    let h: [[MPoly<C>; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| d[i].partial(j)));
    det3(&h)
}

/// ν̃₂(x)ᵀ α_F ν̃₂(x) with ν̃₂(x)ₘ = 2xᵐ/m!; equals 24·F(x).
pub fn veronese_pairing(cat: &Catalecticant) -> MPoly<CycNum> {
    let b = e2();
    let nu: Vec<MPoly<CycNum>> = b
        .iter()
        .map(|m| MPoly::monomial(m.clone(), CycNum::from_rat(rat_int(2) / rat_int(m.factorial() as i64))))
        .collect();
    let mut acc = MPoly::zero(3);
    for i in 0..6 {
        for j in 0..6 {
            let a = cat.matrix.get(i, j);
            if !a.is_zero() {
                acc = acc.plus(&nu[i].times(&nu[j]).scale(a));
            }
        }
    }
    acc
}

/// Symmetric 6×6 matrices of the six 2×2 minors of the symmetric matrix
/// (z_aa z_ab z_ac; z_ab z_bb z_bc; z_ac z_bc z_cc), the quadrics through the
/// Veronese surface, in the coordinates a², b², c², ab, ac, bc.
pub fn veronese_quadrics() -> Vec<Mat<CycNum>> {
    // indices into e2: aa=0 bb=1 cc=2 ab=3 ac=4 bc=5
    let sym = [[0, 3, 4], [3, 1, 5], [4, 5, 2]];
    let mut out = Vec::new();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            let (p, q) = (sym[r1][c1], sym[r2][c2]);
            let (r, s) = (sym[r1][c2], sym[r2][c1]);
            let mut m = Mat::<CycNum>::zeros(6, 6);
            let half = CycNum::from_rat(crate::exactcore::rat(1, 2));
            let add = |m: &mut Mat<CycNum>, i: usize, j: usize, v: &CycNum| {
                let x = m.get(i, j).plus(v);
                m.set(i, j, x);
            };
            add(&mut m, p, q, &half);
            add(&mut m, q, p, &half);
            add(&mut m, r, s, &half.negate());
            add(&mut m, s, r, &half.negate());
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// tr(α_F · Q) for every quadric Q through the Veronese surface.
pub fn veronese_trace_pairings(cat: &Catalecticant) -> Vec<CycNum> {
    veronese_quadrics()
        .iter()
        .map(|q| {
            let p = cat.matrix.mul(q);
            (0..6).fold(CycNum::zero(), |acc, i| acc.plus(p.get(i, i)))
        })
        .collect()
}

fn cube_root_unit(d: &CycNum) -> Option<CycNum> {
    let (k, s) = as_signed_root(d)?;
    let r = CycNum::zeta_pow(5 * k);
    Some(if s < 0 { r.negate() } else { r })
}

pub struct PlaneAction {
    /// Restrictions of S and V to W₃ in the basis wₖ = eₖ − e₋ₖ, scaled to determinant 1.
    pub s: GroupElement,
    pub v: GroupElement,
}

impl PlaneAction {
    pub fn gens(&self) -> Vec<GroupElement> {
        vec![self.s.clone(), self.v.clone()]
    }

    /// Contragredient generators A⁻ᵀ acting on W₃^∨.
    pub fn dual_gens(&self) -> Vec<GroupElement> {
        self.gens()
            .iter()
            .map(|g| GroupElement::new(g.inverse().matrix.transpose(), format!("{}^∨", g.label)))
            .collect()
    }
}

pub fn plane_group_action() -> Result<PlaneAction, ApolarityError> {
    let g = generators();
    let w = w3_basis();
    let norm = |m: Mat<CycNum>, label: &str| -> Result<GroupElement, ApolarityError> {
        let d = m.det()?;
        let c = cube_root_unit(&d).ok_or(ApolarityError::Heisenberg(HeisenbergError::RestrictionFailure))?;
        Ok(GroupElement::new(m.scale(&c.inverse()?), label))
    };
    Ok(PlaneAction {
        s: norm(restrict(&g.fourier_s.matrix, &w)?, "S|W₃")?,
        v: norm(restrict(&g.gauss_v.matrix, &w)?, "V|W₃")?,
    })
}

static PLANE: OnceLock<PlaneAction> = OnceLock::new();
static PLANE_GROUP: OnceLock<Vec<GroupElement>> = OnceLock::new();

pub fn plane_action() -> &'static PlaneAction {
    PLANE.get_or_init(|| plane_group_action().expect("plane action"))
}

/// The projective group of order 168 on P²₊, in breadth-first order.
pub fn plane_group() -> &'static Vec<GroupElement> {
    PLANE_GROUP.get_or_init(|| group_closure(&plane_action().gens(), true).expect("finite group"))
}

/// Forms of degree d fixed by every generator (P ∘ A⁻¹ = P).
pub fn invariant_forms(gens: &[GroupElement], d: u32) -> Result<Vec<MPoly<CycNum>>, ApolarityError> {
    let mons = monomials(3, d);
    let mut stacked: Option<Mat<CycNum>> = None;
    for g in gens {
        let ginv = g.inverse().matrix;
        let cols: Vec<Vec<CycNum>> = mons
            .iter()
            .map(|m| {
                let p = MPoly::monomial(m.clone(), CycNum::one());
                let q = p.apply_linear(&ginv).expect("3 variables").minus(&p);
                q.coeff_vector(&mons)
            })
            .collect();
        let a = Mat::from_cols(&cols);
        stacked = Some(match stacked {
            None => a,
            Some(s) => s.vstack(&a),
        });
    }
    let ker = stacked.map(|s| s.kernel()).unwrap_or_default();
    Ok(ker
        .iter()
        .map(|v| MPoly::from_coeff_vector(3, &mons, v).monic())
        .collect())
}

fn unique(v: Vec<MPoly<CycNum>>) -> Result<MPoly<CycNum>, ApolarityError> {
    if v.len() != 1 {
        return Err(ApolarityError::UniquenessFailure(v.len()));
    }
    Ok(v.into_iter().next().unwrap())
}

/// K'₄ on P²₊ in the coordinates tₖ of x = Σ tₖwₖ.
pub fn invariant_quartic() -> Result<PlaneQuartic, ApolarityError> {
    Ok(PlaneQuartic::new(unique(invariant_forms(&plane_action().gens(), 4)?)?))
}

pub fn invariant_sextic() -> Result<MPoly<CycNum>, ApolarityError> {
    unique(invariant_forms(&plane_action().gens(), 6)?)
}

/// K₄, the invariant quartic of the contragredient action on W₃^∨.
pub fn klein_dual() -> Result<PlaneQuartic, ApolarityError> {
    Ok(PlaneQuartic::new(unique(invariant_forms(&plane_action().dual_gens(), 4)?)?))
}

pub struct KleinData {
    /// K'₄ on P²₊.
    pub k4p: PlaneQuartic,
    /// K₄ on the dual plane; the quartic F of the apolarity constructions.
    pub k4: PlaneQuartic,
    pub cat: Catalecticant,
    pub sextic: MPoly<CycNum>,
    pub k4p_c64: MPoly<C64>,
    pub k4_c64: MPoly<C64>,
    pub sextic_c64: MPoly<C64>,
}

static KLEIN: OnceLock<KleinData> = OnceLock::new();

pub fn klein() -> &'static KleinData {
    KLEIN.get_or_init(|| {
        let k4p = invariant_quartic().expect("invariant quartic");
        let k4 = klein_dual().expect("dual invariant quartic");
        let cat = catalecticant(&k4);
        let sextic = singular_locus_sextic(&cat).expect("nonsingular catalecticant");
        KleinData {
            k4p_c64: k4p.form.to_c64(),
            k4_c64: k4.form.to_c64(),
            sextic_c64: sextic.to_c64(),
            k4p,
            k4,
            cat,
            sextic,
        }
    })
}

/// Polar cubic Σ aᵢ ∂ᵢF and the determinant of its Hessian matrix.
pub fn hessian_triangle(f: &MPoly<C64>, a: &[C64]) -> (MPoly<C64>, MPoly<C64>) {
    let mut polar = MPoly::zero(3);
    for i in 0..3 {
        polar = polar.plus(&f.partial(i).scale(&a[i]));
    }
    let t = hessian(&polar);
    (polar, t)
}

/// Whether two exact forms are proportional.
pub fn proportional(a: &MPoly<CycNum>, b: &MPoly<CycNum>) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (m, ca) = a.leading().unwrap();
    let cb = b.coeff(m);
    !cb.is_zero() && a.scale(&cb) == b.scale(ca)
}

/// Transversal intersection K'₄ ∩ H₆ (with H₆ the invariant sextic).
pub fn flexes(seed: u64) -> Result<Vec<plane::PlanePoint>, ApolarityError> {
    let k = klein();
    Ok(plane::intersect(&k.k4p_c64, &k.sextic_c64, seed)?)
}

/// The residual point of the tangent line at a flex a (where the tangent
/// meets the quartic with multiplicity 3 at a).
pub fn tangent_residual(f: &MPoly<C64>, a: &[C64]) -> Result<Vec<C64>, ApolarityError> {
    let grad = plane::gradient(f, a);
    // parametrize the tangent line a + s·b with b ⊥ grad
    let (vecs, _) = linalg::right_singular(&DMatrix::from_row_slice(1, 3, &grad));
    let b = if numeric::proj_dist(&vecs[0], a) > numeric::proj_dist(&vecs[1], a) { vecs[0].clone() } else { vecs[1].clone() };
    let roots = numeric::roots::binary_roots(4, |s, t| {
        let x: Vec<C64> = (0..3).map(|i| a[i] * t + b[i] * s).collect();
        f.eval_c64(&x)
    })?;
    // the root farthest from s = 0 (the point a) is the residual point
    let r = roots
        .iter()
        .max_by(|x, y| x.point[0].norm().total_cmp(&y.point[0].norm()))
        .ok_or(NumericError::Degenerate("no roots on tangent".into()))?;
    Ok((0..3).map(|i| a[i] * r.point[1] + b[i] * r.point[0]).collect())
}

pub fn to_c64_matrix(g: &GroupElement) -> DMatrix<C64> {
    g.matrix.to_dmatrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_ranks() {
        let x4 = PlaneQuartic::from_terms(&[([4, 0, 0], 1)]);
        assert_eq!(catalecticant(&x4).rank, 1);
        let fermat = PlaneQuartic::from_terms(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert_eq!(catalecticant(&fermat).rank, 3);
        let klein = PlaneQuartic::from_terms(&[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]);
        assert_eq!(catalecticant(&klein).rank, 6);
    }

    #[test]
    fn plane_group_has_order_168() {
        assert_eq!(plane_group().len(), 168);
    }

    #[test]
    fn hessian_triangle_degenerates_for_fermat() {
        let f = PlaneQuartic::from_terms(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).form.to_c64();
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let (polar, t) = hessian_triangle(&f, &[one, zero, zero]);
        assert_eq!(polar.len(), 1);
        assert!(t.is_zero());
    }
}
