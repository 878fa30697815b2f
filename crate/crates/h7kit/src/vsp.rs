//! Points of VSP(F, 6) from antipolar conics, boundary types along the
//! pencils through points of K'₄, the quintic pencils, the Grassmannian
//! image and the quadric cones Γₐ.

use crate::apolarity::{antipolar_conic, split_degenerate_conic, ApolarityError, Catalecticant, ConicForm, PlaneQuartic};
use crate::exactcore::{monomials, Mono};
use crate::numeric::cluster::{cluster, partition, AMBIGUITY_BAND, CLUSTER_TOL};
use crate::numeric::roots::{binary_coeffs, binary_roots, binary_roots_from_coeffs, horner, Root};
use crate::numeric::{self, linalg, plane, rng, NumericError, C64};
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum VspError {
    #[error("conics share a component")]
    CommonComponent,
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("every branch degenerated; witness chain: {0}")]
    BranchExhausted(String),
    #[error("projected span has dimension {0}, expected 3")]
    RankNot3(usize),
    #[error(transparent)]
    Apolarity(#[from] ApolarityError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub const ANTIPOLARITY_TOL: f64 = 1e-9;
pub const POWER_SUM_TOL: f64 = 1e-8;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Points of a line given by its coefficient vector: two spanning points.
pub fn line_points(l: &[C64]) -> [Vec<C64>; 2] {
    let m = DMatrix::from_row_slice(1, 3, l);
    let ns = linalg::nullspace(&m, 2);
    [ns[0].clone(), ns[1].clone()]
}

/// Restriction of a conic to the line through p, q: Q(s p + t q).
fn restrict_conic(c: &ConicForm, p: &[C64], q: &[C64]) -> [C64; 3] {
    // ascending in s: t², st, s²
    [c.eval(q), c.bilinear(p, q) * 2.0, c.eval(p)]
}

/// Points of a conic on a line, with multiplicities.
pub fn conic_line(c: &ConicForm, l: &[C64]) -> Result<Vec<(Vec<C64>, usize)>, VspError> {
    let [p, q] = line_points(l);
    let co = restrict_conic(c, &p, &q);
    let scale = c.gram.norm();
    if co.iter().all(|z| z.norm() < 1e-12 * scale) {
        return Err(VspError::CommonComponent);
    }
    let roots = binary_roots_from_coeffs(&co)?;
    Ok(roots
        .into_iter()
        .map(|r| ((0..3).map(|i| p[i] * r.point[0] + q[i] * r.point[1]).collect(), r.mult))
        .collect())
}

/// C₁ ∩ C₂ through a singular member of the pencil.
pub fn conic_intersect(c1: &ConicForm, c2: &ConicForm) -> Result<Vec<(Vec<C64>, usize)>, VspError> {
    let stacked = linalg::from_rows(&[c1.coeffs(), c2.coeffs()]);
    if linalg::numeric_rank(&stacked, 1e-12) < 2 {
        return Err(VspError::CommonComponent);
    }
    let (g1, g2) = (&c1.gram, &c2.gram);
    let cubic = binary_roots(3, |s, t| linalg::det(&(g1 * s + g2 * t)))?;
    let best = cubic
        .iter()
        .map(|r| {
            let d = g1 * r.point[0] + g2 * r.point[1];
            let sv = linalg::singular_values(&d);
            (sv[1] / sv[0], d, r.point)
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .ok_or_else(|| VspError::IllConditioned("empty pencil".into()))?;
    let (_, d, pt) = best;
    let other = if pt[1].norm() > pt[0].norm() { c1 } else { c2 };
    let lines = match split_degenerate_conic(&d) {
        Some(x) => x,
        None => return Err(VspError::IllConditioned("degenerate member did not split".into())),
    };
    let mut pts = conic_line(other, &lines.0)?;
    pts.extend(conic_line(other, &lines.1)?);
    let cl = cluster(&pts, CLUSTER_TOL, AMBIGUITY_BAND)?;
    Ok(cl.into_iter().map(|c| (c.point, c.mult)).collect())
}

/// A decomposition F = Σ λᵢ ℓᵢ⁴.
#[derive(Clone, Debug)]
pub struct PowerSumDecomp {
    pub lines: Vec<Vec<C64>>,
    pub coefficients: Vec<C64>,
    pub residual: f64,
    pub antipolarity: f64,
    pub branch_log: String,
}

/// Coefficients of (ℓ·x)⁴ on the quartic monomials.
pub fn fourth_power(l: &[C64]) -> Vec<C64> {
    monomials(3, 4)
        .iter()
        .map(|m| {
            let multi = 24.0 / m.factorial() as f64;
            m.eval(l) * multi
        })
        .collect()
}

pub fn quartic_vector(f: &PlaneQuartic) -> Vec<C64> {
    let fc = f.form.to_c64();
    monomials(3, 4).iter().map(|m| fc.coeff(m)).collect()
}

/// Least-squares λ and the relative residual ‖F − Σ λᵢℓᵢ⁴‖/‖F‖.
pub fn power_sum_fit(f: &PlaneQuartic, lines: &[Vec<C64>]) -> (Vec<C64>, f64) {
    let cols: Vec<Vec<C64>> = lines.iter().map(|l| fourth_power(&numeric::normalize(l))).collect();
    let a = DMatrix::from_fn(15, lines.len(), |i, j| cols[j][i]);
    linalg::lstsq(&a, &quartic_vector(f))
}

/// max over i ≠ j of the scale-free value of C_{ℓⱼ} at ℓᵢ.
pub fn antipolarity_residual(cat: &Catalecticant, lines: &[Vec<C64>]) -> Result<f64, VspError> {
    let mut worst: f64 = 0.0;
    for (j, lj) in lines.iter().enumerate() {
        let c = antipolar_conic(cat, lj)?;
        for (i, li) in lines.iter().enumerate() {
            if i != j {
                worst = worst.max(c.rel_value(li));
            }
        }
    }
    Ok(worst)
}

/// Greedy VSP point: ℓ₁ random, ℓ₂ on C_{ℓ₁}, the rest from C_{ℓ₁} ∩ C_{ℓ₂}.
pub fn vsp_sample(f: &PlaneQuartic, cat: &Catalecticant, seed: u64) -> Result<PowerSumDecomp, VspError> {
    if cat.rank < 6 {
        return Err(ApolarityError::SingularCatalecticant(cat.rank).into());
    }
    let mut r = rng::stream(seed, "vsp_sample");
    let mut log = Vec::new();
    for attempt in 0..8 {
        let l1 = rng::gauss_vec(&mut r, 3);
        let c1 = antipolar_conic(cat, &l1)?;
        let cut = rng::gauss_vec(&mut r, 3);
        let on = conic_line(&c1, &cut)?;
        let branch = r.gen_range(0..on.len());
        let l2 = on[branch].0.clone();
        let c2 = antipolar_conic(cat, &l2)?;
        let rest = match conic_intersect(&c1, &c2) {
            Ok(x) => x,
            Err(e) => {
                log.push(format!("attempt {attempt}: {e}"));
                continue;
            }
        };
        if rest.len() != 4 || rest.iter().any(|p| p.1 != 1) {
            log.push(format!("attempt {attempt}: non-reduced intersection"));
            continue;
        }
        let mut tail: Vec<Vec<C64>> = rest.into_iter().map(|p| p.0).collect();
        tail.shuffle(&mut r);
        let mut lines = vec![numeric::normalize(&l1), numeric::normalize(&l2)];
        lines.extend(tail.iter().map(|l| numeric::normalize(l)));
        let antipolarity = antipolarity_residual(cat, &lines)?;
        let (coefficients, residual) = power_sum_fit(f, &lines);
        log.push(format!("attempt {attempt}: branch {branch}"));
        return Ok(PowerSumDecomp { lines, coefficients, residual, antipolarity, branch_log: log.join("; ") });
    }
    Err(VspError::BranchExhausted(log.join("; ")))
}

/// Finite scheme of plane points.
#[derive(Clone, Debug)]
pub struct PointScheme {
    pub points: Vec<(Vec<C64>, usize)>,
    pub partition: Vec<usize>,
    /// Smallest distance between distinct clusters.
    pub separation: f64,
}

impl PointScheme {
    pub fn length(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Partition label; a (2,2,2) scheme supported on `h` (rel. value < tol) is tagged `_s`.
    pub fn label(&self, h: Option<&crate::exactcore::MPoly<C64>>, tol: f64) -> String {
        let body: Vec<String> = self.partition.iter().map(|x| x.to_string()).collect();
        let mut s = format!("({})", body.join(","));
        if let (Some(h), true) = (h, self.partition == [2, 2, 2]) {
            if self.points.iter().all(|(p, _)| plane::rel_value(h, p) < tol) {
                s.push_str("_s");
            }
        }
        s
    }
}

/// Clusters weighted points and emits the partition.
pub fn scheme_type(points: &[(Vec<C64>, usize)]) -> Result<PointScheme, VspError> {
    let cl = cluster(points, CLUSTER_TOL, AMBIGUITY_BAND)?;
    let separation = cl.iter().map(|c| c.separation).fold(f64::INFINITY, f64::min);
    Ok(PointScheme {
        partition: partition(cl.iter().map(|c| c.mult)),
        points: cl.into_iter().map(|c| (c.point, c.mult)).collect(),
        separation,
    })
}

/// Rational parametrization of a smooth conic through a point a on it:
/// φ(s:t) = Q(q)·a − 2B(a,q)·q with q = t·b₀ + s·b₁ and b₁ on the tangent at a,
/// so that φ(1:0) = a.
pub struct ConicParam {
    pub a: Vec<C64>,
    pub b0: Vec<C64>,
    pub b1: Vec<C64>,
    pub conic: ConicForm,
}

impl ConicParam {
    pub fn new(conic: ConicForm, a: Vec<C64>, r: &mut rng::Prng) -> Self {
        let tangent = linalg::mat_vec(&conic.gram, &a);
        let [p, q] = line_points(&tangent);
        // the tangent point farther from a
        let b1 = if numeric::proj_dist(&p, &a) > numeric::proj_dist(&q, &a) { p } else { q };
        let b0 = rng::gauss_vec(r, 3);
        ConicParam { a, b0, b1, conic }
    }

    pub fn at(&self, s: C64, t: C64) -> Vec<C64> {
        let q: Vec<C64> = (0..3).map(|i| self.b0[i] * t + self.b1[i] * s).collect();
        let qq = self.conic.eval(&q);
        let b = self.conic.bilinear(&self.a, &q);
        (0..3).map(|i| self.a[i] * qq - q[i] * b * 2.0).collect()
    }
}

/// A smooth conic parametrized from some point on it.
pub fn param_any(conic: &ConicForm, r: &mut rng::Prng) -> Result<ConicParam, VspError> {
    let cut = rng::gauss_vec(r, 3);
    let pts = conic_line(conic, &cut)?;
    Ok(ConicParam::new(conic.clone(), numeric::normalize(&pts[0].0), r))
}

fn multiply_linear(c: &[C64], root: [C64; 2]) -> Vec<C64> {
    // (root₁·s − root₀·t)·Σ cᵢ sⁱ tⁿ⁻ⁱ, ascending in s
    let mut out = vec![C64::new(0.0, 0.0); c.len() + 1];
    for (i, &a) in c.iter().enumerate() {
        out[i + 1] += a * root[1];
        out[i] -= a * root[0];
    }
    out
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub parameter: [C64; 2],
    pub scheme: PointScheme,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct BoundaryCensus {
    pub on_hessian: bool,
    /// Relative singular values of the sampled divisor matrix.
    pub pencil_singular_values: Vec<f64>,
    pub generic: Vec<CensusEntry>,
    pub special: Vec<CensusEntry>,
}

impl BoundaryCensus {
    pub fn count(&self, label: &str) -> usize {
        self.special.iter().filter(|e| e.label == label).count()
    }

    pub fn generic_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.generic.iter().map(|e| e.label.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

pub const HESSIAN_TOL: f64 = 1e-9;

/// Pencil basis from sampled unit coefficient vectors (rank-2 certificate).
fn pencil_basis(samples: &[Vec<C64>]) -> (Vec<Vec<C64>>, Vec<f64>) {
    let m = linalg::from_rows(samples);
    let sv = linalg::singular_values(&m);
    let top = sv[0];
    let rel: Vec<f64> = sv.iter().map(|x| x / top).collect();
    let svd = m.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let basis = idx[..2].iter().map(|&i| (0..vt.ncols()).map(|j| vt[(i, j)]).collect()).collect();
    (basis, rel)
}

/// Discriminant of Σ cᵢ sⁱ t⁴⁻ⁱ via the invariants I and J.
pub fn quartic_discriminant(c: &[C64]) -> C64 {
    // a x⁴ + b x³y + c x²y² + d xy³ + e y⁴ with x = s
    let (a, b, cc, d, e) = (c[4], c[3], c[2], c[1], c[0]);
    let i = a * e * 12.0 - b * d * 3.0 + cc * cc;
    let j = a * cc * e * 72.0 + b * cc * d * 9.0 - a * d * d * 27.0 - e * b * b * 27.0 - cc * cc * cc * 2.0;
    (i * i * i * 4.0 - j * j) / 27.0
}

fn member(basis: &[Vec<C64>], l: [C64; 2]) -> Vec<C64> {
    basis[0].iter().zip(&basis[1]).map(|(x, y)| x * l[0] + y * l[1]).collect()
}

/// Census of VSP points through a ∈ K'₄ along the pencil on C_a.
pub fn boundary_pencil(cat: &Catalecticant, k4p: &crate::exactcore::MPoly<C64>, h6: &crate::exactcore::MPoly<C64>, a: &[C64], seed: u64) -> Result<BoundaryCensus, VspError> {
    let a = numeric::normalize(a);
    if plane::rel_value(k4p, &a) > 1e-10 {
        return Err(VspError::IllConditioned("point is not on the quartic".into()));
    }
    let on_hessian = plane::rel_value(h6, &a) < HESSIAN_TOL;
    if on_hessian {
        boundary_pencil_flex(cat, h6, &a, seed)
    } else {
        boundary_pencil_generic(cat, h6, &a, seed)
    }
}

fn boundary_pencil_generic(cat: &Catalecticant, h6: &crate::exactcore::MPoly<C64>, a: &[C64], seed: u64) -> Result<BoundaryCensus, VspError> {
    let mut r = rng::stream(seed, "boundary_pencil");
    let ca = antipolar_conic(cat, a)?;
    let phi = ConicParam::new(ca, a.to_vec(), &mut r);
    // D(σ) = σ + the three roots of φ*C_{φ(σ)} other than (1:0)
    let divisor = |sig: [C64; 2]| -> Result<Vec<C64>, VspError> {
        let p = phi.at(sig[0], sig[1]);
        let cp = antipolar_conic(cat, &p)?;
        let q = binary_coeffs(4, |s, t| cp.eval(&phi.at(s, t)));
        Ok(numeric::normalize(&multiply_linear(&q[..4], sig)))
    };
    let mut samples = Vec::new();
    for _ in 0..8 {
        let s = rng::gauss(&mut r);
        samples.push(divisor([s, one()])?);
    }
    let (basis, sv) = pencil_basis(&samples);
    let scheme_of = |c: &[C64]| -> Result<PointScheme, VspError> {
        let roots = binary_roots_from_coeffs(c)?;
        let mut pts: Vec<(Vec<C64>, usize)> = vec![(a.to_vec(), 2)];
        pts.extend(roots.iter().map(|x| (phi.at(x.point[0], x.point[1]), x.mult)));
        scheme_type(&pts)
    };
    let mut generic = Vec::new();
    for _ in 0..4 {
        let l = [rng::gauss(&mut r), rng::gauss(&mut r)];
        let sch = scheme_of(&member(&basis, l))?;
        generic.push(CensusEntry { parameter: l, label: sch.label(Some(h6), HESSIAN_TOL), scheme: sch });
    }
    let mut special = Vec::new();
    // member with a root at (1:0), i.e. through a
    let lead = [basis[1][4], -basis[0][4]];
    let sch = scheme_of(&member(&basis, lead))?;
    special.push(CensusEntry { parameter: lead, label: sch.label(Some(h6), HESSIAN_TOL), scheme: sch });
    // members with multiple roots
    let disc = |s: C64, t: C64| quartic_discriminant(&member(&basis, [s, t]));
    for root in binary_roots(6, disc)? {
        let sch = scheme_of(&member(&basis, root.point))?;
        special.push(CensusEntry { parameter: root.point, label: sch.label(Some(h6), HESSIAN_TOL), scheme: sch });
    }
    Ok(BoundaryCensus { on_hessian: false, pencil_singular_values: sv, generic, special })
}

/// For a flex a₁ the conic C_{a₁} is a line pair L₁ ∪ L₂; for b on the
/// component L₁ through a₁, C_{a₁} ∩ C_b = a₁ + b′ + 2a₃ with a₃ on L₂, and
/// the scheme is 2a₁ + b + b′ + 2a₃. The pairs {b, b′} form a pencil of
/// binary quadratics on L₁.
fn boundary_pencil_flex(cat: &Catalecticant, h6: &crate::exactcore::MPoly<C64>, a: &[C64], seed: u64) -> Result<BoundaryCensus, VspError> {
    let mut r = rng::stream(seed, "boundary_pencil_flex");
    let ca = antipolar_conic(cat, a)?;
    let (l1, l2) = ca.split_lines().ok_or_else(|| VspError::IllConditioned("conic did not split".into()))?;
    let on = |l: &[C64]| numeric::dot(l, a).norm() / (numeric::norm(l) * numeric::norm(a));
    let (l1, l2) = if on(&l1) < on(&l2) { (l1, l2) } else { (l2, l1) };
    if on(&l1) > 1e-8 {
        return Err(VspError::IllConditioned("no component through the point".into()));
    }
    let vertex = numeric::normalize(&numeric::cross(&l1, &l2));
    // L₁ = {u·a + v·vertex}
    let pt = |u: C64, v: C64| -> Vec<C64> { (0..3).map(|i| a[i] * u + vertex[i] * v).collect() };
    let mut a3: Option<Vec<C64>> = None;
    let mut tangency: f64 = 0.0;
    let mut pair = |b: [C64; 2]| -> Result<Vec<C64>, VspError> {
        let cb = antipolar_conic(cat, &pt(b[0], b[1]))?;
        let q = restrict_conic(&cb, &vertex, a);
        // ascending in u: roots of v·(q₁ u + q₀ v)... q = [Q(a), 2B, Q(vertex)] in (u, v)
        // Q(u a + v w) = u² Q(a) + 2uv B(a,w) + v² Q(w); Q(a) = 0 since a ∈ C_b
        let bprime = [-q[2], q[1]];
        let on_l2 = conic_line(&cb, &l2)?;
        if let Some((p, m)) = on_l2.first() {
            if *m == 2 {
                a3 = Some(p.clone());
            } else {
                tangency = tangency.max(numeric::proj_dist(&on_l2[0].0, &on_l2[1].0));
            }
        }
        Ok(numeric::normalize(&multiply_linear(&multiply_linear(&[one()], b), bprime)))
    };
    let mut samples = Vec::new();
    for _ in 0..6 {
        let s = rng::gauss(&mut r);
        samples.push(pair([s, one()])?);
    }
    let a3 = a3.ok_or_else(|| VspError::IllConditioned(format!("C_b not tangent to the second line ({tangency:.1e})")))?;
    let (basis, sv) = pencil_basis(&samples);
    let scheme_of = |c: &[C64]| -> Result<PointScheme, VspError> {
        let roots = binary_roots_from_coeffs(c)?;
        let mut pts: Vec<(Vec<C64>, usize)> = vec![(a.to_vec(), 2), (a3.clone(), 2)];
        pts.extend(roots.iter().map(|x| (pt(x.point[0], x.point[1]), x.mult)));
        scheme_type(&pts)
    };
    let mut generic = Vec::new();
    for _ in 0..4 {
        let l = [rng::gauss(&mut r), rng::gauss(&mut r)];
        let sch = scheme_of(&member(&basis, l))?;
        generic.push(CensusEntry { parameter: l, label: sch.label(Some(h6), HESSIAN_TOL), scheme: sch });
    }
    let mut special = Vec::new();
    let disc = |s: C64, t: C64| {
        let c = member(&basis, [s, t]);
        c[1] * c[1] - c[0] * c[2] * 4.0
    };
    for root in binary_roots(2, disc)? {
        let sch = scheme_of(&member(&basis, root.point))?;
        special.push(CensusEntry { parameter: root.point, label: sch.label(Some(h6), HESSIAN_TOL), scheme: sch });
    }
    Ok(BoundaryCensus { on_hessian: true, pencil_singular_values: sv, generic, special })
}

pub struct TriangleReport {
    pub triple: Vec<Vec<C64>>,
    /// Multiplicity of a in C_a ∩ K'₄.
    pub base_multiplicity: usize,
    /// Points of C_a ∩ K'₄ other than a.
    pub residual_count: usize,
    /// Largest value of T_a on those points.
    pub residual_on_triangle: f64,
    pub max_pair_residual: f64,
}

/// The triple of a ∈ K'₄ \ H₆: the three points where the hessian triangle
/// T_a touches K'₄; the other six points of T_a ∩ K'₄ are C_a ∩ K'₄ − 2a.
pub fn mutual_antipolarity_check(cat: &Catalecticant, k4p: &crate::exactcore::MPoly<C64>, a: &[C64], seed: u64) -> Result<TriangleReport, VspError> {
    let mut r = rng::stream(seed, "triangle");
    let a = numeric::normalize(a);
    let ca = antipolar_conic(cat, &a)?;
    let phi = ConicParam::new(ca.clone(), a.clone(), &mut r);
    let roots = binary_roots(8, |s, t| k4p.eval_c64(&phi.at(s, t)))?;
    let (base, rest): (Vec<&Root>, Vec<&Root>) = roots.iter().partition(|x| x.point[1].norm() < 1e-6);
    let base_multiplicity = base.iter().map(|x| x.mult).sum();
    let (_, ta) = crate::apolarity::hessian_triangle(k4p, &a);
    let residual_on_triangle = rest
        .iter()
        .map(|x| plane::rel_value(&ta, &phi.at(x.point[0], x.point[1])))
        .fold(0.0, f64::max);
    let meet = plane::intersect(&ta, k4p, seed)?;
    let triple: Vec<Vec<C64>> = meet
        .iter()
        .filter(|p| ca.rel_value(&p.point) > 1e-6)
        .map(|p| p.point.clone())
        .collect();
    if triple.len() != 3 || meet.iter().filter(|p| p.mult == 2).count() != 3 {
        return Err(VspError::IllConditioned(format!("expected three tangency points, found {}", triple.len())));
    }
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let c = antipolar_conic(cat, &triple[i])?;
        for j in 0..3 {
            if i != j {
                worst = worst.max(c.rel_value(&triple[j]));
            }
        }
    }
    Ok(TriangleReport {
        triple,
        base_multiplicity,
        residual_count: rest.iter().map(|x| x.mult).sum(),
        residual_on_triangle,
        max_pair_residual: worst,
    })
}

pub struct QuinticPencilReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// max over samples of |quintic at ℓ's own parameter|, when ℓ ∈ C_ℓ.
    pub base_point_residual: Option<f64>,
}

pub const PENCIL_RANK_TOL: f64 = 1e-8;

/// The divisors ℓ′ + (C_ℓ ∩ C_ℓ′) for ℓ′ ∈ C_ℓ as binary quintics.
pub fn quintic_pencil_check(cat: &Catalecticant, l: &[C64], samples: usize, seed: u64) -> Result<QuinticPencilReport, VspError> {
    let mut r = rng::stream(seed, "quintic_pencil");
    let cl = antipolar_conic(cat, l)?;
    let self_on = cl.rel_value(l) < 1e-10;
    let phi = if self_on { ConicParam::new(cl.clone(), numeric::normalize(l), &mut r) } else { param_any(&cl, &mut r)? };
    let mut rows = Vec::new();
    for _ in 0..samples {
        let s = rng::gauss(&mut r);
        let lp = phi.at(s, one());
        let cp = antipolar_conic(cat, &lp)?;
        let q = binary_coeffs(4, |u, v| cp.eval(&phi.at(u, v)));
        rows.push(numeric::normalize(&multiply_linear(&q, [s, one()])));
    }
    let m = linalg::from_rows(&rows);
    let rank = linalg::numeric_rank(&m, PENCIL_RANK_TOL);
    let sv = linalg::singular_values(&m);
    let top = sv[0];
    // ℓ = φ(1:0): the s⁵ coefficient is the value there
    let base = self_on.then(|| rows.iter().map(|q| q[5].norm()).fold(0.0, f64::max));
    Ok(QuinticPencilReport { rank, singular_values: sv.iter().map(|x| x / top).collect(), base_point_residual: base })
}

/// Orthonormal coordinates on coker(W → S³W^∨, w ↦ ∂_w F).
pub struct Cokernel {
    pub coords: DMatrix<C64>,
}

pub fn cokernel(f: &PlaneQuartic) -> Cokernel {
    let fc = f.form.to_c64();
    let mons = monomials(3, 3);
    let polars: Vec<Vec<C64>> = (0..3).map(|i| mons.iter().map(|m| fc.partial(i).coeff(m)).collect()).collect();
    let img = DMatrix::from_fn(10, 3, |i, j| polars[j][i]);
    // left null space of the 10×3 image matrix
    let ns = linalg::nullspace(&img.adjoint(), 7);
    let coords = DMatrix::from_fn(7, 10, |i, j| ns[i][j].conj());
    Cokernel { coords }
}

pub fn cube(l: &[C64]) -> Vec<C64> {
    monomials(3, 3).iter().map(|m: &Mono| m.eval(l) * (6.0 / m.factorial() as f64)).collect()
}

pub struct GrassmannImage {
    pub span_dim: usize,
    pub singular_values: Vec<f64>,
    pub plucker: Vec<C64>,
}

pub const GRASSMANN_RANK_TOL: f64 = 1e-8;

pub fn project_cubes(ck: &Cokernel, lines: &[Vec<C64>]) -> DMatrix<C64> {
    let cols: Vec<Vec<C64>> = lines.iter().map(|l| linalg::mat_vec(&ck.coords, &cube(&numeric::normalize(l)))).collect();
    DMatrix::from_fn(7, lines.len(), |i, j| cols[j][i])
}

/// Span of the projected cubes ℓᵢ³ and the Plücker vector of a 3-plane.
pub fn grassmann_image(ck: &Cokernel, lines: &[Vec<C64>]) -> Result<GrassmannImage, VspError> {
    let m = project_cubes(ck, lines);
    let sv = linalg::singular_values(&m);
    let top = sv[0];
    let span_dim = linalg::numeric_rank(&m, GRASSMANN_RANK_TOL);
    let rel: Vec<f64> = sv.iter().map(|x| x / top).collect();
    if span_dim != 3 {
        return Err(VspError::RankNot3(span_dim));
    }
    let svd = m.svd(true, false);
    let u = svd.u.unwrap();
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let basis = DMatrix::from_fn(7, 3, |i, j| u[(i, idx[j])]);
    Ok(GrassmannImage { span_dim, singular_values: rel, plucker: plucker(&basis) })
}

pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                v.push([i, j, k]);
            }
        }
    }
    v
}

/// The 3×3 minors of an n×3 matrix, in lexicographic row order.
pub fn plucker(b: &DMatrix<C64>) -> Vec<C64> {
    triples(b.nrows())
        .iter()
        .map(|t| {
            let m = DMatrix::from_fn(3, 3, |i, j| b[(t[i], j)]);
            linalg::det(&m)
        })
        .collect()
}

fn plucker_index(n: usize, mut s: Vec<usize>) -> Option<(usize, f64)> {
    // sign of the sorting permutation; None for repeated indices
    let mut sign = 1.0;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            } else if s[j] == s[j + 1] {
                return None;
            }
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let k = triples(n).iter().position(|t| t[..] == s[..])?;
    Some((k, sign))
}

/// Σⱼ (−1)ʲ p_{I∪jⱼ} p_{J∖jⱼ} for |I| = 2, |J| = 4, normalized by ‖p‖².
pub fn plucker_relation(p: &[C64], n: usize, i: [usize; 2], j: [usize; 4]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for (k, &jk) in j.iter().enumerate() {
        let a = plucker_index(n, vec![i[0], i[1], jk]);
        let rest: Vec<usize> = j.iter().enumerate().filter(|(t, _)| *t != k).map(|(_, &x)| x).collect();
        let b = plucker_index(n, rest);
        if let (Some((ia, sa)), Some((ib, sb))) = (a, b) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += p[ia] * p[ib] * (sa * sb * sign);
        }
    }
    acc.norm() / numeric::norm(p).powi(2)
}

/// Largest three-term Plücker relation over all index choices.
pub fn plucker_defect(p: &[C64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            for t in triples(n) {
                for d in t[2] + 1..n {
                    worst = worst.max(plucker_relation(p, n, [a, b], [t[0], t[1], t[2], d]));
                }
            }
        }
    }
    worst
}

pub struct ConeReport {
    pub span_dim: usize,
    /// Dimension of the space of quadrics through the curve singular at vₐ.
    pub quadric_space_dim: usize,
    pub quadric_rank: usize,
    pub quadric_singular_values: Vec<f64>,
    /// For a on F♭: roots of a hyperplane through vₐ other than vₐ.
    pub residual_roots: Option<usize>,
}

fn curve_samples(ck: &Cokernel, pieces: &[&dyn Fn(C64, C64) -> Vec<C64>], r: &mut rng::Prng, per: usize) -> Vec<Vec<C64>> {
    let mut out = Vec::new();
    for piece in pieces {
        for _ in 0..per {
            let s = rng::gauss(r);
            let x = piece(s, one());
            out.push(linalg::mat_vec(&ck.coords, &cube(&numeric::normalize(&x))));
        }
    }
    out
}

/// The quadric Γₐ through p_F(ν₃(Cₐ)) with vertex vₐ = p_F(ν₃(a)).
pub fn cone_gamma(cat: &Catalecticant, ck: &Cokernel, h6: &crate::exactcore::MPoly<C64>, a: &[C64], seed: u64) -> Result<ConeReport, VspError> {
    let mut r = rng::stream(seed, "cone_gamma");
    let a = numeric::normalize(a);
    let ca = antipolar_conic(cat, &a)?;
    let singular = plane::rel_value(h6, &a) < HESSIAN_TOL;
    let on_conic = ca.rel_value(&a) < 1e-10;
    let samples = if singular {
        let (l1, l2) = ca.split_lines().ok_or_else(|| VspError::IllConditioned("conic did not split".into()))?;
        let [p1, q1] = line_points(&l1);
        let [p2, q2] = line_points(&l2);
        let f1 = move |s: C64, t: C64| -> Vec<C64> { (0..3).map(|i| p1[i] * s + q1[i] * t).collect() };
        let f2 = move |s: C64, t: C64| -> Vec<C64> { (0..3).map(|i| p2[i] * s + q2[i] * t).collect() };
        curve_samples(ck, &[&f1, &f2], &mut r, 16)
    } else {
        let phi = if on_conic { ConicParam::new(ca.clone(), a.clone(), &mut r) } else { param_any(&ca, &mut r)? };
        let f = move |s: C64, t: C64| phi.at(s, t);
        curve_samples(ck, &[&f], &mut r, 30)
    };
    let m = linalg::from_rows(&samples);
    let span_dim = linalg::numeric_rank(&m, 1e-9);
    // coordinates on the span
    let svd = m.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let k = span_dim;
    let coords = |x: &[C64]| -> Vec<C64> { idx[..k].iter().map(|&i| (0..7).map(|j| vt[(i, j)] * x[j]).sum()).collect() };
    let va = linalg::mat_vec(&ck.coords, &cube(&a));
    let vy = coords(&va);
    // unknowns: upper triangle of a symmetric k×k matrix
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let mut rows: Vec<Vec<C64>> = samples
        .iter()
        .map(|x| {
            let y = coords(x);
            let n = numeric::norm(&y).powi(2);
            pairs.iter().map(|&(i, j)| if i == j { y[i] * y[i] / n } else { y[i] * y[j] * 2.0 / n }).collect()
        })
        .collect();
    let nv = numeric::norm(&vy);
    for row in 0..k {
        rows.push(
            pairs
                .iter()
                .map(|&(i, j)| {
                    let mut c = C64::new(0.0, 0.0);
                    if i == row {
                        c += vy[j];
                    }
                    if j == row && i != j {
                        c += vy[i];
                    }
                    c / nv
                })
                .collect(),
        );
    }
    let sys = linalg::from_rows(&rows);
    let null = linalg::nullspace_tol(&sys, 1e-9);
    let quadric_space_dim = null.len();
    let (quadric_rank, quadric_singular_values) = match null.first() {
        Some(v) => {
            let mut g = DMatrix::zeros(k, k);
            for (t, &(i, j)) in pairs.iter().enumerate() {
                g[(i, j)] = v[t];
                g[(j, i)] = v[t];
            }
            let sv = linalg::singular_values(&g);
            let top = sv[0];
            (linalg::numeric_rank(&g, 1e-8), sv.iter().map(|x| x / top).collect())
        }
        None => (0, vec![]),
    };
    let residual_roots = if on_conic && !singular {
        let phi = ConicParam::new(ca, a.clone(), &mut r);
        // a random hyperplane of the span through vₐ
        let h = rng::gauss_vec(&mut r, k);
        let hv = numeric::dot(&h, &vy);
        let mut h = h;
        let l = numeric::norm(&vy).powi(2);
        for i in 0..k {
            h[i] -= vy[i].conj() * hv / l;
        }
        let roots = binary_roots(6, |s, t| {
            let x = phi.at(s, t);
            numeric::dot(&h, &coords(&linalg::mat_vec(&ck.coords, &cube(&x))))
        })?;
        Some(roots.iter().filter(|x| x.point[1].norm() > 1e-6).map(|x| x.mult).sum())
    } else {
        None
    };
    Ok(ConeReport { span_dim, quadric_space_dim, quadric_rank, quadric_singular_values, residual_roots })
}

/// A point of the curve f = 0 on a random line.
pub fn random_point_on(f: &crate::exactcore::MPoly<C64>, seed: u64) -> Result<Vec<C64>, VspError> {
    let mut r = rng::stream(seed, "random_point_on");
    let l = rng::gauss_vec(&mut r, 3);
    let [p, q] = line_points(&l);
    let d = f.degree().unwrap_or(0) as usize;
    let roots = binary_roots(d, |s, t| f.eval_c64(&(0..3).map(|i| p[i] * s + q[i] * t).collect::<Vec<_>>()))?;
    let x = roots.choose(&mut r).ok_or(NumericError::Degenerate("no points".into()))?;
    let mut pt: Vec<C64> = (0..3).map(|i| p[i] * x.point[0] + q[i] * x.point[1]).collect();
    // one Newton step along the line keeps the point on it
    let val = f.eval_c64(&pt);
    let grad = plane::gradient(f, &pt);
    let dir: Vec<C64> = numeric::sub(&q, &p);
    let dd = numeric::dot(&grad, &dir);
    if dd.norm() > 0.0 {
        pt = numeric::sub(&pt, &numeric::scale(&dir, val / dd));
    }
    Ok(numeric::normalize(&pt))
}

pub fn eval_binary(c: &[C64], p: [C64; 2]) -> C64 {
    if p[1].norm() > p[0].norm() {
        horner(c, p[0] / p[1]) * p[1].powu(c.len() as u32 - 1)
    } else {
        let rev: Vec<C64> = c.iter().rev().cloned().collect();
        horner(&rev, p[1] / p[0]) * p[0].powu(c.len() as u32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::MPoly;

    fn conic(terms: &[([u16; 3], f64)]) -> ConicForm {
        let p: MPoly<C64> = MPoly::from_terms(3, terms.iter().map(|(e, c)| (Mono(e.to_vec()), C64::new(*c, 0.0))));
        let co: Vec<C64> = crate::apolarity::e2().iter().map(|m| p.coeff(m)).collect();
        ConicForm::from_coeffs(&co)
    }

    #[test]
    fn line_pair_meets_generic_conic_in_four_points() {
        let a = conic(&[([2, 0, 0], 1.0), ([0, 2, 0], -1.0)]);
        let b = conic(&[([2, 0, 0], 1.0), ([0, 2, 0], 2.0), ([0, 0, 2], -3.0), ([1, 0, 1], 0.5)]);
        let pts = conic_intersect(&a, &b).unwrap();
        assert_eq!(pts.len(), 4);
        for (p, _) in &pts {
            assert!(a.rel_value(p) < 1e-12 && b.rel_value(p) < 1e-12);
        }
    }

    #[test]
    fn conic_with_itself_is_common_component() {
        let a = conic(&[([2, 0, 0], 1.0), ([0, 2, 0], 2.0), ([0, 0, 2], -3.0)]);
        assert!(matches!(conic_intersect(&a, &a), Err(VspError::CommonComponent)));
    }

    #[test]
    fn tangent_conics_share_a_double_point() {
        // both tangent to z = 0 at (1:0:0); the second differs by z·(x + y + z)
        let a = conic(&[([1, 0, 1], 1.0), ([0, 2, 0], -1.0)]);
        let b = conic(&[([1, 0, 1], 2.0), ([0, 2, 0], -1.0), ([0, 1, 1], 1.0), ([0, 0, 2], 1.0)]);
        let pts = conic_intersect(&a, &b).unwrap();
        let mut mults: Vec<usize> = pts.iter().map(|p| p.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 2]);
        let double = pts.iter().find(|p| p.1 == 2).unwrap();
        assert!(double.0[1].norm() < 1e-7 && double.0[2].norm() < 1e-7);
    }

    #[test]
    fn scheme_types() {
        let p = |x: f64, y: f64| vec![C64::new(x, 0.0), C64::new(y, 0.0), one()];
        let six: Vec<_> = (0..6).map(|i| (p(i as f64, (i * i) as f64), 1)).collect();
        assert_eq!(scheme_type(&six).unwrap().partition, vec![1; 6]);
        let mut pqrst = six[1..].to_vec();
        pqrst.push(six[1].clone());
        assert_eq!(scheme_type(&pqrst).unwrap().partition, vec![2, 1, 1, 1, 1]);
    }
}
