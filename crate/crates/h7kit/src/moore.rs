//! The skew-symmetric Moore matrix restricted to a P³₋, its maximal minors,
//! the rank strata in P³₋ and the symmetric Moore obstruction.

use crate::exactcore::{monomials, CycNum, ExactError, MPoly, Mat, Mono, Ring};
use crate::heisenberg::{generators, restrict, u4_basis, GroupElement, HeisenbergError};
use crate::numeric::{self, linalg, plane, rng, NumericError, C64};
use nalgebra::DMatrix;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum MooreError {
    #[error("minors span dimension {0}; the zero locus is not six points")]
    NonFiniteLocus(usize),
    #[error("orbit has {0} points, expected 8")]
    OrbitSizeMismatch(usize),
    #[error("equivariant map space has dimension {0}, expected 1")]
    EquivariantDimMismatch(usize),
    #[error("found {0} common zeros, expected 6")]
    PointCount(usize),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A bilinear term c·x_i·y_j with x indices 1..=3 and y indices 0..=3.
pub type Term = (i64, usize, usize);

/// A 3×4 matrix of bilinear forms in x = (x₁, x₂, x₃) and y = (y₀, …, y₃).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMatrix {
    pub entries: Vec<Vec<Vec<Term>>>,
}

/// The matrix as printed, term for term.
pub fn printed() -> MooreMatrix {
    let e = |ts: &[Term]| ts.to_vec();
    MooreMatrix {
        entries: vec![
            vec![e(&[(1, 2, 2)]), e(&[(-1, 3, 1), (-1, 1, 3)]), e(&[(1, 3, 0)]), e(&[(-1, 2, 1), (-1, 1, 2)])],
            vec![e(&[(-1, 3, 3)]), e(&[(-1, 3, 2), (1, 2, 3)]), e(&[(-1, 2, 1), (1, 1, 2)]), e(&[(1, 1, 0)])],
            vec![e(&[(-1, 1, 1)]), e(&[(1, 2, 0)]), e(&[(1, 3, 1)]), e(&[(1, 3, 2), (1, 2, 3)])],
        ],
    }
}

/// Row order and signs matching the printed layout.
const ROW_PERM: [usize; 3] = [1, 2, 0];
const ROW_SIGN: [i64; 3] = [1, -1, -1];
const COL_SIGN: [i64; 4] = [1, -1, -1, 1];

/// Block of N_ij = X_{i−j} Y_{i+j} between W₃ (rows) and U₄ (columns), where
/// X = Σ xₖ(eₖ − e₋ₖ) and Y = y₀e₀ + Σ yₖ(eₖ + e₋ₖ).
pub fn skew_construction() -> MooreMatrix {
    let x_of = |k: usize| -> (i64, usize) {
        match k {
            0 => (0, 0),
            1..=3 => (1, k),
            _ => (-1, 7 - k),
        }
    };
    let y_of = |k: usize| if k <= 3 { k } else { 7 - k };
    let odd = |r: usize| -> Vec<(usize, i64)> { vec![(r + 1, 1), (6 - r, -1)] };
    let even = |c: usize| -> Vec<(usize, i64)> { if c == 0 { vec![(0, 1)] } else { vec![(c, 1), (7 - c, 1)] } };
    let mut block = vec![vec![BTreeMap::<(usize, usize), i64>::new(); 4]; 3];
    for (r, row) in block.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            for &(i, a) in &odd(r) {
                for &(j, b) in &even(c) {
                    let (sx, xi) = x_of((i + 7 - j) % 7);
                    if sx == 0 {
                        continue;
                    }
                    *cell.entry((xi, y_of((i + j) % 7))).or_insert(0) += a * b * sx;
                }
            }
        }
    }
    let entries = (0..3)
        .map(|r| {
            (0..4)
                .map(|c| {
                    let s = ROW_SIGN[r] * COL_SIGN[c];
                    block[ROW_PERM[r]][c]
                        .iter()
                        .filter(|(_, &v)| v != 0)
                        .map(|(&(xi, yj), &v)| {
                            assert!(v % 2 == 0);
                            (s * v / 2, xi, yj)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    MooreMatrix { entries }.canonical()
}

/// The matrix used for the strata: the skew construction.
pub fn equivariant() -> MooreMatrix {
    skew_construction()
}

fn term_text(t: &Term, first: bool) -> String {
    let (c, i, j) = *t;
    let sign = match (c < 0, first) {
        (true, true) => "-".to_string(),
        (true, false) => " - ".to_string(),
        (false, true) => String::new(),
        (false, false) => " + ".to_string(),
    };
    let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
    format!("{sign}{mag}x{i}*y{j}")
}

impl MooreMatrix {
    /// Terms merged and sorted within each entry.
    pub fn canonical(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let mut m = BTreeMap::<(usize, usize), i64>::new();
                        for &(c, i, j) in e {
                            *m.entry((i, j)).or_insert(0) += c;
                        }
                        let mut v: Vec<Term> = m.into_iter().filter(|(_, c)| *c != 0).map(|((i, j), c)| (c, i, j)).collect();
                        v.sort_by_key(|t| (std::cmp::Reverse(t.1), t.2));
                        v
                    })
                    .collect()
            })
            .collect();
        MooreMatrix { entries }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| {
                    if e.is_empty() {
                        "0".to_string()
                    } else {
                        e.iter().enumerate().map(|(k, t)| term_text(t, k == 0)).collect()
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" | "));
        }
        out
    }

    /// Entries that differ from `other`, with the difference self − other.
    pub fn diff(&self, other: &Self) -> Vec<(usize, usize, Vec<Term>)> {
        let a = self.canonical();
        let b = other.canonical();
        let mut out = Vec::new();
        for r in 0..3 {
            for c in 0..4 {
                if a.entries[r][c] != b.entries[r][c] {
                    let mut d = a.entries[r][c].clone();
                    d.extend(b.entries[r][c].iter().map(|&(k, i, j)| (-k, i, j)));
                    let d = MooreMatrix { entries: vec![vec![d]] }.canonical().entries[0][0].clone();
                    out.push((r, c, d));
                }
            }
        }
        out
    }

    /// Substitution of x (3 coordinates) and y (4 coordinates).
    pub fn eval<C: Ring>(&self, x: &[C], y: &[C]) -> Mat<C> {
        Mat::from_fn(3, 4, |r, c| {
            let mut acc = C::zero();
            for &(k, i, j) in &self.entries[r][c] {
                acc.add_to(&C::from_i64(k).times(&x[i - 1]).times(&y[j]));
            }
            acc
        })
    }

    pub fn eval_c64(&self, x: &[C64], y: &[C64]) -> DMatrix<C64> {
        let m = self.eval(x, y);
        DMatrix::from_fn(3, 4, |i, j| *m.get(i, j))
    }

    /// Entries as linear forms in x for fixed y.
    pub fn linear_forms<C: Ring>(&self, y: &[C]) -> Vec<Vec<MPoly<C>>> {
        (0..3)
            .map(|r| {
                (0..4)
                    .map(|c| {
                        let mut co = vec![C::zero(); 3];
                        for &(k, i, j) in &self.entries[r][c] {
                            co[i - 1].add_to(&C::from_i64(k).times(&y[j]));
                        }
                        MPoly::linear(&co)
                    })
                    .collect()
            })
            .collect()
    }

    /// The four maximal minors (column k deleted) as cubics in x.
    pub fn minors<C: Ring>(&self, y: &[C]) -> Vec<MPoly<C>> {
        let l = self.linear_forms(y);
        (0..4)
            .map(|k| {
                let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
                let e = |r: usize, c: usize| &l[r][cols[c]];
                let mut acc = MPoly::zero(3);
                for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)] {
                    let t = e(0, p[0]).times(e(1, p[1])).times(e(2, p[2]));
                    acc = if sign > 0 { acc.plus(&t) } else { acc.minus(&t) };
                }
                acc
            })
            .collect()
    }
}

fn cubic_basis() -> Vec<Mono> {
    monomials(3, 3)
}

/// Dimension of the span of the four minors, exactly.
pub fn span_dim_exact(m: &MooreMatrix, y: &[CycNum]) -> usize {
    let rows: Vec<Vec<CycNum>> = m.minors(y).iter().map(|f| f.coeff_vector(&cubic_basis())).collect();
    Mat::from_rows(rows).rank()
}

pub const SPAN_RANK_TOL: f64 = 1e-8;

/// Dimension of the span of the four minors, by singular values.
pub fn span_dim(m: &MooreMatrix, y: &[C64]) -> usize {
    let y = numeric::normalize(y);
    let rows: Vec<Vec<C64>> = m.minors(&y).iter().map(|f| f.coeff_vector(&cubic_basis())).collect();
    linalg::numeric_rank(&linalg::from_rows(&rows), SPAN_RANK_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumLabel {
    Generic,
    K6,
    C18,
    Z,
}

pub fn classify(span: usize) -> Option<StratumLabel> {
    match span {
        4 => Some(StratumLabel::Generic),
        3 => Some(StratumLabel::K6),
        2 => Some(StratumLabel::C18),
        1 => Some(StratumLabel::Z),
        _ => None,
    }
}

pub const APOLAR_TOL: f64 = 1e-8;

/// The six common zeros of the minors for y off the strata.
pub fn apolar_points(m: &MooreMatrix, y: &[C64], seed: u64) -> Result<Vec<plane::PlanePoint>, MooreError> {
    let d = span_dim(m, y);
    if d < 4 {
        return Err(MooreError::NonFiniteLocus(d));
    }
    let y = numeric::normalize(y);
    let f = m.minors(&y);
    // a fresh projection or another pair of minors when points share a fiber
    let pairs = [(0, 1), (2, 3), (0, 2), (1, 3)];
    let mut found = 0;
    for (attempt, &(a, b)) in pairs.iter().enumerate() {
        let cands = plane::intersect(&f[a], &f[b], seed.wrapping_add(attempt as u64))?;
        let pts: Vec<plane::PlanePoint> = cands
            .into_iter()
            .filter(|p| f.iter().all(|g| plane::rel_value(g, &p.point) < APOLAR_TOL))
            .map(|mut p| {
                p.residual = f.iter().map(|g| plane::rel_value(g, &p.point)).fold(0.0, f64::max);
                p
            })
            .collect();
        found = pts.iter().map(|p| p.mult).sum::<usize>();
        if found == 6 {
            return Ok(pts);
        }
    }
    Err(MooreError::PointCount(found))
}

/// Generators S and V restricted to W₃ and U₄, unit determinant.
pub struct SplitAction {
    pub w: Vec<GroupElement>,
    pub u: Vec<GroupElement>,
}

pub fn split_action() -> Result<SplitAction, MooreError> {
    let pa = crate::apolarity::plane_action();
    let g = generators();
    let ub = u4_basis();
    let u = vec![
        GroupElement::new(restrict(&g.fourier_s.matrix, &ub)?, "S|U₄"),
        GroupElement::new(restrict(&g.gauss_v.matrix, &ub)?, "V|U₄"),
    ];
    Ok(SplitAction { w: pa.gens(), u })
}

fn proj_key(v: &[CycNum]) -> Vec<CycNum> {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero vector").inverse().expect("unit");
    v.iter().map(|c| c.times(&lead)).collect()
}

/// The orbit of e₀ ∈ P³₋, the fixed point of the order-7 generator.
pub fn minimal_orbit_z() -> Result<Vec<Vec<CycNum>>, MooreError> {
    let act = split_action()?;
    let start = vec![CycNum::one(), CycNum::zero(), CycNum::zero(), CycNum::zero()];
    let mut orbit = vec![proj_key(&start)];
    let mut i = 0;
    while i < orbit.len() {
        if orbit.len() > 168 {
            return Err(MooreError::OrbitSizeMismatch(orbit.len()));
        }
        for g in &act.u {
            let img = proj_key(&g.matrix.mul_vec(&orbit[i]));
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        i += 1;
    }
    if orbit.len() != 8 {
        return Err(MooreError::OrbitSizeMismatch(orbit.len()));
    }
    Ok(orbit)
}

/// Dimension of the space of Φ(ξ, y) = Σ ξₖ Qₖ(y) fixed under the generators,
/// with ξ transformed by `xi_gens` and y by `y_gens`.
pub fn equivariant_nets(xi_gens: &[GroupElement], y_gens: &[GroupElement]) -> Result<Vec<MPoly<CycNum>>, MooreError> {
    let quad = monomials(4, 2);
    let mut basis = Vec::new();
    for k in 0..3 {
        for m in &quad {
            let mut e = vec![0u16; 7];
            e[k] = 1;
            for (t, &a) in m.0.iter().enumerate() {
                e[3 + t] = a;
            }
            basis.push(MPoly::monomial(Mono(e), CycNum::one()));
        }
    }
    let support: Vec<Mono> = basis.iter().map(|b| b.leading().unwrap().0.clone()).collect();
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    for (a, b) in xi_gens.iter().zip(y_gens) {
        let m = Mat::from_fn(7, 7, |i, j| match (i < 3, j < 3) {
            (true, true) => a.matrix.get(i, j).clone(),
            (false, false) => b.matrix.get(i - 3, j - 3).clone(),
            _ => CycNum::zero(),
        });
        let cols: Vec<Vec<CycNum>> = basis
            .iter()
            .map(|p| Ok(p.apply_linear(&m)?.minus(p).coeff_vector(&support)))
            .collect::<Result<_, ExactError>>()?;
        let block = Mat::from_cols(&cols);
        rows.extend((0..block.rows()).map(|i| block.row(i)));
    }
    let ker = Mat::from_rows(rows).kernel();
    Ok(ker.iter().map(|v| MPoly::from_coeff_vector(7, &support, v)).collect())
}

/// Qₖ(y) from Φ = Σ ξₖ Qₖ, scaled so the first coefficient of Q₁ is 1.
fn split_net(phi: &MPoly<CycNum>) -> [MPoly<CycNum>; 3] {
    let mut q: [MPoly<CycNum>; 3] = [MPoly::zero(4), MPoly::zero(4), MPoly::zero(4)];
    for (m, c) in phi.terms() {
        let k = (0..3).find(|&k| m.0[k] == 1).expect("linear in ξ");
        q[k].add_term(Mono(m.0[3..].to_vec()), c);
    }
    let lead = q[0].terms().next_back().map(|(_, c)| c.clone()).unwrap_or_else(CycNum::one);
    let inv = lead.inverse().expect("nonzero");
    q.map(|p| p.scale(&inv))
}

/// The net of quadrics on U₄ attached to the equivariant map W₃^∨ → S²U₄.
pub fn net_of_quadrics() -> Result<[MPoly<CycNum>; 3], MooreError> {
    let act = split_action()?;
    let dual: Vec<GroupElement> = act.w.iter().map(|g| GroupElement::new(g.inverse().matrix.transpose(), "dual")).collect();
    let nets = equivariant_nets(&dual, &act.u)?;
    if nets.len() != 1 {
        return Err(MooreError::EquivariantDimMismatch(nets.len()));
    }
    Ok(split_net(&nets[0]))
}

/// Gram matrix of a quadric in y.
pub fn gram(q: &MPoly<C64>) -> DMatrix<C64> {
    let mut g = DMatrix::zeros(4, 4);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(m.0[i] as usize)).collect();
        if idx[0] == idx[1] {
            g[(idx[0], idx[0])] += c;
        } else {
            g[(idx[0], idx[1])] += c / 2.0;
            g[(idx[1], idx[0])] += c / 2.0;
        }
    }
    g
}

/// Points of the jacobian curve: singular points of singular members of the
/// net, from the four singular members on random lines of the ξ-plane.
pub fn jacobian_sample(net: &[MPoly<CycNum>; 3], n: usize, seed: u64) -> Result<Vec<Vec<C64>>, MooreError> {
    let mut r = rng::stream(seed, "jacobian_sample");
    let g: Vec<DMatrix<C64>> = net.iter().map(|q| gram(&q.to_c64())).collect();
    let member = |xi: &[C64]| &g[0] * xi[0] + &g[1] * xi[1] + &g[2] * xi[2];
    let mut out = Vec::new();
    while out.len() < n {
        let (a, b) = (rng::gauss_vec(&mut r, 3), rng::gauss_vec(&mut r, 3));
        let line = |s: C64, t: C64| -> Vec<C64> { (0..3).map(|i| a[i] * s + b[i] * t).collect() };
        for root in crate::numeric::roots::binary_roots(4, |s, t| linalg::det(&member(&line(s, t))))? {
            if root.mult != 1 {
                continue;
            }
            let y = linalg::nullspace(&member(&line(root.point[0], root.point[1])), 1).remove(0);
            out.push(y);
        }
    }
    out.truncate(n);
    Ok(out)
}

/// Rank of [Q₁y, Q₂y, Q₃y], the jacobian condition.
pub fn jacobian_rank(net: &[MPoly<CycNum>; 3], y: &[C64]) -> usize {
    let cols: Vec<Vec<C64>> = net.iter().map(|q| linalg::mat_vec(&gram(&q.to_c64()), y)).collect();
    linalg::numeric_rank(&DMatrix::from_fn(4, 3, |i, j| cols[j][i]), 1e-9)
}

/// det(x_{i+j} y_{i−j}) for y ∈ U₄ extended evenly, as a septimic in x.
pub fn symmetric_moore_det(y: &[C64]) -> MPoly<C64> {
    let yy = |k: usize| y[if k <= 3 { k } else { 7 - k }];
    let mut out = MPoly::zero(7);
    let mut perm: Vec<usize> = (0..7).collect();
    permutations(&mut perm, 0, 1, &mut |p, sign| {
        let mut e = vec![0u16; 7];
        let mut c = C64::new(sign as f64, 0.0);
        for (i, &j) in p.iter().enumerate() {
            e[(i + j) % 7] += 1;
            c *= yy((i + 7 - j) % 7);
        }
        out.add_term(Mono(e), &c);
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { sign } else { -sign }, f);
        p.swap(k, i);
    }
}

/// Σ P_m conj(Q_m) m!/d!, the unitarily invariant pairing on forms.
pub fn bombieri(p: &MPoly<C64>, q: &MPoly<C64>) -> C64 {
    let d = p.degree().unwrap_or(0) as u64;
    let df: f64 = (1..=d).map(|i| i as f64).product();
    p.terms().map(|(m, a)| a * q.coeff(m).conj() * (m.factorial() as f64 / df)).sum()
}

/// Norm of the orthogonal projection onto span(basis), relative to ‖p‖.
pub fn projection_norm(p: &MPoly<C64>, basis: &[MPoly<C64>]) -> f64 {
    let n = basis.len();
    let g = DMatrix::from_fn(n, n, |i, j| bombieri(&basis[j], &basis[i]));
    let rhs: Vec<C64> = basis.iter().map(|b| bombieri(p, b)).collect();
    let (c, _) = linalg::lstsq(&g, &rhs);
    let proj: C64 = c.iter().zip(&rhs).map(|(a, b)| a.conj() * b).sum();
    (proj.norm() / bombieri(p, p).norm()).sqrt()
}

/// Projections of random symmetric Moore determinants onto the invariant septimics.
pub fn symmetric_moore_vanishing(count: usize, seed: u64) -> Vec<f64> {
    let sys = crate::septimics::system();
    let mut r = rng::stream(seed, "symmetric_moore");
    (0..count)
        .map(|_| {
            let y = rng::gauss_vec(&mut r, 4);
            projection_norm(&symmetric_moore_det(&y), &sys.basis_c64)
        })
        .collect()
}

/// An element of order 3 in the projective group, on W₃ and on U₄.
pub fn order_three(act: &SplitAction) -> Option<(GroupElement, GroupElement)> {
    for a in 1..4u32 {
        for b in 1..7u32 {
            let w = act.w[0].pow(a).mul(&act.w[1].pow(b));
            if !w.is_proj_identity() && w.pow(3).is_proj_identity() {
                let u = act.u[0].pow(a).mul(&act.u[1].pow(b));
                return Some((w, u));
            }
        }
    }
    None
}

/// Largest distance from a point of apolar_points(B·y) to A·apolar_points(y).
pub fn apolar_equivariance(m: &MooreMatrix, y: &[C64], seed: u64) -> Result<f64, MooreError> {
    let act = split_action()?;
    let (w, u) = order_three(&act).ok_or(MooreError::OrbitSizeMismatch(0))?;
    let a = w.matrix.to_dmatrix();
    let b = u.matrix.to_dmatrix();
    let before = apolar_points(m, y, seed)?;
    let after = apolar_points(m, &linalg::mat_vec(&b, y), seed)?;
    let moved: Vec<Vec<C64>> = before.iter().map(|p| linalg::mat_vec(&a, &p.point)).collect();
    Ok(after
        .iter()
        .map(|q| moved.iter().map(|p| numeric::proj_dist(p, &q.point)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_differs_from_print_in_one_term() {
        let d = skew_construction().diff(&printed());
        assert_eq!(d, vec![(2, 2, vec![(-1, 1, 3)])]);
    }

    #[test]
    fn sign_of_permutations() {
        let mut total = 0;
        let mut p: Vec<usize> = (0..4).collect();
        permutations(&mut p, 0, 1, &mut |_, s| total += s);
        assert_eq!(total, 0);
    }

    #[test]
    fn minors_of_first_basis_point() {
        let m = printed();
        let z = |k: i64| crate::exactcore::rat_int(k);
        let f = m.minors(&[z(1), z(0), z(0), z(0)]);
        // y = e₀ leaves x₃y₀, x₁y₀, x₂y₀ in columns 2, 3, 1; column 0 vanishes
        assert!(!f[0].is_zero());
        assert_eq!(f.iter().filter(|p| !p.is_zero()).count(), 1);
    }
}
