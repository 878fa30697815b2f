//! The Schrödinger representation of the level-7 Heisenberg group on V₀ = C⁷,
//! the involution ι, the normalizer generators S and V, and the 49 splittings
//! V₀ = W₃ ⊕ U₄.

use crate::exactcore::cyc::as_signed_root;
use crate::exactcore::{rat_int, CycInt, CycNum, ExactError, MPoly, Mat, Rat, Ring};
use std::collections::HashMap;

pub const N: usize = 7;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum HeisenbergError {
    #[error("group closure exceeded {0} elements")]
    OrderGuardExceeded(usize),
    #[error("element does not normalize the Heisenberg group")]
    NotInNormalizer,
    #[error("element is not a projective involution")]
    NotAnInvolution,
    #[error("eigenspaces have dimensions {0} and {1}")]
    WrongEigendimensions(usize, usize),
    #[error("subspace is not preserved")]
    RestrictionFailure,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat<CycNum>,
    pub label: String,
}

impl GroupElement {
    pub fn new(matrix: Mat<CycNum>, label: impl Into<String>) -> Self {
        GroupElement { matrix, label: label.into() }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Mat::identity(n), "1")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let label = match (self.label.as_str(), o.label.as_str()) {
            ("1", l) | (l, "1") => l.to_string(),
            (a, b) => format!("{a}·{b}"),
        };
        Self::new(self.matrix.mul(&o.matrix), label)
    }

    pub fn inverse(&self) -> Self {
        let m = self.matrix.inverse().expect("group elements are invertible");
        Self::new(m, format!("({})⁻¹", self.label))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conjugate_by(&self, b: &Self) -> Self {
        b.mul(self).mul(&b.inverse())
    }

    /// Matrix scaled so its first nonzero entry (row-major) is 1.
    pub fn normalized(&self) -> Mat<CycNum> {
        normalize_projective(&self.matrix)
    }

    pub fn proj_eq(&self, o: &Self) -> bool {
        proj_eq(&self.matrix, &o.matrix)
    }

    /// Some(λ) when the matrix is λ·I.
    pub fn scalar(&self) -> Option<CycNum> {
        let n = self.dim();
        let l = self.matrix.get(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                let v = self.matrix.get(i, j);
                let expect = if i == j { &l } else { &CycNum::zero() };
                if v != expect {
                    return None;
                }
            }
        }
        Some(l)
    }

    pub fn is_proj_identity(&self) -> bool {
        self.scalar().is_some_and(|l| !l.is_zero())
    }
}

pub fn normalize_projective(m: &Mat<CycNum>) -> Mat<CycNum> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if !v.is_zero() {
                if v == &CycNum::one() {
                    return m.clone();
                }
                let inv = v.inverse().expect("nonzero");
                return m.scale(&inv);
            }
        }
    }
    m.clone()
}

/// A ~ B iff A·b = B·a where a, b are the first nonzero entries.
pub fn proj_eq(a: &Mat<CycNum>, b: &Mat<CycNum>) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let first = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !a.get(i, j).is_zero());
    let Some((i, j)) = first else {
        return b.is_zero();
    };
    let (ca, cb) = (a.get(i, j).clone(), b.get(i, j).clone());
    if cb.is_zero() {
        return false;
    }
    a.scale(&cb) == b.scale(&ca)
}

fn zeta(k: i64) -> CycNum {
    CycNum::zeta_pow(k)
}

fn idx(i: i64) -> usize {
    i.rem_euclid(N as i64) as usize
}

pub struct Generators {
    pub sigma: GroupElement,
    pub tau: GroupElement,
    pub iota: GroupElement,
    pub fourier_s: GroupElement,
    pub gauss_v: GroupElement,
}

impl Generators {
    pub fn all(&self) -> [&GroupElement; 5] {
        [&self.sigma, &self.tau, &self.iota, &self.fourier_s, &self.gauss_v]
    }
}

/// σ: eᵢ ↦ eᵢ₊₁, τ: eᵢ ↦ ζⁱeᵢ, ι: eᵢ ↦ e₋ᵢ, S: eᵢ ↦ g⁻¹Σⱼ ζ^{ij} eⱼ,
/// V: eᵢ ↦ ζ^{4i²} eᵢ.
pub fn generators() -> Generators {
    let mut sigma = Mat::zeros(N, N);
    let mut tau = Mat::zeros(N, N);
    let mut iota = Mat::zeros(N, N);
    let mut gv = Mat::zeros(N, N);
    for i in 0..N as i64 {
        sigma.set(idx(i + 1), idx(i), CycNum::one());
        tau.set(idx(i), idx(i), zeta(i));
        iota.set(idx(-i), idx(i), CycNum::one());
        gv.set(idx(i), idx(i), zeta(4 * i * i));
    }
    let ginv = CycNum::gauss_sum().inverse().expect("g ≠ 0");
    let s = Mat::from_fn(N, N, |j, i| zeta((i * j) as i64).times(&ginv));
    Generators {
        sigma: GroupElement::new(sigma, "σ"),
        tau: GroupElement::new(tau, "τ"),
        iota: GroupElement::new(iota, "ι"),
        fourier_s: GroupElement::new(s, "S"),
        gauss_v: GroupElement::new(gv, "V"),
    }
}

/// Heisenberg element σᵘτᵛ.
pub fn heis(u: i64, v: i64) -> GroupElement {
    let g = generators();
    let e = g.sigma.pow(u.rem_euclid(7) as u32).mul(&g.tau.pow(v.rem_euclid(7) as u32));
    GroupElement::new(e.matrix, format!("σ^{}τ^{}", u.rem_euclid(7), v.rem_euclid(7)))
}

pub const ORDER_GUARD: usize = 1_000_000;

/// Closure of `gens` under multiplication, projectively when `projective`.
/// Elements are returned in breadth-first order from the identity.
pub fn group_closure(gens: &[GroupElement], projective: bool) -> Result<Vec<GroupElement>, HeisenbergError> {
    group_closure_guarded(gens, projective, ORDER_GUARD)
}

pub fn group_closure_guarded(
    gens: &[GroupElement],
    projective: bool,
    guard: usize,
) -> Result<Vec<GroupElement>, HeisenbergError> {
    let n = gens.first().map_or(N, |g| g.dim());
    let key = |m: &Mat<CycNum>| if projective { normalize_projective(m) } else { m.clone() };
    let mut seen: HashMap<Vec<CycNum>, usize> = HashMap::new();
    let flat = |m: &Mat<CycNum>| -> Vec<CycNum> {
        (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect()
    };
    let id = GroupElement::identity(n);
    let mut elems = vec![id.clone()];
    seen.insert(flat(&key(&id.matrix)), 0);
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let p = cur.mul(g);
            let k = flat(&key(&p.matrix));
            if !seen.contains_key(&k) {
                if elems.len() >= guard {
                    return Err(HeisenbergError::OrderGuardExceeded(guard));
                }
                seen.insert(k, elems.len());
                elems.push(p);
            }
        }
    }
    Ok(elems)
}

/// (a b; c d) over F₇ with n σ n⁻¹ ≡ σᵃτᶜ and n τ n⁻¹ ≡ σᵇτᵈ projectively.
pub fn sl2_image(n: &GroupElement) -> Result<[[i64; 2]; 2], HeisenbergError> {
    let g = generators();
    let ninv = n.inverse();
    let find = |x: &GroupElement| -> Result<(i64, i64), HeisenbergError> {
        let c = n.mul(x).mul(&ninv);
        // σᵘτᵛ maps e₀ to e_u, which locates u from the support of column 0
        let u = (0..N).find(|&i| !c.matrix.get(i, 0).is_zero()).ok_or(HeisenbergError::NotInNormalizer)?;
        for v in 0..7 {
            if proj_eq(&c.matrix, &heis(u as i64, v).matrix) {
                return Ok((u as i64, v));
            }
        }
        Err(HeisenbergError::NotInNormalizer)
    };
    let (a, c) = find(&g.sigma)?;
    let (b, d) = find(&g.tau)?;
    Ok([[a, b], [c, d]])
}

pub fn sl2_mul(x: &[[i64; 2]; 2], y: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]).rem_euclid(7);
        }
    }
    r
}

/// The ±1 eigenspaces of a projective involution and the involution itself.
#[derive(Clone, Debug)]
pub struct FixedSpacePair {
    /// Basis of the 3-dimensional eigenspace (W₃), as columns in row-reduced form.
    pub plane: Vec<Vec<CycNum>>,
    /// Basis of the 4-dimensional eigenspace (U₄).
    pub space: Vec<Vec<CycNum>>,
    pub involution: GroupElement,
}

fn row_reduced_basis(vs: Vec<Vec<CycNum>>) -> Vec<Vec<CycNum>> {
    let (r, piv) = Mat::from_rows(vs).rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

pub fn eigenspace_split(inv: &GroupElement) -> Result<FixedSpacePair, HeisenbergError> {
    let sq = inv.mul(inv);
    let lambda = sq.scalar().filter(|l| !l.is_zero()).ok_or(HeisenbergError::NotAnInvolution)?;
    // λ must be a square ±ζᵏ; its square roots are ±ζ^{4k}
    let (k, sign) = as_signed_root(&lambda).ok_or(HeisenbergError::NotAnInvolution)?;
    if sign != 1 {
        return Err(HeisenbergError::NotAnInvolution);
    }
    let mu = zeta(4 * k);
    let n = inv.dim();
    let shifted = |s: &CycNum| {
        let mut m = inv.matrix.clone();
        for i in 0..n {
            let v = m.get(i, i).minus(s);
            m.set(i, i, v);
        }
        m
    };
    let plus = shifted(&mu).kernel();
    let minus = shifted(&mu.negate()).kernel();
    let (plane, space) = match (plus.len(), minus.len()) {
        (4, 3) => (minus, plus),
        (3, 4) => (plus, minus),
        (a, b) => return Err(HeisenbergError::WrongEigendimensions(a, b)),
    };
    Ok(FixedSpacePair {
        plane: row_reduced_basis(plane),
        space: row_reduced_basis(space),
        involution: inv.clone(),
    })
}

/// One pair per conjugate b ι b⁻¹, b = σᵘτᵛ in the order u, v = 0..6.
pub fn fixed_spaces_orbit() -> Vec<FixedSpacePair> {
    let iota = generators().iota;
    let mut out = Vec::with_capacity(49);
    for u in 0..7 {
        for v in 0..7 {
            let b = heis(u, v);
            let inv = iota.conjugate_by(&b);
            out.push(eigenspace_split(&inv).expect("conjugates of ι split"));
        }
    }
    out
}

/// Rank of the span of two lists of vectors.
pub fn subspace_eq(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> bool {
    use crate::exactcore::matrix::span_rank;
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra == rb && span_rank(&all) == ra
}

/// Matrix A with g·B = B·A for the basis B (columns), if g preserves span B.
pub fn restrict(g: &Mat<CycNum>, basis: &[Vec<CycNum>]) -> Result<Mat<CycNum>, HeisenbergError> {
    let b = Mat::from_cols(basis);
    let gb = g.mul(&b);
    let k = basis.len();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let x = b.solve(&gb.col(j)).ok_or(HeisenbergError::RestrictionFailure)?;
        cols.push(x);
    }
    Ok(Mat::from_cols(&cols))
}

/// c·U with every entry of U in {0, ±ζᵏ}, if such a factorization exists.
pub fn root_factor(m: &Mat<CycNum>) -> Option<(CycNum, Mat<CycInt>)> {
    let c = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j))
        .find(|v| !v.is_zero())?
        .clone();
    let cinv = c.inverse().ok()?;
    let mut u = Mat::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let (k, s) = as_signed_root(&v.times(&cinv))?;
            u.set(i, j, CycInt::zeta_pow(k, s));
        }
    }
    Some((c, u))
}

fn to_cycint(p: &MPoly<CycNum>) -> Option<(Rat, MPoly<CycInt>)> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let mut den = num_bigint::BigInt::from(1);
    for (_, c) in p.terms() {
        for r in c.coeffs() {
            den = den.lcm(r.denom());
        }
    }
    let d = Rat::from_integer(den.clone());
    let mut out = MPoly::zero(p.nvars());
    for (m, c) in p.terms() {
        let mut a = [0i64; 7];
        for (i, r) in c.coeffs().iter().enumerate() {
            a[i] = (r * &d).to_integer().to_i64()?;
        }
        out.add_term(m.clone(), &CycInt(a));
    }
    Some((d, out))
}

/// P(M x), using integer group-ring arithmetic when M is a multiple of a
/// root-of-unity matrix.
pub fn apply_linear_fast(p: &MPoly<CycNum>, m: &Mat<CycNum>) -> Result<MPoly<CycNum>, ExactError> {
    if m.rows() != p.nvars() || m.cols() != p.nvars() {
        return Err(ExactError::DimensionMismatch { expected: p.nvars(), found: m.cols() });
    }
    if p.is_homogeneous() {
        if let (Some((c, u)), Some((den, pi))) = (root_factor(m), to_cycint(p)) {
            let deg = p.degree().unwrap_or(0);
            let q = pi.substitute(&u)?;
            let s = c.pow(deg).scale(&(rat_int(1) / den));
            return Ok(q.map(|a| a.to_cyc().times(&s)));
        }
    }
    p.apply_linear(m)
}

/// act(g, P) = P ∘ g⁻¹, so that Z(act(g, P)) = g·Z(P).
pub fn act_on_poly(g: &GroupElement, p: &MPoly<CycNum>) -> Result<MPoly<CycNum>, HeisenbergError> {
    if p.nvars() != g.dim() {
        return Err(ExactError::DimensionMismatch { expected: g.dim(), found: p.nvars() }.into());
    }
    Ok(apply_linear_fast(p, &g.inverse().matrix)?)
}

/// Pulls P back along x = Σ tⱼ bⱼ.
pub fn restrict_poly(p: &MPoly<CycNum>, basis: &[Vec<CycNum>]) -> Result<MPoly<CycNum>, ExactError> {
    if basis.iter().any(|b| b.len() != p.nvars()) {
        return Err(ExactError::DimensionMismatch {
            expected: p.nvars(),
            found: basis.first().map_or(0, |b| b.len()),
        });
    }
    let m = Mat::from_cols(basis);
    if p.is_homogeneous() {
        if let (Some((c, u)), Some((den, pi))) = (root_factor(&m), to_cycint(p)) {
            let deg = p.degree().unwrap_or(0);
            let q = pi.substitute(&u)?;
            let s = c.pow(deg).scale(&(rat_int(1) / den));
            return Ok(q.map(|a| a.to_cyc().times(&s)));
        }
    }
    p.substitute(&m)
}

/// Basis of W₃: wₖ = eₖ − e₋ₖ, k = 1, 2, 3.
pub fn w3_basis() -> Vec<Vec<CycNum>> {
    (1..=3)
        .map(|k| {
            let mut v = vec![CycNum::zero(); N];
            v[k] = CycNum::one();
            v[N - k] = CycNum::from_int(-1);
            v
        })
        .collect()
}

/// Basis of U₄: e₀ and eₖ + e₋ₖ, k = 1, 2, 3.
pub fn u4_basis() -> Vec<Vec<CycNum>> {
    (0..=3)
        .map(|k| {
            let mut v = vec![CycNum::zero(); N];
            v[k] = CycNum::one();
            v[(N - k) % N] = CycNum::one();
            if k == 0 {
                v[0] = CycNum::one();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schroedinger_relations() {
        let g = generators();
        let ts = g.tau.mul(&g.sigma);
        let st = g.sigma.mul(&g.tau);
        assert_eq!(ts.matrix, st.matrix.scale(&CycNum::zeta()));
        assert!(g.sigma.pow(7).is_proj_identity());
        assert_eq!(g.iota.mul(&g.iota).matrix, Mat::identity(7));
        let c = g.sigma.conjugate_by(&g.iota);
        assert_eq!(c.matrix, g.sigma.inverse().matrix);
        assert_eq!(g.fourier_s.mul(&g.iota).matrix, g.iota.mul(&g.fourier_s).matrix);
    }

    #[test]
    fn fourier_square_is_minus_iota() {
        let g = generators();
        let s2 = g.fourier_s.mul(&g.fourier_s);
        assert_eq!(s2.matrix, g.iota.matrix.scale(&CycNum::from_int(-1)));
    }

    #[test]
    fn small_closures() {
        let g = generators();
        let iota_only = group_closure(&[g.iota.clone()], true).unwrap();
        assert_eq!(iota_only.len(), 2);
        let h = group_closure(&[g.sigma.clone(), g.tau.clone()], true).unwrap();
        assert_eq!(h.len(), 49);
        assert!(matches!(
            group_closure_guarded(&[g.sigma.clone(), g.tau.clone()], true, 10),
            Err(HeisenbergError::OrderGuardExceeded(10))
        ));
    }

    #[test]
    fn sl2_images() {
        let g = generators();
        assert_eq!(sl2_image(&g.iota).unwrap(), [[6, 0], [0, 6]]);
        assert_eq!(sl2_image(&g.sigma).unwrap(), [[1, 0], [0, 1]]);
        let s = sl2_image(&g.fourier_s).unwrap();
        assert_eq!(s[0][0], 0);
        assert_eq!(s[1][1], 0);
        assert_eq!((s[0][1] * s[1][0]).rem_euclid(7), 6);
    }

    #[test]
    fn iota_split() {
        let sp = eigenspace_split(&generators().iota).unwrap();
        assert_eq!(sp.plane, w3_basis());
        assert_eq!(sp.space.len(), 4);
        assert!(subspace_eq(&sp.space, &u4_basis()));
    }

    #[test]
    fn act_sigma_on_power() {
        let g = generators();
        let p = MPoly::<CycNum>::var(7, 0).pow(7);
        assert_eq!(act_on_poly(&g.sigma, &p).unwrap(), MPoly::var(7, 1).pow(7));
    }

    #[test]
    fn fast_path_matches_generic() {
        let g = generators();
        let p = MPoly::<CycNum>::var(7, 0)
            .times(&MPoly::var(7, 3))
            .plus(&MPoly::var(7, 5).pow(2).scale(&CycNum::gauss_sum()));
        let m = g.fourier_s.matrix.clone();
        assert_eq!(apply_linear_fast(&p, &m).unwrap(), p.apply_linear(&m).unwrap());
    }
}
