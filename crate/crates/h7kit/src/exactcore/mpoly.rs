use super::matrix::Mat;
use super::ring::{Field, Ring, ToComplex};
use super::ExactError;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn zero(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&a| a as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// ∏ aᵢ!
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&a| (1..=a as u64).product::<u64>()).product()
    }

    pub fn eval<V: Ring>(&self, x: &[V]) -> V {
        let mut acc = V::one();
        for (xi, &a) in x.iter().zip(&self.0) {
            if a > 0 {
                acc = acc.times(&xi.pow(a as u32));
            }
        }
        acc
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All exponent vectors of total degree d in n variables, in descending
/// graded-lex order (x0^d first).
pub fn monomials(n: usize, d: u32) -> Vec<Mono> {
    fn rec(n: usize, d: u32, pre: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if n == 1 {
            pre.push(d as u16);
            out.push(Mono(pre.clone()));
            pre.pop();
            return;
        }
        for a in (0..=d).rev() {
            pre.push(a as u16);
            rec(n - 1, d - a, pre, out);
            pre.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Mono(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Mono, C>,
}

impl<C: Ring> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Mono::zero(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Mono::var(nvars, i), C::one())
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form Σ cᵢ xᵢ.
    pub fn linear(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Mono::var(n, i), c.clone())))
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_to(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    pub fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &c.times(s));
        }
        r
    }

    pub fn times(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: HashMap<Mono, C> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1.times(c2);
                acc.entry(m1.mul(m2)).and_modify(|v| v.add_to(&c)).or_insert(c);
            }
        }
        let mut r = Self::zero(self.nvars);
        r.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, C::one());
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &f(c));
        }
        r
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m.0[i];
            if a > 0 {
                let mut e = m.clone();
                e.0[i] -= 1;
                r.add_term(e, &c.times(&C::from_i64(a as i64)));
            }
        }
        r
    }

    pub fn eval<V: Ring>(&self, x: &[V], conv: impl Fn(&C) -> V) -> V {
        let mut acc = V::zero();
        for (m, c) in &self.terms {
            acc.add_to(&conv(c).times(&m.eval(x)));
        }
        acc
    }

    pub fn coeff_vector(&self, basis: &[Mono]) -> Vec<C> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coeff_vector(nvars: usize, basis: &[Mono], v: &[C]) -> Self {
        Self::from_terms(nvars, basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// Substitution xᵢ ↦ Σⱼ m[i][j] yⱼ; `m` has one row per variable of self.
    pub fn substitute(&self, m: &Mat<C>) -> Result<MPoly<C>, ExactError> {
        if m.rows() != self.nvars {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars,
                found: m.rows(),
            });
        }
        let k = m.cols();
        let forms: Vec<MPoly<C>> = (0..self.nvars)
            .map(|i| MPoly::linear(&(0..k).map(|j| m.get(i, j).clone()).collect::<Vec<_>>()))
            .collect();
        let mut cache: HashMap<(usize, u16), MPoly<C>> = HashMap::new();
        let mut out = MPoly::zero(k);
        for (mono, c) in &self.terms {
            let mut t = MPoly::constant(k, c.clone());
            for (i, &a) in mono.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let p = cache.entry((i, a)).or_insert_with(|| forms[i].pow(a as u32));
                t = t.times(p);
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// P ↦ P(Mx). This is a right action: apply(apply(P, A), B) = apply(P, A·B).
    pub fn apply_linear(&self, m: &Mat<C>) -> Result<MPoly<C>, ExactError> {
        if m.rows() != m.cols() || m.cols() != self.nvars {
            return Err(ExactError::DimensionMismatch {
                expected: self.nvars,
                found: m.cols(),
            });
        }
        self.substitute(m)
    }

    /// Permutation of variables with scalar weights: xᵢ ↦ wᵢ·x_{perm[i]}.
    pub fn apply_monomial(&self, perm: &[usize], w: &[C]) -> MPoly<C> {
        let mut r = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.nvars];
            let mut cc = c.clone();
            for (i, &a) in m.0.iter().enumerate() {
                if a > 0 {
                    e[perm[i]] += a;
                    cc = cc.times(&w[i].pow(a as u32));
                }
            }
            r.add_term(Mono(e), &cc);
        }
        r
    }
}

impl<C: Field> MPoly<C> {
    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.recip()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let t = MPoly::monomial(m.div(lm), c.times(&lc_inv));
            rem = rem.minus(&t.times(d));
            q = q.plus(&t);
        }
        Some(q)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl<C: Ring + ToComplex> MPoly<C> {
    pub fn to_c64(&self) -> MPoly<Complex64> {
        self.map(|c| c.to_c64())
    }

    pub fn eval_c64(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (xi, &a) in x.iter().zip(&m.0) {
                if a > 0 {
                    t *= xi.powu(a as u32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::{rat_int, Rat};

    fn x(n: usize, i: usize) -> MPoly<Rat> {
        MPoly::var(n, i)
    }

    #[test]
    fn monomial_count_degree7() {
        assert_eq!(monomials(7, 7).len(), 1716);
        assert_eq!(monomials(3, 4).len(), 15);
        assert_eq!(monomials(3, 2)[0], Mono(vec![2, 0, 0]));
    }

    #[test]
    fn identity_substitution() {
        let p = x(1, 0).pow(2);
        let id = Mat::<Rat>::identity(1);
        assert_eq!(p.apply_linear(&id).unwrap(), p);
    }

    #[test]
    fn swap_preserves_product() {
        let p = x(2, 0).times(&x(2, 1));
        let mut sw = Mat::<Rat>::zeros(2, 2);
        sw.set(0, 1, rat_int(1));
        sw.set(1, 0, rat_int(1));
        assert_eq!(p.apply_linear(&sw).unwrap(), p);
    }

    #[test]
    fn shift_substitution_on_seven_variables() {
        // substitution matrix M[i][i+1] = 1 sends x_i to x_{i+1}
        let mut m = Mat::<Rat>::zeros(7, 7);
        for i in 0..7 {
            m.set(i, (i + 1) % 7, rat_int(1));
        }
        let p = x(7, 0).pow(3).times(&x(7, 1));
        let q = x(7, 1).pow(3).times(&x(7, 2));
        assert_eq!(p.apply_linear(&m).unwrap(), q);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = x(3, 0);
        assert!(p.apply_linear(&Mat::<Rat>::identity(2)).is_err());
    }

    #[test]
    fn exact_division() {
        let a = x(3, 0).plus(&x(3, 1).scale(&rat_int(2)));
        let b = x(3, 2).pow(2).minus(&x(3, 0).times(&x(3, 1)));
        let prod = a.times(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.plus(&x(3, 2)).div_exact(&a).is_none());
    }

    #[test]
    fn partial_derivative() {
        let p = x(2, 0).pow(3).times(&x(2, 1));
        let d = p.partial(0);
        assert_eq!(d, x(2, 0).pow(2).times(&x(2, 1)).scale(&rat_int(3)));
    }
}
