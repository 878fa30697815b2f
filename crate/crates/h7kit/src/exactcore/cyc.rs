use super::ring::{rat_int, rat_to_f64, Field, Rat, Ring, ToComplex};
use super::ExactError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Element of Q(ζ) with ζ a primitive 7th root of unity, stored in the
/// power basis 1, ζ, …, ζ⁵ (reduced modulo 1 + ζ + … + ζ⁶).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycNum {
    c: [Rat; 6],
}

fn zero_arr() -> [Rat; 6] {
    std::array::from_fn(|_| <Rat as Ring>::zero())
}

impl CycNum {
    pub fn new(c: [Rat; 6]) -> Self {
        CycNum { c }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut c = zero_arr();
        c[0] = r;
        CycNum { c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// Builds from coefficients of 1, ζ, …, ζ⁶ (not necessarily reduced).
    pub fn from_powers(p: &[Rat; 7]) -> Self {
        let c = std::array::from_fn(|i| &p[i] - &p[6]);
        CycNum { c }
    }

    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(7) as usize;
        let mut p: [Rat; 7] = std::array::from_fn(|_| <Rat as Ring>::zero());
        p[k] = rat_int(1);
        Self::from_powers(&p)
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    pub fn coeffs(&self) -> &[Rat; 6] {
        &self.c
    }

    /// g = Σ_{k=0}^{6} ζ^{k²} = 1 + 2(ζ + ζ² + ζ⁴).
    pub fn gauss_sum() -> Self {
        let mut acc = CycNum::from_int(0);
        for k in 0..7i64 {
            acc = acc.plus(&CycNum::zeta_pow(k * k));
        }
        acc
    }

    pub fn is_rational(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Galois automorphism ζ ↦ ζ^k, k prime to 7.
    pub fn galois(&self, k: i64) -> Self {
        let k = k.rem_euclid(7);
        assert!(k != 0, "galois exponent must be prime to 7");
        let mut p: [Rat; 7] = std::array::from_fn(|_| <Rat as Ring>::zero());
        for (i, ci) in self.c.iter().enumerate() {
            let j = (i as i64 * k).rem_euclid(7) as usize;
            p[j] += ci;
        }
        Self::from_powers(&p)
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(6)
    }

    /// Field norm to Q.
    pub fn norm(&self) -> Rat {
        let mut acc = self.clone();
        for k in 2..7 {
            acc = acc.times(&self.galois(k));
        }
        acc.c[0].clone()
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if Ring::is_zero(self) {
            return Err(ExactError::InvalidScalar);
        }
        let mut others = CycNum::from_int(1);
        for k in 2..7 {
            others = others.times(&self.galois(k));
        }
        let n = self.times(&others).c[0].clone();
        Ok(others.scale(&(Rat::from_integer(1.into()) / n)))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum { c: std::array::from_fn(|i| &self.c[i] * r) }
    }

    pub fn embed(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (i, ci) in self.c.iter().enumerate() {
            if !ci.is_zero() {
                z += Complex64::from_polar(1.0, 2.0 * PI * i as f64 / 7.0) * rat_to_f64(ci);
            }
        }
        z
    }
}

impl Ring for CycNum {
    fn zero() -> Self {
        CycNum { c: zero_arr() }
    }
    fn one() -> Self {
        CycNum::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        CycNum { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
    fn minus(&self, o: &Self) -> Self {
        CycNum { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
    fn times(&self, o: &Self) -> Self {
        let mut p: [Rat; 7] = std::array::from_fn(|_| <Rat as Ring>::zero());
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                p[(i + j) % 7] += a * b;
            }
        }
        Self::from_powers(&p)
    }
    fn negate(&self) -> Self {
        CycNum { c: std::array::from_fn(|i| -&self.c[i]) }
    }
    fn from_i64(n: i64) -> Self {
        CycNum::from_int(n)
    }
    fn add_to(&mut self, o: &Self) {
        for i in 0..6 {
            self.c[i] += &o.c[i];
        }
    }
}

impl Field for CycNum {
    fn recip(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl ToComplex for CycNum {
    fn to_c64(&self) -> Complex64 {
        self.embed()
    }
}

/// Element of the group ring Z[C₇] = Z[ζ]/(ζ⁷ − 1): integer coefficients of
/// 1, ζ, …, ζ⁶ without reduction. Used as a fast path for substitutions by
/// matrices whose entries are signed roots of unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CycInt(pub [i64; 7]);

impl CycInt {
    pub fn zeta_pow(k: i64, sign: i64) -> Self {
        let mut a = [0i64; 7];
        a[k.rem_euclid(7) as usize] = sign;
        CycInt(a)
    }

    pub fn to_cyc(&self) -> CycNum {
        let p: [Rat; 7] = std::array::from_fn(|i| rat_int(self.0[i]));
        CycNum::from_powers(&p)
    }
}

impl Ring for CycInt {
    fn zero() -> Self {
        CycInt([0; 7])
    }
    fn one() -> Self {
        CycInt([1, 0, 0, 0, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        // zero in Q(ζ): all seven coefficients equal
        self.0.iter().all(|&x| x == self.0[0])
    }
    fn plus(&self, o: &Self) -> Self {
        CycInt(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
    fn minus(&self, o: &Self) -> Self {
        CycInt(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
    fn times(&self, o: &Self) -> Self {
        let mut r = [0i64; 7];
        for i in 0..7 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..7 {
                r[(i + j) % 7] += self.0[i] * o.0[j];
            }
        }
        CycInt(r)
    }
    fn negate(&self) -> Self {
        CycInt(std::array::from_fn(|i| -self.0[i]))
    }
    fn from_i64(n: i64) -> Self {
        CycInt([n, 0, 0, 0, 0, 0, 0])
    }
    fn add_to(&mut self, o: &Self) {
        for i in 0..7 {
            self.0[i] += o.0[i];
        }
    }
}

impl ToComplex for CycInt {
    fn to_c64(&self) -> Complex64 {
        (0..7)
            .map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / 7.0) * self.0[i] as f64)
            .sum()
    }
}

/// Recognizes c = ±ζ^k; returns (k, sign).
pub fn as_signed_root(c: &CycNum) -> Option<(i64, i64)> {
    for k in 0..7 {
        let z = CycNum::zeta_pow(k);
        if &z == c {
            return Some((k, 1));
        }
        if z.negate() == *c {
            return Some((k, -1));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_times_zeta6_is_one() {
        assert_eq!(CycNum::zeta().times(&CycNum::zeta_pow(6)), CycNum::one());
    }

    #[test]
    fn cyclotomic_relation_vanishes() {
        let mut s = CycNum::zero();
        for k in 0..7 {
            s = s.plus(&CycNum::zeta_pow(k));
        }
        assert!(Ring::is_zero(&s));
    }

    #[test]
    fn inverse_of_zeta() {
        assert_eq!(CycNum::zeta().inverse().unwrap(), CycNum::zeta_pow(6));
        assert!(matches!(CycNum::zero().inverse(), Err(ExactError::InvalidScalar)));
    }

    #[test]
    fn gauss_sum_identities() {
        let g = CycNum::gauss_sum();
        let expect = CycNum::from_powers(&[
            rat_int(1),
            rat_int(2),
            rat_int(2),
            rat_int(0),
            rat_int(2),
            rat_int(0),
            rat_int(0),
        ]);
        assert_eq!(g, expect);
        assert_eq!(g.times(&g), CycNum::from_int(-7));
        assert_eq!(g.galois(3), g.negate());
        assert!(g.embed().im > 0.0);
        assert!((g.embed() * g.embed() + 7.0).norm() < 1e-12);
    }

    #[test]
    fn embedding_of_units() {
        assert!((CycNum::one().embed() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z = CycNum::zeta().embed();
        assert!((z * z.conj() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn cycint_agrees_with_cycnum() {
        let a = CycInt([1, -2, 0, 3, 0, 0, 5]);
        let b = CycInt([0, 1, 1, 0, -1, 2, 0]);
        assert_eq!(a.times(&b).to_cyc(), a.to_cyc().times(&b.to_cyc()));
        assert!(CycInt([3; 7]).is_zero());
    }
}
