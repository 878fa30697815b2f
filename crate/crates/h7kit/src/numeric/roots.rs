use super::rng::{stream, unitary};
use super::{NumericError, C64};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Evaluates Σ cᵢ sⁱ by Horner's rule.
pub fn horner(c: &[C64], s: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * s + a)
}

/// Σ |cᵢ| |s|ⁱ, the natural scale for rounding errors in `horner`.
pub fn horner_scale(c: &[C64], s: C64) -> f64 {
    let r = s.norm();
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

pub fn derivative(c: &[C64]) -> Vec<C64> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect()
}

/// Roots of Σ cᵢ sⁱ (ascending coefficients) from companion-matrix
/// eigenvalues, each polished by Newton's method.
pub fn poly_roots(c: &[C64]) -> Result<Vec<C64>, NumericError> {
    let top = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Err(NumericError::Degenerate("zero polynomial".into()));
    }
    let mut n = c.len() - 1;
    while n > 0 && c[n].norm() <= 1e-300 {
        n -= 1;
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = c[n];
    let mut comp = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or_else(|| NumericError::NoConvergence("companion Schur form".into()))?;
    let d = derivative(&c[..=n]);
    Ok(eig.iter().map(|&z| newton_polish(&c[..=n], &d, z)).collect())
}

fn newton_polish(c: &[C64], d: &[C64], mut z: C64) -> C64 {
    let mut best = (horner(c, z).norm(), z);
    for _ in 0..8 {
        let dv = horner(d, z);
        if dv.norm() == 0.0 {
            break;
        }
        z -= horner(c, z) / dv;
        let v = horner(c, z).norm();
        if v < best.0 {
            best = (v, z);
        } else {
            break;
        }
    }
    best.1
}

/// A root in P¹ with multiplicity; `spread` is the diameter of the raw
/// eigenvalue cluster it was merged from.
#[derive(Clone, Debug)]
pub struct Root {
    pub point: [C64; 2],
    pub mult: usize,
    pub spread: f64,
}

/// Coefficients (ascending in s) of the degree-n binary form f(s, t), from
/// samples at (ωᵏ, 1).
pub fn binary_coeffs(n: usize, f: impl Fn(C64, C64) -> C64) -> Vec<C64> {
    let m = n + 1;
    let w: Vec<C64> = (0..m).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
    let vals: Vec<C64> = w.iter().map(|&s| f(s, C64::new(1.0, 0.0))).collect();
    (0..m)
        .map(|i| {
            let mut acc = C64::new(0.0, 0.0);
            for (k, v) in vals.iter().enumerate() {
                acc += v * w[(i * k) % m].conj();
            }
            acc / m as f64
        })
        .collect()
}

/// Roots of the binary form f of degree n in P¹, with multiplicities.
///
/// A fixed unitary change of coordinates moves the point at infinity away
/// from the roots; clustered eigenvalues are merged when the derivative test
/// confirms a multiple root.
pub fn binary_roots(n: usize, f: impl Fn(C64, C64) -> C64) -> Result<Vec<Root>, NumericError> {
    let u = unitary(&mut stream(0x5eed, "binary_roots"), 2);
    let g = |s: C64, t: C64| f(u[(0, 0)] * s + u[(0, 1)] * t, u[(1, 0)] * s + u[(1, 1)] * t);
    let c = binary_coeffs(n, g);
    let raw = poly_roots(&c)?;
    let grouped = group_roots(&c, &raw);
    Ok(grouped
        .into_iter()
        .map(|(s, mult, spread)| {
            let p = [u[(0, 0)] * s + u[(0, 1)], u[(1, 0)] * s + u[(1, 1)]];
            let nn = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
            Root { point: [p[0] / nn, p[1] / nn], mult, spread }
        })
        .collect())
}

/// Binary roots from ascending coefficients Σ cᵢ sⁱ tⁿ⁻ⁱ.
pub fn binary_roots_from_coeffs(c: &[C64]) -> Result<Vec<Root>, NumericError> {
    let n = c.len() - 1;
    binary_roots(n, |s, t| {
        let mut acc = C64::new(0.0, 0.0);
        for (i, a) in c.iter().enumerate() {
            acc += a * s.powu(i as u32) * t.powu((n - i) as u32);
        }
        acc
    })
}

const MERGE: f64 = 1e-3;

/// Groups raw roots of p into (root, multiplicity, spread).
pub fn group_roots(p: &[C64], raw: &[C64]) -> Vec<(C64, usize, f64)> {
    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(raw[i].norm()).max(raw[j].norm());
            if (raw[i] - raw[j]).norm() < MERGE * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    let mut out = Vec::new();
    for g in groups {
        let m = g.len();
        let pts: Vec<C64> = g.iter().map(|&i| raw[i]).collect();
        let spread = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max);
        if m == 1 {
            out.push((pts[0], 1, 0.0));
            continue;
        }
        let mean = pts.iter().sum::<C64>() / m as f64;
        match confirm_multiple(p, mean, m) {
            Some(z) => out.push((z, m, spread)),
            None => out.extend(pts.into_iter().map(|z| (z, 1, spread))),
        }
    }
    out
}

// Newton on p^(m−1) from the cluster mean, then check p^(j)(z) ≈ 0 for j < m.
fn confirm_multiple(p: &[C64], mean: C64, m: usize) -> Option<C64> {
    let mut ders = vec![p.to_vec()];
    for _ in 0..m {
        let d = derivative(ders.last().unwrap());
        ders.push(d);
    }
    let z = newton_polish(&ders[m - 1], &ders[m], mean);
    let ok = (0..m).all(|j| horner(&ders[j], z).norm() <= 1e-7 * horner_scale(&ders[j], z).max(1e-300));
    ok.then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(rs: &[C64]) -> Vec<C64> {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in rs {
            let mut n = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                n[i + 1] += a;
                n[i] -= a * r;
            }
            c = n;
        }
        c
    }

    #[test]
    fn simple_roots() {
        let rs = [C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(3.0, -1.0)];
        let mut got = poly_roots(&from_roots(&rs)).unwrap();
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((got[0] - rs[1]).norm() < 1e-12);
        assert!((got[2] - rs[2]).norm() < 1e-12);
    }

    #[test]
    fn triple_root_detected() {
        let r = C64::new(0.3, -0.7);
        let c = from_roots(&[r, r, r, C64::new(2.0, 0.0)]);
        let roots = binary_roots_from_coeffs(&c).unwrap();
        let mut mults: Vec<usize> = roots.iter().map(|x| x.mult).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 3]);
        let tr = roots.iter().find(|x| x.mult == 3).unwrap();
        assert!((tr.point[0] / tr.point[1] - r).norm() < 1e-9);
    }

    #[test]
    fn root_at_infinity() {
        // s·t² has roots (0:1) and (1:0) doubled
        let roots = binary_roots(3, |s, t| s * t * t).unwrap();
        assert_eq!(roots.len(), 2);
        let inf = roots.iter().find(|x| x.point[1].norm() < 1e-9).unwrap();
        assert_eq!(inf.mult, 2);
    }
}
