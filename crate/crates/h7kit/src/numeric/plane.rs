use super::linalg::det;
use super::rng::{stream, unitary};
use super::roots::{binary_roots, poly_roots};
use super::{normalize, NumericError, C64};
use crate::exactcore::{MPoly, Mat};
use nalgebra::{DMatrix, DVector};

/// An intersection point of two plane curves with its multiplicity.
#[derive(Clone, Debug)]
pub struct PlanePoint {
    pub point: Vec<C64>,
    pub mult: usize,
    /// max(|f(p)|, |g(p)|) with both forms and p normalized.
    pub residual: f64,
}

pub fn eval(f: &MPoly<C64>, p: &[C64]) -> C64 {
    f.eval_c64(p)
}

/// |f(p)| / (Σ|coef|·|p|^deg), a scale-free residual.
pub fn rel_value(f: &MPoly<C64>, p: &[C64]) -> f64 {
    let n = super::norm(p);
    let d = f.degree().unwrap_or(0) as i32;
    f.eval_c64(p).norm() / (f.l1_norm() * n.powi(d)).max(f64::MIN_POSITIVE)
}

/// Gradient of a ternary form.
pub fn gradient(f: &MPoly<C64>, p: &[C64]) -> Vec<C64> {
    (0..f.nvars()).map(|i| f.partial(i).eval_c64(p)).collect()
}

// coefficient of y^k as a function of (x, z)
fn y_coeffs(f: &MPoly<C64>) -> Vec<Vec<(u32, u32, C64)>> {
    let d = f.degree().unwrap_or(0) as usize;
    let mut out = vec![Vec::new(); d + 1];
    for (m, c) in f.terms() {
        out[m.0[1] as usize].push((m.0[0] as u32, m.0[2] as u32, *c));
    }
    out
}

fn eval_coeffs(cs: &[Vec<(u32, u32, C64)>], x: C64, z: C64) -> Vec<C64> {
    cs.iter()
        .map(|ts| ts.iter().map(|&(a, b, c)| c * x.powu(a) * z.powu(b)).sum())
        .collect()
}

fn sylvester(a: &[C64], b: &[C64]) -> DMatrix<C64> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = DMatrix::zeros(size, size);
    for i in 0..n {
        for (k, &v) in a.iter().rev().enumerate() {
            s[(i, i + k)] = v;
        }
    }
    for i in 0..m {
        for (k, &v) in b.iter().rev().enumerate() {
            s[(n + i, i + k)] = v;
        }
    }
    s
}

/// Intersection of two plane curves without common components.
///
/// After a random unitary change of coordinates the resultant in y is a
/// binary form of degree deg f · deg g in (x : z); its roots give the points,
/// y is recovered from the roots of f on each fiber, and simple points are
/// polished by Newton's method.
pub fn intersect(f: &MPoly<C64>, g: &MPoly<C64>, seed: u64) -> Result<Vec<PlanePoint>, NumericError> {
    let df = f.degree().ok_or_else(|| NumericError::Degenerate("zero form".into()))? as usize;
    let dg = g.degree().ok_or_else(|| NumericError::Degenerate("zero form".into()))? as usize;
    let u = unitary(&mut stream(seed, "plane_intersect"), 3);
    let um = Mat::from_fn(3, 3, |i, j| u[(i, j)]);
    let fp = f.substitute(&um).expect("3 variables");
    let gp = g.substitute(&um).expect("3 variables");
    let fc = y_coeffs(&fp);
    let gc = y_coeffs(&gp);
    if fc.len() != df + 1 || gc.len() != dg + 1 {
        return Err(NumericError::Degenerate("form not homogeneous".into()));
    }
    let res = |x: C64, z: C64| det(&sylvester(&eval_coeffs(&fc, x, z), &eval_coeffs(&gc, x, z)));
    let roots = binary_roots(df * dg, res)?;
    let mut out = Vec::new();
    for r in roots {
        let [x, z] = r.point;
        let ya = eval_coeffs(&fc, x, z);
        let ys = poly_roots(&ya)?;
        let y = ys
            .into_iter()
            .min_by(|&a, &b| {
                let va = rel_value(&gp, &[x, a, z]);
                let vb = rel_value(&gp, &[x, b, z]);
                va.total_cmp(&vb)
            })
            .ok_or_else(|| NumericError::Degenerate("empty fiber".into()))?;
        let mut q = normalize(&[x, y, z]);
        if r.mult == 1 {
            q = newton3(&fp, &gp, q);
        }
        let p: Vec<C64> = (0..3).map(|i| (0..3).map(|j| u[(i, j)] * q[j]).sum()).collect();
        let p = normalize(&p);
        let residual = rel_value(f, &p).max(rel_value(g, &p));
        out.push(PlanePoint { point: p, mult: r.mult, residual });
    }
    Ok(out)
}

/// Newton's method for f = g = 0 on the unit sphere of C³.
pub fn newton3(f: &MPoly<C64>, g: &MPoly<C64>, mut p: Vec<C64>) -> Vec<C64> {
    let start = rel_value(f, &p).max(rel_value(g, &p));
    let mut best = (start, p.clone());
    for _ in 0..6 {
        let gf = gradient(f, &p);
        let gg = gradient(g, &p);
        let j = DMatrix::from_row_slice(
            3,
            3,
            &[gf[0], gf[1], gf[2], gg[0], gg[1], gg[2], p[0].conj(), p[1].conj(), p[2].conj()],
        );
        let rhs = DVector::from_column_slice(&[-f.eval_c64(&p), -g.eval_c64(&p), C64::new(0.0, 0.0)]);
        let Some(dx) = j.lu().solve(&rhs) else { break };
        p = normalize(&(0..3).map(|i| p[i] + dx[i]).collect::<Vec<_>>());
        let v = rel_value(f, &p).max(rel_value(g, &p));
        if v < best.0 {
            best = (v, p.clone());
        } else {
            break;
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Mono;

    fn form(terms: &[([u16; 3], f64)]) -> MPoly<C64> {
        MPoly::from_terms(3, terms.iter().map(|(e, c)| (Mono(e.to_vec()), C64::new(*c, 0.0))))
    }

    #[test]
    fn two_conics_meet_in_four_points() {
        // x² + y² − z² and x² − 4y²... intersect at (±2/√5 : ±1/√5 : 1)
        let f = form(&[([2, 0, 0], 1.0), ([0, 2, 0], 1.0), ([0, 0, 2], -1.0)]);
        let g = form(&[([2, 0, 0], 1.0), ([0, 2, 0], -4.0)]);
        let pts = intersect(&f, &g, 1).unwrap();
        assert_eq!(pts.iter().map(|p| p.mult).sum::<usize>(), 4);
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!(p.residual < 1e-12, "{}", p.residual);
        }
    }

    #[test]
    fn tangent_line_has_double_point() {
        // conic x z − y² and line x: tangent at (0:0:1)
        let f = form(&[([1, 0, 1], 1.0), ([0, 2, 0], -1.0)]);
        let g = form(&[([1, 0, 0], 1.0)]);
        let pts = intersect(&f, &g, 2).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].mult, 2);
        assert!(pts[0].point[0].norm() < 1e-7 && pts[0].point[1].norm() < 1e-7);
    }

    #[test]
    fn two_cubics_meet_in_nine_points() {
        let f = form(&[([3, 0, 0], 1.0), ([0, 3, 0], 2.0), ([0, 0, 3], -1.5), ([1, 1, 1], 0.7)]);
        let g = form(&[([2, 1, 0], 1.0), ([0, 2, 1], -1.0), ([1, 0, 2], 0.3), ([0, 0, 3], 0.9)]);
        let pts = intersect(&f, &g, 3).unwrap();
        assert_eq!(pts.len(), 9);
        for p in &pts {
            assert!(p.residual < 1e-10, "{}", p.residual);
        }
    }
}
