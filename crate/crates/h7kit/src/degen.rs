//! Heptagons E₀, E₁, E₂ on the minimal orbit, the unions of coordinate
//! 3-spaces B₀, B₁, B₂, and the reducible surfaces built on them.

use crate::exactcore::{rat_int, CycNum, ExactError, MPoly, Mat, Mono, Rat, Ring};
use crate::numeric::{self, NumericError, C64};
use crate::vsp::{scheme_type, PointScheme, VspError};
use std::collections::BTreeSet;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum DegenError {
    #[error("lines {0:?} and {1:?} span {2:?}, which is in no 3-space of the configuration")]
    CounterexamplePair((usize, usize), (usize, usize), Vec<usize>),
    #[error("3-space {0:?} is not spanned by two lines of the heptagon")]
    UncoveredSpace(Vec<usize>),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Vsp(#[from] VspError),
}

fn m7(k: i64) -> usize {
    k.rem_euclid(7) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heptagon {
    pub index: usize,
    /// Lines e_k e_{k+1+i}, k = 0..6.
    pub lines: Vec<(usize, usize)>,
}

pub fn heptagon(i: usize) -> Heptagon {
    assert!(i < 3);
    Heptagon { index: i, lines: (0..7).map(|k| (k, m7((k + 1 + i) as i64))).collect() }
}

impl Heptagon {
    /// Each vertex lies on exactly two lines and the lines form one cycle.
    pub fn is_closed_cycle(&self) -> bool {
        let mut deg = [0; 7];
        for &(a, b) in &self.lines {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut seen = vec![0usize];
        let mut cur = 0;
        let mut prev = usize::MAX;
        loop {
            let next = self
                .lines
                .iter()
                .filter_map(|&(a, b)| if a == cur && b != prev { Some(b) } else if b == cur && a != prev { Some(a) } else { None })
                .next();
            match next {
                Some(0) => break,
                Some(n) if !seen.contains(&n) => {
                    prev = cur;
                    cur = n;
                    seen.push(n);
                }
                _ => return false,
            }
        }
        deg.iter().all(|&d| d == 2) && seen.len() == 7
    }

    fn line_set(&self) -> BTreeSet<BTreeSet<usize>> {
        self.lines.iter().map(|&(a, b)| [a, b].into_iter().collect()).collect()
    }

    /// Stable as a set of lines under k ↦ k + 1 and k ↦ −k.
    pub fn is_symmetric(&self) -> bool {
        let s = self.line_set();
        let shift: BTreeSet<BTreeSet<usize>> = s.iter().map(|l| l.iter().map(|&a| (a + 1) % 7).collect()).collect();
        let neg: BTreeSet<BTreeSet<usize>> = s.iter().map(|l| l.iter().map(|&a| (7 - a) % 7).collect()).collect();
        shift == s && neg == s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanConfig {
    pub index: usize,
    /// I_i^k = {k+i+1, k−i−1, k+3i+3, k−3i−3}, k = 0..6, in that order.
    pub sets: Vec<Vec<usize>>,
}

pub fn span_config(i: usize) -> SpanConfig {
    assert!(i < 3);
    let i = i as i64;
    SpanConfig {
        index: i as usize,
        sets: (0..7).map(|k| vec![m7(k + i + 1), m7(k - i - 1), m7(k + 3 * i + 3), m7(k - 3 * i - 3)]).collect(),
    }
}

impl SpanConfig {
    pub fn distinct(&self) -> bool {
        self.sets.iter().all(|s| s.iter().collect::<BTreeSet<_>>().len() == 4)
    }

    fn contains(&self, span: &BTreeSet<usize>) -> bool {
        self.sets.iter().any(|s| span.iter().all(|x| s.contains(x)))
    }

    pub fn set_family(&self) -> BTreeSet<BTreeSet<usize>> {
        self.sets.iter().map(|s| s.iter().cloned().collect()).collect()
    }
}

/// Every pair of lines of E_i spans a space inside B_j ∪ B_k, and every
/// 3-space of B_j ∪ B_k is spanned by two disjoint lines of E_i.
pub fn bisecant_identity_check(i: usize) -> Result<(), DegenError> {
    let others: Vec<SpanConfig> = (0..3).filter(|&j| j != i).map(span_config).collect();
    bisecant_check_with(&heptagon(i), &others)
}

pub fn bisecant_check_with(e: &Heptagon, configs: &[SpanConfig]) -> Result<(), DegenError> {
    let mut spanned = BTreeSet::new();
    for (p, &a) in e.lines.iter().enumerate() {
        for &b in &e.lines[p + 1..] {
            let span: BTreeSet<usize> = [a.0, a.1, b.0, b.1].into_iter().collect();
            if !configs.iter().any(|c| c.contains(&span)) {
                return Err(DegenError::CounterexamplePair(a, b, span.into_iter().collect()));
            }
            if span.len() == 4 {
                spanned.insert(span);
            }
        }
    }
    for c in configs {
        for s in c.set_family() {
            if !spanned.contains(&s) {
                return Err(DegenError::UncoveredSpace(s.into_iter().collect()));
            }
        }
    }
    Ok(())
}

/// B₀, B₁, B₂ under k ↦ −k: each family is mapped to itself.
pub fn negation_permutes_configs() -> Vec<usize> {
    let fams: Vec<_> = (0..3).map(|i| span_config(i).set_family()).collect();
    fams.iter()
        .map(|f| {
            let neg: BTreeSet<BTreeSet<usize>> = f.iter().map(|s| s.iter().map(|&a| (7 - a) % 7).collect()).collect();
            fams.iter().position(|g| *g == neg).unwrap_or(usize::MAX)
        })
        .collect()
}

fn unit(k: usize) -> Vec<CycNum> {
    let mut v = vec![CycNum::zero(); 7];
    v[k] = CycNum::one();
    v
}

/// Basis of span(a) ∩ span(b), exactly.
pub fn intersect_spans(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let mut cols: Vec<Vec<CycNum>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|c| c.negate()).collect()));
    let m = Mat::from_cols(&cols);
    let mut out: Vec<Vec<CycNum>> = Vec::new();
    for k in m.kernel() {
        let mut v = vec![CycNum::zero(); 7];
        for (j, col) in a.iter().enumerate() {
            for t in 0..7 {
                v[t].add_to(&col[t].times(&k[j]));
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// A component of a section: a reduced point counted `length` times.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint {
    pub point: Vec<CycNum>,
    pub length: usize,
}

fn normalize_exact(v: &[CycNum]) -> Vec<CycNum> {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero").inverse().expect("unit");
    v.iter().map(|c| c.times(&lead)).collect()
}

/// Line-by-line intersection of the heptagon with span(plane); each line
/// meeting the space in a point contributes length 1 at that point.
pub fn heptagon_section(e: &Heptagon, plane: &[Vec<CycNum>]) -> Result<Vec<SectionPoint>, DegenError> {
    let mut out: Vec<SectionPoint> = Vec::new();
    for &(a, b) in &e.lines {
        let meet = intersect_spans(&[unit(a), unit(b)], plane);
        match meet.len() {
            0 => {}
            1 => {
                let p = normalize_exact(&meet[0]);
                match out.iter_mut().find(|s| s.point == p) {
                    Some(s) => s.length += 1,
                    None => out.push(SectionPoint { point: p, length: 1 }),
                }
            }
            _ => return Err(DegenError::DegenerateConfiguration(format!("line e{a}e{b} lies in the space"))),
        }
    }
    Ok(out)
}

pub struct HeptagonSections {
    pub plane_points: Vec<SectionPoint>,
    pub space_points: Vec<SectionPoint>,
}

impl HeptagonSections {
    pub fn plane_length(&self) -> usize {
        self.plane_points.iter().map(|p| p.length).sum()
    }

    pub fn space_length(&self) -> usize {
        self.space_points.iter().map(|p| p.length).sum()
    }
}

/// Sections of E_i by the fixed spaces of σᵘ ι σ⁻ᵘ.
pub fn heptagon_plane_sections(i: usize, u: i64) -> Result<HeptagonSections, DegenError> {
    let e = heptagon(i);
    Ok(HeptagonSections {
        plane_points: heptagon_section(&e, &crate::septimics::p2plus_basis(u, 0))?,
        space_points: heptagon_section(&e, &crate::septimics::p3minus_basis(u, 0))?,
    })
}

/// The quadric λ z_{k+1} z_{k+6} + μ z_{k+2} z_{k+5} in the 3-space of I₁^k.
pub fn seven_quadric(k: usize, lambda: C64, mu: C64) -> MPoly<C64> {
    let pair = |a: usize, b: usize| {
        let mut e = vec![0u16; 7];
        e[(k + a) % 7] += 1;
        e[(k + b) % 7] += 1;
        Mono(e)
    };
    let mut q = MPoly::zero(7);
    q.add_term(pair(1, 6), &lambda);
    q.add_term(pair(2, 5), &mu);
    q
}

/// Heptagon lines of E₀ ∪ E₂ inside the 3-space of I₁^k on which the quadric vanishes.
pub fn quadric_lines(k: usize, lambda: C64, mu: C64) -> Vec<(usize, usize)> {
    let q = seven_quadric(k, lambda, mu);
    let set: BTreeSet<usize> = span_config(1).sets[k].iter().cloned().collect();
    let mut out = Vec::new();
    for i in [0, 2] {
        for &(a, b) in &heptagon(i).lines {
            if set.contains(&a) && set.contains(&b) {
                // q restricted to the line s e_a + t e_b: coefficients of s², st, t²
                let mut ok = true;
                for e in [[2u16, 0], [1, 1], [0, 2]] {
                    let mut m = vec![0u16; 7];
                    m[a] += e[0];
                    m[b] += e[1];
                    if q.coeff(&Mono(m)).norm() != 0.0 {
                        ok = false;
                    }
                }
                if ok {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// The two lines of E₀ in P^{I₁^k} and the two lines of E₂ closing them
/// into a skew quadrilateral.
pub fn four_lines(k: usize) -> Vec<(usize, usize)> {
    let set = &span_config(1).sets[k];
    let inside = |i: usize| -> Vec<(usize, usize)> {
        heptagon(i).lines.into_iter().filter(|(a, b)| set.contains(a) && set.contains(b)).collect()
    };
    let e0 = inside(0);
    let e2 = inside(2);
    let same = |l: &(usize, usize), a: usize, b: usize| (l.0 == a && l.1 == b) || (l.0 == b && l.1 == a);
    let ((p1, p2), (q1, q2)) = (e0[0], e0[1]);
    for (x, y) in [((p2, q1), (q2, p1)), ((p2, q2), (q1, p1))] {
        let fx = e2.iter().find(|l| same(l, x.0, x.1));
        let fy = e2.iter().find(|l| same(l, y.0, y.1));
        if let (Some(&a), Some(&b)) = (fx, fy) {
            return vec![e0[0], e0[1], a, b];
        }
    }
    e0
}

/// Quadratic monomials on P^{I₁^k} vanishing on `four_lines(k)`; a quadric
/// contains a coordinate line iff it avoids that line's three monomials, so
/// these span the pencil.
pub fn quadric_pencil_monomials(k: usize) -> Vec<(usize, usize)> {
    let set = &span_config(1).sets[k];
    let lines = four_lines(k);
    let mut out = Vec::new();
    for (p, &a) in set.iter().enumerate() {
        for &b in &set[p..] {
            let killed = lines.iter().any(|&(u, v)| [u, v].contains(&a) && [u, v].contains(&b));
            if !killed {
                out.push((a.min(b), a.max(b)));
            }
        }
    }
    out.sort();
    out
}

pub struct SevenQuadricsSection {
    pub scheme: PointScheme,
    pub label: String,
}

/// The section of ∪ₖ {Q_k = 0} ⊂ B₁ by P²₊, component by component:
/// isolated points of P^{I₁^k} ∩ P²₊ on Q_k count once per component, and a
/// line of P^{I₁^k} ∩ P²₊ contributes the roots of Q_k on it.
pub fn seven_quadrics(lambda: C64, mu: C64) -> Result<SevenQuadricsSection, DegenError> {
    let plane = crate::septimics::p2plus_basis(0, 0);
    let plane_c: Vec<Vec<C64>> = plane.iter().map(|v| v.iter().map(|c| c.embed()).collect()).collect();
    let mut pts: Vec<(Vec<C64>, usize)> = Vec::new();
    for k in 0..7 {
        let set = &span_config(1).sets[k];
        let space: Vec<Vec<CycNum>> = set.iter().map(|&j| unit(j)).collect();
        let meet = intersect_spans(&space, &plane);
        let q = seven_quadric(k, lambda, mu);
        let to_c = |v: &[CycNum]| -> Vec<C64> { v.iter().map(|c| c.embed()).collect() };
        match meet.len() {
            0 => {}
            1 => {
                let p = to_c(&meet[0]);
                if q.eval_c64(&p).norm() > 1e-12 * numeric::norm(&p).powi(2) {
                    return Err(DegenError::DegenerateConfiguration(format!("point of component {k} off its quadric")));
                }
                pts.push((p, 1));
            }
            2 => {
                let (p, r) = (to_c(&meet[0]), to_c(&meet[1]));
                let co = crate::numeric::roots::binary_coeffs(2, |s, t| {
                    q.eval_c64(&(0..7).map(|j| p[j] * s + r[j] * t).collect::<Vec<_>>())
                });
                if co.iter().all(|c| c.norm() < 1e-12) {
                    return Err(DegenError::DegenerateConfiguration(format!("component {k} contains a line of the plane")));
                }
                for root in crate::numeric::roots::binary_roots_from_coeffs(&co)? {
                    pts.push(((0..7).map(|j| p[j] * root.point[0] + r[j] * root.point[1]).collect(), root.mult));
                }
            }
            _ => return Err(DegenError::DegenerateConfiguration(format!("component {k} meets the plane in dimension ≥ 2"))),
        }
    }
    // coordinates on the plane basis
    let basis = crate::numeric::linalg::from_rows(&plane_c).transpose();
    let local: Vec<(Vec<C64>, usize)> = pts
        .into_iter()
        .map(|(p, m)| (crate::numeric::linalg::lstsq(&basis, &p).0, m))
        .collect();
    let scheme = scheme_type(&local)?;
    let h6 = &crate::apolarity::klein().sextic_c64;
    let label = scheme.label(Some(h6), 1e-9);
    Ok(SevenQuadricsSection { scheme, label })
}

/// A polynomial over Q in x, y, z, ε (and optionally α, β) reduced mod ε².
fn trunc_eps(p: &MPoly<Rat>, eps: usize) -> MPoly<Rat> {
    MPoly::from_terms(p.nvars(), p.terms().filter(|(m, _)| m.0[eps] < 2).map(|(m, c)| (m.clone(), c.clone())))
}

fn var(n: usize, i: usize) -> MPoly<Rat> {
    MPoly::var(n, i)
}

pub struct EpsilonReport {
    /// (z+εx)⁴−z⁴+(x+εy)⁴−x⁴+(y+εz)⁴−y⁴ − 4ε(z³x+x³y+y³z) mod ε².
    pub identity_defect: MPoly<Rat>,
    /// Terms of degree ≥ 2 in ε before reduction.
    pub eps_square_terms: usize,
    /// The (α, β) display minus 8α³β·ε·(z³x+x³y+y³z) mod ε².
    pub family_defect: MPoly<Rat>,
    /// Supports of the six points of the family with multiplicities, at (α:β) = (1:0) and (0:1).
    pub limit_types: [(Vec<usize>, bool); 2],
}

/// Linear forms of the family support: βx+αz, βx−αz, x, x, y, y.
fn family_support(alpha: i64, beta: i64) -> Vec<[i64; 3]> {
    vec![[beta, 0, alpha], [beta, 0, -alpha], [1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0]]
}

fn proj_class(v: &[i64; 3]) -> [i64; 3] {
    let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(1);
    let g = v.iter().fold(0i64, |g, &c| num_integer::gcd(g, c));
    let s = if lead < 0 { -1 } else { 1 };
    [s * v[0] / g, s * v[1] / g, s * v[2] / g]
}

/// Partition of the support and whether it consists of coordinate points.
pub fn family_type(alpha: i64, beta: i64) -> (Vec<usize>, bool) {
    let mut counts: std::collections::BTreeMap<[i64; 3], usize> = Default::default();
    for v in family_support(alpha, beta) {
        *counts.entry(proj_class(&v)).or_insert(0) += 1;
    }
    let coordinate = counts.keys().all(|v| v.iter().filter(|&&c| c != 0).count() == 1);
    (crate::numeric::cluster::partition(counts.values().cloned()), coordinate)
}

pub fn epsilon_identity_check() -> EpsilonReport {
    // variables x, y, z, ε, α, β
    let n = 6;
    let (x, y, z, e, a, b) = (var(n, 0), var(n, 1), var(n, 2), var(n, 3), var(n, 4), var(n, 5));
    let c = |k: i64| MPoly::constant(n, rat_int(k));
    let d4 = |u: &MPoly<Rat>, v: &MPoly<Rat>| u.plus(v).pow(4).minus(&u.pow(4));
    let raw = d4(&z, &e.times(&x)).plus(&d4(&x, &e.times(&y))).plus(&d4(&y, &e.times(&z)));
    let eps_square_terms = raw.terms().filter(|(m, _)| m.0[3] >= 2).count();
    let klein = z.pow(3).times(&x).plus(&x.pow(3).times(&y)).plus(&y.pow(3).times(&z));
    let identity_defect = trunc_eps(&raw, 3).minus(&c(4).times(&e).times(&klein));
    let lin1 = b.times(&x).plus(&a.times(&z));
    let lin2 = b.times(&x).minus(&a.times(&z));
    let shift = e.times(&b.pow(2).times(&z).minus(&a.pow(2).times(&y)));
    let family = e
        .times(&lin1.pow(4))
        .minus(&e.times(&lin2.pow(4)))
        .minus(&c(2).times(&a).times(&b).times(&d4(&x, &shift)))
        .plus(&c(2).times(&a.pow(3)).times(&b).times(&d4(&y, &e.times(&z))));
    let family_defect = trunc_eps(&family, 3).minus(&c(8).times(&a.pow(3)).times(&b).times(&e).times(&klein));
    EpsilonReport {
        identity_defect,
        eps_square_terms,
        family_defect,
        limit_types: [family_type(1, 0), family_type(0, 1)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_from_formula() {
        let s = |v: &[usize]| v.iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(s(&span_config(0).sets[0]), s(&[1, 6, 3, 4]));
        assert_eq!(s(&span_config(1).sets[0]), s(&[2, 5, 6, 1]));
    }

    #[test]
    fn heptagons_are_symmetric_cycles() {
        for i in 0..3 {
            let e = heptagon(i);
            assert!(e.is_closed_cycle() && e.is_symmetric());
        }
    }

    #[test]
    fn family_types() {
        assert_eq!(family_type(1, 1), (vec![2, 2, 1, 1], false));
        assert_eq!(family_type(1, 0), (vec![2, 2, 2], true));
        assert_eq!(family_type(0, 1), (vec![4, 2], true));
    }
}
