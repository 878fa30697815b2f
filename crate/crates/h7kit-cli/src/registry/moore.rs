use super::{exact, numeric, Check, Ctx, Outcome};
use h7kit::exactcore::CycNum;
use h7kit::moore::*;
use h7kit::numeric::{linalg, rng};
use nalgebra::DMatrix;

const S: &str = "moore";

/// The matrix as printed, one row per line.
const GOLDEN: &str = "\
x2*y2 | -x3*y1 - x1*y3 | x3*y0 | -x2*y1 - x1*y2
-x3*y3 | -x3*y2 + x2*y3 | -x2*y1 + x1*y2 | x1*y0
-x1*y1 | x2*y0 | x3*y1 | x3*y2 + x2*y3
";

pub fn checks() -> Vec<Check> {
    vec![
        exact("moore.printed.golden", S, "the printed 3×4 matrix is reproduced term for term", "Remark 3.5, printed matrix", golden),
        exact(
            "moore.skew.construction",
            S,
            "the skew-symmetric construction agrees with the printed matrix except for the term −x1*y3 in entry (3,3)",
            "Remark 3.5, \"a skew-symmetric Moore matrix\"",
            construction,
        ),
        numeric(
            "moore.apolar.six_points",
            S,
            "for 50 random y ∈ P³₋ the maximal minors have exactly 6 common zeros",
            "Remark 3.5, \"defines $6$ points in $\\p{}{}W_3$\"",
            APOLAR_TOL,
            six_points,
        ),
        exact(
            "moore.z.span1",
            S,
            "the minimal orbit Z has 8 points and the minors span dimension 1 on each",
            "Remark 3.5, \"minimal orbit (of cardinality eight)\"",
            z_span,
        ),
        numeric(
            "moore.k6.span3",
            S,
            "on 10 points of the jacobian curve K₆ the minors span dimension 3",
            "Remark 3.5, \"rank of $\\Lambda^3M_y (x)$\"",
            1e-8,
            k6_span,
        ),
        exact(
            "moore.net.dual",
            S,
            "the equivariant net W₃^∨ → S²U₄ is unique; there is none from W₃",
            "§2.3 lemma proof, \"a $\\sldfs$--invariant injection $W_3\\longrightarrow S^2U_4$\"; Remark 3.5, \"degree $6$ and genus $3$\"",
            net,
        ),
        numeric(
            "smoore.projection_zero",
            S,
            "symmetric Moore determinants project to zero on the invariant septimics",
            "§1 Remark smoore, \"determinants of (symmetric) Moore matrices\"; \"$S^2 V_4= U_4\\otimes V_0$\"",
            1e-9,
            symmetric,
        ),
        numeric(
            "moore.apolar.equivariance",
            S,
            "an order-3 symmetry moves the 6 apolar points of y to those of its image",
            "Remark 3.5, \"defines $6$ points in $\\p{}{}W_3$\"",
            1e-8,
            equivariance,
        ),
    ]
}

fn golden(_: &Ctx) -> Result<Outcome, String> {
    let text = printed().to_text();
    Ok(Outcome::exact(text == GOLDEN, text.lines().next().unwrap_or("").to_string()))
}

fn construction(_: &Ctx) -> Result<Outcome, String> {
    let d = skew_construction().diff(&printed());
    Ok(Outcome::exact(d == vec![(2, 2, vec![(-1, 1, 3)])], format!("{d:?}")))
}

fn six_points(ctx: &Ctx) -> Result<Outcome, String> {
    let m = equivariant();
    let mut r = rng::stream(ctx.seed, "six_points");
    let mut worst: f64 = 0.0;
    let mut counts = Vec::new();
    for i in 0..50 {
        let y = rng::gauss_vec(&mut r, 4);
        let pts = apolar_points(&m, &y, ctx.seed + i).map_err(|e| e.to_string())?;
        counts.push(pts.len());
        worst = pts.iter().map(|p| p.residual).fold(worst, f64::max);
    }
    let ok = counts.iter().all(|&c| c == 6);
    Ok(Outcome::numeric_with(worst, ok, format!("{} of 50 with six points", counts.iter().filter(|&&c| c == 6).count())))
}

fn z_span(_: &Ctx) -> Result<Outcome, String> {
    let z = minimal_orbit_z().map_err(|e| e.to_string())?;
    let eq = equivariant();
    let spans: Vec<usize> = z.iter().map(|y| span_dim_exact(&eq, y)).collect();
    let printed_spans: Vec<usize> = z.iter().map(|y: &Vec<CycNum>| span_dim_exact(&printed(), y)).collect();
    let ok = z.len() == 8 && spans.iter().all(|&s| s == 1);
    Ok(Outcome::exact(ok, format!("spans {spans:?}; printed matrix {printed_spans:?}")))
}

fn k6_span(ctx: &Ctx) -> Result<Outcome, String> {
    let netq = net_of_quadrics().map_err(|e| e.to_string())?;
    let pts = jacobian_sample(&netq, 10, ctx.seed).map_err(|e| e.to_string())?;
    let eq = equivariant();
    let mut worst: f64 = 0.0;
    let mut spans = Vec::new();
    for y in &pts {
        spans.push(span_dim(&eq, y));
        // [Q₁y, Q₂y, Q₃y] drops rank on the jacobian curve
        let cols: Vec<Vec<_>> = netq.iter().map(|q| linalg::mat_vec(&gram(&q.to_c64()), y)).collect();
        let sv = linalg::singular_values(&DMatrix::from_fn(4, 3, |i, j| cols[j][i]));
        worst = worst.max(sv[2] / sv[0]);
    }
    let ok = spans.iter().all(|&s| s == 3);
    Ok(Outcome::numeric_with(worst, ok, format!("spans {spans:?}")))
}

fn net(_: &Ctx) -> Result<Outcome, String> {
    let dual_ok = net_of_quadrics().is_ok();
    let act = split_action().map_err(|e| e.to_string())?;
    let direct = equivariant_nets(&act.w, &act.u).map_err(|e| e.to_string())?.len();
    Ok(Outcome::exact(dual_ok && direct == 0, format!("dual net unique: {dual_ok}; direct nets: {direct}")))
}

fn symmetric(ctx: &Ctx) -> Result<Outcome, String> {
    let v = symmetric_moore_vanishing(3, ctx.seed);
    Ok(Outcome::numeric(v.iter().cloned().fold(0.0, f64::max), format!("{} determinants", v.len())))
}

fn equivariance(ctx: &Ctx) -> Result<Outcome, String> {
    let mut r = rng::stream(ctx.seed, "moore_equivariance");
    let y = rng::gauss_vec(&mut r, 4);
    let d = apolar_equivariance(&equivariant(), &y, ctx.seed).map_err(|e| e.to_string())?;
    Ok(Outcome::numeric(d, "one order-3 element"))
}
