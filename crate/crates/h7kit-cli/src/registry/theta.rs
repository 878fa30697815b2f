use super::{numeric, Check, Ctx, Outcome};
use h7kit::numeric::{rng, C64};
use h7kit::thetacurves::*;
use rand::Rng;

const S: &str = "theta";

pub fn checks() -> Vec<Check> {
    vec![
        numeric(
            "theta.model.equivariance",
            S,
            "f(z+1/7) ∝ τ·f(z) and f(z+τ/7) ∝ σ⁻¹·f(z) for 3 moduli and 10 points each",
            "§1 remark (iii); remark (v), \"intersects any $\\p2+$ in one point\"",
            1e-9,
            equivariance,
        ),
        numeric(
            "theta.model.parity",
            S,
            "f(0) lies in W₃ and the three nonzero half-periods map into U₄",
            "§1 remark (v), \"corresponding to the image of $0$\"; \"its non trivial $2$--torsion points\"",
            1e-9,
            parity,
        ),
        numeric(
            "cor.theta.septimic_vanish",
            S,
            "all 8 invariant septimics vanish on the curve (50 samples, 3 moduli)",
            "§1 Corollary after the Lemma, \"contains any $G_7$--invariant elliptic curve\"",
            1e-6,
            septimic_vanish,
        ),
        numeric(
            "prop.scroll.generic_type",
            S,
            "20 translation scrolls (E, ±σ) meet P²₊ in type (2,1,1,1,1)",
            "§3.1 Prop., \"intersects $\\p2+$ along $s$\"; Introduction table rows \"(2,1,1,1,1)\" and \"(3,1,1,1)\"",
            1e-7,
            generic_type,
        ),
        numeric(
            "prop.scroll.tangent_type",
            S,
            "the tangent scroll (E, 0) meets P²₊ in type (3,1,1,1); at a 2-torsion σ the type is (2,2,2)",
            "§3.1 Prop., \"intersects $\\p2+$ along $s$\"; Introduction table rows \"(2,1,1,1,1)\" and \"(3,1,1,1)\"",
            1e-7,
            tangent_type,
        ),
        numeric(
            "prop.scroll.common_conic",
            S,
            "plane sections of scrolls of one curve lie on a single conic, the antipolar conic of f(0)",
            "§3.1 proof, \"along a conic\"",
            1e-7,
            common_conic_check,
        ),
        numeric(
            "remark.2tscroll.line",
            S,
            "the scroll (E, ω), ω of order 2, meets each sampled P³₋ along a line",
            "§3.1 Prop. 2tscroll, \"contains 3 elliptic normal curves\"; Remark, \"along a line\"",
            1e-7,
            two_torsion_line,
        ),
        numeric(
            "remark.2tscroll.septimics",
            S,
            "points of the scroll (E, ω) annihilate all invariant septimics",
            "§3.1 Prop. 2tscroll; Remark, \"is contained in all our $G_7$-invariant septimic hypersurfaces\"",
            1e-6,
            two_torsion_septimics,
        ),
        numeric(
            "remark.abelian.six_plus_ten",
            S,
            "scroll sections have length 6 on P²₊ and 10 on P³₋, the same for σ and −σ",
            "§1 remark (vi), \"decomposition $6+10$\"",
            1e-7,
            six_plus_ten,
        ),
    ]
}

fn models(seed: u64) -> Vec<EllipticModel> {
    (0..3).map(|i| EllipticModel::random(seed * 10 + i)).collect()
}

/// Translations a + bτ with a, b away from the half-lattice.
fn sigmas(m: &EllipticModel, seed: u64, n: usize) -> Vec<C64> {
    let mut r = rng::stream(seed, "sigmas");
    (0..n)
        .map(|_| {
            let a: f64 = r.gen_range(0.08..0.42);
            let b: f64 = r.gen_range(0.08..0.42);
            m.tau * b + a
        })
        .collect()
}

fn equivariance(ctx: &Ctx) -> Result<Outcome, String> {
    let worst = models(ctx.seed).iter().map(|m| model_checks(m, 10, ctx.seed).equivariance).fold(0.0, f64::max);
    Ok(Outcome::numeric(worst, "3 moduli × 10 points"))
}

fn parity(ctx: &Ctx) -> Result<Outcome, String> {
    let mut worst: f64 = 0.0;
    let mut generic_off = f64::INFINITY;
    for m in models(ctx.seed) {
        let c = model_checks(&m, 1, ctx.seed);
        worst = worst.max(c.origin_in_w3);
        worst = c.half_periods_in_u4.iter().cloned().fold(worst, f64::max);
        generic_off = generic_off.min(off_u4(&m.point(C64::new(0.13, 0.07))));
    }
    // a generic point is in neither eigenspace
    Ok(Outcome::numeric_with(worst, generic_off > 1e-3, format!("generic point distance from U₄ {generic_off:.3}")))
}

fn septimic_vanish(ctx: &Ctx) -> Result<Outcome, String> {
    let worst = models(ctx.seed).iter().map(|m| septimic_on_curve(m, 50, ctx.seed)).fold(0.0, f64::max);
    let mut r = rng::stream(ctx.seed, "septimic_contrast");
    let p = rng::gauss_vec(&mut r, 7);
    let contrast = h7kit::septimics::system().rel_values(&p).into_iter().fold(0.0, f64::max);
    Ok(Outcome::numeric_with(worst, contrast > 1e-4, format!("random point value {contrast:.2e}")))
}

fn generic_type(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let mut worst: f64 = 0.0;
    let mut labels = Vec::new();
    for s in sigmas(&m, ctx.seed, 20) {
        let sec = scroll_plane_section(&m, s).map_err(|e| e.to_string())?;
        worst = worst.max(sec.residual);
        labels.push(sec.label());
    }
    let ok = labels.iter().all(|l| l == "(2,1,1,1,1)");
    labels.dedup();
    Ok(Outcome::numeric_with(worst, ok, format!("types {labels:?}")))
}

fn tangent_type(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let t = scroll_plane_section(&m, C64::new(0.0, 0.0)).map_err(|e| e.to_string())?;
    let h = scroll_plane_section(&m, C64::new(0.5, 0.0)).map_err(|e| e.to_string())?;
    let ok = t.label() == "(3,1,1,1)" && h.label() == "(2,2,2)";
    Ok(Outcome::numeric_with(t.residual.max(h.residual), ok, format!("σ = 0: {}; σ = 1/2: {}", t.label(), h.label())))
}

fn common_conic_check(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let ss = sigmas(&m, ctx.seed + 1, 4);
    let mut pts = Vec::new();
    for &s in &ss {
        pts.extend(scroll_plane_section(&m, s).map_err(|e| e.to_string())?.points.into_iter().map(|(p, _)| p));
    }
    let c = common_conic(&pts);
    let antipolar = antipolar_conic_residual(&m, &ss).map_err(|e| e.to_string())?;
    Ok(Outcome::numeric_with(
        c.smallest.max(antipolar),
        c.next > 1e-3,
        format!("{} points; conic gap {:.2e}; antipolar residual {antipolar:.2e}", pts.len(), c.next),
    ))
}

const SPACES: [(i64, i64); 7] = [(0, 0), (1, 0), (0, 1), (2, 3), (5, 6), (3, 1), (6, 4)];

fn two_torsion_line(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let rep = two_torsion_scroll_checks(&m, &SPACES, ctx.seed).map_err(|e| e.to_string())?;
    let worst = rep.line_residuals.iter().cloned().fold(0.0, f64::max);
    let ok = rep.section_ranks.iter().all(|&r| r == 2);
    Ok(Outcome::numeric_with(worst, ok, format!("ranks {:?}; degree count {:?}", rep.section_ranks, BEZOUT_DEGREE)))
}

fn two_torsion_septimics(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let rep = two_torsion_scroll_checks(&m, &SPACES[..1], ctx.seed).map_err(|e| e.to_string())?;
    Ok(Outcome::numeric(rep.septimic_residual, "20 scroll points"))
}

fn six_plus_ten(ctx: &Ctx) -> Result<Outcome, String> {
    let m = EllipticModel::random(ctx.seed);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for s in sigmas(&m, ctx.seed + 2, 5) {
        let c = abelian_section_count(&m, s).map_err(|e| e.to_string())?;
        ok &= c.plane_length == 6 && c.space_length == 10 && c.symmetric;
        worst = worst.max(scroll_space_section(&m, s).map_err(|e| e.to_string())?.residual);
    }
    Ok(Outcome::numeric_with(worst, ok, "5 translations"))
}
