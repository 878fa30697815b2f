use super::{numeric, Check, Ctx, Outcome};
use h7kit::apolarity::{flexes, klein};
use h7kit::numeric::{plane, rng, C64};
use h7kit::vsp::*;

const S: &str = "vsp";

pub fn checks() -> Vec<Check> {
    vec![
        numeric(
            "defprop.vsp.antipolarity",
            S,
            "20 sampled power-sum hexagons of the Klein quartic are mutually antipolar",
            "§2.1 Corollary, \"lies inside $VSP(F,n)$ if and only if\"",
            ANTIPOLARITY_TOL,
            vsp_antipolarity,
        ),
        numeric(
            "defprop.vsp.power_sum",
            S,
            "20 sampled hexagons reproduce the Klein quartic as a sum of six fourth powers",
            "§2.1 Def-Prop, \"the variety of sums of power\"",
            POWER_SUM_TOL,
            vsp_power_sum,
        ),
        numeric(
            "vsp.grassmann.plucker",
            S,
            "the projected cubes of a hexagon span a 3-plane; all Plücker relations hold",
            "§2.2, \"a map of $VSP(F,6)$ into the Grassmannian\"; Remark, \"variety of $6$ secant planes\"",
            1e-9,
            grassmann,
        ),
        numeric(
            "prop.types.generic_census",
            S,
            "for 5 points a ∈ K'₄∖H₆ the boundary pencil has generic type (2,1,1,1,1), one (3,1,1,1) and three (2,2,2)",
            "§2.3 Prop. types, \"type of $\\zeta_p$ is one\"; proof, \"become three $(2,2,2)$\"",
            1e-8,
            generic_census,
        ),
        numeric(
            "prop.types.flex_census",
            S,
            "for 5 flexes a ∈ K'₄∩H₆ the boundary pencil has generic type (2,2,1,1) with (2,2,2)_s and (4,2) limits",
            "§2.3 Prop. types, \"type of $\\zeta_p$ is one\"; Introduction table, \"type of $\\zeta_A$\"",
            1e-8,
            flex_census,
        ),
        numeric(
            "prop.triangle.mutual_antipolarity",
            S,
            "the tangency points of the Hessian triangle T_a with K'₄ are mutually antipolar",
            "§2.3 Prop. triangle, \"with respect to $\\K4$ contains $x_j$\"",
            1e-7,
            triangle,
        ),
        numeric(
            "lemma.div5.quintic_pencil",
            S,
            "the quintic divisors along C_ℓ span a pencil; ℓ is a base point when ℓ ∈ F♭",
            "§2.2 Lemma div5, \"is a projective line in\"",
            1e-8,
            quintic_pencil,
        ),
        numeric(
            "cor.cy.cone_gamma",
            S,
            "the image of C_a spans a P⁴ and lies on a rank-4 quadric cone; at a flex the quadric has rank 2",
            "§2.2 Cor. CY, \"a quadric cone $\\Gamma_a$\"; \"splits in two $\\p3{}$'s\"",
            1e-8,
            cone,
        ),
    ]
}

fn samples(seed: u64) -> Result<Vec<PowerSumDecomp>, String> {
    let k = klein();
    (0..20).map(|i| vsp_sample(&k.k4, &k.cat, seed * 1000 + i).map_err(|e| e.to_string())).collect()
}

fn vsp_antipolarity(ctx: &Ctx) -> Result<Outcome, String> {
    let s = samples(ctx.seed)?;
    let worst = s.iter().map(|d| d.antipolarity).fold(0.0, f64::max);
    Ok(Outcome::numeric(worst, format!("{} hexagons", s.len())))
}

fn vsp_power_sum(ctx: &Ctx) -> Result<Outcome, String> {
    let s = samples(ctx.seed)?;
    let worst = s.iter().map(|d| d.residual).fold(0.0, f64::max);
    Ok(Outcome::numeric(worst, format!("{} hexagons", s.len())))
}

fn grassmann(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let ck = cokernel(&k.k4);
    let mut worst: f64 = 0.0;
    for d in samples(ctx.seed)?.iter().take(5) {
        let g = grassmann_image(&ck, &d.lines).map_err(|e| e.to_string())?;
        worst = worst.max(plucker_defect(&g.plucker, 7));
    }
    // six random lines span more
    let mut r = rng::stream(ctx.seed, "grassmann_contrast");
    let random: Vec<Vec<C64>> = (0..6).map(|_| rng::gauss_vec(&mut r, 3)).collect();
    let contrast = matches!(grassmann_image(&ck, &random), Err(VspError::RankNot3(_)));
    Ok(Outcome::numeric_with(worst, contrast, format!("5 hexagons of rank 3; random lines rejected: {contrast}")))
}

/// Points of K'₄ off the sextic.
fn generic_points(seed: u64, n: usize) -> Result<Vec<Vec<C64>>, String> {
    let k = klein();
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < n && i < 10 * n as u64 {
        let a = random_point_on(&k.k4p_c64, seed * 1000 + i).map_err(|e| e.to_string())?;
        if plane::rel_value(&k.sextic_c64, &a) > 1e-4 {
            out.push(a);
        }
        i += 1;
    }
    Ok(out)
}

fn generic_census(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let pts = generic_points(ctx.seed, 5)?;
    let mut worst: f64 = 0.0;
    let mut ok = pts.len() == 5;
    let mut witness = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        let c = boundary_pencil(&k.cat, &k.k4p_c64, &k.sextic_c64, a, ctx.seed + i as u64).map_err(|e| e.to_string())?;
        worst = worst.max(*c.pencil_singular_values.last().unwrap_or(&1.0));
        let good = c.generic_labels() == ["(2,1,1,1,1)"] && c.count("(3,1,1,1)") == 1 && c.count("(2,2,2)") == 3 && c.special.len() == 4;
        ok &= good;
        witness.push(format!("{:?}+{:?}", c.generic_labels(), c.special.iter().map(|e| e.label.as_str()).collect::<Vec<_>>()));
    }
    Ok(Outcome::numeric_with(worst, ok, witness.join("; ")))
}

fn flex_census(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let fl = flexes(ctx.seed).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut ok = fl.len() >= 5;
    let mut witness = Vec::new();
    for (i, a) in fl.iter().step_by(4).take(5).enumerate() {
        let c = boundary_pencil(&k.cat, &k.k4p_c64, &k.sextic_c64, &a.point, ctx.seed + i as u64).map_err(|e| e.to_string())?;
        worst = worst.max(*c.pencil_singular_values.last().unwrap_or(&1.0));
        let good = c.on_hessian && c.generic_labels() == ["(2,2,1,1)"] && c.count("(2,2,2)_s") >= 1 && c.count("(4,2)") >= 1;
        ok &= good;
        witness.push(format!("{:?}+{:?}", c.generic_labels(), c.special.iter().map(|e| e.label.as_str()).collect::<Vec<_>>()));
    }
    Ok(Outcome::numeric_with(worst, ok, witness.join("; ")))
}

fn triangle(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (i, a) in generic_points(ctx.seed + 7, 3)?.iter().enumerate() {
        let t = mutual_antipolarity_check(&k.cat, &k.k4p_c64, a, ctx.seed + i as u64).map_err(|e| e.to_string())?;
        worst = worst.max(t.max_pair_residual).max(t.residual_on_triangle);
        ok &= t.triple.len() == 3 && t.base_multiplicity == 2 && t.residual_count == 6;
    }
    Ok(Outcome::numeric_with(worst, ok, "3 points of K'₄"))
}

fn quintic_pencil(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let mut r = rng::stream(ctx.seed, "quintic_pencil");
    let generic = quintic_pencil_check(&k.cat, &rng::gauss_vec(&mut r, 3), 8, ctx.seed).map_err(|e| e.to_string())?;
    let a = generic_points(ctx.seed + 11, 1)?.pop().ok_or("no point")?;
    let special = quintic_pencil_check(&k.cat, &a, 8, ctx.seed).map_err(|e| e.to_string())?;
    let base = special.base_point_residual.unwrap_or(f64::INFINITY);
    Ok(Outcome::numeric_with(
        base,
        generic.rank == 2 && special.rank == 2,
        format!("ranks {} and {}", generic.rank, special.rank),
    ))
}

fn cone(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let ck = cokernel(&k.k4);
    let mut r = rng::stream(ctx.seed, "cone");
    let generic = cone_gamma(&k.cat, &ck, &k.sextic_c64, &rng::gauss_vec(&mut r, 3), ctx.seed).map_err(|e| e.to_string())?;
    let fl = flexes(ctx.seed).map_err(|e| e.to_string())?;
    let flex = cone_gamma(&k.cat, &ck, &k.sextic_c64, &fl[0].point, ctx.seed).map_err(|e| e.to_string())?;
    // the smallest retained singular value of the generic quadric must be clearly nonzero
    let sv = &generic.quadric_singular_values;
    let gap = sv.get(4).copied().unwrap_or(1.0);
    let ok = generic.span_dim == 5 && generic.quadric_space_dim == 1 && generic.quadric_rank == 4 && flex.quadric_rank == 2;
    Ok(Outcome::numeric_with(
        gap,
        ok,
        format!(
            "generic span {} quadrics {} rank {}; flex rank {}",
            generic.span_dim, generic.quadric_space_dim, generic.quadric_rank, flex.quadric_rank
        ),
    ))
}
