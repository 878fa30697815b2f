use super::{exact, numeric, Check, Ctx, Outcome};
use h7kit::apolarity::*;
use h7kit::numeric::{self as num, linalg, plane, rng};

const S: &str = "apolarity";

pub fn checks() -> Vec<Check> {
    vec![
        exact(
            "lemma.sylvester.ranks",
            S,
            "catalecticant ranks: x⁴ → 1, Fermat → 3, Klein → 6",
            "§2.1 Lemma (Sylvester), \"is the rank of $\\alpha_F$\"",
            sylvester,
        ),
        exact(
            "lemma.sylvester.clebsch",
            S,
            "a sum of five fourth powers is Clebsch, the Klein quartic is not",
            "§2.1 Lemma (Sylvester), \"is the rank of $\\alpha_F$\"",
            clebsch,
        ),
        exact("apolarity.plane_group.order", S, "S|W₃ and V|W₃ generate a group of order 168", "§2.3, \"$W\\simeq W_3^\\lor$\" and §1 remark (iv)", group_order),
        exact(
            "apolarity.invariants.dims",
            S,
            "invariant quartics and invariant sextics are each 1-dimensional",
            "§2.3, \"unique $\\p{}{}\\sldfs$--invariant quartic $\\K4$\"; decomposition \"$S^4W_3={\\bf C}\\oplus W_6 \\oplus W_8$\"",
            invariant_dims,
        ),
        exact(
            "apolarity.hf.hessian",
            S,
            "H_F = det of the antipolar conic is proportional to the Hessian of the Klein quartic",
            "§2.2, \"$F^\\flat$ the dual quartic\"; \"rank $(\\alpha_F^{-1}(e_\\ell^2))\\leqslant 1$\"",
            hf_hessian,
        ),
        numeric(
            "apolarity.flexes.count",
            S,
            "K'₄ ∩ H₆ consists of 24 simple points",
            "§2.3, \"one of $24$ points of intersection\"",
            1e-8,
            flex_count,
        ),
        numeric(
            "apolarity.flexes.triplets",
            S,
            "an order-3 symmetry permutes the 24 points in 8 three-cycles",
            "§2.3, \"come $3$ by $3$\"",
            1e-8,
            flex_triplets,
        ),
        numeric(
            "apolarity.antipolar.hf_rank",
            S,
            "C_ℓ has rank 3 off H_F and splits into two lines on H_F",
            "§2.1, \"the anti–polar conic of the line\"; \"$e_x^2\\cdot \\alpha_F^{-1}(e_\\ell^2)=0$\"",
            1e-8,
            antipolar_rank,
        ),
    ]
}

fn sylvester(_: &Ctx) -> Result<Outcome, String> {
    let x4 = PlaneQuartic::from_terms(&[([4, 0, 0], 1)]);
    let fermat = PlaneQuartic::from_terms(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
    let ranks = [catalecticant(&x4).rank, catalecticant(&fermat).rank, catalecticant(&klein().k4).rank];
    Ok(Outcome::exact(ranks == [1, 3, 6], format!("ranks {ranks:?}")))
}

fn clebsch(_: &Ctx) -> Result<Outcome, String> {
    use h7kit::exactcore::{CycNum, MPoly};
    let lin = |c: [i64; 3]| {
        (0..3).fold(MPoly::<CycNum>::zero(3), |acc, i| acc.plus(&MPoly::var(3, i).scale(&CycNum::from_int(c[i]))))
    };
    let f = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]
        .iter()
        .fold(MPoly::<CycNum>::zero(3), |acc, c| acc.plus(&lin(*c).pow(4)));
    let c5 = catalecticant(&PlaneQuartic::new(f));
    let ck = &klein().cat;
    Ok(Outcome::exact(c5.is_clebsch() && c5.rank == 5 && !ck.is_clebsch(), format!("five powers rank {}, Klein rank {}", c5.rank, ck.rank)))
}

fn group_order(_: &Ctx) -> Result<Outcome, String> {
    let n = plane_group().len();
    Ok(Outcome::exact(n == 168, format!("order {n}")))
}

fn invariant_dims(_: &Ctx) -> Result<Outcome, String> {
    let g = plane_action().gens();
    let q = invariant_forms(&g, 4).map_err(|e| e.to_string())?.len();
    let s = invariant_forms(&g, 6).map_err(|e| e.to_string())?.len();
    Ok(Outcome::exact(q == 1 && s == 1, format!("quartics {q} sextics {s}")))
}

fn hf_hessian(_: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let a = proportional(&k.sextic, &hessian(&k.k4.form));
    let b = proportional(&k.sextic, &hessian(&k.k4p.form));
    Ok(Outcome::exact(a && b, format!("H_F ∝ Hess(K₄): {a}, H_F ∝ Hess(K'₄): {b}")))
}

fn flex_count(ctx: &Ctx) -> Result<Outcome, String> {
    let fl = flexes(ctx.seed).map_err(|e| e.to_string())?;
    let total: usize = fl.iter().map(|p| p.mult).sum();
    let simple = fl.iter().all(|p| p.mult == 1);
    let res = fl.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(Outcome::numeric_with(res, total == 24 && simple, format!("{} points, total multiplicity {total}", fl.len())))
}

fn flex_triplets(ctx: &Ctx) -> Result<Outcome, String> {
    let fl = flexes(ctx.seed).map_err(|e| e.to_string())?;
    let g = plane_group()
        .iter()
        .find(|e| !e.is_proj_identity() && e.pow(3).is_proj_identity())
        .ok_or("no element of order 3")?;
    let m = to_c64_matrix(g);
    let mut worst: f64 = 0.0;
    let mut perm = Vec::new();
    for p in &fl {
        let q = linalg::mat_vec(&m, &p.point);
        let (j, d) = fl
            .iter()
            .enumerate()
            .map(|(j, r)| (j, num::proj_dist(&r.point, &q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or("no points")?;
        worst = worst.max(d);
        perm.push(j);
    }
    let three_cycles = (0..perm.len()).all(|i| perm[i] != i && perm[perm[perm[i]]] == i);
    let bijective = {
        let mut s = perm.clone();
        s.sort();
        s.dedup();
        s.len() == fl.len()
    };
    let ok = fl.len() == 24 && three_cycles && bijective;
    Ok(Outcome::numeric_with(worst, ok, format!("{} cycles of length 3", if ok { fl.len() / 3 } else { 0 })))
}

fn antipolar_rank(ctx: &Ctx) -> Result<Outcome, String> {
    let k = klein();
    let mut r = rng::stream(ctx.seed, "antipolar_rank");
    let l = rng::gauss_vec(&mut r, 3);
    let generic = antipolar_conic(&k.cat, &l).map_err(|e| e.to_string())?;
    let generic_rank = generic.rank(1e-8);
    let h = h7kit::vsp::random_point_on(&k.sextic_c64, ctx.seed).map_err(|e| e.to_string())?;
    let special = antipolar_conic(&k.cat, &h).map_err(|e| e.to_string())?;
    let det = special.det().norm() / special.gram.norm().powi(3);
    let split = special.split_lines().is_some();
    let on_h = plane::rel_value(&k.sextic_c64, &h);
    Ok(Outcome::numeric_with(
        det.max(on_h),
        generic_rank == 3 && split,
        format!("generic rank {generic_rank}, special rank {} split {split}", special.rank(1e-8)),
    ))
}
