use super::{exact, numeric, Check, Ctx, Outcome};
use h7kit::exactcore::{CycNum, Ring};
use h7kit::heisenberg::generators;
use h7kit::numeric::{self as num, rng};
use h7kit::septimics::*;

const S: &str = "septimics";

pub fn checks() -> Vec<Check> {
    vec![
        exact(
            "septimic.system.dim8",
            S,
            "the G₇-invariant septimics form an 8-dimensional space",
            "§1, \"its values in a $\\p{}7$\"",
            dim8,
        ),
        exact(
            "cor.septimic.unique_n7",
            S,
            "exactly one line of the system is fixed by the normalizer",
            "Cor. 1.8, \"unique $N_7$--invariant septimic hypersurface\"",
            unique_n7,
        ),
        exact(
            "lemma.septimic.vanish_p3minus",
            S,
            "all 8 septimics restrict to zero on all 49 three-spaces (392 restrictions)",
            "§1 Lemma proof, \"considering the restriction to any projective space $\\p3-$\"",
            vanish_p3minus,
        ),
        exact(
            "cor.septimic.klein_divides",
            S,
            "each septimic restricted to P²₊ is divisible by the Klein quartic",
            "§1 Corollary proof, \"union of the Klein quartic curve ... and a cubic curve\"",
            klein_divides,
        ),
        exact(
            "cor.septimic.cubic_span",
            S,
            "the 8 residual cubics span dimension 7 and the N₇-invariant one is zero",
            "§1 Corollary proof, \"union of the Klein quartic curve ... and a cubic curve\"",
            cubic_span,
        ),
        numeric(
            "cor.septimic.veronese_degree",
            S,
            "two general members of the cubic span meet in 9 points",
            "§1 Corollary, \"Veronese surface of degree nine\"",
            1e-8,
            veronese_degree,
        ),
        numeric(
            "septimic.kappa.invariance",
            S,
            "κ(g·p) = κ(p) projectively for g ∈ {σ, τ, ι}",
            "§1, \"the blowup of $\\p{}{}V_0$ by the linear system\"",
            1e-9,
            kappa_invariance,
        ),
    ]
}

fn dim8(_: &Ctx) -> Result<Outcome, String> {
    let sys = system();
    let ok = sys.basis.len() == 8 && sys.w7_part.len() == 7;
    Ok(Outcome::exact(ok, format!("dim {} from {} monomials scanned", sys.basis.len(), sys.scanned)))
}

fn unique_n7(_: &Ctx) -> Result<Outcome, String> {
    let sys = system();
    let g = generators();
    let both = fixed_subspace(sys, &[fourier_sl(), g.gauss_v]).map_err(|e| e.to_string())?;
    let s_only = fixed_subspace(sys, &[fourier_sl()]).map_err(|e| e.to_string())?;
    let matches = both.len() == 1 && proportional(&both[0], &sys.trivial_coords);
    Ok(Outcome::exact(matches, format!("fixed by S,V: {}; by S alone: {}", both.len(), s_only.len())))
}

fn proportional(a: &[CycNum], b: &[CycNum]) -> bool {
    let Some(j) = a.iter().position(|c| !c.is_zero()) else { return false };
    !b[j].is_zero() && a.iter().zip(b).all(|(x, y)| x.times(&b[j]) == y.times(&a[j]))
}

fn vanish_p3minus(_: &Ctx) -> Result<Outcome, String> {
    let n = count_nonvanishing_on_p3minus(system());
    Ok(Outcome::exact(n == 0, format!("{n} of 392 restrictions nonzero")))
}

fn factorization() -> Result<PlaneFactorization, String> {
    p2plus_factorization(system(), &h7kit::apolarity::klein().k4p.form).map_err(|e| e.to_string())
}

fn klein_divides(_: &Ctx) -> Result<Outcome, String> {
    let f = factorization()?;
    let nonzero = f.restrictions.iter().filter(|r| !r.is_zero()).count();
    Ok(Outcome::exact(f.cubic_factors.len() == 8 && nonzero == 8, format!("8 exact divisions, {nonzero} nonzero restrictions")))
}

fn cubic_span(_: &Ctx) -> Result<Outcome, String> {
    let f = factorization()?;
    let ok = f.span_dim == 7 && f.trivial_cubic.is_zero();
    Ok(Outcome::exact(ok, format!("span {} trivial cubic zero: {}", f.span_dim, f.trivial_cubic.is_zero())))
}

fn veronese_degree(ctx: &Ctx) -> Result<Outcome, String> {
    let f = factorization()?;
    let v = veronese_degree_check(&f, ctx.seed).map_err(|e| e.to_string())?;
    Ok(Outcome::numeric_with(v.max_residual, v.degree == 9 && v.map_rank == 7, format!("degree {} rank {}", v.degree, v.map_rank)))
}

fn kappa_invariance(ctx: &Ctx) -> Result<Outcome, String> {
    let sys = system();
    let g = generators();
    let mut r = rng::stream(ctx.seed, "kappa_invariance");
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let p = rng::gauss_vec(&mut r, 7);
        let k0 = kappa(sys, &p).map_err(|e| e.to_string())?;
        for e in [&g.sigma, &g.tau, &g.iota] {
            let k1 = kappa(sys, &apply_c64(e, &p)).map_err(|e| e.to_string())?;
            worst = worst.max(num::proj_dist(&k0.coords, &k1.coords));
        }
    }
    Ok(Outcome::numeric(worst, "5 points × 3 generators"))
}
