use super::{exact, Check, Ctx, Outcome};
use h7kit::exactcore::{CycNum, Mat};
use h7kit::heisenberg::*;
use h7kit::numeric::rng;
use rand::Rng;

const S: &str = "heisenberg";

pub fn checks() -> Vec<Check> {
    vec![
        exact(
            "heis.schroedinger.commutator",
            S,
            "τσ = ζστ and σ⁷ = τ⁷ = 1",
            "§1, \"called the ``Schr{\\\"o}dinger'' representation\"",
            commutator,
        ),
        exact(
            "heis.iota.conjugation",
            S,
            "ι² = 1, ισι = σ⁻¹, ιτι = τ⁻¹",
            "§1, \"$G_7=H_7\\rtimes\\{-1,1\\}$\"",
            iota_conjugation,
        ),
        exact("heis.fourier.square", S, "S² = −ι and S commutes with ι", "§1, \"$N_7=H_7\\rtimes \\sldfs$\"", fourier_square),
        exact("heis.closure.h7", S, "projective closure of ⟨σ, τ⟩ has order 49", "§1, \"Heisenberg group of level 7\"", closure_h7),
        exact("heis.closure.g7", S, "projective closure of ⟨σ, τ, ι⟩ has order 98", "§1, \"$G_7=H_7\\rtimes\\{-1,1\\}$\"", closure_g7),
        exact(
            "heis.sl2.homomorphism",
            S,
            "sl2_image is multiplicative on 50 random pairs of normalizer words",
            "§1, \"turns out to be the normaliser of $H_7$\"",
            sl2_homomorphism,
        ),
        exact("heis.iota.split", S, "ι splits V₀ as W₃ ⊕ U₄", "§1 remark (iv), \"splits in $V_0=W_3\\oplus U_4$\"", iota_split),
        exact(
            "heis.fixed_spaces.orbit",
            S,
            "the 49 conjugates of ι give 49 distinct planes and 3-spaces",
            "§1, \"our forty nine $\\p2+$ constitute an orbit under $G_7$\"",
            fixed_spaces,
        ),
    ]
}

fn commutator(_: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let ok1 = g.tau.mul(&g.sigma).matrix == g.sigma.mul(&g.tau).matrix.scale(&CycNum::zeta());
    let ok2 = g.sigma.pow(7).matrix == Mat::identity(7) && g.tau.pow(7).matrix == Mat::identity(7);
    Ok(Outcome::exact(ok1 && ok2, format!("commutator={ok1} order7={ok2}")))
}

fn iota_conjugation(_: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let sq = g.iota.mul(&g.iota).matrix == Mat::identity(7);
    let s = g.sigma.conjugate_by(&g.iota).matrix == g.sigma.inverse().matrix;
    let t = g.tau.conjugate_by(&g.iota).matrix == g.tau.inverse().matrix;
    Ok(Outcome::exact(sq && s && t, format!("iota^2={sq} sigma={s} tau={t}")))
}

fn fourier_square(_: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let sq = g.fourier_s.mul(&g.fourier_s).matrix == g.iota.matrix.scale(&CycNum::from_int(-1));
    let comm = g.fourier_s.mul(&g.iota).matrix == g.iota.mul(&g.fourier_s).matrix;
    Ok(Outcome::exact(sq && comm, format!("S^2=-iota:{sq} [S,iota]=1:{comm}")))
}

fn closure_h7(_: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let n = group_closure(&[g.sigma, g.tau], true).map_err(|e| e.to_string())?.len();
    Ok(Outcome::exact(n == 49, format!("order {n}")))
}

fn closure_g7(_: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let n = group_closure(&[g.sigma, g.tau, g.iota], true).map_err(|e| e.to_string())?.len();
    Ok(Outcome::exact(n == 98, format!("order {n}")))
}

fn sl2_homomorphism(ctx: &Ctx) -> Result<Outcome, String> {
    let g = generators();
    let gens = [g.sigma, g.tau, g.iota, g.fourier_s, g.gauss_v];
    let mut r = rng::stream(ctx.seed, "sl2_homomorphism");
    let word = |r: &mut rng::Prng| {
        let len = r.gen_range(1..6);
        (0..len).fold(GroupElement::identity(7), |acc, _| acc.mul(&gens[r.gen_range(0..gens.len())]))
    };
    for k in 0..50 {
        let (a, b) = (word(&mut r), word(&mut r));
        let lhs = sl2_image(&a.mul(&b)).map_err(|e| e.to_string())?;
        let rhs = sl2_mul(&sl2_image(&a).map_err(|e| e.to_string())?, &sl2_image(&b).map_err(|e| e.to_string())?);
        if lhs != rhs {
            return Ok(Outcome::exact(false, format!("pair {k}: {lhs:?} != {rhs:?}")));
        }
    }
    Ok(Outcome::exact(true, "50 pairs"))
}

fn iota_split(_: &Ctx) -> Result<Outcome, String> {
    let sp = eigenspace_split(&generators().iota).map_err(|e| e.to_string())?;
    let ok = subspace_eq(&sp.plane, &w3_basis()) && subspace_eq(&sp.space, &u4_basis());
    Ok(Outcome::exact(ok, format!("dims {} + {}", sp.plane.len(), sp.space.len())))
}

fn fixed_spaces(_: &Ctx) -> Result<Outcome, String> {
    let pairs = fixed_spaces_orbit();
    let dims = pairs.iter().all(|p| p.plane.len() == 3 && p.space.len() == 4);
    // row-reduced bases make equality of subspaces equality of bases
    let mut distinct = 0;
    for (i, p) in pairs.iter().enumerate() {
        if pairs[..i].iter().all(|q| q.plane != p.plane && q.space != p.space) {
            distinct += 1;
        }
    }
    Ok(Outcome::exact(dims && distinct == 49, format!("pairs {} distinct {distinct}", pairs.len())))
}
