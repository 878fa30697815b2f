use super::{exact, Check, Ctx, Outcome};
use h7kit::degen::*;
use h7kit::numeric::C64;

const S: &str = "degen";

pub fn checks() -> Vec<Check> {
    vec![
        exact(
            "degen.heptagon.cycles",
            S,
            "E₀, E₁, E₂ are closed 7-cycles of lines stable under k ↦ k+1 and k ↦ −k",
            "§3.2, \"$E_i= \\bigcup_{k=0}^6 \\overline{e_k e_{k+1+i}}$\"",
            cycles,
        ),
        exact(
            "degen.bisecant.identity",
            S,
            "for each i the spans of pairs of lines of E_i are exactly the 3-spaces of B_j + B_k",
            "§3.2, \"the bisecant variety of $E_i$ is $B_j+B_k$\"",
            bisecant,
        ),
        exact(
            "degen.span_config.negation",
            S,
            "the index sets I_i^k have 4 distinct elements and negation preserves each B_i",
            "§3.2, \"$I_i^k=\\{k+i+1,k-i-1,k+3i+3,k-3i-3\\}$\"",
            negation,
        ),
        exact(
            "degen.heptagon.sections",
            S,
            "each heptagon meets every P²₊ in length 1 and every P³₋ in length 3",
            "§1 remark (v), \"intersects any $\\p2+$ in one point\"",
            sections,
        ),
        exact(
            "degen.seven_quadrics.types",
            S,
            "the seven quadrics meet P²₊ in type (2,2,1,1), degenerating to (4,2) and (2,2,2)_s",
            "§3.2, \"the union of seven quadrics\"",
            seven,
        ),
        exact(
            "degen.epsilon.identity",
            S,
            "(z+εx)⁴−z⁴+(x+εy)⁴−x⁴+(y+εz)⁴−y⁴ = 4ε(z³x+x³y+y³z) over ε² = 0",
            "§2.3 proof item (ii), \"$4\\epsilon(z^3x+x^3y+y^3z)$\"",
            epsilon,
        ),
        exact(
            "degen.epsilon.family",
            S,
            "the (α:β) family equals 8α³βε times the Klein quartic; its limits have types (2,2,2) and (4,2)",
            "§2.3 proof item (ii), \"$4\\epsilon(z^3x+x^3y+y^3z)$\"",
            family,
        ),
    ]
}

fn cycles(_: &Ctx) -> Result<Outcome, String> {
    let ok: Vec<bool> = (0..3).map(|i| heptagon(i).is_closed_cycle() && heptagon(i).is_symmetric()).collect();
    Ok(Outcome::exact(ok.iter().all(|&b| b), format!("{ok:?}")))
}

fn bisecant(_: &Ctx) -> Result<Outcome, String> {
    for i in 0..3 {
        if let Err(e) = bisecant_identity_check(i) {
            return Ok(Outcome::exact(false, format!("i = {i}: {e}")));
        }
    }
    Ok(Outcome::exact(true, "i = 0, 1, 2"))
}

fn negation(_: &Ctx) -> Result<Outcome, String> {
    let distinct = (0..3).all(|i| span_config(i).distinct());
    let perm = negation_permutes_configs();
    Ok(Outcome::exact(distinct && perm == [0, 1, 2], format!("distinct {distinct}, negation {perm:?}")))
}

fn sections(_: &Ctx) -> Result<Outcome, String> {
    for i in 0..3 {
        for u in 0..7 {
            let s = heptagon_plane_sections(i, u).map_err(|e| e.to_string())?;
            if s.plane_length() != 1 || s.space_length() != 3 {
                return Ok(Outcome::exact(false, format!("E_{i}, u = {u}: lengths {} and {}", s.plane_length(), s.space_length())));
            }
        }
    }
    Ok(Outcome::exact(true, "21 heptagon/space pairs"))
}

fn seven(_: &Ctx) -> Result<Outcome, String> {
    let c = |x: f64, y: f64| C64::new(x, y);
    let generic = seven_quadrics(c(0.7, 0.2), c(-0.4, 1.1)).map_err(|e| e.to_string())?;
    let a = seven_quadrics(c(1.0, 0.0), c(0.0, 0.0)).map_err(|e| e.to_string())?;
    let b = seven_quadrics(c(0.0, 0.0), c(1.0, 0.0)).map_err(|e| e.to_string())?;
    let ok = generic.label == "(2,2,1,1)" && a.label == "(4,2)" && b.label == "(2,2,2)_s";
    Ok(Outcome::exact(ok, format!("{} / {} / {}", generic.label, a.label, b.label)))
}

fn epsilon(_: &Ctx) -> Result<Outcome, String> {
    let r = epsilon_identity_check();
    Ok(Outcome::exact(r.identity_defect.is_zero(), format!("{} ε² terms dropped", r.eps_square_terms)))
}

fn family(_: &Ctx) -> Result<Outcome, String> {
    let r = epsilon_identity_check();
    let [(p1, c1), (p2, c2)] = &r.limit_types;
    let ok = r.family_defect.is_zero() && p1 == &vec![2, 2, 2] && p2 == &vec![4, 2] && *c1 && *c2;
    Ok(Outcome::exact(ok, format!("limits {p1:?} {p2:?}")))
}
