//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use h7kit::apolarity::*;
use h7kit::degen::*;
use h7kit::exactcore::{CycNum, Mat, Ring};
use h7kit::heisenberg::*;
use h7kit::moore::*;
use h7kit::numeric::{self as num, linalg, plane, rng, C64};
use h7kit::septimics::*;
use h7kit::thetacurves::*;
use h7kit::vsp::*;
use rand::Rng;
use std::time::{Duration, Instant};

const SEED: u64 = 0;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn below(what: &str, value: f64, tol: f64) -> Result<(), String> {
    ensure(value.is_finite() && value < tol, format!("{what} = {value:.3e} (limit {tol:.0e})"))
}

fn heisenberg_relations() -> Verdict {
    let g = generators();
    let id = Mat::identity(7);
    ensure(g.tau.mul(&g.sigma).matrix == g.sigma.mul(&g.tau).matrix.scale(&CycNum::zeta()), "τσ ≠ ζστ")?;
    ensure(g.sigma.pow(7).matrix == id && g.tau.pow(7).matrix == id, "σ or τ not of order 7")?;
    ensure(g.iota.mul(&g.iota).matrix == id, "ι² ≠ 1")?;
    ensure(g.sigma.conjugate_by(&g.iota).matrix == g.sigma.inverse().matrix, "ισι ≠ σ⁻¹")?;
    ensure(g.tau.conjugate_by(&g.iota).matrix == g.tau.inverse().matrix, "ιτι ≠ τ⁻¹")?;
    let h7 = group_closure(&[g.sigma.clone(), g.tau.clone()], true).map_err(|e| e.to_string())?.len();
    let g7 = group_closure(&[g.sigma.clone(), g.tau.clone(), g.iota.clone()], true).map_err(|e| e.to_string())?.len();
    ensure(h7 == 49 && g7 == 98, format!("closures {h7}, {g7}"))?;
    let gens = [g.sigma, g.tau, g.iota, g.fourier_s, g.gauss_v];
    let mut r = rng::stream(SEED, "acceptance_sl2");
    let word = |r: &mut rng::Prng| {
        let len = r.gen_range(1..6);
        (0..len).fold(GroupElement::identity(7), |acc, _| acc.mul(&gens[r.gen_range(0..gens.len())]))
    };
    for k in 0..50 {
        let (a, b) = (word(&mut r), word(&mut r));
        let lhs = sl2_image(&a.mul(&b)).map_err(|e| e.to_string())?;
        let rhs = sl2_mul(&sl2_image(&a).map_err(|e| e.to_string())?, &sl2_image(&b).map_err(|e| e.to_string())?);
        ensure(lhs == rhs, format!("sl2 pair {k} not multiplicative"))?;
    }
    Ok(format!("orders {h7}/{g7}, 50 sl2 pairs"))
}

fn septimic_dimension() -> Verdict {
    let sys = system();
    ensure(sys.basis.len() == 8, format!("dim {}", sys.basis.len()))?;
    let g = generators();
    let s_only = fixed_subspace(sys, &[fourier_sl()]).map_err(|e| e.to_string())?.len();
    let normalizer = fixed_subspace(sys, &[fourier_sl(), g.gauss_v]).map_err(|e| e.to_string())?;
    // S alone fixes a larger subspace; the normalizer is generated by S and V
    ensure(normalizer.len() == 1, format!("normalizer fixes dim {}", normalizer.len()))?;
    let (a, b) = (&normalizer[0], &sys.trivial_coords);
    let j = a.iter().position(|c| !c.is_zero()).ok_or("zero fixed vector")?;
    ensure(a.iter().zip(b).all(|(x, y)| x.times(&b[j]) == y.times(&a[j])) && !b[j].is_zero(), "fixed line is not X₇")?;
    Ok(format!("dim 8, one normalizer-fixed line (S alone: {s_only})"))
}

fn septimic_vanishing() -> Verdict {
    let n = count_nonvanishing_on_p3minus(system());
    ensure(n == 0, format!("{n} of 392 restrictions nonzero"))?;
    Ok("392 restrictions zero".into())
}

fn septimic_plane() -> Verdict {
    let f = p2plus_factorization(system(), &klein().k4p.form).map_err(|e| e.to_string())?;
    ensure(f.cubic_factors.len() == 8, "division failed")?;
    ensure(f.span_dim == 7, format!("cubic span {}", f.span_dim))?;
    let v = veronese_degree_check(&f, SEED).map_err(|e| e.to_string())?;
    ensure(v.degree == 9 && v.map_rank == 7, format!("degree {} rank {}", v.degree, v.map_rank))?;
    below("intersection residual", v.max_residual, 1e-8)?;
    Ok("8 exact divisions, span 7, degree 9".into())
}

fn catalecticants() -> Verdict {
    let x4 = PlaneQuartic::from_terms(&[([4, 0, 0], 1)]);
    let fermat = PlaneQuartic::from_terms(&[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
    let k = klein();
    let ranks = [catalecticant(&x4).rank, catalecticant(&fermat).rank, k.cat.rank];
    ensure(ranks == [1, 3, 6], format!("ranks {ranks:?}"))?;
    let five = {
        use h7kit::exactcore::MPoly;
        let lin = |c: [i64; 3]| (0..3).fold(MPoly::<CycNum>::zero(3), |acc, i| acc.plus(&MPoly::var(3, i).scale(&CycNum::from_int(c[i]))));
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]
            .iter()
            .fold(MPoly::<CycNum>::zero(3), |acc, c| acc.plus(&lin(*c).pow(4)))
    };
    let c5 = catalecticant(&PlaneQuartic::new(five));
    ensure(c5.rank == 5 && c5.is_clebsch() && !k.cat.is_clebsch(), "Clebsch detection disagrees with rank")?;
    Ok(format!("ranks {ranks:?}, five powers Clebsch"))
}

fn plane_invariants() -> Verdict {
    let gens = plane_action().gens();
    let q = invariant_forms(&gens, 4).map_err(|e| e.to_string())?.len();
    let s = invariant_forms(&gens, 6).map_err(|e| e.to_string())?.len();
    ensure(q == 1 && s == 1, format!("quartics {q}, sextics {s}"))?;
    let k = klein();
    ensure(proportional(&k.sextic, &hessian(&k.k4.form)), "H_F not proportional to the Hessian")?;
    let fl = flexes(SEED).map_err(|e| e.to_string())?;
    let total: usize = fl.iter().map(|p| p.mult).sum();
    ensure(fl.len() == 24 && total == 24, format!("{} flexes", fl.len()))?;
    below("flex residual", fl.iter().map(|p| p.residual).fold(0.0, f64::max), 1e-8)?;
    let g = plane_group()
        .iter()
        .find(|e| !e.is_proj_identity() && e.pow(3).is_proj_identity())
        .ok_or("no element of order 3")?;
    let m = to_c64_matrix(g);
    let perm: Vec<usize> = fl
        .iter()
        .map(|p| {
            let q = linalg::mat_vec(&m, &p.point);
            (0..fl.len()).min_by(|&a, &b| num::proj_dist(&fl[a].point, &q).total_cmp(&num::proj_dist(&fl[b].point, &q))).unwrap()
        })
        .collect();
    ensure((0..24).all(|i| perm[i] != i && perm[perm[perm[i]]] == i), "flexes not permuted in 3-cycles")?;
    Ok("dims 1/1, H_F ∝ Hessian, 24 flexes in 8 triples".into())
}

fn vsp_klein() -> Verdict {
    let k = klein();
    let ck = cokernel(&k.k4);
    let (mut anti, mut power, mut pl): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for seed in 0..20 {
        let d = vsp_sample(&k.k4, &k.cat, seed).map_err(|e| e.to_string())?;
        anti = anti.max(d.antipolarity);
        power = power.max(d.residual);
        let g = grassmann_image(&ck, &d.lines).map_err(|e| e.to_string())?;
        ensure(g.span_dim == 3, format!("seed {seed}: Grassmann rank {}", g.span_dim))?;
        pl = pl.max(plucker_defect(&g.plucker, 7));
    }
    below("antipolarity", anti, 1e-9)?;
    below("power sum", power, 1e-8)?;
    below("Plücker", pl, 1e-9)?;
    Ok(format!("20 seeds: antipolarity {anti:.1e}, power sum {power:.1e}, Plücker {pl:.1e}"))
}

fn boundary_censuses() -> Verdict {
    let k = klein();
    let mut generic = Vec::new();
    let mut i = 0;
    while generic.len() < 5 {
        let a = random_point_on(&k.k4p_c64, 5000 + i).map_err(|e| e.to_string())?;
        if plane::rel_value(&k.sextic_c64, &a) > 1e-4 {
            generic.push(a);
        }
        i += 1;
        ensure(i < 100, "could not sample K'₄ off H₆")?;
    }
    for (i, a) in generic.iter().enumerate() {
        let c = boundary_pencil(&k.cat, &k.k4p_c64, &k.sextic_c64, a, SEED + i as u64).map_err(|e| e.to_string())?;
        let good = c.generic_labels() == ["(2,1,1,1,1)"] && c.count("(3,1,1,1)") == 1 && c.count("(2,2,2)") == 3;
        ensure(good, format!("generic point {i}: {:?}", c.special.iter().map(|e| &e.label).collect::<Vec<_>>()))?;
    }
    let fl = flexes(SEED).map_err(|e| e.to_string())?;
    for (i, a) in fl.iter().step_by(4).take(5).enumerate() {
        let c = boundary_pencil(&k.cat, &k.k4p_c64, &k.sextic_c64, &a.point, SEED + i as u64).map_err(|e| e.to_string())?;
        let good = c.on_hessian && c.generic_labels() == ["(2,2,1,1)"] && c.count("(2,2,2)_s") >= 1 && c.count("(4,2)") >= 1;
        ensure(good, format!("flex {i}: {:?}", c.special.iter().map(|e| &e.label).collect::<Vec<_>>()))?;
    }
    Ok("5 generic + 5 flex pencils".into())
}

fn epsilon() -> Verdict {
    let r = epsilon_identity_check();
    ensure(r.identity_defect.is_zero(), "identity fails")?;
    Ok(format!("{} ε² terms dropped", r.eps_square_terms))
}

const GOLDEN: &str = "\
x2*y2 | -x3*y1 - x1*y3 | x3*y0 | -x2*y1 - x1*y2
-x3*y3 | -x3*y2 + x2*y3 | -x2*y1 + x1*y2 | x1*y0
-x1*y1 | x2*y0 | x3*y1 | x3*y2 + x2*y3
";

fn moore_matrix() -> Verdict {
    ensure(printed().to_text() == GOLDEN, "printed matrix mismatch")?;
    let m = equivariant();
    let mut r = rng::stream(SEED, "acceptance_moore");
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let y = rng::gauss_vec(&mut r, 4);
        let pts = apolar_points(&m, &y, i).map_err(|e| e.to_string())?;
        ensure(pts.len() == 6, format!("y #{i}: {} apolar points", pts.len()))?;
        worst = pts.iter().map(|p| p.residual).fold(worst, f64::max);
    }
    below("apolar residual", worst, APOLAR_TOL)?;
    let z = minimal_orbit_z().map_err(|e| e.to_string())?;
    ensure(z.len() == 8 && z.iter().all(|y| span_dim_exact(&m, y) == 1), "span on Z is not 1")?;
    let netq = net_of_quadrics().map_err(|e| e.to_string())?;
    let k6 = jacobian_sample(&netq, 10, SEED).map_err(|e| e.to_string())?;
    let spans: Vec<usize> = k6.iter().map(|y| span_dim(&m, y)).collect();
    ensure(spans.len() == 10 && spans.iter().all(|&s| s == 3), format!("K₆ spans {spans:?}"))?;
    let sym = symmetric_moore_vanishing(3, SEED).into_iter().fold(0.0, f64::max);
    below("symmetric Moore projection", sym, 1e-9)?;
    Ok(format!("golden, 50×6 points, Z 1, K₆ 3, symmetric {sym:.1e}"))
}

fn heptagons() -> Verdict {
    for i in 0..3 {
        bisecant_identity_check(i).map_err(|e| format!("E_{i}: {e}"))?;
        for u in 0..7 {
            let s = heptagon_plane_sections(i, u).map_err(|e| e.to_string())?;
            ensure(s.plane_length() == 1 && s.space_length() == 3, format!("E_{i}, u = {u}: {} and {}", s.plane_length(), s.space_length()))?;
        }
    }
    Ok("3 heptagons × 7 spaces".into())
}

fn theta_curves() -> Verdict {
    let models: Vec<EllipticModel> = (0..3).map(EllipticModel::random).collect();
    let (mut eq, mut par, mut sept): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for m in &models {
        let c = model_checks(m, 10, SEED);
        eq = eq.max(c.equivariance);
        par = c.half_periods_in_u4.iter().cloned().fold(par.max(c.origin_in_w3), f64::max);
        sept = sept.max(septimic_on_curve(m, 50, SEED));
    }
    below("equivariance", eq, 1e-9)?;
    below("parity", par, 1e-9)?;
    below("septimic vanishing", sept, 1e-6)?;
    let m = &models[0];
    let mut r = rng::stream(SEED, "acceptance_sigma");
    let sigmas: Vec<C64> = (0..4).map(|_| m.tau * r.gen_range(0.08..0.42) + r.gen_range(0.08..0.42)).collect();
    let mut pts = Vec::new();
    for &s in &sigmas {
        let sec = scroll_plane_section(m, s).map_err(|e| e.to_string())?;
        ensure(sec.label() == "(2,1,1,1,1)", format!("scroll type {}", sec.label()))?;
        below("scroll section residual", sec.residual, 1e-7)?;
        pts.extend(sec.points.into_iter().map(|(p, _)| p));
        let n = abelian_section_count(m, s).map_err(|e| e.to_string())?;
        ensure(n.plane_length == 6 && n.space_length == 10, format!("lengths {} + {}", n.plane_length, n.space_length))?;
    }
    let conic = common_conic(&pts);
    ensure(conic.next > 1e-3, "sections lie on more than one conic")?;
    below("common conic", conic.smallest, 1e-7)?;
    let spaces = [(0, 0), (1, 0), (0, 1), (2, 3), (5, 6)];
    let rep = two_torsion_scroll_checks(m, &spaces, SEED).map_err(|e| e.to_string())?;
    ensure(rep.section_ranks.iter().all(|&k| k == 2), format!("2-torsion section ranks {:?}", rep.section_ranks))?;
    below("2-torsion line", rep.line_residuals.iter().cloned().fold(0.0, f64::max), 1e-7)?;
    Ok(format!("equivariance {eq:.1e}, septimics {sept:.1e}, 6+10"))
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Verdict); 12] = [
        ("Heisenberg relations", Some(5), heisenberg_relations),
        ("septimic system and X₇ uniqueness", Some(30), septimic_dimension),
        ("septimics vanish on the 49 three-spaces", Some(60), septimic_vanishing),
        ("septimics on P²₊ and the degree-9 Veronese", None, septimic_plane),
        ("catalecticant ranks and Clebsch detection", None, catalecticants),
        ("plane invariants, Hessian and flexes", None, plane_invariants),
        ("VSP samples of the Klein quartic", None, vsp_klein),
        ("boundary censuses", None, boundary_censuses),
        ("ε-identity", None, epsilon),
        ("Moore matrix", None, moore_matrix),
        ("heptagon combinatorics", None, heptagons),
        ("theta curves and scrolls", None, theta_curves),
    ];
    let mut failed = 0;
    for (n, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let verdict = match (verdict, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(*b) => Err(format!("took {elapsed:.1?}, budget {b} s")),
            (v, _) => v,
        };
        match verdict {
            Ok(w) => println!("PASS {:>2}. {name} ({w}) [{elapsed:.2?}]", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {e} [{elapsed:.2?}]", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
