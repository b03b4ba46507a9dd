//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Tolerances and budgets are fixed constants below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcsp::experiment::{catalog, run_experiment, ExperimentSpec};
use pcsp::gaps::{
    alpha_path, build_gamma5_gap_limited, path_dimension, path_step_defect, psd_path, regular_simplex_vectors,
    three_lin_gap_instance, verify_gap, verify_gap_with_solution, GapCertificate, GapFamily,
};
use pcsp::generate::{planted_instance, random_instance, LiteralPolicy, PlantedSpec};
use pcsp::instance::{brute_force_best, Instance, Mode, DEFAULT_BRUTE_CAP};
use pcsp::minion::{make_element, minor, sdp_solution_to_elements, MinorMap, SdpMinionElement};
use pcsp::poly::{
    apply_threshold, check_up_to, is_threshold_polymorphism, o_at_closure_bruteforce, o_at_set,
    o_maj_closure_bruteforce, separating_hyperplane, weighted_hyperplane_cover, FamilyKind, Separation,
    ThresholdFamily, Verdict,
};
use pcsp::predicate::{k_sat, make_ham, nae, one_in, three_lin, tuple_of, Predicate, PredicatePair, Template};
use pcsp::round::{robust_solve, Algorithm};
use pcsp::sdp::{build_basic_sdp, solve_basic_sdp, SdpSolution};

const SDP_TOL: f64 = 1e-6;
const FEASIBILITY_SLACK: f64 = 1e-5;
const PATH_TOL: f64 = 1e-7;
const MOMENT_TOL: f64 = 1e-9;
const MINION_TOL: f64 = 1e-9;
const RELATION_TOL: f64 = 1e-6;
const GRID: [f64; 3] = [0.05, 0.01, 0.001];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, format!("took {:.1} s, budget {:.0} s", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// Every symmetric predicate of arity `k`, as its weight set.
fn symmetric(k: usize) -> Vec<(Vec<usize>, Predicate)> {
    (1u32..1 << (k + 1))
        .map(|mask| {
            let weights: Vec<usize> = (0..=k).filter(|w| mask >> w & 1 == 1).collect();
            let p = make_ham(k, &weights).unwrap();
            (weights, p)
        })
        .collect()
}

/// Count of positions where `values` grows as the grid index advances.
fn inversions(values: &[f64]) -> usize {
    values.windows(2).filter(|w| w[1] > w[0]).count()
}

fn holds(pair: &PredicatePair, fam: ThresholdFamily) -> Result<bool, String> {
    is_threshold_polymorphism(pair, fam).map(|v| v.holds()).map_err(e)
}

fn polymorphism_suite() -> Outcome {
    let start = Instant::now();
    let two_sat = PredicatePair::csp(k_sat(2));
    let one_nae = PredicatePair::new(one_in(3), nae(3)).map_err(e)?;
    let lin = PredicatePair::csp(three_lin());
    for l in [3, 5] {
        ensure(holds(&two_sat, ThresholdFamily::maj(l))?, format!("MAJ_{l} not a polymorphism of 2-SAT"))?;
    }
    for l in [3, 5, 7] {
        ensure(holds(&one_nae, ThresholdFamily::at(l))?, format!("AT_{l} not a polymorphism of (1-in-3, NAE-3)"))?;
    }
    match is_threshold_polymorphism(&lin, ThresholdFamily::maj(3)).map_err(e)? {
        Verdict::Holds => return Err("MAJ_3 accepted on 3-LIN".into()),
        Verdict::Fails(c) => {
            let mut rows = c.rows.clone();
            rows.sort();
            let expected = vec![vec![-1, -1, 1], vec![-1, 1, -1], vec![1, -1, -1]];
            ensure(rows == expected, format!("3-LIN witness rows {:?}", c.rows))?;
        }
    }
    // Every hyperplane pair extracted from an AT template is itself AT-closed.
    let mut covers = 0;
    for k in 1..=4 {
        for (_, p) in symmetric(k) {
            if p.is_full() || !p.fixed_coordinates().is_empty() {
                continue;
            }
            let q = o_at_set(&p).map_err(e)?;
            if q.is_full() {
                continue;
            }
            let pair = PredicatePair::new(p, q).map_err(e)?;
            for h in weighted_hyperplane_cover(&pair).map_err(e)? {
                let hp = h.pair().map_err(e)?;
                for (l, v) in check_up_to(&hp, FamilyKind::At, 7).map_err(e)? {
                    ensure(v.holds(), format!("AT_{l} fails on a cover pair with weights {:?}", h.w))?;
                }
                covers += 1;
            }
        }
    }
    ensure(covers > 0, "no cover pairs produced")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{covers} cover pairs AT-closed to arity 7, {:.2} s", elapsed.as_secs_f64()))
}

fn separation_soundness() -> Outcome {
    let minus_code = 0u32;
    let (mut weights, mut witnesses, mut beyond) = (0, 0, 0);
    for k in 1..=4 {
        for (ws, p) in symmetric(k) {
            let closure = o_maj_closure_bruteforce(&p, 9).map_err(e)?;
            match separating_hyperplane(&p).map_err(e)? {
                Separation::Weight(_) => {
                    ensure(!closure.contains_code(minus_code), format!("k={k} weights {ws:?}: weight returned but closure hits all-minus"))?;
                    weights += 1;
                }
                Separation::Witness(w) => {
                    let rows = w.rows();
                    ensure(rows.iter().all(|r| p.contains(r)), format!("k={k} weights {ws:?}: witness row outside P"))?;
                    let out = apply_threshold(ThresholdFamily::maj(rows.len()), &rows).map_err(e)?;
                    ensure(out == vec![-1; k], format!("k={k} weights {ws:?}: witness majority {out:?}"))?;
                    if rows.len() <= 9 {
                        ensure(closure.contains_code(minus_code), format!("k={k} weights {ws:?}: witness but closure misses all-minus"))?;
                    } else {
                        beyond += 1;
                    }
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!("{weights} weights, {witnesses} witnesses verified ({beyond} beyond arity 9)"))
}

fn at_characterization() -> Outcome {
    let mut checked = 0;
    for k in 1..=4 {
        for (ws, p) in symmetric(k) {
            if !p.fixed_coordinates().is_empty() {
                continue;
            }
            let lp = o_at_set(&p).map_err(e)?;
            let brute = o_at_closure_bruteforce(&p, 7).map_err(e)?;
            ensure(lp == brute, format!("k={k} weights {ws:?}: LP and closure differ"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} symmetric predicates agree"))
}

fn feasibility_bound() -> Outcome {
    let start = Instant::now();
    let templates = [
        Template::single(PredicatePair::csp(k_sat(2))),
        Template::single(PredicatePair::csp(k_sat(3))),
        Template::single(PredicatePair::csp(three_lin())),
        Template::single(PredicatePair::new(one_in(3), nae(3)).map_err(e)?),
        Template::new(vec![PredicatePair::csp(k_sat(2)), PredicatePair::csp(three_lin())], true).map_err(e)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = f64::NEG_INFINITY;
    for i in 0..200 {
        let t = &templates[i % templates.len()];
        let n = rng.random_range(4..=14);
        let m = rng.random_range(n..=3 * n);
        let inst = random_instance(t, n, m, rng.random()).map_err(e)?;
        let (_, best) = brute_force_best(&inst, Mode::Strong, DEFAULT_BRUTE_CAP).map_err(e)?;
        let eps_star = 1.0 - *best.numer() as f64 / *best.denom() as f64;
        let sol = solve_basic_sdp(&build_basic_sdp(&inst), SDP_TOL).map_err(e)?;
        let excess = sol.objective - eps_star * m as f64;
        ensure(
            excess <= FEASIBILITY_SLACK * m as f64,
            format!("instance {i}: objective {} above {}·{m} + slack", sol.objective, eps_star),
        )?;
        worst = worst.max(excess / m as f64);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(600))?;
    Ok(format!("200 instances, worst per-constraint excess {worst:.2e}, {:.1} s", elapsed.as_secs_f64()))
}

fn three_lin_gap(solutions: &mut Vec<(Instance, SdpSolution)>) -> Outcome {
    let start = Instant::now();
    let inst = three_lin_gap_instance();
    let (cert, sol) = verify_gap_with_solution(&inst, SDP_TOL, DEFAULT_BRUTE_CAP).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(cert.verdict, "verdict false")?;
    ensure(cert.sdp_objective <= 1e-6, format!("objective {}", cert.sdp_objective))?;
    ensure(cert.weak_best.0 < cert.weak_best.1, format!("weak best {:?}", cert.weak_best))?;
    within(elapsed, Duration::from_secs(5))?;
    solutions.push((inst, sol));
    Ok(format!(
        "objective {:.1e}, weak best {}/{}, {:.2} s",
        cert.sdp_objective,
        cert.weak_best.0,
        cert.weak_best.1,
        elapsed.as_secs_f64()
    ))
}

fn gamma5_gap(solutions: &mut Vec<(Instance, SdpSolution)>) -> Outcome {
    let (k, b) = (3, 2);
    let start = Instant::now();
    let mut found: Option<(usize, GapCertificate, Instance)> = None;
    for l in 1..=6 {
        let Ok(gap) = build_gamma5_gap_limited(k, b, l, DEFAULT_BRUTE_CAP) else { continue };
        ensure(gap.instance.num_vars() <= DEFAULT_BRUTE_CAP, format!("L={l}: {} variables", gap.instance.num_vars()))?;
        let (mut cert, sol) = verify_gap_with_solution(&gap.instance, SDP_TOL, DEFAULT_BRUTE_CAP).map_err(e)?;
        if cert.verdict {
            ensure(!gap.is_restricted() || gap.describe().contains("lexicographic"), "restriction not described")?;
            cert.note = Some(gap.describe());
            solutions.push((gap.instance.clone(), sol));
            found = Some((l, cert, gap.instance));
            break;
        }
    }
    let elapsed = start.elapsed();
    let Some((l, cert, inst)) = found else { return Err("no true verdict for L ≤ 6".into()) };
    within(elapsed, Duration::from_secs(120))?;
    let mut again = verify_gap(&inst, SDP_TOL, DEFAULT_BRUTE_CAP).map_err(e)?;
    again.note = cert.note.clone();
    ensure(
        serde_json::to_string(&again).map_err(e)? == serde_json::to_string(&cert).map_err(e)?,
        "certificate differs on rerun",
    )?;
    Ok(format!(
        "smallest L = {l}: n = {}, m = {}, objective {:.1e}, weak best {}/{}, {:.1} s",
        cert.num_vars,
        cert.num_constraints,
        cert.sdp_objective,
        cert.weak_best.0,
        cert.weak_best.1,
        elapsed.as_secs_f64()
    ))
}

fn sweep_spec(template: &str, seed: u64) -> Result<ExperimentSpec, String> {
    ExperimentSpec::parse(&format!(
        "template = \"{template}\"\nn = 100\nm = 600\nepsilons = [0.05, 0.01, 0.001]\ntrials = 20\nseed = {seed}\nalgorithm = \"cmm\"\n"
    ))
    .map_err(e)
}

fn cmm_sweep() -> Outcome {
    let start = Instant::now();
    let spec = sweep_spec("ham4-234/4-sat", 11)?;
    let template = catalog(&spec.template).ok_or("catalog entry missing")?;
    let rows = run_experiment(&spec, &template).map_err(e)?;
    let violated: Vec<f64> = rows.iter().map(|r| r.mean_violated).collect();
    for r in &rows {
        let bound = 10.0 * r.epsilon.cbrt() * (1.0 / r.epsilon).ln();
        ensure(r.mean_violated <= bound, format!("ε={}: violated {} above {bound}", r.epsilon, r.mean_violated))?;
    }
    ensure(inversions(&violated) <= 1, format!("violated fractions {violated:?}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("violated {violated:.4?} over ε {GRID:?}, {:.0} s", elapsed.as_secs_f64()))
}

fn at_sweep() -> Outcome {
    let start = Instant::now();
    let template = Template::single(PredicatePair::new(one_in(3), nae(3)).map_err(e)?);
    let mut perfect = 0;
    for rep in 0..10 {
        let spec = PlantedSpec { num_vars: 100, num_constraints: 600, corruption: 0.0, seed: 100 + rep, policy: LiteralPolicy::Any };
        let (inst, _) = planted_instance(&template, spec).map_err(e)?;
        let report = robust_solve(&inst, Algorithm::At, 20, rep, SDP_TOL).map_err(e)?;
        if report.satisfied == report.total {
            perfect += 1;
        }
    }
    let mut violated = Vec::new();
    for (i, &eps) in GRID.iter().enumerate() {
        let spec = PlantedSpec { num_vars: 100, num_constraints: 600, corruption: eps, seed: 200 + i as u64, policy: LiteralPolicy::Any };
        let (inst, _) = planted_instance(&template, spec).map_err(e)?;
        violated.push(robust_solve(&inst, Algorithm::At, 20, i as u64, SDP_TOL).map_err(e)?.mean_violated());
    }
    ensure(perfect >= 9, format!("{perfect}/10 uncorrupted repetitions fully satisfied"))?;
    ensure(inversions(&violated) == 0, format!("violated fractions {violated:?}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{perfect}/10 perfect at ε=0, violated {violated:.4?} over ε {GRID:?}, {:.0} s", elapsed.as_secs_f64()))
}

fn horn_sweep() -> Outcome {
    let start = Instant::now();
    let template = Template::single(PredicatePair::csp(k_sat(3)));
    let mut out = Vec::new();
    for (i, eps) in [1e-2, 1e-4, 1e-6].into_iter().enumerate() {
        let spec = PlantedSpec { num_vars: 100, num_constraints: 600, corruption: eps, seed: 300 + i as u64, policy: LiteralPolicy::DualHorn };
        let (inst, _) = planted_instance(&template, spec).map_err(e)?;
        let report = robust_solve(&inst, Algorithm::Threshold, 20, i as u64, SDP_TOL).map_err(e)?;
        let v = report.mean_violated();
        let bound = 10.0 / (1.0 / eps).ln();
        ensure(v <= bound, format!("ε={eps}: violated {v} above {bound}"))?;
        out.push(v);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!("violated {out:.4?} over ε [1e-2, 1e-4, 1e-6], {:.0} s", elapsed.as_secs_f64()))
}

/// Closed-form moments, written independently of the library's tables.
fn expected_moments(f: GapFamily) -> (Vec<f64>, Vec<Vec<f64>>) {
    let k = f.arity();
    let kf = k as f64;
    let sym = |a: f64| (vec![0.0; k], (0..k).map(|i| (0..k).map(|j| if i == j { 1.0 } else { a }).collect()).collect());
    // Symmetric mixtures over weights t with probabilities p: k + k(k−1)γ = E(2t − k)².
    let gamma_of = |mix: &[(f64, f64)]| {
        let sq: f64 = mix.iter().map(|(t, p)| p * (2.0 * t - kf).powi(2)).sum();
        (sq - kf) / (kf * (kf - 1.0))
    };
    match f {
        GapFamily::Gamma1 { .. } => sym(-1.0 / (kf - 1.0)),
        GapFamily::Gamma2 { l, .. } => {
            let s = 2.0 * l as f64 - kf;
            sym(gamma_of(&[(l as f64, 1.0 / (1.0 - s)), ((kf + 1.0) / 2.0, -s / (1.0 - s))]))
        }
        GapFamily::Gamma3 { l, .. } => {
            let s = 2.0 * l as f64 - kf;
            sym(gamma_of(&[(l as f64, kf / (kf - s)), (kf, -s / (kf - s))]))
        }
        GapFamily::Gamma5 { .. } => sym((kf - 3.0) / (kf - 1.0)),
        GapFamily::Gamma4 { l, .. } => {
            let s = 2.0 * l as f64 - kf;
            let alpha = s / (kf - 1.0);
            let beta = (s * s - (kf - 2.0)) / ((kf - 1.0) * (kf - 2.0));
            let first = (0..k).map(|i| if i == 0 { 0.0 } else { alpha }).collect();
            let second = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| match (i, j) {
                            _ if i == j => 1.0,
                            (0, _) | (_, 0) => -1.0 / (kf - 1.0),
                            _ => beta,
                        })
                        .collect()
                })
                .collect();
            (first, second)
        }
    }
}

fn families(k: usize) -> Vec<GapFamily> {
    let mut out = vec![GapFamily::Gamma5 { k }];
    if k % 2 == 0 && k >= 4 {
        out.push(GapFamily::Gamma1 { k });
    }
    for l in 0..k {
        if 2 * l >= k {
            break;
        }
        if k % 2 == 1 {
            out.push(GapFamily::Gamma2 { k, l });
        }
        if l >= 1 {
            out.push(GapFamily::Gamma3 { k, l });
            out.push(GapFamily::Gamma4 { k, l });
        }
    }
    out
}

fn configuration_suite() -> Outcome {
    let mut steps = 0;
    for k in 2..=6 {
        let mut grid: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
        if k >= 3 {
            grid.push((k as f64 - 3.0) / (k as f64 - 1.0));
        }
        for &alpha in &grid {
            for s in psd_path(k, alpha).map_err(e)? {
                let lmin = s.min_eigenvalue().map_err(e)?;
                ensure(lmin >= -1e-8, format!("k={k} α={alpha}: min eigenvalue {lmin}"))?;
                steps += 1;
            }
            let d = path_dimension(k);
            let u = regular_simplex_vectors(k, alpha, d).map_err(e)?;
            let target = u.negated();
            let path = alpha_path(&u, &target, alpha).map_err(e)?;
            let end = path.last().ok_or("empty path")?;
            let gap = |a: &[Vec<f64>], b: &[Vec<f64>]| {
                a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs())).fold(0.0, f64::max)
            };
            ensure(gap(path[0].vectors(), u.vectors()) <= PATH_TOL, format!("k={k} α={alpha}: start differs"))?;
            ensure(gap(end.vectors(), target.vectors()) <= PATH_TOL, format!("k={k} α={alpha}: end differs"))?;
            ensure(path_step_defect(&path) <= PATH_TOL, format!("k={k} α={alpha}: a step moves two vectors"))?;
            let dev = path.iter().map(|c| c.alpha_deviation(alpha)).fold(0.0, f64::max);
            ensure(dev <= PATH_TOL, format!("k={k} α={alpha}: inner products off by {dev:.2e}"))?;
        }
    }
    let mut count = 0;
    for k in 3..=9 {
        for f in families(k) {
            let (first, second) = expected_moments(f);
            let m = f.moments().map_err(e)?;
            let lambda = f.distribution().map_err(e)?;
            let strong = f.strong().map_err(e)?;
            let config = f.configuration(k + 1).map_err(e)?;
            let gram = config.gram();
            let mu = config.first_moments();
            for i in 0..k {
                let from_lambda: f64 = (0..1u32 << k).map(|c| lambda[c as usize] * f64::from(tuple_of(c, k)[i])).sum();
                for (name, v) in [("table", m.first[i]), ("distribution", from_lambda), ("vectors", mu[i])] {
                    ensure((v - first[i]).abs() <= MOMENT_TOL, format!("{f:?}: first moment {i} from {name} is {v}, expected {}", first[i]))?;
                }
                for j in 0..k {
                    let from_lambda: f64 = (0..1u32 << k)
                        .map(|c| {
                            let t = tuple_of(c, k);
                            lambda[c as usize] * f64::from(t[i] * t[j])
                        })
                        .sum();
                    for (name, v) in [("table", m.second[i][j]), ("distribution", from_lambda), ("vectors", gram[i][j])] {
                        ensure(
                            (v - second[i][j]).abs() <= MOMENT_TOL,
                            format!("{f:?}: second moment ({i},{j}) from {name} is {v}, expected {}", second[i][j]),
                        )?;
                    }
                }
            }
            let outside: f64 = (0..1u32 << k).filter(|&c| !strong.contains_code(c)).map(|c| lambda[c as usize].abs()).sum();
            ensure(outside <= MOMENT_TOL, format!("{f:?}: distribution leaves P"))?;
            count += 1;
        }
    }
    Ok(format!("{steps} PSD path matrices, paths for k ≤ 6, {count} family moment sets"))
}

fn random_element(rng: &mut ChaCha8Rng, arity: usize, dim: usize) -> SdpMinionElement {
    // Gram–Schmidt on random directions, then random squared norms summing to 1.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < arity.min(dim) {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    let mut weights: Vec<f64> = (0..arity).map(|i| if i < dim && rng.random_bool(0.8) { rng.random::<f64>() } else { 0.0 }).collect();
    if weights.iter().all(|&w| w == 0.0) {
        weights[0] = 1.0;
    }
    let total: f64 = weights.iter().sum();
    let vectors = (0..arity)
        .map(|i| if weights[i] == 0.0 { vec![0.0; dim] } else { basis[i].iter().map(|x| x * (weights[i] / total).sqrt()).collect() })
        .collect();
    make_element(vectors).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, source: usize, target: usize) -> MinorMap {
    MinorMap::new(target, (0..source).map(|_| rng.random_range(0..target)).collect()).unwrap()
}

fn minion_axioms(solutions: &[(Instance, SdpSolution)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..1000 {
        let k = rng.random_range(1..=7);
        let (t1, t2) = (rng.random_range(1..=6), rng.random_range(1..=5));
        let el = random_element(&mut rng, k, 9);
        let pi = random_map(&mut rng, k, t1);
        let rho = random_map(&mut rng, t1, t2);
        let once = minor(&el, &pi).map_err(|x| format!("case {case}: {x}"))?;
        make_element(once.vectors().to_vec()).map_err(|x| format!("case {case}: closure {x}"))?;
        let twice = minor(&once, &rho).map_err(e)?;
        let direct = minor(&el, &pi.then(&rho).map_err(e)?).map_err(e)?;
        ensure(twice.distance(&direct) <= MINION_TOL, format!("case {case}: diagram off by {:.2e}", twice.distance(&direct)))?;
    }
    let mut worst: f64 = 0.0;
    let mut relations = 0;
    for (inst, sol) in solutions {
        let els = sdp_solution_to_elements(sol, inst, SDP_TOL).map_err(e)?;
        worst = worst.max(els.max_residual());
        relations += els.relations.len();
    }
    ensure(!solutions.is_empty(), "no zero-error solutions to check")?;
    ensure(worst <= RELATION_TOL, format!("minor relation residual {worst:.2e}"))?;
    Ok(format!("1000 random closure/diagram cases, {relations} solution relations, worst residual {worst:.1e}"))
}

fn main() {
    let mut solutions = Vec::new();
    let mut failures = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {id:>2} {name}: {why}");
            }
        }
    };
    report(1, "polymorphism suite", polymorphism_suite());
    report(2, "separating hyperplane soundness", separation_soundness());
    report(3, "AT closure characterization", at_characterization());
    report(4, "SDP feasibility bound", feasibility_bound());
    report(5, "3-LIN gap", three_lin_gap(&mut solutions));
    report(6, "Ham_k{1,k} chain gap", gamma5_gap(&mut solutions));
    report(7, "CMM sweep", cmm_sweep());
    report(8, "AT sweep", at_sweep());
    report(9, "dual-Horn sweep", horn_sweep());
    report(10, "configurations and paths", configuration_suite());
    report(11, "minion axioms", minion_axioms(&solutions));
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
