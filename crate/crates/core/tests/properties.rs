//! Randomized invariants across the library.

use proptest::prelude::*;

use pcsp::format::{parse_instance, serialize_instance};
use pcsp::gaps::{
    alpha_path, check_p_configuration, path_dimension, psd_path, realize_path_vectors, regular_simplex_vectors,
    three_lin_gap_instance, verify_gap, GapFamily,
};
use pcsp::generate::{planted_instance, random_instance, LiteralPolicy, PlantedSpec};
use pcsp::instance::{
    brute_force_best, eval_literal_tuple, satisfied_fraction, Assignment, Instance, Mode,
};
use pcsp::linalg::{dot, norm};
use pcsp::lp::q;
use pcsp::minion::{make_element, minor, MinorMap, ELEMENT_TOL};
use pcsp::poly::{
    apply_threshold, is_threshold_polymorphism, is_threshold_polymorphism_ordered, separating_hyperplane,
    FamilyKind, Separation, ThresholdFamily,
};
use pcsp::predicate::{code_of, k_sat, make_ham, nae, one_in, three_lin, tuple_of, Predicate, PredicatePair, Template};
use pcsp::reduce::{pin_constants, to_negform, ReductionTrace};
use pcsp::round::{epsilon_schedule, round_at_unchecked, round_cmm, AtParams, CmmParams};
use pcsp::sdp::{build_basic_sdp, moment_residual, solve_basic_sdp};

fn templates() -> Vec<Template> {
    let pairs = vec![
        PredicatePair::csp(k_sat(2)),
        PredicatePair::csp(three_lin()),
        PredicatePair::new(one_in(3), nae(3)).unwrap(),
        PredicatePair::new(make_ham(4, &[2, 3, 4]).unwrap(), k_sat(4)).unwrap(),
    ];
    let mut out: Vec<Template> = pairs.iter().cloned().map(Template::single).collect();
    out.push(Template::new(pairs[..3].to_vec(), true).unwrap());
    out
}

fn small_instance() -> impl Strategy<Value = Instance> {
    (0..5usize, 4..9usize, 1..12usize, any::<u64>()).prop_map(|(t, n, m, seed)| {
        random_instance(&templates()[t], n, m, seed).unwrap()
    })
}

fn nonempty_predicate(max_k: usize) -> impl Strategy<Value = Predicate> {
    (1..=max_k).prop_flat_map(|k| {
        proptest::collection::btree_set(0..(1u32 << k), 1..=(1usize << k))
            .prop_map(move |codes| Predicate::from_codes(k, codes).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn codes_round_trip(k in 1..=16usize, raw in any::<u32>()) {
        let c = raw & ((1u32 << k) - 1);
        prop_assert_eq!(code_of(&tuple_of(c, k)), c);
    }

    #[test]
    fn strong_implies_weak(inst in small_instance(), mask in any::<u64>()) {
        let a = Assignment::from_mask(mask, inst.num_vars());
        let strong = inst.satisfied_flags(&a, Mode::Strong);
        let weak = inst.satisfied_flags(&a, Mode::Weak);
        prop_assert!(strong.iter().zip(&weak).all(|(s, w)| !s || *w));
    }

    #[test]
    fn folding_symmetry(inst in small_instance(), mask in any::<u64>()) {
        let a = Assignment::from_mask(mask, inst.num_vars());
        let flipped = inst.negate_occurrences();
        for mode in [Mode::Strong, Mode::Weak] {
            prop_assert_eq!(satisfied_fraction(&inst, &a, mode), satisfied_fraction(&flipped, &a.negated(), mode));
        }
    }

    #[test]
    fn weak_optimum_dominates(inst in small_instance()) {
        let (_, strong) = brute_force_best(&inst, Mode::Strong, 24).unwrap();
        let (_, weak) = brute_force_best(&inst, Mode::Weak, 24).unwrap();
        prop_assert!(weak >= strong);
    }

    #[test]
    fn serialization_round_trip(inst in small_instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(serialize_instance(&back), text);
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn separation_is_certified(p in nonempty_predicate(4)) {
        let k = p.arity();
        match separating_hyperplane(&p).unwrap() {
            Separation::Weight(w) => {
                for t in p.tuples() {
                    let v = w.w.iter().zip(&t).fold(q(0), |acc, (x, &y)| acc + x * q(i64::from(y)));
                    prop_assert!(v >= q(0));
                }
            }
            Separation::Witness(w) => {
                let rows = w.rows();
                prop_assert!(rows.iter().all(|r| p.contains(r)));
                let out = apply_threshold(ThresholdFamily::maj(rows.len()), &rows).unwrap();
                prop_assert_eq!(out, vec![-1; k]);
            }
        }
    }

    #[test]
    fn multiset_check_matches_ordered(strong in nonempty_predicate(3), extra in any::<u32>(), l in 0..3usize, at in any::<bool>()) {
        let k = strong.arity();
        let weak = Predicate::from_codes(k, strong.codes().chain([extra & ((1 << k) - 1)])).unwrap();
        let pair = PredicatePair::new(strong, weak).unwrap();
        let kind = if at { FamilyKind::At } else { FamilyKind::Maj };
        let fam = ThresholdFamily::new(kind, 2 * l + 1).unwrap();
        if (pair.strong().len() as u128).pow(fam.arity as u32) <= 1_000_000 {
            prop_assert_eq!(
                is_threshold_polymorphism(&pair, fam).unwrap().holds(),
                is_threshold_polymorphism_ordered(&pair, fam).unwrap()
            );
        }
    }

    #[test]
    fn negform_children_track_source(t in 0..4usize, m in 1..5usize, seed in any::<u64>()) {
        let inst = random_instance(&templates()[t], 5, m, seed).unwrap();
        let (neg, trace) = to_negform(&inst).unwrap();
        for mask in 0..(1u64 << 5) {
            let a = Assignment::from_mask(mask, 5);
            let src_strong = inst.satisfied_flags(&a, Mode::Strong);
            let src_weak = inst.satisfied_flags(&a, Mode::Weak);
            let child_strong = neg.satisfied_flags(&a, Mode::Strong);
            let child_weak = neg.satisfied_flags(&a, Mode::Weak);
            for j in 0..inst.num_constraints() {
                let kids: Vec<usize> = (0..neg.num_constraints()).filter(|&c| trace.sources[c] == Some(j)).collect();
                if src_strong[j] {
                    prop_assert!(kids.iter().all(|&c| child_strong[c]));
                }
                if kids.iter().all(|&c| child_weak[c]) {
                    prop_assert!(src_weak[j]);
                }
            }
        }
    }

    #[test]
    fn traces_multiply(m in 1..6usize, seed in any::<u64>()) {
        let inst = random_instance(&templates()[4], 6, m, seed).unwrap();
        let (pinned, a) = pin_constants(&inst).unwrap();
        let (neg, b) = to_negform(&pinned).unwrap();
        let both = a.then(&b);
        prop_assert_eq!(both.completeness_loss, a.completeness_loss * b.completeness_loss);
        prop_assert_eq!(both.soundness_loss, a.soundness_loss * b.soundness_loss);
        prop_assert_eq!(both.sources.len(), neg.num_constraints());
        let id = ReductionTrace::identity(inst.num_constraints());
        prop_assert_eq!(id.then(&a), a);
    }

    #[test]
    fn epsilon_floor(obj in 0.0..50.0f64, m in 1..500usize, tol in 1e-9..1e-3f64) {
        let e = epsilon_schedule(obj, m, tol);
        prop_assert!(e >= 10.0 * tol && e > 0.0);
        prop_assert!((e - (obj / m as f64).max(10.0 * tol).min(1.0)).abs() <= 1e-15);
    }

    #[test]
    fn psd_path_steps_are_psd(k in 2..=6usize, alpha in 0.01..0.95f64) {
        let path = psd_path(k, alpha).unwrap();
        for step in &path {
            prop_assert!(step.min_eigenvalue().unwrap() >= -1e-8);
            prop_assert!((0..=k).all(|i| step.matrix[i][i] == 1.0));
        }
        for pair in path.windows(2) {
            let changed = (0..k).filter(|&i| pair[0].matrix[i][k] != pair[1].matrix[i][k]).count();
            prop_assert_eq!(changed, 1);
        }
    }

    #[test]
    fn realized_path_matches_grams(k in 2..=5usize, alpha in 0.05..0.9f64) {
        let d = path_dimension(k);
        let u = regular_simplex_vectors(k, alpha, d).unwrap();
        let mut w = vec![0.0; d];
        w[d - 1] = 1.0;
        let path = psd_path(k, alpha).unwrap();
        let configs = realize_path_vectors(&path, &u, &w).unwrap();
        for (step, c) in path.iter().zip(&configs) {
            let mut frame: Vec<&[f64]> = c.vectors().iter().map(Vec::as_slice).collect();
            frame.push(&w);
            for i in 0..=k {
                for j in 0..=k {
                    prop_assert!((dot(frame[i], frame[j]) - step.matrix[i][j]).abs() <= 1e-7);
                }
            }
        }
        for pair in configs.windows(2) {
            let moved = (0..k).filter(|&i| pair[0].vectors()[i] != pair[1].vectors()[i]).count();
            prop_assert_eq!(moved, 1);
        }
    }

    #[test]
    fn alpha_paths_stay_on_the_alpha_sphere(k in 2..=4usize, alpha in 0.05..0.9f64) {
        let d = path_dimension(k);
        let u = regular_simplex_vectors(k, alpha, d).unwrap();
        let path = alpha_path(&u, &u.negated(), alpha).unwrap();
        prop_assert_eq!(path.first().unwrap().vectors(), u.vectors());
        for c in &path {
            prop_assert!(c.alpha_deviation(alpha) <= 1e-7);
        }
        let last = path.last().unwrap();
        for (a, b) in last.vectors().iter().zip(u.negated().vectors()) {
            prop_assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-7));
        }
    }

    #[test]
    fn boolean_split_is_orthogonal(raw in proptest::collection::vec(-1.0..1.0f64, 2..8)) {
        prop_assume!(norm(&raw[1..]) > 1e-3);
        let d = raw.len();
        let mut v0 = vec![0.0; d];
        v0[0] = 1.0;
        let v: Vec<f64> = raw.iter().map(|x| x / norm(&raw)).collect();
        let plus: Vec<f64> = v0.iter().zip(&v).map(|(a, b)| (a + b) / 2.0).collect();
        let minus: Vec<f64> = v0.iter().zip(&v).map(|(a, b)| (a - b) / 2.0).collect();
        prop_assert!(dot(&plus, &minus).abs() <= 1e-15);
        prop_assert!(make_element(vec![minus, plus]).is_ok());
    }
}

/// Random orthogonal family with total squared norm 1.
fn random_element(arity: usize, dim: usize, seed: &[f64]) -> pcsp::minion::SdpMinionElement {
    let mut weights: Vec<f64> = seed[..arity].iter().map(|x| x.abs() + 0.01).collect();
    // Some coordinates are empty.
    for (i, w) in weights.iter_mut().enumerate() {
        if seed[arity + i] < -0.5 {
            *w = 0.0;
        }
    }
    if weights.iter().all(|&w| w == 0.0) {
        weights[0] = 1.0;
    }
    let total: f64 = weights.iter().sum();
    // Orthonormal rows from a Householder reflection of the random direction.
    let u: Vec<f64> = seed[2 * arity..2 * arity + dim].to_vec();
    let un = dot(&u, &u).max(1e-12);
    let basis: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 } - 2.0 * u[i] * u[j] / un).collect())
        .collect();
    let vectors = (0..arity)
        .map(|i| basis[i % dim].iter().map(|x| x * (weights[i] / total).sqrt()).collect())
        .collect();
    make_element(vectors).unwrap()
}

fn minor_map(source: usize, target: usize, raw: &[usize]) -> MinorMap {
    MinorMap::new(target, raw[..source].iter().map(|r| r % target).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn minion_closure_and_commuting(
        k in 1..=6usize,
        t1 in 1..=5usize,
        t2 in 1..=4usize,
        seed in proptest::collection::vec(-1.0..1.0f64, 32),
        raw in proptest::collection::vec(0..100usize, 12),
    ) {
        let e = random_element(k, 8, &seed);
        let pi = minor_map(k, t1, &raw);
        let rho = minor_map(t1, t2, &raw[6..]);
        let once = minor(&e, &pi).unwrap();
        prop_assert!(make_element(once.vectors().to_vec()).is_ok());
        let twice = minor(&once, &rho).unwrap();
        let direct = minor(&e, &pi.then(&rho).unwrap()).unwrap();
        prop_assert!(twice.distance(&direct) <= ELEMENT_TOL);
        prop_assert!(minor(&e, &MinorMap::identity(k)).unwrap().distance(&e) == 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn sdp_objective_bounded_by_strong_optimum(t in 0..5usize, n in 4..8usize, m in 1..8usize, seed in any::<u64>()) {
        let inst = random_instance(&templates()[t], n, m, seed).unwrap();
        let (_, best) = brute_force_best(&inst, Mode::Strong, 24).unwrap();
        let violated = 1.0 - *best.numer() as f64 / *best.denom() as f64;
        let tol = 1e-6;
        let sol = solve_basic_sdp(&build_basic_sdp(&inst), tol).unwrap();
        prop_assert!(sol.objective <= violated * m as f64 + tol * m as f64);
    }

    #[test]
    fn sdp_is_deterministic(n in 4..8usize, m in 1..8usize, seed in any::<u64>()) {
        let inst = random_instance(&templates()[0], n, m, seed).unwrap();
        let prog = build_basic_sdp(&inst);
        prop_assert_eq!(solve_basic_sdp(&prog, 1e-6).unwrap(), solve_basic_sdp(&prog, 1e-6).unwrap());
    }

    #[test]
    fn zero_error_moments_match(n in 4..10usize, m in 2..12usize, seed in any::<u64>()) {
        let spec = PlantedSpec { num_vars: n, num_constraints: m, corruption: 0.0, seed, policy: LiteralPolicy::Any };
        let (inst, _) = planted_instance(&templates()[0], spec).unwrap();
        let tol = 1e-6;
        let prog = build_basic_sdp(&inst);
        let sol = solve_basic_sdp(&prog, tol).unwrap();
        prop_assert!(sol.objective <= tol * m as f64);
        prop_assert!(moment_residual(&prog, &sol) <= 10.0 * tol);
    }

    #[test]
    fn rounders_are_antipodal_and_deterministic(n in 4..9usize, m in 2..10usize, seed in any::<u64>(), trial in 0..50u64) {
        let inst = random_instance(&templates()[2], n, m, seed).unwrap();
        let sol = solve_basic_sdp(&build_basic_sdp(&inst), 1e-6).unwrap();
        let neg = sol.negated();
        let cmm = CmmParams::new(0.3, seed, trial).unwrap();
        let a = round_cmm(&sol, &cmm);
        prop_assert_eq!(&a, &round_cmm(&sol, &cmm));
        prop_assert_eq!(round_cmm(&neg, &cmm), a.negated());
        let at = AtParams::from_epsilon(0.01, seed, trial);
        let b = round_at_unchecked(&sol, &at);
        prop_assert_eq!(&b, &round_at_unchecked(&sol, &at));
        prop_assert_eq!(round_at_unchecked(&neg, &at), b.negated());
    }
}

#[test]
fn family_configurations_are_p_configurations() {
    for k in 3..=9 {
        let mut families = vec![GapFamily::Gamma5 { k }];
        if k % 2 == 0 && k >= 4 {
            families.push(GapFamily::Gamma1 { k });
        }
        if k % 2 == 1 {
            families.extend((0..k / 2 + 1).filter(|l| 2 * l < k).map(|l| GapFamily::Gamma2 { k, l }));
        }
        families.extend((1..k).filter(|l| 2 * l < k).map(|l| GapFamily::Gamma3 { k, l }));
        for f in families {
            let m = f.moments().unwrap();
            let u = regular_simplex_vectors(k, m.alpha, k + 1).unwrap();
            let lambda = check_p_configuration(&u, &f.strong().unwrap()).unwrap();
            assert!(lambda.is_some(), "{f:?} with alpha {}", m.alpha);
        }
    }
}

#[test]
fn gap_verdicts_are_reproducible() {
    let inst = three_lin_gap_instance();
    let a = verify_gap(&inst, 1e-6, 24).unwrap();
    let b = verify_gap(&inst, 1e-6, 24).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.reverify(24).unwrap().verdict, a.verdict);
}

#[test]
fn literal_tuples_follow_signs() {
    let inst = random_instance(&templates()[4], 6, 10, 5).unwrap();
    let a = Assignment::from_mask(0b101101, 6);
    for c in inst.constraints() {
        let t = eval_literal_tuple(c, &a);
        let strong = inst.pair_of(c).strong().contains(&t);
        assert!(!strong || inst.pair_of(c).weak().contains(&t));
    }
}
