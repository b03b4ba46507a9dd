//! The robust solver on planted, slightly corrupted instances of three
//! templates, one per rounding scheme.
//!
//! ```bash
//! cargo run --release --example robust_rounding
//! ```

use pcsp::generate::{planted_instance, LiteralPolicy, PlantedSpec};
use pcsp::predicate::{k_sat, make_ham, nae, one_in, PredicatePair, Template};
use pcsp::round::{robust_solve, Algorithm};

fn main() -> pcsp::Result<()> {
    let runs = [
        ("(Ham4{2,3,4}, 4-SAT)", PredicatePair::new(make_ham(4, &[2, 3, 4])?, k_sat(4))?, LiteralPolicy::Any),
        ("(1-in-3, NAE-3)", PredicatePair::new(one_in(3), nae(3))?, LiteralPolicy::Any),
        ("dual-Horn 3-SAT", PredicatePair::csp(k_sat(3)), LiteralPolicy::DualHorn),
    ];
    for (name, pair, policy) in runs {
        let spec = PlantedSpec { num_vars: 30, num_constraints: 120, corruption: 0.02, seed: 7, policy };
        let (inst, _) = planted_instance(&Template::single(pair), spec)?;
        let r = robust_solve(&inst, Algorithm::Auto, 10, 1, 1e-6)?;
        println!(
            "{name:<22} {:?}: sdp objective {:.3}, best weak fraction {:.3}, mean violated {:.3}",
            r.algorithm,
            r.sdp_objective,
            r.weak_fraction,
            r.mean_violated()
        );
    }
    Ok(())
}
