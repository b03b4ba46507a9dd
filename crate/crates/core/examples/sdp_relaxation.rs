//! Solving the basic SDP on the two-constraint 3-LIN instance: zero error,
//! pairwise orthogonal vectors, and uniform local distributions on `P`.
//!
//! ```bash
//! cargo run --example sdp_relaxation
//! ```

use pcsp::gaps::three_lin_gap_instance;
use pcsp::instance::{brute_force_best, Mode, DEFAULT_BRUTE_CAP};
use pcsp::linalg::dot;
use pcsp::predicate::{tuple_of, tuple_string};
use pcsp::sdp::{build_basic_sdp, moment_residual, solve_basic_sdp};

fn main() -> pcsp::Result<()> {
    let inst = three_lin_gap_instance();
    let prog = build_basic_sdp(&inst);
    let sol = solve_basic_sdp(&prog, 1e-8)?;
    println!("objective {:.2e} after {} iterations, moment residual {:.2e}", sol.objective, sol.iterations, moment_residual(&prog, &sol));
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| format!("{:+.3}", dot(sol.var(i), sol.var(j)))).collect();
        println!("v{}·v0 = {:+.3}   gram row {}", i + 1, dot(sol.var(i), sol.v0()), row.join(" "));
    }
    for (f, l) in sol.lambda[0].iter().enumerate() {
        if *l > 1e-6 {
            println!("lambda({}) = {l:.4}", tuple_string(&tuple_of(f as u32, 3)));
        }
    }
    let (_, best) = brute_force_best(&inst, Mode::Weak, DEFAULT_BRUTE_CAP)?;
    println!("best integral fraction {best}");
    Ok(())
}
