//! Elements of the SDP minion, their minors, and the elements read off a
//! zero-error SDP solution.
//!
//! ```bash
//! cargo run --example sdp_minion
//! ```

use pcsp::gaps::three_lin_gap_instance;
use pcsp::minion::{make_element, minor, sdp_solution_to_elements, MinorMap};
use pcsp::sdp::{build_basic_sdp, solve_basic_sdp};

fn main() -> pcsp::Result<()> {
    let t = 1.0 / 3f64.sqrt();
    let e = make_element(vec![vec![t, 0.0, 0.0], vec![0.0, t, 0.0], vec![0.0, 0.0, t]])?;
    let merged = minor(&e, &MinorMap::new(2, vec![0, 0, 1])?)?;
    println!("merged first two coordinates: {:?}", merged.vectors());
    println!("not orthogonal: {}", make_element(vec![vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap_err());

    let inst = three_lin_gap_instance();
    let sol = solve_basic_sdp(&build_basic_sdp(&inst), 1e-8)?;
    let els = sdp_solution_to_elements(&sol, &inst, 1e-6)?;
    println!(
        "{} variable elements, {} constraint elements of arity {}, {} minor relations, worst residual {:.1e}",
        els.variables.len(),
        els.constraints.len(),
        els.constraints[0].arity(),
        els.relations.len(),
        els.max_residual()
    );
    Ok(())
}
