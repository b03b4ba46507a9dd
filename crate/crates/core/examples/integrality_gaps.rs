//! Integrality gaps: family moments, a configuration path to the negated
//! configuration, and verified certificates for 3-LIN and the `Ham_k{1,k}`
//! chain construction.
//!
//! ```bash
//! cargo run --release --example integrality_gaps
//! ```

use pcsp::gaps::{
    alpha_path, build_gamma5_gap_limited, path_dimension, path_step_defect, regular_simplex_vectors,
    three_lin_gap_instance, verify_gap, GapFamily,
};
use pcsp::instance::DEFAULT_BRUTE_CAP;

fn main() -> pcsp::Result<()> {
    for f in [GapFamily::Gamma1 { k: 4 }, GapFamily::Gamma3 { k: 5, l: 1 }, GapFamily::Gamma4 { k: 5, l: 2 }, GapFamily::Gamma5 { k: 5 }] {
        let m = f.moments()?;
        println!("{f:?}: alpha {:.4}, beta {:?}, mixture {:?}", m.alpha, m.beta, m.mixture);
    }

    let (k, alpha) = (4, 1.0 / 3.0);
    let u = regular_simplex_vectors(k, alpha, path_dimension(k))?;
    let path = alpha_path(&u, &u.negated(), alpha)?;
    println!("path from a {k}-configuration to its negation: {} steps, defect {:.1e}", path.len() - 1, path_step_defect(&path));

    let cert = verify_gap(&three_lin_gap_instance(), 1e-6, DEFAULT_BRUTE_CAP)?;
    println!("3-LIN: objective {:.1e}, weak best {:?}, verdict {}", cert.sdp_objective, cert.weak_best, cert.verdict);

    let gap = build_gamma5_gap_limited(3, 2, 3, DEFAULT_BRUTE_CAP)?;
    let cert = verify_gap(&gap.instance, 1e-6, DEFAULT_BRUTE_CAP)?;
    println!("{}: objective {:.1e}, weak best {:?}, verdict {}", gap.describe(), cert.sdp_objective, cert.weak_best, cert.verdict);
    Ok(())
}
