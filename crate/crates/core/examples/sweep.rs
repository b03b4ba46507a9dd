//! A small parameter sweep on 2-SAT written as CSV, the same path the
//! `experiment` subcommand takes.
//!
//! ```bash
//! cargo run --release --example sweep
//! ```

use pcsp::experiment::{catalog, rows_to_csv, run_experiment, ExperimentSpec};

fn main() -> pcsp::Result<()> {
    let spec = ExperimentSpec::parse(
        r#"
        template = "2-sat"
        n = 40
        m = 160
        epsilons = [0.05, 0.01, 0.001]
        trials = 5
        seed = 3
        "#,
    )?;
    let template = catalog(&spec.template).expect("catalog template");
    print!("{}", rows_to_csv(&run_experiment(&spec, &template)?)?);
    Ok(())
}
