//! Threshold polymorphisms of a few classic templates, the separating
//! hyperplane test behind MAJ, and the hyperplane cover behind AT.
//!
//! ```bash
//! cargo run --example polymorphisms
//! ```

use pcsp::poly::{check_up_to, separating_hyperplane, weighted_hyperplane_cover, FamilyKind, Separation};
use pcsp::predicate::{k_sat, nae, one_in, three_lin, tuple_string, PredicatePair};

fn main() -> pcsp::Result<()> {
    let templates = [
        ("2-SAT", PredicatePair::csp(k_sat(2))),
        ("3-LIN", PredicatePair::csp(three_lin())),
        ("(1-in-3, NAE-3)", PredicatePair::new(one_in(3), nae(3))?),
    ];
    for (name, pair) in &templates {
        for kind in [FamilyKind::Maj, FamilyKind::At] {
            let verdicts = check_up_to(pair, kind, 7)?;
            let summary: Vec<String> = verdicts.iter().map(|(l, v)| format!("{l}:{}", if v.holds() { "yes" } else { "no" })).collect();
            println!("{name:<16} {kind:?}  {}", summary.join(" "));
        }
    }

    match separating_hyperplane(&three_lin())? {
        Separation::Weight(w) => println!("3-LIN separated by {:?}", w.w),
        Separation::Witness(w) => {
            let rows: Vec<String> = w.rows().iter().map(|r| tuple_string(r)).collect();
            println!("3-LIN MAJ witness rows {rows:?} -> {}", tuple_string(&w.majority()));
        }
    }

    let pair = PredicatePair::new(one_in(3), nae(3))?;
    for h in weighted_hyperplane_cover(&pair)? {
        let w: Vec<String> = h.w.iter().map(ToString::to_string).collect();
        println!("cover hyperplane w = {w:?}, b = {}", h.b);
    }
    Ok(())
}
