//! Gadget reductions: the negated form used by the MAJ rounder and the
//! hyperplane gadgets used by the AT rounder.
//!
//! ```bash
//! cargo run --example reductions
//! ```

use pcsp::format::serialize_instance;
use pcsp::instance::{Constraint, Instance, Literal};
use pcsp::predicate::{make_ham, nae, one_in, PredicatePair, Template};
use pcsp::reduce::{apply_gadget, at_reduction, to_negform};
use pcsp::round::POLY_CHECK_ARITY;

fn main() -> pcsp::Result<()> {
    let t = Template::single(PredicatePair::new(make_ham(3, &[2, 3])?, make_ham(3, &[1, 2, 3])?)?);
    let inst = Instance::new(t, 4, vec![Constraint::new(0, vec![Literal::pos(0), Literal::neg(1), Literal::pos(3)])])?;
    let (neg, trace) = to_negform(&inst)?;
    println!("negated form: {} constraints, completeness x{}, soundness x{}", neg.num_constraints(), trace.completeness_loss, trace.soundness_loss);
    print!("{}", serialize_instance(&neg));

    let t = Template::single(PredicatePair::new(one_in(3), nae(3))?);
    let red = at_reduction(&t, POLY_CHECK_ARITY)?;
    for (pair, g) in &red.gadgets {
        println!("pair {pair}: {} auxiliaries, body of {} constraints", g.aux(), g.body().num_constraints());
    }
    let inst = Instance::new(t, 3, vec![Constraint::new(0, vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)])])?;
    let (out, _) = apply_gadget(&inst, &red.gadgets)?;
    print!("{}", serialize_instance(&out));
    Ok(())
}
