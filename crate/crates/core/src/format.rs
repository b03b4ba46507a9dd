//! Text format for templates and instances.
//!
//! ```text
//! pcsp v1
//! vars 3
//! idempotent
//! pair 1 strong ham 3 {1}
//! pair 1 weak tuples +-- -+- --+ ++- +-+ -++
//! use 1 : +1 -2 T
//! ```
//!
//! Pairs are numbered from 1 and must be declared in order, each with one
//! `strong` and one `weak` line. Literals are `+i`, `-i` (1-based), `T` and
//! `F`. Blank lines and text after `#` are ignored.

use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance, Literal};
use crate::predicate::{make_ham, tuple_of, tuple_string, Predicate, PredicatePair, Spin, Template};

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_predicate(line: usize, words: &[&str]) -> Result<Predicate> {
    match words.first() {
        Some(&"ham") => {
            let Some(k) = words.get(1).and_then(|w| w.parse::<usize>().ok()) else {
                return err(line, "expected `ham <k> {w1,...}`");
            };
            let set = words[2..].concat();
            let Some(inner) = set.strip_prefix('{').and_then(|s| s.strip_suffix('}')) else {
                return err(line, "weight set must be written as {w1,...}");
            };
            let mut ws = Vec::new();
            for w in inner.split(',').map(str::trim).filter(|w| !w.is_empty()) {
                match w.parse::<usize>() {
                    Ok(v) => ws.push(v),
                    Err(_) => return err(line, format!("bad weight `{w}`")),
                }
            }
            make_ham(k, &ws).or_else(|e| err(line, e.to_string()))
        }
        Some(&"tuples") => {
            let ts = &words[1..];
            let Some(first) = ts.first() else {
                return err(line, "explicit tuple list is empty; use `ham k {}` for an empty predicate");
            };
            let k = first.len();
            let mut tuples = Vec::new();
            for t in ts {
                if t.len() != k {
                    return err(line, format!("tuple `{t}` has length {} but the first tuple has length {k}", t.len()));
                }
                let mut row: Vec<Spin> = Vec::with_capacity(k);
                for ch in t.chars() {
                    match ch {
                        '+' => row.push(1),
                        '-' => row.push(-1),
                        _ => return err(line, format!("tuple `{t}` must use only `+` and `-`")),
                    }
                }
                tuples.push(row);
            }
            Predicate::from_tuples(k, tuples).or_else(|e| err(line, e.to_string()))
        }
        _ => err(line, "predicate must start with `ham` or `tuples`"),
    }
}

fn parse_literal(line: usize, word: &str) -> Result<Literal> {
    match word {
        "T" => return Ok(Literal::Const(1)),
        "F" => return Ok(Literal::Const(-1)),
        _ => {}
    }
    let (sign, rest) = match word.split_at_checked(1) {
        Some(("+", r)) => (1, r),
        Some(("-", r)) => (-1, r),
        _ => return err(line, format!("bad literal `{word}`")),
    };
    match rest.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(Literal::Var { var: i - 1, sign }),
        _ => err(line, format!("bad variable index in literal `{word}`")),
    }
}

/// Parses a document. A document without `use` lines yields an instance
/// with no constraints, which is how templates are passed around.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "pcsp v1")) => {}
        Some((n, other)) => return err(n, format!("expected header `pcsp v1`, found `{other}`")),
        None => return err(1, "empty document"),
    }

    let mut num_vars: Option<usize> = None;
    let mut idempotent = false;
    let mut strong: Vec<Option<Predicate>> = Vec::new();
    let mut weak: Vec<Option<Predicate>> = Vec::new();
    let mut uses: Vec<(usize, Constraint)> = Vec::new();

    for (n, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "vars" => {
                if words.len() != 2 {
                    return err(n, "expected `vars <n>`");
                }
                match words[1].parse() {
                    Ok(v) => num_vars = Some(v),
                    Err(_) => return err(n, format!("bad variable count `{}`", words[1])),
                }
            }
            "idempotent" => {
                if words.len() != 1 {
                    return err(n, "`idempotent` takes no arguments");
                }
                idempotent = true;
            }
            "pair" => {
                if words.len() < 4 {
                    return err(n, "expected `pair <i> strong|weak <predicate>`");
                }
                let Ok(i) = words[1].parse::<usize>() else {
                    return err(n, format!("bad pair index `{}`", words[1]));
                };
                if i == 0 || i > strong.len() + 1 {
                    return err(n, format!("pair {i} declared out of order"));
                }
                if i == strong.len() + 1 {
                    strong.push(None);
                    weak.push(None);
                }
                let pred = parse_predicate(n, &words[3..])?;
                let slot = match words[2] {
                    "strong" => &mut strong[i - 1],
                    "weak" => &mut weak[i - 1],
                    other => return err(n, format!("expected `strong` or `weak`, found `{other}`")),
                };
                if slot.is_some() {
                    return err(n, format!("pair {i} {} declared twice", words[2]));
                }
                *slot = Some(pred);
            }
            "use" => {
                if words.len() < 3 || words[2] != ":" {
                    return err(n, "expected `use <pair-index> : <lit> ...`");
                }
                let Ok(i) = words[1].parse::<usize>() else {
                    return err(n, format!("bad pair index `{}`", words[1]));
                };
                if i == 0 {
                    return err(n, "pair indices start at 1");
                }
                let lits = words[3..].iter().map(|w| parse_literal(n, w)).collect::<Result<Vec<_>>>()?;
                uses.push((n, Constraint::new(i - 1, lits)));
            }
            other => return err(n, format!("unknown directive `{other}`")),
        }
    }

    let mut pairs = Vec::new();
    for (i, (s, w)) in strong.into_iter().zip(weak).enumerate() {
        match (s, w) {
            (Some(s), Some(w)) => pairs.push(PredicatePair::new(s, w).or_else(|e| err(0, format!("pair {}: {e}", i + 1)))?),
            _ => return err(0, format!("pair {} needs both a strong and a weak line", i + 1)),
        }
    }
    let template = Template::new(pairs, idempotent).or_else(|e| err(0, e.to_string()))?;
    let Some(num_vars) = num_vars else {
        return err(0, "missing `vars <n>` line");
    };
    for (n, c) in &uses {
        // Validate each line on its own so diagnostics carry the line number.
        if let Err(e) = Instance::new(template.clone(), num_vars, vec![c.clone()]) {
            let msg = e.to_string().replace("invalid input: constraint 1: ", "");
            return err(*n, msg);
        }
    }
    Instance::new(template, num_vars, uses.into_iter().map(|(_, c)| c).collect()).or_else(|e| err(0, e.to_string()))
}

fn predicate_text(p: &Predicate) -> String {
    match p.ham_weights() {
        Some(ws) => {
            let ws: Vec<String> = ws.iter().map(usize::to_string).collect();
            format!("ham {} {{{}}}", p.arity(), ws.join(","))
        }
        None => {
            let ts: Vec<String> = p.codes().map(|c| tuple_string(&tuple_of(c, p.arity()))).collect();
            format!("tuples {}", ts.join(" "))
        }
    }
}

fn literal_text(l: &Literal) -> String {
    match *l {
        Literal::Var { var, sign } => format!("{}{}", if sign > 0 { '+' } else { '-' }, var + 1),
        Literal::Const(c) => (if c > 0 { "T" } else { "F" }).to_string(),
    }
}

/// Canonical text of an instance. Symmetric predicates use the `ham` form.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::from("pcsp v1\n");
    out.push_str(&format!("vars {}\n", inst.num_vars()));
    if inst.template().idempotent() {
        out.push_str("idempotent\n");
    }
    for (i, pair) in inst.template().pairs().iter().enumerate() {
        out.push_str(&format!("pair {} strong {}\n", i + 1, predicate_text(pair.strong())));
        out.push_str(&format!("pair {} weak {}\n", i + 1, predicate_text(pair.weak())));
    }
    for c in inst.constraints() {
        let lits: Vec<String> = c.literals.iter().map(literal_text).collect();
        out.push_str(&format!("use {} : {}\n", c.pair + 1, lits.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::three_lin;

    const MINIMAL: &str = "pcsp v1\nvars 2\npair 1 strong tuples -+ +- ++\npair 1 weak ham 2 {1,2}\nuse 1 : +1 -2\n";

    #[test]
    fn minimal_document() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.num_vars(), 2);
        assert_eq!(inst.constraints()[0].literals, vec![Literal::pos(0), Literal::neg(1)]);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn arity_mismatch_reports_line() {
        let bad = MINIMAL.replace("use 1 : +1 -2", "use 1 : +1 -2 +1");
        match parse_instance(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn three_lin_round_trip() {
        let t = Template::single(PredicatePair::csp(three_lin()));
        let lits = vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)];
        let inst = Instance::new(
            t,
            3,
            vec![Constraint::new(0, lits.clone()), Constraint::new(0, lits.into_iter().map(Literal::negated).collect())],
        )
        .unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn schema_errors() {
        assert!(parse_instance("").is_err());
        assert!(parse_instance("pcsp v2\n").is_err());
        assert!(parse_instance("pcsp v1\nvars 1\npair 1 strong ham 1 {1}\n").is_err());
        assert!(parse_instance("pcsp v1\nvars 1\npair 1 strong ham 1 {1}\npair 1 weak ham 1 {1}\nuse 1 : T\n").is_err());
        assert!(parse_instance("pcsp v1\nvars 1\nidempotent\npair 1 strong ham 1 {1}\npair 1 weak ham 1 {1}\nuse 1 : T\n").is_ok());
        assert!(parse_instance("pcsp v1\nvars 1\npair 1 strong ham 2 {2}\npair 1 weak ham 2 {0}\n").is_err());
        assert!(parse_instance("pcsp v1\nvars 1\npair 1 strong tuples +x\npair 1 weak ham 2 {0}\n").is_err());
    }
}
