//! Plain-text LP dump.
//!
//! ```text
//! # comment lines start with '#'
//! var x1 Los Angeles            one line per variable: id, then display name
//! minimize: +1e0 x1 +1e0 x2     signed coefficient / variable pairs
//! balance_h01: +1.2e-4 x1 +3e-5 x2 >= 4.5e4
//! end
//! ```
//!
//! Every variable is implicitly `>= 0`. Coefficients are written in Rust's
//! shortest round-trip exponent form, so parsing a dump reproduces the
//! problem exactly. Zero coefficients are omitted.

use std::fmt::Write as _;

use super::{Constraint, LpProblem, OptimizerError, Relation, RowKind};

fn terms(coeffs: &[f64]) -> String {
    let mut s = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if *c != 0.0 {
            let sign = if c.is_sign_negative() { "" } else { "+" };
            let _ = write!(s, " {sign}{c:e} x{}", j + 1);
        }
    }
    s
}

pub fn write_lp_dump(p: &LpProblem) -> String {
    let mut out = String::new();
    out.push_str("# minimize the objective subject to every row; all variables >= 0\n");
    for (j, name) in p.var_names.iter().enumerate() {
        let _ = writeln!(out, "var x{} {}", j + 1, name);
    }
    let _ = writeln!(out, "minimize:{}", terms(&p.objective));
    for row in &p.rows {
        let _ = writeln!(
            out,
            "{}:{} {} {:e}",
            row.label,
            terms(&row.coeffs),
            row.relation.symbol(),
            row.rhs
        );
    }
    out.push_str("end\n");
    out
}

fn kind_from_label(label: &str) -> RowKind {
    let index = |prefix: &str| {
        label
            .strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&k| k > 0)
    };
    if let Some(h) = index("balance_h") {
        RowKind::Balance { hour: h - 1 }
    } else if let Some(i) = index("min_share_") {
        RowKind::MinShare { location: i - 1 }
    } else if let Some(i) = index("max_share_") {
        RowKind::MaxShare { location: i - 1 }
    } else {
        RowKind::Other
    }
}

pub fn parse_lp_dump(text: &str) -> Result<LpProblem, OptimizerError> {
    let bad = |line: usize, what: &str| OptimizerError::Malformed(format!("line {}: {what}", line + 1));
    let mut var_names = Vec::new();
    let mut objective = None;
    let mut rows = Vec::new();
    let mut ended = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return Err(bad(ln, "content after 'end'"));
        }
        if line == "end" {
            ended = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("var ") {
            let (id, name) = rest.split_once(' ').unwrap_or((rest, ""));
            if id != format!("x{}", var_names.len() + 1) {
                return Err(bad(ln, "variables must be declared in order x1, x2, ..."));
            }
            var_names.push(name.to_string());
            continue;
        }

        let (label, body) = line.split_once(':').ok_or_else(|| bad(ln, "expected 'label: terms'"))?;
        let n = var_names.len();
        let mut coeffs = vec![0.0; n];
        let mut tokens = body.split_whitespace().peekable();
        let mut relation = None;
        let mut rhs = None;
        while let Some(tok) = tokens.next() {
            if tok == ">=" || tok == "<=" {
                relation = Some(if tok == ">=" { Relation::Ge } else { Relation::Le });
                let v = tokens.next().ok_or_else(|| bad(ln, "missing right-hand side"))?;
                rhs = Some(v.parse::<f64>().map_err(|_| bad(ln, "bad right-hand side"))?);
                if tokens.next().is_some() {
                    return Err(bad(ln, "trailing tokens"));
                }
                break;
            }
            let c: f64 = tok.parse().map_err(|_| bad(ln, &format!("bad coefficient {tok:?}")))?;
            let var = tokens.next().ok_or_else(|| bad(ln, "coefficient without variable"))?;
            let j = var
                .strip_prefix('x')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| (1..=n).contains(&k))
                .ok_or_else(|| bad(ln, &format!("unknown variable {var:?}")))?;
            coeffs[j - 1] += c;
        }

        if label.trim() == "minimize" {
            if relation.is_some() {
                return Err(bad(ln, "objective has a relation"));
            }
            if objective.replace(coeffs).is_some() {
                return Err(bad(ln, "second objective"));
            }
        } else {
            let (relation, rhs) = relation
                .zip(rhs)
                .ok_or_else(|| bad(ln, "constraint without relation"))?;
            let label = label.trim().to_string();
            rows.push(Constraint {
                kind: kind_from_label(&label),
                label,
                coeffs,
                relation,
                rhs,
            });
        }
    }

    if !ended {
        return Err(OptimizerError::Malformed("missing 'end'".into()));
    }
    let objective = objective.ok_or_else(|| OptimizerError::Malformed("missing objective".into()))?;
    Ok(LpProblem {
        var_names,
        objective,
        rows,
    })
}
