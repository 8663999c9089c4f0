//! CPLEX LP text output and a reader for the same subset of the format.

use std::fmt::Write as _;

use num::{Signed, Zero};

use super::LpProblem;
use crate::error::{Error, Result};
use crate::rational::{format_decimal, to_f64, Rational};

pub const DEFAULT_DIGITS: usize = 17;

fn linear_expr(out: &mut String, coeffs: &[Rational], names: &[String], digits: usize) {
    let mut first = true;
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let mag = format_decimal(to_f64(&c.abs()), digits);
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            let lead = if c.is_negative() { "- " } else { "" };
            let _ = write!(out, " {lead}{mag} {name}");
        } else {
            let _ = write!(out, " {sign} {mag} {name}");
        }
        first = false;
    }
    if first {
        match names.first() {
            Some(name) => {
                let _ = write!(out, " 0 {name}");
            }
            None => out.push_str(" 0"),
        }
    }
}

/// Renders `lp` as CPLEX LP text with `digits` significant digits.
pub fn write_lp(lp: &LpProblem, digits: usize, comment: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(s, "\\ {line}");
        }
    }
    s.push_str("Maximize\n obj:");
    linear_expr(&mut s, &lp.objective, &lp.variables, digits);
    s.push_str("\nSubject To\n");
    for (k, c) in lp.inequalities.iter().enumerate() {
        let _ = write!(s, " c{}:", k + 1);
        linear_expr(&mut s, &c.coeffs, &lp.variables, digits);
        let _ = writeln!(s, " <= {}", format_decimal(to_f64(&c.rhs), digits));
    }
    for (k, c) in lp.equalities.iter().enumerate() {
        let _ = write!(s, " e{}:", k + 1);
        linear_expr(&mut s, &c.coeffs, &lp.variables, digits);
        let _ = writeln!(s, " = {}", format_decimal(to_f64(&c.rhs), digits));
    }
    s.push_str("Bounds\n");
    for v in &lp.variables {
        let _ = writeln!(s, " {v} >= 0");
    }
    s.push_str("End\n");
    s
}

/// Floating-point view of an LP read back from text.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedLp {
    pub variables: Vec<String>,
    pub objective: Vec<f64>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
    pub equalities: Vec<(Vec<f64>, f64)>,
}

impl ParsedLp {
    pub fn from_problem(lp: &LpProblem) -> Self {
        let f = |v: &[Rational]| v.iter().map(to_f64).collect::<Vec<_>>();
        ParsedLp {
            variables: lp.variables.clone(),
            objective: f(&lp.objective),
            inequalities: lp.inequalities.iter().map(|c| (f(&c.coeffs), to_f64(&c.rhs))).collect(),
            equalities: lp.equalities.iter().map(|c| (f(&c.coeffs), to_f64(&c.rhs))).collect(),
        }
    }
}

fn parse_linear(tokens: &[&str], names: &mut Vec<String>) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    let mut sign = 1.0;
    let mut coeff: Option<f64> = None;
    for tok in tokens {
        match *tok {
            "+" => sign = 1.0,
            "-" => sign = -1.0,
            t => {
                if let Ok(v) = t.parse::<f64>() {
                    coeff = Some(v);
                } else {
                    let idx = match names.iter().position(|n| n == t) {
                        Some(i) => i,
                        None => {
                            names.push(t.to_string());
                            names.len() - 1
                        }
                    };
                    out.push((idx, sign * coeff.unwrap_or(1.0)));
                    sign = 1.0;
                    coeff = None;
                }
            }
        }
    }
    Ok(out)
}

/// Reads the LP subset produced by [`write_lp`].
pub fn parse_lp(text: &str) -> Result<ParsedLp> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Constraints,
        Bounds,
    }
    let mut section = Section::None;
    // Bounds list every variable in order, so read them first.
    let mut names: Vec<String> = text
        .lines()
        .map(str::trim)
        .skip_while(|l| !l.eq_ignore_ascii_case("bounds"))
        .skip(1)
        .take_while(|l| !l.eq_ignore_ascii_case("end"))
        .filter_map(|l| l.split_whitespace().next().map(String::from))
        .collect();
    let mut objective: Vec<(usize, f64)> = Vec::new();
    let mut ineqs: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    let mut eqs: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('\\') {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "maximize" => {
                section = Section::Objective;
                continue;
            }
            "subject to" => {
                section = Section::Constraints;
                continue;
            }
            "bounds" => {
                section = Section::Bounds;
                continue;
            }
            "end" => break,
            _ => {}
        }
        let body = line.split_once(':').map_or(line, |(_, b)| b);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match section {
            Section::Objective => objective.extend(parse_linear(&tokens, &mut names)?),
            Section::Constraints => {
                let (pos, op) = tokens
                    .iter()
                    .enumerate()
                    .find(|(_, t)| **t == "<=" || **t == "=")
                    .ok_or_else(|| Error::Parse(format!("constraint without relation: {line}")))?;
                let rhs: f64 = tokens
                    .get(pos + 1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad right-hand side: {line}")))?;
                let lhs = parse_linear(&tokens[..pos], &mut names)?;
                if *op == "<=" {
                    ineqs.push((lhs, rhs));
                } else {
                    eqs.push((lhs, rhs));
                }
            }
            Section::Bounds => {
                if let Some(name) = tokens.first() {
                    if !names.iter().any(|n| n == name) {
                        names.push(name.to_string());
                    }
                }
            }
            Section::None => return Err(Error::Parse(format!("text before the objective: {line}"))),
        }
    }
    let n = names.len();
    let dense = |v: &[(usize, f64)]| {
        let mut out = vec![0.0; n];
        for &(i, c) in v {
            out[i] += c;
        }
        out
    };
    Ok(ParsedLp {
        objective: dense(&objective),
        inequalities: ineqs.iter().map(|(v, b)| (dense(v), *b)).collect(),
        equalities: eqs.iter().map(|(v, b)| (dense(v), *b)).collect(),
        variables: names,
    })
}

#[cfg(test)]
mod tests {
    use super::super::LinearConstraint;
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn round_trip() {
        let lp = LpProblem {
            variables: vec!["v1".into(), "v2".into()],
            labels: vec!["a".into(), "b".into()],
            objective: vec![ratio(1, 3), rat(0)],
            inequalities: vec![LinearConstraint { coeffs: vec![rat(-2), ratio(5, 7)], rhs: rat(1) }],
            equalities: vec![LinearConstraint { coeffs: vec![rat(0), rat(0)], rhs: rat(0) }],
        };
        let text = write_lp(&lp, DEFAULT_DIGITS, Some("test"));
        assert_eq!(parse_lp(&text).unwrap(), ParsedLp::from_problem(&lp));
        assert_eq!(LpProblem::from_json(&lp.to_json().unwrap()).unwrap(), lp);
    }

    #[test]
    fn empty_problem() {
        let lp = LpProblem {
            variables: vec![],
            labels: vec![],
            objective: vec![],
            inequalities: vec![],
            equalities: vec![],
        };
        let text = write_lp(&lp, DEFAULT_DIGITS, None);
        assert!(text.contains("Bounds") && text.ends_with("End\n"));
        assert_eq!(parse_lp(&text).unwrap(), ParsedLp::from_problem(&lp));
    }
}
