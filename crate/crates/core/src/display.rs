//! Canonical text rendering of vectors and polynomial maps.

use num_traits::{One, Signed, Zero};

use crate::linalg::Vector;
use crate::poly::{FormalSeries, HomogeneousMap, MultiIndex};
use crate::rational::{format_rational, Rational};

fn push_term(out: &mut String, coeff: &Rational, body: &str) {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&format_rational(&mag));
    } else if mag.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format_rational(&mag));
        out.push('*');
        out.push_str(body);
    }
}

/// `2*e - 1/2*h`, or `0`.
pub fn linear_combination(v: &Vector, labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(labels) {
        if !c.is_zero() {
            push_term(&mut out, c, l);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `y1^2*y3` with 1-based variable indices; empty for the constant monomial.
pub fn monomial(alpha: &MultiIndex, var: &str) -> String {
    alpha
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("{var}{}", i + 1)
            } else {
                format!("{var}{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Sum of `coeff*monomial*label` terms in canonical monomial order.
pub fn homogeneous(f: &HomogeneousMap, var: &str, labels: &[String]) -> String {
    let mut out = String::new();
    for (alpha, v) in f.terms() {
        let m = monomial(alpha, var);
        for (c, l) in v.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let body = if m.is_empty() {
                l.clone()
            } else {
                format!("{m}*{l}")
            };
            push_term(&mut out, c, &body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One `name_m = ...` line per certified degree.
pub fn series_lines(s: &FormalSeries, name: &str, var: &str, labels: &[String]) -> Vec<String> {
    s.components()
        .iter()
        .map(|c| format!("{name}_{} = {}", c.degree(), homogeneous(c, var, labels)))
        .collect()
}
