//! Deterministic rendering of polynomials as text, JSON and LaTeX.
//!
//! Terms are emitted in descending monomial order with coefficients as
//! reduced fractions, so identical polynomials always render to identical
//! bytes.

use num_traits::{One, Signed};
use serde_json::{Map, Value};

use crate::ring::{rational_to_string, Monomial, Polynomial, Rational, VariableId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderFormat {
    #[default]
    Text,
    Json,
    Latex,
}

impl std::str::FromStr for RenderFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "json" => Ok(RenderFormat::Json),
            "latex" => Ok(RenderFormat::Latex),
            other => Err(format!(
                "unknown format '{other}' (expected text, json or latex)"
            )),
        }
    }
}

pub fn render_polynomial(p: &Polynomial, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_text(p),
        RenderFormat::Json => render_json(p).to_string(),
        RenderFormat::Latex => render_latex(p),
    }
}

fn text_factors(m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&rational_to_string(&mag));
        } else if mag.is_one() {
            out.push_str(&text_factors(m));
        } else {
            out.push_str(&rational_to_string(&mag));
            out.push('*');
            out.push_str(&text_factors(m));
        }
    }
    out
}

fn latex_variable(v: VariableId) -> String {
    match v {
        VariableId::A { i, j } => format!("a_{{{i},{j}}}"),
        VariableId::X(k) => format!("x_{k}"),
        VariableId::U(k) => format!("u_{k}"),
    }
}

fn latex_factors(m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                latex_variable(v)
            } else {
                format!("{}^{{{e}}}", latex_variable(v))
            }
        })
        .collect::<String>()
}

fn latex_magnitude(mag: &Rational) -> String {
    if mag.denom().is_one() {
        mag.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

pub fn render_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&latex_magnitude(&mag));
        } else if mag.is_one() {
            out.push_str(&latex_factors(m));
        } else {
            out.push_str(&latex_magnitude(&mag));
            out.push_str(&latex_factors(m));
        }
    }
    out
}

/// JSON term array: `[{"coeff":"p/q","monomial":{"a[0,0]":2,"x1":1}}, ...]`
/// in descending monomial order.
pub fn render_json(p: &Polynomial) -> Value {
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms().rev() {
        let mut mono = Map::new();
        for (v, e) in m.iter() {
            mono.insert(v.to_string(), Value::from(e));
        }
        let mut term = Map::new();
        term.insert("coeff".to_string(), Value::from(rational_to_string(c)));
        term.insert("monomial".to_string(), Value::Object(mono));
        terms.push(Value::Object(term));
    }
    Value::Array(terms)
}
