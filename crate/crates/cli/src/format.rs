//! Deterministic number formatting and report assembly.

use serde_json::{json, Value};
use t3ech_core::Conventions;

/// Significant digits for every real printed by the CLI.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: fixed notation for moderate exponents, scientific otherwise,
/// trailing zeros removed. `-0` prints as `0`.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        return format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A real rounded to the printed precision, for structured output.
pub fn real_value(x: f64) -> Value {
    real(x).parse::<f64>().map(|r| json!(r)).unwrap_or(Value::Null)
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn bit(b: bool) -> u8 {
    u8::from(b)
}

/// The output of one command in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub table: Vec<String>,
    pub structured: Value,
}

impl Rendered {
    pub fn new(table: Vec<String>, structured: Value) -> Self {
        Rendered { table, structured }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutMode {
    Table,
    Structured,
}

pub fn conventions_value(c: &Conventions) -> Value {
    json!({
        "basis": Conventions::BASIS,
        "h_identification": c.h_identification.as_str(),
        "matrix_convention": Conventions::MATRIX_CONVENTION,
    })
}

pub fn render(mode: OutMode, conventions: &Conventions, command: &str, body: &Rendered) -> String {
    match mode {
        OutMode::Table => {
            let mut out = conventions.header_lines().join("\n");
            out.push('\n');
            for line in &body.table {
                out.push_str(line);
                out.push('\n');
            }
            out
        }
        OutMode::Structured => {
            let doc = json!({
                "command": command,
                "conventions": conventions_value(conventions),
                "result": body.structured,
            });
            let mut out = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(real(2.0 * PI), "6.28318530718");
        assert_eq!(real(2.0 * PI * 2f64.sqrt()), "8.88576587632");
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-0.5), "-0.5");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(-0.0), "0");
        assert_eq!(real(1e-7), "1e-07");
        assert_eq!(real(1.5e15), "1.5e+15");
        assert_eq!(real(123456789012.0), "123456789012");
        assert_eq!(real(0.000123456789012345), "0.000123456789012");
    }
}
