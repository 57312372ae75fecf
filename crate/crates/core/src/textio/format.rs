use std::fmt::{self, Write};

use crate::poly::Poly;

/// Canonical text form: leading term first, coefficients in `[1, p)`,
/// explicit `*`, exponents written only when greater than one.
pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ctx = f.ctx();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        for (var, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ctx.var_name(var).to_string()),
                _ => factors.push(format!("{}^{}", ctx.var_name(var), e)),
            }
        }
        if factors.is_empty() {
            write!(out, "{c}").unwrap();
        } else {
            if c != 1 {
                write!(out, "{c}*").unwrap();
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}
