//! Derivation spec files.
//!
//! ```text
//! # comment
//! p = 3
//! vars = x, y
//! params = t          # optional
//! d(x) = y^2
//! d(y) = x^2
//! ```
//! One `d(<var>) = <expr>` line per main variable, each expression on a
//! single line.

use std::sync::Arc;

use super::{parse::parse_poly_at, ParseError};
use crate::deriv::Derivation;
use crate::poly::Context;

/// The raw contents of a spec file, before expressions are parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    pub p: u32,
    pub vars: Vec<String>,
    pub params: Vec<String>,
    /// `(variable, expression, line, column of expression)` in file order.
    images: Vec<(String, String, usize, usize)>,
}

fn spec_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Spec {
        line,
        msg: msg.into(),
    }
}

fn name_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

impl DerivationSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = None;
        let mut vars = None;
        let mut params = None;
        let mut images: Vec<(String, String, usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(spec_err(line_no, "expected `<key> = <value>`"));
            };
            let key = line[..eq].trim();
            let value = &line[eq + 1..];
            match key {
                "p" => {
                    if p.is_some() {
                        return Err(spec_err(line_no, "duplicate `p` line"));
                    }
                    let v: u32 = value
                        .trim()
                        .parse()
                        .map_err(|_| spec_err(line_no, "`p` must be a positive integer"))?;
                    p = Some(v);
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(spec_err(line_no, "duplicate `vars` line"));
                    }
                    vars = Some(name_list(value));
                }
                "params" => {
                    if params.is_some() {
                        return Err(spec_err(line_no, "duplicate `params` line"));
                    }
                    params = Some(name_list(value));
                }
                _ => {
                    let var = key
                        .strip_prefix("d(")
                        .and_then(|s| s.strip_suffix(')'))
                        .map(str::trim)
                        .ok_or_else(|| spec_err(line_no, format!("unknown key `{key}`")))?;
                    if images.iter().any(|(v, ..)| v == var) {
                        return Err(spec_err(
                            line_no,
                            format!("duplicate image line for `{var}`"),
                        ));
                    }
                    let col = raw[..eq + 1].chars().count() + 1;
                    images.push((var.to_string(), value.to_string(), line_no, col));
                }
            }
        }
        let p = p.ok_or_else(|| spec_err(0, "missing `p` line"))?;
        let vars = vars.ok_or_else(|| spec_err(0, "missing `vars` line"))?;
        Ok(DerivationSpec {
            p,
            vars,
            params: params.unwrap_or_default(),
            images,
        })
    }

    pub fn context(&self) -> Result<Arc<Context>, ParseError> {
        Ok(Context::new(
            self.p,
            self.vars.iter().cloned(),
            self.params.iter().cloned(),
        )?)
    }

    pub fn build(&self) -> Result<(Arc<Context>, Derivation), ParseError> {
        let ctx = self.context()?;
        for (var, _, line, _) in &self.images {
            if ctx.main_index(var).is_none() {
                return Err(spec_err(
                    *line,
                    format!("`{var}` is not a declared main variable"),
                ));
            }
        }
        let mut images = Vec::with_capacity(ctx.n());
        for var in ctx.main_vars() {
            let (_, expr, line, col) = self
                .images
                .iter()
                .find(|(v, ..)| v == var)
                .ok_or_else(|| ParseError::MissingImage(var.clone()))?;
            images.push(parse_poly_at(expr, &ctx, *line, *col)?);
        }
        let d = Derivation::new(&ctx, images).expect("one image per main variable");
        Ok((ctx, d))
    }
}

/// Parses a spec file into its context and derivation.
pub fn parse_derivation_spec(text: &str) -> Result<(Arc<Context>, Derivation), ParseError> {
    DerivationSpec::parse(text)?.build()
}

/// Renders a derivation in spec-file syntax; parses back to the same value.
pub fn render_derivation_spec(d: &Derivation) -> String {
    let ctx = d.ctx();
    let mut out = format!("p = {}\nvars = {}\n", ctx.p(), ctx.main_vars().join(", "));
    if ctx.has_params() {
        out.push_str(&format!("params = {}\n", ctx.param_vars().join(", ")));
    }
    for (var, image) in ctx.main_vars().iter().zip(d.images()) {
        out.push_str(&format!("d({var}) = {image}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, PolyError};

    #[test]
    fn worked_example() {
        let (ctx, d) = parse_derivation_spec("p = 3\nvars = x, y\nd(x) = y^2\nd(y) = x^2").unwrap();
        assert_eq!(ctx.p(), 3);
        let x = Poly::var(&ctx, 0);
        let y = Poly::var(&ctx, 1);
        assert_eq!(d.images(), &[y.pow(2), x.pow(2)]);
    }

    #[test]
    fn missing_and_duplicate_images() {
        assert_eq!(
            parse_derivation_spec("p = 3\nvars = x, y\nd(x) = y^2\n").unwrap_err(),
            ParseError::MissingImage("y".into())
        );
        assert!(matches!(
            parse_derivation_spec("p = 3\nvars = x\nd(x) = 1\nd(x) = 2\n"),
            Err(ParseError::Spec { line: 4, .. })
        ));
        assert!(matches!(
            parse_derivation_spec("p = 3\nvars = x\nd(x) = 1\nd(z) = 2\n"),
            Err(ParseError::Spec { line: 4, .. })
        ));
    }

    #[test]
    fn context_limits() {
        assert_eq!(
            parse_derivation_spec("p = 4\nvars = x\nd(x) = 1\n").unwrap_err(),
            ParseError::Context(PolyError::NotPrime(4))
        );
        assert!(matches!(
            parse_derivation_spec("p = 17\nvars = x\nd(x) = 1\n"),
            Err(ParseError::Context(PolyError::PrimeTooLarge { .. }))
        ));
        assert!(matches!(
            parse_derivation_spec(
                "p = 2\nvars = a, b, c, e, f\nd(a)=0\nd(b)=0\nd(c)=0\nd(e)=0\nd(f)=0\n"
            ),
            Err(ParseError::Context(PolyError::TooManyVariables { .. }))
        ));
        assert!(matches!(
            parse_derivation_spec("p = 2\nvars = x, p\nd(x)=0\nd(p)=0\n"),
            Err(ParseError::Context(PolyError::InvalidVariableName(_)))
        ));
    }

    #[test]
    fn expression_errors_carry_file_positions() {
        let err = parse_derivation_spec("p = 3\nvars = x, y\nd(x) = y y\nd(y) = x\n").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    line: 3,
                    col: 10,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn params_and_comments() {
        let text = "# header\np = 5  # prime\nvars = x, y\nparams = t\n\nd(x) = t*y\nd(y) = -t*x\n";
        let (ctx, d) = parse_derivation_spec(text).unwrap();
        assert_eq!(ctx.param_vars(), &["t".to_string()]);
        let rendered = render_derivation_spec(&d);
        let (_, again) = parse_derivation_spec(&rendered).unwrap();
        assert_eq!(again, d);
    }
}
