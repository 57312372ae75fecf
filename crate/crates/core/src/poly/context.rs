use std::sync::Arc;

use super::PolyError;
use crate::field;

/// Largest number of main variables; `p^n`-sized expansions stay small below it.
pub const MAX_MAIN_VARS: usize = 4;

/// The ambient ring: characteristic `p`, main variables `x_1..x_n` and
/// optional parameters `t_1..t_k` of the coefficient ring `K = F_p[t]`.
///
/// Exponent vectors of polynomials over a context have length `n + k`,
/// main variables first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    p: u32,
    main_vars: Vec<String>,
    param_vars: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Context {
    pub fn new<S, T>(
        p: u32,
        main_vars: impl IntoIterator<Item = S>,
        param_vars: impl IntoIterator<Item = T>,
    ) -> Result<Arc<Self>, PolyError>
    where
        S: Into<String>,
        T: Into<String>,
    {
        if !field::is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        if p > field::MAX_PRIME {
            return Err(PolyError::PrimeTooLarge {
                p,
                max: field::MAX_PRIME,
            });
        }
        let main_vars: Vec<String> = main_vars.into_iter().map(Into::into).collect();
        let param_vars: Vec<String> = param_vars.into_iter().map(Into::into).collect();
        if main_vars.is_empty() {
            return Err(PolyError::NoVariables);
        }
        if main_vars.len() > MAX_MAIN_VARS {
            return Err(PolyError::TooManyVariables {
                n: main_vars.len(),
                max: MAX_MAIN_VARS,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for name in main_vars.iter().chain(param_vars.iter()) {
            // "p" names the characteristic in spec files.
            if !valid_name(name) || name == "p" {
                return Err(PolyError::InvalidVariableName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Context {
            p,
            main_vars,
            param_vars,
        }))
    }

    /// Context over `F_p` without parameters.
    pub fn plain<S: Into<String>>(
        p: u32,
        main_vars: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>, PolyError> {
        Self::new(p, main_vars, std::iter::empty::<String>())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of main variables.
    pub fn n(&self) -> usize {
        self.main_vars.len()
    }

    pub fn num_params(&self) -> usize {
        self.param_vars.len()
    }

    pub fn has_params(&self) -> bool {
        !self.param_vars.is_empty()
    }

    /// Length of exponent vectors.
    pub fn num_vars(&self) -> usize {
        self.main_vars.len() + self.param_vars.len()
    }

    pub fn main_vars(&self) -> &[String] {
        &self.main_vars
    }

    pub fn param_vars(&self) -> &[String] {
        &self.param_vars
    }

    /// Position of a variable in exponent vectors.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.main_vars
            .iter()
            .chain(self.param_vars.iter())
            .position(|v| v == name)
    }

    pub fn main_index(&self, name: &str) -> Option<usize> {
        self.main_vars.iter().position(|v| v == name)
    }

    pub fn var_name(&self, index: usize) -> &str {
        if index < self.main_vars.len() {
            &self.main_vars[index]
        } else {
            &self.param_vars[index - self.main_vars.len()]
        }
    }
}
