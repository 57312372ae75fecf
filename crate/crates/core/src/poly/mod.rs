//! Sparse multivariate polynomials over `F_p` (optionally `F_p[t_1..t_k]`).

mod context;
mod expand;
mod gcd;
mod monomial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field;

pub use context::{Context, MAX_MAIN_VARS};
pub use expand::BExpansion;
pub use gcd::{gcd, gcd_of};
pub use monomial::{count_monomials_up_to, main_monomials_up_to, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {p} exceeds the supported maximum {max}")]
    PrimeTooLarge { p: u32, max: u32 },
    #[error("at least one main variable is required")]
    NoVariables,
    #[error("{n} main variables exceed the supported maximum {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials belong to different contexts")]
    ContextMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
}

/// A polynomial in canonical form: no stored zero coefficients, terms keyed
/// by exponent vector.
#[derive(Clone)]
pub struct Poly {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} mod {})", self, self.p())
    }
}

impl Poly {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: &Arc<Context>, c: i64) -> Self {
        let mut out = Self::zero(ctx);
        let c = field::reduce(c, ctx.p());
        if c != 0 {
            out.terms.insert(Monomial::one(ctx.n(), ctx.num_vars()), c);
        }
        out
    }

    /// The variable at position `index` of the exponent vector (main
    /// variables first, then parameters).
    pub fn var(ctx: &Arc<Context>, index: usize) -> Self {
        assert!(index < ctx.num_vars(), "variable index out of range");
        let mut exps = vec![0; ctx.num_vars()];
        exps[index] = 1;
        Self::monomial(ctx, &exps, 1)
    }

    pub fn var_named(ctx: &Arc<Context>, name: &str) -> Result<Self, PolyError> {
        ctx.var_index(name)
            .map(|i| Self::var(ctx, i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn monomial(ctx: &Arc<Context>, exps: &[u32], c: i64) -> Self {
        Self::from_terms(ctx, [(exps.to_vec(), c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated exponent vectors.
    pub fn from_terms<E: AsRef<[u32]>>(
        ctx: &Arc<Context>,
        terms: impl IntoIterator<Item = (E, i64)>,
    ) -> Self {
        let p = ctx.p();
        let mut out = Self::zero(ctx);
        for (exps, c) in terms {
            let exps = exps.as_ref();
            assert_eq!(exps.len(), ctx.num_vars(), "exponent vector length");
            out.add_term(Monomial::from_exps(ctx.n(), exps), field::reduce(c, p));
        }
        out
    }

    pub(crate) fn from_map(ctx: &Arc<Context>, terms: BTreeMap<Monomial, u32>) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0 && c < ctx.p()));
        Poly {
            ctx: ctx.clone(),
            terms,
        }
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.ctx.p();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field::add(*e.get(), c, p);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value() == Some(1)
    }

    /// True for zero and for nonzero elements of `F_p`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial; `Some(0)` for zero.
    pub fn constant_value(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(c)
            }
            _ => None,
        }
    }

    /// A nonzero element of `F_p`, i.e. a unit of `K`.
    pub fn is_unit(&self) -> bool {
        matches!(self.constant_value(), Some(c) if c != 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms
            .get(&Monomial::from_exps(self.ctx.n(), exps))
            .copied()
            .unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_coeff(&self) -> u32 {
        self.leading_term().map_or(0, |(_, c)| c)
    }

    /// Total degree in the main variables; 0 for the zero polynomial.
    pub fn main_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::main_degree)
            .max()
            .unwrap_or(0)
    }

    /// Degree in the variable at exponent position `var`.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    fn check_ctx(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        let p = self.p();
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), field::neg(c, p));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        let p = self.p();
        let mut out = Poly::zero(&self.ctx);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, field::mul(c1, c2, p));
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, mut exp: u32) -> Result<Poly, PolyError> {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        self.try_pow(exp).expect("polynomial power")
    }

    /// Multiplication by a scalar of `F_p`.
    pub fn scale(&self, c: u32) -> Poly {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Poly::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), field::mul(a, c, p)))
            .collect();
        Poly::from_map(&self.ctx, terms)
    }

    pub(crate) fn mul_term(&self, m: &Monomial, c: u32) -> Result<Poly, PolyError> {
        let p = self.p();
        let mut terms = BTreeMap::new();
        for (m2, &c2) in &self.terms {
            let v = field::mul(c, c2, p);
            if v != 0 {
                terms.insert(m.checked_mul(m2)?, v);
            }
        }
        Ok(Poly::from_map(&self.ctx, terms))
    }

    /// Formal partial derivative with respect to main variable `var`.
    pub fn pdiff(&self, var: usize) -> Result<Poly, PolyError> {
        if var >= self.ctx.n() {
            return Err(PolyError::UnknownVariable(format!("#{var}")));
        }
        Ok(self.partial(var))
    }

    pub fn pdiff_named(&self, name: &str) -> Result<Poly, PolyError> {
        let var = self
            .ctx
            .main_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.partial(var))
    }

    /// Unchecked partial derivative; `var` must be a main variable.
    pub(crate) fn partial(&self, var: usize) -> Poly {
        let p = self.p();
        let mut out = Poly::zero(&self.ctx);
        for (m, &c) in &self.terms {
            let e = m.exp(var);
            let k = field::mul(c, e % p, p);
            if k != 0 {
                out.add_term(m.with_exp(var, e - 1), k);
            }
        }
        out
    }

    /// Value at `point` (one coordinate per variable, parameters included).
    pub(crate) fn evaluate(&self, point: &[u32]) -> u32 {
        let p = self.p();
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let v = m.exps().iter().zip(point).fold(c, |v, (&e, &x)| {
                field::mul(v, field::pow(x, e as u64, p), p)
            });
            field::add(acc, v, p)
        })
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide
    /// `self` (or is zero).
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.check_ctx(divisor).ok()?;
        let (lm, lc) = divisor.leading_term()?;
        let p = self.p();
        let lc_inv = field::inv(lc, p);
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(lm)?;
            let qc = field::mul(rc, lc_inv, p);
            let step = divisor.mul_term(&qm, field::neg(qc, p)).ok()?;
            quot.insert(qm, qc);
            rem = rem.try_add(&step).ok()?;
        }
        Some(Poly::from_map(&self.ctx, quot))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            0 | 1 => self.clone(),
            lc => self.scale(field::inv(lc, self.p())),
        }
    }

    /// If `self = u * other` for a nonzero `u` in `F_p`, returns `u`.
    /// The units of `K` are exactly the nonzero constants, with or without
    /// parameters. Only `0 ~ 0` among zeros.
    pub fn associate_unit(&self, other: &Poly) -> Option<u32> {
        if self.check_ctx(other).is_err() || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(1);
        }
        let p = self.p();
        let u = field::mul(
            self.leading_coeff(),
            field::inv(other.leading_coeff(), p),
            p,
        );
        let same = self
            .terms
            .iter()
            .zip(other.terms.iter())
            .all(|((m1, &c1), (m2, &c2))| m1 == m2 && c1 == field::mul(u, c2, p));
        same.then_some(u)
    }

    pub fn is_associate(&self, other: &Poly) -> bool {
        self.associate_unit(other).is_some()
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// indexed by degree.
    pub(crate) fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut maps = vec![BTreeMap::new(); deg + 1];
        for (m, &c) in &self.terms {
            maps[m.exp(var) as usize].insert(m.with_exp(var, 0), c);
        }
        maps.into_iter()
            .map(|t| Poly::from_map(&self.ctx, t))
            .collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub(crate) fn from_coefficients_in(ctx: &Arc<Context>, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, &v) in &c.terms {
                terms.insert(m.with_exp(var, k as u32), v);
            }
        }
        Poly::from_map(ctx, terms)
    }

    /// Terms as `(exponents, coefficient)` pairs, leading term first.
    pub fn to_terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.terms().map(|(m, c)| (m.exps().to_vec(), c)).collect()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect(concat!("Poly::", stringify!($method)))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.p() - 1)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
