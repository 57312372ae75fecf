//! `K`-derivations of `K[x_1, .., x_n]`.
//!
//! A derivation is stored by its images `d(x_1), .., d(x_n)`; parameters of
//! `K` are constants. Jacobian minors are computed by cofactor expansion,
//! which never divides and so stays exact over `F_p[t]`.

use std::sync::Arc;

use thiserror::Error;

use crate::poly::{gcd_of, Context, Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected {expected} images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("expected a tuple of {expected} polynomials, got {got}")]
    WrongTupleSize { expected: usize, got: usize },
    #[error("a tuple needs between 1 and {max} entries, got {got}")]
    TupleSize { max: usize, got: usize },
    #[error("column indices must be distinct main-variable indices")]
    BadColumns,
    #[error("the zero derivation is not allowed here")]
    ZeroDerivation,
    #[error("Jacobian derivations need at least two variables")]
    TooFewVariables,
}

/// The derivation `d = sum_i d(x_i) * d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    ctx: Arc<Context>,
    images: Vec<Poly>,
}

fn same_ctx(ctx: &Arc<Context>, f: &Poly) -> Result<(), PolyError> {
    if Arc::ptr_eq(ctx, f.ctx()) || **ctx == **f.ctx() {
        Ok(())
    } else {
        Err(PolyError::ContextMismatch)
    }
}

impl Derivation {
    pub fn new(ctx: &Arc<Context>, images: Vec<Poly>) -> Result<Self, DerivError> {
        if images.len() != ctx.n() {
            return Err(DerivError::WrongArity {
                expected: ctx.n(),
                got: images.len(),
            });
        }
        for g in &images {
            same_ctx(ctx, g)?;
        }
        Ok(Derivation {
            ctx: ctx.clone(),
            images,
        })
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        Derivation {
            ctx: ctx.clone(),
            images: vec![Poly::zero(ctx); ctx.n()],
        }
    }

    /// The partial derivative `d/dx_var` as a derivation.
    pub fn partial(ctx: &Arc<Context>, var: usize) -> Self {
        let mut d = Self::zero(ctx);
        d.images[var] = Poly::one(ctx);
        d
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// `d(f) = sum_i d(x_i) * df/dx_i`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, DerivError> {
        same_ctx(&self.ctx, f)?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Poly) -> Poly {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .fold(Poly::zero(&self.ctx), |acc, (i, g)| acc + g * f.partial(i))
    }

    pub fn kills(&self, f: &Poly) -> Result<bool, DerivError> {
        Ok(self.apply(f)?.is_zero())
    }

    /// Divergence `d* = sum_i d(d(x_i))/dx_i`.
    pub fn divergence(&self) -> Poly {
        self.images
            .iter()
            .enumerate()
            .fold(Poly::zero(&self.ctx), |acc, (i, g)| acc + g.partial(i))
    }

    /// The derivation `f * d`.
    pub fn scaled_by(&self, f: &Poly) -> Result<Derivation, DerivError> {
        same_ctx(&self.ctx, f)?;
        Ok(Derivation {
            ctx: self.ctx.clone(),
            images: self.images.iter().map(|g| f * g).collect(),
        })
    }

    pub fn scale(&self, c: u32) -> Derivation {
        Derivation {
            ctx: self.ctx.clone(),
            images: self.images.iter().map(|g| g.scale(c)).collect(),
        }
    }

    /// Monic gcd of the images; zero for the zero derivation.
    pub fn image_gcd(&self) -> Poly {
        gcd_of(&self.ctx, &self.images).expect("images share the context")
    }

    /// `(g, d / g)` with `g` the monic gcd of the images.
    pub fn primitive_part(&self) -> Result<(Poly, Derivation), DerivError> {
        if self.is_zero() {
            return Err(DerivError::ZeroDerivation);
        }
        let g = self.image_gcd();
        let images = self
            .images
            .iter()
            .map(|h| h.div_exact(&g).expect("gcd divides every image"))
            .collect();
        Ok((
            g,
            Derivation {
                ctx: self.ctx.clone(),
                images,
            },
        ))
    }

    /// Images coprime, i.e. their gcd is a unit.
    pub fn is_irreducible(&self) -> Result<bool, DerivError> {
        if self.is_zero() {
            return Err(DerivError::ZeroDerivation);
        }
        Ok(self.image_gcd().is_unit())
    }

    /// If `self = c * other` for a unit `c` of `F_p`, returns `c`.
    pub fn unit_ratio(&self, other: &Derivation) -> Option<u32> {
        if self.ctx != other.ctx {
            return None;
        }
        let i = other.images.iter().position(|g| !g.is_zero())?;
        let c = self.images[i].associate_unit(&other.images[i])?;
        let matches = self
            .images
            .iter()
            .zip(&other.images)
            .all(|(a, b)| *a == b.scale(c));
        matches.then_some(c)
    }
}

/// An ordered tuple `(f_1, .., f_m)` with `1 <= m <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleF {
    ctx: Arc<Context>,
    entries: Vec<Poly>,
}

impl TupleF {
    pub fn new(ctx: &Arc<Context>, entries: Vec<Poly>) -> Result<Self, DerivError> {
        if entries.is_empty() || entries.len() > ctx.n() {
            return Err(DerivError::TupleSize {
                max: ctx.n(),
                got: entries.len(),
            });
        }
        for f in &entries {
            same_ctx(ctx, f)?;
        }
        Ok(TupleF {
            ctx: ctx.clone(),
            entries,
        })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Jacobian determinant of the entries with respect to the main variables
    /// at `cols` (one column per entry, in the given order).
    pub fn jac_minor(&self, cols: &[usize]) -> Result<Poly, DerivError> {
        let n = self.ctx.n();
        if cols.len() != self.entries.len() || cols.iter().any(|&c| c >= n) {
            return Err(DerivError::BadColumns);
        }
        for (k, c) in cols.iter().enumerate() {
            if cols[..k].contains(c) {
                return Err(DerivError::BadColumns);
            }
        }
        Ok(self.minor_unchecked(cols))
    }

    fn minor_unchecked(&self, cols: &[usize]) -> Poly {
        let matrix: Vec<Vec<Poly>> = self
            .entries
            .iter()
            .map(|f| cols.iter().map(|&c| f.partial(c)).collect())
            .collect();
        determinant(&matrix)
    }

    /// The Jacobian derivation `d_F(g) = jac(f_1, .., f_{n-1}, g)`, with
    /// images `d_F(x_i) = (-1)^(n+i) * (minor omitting column i)`.
    pub fn jacobian_derivation(&self) -> Result<Derivation, DerivError> {
        let n = self.ctx.n();
        if n < 2 {
            return Err(DerivError::TooFewVariables);
        }
        if self.entries.len() != n - 1 {
            return Err(DerivError::WrongTupleSize {
                expected: n - 1,
                got: self.entries.len(),
            });
        }
        let images = (0..n)
            .map(|i| {
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.minor_unchecked(&cols);
                // 1-based sign (-1)^(n + i + 1) for 0-based i
                if (n + i + 1) % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            })
            .collect();
        Ok(Derivation {
            ctx: self.ctx.clone(),
            images,
        })
    }

    /// Differential gcd: monic gcd of all `m x m` Jacobian minors, zero iff
    /// the entries are p-dependent over `B`.
    pub fn dgcd(&self) -> Poly {
        let mut acc = Poly::zero(&self.ctx);
        for cols in combinations(self.ctx.n(), self.entries.len()) {
            let minor = self.minor_unchecked(&cols);
            acc = gcd_of(&self.ctx, [&acc, &minor]).expect("shared context");
            if acc.is_unit() {
                break;
            }
        }
        acc
    }

    /// Entries are p-independent over `B` exactly when some minor is nonzero.
    pub fn is_p_independent(&self) -> bool {
        combinations(self.ctx.n(), self.entries.len())
            .any(|cols| !self.minor_unchecked(&cols).is_zero())
    }
}

/// Full Jacobian determinant of `n` polynomials in `n` main variables.
pub fn jacobian(ctx: &Arc<Context>, fs: &[Poly]) -> Result<Poly, DerivError> {
    if fs.len() != ctx.n() {
        return Err(DerivError::WrongTupleSize {
            expected: ctx.n(),
            got: fs.len(),
        });
    }
    let all: Vec<usize> = (0..ctx.n()).collect();
    TupleF::new(ctx, fs.to_vec())?.jac_minor(&all)
}

/// Cofactor expansion along the first row.
fn determinant(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        k => {
            let mut acc = Poly::zero(m[0][0].ctx());
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * determinant(&sub);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                next = Some(succ);
                break;
            }
        }
        Some(cur)
    })
}
