//! Degree-truncated rings of constants by linear algebra over `F_p`.

use std::collections::HashMap;

use super::{require_no_params, ConstError};
use crate::deriv::{DerivError, Derivation};
use crate::linalg;
use crate::poly::{count_monomials_up_to, main_monomials_up_to, Monomial, Poly};

/// Ceiling on the number of unknown coefficients in one linear system.
pub const MAX_LINEAR_COLUMNS: u64 = 4096;

/// The constants of `d` of main degree at most `degree_bound`, as an
/// `F_p`-basis in reduced echelon form: each element is monic, its leading
/// monomial appears in no other element, and leading monomials increase
/// along the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    derivation: Derivation,
    degree_bound: u32,
    basis: Vec<Poly>,
}

impl KernelBasis {
    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn check_columns(n: usize, bound: u32) -> Result<(), ConstError> {
    let columns = count_monomials_up_to(n, bound);
    if columns > MAX_LINEAR_COLUMNS {
        return Err(ConstError::BoundTooLarge {
            bound,
            columns,
            limit: MAX_LINEAR_COLUMNS,
        });
    }
    Ok(())
}

/// Reduced echelon basis of the constants of `d` inside the span of the
/// given monomials (main exponents; the list must be ascending).
fn constants_in_span(d: &Derivation, monomials: &[Vec<u32>]) -> Vec<Poly> {
    let ctx = d.ctx();
    // columns in descending canonical order so pivots are leading monomials
    let cols: Vec<Poly> = monomials
        .iter()
        .rev()
        .map(|e| Poly::monomial(ctx, e, 1))
        .collect();
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let images: Vec<Poly> = cols.iter().map(|m| d.apply_unchecked(m)).collect();
    for img in &images {
        for (m, _) in img.terms() {
            let next = row_of.len();
            row_of.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix = vec![vec![0u32; cols.len()]; row_of.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            matrix[row_of[m]][j] = c;
        }
    }
    let mut basis: Vec<Poly> = linalg::nullspace(&matrix, cols.len(), ctx.p())
        .into_iter()
        .map(|v| {
            let terms = v
                .iter()
                .zip(monomials.iter().rev())
                .filter(|(&c, _)| c != 0)
                .map(|(&c, e)| (e.clone(), c as i64));
            Poly::from_terms(ctx, terms)
        })
        .collect();
    basis.reverse();
    basis
}

/// Constants of `d` of main degree at most `degree_bound`.
pub fn kernel_basis(d: &Derivation, degree_bound: u32) -> Result<KernelBasis, ConstError> {
    require_no_params(d.ctx())?;
    let n = d.ctx().n();
    check_columns(n, degree_bound)?;
    let monomials = main_monomials_up_to(n, degree_bound);
    Ok(KernelBasis {
        derivation: d.clone(),
        degree_bound,
        basis: constants_in_span(d, &monomials),
    })
}

fn non_b_monomials(n: usize, p: u32, bound: u32) -> Vec<Vec<u32>> {
    main_monomials_up_to(n, bound)
        .into_iter()
        .filter(|e| e.iter().any(|x| x % p != 0))
        .collect()
}

/// Reduced echelon basis of `{g - g_(p) : d(g) = 0}` truncated at
/// `degree_bound`, i.e. of the constants with no `B`-component.
pub fn non_b_constants(d: &Derivation, degree_bound: u32) -> Result<Vec<Poly>, ConstError> {
    require_no_params(d.ctx())?;
    let n = d.ctx().n();
    check_columns(n, degree_bound)?;
    Ok(constants_in_span(
        d,
        &non_b_monomials(n, d.ctx().p(), degree_bound),
    ))
}

/// A constant `r = g - g_(p)` of least main degree with `r_(p) = 0`, if one
/// exists up to `max_degree`.
///
/// Among those of least degree the representative is the echelon element
/// with the smallest leading monomial, made monic.
pub fn minimal_non_b_constant(d: &Derivation, max_degree: u32) -> Result<Option<Poly>, ConstError> {
    require_no_params(d.ctx())?;
    if d.is_zero() {
        return Err(DerivError::ZeroDerivation.into());
    }
    let n = d.ctx().n();
    let p = d.ctx().p();
    for bound in 1..=max_degree {
        check_columns(n, bound)?;
        let monomials = non_b_monomials(n, p, bound);
        if monomials
            .last()
            .is_none_or(|e| e.iter().sum::<u32>() < bound)
        {
            // no new unknowns at this degree
            continue;
        }
        let basis = constants_in_span(d, &monomials);
        if let Some(first) = basis.into_iter().next() {
            return Ok(Some(first));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Context;
    use std::sync::Arc;

    fn ring(p: u32) -> (Arc<Context>, Poly, Poly) {
        let ctx = Context::plain(p, ["x", "y"]).unwrap();
        (ctx.clone(), Poly::var(&ctx, 0), Poly::var(&ctx, 1))
    }

    #[test]
    fn euler_derivation_in_char_two() {
        let (ctx, x, y) = ring(2);
        let d = Derivation::new(&ctx, vec![x.clone(), y.clone()]).unwrap();
        let k = kernel_basis(&d, 2).unwrap();
        assert_eq!(k.basis(), &[Poly::one(&ctx), y.pow(2), &x * &y, x.pow(2)]);
        for g in k.basis() {
            assert!(d.apply(g).unwrap().is_zero());
        }
    }

    #[test]
    fn partial_derivative_constants() {
        let (ctx, _, y) = ring(2);
        let d = Derivation::partial(&ctx, 0);
        let k = kernel_basis(&d, 1).unwrap();
        assert_eq!(k.basis(), &[Poly::one(&ctx), y]);
    }

    #[test]
    fn degree_zero_is_just_constants() {
        let (ctx, x, y) = ring(5);
        let d = Derivation::new(&ctx, vec![y.pow(3), x + Poly::one(&ctx)]).unwrap();
        assert_eq!(kernel_basis(&d, 0).unwrap().basis(), &[Poly::one(&ctx)]);
    }

    #[test]
    fn minimal_constants_of_worked_examples() {
        let (ctx, x, y) = ring(2);
        let d = Derivation::new(&ctx, vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(minimal_non_b_constant(&d, 4).unwrap(), Some(&x * &y));

        let (ctx, x, y) = ring(3);
        let d = Derivation::new(&ctx, vec![y.clone(), x.scale(2)]).unwrap();
        assert_eq!(
            minimal_non_b_constant(&d, 4).unwrap(),
            Some(x.pow(2) + y.pow(2))
        );

        let d = Derivation::new(&ctx, vec![y.pow(2), x.pow(2)]).unwrap();
        assert_eq!(minimal_non_b_constant(&d, 6).unwrap(), None);
    }

    #[test]
    fn rejects_parameters_and_huge_bounds() {
        let ctx = Context::new(3, ["x", "y"], ["t"]).unwrap();
        let d = Derivation::partial(&ctx, 0);
        assert_eq!(kernel_basis(&d, 2), Err(ConstError::ParametersPresent));
        let (ctx, _, _) = ring(3);
        let d = Derivation::partial(&ctx, 0);
        assert!(matches!(
            kernel_basis(&d, 99999),
            Err(ConstError::BoundTooLarge { .. })
        ));
    }
}
