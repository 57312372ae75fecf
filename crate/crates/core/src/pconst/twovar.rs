//! Two-variable classification: when is `d` Jacobian, and when is its ring
//! of constants just `K[x^p, y^p]`.

use super::{minimal_non_b_constant, require_no_params, ConstError};
use crate::deriv::{DerivError, Derivation, TupleF};
use crate::poly::{gcd, Poly};

/// Verdicts read off the `B`-expansions of `d(x)` and `d(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarReport {
    pub divergence_zero: bool,
    pub coprime_images: bool,
    /// `B`-coefficient of `y^(p-1)` in `d(x)`.
    pub a_top: Poly,
    /// `B`-coefficient of `x^(p-1)` in `d(y)`.
    pub b_top: Poly,
    pub is_jacobian: bool,
    /// Whether `K[x, y]^d = K[x^p, y^p]`; only decided for coprime images
    /// with zero divergence.
    pub kernel_is_b: Option<bool>,
}

fn require_two_vars(d: &Derivation) -> Result<(), ConstError> {
    if d.n() != 2 {
        return Err(ConstError::NotTwoVariables(d.n()));
    }
    if d.is_zero() {
        return Err(DerivError::ZeroDerivation.into());
    }
    Ok(())
}

pub fn classify_two_vars(d: &Derivation) -> Result<TwoVarReport, ConstError> {
    require_two_vars(d)?;
    let p = d.ctx().p();
    let divergence_zero = d.divergence().is_zero();
    let coprime_images = d.is_irreducible()?;
    let a_top = d.image(0).b_expand().component(&[0, p - 1]);
    let b_top = d.image(1).b_expand().component(&[p - 1, 0]);
    let tops_vanish = a_top.is_zero() && b_top.is_zero();
    Ok(TwoVarReport {
        divergence_zero,
        coprime_images,
        is_jacobian: divergence_zero && tops_vanish,
        kernel_is_b: (coprime_images && divergence_zero).then_some(!tops_vanish),
        a_top,
        b_top,
    })
}

/// For an irreducible Jacobian `d` in two variables, returns `(f, c)` with
/// `K[x, y]^d = K[x^p, y^p, f]` and `d = c * d_f`.
///
/// `f` is the minimal constant outside `B` found up to `max_degree`; the
/// result is accepted only after checking `d(f) = 0`, that the partials of
/// `f` are coprime and that `d` is a unit multiple of `d_f`.
pub fn find_generator_two_vars(d: &Derivation, max_degree: u32) -> Result<(Poly, u32), ConstError> {
    require_two_vars(d)?;
    require_no_params(d.ctx())?;
    let g = d.image_gcd();
    if !g.is_unit() {
        return Err(ConstError::NotIrreducible(g.to_string()));
    }
    if !classify_two_vars(d)?.is_jacobian {
        return Err(ConstError::NotJacobian);
    }
    let f = minimal_non_b_constant(d, max_degree)?.ok_or(ConstError::NoCandidate(max_degree))?;
    if !d.apply(&f)?.is_zero() {
        return Err(ConstError::Inconsistency(format!("{f} is not a constant")));
    }
    let fx = f.pdiff(0)?;
    let fy = f.pdiff(1)?;
    let fbar = gcd(&fx, &fy)?;
    if !fbar.is_unit() {
        return Err(ConstError::Inconsistency(format!(
            "partials of {f} share the factor {fbar}"
        )));
    }
    let df = TupleF::new(d.ctx(), vec![f.clone()])?.jacobian_derivation()?;
    let c = d.unit_ratio(&df).ok_or_else(|| {
        ConstError::Inconsistency(format!("d is not a unit multiple of d_f for f = {f}"))
    })?;
    Ok((f, c))
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

    fn der(ctx: &Arc<Context>, a: Poly, b: Poly) -> Derivation {
        Derivation::new(ctx, vec![a, b]).unwrap()
    }

    #[test]
    fn classify_worked_examples() {
        let (ctx, x, y) = ring(2);
        let r = classify_two_vars(&der(&ctx, x, y)).unwrap();
        assert!(r.divergence_zero && r.coprime_images && r.is_jacobian);
        assert!(r.a_top.is_zero() && r.b_top.is_zero());
        assert_eq!(r.kernel_is_b, Some(false));

        let (ctx, x, y) = ring(3);
        let r = classify_two_vars(&der(&ctx, y.pow(2), x.pow(2))).unwrap();
        assert!(r.divergence_zero);
        assert!(r.a_top.is_one() && r.b_top.is_one());
        assert!(!r.is_jacobian);
        assert_eq!(r.kernel_is_b, Some(true));

        let r = classify_two_vars(&der(&ctx, x.clone(), y.clone())).unwrap();
        assert!(!r.divergence_zero && !r.is_jacobian);
        assert_eq!(r.kernel_is_b, None);
    }

    #[test]
    fn top_coefficients_live_in_b() {
        // d(x) = y^2 * (1 + x^3) over F_3: a_top = 1 + x^3
        let (ctx, x, y) = ring(3);
        let a = y.pow(2) * (Poly::one(&ctx) + x.pow(3));
        let r = classify_two_vars(&der(&ctx, a, Poly::zero(&ctx))).unwrap();
        assert_eq!(r.a_top, Poly::one(&ctx) + x.pow(3));
        assert!(r.b_top.is_zero());
    }

    #[test]
    fn classify_rejects_bad_shapes() {
        let ctx = Context::plain(2, ["x", "y", "z"]).unwrap();
        assert_eq!(
            classify_two_vars(&Derivation::partial(&ctx, 0)),
            Err(ConstError::NotTwoVariables(3))
        );
        let (ctx, _, _) = ring(2);
        assert!(classify_two_vars(&Derivation::zero(&ctx)).is_err());
    }

    #[test]
    fn generators_of_worked_examples() {
        let (ctx, x, y) = ring(2);
        assert_eq!(
            find_generator_two_vars(&der(&ctx, x.clone(), y.clone()), 4),
            Ok((&x * &y, 1))
        );

        let (ctx, x, y) = ring(3);
        assert_eq!(
            find_generator_two_vars(&der(&ctx, y.clone(), x.scale(2)), 6),
            Ok((x.pow(2) + y.pow(2), 1))
        );
        // d_{xy} = (-x, y) = (2x, y), and (x, 2y) = 2 * (2x, y)
        assert_eq!(
            find_generator_two_vars(&der(&ctx, x.clone(), y.scale(2)), 6),
            Ok((&x * &y, 2))
        );
    }

    #[test]
    fn generator_errors() {
        let (ctx, x, y) = ring(3);
        assert_eq!(
            find_generator_two_vars(&der(&ctx, y.pow(2), x.pow(2)), 6),
            Err(ConstError::NotJacobian)
        );
        assert!(matches!(
            find_generator_two_vars(&der(&ctx, x.clone() * &y, y.pow(2)), 6),
            Err(ConstError::NotIrreducible(_))
        ));
        // d = d_f for f = x^4 + y of degree 4; a bound of 2 is too small
        let d = der(&ctx, Poly::constant(&ctx, 2), x.pow(3));
        let err = find_generator_two_vars(&d, 2).unwrap_err();
        assert!(err.is_bound_exceeded(), "{err}");
    }
}
