//! Certificates that a derivation is Jacobian, and the identities relating
//! `d`, `d_F` and the differential gcd.

use super::ConstError;
use crate::deriv::{DerivError, Derivation, TupleF};
use crate::poly::Poly;

/// A tuple `F` of `n - 1` constants of `d` with unit dgcd and `d = c * d_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianWitness {
    pub tuple: TupleF,
    pub c: u32,
    pub dgcd_value: Poly,
}

impl JacobianWitness {
    /// `(c * f_1, f_2, ..)`, whose Jacobian derivation is exactly `d`.
    pub fn rescaled(&self) -> TupleF {
        let mut entries = self.tuple.entries().to_vec();
        entries[0] = entries[0].scale(self.c);
        TupleF::new(self.tuple.ctx(), entries).expect("same shape as the witness")
    }
}

/// Entries are p-independent over `B`: some Jacobian minor is nonzero.
pub fn is_p_independent(f: &TupleF) -> bool {
    f.is_p_independent()
}

fn require_codim_one(d: &Derivation, f: &TupleF) -> Result<(), ConstError> {
    if d.ctx() != f.ctx() {
        return Err(DerivError::Poly(crate::poly::PolyError::ContextMismatch).into());
    }
    if d.n() < 2 {
        return Err(DerivError::TooFewVariables.into());
    }
    if f.len() != d.n() - 1 {
        return Err(DerivError::WrongTupleSize {
            expected: d.n() - 1,
            got: f.len(),
        }
        .into());
    }
    Ok(())
}

fn require_constants(d: &Derivation, f: &TupleF) -> Result<(), ConstError> {
    for g in f.entries() {
        if !d.apply(g)?.is_zero() {
            return Err(ConstError::NotAConstant(g.to_string()));
        }
    }
    Ok(())
}

/// Checks that `F` witnesses `d` as a Jacobian derivation: every entry is a
/// constant of `d`, `dgcd(F)` is a unit and `d = c * d_F` for a unit `c`.
/// Such an `F` is a p-basis of the ring of constants over `B`.
pub fn certify_jacobian_witness(d: &Derivation, f: &TupleF) -> Result<JacobianWitness, ConstError> {
    require_codim_one(d, f)?;
    if d.is_zero() {
        return Err(DerivError::ZeroDerivation.into());
    }
    require_constants(d, f)?;
    let dgcd_value = f.dgcd();
    if !dgcd_value.is_unit() {
        return Err(ConstError::DgcdNotUnit(dgcd_value.to_string()));
    }
    let df = f.jacobian_derivation()?;
    let c = d.unit_ratio(&df).ok_or(ConstError::RatioNotUnit)?;
    Ok(JacobianWitness {
        tuple: f.clone(),
        c,
        dgcd_value,
    })
}

/// Returns `h` with `dgcd(F) * d = h * d_F`, after checking the identity at
/// every index and that `h` is associate to the gcd of the images of `d`.
pub fn check_corollary1(d: &Derivation, f: &TupleF) -> Result<Poly, ConstError> {
    require_codim_one(d, f)?;
    let fbar = f.dgcd();
    if fbar.is_zero() {
        return Err(ConstError::Precondition(
            "entries are p-dependent (dgcd = 0)".into(),
        ));
    }
    require_constants(d, f)?;
    let df = f.jacobian_derivation()?;
    let i = df
        .images()
        .iter()
        .position(|g| !g.is_zero())
        .ok_or_else(|| ConstError::Inconsistency("d_F vanishes although dgcd != 0".into()))?;
    let h = (&fbar * d.image(i)).div_exact(df.image(i)).ok_or_else(|| {
        ConstError::Inconsistency(format!(
            "d_F(x_{}) does not divide dgcd * d(x_{})",
            i + 1,
            i + 1
        ))
    })?;
    for (a, b) in d.images().iter().zip(df.images()) {
        if &fbar * a != &h * b {
            return Err(ConstError::Inconsistency("dgcd * d != h * d_F".into()));
        }
    }
    if !h.is_associate(&d.image_gcd()) {
        return Err(ConstError::Inconsistency(format!(
            "h = {h} is not associate to the gcd of the images"
        )));
    }
    Ok(h)
}

/// Writes `d_G = (a / b) * d_F` for tuples `G` of constants of `d_F`, and
/// checks `d_F(a / b) = 0` in the form `b * d_F(a) - a * d_F(b) = 0`.
/// A p-dependent `G` gives `(0, 1)`.
pub fn check_corollary2(f: &TupleF, g: &TupleF) -> Result<(Poly, Poly), ConstError> {
    let ctx = f.ctx();
    if g.ctx() != ctx {
        return Err(DerivError::Poly(crate::poly::PolyError::ContextMismatch).into());
    }
    if g.len() != f.len() {
        return Err(DerivError::WrongTupleSize {
            expected: f.len(),
            got: g.len(),
        }
        .into());
    }
    let df = f.jacobian_derivation()?;
    require_constants(&df, g)?;
    if !g.is_p_independent() {
        return Ok((Poly::zero(ctx), Poly::one(ctx)));
    }
    let dg = g.jacobian_derivation()?;
    let i = df
        .images()
        .iter()
        .position(|h| !h.is_zero())
        .ok_or_else(|| ConstError::Precondition("F is p-dependent, so d_F = 0".into()))?;
    let a = dg.image(i).clone();
    let b = df.image(i).clone();
    for (u, v) in dg.images().iter().zip(df.images()) {
        if &b * u != &a * v {
            return Err(ConstError::Inconsistency(
                "d_G is not proportional to d_F".into(),
            ));
        }
    }
    if !(&b * df.apply(&a)? - &a * df.apply(&b)?).is_zero() {
        return Err(ConstError::Inconsistency("d_F(a / b) != 0".into()));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Context;
    use std::sync::Arc;

    fn vars(p: u32, n: usize) -> (Arc<Context>, Vec<Poly>) {
        let names = ["x1", "x2", "x3", "x4"];
        let ctx = Context::plain(p, names[..n].iter().copied()).unwrap();
        let xs = (0..n).map(|i| Poly::var(&ctx, i)).collect();
        (ctx, xs)
    }

    #[test]
    fn p_independence_examples() {
        let (ctx, x) = vars(2, 2);
        assert!(is_p_independent(
            &TupleF::new(&ctx, vec![&x[0] + &x[1]]).unwrap()
        ));
        assert!(!is_p_independent(
            &TupleF::new(&ctx, vec![x[0].pow(2)]).unwrap()
        ));
        let (ctx, x) = vars(3, 2);
        let f = TupleF::new(&ctx, vec![x[0].clone(), &x[0] + x[1].pow(3)]).unwrap();
        assert!(!is_p_independent(&f));
    }

    #[test]
    fn certify_examples() {
        let (ctx, x) = vars(5, 3);
        let d = Derivation::partial(&ctx, 2);
        let f = TupleF::new(&ctx, vec![x[0].clone(), x[1].clone()]).unwrap();
        let w = certify_jacobian_witness(&d, &f).unwrap();
        assert_eq!(w.c, 1);
        assert!(w.dgcd_value.is_one());
        assert_eq!(w.rescaled().jacobian_derivation().unwrap(), d);

        let (ctx, x) = vars(2, 2);
        let d = Derivation::new(&ctx, x.clone()).unwrap();
        let f = TupleF::new(&ctx, vec![&x[0] * &x[1]]).unwrap();
        assert_eq!(certify_jacobian_witness(&d, &f).unwrap().c, 1);

        let f = TupleF::new(&ctx, vec![x[0].pow(2)]).unwrap();
        assert_eq!(
            certify_jacobian_witness(&d, &f),
            Err(ConstError::DgcdNotUnit("0".into()))
        );
        let f = TupleF::new(&ctx, vec![x[0].clone()]).unwrap();
        assert_eq!(
            certify_jacobian_witness(&d, &f),
            Err(ConstError::NotAConstant("x1".into()))
        );
    }

    #[test]
    fn certify_rescales_by_the_unit() {
        let (ctx, x) = vars(3, 2);
        let d = Derivation::new(&ctx, vec![x[0].clone(), x[1].scale(2)]).unwrap();
        let f = TupleF::new(&ctx, vec![&x[0] * &x[1]]).unwrap();
        let w = certify_jacobian_witness(&d, &f).unwrap();
        assert_eq!(w.c, 2);
        assert_eq!(w.rescaled().jacobian_derivation().unwrap(), d);
    }

    #[test]
    fn ratio_must_be_a_unit() {
        // x*y kills x * d_{xy}, but the ratio x is not a unit
        let (ctx, x) = vars(3, 2);
        let dxy = TupleF::new(&ctx, vec![&x[0] * &x[1]]).unwrap();
        let d = dxy.jacobian_derivation().unwrap().scaled_by(&x[0]).unwrap();
        assert_eq!(
            certify_jacobian_witness(&d, &dxy),
            Err(ConstError::RatioNotUnit)
        );
    }

    #[test]
    fn scaled_jacobian_examples() {
        let (ctx, x) = vars(3, 3);
        let d =
            Derivation::new(&ctx, vec![Poly::zero(&ctx), Poly::zero(&ctx), x[0].clone()]).unwrap();
        let f = TupleF::new(&ctx, vec![x[0].clone(), x[1].clone()]).unwrap();
        assert_eq!(check_corollary1(&d, &f), Ok(x[0].clone()));

        let (ctx, x) = vars(2, 2);
        let xy = &x[0] * &x[1];
        let f = TupleF::new(&ctx, vec![xy.clone()]).unwrap();
        let d = Derivation::new(&ctx, x.clone()).unwrap();
        assert_eq!(check_corollary1(&d, &f), Ok(Poly::one(&ctx)));

        let d = Derivation::new(&ctx, vec![x[0].pow(2) * &x[1], &x[0] * x[1].pow(2)]).unwrap();
        assert_eq!(check_corollary1(&d, &f), Ok(xy));
    }

    #[test]
    fn scaled_jacobian_nontrivial_dgcd() {
        // F = (x^2 y) over F_3: d_F = (-x^2, 2xy), dgcd = x
        let (ctx, x) = vars(3, 2);
        let f = TupleF::new(&ctx, vec![x[0].pow(2) * &x[1]]).unwrap();
        let d = Derivation::new(&ctx, vec![x[0].clone(), x[1].clone()]).unwrap();
        assert_eq!(f.dgcd(), x[0].clone());
        assert!(d.kills(&f.entries()[0]).unwrap());
        let h = check_corollary1(&d, &f).unwrap();
        assert!(h.is_associate(&Poly::one(&ctx)));
    }

    #[test]
    fn scaled_jacobian_preconditions() {
        let (ctx, x) = vars(2, 2);
        let d = Derivation::new(&ctx, x.clone()).unwrap();
        let f = TupleF::new(&ctx, vec![x[0].pow(2)]).unwrap();
        assert!(matches!(
            check_corollary1(&d, &f),
            Err(ConstError::Precondition(_))
        ));
        let f = TupleF::new(&ctx, vec![x[0].clone()]).unwrap();
        assert!(matches!(
            check_corollary1(&d, &f),
            Err(ConstError::NotAConstant(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let (ctx, x) = vars(3, 3);
        let f = TupleF::new(&ctx, vec![x[0].clone(), x[1].clone()]).unwrap();
        let g = TupleF::new(&ctx, vec![x[0].pow(2), x[1].clone()]).unwrap();
        let (a, b) = check_corollary2(&f, &g).unwrap();
        assert_eq!(a, &b * x[0].scale(2));

        let (ctx, x) = vars(2, 2);
        let xy = &x[0] * &x[1];
        let f = TupleF::new(&ctx, vec![xy.clone()]).unwrap();
        let g = TupleF::new(&ctx, vec![xy.pow(2) + &xy]).unwrap();
        let (a, b) = check_corollary2(&f, &g).unwrap();
        assert_eq!(a, b);

        let g = TupleF::new(&ctx, vec![x[0].pow(2)]).unwrap();
        assert_eq!(
            check_corollary2(&f, &g),
            Ok((Poly::zero(&ctx), Poly::one(&ctx)))
        );

        let g = TupleF::new(&ctx, vec![x[0].clone()]).unwrap();
        assert!(matches!(
            check_corollary2(&f, &g),
            Err(ConstError::NotAConstant(_))
        ));
    }
}
