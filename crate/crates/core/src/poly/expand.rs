use std::collections::BTreeMap;

use super::{Monomial, Poly};

/// Decomposition `f = sum_r f_r * x^r` over the basis `{x^r : 0 <= r_i < p}`
/// of `A` as a module over `B = K[x_1^p, .., x_n^p]`.
///
/// Every component has all main exponents divisible by `p`; components are
/// keyed by the residue vector `r`, and only nonzero ones are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BExpansion {
    owner: Poly,
    components: BTreeMap<Vec<u32>, Poly>,
}

impl BExpansion {
    pub fn owner(&self) -> &Poly {
        &self.owner
    }

    /// Component at residue vector `r` (zero when absent).
    pub fn component(&self, residue: &[u32]) -> Poly {
        self.components
            .get(residue)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.owner.ctx()))
    }

    /// Nonzero components in ascending residue order.
    pub fn components(&self) -> impl Iterator<Item = (&[u32], &Poly)> {
        self.components.iter().map(|(r, f)| (r.as_slice(), f))
    }

    /// `sum_r component(r) * x^r`; equals the owner.
    pub fn reconstruct(&self) -> Poly {
        let ctx = self.owner.ctx();
        let mut acc = Poly::zero(ctx);
        for (r, f) in &self.components {
            let mut exps = vec![0; ctx.num_vars()];
            exps[..r.len()].copy_from_slice(r);
            acc = acc + f * Poly::monomial(ctx, &exps, 1);
        }
        acc
    }
}

impl Poly {
    pub fn b_expand(&self) -> BExpansion {
        let ctx = self.ctx();
        let (n, p) = (ctx.n(), ctx.p());
        let mut buckets: BTreeMap<Vec<u32>, BTreeMap<Monomial, u32>> = BTreeMap::new();
        for (m, c) in self.terms() {
            let residue: Vec<u32> = m.main_exps().iter().map(|e| e % p).collect();
            let mut exps = m.exps().to_vec();
            for (e, r) in exps.iter_mut().zip(&residue) {
                *e -= r;
            }
            buckets
                .entry(residue)
                .or_default()
                .insert(Monomial::from_exps(n, &exps), c);
        }
        BExpansion {
            owner: self.clone(),
            components: buckets
                .into_iter()
                .map(|(r, t)| (r, Poly::from_map(ctx, t)))
                .collect(),
        }
    }

    /// The residue-zero component `f_(p)`: the terms whose main exponents are
    /// all divisible by `p`.
    pub fn fp_part(&self) -> Poly {
        let p = self.p();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.main_exps().iter().all(|e| e % p == 0))
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Poly::from_map(self.ctx(), terms)
    }

    /// Membership in `B = K[x_1^p, .., x_n^p]`.
    pub fn is_in_b(&self) -> bool {
        let p = self.p();
        self.terms
            .keys()
            .all(|m| m.main_exps().iter().all(|e| e % p == 0))
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::{Context, Poly};

    #[test]
    fn expansion_routes_terms_by_residue() {
        let ctx = Context::plain(2, ["x", "y"]).unwrap();
        let x = Poly::var(&ctx, 0);
        let y = Poly::var(&ctx, 1);
        let f = x.pow(3) + &x * &y;
        let e = f.b_expand();
        assert_eq!(e.component(&[1, 0]), x.pow(2));
        assert_eq!(e.component(&[1, 1]), Poly::one(&ctx));
        assert!(e.component(&[0, 0]).is_zero());
        assert_eq!(e.reconstruct(), f);

        let g = x.pow(2) + &x * &y + Poly::one(&ctx);
        let e = g.b_expand();
        assert_eq!(e.component(&[0, 0]), x.pow(2) + Poly::one(&ctx));
        assert_eq!(e.component(&[1, 1]), Poly::one(&ctx));
        assert_eq!(e.components().count(), 2);
    }

    #[test]
    fn p_th_power_is_pure_b() {
        for p in [2, 3, 5, 7] {
            let ctx = Context::plain(p, ["x", "y", "z"]).unwrap();
            let xp = Poly::var(&ctx, 0).pow(p);
            let e = xp.b_expand();
            assert_eq!(e.component(&[0, 0, 0]), xp);
            assert_eq!(e.components().count(), 1);
        }
    }

    #[test]
    fn fp_part_and_b_membership() {
        let ctx = Context::plain(3, ["x", "y"]).unwrap();
        let x = Poly::var(&ctx, 0);
        let y = Poly::var(&ctx, 1);
        let f = x.pow(3) + x.pow(2) * &y + y.pow(3);
        assert_eq!(f.fp_part(), x.pow(3) + y.pow(3));
        assert!((x.pow(3) + y.pow(3)).is_in_b());
        assert!(!(x.pow(3) + &x).is_in_b());
        assert!(Poly::zero(&ctx).is_in_b());

        let c2 = Context::plain(2, ["x", "y"]).unwrap();
        let (x, y) = (Poly::var(&c2, 0), Poly::var(&c2, 1));
        assert_eq!(
            (x.pow(2) + &x * &y + Poly::one(&c2)).fp_part(),
            x.pow(2) + Poly::one(&c2)
        );
        assert!((&x + &y).fp_part().is_zero());
    }

    #[test]
    fn parameters_do_not_affect_residues() {
        let ctx = Context::new(2, ["x"], ["t"]).unwrap();
        let t = Poly::var(&ctx, 1);
        let x = Poly::var(&ctx, 0);
        let f = &t * x.pow(2) + &t * &x;
        assert_eq!(f.fp_part(), &t * x.pow(2));
        assert!(t.is_in_b());
    }
}
