//! Bounded membership in `B[g_1, .., g_m]`.

use std::collections::BTreeMap;

use super::{require_no_params, ConstError, MAX_LINEAR_COLUMNS};
use crate::deriv::TupleF;
use crate::field;
use crate::poly::{count_monomials_up_to, main_monomials_up_to, Monomial, Poly};

/// Outcome of [`b_algebra_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `f = sum_e b_e * g^e`; the nonzero `b_e` in ascending order of `e`.
    Member(Vec<(Vec<u32>, Poly)>),
    /// No representation with coefficients inside the cap.
    NotWithinCap,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

fn exponent_vectors(m: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..p).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

/// Echelon form over `F_p` keyed by leading monomial; each pivot remembers
/// which columns it is a combination of.
struct Echelon {
    p: u32,
    width: usize,
    pivots: BTreeMap<Monomial, (Poly, Vec<u32>)>,
}

impl Echelon {
    /// Top-reduces `f`, keeping `remainder = f + sum_k combo_k * column_k`
    /// (for pivots, `f` itself is `sum_k combo_k * column_k`).
    fn reduce(&self, mut f: Poly, mut combo: Vec<u32>) -> (Poly, Vec<u32>) {
        loop {
            let Some((lead, c)) = f.leading_term().map(|(m, c)| (m.clone(), c)) else {
                return (f, combo);
            };
            let Some((piv, piv_combo)) = self.pivots.get(&lead) else {
                return (f, combo);
            };
            f = f - piv.scale(c);
            for (a, b) in combo.iter_mut().zip(piv_combo) {
                *a = field::sub(*a, field::mul(c, *b, self.p), self.p);
            }
        }
    }

    fn insert(&mut self, column: usize, f: Poly) {
        let mut combo = vec![0; self.width];
        combo[column] = 1;
        let (r, combo) = self.reduce(f, combo);
        if let Some((lead, c)) = r.leading_term().map(|(m, c)| (m.clone(), c)) {
            let inv = field::inv(c, self.p);
            let combo = combo.iter().map(|&a| field::mul(a, inv, self.p)).collect();
            self.pivots.insert(lead, (r.scale(inv), combo));
        }
    }
}

/// Decides whether `f = sum_e b_e * prod_i g_i^(e_i)` with `e` ranging over
/// `[0, p)^m` and every `b_e` in `B` of degree at most `cap` in the
/// generators `x_i^p` of `B` (so of main degree at most `p * cap`).
pub fn b_algebra_membership(f: &Poly, gens: &TupleF, cap: u32) -> Result<Membership, ConstError> {
    let ctx = gens.ctx();
    require_no_params(ctx)?;
    if f.ctx() != ctx {
        return Err(crate::poly::PolyError::ContextMismatch.into());
    }
    let (n, p) = (ctx.n(), ctx.p());
    let exps = exponent_vectors(gens.len(), p);
    let columns = (exps.len() as u64).saturating_mul(count_monomials_up_to(n, cap));
    if columns > MAX_LINEAR_COLUMNS {
        return Err(ConstError::BoundTooLarge {
            bound: cap,
            columns,
            limit: MAX_LINEAR_COLUMNS,
        });
    }
    let b_monomials: Vec<Vec<u32>> = main_monomials_up_to(n, cap)
        .into_iter()
        .map(|a| a.iter().map(|e| e * p).collect())
        .collect();
    let products: Vec<Poly> = exps
        .iter()
        .map(|e| {
            gens.entries()
                .iter()
                .zip(e)
                .fold(Poly::one(ctx), |acc, (g, &k)| acc * g.pow(k))
        })
        .collect();
    let width = exps.len() * b_monomials.len();
    let mut echelon = Echelon {
        p,
        width,
        pivots: BTreeMap::new(),
    };
    for (i, prod) in products.iter().enumerate() {
        for (j, mu) in b_monomials.iter().enumerate() {
            let column = prod
                .try_mul(&Poly::monomial(ctx, mu, 1))
                .map_err(ConstError::Poly)?;
            echelon.insert(i * b_monomials.len() + j, column);
        }
    }
    let (rest, combo) = echelon.reduce(f.clone(), vec![0; width]);
    if !rest.is_zero() {
        return Ok(Membership::NotWithinCap);
    }
    // f + sum combo_k * column_k = 0
    let mut out = Vec::new();
    for (i, e) in exps.iter().enumerate() {
        let terms = b_monomials
            .iter()
            .enumerate()
            .map(|(j, mu)| (mu.clone(), -(combo[i * b_monomials.len() + j] as i64)));
        let b = Poly::from_terms(ctx, terms);
        if !b.is_zero() {
            out.push((e.clone(), b));
        }
    }
    Ok(Membership::Member(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Context;

    fn setup() -> (std::sync::Arc<Context>, Poly, Poly) {
        let ctx = Context::plain(2, ["x", "y"]).unwrap();
        (ctx.clone(), Poly::var(&ctx, 0), Poly::var(&ctx, 1))
    }

    #[test]
    fn elements_of_b() {
        let (ctx, x, y) = setup();
        let xy = &x * &y;
        let gens = TupleF::new(&ctx, vec![xy.clone()]).unwrap();
        let f = xy.pow(2);
        assert_eq!(
            b_algebra_membership(&f, &gens, 2).unwrap(),
            Membership::Member(vec![(vec![0], f.clone())])
        );
    }

    #[test]
    fn odd_part_over_the_generator() {
        let (ctx, x, y) = setup();
        let xy = &x * &y;
        let gens = TupleF::new(&ctx, vec![xy.clone()]).unwrap();
        let f = xy.pow(3) + &xy;
        assert_eq!(
            b_algebra_membership(&f, &gens, 2).unwrap(),
            Membership::Member(vec![(vec![1], xy.pow(2) + Poly::one(&ctx))])
        );
        assert_eq!(
            b_algebra_membership(&f, &gens, 1).unwrap(),
            Membership::NotWithinCap
        );
    }

    #[test]
    fn x_is_not_generated_by_xy() {
        let (ctx, x, y) = setup();
        let gens = TupleF::new(&ctx, vec![&x * &y]).unwrap();
        for cap in 1..=4 {
            assert_eq!(
                b_algebra_membership(&x, &gens, cap).unwrap(),
                Membership::NotWithinCap
            );
        }
    }

    #[test]
    fn two_generators_reconstruct() {
        let ctx = Context::plain(3, ["x", "y", "z"]).unwrap();
        let (x, y, z) = (Poly::var(&ctx, 0), Poly::var(&ctx, 1), Poly::var(&ctx, 2));
        let g1 = &x + &y;
        let g2 = &y * &z;
        let gens = TupleF::new(&ctx, vec![g1.clone(), g2.clone()]).unwrap();
        let f = x.pow(3) * &g1 * g2.pow(2) + z.pow(3) + &g2;
        let Membership::Member(parts) = b_algebra_membership(&f, &gens, 1).unwrap() else {
            panic!("expected membership");
        };
        let back = parts.iter().fold(Poly::zero(&ctx), |acc, (e, b)| {
            acc + b * g1.pow(e[0]) * g2.pow(e[1])
        });
        assert_eq!(back, f);
        for (_, b) in &parts {
            assert!(b.is_in_b());
        }
    }

    #[test]
    fn cap_guard() {
        let (ctx, x, _) = setup();
        let gens = TupleF::new(&ctx, vec![x.clone()]).unwrap();
        assert!(matches!(
            b_algebra_membership(&x, &gens, 500),
            Err(ConstError::BoundTooLarge { .. })
        ));
    }
}
