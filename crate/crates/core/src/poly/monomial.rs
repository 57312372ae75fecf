use std::cmp::Ordering;

use smallvec::SmallVec;

use super::PolyError;

/// Exponent vector, main variables first, then parameters.
///
/// Ordered graded-lexicographically on the main exponents, ties broken
/// graded-lexicographically on the parameter exponents. This is a monomial
/// order, so it can drive division as well as printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
    n_main: u8,
}

impl Monomial {
    pub fn one(n_main: usize, n_total: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n_total),
            n_main: n_main as u8,
        }
    }

    pub fn from_exps(n_main: usize, exps: &[u32]) -> Self {
        debug_assert!(n_main <= exps.len());
        Monomial {
            exps: SmallVec::from_slice(exps),
            n_main: n_main as u8,
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn main_exps(&self) -> &[u32] {
        &self.exps[..self.n_main as usize]
    }

    pub fn param_exps(&self) -> &[u32] {
        &self.exps[self.n_main as usize..]
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    /// Total degree in the main variables only.
    pub fn main_degree(&self) -> u32 {
        self.main_exps().iter().sum()
    }

    pub fn param_degree(&self) -> u32 {
        self.param_exps().iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(Monomial {
            exps,
            n_main: self.n_main,
        })
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial {
            exps,
            n_main: self.n_main,
        })
    }

    pub fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.exps[var] = e;
        m
    }
}

fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_lex(self.main_exps(), other.main_exps())
            .then_with(|| graded_lex(self.param_exps(), other.param_exps()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All main-variable exponent vectors of total degree at most `bound`, in
/// ascending graded-lex order.
pub fn main_monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    for deg in 0..=bound {
        fill_degree(&mut cur, 0, deg, &mut out);
    }
    out.sort_by(|a, b| graded_lex(a, b));
    out
}

fn fill_degree(cur: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.to_vec());
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Number of monomials of total degree at most `bound` in `n` variables,
/// saturating instead of overflowing.
pub fn count_monomials_up_to(n: usize, bound: u32) -> u64 {
    // C(bound + n, n)
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (bound as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u32]| Monomial::from_exps(2, e);
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        // parameters only break ties
        let t = |e: &[u32]| Monomial::from_exps(1, e);
        assert!(t(&[1, 0]) > t(&[0, 5]));
        assert!(t(&[1, 1]) > t(&[1, 0]));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all = main_monomials_up_to(2, 3);
        assert_eq!(all.len(), 10);
        assert_eq!(count_monomials_up_to(2, 3), 10);
        let monos: Vec<Monomial> = all.iter().map(|e| Monomial::from_exps(2, e)).collect();
        assert!(monos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(main_monomials_up_to(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(count_monomials_up_to(4, 5), 126);
    }
}
