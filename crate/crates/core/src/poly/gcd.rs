//! Multivariate gcd over `F_p[t][x] = F_p[t, x]`.
//!
//! Recursive content / primitive-part decomposition: a polynomial is viewed
//! as univariate in its first occurring variable with coefficients in the
//! remaining ones, and the primitive parts are combined with the
//! subresultant PRS. Parameters are ordinary gcd variables here.

use std::sync::Arc;

use super::{Context, Poly, PolyError};

/// Greatest common divisor, made monic in the canonical term order.
/// `gcd(f, 0)` is the monic associate of `f`.
pub fn gcd(f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    f.check_ctx(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    Ok(gcd_rec(f, g).monic())
}

/// Monic gcd of a family; zero when every member is zero (or the family is
/// empty).
pub fn gcd_of<'a>(
    ctx: &Arc<Context>,
    polys: impl IntoIterator<Item = &'a Poly>,
) -> Result<Poly, PolyError> {
    let mut acc = Poly::zero(ctx);
    for f in polys {
        acc.check_ctx(f)?;
        if acc.is_unit() {
            break;
        }
        acc = gcd_rec(&acc, f);
    }
    Ok(acc.monic())
}

/// A gcd up to a unit factor.
fn gcd_rec(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(f.ctx());
    }
    if f.divides(g) {
        return f.clone();
    }
    if g.divides(f) {
        return g.clone();
    }
    let var = (0..f.ctx().num_vars())
        .find(|&v| f.involves(v) || g.involves(v))
        .expect("nonconstant polynomial involves a variable");
    if !f.involves(var) {
        return gcd_rec(f, &content_in(g, var));
    }
    if !g.involves(var) {
        return gcd_rec(&content_in(f, var), g);
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let cf = content(&fc);
    let cg = content(&gc);
    let c = gcd_rec(&cf, &cg);
    let pf = divide_all(&fc, &cf);
    let pg = divide_all(&gc, &cg);
    let h = if coprime_by_evaluation(&pf, &pg, var) {
        vec![Poly::one(f.ctx())]
    } else {
        subresultant_gcd(pf, pg)
    };
    c * Poly::from_coefficients_in(f.ctx(), var, &h)
}

const EVALUATION_POINTS: u64 = 24;

/// Cheap sufficient test that two primitive polynomials (coefficient vectors
/// in `var`) are coprime: if some substitution of the other variables keeps
/// the leading coefficient of `a` nonzero and leaves coprime univariate
/// images, the gcd has degree 0 in `var`, hence is a unit.
fn coprime_by_evaluation(a: &[Poly], b: &[Poly], var: usize) -> bool {
    let ctx = a[0].ctx();
    let p = ctx.p();
    let others: Vec<usize> = (0..ctx.num_vars()).filter(|&v| v != var).collect();
    let total = (p as u64)
        .checked_pow(others.len() as u32)
        .unwrap_or(u64::MAX)
        .min(EVALUATION_POINTS);
    let lead = a.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let mut point = vec![0u32; ctx.num_vars()];
    for index in 0..total {
        let mut k = index;
        for &v in &others {
            point[v] = (k % p as u64) as u32;
            k /= p as u64;
        }
        let ua = evaluate(a, &point);
        if ua.len() != lead + 1 {
            continue;
        }
        let ub = evaluate(b, &point);
        if univariate_gcd_degree(ua, ub, p) == 0 {
            return true;
        }
    }
    false
}

/// Coefficients (trimmed) of the univariate image after substituting `point`.
fn evaluate(coeffs: &[Poly], point: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = coeffs.iter().map(|c| c.evaluate(point)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> usize {
    use crate::field;
    loop {
        if b.is_empty() {
            return a.len().saturating_sub(1);
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a <- a mod b
        let inv = field::inv(*b.last().expect("nonempty"), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = field::mul(*a.last().expect("nonempty"), inv, p);
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = field::sub(a[shift + j], field::mul(q, bj, p), p);
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn content_in(f: &Poly, var: usize) -> Poly {
    content(&f.coefficients_in(var))
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut acc = Poly::zero(coeffs[0].ctx());
    for c in coeffs {
        if acc.is_unit() {
            break;
        }
        acc = gcd_rec(&acc, c);
    }
    acc
}

fn divide_all(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(u: &mut Vec<Poly>) {
    while u.len() > 1 && u.last().is_some_and(Poly::is_zero) {
        u.pop();
    }
}

fn is_zero_uni(u: &[Poly]) -> bool {
    u.iter().all(Poly::is_zero)
}

fn degree_uni(u: &[Poly]) -> usize {
    u.len() - 1
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree_uni(b);
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut e = degree_uni(a) + 1 - db;
    while !is_zero_uni(&r) && degree_uni(&r) >= db {
        let dr = degree_uni(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (j, bj) in b.iter().enumerate() {
            let k = j + dr - db;
            r[k] = &r[k] - &(&lr * bj);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(Poly::zero(lcb.ctx()));
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let scale = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &scale;
        }
    }
    r
}

/// Gcd of two primitive univariate polynomials (coefficient vectors indexed by
/// degree, both of positive degree), returned primitive.
fn subresultant_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if degree_uni(&a) < degree_uni(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let ctx = a[0].ctx().clone();
    let mut g = Poly::one(&ctx);
    let mut h = Poly::one(&ctx);
    loop {
        let delta = degree_uni(&a) - degree_uni(&b);
        let r = pseudo_rem(&a, &b);
        if is_zero_uni(&r) {
            let c = content(&b);
            return divide_all(&b, &c);
        }
        if degree_uni(&r) == 0 {
            return vec![Poly::one(&ctx)];
        }
        a = b;
        let denom = &g * &h.pow(delta as u32);
        b = divide_all(&r, &denom);
        g = a[degree_uni(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant scaling is exact"),
        };
    }
}
