//! Seeded random polynomials and derivations.
//!
//! Every stream is a `ChaCha8Rng`, so a seed reproduces the same samples on
//! every platform.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::deriv::Derivation;
use crate::field;
use crate::poly::{main_monomials_up_to, Context, Poly};

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

fn padded(ctx: &Context, main: &[u32]) -> Vec<u32> {
    let mut exps = vec![0; ctx.num_vars()];
    exps[..main.len()].copy_from_slice(main);
    exps
}

/// Random polynomial in the main variables of main degree at most `deg`:
/// each monomial is kept with probability `density` and given a uniform
/// nonzero coefficient.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Arc<Context>, deg: u32, density: f64) -> Poly {
    random_poly_where(rng, ctx, deg, density, |_| true)
}

fn random_poly_where<R: Rng>(
    rng: &mut R,
    ctx: &Arc<Context>,
    deg: u32,
    density: f64,
    keep: impl Fn(&[u32]) -> bool,
) -> Poly {
    let p = ctx.p();
    let mut terms = Vec::new();
    for e in main_monomials_up_to(ctx.n(), deg) {
        if keep(&e) && rng.gen_bool(density) {
            terms.push((padded(ctx, &e), rng.gen_range(1..p) as i64));
        }
    }
    Poly::from_terms(ctx, terms)
}

/// As [`random_poly`] but never zero.
pub fn random_nonzero_poly<R: Rng>(
    rng: &mut R,
    ctx: &Arc<Context>,
    deg: u32,
    density: f64,
) -> Poly {
    loop {
        let f = random_poly(rng, ctx, deg, density);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random derivation with images of main degree at most `deg`.
pub fn random_derivation<R: Rng>(rng: &mut R, ctx: &Arc<Context>, deg: u32) -> Derivation {
    let images = (0..ctx.n())
        .map(|_| random_poly(rng, ctx, deg, 0.5))
        .collect();
    Derivation::new(ctx, images).expect("one image per variable")
}

/// Random derivation with zero divergence and images of degree at most
/// `deg`, or `None` when the draw cannot be integrated.
///
/// `d(x_2), .., d(x_n)` are drawn freely; `d(x_1)` is an antiderivative in
/// `x_1` of `-(sum_{i>1} d(d(x_i))/dx_i)` plus a random polynomial with
/// vanishing `x_1`-derivative. The antiderivative fails to exist when a term
/// has `x_1`-exponent `p - 1`.
pub fn divergence_free_derivation<R: Rng>(
    rng: &mut R,
    ctx: &Arc<Context>,
    deg: u32,
) -> Option<Derivation> {
    let n = ctx.n();
    let p = ctx.p();
    let mut images: Vec<Poly> = (0..n).map(|_| Poly::zero(ctx)).collect();
    let mut rest = Poly::zero(ctx);
    for (i, image) in images.iter_mut().enumerate().skip(1) {
        *image = random_poly(rng, ctx, deg, 0.5);
        rest = rest + image.partial(i);
    }
    let mut terms = Vec::new();
    for (m, c) in rest.terms() {
        let k = m.exp(0);
        if (k + 1) % p == 0 {
            return None;
        }
        let mut exps = m.exps().to_vec();
        exps[0] += 1;
        let coeff = field::mul(field::neg(c, p), field::inv((k + 1) % p, p), p);
        terms.push((exps, coeff as i64));
    }
    let free = random_poly_where(rng, ctx, deg, 0.5, |e| e[0] % p == 0);
    images[0] = Poly::from_terms(ctx, terms) + free;
    Some(Derivation::new(ctx, images).expect("one image per variable"))
}
