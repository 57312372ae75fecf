//! Seeded property suites over random instances.
//!
//! Each suite draws its instances from [`trial_rng`] and re-checks every
//! library verdict against an independent computation; the acceptance tests
//! and the `fuzz` subcommand run the same code.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::deriv::{Derivation, TupleF};
use crate::pconst::{
    b_algebra_membership, check_corollary1, check_corollary2, classify_two_vars,
    find_generator_two_vars, minimal_non_b_constant, Membership,
};
use crate::poly::{gcd, main_monomials_up_to, Context, Poly};
use crate::sample::{
    divergence_free_derivation, random_derivation, random_nonzero_poly, random_poly, trial_rng,
};

const MAX_REDRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Divergence of `d_F` and the determinant formula for `d_F`.
    DivZero,
    /// Two-variable Jacobian criterion against kernel search.
    Classification,
    /// Generator extraction from `d_f` and mutual membership.
    Generator,
    /// `dgcd(F) * d = h * d_F` for `d = g * d_F`.
    ScaledJacobian,
    /// `d_G` proportional to `d_F` for `G` built from constants of `d_F`.
    Quotient,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::DivZero,
        Suite::Classification,
        Suite::Generator,
        Suite::ScaledJacobian,
        Suite::Quotient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DivZero => "divzero",
            Suite::Classification => "thm2",
            Suite::Generator => "prop1",
            Suite::ScaledJacobian => "cor1",
            Suite::Quotient => "cor2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Section of the `divzero` suite checking that `div(d_F) = 0`.
pub const DIVERGENCE_SECTION: &str = "divergence";
/// Section of the `divzero` suite checking `d_F` against determinants.
pub const DETERMINANT_SECTION: &str = "determinant";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    /// Which family of identities the failed check belongs to.
    pub section: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: u64,
    pub seed: u64,
    /// Individual identities checked across all trials.
    pub checks: u64,
    /// Suite-specific tallies, e.g. how many sampled derivations were Jacobian.
    pub stats: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    trial: u64,
    section: &'static str,
    checks: u64,
    stats: BTreeMap<&'static str, u64>,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                trial: self.trial,
                section: self.section,
                message: what(),
            });
        }
    }

    fn fail(&mut self, message: String) {
        self.check(false, || message);
    }

    fn bump(&mut self, key: &'static str) {
        *self.stats.entry(key).or_default() += 1;
    }
}

pub fn run_suite(suite: Suite, trials: u64, seed: u64) -> SuiteReport {
    let mut tally = Tally {
        trial: 0,
        section: suite.name(),
        checks: 0,
        stats: BTreeMap::new(),
        failures: Vec::new(),
    };
    for index in 0..trials {
        tally.trial = index;
        tally.section = suite.name();
        let mut rng = trial_rng(seed, index);
        match suite {
            Suite::DivZero => divzero_trial(&mut rng, &mut tally),
            Suite::Classification => classification_trial(&mut rng, &mut tally),
            Suite::Generator => generator_trial(&mut rng, &mut tally),
            Suite::ScaledJacobian => scaled_jacobian_trial(&mut rng, &mut tally),
            Suite::Quotient => quotient_trial(&mut rng, &mut tally),
        }
    }
    SuiteReport {
        suite,
        trials,
        seed,
        checks: tally.checks,
        stats: tally.stats,
        failures: tally.failures,
    }
}

fn context(p: u32, n: usize) -> Arc<Context> {
    let names = ["x", "y", "z"];
    Context::plain(p, names[..n].iter().copied()).expect("valid context")
}

fn pick<R: Rng, T: Copy>(rng: &mut R, items: &[T]) -> T {
    *items.choose(rng).expect("nonempty")
}

/// Determinant by the permutation expansion, independent of the cofactor
/// expansion used by the library.
pub fn leibniz_det(m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    let ctx = m[0][0].ctx();
    let mut total = Poly::zero(ctx);
    for perm in permutations(k) {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = (0..k).fold(Poly::one(ctx), |acc, r| acc * &m[r][perm[r]]);
        total = if inversions % 2 == 0 {
            total + term
        } else {
            total - term
        };
    }
    total
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in permutations(k - 1) {
        for pos in 0..=smaller.len() {
            let mut perm = smaller.clone();
            perm.insert(pos, k - 1);
            out.push(perm);
        }
    }
    out
}

fn jacobian_rows(fs: &[Poly], cols: &[usize]) -> Vec<Vec<Poly>> {
    fs.iter()
        .map(|f| {
            cols.iter()
                .map(|&c| f.pdiff(c).expect("main variable"))
                .collect()
        })
        .collect()
}

fn divzero_trial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = pick(rng, &[2, 3, 5]);
    let n = pick(rng, &[2, 3]);
    let ctx = context(p, n);
    let fs: Vec<Poly> = (0..n - 1).map(|_| random_poly(rng, &ctx, 3, 0.5)).collect();
    let tuple = TupleF::new(&ctx, fs.clone()).expect("n - 1 entries");
    let d = tuple.jacobian_derivation().expect("n - 1 entries");
    t.section = DIVERGENCE_SECTION;
    t.check(d.divergence().is_zero(), || {
        format!("p={p} n={n}: divergence of d_F is nonzero")
    });
    t.section = DETERMINANT_SECTION;
    for f in &fs {
        t.check(d.apply_unchecked(f).is_zero(), || {
            format!("p={p} n={n}: d_F({f}) != 0")
        });
    }
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..5 {
        let g = random_poly(rng, &ctx, 3, 0.5);
        let mut rows = fs.clone();
        rows.push(g.clone());
        let det = leibniz_det(&jacobian_rows(&rows, &all));
        t.check(d.apply_unchecked(&g) == det, || {
            format!("p={p} n={n}: d_F({g}) differs from the determinant")
        });
    }
    for i in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let minor = leibniz_det(&jacobian_rows(&fs, &cols));
        // (-1)^(n+i) with 1-based i
        let expected = if (n + i + 1) % 2 == 0 { minor } else { -minor };
        t.check(*d.image(i) == expected, || {
            format!(
                "p={p} n={n}: image {} does not match the signed minor",
                i + 1
            )
        });
    }
}

/// Coprime two-variable derivation of degree <= 3, drawn from a mix of
/// plain, divergence-free and Jacobian constructions.
fn coprime_two_var_derivation(rng: &mut ChaCha8Rng, ctx: &Arc<Context>) -> Option<Derivation> {
    for _ in 0..MAX_REDRAWS {
        let d = match rng.gen_range(0..3) {
            0 => random_derivation(rng, ctx, 3),
            1 => match divergence_free_derivation(rng, ctx, 3) {
                Some(d) => d,
                None => continue,
            },
            _ => {
                let f = random_poly(rng, ctx, 4, 0.4);
                let d = TupleF::new(ctx, vec![f]).ok()?.jacobian_derivation().ok()?;
                if d.is_zero() {
                    continue;
                }
                d.primitive_part().ok()?.1
            }
        };
        if !d.is_zero() && d.is_irreducible().unwrap_or(false) {
            return Some(d);
        }
    }
    None
}

fn classification_trial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = pick(rng, &[2, 3]);
    let ctx = context(p, 2);
    let Some(d) = coprime_two_var_derivation(rng, &ctx) else {
        t.fail("could not draw a coprime derivation".into());
        return;
    };
    let bound = 4 * p;
    let report = match classify_two_vars(&d) {
        Ok(r) => r,
        Err(e) => return t.fail(format!("classify failed on {d:?}: {e}")),
    };
    let found = match minimal_non_b_constant(&d, bound) {
        Ok(r) => r,
        Err(e) => return t.fail(format!("kernel search failed on {d:?}: {e}")),
    };
    if report.divergence_zero {
        t.bump("divergence_zero");
    }
    if report.is_jacobian {
        t.bump("jacobian");
    }
    t.check(
        report.is_jacobian == (report.divergence_zero && found.is_some()),
        || {
            format!(
                "p={p} {d:?}: is_jacobian = {} but non-B constant found = {}",
                report.is_jacobian,
                found.is_some()
            )
        },
    );
    if report.divergence_zero {
        t.check(report.kernel_is_b == Some(found.is_none()), || {
            format!(
                "p={p} {d:?}: kernel_is_B = {:?} but non-B constant found = {}",
                report.kernel_is_b,
                found.is_some()
            )
        });
    }
    if !report.is_jacobian {
        t.check(
            !report.divergence_zero || !report.a_top.is_zero() || !report.b_top.is_zero(),
            || format!("p={p} {d:?}: not Jacobian yet every coefficient test passes"),
        );
        return;
    }
    match find_generator_two_vars(&d, bound) {
        Ok((f, c)) => {
            t.bump("generator_certified");
            let df = TupleF::new(&ctx, vec![f.clone()])
                .and_then(|tf| tf.jacobian_derivation())
                .expect("one entry in two variables");
            t.check(df.scale(c) == d, || {
                format!("p={p} {d:?}: d != {c} * d_f for f = {f}")
            });
            let fx = f.pdiff(0).expect("main variable");
            let fy = f.pdiff(1).expect("main variable");
            match gcd(&fx, &fy) {
                Ok(fbar) => t.check(d.apply_unchecked(&fbar).is_zero() && fbar.is_in_b(), || {
                    format!("p={p} {d:?}: gcd of partials {fbar} is not a constant in B")
                }),
                Err(e) => t.fail(format!("p={p} {d:?}: gcd of partials failed: {e}")),
            }
        }
        Err(e) => t.fail(format!(
            "p={p} {d:?}: Jacobian but no certified generator: {e}"
        )),
    }
}

fn membership_holds(f: &Poly, generator: &Poly, cap: u32) -> Result<bool, String> {
    let gens = TupleF::new(generator.ctx(), vec![generator.clone()]).map_err(|e| e.to_string())?;
    match b_algebra_membership(f, &gens, cap).map_err(|e| e.to_string())? {
        Membership::NotWithinCap => Ok(false),
        Membership::Member(parts) => {
            let back = parts.iter().fold(Poly::zero(f.ctx()), |acc, (e, b)| {
                acc + b * generator.pow(e[0])
            });
            Ok(back == *f && parts.iter().all(|(_, b)| b.is_in_b()))
        }
    }
}

fn generator_trial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let p = pick(rng, &[2, 3, 5]);
    let ctx = context(p, 2);
    let mut drawn = None;
    for _ in 0..MAX_REDRAWS {
        let f = random_poly(rng, &ctx, 4, 0.4);
        if f.is_in_b() {
            continue;
        }
        let partials = [f.pdiff(0).expect("x"), f.pdiff(1).expect("y")];
        if crate::poly::gcd_of(&ctx, &partials).is_ok_and(|g| g.is_unit()) {
            drawn = Some(f);
            break;
        }
    }
    let Some(f) = drawn else {
        return t.fail("could not draw f outside B with coprime partials".into());
    };
    let df = TupleF::new(&ctx, vec![f.clone()])
        .and_then(|tf| tf.jacobian_derivation())
        .expect("one entry in two variables");
    let (_, d) = match df.primitive_part() {
        Ok(pair) => pair,
        Err(e) => return t.fail(format!("p={p} f={f}: {e}")),
    };
    let max_image = d.images().iter().map(Poly::main_degree).max().unwrap_or(0);
    let bound = 2 * p * max_image.max(1);
    let (g, c) = match find_generator_two_vars(&d, bound) {
        Ok(pair) => pair,
        Err(e) => return t.fail(format!("p={p} f={f}: no generator: {e}")),
    };
    let dg = TupleF::new(&ctx, vec![g.clone()])
        .and_then(|tf| tf.jacobian_derivation())
        .expect("one entry in two variables");
    t.check(dg.scale(c) == d, || {
        format!("p={p} f={f}: d != {c} * d_g for g = {g}")
    });
    let cap = 2 * f.main_degree();
    for (a, b) in [(&f, &g), (&g, &f)] {
        match membership_holds(a, b, cap) {
            Ok(ok) => t.check(ok, || format!("p={p}: {a} not in B[{b}] within cap {cap}")),
            Err(e) => t.fail(format!("p={p}: membership of {a} in B[{b}] failed: {e}")),
        }
    }
}

/// `(F, g)` with `F` a p-independent `(n - 1)`-tuple and `g` nonzero.
fn independent_tuple_instance(rng: &mut ChaCha8Rng) -> Option<(Arc<Context>, TupleF, Poly)> {
    let p = pick(rng, &[2, 3, 5]);
    let n = pick(rng, &[2, 3]);
    let ctx = context(p, n);
    for _ in 0..MAX_REDRAWS {
        let fs = (0..n - 1)
            .map(|_| random_nonzero_poly(rng, &ctx, 2, 0.5))
            .collect();
        let tuple = TupleF::new(&ctx, fs).ok()?;
        if tuple.is_p_independent() {
            let g = random_nonzero_poly(rng, &ctx, 2, 0.5);
            return Some((ctx, tuple, g));
        }
    }
    None
}

fn scaled_jacobian_trial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let Some((ctx, f, g)) = independent_tuple_instance(rng) else {
        return t.fail("could not draw a p-independent tuple".into());
    };
    let df = f.jacobian_derivation().expect("n - 1 entries");
    let d = df.scaled_by(&g).expect("shared context");
    let h = match check_corollary1(&d, &f) {
        Ok(h) => h,
        Err(e) => return t.fail(format!("p={} F={:?} g={g}: {e}", ctx.p(), f.entries())),
    };
    let fbar = f.dgcd();
    let identity = d
        .images()
        .iter()
        .zip(df.images())
        .all(|(a, b)| &fbar * a == &h * b);
    t.check(identity, || {
        format!("F={:?} g={g}: dgcd * d != h * d_F", f.entries())
    });
    t.check(h.is_associate(&d.image_gcd()), || {
        format!(
            "F={:?} g={g}: h = {h} is not associate to the image gcd",
            f.entries()
        )
    });
    // for |F| = n - 1 the images of d_F are the maximal minors up to sign
    t.check(fbar.is_associate(&df.image_gcd()), || {
        format!(
            "F={:?}: dgcd is not associate to the gcd of the images of d_F",
            f.entries()
        )
    });
    t.check(h.is_associate(&(&g * &fbar)), || {
        format!(
            "F={:?} g={g}: h = {h} is not associate to g * dgcd",
            f.entries()
        )
    });
}

/// Random element of `B` of degree at most one in the `x_i^p`.
fn random_b_element(rng: &mut ChaCha8Rng, ctx: &Arc<Context>) -> Poly {
    let p = ctx.p();
    let mut terms: Vec<(Vec<u32>, i64)> = Vec::new();
    for e in main_monomials_up_to(ctx.n(), 1) {
        if rng.gen_bool(0.5) {
            terms.push((
                e.iter().map(|x| x * p).collect(),
                rng.gen_range(1..p) as i64,
            ));
        }
    }
    Poly::from_terms(ctx, terms)
}

fn quotient_trial(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let Some((ctx, f, _)) = independent_tuple_instance(rng) else {
        return t.fail("could not draw a p-independent tuple".into());
    };
    let entries = f.entries();
    let gs: Vec<Poly> = (0..entries.len())
        .map(|_| {
            let j = rng.gen_range(0..entries.len());
            let k = rng.gen_range(1..=2);
            let product = entries.iter().fold(Poly::one(&ctx), |acc, e| acc * e);
            random_b_element(rng, &ctx)
                + random_b_element(rng, &ctx) * entries[j].pow(k)
                + random_b_element(rng, &ctx) * product
        })
        .collect();
    let g = TupleF::new(&ctx, gs).expect("n - 1 entries");
    let df = f.jacobian_derivation().expect("n - 1 entries");
    let dg = g.jacobian_derivation().expect("n - 1 entries");
    let (a, b) = match check_corollary2(&f, &g) {
        Ok(pair) => pair,
        Err(e) => return t.fail(format!("F={:?} G={:?}: {e}", entries, g.entries())),
    };
    if !g.is_p_independent() {
        t.bump("p_dependent_g");
        t.check(a.is_zero() && b.is_one(), || {
            format!("G={:?}: expected (0, 1)", g.entries())
        });
        return;
    }
    t.check(!b.is_zero(), || {
        format!("F={:?}: zero denominator", entries)
    });
    let proportional = dg
        .images()
        .iter()
        .zip(df.images())
        .all(|(u, v)| &b * u == &a * v);
    t.check(proportional, || {
        format!("F={:?} G={:?}: d_G != (a/b) d_F", entries, g.entries())
    });
    let quotient_rule = &b * df.apply_unchecked(&a) - &a * df.apply_unchecked(&b);
    t.check(quotient_rule.is_zero(), || {
        format!("F={:?} G={:?}: d_F(a/b) != 0", entries, g.entries())
    });
}
