//! Seeded search for three-variable derivations that look Jacobian by every
//! necessary condition we can test but for which no witness turns up.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{certify_jacobian_witness, non_b_constants, ConstError};
use crate::deriv::{Derivation, TupleF};
use crate::field::{is_prime, MAX_PRIME};
use crate::poly::{Context, Poly};
use crate::sample::{divergence_free_derivation, random_poly, trial_rng};

/// Status attached to every reported candidate.
pub const WITNESS_NOT_FOUND: &str = "witness not found within bounds";

const MAX_HUNT_DEGREE: u32 = 6;
const MAX_KERNEL_DEGREE: u32 = 10;
const MAX_PAIRS: usize = 400;
const DRAWS_PER_TRIAL: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HuntConfig {
    pub p: u32,
    pub deg: u32,
    pub trials: u64,
    pub seed: u64,
}

impl HuntConfig {
    /// Degree bound of the kernel search for each trial.
    pub fn kernel_bound(&self) -> u32 {
        (self.deg + self.p).min(MAX_KERNEL_DEGREE)
    }

    fn validate(&self) -> Result<(), ConstError> {
        if !is_prime(self.p) || self.p > MAX_PRIME {
            return Err(ConstError::InvalidParameters(format!(
                "p must be a prime <= {MAX_PRIME}, got {}",
                self.p
            )));
        }
        if self.deg == 0 || self.deg > MAX_HUNT_DEGREE {
            return Err(ConstError::InvalidParameters(format!(
                "deg must be between 1 and {MAX_HUNT_DEGREE}, got {}",
                self.deg
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntCandidate {
    pub trial: u64,
    pub derivation: Derivation,
    /// Dimension of the truncated projected kernel (constants with no
    /// `B`-component).
    pub kernel_dimension: usize,
    pub kernel_bound: u32,
    pub pairs_tried: usize,
    pub p_independent_pairs: usize,
    /// `dgcd` of the first p-independent pair, and `d` applied to it.
    pub first_dgcd: Option<Poly>,
    pub d_of_first_dgcd: Option<Poly>,
    pub status: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntReport {
    pub config: HuntConfig,
    /// Trials whose derivation passed the filters.
    pub screened: u64,
    pub candidates: Vec<HuntCandidate>,
}

/// Either a random divergence-free derivation, or `d_F / gcd` for a random
/// pair `F`: irreducible, with `F` among its constants, and Jacobian only if
/// some other pair has unit dgcd.
fn draw(rng: &mut ChaCha8Rng, ctx: &Arc<Context>, deg: u32) -> Option<Derivation> {
    if rng.gen_bool(0.5) {
        return divergence_free_derivation(rng, ctx, deg);
    }
    // entries of degree e give images of degree <= 2e - 2 before the gcd is
    // divided out
    let e = (deg + 2) / 2 + rng.gen_range(0..=1);
    let pair = vec![random_poly(rng, ctx, e, 0.5), random_poly(rng, ctx, e, 0.5)];
    let df = TupleF::new(ctx, pair).ok()?.jacobian_derivation().ok()?;
    if df.is_zero() {
        return None;
    }
    Some(df.primitive_part().ok()?.1)
}

enum Trial {
    Skipped,
    Witnessed,
    Candidate(HuntCandidate),
}

fn run_trial(ctx: &Arc<Context>, config: &HuntConfig, index: u64) -> Result<Trial, ConstError> {
    let mut rng = trial_rng(config.seed, index);
    let Some(d) = (0..DRAWS_PER_TRIAL)
        .filter_map(|_| draw(&mut rng, ctx, config.deg))
        .find(|d| !d.is_zero() && d.images().iter().all(|g| g.main_degree() <= config.deg))
    else {
        return Ok(Trial::Skipped);
    };
    if !d.is_irreducible()? || !d.divergence().is_zero() {
        return Ok(Trial::Skipped);
    }
    let bound = config.kernel_bound();
    let basis = non_b_constants(&d, bound)?;
    if basis.is_empty() {
        return Ok(Trial::Skipped);
    }
    let mut pairs_tried = 0;
    let mut independent = 0;
    let mut first_independent = None;
    'outer: for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if pairs_tried == MAX_PAIRS {
                break 'outer;
            }
            pairs_tried += 1;
            let f = TupleF::new(ctx, vec![basis[i].clone(), basis[j].clone()])?;
            if !f.is_p_independent() {
                continue;
            }
            independent += 1;
            // d = c * d_F with d irreducible already forces dgcd ~ 1, so the
            // cheap ratio test screens pairs before full certification
            let df = f.jacobian_derivation()?;
            if d.unit_ratio(&df).is_some() && certify_jacobian_witness(&d, &f).is_ok() {
                return Ok(Trial::Witnessed);
            }
            first_independent.get_or_insert(f);
        }
    }
    let first_dgcd = first_independent.map(|f| f.dgcd());
    let d_of_first_dgcd = first_dgcd.as_ref().map(|g| d.apply_unchecked(g));
    Ok(Trial::Candidate(HuntCandidate {
        trial: index,
        derivation: d,
        kernel_dimension: basis.len(),
        kernel_bound: bound,
        pairs_tried,
        p_independent_pairs: independent,
        first_dgcd,
        d_of_first_dgcd,
        status: WITNESS_NOT_FOUND,
    }))
}

/// Samples irreducible divergence-free derivations of `F_p[x, y, z]` with
/// images of degree at most `deg` and a constant outside `B`, and reports
/// those for which no pair of truncated kernel elements certifies `d` as
/// Jacobian. A candidate is only a lead: larger bounds or other pairs may
/// still produce a witness.
pub fn hunt_counterexamples(config: HuntConfig) -> Result<HuntReport, ConstError> {
    config.validate()?;
    let ctx = Context::plain(config.p, ["x", "y", "z"])?;
    let mut screened = 0;
    let mut candidates = Vec::new();
    for index in 0..config.trials {
        match run_trial(&ctx, &config, index)? {
            Trial::Skipped => {}
            Trial::Witnessed => screened += 1,
            Trial::Candidate(c) => {
                screened += 1;
                candidates.push(c);
            }
        }
    }
    Ok(HuntReport {
        config,
        screened,
        candidates,
    })
}
