//! Verdict records rendered as text or JSON.
//!
//! JSON objects keep the field order of the structs below, polynomials are
//! strings in [`format_poly`] form, and undefined values are `null`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::format_poly;
use crate::fuzz::SuiteReport;
use crate::pconst::{HuntCandidate, HuntReport, JacobianWitness, KernelBasis, TwoVarReport};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub trait Report {
    type Json: Serialize;

    fn json_view(&self) -> Self::Json;

    fn text(&self) -> String;
}

/// Renders a report; identical reports give identical strings.
pub fn emit_report<R: Report>(report: &R, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Json => {
            serde_json::to_string_pretty(&report.json_view()).expect("report views serialize")
        }
    }
}

fn polys(fs: &[Poly]) -> Vec<String> {
    fs.iter().map(format_poly).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
pub struct TwoVarJson {
    divergence_zero: bool,
    coprime_images: bool,
    a_top: String,
    b_top: String,
    is_jacobian: bool,
    #[serde(rename = "kernel_is_B")]
    kernel_is_b: Option<bool>,
}

impl Report for TwoVarReport {
    type Json = TwoVarJson;

    fn json_view(&self) -> TwoVarJson {
        TwoVarJson {
            divergence_zero: self.divergence_zero,
            coprime_images: self.coprime_images,
            a_top: format_poly(&self.a_top),
            b_top: format_poly(&self.b_top),
            is_jacobian: self.is_jacobian,
            kernel_is_b: self.kernel_is_b,
        }
    }

    fn text(&self) -> String {
        let kernel = match self.kernel_is_b {
            Some(true) => "K[x^p, y^p]",
            Some(false) => "larger than K[x^p, y^p]",
            None => "undecided (needs coprime images and zero divergence)",
        };
        format!(
            "divergence zero: {}\ncoprime images: {}\na_top = {}\nb_top = {}\nJacobian: {}\nring of constants: {}",
            yes_no(self.divergence_zero),
            yes_no(self.coprime_images),
            self.a_top,
            self.b_top,
            yes_no(self.is_jacobian),
            kernel,
        )
    }
}

/// Result of the `generator` subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorOutcome {
    Found {
        f: Poly,
        c: u32,
    },
    NotJacobian,
    /// The images share the given factor.
    NotIrreducible(Poly),
}

#[derive(Serialize)]
pub struct GeneratorJson {
    status: &'static str,
    f: Option<String>,
    c: Option<u32>,
    common_factor: Option<String>,
}

impl Report for GeneratorOutcome {
    type Json = GeneratorJson;

    fn json_view(&self) -> GeneratorJson {
        match self {
            GeneratorOutcome::Found { f, c } => GeneratorJson {
                status: "found",
                f: Some(format_poly(f)),
                c: Some(*c),
                common_factor: None,
            },
            GeneratorOutcome::NotJacobian => GeneratorJson {
                status: "not_jacobian",
                f: None,
                c: None,
                common_factor: None,
            },
            GeneratorOutcome::NotIrreducible(g) => GeneratorJson {
                status: "not_irreducible",
                f: None,
                c: None,
                common_factor: Some(format_poly(g)),
            },
        }
    }

    fn text(&self) -> String {
        match self {
            GeneratorOutcome::Found { f, c } => format!("f = {f}, c = {c}"),
            GeneratorOutcome::NotJacobian => {
                "not Jacobian: the ring of constants is K[x^p, y^p]".to_string()
            }
            GeneratorOutcome::NotIrreducible(g) => {
                format!("not irreducible: the images share the factor {g}")
            }
        }
    }
}

/// Result of the `certify` subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(JacobianWitness),
    Rejected(String),
}

#[derive(Serialize)]
pub struct CertifyJson {
    status: &'static str,
    tuple: Option<Vec<String>>,
    c: Option<u32>,
    dgcd: Option<String>,
    reason: Option<String>,
}

impl Report for CertifyOutcome {
    type Json = CertifyJson;

    fn json_view(&self) -> CertifyJson {
        match self {
            CertifyOutcome::Certified(w) => CertifyJson {
                status: "certified",
                tuple: Some(polys(w.tuple.entries())),
                c: Some(w.c),
                dgcd: Some(format_poly(&w.dgcd_value)),
                reason: None,
            },
            CertifyOutcome::Rejected(reason) => CertifyJson {
                status: "rejected",
                tuple: None,
                c: None,
                dgcd: None,
                reason: Some(reason.clone()),
            },
        }
    }

    fn text(&self) -> String {
        match self {
            CertifyOutcome::Certified(w) => format!(
                "certified: d = {} * d_F for F = ({}), dgcd = {}",
                w.c,
                polys(w.tuple.entries()).join(", "),
                w.dgcd_value
            ),
            CertifyOutcome::Rejected(reason) => format!("rejected: {reason}"),
        }
    }
}

/// A single named polynomial, e.g. a divergence or a dgcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyReport {
    pub label: &'static str,
    pub value: Poly,
}

impl Report for PolyReport {
    type Json = BTreeMap<&'static str, String>;

    fn json_view(&self) -> Self::Json {
        BTreeMap::from([(self.label, format_poly(&self.value))])
    }

    fn text(&self) -> String {
        format!("{} = {}", self.label, self.value)
    }
}

#[derive(Serialize)]
pub struct KernelJson {
    degree_bound: u32,
    dimension: usize,
    basis: Vec<String>,
}

impl Report for KernelBasis {
    type Json = KernelJson;

    fn json_view(&self) -> KernelJson {
        KernelJson {
            degree_bound: self.degree_bound(),
            dimension: self.dimension(),
            basis: polys(self.basis()),
        }
    }

    fn text(&self) -> String {
        let mut out = format!(
            "constants of degree <= {}: dimension {}",
            self.degree_bound(),
            self.dimension()
        );
        for g in self.basis() {
            write!(out, "\n  {g}").unwrap();
        }
        out
    }
}

#[derive(Serialize)]
pub struct HuntCandidateJson {
    trial: u64,
    images: Vec<String>,
    kernel_bound: u32,
    kernel_dimension: usize,
    pairs_tried: usize,
    p_independent_pairs: usize,
    first_dgcd: Option<String>,
    d_of_first_dgcd: Option<String>,
    status: &'static str,
}

#[derive(Serialize)]
pub struct HuntJson {
    candidates: Vec<HuntCandidateJson>,
}

fn candidate_json(c: &HuntCandidate) -> HuntCandidateJson {
    HuntCandidateJson {
        trial: c.trial,
        images: polys(c.derivation.images()),
        kernel_bound: c.kernel_bound,
        kernel_dimension: c.kernel_dimension,
        pairs_tried: c.pairs_tried,
        p_independent_pairs: c.p_independent_pairs,
        first_dgcd: c.first_dgcd.as_ref().map(format_poly),
        d_of_first_dgcd: c.d_of_first_dgcd.as_ref().map(format_poly),
        status: c.status,
    }
}

impl Report for HuntReport {
    type Json = HuntJson;

    fn json_view(&self) -> HuntJson {
        HuntJson {
            candidates: self.candidates.iter().map(candidate_json).collect(),
        }
    }

    fn text(&self) -> String {
        let cfg = &self.config;
        let mut out = format!(
            "hunt over F_{}[x, y, z]: deg <= {}, {} trials, seed {}\n\
             {} derivations passed the filters, {} without a witness\n\
             note: a candidate means no witness was found within the search bounds; it is not a proof that d is non-Jacobian",
            cfg.p,
            cfg.deg,
            cfg.trials,
            cfg.seed,
            self.screened,
            self.candidates.len()
        );
        for c in &self.candidates {
            write!(
                out,
                "\ntrial {}: d = ({})\n  constants outside B up to degree {}: {}; pairs tried {}, p-independent {}",
                c.trial,
                polys(c.derivation.images()).join(", "),
                c.kernel_bound,
                c.kernel_dimension,
                c.pairs_tried,
                c.p_independent_pairs
            )
            .unwrap();
            if let (Some(g), Some(dg)) = (&c.first_dgcd, &c.d_of_first_dgcd) {
                write!(out, "\n  first dgcd = {g}, d(dgcd) = {dg}").unwrap();
            }
            write!(out, "\n  status: {}", c.status).unwrap();
        }
        out
    }
}

#[derive(Serialize)]
pub struct FailureJson {
    trial: u64,
    section: &'static str,
    message: String,
}

#[derive(Serialize)]
pub struct SuiteJson {
    suite: &'static str,
    trials: u64,
    seed: u64,
    checks: u64,
    passed: bool,
    stats: BTreeMap<&'static str, u64>,
    failures: Vec<FailureJson>,
}

impl Report for SuiteReport {
    type Json = SuiteJson;

    fn json_view(&self) -> SuiteJson {
        SuiteJson {
            suite: self.suite.name(),
            trials: self.trials,
            seed: self.seed,
            checks: self.checks,
            passed: self.passed(),
            stats: self.stats.clone(),
            failures: self
                .failures
                .iter()
                .map(|f| FailureJson {
                    trial: f.trial,
                    section: f.section,
                    message: f.message.clone(),
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!(
            "suite {}: {} trials, seed {}, {} checks, {} failures",
            self.suite,
            self.trials,
            self.seed,
            self.checks,
            self.failures.len()
        );
        for (k, v) in &self.stats {
            write!(out, "\n  {k}: {v}").unwrap();
        }
        for f in &self.failures {
            write!(
                out,
                "\n  FAIL trial {} [{}]: {}",
                f.trial, f.section, f.message
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::Derivation;
    use crate::pconst::{classify_two_vars, HuntConfig};
    use crate::poly::Context;

    #[test]
    fn two_var_json_keys_and_values() {
        let ctx = Context::plain(2, ["x", "y"]).unwrap();
        let d = Derivation::new(&ctx, vec![Poly::var(&ctx, 0), Poly::var(&ctx, 1)]).unwrap();
        let r = classify_two_vars(&d).unwrap();
        let json = emit_report(&r, Format::Json);
        let compact: String = json.split_whitespace().collect();
        assert_eq!(
            compact,
            r#"{"divergence_zero":true,"coprime_images":true,"a_top":"0","b_top":"0","is_jacobian":true,"kernel_is_B":false}"#
        );
        assert_eq!(json, emit_report(&r, Format::Json));
    }

    #[test]
    fn empty_hunt_report() {
        let r = HuntReport {
            config: HuntConfig {
                p: 2,
                deg: 2,
                trials: 0,
                seed: 0,
            },
            screened: 0,
            candidates: vec![],
        };
        let compact: String = emit_report(&r, Format::Json).split_whitespace().collect();
        assert_eq!(compact, r#"{"candidates":[]}"#);
        assert!(emit_report(&r, Format::Text).contains("not a proof"));
    }

    #[test]
    fn generator_text_and_json() {
        let ctx = Context::plain(2, ["x", "y"]).unwrap();
        let f = Poly::var(&ctx, 0) * Poly::var(&ctx, 1);
        let out = GeneratorOutcome::Found { f, c: 1 };
        assert_eq!(emit_report(&out, Format::Text), "f = x*y, c = 1");
        let v: serde_json::Value = serde_json::from_str(&emit_report(&out, Format::Json)).unwrap();
        assert_eq!(v["status"], "found");
        assert_eq!(v["f"], "x*y");
        assert_eq!(v["c"], 1);
        let v: serde_json::Value =
            serde_json::from_str(&emit_report(&GeneratorOutcome::NotJacobian, Format::Json))
                .unwrap();
        assert_eq!(v["status"], "not_jacobian");
        assert!(v["f"].is_null() && v["c"].is_null());
    }
}
