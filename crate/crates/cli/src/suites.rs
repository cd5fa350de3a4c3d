//! Verification suites selectable with `verify --suite`.

use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use qgrass::grass::dehom::{verify_dehom_roundtrip, verify_rho_minors, verify_sigma_table};
use qgrass::grass::relations::{
    naive_cycling_failures, plucker_forms, verify_muir_extension, verify_muir_row_example, verify_nonautomorphism,
    verify_relation_table, verify_three_term_plucker,
};
use qgrass::grass::{quadratic_relations, relation_in_span, verify_consecutive_normality, verify_dehom_qmatrix};
use qgrass::twist::cocycle::verify_cocycle_identity;
use qgrass::twist::minorset::{probe_report, verify_minor_set_cycling};
use qgrass::twist::theta::{verify_cocycle_table, verify_composite_all, verify_twisted_minors};
use qgrass::twist::{domain_probe, verify_theta_transport, verify_twisted_qmatrix, verify_z_model, MinorSet};
use qgrass::{Check, Report};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Cocycle,
    Composite,
    Cycle,
    Dehom,
    Domain,
    Muir,
    Nonauto,
    Plucker,
    Relations,
    Sigma,
    Theta,
    Twist,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Cocycle => "cocycle",
            Suite::Composite => "composite",
            Suite::Cycle => "cycle",
            Suite::Dehom => "dehom",
            Suite::Domain => "domain",
            Suite::Muir => "muir",
            Suite::Nonauto => "nonauto",
            Suite::Plucker => "plucker",
            Suite::Relations => "relations",
            Suite::Sigma => "sigma",
            Suite::Theta => "theta",
            Suite::Twist => "twist",
        }
    }

    /// Every concrete suite, in name order.
    pub fn concrete() -> Vec<Suite> {
        Suite::value_variants()
            .iter()
            .copied()
            .filter(|s| *s != Suite::All)
            .collect()
    }

    /// Why the suite does not apply at `(m, n)`, if it does not.
    pub fn inapplicable(self, m: usize, _n: usize) -> Option<String> {
        match self {
            Suite::Plucker if m != 2 => Some("the three-term Plücker relations need m = 2".into()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub m: usize,
    pub n: usize,
    pub suite: Suite,
    pub degree_bound: usize,
    pub seed: u64,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (m, n) = (self.m, self.n);
        if m == 0 || m >= n {
            return Err(CliError::Config(format!("need 1 <= m < n, got m = {m}, n = {n}")));
        }
        if n > u8::MAX as usize {
            return Err(CliError::Config(format!("n = {n} exceeds {}", u8::MAX)));
        }
        if !(1..=2).contains(&self.degree_bound) {
            return Err(CliError::Config(format!(
                "degree bound {} outside 1..=2",
                self.degree_bound
            )));
        }
        if let Some(why) = self.suite.inapplicable(m, n) {
            return Err(CliError::Config(format!(
                "suite {} does not apply: {why}",
                self.suite.name()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub suite: Suite,
    pub report: Report,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub suite: Suite,
    pub reason: String,
}

fn collect(parts: impl IntoIterator<Item = qgrass::Result<Report>>, label: &str) -> Report {
    let mut report = Report::new();
    for part in parts {
        match part {
            Ok(r) => report.extend(r),
            Err(e) => report.push(Check::fail("suite-error", json!({ "part": label }), e.to_string())),
        }
    }
    report
}

fn relations(m: usize, n: usize) -> Report {
    let discovered = quadratic_relations(m, n).map(|rels| {
        let mut r = Report::new();
        r.push(Check::ok_with(
            "quadratic-relation-count",
            json!({ "m": m, "n": n }),
            rels.len().to_string(),
        ));
        for (k, rel) in rels.iter().enumerate() {
            r.push(Check::ok_with(
                "quadratic-relation",
                json!({ "m": m, "n": n, "index": k }),
                rel.to_string(),
            ));
        }
        r
    });
    let mut parts = vec![verify_consecutive_normality(m, n), discovered];
    if (m, n) == (2, 4) {
        parts.push(verify_relation_table());
    }
    collect(parts, "relations")
}

fn plucker(m: usize, n: usize) -> Report {
    let mut parts = vec![verify_three_term_plucker(n)];
    if (m, n) == (2, 4) {
        parts.push(quadratic_relations(2, 4).map(|rels| {
            plucker_forms()
                .iter()
                .enumerate()
                .map(|(k, form)| {
                    Check::expect(
                        "plucker-form-in-span",
                        json!({ "m": 2, "n": 4, "form": k + 1 }),
                        relation_in_span(&rels, form, 2, 4),
                        || "form is not a consequence of the discovered relations".into(),
                    )
                })
                .collect()
        }));
    }
    collect(parts, "plucker")
}

fn nonauto(m: usize, n: usize) -> Report {
    if (m, n) == (2, 4) {
        return collect([verify_nonautomorphism()], "nonauto");
    }
    let check = naive_cycling_failures(m, n).map(|failures| {
        let params = json!({ "m": m, "n": n });
        match failures.first() {
            Some((rel, image)) => Report::from_iter([Check::ok_with(
                "naive-cycling-fails",
                params,
                format!("{} of the relations break; {rel} maps to {image}", failures.len()),
            )]),
            None => Report::from_iter([Check::fail(
                "naive-cycling-fails",
                params,
                "naive cycling preserves every relation",
            )]),
        }
    });
    collect([check], "nonauto")
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Report {
    let (m, n) = (cfg.m, cfg.n);
    match suite {
        Suite::All => unreachable!("expanded by run"),
        Suite::Cocycle => collect(
            [
                Ok(verify_cocycle_identity(cfg.samples, cfg.seed)),
                verify_cocycle_table(m, n),
            ],
            "cocycle",
        ),
        Suite::Composite => collect([verify_composite_all(m, n)], "composite"),
        Suite::Cycle => verify_minor_set_cycling(m, n),
        Suite::Dehom => collect(
            (1..=n).flat_map(|alpha| {
                [
                    verify_dehom_qmatrix(m, n, alpha),
                    verify_dehom_roundtrip(m, n, alpha),
                    verify_rho_minors(m, n, alpha),
                ]
            }),
            "dehom",
        ),
        Suite::Domain => {
            let empty = domain_probe(&MinorSet::empty(m, n), cfg.degree_bound, cfg.samples, cfg.seed)
                .map(|p| probe_report(&p, cfg.seed));
            let full = domain_probe(&MinorSet::all(m, n), cfg.degree_bound, cfg.samples, cfg.seed)
                .map(|p| probe_report(&p, cfg.seed));
            collect([empty, full], "domain")
        }
        Suite::Muir => collect([verify_muir_extension(m, n), verify_muir_row_example()], "muir"),
        Suite::Nonauto => nonauto(m, n),
        Suite::Plucker => plucker(m, n),
        Suite::Relations => relations(m, n),
        Suite::Sigma => collect([verify_sigma_table(m, n)], "sigma"),
        Suite::Theta => collect([verify_theta_transport(m, n)], "theta"),
        Suite::Twist => collect(
            [
                verify_twisted_qmatrix(m, n),
                verify_z_model(m, n),
                verify_twisted_minors(m, n),
            ],
            "twist",
        ),
    }
}

/// Runs the selected suite (or every applicable suite, in parallel) and
/// returns the runs ordered by suite name.
pub fn run(cfg: &SuiteConfig) -> Result<(Vec<SuiteRun>, Vec<Skipped>), CliError> {
    cfg.validate()?;
    let (selected, skipped): (Vec<Suite>, Vec<Skipped>) = if cfg.suite == Suite::All {
        let mut selected = Vec::new();
        let mut skipped = Vec::new();
        for s in Suite::concrete() {
            match s.inapplicable(cfg.m, cfg.n) {
                Some(reason) => skipped.push(Skipped { suite: s, reason }),
                None => selected.push(s),
            }
        }
        (selected, skipped)
    } else {
        (vec![cfg.suite], Vec::new())
    };
    let mut runs: Vec<SuiteRun> = selected
        .par_iter()
        .map(|&suite| {
            let start = Instant::now();
            let report = run_one(suite, cfg);
            SuiteRun {
                suite,
                report,
                elapsed_ms: start.elapsed().as_millis(),
            }
        })
        .collect();
    runs.sort_by_key(|r| r.suite.name());
    Ok((runs, skipped))
}
