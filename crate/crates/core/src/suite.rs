//! Named batteries of checks with a deterministic report.

use serde_json::{json, Value};

use crate::checks::*;
use crate::error::{Error, Result};

/// Environment variable scaling every sample count (percent, default 100).
pub const SAMPLE_PERCENT_VAR: &str = "QAFFINE_SAMPLE_PERCENT";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub word_samples: usize,
    pub word_max_len: usize,
    pub triple_samples: usize,
    pub element_samples: usize,
    pub pair_samples: usize,
    pub max_len: usize,
    pub mode_window: (i64, i64),
    pub idx_window: (i64, i64),
    pub identity_order: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            word_samples: 500,
            word_max_len: 5,
            triple_samples: 200,
            element_samples: 200,
            pair_samples: 200,
            max_len: 3,
            mode_window: (-3, 3),
            idx_window: (-4, 4),
            identity_order: 12,
        }
    }
}

impl RunConfig {
    /// Applies [`SAMPLE_PERCENT_VAR`] if set.
    pub fn from_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SAMPLE_PERCENT_VAR) {
            let pct: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("{SAMPLE_PERCENT_VAR} must be a non-negative integer, got {v:?}")))?;
            self = self.scaled(pct);
        }
        Ok(self)
    }

    pub fn scaled(mut self, percent: usize) -> Self {
        let f = |n: usize| (n * percent).div_ceil(100).max(1);
        self.word_samples = f(self.word_samples);
        self.triple_samples = f(self.triple_samples);
        self.element_samples = f(self.element_samples);
        self.pair_samples = f(self.pair_samples);
        self
    }

    fn spec(&self, samples: usize, max_len: usize) -> SampleSpec {
        SampleSpec {
            samples,
            max_len,
            mode_window: self.mode_window,
            idx_window: self.idx_window,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Identity18,
    Pbw,
    Omega,
    Kashiwara,
    Relations,
    Form,
    Verma,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Identity18,
        SuiteName::Pbw,
        SuiteName::Omega,
        SuiteName::Kashiwara,
        SuiteName::Relations,
        SuiteName::Form,
        SuiteName::Verma,
        SuiteName::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteName::Identity18 => "identity18",
            SuiteName::Pbw => "pbw",
            SuiteName::Omega => "omega",
            SuiteName::Kashiwara => "kashiwara",
            SuiteName::Relations => "relations",
            SuiteName::Form => "form",
            SuiteName::Verma => "verma",
            SuiteName::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .checks
            .iter()
            .flat_map(|c| {
                c.failures
                    .iter()
                    .map(move |f| json!({"check": c.name, "case": f.case, "lhs": f.lhs, "rhs": f.rhs}))
            })
            .collect();
        json!({
            "schemaVersion": 1,
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "failures": failures,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} cases={} failed={}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                c.failed
            ));
            for f in &c.failures {
                out.push_str(&format!("  case {}\n    lhs {}\n    rhs {}\n", f.case, f.lhs, f.rhs));
            }
        }
        out.push_str(&format!(
            "suite {} seed={} cases={} {}\n",
            self.suite,
            self.seed,
            self.cases(),
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn pbw(cfg: &RunConfig) -> Vec<CheckReport> {
    let words = cfg.spec(cfg.word_samples, cfg.word_max_len);
    vec![
        check_confluence(&words),
        check_idempotence(&words),
        check_associativity(&cfg.spec(cfg.triple_samples, cfg.max_len)),
    ]
}

fn omega(cfg: &RunConfig) -> Vec<CheckReport> {
    let spec = cfg.spec(cfg.element_samples, cfg.max_len);
    let mut out = vec![check_vanishing(cfg.max_len, cfg.mode_window), check_omega_grading(&spec)];
    for rel in OmegaRelation::ALL {
        out.push(check_omega_relation(rel, &spec));
    }
    out
}

fn kashiwara(cfg: &RunConfig) -> Vec<CheckReport> {
    let spec = cfg.spec(cfg.element_samples, cfg.max_len);
    let mut out = check_kashiwara_relations(&spec);
    out.extend(check_alpha_bar(&spec));
    out.push(check_quotient(&spec));
    out
}

fn form(cfg: &RunConfig) -> Vec<CheckReport> {
    let mut out = check_form(&cfg.spec(cfg.pair_samples, cfg.max_len));
    out.push(check_length_one_pairing(cfg.mode_window));
    out.push(check_gram_probes());
    out
}

fn verma(cfg: &RunConfig) -> Vec<CheckReport> {
    let spec = cfg.spec(cfg.element_samples, cfg.max_len);
    let mut out = vec![
        check_verma_ideal(&spec),
        check_xplus_single(&[0, 1, 2], cfg.mode_window),
        check_dual_path(&[0, 1, 2], (1, 6), 2, (-2, 2)),
    ];
    out.extend(check_drinfeld(&spec));
    out.push(check_singular());
    out.push(check_lemma62());
    out
}

pub fn run_suite(name: SuiteName, cfg: &RunConfig) -> SuiteReport {
    let checks = match name {
        SuiteName::Identity18 => vec![check_identity(cfg.identity_order)],
        SuiteName::Pbw => pbw(cfg),
        SuiteName::Omega => omega(cfg),
        SuiteName::Kashiwara => kashiwara(cfg),
        SuiteName::Relations => [pbw(cfg), kashiwara(cfg)].concat(),
        SuiteName::Form => form(cfg),
        SuiteName::Verma => verma(cfg),
        SuiteName::All => [
            vec![check_identity(cfg.identity_order)],
            pbw(cfg),
            omega(cfg),
            kashiwara(cfg),
            form(cfg),
            verma(cfg),
        ]
        .concat(),
    };
    SuiteReport {
        suite: name.name().to_string(),
        seed: cfg.seed,
        checks,
    }
}
