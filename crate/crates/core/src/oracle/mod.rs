//! Brute-force verifiers over bounded universes of small objects.
//!
//! Every verdict is relative to the universe it was computed over: a pass
//! reads "at bound k", never as a theorem. The checks here only use
//! exhaustive hom-set enumeration and class equality; they never call the
//! constructions they audit except to obtain the candidate under test.

mod adjunction;
mod conditions;
mod homs;
mod injectivity;
mod ump;
mod universe;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{EquilogError, Result};
use crate::quantale::{QValue, Quantale};
use crate::search::DEFAULT_SEARCH_BOUND;

pub use adjunction::{adjunction_universes, verify_adjunction};
pub use conditions::{condition_suite, ConditionReport, ConditionResult, ConditionStatus};
pub use homs::{enumerate_morphclasses, equ_class_key, pequ_class_key, HomEnum};
pub use injectivity::{extends_along, injectivity_test};
pub use ump::{
    verify_assm_exponential, verify_assm_subobject, verify_modest_reflection,
    verify_pequ_exponential, verify_r_full_faithful, verify_reflectivity,
    verify_universal_property, verify_vcat_exponential,
};
pub use universe::{
    assembly_universe, base_universe, canonical_equ, equ_universe, injective_universe,
    pequ_universe, random_equ, random_metric, random_topology, random_vcat, vcat_structures,
    vcat_universe,
};

/// Bounds for a sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Largest carrier of a competitor or test object.
    pub max_carrier: usize,
    /// Structure values used for quantales with infinite carriers.
    pub max_value_grid: Vec<QValue>,
    /// Wall-clock budget, checked between units of work.
    pub time_budget: Option<Duration>,
    /// Cap on any single raw search space.
    pub bound: u128,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_carrier: 3,
            max_value_grid: vec![QValue::num(0), QValue::num(1), QValue::INF],
            time_budget: None,
            bound: DEFAULT_SEARCH_BOUND,
        }
    }
}

impl SweepConfig {
    pub fn with_max_carrier(max_carrier: usize) -> Result<Self> {
        if max_carrier == 0 {
            return Err(EquilogError::Invalid(
                "max_carrier must be at least 1".into(),
            ));
        }
        Ok(SweepConfig {
            max_carrier,
            ..SweepConfig::default()
        })
    }

    /// The full carrier of a finite quantale, otherwise the grid values it
    /// contains.
    pub fn values_for(&self, q: Quantale) -> Vec<QValue> {
        q.carrier().unwrap_or_else(|| {
            self.max_value_grid
                .iter()
                .copied()
                .filter(|&v| q.contains(v))
                .collect()
        })
    }

    pub fn clock(&self) -> Clock {
        Clock {
            start: Instant::now(),
            budget: self.time_budget,
        }
    }
}

/// Elapsed-time guard for a sweep.
#[derive(Clone, Copy, Debug)]
pub struct Clock {
    start: Instant,
    budget: Option<Duration>,
}

impl Clock {
    pub fn check(&self, what: &str) -> Result<()> {
        match self.budget {
            Some(b) if self.start.elapsed() > b => Err(EquilogError::TimeBudget {
                what: what.to_string(),
                seconds: b.as_secs(),
            }),
            _ => Ok(()),
        }
    }
}

/// Outcome of a bounded check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    /// The carrier bound of the universe the check ran over.
    pub bound: usize,
    /// Number of elementary instances checked.
    pub checked: usize,
    /// A counterexample, present exactly on failure.
    pub certificate: Option<String>,
}

impl Verdict {
    pub fn pass(bound: usize, checked: usize) -> Self {
        Verdict {
            passed: true,
            bound,
            checked,
            certificate: None,
        }
    }

    pub fn fail(bound: usize, checked: usize, certificate: String) -> Self {
        Verdict {
            passed: false,
            bound,
            checked,
            certificate: Some(certificate),
        }
    }

    /// Conjunction in order: the first failure wins, counts add up.
    pub fn all(bound: usize, parts: impl IntoIterator<Item = Verdict>) -> Self {
        let mut checked = 0;
        for v in parts {
            checked += v.checked;
            if !v.passed {
                return Verdict { checked, ..v };
            }
        }
        Verdict::pass(bound, checked)
    }

    /// Collects per-instance outcomes (`None` is a pass) in order.
    pub(crate) fn from_outcomes(
        bound: usize,
        outcomes: Vec<Result<Option<String>>>,
    ) -> Result<Self> {
        let mut checked = 0;
        for o in outcomes {
            checked += 1;
            if let Some(cert) = o? {
                return Ok(Verdict::fail(bound, checked, cert));
            }
        }
        Ok(Verdict::pass(bound, checked))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.certificate {
            None => write!(f, "PASS at bound {} ({} checks)", self.bound, self.checked),
            Some(c) => write!(f, "FAIL at bound {}: {}", self.bound, c),
        }
    }
}

pub(crate) fn describe_base(b: &crate::base::Base) -> String {
    use crate::base::Base;
    match b {
        Base::VCat(x) => x.to_string(),
        Base::Top(t) => {
            let opens: Vec<String> = t.opens().iter().map(|&s| t.show(s)).collect();
            format!("Top [{}] opens {}", t.names().join(", "), opens.join(" "))
        }
        Base::App(a) => format!("App with point distances {}", a.to_metric()),
    }
}

fn show_blocks(names: &[String], blocks: Vec<Vec<usize>>) -> String {
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter()
                    .map(|&i| names[i].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    parts.join("")
}

pub(crate) fn describe_equ(e: &crate::equ::EquObj) -> String {
    format!(
        "{} with classes {}",
        describe_base(e.base()),
        show_blocks(e.base().names(), e.equiv().blocks())
    )
}

pub(crate) fn describe_pequ(p: &crate::pequ::PEquObj) -> String {
    format!(
        "{} with classes {}",
        p.base(),
        show_blocks(p.base().names(), p.per().blocks())
    )
}

pub(crate) fn describe_assm(a: &crate::assembly::Assembly) -> String {
    let parts: Vec<String> = (0..a.len())
        .map(|i| {
            let r: Vec<&str> = a
                .realizers(i)
                .into_iter()
                .map(|x| a.base().name(x))
                .collect();
            format!("{}:{{{}}}", a.elems()[i], r.join(","))
        })
        .collect();
    format!("assembly [{}] over {}", parts.join(" "), a.base())
}
