//! The structural axiom suite over `Z[v, v^-1]`.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ribbon::{
    check_balancing_with, check_braiding_intertwiner, check_braiding_inverse,
    check_duality_intertwiners, check_hexagons, check_pentagon, check_pivotal, check_yang_baxter,
    check_zigzags, twist_generic, AxiomFailure, TwistFn,
};
use crate::ring::Generic;
use crate::uqsl2::{check_relations, make_rep};

pub const MAX_SUITE_COLOR: u32 = 4;

/// Highest color for which the defining relations are checked, independent of `max_color`.
pub const RELATION_COLORS: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("max color {0} exceeds the runtime guard {MAX_SUITE_COLOR}")]
    ColorTooLarge(u32),
}

#[derive(Clone, Copy)]
pub struct SuiteConfig {
    pub max_color: u32,
    pub twist: TwistFn,
}

impl SuiteConfig {
    pub fn new(max_color: u32) -> Self {
        Self {
            max_color,
            twist: twist_generic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub max_color: u32,
    pub results: Vec<AxiomResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {} ({} cases)", r.name, r.cases)?;
            if let Some(w) = &r.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs every case in parallel and keeps the first failure in case order.
fn family<T: Sync>(
    name: &str,
    cases: Vec<T>,
    check: impl Fn(&T) -> Result<(), AxiomFailure> + Sync,
) -> AxiomResult {
    let outcomes: Vec<Result<(), AxiomFailure>> = cases.par_iter().map(&check).collect();
    let witness = outcomes
        .into_iter()
        .find_map(Result::err)
        .map(|f| f.to_string());
    AxiomResult {
        name: name.into(),
        cases: cases.len(),
        passed: witness.is_none(),
        witness,
    }
}

fn tuples(colors: &[u32], k: usize) -> Vec<Vec<u32>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                colors.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(*c);
                    t
                })
            })
            .collect()
    })
}

pub fn run_axiom_suite(max_color: u32) -> Result<SuiteReport, SuiteError> {
    run_axiom_suite_with(SuiteConfig::new(max_color))
}

/// Pentagon strictness, hexagons, zig-zags, Yang-Baxter, intertwiners,
/// balancing, pivotal structure and the defining relations.
///
/// Colors run over `0..=max_color`, except that pentagon and Yang-Baxter use
/// nonzero colors, four-fold bracketings stop at color 2, and the relations
/// always cover `V_0..V_6`. With `max_color = 0` every family is vacuous
/// except the relations.
pub fn run_axiom_suite_with(config: SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let n = config.max_color;
    if n > MAX_SUITE_COLOR {
        return Err(SuiteError::ColorTooLarge(n));
    }
    let start = Instant::now();
    let all: Vec<u32> = (0..=n).collect();
    let nonzero: Vec<u32> = (1..=n).collect();
    let small: Vec<u32> = (1..=n.min(2)).collect();
    let pairs = tuples(&all, 2);
    let mut pentagon_cases = tuples(&nonzero, 3);
    pentagon_cases.extend(tuples(&small, 4));
    let twist = config.twist;

    let results = vec![
        family("pentagon", pentagon_cases, |t| check_pentagon(t)),
        family("hexagons", tuples(&all, 3), |t| {
            check_hexagons(t[0], t[1], t[2])
        }),
        family("zig-zag", all.clone(), |c| check_zigzags(*c)),
        family("duality module maps", all.clone(), |c| {
            check_duality_intertwiners(*c)
        }),
        family("pivotal", all.clone(), |c| check_pivotal(*c)),
        family("yang-baxter", tuples(&nonzero, 3), |t| {
            check_yang_baxter(t[0], t[1], t[2])
        }),
        family("braiding intertwiner", pairs.clone(), |t| {
            check_braiding_intertwiner(t[0], t[1])
        }),
        family("braiding inverse", pairs.clone(), |t| {
            check_braiding_inverse(t[0], t[1])
        }),
        family("balancing", pairs, |t| {
            check_balancing_with(t[0], t[1], twist)
        }),
        family("relations", (0..=RELATION_COLORS).collect(), |c| {
            check_relations(&Generic, &make_rep(&Generic, *c).action).map_err(|e| AxiomFailure {
                axiom: format!("relations on V_{c}"),
                witness: e.to_string(),
            })
        }),
    ];
    Ok(SuiteReport {
        max_color: n,
        results,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = run_axiom_suite(1).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(r.get("hexagons").unwrap().cases == 8);
    }

    #[test]
    fn color_zero_is_vacuous() {
        let r = run_axiom_suite(0).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.get("yang-baxter").unwrap().cases, 0);
    }

    #[test]
    fn guard() {
        assert_eq!(
            run_axiom_suite(5).unwrap_err(),
            SuiteError::ColorTooLarge(5)
        );
    }

    #[test]
    fn mirrored_twist_breaks_balancing() {
        let mirrored: TwistFn = |n| twist_generic(n).bar();
        let r = run_axiom_suite_with(SuiteConfig {
            max_color: 1,
            twist: mirrored,
        })
        .unwrap();
        let b = r.get("balancing").unwrap();
        assert!(!b.passed);
        assert!(b.witness.as_ref().unwrap().contains("balancing"));
        assert!(r
            .results
            .iter()
            .filter(|x| x.name != "balancing")
            .all(|x| x.passed));
    }
}
