use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{sorted_intersects, sorted_union, EdgeId};
use crate::ordering::Ordering;

use super::run::NumericEliminator;
use super::{decompose, Decomposition, GershgorinSide, HermitianInput};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyOptions {
    pub drop_tolerance: f64,
    /// Test hook: skip the symbolic update after this step (0-based), which
    /// makes later predictions too small.
    pub inject_skip_update: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepCheck {
    pub step: usize,
    pub edge: EdgeId,
    pub predicted: Vec<usize>,
    pub observed: Vec<usize>,
}

impl StepCheck {
    /// Observed positions missing from the prediction.
    pub fn unpredicted(&self) -> Vec<usize> {
        self.observed
            .iter()
            .copied()
            .filter(|v| self.predicted.binary_search(v).is_err())
            .collect()
    }

    /// Predicted positions that cancelled numerically.
    pub fn cancelled(&self) -> Vec<usize> {
        self.predicted
            .iter()
            .copied()
            .filter(|v| self.observed.binary_search(v).is_err())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub steps: Vec<StepCheck>,
    /// Steps whose observed support left the predicted hyperedge.
    pub violations: Vec<usize>,
    /// Steps with cancellation: observed strictly inside the prediction.
    pub benign: Vec<usize>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Fraction of steps where observed and predicted supports are equal.
    pub fn equality_fraction(&self) -> f64 {
        if self.steps.is_empty() {
            return 1.0;
        }
        let eq = self.steps.iter().filter(|s| s.observed == s.predicted).count();
        eq as f64 / self.steps.len() as f64
    }

    pub fn mismatch_report(&self) -> String {
        let mut out = String::new();
        for &i in &self.violations {
            let s = &self.steps[i];
            out.push_str(&format!(
                "step {} edge {}: observed positions {:?} not in predicted {:?}\n",
                s.step,
                s.edge,
                s.unpredicted(),
                s.predicted
            ));
        }
        out
    }
}

/// Runs symbolic edge elimination next to numeric elimination of the
/// lower-side decomposition of `a` and compares supports step by step.
pub fn predictive_consistency(
    a: &HermitianInput,
    ordering: &Ordering,
    opts: &ConsistencyOptions,
) -> Result<ConsistencyReport> {
    predictive_consistency_decomposition(&decompose(a, GershgorinSide::Lower), ordering, opts)
}

pub fn predictive_consistency_decomposition(
    dec: &Decomposition,
    ordering: &Ordering,
    opts: &ConsistencyOptions,
) -> Result<ConsistencyReport> {
    let ids: Vec<EdgeId> = dec.terms.iter().map(|t| t.edge).collect();
    ordering.validate_against(&ids)?;

    let mut sets: BTreeMap<EdgeId, Vec<usize>> = dec.terms.iter().map(|t| (t.edge, t.support())).collect();
    let mut el = NumericEliminator::new(dec, opts.drop_tolerance);
    let mut report = ConsistencyReport {
        steps: Vec::with_capacity(ordering.len()),
        violations: Vec::new(),
        benign: Vec::new(),
    };

    for (step, id) in ordering.iter().enumerate() {
        let predicted = sets.remove(&id).expect("validated ordering");
        let observed = el.support_of(id).expect("pending term");
        el.step(id)?;
        if opts.inject_skip_update != Some(step) {
            for e in sets.values_mut() {
                if sorted_intersects(e, &predicted) {
                    *e = sorted_union(e, &predicted);
                }
            }
        }
        let check = StepCheck {
            step,
            edge: id,
            predicted,
            observed,
        };
        if !check.unpredicted().is_empty() {
            report.violations.push(step);
        } else if !check.cancelled().is_empty() {
            report.benign.push(step);
        }
        report.steps.push(check);
    }
    Ok(report)
}
