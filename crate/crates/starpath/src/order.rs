//! Admissible path orders: multiplicative well-founded total orders on parallel paths.
//!
//! An order is an ordered list of stages, each assigning a nonnegative additive
//! weight to every path (the `Length` stage counts arrows), followed by a
//! left-to-right lexicographic tiebreak on an arrow precedence. Paths with different
//! endpoints are incomparable. Additive stages and the final shortlex tiebreak make
//! the order compatible with composition on both sides and well-founded.

use crate::path::Path;
use crate::quiver::{ArrowId, Quiver};
use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRelation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// One comparison stage: total length, or a sum of per-arrow weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    Length,
    /// Dense weight table indexed by `ArrowId`.
    Weights(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleOrder {
    stages: Vec<Stage>,
    /// Rank per `ArrowId`; lower rank compares smaller in the lex tiebreak.
    precedence_rank: Vec<u32>,
    /// Arrow labels in precedence order, kept for serialization and reports.
    precedence: Vec<String>,
}

impl AdmissibleOrder {
    /// Build from explicit stages and a total precedence (every arrow exactly once).
    /// A `Length` stage is appended when absent, so the lex tiebreak only ever
    /// compares equal-length paths.
    pub fn new(quiver: &Quiver, mut stages: Vec<Stage>, precedence: Vec<String>) -> Result<Self> {
        if precedence.len() != quiver.num_arrows() {
            return Err(Error::input(format!(
                "precedence lists {} arrows, quiver has {}",
                precedence.len(),
                quiver.num_arrows()
            )));
        }
        let mut rank = vec![u32::MAX; quiver.num_arrows()];
        for (r, label) in precedence.iter().enumerate() {
            let id = quiver.arrow_id(label)?;
            if rank[id.0 as usize] != u32::MAX {
                return Err(Error::input(format!(
                    "arrow `{label}` listed twice in precedence"
                )));
            }
            rank[id.0 as usize] = r as u32;
        }
        for s in &stages {
            if let Stage::Weights(w) = s {
                if w.len() != quiver.num_arrows() {
                    return Err(Error::input(
                        "weight stage length does not match number of arrows",
                    ));
                }
            }
        }
        if !stages.iter().any(|s| matches!(s, Stage::Length)) {
            stages.push(Stage::Length);
        }
        Ok(AdmissibleOrder {
            stages,
            precedence_rank: rank,
            precedence,
        })
    }

    /// Plain shortlex: length first, then the given arrow precedence.
    pub fn shortlex(quiver: &Quiver, precedence: Vec<String>) -> Result<Self> {
        Self::new(quiver, vec![Stage::Length], precedence)
    }

    /// Length first, then one weight stage (by arrow label, missing = 0), then lex.
    pub fn length_then_weights(
        quiver: &Quiver,
        weights: &BTreeMap<String, u64>,
        precedence: Vec<String>,
    ) -> Result<Self> {
        let table = Self::weight_table(quiver, weights)?;
        Self::new(
            quiver,
            vec![Stage::Length, Stage::Weights(table)],
            precedence,
        )
    }

    /// One weight stage before length, then lex. Used where a rewrite must decrease
    /// even though it increases length (the weight drop dominates).
    pub fn weights_then_length(
        quiver: &Quiver,
        weights: &BTreeMap<String, u64>,
        precedence: Vec<String>,
    ) -> Result<Self> {
        let table = Self::weight_table(quiver, weights)?;
        Self::new(
            quiver,
            vec![Stage::Weights(table), Stage::Length],
            precedence,
        )
    }

    fn weight_table(quiver: &Quiver, weights: &BTreeMap<String, u64>) -> Result<Vec<u64>> {
        let mut table = vec![0u64; quiver.num_arrows()];
        for (label, w) in weights {
            let id = quiver.arrow_id(label)?;
            table[id.0 as usize] = *w;
        }
        Ok(table)
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn precedence(&self) -> &[String] {
        &self.precedence
    }

    fn stage_value(&self, stage: &Stage, p: &Path) -> u64 {
        match stage {
            Stage::Length => p.len() as u64,
            Stage::Weights(w) => p.arrows().iter().map(|a| w[a.0 as usize]).sum(),
        }
    }

    fn rank(&self, a: ArrowId) -> u32 {
        self.precedence_rank[a.0 as usize]
    }

    /// Compare two paths. Distinct parallel paths are always strictly comparable;
    /// paths with different endpoints are `Incomparable`.
    pub fn compare(&self, p: &Path, q: &Path) -> OrderRelation {
        if !p.is_parallel_to(q) {
            return OrderRelation::Incomparable;
        }
        if p == q {
            return OrderRelation::Equal;
        }
        for stage in &self.stages {
            let a = self.stage_value(stage, p);
            let b = self.stage_value(stage, q);
            if a != b {
                return if a < b {
                    OrderRelation::Less
                } else {
                    OrderRelation::Greater
                };
            }
        }
        // All stages equal; a Length stage is always present, so |p| = |q| and the
        // arrow sequences differ at some position.
        for (a, b) in p.arrows().iter().zip(q.arrows()) {
            let ra = self.rank(*a);
            let rb = self.rank(*b);
            if ra != rb {
                return if ra < rb {
                    OrderRelation::Less
                } else {
                    OrderRelation::Greater
                };
            }
        }
        OrderRelation::Equal
    }
}
