//! Paths in a quiver: composable arrow sequences, including trivial paths at vertices.
//!
//! Composition is written left to right: in `p.compose(&q)` the path `p` is traversed
//! first, so the composite exists when `target(p) = source(q)`.

use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::{Error, Result};
use std::cmp::Ordering;

/// A path: the trivial path `e_v` when `arrows` is empty, otherwise a composable
/// arrow sequence with cached endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::input(
                "empty arrow list; use Path::trivial for a trivial path",
            ));
        }
        for w in arrows.windows(2) {
            let a = quiver.arrow(w[0]);
            let b = quiver.arrow(w[1]);
            if a.target != b.source {
                return Err(Error::input(format!(
                    "arrows `{}` and `{}` do not compose",
                    a.label, b.label
                )));
            }
        }
        Ok(Path {
            source: quiver.arrow(arrows[0]).source,
            target: quiver.arrow(*arrows.last().unwrap()).target,
            arrows,
        })
    }

    pub fn from_labels(quiver: &Quiver, labels: &[&str]) -> Result<Path> {
        let arrows = labels
            .iter()
            .map(|l| quiver.arrow_id(l))
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(quiver, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// Left-to-right composition; `None` when the endpoints do not match.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// The subpath spanning `count` arrows starting at arrow index `start`.
    /// `count = 0` yields the trivial path at the vertex between arrows.
    pub fn subpath(&self, quiver: &Quiver, start: usize, count: usize) -> Path {
        assert!(start + count <= self.arrows.len(), "subpath out of range");
        if count == 0 {
            let v = if start == 0 {
                self.source
            } else {
                quiver.arrow(self.arrows[start - 1]).target
            };
            return Path::trivial(v);
        }
        let arrows = self.arrows[start..start + count].to_vec();
        Path {
            source: quiver.arrow(arrows[0]).source,
            target: quiver.arrow(*arrows.last().unwrap()).target,
            arrows,
        }
    }

    pub fn prefix(&self, quiver: &Quiver, count: usize) -> Path {
        self.subpath(quiver, 0, count)
    }

    pub fn suffix(&self, quiver: &Quiver, count: usize) -> Path {
        self.subpath(quiver, self.arrows.len() - count, count)
    }

    /// Start indices of all (possibly overlapping) occurrences of `pattern`.
    /// The pattern must be nontrivial.
    pub fn occurrences(&self, pattern: &Path) -> Vec<usize> {
        let m = pattern.arrows.len();
        if m == 0 || m > self.arrows.len() {
            return Vec::new();
        }
        (0..=self.arrows.len() - m)
            .filter(|&i| self.arrows[i..i + m] == pattern.arrows[..])
            .collect()
    }

    pub fn contains(&self, pattern: &Path) -> bool {
        !self.occurrences(pattern).is_empty()
    }

    /// Human-readable form: arrow labels separated by spaces, `e_v` when trivial.
    pub fn render(&self, quiver: &Quiver) -> String {
        if self.is_trivial() {
            format!("e_{}", quiver.vertex(self.source).label)
        } else {
            self.arrows
                .iter()
                .map(|a| quiver.arrow(*a).label.clone())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// Canonical path order: by length, then arrow ids left to right, then source vertex
/// (the latter separates trivial paths at different vertices).
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
