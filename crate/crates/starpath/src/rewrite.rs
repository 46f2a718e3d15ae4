//! Reduction systems: validation, rewriting to normal form, termination
//! certificates and confluence of overlaps.
//!
//! A reduction pair `(s, φ_s)` replaces the path `s` (length ≥ 2) by the parallel
//! linear combination `φ_s`. Structural validity means: no lhs is a subpath of
//! another lhs, and every rhs is irreducible. Termination is certified against an
//! [`AdmissibleOrder`]; confluence is checked by resolving every overlap ambiguity
//! (diamond lemma).

use crate::ambiguity;
use crate::element::AlgebraElement;
use crate::order::{AdmissibleOrder, OrderRelation};
use crate::path::Path;
use crate::poly::ParamSet;
use crate::quiver::{Quiver, VertexId};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Default step cap for normal-form loops.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// One rewrite rule: lhs path → parallel linear combination.
#[derive(Debug, Clone)]
pub struct ReductionPair {
    pub lhs: Path,
    pub rhs: AlgebraElement,
}

/// A reduction system over a fixed quiver, with an optional admissible order
/// intended to certify termination.
#[derive(Debug, Clone)]
pub struct ReductionSystem {
    quiver: Arc<Quiver>,
    params: Arc<ParamSet>,
    pairs: Vec<ReductionPair>,
    order: Option<AdmissibleOrder>,
}

impl ReductionSystem {
    /// Build a system. Right-hand sides are re-declared over a single shared
    /// parameter set (they are usually parameter-free).
    pub fn new(
        quiver: Arc<Quiver>,
        pairs: Vec<(Path, AlgebraElement)>,
        order: Option<AdmissibleOrder>,
    ) -> Result<ReductionSystem> {
        let params = pairs
            .first()
            .map(|(_, rhs)| Arc::clone(rhs.params()))
            .unwrap_or_else(ParamSet::empty);
        let mut built = Vec::with_capacity(pairs.len());
        for (lhs, rhs) in pairs {
            let rhs = if rhs.params().same_names(&params) {
                rhs.with_params(&params)?
            } else {
                return Err(Error::input(
                    "all reduction pair coefficients must share one parameter declaration",
                ));
            };
            built.push(ReductionPair { lhs, rhs });
        }
        Ok(ReductionSystem {
            quiver,
            params,
            pairs: built,
            order,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn pairs(&self) -> &[ReductionPair] {
        &self.pairs
    }

    pub fn order(&self) -> Option<&AdmissibleOrder> {
        self.order.as_ref()
    }

    pub fn set_order(&mut self, order: Option<AdmissibleOrder>) {
        self.order = order;
    }

    /// All occurrences of any lhs in `path` as `(start, pair index)`, sorted by
    /// start index then pair index.
    pub fn occurrences_in(&self, path: &Path) -> Vec<(usize, usize)> {
        let mut occs = Vec::new();
        for (i, pair) in self.pairs.iter().enumerate() {
            for start in path.occurrences(&pair.lhs) {
                occs.push((start, i));
            }
        }
        occs.sort();
        occs
    }

    pub fn is_irreducible(&self, path: &Path) -> bool {
        self.pairs.iter().all(|p| !path.contains(&p.lhs))
    }

    pub fn element_is_irreducible(&self, elem: &AlgebraElement) -> bool {
        elem.paths().all(|p| self.is_irreducible(p))
    }

    /// All irreducible paths out of `source` with length at most `max_len`,
    /// in canonical order. Prunes by subpath closure: a reducible prefix never
    /// extends to an irreducible path.
    pub fn irreducible_paths_up_to(&self, source: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(source)];
        let mut frontier = vec![Path::trivial(source)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (id, arrow) in self.quiver.arrows() {
                    if arrow.source != p.target() {
                        continue;
                    }
                    let mut arrows = p.arrows().to_vec();
                    arrows.push(id);
                    let ext = Path::from_arrows(&self.quiver, arrows)
                        .expect("extension by a matching arrow composes");
                    // Only new occurrences ending at the last arrow matter.
                    let reducible = self.pairs.iter().any(|pair| {
                        let l = pair.lhs.len();
                        l <= ext.len() && ext.arrows()[ext.len() - l..] == *pair.lhs.arrows()
                    });
                    if !reducible {
                        next.push(ext);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        out.sort();
        out
    }

    /// Structural validity per the three presentation conditions.
    pub fn validate(&self) -> ValidityReport {
        let mut rows = Vec::with_capacity(self.pairs.len());
        for (i, pair) in self.pairs.iter().enumerate() {
            let lhs_len_ok = pair.lhs.len() >= 2;
            let parallel_ok = pair
                .rhs
                .paths()
                .all(|p| p.is_parallel_to(&pair.lhs));
            let mut subpath_conflicts = Vec::new();
            for (j, other) in self.pairs.iter().enumerate() {
                if i == j {
                    continue;
                }
                if other.lhs.contains(&pair.lhs) || pair.lhs.contains(&other.lhs) {
                    subpath_conflicts.push(j);
                }
            }
            let rhs_irreducible = self.element_is_irreducible(&pair.rhs);
            rows.push(PairReport {
                pair: i,
                lhs_len_ok,
                parallel_ok,
                subpath_conflicts,
                rhs_irreducible,
            });
        }
        let ok = rows.iter().all(|r| r.ok());
        ValidityReport { rows, ok }
    }

    /// Check that every rhs path is strictly smaller than its lhs under `order`.
    pub fn check_termination(&self, order: &AdmissibleOrder) -> TerminationReport {
        let mut rows = Vec::new();
        for (i, pair) in self.pairs.iter().enumerate() {
            let failing: Vec<Path> = pair
                .rhs
                .paths()
                .filter(|p| order.compare(p, &pair.lhs) != OrderRelation::Less)
                .cloned()
                .collect();
            rows.push(TerminationRow {
                pair: i,
                ok: failing.is_empty(),
                failing,
            });
        }
        let certified = rows.iter().all(|r| r.ok);
        TerminationReport { rows, certified }
    }

    /// Apply one reduction step at the chosen occurrence. Returns `None` when the
    /// element is already irreducible.
    pub fn reduce_once(
        &self,
        elem: &AlgebraElement,
        pick: &OccurrencePick,
    ) -> Result<Option<(AlgebraElement, TraceStep)>> {
        let occs = self.reducible_occurrences(elem);
        if occs.is_empty() {
            return Ok(None);
        }
        let step = match pick {
            OccurrencePick::Leftmost => {
                let first_term = &occs[0].term;
                occs.iter()
                    .filter(|o| &o.term == first_term)
                    .min_by_key(|o| o.start)
                    .unwrap()
                    .clone()
            }
            OccurrencePick::Rightmost => {
                let first_term = &occs[0].term;
                occs.iter()
                    .filter(|o| &o.term == first_term)
                    .max_by_key(|o| o.start)
                    .unwrap()
                    .clone()
            }
            OccurrencePick::At { term, start } => occs
                .iter()
                .find(|o| &o.term == term && o.start == *start)
                .cloned()
                .ok_or_else(|| {
                    Error::input(format!(
                        "no reducible occurrence at position {start} of term {}",
                        term.render(&self.quiver)
                    ))
                })?,
        };
        let next = self.apply_step(elem, &step)?;
        Ok(Some((next, step)))
    }

    /// All reducible occurrences over all terms, sorted by (term, start, pair).
    pub fn reducible_occurrences(&self, elem: &AlgebraElement) -> Vec<TraceStep> {
        let mut occs = Vec::new();
        for (path, _) in elem.terms() {
            for (start, pair) in self.occurrences_in(path) {
                occs.push(TraceStep {
                    term: path.clone(),
                    start,
                    pair,
                });
            }
        }
        occs
    }

    /// Replace the occurrence described by `step`: coeff·(prefix · φ_s · suffix)
    /// substituted for coeff·term.
    pub fn apply_step(&self, elem: &AlgebraElement, step: &TraceStep) -> Result<AlgebraElement> {
        let pair = self
            .pairs
            .get(step.pair)
            .ok_or_else(|| Error::input(format!("pair index {} out of range", step.pair)))?;
        let coeff = elem.coeff(&step.term);
        if coeff.is_zero() {
            return Err(Error::input("trace step names a term absent from the element"));
        }
        let q = self.quiver.as_ref();
        let prefix = step.term.prefix(q, step.start);
        let tail = step.term.len() - step.start - pair.lhs.len();
        let suffix = step.term.suffix(q, tail);
        let replacement = pair
            .rhs
            .promote(elem.params())?
            .left_mul_path(&prefix)
            .right_mul_path(&suffix)
            .poly_mul(&coeff)?;
        let mut out = elem.clone();
        out.add_term(step.term.clone(), coeff.neg())?;
        out.add(&replacement)
    }

    /// Reduce to normal form under the given strategy, capped at `max_steps`.
    /// `completed = false` means the cap was exhausted, not that the input was bad.
    pub fn normal_form(
        &self,
        elem: &AlgebraElement,
        strategy: &mut dyn Strategy,
        max_steps: u64,
        want_trace: bool,
    ) -> Result<NormalForm> {
        let mut current = elem.clone();
        let mut steps = 0u64;
        let mut trace = if want_trace { Some(Vec::new()) } else { None };
        loop {
            let occs = self.reducible_occurrences(&current);
            if occs.is_empty() {
                return Ok(NormalForm {
                    element: current,
                    steps,
                    completed: true,
                    trace,
                });
            }
            if steps >= max_steps {
                return Ok(NormalForm {
                    element: current,
                    steps,
                    completed: false,
                    trace,
                });
            }
            let idx = strategy.choose(&occs);
            let step = occs[idx].clone();
            current = self.apply_step(&current, &step)?;
            if let Some(t) = trace.as_mut() {
                t.push(step);
            }
            steps += 1;
        }
    }

    /// Rightmost-strategy normal form (the default deterministic reduction).
    pub fn nf_rightmost(&self, elem: &AlgebraElement, max_steps: u64) -> Result<NormalForm> {
        self.normal_form(elem, &mut Rightmost, max_steps, false)
    }

    /// Re-apply a recorded trace step by step.
    pub fn replay(&self, elem: &AlgebraElement, trace: &[TraceStep]) -> Result<AlgebraElement> {
        let mut current = elem.clone();
        for step in trace {
            current = self.apply_step(&current, step)?;
        }
        Ok(current)
    }

    /// Resolve every overlap ambiguity: for each degree-1 ambiguity `p = uvw` with
    /// `uv, vw ∈ S`, reduce both one-step descendants to normal form and compare.
    pub fn check_diamond(&self, max_steps: u64) -> Result<DiamondReport> {
        let ambiguities = ambiguity::enumerate(self, 1, None)?;
        let mut overlaps = Vec::new();
        let mut cap_hit = false;
        for amb in &ambiguities {
            for f in ambiguity::triple_factorizations(self, &amb.path) {
                // left: φ(uv)·w, right: u·φ(vw)
                let left = self.pairs[f.uv_pair]
                    .rhs
                    .right_mul_path(&f.w);
                let right = self.pairs[f.vw_pair]
                    .rhs
                    .left_mul_path(&f.u);
                let lnf = self.nf_rightmost(&left, max_steps)?;
                let rnf = self.nf_rightmost(&right, max_steps)?;
                if !lnf.completed || !rnf.completed {
                    cap_hit = true;
                }
                let joinable = lnf.completed && rnf.completed && lnf.element == rnf.element;
                overlaps.push(OverlapResolution {
                    overlap: amb.path.clone(),
                    u: f.u.clone(),
                    v: f.v.clone(),
                    w: f.w.clone(),
                    left_pair: f.uv_pair,
                    right_pair: f.vw_pair,
                    left_nf: lnf.element,
                    right_nf: rnf.element,
                    left_steps: lnf.steps,
                    right_steps: rnf.steps,
                    joinable,
                });
            }
        }
        let confluent = !cap_hit && overlaps.iter().all(|o| o.joinable);
        Ok(DiamondReport {
            num_ambiguities: ambiguities.len(),
            overlaps,
            confluent,
            cap_hit,
        })
    }
}

/// Which occurrence `reduce_once` rewrites, inside the first reducible term in
/// canonical path order (or an explicitly chosen term).
#[derive(Debug, Clone)]
pub enum OccurrencePick {
    Rightmost,
    Leftmost,
    At { term: Path, start: usize },
}

/// One recorded reduction step; replaying a trace reproduces the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub term: Path,
    pub start: usize,
    pub pair: usize,
}

/// Result of a capped normal-form computation.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub element: AlgebraElement,
    pub steps: u64,
    /// False when the step cap was exhausted before reaching an irreducible element.
    pub completed: bool,
    pub trace: Option<Vec<TraceStep>>,
}

/// Occurrence-selection strategy for normal-form reduction.
pub trait Strategy {
    fn name(&self) -> &'static str;
    /// Pick an index into `occs` (nonempty, sorted by term, start, pair).
    fn choose(&mut self, occs: &[TraceStep]) -> usize;
}

/// Rightmost occurrence within the first reducible term.
pub struct Rightmost;

impl Strategy for Rightmost {
    fn name(&self) -> &'static str {
        "rightmost"
    }
    fn choose(&mut self, occs: &[TraceStep]) -> usize {
        let first_term = &occs[0].term;
        let mut best = 0;
        for (i, o) in occs.iter().enumerate() {
            if &o.term != first_term {
                break;
            }
            if o.start >= occs[best].start {
                best = i;
            }
        }
        best
    }
}

/// Leftmost occurrence within the first reducible term.
pub struct Leftmost;

impl Strategy for Leftmost {
    fn name(&self) -> &'static str {
        "leftmost"
    }
    fn choose(&mut self, _occs: &[TraceStep]) -> usize {
        0
    }
}

/// Uniformly random occurrence over all reducible terms, from a seeded stream.
pub struct RandomPick {
    rng: ChaCha8Rng,
}

impl RandomPick {
    pub fn new(seed: u64) -> Self {
        RandomPick {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomPick {
    fn name(&self) -> &'static str {
        "random"
    }
    fn choose(&mut self, occs: &[TraceStep]) -> usize {
        self.rng.gen_range(0..occs.len())
    }
}

/// By-name registry of reduction strategies.
pub struct StrategyRegistry {
    builders: Vec<(&'static str, fn(u64) -> Box<dyn Strategy>)>,
}

impl StrategyRegistry {
    pub fn standard() -> Self {
        StrategyRegistry {
            builders: vec![
                ("rightmost", |_| Box::new(Rightmost)),
                ("leftmost", |_| Box::new(Leftmost)),
                ("random", |seed| Box::new(RandomPick::new(seed))),
            ],
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.iter().map(|(n, _)| *n).collect()
    }

    pub fn build(&self, name: &str, seed: u64) -> Result<Box<dyn Strategy>> {
        self.builders
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f(seed))
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown strategy `{name}` (available: {})",
                    self.names().join(", ")
                ))
            })
    }
}

/// Per-pair structural validity.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub pair: usize,
    pub lhs_len_ok: bool,
    pub parallel_ok: bool,
    pub subpath_conflicts: Vec<usize>,
    pub rhs_irreducible: bool,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.lhs_len_ok
            && self.parallel_ok
            && self.subpath_conflicts.is_empty()
            && self.rhs_irreducible
    }
}

#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub rows: Vec<PairReport>,
    pub ok: bool,
}

impl ValidityReport {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        for row in &self.rows {
            let pair = &sys.pairs()[row.pair];
            let mut problems = Vec::new();
            if !row.lhs_len_ok {
                problems.push("lhs shorter than 2".to_string());
            }
            if !row.parallel_ok {
                problems.push("rhs not parallel to lhs".to_string());
            }
            if !row.subpath_conflicts.is_empty() {
                problems.push(format!(
                    "lhs subpath conflict with pair(s) {:?}",
                    row.subpath_conflicts
                ));
            }
            if !row.rhs_irreducible {
                problems.push("rhs reducible".to_string());
            }
            out.push_str(&format!(
                "[{}] {} -> {}: {}\n",
                row.pair,
                pair.lhs.render(q),
                pair.rhs.render(q),
                if problems.is_empty() {
                    "ok".to_string()
                } else {
                    problems.join("; ")
                }
            ));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.ok { "VALID" } else { "INVALID" }
        ));
        out
    }
}

#[derive(Debug, Clone)]
pub struct TerminationRow {
    pub pair: usize,
    pub ok: bool,
    pub failing: Vec<Path>,
}

#[derive(Debug, Clone)]
pub struct TerminationReport {
    pub rows: Vec<TerminationRow>,
    pub certified: bool,
}

impl TerminationReport {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        for row in &self.rows {
            let pair = &sys.pairs()[row.pair];
            if row.ok {
                out.push_str(&format!("[{}] {}: decreasing\n", row.pair, pair.lhs.render(q)));
            } else {
                out.push_str(&format!(
                    "[{}] {}: NOT decreasing for {}\n",
                    row.pair,
                    pair.lhs.render(q),
                    row.failing
                        .iter()
                        .map(|p| p.render(q))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
        }
        out.push_str(&format!(
            "termination certificate: {}\n",
            if self.certified { "YES" } else { "NO" }
        ));
        out
    }
}

/// Both one-step descendants of one overlap, reduced to normal form.
#[derive(Debug, Clone)]
pub struct OverlapResolution {
    pub overlap: Path,
    pub u: Path,
    pub v: Path,
    pub w: Path,
    pub left_pair: usize,
    pub right_pair: usize,
    pub left_nf: AlgebraElement,
    pub right_nf: AlgebraElement,
    pub left_steps: u64,
    pub right_steps: u64,
    pub joinable: bool,
}

#[derive(Debug, Clone)]
pub struct DiamondReport {
    pub num_ambiguities: usize,
    pub overlaps: Vec<OverlapResolution>,
    pub confluent: bool,
    pub cap_hit: bool,
}

impl DiamondReport {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = format!("{} overlap ambiguities\n", self.num_ambiguities);
        for o in &self.overlaps {
            out.push_str(&format!(
                "overlap {}  [{} | {} | {}]\n",
                o.overlap.render(q),
                o.u.render(q),
                o.v.render(q),
                o.w.render(q)
            ));
            out.push_str(&format!(
                "  |- reduce pair {} then normalize: {}\n",
                o.left_pair,
                o.left_nf.render(q)
            ));
            out.push_str(&format!(
                "  `- reduce pair {} then normalize: {}\n",
                o.right_pair,
                o.right_nf.render(q)
            ));
            out.push_str(&format!(
                "  join: {}\n",
                if o.joinable { "YES" } else { "NO" }
            ));
        }
        out.push_str(&format!(
            "confluent: {}{}\n",
            if self.confluent { "YES" } else { "NO" },
            if self.cap_hit { " (step cap hit)" } else { "" }
        ));
        out
    }
}

/// Helper carried by `triple_factorizations`: `p = u·v·w` with `uv` and `vw` both
/// left-hand sides.
#[derive(Debug, Clone)]
pub struct TripleFactorization {
    pub u: Path,
    pub v: Path,
    pub w: Path,
    pub uv_pair: usize,
    pub vw_pair: usize,
}
