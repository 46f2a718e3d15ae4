//! Diagram algebras from intersection-closed affine covers: one vertex per chart,
//! loops for chart generators, restriction arrows for single-index inclusions, and
//! the reduction system R0 (chart relations) + R1 (restriction compatibility)
//! + R2 (commuting squares), with provenance tags and a confluence certifier.
//!
//! Chart labels are index subsets of the base opens; the realized label set must
//! contain all singletons and be closed under pairwise union. Every restriction
//! image must be irreducible in its target chart.

use crate::element::AlgebraElement;
use crate::order::AdmissibleOrder;
use crate::path::Path;
use crate::poly::{ParamPolynomial, ParamSet};
use crate::quiver::{Quiver, VertexId};
use crate::rewrite::{DiamondReport, ReductionSystem, TerminationReport, ValidityReport};
use crate::{Error, Result};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// One chart relation: lhs as generator labels, rhs as a rational combination of
/// label paths (empty label list means the trivial path at the chart vertex).
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPairSpec {
    pub lhs: Vec<String>,
    pub rhs: Vec<(Vec<String>, BigRational)>,
}

/// An affine chart: an index subset of the base opens, generator loops with
/// fiber weights, and its reduction pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    /// Sorted 1-based indices of the base opens this chart intersects.
    pub indices: Vec<u32>,
    /// Loop labels; the listed order is the chart-local precedence.
    pub generators: Vec<String>,
    /// Fiber weights per generator (the weight stage of the order); may be zero.
    pub weights: Vec<u64>,
    pub pairs: Vec<ChartPairSpec>,
}

/// Restriction data for one inclusion arrow: from `source` to `source + added`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionSpec {
    pub source: Vec<u32>,
    pub added: u32,
    /// Arrow label.
    pub label: String,
    /// Image of each source generator as an element over the target chart.
    pub images: Vec<(String, Vec<(Vec<String>, BigRational)>)>,
}

/// A full cover: base-open names plus charts and restriction maps.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSpec {
    pub base_names: Vec<String>,
    pub charts: Vec<ChartSpec>,
    pub restrictions: Vec<RestrictionSpec>,
}

impl ChartSpec {
    /// Display label: base names joined by `&` in index order.
    pub fn display_label(&self, base_names: &[String]) -> String {
        self.indices
            .iter()
            .map(|&i| base_names[(i - 1) as usize].clone())
            .collect::<Vec<_>>()
            .join("&")
    }

    /// The chart as a standalone one-vertex reduction system with its local order.
    pub fn local_system(&self, base_names: &[String]) -> Result<ReductionSystem> {
        let label = self.display_label(base_names);
        let arrows: Vec<(String, String, String)> = self
            .generators
            .iter()
            .map(|g| (g.clone(), label.clone(), label.clone()))
            .collect();
        let quiver = Arc::new(Quiver::new(vec![label], arrows)?);
        let params = ParamSet::empty();
        let mut pairs = Vec::new();
        for p in &self.pairs {
            let lhs = path_at(&quiver, VertexId(0), &p.lhs)?;
            let rhs = element_at(&quiver, &params, VertexId(0), &p.rhs)?;
            pairs.push((lhs, rhs));
        }
        let order = if self.weights.iter().all(|&w| w == 0) {
            AdmissibleOrder::shortlex(&quiver, self.generators.clone())?
        } else {
            let table: BTreeMap<String, u64> = self
                .generators
                .iter()
                .cloned()
                .zip(self.weights.iter().copied())
                .collect();
            AdmissibleOrder::weights_then_length(&quiver, &table, self.generators.clone())?
        };
        ReductionSystem::new(quiver, pairs, Some(order))
    }
}

/// Path from arrow labels, or the trivial path at `at` for an empty list.
fn path_at(quiver: &Quiver, at: VertexId, labels: &[String]) -> Result<Path> {
    if labels.is_empty() {
        return Ok(Path::trivial(at));
    }
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    Path::from_labels(quiver, &refs)
}

fn element_at(
    quiver: &Quiver,
    params: &Arc<ParamSet>,
    at: VertexId,
    terms: &[(Vec<String>, BigRational)],
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(params);
    for (labels, coeff) in terms {
        out.add_term(
            path_at(quiver, at, labels)?,
            ParamPolynomial::constant(params, coeff.clone()),
        )?;
    }
    Ok(out)
}

/// Origin of one reduction pair in a built diagram system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// R0: relation of the chart with this index (position in the cover).
    Chart { chart: usize },
    /// R1: compatibility pair of the restriction from `chart` adding `added`.
    Restriction { chart: usize, added: u32 },
    /// R2: commuting square at `chart` for added indices j < k.
    Square { chart: usize, j: u32, k: u32 },
}

/// A built diagram algebra: the global system plus per-pair provenance.
#[derive(Debug, Clone)]
pub struct DiagramAlgebra {
    pub cover: CoverSpec,
    pub system: ReductionSystem,
    /// Parallel to `system.pairs()`.
    pub provenance: Vec<PairClass>,
    /// Chart vertex ids, parallel to `cover.charts`.
    pub chart_vertices: Vec<VertexId>,
}

/// Build the global quiver and reduction system from a cover.
pub fn build(cover: CoverSpec) -> Result<DiagramAlgebra> {
    let n = cover.base_names.len();
    if n == 0 {
        return Err(Error::input("cover needs at least one base open"));
    }
    {
        let set: BTreeSet<&String> = cover.base_names.iter().collect();
        if set.len() != n || cover.base_names.iter().any(|s| s.is_empty()) {
            return Err(Error::input("base-open names must be unique and nonempty"));
        }
    }
    let mut label_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for (ci, chart) in cover.charts.iter().enumerate() {
        if chart.indices.is_empty() {
            return Err(Error::input("chart index set may not be empty"));
        }
        if chart.indices.windows(2).any(|w| w[0] >= w[1])
            || chart.indices.iter().any(|&i| i < 1 || i as usize > n)
        {
            return Err(Error::input(format!(
                "chart {ci} has an invalid index set {:?}",
                chart.indices
            )));
        }
        if chart.weights.len() != chart.generators.len() {
            return Err(Error::input(format!(
                "chart {ci} has {} weights for {} generators",
                chart.weights.len(),
                chart.generators.len()
            )));
        }
        if label_index.insert(chart.indices.clone(), ci).is_some() {
            return Err(Error::input(format!(
                "duplicate chart for index set {:?}",
                chart.indices
            )));
        }
    }
    for i in 1..=n as u32 {
        if !label_index.contains_key(&vec![i]) {
            return Err(Error::input(format!(
                "missing chart for base open {} (all singletons are required)",
                cover.base_names[(i - 1) as usize]
            )));
        }
    }
    // Closure under pairwise union (intersection of opens).
    for a in label_index.keys() {
        for b in label_index.keys() {
            let union: Vec<u32> = a
                .iter()
                .chain(b.iter())
                .copied()
                .collect::<BTreeSet<u32>>()
                .into_iter()
                .collect();
            if !label_index.contains_key(&union) {
                return Err(Error::input(format!(
                    "label set is not intersection-closed: {:?} is missing",
                    union
                )));
            }
        }
    }
    // Per-chart validity and termination.
    let mut local_systems = Vec::new();
    for chart in &cover.charts {
        let local = chart.local_system(&cover.base_names)?;
        let validity = local.validate();
        if !validity.ok {
            return Err(Error::input(format!(
                "chart {} pairs are not a valid reduction system:\n{}",
                chart.display_label(&cover.base_names),
                validity.render(&local)
            )));
        }
        let order = local.order().expect("local order was just constructed");
        if !local.check_termination(order).certified {
            return Err(Error::input(format!(
                "chart {} order does not certify termination",
                chart.display_label(&cover.base_names)
            )));
        }
        local_systems.push(local);
    }
    // Exactly one restriction per (chart, addable index).
    let mut restriction_at: BTreeMap<(usize, u32), &RestrictionSpec> = BTreeMap::new();
    for r in &cover.restrictions {
        let ci = *label_index.get(&r.source).ok_or_else(|| {
            Error::input(format!("restriction source {:?} is not a chart", r.source))
        })?;
        if r.source.contains(&r.added) {
            return Err(Error::input(format!(
                "restriction from {:?} adds an index it already contains",
                r.source
            )));
        }
        if restriction_at.insert((ci, r.added), r).is_some() {
            return Err(Error::input(format!(
                "duplicate restriction from {:?} adding {}",
                r.source, r.added
            )));
        }
    }
    let mut required: Vec<(usize, u32)> = Vec::new();
    for (indices, &ci) in &label_index {
        for j in 1..=n as u32 {
            if !indices.contains(&j) {
                required.push((ci, j));
            }
        }
    }
    required.sort();
    for &(ci, j) in &required {
        if !restriction_at.contains_key(&(ci, j)) {
            return Err(Error::input(format!(
                "missing restriction from {} adding index {}",
                cover.charts[ci].display_label(&cover.base_names),
                j
            )));
        }
    }
    if restriction_at.len() != required.len() {
        return Err(Error::input("extraneous restriction specifications"));
    }
    // Global quiver: chart vertices, chart loops, restriction arrows.
    let vertex_labels: Vec<String> = cover
        .charts
        .iter()
        .map(|c| c.display_label(&cover.base_names))
        .collect();
    let mut arrows = Vec::new();
    let mut loop_labels = Vec::new();
    for (ci, chart) in cover.charts.iter().enumerate() {
        for g in &chart.generators {
            arrows.push((g.clone(), vertex_labels[ci].clone(), vertex_labels[ci].clone()));
            loop_labels.push(g.clone());
        }
    }
    let target_of = |ci: usize, j: u32| -> usize {
        let mut u = cover.charts[ci].indices.clone();
        u.push(j);
        u.sort();
        label_index[&u]
    };
    let mut restriction_labels = Vec::new();
    for &(ci, j) in &required {
        let r = restriction_at[&(ci, j)];
        arrows.push((
            r.label.clone(),
            vertex_labels[ci].clone(),
            vertex_labels[target_of(ci, j)].clone(),
        ));
        restriction_labels.push(r.label.clone());
    }
    let quiver = Arc::new(Quiver::new(vertex_labels, arrows)?);
    let params = ParamSet::empty();
    // R0: chart relations on the global loops.
    let mut pairs: Vec<(Path, AlgebraElement)> = Vec::new();
    let mut provenance: Vec<PairClass> = Vec::new();
    for (ci, chart) in cover.charts.iter().enumerate() {
        let at = VertexId(ci as u32);
        for p in &chart.pairs {
            pairs.push((
                path_at(&quiver, at, &p.lhs)?,
                element_at(&quiver, &params, at, &p.rhs)?,
            ));
            provenance.push(PairClass::Chart { chart: ci });
        }
    }
    // R1: x_r f -> f X_r, with X_r validated irreducible in the target chart.
    for &(ci, j) in &required {
        let r = restriction_at[&(ci, j)];
        let ti = target_of(ci, j);
        let target_at = VertexId(ti as u32);
        let chart = &cover.charts[ci];
        let image_of: BTreeMap<&String, &Vec<(Vec<String>, BigRational)>> =
            r.images.iter().map(|(g, v)| (g, v)).collect();
        if image_of.len() != r.images.len() {
            return Err(Error::input(format!(
                "restriction `{}` lists a generator image twice",
                r.label
            )));
        }
        for g in &chart.generators {
            let image = image_of.get(g).ok_or_else(|| {
                Error::input(format!(
                    "restriction `{}` is missing the image of generator `{}`",
                    r.label, g
                ))
            })?;
            let image_elem = element_at(&quiver, &params, target_at, image)?;
            let local_target = &local_systems[ti];
            for p in image_elem.paths() {
                // Same arrows exist in the local quiver by construction.
                let labels: Vec<String> = p
                    .arrows()
                    .iter()
                    .map(|&id| quiver.arrow(id).label.clone())
                    .collect();
                let local_path = path_at(local_target.quiver(), VertexId(0), &labels)?;
                if !local_target.is_irreducible(&local_path) {
                    return Err(Error::input(format!(
                        "image of `{}` under `{}` is reducible in chart {}",
                        g,
                        r.label,
                        cover.charts[ti].display_label(&cover.base_names)
                    )));
                }
            }
            let lhs = path_at(&quiver, VertexId(ci as u32), &[g.clone(), r.label.clone()])?;
            let f_path = path_at(&quiver, VertexId(ci as u32), &[r.label.clone()])?;
            let rhs = AlgebraElement::from_path(&params, f_path).free_mul(&image_elem)?;
            pairs.push((lhs, rhs));
            provenance.push(PairClass::Restriction { chart: ci, added: j });
        }
        if image_of.len() != chart.generators.len() {
            return Err(Error::input(format!(
                "restriction `{}` has images for unknown generators",
                r.label
            )));
        }
    }
    // R2: f^i_k f^{ik}_j -> f^i_j f^{ij}_k for j < k.
    for (indices, &ci) in &label_index {
        let addable: Vec<u32> = (1..=n as u32).filter(|j| !indices.contains(j)).collect();
        for (a, &j) in addable.iter().enumerate() {
            for &k in &addable[a + 1..] {
                let f_ik = restriction_at[&(ci, k)].label.clone();
                let f_ij = restriction_at[&(ci, j)].label.clone();
                let ik = target_of(ci, k);
                let ij = target_of(ci, j);
                let f_ik_j = restriction_at[&(ik, j)].label.clone();
                let f_ij_k = restriction_at[&(ij, k)].label.clone();
                let lhs = path_at(&quiver, VertexId(ci as u32), &[f_ik, f_ik_j])?;
                let rhs_path = path_at(&quiver, VertexId(ci as u32), &[f_ij, f_ij_k])?;
                pairs.push((lhs, AlgebraElement::from_path(&params, rhs_path)));
                provenance.push(PairClass::Square { chart: ci, j, k });
            }
        }
    }
    // Global order: restriction arrows first, then chart loops; weight stage
    // only when some generator has a nonzero weight.
    let mut precedence: Vec<String> = restriction_labels.clone();
    precedence.extend(loop_labels.iter().cloned());
    let any_weight = cover.charts.iter().any(|c| c.weights.iter().any(|&w| w > 0));
    let order = if any_weight {
        let mut table: BTreeMap<String, u64> = BTreeMap::new();
        for chart in &cover.charts {
            for (g, &w) in chart.generators.iter().zip(chart.weights.iter()) {
                table.insert(g.clone(), w);
            }
        }
        AdmissibleOrder::weights_then_length(&quiver, &table, precedence)?
    } else {
        AdmissibleOrder::shortlex(&quiver, precedence)?
    };
    let chart_vertices = (0..cover.charts.len())
        .map(|i| VertexId(i as u32))
        .collect();
    let system = ReductionSystem::new(quiver, pairs, Some(order))?;
    Ok(DiagramAlgebra {
        cover,
        system,
        provenance,
        chart_vertices,
    })
}

impl DiagramAlgebra {
    /// The vertex of the chart with the given index set.
    pub fn vertex_of(&self, indices: &[u32]) -> Option<VertexId> {
        self.cover
            .charts
            .iter()
            .position(|c| c.indices == indices)
            .map(|i| self.chart_vertices[i])
    }

    /// A copy of the system keeping only pairs of the selected classes.
    pub fn subsystem(&self, keep: impl Fn(&PairClass) -> bool) -> Result<ReductionSystem> {
        let pairs: Vec<(Path, AlgebraElement)> = self
            .system
            .pairs()
            .iter()
            .zip(self.provenance.iter())
            .filter(|(_, class)| keep(class))
            .map(|(p, _)| (p.lhs.clone(), p.rhs.clone()))
            .collect();
        ReductionSystem::new(
            Arc::clone(self.system.quiver()),
            pairs,
            self.system.order().cloned(),
        )
    }
}

/// Overlap taxonomy per the construction: overlaps among chart pairs, overlaps
/// involving a restriction pair, and square-square overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapClass {
    IntraChart,
    ChartMorphism,
    Square,
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub validity: ValidityReport,
    pub termination: TerminationReport,
    pub diamond: DiamondReport,
    /// Parallel to `diamond.overlaps`.
    pub classes: Vec<OverlapClass>,
    pub ok: bool,
}

impl CertifyReport {
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.classes {
            let key = match c {
                OverlapClass::IntraChart => "intra-chart",
                OverlapClass::ChartMorphism => "chart-morphism",
                OverlapClass::Square => "square",
            };
            *counts.entry(key).or_insert(0) += 1;
        }
        counts
    }

    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        out.push_str(&format!(
            "validity: {}\ntermination: {}\n",
            if self.validity.ok { "ok" } else { "INVALID" },
            if self.termination.certified {
                "certified"
            } else {
                "NOT certified"
            }
        ));
        for (res, class) in self.diamond.overlaps.iter().zip(self.classes.iter()) {
            out.push_str(&format!(
                "overlap {} [{}]: {}\n",
                res.overlap.render(q),
                match class {
                    OverlapClass::IntraChart => "intra-chart",
                    OverlapClass::ChartMorphism => "chart-morphism",
                    OverlapClass::Square => "square",
                },
                if res.joinable { "resolves" } else { "DIVERGES" }
            ));
        }
        out.push_str(&format!(
            "diagram system: {}\n",
            if self.ok { "CONFLUENT" } else { "NOT CONFLUENT" }
        ));
        out
    }
}

/// Run the structural checks and the diamond test, classifying each overlap.
pub fn certify(diagram: &DiagramAlgebra, max_steps: u64) -> Result<CertifyReport> {
    let validity = diagram.system.validate();
    let order = diagram
        .system
        .order()
        .ok_or_else(|| Error::input("diagram system lost its order"))?;
    let termination = diagram.system.check_termination(order);
    let diamond = diagram.system.check_diamond(max_steps)?;
    let classes = diamond
        .overlaps
        .iter()
        .map(|res| {
            let left = &diagram.provenance[res.left_pair];
            let right = &diagram.provenance[res.right_pair];
            match (left, right) {
                (PairClass::Chart { .. }, PairClass::Chart { .. }) => OverlapClass::IntraChart,
                (PairClass::Square { .. }, PairClass::Square { .. }) => OverlapClass::Square,
                _ => OverlapClass::ChartMorphism,
            }
        })
        .collect();
    let ok = validity.ok && termination.certified && diamond.confluent;
    Ok(CertifyReport {
        validity,
        termination,
        diamond,
        classes,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn test_zk_cover_builds_expected_shape() {
        for k in 1..=4usize {
            let diagram = build(fixtures::zk_cover(k)).unwrap();
            let sys = &diagram.system;
            assert_eq!(sys.quiver().num_vertices(), 3);
            assert_eq!(sys.quiver().num_arrows(), 9);
            assert_eq!(sys.pairs().len(), 10, "k = {k}");
            let counts = {
                let mut chart = 0;
                let mut restr = 0;
                let mut square = 0;
                for c in &diagram.provenance {
                    match c {
                        PairClass::Chart { .. } => chart += 1,
                        PairClass::Restriction { .. } => restr += 1,
                        PairClass::Square { .. } => square += 1,
                    }
                }
                (chart, restr, square)
            };
            assert_eq!(counts, (6, 4, 0));
        }
    }

    #[test]
    fn test_zk_cover_certifies() {
        let diagram = build(fixtures::zk_cover(3)).unwrap();
        let report = certify(&diagram, 100_000).unwrap();
        assert!(report.ok);
        let q = diagram.system.quiver().as_ref();
        let overlaps: BTreeSet<String> = report
            .diamond
            .overlaps
            .iter()
            .map(|r| r.overlap.render(q))
            .collect();
        let expected: BTreeSet<String> = ["u z f", "v zeta g", "w x y", "w y x", "x y x", "y x y"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(overlaps, expected);
    }

    #[test]
    fn test_zk_overlap_taxonomy() {
        let diagram = build(fixtures::zk_cover(2)).unwrap();
        let report = certify(&diagram, 100_000).unwrap();
        let counts = report.counts();
        assert_eq!(counts.get("intra-chart"), Some(&4));
        assert_eq!(counts.get("chart-morphism"), Some(&2));
        assert_eq!(counts.get("square"), None);
    }

    #[test]
    fn test_genus3_cover_certifies() {
        let diagram = build(fixtures::genus3_cover()).unwrap();
        assert_eq!(diagram.system.pairs().len(), 13);
        let report = certify(&diagram, 200_000).unwrap();
        assert!(report.ok);
        assert_eq!(report.diamond.num_ambiguities, 15);
    }

    #[test]
    fn test_genus3_broken_restriction_pinpoints_overlap() {
        // Perturbing z -> x^2 violates the chart-U curve equation; the u^4 f
        // overlap diverges and certify names it.
        let mut cover = fixtures::genus3_cover();
        for r in &mut cover.restrictions {
            if r.label == "f" {
                for (g, image) in &mut r.images {
                    if g == "z" {
                        *image = vec![(vec!["x".into(), "x".into()], BigRational::from_integer(1.into()))];
                    }
                }
            }
        }
        let diagram = build(cover).unwrap();
        let report = certify(&diagram, 200_000).unwrap();
        assert!(!report.ok);
        let q = diagram.system.quiver().as_ref();
        let failing: Vec<String> = report
            .diamond
            .overlaps
            .iter()
            .filter(|r| !r.joinable)
            .map(|r| r.overlap.render(q))
            .collect();
        assert!(failing.contains(&"u u u u f".to_string()), "{failing:?}");
    }

    #[test]
    fn test_zk_perturbed_restriction_stays_confluent() {
        // Both Z_k charts are free polynomial algebras, so changing the
        // transition exponent presents a different bundle but still a
        // consistent diagram.
        let mut cover = fixtures::zk_cover(3);
        for r in &mut cover.restrictions {
            if r.label == "g" {
                for (g, image) in &mut r.images {
                    if g == "v" {
                        *image = vec![(
                            vec!["x".into(), "x".into(), "w".into()],
                            BigRational::from_integer(1.into()),
                        )];
                    }
                }
            }
        }
        let diagram = build(cover).unwrap();
        let report = certify(&diagram, 100_000).unwrap();
        assert!(report.diamond.confluent);
    }

    #[test]
    fn test_hypercube_skeleton_shape_and_squares() {
        let diagram = build(fixtures::hypercube_cover(3).unwrap()).unwrap();
        let sys = &diagram.system;
        assert_eq!(sys.quiver().num_vertices(), 7);
        let squares = diagram
            .provenance
            .iter()
            .filter(|c| matches!(c, PairClass::Square { .. }))
            .count();
        assert_eq!(squares, 3);
        let report = certify(&diagram, 100_000).unwrap();
        assert!(report.ok);
        for (class, res) in report.classes.iter().zip(report.diamond.overlaps.iter()) {
            if *class == OverlapClass::Square {
                assert!(res.joinable);
            }
        }
    }

    #[test]
    fn test_r2_only_subsystem_confluent() {
        for n in 2..=4usize {
            let diagram = build(fixtures::hypercube_cover(n).unwrap()).unwrap();
            let squares = diagram
                .subsystem(|c| matches!(c, PairClass::Square { .. }))
                .unwrap();
            let report = squares.check_diamond(100_000).unwrap();
            assert!(report.confluent, "n = {n}");
        }
    }

    #[test]
    fn test_missing_intersection_chart_rejected() {
        let mut cover = fixtures::zk_cover(2);
        cover.charts.retain(|c| c.indices != vec![1, 2]);
        cover.restrictions.clear();
        assert!(build(cover).is_err());
    }

    #[test]
    fn test_reducible_restriction_image_rejected() {
        // x y reduces to e in the intersection chart, so it is not a valid image.
        let mut cover = fixtures::zk_cover(2);
        for r in &mut cover.restrictions {
            if r.label == "f" {
                for (g, image) in &mut r.images {
                    if g == "z" {
                        *image = vec![(
                            vec!["x".into(), "y".into()],
                            BigRational::from_integer(1.into()),
                        )];
                    }
                }
            }
        }
        assert!(build(cover).is_err());
    }

    #[test]
    fn test_irreducible_loop_count_matches_chart_basis() {
        // Intersection chart of the Z_k cover: monomial basis x^Z w^N; paths of
        // length <= 4 number 25 (|a| + c <= 4).
        let diagram = build(fixtures::zk_cover(3)).unwrap();
        let uv = diagram.vertex_of(&[1, 2]).unwrap();
        let loops: Vec<Path> = diagram
            .system
            .irreducible_paths_up_to(uv, 4)
            .into_iter()
            .filter(|p| p.target() == uv)
            .collect();
        assert_eq!(loops.len(), 25);
    }
}
