//! Shared helpers for integration tests.
//!
//! - A brute-force ambiguity enumerator working straight from the definition,
//!   used as an independent oracle against `ambiguity::enumerate`.
//! - Deterministic random generators for small reduction systems and paths.

// Each test target compiles this module separately and uses its own subset.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use starpath::{AlgebraElement, ArrowId, ParamSet, Path, Quiver, ReductionSystem, VertexId};
use std::collections::BTreeSet;
use std::sync::Arc;

/// All nonempty paths of the quiver with length in `1..=max_len`.
pub fn all_paths_up_to(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    let adjacency = adjacency(quiver);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ArrowId>> = quiver.arrows().map(|(id, _)| vec![id]).collect();
    while let Some(arrows) = stack.pop() {
        let path = Path::from_arrows(quiver, arrows.clone()).expect("walk is composable");
        if arrows.len() < max_len {
            for &next in &adjacency[path.target().0 as usize] {
                let mut longer = arrows.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
        out.push(path);
    }
    out
}

/// Arrow ids grouped by source vertex.
pub fn adjacency(quiver: &Quiver) -> Vec<Vec<ArrowId>> {
    let mut adj = vec![Vec::new(); quiver.num_vertices()];
    for (id, arrow) in quiver.arrows() {
        adj[arrow.source.0 as usize].push(id);
    }
    adj
}

/// Degree-n ambiguities by exhaustive search: a path `p` qualifies when it
/// factors as `u0 u1 .. u_{n+1}` with `u0` a single arrow, each `ui` (i >= 1)
/// irreducible, each product `ui u_{i+1}` reducible, and `ui d` irreducible
/// for every proper left subpath `d` of `u_{i+1}`.
pub fn brute_ambiguities(sys: &ReductionSystem, degree: usize) -> BTreeSet<Path> {
    let quiver = sys.quiver().as_ref();
    let max_lhs = sys
        .pairs()
        .iter()
        .map(|pair| pair.lhs.len())
        .max()
        .unwrap_or(0);
    if max_lhs < 2 {
        return BTreeSet::new();
    }
    // Every junction product contains a left-hand side ending at the junction
    // segment's last arrow, so each of the n+1 trailing segments is shorter
    // than the longest left-hand side.
    let bound = 1 + (degree + 1) * (max_lhs - 1);
    all_paths_up_to(quiver, bound)
        .into_iter()
        .filter(|p| is_ambiguity(sys, p, degree))
        .collect()
}

/// Whether some factorization of `p` witnesses a degree-n ambiguity.
fn is_ambiguity(sys: &ReductionSystem, p: &Path, degree: usize) -> bool {
    let segments = degree + 2;
    if p.len() < segments {
        return false;
    }
    let mut parts = vec![0usize; segments];
    parts[0] = 1;
    splits_witness(sys, p, &mut parts, 1, p.len() - 1)
}

/// Tries all ways to fill `parts[from..]` with positive lengths summing to
/// `remaining`, checking the ambiguity conditions on each complete split.
fn splits_witness(
    sys: &ReductionSystem,
    p: &Path,
    parts: &mut [usize],
    from: usize,
    remaining: usize,
) -> bool {
    let slots = parts.len() - from;
    if slots == 0 {
        return remaining == 0 && check_split(sys, p, parts);
    }
    // Each slot needs at least one arrow.
    for take in 1..=(remaining - (slots - 1)) {
        parts[from] = take;
        if splits_witness(sys, p, parts, from + 1, remaining - take) {
            return true;
        }
    }
    false
}

/// Evaluates the ambiguity conditions for one explicit split of `p`.
fn check_split(sys: &ReductionSystem, p: &Path, parts: &[usize]) -> bool {
    let quiver = sys.quiver().as_ref();
    let mut starts = Vec::with_capacity(parts.len());
    let mut at = 0;
    for &len in parts {
        starts.push(at);
        at += len;
    }
    let segment =
        |i: usize| -> Path { p.subpath(quiver, starts[i], parts[i]) };
    for i in 1..parts.len() {
        if !sys.is_irreducible(&segment(i)) {
            return false;
        }
    }
    for i in 0..parts.len() - 1 {
        let left = segment(i);
        let right = segment(i + 1);
        let product = left.compose(&right).expect("segments are consecutive");
        if sys.is_irreducible(&product) {
            return false;
        }
        // Proper left subpaths of `right`, the trivial path included.
        for cut in 0..right.len() {
            let stub = left.compose(&right.prefix(quiver, cut)).expect("prefix composes");
            if !sys.is_irreducible(&stub) {
                return false;
            }
        }
    }
    true
}

/// A random reduction system on a small quiver: at most two vertices, at most
/// four arrows, and monic pairs (zero right-hand sides) with left-hand sides
/// of length two or three that avoid the subpath obstruction.
pub fn random_system(rng: &mut ChaCha8Rng) -> ReductionSystem {
    loop {
        let num_vertices = rng.gen_range(1..=2usize);
        let num_arrows = rng.gen_range(2..=4usize);
        let vertices: Vec<String> = (0..num_vertices).map(|i| format!("v{i}")).collect();
        let arrows: Vec<(String, String, String)> = (0..num_arrows)
            .map(|i| {
                let source = rng.gen_range(0..num_vertices);
                // Bias toward loops so composable paths are plentiful.
                let target = if rng.gen_bool(0.5) {
                    source
                } else {
                    rng.gen_range(0..num_vertices)
                };
                (
                    format!("a{i}"),
                    vertices[source].clone(),
                    vertices[target].clone(),
                )
            })
            .collect();
        let quiver = Arc::new(Quiver::new(vertices, arrows).expect("labels are unique"));
        let candidates = all_paths_up_to(&quiver, 3);
        let mut lhs: Vec<Path> = Vec::new();
        for _ in 0..rng.gen_range(1..=4usize) {
            let pick = &candidates[rng.gen_range(0..candidates.len())];
            if pick.len() < 2 {
                continue;
            }
            let clash = lhs
                .iter()
                .any(|kept| kept.contains(pick) || pick.contains(kept));
            if !clash {
                lhs.push(pick.clone());
            }
        }
        if lhs.is_empty() {
            continue;
        }
        let params = ParamSet::empty();
        let pairs = lhs
            .into_iter()
            .map(|s| {
                let zero = AlgebraElement::zero(&params);
                (s, zero)
            })
            .collect();
        return ReductionSystem::new(quiver, pairs, None).expect("pairs share one parameter set");
    }
}

/// A uniformly random walk of exactly `len` arrows, if one exists.
pub fn random_path(rng: &mut ChaCha8Rng, quiver: &Quiver, len: usize) -> Option<Path> {
    let adjacency = adjacency(quiver);
    let num_arrows = quiver.num_arrows();
    if num_arrows == 0 || len == 0 {
        return None;
    }
    'attempt: for _ in 0..64 {
        let mut arrows = vec![ArrowId(rng.gen_range(0..num_arrows as u32))];
        while arrows.len() < len {
            let here: VertexId = quiver.arrow(*arrows.last().unwrap()).target;
            let next = &adjacency[here.0 as usize];
            if next.is_empty() {
                continue 'attempt;
            }
            arrows.push(next[rng.gen_range(0..next.len())]);
        }
        return Some(Path::from_arrows(quiver, arrows).expect("walk is composable"));
    }
    None
}
