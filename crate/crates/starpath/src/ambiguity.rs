//! Higher ambiguities of a reduction system and the induced bimodule basis counts.
//!
//! An n-ambiguity is a path `p = u₀u₁⋯u_{n+1}` where `u₀` is a single arrow, each
//! `uᵢ` (i ≥ 1) is a nonempty irreducible path, each junction `uᵢuᵢ₊₁` is reducible,
//! and `uᵢd` is irreducible for every proper left subpath `d` of `uᵢ₊₁` (minimality
//! of each extension). Writing `S` for the set of left-hand sides, the sets
//! `S₀ = vertices`, `S₁ = arrows`, `S₂ = S`, `S₃ = 1-ambiguities`, … index a
//! projective bimodule resolution, so their cardinalities are reported as dimensions.

use crate::path::Path;
use crate::rewrite::{ReductionSystem, TripleFactorization};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A degree-n ambiguity together with its canonical factorization `u₀, …, u_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ambiguity {
    pub path: Path,
    pub factors: Vec<Path>,
}

impl Ambiguity {
    pub fn degree(&self) -> usize {
        self.factors.len().saturating_sub(2)
    }
}

/// Enumerate all degree-n ambiguities (n ≥ 1). Extensions are anchored on the left:
/// each `u₀u₁` is a left-hand side split after its first arrow, and each further
/// `uᵢ₊₁` is the minimal right extension making the junction reducible, which is
/// always a proper tail of some left-hand side overlapping `uᵢ`. The optional
/// `max_len` prunes candidates longer than the cap (`Err` if anything was pruned,
/// so a `None`-cap enumeration is always exhaustive).
pub fn enumerate(
    sys: &ReductionSystem,
    degree: usize,
    max_len: Option<usize>,
) -> Result<Vec<Ambiguity>> {
    if degree == 0 {
        return Err(Error::input("ambiguity degree must be at least 1"));
    }
    let q = sys.quiver().as_ref();
    let mut states: Vec<Vec<Path>> = Vec::new();
    let mut seen_lhs = BTreeSet::new();
    for pair in sys.pairs() {
        if pair.lhs.len() < 2 || !seen_lhs.insert(pair.lhs.clone()) {
            continue;
        }
        let u0 = pair.lhs.prefix(q, 1);
        let u1 = pair.lhs.suffix(q, pair.lhs.len() - 1);
        if !sys.is_irreducible(&u1) {
            continue;
        }
        if !left_minimal(sys, &u0, &u1) {
            continue;
        }
        states.push(vec![u0, u1]);
    }
    let mut pruned = false;
    for _ in 0..degree {
        let mut next = Vec::new();
        for factors in &states {
            let last = factors.last().unwrap();
            for ext in minimal_extensions(sys, last) {
                let total: usize = factors.iter().map(Path::len).sum::<usize>() + ext.len();
                if let Some(cap) = max_len {
                    if total > cap {
                        pruned = true;
                        continue;
                    }
                }
                let mut f = factors.clone();
                f.push(ext);
                next.push(f);
            }
        }
        states = next;
    }
    if pruned {
        return Err(Error::cap(format!(
            "ambiguity enumeration pruned by length cap {}",
            max_len.unwrap()
        )));
    }
    let mut out: Vec<Ambiguity> = states
        .into_iter()
        .map(|factors| {
            let mut path = factors[0].clone();
            for f in &factors[1..] {
                path = path.compose(f).expect("factors compose by construction");
            }
            Ambiguity { path, factors }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All minimal nonempty extensions `b` of `last` such that `last·b` is reducible:
/// candidates are proper tails of left-hand sides whose head overlaps a suffix of
/// `last`; minimality (`last·d` irreducible for every proper left subpath `d` of
/// `b`) and irreducibility of `b` are then checked literally.
fn minimal_extensions(sys: &ReductionSystem, last: &Path) -> Vec<Path> {
    let q = sys.quiver().as_ref();
    let mut candidates = BTreeSet::new();
    for pair in sys.pairs() {
        let s = &pair.lhs;
        let max_overlap = last.len().min(s.len().saturating_sub(1));
        for l in 1..=max_overlap {
            if last.suffix(q, l).arrows() == s.prefix(q, l).arrows() {
                candidates.insert(s.suffix(q, s.len() - l));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|b| sys.is_irreducible(b) && left_minimal(sys, last, b))
        .collect()
}

/// `last·d` irreducible for every proper left subpath `d` of `b` (including the
/// trivial one).
fn left_minimal(sys: &ReductionSystem, last: &Path, b: &Path) -> bool {
    let q = sys.quiver().as_ref();
    for dlen in 0..b.len() {
        let d = b.prefix(q, dlen);
        let ld = last.compose(&d).expect("prefix composes");
        if !sys.is_irreducible(&ld) {
            return false;
        }
    }
    true
}

/// All `(u, v, w)` with `p = u·v·w`, all three nonempty, and `uv`, `vw` both
/// left-hand sides. These are exactly the splittings the Maurer-Cartan and diamond
/// checks must resolve.
pub fn triple_factorizations(sys: &ReductionSystem, p: &Path) -> Vec<TripleFactorization> {
    let q = sys.quiver().as_ref();
    let n = p.len();
    let mut out = Vec::new();
    for i in 1..n {
        for j in (i + 1)..n {
            let uv = p.prefix(q, j);
            let vw = p.suffix(q, n - i);
            let uv_pair = sys.pairs().iter().position(|pr| pr.lhs == uv);
            let vw_pair = sys.pairs().iter().position(|pr| pr.lhs == vw);
            if let (Some(a), Some(b)) = (uv_pair, vw_pair) {
                out.push(TripleFactorization {
                    u: p.prefix(q, i),
                    v: p.subpath(q, i, j - i),
                    w: p.suffix(q, n - j),
                    uv_pair: a,
                    vw_pair: b,
                });
            }
        }
    }
    out
}

/// Cardinalities `(|S₀|, |S₁|, |S₂|, |S₃|, …, |S_{n+2}|)`.
pub fn basis_dims(sys: &ReductionSystem, up_to_degree: usize) -> Result<Vec<usize>> {
    let mut dims = vec![
        sys.quiver().num_vertices(),
        sys.quiver().num_arrows(),
        sys.pairs().len(),
    ];
    for n in 1..=up_to_degree {
        dims.push(enumerate(sys, n, None)?.len());
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn test_zk_tilting_degree1() {
        // S₃ = {x₁ y_j x₀ : 0 < j < k−1}, empty for k = 2.
        for k in 2..=6usize {
            let fx = fixtures::zk_tilting(k).unwrap();
            let ambs = enumerate(&fx.system, 1, None).unwrap();
            assert_eq!(ambs.len(), k - 2, "k = {k}");
            let q = fx.system.quiver().as_ref();
            for (idx, amb) in ambs.iter().enumerate() {
                let j = idx + 1;
                let expected =
                    Path::from_labels(q, &["x1", &format!("y{j}"), "x0"]).unwrap();
                assert_eq!(amb.path, expected);
                assert_eq!(amb.factors.len(), 3);
            }
        }
    }

    #[test]
    fn test_zk_tilting_degree2_empty() {
        for k in 2..=6usize {
            let fx = fixtures::zk_tilting(k).unwrap();
            assert!(enumerate(&fx.system, 2, None).unwrap().is_empty());
        }
    }

    #[test]
    fn test_zk_tilting_dims() {
        // (|Q₀|, |Q₁|, |S|, |S₃|, |S₄|) = (2, k+2, 2(k−1), k−2, 0).
        for k in 2..=6usize {
            let fx = fixtures::zk_tilting(k).unwrap();
            let dims = basis_dims(&fx.system, 2).unwrap();
            assert_eq!(dims, vec![2, k + 2, 2 * (k - 1), k - 2, 0], "k = {k}");
        }
    }

    #[test]
    fn test_triple_factorizations_power_overlap() {
        // x₃^{n+1} factors uniquely as (x₃, x₃^{n-1}, x₃).
        for n in 2..=4u32 {
            let fx = fixtures::hypersurface_example(n).unwrap();
            let sys = &fx.system;
            let q = sys.quiver().as_ref();
            let labels: Vec<&str> = std::iter::repeat("x3").take(n as usize + 1).collect();
            let p = Path::from_labels(q, &labels).unwrap();
            let facts = triple_factorizations(sys, &p);
            assert_eq!(facts.len(), 1, "n = {n}");
            assert_eq!(facts[0].u.len(), 1);
            assert_eq!(facts[0].v.len(), n as usize - 1);
            assert_eq!(facts[0].w.len(), 1);
        }
    }

    #[test]
    fn test_degree_zero_rejected() {
        let fx = fixtures::zk_tilting(3).unwrap();
        assert!(enumerate(&fx.system, 0, None).is_err());
    }

    #[test]
    fn test_length_cap_prunes_with_error() {
        let fx = fixtures::genus3_curve().unwrap();
        // Cap far below the true ambiguity lengths: must report pruning.
        assert!(enumerate(&fx.system, 1, Some(2)).is_err());
    }
}
