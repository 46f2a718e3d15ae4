//! Deformations of a reduction system: the combinatorial star product, the
//! Maurer-Cartan (associativity) check over all overlap ambiguities, residual
//! variety equations, the 2-cocycle check and the degree condition.
//!
//! A deformation map φ̃ assigns to left-hand sides parallel irreducible values whose
//! coefficients vanish at parameter zero. The star product of two irreducible
//! elements rewrites their free product, replacing at each step the rightmost
//! occurrence of a left-hand side `s` by `φ_s + φ̃_s`, truncating coefficients per
//! the declared policy.

use crate::ambiguity;
use crate::element::AlgebraElement;
use crate::order::{AdmissibleOrder, OrderRelation};
use crate::path::Path;
use crate::poly::{ParamPolynomial, ParamSet, TruncationPolicy};
use crate::quiver::VertexId;
use crate::rewrite::{ReductionSystem, DEFAULT_MAX_STEPS};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// A deformation of the right-hand sides: `s ↦ φ̃(s)`, zero for unlisted `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationMap {
    params: Arc<ParamSet>,
    entries: BTreeMap<Path, AlgebraElement>,
}

impl DeformationMap {
    /// Validates: every key is a left-hand side of `sys`, every value is parallel
    /// to its key, irreducible, and has coefficients with zero constant term.
    pub fn new(
        sys: &ReductionSystem,
        params: Arc<ParamSet>,
        entries: Vec<(Path, AlgebraElement)>,
    ) -> Result<DeformationMap> {
        let q = sys.quiver().as_ref();
        let mut map = BTreeMap::new();
        for (s, value) in entries {
            if !sys.pairs().iter().any(|p| p.lhs == s) {
                return Err(Error::input(format!(
                    "deformation entry `{}` is not a left-hand side of the system",
                    s.render(q)
                )));
            }
            let value = value.with_params(&params)?;
            for (p, c) in value.terms() {
                if !p.is_parallel_to(&s) {
                    return Err(Error::input(format!(
                        "deformation value path `{}` is not parallel to `{}`",
                        p.render(q),
                        s.render(q)
                    )));
                }
                if !sys.is_irreducible(p) {
                    return Err(Error::input(format!(
                        "deformation value path `{}` is reducible",
                        p.render(q)
                    )));
                }
                if !c.has_zero_constant_term() {
                    return Err(Error::input(format!(
                        "coefficient of `{}` in the deformation of `{}` has a nonzero \
                         constant term",
                        p.render(q),
                        s.render(q)
                    )));
                }
            }
            if !value.is_zero() && map.insert(s.clone(), value).is_some() {
                return Err(Error::input(format!(
                    "duplicate deformation entry for `{}`",
                    s.render(q)
                )));
            }
        }
        Ok(DeformationMap {
            params,
            entries: map,
        })
    }

    pub fn zero(params: Arc<ParamSet>) -> DeformationMap {
        DeformationMap {
            params,
            entries: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Path, &AlgebraElement)> {
        self.entries.iter()
    }

    pub fn value(&self, s: &Path) -> Option<&AlgebraElement> {
        self.entries.get(s)
    }

    pub fn max_param_degree(&self) -> u32 {
        self.entries
            .values()
            .map(|v| v.max_param_degree())
            .max()
            .unwrap_or(0)
    }

    /// Same entries re-truncated under a different policy.
    pub fn with_policy(&self, policy: TruncationPolicy) -> Result<DeformationMap> {
        let params = self.params.with_policy(policy);
        let mut entries = BTreeMap::new();
        for (s, v) in &self.entries {
            let v = v.with_params(&params)?;
            if !v.is_zero() {
                entries.insert(s.clone(), v);
            }
        }
        Ok(DeformationMap { params, entries })
    }
}

/// Precomputed star-product session for one system and one deformation map.
pub struct StarContext<'a> {
    sys: &'a ReductionSystem,
    params: Arc<ParamSet>,
    /// `φ(s) + φ̃(s)` per pair, declared over `params`.
    deformed_rhs: Vec<AlgebraElement>,
    max_steps: u64,
}

impl<'a> StarContext<'a> {
    pub fn new(
        sys: &'a ReductionSystem,
        phi: &DeformationMap,
        max_steps: u64,
    ) -> Result<StarContext<'a>> {
        let params = Arc::clone(phi.params());
        let mut deformed_rhs = Vec::with_capacity(sys.pairs().len());
        for pair in sys.pairs() {
            let mut rhs = pair.rhs.promote(&params)?;
            if let Some(tilde) = phi.value(&pair.lhs) {
                rhs = rhs.add(&tilde.with_params(&params)?)?;
            }
            deformed_rhs.push(rhs);
        }
        Ok(StarContext {
            sys,
            params,
            deformed_rhs,
            max_steps,
        })
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    /// Re-declare an element over this session's parameters (by name, or promoted
    /// from a parameter-free declaration).
    pub fn adopt(&self, elem: &AlgebraElement) -> Result<AlgebraElement> {
        if elem.params().same_names(&self.params) {
            elem.with_params(&self.params)
        } else if elem.params().is_empty() {
            elem.promote(&self.params)
        } else {
            Err(Error::input(
                "element parameters do not match the deformation parameters",
            ))
        }
    }

    /// Star product: normalize both inputs with the undeformed system, multiply
    /// freely, then rewrite rightmost occurrences by `φ + φ̃` until irreducible.
    pub fn star(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let a = self.project(&self.adopt(a)?)?;
        let b = self.project(&self.adopt(b)?)?;
        let free = a.free_mul(&b)?;
        self.deformed_normal_form(&free)
    }

    /// Star product of two plain paths.
    pub fn star_paths(&self, a: &Path, b: &Path) -> Result<AlgebraElement> {
        self.star(
            &AlgebraElement::from_path(&self.params, a.clone()),
            &AlgebraElement::from_path(&self.params, b.clone()),
        )
    }

    /// Undeformed normal form (the projection π onto irreducibles).
    pub fn project(&self, elem: &AlgebraElement) -> Result<AlgebraElement> {
        let nf = self.sys.nf_rightmost(elem, self.max_steps)?;
        if !nf.completed {
            return Err(Error::cap(format!(
                "normal form did not terminate within {} steps",
                self.max_steps
            )));
        }
        Ok(nf.element)
    }

    /// Rewrite every term, always at its rightmost reducible occurrence, by the
    /// deformed right-hand sides. Terms are linear, so they are processed
    /// independently; coefficients are truncated per the session policy.
    pub fn deformed_normal_form(&self, elem: &AlgebraElement) -> Result<AlgebraElement> {
        let q = self.sys.quiver().as_ref();
        let mut out = AlgebraElement::zero(&self.params);
        let mut work: BTreeMap<Path, ParamPolynomial> = BTreeMap::new();
        for (p, c) in elem.terms() {
            work.insert(p.clone(), c.clone());
        }
        let mut steps = 0u64;
        while let Some((path, coeff)) = work.pop_first() {
            if coeff.is_zero() {
                continue;
            }
            let occs = self.sys.occurrences_in(&path);
            match occs.last() {
                None => out.add_term(path, coeff)?,
                Some(&(start, pair_idx)) => {
                    steps += 1;
                    if steps > self.max_steps {
                        return Err(Error::cap(format!(
                            "star product did not terminate within {} rewrite steps",
                            self.max_steps
                        )));
                    }
                    let lhs_len = self.sys.pairs()[pair_idx].lhs.len();
                    let prefix = path.prefix(q, start);
                    let suffix = path.suffix(q, path.len() - start - lhs_len);
                    for (rp, rc) in self.deformed_rhs[pair_idx].terms() {
                        let np = prefix
                            .compose(rp)
                            .and_then(|x| x.compose(&suffix))
                            .expect("replacement is parallel");
                        let nc = coeff.mul(rc)?;
                        if nc.is_zero() {
                            continue;
                        }
                        match work.remove(&np) {
                            None => {
                                work.insert(np, nc);
                            }
                            Some(old) => {
                                let sum = old.add(&nc)?;
                                if !sum.is_zero() {
                                    work.insert(np, sum);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Requested Maurer-Cartan policy. `Auto` follows the default rule: keep the
/// family's declared policy when it is a truncation or when termination is
/// ≺-certified, otherwise truncate at twice the largest parameter degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McPolicy {
    Auto,
    Exact,
    Truncate(u32),
}

#[derive(Debug, Clone, Copy)]
pub struct McOptions {
    pub policy: McPolicy,
    pub max_steps: u64,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            policy: McPolicy::Auto,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

/// One overlap associativity test: `(πu ⋆ πv) ⋆ πw` versus `πu ⋆ (πv ⋆ πw)`.
#[derive(Debug, Clone)]
pub struct McRow {
    pub ambiguity: Path,
    pub u: Path,
    pub v: Path,
    pub w: Path,
    pub left: AlgebraElement,
    pub right: AlgebraElement,
    pub residual: AlgebraElement,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct McReport {
    pub rows: Vec<McRow>,
    pub pass: bool,
    /// Effective coefficient policy the check ran under.
    pub policy: TruncationPolicy,
    /// True when an order certificate plus the full degree condition guarantee
    /// termination a priori.
    pub certified: bool,
    pub verdict: String,
}

impl McReport {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!(
                "overlap {}  [{} | {} | {}]: {}\n",
                row.ambiguity.render(q),
                row.u.render(q),
                row.v.render(q),
                row.w.render(q),
                if row.pass { "associative" } else { "FAILS" }
            ));
            if !row.pass {
                out.push_str(&format!("  residual: {}\n", row.residual.render(q)));
            }
        }
        out.push_str(&format!("maurer-cartan: {}\n", self.verdict));
        out
    }
}

/// True when the order certifies termination and the full degree condition holds,
/// so star products are a priori finite.
pub fn certified_exact(sys: &ReductionSystem, phi: &DeformationMap) -> bool {
    match sys.order() {
        None => false,
        Some(order) => {
            sys.check_termination(order).certified && degree_condition(phi, order, None).pass
        }
    }
}

fn effective_policy(sys: &ReductionSystem, phi: &DeformationMap, policy: McPolicy) -> (TruncationPolicy, bool) {
    let certified = certified_exact(sys, phi);
    let effective = match policy {
        McPolicy::Exact => TruncationPolicy::Exact,
        McPolicy::Truncate(n) => TruncationPolicy::Truncate(n),
        McPolicy::Auto => match phi.params().policy() {
            TruncationPolicy::Truncate(n) => TruncationPolicy::Truncate(n),
            TruncationPolicy::Exact if certified => TruncationPolicy::Exact,
            TruncationPolicy::Exact => {
                TruncationPolicy::Truncate(2 * phi.max_param_degree())
            }
        },
    };
    (effective, certified)
}

/// Check associativity of the star product over every degree-1 ambiguity and every
/// triple factorization, under the effective truncation policy.
pub fn mc_check(
    sys: &ReductionSystem,
    phi: &DeformationMap,
    opts: McOptions,
) -> Result<McReport> {
    let (policy, certified) = effective_policy(sys, phi, opts.policy);
    let phi_eff = phi.with_policy(policy)?;
    let ctx = StarContext::new(sys, &phi_eff, opts.max_steps)?;
    let mut rows = Vec::new();
    let ambiguities = ambiguity::enumerate(sys, 1, None)?;
    for amb in &ambiguities {
        for f in ambiguity::triple_factorizations(sys, &amb.path) {
            let pu = ctx.project(&AlgebraElement::from_path(ctx.params(), f.u.clone()))?;
            let pv = ctx.project(&AlgebraElement::from_path(ctx.params(), f.v.clone()))?;
            let pw = ctx.project(&AlgebraElement::from_path(ctx.params(), f.w.clone()))?;
            let left = ctx.star(&ctx.star(&pu, &pv)?, &pw)?;
            let right = ctx.star(&pu, &ctx.star(&pv, &pw)?)?;
            let residual = left.sub(&right)?;
            let pass = residual.is_zero();
            rows.push(McRow {
                ambiguity: amb.path.clone(),
                u: f.u,
                v: f.v,
                w: f.w,
                left,
                right,
                residual,
                pass,
            });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    let verdict = if !pass {
        "fails".to_string()
    } else {
        match policy {
            TruncationPolicy::Exact if certified => {
                "verified exactly (order-certified termination)".to_string()
            }
            TruncationPolicy::Exact => {
                "verified exactly (terminated within step cap)".to_string()
            }
            TruncationPolicy::Truncate(n) => {
                format!("verified modulo m^{}", n + 1)
            }
        }
    };
    Ok(McReport {
        rows,
        pass,
        policy,
        certified,
        verdict,
    })
}

/// The normalized coefficient equations cutting out the variety on which the family
/// satisfies Maurer-Cartan: each residual coefficient polynomial, divided by its
/// rational content, sign-normalized, deduplicated and sorted.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub equations: Vec<ParamPolynomial>,
    pub policy: TruncationPolicy,
    pub mc_pass: bool,
}

pub fn mc_residual_equations(
    sys: &ReductionSystem,
    phi: &DeformationMap,
    opts: McOptions,
) -> Result<ResidualReport> {
    let report = mc_check(sys, phi, opts)?;
    let mut set = BTreeSet::new();
    for row in &report.rows {
        for (_, coeff) in row.residual.terms() {
            let n = coeff.content_normalized();
            if !n.is_zero() {
                set.insert(n);
            }
        }
    }
    Ok(ResidualReport {
        equations: set.into_iter().collect(),
        policy: report.policy,
        mc_pass: report.pass,
    })
}

/// The 2-cocycle condition: associativity modulo m², i.e. the Maurer-Cartan check
/// truncated at parameter degree 1.
pub fn cocycle_check(
    sys: &ReductionSystem,
    phi: &DeformationMap,
    max_steps: u64,
) -> Result<McReport> {
    mc_check(
        sys,
        phi,
        McOptions {
            policy: McPolicy::Truncate(1),
            max_steps,
        },
    )
}

/// Per-entry degree condition report: `φ̃(s)` must lie strictly below `s`.
#[derive(Debug, Clone)]
pub struct DegreeConditionRow {
    pub s: Path,
    pub failing: Vec<Path>,
    /// Entry lies outside the restricted subset: informational only, the
    /// restricted certificate does not constrain it.
    pub outside_subset: bool,
}

impl DegreeConditionRow {
    pub fn ok(&self) -> bool {
        self.outside_subset || self.failing.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DegreeConditionReport {
    pub rows: Vec<DegreeConditionRow>,
    /// Every entry inside the subset is strictly below its left-hand side.
    pub pass: bool,
    /// No nonzero entry lies outside the subset (so the restricted certificate
    /// covers the whole support).
    pub covers_support: bool,
    pub subset: Option<BTreeSet<Path>>,
}

impl DegreeConditionReport {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        for row in &self.rows {
            if row.outside_subset {
                out.push_str(&format!(
                    "{}: outside the restricted subset (not constrained)\n",
                    row.s.render(q)
                ));
            } else if row.ok() {
                out.push_str(&format!("{}: below lhs\n", row.s.render(q)));
            } else {
                out.push_str(&format!(
                    "{}: NOT below lhs for {}\n",
                    row.s.render(q),
                    row.failing
                        .iter()
                        .map(|p| p.render(q))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
        }
        out.push_str(&format!(
            "degree condition: {}\n",
            if self.pass { "HOLDS" } else { "FAILS" }
        ));
        out
    }
}

/// Check `φ̃(s) ∈ kQ_{≺ s}` for every entry in the restricted subset (all entries
/// when `restrict_to` is absent). Entries outside the subset are reported but not
/// constrained; `covers_support` records whether any exist.
pub fn degree_condition(
    phi: &DeformationMap,
    order: &AdmissibleOrder,
    restrict_to: Option<&BTreeSet<Path>>,
) -> DegreeConditionReport {
    let mut rows = Vec::new();
    for (s, value) in phi.entries() {
        let outside_subset = restrict_to.map(|set| !set.contains(s)).unwrap_or(false);
        let failing: Vec<Path> = if outside_subset {
            Vec::new()
        } else {
            value
                .paths()
                .filter(|p| order.compare(p, s) != OrderRelation::Less)
                .cloned()
                .collect()
        };
        rows.push(DegreeConditionRow {
            s: s.clone(),
            failing,
            outside_subset,
        });
    }
    let pass = rows.iter().all(|r| r.ok());
    let covers_support = rows.iter().all(|r| !r.outside_subset);
    DegreeConditionReport {
        rows,
        pass,
        covers_support,
        subset: restrict_to.cloned(),
    }
}

/// Star product restricted to the corner at `vertex`: both factors must be
/// supported on loops at that vertex.
pub fn corner_product(
    sys: &ReductionSystem,
    phi: &DeformationMap,
    vertex: VertexId,
    a: &AlgebraElement,
    b: &AlgebraElement,
    max_steps: u64,
) -> Result<AlgebraElement> {
    for (name, elem) in [("left", a), ("right", b)] {
        for p in elem.paths() {
            if p.source() != vertex || p.target() != vertex {
                return Err(Error::input(format!(
                    "{name} factor is not supported on loops at vertex `{}`",
                    sys.quiver().vertex(vertex).label
                )));
            }
        }
    }
    let ctx = StarContext::new(sys, phi, max_steps)?;
    ctx.star(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_rational::BigRational;

    #[test]
    fn test_star_with_zero_deformation_is_projected_product() {
        // φ̃ = 0: a ⋆ b = π(ab) on sampled paths.
        let fx = fixtures::zk_tilting(4).unwrap();
        let sys = &fx.system;
        let phi = DeformationMap::zero(Arc::clone(sys.params()));
        let ctx = StarContext::new(sys, &phi, DEFAULT_MAX_STEPS).unwrap();
        let q = sys.quiver().as_ref();
        let a = Path::from_labels(q, &["x1", "y1"]).unwrap();
        let b = Path::from_labels(q, &["x0", "y2"]).unwrap();
        let star = ctx.star_paths(&a, &b).unwrap();
        let plain = sys
            .nf_rightmost(
                &AlgebraElement::from_path(sys.params(), a.compose(&b).unwrap()),
                DEFAULT_MAX_STEPS,
            )
            .unwrap();
        assert_eq!(star, plain.element);
    }

    #[test]
    fn test_alpha_family_mc_exact() {
        // Σ α_j t_j on the tilting system: both associations equal x0 y_j x1.
        for k in 3..=5usize {
            let fx = fixtures::zk_tilting(k).unwrap();
            let phi = fx.families.get("alpha-family").unwrap();
            let report = mc_check(&fx.system, phi, McOptions::default()).unwrap();
            assert!(report.pass, "k = {k}");
            assert!(report.certified, "alpha family satisfies the degree condition");
            assert_eq!(report.policy, TruncationPolicy::Exact);
            let q = fx.system.quiver().as_ref();
            for (idx, row) in report.rows.iter().enumerate() {
                let j = idx + 1;
                let expected = AlgebraElement::from_path(
                    row.left.params(),
                    Path::from_labels(q, &["x0", &format!("y{j}"), "x1"]).unwrap(),
                );
                assert_eq!(row.left, expected);
            }
        }
    }

    #[test]
    fn test_beta012_family_fails_mc_but_is_cocycle() {
        for k in 4..=5usize {
            let fx = fixtures::zk_tilting(k).unwrap();
            let phi = fx.families.get("beta012").unwrap();
            let mc = mc_check(&fx.system, phi, McOptions::default()).unwrap();
            assert!(!mc.pass, "k = {k}: the t2 direction obstructs at j = k-2");
            let co = cocycle_check(&fx.system, phi, DEFAULT_MAX_STEPS).unwrap();
            assert!(co.pass, "k = {k}: each beta_l is a 2-cocycle");
        }
    }

    #[test]
    fn test_degree_condition_restricted_subset() {
        let fx = fixtures::zk_tilting(4).unwrap();
        let sys = &fx.system;
        let phi = fx.families.get("alpha-family").unwrap();
        let order = sys.order().unwrap();
        let full = degree_condition(phi, order, None);
        assert!(full.pass);
        assert!(full.covers_support);
        // Restrict to an empty subset: the check is vacuous, but the certificate
        // does not cover the support.
        let empty = BTreeSet::new();
        let restricted = degree_condition(phi, order, Some(&empty));
        assert!(restricted.pass);
        assert!(!restricted.covers_support);
        assert!(restricted.rows.iter().all(|r| r.outside_subset));
    }

    #[test]
    fn test_deformation_map_rejects_constant_terms() {
        let fx = fixtures::zk_tilting(3).unwrap();
        let sys = &fx.system;
        let q = sys.quiver().as_ref();
        let params = ParamSet::new(vec!["t".into()], TruncationPolicy::Exact).unwrap();
        let s = Path::from_labels(q, &["x1", "y0"]).unwrap();
        let one = AlgebraElement::from_path(
            &params,
            Path::from_labels(q, &["x0", "y1"]).unwrap(),
        );
        // Coefficient 1 has a nonzero constant term.
        assert!(DeformationMap::new(sys, Arc::clone(&params), vec![(s, one)]).is_err());
    }

    #[test]
    fn test_deformation_map_rejects_foreign_lhs() {
        let fx = fixtures::zk_tilting(3).unwrap();
        let sys = &fx.system;
        let q = sys.quiver().as_ref();
        let params = ParamSet::new(vec!["t".into()], TruncationPolicy::Exact).unwrap();
        let not_lhs = Path::from_labels(q, &["x0", "y0"]).unwrap();
        let t = ParamPolynomial::parameter(&params, 0).unwrap();
        let v = AlgebraElement::from_terms(
            &params,
            [(Path::from_labels(q, &["x0", "y0"]).unwrap(), t)],
        )
        .unwrap();
        assert!(DeformationMap::new(sys, Arc::clone(&params), vec![(not_lhs, v)]).is_err());
    }

    #[test]
    fn test_corner_product_support_check() {
        let fx = fixtures::zk_tilting(3).unwrap();
        let sys = &fx.system;
        let q = sys.quiver().as_ref();
        let phi = DeformationMap::zero(Arc::clone(sys.params()));
        let v0 = q.vertex_id("0").unwrap();
        let loop0 = AlgebraElement::from_path(
            sys.params(),
            Path::from_labels(q, &["x0", "y0"]).unwrap(),
        );
        let arrow = AlgebraElement::from_path(
            sys.params(),
            Path::from_labels(q, &["x0"]).unwrap(),
        );
        assert!(corner_product(sys, &phi, v0, &loop0, &loop0, DEFAULT_MAX_STEPS).is_ok());
        assert!(corner_product(sys, &phi, v0, &loop0, &arrow, DEFAULT_MAX_STEPS).is_err());
    }

    #[test]
    fn test_residual_equations_zero_for_passing_family() {
        let fx = fixtures::zk_tilting(4).unwrap();
        let phi = fx.families.get("alpha-family").unwrap();
        let res = mc_residual_equations(&fx.system, phi, McOptions::default()).unwrap();
        assert!(res.mc_pass);
        assert!(res.equations.is_empty());
    }

    #[test]
    fn test_truncation_policy_threading() {
        // Under truncate(1) the beta012 residual (degree 2) is invisible.
        let fx = fixtures::zk_tilting(4).unwrap();
        let phi = fx.families.get("beta012").unwrap();
        let r1 = mc_check(
            &fx.system,
            phi,
            McOptions {
                policy: McPolicy::Truncate(1),
                max_steps: DEFAULT_MAX_STEPS,
            },
        )
        .unwrap();
        assert!(r1.pass);
        let r2 = mc_check(
            &fx.system,
            phi,
            McOptions {
                policy: McPolicy::Truncate(2),
                max_steps: DEFAULT_MAX_STEPS,
            },
        )
        .unwrap();
        assert!(!r2.pass);
    }

    #[test]
    fn test_evaluate_star_identity() {
        // Corner identities survive parameter evaluation: check a star product
        // evaluated at t = 1 equals the evaluation of the symbolic product.
        let fx = fixtures::zk_tilting(3).unwrap();
        let sys = &fx.system;
        let phi = fx.families.get("alpha-family").unwrap();
        let ctx = StarContext::new(sys, phi, DEFAULT_MAX_STEPS).unwrap();
        let q = sys.quiver().as_ref();
        let a = Path::from_labels(q, &["x1", "y1"]).unwrap();
        let b = Path::from_labels(q, &["x0", "y2"]).unwrap();
        let sym = ctx.star_paths(&a, &b).unwrap();
        let ones: Vec<BigRational> = (0..phi.params().len())
            .map(|_| BigRational::from_integer(1.into()))
            .collect();
        let eval = sym.evaluate(&ones).unwrap();
        assert_eq!(eval.max_param_degree(), 0);
        assert!(eval.num_terms() > 0);
    }
}
