//! Hypersurface algebras k[x_1..x_d]/(f) with monic leading power x_d^n: the
//! induced reduction system (leading pair plus commutators), the closed-form
//! ambiguity basis x_d^{nj} x_{i_k}..x_{i_1}, the explicit differential built from
//! partial derivatives of f, and second-cohomology candidate verification.

use crate::deform::{cocycle_check, DeformationMap, McReport};
use crate::element::AlgebraElement;
use crate::order::AdmissibleOrder;
use crate::path::Path;
use crate::poly::ParamSet;
use crate::quiver::Quiver;
use crate::rewrite::ReductionSystem;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Commutative polynomial data: exponent vector (length d) to coefficient.
pub type CommPoly = BTreeMap<Vec<u32>, BigRational>;

/// f = x_d^n + tail, monic in the leading power, tail of total degree at most n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    d: usize,
    n: u32,
    tail: CommPoly,
}

impl Hypersurface {
    pub fn new(d: usize, n: u32, tail: Vec<(Vec<u32>, BigRational)>) -> Result<Hypersurface> {
        if d < 1 {
            return Err(Error::input("hypersurface needs at least one variable"));
        }
        if n < 2 {
            return Err(Error::input("leading exponent must be at least 2"));
        }
        let mut map = CommPoly::new();
        for (exps, coeff) in tail {
            if exps.len() != d {
                return Err(Error::input(format!(
                    "tail exponent vector has length {}, expected {d}",
                    exps.len()
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            let total: u32 = exps.iter().sum();
            if total > n {
                return Err(Error::input(format!(
                    "tail monomial of total degree {total} exceeds the leading degree {n}"
                )));
            }
            let mut pure = vec![0u32; d];
            pure[d - 1] = n;
            if exps == pure {
                return Err(Error::input(
                    "tail may not contain the pure leading power (f must be monic)",
                ));
            }
            let entry = map.entry(exps).or_insert_with(BigRational::zero);
            *entry += coeff;
            if entry.is_zero() {
                map.retain(|_, c| !c.is_zero());
            }
        }
        Ok(Hypersurface { d, n, tail: map })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tail(&self) -> &CommPoly {
        &self.tail
    }

    /// Variable labels are `x1 .. xd` (1-based).
    pub fn var_label(i: usize) -> String {
        format!("x{i}")
    }

    /// The full polynomial f as exponent-vector data (leading term included).
    pub fn full_poly(&self) -> CommPoly {
        let mut f = self.tail.clone();
        let mut lead = vec![0u32; self.d];
        lead[self.d - 1] = self.n;
        *f.entry(lead).or_insert_with(BigRational::zero) += BigRational::one();
        f.retain(|_, c| !c.is_zero());
        f
    }

    /// Formal commutative partial derivative of f with respect to x_i (1-based).
    pub fn partial(&self, i: usize) -> Result<CommPoly> {
        if i < 1 || i > self.d {
            return Err(Error::input(format!("variable index {i} out of range")));
        }
        let mut out = CommPoly::new();
        for (exps, coeff) in self.full_poly() {
            let e = exps[i - 1];
            if e == 0 {
                continue;
            }
            let mut de = exps.clone();
            de[i - 1] = e - 1;
            let c = coeff * BigRational::from_integer(e.into());
            let entry = out.entry(de).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// One vertex, d loops, pairs {(x_d^n, -tail)} plus all commutators
    /// (x_j x_i, x_i x_j) for i < j, ordered by shortlex with x1 < .. < xd.
    pub fn build(&self) -> Result<BuiltHypersurface> {
        let arrows: Vec<(String, String, String)> = (1..=self.d)
            .map(|i| (Self::var_label(i), "*".to_string(), "*".to_string()))
            .collect();
        let quiver = Arc::new(Quiver::new(vec!["*".to_string()], arrows)?);
        let params = ParamSet::empty();
        let lead = {
            let labels: Vec<String> = (0..self.n).map(|_| Self::var_label(self.d)).collect();
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            Path::from_labels(&quiver, &refs)?
        };
        let mut rhs = AlgebraElement::zero(&params);
        for (exps, coeff) in &self.tail {
            rhs = rhs.add(&AlgebraElement::from_terms(
                &params,
                [(
                    monomial_path(&quiver, exps)?,
                    crate::poly::ParamPolynomial::constant(&params, -coeff.clone()),
                )],
            )?)?;
        }
        let mut pairs = vec![(lead, rhs)];
        for j in 2..=self.d {
            for i in 1..j {
                let lhs = Path::from_labels(
                    &quiver,
                    &[Self::var_label(j).as_str(), Self::var_label(i).as_str()],
                )?;
                let rhs_path = Path::from_labels(
                    &quiver,
                    &[Self::var_label(i).as_str(), Self::var_label(j).as_str()],
                )?;
                pairs.push((lhs, AlgebraElement::from_path(&params, rhs_path)));
            }
        }
        let precedence: Vec<String> = (1..=self.d).map(Self::var_label).collect();
        let order = AdmissibleOrder::shortlex(&quiver, precedence)?;
        let system = ReductionSystem::new(Arc::clone(&quiver), pairs, Some(order))?;
        Ok(BuiltHypersurface {
            presentation: self.clone(),
            system,
        })
    }
}

/// Ascending-variable path for a commutative monomial (the normal form of the
/// monomial in the quotient algebra, absent leading-power reductions).
pub fn monomial_path(quiver: &Quiver, exps: &[u32]) -> Result<Path> {
    let mut labels: Vec<String> = Vec::new();
    for (idx, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            labels.push(Hypersurface::var_label(idx + 1));
        }
    }
    if labels.is_empty() {
        return Ok(Path::trivial(crate::quiver::VertexId(0)));
    }
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    Path::from_labels(quiver, &refs)
}

/// A closed-form basis element x_d^{nj} x_{i_k} .. x_{i_1} with ascending stored
/// indices i_1 < .. < i_k (1-based), of homological degree 2j + k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisElement {
    pub j: u32,
    pub indices: Vec<usize>,
}

impl BasisElement {
    /// Homological degree 2j + k (the set S_{2j+k} this element belongs to).
    pub fn homological_degree(&self) -> usize {
        2 * self.j as usize + self.indices.len()
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        for w in self.indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::input(
                    "basis element indices must be strictly ascending",
                ));
            }
        }
        if let (Some(&first), Some(&last)) = (self.indices.first(), self.indices.last()) {
            if first < 1 || last > d {
                return Err(Error::input("basis element index out of range"));
            }
        }
        Ok(())
    }

    /// The underlying path: nj copies of x_d, then the indexed variables in
    /// descending order.
    pub fn path(&self, built: &BuiltHypersurface) -> Result<Path> {
        let h = &built.presentation;
        let q = built.system.quiver().as_ref();
        let mut labels: Vec<String> = Vec::new();
        for _ in 0..(h.n * self.j) {
            labels.push(Hypersurface::var_label(h.d));
        }
        for &i in self.indices.iter().rev() {
            labels.push(Hypersurface::var_label(i));
        }
        if labels.is_empty() {
            return Ok(Path::trivial(crate::quiver::VertexId(0)));
        }
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        Path::from_labels(q, &refs)
    }

    /// Tensor-style label e_{i_1} .. e_{i_k} t^(j).
    pub fn tensor_label(&self) -> String {
        let mut parts: Vec<String> = self.indices.iter().map(|i| format!("e{i}")).collect();
        if self.j > 0 {
            parts.push(format!("t^({})", self.j));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// A built hypersurface system: the reduction system plus its presentation.
#[derive(Debug, Clone)]
pub struct BuiltHypersurface {
    pub presentation: Hypersurface,
    pub system: ReductionSystem,
}

/// A chain with basis-element keys and algebra-element coefficients.
pub type Chain = BTreeMap<BasisElement, AlgebraElement>;

impl BuiltHypersurface {
    /// The set S_{m+2} in closed form: all (j, i_1 < .. < i_k) with 2j + k = m + 2,
    /// sorted by the canonical order of the underlying paths.
    pub fn bach_basis(&self, m: usize) -> Result<Vec<BasisElement>> {
        let d = self.presentation.d;
        let total = m + 2;
        let mut out = Vec::new();
        for j in 0..=(total / 2) as u32 {
            let k = total - 2 * j as usize;
            if k > d {
                continue;
            }
            for indices in combinations(d, k) {
                out.push(BasisElement { j, indices });
            }
        }
        let mut keyed: Vec<(Path, BasisElement)> = out
            .into_iter()
            .map(|b| Ok((b.path(self)?, b)))
            .collect::<Result<_>>()?;
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, b)| b).collect())
    }

    /// The partial derivative of f as an irreducible algebra element.
    pub fn partial_element(&self, i: usize) -> Result<AlgebraElement> {
        let params = Arc::clone(self.system.params());
        let q = self.system.quiver().as_ref();
        let mut out = AlgebraElement::zero(&params);
        for (exps, coeff) in self.presentation.partial(i)? {
            out.add_term(
                monomial_path(q, &exps)?,
                crate::poly::ParamPolynomial::constant(&params, coeff),
            )?;
        }
        Ok(out)
    }

    /// Normal form of an element under the undeformed system.
    pub fn normal_form(&self, elem: &AlgebraElement, max_steps: u64) -> Result<AlgebraElement> {
        let nf = self.system.nf_rightmost(elem, max_steps)?;
        if !nf.completed {
            return Err(Error::cap("hypersurface normal form exceeded step cap"));
        }
        Ok(nf.element)
    }

    /// The differential of `a . e_b`: the alternating sum over removable indices,
    /// with coefficients a . df/dx_{i_l} reduced to normal form.
    pub fn differential(
        &self,
        a: &AlgebraElement,
        b: &BasisElement,
        max_steps: u64,
    ) -> Result<Chain> {
        b.validate(self.presentation.d)?;
        let mut out = Chain::new();
        for (l, &i) in b.indices.iter().enumerate() {
            let part = self.partial_element(i)?;
            let mut coeff = self.normal_form(&a.free_mul(&part)?, max_steps)?;
            if l % 2 == 1 {
                coeff = coeff.neg();
            }
            if coeff.is_zero() {
                continue;
            }
            let mut indices = b.indices.clone();
            indices.remove(l);
            let target = BasisElement {
                j: b.j + 1,
                indices,
            };
            merge_into(&mut out, target, coeff)?;
        }
        Ok(out)
    }

    /// Differential of a whole chain, merging targets.
    pub fn chain_differential(&self, chain: &Chain, max_steps: u64) -> Result<Chain> {
        let mut out = Chain::new();
        for (b, a) in chain {
            for (target, coeff) in self.differential(a, b, max_steps)? {
                merge_into(&mut out, target, coeff)?;
            }
        }
        Ok(out)
    }

    /// Rows (source basis element, its differential of 1 . e_source) for one degree.
    pub fn differential_table(&self, m: usize, max_steps: u64) -> Result<Vec<(BasisElement, Chain)>> {
        let params = Arc::clone(self.system.params());
        let one = AlgebraElement::from_path(
            &params,
            Path::trivial(crate::quiver::VertexId(0)),
        );
        let mut rows = Vec::new();
        for b in self.bach_basis(m)? {
            let image = self.differential(&one, &b, max_steps)?;
            rows.push((b, image));
        }
        Ok(rows)
    }

    /// Verify a candidate second-cohomology class: linear in one parameter, checked
    /// as a 2-cocycle, with the commutator block tested against the membership
    /// condition sum_i (a_ki - a_ik) df/dx_i = 0 and the leading entry reported as
    /// the Jacobian-quotient component.
    pub fn verify_hh2(
        &self,
        candidate: &DeformationMap,
        max_steps: u64,
    ) -> Result<Hh2Report> {
        if candidate.params().len() != 1 {
            return Err(Error::input(
                "second-cohomology candidate must use exactly one parameter",
            ));
        }
        for (_, value) in candidate.entries() {
            if value.max_param_degree() > 1 {
                return Err(Error::input(
                    "second-cohomology candidate must be linear in its parameter",
                ));
            }
        }
        let d = self.presentation.d;
        let q = self.system.quiver().as_ref();
        let one = BigRational::one();
        // Strip the parameter: each entry is exactly t . a.
        let mut lead_part: Option<AlgebraElement> = None;
        let mut comm: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
        for (s, value) in candidate.entries() {
            let a = value.evaluate(std::slice::from_ref(&one))?;
            if s.len() == self.presentation.n as usize
                && s.arrows().iter().all(|&id| {
                    q.arrow(id).label == Hypersurface::var_label(d)
                })
            {
                lead_part = Some(a);
            } else if s.len() == 2 {
                let j = var_index(q, s.arrows()[0])?;
                let i = var_index(q, s.arrows()[1])?;
                comm.insert((j, i), a);
            } else {
                return Err(Error::input(format!(
                    "candidate entry `{}` is not a reduction left-hand side",
                    s.render(q)
                )));
            }
        }
        let mut rows = Vec::new();
        for k in 1..=d {
            let params = Arc::clone(self.system.params());
            let mut sum = AlgebraElement::zero(&params);
            for i in 1..=d {
                // a_ki contributes positively, a_ik negatively; entries exist
                // only for first index > second.
                if i < k {
                    if let Some(a) = comm.get(&(k, i)) {
                        let term = self.normal_form(
                            &a.free_mul(&self.partial_element(i)?)?,
                            max_steps,
                        )?;
                        sum = sum.add(&term)?;
                    }
                } else if i > k {
                    if let Some(a) = comm.get(&(i, k)) {
                        let term = self.normal_form(
                            &a.free_mul(&self.partial_element(i)?)?,
                            max_steps,
                        )?;
                        sum = sum.sub(&term)?;
                    }
                }
            }
            let residual = self.normal_form(&sum, max_steps)?;
            rows.push(MembershipRow {
                k,
                ok: residual.is_zero(),
                residual,
            });
        }
        let membership_pass = rows.iter().all(|r| r.ok);
        let cocycle = cocycle_check(&self.system, candidate, max_steps)?;
        let jacobian_part = match lead_part {
            None => None,
            Some(a) => Some(self.normal_form(&a, max_steps)?),
        };
        let kind = match (&jacobian_part, comm.is_empty()) {
            (None, true) => CandidateKind::Zero,
            (Some(_), true) => CandidateKind::JacobianOnly,
            (None, false) => CandidateKind::CommutatorOnly,
            (Some(_), false) => CandidateKind::Mixed,
        };
        let pass = cocycle.pass && membership_pass;
        Ok(Hh2Report {
            cocycle,
            membership_rows: rows,
            membership_pass,
            jacobian_part,
            kind,
            pass,
        })
    }
}

fn var_index(q: &Quiver, id: crate::quiver::ArrowId) -> Result<usize> {
    let label = &q.arrow(id).label;
    label
        .strip_prefix('x')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| Error::input(format!("arrow `{label}` is not a variable")))
}

fn merge_into(chain: &mut Chain, key: BasisElement, value: AlgebraElement) -> Result<()> {
    match chain.remove(&key) {
        None => {
            chain.insert(key, value);
        }
        Some(old) => {
            let sum = old.add(&value)?;
            if !sum.is_zero() {
                chain.insert(key, sum);
            }
        }
    }
    Ok(())
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(1, d, k, &mut cur, &mut out);
    out
}

/// One row of the commutator-block membership condition.
#[derive(Debug, Clone)]
pub struct MembershipRow {
    pub k: usize,
    pub residual: AlgebraElement,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    Zero,
    JacobianOnly,
    CommutatorOnly,
    Mixed,
}

#[derive(Debug, Clone)]
pub struct Hh2Report {
    pub cocycle: McReport,
    pub membership_rows: Vec<MembershipRow>,
    pub membership_pass: bool,
    /// Normal form of the leading-pair entry (class in A modulo the Jacobian ideal).
    pub jacobian_part: Option<AlgebraElement>,
    pub kind: CandidateKind,
    pub pass: bool,
}

impl Hh2Report {
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let q = sys.quiver().as_ref();
        let mut out = String::new();
        out.push_str(&format!(
            "cocycle check: {}\n",
            if self.cocycle.pass { "pass" } else { "FAIL" }
        ));
        for row in &self.membership_rows {
            out.push_str(&format!(
                "membership k={}: {}\n",
                row.k,
                if row.ok {
                    "0".to_string()
                } else {
                    row.residual.render(q)
                }
            ));
        }
        if let Some(jp) = &self.jacobian_part {
            out.push_str(&format!("jacobian-quotient part: {}\n", jp.render(q)));
        }
        out.push_str(&format!(
            "kind: {:?}\nverdict: {}\n",
            self.kind,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}
