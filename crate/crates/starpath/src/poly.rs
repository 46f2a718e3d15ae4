//! Multi-parameter polynomial coefficients over Q with optional total-degree truncation.
//!
//! Every computation fixes a parameter declaration ([`ParamSet`]): an ordered list of
//! parameter names plus a truncation policy. A [`ParamPolynomial`] is a sparse map
//! from exponent vectors to nonzero rational coefficients. Mixing polynomials from
//! different declarations is an error, not an implicit union.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Truncation policy for parameter degrees: exact arithmetic, or discard every
/// monomial of total degree > N after each product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruncationPolicy {
    Exact,
    Truncate(u32),
}

impl TruncationPolicy {
    pub fn keeps(&self, degree: u32) -> bool {
        match self {
            TruncationPolicy::Exact => true,
            TruncationPolicy::Truncate(n) => degree <= *n,
        }
    }
}

impl fmt::Display for TruncationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationPolicy::Exact => write!(f, "exact"),
            TruncationPolicy::Truncate(n) => write!(f, "truncate({n})"),
        }
    }
}

/// Ordered parameter declaration shared by all coefficients of a computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    names: Vec<String>,
    policy: TruncationPolicy,
}

impl ParamSet {
    pub fn new(names: Vec<String>, policy: TruncationPolicy) -> Result<Arc<Self>> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(Error::input("empty parameter name"));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::input(format!("duplicate parameter name `{n}`")));
            }
        }
        Ok(Arc::new(ParamSet { names, policy }))
    }

    /// Parameter-free declaration (plain rational coefficients).
    pub fn empty() -> Arc<Self> {
        Arc::new(ParamSet {
            names: Vec::new(),
            policy: TruncationPolicy::Exact,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same names under a different truncation policy.
    pub fn with_policy(&self, policy: TruncationPolicy) -> Arc<Self> {
        Arc::new(ParamSet {
            names: self.names.clone(),
            policy,
        })
    }

    /// True when the two declarations have the same names in the same order
    /// (policy may differ).
    pub fn same_names(&self, other: &ParamSet) -> bool {
        self.names == other.names
    }
}

/// Sparse polynomial in the declared parameters, exponent vector → nonzero coefficient.
#[derive(Debug, Clone)]
pub struct ParamPolynomial {
    params: Arc<ParamSet>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl PartialEq for ParamPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.params.same_names(&other.params) && self.terms == other.terms
    }
}

impl Eq for ParamPolynomial {}

impl PartialOrd for ParamPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamPolynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect::<Vec<_>>()
            .cmp(
                &other
                    .terms
                    .iter()
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect::<Vec<_>>(),
            )
    }
}

impl ParamPolynomial {
    pub fn zero(params: &Arc<ParamSet>) -> Self {
        ParamPolynomial {
            params: Arc::clone(params),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(params: &Arc<ParamSet>, value: BigRational) -> Self {
        let mut p = Self::zero(params);
        if !value.is_zero() {
            p.terms.insert(vec![0; params.len()], value);
        }
        p
    }

    pub fn one(params: &Arc<ParamSet>) -> Self {
        Self::constant(params, BigRational::one())
    }

    pub fn int(params: &Arc<ParamSet>, value: i64) -> Self {
        Self::constant(params, BigRational::from_integer(BigInt::from(value)))
    }

    /// The monomial `t_idx` (degree 1).
    pub fn parameter(params: &Arc<ParamSet>, idx: usize) -> Result<Self> {
        if idx >= params.len() {
            return Err(Error::input(format!("parameter index {idx} out of range")));
        }
        let mut exps = vec![0; params.len()];
        exps[idx] = 1;
        Self::monomial(params, exps, BigRational::one())
    }

    pub fn parameter_by_name(params: &Arc<ParamSet>, name: &str) -> Result<Self> {
        let idx = params
            .index_of(name)
            .ok_or_else(|| Error::input(format!("unknown parameter `{name}`")))?;
        Self::parameter(params, idx)
    }

    pub fn monomial(params: &Arc<ParamSet>, exps: Vec<u32>, coeff: BigRational) -> Result<Self> {
        if exps.len() != params.len() {
            return Err(Error::input(format!(
                "exponent vector length {} does not match {} declared parameters",
                exps.len(),
                params.len()
            )));
        }
        let mut p = Self::zero(params);
        let degree: u32 = exps.iter().sum();
        if !coeff.is_zero() && params.policy().keeps(degree) {
            p.terms.insert(exps, coeff);
        }
        Ok(p)
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the constant (all-zero exponent) monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0u32; self.params.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Largest total degree of any monomial; 0 for the zero polynomial.
    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.params.same_names(&other.params) || self.params.policy() != other.params.policy()
        {
            return Err(Error::input(format!(
                "parameter declarations differ: [{}] ({}) vs [{}] ({})",
                self.params.names().join(", "),
                self.params.policy(),
                other.params.names().join(", "),
                other.params.policy(),
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(ParamPolynomial {
            params: Arc::clone(&self.params),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial {
            params: Arc::clone(&self.params),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, scalar: &BigRational) -> Self {
        if scalar.is_zero() {
            return Self::zero(&self.params);
        }
        ParamPolynomial {
            params: Arc::clone(&self.params),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * scalar))
                .collect(),
        }
    }

    /// Product, truncated per the declaration's policy.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let policy = self.params.policy();
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !policy.keeps(exps.iter().sum()) {
                    continue;
                }
                let entry = terms.entry(exps).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ParamPolynomial {
            params: Arc::clone(&self.params),
            terms,
        })
    }

    /// Re-declare over `target` (same names, possibly different policy),
    /// re-truncating as needed.
    pub fn with_params(&self, target: &Arc<ParamSet>) -> Result<Self> {
        if !self.params.same_names(target) {
            return Err(Error::input(
                "cannot re-declare polynomial over different parameter names",
            ));
        }
        let mut terms = self.terms.clone();
        terms.retain(|e, _| target.policy().keeps(e.iter().sum()));
        Ok(ParamPolynomial {
            params: Arc::clone(target),
            terms,
        })
    }

    /// Lift a parameter-free polynomial (a constant) into `target`.
    pub fn promote(&self, target: &Arc<ParamSet>) -> Result<Self> {
        if self.params.same_names(target) {
            return self.with_params(target);
        }
        if !self.params.is_empty() {
            return Err(Error::input(
                "only parameter-free coefficients can be promoted into another declaration",
            ));
        }
        Ok(Self::constant(target, self.constant_term()))
    }

    /// Evaluate all parameters at the given rational values.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<BigRational> {
        if values.len() != self.params.len() {
            return Err(Error::input(format!(
                "expected {} parameter values, got {}",
                self.params.len(),
                values.len()
            )));
        }
        let mut acc = BigRational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (e, v) in exps.iter().zip(values) {
                for _ in 0..*e {
                    term *= v;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Divide by the rational content and normalize the sign so that the
    /// lexicographically-leading monomial has positive coefficient. Zero stays zero.
    pub fn content_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = BigRational::new(num_gcd, den_lcm);
        let mut out = ParamPolynomial {
            params: Arc::clone(&self.params),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c / &content))
                .collect(),
        };
        let leading_negative = out
            .terms
            .iter()
            .next_back()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if leading_negative {
            out = out.neg();
        }
        out
    }

    /// Render like `2 t0^2 t1 - 1/3`. The zero polynomial renders as `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut pieces = Vec::new();
        for (exps, coeff) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str(&self.params.names()[i]);
                if *e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let body = if mono.is_empty() {
                format!("{coeff}")
            } else if coeff.is_one() {
                mono
            } else if (-coeff.clone()).is_one() {
                format!("-{mono}")
            } else {
                format!("{coeff} {mono}")
            };
            pieces.push(body);
        }
        let mut out = String::new();
        for (i, p) in pieces.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}
