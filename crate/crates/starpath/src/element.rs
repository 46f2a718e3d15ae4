//! Linear combinations of paths with polynomial coefficients.

use crate::path::Path;
use crate::poly::{ParamPolynomial, ParamSet};
use crate::Result;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;

/// An element of the path algebra (tensored with the parameter ring): a finite
/// linear combination of paths with `ParamPolynomial` coefficients, all declared
/// over the same parameter set. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    params: Arc<ParamSet>,
    terms: BTreeMap<Path, ParamPolynomial>,
}

impl AlgebraElement {
    pub fn zero(params: &Arc<ParamSet>) -> Self {
        AlgebraElement {
            params: Arc::clone(params),
            terms: BTreeMap::new(),
        }
    }

    /// The path `p` with coefficient 1.
    pub fn from_path(params: &Arc<ParamSet>, path: Path) -> Self {
        let mut e = Self::zero(params);
        e.terms.insert(path, ParamPolynomial::one(params));
        e
    }

    pub fn from_terms(
        params: &Arc<ParamSet>,
        terms: impl IntoIterator<Item = (Path, ParamPolynomial)>,
    ) -> Result<Self> {
        let mut e = Self::zero(params);
        for (p, c) in terms {
            e.add_term(p, c)?;
        }
        Ok(e)
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &ParamPolynomial)> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coeff(&self, path: &Path) -> ParamPolynomial {
        self.terms
            .get(path)
            .cloned()
            .unwrap_or_else(|| ParamPolynomial::zero(&self.params))
    }

    /// Add `coeff * path`, removing the entry if the sum vanishes.
    pub fn add_term(&mut self, path: Path, coeff: ParamPolynomial) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&path) {
            None => {
                let promoted = coeff.promote(&self.params)?;
                if !promoted.is_zero() {
                    self.terms.insert(path, promoted);
                }
            }
            Some(existing) => {
                let sum = existing.add(&coeff.promote(&self.params)?)?;
                if !sum.is_zero() {
                    self.terms.insert(path, sum);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            params: Arc::clone(&self.params),
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.neg())).collect(),
        }
    }

    pub fn scalar_mul(&self, scalar: &BigRational) -> Self {
        let mut out = Self::zero(&self.params);
        for (p, c) in &self.terms {
            let s = c.scalar_mul(scalar);
            if !s.is_zero() {
                out.terms.insert(p.clone(), s);
            }
        }
        out
    }

    pub fn poly_mul(&self, poly: &ParamPolynomial) -> Result<Self> {
        let mut out = Self::zero(&self.params);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.mul(&poly.promote(&self.params)?)?)?;
        }
        Ok(out)
    }

    /// Free product in the path algebra: compose paths pairwise, dropping pairs
    /// whose endpoints do not match, and multiply coefficients (truncated per the
    /// declaration's policy).
    pub fn free_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(&self.params);
        for (p, cp) in &self.terms {
            for (q, cq) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, cp.mul(&cq.promote(&self.params)?)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn left_mul_path(&self, path: &Path) -> Self {
        let mut out = Self::zero(&self.params);
        for (p, c) in &self.terms {
            if let Some(q) = path.compose(p) {
                out.terms.insert(q, c.clone());
            }
        }
        out
    }

    pub fn right_mul_path(&self, path: &Path) -> Self {
        let mut out = Self::zero(&self.params);
        for (p, c) in &self.terms {
            if let Some(q) = p.compose(path) {
                out.terms.insert(q, c.clone());
            }
        }
        out
    }

    /// Re-declare all coefficients over `target` (same names, possibly different
    /// truncation policy), dropping terms that truncate to zero.
    pub fn with_params(&self, target: &Arc<ParamSet>) -> Result<Self> {
        let mut out = Self::zero(target);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.with_params(target)?)?;
        }
        Ok(out)
    }

    /// Lift a parameter-free element into `target`.
    pub fn promote(&self, target: &Arc<ParamSet>) -> Result<Self> {
        let mut out = Self::zero(target);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.promote(target)?)?;
        }
        Ok(out)
    }

    /// Evaluate all parameters at rational values, producing a parameter-free element.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<Self> {
        let empty = ParamSet::empty();
        let mut out = Self::zero(&empty);
        for (p, c) in &self.terms {
            let v = c.evaluate(values)?;
            out.add_term(p.clone(), ParamPolynomial::constant(&empty, v))?;
        }
        Ok(out)
    }

    /// Largest parameter degree over all coefficients.
    pub fn max_param_degree(&self) -> u32 {
        self.terms
            .values()
            .map(|c| c.max_total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Render like `x0 y1 + 2 t0 * e_1`. Deterministic (canonical path order).
    pub fn render(&self, quiver: &crate::quiver::Quiver) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(p, c)| {
                let coeff = c.render();
                if coeff == "1" {
                    p.render(quiver)
                } else {
                    format!("({}) {}", coeff, p.render(quiver))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TruncationPolicy;
    use crate::quiver::Quiver;

    fn two_loops() -> Quiver {
        Quiver::new(
            vec!["v".into()],
            vec![
                ("a".into(), "v".into(), "v".into()),
                ("b".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn test_free_mul_drops_noncomposable() {
        let q = Quiver::new(
            vec!["0".into(), "1".into()],
            vec![
                ("x".into(), "0".into(), "1".into()),
                ("y".into(), "1".into(), "0".into()),
            ],
        )
        .unwrap();
        let ps = ParamSet::empty();
        let x = AlgebraElement::from_path(&ps, Path::from_labels(&q, &["x"]).unwrap());
        let y = AlgebraElement::from_path(&ps, Path::from_labels(&q, &["y"]).unwrap());
        let sum = x.add(&y).unwrap();
        // (x + y)(x + y) = xy + yx: xx and yy do not compose.
        let prod = sum.free_mul(&sum).unwrap();
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn test_free_mul_associative() {
        let q = two_loops();
        let ps = ParamSet::new(vec!["t".into()], TruncationPolicy::Exact).unwrap();
        let a = Path::from_labels(&q, &["a"]).unwrap();
        let b = Path::from_labels(&q, &["b"]).unwrap();
        let t = ParamPolynomial::parameter(&ps, 0).unwrap();
        let u = AlgebraElement::from_terms(
            &ps,
            [
                (a.clone(), ParamPolynomial::one(&ps)),
                (b.clone(), t.clone()),
            ],
        )
        .unwrap();
        let v = AlgebraElement::from_path(&ps, a.compose(&b).unwrap());
        let w = AlgebraElement::from_terms(&ps, [(b, t)]).unwrap();
        let lhs = u.free_mul(&v).unwrap().free_mul(&w).unwrap();
        let rhs = u.free_mul(&v.free_mul(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn test_cancellation_removes_entry() {
        let q = two_loops();
        let ps = ParamSet::empty();
        let a = AlgebraElement::from_path(&ps, Path::from_labels(&q, &["a"]).unwrap());
        let diff = a.sub(&a).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
    }

    #[test]
    fn test_evaluate_at_values() {
        let q = two_loops();
        let ps = ParamSet::new(vec!["t".into()], TruncationPolicy::Exact).unwrap();
        let a = Path::from_labels(&q, &["a"]).unwrap();
        let t = ParamPolynomial::parameter(&ps, 0).unwrap();
        let e = AlgebraElement::from_terms(&ps, [(a.clone(), t)]).unwrap();
        let at2 = e
            .evaluate(&[BigRational::from_integer(2.into())])
            .unwrap();
        assert_eq!(
            at2.coeff(&a).constant_term(),
            BigRational::from_integer(2.into())
        );
    }
}
