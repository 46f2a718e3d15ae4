//! Randomized property suites over the public API.
//!
//! Seeds drive the deterministic generators in `common`; proptest supplies the
//! case scheduling and failure persistence.

mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starpath::rewrite::{StrategyRegistry, DEFAULT_MAX_STEPS};
use starpath::{
    fixtures, wire, AlgebraElement, OrderRelation, ParamPolynomial, ParamSet, Path,
    TruncationPolicy,
};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Polynomial from raw (exponent, coefficient) data over the given parameters.
fn poly_from_data(
    params: &std::sync::Arc<ParamSet>,
    data: &[(Vec<u32>, i64)],
) -> ParamPolynomial {
    let mut out = ParamPolynomial::zero(params);
    for (exps, c) in data {
        let exps: Vec<u32> = (0..params.len())
            .map(|i| exps.get(i).copied().unwrap_or(0))
            .collect();
        if let Ok(m) = ParamPolynomial::monomial(params, exps, int(*c)) {
            out = out.add(&m).expect("same declaration");
        }
    }
    out
}

/// Raw data strategy for sparse polynomials in `names` parameters.
fn poly_data(names: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, names), -9i64..10),
        0..5,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Normal forms are idempotent and linear on every bundled system.
    #[test]
    fn nf_idempotent_and_linear(seed in any::<u64>(), pick in 0..10usize) {
        let names = fixtures::bundled_names();
        let fx = fixtures::lookup(&names[pick]).unwrap();
        let sys = &fx.system;
        let q = sys.quiver().as_ref();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len1 = rng.gen_range(1..=5usize);
        let len2 = rng.gen_range(1..=5usize);
        let (Some(p1), Some(p2)) = (
            common::random_path(&mut rng, q, len1),
            common::random_path(&mut rng, q, len2),
        ) else {
            return Ok(());
        };
        let c1 = int(rng.gen_range(-9i64..=9));
        let c2 = int(rng.gen_range(-9i64..=9));
        let params = sys.params();
        let x = AlgebraElement::from_path(params, p1.clone())
            .scalar_mul(&c1)
            .add(&AlgebraElement::from_path(params, p2.clone()).scalar_mul(&c2))
            .unwrap();
        let registry = StrategyRegistry::standard();
        let mut strat = registry.build("rightmost", 7).unwrap();
        let nf = |e: &AlgebraElement, strat: &mut Box<dyn starpath::rewrite::Strategy>| {
            let out = sys.normal_form(e, strat.as_mut(), DEFAULT_MAX_STEPS, false).unwrap();
            prop_assert!(out.completed, "normal form hit the step cap");
            Ok(out.element)
        };
        let nf_x = nf(&x, &mut strat)?;
        let nf_p1 = nf(&AlgebraElement::from_path(params, p1), &mut strat)?;
        let nf_p2 = nf(&AlgebraElement::from_path(params, p2), &mut strat)?;
        let linear = nf_p1.scalar_mul(&c1).add(&nf_p2.scalar_mul(&c2)).unwrap();
        prop_assert_eq!(&nf_x, &linear, "normal form is not linear");
        let again = nf(&nf_x, &mut strat)?;
        prop_assert_eq!(&again, &nf_x, "normal form is not idempotent");
    }

    /// Admissible order: duality of strict comparisons and compatibility with
    /// composition on both sides.
    #[test]
    fn order_duality_and_context(seed in any::<u64>(), k in 2..=5usize) {
        let fx = fixtures::zk_tilting(k).unwrap();
        let sys = &fx.system;
        let q = sys.quiver().as_ref();
        let order = sys.order().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // The quiver alternates between its two vertices, so equal-length walks
        // from one vertex are automatically parallel.
        let len_u = rng.gen_range(0..=2usize);
        let u = if len_u == 0 {
            Path::trivial(starpath::VertexId(rng.gen_range(0..2u32)))
        } else {
            match common::random_path(&mut rng, q, len_u) {
                Some(p) => p,
                None => return Ok(()),
            }
        };
        let len = rng.gen_range(1..=4usize);
        let walk_from =
            |rng: &mut ChaCha8Rng, start: starpath::VertexId, steps: usize| -> Option<Path> {
                let adjacency = common::adjacency(q);
                let mut here = start;
                let mut arrows = Vec::new();
                for _ in 0..steps {
                    let next = &adjacency[here.0 as usize];
                    if next.is_empty() {
                        return None;
                    }
                    let a = next[rng.gen_range(0..next.len())];
                    here = q.arrow(a).target;
                    arrows.push(a);
                }
                Some(Path::from_arrows(q, arrows).unwrap())
            };
        let (Some(p), Some(r)) = (
            walk_from(&mut rng, u.target(), len),
            walk_from(&mut rng, u.target(), len),
        ) else {
            return Ok(());
        };
        let rel = order.compare(&p, &r);
        let dual = order.compare(&r, &p);
        match rel {
            OrderRelation::Less => prop_assert_eq!(dual, OrderRelation::Greater),
            OrderRelation::Greater => prop_assert_eq!(dual, OrderRelation::Less),
            OrderRelation::Equal => {
                prop_assert_eq!(&p, &r);
                prop_assert_eq!(dual, OrderRelation::Equal);
            }
            OrderRelation::Incomparable => prop_assert!(false, "parallel paths compared as incomparable"),
        }
        if rel == OrderRelation::Less {
            let len_v = rng.gen_range(0..=2usize);
            let v = if len_v == 0 {
                Path::trivial(p.target())
            } else {
                match walk_from(&mut rng, p.target(), len_v) {
                    Some(w) => w,
                    None => return Ok(()),
                }
            };
            let upv = u.compose(&p).unwrap().compose(&v).unwrap();
            let urv = u.compose(&r).unwrap().compose(&v).unwrap();
            prop_assert_eq!(
                order.compare(&upv, &urv),
                OrderRelation::Less,
                "order is not compatible with composition"
            );
        }
    }

    /// Coefficient ring axioms, exactly and under truncation.
    #[test]
    fn poly_ring_axioms(
        a in poly_data(3),
        b in poly_data(3),
        c in poly_data(3),
        n in 0u32..6,
    ) {
        let params = ParamSet::new(
            vec!["s".into(), "t".into(), "u".into()],
            TruncationPolicy::Exact,
        )
        .unwrap();
        let pa = poly_from_data(&params, &a);
        let pb = poly_from_data(&params, &b);
        let pc = poly_from_data(&params, &c);
        prop_assert_eq!(pa.mul(&pb).unwrap(), pb.mul(&pa).unwrap());
        prop_assert_eq!(
            pa.mul(&pb).unwrap().mul(&pc).unwrap(),
            pa.mul(&pb.mul(&pc).unwrap()).unwrap()
        );
        prop_assert_eq!(
            pa.mul(&pb.add(&pc).unwrap()).unwrap(),
            pa.mul(&pb).unwrap().add(&pa.mul(&pc).unwrap()).unwrap()
        );
        prop_assert_eq!(pa.add(&pa.neg()).unwrap(), ParamPolynomial::zero(&params));
        // Truncation is a quotient-ring homomorphism.
        let truncated = params.with_policy(TruncationPolicy::Truncate(n));
        let ta = pa.with_params(&truncated).unwrap();
        let tb = pb.with_params(&truncated).unwrap();
        prop_assert_eq!(
            pa.mul(&pb).unwrap().with_params(&truncated).unwrap(),
            ta.mul(&tb).unwrap()
        );
        prop_assert_eq!(
            pa.add(&pb).unwrap().with_params(&truncated).unwrap(),
            ta.add(&tb).unwrap()
        );
        // Content normalization is idempotent and preserves the zero test.
        let na = pa.content_normalized();
        prop_assert_eq!(na.content_normalized(), na.clone());
        prop_assert_eq!(na.is_zero(), pa.is_zero());
    }

    /// Serialized systems survive a round trip and serialize deterministically.
    #[test]
    fn wire_roundtrip_random_systems(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = common::random_system(&mut rng);
        let json = wire::system_to_json(&sys);
        let back = wire::system_from_json(&json).unwrap();
        prop_assert_eq!(back.quiver().as_ref(), sys.quiver().as_ref());
        prop_assert_eq!(back.pairs().len(), sys.pairs().len());
        for (x, y) in back.pairs().iter().zip(sys.pairs()) {
            prop_assert_eq!(&x.lhs, &y.lhs);
            prop_assert_eq!(&x.rhs, &y.rhs);
        }
        let again = wire::system_to_json(&back);
        prop_assert_eq!(json, again, "serialization is not deterministic");
    }
}
