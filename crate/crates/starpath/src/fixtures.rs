//! Bundled example systems and deformation families: the
//! line-bundle tilting algebras, their diagram covers, the genus-3 curve cover,
//! hypersurface examples and the hypercube skeleton.
//!
//! Fixtures are addressable by name (`zk-tilt-4`, `zk-diagram-3`, `genus3`,
//! `hypersurface-2`, `preprojective-A1`) for the command-line tools and tests.

use crate::deform::DeformationMap;
use crate::diagram::{self, ChartPairSpec, ChartSpec, CoverSpec, DiagramAlgebra, RestrictionSpec};
use crate::element::AlgebraElement;
use crate::hypersurface::{BuiltHypersurface, Hypersurface};
use crate::order::AdmissibleOrder;
use crate::path::Path;
use crate::poly::{ParamPolynomial, ParamSet, TruncationPolicy};
use crate::quiver::{Quiver, VertexId};
use crate::rewrite::ReductionSystem;
use crate::{Error, Result};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A named example: a reduction system, optional named deformation families, and
/// the structure it was built from (diagram cover or hypersurface) when any.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub system: ReductionSystem,
    pub families: BTreeMap<String, DeformationMap>,
    pub diagram: Option<DiagramAlgebra>,
    pub hypersurface: Option<BuiltHypersurface>,
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

#[cfg(test)]
fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Tilting-bundle presentation for the total space of a degree -k line bundle:
/// two vertices, arrows x0, x1 : 0 -> 1 and y0 .. y_{k-1} : 1 -> 0, with pairs
/// x1 y_{j-1} -> x0 y_j and y_j x0 -> y_{j-1} x1, ordered by length, then the
/// weights x1 = 1, y_j = j, then precedence.
pub fn zk_tilting(k: usize) -> Result<Fixture> {
    if k < 2 {
        return Err(Error::input("the tilting fixture needs k >= 2"));
    }
    let mut arrows = vec![
        ("x0".to_string(), "0".to_string(), "1".to_string()),
        ("x1".to_string(), "0".to_string(), "1".to_string()),
    ];
    for j in 0..k {
        arrows.push((format!("y{j}"), "1".to_string(), "0".to_string()));
    }
    let quiver = Arc::new(Quiver::new(vec!["0".into(), "1".into()], arrows)?);
    let params = ParamSet::empty();
    let mut pairs = Vec::new();
    for j in 1..k {
        let lhs = Path::from_labels(&quiver, &["x1", &format!("y{}", j - 1)])?;
        let rhs = Path::from_labels(&quiver, &["x0", &format!("y{j}")])?;
        pairs.push((lhs, AlgebraElement::from_path(&params, rhs)));
    }
    for j in 1..k {
        let lhs = Path::from_labels(&quiver, &[&format!("y{j}"), "x0"])?;
        let rhs = Path::from_labels(&quiver, &[&format!("y{}", j - 1), "x1"])?;
        pairs.push((lhs, AlgebraElement::from_path(&params, rhs)));
    }
    let mut weights = BTreeMap::new();
    weights.insert("x1".to_string(), 1u64);
    for j in 0..k {
        weights.insert(format!("y{j}"), j as u64);
    }
    let mut precedence: Vec<String> = vec!["x0".into(), "y0".into(), "x1".into()];
    for j in 1..k {
        precedence.push(format!("y{j}"));
    }
    let order = AdmissibleOrder::length_then_weights(&quiver, &weights, precedence)?;
    let system = ReductionSystem::new(Arc::clone(&quiver), pairs, Some(order))?;
    let families = zk_families(&system, k)?;
    Ok(Fixture {
        name: format!("zk-tilt-{k}"),
        system,
        families,
        diagram: None,
        hypersurface: None,
    })
}

/// Convenience path builders over the tilting quiver.
fn tilt_path(q: &Quiver, labels: &[&str]) -> Path {
    Path::from_labels(q, labels).expect("fixture path composes")
}

fn zk_families(sys: &ReductionSystem, k: usize) -> Result<BTreeMap<String, DeformationMap>> {
    let q = sys.quiver().as_ref();
    let e0 = Path::trivial(q.vertex_id("0")?);
    let e1 = Path::trivial(q.vertex_id("1")?);
    let x1y = |j: usize| tilt_path(q, &["x1", &format!("y{j}")]);
    let x0y = |j: usize| tilt_path(q, &["x0", &format!("y{j}")]);
    let yx0 = |j: usize| tilt_path(q, &[&format!("y{j}"), "x0"]);
    // x0 y_k is out of range; the convention substitutes x1 y_{k-1}.
    let beta_target = |j: usize| if j < k { x0y(j) } else { x1y(k - 1) };
    let mut families = BTreeMap::new();

    // alpha-family: phi(x1 y_{j-1}) = t_j e_0, phi(y_j x0) = -t_j e_1.
    {
        let names: Vec<String> = (1..k).map(|j| format!("t{j}")).collect();
        let params = ParamSet::new(names, TruncationPolicy::Exact)?;
        let mut entries = Vec::new();
        for j in 1..k {
            let t = ParamPolynomial::parameter(&params, j - 1)?;
            entries.push((
                x1y(j - 1),
                AlgebraElement::from_terms(&params, [(e0.clone(), t.clone())])?,
            ));
            entries.push((
                yx0(j),
                AlgebraElement::from_terms(&params, [(e1.clone(), t.neg())])?,
            ));
        }
        families.insert(
            "alpha-family".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    // beta01: phi(x1 y_{j-1}) = t0 x0 y_{j-1} + t1 x0 y_j.
    {
        let params = ParamSet::new(vec!["t0".into(), "t1".into()], TruncationPolicy::Exact)?;
        let t0 = ParamPolynomial::parameter(&params, 0)?;
        let t1 = ParamPolynomial::parameter(&params, 1)?;
        let mut entries = Vec::new();
        for j in 1..k {
            let mut v = AlgebraElement::zero(&params);
            v.add_term(beta_target(j - 1), t0.clone())?;
            v.add_term(beta_target(j), t1.clone())?;
            entries.push((x1y(j - 1), v));
        }
        families.insert(
            "beta01".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    // beta012: adds the t2 direction, which obstructs at the last overlap.
    {
        let params = ParamSet::new(
            vec!["t0".into(), "t1".into(), "t2".into()],
            TruncationPolicy::Exact,
        )?;
        let t: Vec<ParamPolynomial> = (0..3)
            .map(|i| ParamPolynomial::parameter(&params, i))
            .collect::<Result<_>>()?;
        let mut entries = Vec::new();
        for j in 1..k {
            let mut v = AlgebraElement::zero(&params);
            for (l, tl) in t.iter().enumerate() {
                v.add_term(beta_target(j - 1 + l), tl.clone())?;
            }
            entries.push((x1y(j - 1), v));
        }
        families.insert(
            "beta012".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    // beta1-q: the single direction whose corner is the quantum cone.
    {
        let params = ParamSet::new(vec!["mu2".into()], TruncationPolicy::Exact)?;
        let mu2 = ParamPolynomial::parameter(&params, 0)?;
        let mut entries = Vec::new();
        for j in 1..k {
            entries.push((
                x1y(j - 1),
                AlgebraElement::from_terms(&params, [(x0y(j), mu2.clone())])?,
            ));
        }
        families.insert(
            "beta1-q".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    // variety-family: mu0 beta0 + mu1 beta1 + sum_j la_j alpha_j; the residual
    // equations cut out the base of the semiuniversal family.
    {
        let mut names: Vec<String> = vec!["mu0".into(), "mu1".into()];
        names.extend((1..k).map(|j| format!("la{j}")));
        let params = ParamSet::new(names, TruncationPolicy::Exact)?;
        let mu0 = ParamPolynomial::parameter(&params, 0)?;
        let mu1 = ParamPolynomial::parameter(&params, 1)?;
        let la: Vec<ParamPolynomial> = (1..k)
            .map(|j| ParamPolynomial::parameter(&params, 1 + j))
            .collect::<Result<_>>()?;
        let mut entries = Vec::new();
        for j in 1..k {
            let mut v = AlgebraElement::zero(&params);
            v.add_term(beta_target(j - 1), mu0.clone())?;
            v.add_term(beta_target(j), mu1.clone())?;
            v.add_term(e0.clone(), la[j - 1].clone())?;
            entries.push((x1y(j - 1), v));
            entries.push((
                yx0(j),
                AlgebraElement::from_terms(&params, [(e1.clone(), la[j - 1].neg())])?,
            ));
        }
        families.insert(
            "variety-family".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    // nc-corrected: the solved noncommutative family, polynomial in t0, t1, t2;
    // it fails the degree condition, so it is checked truncated at 2k.
    {
        let params = ParamSet::new(
            vec!["t0".into(), "t1".into(), "t2".into()],
            TruncationPolicy::Truncate(2 * k as u32),
        )?;
        let t0 = ParamPolynomial::parameter(&params, 0)?;
        let t1 = ParamPolynomial::parameter(&params, 1)?;
        let t2 = ParamPolynomial::parameter(&params, 2)?;
        let one_p = ParamPolynomial::one(&params);
        // 1 + t1 + t0 t2 and 1 + t1.
        let unit_full = one_p.add(&t1)?.add(&t0.mul(&t2)?)?;
        let unit_tail = one_p.add(&t1)?;
        let mut entries = Vec::new();
        for j in 1..k {
            // Entry for x1 y_{j-1}: -x0 y_j + t0 x0 y_{j-1}
            //   + sum_{i=j}^{k-2} t2^{i-j} (1 + t1 + t0 t2) x0 y_i
            //   + t2^{k-1-j} (1 + t1) x0 y_{k-1} + t2^{k-j} x1 y_{k-1}.
            let mut v = AlgebraElement::zero(&params);
            v.add_term(x0y(j), one_p.neg())?;
            v.add_term(x0y(j - 1), t0.clone())?;
            let mut t2_pow = one_p.clone();
            for i in j..=(k.saturating_sub(2)) {
                v.add_term(x0y(i), t2_pow.mul(&unit_full)?)?;
                t2_pow = t2_pow.mul(&t2)?;
            }
            // Here t2_pow = t2^{k-1-j}.
            v.add_term(x0y(k - 1), t2_pow.mul(&unit_tail)?)?;
            v.add_term(x1y(k - 1), t2_pow.mul(&t2)?)?;
            entries.push((x1y(j - 1), v));
        }
        families.insert(
            "nc-corrected".to_string(),
            DeformationMap::new(sys, params, entries)?,
        );
    }

    Ok(families)
}

/// The k = 2 tilting fixture under its preprojective-algebra name, with the
/// symplectic one-vertex cocycle family (vacuous overlap set).
pub fn preprojective_a1() -> Result<Fixture> {
    let mut fx = zk_tilting(2)?;
    fx.name = "preprojective-A1".to_string();
    let sys = &fx.system;
    let q = sys.quiver().as_ref();
    let e0 = Path::trivial(q.vertex_id("0")?);
    let e1 = Path::trivial(q.vertex_id("1")?);
    let params = ParamSet::new(vec!["t1".into(), "t2".into()], TruncationPolicy::Exact)?;
    let t1 = ParamPolynomial::parameter(&params, 0)?;
    let t2 = ParamPolynomial::parameter(&params, 1)?;
    let entries = vec![
        (
            tilt_path(q, &["x1", "y0"]),
            AlgebraElement::from_terms(&params, [(e0, t1.add(&t2)?)])?,
        ),
        (
            tilt_path(q, &["y1", "x0"]),
            AlgebraElement::from_terms(&params, [(e1, t1.neg())])?,
        ),
    ];
    fx.families
        .insert("symp".to_string(), DeformationMap::new(sys, params, entries)?);
    Ok(fx)
}

/// Cover spec for the line-bundle diagram: charts U = k[z,u], V = k[zeta,v],
/// U&V = k[x, y, w] with x y = y x = 1, and the transition v = x^k w.
pub fn zk_cover(k: usize) -> CoverSpec {
    let c = |s: &str| -> Vec<String> { s.split_whitespace().map(|t| t.to_string()).collect() };
    let commute = |a: &str, b: &str| ChartPairSpec {
        // b a -> a b (normal form puts a first).
        lhs: c(&format!("{b} {a}")),
        rhs: vec![(c(&format!("{a} {b}")), one())],
    };
    let charts = vec![
        ChartSpec {
            indices: vec![1],
            generators: c("z u"),
            weights: vec![0, 1],
            pairs: vec![commute("z", "u")],
        },
        ChartSpec {
            indices: vec![2],
            generators: c("zeta v"),
            weights: vec![0, 2],
            pairs: vec![commute("zeta", "v")],
        },
        ChartSpec {
            indices: vec![1, 2],
            generators: c("x y w"),
            weights: vec![0, 0, 1],
            pairs: vec![
                commute("x", "w"),
                commute("y", "w"),
                ChartPairSpec {
                    lhs: c("x y"),
                    rhs: vec![(vec![], one())],
                },
                ChartPairSpec {
                    lhs: c("y x"),
                    rhs: vec![(vec![], one())],
                },
            ],
        },
    ];
    let mut v_image = vec!["x".to_string(); k];
    v_image.push("w".to_string());
    let restrictions = vec![
        RestrictionSpec {
            source: vec![1],
            added: 2,
            label: "f".into(),
            images: vec![
                ("z".into(), vec![(c("x"), one())]),
                ("u".into(), vec![(c("w"), one())]),
            ],
        },
        RestrictionSpec {
            source: vec![2],
            added: 1,
            label: "g".into(),
            images: vec![
                ("zeta".into(), vec![(c("y"), one())]),
                ("v".into(), vec![(v_image, one())]),
            ],
        },
    ];
    CoverSpec {
        base_names: vec!["U".into(), "V".into()],
        charts,
        restrictions,
    }
}

/// The four chart-unit deformation entries shared by the noncommutative and
/// simultaneous diagram families: alpha(xi) = c + xi l on (u z) and (w x), and
/// its compatible inverse series beta(xi) = sum_{i>=1} xi (-xi c - l)^i on
/// (v zeta) and (w y), expanded up to the given order.
fn chart_unit_entries(
    q: &Quiver,
    params: &Arc<ParamSet>,
    c: &ParamPolynomial,
    l: &ParamPolynomial,
    order: u32,
) -> Result<Vec<(Path, AlgebraElement)>> {
    let path = |s: &str| -> Result<Path> {
        let labels: Vec<&str> = s.split_whitespace().collect();
        Path::from_labels(q, &labels)
    };
    let alpha_entry = |xi: &str, co: &str| -> Result<AlgebraElement> {
        let mut v = AlgebraElement::zero(params);
        v.add_term(path(co)?, c.clone())?;
        v.add_term(path(&format!("{xi} {co}"))?, l.clone())?;
        Ok(v)
    };
    let beta_entry = |xi: &str, co: &str| -> Result<AlgebraElement> {
        // (-xi c - l)^i = sum_{a=0}^{i} C(i,a) (-c)^a (-l)^{i-a} xi^a, so the
        // xi^{1+a} co coefficient collects C(i,a) (-c)^a (-l)^{i-a} over i.
        let mut v = AlgebraElement::zero(params);
        for i in 1..=order {
            let mut binom = BigRational::from_integer(1.into());
            for a in 0..=i {
                if a > 0 {
                    binom = binom * BigRational::from_integer((i - a + 1).into())
                        / BigRational::from_integer(a.into());
                }
                let mut coeff = ParamPolynomial::constant(params, binom.clone());
                for _ in 0..a {
                    coeff = coeff.mul(&c.neg())?;
                }
                for _ in 0..(i - a) {
                    coeff = coeff.mul(&l.neg())?;
                }
                if coeff.is_zero() {
                    continue;
                }
                let mut labels: Vec<String> =
                    std::iter::repeat(xi.to_string()).take((1 + a) as usize).collect();
                labels.push(co.to_string());
                let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
                v.add_term(Path::from_labels(q, &refs)?, coeff)?;
            }
        }
        Ok(v)
    };
    Ok(vec![
        (path("u z")?, alpha_entry("z", "u")?),
        (path("v zeta")?, beta_entry("zeta", "v")?),
        (path("w x")?, alpha_entry("x", "w")?),
        (path("w y")?, beta_entry("y", "w")?),
    ])
}

/// Diagram fixture for the degree -k line bundle, with the commutative,
/// noncommutative, q-deformation and simultaneous families.
pub fn zk_diagram(k: usize) -> Result<Fixture> {
    if k < 1 {
        return Err(Error::input("the diagram fixture needs k >= 1"));
    }
    let diagram = diagram::build(zk_cover(k))?;
    let system = diagram.system.clone();
    let q = system.quiver().as_ref();
    let path = |s: &str| -> Path {
        let labels: Vec<&str> = s.split_whitespace().collect();
        Path::from_labels(q, &labels).expect("fixture path composes")
    };
    let mut families = BTreeMap::new();

    // commutative family: uf entry sum_j t_j f y^j deforms u = w s^k dw-style
    // fiber coordinates chartwise; exact and order-certified.
    if k >= 2 {
        let names: Vec<String> = (1..k).map(|j| format!("t{j}")).collect();
        let params = ParamSet::new(names, TruncationPolicy::Exact)?;
        let mut v = AlgebraElement::zero(&params);
        for j in 1..k {
            let mut labels = vec!["f".to_string()];
            labels.extend(std::iter::repeat("y".to_string()).take(j));
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            v.add_term(
                Path::from_labels(q, &refs)?,
                ParamPolynomial::parameter(&params, j - 1)?,
            )?;
        }
        let entries = vec![(path("u f"), v)];
        families.insert(
            "commutative".to_string(),
            DeformationMap::new(&system, params, entries)?,
        );
    }

    // noncommutative family: unit deformations of the chart commutation rules,
    // alpha(xi) = t1' + xi t2' and beta its inverse series, truncated at 6.
    {
        let trunc = TruncationPolicy::Truncate(6);
        let params = ParamSet::new(vec!["t1p".into(), "t2p".into()], trunc)?;
        let t1p = ParamPolynomial::parameter(&params, 0)?;
        let t2p = ParamPolynomial::parameter(&params, 1)?;
        let entries = chart_unit_entries(q, &params, &t1p, &t2p, 6)?;
        families.insert(
            "noncommutative".to_string(),
            DeformationMap::new(&system, params, entries)?,
        );
    }

    // simultaneous family: the chart-unit entries with constants t0', t1'
    // together with the commutative directions t_j f y^j on (u f); Maurer-Cartan
    // exactly on the locus t0' t_j + t1' t_{j+1} = 0.
    if k >= 2 {
        let trunc = TruncationPolicy::Truncate(6);
        let mut names = vec!["t0p".to_string(), "t1p".to_string()];
        names.extend((1..k).map(|j| format!("t{j}")));
        let params = ParamSet::new(names, trunc)?;
        let t0p = ParamPolynomial::parameter(&params, 0)?;
        let t1p = ParamPolynomial::parameter(&params, 1)?;
        let mut entries = chart_unit_entries(q, &params, &t0p, &t1p, 6)?;
        let mut v = AlgebraElement::zero(&params);
        for j in 1..k {
            let mut labels = vec!["f".to_string()];
            labels.extend(std::iter::repeat("y".to_string()).take(j));
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            v.add_term(
                Path::from_labels(q, &refs)?,
                ParamPolynomial::parameter(&params, 1 + j)?,
            )?;
        }
        entries.push((path("u f"), v));
        families.insert(
            "simultaneous".to_string(),
            DeformationMap::new(&system, params, entries)?,
        );
    }

    // q-deformation: t1' = 0, t2' = hbar; relations become u z = (1+h) z u etc.
    {
        let trunc = TruncationPolicy::Truncate(6);
        let params = ParamSet::new(vec!["h".into()], trunc)?;
        let h = ParamPolynomial::parameter(&params, 0)?;
        let geom = |xi: &str, co: &str, sign_pow: bool| -> Result<AlgebraElement> {
            // sum_{i>=1} (-h)^i xi co (beta with t1' = 0) or h xi co (alpha).
            let mut v = AlgebraElement::zero(&params);
            if sign_pow {
                let mut c = ParamPolynomial::one(&params);
                for _ in 1..=6u32 {
                    c = c.mul(&h.neg())?;
                    if c.is_zero() {
                        break;
                    }
                    v.add_term(path(&format!("{xi} {co}")), c.clone())?;
                }
            } else {
                v.add_term(path(&format!("{xi} {co}")), h.clone())?;
            }
            Ok(v)
        };
        let entries = vec![
            (path("u z"), geom("z", "u", false)?),
            (path("v zeta"), geom("zeta", "v", true)?),
            (path("w x"), geom("x", "w", false)?),
            (path("w y"), geom("y", "w", true)?),
        ];
        families.insert(
            "q-deformation".to_string(),
            DeformationMap::new(&system, params, entries)?,
        );
    }

    Ok(Fixture {
        name: format!("zk-diagram-{k}"),
        system,
        families,
        diagram: Some(diagram),
        hypersurface: None,
    })
}

/// Cover spec for the plane-quartic genus-3 curve: the same three charts with
/// curve equations u^4 = -z^3 u - z (and its transforms) added.
pub fn genus3_cover() -> CoverSpec {
    let mut cover = zk_cover(1);
    cover.base_names = vec!["U".into(), "V".into()];
    // Chart U: add u^4 -> -z^3 u - z.
    cover.charts[0].pairs.push(ChartPairSpec {
        lhs: vec!["u".into(); 4],
        rhs: vec![
            (
                vec!["z".into(), "z".into(), "z".into(), "u".into()],
                -one(),
            ),
            (vec!["z".into()], -one()),
        ],
    });
    // Chart V: add v^4 -> -zeta^3 - v.
    cover.charts[1].pairs.push(ChartPairSpec {
        lhs: vec!["v".into(); 4],
        rhs: vec![
            (vec!["zeta".into(), "zeta".into(), "zeta".into()], -one()),
            (vec!["v".into()], -one()),
        ],
    });
    // Chart U&V: add w^4 -> -x^3 w - x.
    cover.charts[2].pairs.push(ChartPairSpec {
        lhs: vec!["w".into(); 4],
        rhs: vec![
            (
                vec!["x".into(), "x".into(), "x".into(), "w".into()],
                -one(),
            ),
            (vec!["x".into()], -one()),
        ],
    });
    // Transition: v = y w (instead of x^k w).
    for r in &mut cover.restrictions {
        if r.label == "g" {
            for (g, image) in &mut r.images {
                if g == "v" {
                    *image = vec![(vec!["y".into(), "w".into()], one())];
                }
            }
        }
    }
    cover
}

/// Genus-3 curve diagram fixture with the six-parameter polynomial family.
pub fn genus3_curve() -> Result<Fixture> {
    let diagram = diagram::build(genus3_cover())?;
    let system = diagram.system.clone();
    let q = system.quiver().as_ref();
    let path = |s: &str| -> Path {
        let labels: Vec<&str> = s.split_whitespace().collect();
        Path::from_labels(q, &labels).expect("fixture path composes")
    };
    let params = ParamSet::new(
        (1..=6).map(|i| format!("la{i}")).collect(),
        TruncationPolicy::Exact,
    )?;
    let la: Vec<ParamPolynomial> = (0..6)
        .map(|i| ParamPolynomial::parameter(&params, i))
        .collect::<Result<_>>()?;
    // Entry on v^4 over chart V: la1 + la2 zeta + la3 v + la4 zeta v
    //   + la5 v^2 + la6 zeta v^2.
    let v_entry = {
        let e_v = Path::trivial(q.vertex_id("V")?);
        let mut v = AlgebraElement::zero(&params);
        v.add_term(e_v, la[0].clone())?;
        v.add_term(path("zeta"), la[1].clone())?;
        v.add_term(path("v"), la[2].clone())?;
        v.add_term(path("zeta v"), la[3].clone())?;
        v.add_term(path("v v"), la[4].clone())?;
        v.add_term(path("zeta v v"), la[5].clone())?;
        v
    };
    // Entry on w^4: la1 x^4 + la2 x^3 + la3 x^3 w + la4 x^2 w + la5 x^2 w^2
    //   + la6 x w^2.
    let w_entry = {
        let mut v = AlgebraElement::zero(&params);
        v.add_term(path("x x x x"), la[0].clone())?;
        v.add_term(path("x x x"), la[1].clone())?;
        v.add_term(path("x x x w"), la[2].clone())?;
        v.add_term(path("x x w"), la[3].clone())?;
        v.add_term(path("x x w w"), la[4].clone())?;
        v.add_term(path("x w w"), la[5].clone())?;
        v
    };
    // Entry on u^4: la1 z^4 + la2 z^3 + la3 z^3 u + la4 z^2 u + la5 z^2 u^2
    //   + la6 z u^2.
    let u_entry = {
        let mut v = AlgebraElement::zero(&params);
        v.add_term(path("z z z z"), la[0].clone())?;
        v.add_term(path("z z z"), la[1].clone())?;
        v.add_term(path("z z z u"), la[2].clone())?;
        v.add_term(path("z z u"), la[3].clone())?;
        v.add_term(path("z z u u"), la[4].clone())?;
        v.add_term(path("z u u"), la[5].clone())?;
        v
    };
    let entries = vec![
        (path("u u u u"), u_entry),
        (path("v v v v"), v_entry),
        (path("w w w w"), w_entry),
    ];
    let mut families = BTreeMap::new();
    families.insert(
        "lambda-family".to_string(),
        DeformationMap::new(&system, params, entries)?,
    );
    Ok(Fixture {
        name: "genus3".to_string(),
        system,
        families,
        diagram: Some(diagram),
        hypersurface: None,
    })
}

/// Hypersurface fixture f = x3^n - x1 x2 with the standard deformation family
/// phi(x2 x1) = (x3 + t)^n - x3^n, phi(x3 x1) = x1 t, phi(x3 x2) = -x2 t.
pub fn hypersurface_example(n: u32) -> Result<Fixture> {
    let h = Hypersurface::new(3, n, vec![(vec![1, 1, 0], -one())])?;
    let built = h.build()?;
    let system = built.system.clone();
    let q = system.quiver().as_ref();
    let params = ParamSet::new(vec!["t".into()], TruncationPolicy::Exact)?;
    let t = ParamPolynomial::parameter(&params, 0)?;
    let x_path = |label: &str, count: usize| -> Path {
        if count == 0 {
            return Path::trivial(VertexId(0));
        }
        let labels: Vec<&str> = std::iter::repeat(label).take(count).collect();
        Path::from_labels(q, &labels).expect("loop power composes")
    };
    // (x3 + t)^n - x3^n = sum_{i=1}^n C(n,i) t^i x3^{n-i}.
    let mut binom_entry = AlgebraElement::zero(&params);
    let mut binom = BigRational::from_integer(1.into());
    for i in 1..=n {
        binom = binom * BigRational::from_integer((n - i + 1).into())
            / BigRational::from_integer(i.into());
        let mut coeff = ParamPolynomial::constant(&params, binom.clone());
        for _ in 0..i {
            coeff = coeff.mul(&t)?;
        }
        binom_entry.add_term(x_path("x3", (n - i) as usize), coeff)?;
    }
    let entries = vec![
        (
            Path::from_labels(q, &["x2", "x1"])?,
            binom_entry,
        ),
        (
            Path::from_labels(q, &["x3", "x1"])?,
            AlgebraElement::from_terms(&params, [(x_path("x1", 1), t.clone())])?,
        ),
        (
            Path::from_labels(q, &["x3", "x2"])?,
            AlgebraElement::from_terms(&params, [(x_path("x2", 1), t.neg())])?,
        ),
    ];
    let mut families = BTreeMap::new();
    families.insert(
        "standard-family".to_string(),
        DeformationMap::new(&system, params, entries)?,
    );
    Ok(Fixture {
        name: format!("hypersurface-{n}"),
        system,
        families,
        diagram: None,
        hypersurface: Some(built),
    })
}

/// Hypercube skeleton cover: all nonempty subsets of n base opens, one free
/// generator per chart, identity-style restriction images.
pub fn hypercube_cover(n: usize) -> Result<CoverSpec> {
    if n == 0 || n > 4 {
        return Err(Error::input("hypercube skeleton supports 1 <= n <= 4"));
    }
    let base_names: Vec<String> = (1..=n).map(|i| format!("U{i}")).collect();
    let subsets = {
        let mut out: Vec<Vec<u32>> = Vec::new();
        for mask in 1u32..(1 << n) {
            let subset: Vec<u32> = (1..=n as u32).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            out.push(subset);
        }
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    };
    let gen_label = |indices: &[u32]| -> String {
        format!(
            "s{}",
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("")
        )
    };
    let charts: Vec<ChartSpec> = subsets
        .iter()
        .map(|indices| ChartSpec {
            indices: indices.clone(),
            generators: vec![gen_label(indices)],
            weights: vec![0],
            pairs: vec![],
        })
        .collect();
    let mut restrictions = Vec::new();
    for indices in &subsets {
        for j in 1..=n as u32 {
            if indices.contains(&j) {
                continue;
            }
            let mut target = indices.clone();
            target.push(j);
            target.sort();
            let label = format!("f{}_{}", gen_label(indices).trim_start_matches('s'), j);
            restrictions.push(RestrictionSpec {
                source: indices.clone(),
                added: j,
                label,
                images: vec![(gen_label(indices), vec![(vec![gen_label(&target)], one())])],
            });
        }
    }
    Ok(CoverSpec {
        base_names,
        charts,
        restrictions,
    })
}

/// Resolve a fixture by its user-facing name.
pub fn lookup(name: &str) -> Result<Fixture> {
    if name == "preprojective-A1" {
        return preprojective_a1();
    }
    if name == "genus3" {
        return genus3_curve();
    }
    if let Some(k) = name.strip_prefix("zk-tilt-") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::input(format!("bad fixture parameter in `{name}`")))?;
        return zk_tilting(k);
    }
    if let Some(k) = name.strip_prefix("zk-diagram-") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::input(format!("bad fixture parameter in `{name}`")))?;
        return zk_diagram(k);
    }
    if let Some(n) = name.strip_prefix("hypersurface-") {
        let n: u32 = n
            .parse()
            .map_err(|_| Error::input(format!("bad fixture parameter in `{name}`")))?;
        return hypersurface_example(n);
    }
    Err(Error::input(format!(
        "unknown fixture `{name}` (try zk-tilt-<k>, zk-diagram-<k>, genus3, \
         hypersurface-<n>, preprojective-A1)"
    )))
}

/// All bundled fixture names that `lookup` accepts, with small default sizes.
pub fn bundled_names() -> Vec<String> {
    vec![
        "zk-tilt-2".into(),
        "zk-tilt-3".into(),
        "zk-tilt-4".into(),
        "zk-diagram-1".into(),
        "zk-diagram-2".into(),
        "zk-diagram-3".into(),
        "genus3".into(),
        "hypersurface-2".into(),
        "hypersurface-3".into(),
        "preprojective-A1".into(),
    ]
}
