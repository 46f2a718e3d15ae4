//! JSON wire formats for quivers, reduction systems, deformation maps, chart
//! covers and hypersurface presentations.
//!
//! Rationals are carried as decimal numerator/denominator strings, so arbitrary
//! precision survives the trip. Paths are arrow-label lists, with `{"e": vertex}`
//! for trivial paths. Serialization is deterministic: maps are ordered and struct
//! fields keep declaration order.

use crate::deform::DeformationMap;
use crate::diagram::{ChartPairSpec, ChartSpec, CoverSpec, RestrictionSpec};
use crate::element::AlgebraElement;
use crate::hypersurface::Hypersurface;
use crate::order::{AdmissibleOrder, Stage};
use crate::path::Path;
use crate::poly::{ParamPolynomial, ParamSet, TruncationPolicy};
use crate::quiver::Quiver;
use crate::rewrite::ReductionSystem;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowWire {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverWire {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowWire>,
}

/// A path: arrow labels in composition order, or `{"e": vertex}` when trivial.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathWire {
    Trivial { e: String },
    Arrows(Vec<String>),
}

/// One polynomial monomial: parameter exponents and an exact rational coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialWire {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

pub type PolyWire = Vec<MonomialWire>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermWire {
    pub path: PathWire,
    pub coeff: PolyWire,
}

pub type ElementWire = Vec<TermWire>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairWire {
    pub lhs: PathWire,
    pub rhs: ElementWire,
}

/// One order stage: the string `"length"` or a label-to-weight map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StageWire {
    Named(String),
    Weights { weights: BTreeMap<String, u64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderWire {
    pub stages: Vec<StageWire>,
    pub precedence: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemWire {
    pub quiver: QuiverWire,
    pub pairs: Vec<PairWire>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncationWire {
    pub mode: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeformationEntryWire {
    /// Left-hand side as arrow labels (never trivial).
    pub s: Vec<String>,
    pub value: ElementWire,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeformationWire {
    pub params: Vec<String>,
    pub truncation: TruncationWire,
    pub entries: Vec<DeformationEntryWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartTermWire {
    pub labels: Vec<String>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartPairWire {
    pub lhs: Vec<String>,
    pub rhs: Vec<ChartTermWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartWire {
    pub indices: Vec<u32>,
    pub generators: Vec<String>,
    pub weights: Vec<u64>,
    pub pairs: Vec<ChartPairWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageWire {
    pub generator: String,
    pub value: Vec<ChartTermWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestrictionWire {
    pub source: Vec<u32>,
    pub added: u32,
    pub label: String,
    pub images: Vec<ImageWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverWire {
    pub base_names: Vec<String>,
    pub charts: Vec<ChartWire>,
    pub restrictions: Vec<RestrictionWire>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypersurfaceWire {
    pub d: usize,
    pub n: u32,
    pub tail: Vec<MonomialWire>,
}

fn rational_to_parts(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

fn rational_from_parts(num: &str, den: &str) -> Result<BigRational> {
    let n = BigInt::from_str(num)
        .map_err(|_| Error::input(format!("bad numerator `{num}`")))?;
    let d = BigInt::from_str(den)
        .map_err(|_| Error::input(format!("bad denominator `{den}`")))?;
    if d.is_zero() {
        return Err(Error::input("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub fn quiver_to_wire(q: &Quiver) -> QuiverWire {
    QuiverWire {
        vertices: q.vertices().map(|(_, v)| v.label.clone()).collect(),
        arrows: q
            .arrows()
            .map(|(_, a)| ArrowWire {
                label: a.label.clone(),
                source: q.vertex(a.source).label.clone(),
                target: q.vertex(a.target).label.clone(),
            })
            .collect(),
    }
}

pub fn quiver_from_wire(w: &QuiverWire) -> Result<Quiver> {
    Quiver::new(
        w.vertices.clone(),
        w.arrows
            .iter()
            .map(|a| (a.label.clone(), a.source.clone(), a.target.clone()))
            .collect(),
    )
}

pub fn path_to_wire(q: &Quiver, p: &Path) -> PathWire {
    if p.is_trivial() {
        PathWire::Trivial {
            e: q.vertex(p.source()).label.clone(),
        }
    } else {
        PathWire::Arrows(
            p.arrows()
                .iter()
                .map(|&id| q.arrow(id).label.clone())
                .collect(),
        )
    }
}

pub fn path_from_wire(q: &Quiver, w: &PathWire) -> Result<Path> {
    match w {
        PathWire::Trivial { e } => Ok(Path::trivial(q.vertex_id(e)?)),
        PathWire::Arrows(labels) => {
            if labels.is_empty() {
                return Err(Error::input(
                    "empty arrow list; a trivial path is written {\"e\": vertex}",
                ));
            }
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            Path::from_labels(q, &refs)
        }
    }
}

pub fn poly_to_wire(p: &ParamPolynomial) -> PolyWire {
    p.terms()
        .map(|(exps, coeff)| {
            let (num, den) = rational_to_parts(coeff);
            MonomialWire {
                exps: exps.clone(),
                num,
                den,
            }
        })
        .collect()
}

pub fn poly_from_wire(params: &Arc<ParamSet>, w: &PolyWire) -> Result<ParamPolynomial> {
    let mut out = ParamPolynomial::zero(params);
    for m in w {
        let coeff = rational_from_parts(&m.num, &m.den)?;
        out = out.add(&ParamPolynomial::monomial(params, m.exps.clone(), coeff)?)?;
    }
    Ok(out)
}

pub fn element_to_wire(q: &Quiver, e: &AlgebraElement) -> ElementWire {
    e.terms()
        .map(|(p, c)| TermWire {
            path: path_to_wire(q, p),
            coeff: poly_to_wire(c),
        })
        .collect()
}

pub fn element_from_wire(
    q: &Quiver,
    params: &Arc<ParamSet>,
    w: &ElementWire,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(params);
    for term in w {
        out.add_term(
            path_from_wire(q, &term.path)?,
            poly_from_wire(params, &term.coeff)?,
        )?;
    }
    Ok(out)
}

pub fn order_to_wire(q: &Quiver, o: &AdmissibleOrder) -> OrderWire {
    let stages = o
        .stages()
        .iter()
        .map(|s| match s {
            Stage::Length => StageWire::Named("length".to_string()),
            Stage::Weights(table) => StageWire::Weights {
                weights: q
                    .arrows()
                    .filter(|(id, _)| table[id.0 as usize] != 0)
                    .map(|(id, a)| (a.label.clone(), table[id.0 as usize]))
                    .collect(),
            },
        })
        .collect();
    OrderWire {
        stages,
        precedence: o.precedence().to_vec(),
    }
}

pub fn order_from_wire(q: &Quiver, w: &OrderWire) -> Result<AdmissibleOrder> {
    let mut stages = Vec::new();
    for s in &w.stages {
        match s {
            StageWire::Named(name) if name == "length" => stages.push(Stage::Length),
            StageWire::Named(name) => {
                return Err(Error::input(format!(
                    "unknown order stage `{name}` (expected \"length\" or a weights map)"
                )));
            }
            StageWire::Weights { weights } => {
                let mut table = vec![0u64; q.num_arrows()];
                for (label, &weight) in weights {
                    table[q.arrow_id(label)?.0 as usize] = weight;
                }
                stages.push(Stage::Weights(table));
            }
        }
    }
    AdmissibleOrder::new(q, stages, w.precedence.clone())
}

pub fn system_to_wire(sys: &ReductionSystem) -> SystemWire {
    let q = sys.quiver().as_ref();
    SystemWire {
        quiver: quiver_to_wire(q),
        pairs: sys
            .pairs()
            .iter()
            .map(|p| PairWire {
                lhs: path_to_wire(q, &p.lhs),
                rhs: element_to_wire(q, &p.rhs),
            })
            .collect(),
        order: sys.order().map(|o| order_to_wire(q, o)),
    }
}

pub fn system_from_wire(w: &SystemWire) -> Result<ReductionSystem> {
    let quiver = Arc::new(quiver_from_wire(&w.quiver)?);
    let params = ParamSet::empty();
    let mut pairs = Vec::new();
    for p in &w.pairs {
        pairs.push((
            path_from_wire(&quiver, &p.lhs)?,
            element_from_wire(&quiver, &params, &p.rhs)?,
        ));
    }
    let order = w
        .order
        .as_ref()
        .map(|o| order_from_wire(&quiver, o))
        .transpose()?;
    ReductionSystem::new(quiver, pairs, order)
}

fn truncation_to_wire(policy: TruncationPolicy) -> TruncationWire {
    match policy {
        TruncationPolicy::Exact => TruncationWire {
            mode: "exact".to_string(),
            n: None,
        },
        TruncationPolicy::Truncate(n) => TruncationWire {
            mode: "truncate".to_string(),
            n: Some(n),
        },
    }
}

fn truncation_from_wire(w: &TruncationWire) -> Result<TruncationPolicy> {
    match w.mode.as_str() {
        "exact" => Ok(TruncationPolicy::Exact),
        "truncate" => w
            .n
            .map(TruncationPolicy::Truncate)
            .ok_or_else(|| Error::input("truncation mode `truncate` needs a degree N")),
        other => Err(Error::input(format!(
            "unknown truncation mode `{other}` (expected \"exact\" or \"truncate\")"
        ))),
    }
}

pub fn deformation_to_wire(sys: &ReductionSystem, phi: &DeformationMap) -> DeformationWire {
    let q = sys.quiver().as_ref();
    DeformationWire {
        params: phi.params().names().to_vec(),
        truncation: truncation_to_wire(phi.params().policy()),
        entries: phi
            .entries()
            .map(|(s, value)| DeformationEntryWire {
                s: s.arrows()
                    .iter()
                    .map(|&id| q.arrow(id).label.clone())
                    .collect(),
                value: element_to_wire(q, value),
            })
            .collect(),
    }
}

pub fn deformation_from_wire(
    sys: &ReductionSystem,
    w: &DeformationWire,
) -> Result<DeformationMap> {
    let q = sys.quiver().as_ref();
    let params = ParamSet::new(w.params.clone(), truncation_from_wire(&w.truncation)?)?;
    let mut entries = Vec::new();
    for e in &w.entries {
        let refs: Vec<&str> = e.s.iter().map(|s| s.as_str()).collect();
        let s = Path::from_labels(q, &refs)?;
        entries.push((s, element_from_wire(q, &params, &e.value)?));
    }
    DeformationMap::new(sys, params, entries)
}

fn chart_terms_to_wire(terms: &[(Vec<String>, BigRational)]) -> Vec<ChartTermWire> {
    terms
        .iter()
        .map(|(labels, coeff)| {
            let (num, den) = rational_to_parts(coeff);
            ChartTermWire {
                labels: labels.clone(),
                num,
                den,
            }
        })
        .collect()
}

fn chart_terms_from_wire(terms: &[ChartTermWire]) -> Result<Vec<(Vec<String>, BigRational)>> {
    terms
        .iter()
        .map(|t| Ok((t.labels.clone(), rational_from_parts(&t.num, &t.den)?)))
        .collect()
}

pub fn cover_to_wire(c: &CoverSpec) -> CoverWire {
    CoverWire {
        base_names: c.base_names.clone(),
        charts: c
            .charts
            .iter()
            .map(|chart| ChartWire {
                indices: chart.indices.clone(),
                generators: chart.generators.clone(),
                weights: chart.weights.clone(),
                pairs: chart
                    .pairs
                    .iter()
                    .map(|p| ChartPairWire {
                        lhs: p.lhs.clone(),
                        rhs: chart_terms_to_wire(&p.rhs),
                    })
                    .collect(),
            })
            .collect(),
        restrictions: c
            .restrictions
            .iter()
            .map(|r| RestrictionWire {
                source: r.source.clone(),
                added: r.added,
                label: r.label.clone(),
                images: r
                    .images
                    .iter()
                    .map(|(g, v)| ImageWire {
                        generator: g.clone(),
                        value: chart_terms_to_wire(v),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn cover_from_wire(w: &CoverWire) -> Result<CoverSpec> {
    Ok(CoverSpec {
        base_names: w.base_names.clone(),
        charts: w
            .charts
            .iter()
            .map(|chart| {
                Ok(ChartSpec {
                    indices: chart.indices.clone(),
                    generators: chart.generators.clone(),
                    weights: chart.weights.clone(),
                    pairs: chart
                        .pairs
                        .iter()
                        .map(|p| {
                            Ok(ChartPairSpec {
                                lhs: p.lhs.clone(),
                                rhs: chart_terms_from_wire(&p.rhs)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?,
        restrictions: w
            .restrictions
            .iter()
            .map(|r| {
                Ok(RestrictionSpec {
                    source: r.source.clone(),
                    added: r.added,
                    label: r.label.clone(),
                    images: r
                        .images
                        .iter()
                        .map(|i| Ok((i.generator.clone(), chart_terms_from_wire(&i.value)?)))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?,
    })
}

pub fn hypersurface_to_wire(h: &Hypersurface) -> HypersurfaceWire {
    HypersurfaceWire {
        d: h.d(),
        n: h.n(),
        tail: h
            .tail()
            .iter()
            .map(|(exps, coeff)| {
                let (num, den) = rational_to_parts(coeff);
                MonomialWire {
                    exps: exps.clone(),
                    num,
                    den,
                }
            })
            .collect(),
    }
}

pub fn hypersurface_from_wire(w: &HypersurfaceWire) -> Result<Hypersurface> {
    let tail = w
        .tail
        .iter()
        .map(|m| Ok((m.exps.clone(), rational_from_parts(&m.num, &m.den)?)))
        .collect::<Result<Vec<_>>>()?;
    Hypersurface::new(w.d, w.n, tail)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types serialize");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::input(format!("malformed JSON: {e}")))
}

pub fn system_to_json(sys: &ReductionSystem) -> String {
    to_json(&system_to_wire(sys))
}

pub fn system_from_json(s: &str) -> Result<ReductionSystem> {
    system_from_wire(&from_json(s)?)
}

pub fn deformation_to_json(sys: &ReductionSystem, phi: &DeformationMap) -> String {
    to_json(&deformation_to_wire(sys, phi))
}

pub fn deformation_from_json(sys: &ReductionSystem, s: &str) -> Result<DeformationMap> {
    deformation_from_wire(sys, &from_json(s)?)
}

pub fn cover_to_json(c: &CoverSpec) -> String {
    to_json(&cover_to_wire(c))
}

pub fn cover_from_json(s: &str) -> Result<CoverSpec> {
    cover_from_wire(&from_json(s)?)
}

pub fn hypersurface_to_json(h: &Hypersurface) -> String {
    to_json(&hypersurface_to_wire(h))
}

pub fn hypersurface_from_json(s: &str) -> Result<Hypersurface> {
    hypersurface_from_wire(&from_json(s)?)
}
