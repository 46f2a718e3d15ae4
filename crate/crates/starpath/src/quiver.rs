//! Finite quivers: labelled vertices and arrows with source and target.

use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Labels are unique among vertices and among arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_by_label: BTreeMap<String, VertexId>,
    arrow_by_label: BTreeMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(
        vertex_labels: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Quiver> {
        let mut vertex_by_label = BTreeMap::new();
        let mut vertices = Vec::new();
        for (i, label) in vertex_labels.into_iter().enumerate() {
            if label.is_empty() {
                return Err(Error::input("empty vertex label"));
            }
            if vertex_by_label
                .insert(label.clone(), VertexId(i as u32))
                .is_some()
            {
                return Err(Error::input(format!("duplicate vertex label `{label}`")));
            }
            vertices.push(Vertex { label });
        }
        let mut arrow_by_label = BTreeMap::new();
        let mut arrs = Vec::new();
        for (i, (label, src, tgt)) in arrows.into_iter().enumerate() {
            if label.is_empty() {
                return Err(Error::input("empty arrow label"));
            }
            let source = *vertex_by_label
                .get(&src)
                .ok_or_else(|| Error::input(format!("arrow `{label}`: unknown source `{src}`")))?;
            let target = *vertex_by_label
                .get(&tgt)
                .ok_or_else(|| Error::input(format!("arrow `{label}`: unknown target `{tgt}`")))?;
            if arrow_by_label
                .insert(label.clone(), ArrowId(i as u32))
                .is_some()
            {
                return Err(Error::input(format!("duplicate arrow label `{label}`")));
            }
            arrs.push(Arrow {
                label,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: arrs,
            vertex_by_label,
            arrow_by_label,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0 as usize]
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0 as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Vertex)> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (VertexId(i as u32), v))
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (ArrowId(i as u32), a))
    }

    pub fn vertex_id(&self, label: &str) -> Result<VertexId> {
        self.vertex_by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown vertex `{label}`")))
    }

    pub fn arrow_id(&self, label: &str) -> Result<ArrowId> {
        self.arrow_by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown arrow `{label}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_build_and_lookup() {
        let q = Quiver::new(
            vec!["0".into(), "1".into()],
            vec![
                ("x0".into(), "0".into(), "1".into()),
                ("y0".into(), "1".into(), "0".into()),
            ],
        )
        .unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_arrows(), 2);
        let x0 = q.arrow_id("x0").unwrap();
        assert_eq!(q.arrow(x0).source, q.vertex_id("0").unwrap());
        assert_eq!(q.arrow(x0).target, q.vertex_id("1").unwrap());
        assert!(q.arrow_id("zz").is_err());
    }

    #[test]
    fn test_duplicate_labels_rejected() {
        assert!(Quiver::new(vec!["0".into(), "0".into()], vec![]).is_err());
        assert!(Quiver::new(
            vec!["0".into()],
            vec![
                ("a".into(), "0".into(), "0".into()),
                ("a".into(), "0".into(), "0".into()),
            ],
        )
        .is_err());
    }

    #[test]
    fn test_dangling_endpoint_rejected() {
        assert!(Quiver::new(
            vec!["0".into()],
            vec![("a".into(), "0".into(), "9".into())],
        )
        .is_err());
    }
}
