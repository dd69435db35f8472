//! Simple undirected graphs and the closed-neighborhood view that turns a
//! domination problem into a set cover instance (`v` maps to `N(v) ∪ {v}`).

use crate::error::{Error, Result};
use crate::model::{ElementId, Instance, NamedSet, SetName};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<ElementId>,
    edges: Vec<(ElementId, ElementId)>,
    adj: BTreeMap<ElementId, BTreeSet<ElementId>>,
}

impl Graph {
    /// Build a simple graph; loops, duplicate edges and unknown endpoints
    /// are rejected.  Edges are normalized to `(min, max)` and sorted.
    pub fn new(
        vertices: impl IntoIterator<Item = ElementId>,
        edges: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Graph> {
        let mut vs: Vec<ElementId> = vertices.into_iter().collect();
        vs.sort();
        vs.dedup();
        let vset: BTreeSet<&ElementId> = vs.iter().collect();
        let mut adj: BTreeMap<ElementId, BTreeSet<ElementId>> =
            vs.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        let mut es = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            if !vset.contains(&u) || !vset.contains(&v) {
                return Err(Error::UnknownElement(format!("edge endpoint {u} or {v}")));
            }
            let (a, b) = if u <= v { (u, v) } else { (v, u) };
            adj.get_mut(&a).unwrap().insert(b.clone());
            adj.get_mut(&b).unwrap().insert(a.clone());
            es.push((a, b));
        }
        es.sort();
        let before = es.len();
        es.dedup();
        if es.len() != before {
            return Err(Error::Precondition("duplicate edge".into()));
        }
        Ok(Graph { vertices: vs, edges: es, adj })
    }

    pub fn vertices(&self) -> &[ElementId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(ElementId, ElementId)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn closed_neighborhood(&self, v: &ElementId) -> Option<BTreeSet<ElementId>> {
        self.adj.get(v).map(|nbrs| {
            let mut n = nbrs.clone();
            n.insert(v.clone());
            n
        })
    }

    /// First pair of distinct vertices with identical closed neighborhoods,
    /// if any.  Such twins make the closed-neighborhood map non-injective.
    pub fn twins(&self) -> Option<(ElementId, ElementId)> {
        let mut seen: BTreeMap<BTreeSet<ElementId>, &ElementId> = BTreeMap::new();
        for v in &self.vertices {
            let n = self.closed_neighborhood(v).unwrap();
            if let Some(prev) = seen.insert(n, v) {
                return Some((prev.clone(), v.clone()));
            }
        }
        None
    }

    pub fn is_dominating(&self, set: &BTreeSet<ElementId>) -> bool {
        let mut covered: BTreeSet<ElementId> = BTreeSet::new();
        for v in set {
            match self.closed_neighborhood(v) {
                Some(n) => covered.extend(n),
                None => return false,
            }
        }
        self.vertices.iter().all(|v| covered.contains(v))
    }

    /// The set cover view: universe = vertices, one set per vertex named
    /// after it with extent `N(v) ∪ {v}`.
    pub fn cover_instance(&self) -> Result<Instance> {
        let family = self
            .vertices
            .iter()
            .map(|v| {
                Ok(NamedSet::unit(
                    SetName::new(v.as_str())?,
                    self.closed_neighborhood(v).unwrap(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(self.vertices.iter().cloned(), family, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::elem;

    fn path3() -> Graph {
        Graph::new(
            [elem("a"), elem("b"), elem("c")],
            [(elem("a"), elem("b")), (elem("b"), elem("c"))],
        )
        .unwrap()
    }

    #[test]
    fn closed_neighborhoods() {
        let g = path3();
        assert_eq!(
            g.closed_neighborhood(&elem("b")).unwrap(),
            [elem("a"), elem("b"), elem("c")].into()
        );
        assert_eq!(g.closed_neighborhood(&elem("a")).unwrap().len(), 2);
    }

    #[test]
    fn domination() {
        let g = path3();
        assert!(g.is_dominating(&[elem("b")].into()));
        assert!(!g.is_dominating(&[elem("a")].into()));
    }

    #[test]
    fn twins_detected() {
        // K3: all closed neighborhoods equal.
        let g = Graph::new(
            [elem("a"), elem("b"), elem("c")],
            [
                (elem("a"), elem("b")),
                (elem("b"), elem("c")),
                (elem("a"), elem("c")),
            ],
        )
        .unwrap();
        assert!(g.twins().is_some());
        assert!(path3().twins().is_none());
    }

    #[test]
    fn cover_instance_mirrors_graph() {
        let inst = path3().cover_instance().unwrap();
        assert_eq!(inst.num_elements(), 3);
        assert_eq!(inst.num_sets(), 3);
        let b = inst.set(&SetName::new("b").unwrap()).unwrap();
        assert_eq!(b.extent.len(), 3);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new([elem("a")], [(elem("a"), elem("a"))]).is_err());
        assert!(Graph::new(
            [elem("a"), elem("b")],
            [(elem("a"), elem("b")), (elem("b"), elem("a"))]
        )
        .is_err());
    }
}
