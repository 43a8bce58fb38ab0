//! Voltage assignments, derived covers and quotients by vertex partitions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::group::FiniteGroup;
use crate::symmetry::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoltageError {
    #[error("{0}-{1} is not an edge of the base graph")]
    NotAnEdge(usize, usize),
    #[error("voltages on arcs ({0},{1}) and ({1},{0}) are not mutually inverse")]
    InverseLaw(usize, usize),
    #[error("voltage {index} is not an element of a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("walk step {0} does not follow an edge")]
    NotAWalk(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("permutation cycles have unequal lengths {0:?}")]
    NotSemiregular(Vec<usize>),
}

/// Arc voltages for a base graph. Only arcs `(u, v)` with `u < v` are
/// stored; the reverse arc reads the inverse.
#[derive(Debug, Clone)]
pub struct VoltageAssignment {
    base: Graph,
    group: FiniteGroup,
    forward: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcVoltage {
    pub u: usize,
    pub v: usize,
    pub g: usize,
}

impl VoltageAssignment {
    /// All voltages trivial.
    pub fn trivial(base: Graph, group: FiniteGroup) -> Self {
        VoltageAssignment { base, group, forward: BTreeMap::new() }
    }

    /// Builds from arc voltages; an arc given in both directions must carry
    /// inverse elements. Unlisted edges get the identity.
    pub fn from_arcs(base: Graph, group: FiniteGroup, arcs: &[ArcVoltage]) -> Result<Self, VoltageError> {
        let mut given: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in arcs {
            if a.u >= base.n() || a.v >= base.n() || !base.has_edge(a.u, a.v) {
                return Err(VoltageError::NotAnEdge(a.u, a.v));
            }
            if a.g >= group.order() {
                return Err(VoltageError::ElementOutOfRange { index: a.g, order: group.order() });
            }
            let (key, val) = if a.u < a.v { ((a.u, a.v), a.g) } else { ((a.v, a.u), group.inv(a.g)) };
            if let Some(&old) = given.get(&key) {
                if old != val {
                    return Err(VoltageError::InverseLaw(key.0, key.1));
                }
            }
            given.insert(key, val);
        }
        given.retain(|_, g| *g != group.identity());
        Ok(VoltageAssignment { base, group, forward: given })
    }

    /// Builds from a rule evaluated on every arc, checking the inverse law.
    pub fn from_fn(base: Graph, group: FiniteGroup, mut psi: impl FnMut(usize, usize) -> usize) -> Result<Self, VoltageError> {
        let mut arcs = Vec::new();
        for (u, v) in base.edges() {
            arcs.push(ArcVoltage { u, v, g: psi(u, v) });
            arcs.push(ArcVoltage { u: v, v: u, g: psi(v, u) });
        }
        Self::from_arcs(base, group, &arcs)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Voltage on the arc `(u, v)`.
    pub fn get(&self, u: usize, v: usize) -> Result<usize, VoltageError> {
        if u >= self.base.n() || v >= self.base.n() || !self.base.has_edge(u, v) {
            return Err(VoltageError::NotAnEdge(u, v));
        }
        let id = self.group.identity();
        Ok(if u < v {
            *self.forward.get(&(u, v)).unwrap_or(&id)
        } else {
            self.group.inv(*self.forward.get(&(v, u)).unwrap_or(&id))
        })
    }

    /// Product of the arc voltages along `walk`.
    pub fn walk_voltage(&self, walk: &[usize]) -> Result<usize, VoltageError> {
        let mut acc = self.group.identity();
        for (i, step) in walk.windows(2).enumerate() {
            let g = self.get(step[0], step[1]).map_err(|_| VoltageError::NotAWalk(i))?;
            acc = self.group.mul(acc, g);
        }
        Ok(acc)
    }

    pub fn arcs(&self) -> Vec<ArcVoltage> {
        self.base
            .edges()
            .into_iter()
            .map(|(u, v)| ArcVoltage { u, v, g: self.get(u, v).expect("edge") })
            .collect()
    }

    /// An equivalent assignment that is trivial on a breadth-first spanning
    /// forest; its derived cover is isomorphic to the original one.
    pub fn normalized(&self) -> VoltageAssignment {
        let n = self.base.n();
        let mut t: Vec<Option<usize>> = vec![None; n];
        for root in 0..n {
            if t[root].is_some() {
                continue;
            }
            t[root] = Some(self.group.identity());
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in self.base.neighbors(u) {
                    if t[v].is_none() {
                        let tu = t[u].expect("visited");
                        t[v] = Some(self.group.mul(tu, self.get(u, v).expect("edge")));
                        queue.push_back(v);
                    }
                }
            }
        }
        let t: Vec<usize> = t.into_iter().map(|x| x.expect("all visited")).collect();
        let g = &self.group;
        let mut forward = BTreeMap::new();
        for (u, v) in self.base.edges() {
            let x = g.mul(g.mul(t[u], self.get(u, v).expect("edge")), g.inv(t[v]));
            if x != g.identity() {
                forward.insert((u, v), x);
            }
        }
        VoltageAssignment { base: self.base.clone(), group: self.group.clone(), forward }
    }

    /// The derived cover on `V(base) x N`: `(u, g) ~ (v, g psi(u, v))`.
    /// Vertex `(u, g)` has index `u |N| + g`.
    pub fn derive_cover(&self) -> CoverGraph {
        let order = self.group.order();
        let n = self.base.n();
        let mut edges = Vec::new();
        for (u, v) in self.base.edges() {
            let psi = self.get(u, v).expect("edge");
            for g in 0..order {
                edges.push((u * order + g, v * order + self.group.mul(g, psi)));
            }
        }
        let labels = (0..n * order)
            .map(|x| format!("({},{})", self.base.label(x / order), self.group.element_name(x % order)))
            .collect();
        let graph = Graph::from_edges(n * order, edges)
            .expect("voltage lifts of simple edges are simple")
            .with_labels(labels)
            .expect("label count");
        CoverGraph { graph, fiber: (0..n * order).map(|x| (x / order, x % order)).collect(), base_n: n }
    }
}

/// A derived cover with its projection to the base.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    pub graph: Graph,
    /// Cover vertex -> (base vertex, voltage group element).
    pub fiber: Vec<(usize, usize)>,
    base_n: usize,
}

impl CoverGraph {
    /// Fibres over the base vertices, in base-vertex order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.base_n];
        for (x, &(u, _)) in self.fiber.iter().enumerate() {
            cells[u].push(x);
        }
        cells
    }
}

fn cell_index(n: usize, partition: &[Vec<usize>]) -> Result<Vec<usize>, VoltageError> {
    let mut cell = vec![usize::MAX; n];
    for (i, c) in partition.iter().enumerate() {
        if c.is_empty() {
            return Err(VoltageError::InvalidPartition(format!("cell {i} is empty")));
        }
        for &v in c {
            if v >= n {
                return Err(VoltageError::InvalidPartition(format!("vertex {v} out of range")));
            }
            if cell[v] != usize::MAX {
                return Err(VoltageError::InvalidPartition(format!("vertex {v} lies in two cells")));
            }
            cell[v] = i;
        }
    }
    if let Some(v) = cell.iter().position(|&c| c == usize::MAX) {
        return Err(VoltageError::InvalidPartition(format!("vertex {v} is in no cell")));
    }
    Ok(cell)
}

/// The quotient graph on the cells; loops are dropped.
pub fn quotient_by_orbits(g: &Graph, partition: &[Vec<usize>]) -> Result<Graph, VoltageError> {
    let cell = cell_index(g.n(), partition)?;
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().map(|(u, v)| (cell[u], cell[v])).filter(|(a, b)| a != b).collect();
    Ok(Graph::from_edges(partition.len(), edges).expect("cell indices in range"))
}

/// Whether the projection onto the cells is a covering: equal cell sizes, no
/// edges inside a cell, and every vertex has exactly one neighbour in each
/// cell adjacent to its own in the quotient. Invalid partitions give `false`.
pub fn is_n_cover(g: &Graph, partition: &[Vec<usize>]) -> bool {
    let Ok(cell) = cell_index(g.n(), partition) else {
        return false;
    };
    let size = partition.first().map_or(0, Vec::len);
    if partition.iter().any(|c| c.len() != size) {
        return false;
    }
    let quotient = match quotient_by_orbits(g, partition) {
        Ok(q) => q,
        Err(_) => return false,
    };
    for v in 0..g.n() {
        let mut hits = vec![0usize; partition.len()];
        for w in g.neighbors(v) {
            hits[cell[w]] += 1;
        }
        if hits[cell[v]] != 0 {
            return false;
        }
        for j in quotient.neighbors(cell[v]) {
            if hits[j] != 1 {
                return false;
            }
        }
    }
    true
}

/// Quotient by the orbits of `<perm>`, which must be a semiregular
/// automorphism. Orbits are listed by least element.
pub fn semiregular_cyclic_quotient(g: &Graph, perm: &Permutation) -> Result<(Graph, Vec<Vec<usize>>), VoltageError> {
    if perm.degree() != g.n() || !perm.is_automorphism_of(g) {
        return Err(VoltageError::NotAutomorphism);
    }
    let lengths = perm.cycle_lengths();
    if lengths.windows(2).any(|w| w[0] != w[1]) {
        let mut l = lengths;
        l.sort_unstable();
        l.dedup();
        return Err(VoltageError::NotSemiregular(l));
    }
    let mut seen = vec![false; g.n()];
    let mut cells = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = perm.apply(x);
        }
        c.sort_unstable();
        cells.push(c);
    }
    let q = quotient_by_orbits(g, &cells)?;
    Ok((q, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::small::*;
    use crate::symmetry::is_isomorphic;

    #[test]
    fn trivial_voltages_give_disjoint_copies() {
        let base = cycle(5);
        let cover = VoltageAssignment::trivial(base.clone(), FiniteGroup::cyclic(3).unwrap()).derive_cover();
        assert_eq!(cover.graph.n(), 15);
        assert!(!cover.graph.is_connected());
        let copy: Vec<usize> = (0..5).map(|u| u * 3).collect();
        assert!((0..5).all(|u| cover.graph.has_edge(copy[u], copy[(u + 1) % 5])));
        assert!(is_n_cover(&cover.graph, &cover.fibers()));
    }

    #[test]
    fn one_twisted_arc_on_c4_gives_c8() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let psi = VoltageAssignment::from_arcs(cycle(4), z2, &[ArcVoltage { u: 0, v: 1, g: 1 }]).unwrap();
        let cover = psi.derive_cover();
        assert!(is_isomorphic(&cover.graph, &cycle(8)).is_some());
        let back = quotient_by_orbits(&cover.graph, &cover.fibers()).unwrap();
        assert_eq!(back, cycle(4));
    }

    #[test]
    fn inverse_law_is_enforced() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let bad = [ArcVoltage { u: 0, v: 1, g: 1 }, ArcVoltage { u: 1, v: 0, g: 1 }];
        assert_eq!(VoltageAssignment::from_arcs(cycle(4), z4.clone(), &bad).unwrap_err(), VoltageError::InverseLaw(0, 1));
        let good = [ArcVoltage { u: 0, v: 1, g: 1 }, ArcVoltage { u: 1, v: 0, g: 3 }];
        let psi = VoltageAssignment::from_arcs(cycle(4), z4.clone(), &good).unwrap();
        assert_eq!(psi.get(1, 0), Ok(3));
        assert_eq!(
            VoltageAssignment::from_arcs(cycle(4), z4, &[ArcVoltage { u: 0, v: 2, g: 1 }]).unwrap_err(),
            VoltageError::NotAnEdge(0, 2)
        );
    }

    #[test]
    fn walk_voltages() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let psi = VoltageAssignment::from_fn(complete(4), z4, |u, v| if u < v { (u + v) % 4 } else { (4 - (u + v) % 4) % 4 }).unwrap();
        assert_eq!(psi.walk_voltage(&[]), Ok(0));
        assert_eq!(psi.walk_voltage(&[2]), Ok(0));
        let w = [0, 1, 3, 2];
        let mut back = w;
        back.reverse();
        let there = psi.walk_voltage(&w).unwrap();
        assert_eq!(psi.group().mul(there, psi.walk_voltage(&back).unwrap()), 0);
        assert_eq!(psi.walk_voltage(&[0, 1, 1]), Err(VoltageError::NotAWalk(1)));
    }

    #[test]
    fn normalization_preserves_cover() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let psi = VoltageAssignment::from_fn(complete(4), z3, |u, v| if u < v { (u * v + 1) % 3 } else { (3 - (u * v + 1) % 3) % 3 }).unwrap();
        let norm = psi.normalized();
        assert_eq!(norm.get(0, 1), Ok(0));
        assert_eq!(norm.get(0, 2), Ok(0));
        assert_eq!(norm.get(0, 3), Ok(0));
        assert!(is_isomorphic(&psi.derive_cover().graph, &norm.derive_cover().graph).is_some());
    }

    #[test]
    fn quotients() {
        let c6 = cycle(6);
        let singletons: Vec<Vec<usize>> = (0..6).map(|v| vec![v]).collect();
        assert_eq!(quotient_by_orbits(&c6, &singletons).unwrap(), c6);
        assert!(is_n_cover(&c6, &singletons));
        let rot3 = Permutation::from_images((0..6).map(|i| (i + 3) % 6).collect()).unwrap();
        let (q, cells) = semiregular_cyclic_quotient(&c6, &rot3).unwrap();
        assert_eq!(q, cycle(3));
        assert_eq!(cells, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(is_n_cover(&c6, &cells));
        assert!(!is_n_cover(&complete(4), &[vec![0, 1], vec![2, 3]]));
        assert!(quotient_by_orbits(&c6, &[vec![0, 1, 2], vec![2, 3, 4, 5]]).is_err());
        assert!(quotient_by_orbits(&c6, &[vec![0, 1, 2], vec![3, 4]]).is_err());
    }

    #[test]
    fn semiregularity_is_checked() {
        let c6 = cycle(6);
        let reflection = Permutation::from_images(vec![0, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(semiregular_cyclic_quotient(&c6, &reflection).unwrap_err(), VoltageError::NotSemiregular(vec![1, 2]));
        let not_aut = Permutation::from_images(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(semiregular_cyclic_quotient(&c6, &not_aut).unwrap_err(), VoltageError::NotAutomorphism);
        let (q, _) = semiregular_cyclic_quotient(&c6, &Permutation::identity(6)).unwrap();
        assert_eq!(q, c6);
    }

    #[test]
    fn arcs_json() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let psi = VoltageAssignment::from_arcs(cycle(3), z2, &[ArcVoltage { u: 2, v: 0, g: 1 }]).unwrap();
        let json = serde_json::to_string(&psi.arcs()).unwrap();
        assert_eq!(json, r#"[{"u":0,"v":1,"g":0},{"u":0,"v":2,"g":1},{"u":1,"v":2,"g":0}]"#);
    }
}
