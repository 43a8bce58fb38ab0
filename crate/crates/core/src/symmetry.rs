//! Graph automorphism groups by partition refinement with individualization,
//! canonical labelling, orbit computations and the transitivity predicates.
//!
//! The search follows the usual scheme: refine the unit partition to an
//! equitable one, repeatedly individualize the first vertex of the first
//! smallest non-singleton cell down to a discrete leaf, then walk back up the
//! first path looking for leaves equivalent to it. Every candidate mapping is
//! checked against the adjacency before it is accepted.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("brute force is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("image array is not a permutation of 0..{0}")]
    NotBijection(usize),
    #[error("permutation has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, SymmetryError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(SymmetryError::NotBijection(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.images.len() == g.n() && g.edges().into_iter().all(|(u, v)| g.has_edge(self.images[u], self.images[v]))
    }

    /// Cycle lengths, one per cycle, in order of smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn fixes_all(&self, points: &[usize]) -> bool {
        points.iter().all(|&p| self.images[p] == p)
    }
}

/// Union-find over a domain of indices; only `domain` members are counted.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    parent: Vec<usize>,
    domain: Vec<usize>,
}

impl OrbitPartition {
    pub fn new(size: usize, domain: Vec<usize>) -> Self {
        OrbitPartition { parent: (0..size).collect(), domain }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so cells are reported stably
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.root(a) == self.root(b)
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn num_orbits(&self) -> usize {
        self.domain.iter().filter(|&&x| self.parent[x] == x).count()
    }

    /// Orbits as sorted lists, ordered by least element.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &x in &self.domain {
            by_root.entry(self.root(x)).or_default().push(x);
        }
        let mut cells: Vec<Vec<usize>> = by_root.into_values().collect();
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort();
        cells
    }
}

/// A permutation group given by generators, with a base and the orbit
/// lengths of its stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<usize>,
    orbit_lengths: Vec<usize>,
}

impl PermutationGroup {
    /// Builds the stabilizer chain with the deterministic Schreier-Sims
    /// algorithm.
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self, SymmetryError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(SymmetryError::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let chain = StabChain::build(degree, &generators);
        Ok(PermutationGroup {
            degree,
            generators,
            base: chain.levels.iter().map(|l| l.base).collect(),
            orbit_lengths: chain.levels.iter().map(|l| l.orbit.len()).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn orbit_lengths(&self) -> &[usize] {
        &self.orbit_lengths
    }

    pub fn order(&self) -> BigUint {
        self.orbit_lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l))
    }

    /// Membership test by sifting through a fresh stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && StabChain::build(self.degree, &self.generators).sift(p.clone(), 0).0.is_identity()
    }

    pub fn vertex_orbits(&self) -> OrbitPartition {
        let mut op = OrbitPartition::new(self.degree, (0..self.degree).collect());
        for g in &self.generators {
            for x in 0..self.degree {
                op.union(x, g.apply(x));
            }
        }
        op
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.vertex_orbits().num_orbits() == 1
    }
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    // transversal[p] maps the base point to p
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in generators {
            let (h, level) = chain.sift(g.clone(), 0);
            if !h.is_identity() {
                chain.add(level, h);
            }
        }
        chain.complete();
        chain
    }

    fn gens_from(&self, i: usize) -> Vec<&Permutation> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter()).collect()
    }

    fn add(&mut self, level: usize, h: Permutation) {
        if level == self.levels.len() {
            let base = (0..self.degree).find(|&x| h.apply(x) != x).expect("non-identity");
            self.levels.push(Level { base, gens: Vec::new(), orbit: Vec::new(), transversal: Vec::new(), inverse: Vec::new() });
        }
        self.levels[level].gens.push(h);
        for i in (0..=level).rev() {
            self.rebuild_orbit(i);
        }
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Permutation> = self.gens_from(i).into_iter().cloned().collect();
        let n = self.degree;
        let b = self.levels[i].base;
        let mut transversal: Vec<Option<Permutation>> = vec![None; n];
        transversal[b] = Some(Permutation::identity(n));
        let mut orbit = vec![b];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for s in &gens {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    transversal[q] = Some(transversal[p].as_ref().expect("in orbit").then(s));
                    orbit.push(q);
                }
            }
            k += 1;
        }
        let inverse = transversal.iter().map(|t| t.as_ref().map(Permutation::inverse)).collect();
        let level = &mut self.levels[i];
        level.orbit = orbit;
        level.transversal = transversal;
        level.inverse = inverse;
    }

    /// Strips `h` through levels `from..`; returns the residue and the level
    /// at which it could not be sifted further.
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base);
            match &level.inverse[x] {
                None => return (h, i),
                Some(u) => h = h.then(u),
            }
        }
        (h, self.levels.len())
    }

    /// Adds sifted Schreier generators until every level is closed.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            i -= 1;
            let gens: Vec<Permutation> = self.gens_from(i).into_iter().cloned().collect();
            let orbit = self.levels[i].orbit.clone();
            for &p in &orbit {
                for s in &gens {
                    let up = self.levels[i].transversal[p].as_ref().expect("orbit point");
                    let back = self.levels[i].inverse[s.apply(p)].as_ref().expect("orbit point");
                    let schreier = up.then(s).then(back);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, level) = self.sift(schreier, i + 1);
                    if !h.is_identity() {
                        self.add(level, h);
                        i = level + 1;
                        continue 'outer;
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// partition refinement

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    cell_of: Vec<usize>,
    // cell length, valid at cell starts
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n;
        }
        Partition { lab: (0..n).collect(), cell_of: vec![0; n], len, cells: usize::from(n > 0) }
    }

    /// Start of the non-singleton cell joined non-trivially to the most
    /// cells (first such on ties). Equitability makes one representative per
    /// cell enough.
    fn target_cell(&self, g: &Graph) -> Option<usize> {
        let n = self.lab.len();
        let mut best: Option<(usize, usize)> = None;
        let mut bits = vec![0u64; g.words()];
        let mut s = 0;
        while s < n {
            let l = self.len[s];
            if l > 1 {
                bits.fill(0);
                for &v in self.cell(s) {
                    bits[v / 64] |= 1 << (v % 64);
                }
                let mut score = 0;
                let mut t = 0;
                while t < n {
                    let rep = self.lab[t];
                    let c: u32 = g.row(rep).iter().zip(&bits).map(|(a, b)| (a & b).count_ones()).sum();
                    if c > 0 && (c as usize) < l {
                        score += 1;
                    }
                    t += self.len[t];
                }
                if best.is_none_or(|(_, b)| score > b) {
                    best = Some((s, score));
                }
            }
            s += l;
        }
        best.map(|(s, _)| s)
    }

    fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.len[start]]
    }

    fn refine(&mut self, g: &Graph, initial: &[usize]) -> u64 {
        let n = self.lab.len();
        let mut queue: VecDeque<usize> = initial.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in initial {
            queued[s] = true;
        }
        let mut trace = 0x243f_6a88_85a3_08d3u64;
        let mut splitter = vec![0u64; g.words()];
        let mut count = vec![0u32; n];
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            if self.cells == n {
                break;
            }
            splitter.fill(0);
            for &v in self.cell(s) {
                splitter[v / 64] |= 1 << (v % 64);
            }
            trace = mix(trace, s as u64);
            let mut start = 0;
            while start < n {
                let l = self.len[start];
                if l == 1 {
                    // singleton cells never split, but their adjacency to the
                    // splitter still distinguishes search nodes
                    let v = self.lab[start];
                    let c: u32 = g.row(v).iter().zip(&splitter).map(|(a, b)| (a & b).count_ones()).sum();
                    trace = mix(trace, (start as u64) << 32 | c as u64);
                } else {
                    let (mut lo, mut hi) = (u32::MAX, 0);
                    for &v in &self.lab[start..start + l] {
                        let c: u32 = g.row(v).iter().zip(&splitter).map(|(a, b)| (a & b).count_ones()).sum();
                        count[v] = c;
                        lo = lo.min(c);
                        hi = hi.max(c);
                    }
                    if lo == hi {
                        trace = mix(trace, (start as u64) << 32 | lo as u64);
                    } else {
                        self.lab[start..start + l].sort_unstable_by_key(|&v| count[v]);
                        let mut fs = start;
                        for k in start + 1..=start + l {
                            if k == start + l || count[self.lab[k]] != count[self.lab[fs]] {
                                self.len[fs] = k - fs;
                                for &v in &self.lab[fs..k] {
                                    self.cell_of[v] = fs;
                                }
                                trace = mix(trace, (fs as u64) << 40 | ((k - fs) as u64) << 20 | count[self.lab[fs]] as u64);
                                if !queued[fs] {
                                    queued[fs] = true;
                                    queue.push_back(fs);
                                }
                                if fs != start {
                                    self.cells += 1;
                                }
                                fs = k;
                            }
                        }
                    }
                }
                start += l;
            }
        }
        mix(trace, self.cells as u64)
    }

    /// Splits `v` off its cell and refines; returns the node trace.
    fn individualize(&mut self, g: &Graph, v: usize) -> u64 {
        let s = self.cell_of[v];
        let l = self.len[s];
        let pos = s + self.lab[s..s + l].iter().position(|&x| x == v).expect("vertex in its cell");
        self.lab.swap(s, pos);
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for k in s + 1..s + l {
            self.cell_of[self.lab[k]] = s + 1;
        }
        self.cells += 1;
        mix(self.refine(g, &[s]), s as u64)
    }
}

/// Canonical adjacency of a graph: bitset rows of the relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_graph(&self) -> Graph {
        let words = crate::graph::words_for(self.n);
        Graph::from_fn(self.n, |u, v| self.rows[u * words + v / 64] >> (v % 64) & 1 == 1)
    }
}

fn relabelled_rows(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = g.n();
    let words = g.words();
    let mut pos = vec![0; n];
    for (k, &v) in lab.iter().enumerate() {
        pos[v] = k;
    }
    let mut rows = vec![0u64; n * words];
    for (k, &v) in lab.iter().enumerate() {
        for u in g.neighbors(v) {
            let j = pos[u];
            rows[k * words + j / 64] |= 1 << (j % 64);
        }
    }
    rows
}

/// Leaf `lab` relative to the reference leaf: `ref_lab[k] -> lab[k]`.
fn leaf_map(reference: &[usize], lab: &[usize]) -> Permutation {
    let mut images = vec![0; lab.len()];
    for (k, &v) in reference.iter().enumerate() {
        images[v] = lab[k];
    }
    Permutation { images }
}

fn orbits_under(n: usize, gens: &[Permutation], fixing: &[usize]) -> OrbitPartition {
    let mut op = OrbitPartition::new(n, (0..n).collect());
    for g in gens.iter().filter(|g| g.fixes_all(fixing)) {
        for x in 0..n {
            op.union(x, g.apply(x));
        }
    }
    op
}

struct Search<'a> {
    g: &'a Graph,
    traces: Vec<u64>,
    path: Vec<usize>,
    nodes: Vec<Partition>,
    zeta: Vec<usize>,
    gens: Vec<Permutation>,
}

impl<'a> Search<'a> {
    fn first_path(g: &'a Graph) -> Self {
        let mut p = Partition::unit(g.n());
        let t0 = if g.n() > 0 { p.refine(g, &[0]) } else { 0 };
        let mut s = Search { g, traces: vec![t0], path: Vec::new(), nodes: Vec::new(), zeta: Vec::new(), gens: Vec::new() };
        while let Some(c) = p.target_cell(g) {
            s.nodes.push(p.clone());
            let v = p.lab[c];
            s.path.push(v);
            let t = p.individualize(g, v);
            s.traces.push(t);
        }
        s.zeta = p.lab.clone();
        s
    }

    /// Depth-first search below `node` for a leaf equivalent to the first leaf.
    fn equivalent_leaf(&self, node: &Partition, depth: usize) -> Option<Permutation> {
        let Some(c) = node.target_cell(self.g) else {
            if depth != self.path.len() {
                return None;
            }
            let gamma = leaf_map(&self.zeta, &node.lab);
            return gamma.is_automorphism_of(self.g).then_some(gamma);
        };
        if depth >= self.path.len() {
            return None;
        }
        for &u in node.cell(c) {
            let mut child = node.clone();
            if child.individualize(self.g, u) == self.traces[depth + 1] {
                if let Some(gamma) = self.equivalent_leaf(&child, depth + 1) {
                    return Some(gamma);
                }
            }
        }
        None
    }

    /// Walks the first path bottom-up collecting generators; returns the
    /// stabilizer orbit length at each level.
    fn automorphisms(&mut self) -> Vec<usize> {
        let n = self.g.n();
        let mut lengths = vec![0; self.path.len()];
        for i in (0..self.path.len()).rev() {
            let vi = self.path[i];
            let node = self.nodes[i].clone();
            let cell = node.cell(node.target_cell(self.g).expect("non-discrete on path")).to_vec();
            let mut orbits = orbits_under(n, &self.gens, &[]);
            let mut failed: Vec<usize> = Vec::new();
            for &w in &cell {
                if orbits.same_orbit(w, vi) || failed.iter().any(|&f| orbits.same_orbit(f, w)) {
                    continue;
                }
                let mut child = node.clone();
                let found = if child.individualize(self.g, w) == self.traces[i + 1] {
                    self.equivalent_leaf(&child, i + 1)
                } else {
                    None
                };
                match found {
                    Some(gamma) => {
                        for x in 0..n {
                            orbits.union(x, gamma.apply(x));
                        }
                        self.gens.push(gamma);
                    }
                    None => failed.push(w),
                }
            }
            lengths[i] = cell.iter().filter(|&&w| orbits.same_orbit(w, vi)).count();
        }
        lengths
    }
}

struct Best {
    traces: Vec<u64>,
    rows: Vec<u64>,
    lab: Vec<usize>,
}

fn compare_prefix(path: &[u64], best: &[u64]) -> Ordering {
    let m = path.len().min(best.len());
    match path[..m].cmp(&best[..m]) {
        Ordering::Equal if path.len() > best.len() => Ordering::Greater,
        o => o,
    }
}

impl Search<'_> {
    fn canonical(&mut self) -> Best {
        let mut best = Best { traces: self.traces.clone(), rows: relabelled_rows(self.g, &self.zeta), lab: self.zeta.clone() };
        if self.g.n() == 0 {
            return best;
        }
        let mut root = Partition::unit(self.g.n());
        let t0 = root.refine(self.g, &[0]);
        let mut traces = vec![t0];
        let mut prefix = Vec::new();
        self.canon_dfs(&root, &mut traces, &mut prefix, &mut best);
        best
    }

    fn canon_dfs(&mut self, node: &Partition, traces: &mut Vec<u64>, prefix: &mut Vec<usize>, best: &mut Best) {
        let Some(c) = node.target_cell(self.g) else {
            let rows = relabelled_rows(self.g, &node.lab);
            match traces.as_slice().cmp(&best.traces) {
                Ordering::Greater => *best = Best { traces: traces.clone(), rows, lab: node.lab.clone() },
                Ordering::Equal => match rows.cmp(&best.rows) {
                    Ordering::Less => *best = Best { traces: traces.clone(), rows, lab: node.lab.clone() },
                    Ordering::Equal => {
                        let gamma = leaf_map(&best.lab, &node.lab);
                        if !gamma.is_identity() {
                            debug_assert!(gamma.is_automorphism_of(self.g));
                            self.gens.push(gamma);
                        }
                    }
                    Ordering::Greater => {}
                },
                Ordering::Less => {}
            }
            return;
        };
        let cell = node.cell(c).to_vec();
        let mut explored: Vec<usize> = Vec::new();
        let mut known = usize::MAX;
        let mut orbits = OrbitPartition::new(0, Vec::new());
        for &u in &cell {
            if known != self.gens.len() {
                orbits = orbits_under(self.g.n(), &self.gens, prefix);
                known = self.gens.len();
            }
            if explored.iter().any(|&e| orbits.same_orbit(e, u)) {
                continue;
            }
            explored.push(u);
            let mut child = node.clone();
            traces.push(child.individualize(self.g, u));
            prefix.push(u);
            if compare_prefix(traces, &best.traces) != Ordering::Less {
                self.canon_dfs(&child, traces, prefix, best);
            }
            traces.pop();
            prefix.pop();
        }
    }
}

/// The full automorphism group of `g`, with base equal to the first search
/// path and exact order.
pub fn automorphism_group(g: &Graph) -> PermutationGroup {
    let mut search = Search::first_path(g);
    let lengths = search.automorphisms();
    PermutationGroup { degree: g.n(), generators: search.gens, base: search.path, orbit_lengths: lengths }
}

/// Canonical form and the labelling reaching it: vertex `lab[k]` of `g`
/// becomes vertex `k` of the canonical graph.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: CanonicalForm,
    pub labelling: Vec<usize>,
    pub group: PermutationGroup,
}

pub fn canonical_form(g: &Graph) -> Canonical {
    let mut search = Search::first_path(g);
    let lengths = search.automorphisms();
    let base = search.path.clone();
    let gens_before = search.gens.len();
    let best = search.canonical();
    search.gens.truncate(gens_before);
    Canonical {
        form: CanonicalForm { n: g.n(), rows: best.rows },
        labelling: best.lab,
        group: PermutationGroup { degree: g.n(), generators: search.gens, base, orbit_lengths: lengths },
    }
}

/// An isomorphism `g1 -> g2` if one exists, verified before it is returned.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Option<Permutation> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return None;
    }
    let c1 = canonical_form(g1);
    let c2 = canonical_form(g2);
    if c1.form != c2.form {
        return None;
    }
    let phi = leaf_map(&c1.labelling, &c2.labelling);
    let ok = g1.edges().into_iter().all(|(u, v)| g2.has_edge(phi.apply(u), phi.apply(v)));
    assert!(ok, "equal canonical forms must give an isomorphism");
    Some(phi)
}

pub const BRUTE_FORCE_MAX: usize = 10;

/// Counts adjacency-preserving permutations by backtracking over all
/// partial assignments.
pub fn group_order_bruteforce(g: &Graph) -> Result<u64, SymmetryError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX {
        return Err(SymmetryError::TooLarge { n, max: BRUTE_FORCE_MAX });
    }
    fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = image.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.n() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w)) {
                used[w] = true;
                image.push(w);
                total += extend(g, image, used);
                image.pop();
                used[w] = false;
            }
        }
        total
    }
    Ok(extend(g, &mut Vec::with_capacity(n), &mut vec![false; n]))
}

// ---------------------------------------------------------------------------
// orbits and predicates

pub fn orbits_on_pairs_at_distance(g: &Graph, aut: &PermutationGroup, i: usize) -> OrbitPartition {
    let n = g.n();
    let dist = g.distances();
    let domain: Vec<usize> = (0..n * n).filter(|&x| dist.get(x / n, x % n) == Some(i)).collect();
    let mut op = OrbitPartition::new(n * n, domain);
    for gamma in aut.generators() {
        for k in 0..op.domain.len() {
            let x = op.domain[k];
            let (u, v) = (x / n, x % n);
            op.union(x, gamma.apply(u) * n + gamma.apply(v));
        }
    }
    op
}

/// Orbits on 2-arcs `(u, v, w)`, `u ~ v ~ w`, `u != w`.
pub fn orbits_on_two_arcs(g: &Graph, aut: &PermutationGroup) -> OrbitPartition {
    let n = g.n();
    let nbrs = g.adjacency_lists();
    let mut pos = vec![u32::MAX; n * n];
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        for (k, &u) in nbrs[v].iter().enumerate() {
            pos[v * n + u] = k as u32;
        }
        offset[v + 1] = offset[v] + nbrs[v].len() * nbrs[v].len();
    }
    let index = |u: usize, v: usize, w: usize| offset[v] + pos[v * n + u] as usize * nbrs[v].len() + pos[v * n + w] as usize;
    let mut domain = Vec::new();
    let mut triples = Vec::new();
    for v in 0..n {
        for &u in &nbrs[v] {
            for &w in &nbrs[v] {
                if u != w {
                    domain.push(index(u, v, w));
                    triples.push((u, v, w));
                }
            }
        }
    }
    let mut op = OrbitPartition::new(offset[n], domain);
    for gamma in aut.generators() {
        for (k, &(u, v, w)) in triples.iter().enumerate() {
            let x = op.domain[k];
            op.union(x, index(gamma.apply(u), gamma.apply(v), gamma.apply(w)));
        }
    }
    op
}

/// Orbit counts on ordered pairs at each distance and on 2-arcs, computed
/// from one automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub aut_order: BigUint,
    /// Entry `i` counts orbits on ordered pairs at distance `i`; entry 0 is
    /// the number of vertex orbits.
    pub distance_orbits: Vec<usize>,
    pub two_arc_orbits: usize,
}

impl SymmetryReport {
    pub fn diameter(&self) -> usize {
        self.distance_orbits.len() - 1
    }

    pub fn vertex_transitive(&self) -> bool {
        self.distance_orbits[0] <= 1
    }

    pub fn arc_transitive(&self) -> bool {
        self.vertex_transitive() && self.distance_orbits.get(1).is_none_or(|&k| k <= 1)
    }

    pub fn two_arc_transitive(&self) -> bool {
        self.arc_transitive() && self.two_arc_orbits <= 1
    }

    pub fn s_distance_transitive(&self, s: usize) -> bool {
        self.vertex_transitive() && self.distance_orbits.iter().skip(1).take(s).all(|&k| k <= 1)
    }
}

pub fn analyze_with(g: &Graph, aut: &PermutationGroup) -> Result<SymmetryReport, SymmetryError> {
    if !g.is_connected() {
        return Err(SymmetryError::Disconnected);
    }
    let diam = g.diameter().expect("connected");
    let mut distance_orbits = vec![aut.vertex_orbits().num_orbits()];
    for i in 1..=diam {
        distance_orbits.push(orbits_on_pairs_at_distance(g, aut, i).num_orbits());
    }
    Ok(SymmetryReport { aut_order: aut.order(), distance_orbits, two_arc_orbits: orbits_on_two_arcs(g, aut).num_orbits() })
}

pub fn analyze(g: &Graph) -> Result<SymmetryReport, SymmetryError> {
    analyze_with(g, &automorphism_group(g))
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    automorphism_group(g).is_transitive()
}

pub fn is_arc_transitive(g: &Graph) -> Result<bool, SymmetryError> {
    analyze(g).map(|r| r.arc_transitive())
}

pub fn is_2_arc_transitive(g: &Graph) -> Result<bool, SymmetryError> {
    analyze(g).map(|r| r.two_arc_transitive())
}

/// Transitive on vertices and on ordered pairs at each distance
/// `1..=min(s, diameter)`.
pub fn is_s_distance_transitive(g: &Graph, s: usize) -> Result<bool, SymmetryError> {
    analyze(g).map(|r| r.s_distance_transitive(s))
}

/// JSON certificate for an automorphism computation.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub order: String,
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
    /// Orbits on ordered pairs at distance 0, 1, ... (finite distances only).
    pub orbit_counts_by_distance: Vec<usize>,
}

pub fn certificate(g: &Graph, aut: &PermutationGroup) -> Certificate {
    let n = g.n();
    let max = (0..n * n).filter_map(|x| g.distances().get(x / n, x % n)).max().unwrap_or(0);
    let mut counts = vec![aut.vertex_orbits().num_orbits()];
    for i in 1..=max {
        counts.push(orbits_on_pairs_at_distance(g, aut, i).num_orbits());
    }
    Certificate {
        n,
        order: aut.order().to_string(),
        base: aut.base().to_vec(),
        orbit_lengths: aut.orbit_lengths().to_vec(),
        generators: aut.generators().iter().map(|p| p.images().to_vec()).collect(),
        orbit_counts_by_distance: counts,
    }
}
