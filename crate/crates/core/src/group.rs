//! Finite group arithmetic for generalized quaternion, dihedral and cyclic
//! groups, with quotients by normal subgroups.
//!
//! Every group is realised as a dense multiplication table over element
//! indices `0..order`, index `0` always being the identity. The generalized
//! quaternion group `Q_{4n} = <a, b | a^{2n} = 1, b^2 = a^n, b^{-1} a b = a^{-1}>`
//! enumerates `a^k b^j` as index `k + 2n*j`; the dihedral group
//! `D_{2n} = <r, s | r^n = s^2 = 1, s r s = r^{-1}>` enumerates `r^k s^j` as
//! `k + n*j`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generalized quaternion group Q_{{4n}} needs n >= 2, got n = {0}")]
    QuaternionTooSmall(u32),
    #[error("group parameter must be positive")]
    ZeroOrder,
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
}

/// An element `a^exp_a b^(has_b)` of `Q_{4n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElement {
    pub exp_a: u32,
    pub has_b: bool,
}

impl QElement {
    pub const IDENTITY: QElement = QElement { exp_a: 0, has_b: false };

    /// Builds `a^k b^j`, reducing `k` modulo `2n`.
    pub fn new(exp_a: i64, has_b: bool, n: u32) -> Self {
        let m = 2 * n as i64;
        QElement { exp_a: exp_a.rem_euclid(m) as u32, has_b }
    }

    pub fn index(self, n: u32) -> usize {
        self.exp_a as usize + if self.has_b { 2 * n as usize } else { 0 }
    }

    pub fn from_index(index: usize, n: u32) -> Self {
        let m = 2 * n as usize;
        QElement { exp_a: (index % m) as u32, has_b: index >= m }
    }
}

/// Product in `Q_{4n}`: `a^k a^m b^j = a^{k+m} b^j`, `a^k b a^m = a^{k-m} b`,
/// `a^k b a^m b = a^{k-m+n}`.
pub fn multiply(g: QElement, h: QElement, n: u32) -> QElement {
    let (k, m, n) = (g.exp_a as i64, h.exp_a as i64, n as i64);
    match (g.has_b, h.has_b) {
        (false, j) => QElement::new(k + m, j, n as u32),
        (true, false) => QElement::new(k - m, true, n as u32),
        (true, true) => QElement::new(k - m + n, false, n as u32),
    }
}

pub fn inverse(g: QElement, n: u32) -> QElement {
    if g.has_b {
        // (a^k b)^{-1} = a^{k+n} b since (a^k b)^2 = a^n
        QElement::new(g.exp_a as i64 + n as i64, true, n)
    } else {
        QElement::new(-(g.exp_a as i64), false, n)
    }
}

pub fn element_order(g: QElement, n: u32) -> u32 {
    let mut x = g;
    let mut k = 1;
    while x != QElement::IDENTITY {
        x = multiply(x, g, n);
        k += 1;
    }
    k
}

/// Which presentation a [`FiniteGroup`] was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    GeneralizedQuaternion(u32),
    Dihedral(u32),
    Cyclic(u32),
    DirectProductZ2Z2,
    /// Coset group; `reps[i]` is the minimal parent index in coset `i`.
    Quotient {
        parent: Box<GroupKind>,
        normal_subgroup: Vec<usize>,
        reps: Vec<usize>,
    },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::GeneralizedQuaternion(n) => write!(f, "Q_{}", 4 * n),
            GroupKind::Dihedral(n) => write!(f, "D_{}", 2 * n),
            GroupKind::Cyclic(n) => write!(f, "Z_{}", n),
            GroupKind::DirectProductZ2Z2 => write!(f, "Z_2 x Z_2"),
            GroupKind::Quotient { parent, normal_subgroup, .. } => {
                write!(f, "{}/N(|N|={})", parent, normal_subgroup.len())
            }
        }
    }
}

/// Isomorphism types recognised by [`FiniteGroup::identify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardGroup {
    Cyclic(u32),
    Dihedral(u32),
    GeneralizedQuaternion(u32),
    DirectProductZ2Z2,
}

impl StandardGroup {
    pub fn build(self) -> FiniteGroup {
        match self {
            StandardGroup::Cyclic(n) => FiniteGroup::cyclic(n).expect("positive"),
            StandardGroup::Dihedral(n) => FiniteGroup::dihedral(n).expect("positive"),
            StandardGroup::GeneralizedQuaternion(n) => FiniteGroup::quaternion(n).expect("n >= 2"),
            StandardGroup::DirectProductZ2Z2 => FiniteGroup::z2xz2(),
        }
    }
}

/// A subgroup given by generators and its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
    pub is_normal: bool,
}

impl SubgroupDescriptor {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    kind: GroupKind,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.table == other.table
    }
}

impl FiniteGroup {
    fn from_table(kind: GroupKind, order: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            inverses[x] = row.iter().position(|&p| p == 0).expect("group table has inverses") as u32;
        }
        FiniteGroup { kind, order, table, inverses }
    }

    fn from_fn(kind: GroupKind, order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(mul(x, y) as u32);
            }
        }
        Self::from_table(kind, order, table)
    }

    pub fn quaternion(n: u32) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::QuaternionTooSmall(n));
        }
        let order = 4 * n as usize;
        Ok(Self::from_fn(GroupKind::GeneralizedQuaternion(n), order, |x, y| {
            multiply(QElement::from_index(x, n), QElement::from_index(y, n), n).index(n)
        }))
    }

    pub fn dihedral(n: u32) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let m = n as usize;
        Ok(Self::from_fn(GroupKind::Dihedral(n), 2 * m, |x, y| {
            let (k, i) = (x % m, x / m);
            let (l, j) = (y % m, y / m);
            // r^k s^i r^l s^j = r^{k +- l} s^{i+j}
            let e = if i == 0 { (k + l) % m } else { (k + m - l) % m };
            e + m * ((i + j) % 2)
        }))
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let m = n as usize;
        Ok(Self::from_fn(GroupKind::Cyclic(n), m, |x, y| (x + y) % m))
    }

    pub fn z2xz2() -> Self {
        Self::from_fn(GroupKind::DirectProductZ2Z2, 4, |x, y| x ^ y)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn check_element(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { index: x, order: self.order })
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Human-readable name of an element, e.g. `a^3b` in `Q_{4n}`.
    pub fn element_name(&self, x: usize) -> String {
        fn word(sym: &str, k: usize, tail: &str) -> String {
            match (k, tail.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => tail.to_string(),
                (1, _) => format!("{sym}{tail}"),
                _ => format!("{sym}^{k}{tail}"),
            }
        }
        match &self.kind {
            GroupKind::GeneralizedQuaternion(n) => {
                let e = QElement::from_index(x, *n);
                word("a", e.exp_a as usize, if e.has_b { "b" } else { "" })
            }
            GroupKind::Dihedral(n) => {
                let m = *n as usize;
                word("r", x % m, if x >= m { "s" } else { "" })
            }
            GroupKind::Cyclic(_) => x.to_string(),
            GroupKind::DirectProductZ2Z2 => format!("({},{})", x & 1, x >> 1),
            GroupKind::Quotient { reps, .. } => format!("[{}]", reps[x]),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Closure of `gens` under multiplication, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure(gens).len() == self.order
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&x| x < self.order && set.contains(&self.inv(x)))
            && set.iter().all(|&x| set.iter().all(|&y| set.contains(&self.mul(x, y))))
    }

    /// `g H g^{-1} = H` for every `g`; `elements` must be sorted.
    pub fn is_normal(&self, elements: &[usize]) -> bool {
        self.elements().all(|g| {
            let gi = self.inv(g);
            elements.iter().all(|&h| elements.binary_search(&self.mul(self.mul(g, h), gi)).is_ok())
        })
    }

    pub fn subgroup(&self, gens: &[usize]) -> SubgroupDescriptor {
        let elements = self.closure(gens);
        let is_normal = self.is_normal(&elements);
        SubgroupDescriptor { generators: gens.to_vec(), elements, is_normal }
    }

    pub fn center(&self) -> SubgroupDescriptor {
        let elements: Vec<usize> = self
            .elements()
            .filter(|&z| self.elements().all(|h| self.mul(z, h) == self.mul(h, z)))
            .collect();
        SubgroupDescriptor { generators: elements.clone(), elements, is_normal: true }
    }

    /// Every subgroup, found by closing cyclic subgroups under pairwise joins.
    /// Sorted by order, then by element list.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = self.elements().map(|x| self.closure(&[x])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut added = false;
            for (i, h) in current.iter().enumerate() {
                for k in &current[i + 1..] {
                    let gens: Vec<usize> = h.iter().chain(k.iter()).copied().collect();
                    let join = self.closure(&gens);
                    if found.insert(join) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out
    }

    /// Normal subgroups, deduplicated and sorted by order then element list.
    ///
    /// For `Q_{4n}` these come from the known list: `1`, `Q_{4n}`, the cyclic
    /// `<a^{2n/k}>` for `k | 2n`, and for even `n` also `<a^2, b>` and
    /// `<a^2, ab>`. Other groups fall back to filtering [`Self::all_subgroups`].
    pub fn normal_subgroups(&self) -> Vec<SubgroupDescriptor> {
        let mut out: Vec<SubgroupDescriptor> = match self.kind {
            GroupKind::GeneralizedQuaternion(n) => {
                let a = |k: u32| QElement::new(k as i64, false, n).index(n);
                let b = QElement::new(0, true, n).index(n);
                let ab = QElement::new(1, true, n).index(n);
                let mut gens: Vec<Vec<usize>> = vec![vec![], vec![a(1), b]];
                for k in 1..=2 * n {
                    if (2 * n) % k == 0 {
                        gens.push(vec![a(2 * n / k)]);
                    }
                }
                if n % 2 == 0 {
                    gens.push(vec![a(2), b]);
                    gens.push(vec![a(2), ab]);
                }
                gens.iter()
                    .map(|g| {
                        let elements = self.closure(g);
                        SubgroupDescriptor { generators: g.clone(), elements, is_normal: true }
                    })
                    .collect()
            }
            _ => self
                .all_subgroups()
                .into_iter()
                .filter(|h| self.is_normal(h))
                .map(|h| SubgroupDescriptor { generators: h.clone(), elements: h, is_normal: true })
                .collect(),
        };
        out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements.cmp(&y.elements)));
        out.dedup_by(|x, y| x.elements == y.elements);
        out
    }

    /// Coset group `G/N`, with canonical (minimal-index) coset representatives.
    pub fn quotient(&self, normal: &SubgroupDescriptor) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(&normal.elements) {
            return Err(GroupError::NotSubgroup);
        }
        if !self.is_normal(&normal.elements) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &h in &normal.elements {
                    coset_of[self.mul(g, h)] = id;
                }
            }
        }
        let k = reps.len();
        let kind = GroupKind::Quotient {
            parent: Box::new(self.kind.clone()),
            normal_subgroup: normal.elements.clone(),
            reps: reps.clone(),
        };
        Ok(Self::from_fn(kind, k, |x, y| coset_of[self.mul(reps[x], reps[y])]))
    }

    /// A small generating set, chosen greedily from high-order elements.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for x in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] -> images[i]` to a homomorphism into `target`, if the
    /// assignment is consistent. `gens` must generate `self`.
    fn extend_hom(&self, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let hom = self
            .elements()
            .all(|x| self.elements().all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y])));
        hom.then_some(map)
    }

    fn isomorphisms_into(&self, target: &FiniteGroup, first_only: bool) -> Vec<Vec<usize>> {
        if self.order != target.order {
            return Vec::new();
        }
        let gens = self.generating_set();
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<usize>> = orders
            .iter()
            .map(|&o| target.elements().filter(|&y| target.element_order(y) == o).collect())
            .collect();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        fn rec(
            src: &FiniteGroup,
            dst: &FiniteGroup,
            gens: &[usize],
            candidates: &[Vec<usize>],
            images: &mut Vec<usize>,
            depth: usize,
            first_only: bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            if first_only && !out.is_empty() {
                return;
            }
            if depth == gens.len() {
                if let Some(map) = src.extend_hom(dst, gens, images) {
                    let mut seen = vec![false; dst.order];
                    if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                        out.push(map);
                    }
                }
                return;
            }
            for &c in &candidates[depth] {
                images[depth] = c;
                rec(src, dst, gens, candidates, images, depth + 1, first_only, out);
            }
        }
        rec(self, target, &gens, &candidates, &mut images, 0, first_only, &mut out);
        out
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        !self.isomorphisms_into(other, true).is_empty()
    }

    /// All automorphisms, each as an element-index map, by brute force over
    /// generator images. Intended for orders up to a few dozen.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut auts = self.isomorphisms_into(self, false);
        auts.sort();
        auts
    }

    /// Recognises cyclic, dihedral, generalized quaternion and Klein four groups.
    pub fn identify(&self) -> Option<StandardGroup> {
        let o = self.order as u32;
        let mut candidates = vec![StandardGroup::Cyclic(o)];
        if o == 4 {
            candidates.push(StandardGroup::DirectProductZ2Z2);
        }
        if o % 2 == 0 {
            candidates.push(StandardGroup::Dihedral(o / 2));
        }
        if o % 4 == 0 && o >= 8 {
            candidates.push(StandardGroup::GeneralizedQuaternion(o / 4));
        }
        candidates.into_iter().find(|c| self.is_isomorphic(&c.build()))
    }
}
