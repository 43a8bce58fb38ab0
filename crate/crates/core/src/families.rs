//! Named graph constructors and the catalog of 2-distance-transitive Cayley
//! graphs over generalized quaternion groups.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::{divisors, is_prime, prime_power, FieldError, FieldGF};
use crate::geometry::{biplane_h11, enumerate_subspaces, gdd_points_blocks, vector_from_index};
use crate::graph::Graph;
use crate::group::FiniteGroup;
use crate::voltage::{is_n_cover, quotient_by_orbits, ArcVoltage, CoverGraph, VoltageAssignment, VoltageError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("connection set is not closed under inverses: missing the inverse of element {0}")]
    NotInverseClosed(usize),
    #[error("element {0} is outside the group")]
    ElementOutOfRange(usize),
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Parameter(msg()))
    }
}

fn labelled(g: Graph, labels: Vec<String>) -> Graph {
    g.with_labels(labels).expect("one label per vertex")
}

fn primed(m: usize, show: impl Fn(usize) -> String) -> Vec<String> {
    (0..m).map(&show).chain((0..m).map(|i| format!("{}'", show(i)))).collect()
}

/// `K_{x[y]}`: `x` parts of size `y`.
pub fn complete_multipartite(x: usize, y: usize) -> Result<Graph, FamilyError> {
    require(x >= 2 && y >= 1, || format!("K_{{x[y]}} needs x >= 2 and y >= 1, got x = {x}, y = {y}"))?;
    let g = Graph::from_fn(x * y, |u, v| u / y != v / y);
    Ok(labelled(g, (0..x * y).map(|v| format!("{}.{}", v / y, v % y)).collect()))
}

/// `Cay(T, S)` with edges `{g, sg}`; vertex `i` is group element `i`.
pub fn cayley_graph(group: &FiniteGroup, s: &[usize]) -> Result<Graph, FamilyError> {
    for &x in s {
        if x >= group.order() {
            return Err(FamilyError::ElementOutOfRange(x));
        }
        if x == group.identity() {
            return Err(FamilyError::IdentityInConnectionSet);
        }
        if !s.contains(&group.inv(x)) {
            return Err(FamilyError::NotInverseClosed(x));
        }
    }
    let edges: Vec<(usize, usize)> = group.elements().flat_map(|g| s.iter().map(move |&x| (g, x))).map(|(g, x)| (g, group.mul(x, g))).collect();
    let g = Graph::from_edges(group.order(), edges).expect("elements in range, identity excluded");
    Ok(labelled(g, group.elements().map(|x| group.element_name(x)).collect()))
}

pub fn complete_bipartite(m: usize) -> Result<Graph, FamilyError> {
    require(m >= 2, || format!("K_{{m,m}} needs m >= 2, got {m}"))?;
    Ok(labelled(Graph::from_fn(2 * m, |u, v| (u < m) != (v < m)), primed(m, |i| i.to_string())))
}

/// `K_{m,m} - mK_2`: `i ~ j'` for `i != j`.
pub fn complete_bipartite_minus_matching(m: usize) -> Result<Graph, FamilyError> {
    require(m >= 2, || format!("K_{{m,m}}-mK_2 needs m >= 2, got {m}"))?;
    Ok(labelled(Graph::from_fn(2 * m, |u, v| (u < m) != (v < m) && u % m != v % m), primed(m, |i| i.to_string())))
}

/// `B(PG(d-1,q))` (or its bipartite complement) from the points and
/// hyperplanes of `GF(q)^d`; `d` is the vector-space dimension.
pub fn incidence_pg(d: usize, q: u32, complemented: bool) -> Result<Graph, FamilyError> {
    require(d >= 3, || format!("B(PG(d-1,q)) needs vector-space dimension d >= 3, got {d}"))?;
    let field = FieldGF::from_order(q)?;
    let points = enumerate_subspaces(&field, d, 1);
    let hyperplanes = enumerate_subspaces(&field, d, d - 1);
    let m = points.len();
    let g = Graph::from_fn(2 * m, |u, v| {
        if (u < m) == (v < m) {
            return false;
        }
        let (p, h) = if u < m { (u, v - m) } else { (v, u - m) };
        hyperplanes[h].contains(&field, &points[p].basis()[0]) != complemented
    });
    let show = |v: &[u32]| v.iter().map(u32::to_string).collect::<String>();
    let labels = points
        .iter()
        .map(|p| format!("<{}>", show(&p.basis()[0])))
        .chain(hyperplanes.iter().map(|h| format!("[{}]", h.basis().iter().map(|r| show(r)).collect::<Vec<_>>().join(","))))
        .collect();
    Ok(labelled(g, labels))
}

/// `GP(n, r)`: `u_i = i`, `v_i = n + i`.
pub fn generalized_petersen(n: usize, r: usize) -> Result<Graph, FamilyError> {
    require(n >= 3 && r >= 1 && 2 * r < n, || format!("GP(n,r) needs n >= 3 and 1 <= r < n/2, got n = {n}, r = {r}"))?;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + r) % n));
        edges.push((i, n + i));
    }
    let g = Graph::from_edges(2 * n, edges).expect("valid indices");
    Ok(labelled(g, (0..n).map(|i| format!("u{i}")).chain((0..n).map(|i| format!("v{i}"))).collect()))
}

fn odd_prime_power_field(q: u32) -> Result<FieldGF, FamilyError> {
    let field = FieldGF::from_order(q)?;
    require(q % 2 == 1, || format!("q must be an odd prime power, got {q}"))?;
    Ok(field)
}

fn projective_line_labels(q: u32) -> impl Fn(usize) -> String {
    move |i| if i == q as usize { "inf".to_string() } else { i.to_string() }
}

/// Voltages of `X_1(4,q)` on `K_{q+1}`; vertex `q` is the point at infinity.
pub fn x1_4q_voltages(q: u32) -> Result<VoltageAssignment, FamilyError> {
    let field = odd_prime_power_field(q)?;
    require(q % 4 == 3, || format!("X_1(4,q) needs q = 3 (mod 4), got q = {q}"))?;
    let inf = q as usize;
    let base = labelled(Graph::from_fn(inf + 1, |_, _| true), (0..=inf).map(projective_line_labels(q)).collect());
    let psi = VoltageAssignment::from_fn(base, FiniteGroup::cyclic(4).expect("positive"), |x, y| {
        if x == inf || y == inf {
            0
        } else if field.is_square(field.sub(y as u32, x as u32)) {
            1
        } else {
            3
        }
    })?;
    Ok(psi)
}

pub fn x1_4q(q: u32) -> Result<Graph, FamilyError> {
    Ok(x1_4q_voltages(q)?.derive_cover().graph)
}

/// Voltages of `K_{q+1}^{2d}` on `K_{q+1,q+1} - (q+1)K_2`, with logarithms
/// taken to base `theta` (the field's own primitive element if `None`).
pub fn kq1_2d_voltages(q: u32, d: u32, theta: Option<u32>) -> Result<VoltageAssignment, FamilyError> {
    let field = odd_prime_power_field(q)?;
    require(d >= 2 && (q - 1) % d == 0, || format!("K_{{q+1}}^{{2d}} needs d >= 2 dividing q-1, got q = {q}, d = {d}"))?;
    let theta = theta.unwrap_or(field.primitive_element());
    require(theta > 0 && theta < q, || format!("theta = {theta} is not a non-zero element of GF({q})"))?;
    let mut log = vec![u32::MAX; q as usize];
    let mut x = 1;
    for h in 0..q - 1 {
        if log[x as usize] != u32::MAX {
            return Err(FamilyError::Parameter(format!("theta = {theta} is not a primitive element of GF({q})")));
        }
        log[x as usize] = h;
        x = field.mul(x, theta);
    }
    let m = q as usize + 1;
    let inf = q as usize;
    let base = labelled(complete_bipartite_minus_matching(m)?, primed(m, projective_line_labels(q)));
    let mut arcs = Vec::new();
    for (u, v) in base.edges() {
        let (i, j) = (u, v - m);
        let g = if i == inf || j == inf { 0 } else { (log[field.sub(j as u32, i as u32) as usize] % d) as usize };
        arcs.push(ArcVoltage { u, v, g });
    }
    Ok(VoltageAssignment::from_arcs(base, FiniteGroup::cyclic(d).expect("positive"), &arcs)?)
}

pub fn kq1_2d(q: u32, d: u32) -> Result<Graph, FamilyError> {
    Ok(kq1_2d_voltages(q, d, None)?.derive_cover().graph)
}

/// `L(p, r)`: the subgroup of order `r` of `Z_p^*`, sorted.
pub fn l_subgroup(p: u32, r: u32) -> Result<Vec<u32>, FamilyError> {
    require(p % 2 == 1 && is_prime(p), || format!("p must be an odd prime, got {p}"))?;
    require(r >= 1 && (p - 1) % r == 0, || format!("r must divide p-1, got p = {p}, r = {r}"))?;
    let field = FieldGF::new(p, 1)?;
    let step = ((p - 1) / r) as i64;
    let mut l: Vec<u32> = (0..r as i64).map(|k| field.theta_pow(k * step)).collect();
    l.sort_unstable();
    Ok(l)
}

/// `G(2p, r)`, or `G(2, p, r)` when `doubled`.
pub fn g2pr(p: u32, r: u32, doubled: bool) -> Result<Graph, FamilyError> {
    let l = l_subgroup(p, r)?;
    require(!doubled || r % 2 == 0, || format!("G(2,p,r) needs r even, got r = {r}"))?;
    let p = p as usize;
    let in_l = |x: usize, y: usize| l.binary_search(&(((y + p - x) % p) as u32)).is_ok();
    let g = Graph::from_fn(2 * p, |u, v| {
        let cross = (u < p) != (v < p);
        (cross || doubled) && in_l(u % p, v % p)
    });
    Ok(labelled(g, primed(p, |i| i.to_string())))
}

/// Voltages of `X_2(3)` on `K_{5,5} - 5K_2`, vertex `i` at index `i-1` and
/// `j'` at `4+j`.
pub fn x2_3_voltages() -> VoltageAssignment {
    const ONE: [(usize, usize); 4] = [(2, 5), (3, 4), (4, 3), (5, 2)];
    const TWO: [(usize, usize); 4] = [(2, 4), (3, 5), (4, 2), (5, 3)];
    let base = labelled(complete_bipartite_minus_matching(5).expect("m = 5"), primed(5, |i| (i + 1).to_string()));
    let arcs: Vec<ArcVoltage> = base
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let key = (u + 1, v - 4);
            let g = if ONE.contains(&key) {
                1
            } else if TWO.contains(&key) {
                2
            } else {
                0
            };
            ArcVoltage { u, v, g }
        })
        .collect();
    VoltageAssignment::from_arcs(base, FiniteGroup::cyclic(3).expect("positive"), &arcs).expect("table covers base edges")
}

pub fn x2_3() -> Graph {
    x2_3_voltages().derive_cover().graph
}

/// `Gamma(d, q)` with the orbits of the scalar subgroup of order `(q-1)/r`.
/// Points come first (vector index order), then blocks.
pub fn gamma_dq_with_orbits(d: usize, q: u32, r: u32) -> Result<(Graph, Vec<Vec<usize>>), FamilyError> {
    require(d >= 2, || format!("Gamma(d,q,r) needs d >= 2, got {d}"))?;
    let field = FieldGF::from_order(q)?;
    require(r >= 1 && (q - 1) % r == 0, || format!("Gamma(d,q,r) needs r dividing q-1, got q = {q}, r = {r}"))?;
    let design = gdd_points_blocks(&field, d);
    let np = design.points.len();
    let nb = design.blocks.len();
    let g = Graph::from_fn(np + nb, |u, v| {
        if (u < np) == (v < np) {
            return false;
        }
        let (p, b) = if u < np { (u, v - np) } else { (v, u - np) };
        design.point_in_block(design.points[p], b)
    });
    let show = |x: u32| vector_from_index(x, q, d).iter().map(u32::to_string).collect::<String>();
    let labels = design
        .points
        .iter()
        .map(|&x| show(x))
        .chain((0..design.blocks.len()).map(|b| format!("B{b}")))
        .collect();
    let g = labelled(g, labels);

    let block_index: HashMap<&[u32], usize> = design.block_points.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let scale = |lambda: u32, x: u32| -> u32 {
        let v: Vec<u32> = vector_from_index(x, q, d).iter().map(|&c| field.mul(lambda, c)).collect();
        crate::geometry::vector_index(&v, q)
    };
    let scalars: Vec<u32> = (0..(q - 1) / r).map(|k| field.theta_pow((k * r) as i64)).collect();
    let mut seen = vec![false; np + nb];
    let mut orbits = Vec::new();
    for start in 0..np + nb {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = scalars
            .iter()
            .map(|&lambda| {
                if start < np {
                    (scale(lambda, design.points[start]) - 1) as usize
                } else {
                    let mut img: Vec<u32> = design.block_points[start - np].iter().map(|&x| scale(lambda, x)).collect();
                    img.sort_unstable();
                    np + block_index[img.as_slice()]
                }
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        orbits.push(orbit);
    }
    Ok((g, orbits))
}

pub fn gamma_dq(d: usize, q: u32) -> Result<Graph, FamilyError> {
    Ok(gamma_dq_with_orbits(d, q, q - 1)?.0)
}

/// `Gamma(d, q, r)`: the quotient of `Gamma(d, q)` by scalars of order
/// `(q-1)/r`.
pub fn gamma_dqr(d: usize, q: u32, r: u32) -> Result<Graph, FamilyError> {
    let (g, orbits) = gamma_dq_with_orbits(d, q, r)?;
    Ok(quotient_by_orbits(&g, &orbits)?)
}

/// Voltages of `X(2,2)` on `K_{4,4}`: `psi(alpha, beta') = alpha . beta`.
pub fn x_22_voltages() -> VoltageAssignment {
    let base = labelled(complete_bipartite(4).expect("m = 4"), primed(4, |a| format!("{}{}", a & 1, a >> 1)));
    let arcs: Vec<ArcVoltage> = base
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (u, v - 4);
            ArcVoltage { u, v, g: ((a & b).count_ones() % 2) as usize }
        })
        .collect();
    VoltageAssignment::from_arcs(base, FiniteGroup::cyclic(2).expect("positive"), &arcs).expect("K_{4,4} edges")
}

pub fn x_22() -> Graph {
    x_22_voltages().derive_cover().graph
}

/// `X'(3,2)`: `i ~ j'` iff `j - i` lies in `{0, 1, 9, 11}` mod 14.
pub fn x_prime_32() -> Graph {
    const D: [usize; 4] = [0, 1, 9, 11];
    let g = Graph::from_fn(28, |u, v| (u < 14) != (v < 14) && {
        let (i, j) = if u < 14 { (u, v - 14) } else { (v, u - 14) };
        D.contains(&((j + 14 - i) % 14))
    });
    labelled(g, primed(14, |i| i.to_string()))
}

/// `B(H(11))`, or `B'(H(11))` from the complementary design.
pub fn incidence_h11(complemented: bool) -> Graph {
    let h = biplane_h11();
    let g = Graph::from_fn(22, |u, v| u < 11 && v >= 11 && h.blocks[v - 11].contains(&(u as u32)) != complemented);
    labelled(g, (0..11).map(|i| i.to_string()).chain((0..11).map(|b| format!("B{b}"))).collect())
}

/// `H(d, r)` on `{0..r-1}^d`.
pub fn hamming(d: u32, r: usize) -> Result<Graph, FamilyError> {
    require(d >= 1 && r >= 2, || format!("H(d,r) needs d >= 1 and r >= 2, got d = {d}, r = {r}"))?;
    let n = r.checked_pow(d).filter(|&n| n <= 1 << 16).ok_or_else(|| FamilyError::Parameter(format!("H({d},{r}) is too large")))?;
    let coords = |mut x: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let c = x % r;
                x /= r;
                c
            })
            .collect()
    };
    let g = Graph::from_fn(n, |u, v| coords(u).iter().zip(coords(v)).filter(|(a, b)| **a != *b).count() == 1);
    Ok(labelled(g, (0..n).map(|x| coords(x).iter().rev().map(usize::to_string).collect()).collect()))
}

// ---------------------------------------------------------------------------
// catalog

/// Properties a catalog graph must have by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub order: usize,
    pub valency: usize,
    pub bipartite: Option<bool>,
    pub girth: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    /// Item number in the classification list.
    pub item: u8,
    pub params: Vec<u32>,
    pub graph: Graph,
    pub expected: Expected,
    /// Whether the parameters meet the item's stated constraints for a
    /// group of order `4n`, `n >= 2`.
    pub conforms: bool,
}

impl CatalogEntry {
    /// Checks the constructed graph against its expected properties.
    pub fn verify(&self) -> Result<(), String> {
        let g = &self.graph;
        let e = &self.expected;
        if g.n() != e.order {
            return Err(format!("{}: order {} != {}", self.name, g.n(), e.order));
        }
        if g.regular_degree() != Some(e.valency) {
            return Err(format!("{}: valency {:?} != {}", self.name, g.regular_degree(), e.valency));
        }
        if let Some(b) = e.bipartite {
            if g.is_bipartite() != b {
                return Err(format!("{}: bipartite = {}", self.name, !b));
            }
        }
        if e.girth.is_some() && g.girth() != e.girth {
            return Err(format!("{}: girth {:?} != {:?}", self.name, g.girth(), e.girth));
        }
        Ok(())
    }
}

fn prime_powers_up_to(max: u32) -> Vec<u32> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

/// Every classification entry whose parameters give exactly `v` vertices.
pub fn catalog_for_order(v: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let four = v % 4 == 0 && v >= 8;
    let mut push = |name: String, item: u8, params: Vec<u32>, graph: Graph, expected: Expected, conforms: bool| {
        out.push(CatalogEntry { name, item, params, graph, expected, conforms });
    };

    // (1) K_{x[y]}, x >= 3, y >= 2
    for y in 2..=v / 3 {
        if v % y == 0 && v / y >= 3 {
            let x = v / y;
            let g = complete_multipartite(x, y).expect("x >= 3");
            push(format!("K_{{{x}[{y}]}}"), 1, vec![x as u32, y as u32], g, Expected { order: v, valency: (x - 1) * y, bipartite: Some(false), girth: Some(3) }, four);
        }
    }
    if v % 2 == 0 && v >= 4 {
        let m = v / 2;
        // (2) K_{2n,2n}
        push(format!("K_{{{m},{m}}}"), 2, vec![m as u32], complete_bipartite(m).expect("m >= 2"), Expected { order: v, valency: m, bipartite: Some(true), girth: Some(4) }, four);
        // (3) K_{2n,2n} - 2nK_2, n >= 3
        if m >= 3 {
            push(
                format!("K_{{{m},{m}}}-{m}K_2"),
                3,
                vec![m as u32],
                complete_bipartite_minus_matching(m).expect("m >= 3"),
                Expected { order: v, valency: m - 1, bipartite: Some(true), girth: Some(if m == 3 { 6 } else { 4 }) },
                four && v >= 12,
            );
        }
    }
    let vmax = v as u32;
    // (4) B(PG(d-1,q)) and B'(PG(d-1,q)) with 2(q^d-1)/(q-1) = v, d >= 3
    if v % 2 == 0 {
        for q in prime_powers_up_to(vmax) {
            let mut d = 3u32;
            loop {
                let points = (q.pow(d) - 1) / (q - 1);
                if 2 * points > vmax {
                    break;
                }
                if 2 * points == vmax {
                    let k = (q.pow(d - 1) - 1) / (q - 1);
                    let geo = d - 1;
                    push(format!("B(PG({geo},{q}))"), 4, vec![d, q], incidence_pg(d as usize, q, false).expect("d >= 3"), Expected { order: v, valency: k as usize, bipartite: Some(true), girth: Some(if d == 3 { 6 } else { 4 }) }, four);
                    push(format!("B'(PG({geo},{q}))"), 4, vec![d, q], incidence_pg(d as usize, q, true).expect("d >= 3"), Expected { order: v, valency: q.pow(d - 1) as usize, bipartite: Some(true), girth: Some(4) }, four);
                }
                d += 1;
            }
        }
    }
    // (5) K_{q+1}^{2d}: 2d(q+1) = v, q odd, d >= 2, d | q-1
    for q in prime_powers_up_to(vmax).into_iter().filter(|q| q % 2 == 1) {
        for d in divisors(q - 1).into_iter().filter(|&d| d >= 2) {
            if 2 * d * (q + 1) == vmax {
                let g = kq1_2d(q, d).expect("valid parameters");
                push(format!("K_{{{}}}^{{{}}}", q + 1, 2 * d), 5, vec![q, d], g, Expected { order: v, valency: q as usize, bipartite: Some(true), girth: None }, four);
            }
        }
    }
    // (6) X_1(4,q): 4(q+1) = v, q = 3 mod 4
    if v % 4 == 0 && v >= 8 {
        let q = vmax / 4 - 1;
        if q % 4 == 3 && prime_power(q).is_some() {
            push(format!("X_1(4,{q})"), 6, vec![q], x1_4q(q).expect("q = 3 mod 4"), Expected { order: v, valency: q as usize, bipartite: None, girth: None }, true);
        }
    }
    // (7) Gamma(d,q,r): 2r(q^d-1)/(q-1) = v, d >= 2, r | q-1
    for q in prime_powers_up_to(vmax) {
        let mut d = 2u32;
        loop {
            let points = (q.pow(d) - 1) / (q - 1);
            if 2 * points > vmax {
                break;
            }
            for r in divisors(q - 1) {
                if 2 * r * points == vmax {
                    let g = gamma_dqr(d as usize, q, r).expect("valid parameters");
                    push(format!("Gamma({d},{q},{r})"), 7, vec![d, q, r], g, Expected { order: v, valency: q.pow(d - 1) as usize, bipartite: Some(true), girth: None }, four);
                }
            }
            d += 1;
        }
    }
    // (8)-(10) sporadic
    if v == 16 {
        push("X(2,2)".into(), 8, vec![], x_22(), Expected { order: 16, valency: 4, bipartite: Some(true), girth: None }, true);
    }
    if v == 28 {
        push("X'(3,2)".into(), 9, vec![], x_prime_32(), Expected { order: 28, valency: 4, bipartite: Some(true), girth: None }, true);
    }
    if v == 30 {
        push("X_2(3)".into(), 10, vec![], x2_3(), Expected { order: 30, valency: 4, bipartite: Some(true), girth: None }, false);
    }
    out
}

/// Every catalog entry with at most `max_order` vertices.
pub fn catalog_up_to(max_order: usize) -> Vec<CatalogEntry> {
    (1..=max_order).flat_map(catalog_for_order).collect()
}

/// Cover of a voltage family together with its base, for round-trip checks.
pub fn voltage_family(name: &str, params: &[u32]) -> Result<(VoltageAssignment, CoverGraph), FamilyError> {
    let psi = match (name, params) {
        ("x1", [q]) => x1_4q_voltages(*q)?,
        ("kq", [q, d]) => kq1_2d_voltages(*q, *d, None)?,
        ("x23", []) => x2_3_voltages(),
        ("x22", []) => x_22_voltages(),
        _ => return Err(FamilyError::Parameter(format!("no voltage family {name} with {} parameters", params.len()))),
    };
    let cover = psi.derive_cover();
    Ok((psi, cover))
}

/// Short family names accepted by [`construct`], with their parameters.
pub const FAMILY_NAMES: &[(&str, &str)] = &[
    ("kxy", "x y"),
    ("kmm", "m"),
    ("kmm-m", "m"),
    ("pg", "d q"),
    ("pg'", "d q"),
    ("gp", "n r"),
    ("x1", "q"),
    ("kq", "q d"),
    ("g2p", "p r"),
    ("g2pr", "p r"),
    ("x23", ""),
    ("gamma", "d q r"),
    ("x22", ""),
    ("x32", ""),
    ("h11", ""),
    ("h11'", ""),
    ("hamming", "d r"),
    ("cycle", "n"),
    ("complete", "n"),
    ("q-cayley", "n s1 s2 ..."),
];

/// Builds a family member from its short name and integer parameters.
pub fn construct(name: &str, params: &[u32]) -> Result<Graph, FamilyError> {
    let us = |x: u32| x as usize;
    let arity = |k: usize| -> Result<(), FamilyError> {
        require(params.len() == k, || format!("{name} takes {k} parameter(s), got {}", params.len()))
    };
    match name {
        "kxy" => arity(2).and_then(|_| complete_multipartite(us(params[0]), us(params[1]))),
        "kmm" => arity(1).and_then(|_| complete_bipartite(us(params[0]))),
        "kmm-m" => arity(1).and_then(|_| complete_bipartite_minus_matching(us(params[0]))),
        "pg" | "pg'" => arity(2).and_then(|_| incidence_pg(us(params[0]), params[1], name == "pg'")),
        "gp" => arity(2).and_then(|_| generalized_petersen(us(params[0]), us(params[1]))),
        "x1" => arity(1).and_then(|_| x1_4q(params[0])),
        "kq" => arity(2).and_then(|_| kq1_2d(params[0], params[1])),
        "g2p" | "g2pr" => arity(2).and_then(|_| g2pr(params[0], params[1], name == "g2pr")),
        "x23" => arity(0).map(|_| x2_3()),
        "gamma" => arity(3).and_then(|_| gamma_dqr(us(params[0]), params[1], params[2])),
        "x22" => arity(0).map(|_| x_22()),
        "x32" => arity(0).map(|_| x_prime_32()),
        "h11" | "h11'" => arity(0).map(|_| incidence_h11(name == "h11'")),
        "hamming" => arity(2).and_then(|_| hamming(params[0], us(params[1]))),
        "cycle" => arity(1).and_then(|_| {
            require(params[0] >= 3, || format!("cycle needs n >= 3, got {}", params[0]))?;
            Ok(crate::graph::small::cycle(us(params[0])))
        }),
        "complete" => arity(1).map(|_| crate::graph::small::complete(us(params[0]))),
        "q-cayley" => {
            require(!params.is_empty(), || "q-cayley needs n followed by element indices".into())?;
            let group = FiniteGroup::quaternion(params[0]).map_err(|e| FamilyError::Parameter(e.to_string()))?;
            let s: Vec<usize> = params[1..].iter().map(|&x| us(x)).collect();
            cayley_graph(&group, &s)
        }
        _ => Err(FamilyError::Parameter(format!("unknown family {name}"))),
    }
}

/// `Q_{4n}` minus `{1, a^n}`: the connection set of `K_{2n[2]}`.
pub fn example_connection_set(n: u32) -> Vec<usize> {
    (1..4 * n as usize).filter(|&x| x != n as usize).collect()
}

/// Whether `S` generates `T`, i.e. the Cayley graph is connected.
pub fn cayley_connected(group: &FiniteGroup, s: &[usize]) -> bool {
    group.generates(s)
}

/// Re-checks a catalog graph's cover structure where one exists.
pub fn gamma_is_cover(d: usize, q: u32, r: u32) -> Result<bool, FamilyError> {
    let (g, orbits) = gamma_dq_with_orbits(d, q, r)?;
    Ok(is_n_cover(&g, &orbits))
}
