//! Exhaustive census of Cayley graphs over `Q_{4n}`.
//!
//! Connection sets are unions of inverse-closed blocks: the involution
//! `{a^n}`, the pairs `{a^k, a^-k}` for `0 < k < n`, and the pairs
//! `{a^k b, a^{k+n} b}` for `0 <= k < n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::families::{catalog_for_order, cayley_graph, CatalogEntry};
use crate::group::FiniteGroup;
use crate::symmetry::{analyze_with, canonical_form, CanonicalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dedup {
    #[default]
    None,
    /// One representative per orbit of `Aut(Q_{4n})` on connection sets.
    Aut,
    /// One representative per isomorphism class of Cayley graph.
    Iso,
}

impl FromStr for Dedup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Dedup::None),
            "aut" => Ok(Dedup::Aut),
            "iso" => Ok(Dedup::Iso),
            _ => Err(format!("unknown dedup mode {s:?} (expected none, aut or iso)")),
        }
    }
}

impl fmt::Display for Dedup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dedup::None => "none",
            Dedup::Aut => "aut",
            Dedup::Iso => "iso",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub n_values: Vec<u32>,
    pub min_set_size: usize,
    pub max_set_size: Option<usize>,
    pub dedup: Dedup,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    pub include_disconnected: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { n_values: vec![2], min_set_size: 4, max_set_size: None, dedup: Dedup::None, workers: 0, include_disconnected: false }
    }
}

/// Three-valued 2-distance-transitivity: complete graphs are outside the
/// predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Na,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Na => "NA",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub girth: Option<usize>,
    pub diameter: usize,
    pub aut_order: String,
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
    pub is2dt: Verdict,
    pub is2at: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: u32,
    pub set: Vec<usize>,
    pub connected: bool,
    /// `None` for disconnected graphs and for candidates whose analysis failed.
    pub invariants: Option<Invariants>,
    /// Catalog names (aliases joined by `=`), `UNMATCHED` for a 2-DT graph
    /// outside the catalog, `-` otherwise, or `ERROR: ...`.
    pub matched: String,
}

impl CensusRow {
    pub fn is_2dt(&self) -> bool {
        self.invariants.as_ref().is_some_and(|i| i.is2dt == Verdict::True)
    }

    pub fn is_unmatched(&self) -> bool {
        self.matched == UNMATCHED
    }

    pub fn is_error(&self) -> bool {
        self.matched.starts_with("ERROR")
    }

    /// 2-DT must imply arc- and vertex-transitivity.
    pub fn chain_holds(&self) -> bool {
        match &self.invariants {
            Some(i) if i.is2dt == Verdict::True => self.connected && i.vertex_transitive && i.arc_transitive,
            _ => true,
        }
    }
}

pub const UNMATCHED: &str = "UNMATCHED";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub candidates: usize,
    pub connected: usize,
    pub two_dt: usize,
    pub unmatched: usize,
    pub errors: usize,
    pub chain_violations: usize,
    /// Distinct catalog names hit by 2-DT rows, per `n`.
    pub hits: Vec<(u32, Vec<String>)>,
}

impl CensusSummary {
    /// No UNMATCHED rows, errors or implication failures.
    pub fn clean(&self) -> bool {
        self.unmatched == 0 && self.errors == 0 && self.chain_violations == 0
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    pub summary: CensusSummary,
}

/// The `2n` inverse-closed blocks of `Q_{4n} \ {1}`, in element-index order.
pub fn blocks(n: u32) -> Vec<Vec<usize>> {
    let n = n as usize;
    let m = 2 * n;
    let mut out = vec![vec![n]];
    out.extend((1..n).map(|k| vec![k, m - k]));
    out.extend((0..n).map(|k| vec![m + k, m + k + n]));
    out
}

/// All inverse-closed identity-free subsets of `Q_{4n}` with size in
/// `[min, max]`, sorted, as sorted element-index lists.
pub fn enumerate_connection_sets(n: u32, min: usize, max: Option<usize>) -> Vec<Vec<usize>> {
    let blocks = blocks(n);
    let max = max.unwrap_or(usize::MAX);
    let mut out: Vec<Vec<usize>> = (0u64..1 << blocks.len())
        .filter_map(|mask| {
            let mut s: Vec<usize> = (0..blocks.len()).filter(|&i| mask >> i & 1 == 1).flat_map(|i| blocks[i].iter().copied()).collect();
            s.sort_unstable();
            (min..=max).contains(&s.len()).then_some(s)
        })
        .collect();
    out.sort();
    out
}

/// Lexicographically least image of `set` under the given automorphisms.
pub fn orbit_representative(set: &[usize], automorphisms: &[Vec<usize>]) -> Vec<usize> {
    automorphisms
        .iter()
        .map(|alpha| {
            let mut img: Vec<usize> = set.iter().map(|&x| alpha[x]).collect();
            img.sort_unstable();
            img
        })
        .min()
        .unwrap_or_else(|| set.to_vec())
}

/// Catalog entries at one order, indexed by canonical form.
pub struct CatalogIndex {
    names: HashMap<CanonicalForm, String>,
}

impl CatalogIndex {
    pub fn new(entries: &[CatalogEntry]) -> Self {
        let mut names: HashMap<CanonicalForm, Vec<String>> = HashMap::new();
        for e in entries {
            names.entry(canonical_form(&e.graph).form).or_default().push(e.name.clone());
        }
        CatalogIndex { names: names.into_iter().map(|(k, v)| (k, v.join("="))).collect() }
    }

    pub fn for_order(v: usize) -> Self {
        Self::new(&catalog_for_order(v))
    }

    pub fn lookup(&self, form: &CanonicalForm) -> Option<&str> {
        self.names.get(form).map(String::as_str)
    }
}

fn analyze_candidate(group: &FiniteGroup, set: &[usize], catalog: &CatalogIndex) -> (Invariants, String, CanonicalForm) {
    let g = cayley_graph(group, set).expect("blocks are inverse-closed and omit the identity");
    let canon = canonical_form(&g);
    let report = analyze_with(&g, &canon.group).expect("caller checked connectivity");
    let complete = g.is_complete();
    let is2dt = if complete {
        Verdict::Na
    } else if report.s_distance_transitive(2) {
        Verdict::True
    } else {
        Verdict::False
    };
    let inv = Invariants {
        girth: g.girth(),
        diameter: report.diameter(),
        aut_order: report.aut_order.to_string(),
        vertex_transitive: report.vertex_transitive(),
        arc_transitive: report.arc_transitive(),
        is2dt,
        is2at: report.two_arc_transitive(),
    };
    let matched = match (catalog.lookup(&canon.form), is2dt) {
        (Some(name), _) => name.to_string(),
        (None, Verdict::True) => UNMATCHED.to_string(),
        (None, _) => "-".to_string(),
    };
    (inv, matched, canon.form)
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| e.downcast_ref::<String>().cloned()).unwrap_or_else(|| "panic".into())
}

fn census_for_n(n: u32, config: &CensusConfig) -> Vec<CensusRow> {
    let group = FiniteGroup::quaternion(n).expect("n >= 2 checked by caller");
    let mut sets = enumerate_connection_sets(n, config.min_set_size, config.max_set_size);
    if config.dedup != Dedup::None {
        let auts = group.automorphisms();
        let reps: BTreeSet<Vec<usize>> = sets.iter().map(|s| orbit_representative(s, &auts)).collect();
        sets = reps.into_iter().collect();
    }
    let catalog = CatalogIndex::for_order(4 * n as usize);
    let results: Vec<(CensusRow, Option<CanonicalForm>)> = sets
        .into_par_iter()
        .filter_map(|set| {
            let connected = group.generates(&set);
            if !connected {
                return config.include_disconnected.then(|| (CensusRow { n, set, connected, invariants: None, matched: "-".into() }, None));
            }
            let row = match catch_unwind(AssertUnwindSafe(|| analyze_candidate(&group, &set, &catalog))) {
                Ok((inv, matched, form)) => (CensusRow { n, set, connected, invariants: Some(inv), matched }, Some(form)),
                Err(e) => (CensusRow { n, set, connected, invariants: None, matched: format!("ERROR: {}", panic_message(e)) }, None),
            };
            Some(row)
        })
        .collect();
    // par_iter over a Vec preserves order, so rows are already sorted by set
    if config.dedup == Dedup::Iso {
        let mut seen = BTreeSet::new();
        results.into_iter().filter(|(_, form)| form.as_ref().is_none_or(|f| seen.insert(f.clone()))).map(|(r, _)| r).collect()
    } else {
        results.into_iter().map(|(r, _)| r).collect()
    }
}

/// Runs the census for every configured `n`. Rows are sorted by `n`, then by
/// connection set, independent of the worker count.
pub fn run_census(config: &CensusConfig) -> Result<CensusReport, String> {
    if let Some(&n) = config.n_values.iter().find(|&&n| n < 2) {
        return Err(format!("census needs n >= 2, got {n}"));
    }
    if config.n_values.iter().any(|&n| n > 16) {
        return Err("census supports n <= 16".into());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build().map_err(|e| e.to_string())?;
    let mut ns = config.n_values.clone();
    ns.sort_unstable();
    ns.dedup();
    let rows: Vec<CensusRow> = pool.install(|| ns.iter().flat_map(|&n| census_for_n(n, config)).collect());
    let summary = summarize(&rows);
    Ok(CensusReport { rows, summary })
}

pub fn summarize(rows: &[CensusRow]) -> CensusSummary {
    let mut s = CensusSummary { candidates: rows.len(), ..Default::default() };
    let mut hits: Vec<(u32, BTreeSet<String>)> = Vec::new();
    for r in rows {
        s.connected += usize::from(r.connected);
        s.unmatched += usize::from(r.is_unmatched());
        s.errors += usize::from(r.is_error());
        s.chain_violations += usize::from(!r.chain_holds());
        if r.is_2dt() {
            s.two_dt += 1;
            if hits.last().is_none_or(|(n, _)| *n != r.n) {
                hits.push((r.n, BTreeSet::new()));
            }
            hits.last_mut().expect("pushed").1.insert(r.matched.clone());
        }
    }
    s.hits = hits.into_iter().map(|(n, h)| (n, h.into_iter().collect())).collect();
    s
}

pub const CSV_HEADER: [&str; 10] = ["n", "setsize", "set", "connected", "girth", "diameter", "autorder", "is2dt", "is2at", "match"];

pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let set = r.set.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let dash = || "-".to_string();
        let (girth, diam, aut, dt, at) = match &r.invariants {
            Some(i) => (
                i.girth.map_or_else(|| "inf".into(), |g| g.to_string()),
                i.diameter.to_string(),
                i.aut_order.clone(),
                i.is2dt.to_string(),
                i.is2at.to_string(),
            ),
            None => (dash(), dash(), dash(), dash(), dash()),
        };
        w.write_record([r.n.to_string(), r.set.len().to_string(), set, r.connected.to_string(), girth, diam, aut, dt, at, r.matched.clone()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[CensusRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_structure() {
        assert_eq!(blocks(2), vec![vec![2], vec![1, 3], vec![4, 6], vec![5, 7]]);
        let q = FiniteGroup::quaternion(5).unwrap();
        for b in blocks(5) {
            assert!(b.iter().all(|&x| x != 0 && b.contains(&q.inv(x))));
        }
        assert_eq!(blocks(5).iter().map(Vec::len).sum::<usize>(), 19);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_connection_sets(2, 0, None).len(), 16);
        let sets = enumerate_connection_sets(2, 4, None);
        assert!(sets.iter().all(|s| s.len() >= 4 && !s.contains(&0)));
        let q = FiniteGroup::quaternion(3).unwrap();
        for s in enumerate_connection_sets(3, 3, Some(3)) {
            assert!(!q.generates(&s), "{s:?}");
        }
    }

    #[test]
    fn n2_census() {
        let report = run_census(&CensusConfig::default()).unwrap();
        let k42 = report.rows.iter().find(|r| r.set == vec![1, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(k42.matched, "K_{4[2]}");
        assert!(k42.is_2dt() && !k42.invariants.as_ref().unwrap().is2at);
        let k44 = report.rows.iter().find(|r| r.set == vec![4, 5, 6, 7]).unwrap();
        assert_eq!(k44.matched, "K_{4,4}");
        assert!(k44.is_2dt());
        let complete = report.rows.iter().find(|r| r.set.len() == 7).unwrap();
        assert_eq!(complete.invariants.as_ref().unwrap().is2dt, Verdict::Na);
        assert!(report.summary.clean());
    }

    #[test]
    fn dedup_keeps_hit_classes() {
        let hits = |d| {
            let cfg = CensusConfig { n_values: vec![3], dedup: d, ..Default::default() };
            run_census(&cfg).unwrap().summary.hits
        };
        assert_eq!(hits(Dedup::None), hits(Dedup::Aut));
        assert_eq!(hits(Dedup::None), hits(Dedup::Iso));
    }

    #[test]
    fn csv_is_deterministic() {
        let cfg = CensusConfig { n_values: vec![2, 3], workers: 3, include_disconnected: true, ..Default::default() };
        let a = to_csv_string(&run_census(&cfg).unwrap().rows);
        let b = to_csv_string(&run_census(&CensusConfig { workers: 1, ..cfg }).unwrap().rows);
        assert_eq!(a, b);
        assert!(a.starts_with("n,setsize,set,connected,girth,diameter,autorder,is2dt,is2at,match\n"));
    }
}
