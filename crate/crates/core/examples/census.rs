//! Runs the Cayley census over Q_{4n} and prints the 2-distance-transitive
//! hits.
//!
//!     cargo run --release --example census -- 2 3 4

use std::time::Instant;

use dtcayley::census::{run_census, CensusConfig, Dedup};

fn main() {
    let n_values: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("n must be an integer")).collect();
    let n_values = if n_values.is_empty() { vec![2, 3, 4] } else { n_values };
    for n in n_values {
        let start = Instant::now();
        let config = CensusConfig { n_values: vec![n], dedup: Dedup::Aut, ..Default::default() };
        let report = run_census(&config).expect("valid config");
        println!("n = {n}: {} connected sets up to Aut(Q_{}), {:.2?}", report.summary.connected, 4 * n, start.elapsed());
        for row in report.rows.iter().filter(|r| r.is_2dt()) {
            let inv = row.invariants.as_ref().expect("connected");
            println!("  S = {:?}  girth {:?}  diam {}  |Aut| {}  2-AT {}  -> {}", row.set, inv.girth, inv.diameter, inv.aut_order, inv.is2at, row.matched);
        }
        if !report.summary.clean() {
            println!("  {} UNMATCHED, {} errors", report.summary.unmatched, report.summary.errors);
        }
    }
}
