//! Builds every catalog graph up to a given order and checks that it is
//! 2-distance-transitive.
//!
//!     cargo run --release --example catalog_tour -- 64

use std::time::Instant;

use dtcayley::families::catalog_up_to;
use dtcayley::symmetry::analyze;

fn main() {
    let max: usize = std::env::args().nth(1).map_or(32, |a| a.parse().expect("order bound"));
    for entry in catalog_up_to(max) {
        let start = Instant::now();
        entry.verify().expect("constructed graph has its expected parameters");
        let report = analyze(&entry.graph);
        let status = match &report {
            Ok(r) if entry.graph.is_complete() => format!("complete, |Aut| = {}", r.aut_order),
            Ok(r) => format!(
                "2-DT {:5}  2-AT {:5}  diam {}  girth {:?}  |Aut| = {}",
                r.s_distance_transitive(2),
                r.two_arc_transitive(),
                r.diameter(),
                entry.graph.girth(),
                r.aut_order
            ),
            Err(e) => format!("not analysable: {e}"),
        };
        let flag = if entry.conforms { "" } else { "  [order/constraint flag]" };
        println!("{:>3}  ({:>2}) {:<22} {status}  {:.1?}{flag}", entry.graph.n(), entry.item, entry.name, start.elapsed());
    }
}
