//! Which generalized Petersen graphs GP(n, r) are arc-transitive?
//!
//!     cargo run --release --example gp_sweep -- 24

use dtcayley::families::generalized_petersen;
use dtcayley::symmetry::analyze;

fn main() {
    let max: usize = std::env::args().nth(1).map_or(24, |a| a.parse().expect("bound"));
    for n in 3..=max {
        for r in (1..).take_while(|r| 2 * r < n) {
            let g = generalized_petersen(n, r).expect("r < n/2");
            let Ok(report) = analyze(&g) else { continue };
            if report.arc_transitive() {
                println!("GP({n},{r}): |Aut| = {}, girth {:?}, 2-DT {}", report.aut_order, g.girth(), report.s_distance_transitive(2));
            }
        }
    }
}
