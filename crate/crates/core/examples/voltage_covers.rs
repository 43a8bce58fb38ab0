//! Regular covers from voltage assignments, and the round trip back to the
//! base graph through the fibre quotient.
//!
//!     cargo run --example voltage_covers

use dtcayley::families::voltage_family;
use dtcayley::symmetry::{analyze, is_isomorphic};
use dtcayley::voltage::{is_n_cover, quotient_by_orbits};

fn main() {
    let families: [(&str, &str, &[u32]); 6] = [
        ("X_1(4,3)", "x1", &[3]),
        ("X_1(4,7)", "x1", &[7]),
        ("K_6^4", "kq", &[5, 2]),
        ("K_6^8", "kq", &[5, 4]),
        ("X_2(3)", "x23", &[]),
        ("X(2,2)", "x22", &[]),
    ];
    for (name, key, params) in families {
        let (psi, cover) = voltage_family(key, params).expect("valid parameters");
        let fibers = cover.fibers();
        let back = quotient_by_orbits(&cover.graph, &fibers).expect("fibres partition the cover");
        let report = analyze(&cover.graph).expect("connected");
        println!(
            "{name}: base {} vertices over {}, cover {} vertices; covering {}, quotient = base {}, 2-DT {}",
            psi.base().n(),
            psi.group().kind(),
            cover.graph.n(),
            is_n_cover(&cover.graph, &fibers),
            is_isomorphic(&back, psi.base()).is_some(),
            report.s_distance_transitive(2)
        );
    }
}
