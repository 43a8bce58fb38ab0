//! The complete multipartite graph K_{2n[2]} as a Cayley graph on Q_{4n}:
//! 2-distance-transitive but not 2-arc-transitive.
//!
//!     cargo run --example example_k2n2

use dtcayley::families::{cayley_graph, complete_multipartite, example_connection_set};
use dtcayley::group::FiniteGroup;
use dtcayley::symmetry::{analyze, is_isomorphic};

fn main() {
    for n in 2..=4u32 {
        let q = FiniteGroup::quaternion(n).expect("n >= 2");
        let g = cayley_graph(&q, &example_connection_set(n)).expect("inverse-closed");
        let iso = is_isomorphic(&g, &complete_multipartite(2 * n as usize, 2).expect("valid"));
        let report = analyze(&g).expect("connected");
        let antipodes: Vec<usize> = (0..g.n()).map(|u| g.distances().distribution(u).get(2).copied().unwrap_or(0)).collect();
        println!(
            "n = {n}: isomorphic to K_{{{}[2]}}: {}, girth {:?}, diameter {}, |Aut| = {}, |G_2(u)| = {:?}, 2-DT {}, 2-AT {}",
            2 * n,
            iso.is_some(),
            g.girth(),
            report.diameter(),
            report.aut_order,
            antipodes.iter().max(),
            report.s_distance_transitive(2),
            report.two_arc_transitive()
        );
    }
}
