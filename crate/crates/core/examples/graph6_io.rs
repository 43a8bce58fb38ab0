//! Reading and writing graph6, sparse6 and JSON.
//!
//!     cargo run --example graph6_io -- "IheA@GUAo"

use dtcayley::families::x_prime_32;
use dtcayley::graph::Graph;
use dtcayley::graph6::{decode, to_graph6, to_sparse6};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| to_graph6(&x_prime_32()));
    let g = match decode(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("cannot parse {text:?}: {e}");
            std::process::exit(2);
        }
    };
    println!("{} vertices, {} edges, degree {:?}", g.n(), g.edge_count(), g.regular_degree());
    println!("graph6:  {}", to_graph6(&g));
    println!("sparse6: {}", to_sparse6(&g));
    let json = serde_json::to_string(&g.to_json()).expect("serializable");
    println!("json:    {json}");
    let back = Graph::from_json(&serde_json::from_str(&json).expect("valid JSON")).expect("valid graph");
    assert_eq!(back, g);
}
