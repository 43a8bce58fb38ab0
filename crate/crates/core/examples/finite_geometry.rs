//! Finite fields and the geometries built from them: projective incidence
//! graphs and the design of non-zero vectors against affine hyperplanes.
//!
//!     cargo run --example finite_geometry -- 4

use dtcayley::families::{gamma_dq_with_orbits, incidence_pg};
use dtcayley::field::FieldGF;
use dtcayley::geometry::{enumerate_subspaces, gaussian_binomial};
use dtcayley::voltage::is_n_cover;

fn main() {
    let q: u32 = std::env::args().nth(1).map_or(4, |a| a.parse().expect("q must be an integer"));
    let field = FieldGF::from_order(q).expect("q must be a prime power");
    println!("GF({q}): characteristic {}, modulus {:?}, primitive element {}", field.characteristic(), field.modulus(), field.primitive_element());
    let powers: Vec<u32> = (0..q as i64 - 1).map(|h| field.theta_pow(h)).collect();
    println!("powers of the primitive element: {powers:?}");

    for d in 3..=4 {
        let lines = enumerate_subspaces(&field, d, 2);
        assert_eq!(lines.len() as u64, gaussian_binomial(d as u32, 2, q as u64));
        let b = incidence_pg(d, q, false).expect("d >= 3");
        println!("PG({},{q}): {} lines; B has {} vertices, valency {:?}, girth {:?}", d - 1, lines.len(), b.n(), b.regular_degree(), b.girth());
    }

    for r in dtcayley::field::divisors(q - 1) {
        let (g, orbits) = gamma_dq_with_orbits(2, q, r).expect("valid parameters");
        println!("Gamma(2,{q}) over scalars of order {}: {} vertices, {} orbits, covering: {}", (q - 1) / r, g.n(), orbits.len(), is_n_cover(&g, &orbits));
    }
}
