//! Automorphism groups, canonical forms and isomorphism certificates.
//!
//!     cargo run --example automorphisms

use dtcayley::families::{construct, x1_4q};
use dtcayley::symmetry::{automorphism_group, canonical_form, certificate, is_isomorphic, PermutationGroup};

fn main() {
    let g = x1_4q(3).expect("q = 3");
    let aut = automorphism_group(&g);
    println!("X_1(4,3): |Aut| = {}, base {:?}, orbit lengths {:?}", aut.order(), aut.base(), aut.orbit_lengths());
    for p in aut.generators() {
        assert!(p.is_automorphism_of(&g));
    }
    // the stabiliser chain built from the generators alone agrees
    let rebuilt = PermutationGroup::from_generators(g.n(), aut.generators().to_vec()).expect("same degree");
    println!("Schreier-Sims order from {} generators: {}", aut.generators().len(), rebuilt.order());

    let gp = construct("gp", &[8, 3]).expect("valid");
    let witness = is_isomorphic(&g, &gp).expect("X_1(4,3) is GP(8,3)");
    println!("isomorphism X_1(4,3) -> GP(8,3): {:?}", witness.images());
    assert_eq!(canonical_form(&g).form, canonical_form(&gp).form);

    let cert = certificate(&g, &aut);
    println!("{}", serde_json::to_string_pretty(&cert).expect("serializable"));
}
