//! Structure of the generalized quaternion group Q_{4n}: the unique
//! involution, the centre, the normal subgroups and the quotient by <a^n>.
//!
//!     cargo run --example quaternion_group -- 6

use dtcayley::group::FiniteGroup;

fn main() {
    let n: u32 = std::env::args().nth(1).map_or(4, |a| a.parse().expect("n must be an integer"));
    let q = FiniteGroup::quaternion(n).expect("n >= 2");
    println!("{} has order {}", q.kind(), q.order());

    let involutions: Vec<String> = q.elements().filter(|&x| q.element_order(x) == 2).map(|x| q.element_name(x)).collect();
    println!("involutions: {involutions:?}");

    let centre = q.center();
    println!("centre: {:?}", centre.elements.iter().map(|&x| q.element_name(x)).collect::<Vec<_>>());
    let quotient = q.quotient(&centre).expect("the centre is normal");
    println!("Q_{}/<a^{n}> is {:?}", 4 * n, quotient.identify());

    println!("normal subgroups:");
    for h in q.normal_subgroups() {
        let gens: Vec<String> = h.generators.iter().map(|&x| q.element_name(x)).collect();
        println!("  order {:>3}  generated by {:?}", h.order(), gens);
    }
    println!("|Aut(Q_{})| = {}", 4 * n, q.automorphisms().len());
}
