//! The left Ore condition on bounded skeleta of FI and OI, and its failure on the
//! Kronecker quiver.

use fisheaf::skelcat::{left_ore_check, BoundedSkeleton, CatKind, FreeQuiverCategory};

fn main() {
    for kind in [CatKind::Fi, CatKind::Oi] {
        let r = left_ore_check(&BoundedSkeleton { kind, bound: 4 });
        println!("{kind}: {} pairs checked, passed: {}", r.pairs_checked, r.passed());
    }
    let quiver = FreeQuiverCategory::kronecker();
    let r = left_ore_check(&quiver);
    match &r.failure {
        Some((f, g)) => println!("Kronecker: no completion for ({}, {})", quiver.name(f), quiver.name(g)),
        None => println!("Kronecker: passed"),
    }
}
