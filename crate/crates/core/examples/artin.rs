//! Finite-support vectors, invariants under open stabilizers, and the module φ(X).

use fisheaf::artin::{build_f, build_s_lambda, invariants_f, phi_module};
use fisheaf::modcore::{find_isomorphism, free_module};
use fisheaf::skelcat::CatKind;

fn main() -> fisheaf::Result<()> {
    for i in 0..=4 {
        let dims: Vec<usize> = (i.max(1) + 1..=6).map(|m| invariants_f(1, i, m).map(|s| s.dim())).collect::<Result<_, _>>()?;
        println!("dim F(1)^(U_{i}) at horizons up to 6: {dims:?}");
    }

    let phi = phi_module(&build_f(2), 4, 6)?;
    let p2 = free_module(CatKind::Fi, 2, 4)?;
    println!("φ(F(2)) dims {:?}, isomorphic to P(2): {}", phi.dims, find_isomorphism(&phi, &p2)?.is_some());

    let s = build_s_lambda(&"1".parse()?, 6)?;
    println!("S((1)) generator: {}", s.generator.to_json());
    println!("φ(S((1))) dims {:?}", phi_module(&s, 4, 6)?.dims);
    Ok(())
}
