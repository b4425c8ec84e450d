//! The shift functor, and the decomposition of a shifted free module.

use fisheaf::modcore::{decompose_degree, free_module, shift};
use fisheaf::skelcat::CatKind;

fn main() -> fisheaf::Result<()> {
    let p = free_module(CatKind::Fi, 1, 6)?;
    let s = shift(&p)?;
    println!("P(1) dims {:?}", p.dims);
    println!("shifted dims {:?} (window {})", s.dims, s.window);
    for n in 0..=s.window {
        let parts: Vec<String> = decompose_degree(&s, n)?.iter().map(|(l, m)| format!("{m}x{l}")).collect();
        println!("  degree {n}: {}", parts.join(" + "));
    }
    Ok(())
}
