//! Torsion submodules, separatedness and the local cohomology comparison.

use fisheaf::modcore::{direct_sum, free_module, simple_at};
use fisheaf::skelcat::CatKind;
use fisheaf::torsion::{h0_local, is_separated, torsion_report, torsion_submodule};

fn main() -> fisheaf::Result<()> {
    let v = direct_sum(&[&free_module(CatKind::Fi, 0, 5)?, &simple_at(&"2".parse()?, 5)?])?;
    let t = torsion_submodule(&v)?;
    println!("V dims {:?}", v.dims);
    println!("torsion dims {:?}, reliable up to degree {}", t.torsion_part.dims, t.reliable_up_to);
    println!("V/τV dims {:?}, separated: {}", t.free_part.dims, is_separated(&t.free_part));
    println!("V separated: {}", is_separated(&v));
    println!("H^0 dims {:?}", h0_local(&v)?.dims);
    println!("{:?}", torsion_report(&v));
    Ok(())
}
