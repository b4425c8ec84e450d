//! The Nakayama functor on a finite-dimensional module, its inverse, and the
//! counit comparison.

use fisheaf::modcore::simple_at;
use fisheaf::nakayama::{inverse_nakayama, nakayama_nu, nu_inverse_counit, presentation_degree};

fn main() -> fisheaf::Result<()> {
    let w = simple_at(&"1".parse()?, 6)?;
    println!("W = S((1)), dims {:?}", w.dims);

    let up = inverse_nakayama(&w, 6)?;
    println!("ν⁻¹W dims {:?}", up.dims);
    let pb = presentation_degree(&up)?;
    println!("generated in degree {}, related in degree {}", pb.gen_degree, pb.rel_degree);

    let back = nakayama_nu(&up)?;
    println!("νν⁻¹W dims {:?}", back.dims);
    let counit = nu_inverse_counit(&w, 6)?;
    println!(
        "counit lands in Hom: {}, bijective: {}, natural: {}",
        counit.lands_in_hom, counit.bijective, counit.natural
    );
    Ok(())
}
