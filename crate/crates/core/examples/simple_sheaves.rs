//! Simple saturated FI-modules: each nonzero degree is the padded irreducible.

use fisheaf::combinat::pad_uniform;
use fisheaf::modcore::decompose_degree;
use fisheaf::nakayama::{is_saturated, simple_saturated};

fn main() -> fisheaf::Result<()> {
    for shape in ["0", "1", "2", "1,1"] {
        let lambda = shape.parse()?;
        let l = simple_saturated(&lambda, 7)?;
        println!("L({lambda}) dims {:?}, saturated: {}", l.dims, is_saturated(&l)?);
        for n in 0..=l.window {
            let dec = decompose_degree(&l, n)?;
            if let Some(mu) = pad_uniform(&lambda, n) {
                assert_eq!(dec.get(&mu), Some(&1));
                println!("  degree {n}: {mu}");
            }
        }
    }
    Ok(())
}
