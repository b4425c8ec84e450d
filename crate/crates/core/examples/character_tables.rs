//! Character tables of small symmetric groups and the isotypic decomposition of a
//! permutation representation.

use fisheaf::combinat::hook_dimension;
use fisheaf::symrep::{character_table, decompose_by_character, natural_representation};

fn main() -> fisheaf::Result<()> {
    let table = character_table(4)?;
    let header: Vec<String> = table.classes.iter().map(|c| c.parts.to_string()).collect();
    println!("S_4 classes: {}", header.join("  "));
    for (shape, row) in table.shapes.iter().zip(&table.values) {
        println!("{shape:>10} (dim {}): {row:?}", hook_dimension(shape));
    }

    // The natural permutation representation of S_5 is trivial plus standard.
    let gens = natural_representation(5);
    for (lambda, mult) in decompose_by_character(5, &gens, 5)? {
        println!("C^5 contains {lambda} with multiplicity {mult}");
    }
    Ok(())
}
