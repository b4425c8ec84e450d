//! Sheafify a module with torsion and read off the unit, its defect and the
//! composition factors of the result.

use fisheaf::combinat::Partition;
use fisheaf::modcore::{direct_sum, free_module, simple_at};
use fisheaf::nakayama::sheaf_report;
use fisheaf::skelcat::CatKind;

fn main() -> fisheaf::Result<()> {
    let p1 = free_module(CatKind::Fi, 1, 6)?;
    let torsion = simple_at(&"1,1".parse::<Partition>()?, 6)?;
    let v = direct_sum(&[&p1, &torsion])?;
    println!("V = P(1) + S((1,1)), dims {:?}", v.dims);

    let (sheaf, report) = sheaf_report(&v)?;
    println!("sheafification dims {:?}", sheaf.module.dims);
    println!("unit kernel ranks {:?}", sheaf.unit.kernel()?.0.dims);
    println!("unit is an isomorphism: {}", report.unit_iso);
    println!("saturation defect dims {:?}", report.defect_dims);
    for f in &report.factors {
        println!("factor {:?} in degree {} with multiplicity {}", f.lambda, f.degree, f.mult);
    }
    Ok(())
}
