//! The OI-modules K_n cut out of P(n) by coface differences, compared with the
//! simple sheaves and with the quotient P(n)/K_n.

use fisheaf::oimod::{euler_check, kn_cross_check};

fn main() -> fisheaf::Result<()> {
    for n in 0..=2 {
        let r = kn_cross_check(n, 6)?;
        println!("K_{n} dims {:?}, isomorphic to ν⁻¹S_{n}: {}", r.kn_dims, r.isomorphic);
    }
    for n in 1..=3 {
        let e = euler_check(n, n + 4)?;
        let factors: Vec<String> = e.factors.iter().map(|f| format!("{}xK_{}", f.mult, f.degree)).collect();
        println!("P({n})/K_{n} dims {:?}, factors {}", e.quotient_dims, factors.join(" + "));
    }
    Ok(())
}
