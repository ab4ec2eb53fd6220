//! The limit ring is a polynomial ring on the e[i;μ]: the counts agree in
//! every multidegree and the generator monomials map to independent elements.

use multisym::orbitring::enumerate_basis;
use multisym::presentation::{certify_freeness, generator_monomials, multidegrees_up_to, Budget};

fn main() -> multisym::Result<()> {
    for m in 1..=2 {
        for a in multidegrees_up_to(m, 4) {
            println!(
                "a={a:?}: {} monomials, {} basis elements",
                generator_monomials(&a).len(),
                enumerate_basis(&a, None).len()
            );
        }
    }
    println!("{}", certify_freeness(3, &[2, 1, 1], &Budget::unlimited())?);
    Ok(())
}
