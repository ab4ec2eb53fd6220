//! Rank checks that the orbit sums with |α| ≤ n form a basis of each graded
//! piece of the invariants, and that the product formula agrees with A(n,m).

use multisym::presentation::{certify_basis, certify_product, multidegrees_up_to, Budget};

fn main() -> multisym::Result<()> {
    let budget = Budget::unlimited();
    for (n, m) in [(2, 2), (3, 2)] {
        for a in multidegrees_up_to(m, 4) {
            println!("{}", certify_basis(n, m, &a, &budget)?);
        }
    }
    println!("{}", certify_product(3, 2, &[2, 2], &budget)?);
    Ok(())
}
