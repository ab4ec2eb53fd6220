//! Generators and relations: the rewrites of e_α with |α| > n span the kernel
//! of C(m) -> A(n,m)^{S_n} in every multidegree, over several fields.

use multisym::presentation::{certify_presentation, certify_relation_span, multidegrees_up_to, Budget};
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    let budget = Budget::unlimited();
    for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(2)] {
        for a in multidegrees_up_to(2, 4) {
            println!("{}", certify_presentation(2, 2, &a, ring, ring == CoeffRing::Rationals, &budget)?);
        }
    }
    println!("{}", certify_relation_span(2, 2, &[3, 2], 4, &budget)?);
    Ok(())
}
