//! The polynomials P_{h,k} with e_h(x_1^k, x_2^k, ...) = P_{h,k}(e_1, e_2, ...).

use multisym::ringcore::CoeffRing;
use multisym::symfun::{elementary_of_powers, evaluate_symmetric, monomial_coordinates, plethysm_p};

fn main() -> multisym::Result<()> {
    for h in 1..=3 {
        for k in 1..=3 {
            println!("P({h},{k}) = {}", plethysm_p(h, k));
        }
    }
    // One more variable than the table was built with.
    let (h, k) = (3, 3);
    let n_vars = (h * k + 1) as usize;
    let same = evaluate_symmetric(&plethysm_p(h, k), n_vars)
        == monomial_coordinates(&elementary_of_powers(h, k, n_vars, CoeffRing::Integers))?;
    println!("P({h},{k}) holds in {n_vars} variables: {same}");
    Ok(())
}
