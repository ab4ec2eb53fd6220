//! Writes orbit-basis elements as polynomials in the generators e[i;μ] and
//! checks each rewrite by evaluating it in A(n,m).

use multisym::concrete::orbit_sum;
use multisym::presentation::{eval_generator_poly, rewrite_to_generators};
use multisym::ringcore::parse::parse_orbit_index;
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    let m = 2;
    for text in ["E{y1:2, y2:1}", "E{y1^2:1}", "E{y1*y2:2}", "E{y1:1, y2:1, y1*y2:1}", "E{y1^2*y2^2:2}"] {
        let alpha = parse_orbit_index(text, m)?;
        let g = rewrite_to_generators(&alpha);
        let n = alpha.size() as usize + 1;
        let ok = eval_generator_poly(&g, n, m) == orbit_sum(&alpha, n, CoeffRing::Integers);
        println!("{alpha}\n  = {g}\n  checked in A({n},{m}): {}", if ok { "ok" } else { "MISMATCH" });
    }
    Ok(())
}
