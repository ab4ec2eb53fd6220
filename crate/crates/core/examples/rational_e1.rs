//! Over Q the power sums e1[μ] = Σ_j μ(j) already generate.

use multisym::concrete::orbit_sum;
use multisym::presentation::{certify_rational, eval_e1_poly, rational_rewrite_to_e1, Budget};
use multisym::ringcore::parse::parse_orbit_index;
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    let q = CoeffRing::Rationals;
    for text in ["E{y1:2}", "E{y1:3}", "E{y1:1, y2:1}", "E{y1:2, y2:1}"] {
        let alpha = parse_orbit_index(text, 2)?;
        let g = rational_rewrite_to_e1(&alpha, q)?;
        let ok = eval_e1_poly(&g, 3, 2) == orbit_sum(&alpha, 3, q);
        println!("{alpha} = {g}   [{}]", if ok { "ok at n=3" } else { "MISMATCH" });
    }
    match rational_rewrite_to_e1(&parse_orbit_index("E{y1:2}", 1)?, CoeffRing::Integers) {
        Err(e) => println!("over Z: {e}"),
        Ok(g) => println!("over Z: {g}"),
    }
    println!("{}", certify_rational(2, 2, &[2, 2], &Budget::unlimited())?);
    Ok(())
}
