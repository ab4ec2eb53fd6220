//! Products in the limit ring and their images in A(n,m).

use multisym::orbitring::MultiSymElement;
use multisym::ringcore::parse::parse_multisym;
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    let z = CoeffRing::Integers;
    let x = parse_multisym("E{y1:1, y2:1}", 3, z)?;
    let y = parse_multisym("E{y3:2}", 3, z)?;
    let product = x.multiply(&y)?;
    println!("({x}) * ({y}) =");
    for (alpha, c) in product.terms().iter().rev() {
        println!("  {c:>3} * {alpha}   |α| = {}", alpha.size());
    }
    for n in [2, 3, 4] {
        println!("in A({n},3): {}", product.project_n(n));
    }

    let e1 = MultiSymElement::basis(multisym::ringcore::parse::parse_orbit_index("E{y1:1}", 1)?, z);
    let mut power = MultiSymElement::one(1, z);
    for k in 1..=4 {
        power = power.multiply(&e1)?;
        println!("e_1(y1)^{k} = {power}");
    }
    Ok(())
}
