//! Expands an orbit-basis element into the concrete ring A(n,m), both by
//! enumerating the orbit and through the generating function.

use multisym::concrete::{elementary_tuple, orbit_sum};
use multisym::ringcore::parse::{parse_orbit_index, parse_polynomial};
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    let z = CoeffRing::Integers;
    let alpha = parse_orbit_index("E{y1:2, y2:1}", 2)?;
    for n in 2..=4 {
        let p = orbit_sum(&alpha, n, z);
        println!("n={n}: {} terms", p.len());
        println!("  {p}");
    }

    // e_(2,1)(f, g) with f = y1 + y2, g = y1*y2 is no longer a single orbit.
    let f = parse_polynomial("y1 + y2", 2, z)?;
    let g = parse_polynomial("y1*y2", 2, z)?;
    let p = elementary_tuple(&[f, g], &[2, 1], 3)?;
    println!("e_(2,1)(y1+y2, y1*y2) at n=3 in the orbit basis: {}", p.to_orbit_basis()?);
    Ok(())
}
