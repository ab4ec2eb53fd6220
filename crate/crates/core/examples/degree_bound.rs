//! Spanning by generators of bounded degree, and the least degree that works.

use multisym::presentation::{certify_generation_bound, generation_bound, Budget};
use multisym::ringcore::CoeffRing;

fn main() -> multisym::Result<()> {
    for (n, m) in [(2, 2), (2, 3), (3, 2)] {
        for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(2), CoeffRing::PrimeField(3)] {
            let certs = certify_generation_bound(n, m, ring, 5, &Budget::unlimited())?;
            let failures = certs.iter().filter(|c| !c.passed()).count();
            let probe = certs.last().expect("probe certificate");
            println!(
                "n={n} m={m} {ring}: bound {} ; {failures} failing pieces ; {}",
                generation_bound(n, m),
                probe.note.as_deref().unwrap_or("")
            );
        }
    }
    Ok(())
}
