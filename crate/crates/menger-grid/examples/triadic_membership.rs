//! Base-3 expansions drive sponge membership: a point is inside when some
//! choice of expansions has at most one digit 1 per position.

use menger_grid::sponge::is_sponge_member;
use menger_grid::triadic::{has_alternative_expansion, to_triadic};

fn main() -> menger_grid::Result<()> {
    for x in [0.0, 0.5, 1.0 / 3.0, 2.0 / 3.0, 1.0] {
        let t = to_triadic(x, 4)?;
        print!("{x:<10} -> digits {:?}", t.digits());
        if t.is_exact() {
            print!(" (exact)");
        }
        if let Some(alt) = has_alternative_expansion(&t) {
            print!(", alternative {:?}", alt.digits());
        }
        println!();
    }

    println!();
    let probes = [
        ([0.5, 0.0, 0.0], "edge midpoint"),
        ([0.5, 0.5, 0.5], "cube center"),
        ([1.0 / 3.0, 2.0 / 3.0, 0.0], "corner of the middle cross"),
        ([0.0, 0.5, 0.5], "center of a face"),
    ];
    for (p, what) in probes {
        println!(
            "{p:?} ({what}): member at level 3 = {}",
            is_sponge_member(p, 3)?
        );
    }
    Ok(())
}
