//! Build grids from factories and edge lists, and probe their hop metric.

use menger_grid::grid::{from_edge_list, make_chain, make_lattice2d, make_lattice3d, make_ring};

fn main() -> menger_grid::Result<()> {
    let grids = [
        ("chain-5", make_chain(5)?),
        ("ring-8", make_ring(8)?),
        ("lattice-3x3", make_lattice2d(3, 3)?),
        ("lattice-2x2x2", make_lattice3d(2, 2, 2)?),
        ("triangle from edge list", from_edge_list(&[(0, 1), (1, 2), (2, 0)])?),
    ];
    for (name, g) in &grids {
        let far = g.graph_distance(0, g.len() as u32 - 1)?;
        println!(
            "{name}: {} nodes, {} links, node 0 degree {}, distance 0 -> {} is {far}",
            g.len(),
            g.edges().len(),
            g.degree(0),
            g.len() - 1
        );
    }

    // Connectivity is enforced; the error names the pieces.
    match from_edge_list(&[(0, 1), (2, 3)]) {
        Err(e) => println!("disconnected edge list rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
