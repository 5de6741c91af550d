//! Every connected grid here lands inside a sponge skeleton: nodes on
//! kept cells, links as vertex-disjoint cell paths. The validator
//! re-checks every invariant and the contraction isomorphism.

use menger_grid::embed::{embed_grid, embedding_to_geometry, validate_embedding};
use menger_grid::grid::{from_edge_list, make_lattice2d, make_ring};
use menger_grid::io::write_geometry_obj;

fn main() -> menger_grid::Result<()> {
    let grids = [
        ("ring-8", make_ring(8)?),
        ("lattice-5x5", make_lattice2d(5, 5)?),
        ("k4", from_edge_list(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?),
    ];

    let dir = std::env::temp_dir().join("menger-grid-examples");
    std::fs::create_dir_all(&dir).expect("temp dir");

    for (name, g) in &grids {
        let e = embed_grid(g, 1, 4, 0)?;
        let violations = validate_embedding(g, &e);
        let longest = e
            .edge_paths()
            .iter()
            .map(|(_, path)| path.len())
            .max()
            .unwrap_or(0);
        println!(
            "{name}: level {}, {} nodes, longest link path {} cells, violations {}",
            e.level(),
            e.node_cells().len(),
            longest,
            violations.len()
        );

        let path = dir.join(format!("{name}.obj"));
        write_geometry_obj(&path, &embedding_to_geometry(&e))?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}
