//! Enumerate sponge cells level by level and export the level-2 skeleton
//! as OBJ and PLY for a viewer.

use menger_grid::io::{write_ply_points, write_skeleton_obj};
use menger_grid::sponge::{enumerate_cells, SpongeSkeleton};

fn main() -> menger_grid::Result<()> {
    for k in 0..=3 {
        let cells = enumerate_cells(k)?;
        println!("level {k}: {} kept cells (20^{k})", cells.len());
    }

    let sk = SpongeSkeleton::build(2)?;
    println!(
        "level 2 skeleton: {} cells, {} face contacts",
        sk.len(),
        sk.edge_count()
    );

    let mut by_degree = std::collections::BTreeMap::new();
    for i in 0..sk.len() {
        *by_degree.entry(sk.degree(i)).or_insert(0u32) += 1;
    }
    for (degree, count) in by_degree {
        println!("  degree {degree}: {count} cells");
    }

    let dir = std::env::temp_dir().join("menger-grid-examples");
    std::fs::create_dir_all(&dir).expect("temp dir");
    write_skeleton_obj(&dir.join("skeleton2.obj"), &sk)?;
    let centers: Vec<[f64; 3]> = sk.cells().iter().map(|c| c.center()).collect();
    write_ply_points(&dir.join("skeleton2.ply"), &centers)?;
    println!("wrote {}", dir.join("skeleton2.obj").display());
    println!("wrote {}", dir.join("skeleton2.ply").display());
    Ok(())
}
