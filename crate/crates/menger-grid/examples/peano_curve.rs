//! Walk the serpentine space-filling curve and draw the order-2 walk as
//! ASCII; the polyline also goes out as OBJ.

use menger_grid::io::write_polyline2_obj;
use menger_grid::peano::{peano_cell, peano_polyline};

fn main() -> menger_grid::Result<()> {
    let order = 2;
    let polyline = peano_polyline(order)?;
    let first = polyline.points()[0];
    let last = polyline.points()[polyline.len() - 1];
    println!(
        "order {order}: {} points, from {first:?} to {last:?}",
        polyline.len()
    );

    // Label each subsquare with its visit step (mod 100) and print rows
    // top to bottom.
    let side = 3usize.pow(order);
    let mut steps = vec![vec![0u64; side]; side];
    for index in 0..(side * side) as u64 {
        let [x, y] = peano_cell(index, order)?;
        steps[y as usize][x as usize] = index;
    }
    for row in steps.iter().rev() {
        let line: Vec<String> = row.iter().map(|s| format!("{:02}", s % 100)).collect();
        println!("{}", line.join(" "));
    }

    let dir = std::env::temp_dir().join("menger-grid-examples");
    std::fs::create_dir_all(&dir).expect("temp dir");
    write_polyline2_obj(&dir.join("peano2.obj"), polyline.points())?;
    println!("wrote {}", dir.join("peano2.obj").display());
    Ok(())
}
