//! Model, metrics, and config files round-trip through JSON; writes are
//! atomic (temp file plus rename), so readers never see a torn file.

use menger_grid::grid::make_lattice2d;
use menger_grid::io::{load_config, load_model, save_config, save_model, RunConfig};
use menger_grid::Dataset;

fn main() -> menger_grid::Result<()> {
    let dir = std::env::temp_dir().join("menger-grid-examples");
    std::fs::create_dir_all(&dir).expect("temp dir");

    let data = Dataset::uniform(32, 3, 1)?;
    let grid = make_lattice2d(2, 3)?.init_weights(&data, 1)?;
    let model_path = dir.join("model.json");
    save_model(&model_path, &grid)?;
    let restored = load_model(&model_path)?;
    assert_eq!(grid, restored);
    println!("model round trip ok: {}", model_path.display());
    println!("{}", std::fs::read_to_string(&model_path).unwrap());

    let config = RunConfig {
        t_max: 1024,
        eta0: 0.5,
        eta_f: 0.05,
        sigma0: 2.0,
        sigma_f: 0.5,
        epochs: 4,
        seed: 9,
    };
    let config_path = dir.join("config.json");
    save_config(&config_path, &config)?;
    let schedule = load_config(&config_path)?.schedule()?;
    println!(
        "schedule from file: eta {} -> {}, sigma {} -> {}",
        schedule.eta(0),
        schedule.eta(1023),
        schedule.sigma(0),
        schedule.sigma(1023)
    );
    Ok(())
}
