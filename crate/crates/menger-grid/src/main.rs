//! Thin command-line front end; all real work lives in the library.
//!
//! Exit codes: 0 success, 2 usage, 3 validation/domain, 4 capacity,
//! 5 I/O.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use menger_grid::embed::{embed_grid, embedding_to_geometry, validate_embedding};
use menger_grid::error::{Error, Result};
use menger_grid::grid::{
    from_edge_list, make_chain, make_lattice2d, make_lattice3d, make_ring, NeuronGrid,
};
use menger_grid::metrics::{folding_experiment, topology_metrics};
use menger_grid::peano::peano_polyline;
use menger_grid::sponge::SpongeSkeleton;
use menger_grid::io;
use menger_grid::train::som_train;

#[derive(Parser)]
#[command(
    name = "menger-grid",
    version,
    about = "Sponge skeletons, grid training, topology metrics, and 3-D embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the level-k sponge skeleton as JSON, OBJ, and PLY
    Sponge {
        /// Subdivision level k (20^k cells)
        #[arg(long)]
        level: u32,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the order-p Peano walk as CSV and OBJ
    Peano {
        /// Curve order p (9^p points)
        #[arg(long)]
        order: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a grid on CSV data; writes model, metrics, and QE trace
    Train {
        /// Topology: chain:N, ring:N, lattice:WxH, lattice3:WxHxD, or edges:FILE
        #[arg(long)]
        grid: String,
        /// Dataset CSV, one sample per row, no header
        #[arg(long)]
        data: PathBuf,
        /// JSON config with t_max, eta0, etaF, sigma0, sigmaF, epochs, seed
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed from the config file
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed a model or edge list into the sponge skeleton
    Embed {
        /// Trained model JSON
        #[arg(long, required_unless_present = "edges", conflicts_with = "edges")]
        model: Option<PathBuf>,
        /// Plain edge-list file (a b per line) instead of a model
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k_start: u32,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure quantization and topographic error of a model on data
    Metrics {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Chain-vs-lattice folding experiment with models and embeddings
    Demo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sponge { level, out } => cmd_sponge(level, &out),
        Command::Peano { order, out } => cmd_peano(order, &out),
        Command::Train {
            grid,
            data,
            config,
            seed,
            out,
        } => cmd_train(&grid, &data, &config, seed, &out),
        Command::Embed {
            model,
            edges,
            k_start,
            k_max,
            seed,
            out,
        } => cmd_embed(model.as_deref(), edges.as_deref(), k_start, k_max, seed, &out),
        Command::Metrics { model, data, out } => cmd_metrics(&model, &data, &out),
        Command::Demo { seed, out } => cmd_demo(seed, &out),
    }
}

fn ensure_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))
}

fn cmd_sponge(level: u32, out: &Path) -> Result<()> {
    let sk = SpongeSkeleton::build(level)?;
    ensure_dir(out)?;
    io::save_skeleton(&out.join("skeleton.json"), &sk)?;
    io::write_skeleton_obj(&out.join("skeleton.obj"), &sk)?;
    let centers: Vec<[f64; 3]> = sk.cells().iter().map(|c| c.center()).collect();
    io::write_ply_points(&out.join("skeleton.ply"), &centers)?;
    println!(
        "sponge level {level}: {} cells, {} links -> {}",
        sk.len(),
        sk.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_peano(order: u32, out: &Path) -> Result<()> {
    let polyline = peano_polyline(order)?;
    ensure_dir(out)?;
    io::write_points2_csv(&out.join("peano.csv"), polyline.points())?;
    io::write_polyline2_obj(&out.join("peano.obj"), polyline.points())?;
    println!(
        "peano order {order}: {} points -> {}",
        polyline.len(),
        out.display()
    );
    Ok(())
}

fn parse_grid_spec(spec: &str) -> Result<NeuronGrid> {
    let bad = || {
        Error::validation(format!(
            "grid spec {spec:?} not understood; expected chain:N, ring:N, \
             lattice:WxH, lattice3:WxHxD, or edges:FILE"
        ))
    };
    let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
    let dims = |s: &str| -> Result<Vec<u32>> {
        s.split('x')
            .map(|p| p.parse::<u32>().map_err(|_| bad()))
            .collect()
    };
    match kind {
        "chain" => make_chain(arg.parse().map_err(|_| bad())?),
        "ring" => make_ring(arg.parse().map_err(|_| bad())?),
        "lattice" => match dims(arg)?.as_slice() {
            [w, h] => make_lattice2d(*w, *h),
            _ => Err(bad()),
        },
        "lattice3" => match dims(arg)?.as_slice() {
            [w, h, d] => make_lattice3d(*w, *h, *d),
            _ => Err(bad()),
        },
        "edges" => from_edge_list(&io::load_edge_list(Path::new(arg))?),
        _ => Err(bad()),
    }
}

fn cmd_train(
    grid_spec: &str,
    data: &Path,
    config: &Path,
    seed_flag: Option<u64>,
    out: &Path,
) -> Result<()> {
    let mut config = io::load_config(config)?;
    if let Some(seed) = seed_flag {
        config.seed = seed;
    }
    let schedule = config.schedule()?;
    let data = io::load_dataset(data)?;
    let grid = parse_grid_spec(grid_spec)?.init_weights(&data, config.seed)?;
    let report = som_train(&grid, &data, &schedule, config.seed, config.epochs)?;
    let metrics = topology_metrics(&report.grid, &data)?;

    ensure_dir(out)?;
    io::save_model(&out.join("model.json"), &report.grid)?;
    io::save_metrics(&out.join("metrics.json"), &metrics)?;
    io::write_qe_trace_csv(&out.join("qe_trace.csv"), &report.qe_trace)?;
    println!(
        "trained {grid_spec} for {} steps: qe={} te={} -> {}",
        report.steps,
        metrics.qe,
        metrics.te,
        out.display()
    );
    Ok(())
}

fn cmd_embed(
    model: Option<&Path>,
    edges: Option<&Path>,
    k_start: u32,
    k_max: u32,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let grid = match (model, edges) {
        (Some(path), None) => io::load_model(path)?,
        (None, Some(path)) => from_edge_list(&io::load_edge_list(path)?)?,
        _ => return Err(Error::validation("provide exactly one of --model or --edges")),
    };
    let embedding = embed_grid(&grid, k_start, k_max, seed)?;
    let violations = validate_embedding(&grid, &embedding);
    if !violations.is_empty() {
        return Err(Error::validation(format!(
            "embedding failed self-validation: {}",
            violations[0]
        )));
    }
    ensure_dir(out)?;
    io::save_embedding(&out.join("embedding.json"), &embedding)?;
    io::write_geometry_obj(
        &out.join("embedding.obj"),
        &embedding_to_geometry(&embedding),
    )?;
    println!(
        "embedded {} nodes / {} links at level {} -> {}",
        grid.len(),
        grid.edges().len(),
        embedding.level(),
        out.display()
    );
    Ok(())
}

fn cmd_metrics(model: &Path, data: &Path, out: &Path) -> Result<()> {
    let grid = io::load_model(model)?;
    let data = io::load_dataset(data)?;
    let metrics = topology_metrics(&grid, &data)?;
    ensure_dir(out)?;
    io::save_metrics(&out.join("metrics.json"), &metrics)?;
    println!(
        "qe={} te={} over {} samples -> {}",
        metrics.qe,
        metrics.te,
        metrics.n_samples,
        out.display()
    );
    Ok(())
}

fn cmd_demo(seed: u64, out: &Path) -> Result<()> {
    let experiment = folding_experiment(seed)?;
    ensure_dir(out)?;

    for (name, report, metrics) in [
        ("chain", &experiment.chain, &experiment.chain_metrics),
        ("lattice", &experiment.lattice, &experiment.lattice_metrics),
    ] {
        io::save_model(&out.join(format!("{name}_model.json")), &report.grid)?;
        io::save_metrics(&out.join(format!("{name}_metrics.json")), metrics)?;
        let embedding = embed_grid(&report.grid, 2, 4, seed)?;
        let violations = validate_embedding(&report.grid, &embedding);
        if !violations.is_empty() {
            return Err(Error::validation(format!(
                "{name} embedding failed self-validation: {}",
                violations[0]
            )));
        }
        io::save_embedding(&out.join(format!("{name}_embedding.json")), &embedding)?;
        io::write_geometry_obj(
            &out.join(format!("{name}_embedding.obj")),
            &embedding_to_geometry(&embedding),
        )?;
    }
    io::save_summary(
        &out.join("summary.json"),
        experiment.chain_metrics.te,
        experiment.lattice_metrics.te,
        seed,
    )?;
    println!(
        "folding demo seed {seed}: te_chain={} te_lattice={} -> {}",
        experiment.chain_metrics.te,
        experiment.lattice_metrics.te,
        out.display()
    );
    Ok(())
}
