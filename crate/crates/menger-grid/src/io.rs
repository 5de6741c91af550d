//! File formats: JSON artifacts, headerless CSV datasets, edge-list
//! text, OBJ/PLY geometry. Every writer goes through a temp file and an
//! atomic rename, so failed runs leave no partial outputs, and every
//! format is deterministic byte-for-byte given the same values.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::embed::{Embedding, GridGeometry};
use crate::error::{Error, Result};
use crate::grid::{from_edge_list, make_chain, NeuronGrid};
use crate::metrics::TopologyMetrics;
use crate::sponge::{SpongeCell, SpongeSkeleton};
use crate::train::TrainingSchedule;

/// Writes `bytes` to `path` via a sibling temp file and atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| Error::io(path, e);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable value");
    bytes.push(b'\n');
    bytes
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}

// ---- trained model -------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    dim: usize,
    nodes: Vec<(u32, Vec<f64>)>,
    edges: Vec<(u32, u32)>,
}

pub fn save_model(path: &Path, g: &NeuronGrid) -> Result<()> {
    let weights = g
        .weights()
        .ok_or_else(|| Error::validation("cannot save a model without weights"))?;
    let file = ModelFile {
        dim: g.dim().expect("weights present"),
        nodes: (0..g.len() as u32)
            .map(|id| (id, weights[id as usize].clone()))
            .collect(),
        edges: g.edges().to_vec(),
    };
    write_atomic(path, &json_bytes(&file))
}

pub fn load_model(path: &Path) -> Result<NeuronGrid> {
    let text = read_text(path)?;
    let file: ModelFile = parse_json(path, &text)?;
    let here = |e: Error| Error::validation(format!("{}: {e}", path.display()));

    let m = file.nodes.len();
    if m == 0 {
        return Err(here(Error::validation("model has no nodes")));
    }
    let mut weights: Vec<Option<Vec<f64>>> = vec![None; m];
    for (id, w) in file.nodes {
        let slot = weights
            .get_mut(id as usize)
            .ok_or_else(|| here(Error::validation(format!("node id {id} outside 0..{m}"))))?;
        if slot.is_some() {
            return Err(here(Error::validation(format!("duplicate node id {id}"))));
        }
        if w.len() != file.dim {
            return Err(here(Error::validation(format!(
                "node {id} has {} weights but dim is {}",
                w.len(),
                file.dim
            ))));
        }
        *slot = Some(w);
    }
    let weights: Vec<Vec<f64>> = weights.into_iter().map(|w| w.expect("all ids seen")).collect();

    let topology = if m == 1 && file.edges.is_empty() {
        make_chain(1)?
    } else {
        from_edge_list(&file.edges).map_err(here)?
    };
    if topology.len() != m {
        return Err(here(Error::validation(format!(
            "edges span {} nodes but the model lists {m}",
            topology.len()
        ))));
    }
    topology.with_weights(weights).map_err(here)
}

// ---- sponge skeleton -----------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkeletonFile {
    level: u32,
    cells: Vec<[u32; 3]>,
    adjacency: Vec<(u32, u32)>,
}

pub fn save_skeleton(path: &Path, sk: &SpongeSkeleton) -> Result<()> {
    let file = SkeletonFile {
        level: sk.level(),
        cells: sk.cells().iter().map(|c| c.coords()).collect(),
        adjacency: sk.edges().collect(),
    };
    write_atomic(path, &json_bytes(&file))
}

// ---- embedding -----------------------------------------------------------

type StoredPath = ((u32, u32), Vec<[u32; 3]>);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    level: u32,
    node_cells: Vec<[u32; 3]>,
    edge_paths: Vec<StoredPath>,
}

pub fn save_embedding(path: &Path, e: &Embedding) -> Result<()> {
    let file = EmbeddingFile {
        level: e.level(),
        node_cells: e.node_cells().iter().map(|c| c.coords()).collect(),
        edge_paths: e
            .edge_paths()
            .iter()
            .map(|(edge, p)| (*edge, p.iter().map(|c| c.coords()).collect()))
            .collect(),
    };
    write_atomic(path, &json_bytes(&file))
}

pub fn load_embedding(path: &Path) -> Result<Embedding> {
    let text = read_text(path)?;
    let file: EmbeddingFile = parse_json(path, &text)?;
    let here = |e: Error| Error::validation(format!("{}: {e}", path.display()));
    let cell = |coords: [u32; 3]| SpongeCell::new(file.level, coords).map_err(here);
    let node_cells = file
        .node_cells
        .into_iter()
        .map(cell)
        .collect::<Result<Vec<_>>>()?;
    let edge_paths = file
        .edge_paths
        .into_iter()
        .map(|(edge, coords)| {
            Ok((
                edge,
                coords.into_iter().map(cell).collect::<Result<Vec<_>>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Embedding::new(file.level, node_cells, edge_paths))
}

// ---- metrics and demo summary --------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricsFile {
    qe: f64,
    te: f64,
    n_samples: usize,
}

pub fn save_metrics(path: &Path, m: &TopologyMetrics) -> Result<()> {
    let file = MetricsFile {
        qe: m.qe,
        te: m.te,
        n_samples: m.n_samples,
    };
    write_atomic(path, &json_bytes(&file))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummaryFile {
    te_chain: f64,
    te_lattice: f64,
    seed: u64,
}

pub fn save_summary(path: &Path, te_chain: f64, te_lattice: f64, seed: u64) -> Result<()> {
    let file = SummaryFile {
        te_chain,
        te_lattice,
        seed,
    };
    write_atomic(path, &json_bytes(&file))
}

// ---- CSV -----------------------------------------------------------------

/// Headerless CSV, one sample per row, comma-separated decimal floats.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let text = read_text(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                field.trim().parse::<f64>().map_err(|e| Error::Parse {
                    path: path.display().to_string(),
                    line: i + 1,
                    message: format!("bad number {:?}: {e}", field.trim()),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if !rows.is_empty() && rows[0].len() != row.len() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: i + 1,
                message: format!("row has {} columns, expected {}", row.len(), rows[0].len()),
            });
        }
        rows.push(row);
    }
    Dataset::new(rows).map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

pub fn save_dataset(path: &Path, data: &Dataset) -> Result<()> {
    write_atomic(path, &csv_bytes(data.samples().iter().map(|s| s.as_slice())))
}

fn csv_bytes<'a>(rows: impl Iterator<Item = &'a [f64]>) -> Vec<u8> {
    let mut out = String::new();
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    out.into_bytes()
}

pub fn write_points2_csv(path: &Path, points: &[[f64; 2]]) -> Result<()> {
    write_atomic(path, &csv_bytes(points.iter().map(|p| p.as_slice())))
}

/// Two columns, `epoch,qe`, headerless like every other CSV here.
pub fn write_qe_trace_csv(path: &Path, trace: &[f64]) -> Result<()> {
    let mut out = String::new();
    for (epoch, qe) in trace.iter().enumerate() {
        out.push_str(&format!("{epoch},{qe}\n"));
    }
    write_atomic(path, out.as_bytes())
}

// ---- edge-list text ------------------------------------------------------

/// One `a b` pair per line; `#` starts a comment; blank lines allowed.
pub fn load_edge_list(path: &Path) -> Result<Vec<(u32, u32)>> {
    let text = read_text(path)?;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |field: Option<&str>| -> Result<u32> {
            field
                .ok_or(())
                .and_then(|f| f.parse::<u32>().map_err(|_| ()))
                .map_err(|_| Error::Parse {
                    path: path.display().to_string(),
                    line: i + 1,
                    message: format!("expected two node ids, got {line:?}"),
                })
        };
        let a = parse(fields.next())?;
        let b = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: i + 1,
                message: format!("expected two node ids, got {line:?}"),
            });
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}

// ---- OBJ / PLY geometry ---------------------------------------------------

fn obj_bytes(vertices: &[[f64; 3]], polylines: &[Vec<usize>]) -> Vec<u8> {
    let mut out = String::new();
    for v in vertices {
        out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for line in polylines {
        out.push('l');
        for &i in line {
            out.push_str(&format!(" {}", i + 1));
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Skeleton as OBJ: cell centers plus one 2-vertex line per adjacency.
pub fn write_skeleton_obj(path: &Path, sk: &SpongeSkeleton) -> Result<()> {
    let vertices: Vec<[f64; 3]> = sk.cells().iter().map(SpongeCell::center).collect();
    let polylines: Vec<Vec<usize>> = sk
        .edges()
        .map(|(a, b)| vec![a as usize, b as usize])
        .collect();
    write_atomic(path, &obj_bytes(&vertices, &polylines))
}

/// Planar polyline as OBJ, embedded at z = 0.
pub fn write_polyline2_obj(path: &Path, points: &[[f64; 2]]) -> Result<()> {
    let vertices: Vec<[f64; 3]> = points.iter().map(|p| [p[0], p[1], 0.0]).collect();
    let polylines = vec![(0..points.len()).collect::<Vec<usize>>()];
    write_atomic(path, &obj_bytes(&vertices, &polylines))
}

/// Embedding geometry as OBJ: node vertices first, then each link's
/// interior vertices, with one polyline per link.
pub fn write_geometry_obj(path: &Path, geo: &GridGeometry) -> Result<()> {
    let mut vertices: Vec<[f64; 3]> = geo.node_points.clone();
    let mut polylines = Vec::with_capacity(geo.link_polylines.len());
    for ((a, b), polyline) in &geo.link_polylines {
        let mut indices = vec![*a as usize];
        for p in &polyline[1..polyline.len().saturating_sub(1)] {
            indices.push(vertices.len());
            vertices.push(*p);
        }
        indices.push(*b as usize);
        polylines.push(indices);
    }
    write_atomic(path, &obj_bytes(&vertices, &polylines))
}

/// ASCII PLY point cloud.
pub fn write_ply_points(path: &Path, points: &[[f64; 3]]) -> Result<()> {
    let mut out = String::new();
    out.push_str("ply\nformat ascii 1.0\n");
    out.push_str(&format!("element vertex {}\n", points.len()));
    out.push_str("property double x\nproperty double y\nproperty double z\nend_header\n");
    for p in points {
        out.push_str(&format!("{} {} {}\n", p[0], p[1], p[2]));
    }
    write_atomic(path, out.as_bytes())
}

// ---- run configuration -----------------------------------------------------

/// Training configuration file. Keys are exactly these seven; anything
/// else is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub t_max: u64,
    pub eta0: f64,
    #[serde(rename = "etaF")]
    pub eta_f: f64,
    pub sigma0: f64,
    #[serde(rename = "sigmaF")]
    pub sigma_f: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn schedule(&self) -> Result<TrainingSchedule> {
        TrainingSchedule::new(self.t_max, self.eta0, self.eta_f, self.sigma0, self.sigma_f)
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = read_text(path)?;
    parse_json(path, &text)
}

pub fn save_config(path: &Path, config: &RunConfig) -> Result<()> {
    write_atomic(path, &json_bytes(config))
}
