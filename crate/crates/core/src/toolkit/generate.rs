//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, which produces the
//! same stream on every platform, so an equal [`GeneratorSpec`] always yields
//! an identical instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CliqueInstance, Graph, Instance, PointSet, UdgInstance};

/// Name of the generator recorded in every generated file.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    RandomPoints,
    GridPoints,
    RandomGraph,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_points" | "random-points" => Ok(GeneratorKind::RandomPoints),
            "grid_points" | "grid-points" => Ok(GeneratorKind::GridPoints),
            "random_graph" | "random-graph" => Ok(GeneratorKind::RandomGraph),
            other => Err(Error::input(format!("unknown generator kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
    /// Points or vertices. Ignored when `site_scaling_exponent` is set.
    pub count: usize,
    /// `K` for disk instances, the clique size for graphs.
    pub target_size: usize,
    /// Lattice units per geometric unit.
    pub resolution: u64,
    /// Squared conflict distance in lattice units; defaults to
    /// `resolution²`, i.e. conflict at geometric distance 1.
    pub conflict_threshold: Option<u128>,
    /// Side of the sampling box in lattice units; defaults to
    /// `ceil(1.5 * sqrt(count) * resolution)`.
    pub box_extent: Option<u64>,
    /// Grid pitch in lattice units.
    pub grid_spacing: u64,
    pub edge_probability: f64,
    /// When set to `p`, the site count becomes `ceil(density * target_size^p)`.
    pub site_scaling_exponent: Option<u32>,
    pub density: f64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, count: usize, target_size: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            seed,
            count,
            target_size,
            resolution: 4,
            conflict_threshold: None,
            box_extent: None,
            grid_spacing: 8,
            edge_probability: 0.5,
            site_scaling_exponent: None,
            density: 1.0,
        }
    }

    /// Number of sites or vertices this spec generates.
    pub fn site_count(&self) -> Result<usize> {
        match self.site_scaling_exponent {
            None => Ok(self.count),
            Some(0) => Err(Error::input("site_scaling_exponent must be positive")),
            Some(p) => {
                if !(self.density.is_finite() && self.density > 0.0) {
                    return Err(Error::input("density must be positive"));
                }
                let sites = (self.density * (self.target_size as f64).powi(p as i32)).ceil();
                if sites > 1e9 {
                    return Err(Error::input(format!("scaled site count {sites} is too large")));
                }
                Ok(sites as usize)
            }
        }
    }

    fn threshold(&self) -> u128 {
        self.conflict_threshold
            .unwrap_or((self.resolution as u128) * (self.resolution as u128))
    }
}

/// Header stored alongside generated instances so they can be regenerated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorHeader {
    pub prng: String,
    pub spec: GeneratorSpec,
}

impl GeneratorHeader {
    pub fn new(spec: &GeneratorSpec) -> Self {
        GeneratorHeader {
            prng: PRNG_NAME.to_string(),
            spec: spec.clone(),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let n = spec.site_count()?;
    if spec.target_size == 0 || spec.target_size >= n {
        return Err(Error::input(format!(
            "{n} sites/vertices cannot host a selection of size {}",
            spec.target_size
        )));
    }
    if spec.resolution == 0 {
        return Err(Error::input("resolution must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GeneratorKind::RandomPoints => {
            let extent = spec.box_extent.unwrap_or_else(|| default_extent(n, spec.resolution));
            let pts = random_points(&mut rng, n, extent)?;
            Ok(Instance::UdgIs(UdgInstance::new(
                PointSet::new(2, spec.resolution, &pts)?,
                spec.threshold(),
                spec.target_size,
            )?))
        }
        GeneratorKind::GridPoints => Ok(Instance::UdgIs(grid_udg(
            n,
            spec.grid_spacing,
            spec.resolution,
            spec.threshold(),
            spec.target_size,
        )?)),
        GeneratorKind::RandomGraph => Ok(Instance::Clique(CliqueInstance::new(
            random_graph(&mut rng, n, spec.edge_probability)?,
            spec.target_size,
        )?)),
    }
}

/// Box side that keeps the expected conflict degree roughly constant as the
/// point count grows.
pub fn default_extent(n: usize, resolution: u64) -> u64 {
    (1.5 * (n as f64).sqrt() * resolution as f64).ceil() as u64
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, extent: u64) -> Result<Vec<Vec<i64>>> {
    let extent = i64::try_from(extent)
        .ok()
        .filter(|&e| e <= PointSet::COORD_LIMIT)
        .ok_or_else(|| Error::input("box extent too large"))?;
    Ok((0..n)
        .map(|_| vec![rng.gen_range(0..=extent), rng.gen_range(0..=extent)])
        .collect())
}

pub(crate) fn random_udg(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    resolution: u64,
    extent: Option<u64>,
) -> Result<UdgInstance> {
    let extent = extent.unwrap_or_else(|| default_extent(n, resolution));
    let pts = random_points(rng, n, extent)?;
    let r = resolution as u128;
    UdgInstance::new(PointSet::new(2, resolution, &pts)?, r * r, k)
}

pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// The first `n` points, row-major, of a square grid with the given pitch.
pub fn grid_udg(n: usize, spacing: u64, resolution: u64, threshold: u128, k: usize) -> Result<UdgInstance> {
    if spacing == 0 {
        return Err(Error::input("grid spacing must be positive"));
    }
    let side = (n as f64).sqrt().ceil() as usize;
    let side = if side * side < n { side + 1 } else { side };
    let spacing = i64::try_from(spacing).map_err(|_| Error::input("grid spacing too large"))?;
    let pts: Vec<Vec<i64>> = (0..n)
        .map(|idx| {
            let (row, col) = (idx / side, idx % side);
            vec![col as i64 * spacing, row as i64 * spacing]
        })
        .collect();
    UdgInstance::new(PointSet::new(2, resolution, &pts)?, threshold, k)
}

/// Per-trial seed derived from a run seed and trial index.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
