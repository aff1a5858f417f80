use crate::error::{Error, Result};

/// A finite list of 2-D or 3-D points on an integer lattice.
///
/// Geometric coordinates are `coordinate / resolution`; all distance
/// comparisons happen on the exact integer squared distance in scaled units.
/// Coincident points are allowed. Coordinates are bounded by
/// [`PointSet::COORD_LIMIT`] in magnitude, which keeps every 3-D squared
/// distance inside `u128`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dimension: usize,
    resolution: u64,
    coords: Vec<i64>,
}

impl PointSet {
    pub const COORD_LIMIT: i64 = 1 << 62;

    pub fn new(dimension: usize, resolution: u64, points: &[Vec<i64>]) -> Result<Self> {
        let mut set = PointSet::empty(dimension, resolution)?;
        for (idx, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::input(format!(
                    "point {idx} has {} coordinates, expected {dimension}",
                    p.len()
                )));
            }
            set.push(p)?;
        }
        Ok(set)
    }

    pub fn empty(dimension: usize, resolution: u64) -> Result<Self> {
        if dimension != 2 && dimension != 3 {
            return Err(Error::input(format!("dimension must be 2 or 3, got {dimension}")));
        }
        if resolution == 0 {
            return Err(Error::input("resolution must be positive"));
        }
        Ok(PointSet {
            dimension,
            resolution,
            coords: Vec::new(),
        })
    }

    pub fn push(&mut self, point: &[i64]) -> Result<()> {
        if point.len() != self.dimension {
            return Err(Error::input(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.dimension
            )));
        }
        if let Some(c) = point.iter().find(|c| c.unsigned_abs() > Self::COORD_LIMIT as u64) {
            return Err(Error::input(format!("coordinate {c} exceeds ±2^62")));
        }
        self.coords.extend_from_slice(point);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn resolution(&self) -> u64 {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> Option<&[i64]> {
        let d = self.dimension;
        self.coords.get(i * d..(i + 1) * d)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[i64]> + '_ {
        self.coords.chunks_exact(self.dimension)
    }

    /// Exact squared distance between points `i` and `j`, in scaled units.
    pub fn squared_distance(&self, i: usize, j: usize) -> Result<u128> {
        let len = self.len();
        let (Some(a), Some(b)) = (self.point(i), self.point(j)) else {
            return Err(Error::input(format!("point index ({i}, {j}) out of range 0..{len}")));
        };
        Ok(a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let d = (x as i128 - y as i128).unsigned_abs();
                d * d
            })
            .sum())
    }

    /// Zero-pads 2-D points into the `z = 0` plane; 3-D sets are returned as is.
    pub fn embed_3d(&self) -> PointSet {
        if self.dimension == 3 {
            return self.clone();
        }
        let coords = self.iter().flat_map(|p| [p[0], p[1], 0]).collect();
        PointSet {
            dimension: 3,
            resolution: self.resolution,
            coords,
        }
    }

    /// Shifts every point by the same integer vector.
    pub fn translate(&self, offset: &[i64]) -> Result<PointSet> {
        if offset.len() != self.dimension {
            return Err(Error::input("offset dimension mismatch"));
        }
        let mut out = PointSet::empty(self.dimension, self.resolution)?;
        for p in self.iter() {
            let shifted: Vec<i64> = p
                .iter()
                .zip(offset)
                .map(|(&c, &o)| c.checked_add(o).ok_or(Error::Overflow("translating points")))
                .collect::<Result<_>>()?;
            out.push(&shifted)?;
        }
        Ok(out)
    }
}
