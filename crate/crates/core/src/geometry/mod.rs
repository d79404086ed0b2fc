//! Grid-discretized planar domains and their metric diagnostics.
//!
//! A domain is an axis-aligned cell mask with cell side `h`. Slits are
//! represented as blocked cell-face adjacencies: they sever connectivity and
//! count toward the boundary in the distance field without removing area.
//! All construction lengths must align with the cell lattice; partial cells
//! are a construction error, never a silent approximation.

mod ahlfors;
mod build;
mod components;
mod distance;
mod john;

pub use ahlfors::ahlfors_infimum;
pub use build::{DomainSpec, RoomsMeta};
pub use components::{connected_components, hole_count, tail_components, Labeling, TailSet};
pub use john::{john_constant, JohnEstimate, JohnOptions};

use std::collections::HashSet;
use thiserror::Error;

/// A point in domain units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    #[inline]
    pub fn dist2(&self, other: Pt) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(&self, other: Pt) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// A Euclidean ball given by center and radius.
#[derive(Clone, Copy, Debug)]
pub struct Ball {
    pub center: Pt,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Pt, radius: f64) -> Self {
        Ball { center, radius }
    }

    /// Closed-ball membership; used wherever cells are removed or assigned.
    #[inline]
    pub fn contains_closed(&self, p: Pt) -> bool {
        self.center.dist2(p) <= self.radius * self.radius
    }
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("cell size h = {h} does not evenly tile length {len} ({what})")]
    Tile { h: f64, len: f64, what: &'static str },
    #[error("invalid cell size h = {0}; h must be positive")]
    BadH(f64),
    #[error("rooms-and-passages needs s > 1 (got {0})")]
    BadS(f64),
    #[error("rooms-and-passages needs K >= 1 (got {0})")]
    BadK(u32),
    #[error(
        "h = {h} too coarse for a K = {k} tower: h must be a power of two \
         with h <= 2^-(K+2) so the deepest room spans >= 4 cells"
    )]
    TowerResolution { h: f64, k: u32 },
    #[error("domain mask is empty")]
    EmptyMask,
    #[error("active cells are not edge-connected ({0} components)")]
    Disconnected(usize),
    #[error("blocked edge ({0}, {1}) does not join two adjacent active cells")]
    BadBlockedEdge(usize, usize),
    #[error("ball at ({x}, {y}) with radius {r} contains no active cell center")]
    EmptyBall { x: f64, y: f64, r: f64 },
    #[error("point ({x}, {y}) is not inside the domain")]
    OutsidePoint { x: f64, y: f64 },
    #[error("invalid parameter: {0}")]
    BadParam(String),
}

/// A planar domain discretized as an active-cell mask on a regular grid.
///
/// Cells are indexed row-major, `index = y * nx + x`, with row 0 at the
/// bottom; the center of cell `(x, y)` is `origin + ((x+0.5)h, (y+0.5)h)`.
/// `dist` holds the exact Euclidean distance from each active cell center to
/// the boundary (mask faces, outer hull and blocked-face slit segments).
#[derive(Clone, Debug)]
pub struct GridDomain {
    h: f64,
    nx: usize,
    ny: usize,
    origin: Pt,
    mask: Vec<bool>,
    /// Grid index of each active cell, ascending.
    active: Vec<u32>,
    /// Grid index -> active slot, or u32::MAX.
    slot: Vec<u32>,
    /// Normalized (lo, hi) grid-index pairs of severed faces.
    blocked: HashSet<(u32, u32)>,
    /// Designated John-center candidate; always an active cell center.
    center: Pt,
    /// Boundary distance per active slot.
    dist: Vec<f64>,
    /// Construction metadata for rooms-and-passages towers.
    rooms: Option<RoomsMeta>,
}

impl GridDomain {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn origin(&self) -> Pt {
        self.origin
    }

    pub fn center(&self) -> Pt {
        self.center
    }

    pub fn active_count(&self) -> usize {
        self.active.len()
    }

    /// Grid indices of active cells in ascending (row-major) order.
    pub fn active_cells(&self) -> &[u32] {
        &self.active
    }

    pub fn rooms_meta(&self) -> Option<&RoomsMeta> {
        self.rooms.as_ref()
    }

    /// Cell area h^2.
    pub fn cell_measure(&self) -> f64 {
        self.h * self.h
    }

    /// Total measure of the active set.
    pub fn measure(&self) -> f64 {
        self.cell_measure() * self.active.len() as f64
    }

    #[inline]
    pub fn is_active(&self, cell: usize) -> bool {
        self.mask[cell]
    }

    #[inline]
    pub fn slot_of(&self, cell: usize) -> Option<usize> {
        let s = self.slot[cell];
        (s != u32::MAX).then_some(s as usize)
    }

    #[inline]
    pub fn cell_of_slot(&self, slot: usize) -> usize {
        self.active[slot] as usize
    }

    #[inline]
    pub fn cell_xy(&self, cell: usize) -> (usize, usize) {
        (cell % self.nx, cell / self.nx)
    }

    #[inline]
    pub fn cell_index(&self, x: usize, y: usize) -> usize {
        y * self.nx + x
    }

    #[inline]
    pub fn cell_center(&self, cell: usize) -> Pt {
        let (x, y) = self.cell_xy(cell);
        Pt::new(
            self.origin.x + (x as f64 + 0.5) * self.h,
            self.origin.y + (y as f64 + 0.5) * self.h,
        )
    }

    #[inline]
    pub fn slot_center(&self, slot: usize) -> Pt {
        self.cell_center(self.cell_of_slot(slot))
    }

    /// Boundary distance of an active slot.
    #[inline]
    pub fn slot_dist(&self, slot: usize) -> f64 {
        self.dist[slot]
    }

    pub fn dists(&self) -> &[f64] {
        &self.dist
    }

    #[inline]
    pub fn is_blocked(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a as u32, b as u32) } else { (b as u32, a as u32) };
        self.blocked.contains(&key)
    }

    pub fn blocked_edges(&self) -> &HashSet<(u32, u32)> {
        &self.blocked
    }

    /// Edge-adjacent active neighbors of a cell, blocked faces respected,
    /// in fixed order (down, left, right, up).
    pub fn neighbors4(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        let (x, y) = self.cell_xy(cell);
        let nx = self.nx;
        let candidates = [
            (y > 0).then(|| cell - nx),
            (x > 0).then(|| cell - 1),
            (x + 1 < self.nx).then(|| cell + 1),
            (y + 1 < self.ny).then(|| cell + nx),
        ];
        candidates
            .into_iter()
            .flatten()
            .filter(move |&n| self.mask[n] && !self.is_blocked(cell, n))
    }

    /// Active slot whose center is nearest to `p`; ties break to the lowest
    /// grid index.
    pub fn nearest_active_slot(&self, p: Pt) -> usize {
        let mut best = (f64::INFINITY, 0usize);
        for (s, &cell) in self.active.iter().enumerate() {
            let d2 = self.cell_center(cell as usize).dist2(p);
            if d2 < best.0 {
                best = (d2, s);
            }
        }
        best.1
    }

    /// Largest center-to-center distance across the active set, via the
    /// convex hull of cell centers.
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Pt> = self.active.iter().map(|&c| self.cell_center(c as usize)).collect();
        components::point_set_diameter(&pts)
    }
}
