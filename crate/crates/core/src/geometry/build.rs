//! Domain constructors.
//!
//! Every generator snaps exactly to the cell lattice: slit endpoints and
//! room/passage walls land on cell boundaries or construction fails. The
//! rooms-and-passages tower stacks rooms of side 2^-k (k = 0..K) joined by
//! passages of height 2^-k and requested width 2 * (2^-k)^s / 8^s
//! (k = 1..K); requested widths are rounded up to an even cell count with a
//! floor of four cells so that every passage interior keeps nonempty
//! distance-restricted balls, and both the requested and rounded widths are
//! recorded.

use super::{distance, GeometryError, GridDomain, Pt};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Construction request for the built-in domain kinds.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainSpec {
    /// (0,1)^2.
    UnitSquare { h: f64 },
    /// (-1,1)^2 with the segment (0,1) x {0} severed.
    SlitSquare { h: f64 },
    /// Tower of K+1 rooms and K passages; `s > 1` is the passage exponent.
    RoomsPassages { h: f64, s: f64, k: u32 },
    /// (0,1)^2 minus the centered closed square of side 1/3.
    AnnulusTest { h: f64 },
}

impl DomainSpec {
    pub fn h(&self) -> f64 {
        match *self {
            DomainSpec::UnitSquare { h }
            | DomainSpec::SlitSquare { h }
            | DomainSpec::RoomsPassages { h, .. }
            | DomainSpec::AnnulusTest { h } => h,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DomainSpec::UnitSquare { .. } => "unit_square",
            DomainSpec::SlitSquare { .. } => "slit_square",
            DomainSpec::RoomsPassages { .. } => "rooms_passages",
            DomainSpec::AnnulusTest { .. } => "annulus_test",
        }
    }

    pub fn build(&self) -> Result<GridDomain, GeometryError> {
        match *self {
            DomainSpec::UnitSquare { h } => unit_square(h),
            DomainSpec::SlitSquare { h } => slit_square(h),
            DomainSpec::RoomsPassages { h, s, k } => rooms_passages(h, s, k),
            DomainSpec::AnnulusTest { h } => annulus_test(h),
        }
    }
}

/// Axis-aligned cell rectangle `[x0, x1) x [y0, y1)` in grid coordinates.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellRect {
    pub x0: usize,
    pub x1: usize,
    pub y0: usize,
    pub y1: usize,
}

/// Per-passage construction record.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PassageMeta {
    /// Requested width 2 * (2^-k)^s / 8^s.
    pub requested_width: f64,
    /// Width actually built (even cell count, at least four cells).
    pub width: f64,
    pub rect: CellRect,
}

/// Construction metadata of a rooms-and-passages tower.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RoomsMeta {
    pub s: f64,
    pub k: u32,
    /// Room k occupies `rooms[k]`, k = 0..=K.
    pub rooms: Vec<CellRect>,
    /// Passage k joins room k-1 to room k, k = 1..=K.
    pub passages: Vec<PassageMeta>,
}

impl RoomsMeta {
    /// Requested passage width for generation k.
    pub fn requested_width(s: f64, k: u32) -> f64 {
        2.0 * (0.5f64.powi(k as i32)).powf(s) / 8.0f64.powf(s)
    }

    /// Closed-form area of the built tower (rounded widths).
    pub fn closed_form_area(&self) -> f64 {
        let rooms: f64 = (0..=self.k).map(|k| 0.25f64.powi(k as i32)).sum();
        let passages: f64 = self
            .passages
            .iter()
            .enumerate()
            .map(|(i, p)| p.width * 0.5f64.powi(i as i32 + 1))
            .sum();
        rooms + passages
    }
}

/// Number of cells spanned by `len`, erroring unless `h` tiles it exactly.
fn cells_for(len: f64, h: f64, what: &'static str) -> Result<usize, GeometryError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(GeometryError::BadH(h));
    }
    let ratio = len / h;
    let n = ratio.round();
    if n < 1.0 || (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
        return Err(GeometryError::Tile { h, len, what });
    }
    Ok(n as usize)
}

fn unit_square(h: f64) -> Result<GridDomain, GeometryError> {
    let n = cells_for(1.0, h, "unit square side")?;
    let mask = vec![true; n * n];
    finish(h, n, n, Pt::new(0.0, 0.0), mask, HashSet::new(), Some(Pt::new(0.5, 0.5)), None)
}

fn slit_square(h: f64) -> Result<GridDomain, GeometryError> {
    let m = cells_for(1.0, h, "slit length")?;
    let n = 2 * m;
    let mask = vec![true; n * n];
    // Sever the faces along (0,1) x {0}: columns m..2m-1 between rows m-1, m.
    let mut blocked = HashSet::new();
    for x in m..n {
        let below = (m - 1) * n + x;
        let above = m * n + x;
        blocked.insert((below as u32, above as u32));
    }
    finish(
        h,
        n,
        n,
        Pt::new(-1.0, -1.0),
        mask,
        blocked,
        Some(Pt::new(-0.5, 0.0)),
        None,
    )
}

fn annulus_test(h: f64) -> Result<GridDomain, GeometryError> {
    let n = cells_for(1.0, h, "annulus outer side")?;
    if n % 3 != 0 {
        return Err(GeometryError::Tile { h, len: 1.0 / 3.0, what: "annulus hole side" });
    }
    let third = n / 3;
    let mut mask = vec![true; n * n];
    for y in third..2 * third {
        for x in third..2 * third {
            mask[y * n + x] = false;
        }
    }
    finish(h, n, n, Pt::new(0.0, 0.0), mask, HashSet::new(), Some(Pt::new(0.5, h * 0.5)), None)
}

fn rooms_passages(h: f64, s: f64, k_gen: u32) -> Result<GridDomain, GeometryError> {
    if !(s > 1.0) {
        return Err(GeometryError::BadS(s));
    }
    if k_gen < 1 {
        return Err(GeometryError::BadK(k_gen));
    }
    // h must be a dyadic fraction fine enough that room K spans >= 4 cells;
    // this also makes every wall and centering offset lattice-exact.
    let exp = -h.log2();
    let m = exp.round();
    if !(h > 0.0) || (exp - m).abs() > 1e-9 || m < (k_gen + 2) as f64 {
        return Err(GeometryError::TowerResolution { h, k: k_gen });
    }
    let unit = cells_for(1.0, h, "room 0 side")?; // 2^m cells

    let side = |k: u32| unit >> k; // room k side and passage k height, in cells
    let total_ny: usize =
        (0..=k_gen).map(side).sum::<usize>() + (1..=k_gen).map(side).sum::<usize>();
    let nx = unit;
    let mut mask = vec![false; nx * total_ny];
    let mut fill = |rect: CellRect, mask: &mut Vec<bool>| {
        for y in rect.y0..rect.y1 {
            for x in rect.x0..rect.x1 {
                mask[y * nx + x] = true;
            }
        }
    };

    let center_x = nx / 2;
    let mut rooms = Vec::with_capacity(k_gen as usize + 1);
    let mut passages = Vec::with_capacity(k_gen as usize);
    let mut top = total_ny;
    for k in 0..=k_gen {
        if k > 0 {
            // Passage k sits above room k.
            let height = side(k);
            let requested = RoomsMeta::requested_width(s, k);
            let half_cells = ((requested / (2.0 * h)).ceil() as usize).max(2);
            let width_cells = (2 * half_cells).min(side(k));
            let rect = CellRect {
                x0: center_x - width_cells / 2,
                x1: center_x + width_cells / 2,
                y0: top - height,
                y1: top,
            };
            fill(rect, &mut mask);
            passages.push(PassageMeta {
                requested_width: requested,
                width: width_cells as f64 * h,
                rect,
            });
            top -= height;
        }
        let sk = side(k);
        let rect = CellRect {
            x0: center_x - sk / 2,
            x1: center_x + sk / 2,
            y0: top - sk,
            y1: top,
        };
        fill(rect, &mut mask);
        rooms.push(rect);
        top -= sk;
    }
    debug_assert_eq!(top, 0);

    let room0 = rooms[0];
    let center = Pt::new(
        (room0.x0 + room0.x1) as f64 * 0.5 * h,
        (room0.y0 + room0.y1) as f64 * 0.5 * h,
    );
    finish(
        h,
        nx,
        total_ny,
        Pt::new(0.0, 0.0),
        mask,
        HashSet::new(),
        Some(center),
        Some(RoomsMeta { s, k: k_gen, rooms, passages }),
    )
}

impl GridDomain {
    /// Builds a domain from an explicit mask (row 0 = bottom). Blocked edges
    /// are normalized grid-index pairs; `center` snaps to the nearest active
    /// cell center and defaults to the active-set centroid.
    pub fn from_mask(
        h: f64,
        origin: Pt,
        nx: usize,
        mask: Vec<bool>,
        blocked: HashSet<(u32, u32)>,
        center: Option<Pt>,
    ) -> Result<GridDomain, GeometryError> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(GeometryError::BadH(h));
        }
        if nx == 0 || mask.is_empty() || mask.len() % nx != 0 {
            return Err(GeometryError::EmptyMask);
        }
        let ny = mask.len() / nx;
        finish(h, nx, ny, origin, mask, blocked, center, None)
    }

    /// Disk of the given radius centered in its bounding square; cells whose
    /// centers lie strictly inside the circle are active.
    pub fn disk(h: f64, radius: f64) -> Result<GridDomain, GeometryError> {
        let n = cells_for(2.0 * radius, h, "disk bounding box")?;
        let c = radius;
        let mut mask = vec![false; n * n];
        for y in 0..n {
            for x in 0..n {
                let px = (x as f64 + 0.5) * h;
                let py = (y as f64 + 0.5) * h;
                let dx = px - c;
                let dy = py - c;
                if dx * dx + dy * dy < radius * radius {
                    mask[y * n + x] = true;
                }
            }
        }
        GridDomain::from_mask(h, Pt::new(0.0, 0.0), n, mask, HashSet::new(), Some(Pt::new(c, c)))
    }
}

/// Validates the mask and blocked edges, checks connectivity, computes the
/// distance field and snaps the center to an active cell center.
#[allow(clippy::too_many_arguments)]
fn finish(
    h: f64,
    nx: usize,
    ny: usize,
    origin: Pt,
    mask: Vec<bool>,
    blocked: HashSet<(u32, u32)>,
    center_hint: Option<Pt>,
    rooms: Option<RoomsMeta>,
) -> Result<GridDomain, GeometryError> {
    let mut active = Vec::new();
    let mut slot = vec![u32::MAX; nx * ny];
    for (cell, &on) in mask.iter().enumerate() {
        if on {
            slot[cell] = active.len() as u32;
            active.push(cell as u32);
        }
    }
    if active.is_empty() {
        return Err(GeometryError::EmptyMask);
    }
    for &(a, b) in &blocked {
        let (a, b) = (a as usize, b as usize);
        let adjacent = b > a
            && ((b - a == 1 && a % nx + 1 < nx) || b - a == nx)
            && a < mask.len()
            && b < mask.len();
        if !adjacent || !mask[a] || !mask[b] {
            return Err(GeometryError::BadBlockedEdge(a, b));
        }
    }

    let mut dom = GridDomain {
        h,
        nx,
        ny,
        origin,
        mask,
        active,
        slot,
        blocked,
        center: Pt::new(0.0, 0.0),
        dist: Vec::new(),
        rooms,
    };

    let components = super::components::count_components(&dom);
    if components != 1 {
        return Err(GeometryError::Disconnected(components));
    }

    dom.dist = distance::boundary_distance(&dom);

    let hint = center_hint.unwrap_or_else(|| {
        let mut cx = 0.0;
        let mut cy = 0.0;
        for &cell in &dom.active {
            let p = dom.cell_center(cell as usize);
            cx += p.x;
            cy += p.y;
        }
        let n = dom.active.len() as f64;
        Pt::new(cx / n, cy / n)
    });
    dom.center = dom.slot_center(dom.nearest_active_slot(hint));
    Ok(dom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_counts_and_corner_distance() {
        let dom = DomainSpec::UnitSquare { h: 0.25 }.build().unwrap();
        assert_eq!(dom.active_count(), 16);
        let corner = dom.slot_of(dom.cell_index(0, 0)).unwrap();
        assert!((dom.slot_dist(corner) - 0.125).abs() < 1e-12);
    }

    #[test]
    fn unit_square_rejects_bad_h() {
        assert!(DomainSpec::UnitSquare { h: 0.3 }.build().is_err());
        assert!(DomainSpec::UnitSquare { h: -0.25 }.build().is_err());
    }

    #[test]
    fn slit_square_blocks_faces_over_positive_axis() {
        let dom = DomainSpec::SlitSquare { h: 0.25 }.build().unwrap();
        assert_eq!(dom.active_count(), 64);
        // Cells straddling (0,1) x {0} are severed...
        let below = dom.cell_index(5, 3);
        let above = dom.cell_index(5, 4);
        assert!(dom.is_blocked(below, above));
        // ...while cells left of the slit tip stay joined.
        let below = dom.cell_index(2, 3);
        let above = dom.cell_index(2, 4);
        assert!(!dom.is_blocked(below, above));
    }

    #[test]
    fn slit_distance_sees_slit_from_above() {
        let dom = DomainSpec::SlitSquare { h: 0.25 }.build().unwrap();
        // Center (0.625, 0.125): the slit below is the nearest boundary.
        let slot = dom.slot_of(dom.cell_index(6, 4)).unwrap();
        let c = dom.slot_center(slot);
        assert!((c.x - 0.625).abs() < 1e-12 && (c.y - 0.125).abs() < 1e-12);
        assert!((dom.slot_dist(slot) - 0.125).abs() < 1e-12);
    }

    #[test]
    fn slit_distance_half_grid() {
        let dom = DomainSpec::SlitSquare { h: 0.5 }.build().unwrap();
        let slot = dom.slot_of(dom.cell_index(3, 2)).unwrap();
        let c = dom.slot_center(slot);
        assert!((c.x - 0.75).abs() < 1e-12 && (c.y - 0.25).abs() < 1e-12);
        assert!((dom.slot_dist(slot) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn tower_requested_widths_follow_the_formula() {
        // s = 2: 2 * 4^-k / 64 gives 1/32, 1/128, 1/512 for k = 0, 1, 2.
        assert!((RoomsMeta::requested_width(2.0, 0) - 1.0 / 32.0).abs() < 1e-15);
        assert!((RoomsMeta::requested_width(2.0, 1) - 1.0 / 128.0).abs() < 1e-15);
        assert!((RoomsMeta::requested_width(2.0, 2) - 1.0 / 512.0).abs() < 1e-15);

        let dom = DomainSpec::RoomsPassages { h: 1.0 / 16.0, s: 2.0, k: 2 }.build().unwrap();
        let meta = dom.rooms_meta().unwrap();
        assert_eq!(meta.rooms.len(), 3);
        assert_eq!(meta.passages.len(), 2);
        for (i, p) in meta.passages.iter().enumerate() {
            let k = i as u32 + 1;
            assert!((p.requested_width - RoomsMeta::requested_width(2.0, k)).abs() < 1e-15);
            // Rounded width: even cell count, >= 4 cells, <= room width.
            let cells = (p.width / dom.h()).round() as usize;
            assert!(cells >= 4 && cells % 2 == 0);
            assert!(p.width <= 0.5f64.powi(k as i32) + 1e-12);
        }
    }

    #[test]
    fn tower_area_matches_closed_form() {
        let dom = DomainSpec::RoomsPassages { h: 1.0 / 32.0, s: 2.0, k: 3 }.build().unwrap();
        let meta = dom.rooms_meta().unwrap();
        let want = meta.closed_form_area();
        assert!(
            (dom.measure() - want).abs() < 1e-12,
            "measure {} vs closed form {}",
            dom.measure(),
            want
        );
    }

    #[test]
    fn tower_rejects_coarse_h() {
        assert!(matches!(
            DomainSpec::RoomsPassages { h: 1.0 / 8.0, s: 2.0, k: 2 }.build(),
            Err(GeometryError::TowerResolution { .. })
        ));
        assert!(DomainSpec::RoomsPassages { h: 0.1, s: 2.0, k: 1 }.build().is_err());
    }

    #[test]
    fn annulus_has_inactive_core() {
        let dom = DomainSpec::AnnulusTest { h: 1.0 / 12.0 }.build().unwrap();
        assert_eq!(dom.active_count(), 144 - 16);
        assert!(!dom.is_active(dom.cell_index(5, 5)));
        assert!(dom.is_active(dom.cell_index(0, 5)));
    }

    #[test]
    fn unit_square_center_cell_distance() {
        let dom = DomainSpec::UnitSquare { h: 1.0 / 3.0 }.build().unwrap();
        let slot = dom.slot_of(dom.cell_index(1, 1)).unwrap();
        assert!((dom.slot_dist(slot) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn half_grid_square_distance() {
        let dom = DomainSpec::UnitSquare { h: 0.5 }.build().unwrap();
        let slot = dom.slot_of(dom.cell_index(0, 0)).unwrap();
        assert!((dom.slot_dist(slot) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn from_mask_rejects_disconnected() {
        let mask = vec![true, false, true];
        let err = GridDomain::from_mask(1.0, Pt::new(0.0, 0.0), 3, mask, HashSet::new(), None);
        assert!(matches!(err, Err(GeometryError::Disconnected(2))));
    }

    #[test]
    fn from_mask_rejects_bad_blocked_edge() {
        let mask = vec![true, true, true, true];
        let mut blocked = HashSet::new();
        blocked.insert((0u32, 3u32)); // not adjacent
        let err = GridDomain::from_mask(1.0, Pt::new(0.0, 0.0), 2, mask, blocked, None);
        assert!(matches!(err, Err(GeometryError::BadBlockedEdge(0, 3))));
    }

    #[test]
    fn disk_is_roughly_round() {
        let dom = GridDomain::disk(1.0 / 32.0, 0.5).unwrap();
        let count = dom.active_count() as f64;
        let area = count * dom.cell_measure();
        assert!((area - std::f64::consts::PI * 0.25).abs() < 0.01);
    }
}
