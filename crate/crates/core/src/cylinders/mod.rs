//! Cylinder decompositions of origamis.
//!
//! Every rational direction on a square-tiled surface is completely
//! periodic. A direction is reduced to the horizontal one by an element of
//! SL(2,Z); horizontal cylinders are then read off the rows (`h`-cycles)
//! of the reduced surface, merging rows across boundary circles that carry
//! no cone point.
//!
//! Geometric lengths are kept exact: a cylinder of combinatorial width `w`
//! and height `h` in direction `(dx, dy)` has circumference `w·√n` and
//! height `h/√n` in the metric of the original surface, with
//! `n = dx² + dy²` stored as `len2_scale`.

mod modulus;
pub mod oracle;
mod saddle;

use num_rational::Ratio;

use crate::origami::Origami;
use crate::sl2::{apply_matrix, apply_s, direction_matrix, Direction};

pub use modulus::{ratio, ray_modulus, ray_modulus_exact, RayModulus};
pub use oracle::trace_direction_oracle;
pub use saddle::{horizontal_saddle_connections, saddle_ratio};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    /// 0-based squares of the surface the cylinder was read from, sorted.
    pub squares: Vec<usize>,
    pub width: u64,
    pub height: u64,
    /// `dx² + dy²` of the direction.
    pub len2_scale: i64,
}

impl Cylinder {
    pub fn area(&self) -> u64 {
        self.width * self.height
    }

    /// Squared circumference `width²·len2_scale`.
    pub fn geometric_length_sq(&self) -> Ratio<i64> {
        Ratio::from_integer((self.width * self.width) as i64 * self.len2_scale)
    }

    /// Squared height `height² / len2_scale`.
    pub fn geometric_height_sq(&self) -> Ratio<i64> {
        Ratio::new((self.height * self.height) as i64, self.len2_scale)
    }

    pub fn geometric_length(&self) -> f64 {
        self.width as f64 * (self.len2_scale as f64).sqrt()
    }

    pub fn geometric_height(&self) -> f64 {
        self.height as f64 / (self.len2_scale as f64).sqrt()
    }

    /// Height over circumference, `height / (width·len2_scale)`.
    pub fn modulus(&self) -> Ratio<i64> {
        Ratio::new(self.height as i64, self.width as i64 * self.len2_scale)
    }

    /// `(width, height, len2_scale)`, which determines all geometric data.
    pub fn shape(&self) -> (u64, u64, i64) {
        (self.width, self.height, self.len2_scale)
    }
}

#[derive(Clone, Debug)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
    /// Orbit member whose horizontal decomposition realizes `direction`.
    pub reduced_origami: Origami,
}

impl CylinderDecomposition {
    /// Sorted multiset of cylinder shapes.
    pub fn shapes(&self) -> Vec<(u64, u64, i64)> {
        let mut s: Vec<_> = self.cylinders.iter().map(Cylinder::shape).collect();
        s.sort_unstable();
        s
    }

    /// Sorted multiset of `(width, height)`.
    pub fn width_heights(&self) -> Vec<(u64, u64)> {
        let mut s: Vec<_> = self.cylinders.iter().map(|c| (c.width, c.height)).collect();
        s.sort_unstable();
        s
    }

    pub fn total_area(&self) -> u64 {
        self.cylinders.iter().map(Cylinder::area).sum()
    }

    pub fn has_equal_heights(&self) -> bool {
        self.cylinders
            .windows(2)
            .all(|w| w[0].height == w[1].height)
    }

    /// A pair of cylinders with different heights, if any.
    pub fn unequal_pair(&self) -> Option<(&Cylinder, &Cylinder)> {
        let first = self.cylinders.first()?;
        self.cylinders
            .iter()
            .find(|c| c.height != first.height)
            .map(|c| (first, c))
    }
}

/// Rows are `h`-cycles. The circle at the bottom of a row is regular when
/// every bottom-left corner on it is; in that case `v⁻¹` maps the row onto a
/// single row of the same length and the two belong to one cylinder.
pub fn horizontal_cylinders(o: &Origami) -> CylinderDecomposition {
    let n = o.n();
    let singular = o.singular_corners();
    let rows = o.h().cycles();
    let mut row_of = vec![0usize; n];
    for (r, row) in rows.iter().enumerate() {
        for &s in row {
            row_of[s] = r;
        }
    }
    let regular_bottom: Vec<bool> = rows
        .iter()
        .map(|row| row.iter().all(|&s| !singular[s]))
        .collect();

    let mut used = vec![false; rows.len()];
    let mut cylinders = Vec::new();
    let grow = |start: usize, used: &mut Vec<bool>| {
        let width = rows[start].len();
        let mut squares = Vec::new();
        let mut height = 0u64;
        let mut r = start;
        loop {
            assert_eq!(
                rows[r].len(),
                width,
                "rows glued across a regular circle have different lengths"
            );
            used[r] = true;
            squares.extend_from_slice(&rows[r]);
            height += 1;
            let above = row_of[o.up(rows[r][0])];
            if !regular_bottom[above] || used[above] {
                break;
            }
            r = above;
        }
        squares.sort_unstable();
        Cylinder {
            squares,
            width: width as u64,
            height,
            len2_scale: 1,
        }
    };
    for (start, &regular) in regular_bottom.iter().enumerate() {
        if !regular {
            cylinders.push(grow(start, &mut used));
        }
    }
    // Without any cone point on a boundary the rows close up into one
    // cylinder (the genus-one case).
    for start in 0..rows.len() {
        if !used[start] {
            cylinders.push(grow(start, &mut used));
        }
    }
    CylinderDecomposition {
        direction: Direction::HORIZONTAL,
        cylinders,
        reduced_origami: o.clone(),
    }
}

/// The orbit member whose horizontal direction is `d` on `o`. The vertical
/// direction goes through `S` directly.
pub fn reduce_to_horizontal(o: &Origami, d: Direction) -> Origami {
    if d == Direction::HORIZONTAL {
        o.clone()
    } else if d == Direction::VERTICAL {
        apply_s(o)
    } else {
        apply_matrix(o, &direction_matrix(d)).expect("direction matrices are unimodular")
    }
}

pub fn cylinders_in_direction(o: &Origami, d: Direction) -> CylinderDecomposition {
    let reduced = reduce_to_horizontal(o, d);
    let mut dec = horizontal_cylinders(&reduced);
    dec.direction = d;
    for c in &mut dec.cylinders {
        c.len2_scale = d.norm2();
    }
    dec
}
