//! Cylinder decomposition by direct simulation of the straight-line flow.
//!
//! This path never touches the SL(2,Z) machinery and serves as a test
//! oracle for [`super::cylinders_in_direction`].
//!
//! For a direction `(a, b)` with `b > 0` the flow is followed from one
//! bottom edge to the next, one unit of height at a time. Positions on a
//! bottom edge are integers in units of `1/(2b)`: trajectories through
//! corners cross bottom edges only at multiples of `1/b` (even positions,
//! the breakpoints), so each bottom edge splits into `b` cells whose
//! midpoints (odd positions) lie on closed regular trajectories. Cells on
//! the same trajectory share a cylinder, as do the two cells beside a
//! breakpoint whose trajectory meets no cone point. The horizontal
//! direction is handled with the roles of `h` and `v` exchanged, using left
//! edges as the transversal.

use super::{Cylinder, CylinderDecomposition};
use crate::origami::Origami;
use crate::sl2::Direction;

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Flow from one transversal edge to the next in direction `(a, b)`, `b > 0`.
struct Flow<'a> {
    /// `across(s)` is the square beyond the side crossed when `a > 0`.
    across: &'a dyn Fn(usize) -> usize,
    across_inv: &'a dyn Fn(usize) -> usize,
    /// Square beyond the transversal edge opposite to `s`'s own.
    onward: &'a dyn Fn(usize) -> usize,
    a: i64,
    b: i64,
}

impl Flow<'_> {
    /// Positions are in units of `1/(2b)`, in `0..2b`.
    fn step(&self, s: usize, p: i64) -> (usize, i64) {
        let span = 2 * self.b;
        let target = p + 2 * self.a;
        let shift = target.div_euclid(span);
        let mut sq = s;
        if shift >= 0 {
            for _ in 0..shift {
                sq = (self.across)(sq);
            }
        } else {
            for _ in 0..(-shift) {
                sq = (self.across_inv)(sq);
            }
        }
        ((self.onward)(sq), target.rem_euclid(span))
    }
}

pub fn trace_direction_oracle(o: &Origami, d: Direction) -> CylinderDecomposition {
    let singular = o.singular_corners();
    let right = |s: usize| o.right(s);
    let left = |s: usize| o.left(s);
    let up = |s: usize| o.up(s);
    let down = |s: usize| o.down(s);

    let cylinders = if d == Direction::HORIZONTAL {
        // Left edges as transversal: moving right crosses the next left edge;
        // the "sideways" neighbour along a left edge is the square above.
        let flow = Flow {
            across: &up,
            across_inv: &down,
            onward: &right,
            a: 0,
            b: 1,
        };
        trace(o.n(), &flow, &singular, d)
    } else {
        let (a, b) = if d.dy() > 0 {
            (d.dx(), d.dy())
        } else {
            (-d.dx(), -d.dy())
        };
        let flow = Flow {
            across: &right,
            across_inv: &left,
            onward: &up,
            a,
            b,
        };
        trace(o.n(), &flow, &singular, d)
    };
    CylinderDecomposition {
        direction: d,
        cylinders,
        reduced_origami: o.clone(),
    }
}

fn trace(n: usize, flow: &Flow<'_>, singular: &[bool], d: Direction) -> Vec<Cylinder> {
    let b = flow.b as usize;
    let cell = |s: usize, k: usize| s * b + k;
    let cells = n * b;
    let mut sets = DisjointSets::new(cells);

    // Closed regular trajectories through cell midpoints.
    let mut cycle_len = vec![0usize; cells];
    let mut seen = vec![false; cells];
    for start in 0..cells {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let (mut s, mut p) = (start / b, 2 * (start % b) as i64 + 1);
        loop {
            let c = cell(s, (p as usize - 1) / 2);
            if seen[c] {
                assert_eq!(c, start, "midpoint flow is not a permutation");
                break;
            }
            seen[c] = true;
            members.push(c);
            (s, p) = flow.step(s, p);
        }
        for &c in &members {
            cycle_len[c] = members.len();
            sets.union(start, c);
        }
    }

    // Trajectories through breakpoints: regular unless a cone point is met.
    let mut bp_regular: Vec<Option<bool>> = vec![None; cells];
    for start in 0..cells {
        if bp_regular[start].is_some() {
            continue;
        }
        let mut members = Vec::new();
        let mut hits_cone_point = false;
        let (mut s, mut p) = (start / b, 2 * (start % b) as i64);
        loop {
            let bp = cell(s, p as usize / 2);
            if !members.is_empty() && bp == start {
                break;
            }
            members.push(bp);
            if p == 0 && singular[s] {
                hits_cone_point = true;
            }
            (s, p) = flow.step(s, p);
        }
        for bp in members {
            bp_regular[bp] = Some(!hits_cone_point);
        }
    }
    for s in 0..n {
        for k in 0..b {
            if bp_regular[cell(s, k)] == Some(true) {
                let before = if k > 0 {
                    cell(s, k - 1)
                } else {
                    cell((flow.across_inv)(s), b - 1)
                };
                sets.union(before, cell(s, k));
            }
        }
    }

    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for c in 0..cells {
        classes.entry(sets.find(c)).or_default().push(c);
    }
    classes
        .into_values()
        .map(|members| {
            let len = cycle_len[members[0]];
            assert!(
                members.iter().all(|&c| cycle_len[c] == len),
                "parallel closed trajectories of one cylinder differ in length"
            );
            // each cell sweeps area 1/b per unit of height
            assert_eq!(len % b, 0, "trajectory does not close after whole periods");
            assert_eq!(members.len() % b, 0, "cylinder area is not an integer");
            let width = (len / b) as u64;
            let area = (members.len() / b) as u64;
            assert_eq!(
                area % width,
                0,
                "cylinder area is not a multiple of its width"
            );
            let mut squares: Vec<usize> = members.iter().map(|&c| c / b).collect();
            squares.dedup();
            Cylinder {
                squares,
                width,
                height: area / width,
                len2_scale: d.norm2(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinders::{cylinders_in_direction, horizontal_cylinders};
    use crate::origami::examples::*;

    #[test]
    fn torus() {
        let d = trace_direction_oracle(&Origami::torus(), Direction::HORIZONTAL);
        assert_eq!(d.width_heights(), vec![(1, 1)]);
        let d = trace_direction_oracle(&Origami::torus(), Direction::new(1, 1).unwrap());
        assert_eq!(d.shapes(), vec![(1, 1, 2)]);
    }

    #[test]
    fn l_shape_horizontal() {
        let o = l_shape();
        assert_eq!(
            trace_direction_oracle(&o, Direction::HORIZONTAL).shapes(),
            horizontal_cylinders(&o).shapes()
        );
    }

    #[test]
    fn o4_diagonal_and_vertical() {
        let o = o4();
        for d in [Direction::new(1, 1).unwrap(), Direction::VERTICAL] {
            assert_eq!(
                trace_direction_oracle(&o, d).shapes(),
                cylinders_in_direction(&o, d).shapes(),
                "{d}"
            );
        }
        assert_eq!(
            trace_direction_oracle(&o, Direction::VERTICAL).width_heights(),
            vec![(1, 2), (2, 1)]
        );
    }

    #[test]
    fn cyl4_merges_across_regular_corners() {
        let d = trace_direction_oracle(&cyl4(), Direction::HORIZONTAL);
        assert_eq!(d.width_heights(), vec![(2, 2)]);
    }
}
