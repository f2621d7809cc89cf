//! Lattice of translation vectors of closed loops in the square adjacency graph.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;

use super::Origami;

/// Row-style Hermite normal form of a full-rank sublattice of Z²:
/// rows `(a, b)` and `(0, d)` with `a, d > 0` and `0 ≤ b < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "[[i64; 2]; 2]", from = "[[i64; 2]; 2]")]
pub struct HermiteForm {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl HermiteForm {
    /// HNF of the lattice spanned by `vectors`; `None` if they do not span
    /// a rank-2 lattice.
    pub fn from_generators<I>(vectors: I) -> Option<HermiteForm>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        // first row (a, b) with a ≥ 0; d ≥ 0 generates the second coordinates
        // of lattice vectors with vanishing first coordinate.
        let (mut a, mut b, mut d) = (0i64, 0i64, 0i64);
        for (x, y) in vectors {
            if x == 0 {
                d = d.gcd(&y);
                continue;
            }
            if a == 0 {
                // (a, b) is the zero row; any old b was already folded into d.
                let s = x.signum();
                a = x * s;
                b = y * s;
                continue;
            }
            let eg = a.extended_gcd(&x);
            let g = eg.gcd;
            let (na, nb) = (g, eg.x * b + eg.y * y);
            // combination with vanishing first coordinate
            let zero_y = (x / g) * b - (a / g) * y;
            d = d.gcd(&zero_y);
            a = na;
            b = nb;
        }
        if a == 0 || d == 0 {
            return None;
        }
        Some(HermiteForm {
            a,
            b: b.mod_floor(&d),
            d,
        })
    }

    pub fn determinant(&self) -> i64 {
        self.a * self.d
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [0, self.d]]
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        if x % self.a != 0 {
            return false;
        }
        let k = x / self.a;
        (y - k * self.b) % self.d == 0
    }
}

impl From<HermiteForm> for [[i64; 2]; 2] {
    fn from(h: HermiteForm) -> Self {
        h.rows()
    }
}

impl From<[[i64; 2]; 2]> for HermiteForm {
    fn from(r: [[i64; 2]; 2]) -> Self {
        HermiteForm {
            a: r[0][0],
            b: r[0][1],
            d: r[1][1],
        }
    }
}

impl fmt::Display for HermiteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[0,{}]]", self.a, self.b, self.d)
    }
}

impl Origami {
    pub fn holonomy_lattice(&self) -> HermiteForm {
        self.holonomy_lattice_from(0)
    }

    /// Same lattice, computed from a breadth-first spanning tree rooted at
    /// `root` (0-based).
    pub fn holonomy_lattice_from(&self, root: usize) -> HermiteForm {
        let n = self.n();
        let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
        pos[root] = Some((0, 0));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let (px, py) = pos[x].unwrap();
            for (y, step) in [
                (self.right(x), (1, 0)),
                (self.up(x), (0, 1)),
                (self.left(x), (-1, 0)),
                (self.down(x), (0, -1)),
            ] {
                if pos[y].is_none() {
                    pos[y] = Some((px + step.0, py + step.1));
                    queue.push_back(y);
                }
            }
        }
        let pos: Vec<(i64, i64)> = pos.into_iter().map(|p| p.expect("connected")).collect();
        // Tree edges contribute zero vectors, so every adjacency can be used.
        let loops = (0..n).flat_map(|x| {
            let (px, py) = pos[x];
            let (rx, ry) = pos[self.right(x)];
            let (ux, uy) = pos[self.up(x)];
            [(px + 1 - rx, py - ry), (px - ux, py + 1 - uy)]
        });
        HermiteForm::from_generators(loops).expect("h- and v-cycles give a full-rank lattice")
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::permutation::Permutation;

    #[test]
    fn hnf_of_generators() {
        let h = HermiteForm::from_generators([(2, 0), (0, 1)]).unwrap();
        assert_eq!(h.rows(), [[2, 0], [0, 1]]);
        let h = HermiteForm::from_generators([(2, 2), (2, -2), (4, 0)]).unwrap();
        assert_eq!(h.rows(), [[2, 2], [0, 4]]);
        let h = HermiteForm::from_generators([(3, 1), (0, 0), (-6, 5)]).unwrap();
        // (3,1), (0,7) after elimination
        assert_eq!(h.rows(), [[3, 1], [0, 7]]);
        assert!(HermiteForm::from_generators([(1, 1), (2, 2)]).is_none());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(Origami::torus().holonomy_lattice().rows(), [[1, 0], [0, 1]]);
        let two = Origami::from_cycles(2, &[vec![1, 2]], &[]).unwrap();
        assert_eq!(two.holonomy_lattice().rows(), [[2, 0], [0, 1]]);
        assert_eq!(
            eierlegende_wollmilchsau().holonomy_lattice().rows(),
            [[2, 0], [0, 2]]
        );
        assert_eq!(l_shape().holonomy_lattice().rows(), [[1, 0], [0, 1]]);
    }

    #[test]
    fn independent_of_root_and_labels() {
        let o = o4();
        let base = o.holonomy_lattice();
        for r in 0..o.n() {
            assert_eq!(o.holonomy_lattice_from(r), base);
        }
        let pi = Permutation::from_cycles(4, &[vec![1, 4, 2]]).unwrap();
        assert_eq!(o.relabel(&pi).holonomy_lattice(), base);
    }
}
