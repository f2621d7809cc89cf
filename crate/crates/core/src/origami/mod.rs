//! Square-tiled translation surfaces encoded by a pair of gluing permutations.
//!
//! Square `i` has its right edge glued to the left edge of `h(i)` and its
//! top edge glued to the bottom edge of `v(i)`. Every vertex of the tiling
//! is recorded at the bottom-left corner of the squares lying north-east
//! of it; going once around the vertex clockwise visits those squares in
//! the order given by the vertex permutation `σ = v∘h∘v⁻¹∘h⁻¹`.

mod canonical;
mod holonomy;
mod parse;

use std::fmt;

use crate::error::OrigamiError;
use crate::permutation::Permutation;

pub use holonomy::HermiteForm;

/// A connected square-tiled surface.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

/// Cone-point data of the translation surface and of `q = ω²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct StratumSignature {
    /// Orders of the zeros of ω, sorted ascending.
    pub zero_orders: Vec<usize>,
    pub genus: usize,
    /// Total multiplicity of the singularities of `q`, i.e. `2·Σ zero_orders`.
    pub m_q: usize,
}

impl Origami {
    /// Validates sizes and transitivity of the pair.
    pub fn new(h: Permutation, v: Permutation) -> Result<Self, OrigamiError> {
        if h.len() != v.len() {
            return Err(OrigamiError::SizeMismatch {
                h: h.len(),
                v: v.len(),
            });
        }
        if h.is_empty() {
            return Err(OrigamiError::Empty);
        }
        let o = Origami { h, v };
        let reachable = o.component_of(0);
        if reachable.len() != o.n() {
            return Err(OrigamiError::Intransitive {
                n: o.n(),
                reachable: reachable.into_iter().map(|x| x + 1).collect(),
            });
        }
        Ok(o)
    }

    /// Skips the transitivity check. Callers must guarantee it.
    pub(crate) fn new_unchecked(h: Permutation, v: Permutation) -> Self {
        debug_assert_eq!(h.len(), v.len());
        Origami { h, v }
    }

    /// Convenience constructor from 1-based cycle notation.
    pub fn from_cycles(n: usize, h: &[Vec<usize>], v: &[Vec<usize>]) -> Result<Self, OrigamiError> {
        Origami::new(
            Permutation::from_cycles(n, h)?,
            Permutation::from_cycles(n, v)?,
        )
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        Origami::new_unchecked(Permutation::identity(1), Permutation::identity(1))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    #[inline]
    pub fn right(&self, i: usize) -> usize {
        self.h.apply(i)
    }

    #[inline]
    pub fn left(&self, i: usize) -> usize {
        self.h.apply_inv(i)
    }

    #[inline]
    pub fn up(&self, i: usize) -> usize {
        self.v.apply(i)
    }

    #[inline]
    pub fn down(&self, i: usize) -> usize {
        self.v.apply_inv(i)
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(x) = stack.pop() {
            for y in [self.right(x), self.up(x), self.left(x), self.down(x)] {
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `σ(i) = v(h(v⁻¹(h⁻¹(i))))`. The cycle of σ through `i` lists the
    /// squares whose bottom-left corner is the same vertex as that of `i`.
    pub fn vertex_permutation(&self) -> Permutation {
        let images = (0..self.n())
            .map(|i| self.up(self.right(self.down(self.left(i)))) as u32)
            .collect();
        Permutation::from_images(images).expect("commutator of bijections is a bijection")
    }

    /// `singular[i]` is true when the bottom-left corner of square `i` is a
    /// cone point of angle greater than 2π.
    pub fn singular_corners(&self) -> Vec<bool> {
        (0..self.n())
            .map(|i| self.up(self.right(self.down(self.left(i)))) != i)
            .collect()
    }

    /// Stratum and genus, with the genus computed both from the Euler
    /// characteristic of the tiling and from the degree of the divisor.
    pub fn stratum(&self) -> Result<StratumSignature, OrigamiError> {
        let sigma = self.vertex_permutation();
        let cycles = sigma.cycles();
        let n = self.n();
        let vertices = cycles.len();
        if !(n - vertices).is_multiple_of(2) {
            return Err(OrigamiError::Inconsistent(format!(
                "{n} squares and {vertices} vertices give an odd Euler characteristic"
            )));
        }
        let genus_euler = 1 + (n - vertices) / 2;

        let mut zero_orders: Vec<usize> = cycles
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.len() - 1)
            .collect();
        zero_orders.sort_unstable();
        let degree: usize = zero_orders.iter().sum();
        if !degree.is_multiple_of(2) {
            return Err(OrigamiError::Inconsistent(format!(
                "zero orders {zero_orders:?} have odd total degree"
            )));
        }
        let genus_degree = 1 + degree / 2;
        if genus_euler != genus_degree {
            return Err(OrigamiError::Inconsistent(format!(
                "Euler genus {genus_euler} differs from degree genus {genus_degree}"
            )));
        }
        Ok(StratumSignature {
            zero_orders,
            genus: genus_euler,
            m_q: 2 * degree,
        })
    }

    pub fn genus(&self) -> usize {
        let vertices = self.vertex_permutation().cycles().len();
        1 + (self.n() - vertices) / 2
    }

    /// Simultaneous conjugation: square `i` is renamed `relabel(i)`.
    pub fn relabel(&self, relabel: &Permutation) -> Origami {
        Origami::new_unchecked(self.h.relabel(relabel), self.v.relabel(relabel))
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }

    /// Order test for the monodromy group `⟨h, v⟩`: the covering of the
    /// punctured torus is normal iff the group acts regularly, i.e. has
    /// exactly `n` elements. Stops as soon as `n + 1` elements are found.
    pub fn is_normal(&self) -> bool {
        use std::collections::HashSet;
        let n = self.n();
        let gens = [self.h.images(), self.v.images()];
        let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(n + 1);
        let mut frontier: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if seen.insert(g.to_vec()) {
                frontier.push(g.to_vec());
            }
        }
        if seen.len() > n {
            return false;
        }
        while let Some(elem) = frontier.pop() {
            for g in gens {
                let prod: Vec<u32> = elem.iter().map(|&x| g[x as usize]).collect();
                if !seen.contains(&prod) {
                    seen.insert(prod.clone());
                    if seen.len() > n {
                        return false;
                    }
                    frontier.push(prod);
                }
            }
        }
        seen.len() == n
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami(n={}, h={}, v={})", self.n(), self.h, self.v)
    }
}

/// Serializes in one-line image notation; the inverse of [`Origami::parse`].
impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &Permutation| {
            p.one_based()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "h: {}", join(&self.h))?;
        writeln!(f, "v: {}", join(&self.v))
    }
}

/// Example surfaces used throughout the tests and docs.
pub mod examples {
    use super::Origami;
    use crate::permutation::Permutation;

    /// L-shaped surface with three squares, stratum (2).
    pub fn l_shape() -> Origami {
        Origami::from_cycles(3, &[vec![1, 2]], &[vec![1, 3]]).unwrap()
    }

    /// Four squares, stratum (2), whose orbit contains an unbalanced member.
    pub fn o4() -> Origami {
        Origami::from_cycles(4, &[vec![1, 2, 3]], &[vec![1, 4]]).unwrap()
    }

    /// Genus-one cover whose only horizontal cylinder has width 2 and height 2.
    pub fn cyl4() -> Origami {
        Origami::from_cycles(4, &[vec![1, 2], vec![3, 4]], &[vec![1, 3, 2, 4]]).unwrap()
    }

    /// Regular action of the quaternion group on itself, `h = ·i`, `v = ·j`
    /// (the Eierlegende Wollmilchsau).
    pub fn eierlegende_wollmilchsau() -> Origami {
        // Elements ordered 1, i, j, k, -1, -i, -j, -k; entry (sign, unit).
        const UNITS: [(i8, u8); 8] = [
            (1, 0),
            (1, 1),
            (1, 2),
            (1, 3),
            (-1, 0),
            (-1, 1),
            (-1, 2),
            (-1, 3),
        ];
        // Multiplication table of the units 1, i, j, k: (sign, unit).
        const TABLE: [[(i8, u8); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let index = |(s, u): (i8, u8)| UNITS.iter().position(|&e| e == (s, u)).unwrap() as u32;
        let right_mul = |unit: usize| -> Vec<u32> {
            UNITS
                .iter()
                .map(|&(s, u)| {
                    let (s2, u2) = TABLE[u as usize][unit];
                    index((s * s2, u2))
                })
                .collect()
        };
        Origami::new(
            Permutation::from_images(right_mul(1)).unwrap(),
            Permutation::from_images(right_mul(2)).unwrap(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn vertex_permutation_examples() {
        assert!(Origami::torus().vertex_permutation().is_identity());
        assert_eq!(l_shape().vertex_permutation().to_string(), "(1 3 2)");
        let s = o4().vertex_permutation();
        assert_eq!(s.to_string(), "(1 4 2)");
        assert!(s.fixes(2));
    }

    #[test]
    fn stratum_examples() {
        let t = Origami::torus().stratum().unwrap();
        assert_eq!((t.zero_orders.clone(), t.genus, t.m_q), (vec![], 1, 0));
        let l = l_shape().stratum().unwrap();
        assert_eq!((l.zero_orders.clone(), l.genus, l.m_q), (vec![2], 2, 4));
        let ew = eierlegende_wollmilchsau().stratum().unwrap();
        assert_eq!(
            (ew.zero_orders.clone(), ew.genus, ew.m_q),
            (vec![1, 1, 1, 1], 3, 8)
        );
    }

    #[test]
    fn quaternion_gluings() {
        let ew = eierlegende_wollmilchsau();
        assert_eq!(ew.h().one_based(), vec![2, 5, 8, 3, 6, 1, 4, 7]);
        assert_eq!(ew.v().one_based(), vec![3, 4, 5, 6, 7, 8, 1, 2]);
        assert_eq!(ew.vertex_permutation().to_string(), "(1 5)(2 6)(3 7)(4 8)");
    }

    #[test]
    fn transitivity_is_checked() {
        let err = Origami::from_cycles(4, &[vec![1, 2]], &[vec![3, 4]]).unwrap_err();
        assert!(matches!(err, OrigamiError::Intransitive { n: 4, .. }));
        // v alone is intransitive, the pair is not
        assert!(Origami::from_cycles(2, &[vec![1, 2]], &[]).is_ok());
    }

    #[test]
    fn normality_examples() {
        assert!(Origami::torus().is_normal());
        assert!(eierlegende_wollmilchsau().is_normal());
        assert!(!l_shape().is_normal());
        assert!(!o4().is_normal());
        // any cyclic cover of the torus is normal
        assert!(Origami::from_cycles(5, &[vec![1, 2, 3, 4, 5]], &[])
            .unwrap()
            .is_normal());
    }
}
