//! Permutations of `{1..N}`.
//!
//! Squares are 1-indexed in every user-facing format. Internally a
//! permutation stores 0-based images together with its inverse so that
//! `h⁻¹` and `v⁻¹` lookups are O(1) in the hot loops of canonical
//! labelling and orbit search.

use std::fmt;

use crate::error::OrigamiError;

/// A bijection of `{0..n}` (displayed 1-indexed).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
    inverse: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        let images: Vec<u32> = (0..n as u32).collect();
        Permutation {
            inverse: images.clone(),
            images,
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, OrigamiError> {
        let n = images.len();
        let mut inverse = vec![u32::MAX; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(OrigamiError::NotBijective(format!(
                    "image {} of {} is outside 1..={}",
                    x + 1,
                    i + 1,
                    n
                )));
            }
            if inverse[x] != u32::MAX {
                return Err(OrigamiError::NotBijective(format!(
                    "{} is the image of both {} and {}",
                    x + 1,
                    inverse[x] + 1,
                    i + 1
                )));
            }
            inverse[x] = i as u32;
        }
        Ok(Permutation { images, inverse })
    }

    /// Builds a permutation from 1-based images (one-line notation).
    pub fn from_one_based(images: &[usize]) -> Result<Self, OrigamiError> {
        let zero = images
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(OrigamiError::NotBijective("0 is not a square label".into()))
                } else {
                    Ok((x - 1) as u32)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero)
    }

    /// Builds a permutation of `{1..n}` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, OrigamiError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(OrigamiError::NotBijective(format!(
                        "cycle entry {x} is outside 1..={n}"
                    )));
                }
                if touched[x - 1] {
                    return Err(OrigamiError::NotBijective(format!(
                        "{x} appears in more than one cycle position"
                    )));
                }
                touched[x - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(OrigamiError::NotBijective(format!(
                        "cycle entry {next} is outside 1..={n}"
                    )));
                }
                images[x - 1] = (next - 1) as u32;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// Preimage of the 0-based point `i`.
    #[inline]
    pub fn apply_inv(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            images: self.inverse.clone(),
            inverse: self.images.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        let images: Vec<u32> = other
            .images
            .iter()
            .map(|&x| self.images[x as usize])
            .collect();
        let mut inverse = vec![0; images.len()];
        for (i, &x) in images.iter().enumerate() {
            inverse[x as usize] = i as u32;
        }
        Permutation { images, inverse }
    }

    /// Conjugates by a relabelling: the result maps `relabel(i)` to
    /// `relabel(self(i))`.
    pub fn relabel(&self, relabel: &Permutation) -> Permutation {
        let n = self.len();
        let mut images = vec![0u32; n];
        for i in 0..n {
            images[relabel.apply(i)] = relabel.images[self.apply(i)];
        }
        Permutation::from_images(images).expect("conjugate of a bijection is a bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Disjoint cycles (0-based), each starting at its smallest element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Cycle notation with fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_display() {
        let p = Permutation::from_cycles(5, &[vec![1, 3, 2], vec![5, 4]]).unwrap();
        assert_eq!(p.one_based(), vec![3, 1, 2, 5, 4]);
        assert_eq!(p.to_string(), "(1 3 2)(4 5)");
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        // (1 2)∘(2 3): 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        assert_eq!(a.compose(&b).one_based(), vec![2, 3, 1]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(matches!(
            Permutation::from_one_based(&[1, 1]),
            Err(OrigamiError::NotBijective(_))
        ));
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Permutation::from_cycles(2, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn relabel_conjugates() {
        let p = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let pi = Permutation::from_cycles(3, &[vec![1, 3]]).unwrap();
        assert_eq!(p.relabel(&pi).to_string(), "(2 3)");
    }
}
