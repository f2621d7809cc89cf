//! Canonical labelling up to simultaneous conjugation.
//!
//! For every base square the surface is relabelled in breadth-first
//! discovery order with moves `[h, v, h⁻¹, v⁻¹]`; the canonical form is the
//! candidate whose `h`-images followed by `v`-images is lexicographically
//! smallest. Candidates are compared while they are being built, so most
//! bases are abandoned after a few squares.

use std::cmp::Ordering;

use super::Origami;
use crate::permutation::Permutation;

const UNSET: u32 = u32::MAX;

struct Labelling {
    h: Vec<u32>,
    v: Vec<u32>,
}

impl Origami {
    pub fn canonical_form(&self) -> Origami {
        let n = self.n();
        let mut best: Option<Labelling> = None;
        let mut label = vec![UNSET; n];
        let mut order = Vec::with_capacity(n);
        let mut cand = Labelling {
            h: vec![0; n],
            v: vec![0; n],
        };
        for base in 0..n {
            if self.label_from(base, &mut label, &mut order, &mut cand, best.as_ref()) {
                best = Some(Labelling {
                    h: cand.h.clone(),
                    v: cand.v.clone(),
                });
            }
        }
        let best = best.expect("at least one square");
        Origami::new_unchecked(
            Permutation::from_images(best.h).expect("relabelled h"),
            Permutation::from_images(best.v).expect("relabelled v"),
        )
    }

    /// Fills `cand` with the labelling rooted at `base`; returns true iff it
    /// is strictly smaller than `best` (or there is no best yet).
    fn label_from(
        &self,
        base: usize,
        label: &mut [u32],
        order: &mut Vec<usize>,
        cand: &mut Labelling,
        best: Option<&Labelling>,
    ) -> bool {
        label.iter_mut().for_each(|l| *l = UNSET);
        order.clear();
        label[base] = 0;
        order.push(base);

        // Equal while no entry has differed from `best` yet.
        let mut state = if best.is_some() {
            Ordering::Equal
        } else {
            Ordering::Less
        };
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            for y in [self.right(x), self.up(x), self.left(x), self.down(x)] {
                if label[y] == UNSET {
                    label[y] = order.len() as u32;
                    order.push(y);
                }
            }
            // h is the first move, so h'(k) is known once x is expanded.
            cand.h[k] = label[self.right(x)];
            if state == Ordering::Equal {
                state = cand.h[k].cmp(&best.unwrap().h[k]);
                if state == Ordering::Greater {
                    return false;
                }
            }
            k += 1;
        }
        for (k, &x) in order.iter().enumerate() {
            cand.v[k] = label[self.up(x)];
            if state == Ordering::Equal {
                state = cand.v[k].cmp(&best.unwrap().v[k]);
                if state == Ordering::Greater {
                    return false;
                }
            }
        }
        state == Ordering::Less
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn torus_is_canonical() {
        assert!(Origami::torus().is_canonical());
    }

    #[test]
    fn l_shape_representative() {
        let c = l_shape().canonical_form();
        assert_eq!(c.h().one_based(), vec![1, 3, 2]);
        assert_eq!(c.v().one_based(), vec![2, 1, 3]);
        let relabelled = Origami::from_cycles(3, &[vec![2, 3]], &[vec![2, 1]]).unwrap();
        assert_eq!(relabelled.canonical_form(), c);
    }

    #[test]
    fn conjugation_invariance() {
        let o = o4();
        let pi = Permutation::from_cycles(4, &[vec![1, 3]]).unwrap();
        assert_eq!(o.relabel(&pi).canonical_form(), o.canonical_form());
        assert!(o.is_isomorphic(&o.relabel(&pi)));
        assert!(!l_shape().is_isomorphic(&o4()));
    }

    #[test]
    fn idempotent() {
        let c = eierlegende_wollmilchsau().canonical_form();
        assert_eq!(c.canonical_form(), c);
    }
}
