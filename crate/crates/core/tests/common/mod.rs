#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use origami::{Origami, Permutation};
use proptest::prelude::*;

/// Random connected origamis with 1 to `max_n` squares.
pub fn arb_origami(max_n: usize) -> impl Strategy<Value = Origami> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let ids: Vec<u32> = (0..n as u32).collect();
            (Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
        })
        .prop_filter_map("intransitive pair", |(h, v)| {
            Origami::new(
                Permutation::from_images(h).unwrap(),
                Permutation::from_images(v).unwrap(),
            )
            .ok()
        })
}

pub fn arb_relabeling(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| Permutation::from_images(p).unwrap())
}

/// Every permutation of `0..n` as an image vector, by Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut a: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Lexicographically least `(h, v)` image pair over all `n!` relabelings.
pub fn brute_force_class(h: &[u32], v: &[u32], relabelings: &[Vec<u32>]) -> (Vec<u32>, Vec<u32>) {
    let n = h.len();
    relabelings
        .iter()
        .map(|p| {
            // conjugate: x' = p(x), h'(p(x)) = p(h(x))
            let mut h2 = vec![0; n];
            let mut v2 = vec![0; n];
            for x in 0..n {
                h2[p[x] as usize] = p[h[x] as usize];
                v2[p[x] as usize] = p[v[x] as usize];
            }
            (h2, v2)
        })
        .min()
        .unwrap()
}

pub fn is_transitive(h: &[u32], v: &[u32]) -> bool {
    let n = h.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        let mut nbrs = vec![h[x] as usize, v[x] as usize];
        nbrs.extend((0..n).filter(|&y| h[y] as usize == x || v[y] as usize == x));
        for y in nbrs {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Order of the group generated by `h` and `v`, by closure under
/// right multiplication with the generators.
pub fn group_order(o: &Origami) -> usize {
    let gens = [o.h().images().to_vec(), o.v().images().to_vec()];
    let id: Vec<u32> = (0..o.n() as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let next: Vec<u32> = g.iter().map(|&x| s[x as usize]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// Holonomy lattice read off the lift of the surface to the plane: the
/// points `(x, y)` where copies of square 0 sit form the lattice. With
/// rows `(a, b)`, `(0, d)`: `a` is the least positive `x`, `d` the least
/// positive `y` at `x = 0`, and `b` the least `y ≥ 0` at `x = a`.
pub fn holonomy_by_walks(o: &Origami) -> [[i64; 2]; 2] {
    let n = o.n() as i64;
    let r = 3 * n + 2;
    let mut seen: BTreeSet<(usize, i64, i64)> = BTreeSet::new();
    let mut queue = VecDeque::from([(0usize, 0i64, 0i64)]);
    seen.insert((0, 0, 0));
    while let Some((s, x, y)) = queue.pop_front() {
        for (t, dx, dy) in [
            (o.right(s), 1, 0),
            (o.left(s), -1, 0),
            (o.up(s), 0, 1),
            (o.down(s), 0, -1),
        ] {
            let (nx, ny) = (x + dx, y + dy);
            if nx.abs() <= r && ny.abs() <= r && seen.insert((t, nx, ny)) {
                queue.push_back((t, nx, ny));
            }
        }
    }
    let points: Vec<(i64, i64)> = seen
        .iter()
        .filter(|&&(s, _, _)| s == 0)
        .map(|&(_, x, y)| (x, y))
        .collect();
    let a = points.iter().map(|p| p.0).filter(|&x| x > 0).min().unwrap();
    let d = points
        .iter()
        .filter(|p| p.0 == 0 && p.1 > 0)
        .map(|p| p.1)
        .min()
        .unwrap();
    let b = points
        .iter()
        .filter(|p| p.0 == a && p.1 >= 0)
        .map(|p| p.1)
        .min()
        .unwrap();
    [[a, b], [0, d]]
}
