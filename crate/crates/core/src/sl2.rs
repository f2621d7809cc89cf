//! The SL(2,Z) action on origamis.
//!
//! Generators act on gluing pairs as
//!
//! * `T = [[1,1],[0,1]]`: `(h, v) ↦ (h, v∘h⁻¹)` (horizontal shear),
//! * `S = [[0,-1],[1,0]]`: `(h, v) ↦ (v⁻¹, h)` (rotation by a quarter turn).
//!
//! Both are realised geometrically: after the action the square labelled
//! `i` sits on the same horizontal segment (for `T`) that the bottom edge
//! of old square `i` occupied, so `T` keeps every horizontal cylinder and
//! `S` turns vertical cylinders into horizontal ones. An arbitrary matrix
//! is factored into these generators by the Euclidean algorithm.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::OrigamiError;
use crate::origami::{Origami, StratumSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2Z {
    pub const IDENTITY: Matrix2Z = Matrix2Z {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const T: Matrix2Z = Matrix2Z {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const S: Matrix2Z = Matrix2Z {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    /// Checked constructor; the determinant must be 1.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, OrigamiError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(OrigamiError::NotUnimodular { a, b, c, d, det });
        }
        Ok(Matrix2Z { a, b, c, d })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Matrix2Z) -> Matrix2Z {
        Matrix2Z {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Matrix2Z {
        Matrix2Z {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }
}

/// Serialized as `[[a,b],[c,d]]`.
impl fmt::Display for Matrix2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    TInv,
    S,
    SInv,
}

impl Generator {
    pub fn matrix(self) -> Matrix2Z {
        match self {
            Generator::T => Matrix2Z::T,
            Generator::TInv => Matrix2Z::T.inverse(),
            Generator::S => Matrix2Z::S,
            Generator::SInv => Matrix2Z::S.inverse(),
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
            Generator::S => Generator::SInv,
            Generator::SInv => Generator::S,
        }
    }

    pub fn act(self, o: &Origami) -> Origami {
        match self {
            Generator::T => apply_t(o),
            Generator::TInv => apply_t_inv(o),
            Generator::S => apply_s(o),
            Generator::SInv => apply_s_inv(o),
        }
    }
}

/// A product `g₁ g₂ ⋯ gₖ` of generators, written left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn matrix(&self) -> Matrix2Z {
        self.0
            .iter()
            .fold(Matrix2Z::IDENTITY, |m, g| m.mul(&g.matrix()))
    }

    /// Acts by the product: the rightmost generator is applied first.
    pub fn act(&self, o: &Origami) -> Origami {
        self.0.iter().rev().fold(o.clone(), |acc, g| g.act(&acc))
    }

    /// Factors a unimodular matrix by running Euclid on its first column.
    pub fn factor(m: &Matrix2Z) -> Result<Word, OrigamiError> {
        if m.det() != 1 {
            return Err(OrigamiError::NotUnimodular {
                a: m.a,
                b: m.b,
                c: m.c,
                d: m.d,
                det: m.det(),
            });
        }
        // Left multipliers L with L·m = T^k, recorded in application order.
        let mut applied: Vec<Generator> = Vec::new();
        let mut cur = *m;
        let push_power = |applied: &mut Vec<Generator>, k: i64| {
            let g = if k >= 0 {
                Generator::T
            } else {
                Generator::TInv
            };
            applied.extend(std::iter::repeat_n(g, k.unsigned_abs() as usize));
        };
        while cur.c != 0 {
            let q = Integer::div_floor(&cur.a, &cur.c);
            // row1 -= q·row2
            push_power(&mut applied, -q);
            cur = Matrix2Z {
                a: cur.a - q * cur.c,
                b: cur.b - q * cur.d,
                ..cur
            };
            applied.push(Generator::S);
            cur = Matrix2Z::S.mul(&cur);
        }
        if cur.a == -1 {
            applied.push(Generator::S);
            applied.push(Generator::S);
            cur = Matrix2Z::S.mul(&Matrix2Z::S).mul(&cur);
        }
        debug_assert!(cur.a == 1 && cur.c == 0 && cur.d == 1);
        // m = L⁻¹ T^b with L = applied[last]⋯applied[0]
        let mut word: Vec<Generator> = applied.iter().map(|g| g.inverse()).collect();
        push_power(&mut word, cur.b);
        Ok(Word(word))
    }
}

pub fn apply_t(o: &Origami) -> Origami {
    Origami::new_unchecked(o.h().clone(), o.v().compose(&o.h().inverse()))
}

pub fn apply_t_inv(o: &Origami) -> Origami {
    Origami::new_unchecked(o.h().clone(), o.v().compose(o.h()))
}

pub fn apply_s(o: &Origami) -> Origami {
    Origami::new_unchecked(o.v().inverse(), o.h().clone())
}

pub fn apply_s_inv(o: &Origami) -> Origami {
    Origami::new_unchecked(o.v().clone(), o.h().inverse())
}

pub fn apply_matrix(o: &Origami, m: &Matrix2Z) -> Result<Origami, OrigamiError> {
    Ok(Word::factor(m)?.act(o))
}

/// An unoriented primitive direction, normalized so that `dx > 0`, or
/// `(dx, dy) = (0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    dx: i64,
    dy: i64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { dx: 1, dy: 0 };
    pub const VERTICAL: Direction = Direction { dx: 0, dy: 1 };

    /// Reduces by the gcd and fixes the sign.
    pub fn new(dx: i64, dy: i64) -> Result<Direction, OrigamiError> {
        if dx == 0 && dy == 0 {
            return Err(OrigamiError::InvalidDirection(dx, dy));
        }
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / g, dy / g);
        if dx < 0 || (dx == 0 && dy < 0) {
            dx = -dx;
            dy = -dy;
        }
        Ok(Direction { dx, dy })
    }

    pub fn dx(&self) -> i64 {
        self.dx
    }

    pub fn dy(&self) -> i64 {
        self.dy
    }

    /// `dx² + dy²`, the squared length of the primitive vector.
    pub fn norm2(&self) -> i64 {
        self.dx * self.dx + self.dy * self.dy
    }

    /// All normalized directions with `|dx|, |dy| ≤ max_norm`, horizontal
    /// and vertical first, then by increasing `max(|dx|,|dy|)`.
    pub fn all_within(max_norm: u32) -> Vec<Direction> {
        let m = max_norm as i64;
        let mut out = Vec::new();
        for dx in 0..=m {
            for dy in -m..=m {
                if dx.gcd(&dy) != 1 || (dx == 0 && dy != 1) {
                    continue;
                }
                out.push(Direction { dx, dy });
            }
        }
        out.sort_by_key(|d| {
            let class = match (d.dx, d.dy) {
                (1, 0) => 0,
                (0, 1) => 1,
                _ => 2,
            };
            (class, d.dx.max(d.dy.abs()), d.dx, d.dy)
        });
        out
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// A matrix sending `(dx, dy)` to `(1, 0)`: `[[x, y], [-dy, dx]]` with
/// `x·dx + y·dy = 1`, choosing `0 < x ≤ |dy|` (and the identity for the
/// horizontal direction).
pub fn direction_matrix(d: Direction) -> Matrix2Z {
    let (dx, dy) = (d.dx, d.dy);
    if dy == 0 {
        return Matrix2Z::IDENTITY;
    }
    let eg = dx.extended_gcd(&dy);
    debug_assert_eq!(eg.gcd.abs(), 1);
    // normalize so that x·dx + y·dy = +1
    let (mut x, mut y) = if eg.gcd == 1 {
        (eg.x, eg.y)
    } else {
        (-eg.x, -eg.y)
    };
    // shift along (-dy, dx) until 0 < x ≤ |dy|
    let period = dy.abs();
    let k = (x - 1).div_euclid(period);
    let step = if dy > 0 { 1 } else { -1 };
    x -= k * period;
    y += k * dx * step;
    let m = Matrix2Z {
        a: x,
        b: y,
        c: -dy,
        d: dx,
    };
    debug_assert_eq!(m.det(), 1);
    debug_assert_eq!(m.apply(dx, dy), (1, 0));
    m
}

/// Geodesic time of the point at radius `r` of the Teichmüller disk:
/// `log((1 + r)/(1 − r))`.
pub fn disk_param(r: f64) -> Result<f64, OrigamiError> {
    if !(0.0..1.0).contains(&r) {
        return Err(OrigamiError::OutOfRange(format!(
            "disk radius {r} is outside [0, 1)"
        )));
    }
    Ok(((1.0 + r) / (1.0 - r)).ln())
}

/// An SL(2,Z)-orbit up to isomorphism, members in breadth-first discovery
/// order from the starting surface.
#[derive(Clone, Debug)]
pub struct Orbit {
    members: Vec<Origami>,
    index: HashMap<Origami, usize>,
}

impl Orbit {
    pub fn members(&self) -> &[Origami] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the isomorphism class of `o` lies in the orbit.
    pub fn contains(&self, o: &Origami) -> bool {
        self.index.contains_key(&o.canonical_form())
    }

    /// Members in canonical sorted order.
    pub fn sorted_members(&self) -> Vec<Origami> {
        let mut m = self.members.clone();
        m.sort();
        m
    }

    /// Smallest canonical member; identifies the orbit.
    pub fn min_member(&self) -> &Origami {
        self.members.iter().min().expect("non-empty orbit")
    }
}

/// Breadth-first closure of the canonical form of `o` under `T`, `T⁻¹`, `S`.
pub fn orbit(o: &Origami) -> Orbit {
    let start = o.canonical_form();
    let mut index = HashMap::new();
    index.insert(start.clone(), 0);
    let mut members = vec![start];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = members[i].clone();
        for g in [Generator::T, Generator::TInv, Generator::S] {
            let next = g.act(&cur).canonical_form();
            if !index.contains_key(&next) {
                index.insert(next.clone(), members.len());
                queue.push_back(members.len());
                members.push(next);
            }
        }
    }
    Orbit { members, index }
}

/// An orbit together with the per-orbit property flags.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub orbit: Orbit,
    pub stratum: StratumSignature,
    pub balanced: bool,
    /// `false` for genus one, where the corners criterion is undefined.
    pub corners: bool,
    pub contains_normal: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::examples::*;

    #[test]
    fn generators_fix_the_torus() {
        let t = Origami::torus();
        assert_eq!(apply_t(&t), t);
        assert_eq!(apply_s(&t), t);
        assert_eq!(orbit(&t).len(), 1);
    }

    #[test]
    fn inverse_pairs() {
        let o = o4();
        assert_eq!(apply_t(&apply_t_inv(&o)), o);
        assert_eq!(apply_t_inv(&apply_t(&o)), o);
        assert_eq!(apply_s(&apply_s_inv(&o)), o);
        assert_eq!(apply_s_inv(&apply_s(&o)), o);
    }

    #[test]
    fn s_of_o4() {
        let s = apply_s(&o4());
        assert_eq!(s.h().to_string(), "(1 4)");
        assert_eq!(s.v().to_string(), "(1 2 3)");
        assert_eq!(s.vertex_permutation().to_string(), "(1 2 4)");
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&l_shape()).len(), 3);
        assert_eq!(orbit(&eierlegende_wollmilchsau()).len(), 1);
        assert_eq!(orbit(&o4()).len(), 9);
    }

    #[test]
    fn factorization_reproduces_matrix() {
        for &(a, b, c, d) in &[
            (1, 0, 0, 1),
            (2, 1, 1, 1),
            (0, -1, 1, 0),
            (-1, 0, 0, -1),
            (3, -1, -5, 2),
            (5, 7, 2, 3),
            (-7, 3, 2, -1),
            (1, 0, -4, 1),
        ] {
            let m = Matrix2Z::new(a, b, c, d).unwrap();
            assert_eq!(Word::factor(&m).unwrap().matrix(), m, "{m}");
        }
        assert!(matches!(
            Matrix2Z::new(2, 0, 0, 1),
            Err(OrigamiError::NotUnimodular { det: 2, .. })
        ));
        let bad = Matrix2Z {
            a: 1,
            b: 1,
            c: 1,
            d: 1,
        };
        assert!(apply_matrix(&o4(), &bad).is_err());
    }

    #[test]
    fn matrix_action_is_a_homomorphism() {
        let o = l_shape();
        assert_eq!(apply_matrix(&o, &Matrix2Z::IDENTITY).unwrap(), o);
        let ts = Matrix2Z::T.mul(&Matrix2Z::S);
        assert!(apply_matrix(&o, &ts)
            .unwrap()
            .is_isomorphic(&apply_t(&apply_s(&o))));
        // [[2,1],[1,1]] = T·(S⁻¹ T⁻¹ S) and the Euclid word
        let m = Matrix2Z::new(2, 1, 1, 1).unwrap();
        let alt = Word(vec![
            Generator::T,
            Generator::SInv,
            Generator::TInv,
            Generator::S,
        ]);
        assert_eq!(alt.matrix(), m);
        assert!(alt.act(&o).is_isomorphic(&apply_matrix(&o, &m).unwrap()));
    }

    #[test]
    fn direction_matrices() {
        assert_eq!(direction_matrix(Direction::HORIZONTAL), Matrix2Z::IDENTITY);
        assert_eq!(
            direction_matrix(Direction::new(1, 1).unwrap()).to_string(),
            "[[1,0],[-1,1]]"
        );
        assert_eq!(
            direction_matrix(Direction::new(2, 5).unwrap()).to_string(),
            "[[3,-1],[-5,2]]"
        );
        for d in Direction::all_within(6) {
            let m = direction_matrix(d);
            assert_eq!(m.det(), 1);
            assert_eq!(m.apply(d.dx(), d.dy()), (1, 0));
        }
    }

    #[test]
    fn direction_normalization() {
        assert_eq!(
            Direction::new(-2, 4).unwrap(),
            Direction::new(1, -2).unwrap()
        );
        assert_eq!(Direction::new(0, -3).unwrap(), Direction::VERTICAL);
        assert!(Direction::new(0, 0).is_err());
        let dirs = Direction::all_within(1);
        assert_eq!(
            dirs,
            vec![
                Direction::HORIZONTAL,
                Direction::VERTICAL,
                Direction::new(1, -1).unwrap(),
                Direction::new(1, 1).unwrap()
            ]
        );
        assert_eq!(Direction::all_within(3).len(), 16);
    }

    #[test]
    fn disk_param_values() {
        assert_eq!(disk_param(0.0).unwrap(), 0.0);
        assert!((disk_param(0.5).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((disk_param(0.9).unwrap() - 19f64.ln()).abs() < 1e-12);
        assert!(disk_param(1.0).is_err());
        assert!(disk_param(-0.1).is_err());
        assert!(disk_param(f64::NAN).is_err());
    }
}
