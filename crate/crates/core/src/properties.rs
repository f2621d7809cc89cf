//! Decision procedures over SL(2,Z)-orbits: balanced heights, the corners
//! criterion, the Vorobets cylinder and the finiteness bound.
//!
//! Every periodic direction of an origami is the horizontal direction of
//! some orbit member, and rescaling does not change whether heights agree,
//! so quantifiers over periodic directions become finite loops over orbits.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::cylinders::{cylinders_in_direction, horizontal_cylinders, Cylinder};
use crate::error::OrigamiError;
use crate::origami::Origami;
use crate::sl2::{orbit, Direction, Orbit, OrbitRecord};

#[derive(Clone, Debug)]
pub struct BalanceWitness {
    /// Orbit member (canonical form) with unequal horizontal heights.
    pub member: Origami,
    pub first: Cylinder,
    pub second: Cylinder,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub balanced: bool,
    pub witness: Option<BalanceWitness>,
    pub orbit_size: usize,
}

pub fn is_balanced_horizontal(o: &Origami) -> bool {
    horizontal_cylinders(o).has_equal_heights()
}

pub fn has_balanced_heights(o: &Origami) -> BalanceReport {
    balance_over(&orbit(o))
}

/// Checks members in discovery order and reports the first failure.
pub fn balance_over(orbit: &Orbit) -> BalanceReport {
    for member in orbit.members() {
        let dec = horizontal_cylinders(member);
        if let Some((a, b)) = dec.unequal_pair() {
            return BalanceReport {
                balanced: false,
                witness: Some(BalanceWitness {
                    member: member.clone(),
                    first: a.clone(),
                    second: b.clone(),
                }),
                orbit_size: orbit.len(),
            };
        }
    }
    BalanceReport {
        balanced: true,
        witness: None,
        orbit_size: orbit.len(),
    }
}

/// A row of some orbit member whose bottom circle is a closed regular
/// geodesic through tile vertices.
#[derive(Clone, Debug)]
pub struct CornersWitness {
    pub member: Origami,
    /// 0-based squares of the row, in `h` order.
    pub row: Vec<usize>,
}

/// The rows of `o` whose bottom circle carries no cone point.
fn regular_corner_circle(o: &Origami) -> Option<Vec<usize>> {
    let singular = o.singular_corners();
    o.h()
        .cycles()
        .into_iter()
        .find(|row| row.iter().all(|&s| !singular[s]))
}

/// True iff no closed regular geodesic passes through a vertex of the
/// tiling, in any periodic direction.
pub fn corners_property(o: &Origami) -> Result<bool, OrigamiError> {
    Ok(corners_over(&orbit(o))?.is_none())
}

/// `Ok(None)` when the corners criterion holds on the whole orbit,
/// otherwise the first member carrying a fully regular corner circle.
pub fn corners_over(orbit: &Orbit) -> Result<Option<CornersWitness>, OrigamiError> {
    let first = orbit.members().first().expect("non-empty orbit");
    let genus = first.genus();
    if genus < 2 {
        return Err(OrigamiError::GenusTooSmall { genus });
    }
    Ok(orbit.members().iter().find_map(|m| {
        regular_corner_circle(m).map(|row| CornersWitness {
            member: m.clone(),
            row,
        })
    }))
}

impl OrbitRecord {
    /// Evaluates the per-orbit flags once, on the orbit as a whole.
    pub fn evaluate(orbit: Orbit) -> OrbitRecord {
        let rep = orbit.min_member().clone();
        let stratum = rep
            .stratum()
            .expect("valid origami has a consistent stratum");
        let balanced = balance_over(&orbit).balanced;
        let corners = stratum.genus >= 2 && corners_over(&orbit).expect("genus checked").is_none();
        // normality depends only on the monodromy group, an orbit invariant
        let contains_normal = rep.is_normal();
        OrbitRecord {
            orbit,
            stratum,
            balanced,
            corners,
            contains_normal,
        }
    }
}

/// A number `coefficient · 2^exponent`, compared exactly without expanding
/// the power when the exponent is astronomically large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOfTwoMultiple {
    pub coefficient: BigUint,
    pub exponent: BigUint,
}

/// Exponents up to this size are expanded into full integers on request.
const MATERIALIZE_LIMIT: u64 = 1 << 24;

impl PowerOfTwoMultiple {
    fn bits(&self) -> BigUint {
        BigUint::from(self.coefficient.bits()) + &self.exponent
    }

    /// `x ≤ self`, exactly.
    pub fn bounds(&self, x: &BigUint) -> bool {
        if self.coefficient.is_zero() {
            return x.is_zero();
        }
        if self.exponent >= BigUint::from(x.bits()) {
            // self ≥ 2^exponent > x
            return true;
        }
        let e = self
            .exponent
            .to_u64()
            .expect("exponent below a u64 bit count");
        x <= &(&self.coefficient << e)
    }

    /// The full integer, if the exponent is small enough to expand.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let e = self.exponent.to_u64().filter(|&e| e <= MATERIALIZE_LIMIT)?;
        Some(&self.coefficient << e)
    }

    /// Exact decimal digit count when the value can be expanded.
    pub fn decimal_digits(&self) -> Option<usize> {
        self.to_biguint().map(|v| v.to_str_radix(10).len())
    }

    /// `log₁₀` of the value, in floating point.
    pub fn log10(&self) -> f64 {
        let c = self.coefficient.to_f64().unwrap_or(f64::INFINITY).log10();
        let e = self.exponent.to_f64().unwrap_or(f64::INFINITY);
        c + e * std::f64::consts::LOG10_2
    }
}

impl PartialOrd for PowerOfTwoMultiple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PowerOfTwoMultiple {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.coefficient.is_zero(), other.coefficient.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let by_bits = self.bits().cmp(&other.bits());
        if by_bits != Ordering::Equal {
            return by_bits;
        }
        // Same bit length: the exponent gap is below the coefficient sizes.
        let (hi, lo, flip) = if self.exponent >= other.exponent {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let gap = (&hi.exponent - &lo.exponent).to_u64().expect("small gap");
        let ord = (&hi.coefficient << gap).cmp(&lo.coefficient);
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

/// Total multiplicity of the singularities of `q = ω²` in genus `g`.
pub fn m_q(genus: usize) -> usize {
    4 * genus - 4
}

/// `m²·2^(2^(4m+1))` with `m = 4g − 4`: an upper bound on the square count
/// of a minimal balanced origami of genus `g`.
pub fn finiteness_bound(genus: usize) -> Result<PowerOfTwoMultiple, OrigamiError> {
    if genus < 2 {
        return Err(OrigamiError::GenusTooSmall { genus });
    }
    let m = m_q(genus);
    Ok(PowerOfTwoMultiple {
        coefficient: BigUint::from(m * m),
        exponent: BigUint::one() << (4 * m + 1),
    })
}

#[derive(Clone, Debug)]
pub struct VorobetsWitness {
    pub direction: Direction,
    pub cylinder: Cylinder,
    pub m: usize,
    pub n: usize,
}

/// First cylinder with length `ℓ ≤ 2^(2^(4m))·√N` and area `≥ N/m` among
/// directions with `|dx|, |dy| ≤ max_norm`.
///
/// The length test is done on squares, `w²·(dx²+dy²) ≤ 2^(2^(4m+1))·N`.
pub fn vorobets_witness(o: &Origami, max_norm: u32) -> Result<VorobetsWitness, OrigamiError> {
    let genus = o.genus();
    if genus < 2 {
        return Err(OrigamiError::GenusTooSmall { genus });
    }
    let m = m_q(genus);
    let n = o.n();
    let length_sq_bound = PowerOfTwoMultiple {
        coefficient: BigUint::from(n),
        exponent: BigUint::one() << (4 * m + 1),
    };
    for d in Direction::all_within(max_norm) {
        let dec = cylinders_in_direction(o, d);
        for c in dec.cylinders {
            let length_sq = BigUint::from(c.width)
                * BigUint::from(c.width)
                * BigUint::from(c.len2_scale as u64);
            let area_ok = c.area() as u128 * m as u128 >= n as u128;
            if area_ok && length_sq_bound.bounds(&length_sq) {
                return Ok(VorobetsWitness {
                    direction: d,
                    cylinder: c,
                    m,
                    n,
                });
            }
        }
    }
    Err(OrigamiError::NoWitness { max_norm })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionHeights {
    /// Squared geometric heights `height² / (dx² + dy²)`, one per cylinder.
    pub heights_sq: Vec<Ratio<i64>>,
    pub exceeds_one: bool,
}

/// Geometric cylinder heights per direction. Report only: heights stay at
/// most 1 for square-count-minimal surfaces, which is not decided here.
pub fn direction_height_profile(
    o: &Origami,
    max_norm: u32,
) -> BTreeMap<Direction, DirectionHeights> {
    Direction::all_within(max_norm)
        .into_iter()
        .map(|d| {
            let heights_sq: Vec<Ratio<i64>> = cylinders_in_direction(o, d)
                .cylinders
                .iter()
                .map(Cylinder::geometric_height_sq)
                .collect();
            let exceeds_one = heights_sq.iter().any(|h| *h > Ratio::from_integer(1));
            (
                d,
                DirectionHeights {
                    heights_sq,
                    exceeds_one,
                },
            )
        })
        .collect()
}

/// First direction with `|dx|, |dy| ≤ max_norm` whose cylinders do not all
/// share width and height. Deck transformations of a normal origami act
/// transitively on parallel cylinders, so this is `None` for normal ones.
pub fn nonuniform_direction(o: &Origami, max_norm: u32) -> Option<Direction> {
    Direction::all_within(max_norm).into_iter().find(|&d| {
        let dec = cylinders_in_direction(o, d);
        dec.cylinders
            .windows(2)
            .any(|w| (w[0].width, w[0].height) != (w[1].width, w[1].height))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::examples::*;
    use crate::sl2::apply_s;

    #[test]
    fn balanced_horizontal() {
        assert!(is_balanced_horizontal(&Origami::torus()));
        assert!(is_balanced_horizontal(&l_shape()));
        assert!(!is_balanced_horizontal(&apply_s(&o4())));
    }

    #[test]
    fn balance_reports() {
        let ew = has_balanced_heights(&eierlegende_wollmilchsau());
        assert!(ew.balanced && ew.witness.is_none());
        assert_eq!(ew.orbit_size, 1);

        let l = has_balanced_heights(&l_shape());
        assert!(l.balanced);
        assert_eq!(l.orbit_size, 3);

        let r = has_balanced_heights(&o4());
        assert!(!r.balanced);
        let w = r.witness.unwrap();
        assert!(w.member.is_isomorphic(&apply_s(&o4())));
        let mut hs = [w.first.height, w.second.height];
        hs.sort_unstable();
        assert_eq!(hs, [1, 2]);
    }

    #[test]
    fn corners() {
        assert!(corners_property(&l_shape()).unwrap());
        assert!(corners_property(&eierlegende_wollmilchsau()).unwrap());
        assert!(!corners_property(&o4()).unwrap());
        assert!(matches!(
            corners_property(&Origami::torus()),
            Err(OrigamiError::GenusTooSmall { genus: 1 })
        ));
    }

    #[test]
    fn vorobets() {
        let w = vorobets_witness(&l_shape(), 1).unwrap();
        assert_eq!(w.direction, Direction::HORIZONTAL);
        assert_eq!((w.cylinder.width, w.cylinder.area(), w.m), (2, 2, 4));

        let w = vorobets_witness(&eierlegende_wollmilchsau(), 1).unwrap();
        assert_eq!((w.cylinder.width, w.cylinder.area(), w.m), (4, 4, 8));

        assert!(matches!(
            vorobets_witness(&Origami::torus(), 1),
            Err(OrigamiError::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn bound_comparisons() {
        let b = PowerOfTwoMultiple {
            coefficient: BigUint::from(3u32),
            exponent: BigUint::from(4u32),
        };
        assert!(b.bounds(&BigUint::from(48u32)));
        assert!(!b.bounds(&BigUint::from(49u32)));
        let c = PowerOfTwoMultiple {
            coefficient: BigUint::from(6u32),
            exponent: BigUint::from(3u32),
        };
        assert_eq!(b.cmp(&c), Ordering::Equal);
        let d = PowerOfTwoMultiple {
            coefficient: BigUint::from(7u32),
            exponent: BigUint::from(3u32),
        };
        assert!(d > b);
    }

    #[test]
    fn genus_two_bound() {
        let b = finiteness_bound(2).unwrap();
        assert_eq!(b.coefficient, BigUint::from(16u32));
        assert_eq!(b.exponent, BigUint::from(1u32 << 17));
        let v = b.to_biguint().unwrap();
        assert_eq!(v.bits(), (1 << 17) + 5);
        // digit count from the base-10 logarithm, independently of to_string
        let expected =
            (4f64.log10() * 2.0 + (1u64 << 17) as f64 * 2f64.log10()).floor() as usize + 1;
        assert_eq!(b.decimal_digits(), Some(expected));
        assert!(finiteness_bound(1).is_err());
    }

    #[test]
    fn bounds_increase_with_genus() {
        for g in 2..8 {
            assert!(finiteness_bound(g + 1).unwrap() > finiteness_bound(g).unwrap());
        }
        let g3 = finiteness_bound(3).unwrap();
        assert_eq!(g3.coefficient, BigUint::from(64u32));
        assert_eq!(g3.exponent, BigUint::from(1u64 << 33));
        assert!(g3.to_biguint().is_none());
    }

    #[test]
    fn height_profiles() {
        let p = direction_height_profile(&Origami::torus(), 1);
        assert_eq!(
            p[&Direction::HORIZONTAL].heights_sq,
            vec![Ratio::from_integer(1)]
        );
        assert_eq!(
            p[&Direction::VERTICAL].heights_sq,
            vec![Ratio::from_integer(1)]
        );
        assert_eq!(
            p[&Direction::new(1, 1).unwrap()].heights_sq,
            vec![Ratio::new(1, 2)]
        );

        let p = direction_height_profile(&eierlegende_wollmilchsau(), 1);
        assert!(p.values().all(|d| !d.exceeds_one));

        let p = direction_height_profile(&cyl4(), 1);
        assert!(p[&Direction::HORIZONTAL].exceeds_one);
    }

    #[test]
    fn normal_surfaces_are_uniform() {
        assert_eq!(nonuniform_direction(&eierlegende_wollmilchsau(), 3), None);
        assert!(nonuniform_direction(&o4(), 1).is_some());
    }
}
