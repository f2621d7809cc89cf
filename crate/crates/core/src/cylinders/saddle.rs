//! Horizontal saddle connections and their length ratios.

use num_rational::Ratio;

use super::reduce_to_horizontal;
use crate::error::OrigamiError;
use crate::origami::Origami;
use crate::sl2::Direction;

/// Lengths (in unit squares) of the horizontal saddle connections.
///
/// Every horizontal edge is the bottom edge of exactly one square, so the
/// saddle connections are the gaps between consecutive singular corners
/// along the bottom circle of each row. Rows whose bottom circle carries no
/// cone point contribute nothing.
pub fn horizontal_saddle_connections(o: &Origami) -> Result<Vec<u64>, OrigamiError> {
    let singular = o.singular_corners();
    if !singular.iter().any(|&s| s) {
        return Err(OrigamiError::GenusTooSmall { genus: o.genus() });
    }
    let mut lengths = Vec::new();
    for row in o.h().cycles() {
        let marks: Vec<usize> = (0..row.len()).filter(|&k| singular[row[k]]).collect();
        for (i, &k) in marks.iter().enumerate() {
            let next = marks[(i + 1) % marks.len()];
            let gap = if next > k {
                next - k
            } else {
                next + row.len() - k
            };
            lengths.push(gap as u64);
        }
    }
    Ok(lengths)
}

/// Largest ratio of two parallel saddle connection lengths over all
/// directions with `|dx|, |dy| ≤ max_norm`; a lower estimate of the
/// constant bounding such ratios on a Veech surface.
pub fn saddle_ratio(o: &Origami, max_norm: u32) -> Result<Ratio<u64>, OrigamiError> {
    let mut best = Ratio::from_integer(1u64);
    for d in Direction::all_within(max_norm) {
        let lengths = horizontal_saddle_connections(&reduce_to_horizontal(o, d))?;
        let max = *lengths
            .iter()
            .max()
            .expect("a cone point yields a saddle connection");
        let min = *lengths.iter().min().expect("non-empty");
        best = best.max(Ratio::new(max, min));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::examples::*;

    #[test]
    fn l_shape_connections() {
        let mut l = horizontal_saddle_connections(&l_shape()).unwrap();
        l.sort_unstable();
        assert_eq!(l, vec![1, 1, 1]);
    }

    #[test]
    fn o4_connections_cover_singular_rows() {
        let o = o4();
        let l = horizontal_saddle_connections(&o).unwrap();
        assert!(l.iter().all(|&x| x >= 1));
        // both rows (1 2 3) and (4) carry cone points
        assert_eq!(l.iter().sum::<u64>(), 4);
        let mut sorted = l.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2]);
    }

    #[test]
    fn torus_has_none() {
        assert!(matches!(
            horizontal_saddle_connections(&Origami::torus()),
            Err(OrigamiError::GenusTooSmall { genus: 1 })
        ));
    }

    #[test]
    fn ratios() {
        assert_eq!(saddle_ratio(&l_shape(), 1).unwrap(), Ratio::from_integer(1));
        assert_eq!(
            saddle_ratio(&eierlegende_wollmilchsau(), 1).unwrap(),
            Ratio::from_integer(1)
        );
        let o = o4();
        let mut prev = Ratio::from_integer(1);
        for m in 1..=4 {
            let r = saddle_ratio(&o, m).unwrap();
            assert!(r >= prev);
            prev = r;
        }
        assert!(saddle_ratio(&Origami::torus(), 1).is_err());
    }
}
