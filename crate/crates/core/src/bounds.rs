//! Parameter arithmetic for Erdős-deep AP pairs and the bounds that cut the
//! pair search down to a finite list of cells.
//!
//! For a pair of lengths `k1 >= k2` with multiplicities `1..k-1`, counting
//! pairs gives `k(k-1) = k1(k1-1) + k2(k2-1)`. Writing `t = k - k1`, the
//! length `k1` is determined by `(t, k2)`, and for `k2 > 3`:
//!
//! * `7t <= 3(k2 - 1)`,
//! * `(k2 - t)^2 / 4 <= n`,
//! * `n < 6 k1` and `n <= 18 k2 + 36`,
//! * `t <= 5 beta - 3/4` with `beta = n / k1`, hence `t <= 29`.

use num_rational::Ratio;
use serde::Serialize;

/// Largest `t = k - k1` any Erdős-deep pair can have.
pub const T_MAX: u32 = 29;

/// One `(t, k2)` cell of the search with its admissible modulus range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParamCell {
    pub t: u32,
    pub k2: u32,
    pub k1: u32,
    pub k: u32,
    pub n_min: u32,
    pub n_max: u32,
}

impl ParamCell {
    /// Upper bound on `beta = n / k1` inside the cell.
    pub fn beta_max(&self) -> Ratio<u64> {
        Ratio::new(u64::from(self.n_max), u64::from(self.k1))
    }

    pub fn n_values(&self) -> std::ops::RangeInclusive<u32> {
        self.n_min..=self.n_max
    }
}

/// `k(k-1) = k1(k1-1) + k2(k2-1)`, exactly.
pub fn triangular_identity(k: u64, k1: u64, k2: u64) -> bool {
    let tri = |x: u64| x * x.saturating_sub(1);
    tri(k) == tri(k1) + tri(k2)
}

/// `k1 = k2(k2-1)/(2t) - (t-1)/2`, returned with `k = k1 + t` when it is an
/// integer with `k1 >= k2`.
pub fn derive_k1_k(t: u32, k2: u32) -> Option<(u32, u32)> {
    if t == 0 {
        return None;
    }
    let (t, k2) = (i64::from(t), i64::from(k2));
    let num = k2 * (k2 - 1) - t * (t - 1);
    if num <= 0 || num % (2 * t) != 0 {
        return None;
    }
    let k1 = num / (2 * t);
    (k1 >= k2).then(|| (k1 as u32, (k1 + t) as u32))
}

/// `t <= 3(k2 - 1) / 7`.
pub fn t_bound_ok(t: u32, k2: u32) -> bool {
    7 * u64::from(t) <= 3 * u64::from(k2).saturating_sub(1)
}

/// `[max(ceil((k2-t)^2/4), k1+1), min(6 k1 - 1, 18 k2 + 36)]`, or `None`
/// when empty. The floor `k1 + 1` keeps `AP_n(1, k1)` from wrapping onto
/// itself.
pub fn n_range(t: u32, k2: u32, k1: u32) -> Option<(u32, u32)> {
    let diff = i64::from(k2) - i64::from(t);
    let sq = (diff * diff) as u64;
    let n_min = sq.div_ceil(4).max(u64::from(k1) + 1);
    let n_max = (6 * u64::from(k1))
        .saturating_sub(1)
        .min(18 * u64::from(k2) + 36);
    (n_min <= n_max).then_some((n_min as u32, n_max as u32))
}

/// `5 beta - 3/4`.
pub fn t_beta_bound(beta: Ratio<i64>) -> Ratio<i64> {
    beta * 5 - Ratio::new(3, 4)
}

/// Every feasible cell with `1 <= t <= t_max` and `k2 >= 4`, sorted by
/// `(t, k2)`. Uses the non-strict `7t <= 3(k2-1)`, so boundary cells are kept.
pub fn enumerate_cells_up_to(t_max: u32) -> Vec<ParamCell> {
    let mut cells = Vec::new();
    for t in 1..=t_max {
        // (k2 - t)^2 <= 72 k2 + 144 fails for good once k2 passes the
        // larger root.
        let mut k2 = 4u32;
        loop {
            let diff = i64::from(k2) - i64::from(t);
            let lhs = diff * diff;
            let rhs = 72 * i64::from(k2) + 144;
            if lhs > rhs {
                if diff > 0 {
                    break;
                }
                k2 += 1;
                continue;
            }
            if t_bound_ok(t, k2) {
                if let Some((k1, k)) = derive_k1_k(t, k2) {
                    if let Some((n_min, n_max)) = n_range(t, k2, k1) {
                        cells.push(ParamCell {
                            t,
                            k2,
                            k1,
                            k,
                            n_min,
                            n_max,
                        });
                    }
                }
            }
            k2 += 1;
        }
    }
    cells
}

pub fn enumerate_cells() -> Vec<ParamCell> {
    enumerate_cells_up_to(T_MAX)
}

/// `t,k2,k1,k,n_min,n_max` rows under a header.
pub fn cells_csv(cells: &[ParamCell]) -> String {
    let mut out = String::from("t,k2,k1,k,n_min,n_max\n");
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.t, c.k2, c.k1, c.k, c.n_min, c.n_max
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_identity_examples() {
        assert!(triangular_identity(7, 6, 4));
        assert!(triangular_identity(9, 0, 9));
        assert!(triangular_identity(9, 9, 1));
        assert!(triangular_identity(14, 11, 9));
        assert!(triangular_identity(9, 7, 6));
        assert!(!triangular_identity(8, 6, 4));
    }

    #[test]
    fn derive_examples() {
        assert_eq!(derive_k1_k(1, 4), Some((6, 7)));
        assert_eq!(derive_k1_k(2, 6), Some((7, 9)));
        assert_eq!(derive_k1_k(3, 9), Some((11, 14)));
        // 20 - 2 = 18 is not divisible by 4.
        assert_eq!(derive_k1_k(2, 5), None);
        // k1 = 3 < k2 = 4.
        assert_eq!(derive_k1_k(2, 4), None);
        assert_eq!(derive_k1_k(0, 4), None);
    }

    #[test]
    fn derive_agrees_with_identity() {
        for t in 1..=40 {
            for k2 in 3..300 {
                if let Some((k1, k)) = derive_k1_k(t, k2) {
                    assert!(triangular_identity(k.into(), k1.into(), k2.into()));
                    assert_eq!(k - k1, t);
                }
            }
        }
    }

    #[test]
    fn t_bound_examples() {
        assert!(t_bound_ok(1, 4));
        assert!(t_bound_ok(3, 8));
        assert!(!t_bound_ok(4, 9));
    }

    #[test]
    fn n_range_examples() {
        assert_eq!(n_range(1, 4, 6), Some((7, 35)));
        assert_eq!(n_range(2, 6, 7), Some((8, 41)));
        assert_eq!(n_range(3, 9, 11), Some((12, 65)));
    }

    #[test]
    fn t_beta_examples() {
        assert_eq!(t_beta_bound(Ratio::from_integer(6)), Ratio::new(117, 4));
        assert_eq!(t_beta_bound(Ratio::new(3, 4)), Ratio::from_integer(3));
        assert_eq!(t_beta_bound(Ratio::from_integer(1)), Ratio::new(17, 4));
        assert_eq!(
            t_beta_bound(Ratio::from_integer(6)).floor(),
            Ratio::from_integer(29)
        );
    }

    #[test]
    fn cells_contain_sporadic_tuples() {
        let cells = enumerate_cells();
        for (t, k2, k1, k) in [(1, 4, 6, 7), (2, 6, 7, 9), (3, 9, 11, 14)] {
            assert!(
                cells
                    .iter()
                    .any(|c| (c.t, c.k2, c.k1, c.k) == (t, k2, k1, k)),
                "missing cell {t},{k2}"
            );
        }
    }

    #[test]
    fn cells_are_bounded_and_sorted() {
        let cells = enumerate_cells();
        assert!(!cells.is_empty());
        for c in &cells {
            assert!(c.k2 <= 222 && c.n_max <= 4032 && c.t <= T_MAX);
            assert!(triangular_identity(c.k.into(), c.k1.into(), c.k2.into()));
            assert!(t_bound_ok(c.t, c.k2));
            let diff = i64::from(c.k2) - i64::from(c.t);
            assert!(diff * diff <= 4 * (18 * i64::from(c.k2) + 36));
            assert!(c.n_min <= c.n_max);
            assert!(c.beta_max() < Ratio::from_integer(6));
        }
        assert!(cells
            .windows(2)
            .all(|w| (w[0].t, w[0].k2) < (w[1].t, w[1].k2)));
        assert_eq!(cells, enumerate_cells());
    }

    #[test]
    fn no_cells_without_t() {
        assert!(enumerate_cells_up_to(0).is_empty());
    }

    #[test]
    fn csv_header() {
        let csv = cells_csv(&enumerate_cells_up_to(1));
        assert!(csv.starts_with("t,k2,k1,k,n_min,n_max\n1,4,6,7,7,35\n"));
    }
}
