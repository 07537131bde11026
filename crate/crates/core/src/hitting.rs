//! How a modular AP meets an interval of `Z_n`: hitting words, their run
//! structure, the ones-to-zeros ratio bound, and the gap set `D(g, k, n)`.
//!
//! Unrolled to the integers, the AP is `0, g, 2g, ...` and the interval
//! lifts to blocks of `len` integers separated by gaps of `n - len`. A block
//! holds `floor(len/g)` or `ceil(len/g)` multiples of `g`, a gap
//! `floor((n-len)/g)` or `ceil((n-len)/g)`. Runs of ones stay inside one
//! block only while every gap holds a multiple (`g <= n - len`), and runs of
//! zeros stay inside one gap only while every block does (`g <= len`).

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::zn::{ModularAp, Modulus};

/// The interval `{start, start + 1, ..., start + len - 1}` of `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalZn {
    n: Modulus,
    start: u32,
    len: u32,
}

impl IntervalZn {
    /// `start` may be any representative; it is reduced mod `n`.
    pub fn new(n: Modulus, start: i64, len: u32) -> Result<Self> {
        if len == 0 || len > n.get() {
            return Err(Error::InvalidInterval { n: n.get(), len });
        }
        Ok(Self {
            n,
            start: n.reduce(start),
            len,
        })
    }

    /// The open ball `{x : |x|_n < r}`, an interval of size `2r - 1`.
    pub fn ball(n: Modulus, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInterval { n: n.get(), len: 0 });
        }
        Self::new(n, -(i64::from(r) - 1), 2 * r - 1)
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let n = self.n.get();
        ((x % n) + n - self.start) % n < self.len
    }
}

/// The two possible counts of multiples of `g` in an interval of `len`
/// consecutive integers: `(floor(len/g), ceil(len/g))`.
pub fn interval_hits(g: u32, len: u32) -> (u32, u32) {
    assert!(g >= 1, "generator must be positive");
    (len / g, len.div_ceil(g))
}

/// A binary word with its alternating run lengths
/// `1^{a_0} 0^{b_0} 1^{a_1} 0^{b_1} ... 1^{a_p} 0^{b_p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HittingSequence {
    word: Vec<bool>,
    runs: Vec<(u32, u32)>,
}

impl HittingSequence {
    /// Run-length decomposes `word`. `a_0` is 0 when the word starts with a
    /// zero and `b_p` is 0 when it ends with a one.
    pub fn from_word(word: Vec<bool>) -> Self {
        let mut runs = Vec::new();
        let mut i = 0;
        while i < word.len() || runs.is_empty() {
            let a = word[i..].iter().take_while(|&&w| w).count();
            i += a;
            let b = word[i..].iter().take_while(|&&w| !w).count();
            i += b;
            runs.push((a as u32, b as u32));
        }
        Self { word, runs }
    }

    pub fn word(&self) -> &[bool] {
        &self.word
    }

    /// `(a_j, b_j)` for `j = 0..=p`.
    pub fn runs(&self) -> &[(u32, u32)] {
        &self.runs
    }

    /// The index `p` of the last run pair.
    pub fn last_run(&self) -> usize {
        self.runs.len() - 1
    }

    pub fn ones(&self) -> u32 {
        self.runs.iter().map(|r| r.0).sum()
    }

    pub fn zeros(&self) -> u32 {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.word.iter().all(|&w| w)
    }

    pub fn to_bit_string(&self) -> String {
        self.word
            .iter()
            .map(|&w| if w { '1' } else { '0' })
            .collect()
    }

    /// `j,a_j,b_j` rows under a header.
    pub fn runs_csv(&self) -> String {
        let mut out = String::from("j,a_j,b_j\n");
        for (j, (a, b)) in self.runs.iter().enumerate() {
            out.push_str(&format!("{j},{a},{b}\n"));
        }
        out
    }
}

/// `w_i = 1` iff `g * i mod n` lies in `iv`, for `i = 0..k`.
pub fn hitting_sequence(ap: &ModularAp, iv: &IntervalZn) -> Result<HittingSequence> {
    if ap.modulus() != iv.modulus() {
        return Err(Error::MixedModulus {
            expected: ap.modulus().get(),
            found: iv.modulus().get(),
        });
    }
    Ok(HittingSequence::from_word(
        ap.terms().map(|x| iv.contains(x)).collect(),
    ))
}

struct RunBounds {
    ones_floor: u32,
    ones_ceil: u32,
    zeros_floor: u32,
    zeros_ceil: u32,
}

impl RunBounds {
    fn new(n: u32, len: u32, g: u32) -> Self {
        let (ones_floor, ones_ceil) = interval_hits(g, len);
        let (zeros_floor, zeros_ceil) = interval_hits(g, n - len);
        Self {
            ones_floor,
            ones_ceil,
            zeros_floor,
            zeros_ceil,
        }
    }

    fn ones_confined(&self) -> bool {
        self.zeros_floor >= 1
    }

    fn zeros_confined(&self) -> bool {
        self.ones_floor >= 1
    }

    fn ones_partial(&self, a: u32) -> bool {
        !self.ones_confined() || a <= self.ones_ceil
    }

    fn ones_full(&self, a: u32) -> bool {
        !self.ones_confined() || a == self.ones_floor || a == self.ones_ceil
    }

    fn zeros_partial(&self, b: u32) -> bool {
        !self.zeros_confined() || b <= self.zeros_ceil
    }

    fn zeros_full(&self, b: u32) -> bool {
        !self.zeros_confined() || b == self.zeros_floor || b == self.zeros_ceil
    }
}

/// Checks the run structure of a hitting word against the block/gap counts.
///
/// Edge runs may be cut short (at most the ceiling); interior runs are
/// complete (floor or ceiling). A constraint on ones is only enforced when
/// `g <= n - len`, and one on zeros only when `g <= len`; outside those
/// ranges neighbouring runs can merge across an empty block or gap.
pub fn validate_runs(hs: &HittingSequence, n: u32, len: u32, g: u32) -> bool {
    if g == 0 || len == 0 || len > n || hs.word.is_empty() {
        return false;
    }
    let runs = &hs.runs;
    let p = runs.len() - 1;
    // Shape: interior runs nonempty, and the runs rebuild the word.
    let shape_ok = runs
        .iter()
        .enumerate()
        .all(|(j, &(a, b))| (j == 0 || a > 0) && (j == p || b > 0))
        && (hs.ones() + hs.zeros()) as usize == hs.word.len();
    if !shape_ok {
        return false;
    }
    let rb = RunBounds::new(n, len, g);
    if p == 0 {
        let (a, b) = runs[0];
        return rb.ones_partial(a) && rb.zeros_partial(b);
    }
    let (a0, b0) = runs[0];
    let first = if a0 == 0 {
        rb.zeros_partial(b0)
    } else {
        rb.ones_partial(a0) && rb.zeros_full(b0)
    };
    let interior = runs[1..p]
        .iter()
        .all(|&(a, b)| rb.ones_full(a) && rb.zeros_full(b));
    let (ap, bp) = runs[p];
    let last = if bp == 0 {
        rb.ones_partial(ap)
    } else {
        rb.ones_full(ap) && rb.zeros_partial(bp)
    };
    first && interior && last
}

/// Upper bound on `ones / zeros` of a hitting word, split by the shape of the
/// word:
///
/// * one pair of runs: `a_0 / b_0` (exact);
/// * `p = 1` and `a_0 = 0`: `ceil(len/g) / b_0`;
/// * `p >= 2` and `a_0 = 0`: `2 ceil(len/g) / floor((n-len)/g)`;
/// * otherwise `(a_0 + ceil(len/g)) / floor((n-len)/g)`.
///
/// For `p >= 1` this needs `g <= n - len`, so that every gap is hit.
pub fn ratio_bound(hs: &HittingSequence, n: u32, len: u32, g: u32) -> Result<Ratio<u64>> {
    if hs.is_all_ones() {
        return Err(Error::AllOnes);
    }
    let runs = &hs.runs;
    let p = runs.len() - 1;
    let (a0, b0) = (u64::from(runs[0].0), u64::from(runs[0].1));
    if p == 0 {
        return Ok(Ratio::new(a0, b0));
    }
    if g == 0 || len > n {
        return Err(Error::PreconditionViolated(format!(
            "need 1 <= g and len <= n, got g={g} len={len} n={n}"
        )));
    }
    let rb = RunBounds::new(n, len, g);
    if !rb.ones_confined() {
        return Err(Error::PreconditionViolated(format!(
            "ratio bound needs g <= n - len, got g={g} n-len={}",
            n - len
        )));
    }
    let ceil_ones = u64::from(rb.ones_ceil);
    let floor_zeros = u64::from(rb.zeros_floor);
    Ok(match (p, a0) {
        (1, 0) => Ratio::new(ceil_ones, b0),
        // Dropping the leading zeros only raises the ratio, and the rest of
        // the word starts with a complete block.
        (_, 0) => Ratio::new(2 * ceil_ones, floor_zeros),
        _ => Ratio::new(a0 + ceil_ones, floor_zeros),
    })
}

/// `D(g, k, n) = { |gx|_n - |gy|_n : 1 <= x, y < k }`, signed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSet {
    pub g: u32,
    pub k: u32,
    pub n: u32,
    pub values: BTreeSet<i64>,
}

impl GapSet {
    /// `|D(g, k, n) ∩ {1, ..., k-1}|`.
    pub fn small_positive_count(&self) -> usize {
        self.values.range(1..i64::from(self.k)).count()
    }

    pub fn small_positive(&self) -> Vec<i64> {
        self.values.range(1..i64::from(self.k)).copied().collect()
    }
}

fn norms(g: u32, k: u32, n: u32) -> Vec<i64> {
    let (g, n64) = (u64::from(g), u64::from(n));
    (1..u64::from(k))
        .map(|x| {
            let r = (g * x % n64) as u32;
            i64::from(r.min(n - r))
        })
        .collect()
}

pub fn gap_set(g: u32, k: u32, n: u32) -> GapSet {
    let ns = norms(g, k, n);
    let values = ns
        .iter()
        .flat_map(|&a| ns.iter().map(move |&b| a - b))
        .collect();
    GapSet { g, k, n, values }
}

fn small_gap_count(g: u32, k: u32, n: u32) -> usize {
    let ns = norms(g, k, n);
    let mut seen = vec![false; k as usize];
    for &a in &ns {
        for &b in &ns {
            let d = a - b;
            if d >= 1 && d < i64::from(k) {
                seen[d as usize] = true;
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Whether `|D(g,k,n) ∩ {1..k-1}| < 2k/3` for `n > 18k`, `1 < g <= n/2`.
/// Outside that region the check is refused rather than failed.
pub fn gap_lemma_check(g: u32, k: u32, n: u32) -> Result<bool> {
    if u64::from(n) <= 18 * u64::from(k) || g <= 1 || g > n / 2 {
        return Err(Error::PreconditionViolated(format!(
            "gap bound needs n > 18k and 1 < g <= n/2, got g={g} k={k} n={n}"
        )));
    }
    Ok(3 * small_gap_count(g, k, n) < 2 * k as usize)
}

/// A point where the `2k/3` gap bound fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapViolation {
    pub g: u32,
    pub k: u32,
    pub n: u32,
    pub count: usize,
}

/// Scans `lo_factor * k < n <= hi_factor * k` (and `1 < g <= n/2`) for
/// violations of the `2k/3` bound, to probe how far below `18k` it holds.
pub fn gap_bound_violations(
    ks: impl IntoIterator<Item = u32>,
    lo_factor: u32,
    hi_factor: u32,
) -> Vec<GapViolation> {
    let mut out = Vec::new();
    for k in ks {
        for n in lo_factor * k + 1..=hi_factor * k {
            for g in 2..=n / 2 {
                let count = small_gap_count(g, k, n);
                if 3 * count >= 2 * k as usize {
                    out.push(GapViolation { g, k, n, count });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn word(s: &str) -> HittingSequence {
        HittingSequence::from_word(s.chars().map(|c| c == '1').collect())
    }

    /// Counts multiples of `g` in `[a, a + len)` directly.
    fn count_multiples(g: u32, a: i64, len: u32) -> u32 {
        (a..a + i64::from(len))
            .filter(|x| x.rem_euclid(i64::from(g)) == 0)
            .count() as u32
    }

    #[test]
    fn interval_hits_matches_enumeration() {
        for (g, len, want) in [(3, 7, (2, 3)), (1, 5, (5, 5)), (10, 5, (0, 1))] {
            assert_eq!(interval_hits(g, len), want);
            let seen: BTreeSet<u32> = (0..i64::from(g) * 2)
                .map(|a| count_multiples(g, a, len))
                .collect();
            let expect: BTreeSet<u32> = [want.0, want.1].into_iter().collect();
            assert_eq!(seen, expect, "g={g} len={len}");
        }
    }

    #[test]
    fn interval_membership_wraps() {
        let iv = IntervalZn::new(m(10), -2, 5).unwrap();
        let members: Vec<u32> = (0..10).filter(|&x| iv.contains(x)).collect();
        assert_eq!(members, vec![0, 1, 2, 8, 9]);
        assert_eq!(IntervalZn::ball(m(10), 3).unwrap(), iv);
        assert!(IntervalZn::new(m(10), 0, 0).is_err());
        assert!(IntervalZn::new(m(10), 0, 11).is_err());
        assert!(IntervalZn::new(m(10), 3, 10).unwrap().contains(2));
    }

    #[test]
    fn hitting_sequence_examples() {
        let ap = ModularAp::new(m(13), 3, 4).unwrap();
        let iv = IntervalZn::new(m(13), 0, 3).unwrap();
        let hs = hitting_sequence(&ap, &iv).unwrap();
        assert_eq!(hs.to_bit_string(), "1000");
        assert_eq!(hs.runs(), &[(1, 3)]);

        let ap = ModularAp::new(m(13), 5, 13).unwrap();
        let full = IntervalZn::new(m(13), 4, 13).unwrap();
        let hs = hitting_sequence(&ap, &full).unwrap();
        assert_eq!(hs.to_bit_string(), "1".repeat(13));
        assert_eq!(hs.runs(), &[(13, 0)]);

        let ap = ModularAp::new(m(19), 4, 6).unwrap();
        let ball = IntervalZn::ball(m(19), 7).unwrap();
        assert_eq!(ball.len(), 13);
        let hs = hitting_sequence(&ap, &ball).unwrap();
        assert_eq!(hs.to_bit_string(), "110011");
        assert_eq!(hs.runs(), &[(2, 2), (2, 0)]);
    }

    #[test]
    fn run_decomposition_edges() {
        assert_eq!(word("000").runs(), &[(0, 3)]);
        assert_eq!(word("111").runs(), &[(3, 0)]);
        assert_eq!(word("0110").runs(), &[(0, 1), (2, 1)]);
        assert_eq!(word("0110").last_run(), 1);
    }

    #[test]
    fn validate_runs_examples() {
        assert!(validate_runs(&word("11111"), 20, 20, 3));
        // len < g: interior ones run of 2 exceeds ceil(3/5) = 1.
        assert!(!validate_runs(&word("11011"), 20, 3, 5));
        let ap = ModularAp::new(m(19), 4, 6).unwrap();
        let ball = IntervalZn::ball(m(19), 7).unwrap();
        let hs = hitting_sequence(&ap, &ball).unwrap();
        assert!(validate_runs(&hs, 19, 13, 4));
    }

    #[test]
    fn literal_run_bounds_need_small_generator() {
        // n = 20, g = 9, I = [0, 4]: the zeros merge across a block that g
        // steps over. Zero runs are only constrained once g <= len.
        let ap = ModularAp::new(m(20), 9, 20).unwrap();
        let iv = IntervalZn::new(m(20), 0, 5).unwrap();
        let hs = hitting_sequence(&ap, &iv).unwrap();
        assert_eq!(hs.runs()[0], (1, 6));
        let (_, ceil_z) = interval_hits(9, 15);
        assert!(hs.runs()[0].1 > ceil_z);
        assert!(validate_runs(&hs, 20, 5, 9));
    }

    #[test]
    fn ratio_bound_cases() {
        assert_eq!(ratio_bound(&word("1110"), 40, 6, 3), Ok(Ratio::new(3, 1)));
        assert_eq!(ratio_bound(&word("111"), 40, 6, 3), Err(Error::AllOnes));
        // p = 1, a_0 = 0: ceil(6/3) / b_0.
        assert_eq!(
            ratio_bound(&word("000110000"), 40, 6, 3),
            Ok(Ratio::new(2, 3))
        );
        // a_0 = 2, p = 1: (2 + 2) / floor(34/3).
        assert_eq!(
            ratio_bound(&word("1100000000000110"), 40, 6, 3),
            Ok(Ratio::new(4, 11))
        );
        assert!(ratio_bound(&word("101"), 10, 9, 3).is_err());
    }

    #[test]
    fn ratio_bound_leading_zero_multi_pass() {
        // Z_40, g = 3, I = [1, 6]: word 0 11 0^11 11. The bound
        // (a_0 + ceil) / floor = 2/11 would sit below the true 4/12.
        let ap = ModularAp::new(m(40), 3, 16).unwrap();
        let iv = IntervalZn::new(m(40), 1, 6).unwrap();
        let hs = hitting_sequence(&ap, &iv).unwrap();
        assert_eq!(hs.runs(), &[(0, 1), (2, 11), (2, 0)]);
        let truth = Ratio::new(u64::from(hs.ones()), u64::from(hs.zeros()));
        assert_eq!(truth, Ratio::new(1, 3));
        let bound = ratio_bound(&hs, 40, 6, 3).unwrap();
        assert!(truth <= bound);
        assert!(Ratio::new(2, 11) < truth);
    }

    #[test]
    fn ratio_bound_is_an_upper_bound() {
        let mut checked = 0;
        for n in 2..=40u32 {
            for g in 1..n {
                let kmax = n / n.gcd(&g);
                let full = ModularAp::new(m(n), g, kmax).unwrap();
                for len in 1..n {
                    for start in 0..i64::from(n) {
                        let iv = IntervalZn::new(m(n), start, len).unwrap();
                        let word = hitting_sequence(&full, &iv).unwrap().word().to_vec();
                        for k in 1..=kmax as usize {
                            let hs = HittingSequence::from_word(word[..k].to_vec());
                            let Ok(bound) = ratio_bound(&hs, n, len, g) else {
                                continue;
                            };
                            let truth = Ratio::new(u64::from(hs.ones()), u64::from(hs.zeros()));
                            assert!(truth <= bound, "n={n} g={g} I=[{start},+{len}) k={k}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn gap_set_examples() {
        assert!(gap_set(7, 5, 100).small_positive().is_empty());
        assert_eq!(gap_set(9, 2, 40).values, [0].into_iter().collect());
        let d = gap_set(1, 8, 30);
        assert_eq!(d.small_positive(), (1..=6).collect::<Vec<i64>>());
    }

    #[test]
    fn gap_set_norm_symmetry() {
        for n in 5..40 {
            for g in 1..n {
                for k in 2..8 {
                    assert_eq!(gap_set(g, k, n).values, gap_set(n - g, k, n).values);
                }
            }
        }
    }

    #[test]
    fn gap_lemma_examples() {
        assert_eq!(gap_lemma_check(2, 5, 100), Ok(true));
        assert_eq!(gap_set(2, 5, 100).small_positive(), vec![2, 4]);
        for k in 4..=10 {
            let n = 18 * k + 2;
            let d = gap_set(n / 2, k, n);
            assert!(d
                .values
                .iter()
                .all(|&v| v == 0 || v.unsigned_abs() == u64::from(n / 2)));
            assert_eq!(gap_lemma_check(n / 2, k, n), Ok(true));
        }
    }

    #[test]
    fn gap_lemma_refuses_outside_region() {
        assert!(matches!(
            gap_lemma_check(2, 5, 90),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(gap_lemma_check(1, 5, 100).is_err());
        assert!(gap_lemma_check(51, 5, 100).is_err());
    }
}
