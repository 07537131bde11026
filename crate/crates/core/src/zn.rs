//! Arithmetic in `Z_n`, modular arithmetic progressions, families of sets and
//! their cyclic distance multisets.
//!
//! Distances are unordered: a pair `{x, y}` contributes once to
//! `|x - y|_n`, including the antipodal distance `n/2` when `n` is even.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest possible distance, `floor(n/2)`.
    #[inline]
    pub fn max_distance(self) -> u32 {
        self.0 / 2
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.0)) as u32
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl From<Modulus> for u32 {
    fn from(n: Modulus) -> u32 {
        n.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The cyclic norm `|x|_n = min(x mod n, -x mod n)`.
#[inline]
pub fn mod_norm(x: i64, n: Modulus) -> u32 {
    let r = n.reduce(x);
    r.min(n.0 - r)
}

/// Same as [`mod_norm`] for a residue already in `[0, n)`, on raw integers.
#[inline]
pub(crate) fn norm_u32(r: u32, n: u32) -> u32 {
    r.min(n - r)
}

#[inline]
pub fn dist(x: i64, y: i64, n: Modulus) -> u32 {
    mod_norm(x - y, n)
}

/// Inverse of `a` modulo `n`, if `a` is a unit.
pub fn mod_inverse(a: u32, n: u32) -> Option<u32> {
    let n = i64::from(n);
    let e = i64::from(a).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n) as u32)
}

/// The modular progression `AP_n(g, k) = {0, g, 2g, ..., (k-1)g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModularAp {
    n: Modulus,
    g: u32,
    k: u32,
}

impl ModularAp {
    /// Fails unless `1 <= g < n`, `k >= 1` and the `k` terms are distinct,
    /// i.e. `k <= n / gcd(n, g)`.
    pub fn new(n: Modulus, g: u32, k: u32) -> Result<Self> {
        if g == 0 || g >= n.get() {
            return Err(Error::InvalidGenerator { n: n.get(), g });
        }
        let max = n.get() / n.get().gcd(&g);
        if k == 0 || k > max {
            return Err(Error::DegenerateAp {
                n: n.get(),
                g,
                k,
                max,
            });
        }
        Ok(Self { n, g, k })
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn generator(&self) -> u32 {
        self.g
    }

    pub fn len(&self) -> u32 {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Terms in progression order `0, g, 2g, ...` (not sorted).
    pub fn terms(&self) -> impl Iterator<Item = u32> + '_ {
        let n = u64::from(self.n.get());
        let g = u64::from(self.g);
        (0..u64::from(self.k)).map(move |i| (i * g % n) as u32)
    }

    pub fn elements(&self) -> ZSet {
        let mut elements: Vec<u32> = self.terms().collect();
        elements.sort_unstable();
        ZSet {
            n: self.n,
            elements,
        }
    }

    /// Closed form: distance `|jg|_n` collects `k - j` pairs for each
    /// `1 <= j < k`.
    pub fn delta(&self) -> DistanceMultiset {
        let mut out = DistanceMultiset::new(self.n);
        let n = u64::from(self.n.get());
        for j in 1..self.k {
            let r = (u64::from(j) * u64::from(self.g) % n) as u32;
            out.add(norm_u32(r, self.n.get()), self.k - j);
        }
        out
    }

    /// `AP_n(ug, k)`, which equals `u * AP_n(g, k)`.
    pub fn scaled(&self, u: u32) -> Result<Self> {
        let g = (u64::from(u) * u64::from(self.g) % u64::from(self.n.get())) as u32;
        Self::new(self.n, g, self.k)
    }
}

impl fmt::Display for ModularAp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ap({},{})", self.g, self.k)
    }
}

pub fn ap_elements(ap: &ModularAp) -> ZSet {
    ap.elements()
}

pub fn delta_ap(ap: &ModularAp) -> DistanceMultiset {
    ap.delta()
}

/// A subset of `Z_n`, stored sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZSet {
    n: Modulus,
    elements: Vec<u32>,
}

impl ZSet {
    pub fn new(n: Modulus, elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        if let Some(&value) = elements.iter().find(|&&v| v >= n.get()) {
            return Err(Error::ElementOutOfRange { n: n.get(), value });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement { value: w[0] });
        }
        Ok(Self { n, elements })
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn translate(&self, c: i64) -> Self {
        let mut elements: Vec<u32> = self
            .elements
            .iter()
            .map(|&x| self.n.reduce(i64::from(x) + c))
            .collect();
        elements.sort_unstable();
        Self {
            n: self.n,
            elements,
        }
    }

    /// `u * A`; `u` must be a unit for the result to keep its size.
    pub fn scaled(&self, u: u32) -> Result<Self> {
        let n = u64::from(self.n.get());
        Self::new(
            self.n,
            self.elements
                .iter()
                .map(|&x| (u64::from(x) * u64::from(u) % n) as u32),
        )
    }
}

impl fmt::Display for ZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("set{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Brute-force distance multiset over all unordered pairs. This is the
/// reference every faster path is checked against.
pub fn delta_oracle(s: &ZSet) -> DistanceMultiset {
    let mut out = DistanceMultiset::new(s.n);
    let n = s.n.get();
    for (i, &x) in s.elements.iter().enumerate() {
        for &y in &s.elements[i + 1..] {
            out.add(norm_u32(y - x, n), 1);
        }
    }
    out
}

/// Multiplicity of each distance `d` in `{1, ..., floor(n/2)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMultiset {
    n: Modulus,
    // Indexed by distance; slot 0 stays zero.
    counts: Vec<u32>,
}

impl DistanceMultiset {
    pub fn new(n: Modulus) -> Self {
        Self {
            n,
            counts: vec![0; n.max_distance() as usize + 1],
        }
    }

    /// Builds a multiset from `(distance, multiplicity)` pairs, summing repeats.
    pub fn from_pairs(n: Modulus, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut out = Self::new(n);
        for (d, m) in pairs {
            if d == 0 || d > n.max_distance() {
                return Err(Error::ElementOutOfRange {
                    n: n.get(),
                    value: d,
                });
            }
            out.add(d, m);
        }
        Ok(out)
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    #[inline]
    pub(crate) fn add(&mut self, d: u32, m: u32) {
        debug_assert!(d != 0, "distance 0 never arises from distinct points");
        self.counts[d as usize] += m;
    }

    pub fn get(&self, d: u32) -> u32 {
        self.counts.get(d as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(distance, multiplicity)` entries, distances ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(d, &m)| (d as u32, m))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&m| u64::from(m)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&m| m == 0)
    }

    /// Number of distinct distances that occur.
    pub fn support_len(&self) -> usize {
        self.iter().count()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &DistanceMultiset) -> Result<()> {
        if other.n != self.n {
            return Err(Error::MixedModulus {
                expected: self.n.get(),
                found: other.n.get(),
            });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }

    pub fn to_map(&self) -> BTreeMap<u32, u32> {
        self.iter().collect()
    }

    /// Sorted list of the nonzero multiplicities (with repeats).
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self.iter().map(|(_, m)| m).collect();
        m.sort_unstable();
        m
    }

    /// `distance,multiplicity` rows under a header, zero rows omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,multiplicity\n");
        for (d, m) in self.iter() {
            out.push_str(&format!("{d},{m}\n"));
        }
        out
    }
}

impl fmt::Debug for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} {}", self.n, self)
    }
}

/// Exponential notation, e.g. `{1^5, 2^4, 3^6}`.
impl fmt::Display for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}^{m}")?;
        }
        f.write_str("}")
    }
}

/// A family member: an AP (kept symbolic) or an explicit set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Member {
    Ap(ModularAp),
    Set(ZSet),
}

impl Member {
    pub fn modulus(&self) -> Modulus {
        match self {
            Member::Ap(ap) => ap.modulus(),
            Member::Set(s) => s.modulus(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Member::Ap(ap) => ap.len() as usize,
            Member::Set(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_set(&self) -> ZSet {
        match self {
            Member::Ap(ap) => ap.elements(),
            Member::Set(s) => s.clone(),
        }
    }

    pub fn delta(&self) -> DistanceMultiset {
        match self {
            Member::Ap(ap) => ap.delta(),
            Member::Set(s) => delta_oracle(s),
        }
    }

    pub fn scaled(&self, u: u32) -> Result<Self> {
        Ok(match self {
            Member::Ap(ap) => Member::Ap(ap.scaled(u)?),
            Member::Set(s) => Member::Set(s.scaled(u)?),
        })
    }
}

impl From<ModularAp> for Member {
    fn from(ap: ModularAp) -> Self {
        Member::Ap(ap)
    }
}

impl From<ZSet> for Member {
    fn from(s: ZSet) -> Self {
        Member::Set(s)
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Ap(ap) => ap.fmt(f),
            Member::Set(s) => s.fmt(f),
        }
    }
}

/// An ordered list of subsets of a common `Z_n`. Repeated members are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    n: Modulus,
    members: Vec<Member>,
}

impl Family {
    pub fn new(n: Modulus) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    /// Family of `AP_n(g, k)` for each `(g, k)`.
    pub fn from_aps(n: u32, aps: &[(u32, u32)]) -> Result<Self> {
        let n = Modulus::new(n)?;
        let mut f = Self::new(n);
        for &(g, k) in aps {
            f.push(ModularAp::new(n, g, k)?)?;
        }
        Ok(f)
    }

    pub fn push(&mut self, member: impl Into<Member>) -> Result<()> {
        let member = member.into();
        if member.modulus() != self.n {
            return Err(Error::MixedModulus {
                expected: self.n.get(),
                found: member.modulus().get(),
            });
        }
        self.members.push(member);
        Ok(())
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `sum_i C(|A_i|, 2)`.
    pub fn pair_count(&self) -> u64 {
        self.members.iter().map(|m| choose2(m.len() as u64)).sum()
    }

    pub fn scaled(&self, u: u32) -> Result<Self> {
        Ok(Self {
            n: self.n,
            members: self
                .members
                .iter()
                .map(|m| m.scaled(u))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for m in &self.members {
            write!(f, "; {m}")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Pointwise sum of the members' multisets.
pub fn delta_family(f: &Family) -> DistanceMultiset {
    let mut out = DistanceMultiset::new(f.n);
    for m in &f.members {
        match m {
            Member::Ap(ap) => {
                let n = u64::from(f.n.get());
                for j in 1..ap.len() {
                    let r = (u64::from(j) * u64::from(ap.generator()) % n) as u32;
                    out.add(norm_u32(r, f.n.get()), ap.len() - j);
                }
            }
            Member::Set(s) => {
                for (i, &x) in s.elements().iter().enumerate() {
                    for &y in &s.elements()[i + 1..] {
                        out.add(norm_u32(y - x, f.n.get()), 1);
                    }
                }
            }
        }
    }
    out
}

/// Outcome of [`classify_deep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeepVerdict {
    /// Multiplicities are exactly `1, ..., k-1`. `witness[i - 1]` is the
    /// unique distance of multiplicity `i`.
    ErdosDeep {
        k: u32,
        witness: Vec<u32>,
    },
    /// Multiplicities are exactly `lo, ..., hi` with `lo >= 2`, each
    /// realized by a single distance.
    IntervalDeep {
        lo: u32,
        hi: u32,
    },
    NotDeep,
}

impl DeepVerdict {
    pub fn is_erdos_deep(&self) -> bool {
        matches!(self, DeepVerdict::ErdosDeep { .. })
    }
}

impl fmt::Display for DeepVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeepVerdict::ErdosDeep { k, .. } => write!(f, "erdos_deep k={k}"),
            DeepVerdict::IntervalDeep { lo, hi } => write!(f, "interval_deep a={lo} b={hi}"),
            DeepVerdict::NotDeep => f.write_str("not_deep"),
        }
    }
}

/// Classifies a multiset on its own. An empty multiset is `NotDeep`.
pub fn classify_profile(delta: &DistanceMultiset) -> DeepVerdict {
    let mut by_mult: Vec<(u32, u32)> = delta.iter().map(|(d, m)| (m, d)).collect();
    if by_mult.is_empty() {
        return DeepVerdict::NotDeep;
    }
    by_mult.sort_unstable();
    let lo = by_mult[0].0;
    let consecutive = by_mult
        .iter()
        .enumerate()
        .all(|(i, &(m, _))| m == lo + i as u32);
    if !consecutive {
        return DeepVerdict::NotDeep;
    }
    let hi = by_mult[by_mult.len() - 1].0;
    if lo == 1 {
        let k = hi + 1;
        // Sum of 1..k-1 always equals C(k,2) here; kept as a cross-check.
        if choose2(u64::from(k)) != delta.total() {
            return DeepVerdict::NotDeep;
        }
        DeepVerdict::ErdosDeep {
            k,
            witness: by_mult.into_iter().map(|(_, d)| d).collect(),
        }
    } else {
        DeepVerdict::IntervalDeep { lo, hi }
    }
}

/// Erdős-deep / interval-deep / neither. The recovered `k` is checked
/// against `sum C(|A_i|, 2) = C(k, 2)`; a mismatch yields `NotDeep`.
pub fn classify_deep(f: &Family) -> DeepVerdict {
    let delta = delta_family(f);
    let verdict = classify_profile(&delta);
    if let DeepVerdict::ErdosDeep { k, .. } = verdict {
        if choose2(u64::from(k)) != f.pair_count() {
            return DeepVerdict::NotDeep;
        }
    }
    verdict
}

/// Erdős-deep and the occurring distances are `{1, ..., m}`.
pub fn is_winograd_deep(f: &Family) -> Result<bool> {
    if !classify_deep(f).is_erdos_deep() {
        return Err(Error::NotErdosDeep);
    }
    let delta = delta_family(f);
    let contiguous = delta
        .iter()
        .enumerate()
        .all(|(i, (d, _))| d == i as u32 + 1);
    Ok(contiguous)
}

/// Whether `s` is an `(n, |s|, lambda)` difference set, read off its
/// distance multiset. For even `n` the antipodal distance must occur
/// `lambda / 2` times, since each such pair yields the difference `n/2`
/// twice.
pub fn is_difference_set(s: &ZSet, lambda: u32) -> bool {
    let n = s.modulus();
    let delta = delta_oracle(s);
    (1..=n.max_distance()).all(|d| {
        let m = delta.get(d);
        if n.get().is_multiple_of(2) && d == n.get() / 2 {
            2 * m == lambda
        } else {
            m == lambda
        }
    })
}

/// Canonical form of an AP pair: `g1 = 1`, `k1 >= k2`, `g2 <= n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalPair {
    pub n: u32,
    pub g2: u32,
    pub k1: u32,
    pub k2: u32,
}

impl CanonicalPair {
    pub fn family(&self) -> Result<Family> {
        Family::from_aps(self.n, &[(1, self.k1), (self.g2, self.k2)])
    }
}

/// Reduces `{AP_n(g1,k1), AP_n(g2,k2)}` to canonical form: the longer AP
/// first, common factor of `(n, g1, g2)` divided out, then both generators
/// scaled by the inverse of the first. With equal lengths either AP may be
/// scaled to 1 and the smaller resulting `g2` wins. Every step preserves the
/// multiplicity profile.
pub fn normalize_pair(n: u32, g1: u32, k1: u32, g2: u32, k2: u32) -> Result<CanonicalPair> {
    let m = Modulus::new(n)?;
    ModularAp::new(m, g1, k1)?;
    ModularAp::new(m, g2, k2)?;
    let ((g1, k1), (g2, k2)) = if k2 > k1 {
        ((g2, k2), (g1, k1))
    } else {
        ((g1, k1), (g2, k2))
    };
    let c = n.gcd(&g1).gcd(&g2);
    let (n, g1, g2) = (n / c, g1 / c, g2 / c);

    let scale_to_one = |a: u32, b: u32| -> Option<u32> {
        let inv = mod_inverse(a, n)?;
        let r = (u64::from(b) * u64::from(inv) % u64::from(n)) as u32;
        Some(norm_u32(r, n))
    };
    let direct = scale_to_one(g1, g2);
    let swapped = if k1 == k2 { scale_to_one(g2, g1) } else { None };
    let g2 = match (direct, swapped) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => {
            return Err(Error::NotReducible {
                n,
                g1,
                g2,
                gcd: n.gcd(&g1),
            })
        }
    };
    Ok(CanonicalPair { n, g2, k1, k2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn ms(n: u32, pairs: &[(u32, u32)]) -> DistanceMultiset {
        DistanceMultiset::from_pairs(m(n), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn modulus_rejects_small() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(mod_norm(8, m(13)), 5);
        assert_eq!(mod_norm(0, m(13)), 0);
        assert_eq!(mod_norm(9, m(17)), 8);
        assert_eq!(mod_norm(-3, m(6)), 3);
        assert_eq!(mod_norm(-40, m(13)), 1);
    }

    #[test]
    fn dist_examples() {
        assert_eq!(dist(1, 4, m(6)), 3);
        assert_eq!(dist(5, 5, m(9)), 0);
        assert_eq!(dist(0, 4, m(6)), 2);
        assert_eq!(dist(4, 0, m(6)), 2);
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(3, 13), Some(9));
        assert_eq!(mod_inverse(4, 12), None);
        assert_eq!(mod_inverse(1, 2), Some(1));
    }

    #[test]
    fn ap_elements_examples() {
        let ap = ModularAp::new(m(13), 3, 4).unwrap();
        assert_eq!(ap.elements().elements(), &[0, 3, 6, 9]);
        let ap = ModularAp::new(m(13), 7, 1).unwrap();
        assert_eq!(ap.elements().elements(), &[0]);
        let ap = ModularAp::new(m(13), 1, 6).unwrap();
        assert_eq!(ap.elements().elements(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn degenerate_ap() {
        // gcd(12, 4) = 4, so at most 3 distinct terms.
        assert_eq!(
            ModularAp::new(m(12), 4, 4),
            Err(Error::DegenerateAp {
                n: 12,
                g: 4,
                k: 4,
                max: 3
            })
        );
        assert!(ModularAp::new(m(12), 4, 3).is_ok());
        assert!(matches!(
            ModularAp::new(m(12), 0, 3),
            Err(Error::InvalidGenerator { .. })
        ));
        assert!(matches!(
            ModularAp::new(m(12), 12, 3),
            Err(Error::InvalidGenerator { .. })
        ));
    }

    #[test]
    fn zset_validation() {
        assert!(matches!(
            ZSet::new(m(6), [0, 6]),
            Err(Error::ElementOutOfRange { n: 6, value: 6 })
        ));
        assert!(matches!(
            ZSet::new(m(6), [1, 0, 1]),
            Err(Error::DuplicateElement { value: 1 })
        ));
        assert_eq!(ZSet::new(m(6), [4, 0, 2]).unwrap().elements(), &[0, 2, 4]);
    }

    #[test]
    fn oracle_examples() {
        let s = ZSet::new(m(6), [0, 1, 2, 4]).unwrap();
        assert_eq!(delta_oracle(&s), ms(6, &[(1, 2), (2, 3), (3, 1)]));
        assert!(delta_oracle(&ZSet::new(m(6), [0]).unwrap()).is_empty());
        let s = ZSet::new(m(11), [1, 3, 4, 5, 9]).unwrap();
        assert_eq!(
            delta_oracle(&s),
            ms(11, &[(1, 2), (2, 2), (3, 2), (4, 2), (5, 2)])
        );
    }

    #[test]
    fn delta_ap_examples() {
        let a1 = ModularAp::new(m(13), 1, 6).unwrap();
        assert_eq!(
            a1.delta(),
            ms(13, &[(1, 5), (2, 4), (3, 3), (4, 2), (5, 1)])
        );
        let a2 = ModularAp::new(m(13), 3, 4).unwrap();
        assert_eq!(a2.delta(), ms(13, &[(3, 3), (6, 2), (4, 1)]));
        let a3 = ModularAp::new(m(20), 13, 2).unwrap();
        assert_eq!(a3.delta(), ms(20, &[(7, 1)]));
    }

    #[test]
    fn delta_family_examples() {
        let f = Family::from_aps(13, &[(1, 6), (3, 4)]).unwrap();
        assert_eq!(
            delta_family(&f),
            ms(13, &[(1, 5), (2, 4), (3, 6), (4, 3), (5, 1), (6, 2)])
        );
        let f = Family::from_aps(19, &[(1, 7), (4, 6)]).unwrap();
        assert_eq!(
            delta_family(&f),
            ms(
                19,
                &[
                    (1, 7),
                    (2, 5),
                    (3, 6),
                    (4, 8),
                    (5, 2),
                    (6, 1),
                    (7, 3),
                    (8, 4)
                ]
            )
        );
        let mut f = Family::new(m(7));
        f.push(ZSet::new(m(7), [0, 1, 2]).unwrap()).unwrap();
        f.push(ZSet::new(m(7), [0, 2, 4]).unwrap()).unwrap();
        assert_eq!(delta_family(&f), ms(7, &[(1, 2), (2, 3), (3, 1)]));
    }

    #[test]
    fn mixed_modulus_rejected() {
        let mut f = Family::new(m(7));
        let err = f.push(ModularAp::new(m(8), 1, 3).unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::MixedModulus {
                expected: 7,
                found: 8
            }
        );
        let mut a = DistanceMultiset::new(m(7));
        assert!(a.merge(&DistanceMultiset::new(m(9))).is_err());
    }

    #[test]
    fn classify_examples() {
        let f = Family::from_aps(31, &[(1, 11), (13, 9)]).unwrap();
        match classify_deep(&f) {
            DeepVerdict::ErdosDeep { k, witness } => {
                assert_eq!(k, 14);
                assert_eq!(witness.len(), 13);
            }
            v => panic!("expected Erdős-deep, got {v:?}"),
        }
        let f = Family::from_aps(6, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(classify_deep(&f), DeepVerdict::NotDeep);
        let f = Family::from_aps(29, &[(1, 14), (4, 5), (12, 3)]).unwrap();
        assert_eq!(
            classify_deep(&f),
            DeepVerdict::IntervalDeep { lo: 2, hi: 14 }
        );
    }

    #[test]
    fn classify_witness_maps_multiplicity_to_distance() {
        let f = Family::from_aps(13, &[(1, 6), (3, 4)]).unwrap();
        // {1^5, 2^4, 3^6, 4^3, 5^1, 6^2}
        assert_eq!(
            classify_deep(&f),
            DeepVerdict::ErdosDeep {
                k: 7,
                witness: vec![5, 6, 4, 2, 1, 3]
            }
        );
    }

    #[test]
    fn empty_profile_is_not_deep() {
        assert_eq!(classify_deep(&Family::new(m(9))), DeepVerdict::NotDeep);
        let f = Family::from_aps(9, &[(2, 1), (4, 1)]).unwrap();
        assert_eq!(classify_deep(&f), DeepVerdict::NotDeep);
    }

    #[test]
    fn single_pair_is_erdos_deep_with_k2() {
        let f = Family::from_aps(9, &[(4, 2)]).unwrap();
        assert_eq!(
            classify_deep(&f),
            DeepVerdict::ErdosDeep {
                k: 2,
                witness: vec![4]
            }
        );
    }

    #[test]
    fn winograd() {
        let sq = |n| Family::from_aps(n, &[(1, 4), (1, 3), (4, 3), (4, 3)]).unwrap();
        assert_eq!(is_winograd_deep(&sq(13)), Ok(true));
        assert_eq!(is_winograd_deep(&sq(14)), Ok(false));
        for (n, k) in [(20, 5), (20, 11), (9, 5)] {
            let f = Family::from_aps(n, &[(1, k)]).unwrap();
            assert_eq!(is_winograd_deep(&f), Ok(true), "n={n} k={k}");
        }
        let f = Family::from_aps(6, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(is_winograd_deep(&f), Err(Error::NotErdosDeep));
    }

    #[test]
    fn difference_sets() {
        let s = ZSet::new(m(11), [1, 3, 4, 5, 9]).unwrap();
        assert!(is_difference_set(&s, 2));
        assert!(!is_difference_set(&s, 1));
        assert!(!is_difference_set(&ZSet::new(m(5), [0, 1]).unwrap(), 1));
        assert!(is_difference_set(&ZSet::new(m(7), 0..7).unwrap(), 7));
        // {0,1,3} is a (7,3,1) difference set.
        assert!(is_difference_set(&ZSet::new(m(7), [0, 1, 3]).unwrap(), 1));
        // Even modulus: all of Z_4 has every nonzero difference 4 times.
        assert!(is_difference_set(&ZSet::new(m(4), 0..4).unwrap(), 4));
        assert!(!is_difference_set(&ZSet::new(m(4), 0..4).unwrap(), 2));
    }

    #[test]
    fn normalize_examples() {
        let c = normalize_pair(26, 2, 6, 6, 4).unwrap();
        assert_eq!(
            c,
            CanonicalPair {
                n: 13,
                g2: 3,
                k1: 6,
                k2: 4
            }
        );
        let before = Family::from_aps(26, &[(2, 6), (6, 4)]).unwrap();
        assert_eq!(
            delta_family(&before).multiplicities(),
            delta_family(&c.family().unwrap()).multiplicities()
        );
        assert_eq!(
            normalize_pair(13, 1, 6, 3, 4).unwrap(),
            CanonicalPair {
                n: 13,
                g2: 3,
                k1: 6,
                k2: 4
            }
        );
        assert_eq!(
            normalize_pair(19, 4, 6, 1, 7).unwrap(),
            CanonicalPair {
                n: 19,
                g2: 4,
                k1: 7,
                k2: 6
            }
        );
        // Negated generator folds onto the norm.
        assert_eq!(normalize_pair(13, 1, 6, 10, 4).unwrap().g2, 3);
        // 3^{-1} = 9 mod 13, so g2 becomes |1 * 9|_13 = 4.
        assert_eq!(normalize_pair(13, 3, 6, 1, 4).unwrap().g2, 4);
    }

    #[test]
    fn normalize_equal_lengths_picks_smaller() {
        // Z_31: |5 * 2^{-1}| = |5 * 16| = 13, |2 * 5^{-1}| = |2 * 25| = 12.
        let c = normalize_pair(31, 2, 5, 5, 5).unwrap();
        assert_eq!(
            c,
            CanonicalPair {
                n: 31,
                g2: 12,
                k1: 5,
                k2: 5
            }
        );
    }

    #[test]
    fn normalize_not_reducible() {
        // gcd(12, 2, 3) = 1 but 2 is not a unit mod 12 and k1 != k2.
        assert_eq!(
            normalize_pair(12, 2, 5, 3, 4),
            Err(Error::NotReducible {
                n: 12,
                g1: 2,
                g2: 3,
                gcd: 2
            })
        );
    }

    #[test]
    fn display_formats() {
        let f = Family::from_aps(13, &[(1, 6), (3, 4)]).unwrap();
        assert_eq!(f.to_string(), "n=13; ap(1,6); ap(3,4)");
        let d = delta_family(&f);
        assert_eq!(d.to_string(), "{1^5, 2^4, 3^6, 4^3, 5^1, 6^2}");
        assert_eq!(
            d.to_csv(),
            "distance,multiplicity\n1,5\n2,4\n3,6\n4,3\n5,1\n6,2\n"
        );
    }
}
