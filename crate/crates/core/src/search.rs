//! Exhaustive searches for Erdős-deep families of modular APs.
//!
//! [`classify_pairs`] walks every `(cell, n, g2)` left by the pair bounds
//! with `g1 = 1`. [`scan_families`] handles `s` APs inside user bounds.
//! Both count multiplicities incrementally and abandon a candidate as soon as
//! it has more than `k - 1` distinct distances or a multiplicity above
//! `k - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::Serialize;

use crate::bounds::{enumerate_cells_up_to, ParamCell, T_MAX};
use crate::error::{Error, Result};
use crate::par::{default_workers, map_units};
use crate::zn::{
    classify_deep, delta_family, mod_inverse, norm_u32, normalize_pair, DistanceMultiset, Family,
    ModularAp, Modulus,
};

/// Incremental distance counter for one modulus with early exit.
pub(crate) struct ProfileCounter {
    n: u32,
    limit: u32,
    counts: Vec<u32>,
    distinct: u32,
    seen: Vec<bool>,
}

impl ProfileCounter {
    pub(crate) fn new() -> Self {
        Self {
            n: 2,
            limit: 0,
            counts: Vec::new(),
            distinct: 0,
            seen: Vec::new(),
        }
    }

    /// Clears the counter for modulus `n` and target multiplicities `1..=limit`.
    pub(crate) fn reset(&mut self, n: u32, limit: u32) {
        self.n = n;
        self.limit = limit;
        self.counts.clear();
        self.counts.resize(n as usize / 2 + 1, 0);
        self.distinct = 0;
    }

    /// Adds `AP_n(g, k)` one difference class at a time. On the first step
    /// that breaks the limits, returns `Err(steps)` with the steps applied.
    #[inline]
    pub(crate) fn push_ap(&mut self, g: u32, k: u32) -> std::result::Result<(), u32> {
        let n = self.n;
        let mut r = 0u32;
        for j in 1..k {
            r += g;
            if r >= n {
                r -= n;
            }
            let d = norm_u32(r, n) as usize;
            let c = self.counts[d];
            if c == 0 {
                self.distinct += 1;
            }
            let c = c + (k - j);
            self.counts[d] = c;
            if c > self.limit || self.distinct > self.limit {
                return Err(j);
            }
        }
        Ok(())
    }

    /// Undoes the first `steps` steps of `push_ap(g, k)`.
    #[inline]
    pub(crate) fn pop_ap(&mut self, g: u32, k: u32, steps: u32) {
        let n = self.n;
        let mut r = 0u32;
        for j in 1..=steps {
            r += g;
            if r >= n {
                r -= n;
            }
            let d = norm_u32(r, n) as usize;
            self.counts[d] -= k - j;
            if self.counts[d] == 0 {
                self.distinct -= 1;
            }
        }
    }

    /// Whether the current multiplicities are exactly `1..=limit`.
    pub(crate) fn is_erdos_deep(&mut self) -> bool {
        if self.distinct != self.limit || self.limit == 0 {
            return false;
        }
        self.seen.clear();
        self.seen.resize(self.limit as usize + 1, false);
        for &c in &self.counts[1..] {
            if c == 0 {
                continue;
            }
            // c <= limit holds while no push has failed.
            if std::mem::replace(&mut self.seen[c as usize], true) {
                return false;
            }
        }
        true
    }
}

/// `k` with `C(k, 2) = total`, if any.
pub fn triangular_root(total: u64) -> Option<u32> {
    let disc = 1 + 8 * total;
    let s = disc.isqrt();
    (s * s == disc && s % 2 == 1).then(|| s.div_ceil(2) as u32)
}

fn choose2(k: u32) -> u64 {
    let k = u64::from(k);
    k * k.saturating_sub(1) / 2
}

fn ap_fits(n: u32, g: u32, k: u32) -> bool {
    g >= 1 && g < n && k <= n / n.gcd(&g)
}

/// Whether the `k - 1` distances `|j g|_n`, `1 <= j < k`, are distinct,
/// i.e. `k <= floor(m / 2) + 1` with `m = n / gcd(n, g)`. A nondegenerate AP
/// that fails this wraps past the antipode of its own subgroup, as
/// `{0, 3, 6, 9}` does in `Z_15`.
pub fn is_proper_ap(n: u32, g: u32, k: u32) -> bool {
    ap_fits(n, g, k) && k <= (n / n.gcd(&g)) / 2 + 1
}

fn admissible(n: u32, g: u32, k: u32, allow_wrapped: bool) -> bool {
    if allow_wrapped {
        ap_fits(n, g, k)
    } else {
        is_proper_ap(n, g, k)
    }
}

/// A canonical Erdős-deep pair `{AP_n(1, k1), AP_n(g2, k2)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSolution {
    pub n: u32,
    pub k1: u32,
    pub g1: u32,
    pub k2: u32,
    pub g2: u32,
    pub t: u32,
    pub k: u32,
    pub profile: DistanceMultiset,
}

impl PairSolution {
    fn new(n: u32, k1: u32, g2: u32, k2: u32, k: u32) -> Result<Self> {
        let family = Family::from_aps(n, &[(1, k1), (g2, k2)])?;
        Ok(Self {
            n,
            k1,
            g1: 1,
            k2,
            g2,
            t: k - k1,
            k,
            profile: delta_family(&family),
        })
    }

    pub fn family(&self) -> Family {
        Family::from_aps(self.n, &[(self.g1, self.k1), (self.g2, self.k2)])
            .expect("solutions hold nondegenerate APs")
    }

    pub fn record(&self) -> SolutionRecord {
        SolutionRecord {
            n: self.n,
            lengths: vec![self.k1, self.k2],
            generators: vec![self.g1, self.g2],
            k: self.k,
            profile: self.profile.to_map(),
        }
    }

    fn sort_key(&self) -> (u32, u32, u32, u32) {
        (self.n, self.k1, self.k2, self.g2)
    }
}

/// Serialized form shared by pair and family solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub n: u32,
    pub lengths: Vec<u32>,
    pub generators: Vec<u32>,
    pub k: u32,
    pub profile: BTreeMap<u32, u32>,
}

/// Checks whether `{AP_n(1, k1), AP_n(g2, k2)}` is Erdős-deep with early exit.
/// Returns the pair as given (not normalized) when it is.
pub fn check_pair(n: u32, g2: u32, k1: u32, k2: u32) -> Result<Option<PairSolution>> {
    let m = Modulus::new(n)?;
    ModularAp::new(m, 1, k1)?;
    ModularAp::new(m, g2, k2)?;
    let Some(k) = triangular_root(choose2(k1) + choose2(k2)) else {
        return Ok(None);
    };
    let mut counter = ProfileCounter::new();
    counter.reset(n, k - 1);
    if counter.push_ap(1, k1).is_err() || counter.push_ap(g2, k2).is_err() {
        return Ok(None);
    }
    if !counter.is_erdos_deep() {
        return Ok(None);
    }
    PairSolution::new(n, k1, g2, k2, k).map(Some)
}

/// Settings for [`classify_pairs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub t_max: u32,
    /// Scan every `g2 <= n/2` instead of `k2 - t <= g2 < 2 k1`.
    pub wide_g2: bool,
    /// Restrict every cell's modulus range to this one.
    pub n_override: Option<RangeInclusive<u32>>,
    /// Also admit nondegenerate APs whose own distances repeat.
    pub allow_wrapped: bool,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            t_max: T_MAX,
            wide_g2: false,
            n_override: None,
            allow_wrapped: false,
            workers: default_workers(),
        }
    }
}

impl SearchConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    fn g2_range(&self, cell: &ParamCell, n: u32) -> RangeInclusive<u32> {
        if self.wide_g2 {
            1..=n / 2
        } else {
            let lo = cell.k2.saturating_sub(cell.t).max(1);
            lo..=(2 * cell.k1 - 1).min(n / 2)
        }
    }

    /// The `(cell, n)` work units, in cell order then ascending `n`.
    pub fn work_units(&self) -> Vec<(ParamCell, u32)> {
        let mut units = Vec::new();
        for cell in enumerate_cells_up_to(self.t_max) {
            let (mut lo, mut hi) = (cell.n_min, cell.n_max);
            if let Some(r) = &self.n_override {
                lo = lo.max(*r.start());
                hi = hi.min(*r.end());
            }
            units.extend((lo..=hi).map(|n| (cell, n)));
        }
        units
    }
}

fn search_unit(
    counter: &mut ProfileCounter,
    cfg: &SearchConfig,
    cell: &ParamCell,
    n: u32,
) -> Vec<(u32, u32)> {
    let mut hits = Vec::new();
    if !admissible(n, 1, cell.k1, cfg.allow_wrapped) {
        return hits;
    }
    counter.reset(n, cell.k - 1);
    if counter.push_ap(1, cell.k1).is_err() {
        return hits;
    }
    for g2 in cfg.g2_range(cell, n) {
        if !admissible(n, g2, cell.k2, cfg.allow_wrapped) {
            continue;
        }
        match counter.push_ap(g2, cell.k2) {
            Ok(()) => {
                if counter.is_erdos_deep() {
                    hits.push((n, g2));
                }
                counter.pop_ap(g2, cell.k2, cell.k2 - 1);
            }
            Err(steps) => counter.pop_ap(g2, cell.k2, steps),
        }
    }
    hits
}

/// Every Erdős-deep pair with `k1 >= k2 >= 4` inside the pruned region, in
/// canonical form, sorted by `(n, k1, k2, g2)`. Output does not depend on
/// the worker count.
pub fn classify_pairs(cfg: &SearchConfig) -> Vec<PairSolution> {
    let units = cfg.work_units();
    let found = map_units(
        &units,
        cfg.workers,
        ProfileCounter::new,
        |counter, (cell, n)| {
            search_unit(counter, cfg, cell, *n)
                .into_iter()
                .map(|(n, g2)| (*cell, n, g2))
                .collect::<Vec<_>>()
        },
    );
    let mut canonical = BTreeSet::new();
    for (cell, n, g2) in found.into_iter().flatten() {
        let c = normalize_pair(n, 1, cell.k1, g2, cell.k2).expect("g1 = 1 is always a unit");
        canonical.insert((c.n, c.k1, c.k2, c.g2, cell.k));
    }
    let mut out: Vec<PairSolution> = canonical
        .into_iter()
        .map(|(n, k1, k2, g2, k)| {
            PairSolution::new(n, k1, g2, k2, k).expect("canonical pair is nondegenerate")
        })
        .collect();
    out.sort_by_key(PairSolution::sort_key);
    out
}

/// Whether `{AP_n(1,3), AP_n(2,3)}` = `{{0,1,2},{0,2,4}}` is Erdős-deep in `Z_n`.
pub fn verify_geometric_pair(n: u32) -> bool {
    Family::from_aps(n, &[(1, 3), (2, 3)])
        .map(|f| classify_deep(&f).is_erdos_deep())
        .unwrap_or(false)
}

/// An Erdős-deep family of APs found by [`scan_families`]; `members` holds
/// `(g_i, k_i)` with lengths descending and, within equal lengths,
/// generators ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySolution {
    pub n: u32,
    pub members: Vec<(u32, u32)>,
    pub k: u32,
    pub profile: DistanceMultiset,
}

impl FamilySolution {
    pub fn lengths(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.1).collect()
    }

    pub fn generators(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.0).collect()
    }

    pub fn family(&self) -> Family {
        Family::from_aps(self.n, &self.members).expect("solutions hold nondegenerate APs")
    }

    pub fn record(&self) -> SolutionRecord {
        SolutionRecord {
            n: self.n,
            lengths: self.lengths(),
            generators: self.generators(),
            k: self.k,
            profile: self.profile.to_map(),
        }
    }
}

/// Settings for [`scan_families`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub s: usize,
    pub n_range: RangeInclusive<u32>,
    pub k1_max: u32,
    /// Shortest member length considered.
    pub k_min: u32,
    /// Refuse scans whose projected number of elementary steps exceeds this.
    pub ceiling: u128,
    /// Also admit nondegenerate APs whose own distances repeat.
    pub allow_wrapped: bool,
    pub workers: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            s: 3,
            n_range: 3..=120,
            k1_max: 21,
            k_min: 3,
            ceiling: 10_000_000_000,
            allow_wrapped: false,
            workers: default_workers(),
        }
    }
}

/// Nonincreasing length tuples in `[k_min, k1_max]` whose pair count is
/// triangular, with the resulting `k`.
pub fn length_tuples(s: usize, k_min: u32, k1_max: u32) -> Vec<(Vec<u32>, u32)> {
    fn rec(s: usize, k_min: u32, hi: u32, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>) {
        if prefix.len() == s {
            let total = prefix.iter().map(|&k| choose2(k)).sum();
            if let Some(k) = triangular_root(total) {
                out.push((prefix.clone(), k));
            }
            return;
        }
        for k in k_min..=hi {
            prefix.push(k);
            rec(s, k_min, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 && k_min <= k1_max {
        rec(s, k_min, k1_max, &mut Vec::new(), &mut out);
    }
    out
}

fn proper_divisors(n: u32) -> Vec<u32> {
    (1..n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Upper bound on the elementary steps of a scan: the first generator runs
/// over proper divisors of `n`, the others over `[1, n/2]`, and each
/// candidate costs at most `sum k_i` steps.
pub fn projected_work(cfg: &ScanConfig) -> u128 {
    let tuples = length_tuples(cfg.s, cfg.k_min, cfg.k1_max);
    let steps: u128 = tuples
        .iter()
        .map(|(lens, _)| lens.iter().map(|&k| u128::from(k)).sum::<u128>())
        .sum();
    cfg.n_range
        .clone()
        .filter(|&n| n >= 2)
        .map(|n| {
            let first = proper_divisors(n).len() as u128;
            let rest = u128::from(n / 2).pow(cfg.s.saturating_sub(1) as u32);
            first * rest * steps
        })
        .sum()
}

struct ScanUnit<'a> {
    n: u32,
    lens: &'a [u32],
    k: u32,
}

struct ScanScratch {
    counter: ProfileCounter,
    gens: Vec<u32>,
}

fn scan_rec(
    scratch: &mut ScanScratch,
    unit: &ScanUnit<'_>,
    first_choices: &[u32],
    hits: &mut Vec<Vec<u32>>,
    allow_wrapped: bool,
) {
    let i = scratch.gens.len();
    if i == unit.lens.len() {
        let g = scratch.gens.iter().fold(unit.n, |acc, &x| acc.gcd(&x));
        if g == 1 && scratch.counter.is_erdos_deep() {
            hits.push(scratch.gens.clone());
        }
        return;
    }
    let k = unit.lens[i];
    let mut lo = 1;
    // Within a run of equal lengths (not involving member 0), keep
    // generators ascending.
    if i >= 2 && unit.lens[i - 1] == k {
        lo = scratch.gens[i - 1];
    }
    let candidates: Box<dyn Iterator<Item = u32>> = if i == 0 {
        Box::new(first_choices.iter().copied())
    } else {
        Box::new(lo..=unit.n / 2)
    };
    for g in candidates {
        if !admissible(unit.n, g, k, allow_wrapped) {
            continue;
        }
        match scratch.counter.push_ap(g, k) {
            Ok(()) => {
                scratch.gens.push(g);
                scan_rec(scratch, unit, first_choices, hits, allow_wrapped);
                scratch.gens.pop();
                scratch.counter.pop_ap(g, k, k.saturating_sub(1));
            }
            Err(steps) => scratch.counter.pop_ap(g, k, steps),
        }
    }
}

/// Canonical representative of `gens` (paired with `lens`) under scaling by
/// units and reordering members of equal length.
fn canonical_generators(n: u32, lens: &[u32], gens: &[u32]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for u in 1..n {
        if mod_inverse(u, n).is_none() {
            continue;
        }
        let mut key: Vec<u32> = gens
            .iter()
            .map(|&g| norm_u32((u64::from(g) * u64::from(u) % u64::from(n)) as u32, n))
            .collect();
        let mut start = 0;
        while start < lens.len() {
            let end = start
                + lens[start..]
                    .iter()
                    .take_while(|&&l| l == lens[start])
                    .count();
            key[start..end].sort_unstable();
            start = end;
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_else(|| gens.to_vec())
}

/// Erdős-deep families of `s` APs with `n` in range and lengths
/// `k1_max >= k_1 >= ... >= k_s >= k_min`, one canonical representative per
/// class under unit scaling, with `gcd(n, g_1, ..., g_s) = 1`. Sorted by
/// `(n, lengths, generators)`.
///
/// Scaling by a unit moves any generator to a divisor of `n`, so the first
/// member only tries proper divisors; the others try every `g <= n/2`.
pub fn scan_families(cfg: &ScanConfig) -> Result<Vec<FamilySolution>> {
    let projected = projected_work(cfg);
    if projected > cfg.ceiling {
        return Err(Error::BoundsTooLarge {
            projected,
            ceiling: cfg.ceiling,
        });
    }
    let tuples = length_tuples(cfg.s, cfg.k_min, cfg.k1_max);
    let units: Vec<ScanUnit<'_>> = cfg
        .n_range
        .clone()
        .filter(|&n| n >= 2)
        .flat_map(|n| {
            tuples.iter().map(move |(lens, k)| ScanUnit {
                n,
                lens: lens.as_slice(),
                k: *k,
            })
        })
        .collect();
    let found = map_units(
        &units,
        cfg.workers,
        || ScanScratch {
            counter: ProfileCounter::new(),
            gens: Vec::new(),
        },
        |scratch, unit| {
            scratch.counter.reset(unit.n, unit.k - 1);
            scratch.gens.clear();
            let mut hits = Vec::new();
            scan_rec(
                scratch,
                unit,
                &proper_divisors(unit.n),
                &mut hits,
                cfg.allow_wrapped,
            );
            hits.into_iter()
                .map(|gens| canonical_generators(unit.n, unit.lens, &gens))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .map(|gens| (unit.n, unit.lens.to_vec(), gens, unit.k))
                .collect::<Vec<_>>()
        },
    );
    let mut out = Vec::new();
    for (n, lens, gens, k) in found.into_iter().flatten() {
        let members: Vec<(u32, u32)> = gens.into_iter().zip(lens).collect();
        let family = Family::from_aps(n, &members)?;
        out.push(FamilySolution {
            n,
            members,
            k,
            profile: delta_family(&family),
        });
    }
    out.sort_by_key(|a| (a.n, a.lengths(), a.generators()));
    Ok(out)
}
