//! Erdős-deep families of `s = h^2` modular APs.
//!
//! With generators `g_1, ..., g_h`, the family `F_i` holds `h - i` copies of
//! `AP_n(g_i, l + 1)` and `i` copies of `AP_n(g_i, l)`. Inside `F_i` the
//! distance `|j g_i|_n` occurs `h(l + 1 - j) - i` times, and those counts run
//! over `1..hl-1` exactly once as `(i, j)` ranges over `[h] x [l]` minus the
//! corner `(h, l)`, where the count is zero.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zn::{mod_norm, Family, ModularAp, Modulus};

/// `C(hl, 2) = C(h+1, 2) C(l, 2) + C(h, 2) C(l+1, 2)`.
pub fn square_identity(h: u64, ell: u64) -> bool {
    let c2 = |x: u64| x * x.saturating_sub(1) / 2;
    c2(h * ell) == c2(h + 1) * c2(ell) + c2(h) * c2(ell + 1)
}

/// Multiplicity of `|j g_i|_n` inside `F_i`.
pub fn square_multiplicity(h: u32, ell: u32, i: u32, j: u32) -> u32 {
    h * (ell + 1 - j) - i
}

/// Generators for the square construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub n: u32,
    pub h: u32,
    pub ell: u32,
    pub d: Vec<u32>,
}

fn norm(n: u32, x: u64) -> u32 {
    mod_norm((x % u64::from(n)) as i64, Modulus::new(n).expect("n >= 2"))
}

/// The norms `|j g_i|_n` that carry a positive multiplicity: every
/// `(i, j)` in `[h] x [l]` except `(h, l)`.
fn needed_norms(n: u32, ell: u32, i: u32, h: u32, g: u32) -> impl Iterator<Item = u32> {
    let top = if i == h { ell - 1 } else { ell };
    (1..=top).map(move |j| norm(n, u64::from(j) * u64::from(g)))
}

/// Whether `d` makes the norms `|j g_i|_n` nonzero and pairwise distinct.
///
/// The corner `(h, l)` is left out: its multiplicity is zero, so it can
/// collide without harm. With it included, `{1, 4}` would fail at `n = 13`
/// because `|12|_13 = 1`.
pub fn is_valid_d(n: u32, h: u32, ell: u32, d: &[u32]) -> bool {
    if n < 2 || h == 0 || ell == 0 || d.len() != h as usize {
        return false;
    }
    let mut seen = BTreeSet::new();
    for (i, &g) in (1..=h).zip(d) {
        for v in needed_norms(n, ell, i, h, g) {
            if v == 0 || !seen.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest valid `d`, chosen greedily over `g = 1..=n/2`.
pub fn find_valid_d(n: u32, h: u32, ell: u32) -> Option<GeneratorSet> {
    if n < 2 || h == 0 || ell == 0 {
        return None;
    }
    let mut seen = BTreeSet::new();
    let mut d = Vec::with_capacity(h as usize);
    for g in 1..=n / 2 {
        let i = d.len() as u32 + 1;
        let norms: Vec<u32> = needed_norms(n, ell, i, h, g).collect();
        let distinct: BTreeSet<u32> = norms.iter().copied().collect();
        if distinct.len() != norms.len()
            || distinct.contains(&0)
            || distinct.iter().any(|v| seen.contains(v))
        {
            continue;
        }
        seen.extend(distinct);
        d.push(g);
        if d.len() == h as usize {
            return Some(GeneratorSet { n, h, ell, d });
        }
    }
    None
}

/// Least `n` in `n_lo..=n_hi` where [`find_valid_d`] succeeds.
pub fn least_n_with_valid_d(h: u32, ell: u32, n_lo: u32, n_hi: u32) -> Option<u32> {
    (n_lo.max(2)..=n_hi).find(|&n| find_valid_d(n, h, ell).is_some())
}

/// The `h^2`-member family `F_1, ..., F_h`. Inside `F_i` the `(l+1)`-length
/// copies come first.
pub fn build_square_family(n: u32, h: u32, ell: u32, d: &[u32]) -> Result<Family> {
    let m = Modulus::new(n)?;
    if h == 0 || ell == 0 {
        return Err(Error::PreconditionViolated(format!(
            "h and l must be positive, got h={h}, l={ell}"
        )));
    }
    if !is_valid_d(n, h, ell, d) {
        return Err(Error::InvalidD { n, d: d.to_vec() });
    }
    let mut family = Family::new(m);
    for (i, &g) in (1..=h).zip(d) {
        let g = g % n;
        let long = ModularAp::new(m, g, ell + 1)?;
        let short = ModularAp::new(m, g, ell)?;
        for _ in 0..h - i {
            family.push(long)?;
        }
        for _ in 0..i {
            family.push(short)?;
        }
    }
    Ok(family)
}

/// `build_square_family` with the greedy generators.
pub fn build_square_family_auto(n: u32, h: u32, ell: u32) -> Result<(GeneratorSet, Family)> {
    let gs = find_valid_d(n, h, ell).ok_or_else(|| Error::InvalidD { n, d: Vec::new() })?;
    let f = build_square_family(n, h, ell, &gs.d)?;
    Ok((gs, f))
}

/// `n / gcd(n, g)`: the longest nondegenerate AP with generator `g`.
pub fn max_ap_len(n: u32, g: u32) -> u32 {
    n / n.gcd(&g)
}
