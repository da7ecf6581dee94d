//! Brute-force reference implementations working on raw tables and masks.
//! They share no code with the library beyond reading a function table or
//! asking a matroid whether a set is independent.

#![allow(dead_code)]

use matroid_greedy::{Matroid, Subset};

pub fn rho(v: &[f64], s: u32, j: usize) -> f64 {
    v[(s | 1 << j) as usize] - v[s as usize]
}

fn submasks_of(r: u32) -> Vec<u32> {
    (0..=r).filter(|s| s & !r == 0).collect()
}

fn outside(n: usize, r: u32) -> impl Iterator<Item = usize> {
    (0..n).filter(move |j| r >> j & 1 == 0)
}

fn clamp(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Largest `g` in `[0, 1]` with `ρ_j(S) >= g ρ_j(R)` for all `S ⊆ R`, `j ∉ R`.
pub fn gamma(v: &[f64], n: usize) -> f64 {
    let mut best = 1.0f64;
    for r in 0..1u32 << n {
        for s in submasks_of(r) {
            for j in outside(n, r) {
                let (num, den) = (rho(v, s, j), rho(v, r, j));
                if den > 0.0 {
                    best = best.min(if num > 0.0 { num / den } else { 0.0 });
                }
            }
        }
    }
    clamp(best)
}

/// Smallest `a` in `[0, 1]` with `ρ_j(R) >= (1 − a) ρ_j(S)` for all `S ⊆ R`, `j ∉ R`.
pub fn alpha(v: &[f64], n: usize) -> f64 {
    let mut best = 1.0f64;
    for r in 0..1u32 << n {
        for s in submasks_of(r) {
            for j in outside(n, r) {
                let (num, den) = (rho(v, r, j), rho(v, s, j));
                if den > 0.0 {
                    best = best.min(if num > 0.0 { num / den } else { 0.0 });
                }
            }
        }
    }
    clamp(1.0 - best)
}

/// Largest `g` with `Σ_{j∈R∖S} ρ_j(S) >= g ρ_{R}(S)` for all `S, R`.
pub fn gamma_cumulative(v: &[f64], n: usize) -> f64 {
    let mut best = 1.0f64;
    for s in 0..1u32 << n {
        for r in 0..1u32 << n {
            let d = r & !s;
            if d == 0 {
                continue;
            }
            let num: f64 = outside(n, !d).map(|j| rho(v, s, j)).sum();
            let den = v[(s | d) as usize] - v[s as usize];
            if den > 0.0 {
                best = best.min(if num > 0.0 { num / den } else { 0.0 });
            }
        }
    }
    clamp(best)
}

/// Smallest `c` with `ρ_j(R) >= (1 − c) ρ_j(S)` for all `S, R ⊆ V ∖ j`.
pub fn strong_curvature(v: &[f64], n: usize) -> f64 {
    let mut best = 1.0f64;
    for j in 0..n {
        for s in 0..1u32 << n {
            for r in 0..1u32 << n {
                if (s | r) >> j & 1 == 1 {
                    continue;
                }
                let (num, den) = (rho(v, r, j), rho(v, s, j));
                if den > 0.0 {
                    best = best.min(if num > 0.0 { num / den } else { 0.0 });
                }
            }
        }
    }
    clamp(1.0 - best)
}

/// Every `ρ_j(S) >= g ρ_j(R) − slack` for `S ⊆ R`, `j ∉ R`.
pub fn gamma_holds(v: &[f64], n: usize, g: f64, slack: f64) -> bool {
    (0..1u32 << n).all(|r| {
        submasks_of(r)
            .into_iter()
            .all(|s| outside(n, r).all(|j| rho(v, s, j) >= g * rho(v, r, j) - slack))
    })
}

/// Every `ρ_j(R) >= (1 − a) ρ_j(S) − slack` for `S ⊆ R`, `j ∉ R`.
pub fn alpha_holds(v: &[f64], n: usize, a: f64, slack: f64) -> bool {
    (0..1u32 << n).all(|r| {
        submasks_of(r)
            .into_iter()
            .all(|s| outside(n, r).all(|j| rho(v, r, j) >= (1.0 - a) * rho(v, s, j) - slack))
    })
}

/// `f̂(S) = −f(V ∖ S)`.
pub fn complement(v: &[f64], n: usize) -> Vec<f64> {
    let full = (1u32 << n) - 1;
    (0..1u32 << n).map(|s| -v[(full ^ s) as usize]).collect()
}

/// Extreme marginals over `S ⊊ V`, `j ∉ S`.
pub fn marginal_extremes(v: &[f64], n: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in 0..(1u32 << n) - 1 {
        for j in outside(n, s) {
            lo = lo.min(rho(v, s, j));
            hi = hi.max(rho(v, s, j));
        }
    }
    (lo, hi)
}

/// Largest independent subset of `s`, by enumerating its submasks.
pub fn rank(m: &Matroid, s: Subset) -> usize {
    submasks_of(s.mask())
        .into_iter()
        .map(Subset::from_mask)
        .filter(|&t| m.is_independent(t))
        .map(|t| t.len())
        .max()
        .unwrap_or(0)
}

/// Independent sets of maximum size, ascending by mask.
pub fn bases(m: &Matroid) -> Vec<Subset> {
    let n = m.ground().len();
    let independent: Vec<Subset> = (0..1u32 << n)
        .map(Subset::from_mask)
        .filter(|&s| m.is_independent(s))
        .collect();
    let r = independent.iter().map(|s| s.len()).max().unwrap_or(0);
    independent.into_iter().filter(|s| s.len() == r).collect()
}

/// Minimum of `v` over independent sets of `m` with exactly `k` elements.
pub fn optimum(v: &[f64], m: &Matroid, k: usize) -> Option<f64> {
    let n = m.ground().len();
    (0..1u32 << n)
        .filter(|s| s.count_ones() as usize == k && m.is_independent(Subset::from_mask(*s)))
        .map(|s| v[s as usize])
        .min_by(f64::total_cmp)
}

/// `|a − b| <= tol · max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}
