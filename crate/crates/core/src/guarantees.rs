//! Closed-form performance bounds, greedy-restricted ratio variants,
//! verification of the forward and reverse guarantees against brute force,
//! and the grid comparison of the two guarantees.
//!
//! Singular bounds are `+∞` rather than errors so that grid sweeps can touch
//! `γ = 0` and `α = 1`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::greedy::{
    brute_force_optimum, forward_greedy, reverse_greedy, reverse_greedy_as_forward, Algorithm,
    GreedyTrace, Sense,
};
use crate::matroid::Matroid;
use crate::ratios::{self, clamp_unit, MinRatio, Ratio, RatioWitness, MAX_EXHAUSTIVE};
use crate::subset::Subset;

fn unit(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value })
    }
}

/// Forward greedy guarantee `1 / (γ (1 − α))`.
pub fn forward_bound(gamma: f64, alpha: f64) -> Result<f64> {
    let (gamma, alpha) = (unit("gamma", gamma)?, unit("alpha", alpha)?);
    if gamma == 0.0 || alpha == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(1.0 / (gamma * (1.0 - alpha)))
}

/// Reverse greedy guarantee `(1 − α) / (1 + (1 − γ)(1 − α))`.
pub fn reverse_bound(gamma: f64, alpha: f64) -> Result<f64> {
    let (gamma, alpha) = (unit("gamma", gamma)?, unit("alpha", alpha)?);
    let a = 1.0 - alpha;
    Ok(a / (1.0 + (1.0 - gamma) * a))
}

/// Size-dependent forward guarantee `γ/(1−γ) ((2N+1)^{(1−γ)/(γ(1−α))} − 1)`,
/// with its limit `ln(2N+1)/(1−α)` at `γ = 1`.
pub fn guo_bound(gamma: f64, alpha: f64, cardinality: usize) -> Result<f64> {
    let (gamma, alpha) = (unit("gamma", gamma)?, unit("alpha", alpha)?);
    if cardinality == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if gamma == 0.0 || alpha == 1.0 {
        return Ok(f64::INFINITY);
    }
    let log_base = ((2 * cardinality + 1) as f64).ln();
    if gamma == 1.0 {
        return Ok(log_base / (1.0 - alpha));
    }
    let exponent = (1.0 - gamma) / (gamma * (1.0 - alpha));
    Ok(gamma / (1.0 - gamma) * (exponent * log_base).exp_m1())
}

/// Cardinality-constrained reverse guarantee `(1 − e^{−(1−α)(1−γ)}) / (1 − γ)`,
/// with its limit `1 − α` at `γ = 1`.
pub fn bian_bound(gamma: f64, alpha: f64) -> Result<f64> {
    let (gamma, alpha) = (unit("gamma", gamma)?, unit("alpha", alpha)?);
    if gamma == 1.0 {
        return Ok(1.0 - alpha);
    }
    let g = 1.0 - gamma;
    Ok(-(-(1.0 - alpha) * g).exp_m1() / g)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrongCurvature {
    pub c: f64,
    #[serde(with = "crate::extended_real")]
    pub forward_bound: f64,
    pub reverse_bound: f64,
    pub witness: Option<RatioWitness>,
}

/// Smallest `c` with `ρ_j(R) >= (1 − c) ρ_j(S)` for all `S, R ⊆ V ∖ j`, and the
/// guarantees `1/(1−c)` (forward) and `1 − c` (reverse).
///
/// The pair family factorises per element: the binding ratio for `j` is its
/// smallest marginal over its largest one.
pub fn strong_curvature(f: &SetFunction) -> Result<StrongCurvature> {
    f.ground().require_at_most(MAX_EXHAUSTIVE)?;
    f.require_increasing()?;
    let v = f.ground();
    let full = v.full();
    let mut acc = MinRatio::new();
    for j in v.elements() {
        let rest = full.without(j);
        let mut lo: Option<(Subset, f64)> = None;
        let mut hi: Option<(Subset, f64)> = None;
        for s in v.subsets().filter(|s| s.is_subset_of(rest)) {
            let rho = f.gain(s, j);
            if lo.is_none_or(|(_, x)| rho < x) {
                lo = Some((s, rho));
            }
            if hi.is_none_or(|(_, x)| rho > x) {
                hi = Some((s, rho));
            }
        }
        if let (Some((r, num)), Some((s, den))) = (lo, hi) {
            acc.offer(num, den, s, r, Some(j));
        }
    }
    let c = clamp_unit(1.0 - acc.min());
    let forward_bound = if c == 1.0 {
        f64::INFINITY
    } else {
        1.0 / (1.0 - c)
    };
    Ok(StrongCurvature {
        c,
        forward_bound,
        reverse_bound: 1.0 - c,
        witness: acc.as_complement().witness,
    })
}

/// A submodularity ratio / curvature pair restricted to the inequalities a
/// particular greedy run relies on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GreedyRatios {
    pub gamma: Ratio,
    pub alpha: Ratio,
}

/// Ratios over `S` independent, `|S| <= N − 1`, `s ∉ S`, `S ∪ {s}` independent:
/// `gamma_fg = min ρ_s(∅)/ρ_s(S)` and `alpha_fg = 1 − min ρ_s(S)/ρ_s(∅)`.
/// Witnesses report `s = ∅`, `r = S`.
pub fn forward_greedy_ratios(f: &SetFunction, m: &Matroid, cardinality: usize) -> Result<GreedyRatios> {
    f.require_increasing()?;
    if f.ground() != m.ground() || cardinality == 0 {
        return Err(Error::InvalidArgument(
            "function and matroid must share a ground set and N >= 1".into(),
        ));
    }
    let full = f.ground().full();
    let mut gamma = MinRatio::new();
    let mut alpha = MinRatio::new();
    for s in f.ground().subsets() {
        if s.len() > cardinality - 1 || !m.is_independent(s) {
            continue;
        }
        for j in full.difference(s).elements() {
            if !m.is_independent(s.with(j)) {
                continue;
            }
            let at_s = f.gain(s, j);
            let at_empty = f.gain(Subset::EMPTY, j);
            gamma.offer(at_empty, at_s, Subset::EMPTY, s, Some(j));
            alpha.offer(at_s, at_empty, Subset::EMPTY, s, Some(j));
        }
    }
    Ok(GreedyRatios {
        gamma: gamma.as_ratio(),
        alpha: alpha.as_complement(),
    })
}

/// Ex-post ratios along a reverse greedy run, evaluated on `f̂(R) = −f(V∖R)`
/// with the dual iterates `R^t` and picks `r_t`:
///
/// * `gamma_rg`: `min ρ̂_{r_t}(R^{t−1} ∪ R) / ρ̂_{r_t}(R^{t−1})` over all `t`
///   and `R ⊆ V ∖ {r_t}` with `|R| = |V| − N`;
/// * `alpha_rg`: `1 − min ρ̂_r(R^{t−1}) / ρ̂_r(R^{|V|−N} ∪ R)` over all `t`,
///   `|R| = t − 1` and `r ∉ R^{|V|−N} ∪ R`.
///
/// The trace is checked against a fresh run on `(f, m, N)`.
pub fn reverse_greedy_ratios(
    f: &SetFunction,
    m: &Matroid,
    cardinality: usize,
    trace: &GreedyTrace,
) -> Result<GreedyRatios> {
    f.require_increasing()?;
    if !trace.algorithm.is_reverse() {
        return Err(Error::TraceMismatch("expected a reverse greedy trace".into()));
    }
    let expected = reverse_greedy_as_forward(f, m, cardinality)?;
    if !expected.same_run(trace) {
        return Err(Error::TraceMismatch(
            "trace differs from the reverse greedy run on this instance".into(),
        ));
    }
    let fhat = f.complement_unchecked();
    let v = f.ground();
    let full = v.full();
    let target = f.n() - cardinality;
    let dual_iterates = trace.dual_iterates(full);
    let last = dual_iterates[target];

    let mut gamma = MinRatio::new();
    let mut alpha = MinRatio::new();
    for (t, step) in trace.steps.iter().enumerate() {
        let r_t = step.chosen;
        let prev = dual_iterates[t];
        let base = fhat.gain(prev, r_t);
        for r in v.subsets() {
            if r.len() == target && !r.contains(r_t) {
                let grown = prev.union(r);
                gamma.offer(fhat.gain(grown, r_t), base, prev, grown, Some(r_t));
            }
            if r.len() == t {
                let top = last.union(r);
                for j in full.difference(top).elements() {
                    alpha.offer(fhat.gain(prev, j), fhat.gain(top, j), prev, top, Some(j));
                }
            }
        }
    }
    Ok(GreedyRatios {
        gamma: gamma.as_ratio(),
        alpha: alpha.as_complement(),
    })
}

/// Which ratio families to include in a [`RatioReport`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub greedy_variants: bool,
    pub strong: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RatioReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_cumulative: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_fg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_fg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_rg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_rg: Option<f64>,
    /// Binding inequality per reported field, keyed by field name.
    pub witnesses: std::collections::BTreeMap<&'static str, RatioWitness>,
}

impl RatioReport {
    fn put(&mut self, key: &'static str, ratio: Ratio) -> Option<f64> {
        if let Some(w) = ratio.witness {
            self.witnesses.insert(key, w);
        }
        Some(ratio.value)
    }
}

pub fn ratio_report(
    f: &SetFunction,
    m: &Matroid,
    cardinality: usize,
    options: ReportOptions,
) -> Result<RatioReport> {
    let mut report = RatioReport::default();
    report.gamma = report.put("gamma", ratios::submodularity_ratio_detail(f)?);
    report.alpha = report.put("alpha", ratios::curvature_detail(f)?);
    report.gamma_cumulative = report.put(
        "gamma_cumulative",
        ratios::cumulative_submodularity_ratio_detail(f)?,
    );
    if options.strong {
        let sc = strong_curvature(f)?;
        report.strong_c = report.put(
            "strong_c",
            Ratio {
                value: sc.c,
                witness: sc.witness,
            },
        );
    }
    if options.greedy_variants {
        let fg = forward_greedy_ratios(f, m, cardinality)?;
        report.gamma_fg = report.put("gamma_fg", fg.gamma);
        report.alpha_fg = report.put("alpha_fg", fg.alpha);
        let trace = reverse_greedy_as_forward(f, m, cardinality)?;
        let rg = reverse_greedy_ratios(f, m, cardinality, &trace)?;
        report.gamma_rg = report.put("gamma_rg", rg.gamma);
        report.alpha_rg = report.put("alpha_rg", rg.alpha);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub instance_id: String,
    pub algorithm: Algorithm,
    #[serde(with = "crate::extended_real")]
    pub achieved_ratio: f64,
    #[serde(with = "crate::extended_real")]
    pub bound: f64,
    pub satisfied: bool,
    pub gamma: f64,
    pub alpha: f64,
    pub f_empty: f64,
    pub f_full: f64,
    pub f_greedy: f64,
    pub f_opt: f64,
    pub greedy_set: Subset,
    pub optimum_set: Subset,
}

impl VerificationRecord {
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.instance_id = id.into();
        self
    }
}

/// `num / den` with `0/0 = 1` and `x/0 = degenerate`.
fn achieved(num: f64, den: f64, degenerate: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            degenerate
        }
    } else {
        num / den
    }
}

struct Context {
    gamma: f64,
    alpha: f64,
    f_empty: f64,
    f_full: f64,
    optimum: crate::greedy::OptimumRecord,
}

fn context(f: &SetFunction, m: &Matroid, cardinality: usize) -> Result<Context> {
    f.ground().require_at_most(MAX_EXHAUSTIVE)?;
    let gamma = ratios::submodularity_ratio(f)?;
    let alpha = ratios::curvature(f)?;
    let optimum = brute_force_optimum(f, m, cardinality, Sense::Min)?;
    Ok(Context {
        gamma,
        alpha,
        f_empty: f.eval(Subset::EMPTY),
        f_full: f.eval(f.ground().full()),
        optimum,
    })
}

fn record(ctx: &Context, trace: &GreedyTrace, achieved_ratio: f64, bound: f64, satisfied: bool) -> VerificationRecord {
    VerificationRecord {
        instance_id: String::new(),
        algorithm: trace.algorithm,
        achieved_ratio,
        bound,
        satisfied,
        gamma: ctx.gamma,
        alpha: ctx.alpha,
        f_empty: ctx.f_empty,
        f_full: ctx.f_full,
        f_greedy: trace.f_final,
        f_opt: ctx.optimum.optimum_value,
        greedy_set: trace.final_set,
        optimum_set: ctx.optimum.optimum_set,
    }
}

/// Checks `(f(S^f) − f(∅)) / (f(S*) − f(∅)) <= 1/(γ(1−α))` with relative
/// tolerance `tol` on the bound.
pub fn verify_forward(f: &SetFunction, m: &Matroid, cardinality: usize, tol: f64) -> Result<VerificationRecord> {
    let ctx = context(f, m, cardinality)?;
    let trace = forward_greedy(f, m, cardinality)?;
    let ratio = achieved(
        trace.f_final - ctx.f_empty,
        ctx.optimum.optimum_value - ctx.f_empty,
        f64::INFINITY,
    );
    let bound = forward_bound(ctx.gamma, ctx.alpha)?;
    let satisfied = bound.is_infinite() || ratio <= bound * (1.0 + tol);
    Ok(record(&ctx, &trace, ratio, bound, satisfied))
}

/// Checks `(f(V) − f(S^r)) / (f(V) − f(S*)) >= (1−α)/(1+(1−γ)(1−α))` with
/// relative tolerance `tol` on the bound.
pub fn verify_reverse(f: &SetFunction, m: &Matroid, cardinality: usize, tol: f64) -> Result<VerificationRecord> {
    let ctx = context(f, m, cardinality)?;
    let trace = reverse_greedy(f, m, cardinality)?;
    let ratio = achieved(
        ctx.f_full - trace.f_final,
        ctx.f_full - ctx.optimum.optimum_value,
        0.0,
    );
    let bound = reverse_bound(ctx.gamma, ctx.alpha)?;
    let satisfied = ratio >= bound * (1.0 - tol);
    Ok(record(&ctx, &trace, ratio, bound, satisfied))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Forward,
    Reverse,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::Forward => "forward",
            Winner::Reverse => "reverse",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionCell {
    pub alpha: f64,
    pub gamma: f64,
    pub forward_ub: f64,
    pub reverse_ub: f64,
    pub winner: Winner,
}

/// Upper bounds on `f(S^f)` and `f(S^r)` implied by the two guarantees for
/// fixed `f(∅)`, `f(V)`, `f(S*)`, over an `(α, γ)` grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionGrid {
    pub f_empty: f64,
    pub f_full: f64,
    pub f_star: f64,
    pub alpha_grid: Vec<f64>,
    pub gamma_grid: Vec<f64>,
    /// Alpha-major, both axes ascending.
    pub cells: Vec<RegionCell>,
}

impl RegionGrid {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,gamma,forward_ub,reverse_ub,winner\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                c.alpha,
                c.gamma,
                c.forward_ub,
                c.reverse_ub,
                c.winner.as_str()
            );
        }
        out
    }
}

/// Sweeps `α ∈ {0, 1/G, .., (G−1)/G}` and `γ ∈ {1/G, .., 1}`, which is a
/// uniform `G × G` grid avoiding the singular lines `α = 1` and `γ = 0`.
/// Ties go to the reverse greedy.
pub fn region_compare(f_empty: f64, f_full: f64, f_star: f64, grid_size: usize) -> Result<RegionGrid> {
    if !(f_empty <= f_star && f_star <= f_full) {
        return Err(Error::InvalidArgument(format!(
            "need f_empty <= f_star <= f_full, got {f_empty}, {f_star}, {f_full}"
        )));
    }
    if grid_size < 2 {
        return Err(Error::InvalidArgument("grid size must be at least 2".into()));
    }
    let g = grid_size as f64;
    let alpha_grid: Vec<f64> = (0..grid_size).map(|i| i as f64 / g).collect();
    let gamma_grid: Vec<f64> = (1..=grid_size).map(|k| k as f64 / g).collect();
    let mut cells = Vec::with_capacity(grid_size * grid_size);
    for &alpha in &alpha_grid {
        for &gamma in &gamma_grid {
            let forward_ub = f_empty + forward_bound(gamma, alpha)? * (f_star - f_empty);
            let reverse_ub = f_full - reverse_bound(gamma, alpha)? * (f_full - f_star);
            let winner = if forward_ub < reverse_ub {
                Winner::Forward
            } else {
                Winner::Reverse
            };
            cells.push(RegionCell {
                alpha,
                gamma,
                forward_ub,
                reverse_ub,
                winner,
            });
        }
    }
    Ok(RegionGrid {
        f_empty,
        f_full,
        f_star,
        alpha_grid,
        gamma_grid,
        cells,
    })
}
