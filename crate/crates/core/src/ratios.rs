//! Exhaustive submodularity ratio, curvature and related quantities.
//!
//! All scans enumerate `R` by increasing mask, `S` over the submasks of `R`
//! by descent, and `j` over `V ∖ R` ascending, so witnesses are deterministic.
//!
//! Zero marginals: in the submodularity ratio a pair with `ρ_j(R) = 0` is
//! vacuous and `ρ_j(S) = 0 < ρ_j(R)` contributes ratio 0. The curvature
//! mirrors this with the roles of `S` and `R` swapped.

use serde::Serialize;

use crate::error::Result;
use crate::function::SetFunction;
use crate::subset::Subset;

/// Exhaustive ratio scans enumerate `3^n` set pairs; above this they are
/// refused.
pub const MAX_EXHAUSTIVE: usize = 12;

/// A binding inequality. For element-wise ratios `element` is the `j` being
/// added, `s` and `r` are the two sets whose marginals are compared and
/// `ratio` is the unclamped quotient that attained the extremum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioWitness {
    pub s: Subset,
    pub r: Subset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    pub ratio: f64,
}

/// A computed ratio in `[0, 1]` together with the inequality attaining it, if
/// any constraint binds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ratio {
    pub value: f64,
    pub witness: Option<RatioWitness>,
}

/// Running minimum of a ratio family, starting from the unconstrained value 1.
pub(crate) struct MinRatio {
    best: f64,
    witness: Option<RatioWitness>,
}

impl MinRatio {
    pub(crate) fn new() -> Self {
        MinRatio {
            best: 1.0,
            witness: None,
        }
    }

    /// Offers `num / den` under the zero conventions: `den <= 0` is vacuous,
    /// `num <= 0 < den` counts as 0.
    #[inline]
    pub(crate) fn offer(&mut self, num: f64, den: f64, s: Subset, r: Subset, element: Option<usize>) {
        if den <= 0.0 {
            return;
        }
        let ratio = if num <= 0.0 { 0.0 } else { num / den };
        if ratio < self.best {
            self.best = ratio;
            self.witness = Some(RatioWitness {
                s,
                r,
                element,
                ratio,
            });
        }
    }

    pub(crate) fn min(&self) -> f64 {
        self.best
    }

    /// The minimum itself, clamped to `[0, 1]`.
    pub(crate) fn as_ratio(&self) -> Ratio {
        Ratio {
            value: clamp_unit(self.best),
            witness: self.witness,
        }
    }

    /// `1 − min`, clamped to `[0, 1]`.
    pub(crate) fn as_complement(&self) -> Ratio {
        Ratio {
            value: clamp_unit(1.0 - self.best),
            witness: self.witness,
        }
    }
}

pub(crate) fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Calls `visit(S, R, j, ρ_j(S), ρ_j(R))` for every `S ⊆ R ⊆ V`, `j ∉ R`.
fn scan_nested_pairs(f: &SetFunction, mut visit: impl FnMut(Subset, Subset, usize, f64, f64)) {
    let v = f.ground();
    let full = v.full();
    for r in v.subsets() {
        let fr = f.eval(r);
        let outside = full.difference(r);
        for s in r.submasks() {
            let fs = f.eval(s);
            for j in outside.elements() {
                let rho_s = f.eval(s.with(j)) - fs;
                let rho_r = f.eval(r.with(j)) - fr;
                visit(s, r, j, rho_s, rho_r);
            }
        }
    }
}

fn precheck(f: &SetFunction) -> Result<()> {
    f.ground().require_at_most(MAX_EXHAUSTIVE)?;
    f.require_increasing()
}

/// Largest `γ` with `γ ρ_j(R) <= ρ_j(S)` for all `S ⊆ R ⊆ V`, `j ∉ R`.
pub fn submodularity_ratio_detail(f: &SetFunction) -> Result<Ratio> {
    precheck(f)?;
    let mut acc = MinRatio::new();
    scan_nested_pairs(f, |s, r, j, rho_s, rho_r| {
        acc.offer(rho_s, rho_r, s, r, Some(j));
    });
    Ok(acc.as_ratio())
}

pub fn submodularity_ratio(f: &SetFunction) -> Result<f64> {
    submodularity_ratio_detail(f).map(|r| r.value)
}

/// Smallest `α` with `ρ_j(R) >= (1 − α) ρ_j(S)` for all `S ⊆ R ⊆ V`, `j ∉ R`.
pub fn curvature_detail(f: &SetFunction) -> Result<Ratio> {
    precheck(f)?;
    let mut acc = MinRatio::new();
    scan_nested_pairs(f, |s, r, j, rho_s, rho_r| {
        acc.offer(rho_r, rho_s, s, r, Some(j));
    });
    Ok(acc.as_complement())
}

pub fn curvature(f: &SetFunction) -> Result<f64> {
    curvature_detail(f).map(|r| r.value)
}

/// Largest `γ'` with `γ' ρ_R(S) <= Σ_{j ∈ R∖S} ρ_j(S)` for all `S, R`.
///
/// Only `R ∖ S` matters, so the scan runs over disjoint pairs `(S, D)` and
/// the witness reports `r = D`.
pub fn cumulative_submodularity_ratio_detail(f: &SetFunction) -> Result<Ratio> {
    precheck(f)?;
    let v = f.ground();
    let full = v.full();
    let mut acc = MinRatio::new();
    for s in v.subsets() {
        let fs = f.eval(s);
        let singles: Vec<(usize, f64)> = full
            .difference(s)
            .elements()
            .map(|j| (j, f.eval(s.with(j)) - fs))
            .collect();
        for d in full.difference(s).submasks() {
            if d.is_empty() {
                continue;
            }
            let joint = f.eval(s.union(d)) - fs;
            let sum: f64 = singles
                .iter()
                .filter(|(j, _)| d.contains(*j))
                .map(|(_, rho)| rho)
                .sum();
            acc.offer(sum, joint, s, d, None);
        }
    }
    Ok(acc.as_ratio())
}

pub fn cumulative_submodularity_ratio(f: &SetFunction) -> Result<f64> {
    cumulative_submodularity_ratio_detail(f).map(|r| r.value)
}

/// Extreme marginals over `S ⊊ V`, `j ∉ S`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarginalBounds {
    pub lower: f64,
    pub upper: f64,
}

/// For a strictly increasing `f`, returns `(bounds, lower/upper, 1 − lower/upper)`,
/// a lower bound on the submodularity ratio and an upper bound on the curvature.
pub fn marginal_bounds_estimate(f: &SetFunction) -> Result<(MarginalBounds, f64, f64)> {
    f.require_strictly_increasing()?;
    let v = f.ground();
    let full = v.full();
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for s in v.subsets().filter(|&s| s != full) {
        let fs = f.eval(s);
        for j in full.difference(s).elements() {
            let rho = f.eval(s.with(j)) - fs;
            lower = lower.min(rho);
            upper = upper.max(rho);
        }
    }
    let q = lower / upper;
    Ok((MarginalBounds { lower, upper }, q, 1.0 - q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::subset::GroundSet;

    fn table(n: usize, v: &[f64]) -> SetFunction {
        SetFunction::from_table(GroundSet::new(n).unwrap(), v.to_vec()).unwrap()
    }

    fn t3() -> SetFunction {
        table(3, &[0., 2., 1., 3., 1., 3., 3., 4.])
    }

    fn sp2() -> SetFunction {
        table(2, &[0., 1., 1., 3.])
    }

    fn modular(w: &[f64]) -> SetFunction {
        SetFunction::from_fn(GroundSet::new(w.len()).unwrap(), |s| {
            s.elements().map(|j| w[j]).sum()
        })
        .unwrap()
    }

    #[test]
    fn t3_ratios() {
        let f = t3();
        assert_eq!(submodularity_ratio(&f).unwrap(), 0.5);
        assert_eq!(curvature(&f).unwrap(), 0.5);
        assert!((cumulative_submodularity_ratio(&f).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let w = cumulative_submodularity_ratio_detail(&f).unwrap().witness.unwrap();
        assert_eq!((w.s, w.r), (Subset::EMPTY, Subset::from_elements([1, 2])));
    }

    #[test]
    fn sp2_ratios() {
        let f = sp2();
        assert_eq!(submodularity_ratio(&f).unwrap(), 0.5);
        let w = submodularity_ratio_detail(&f).unwrap().witness.unwrap();
        assert_eq!((w.s, w.r, w.element), (Subset::EMPTY, Subset::singleton(0), Some(1)));
        assert_eq!(curvature(&f).unwrap(), 0.0);
        assert!((cumulative_submodularity_ratio(&f).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn modular_ratios() {
        let f = modular(&[1.0, 2.0, 3.0, 0.5]);
        assert_eq!(submodularity_ratio(&f).unwrap(), 1.0);
        assert_eq!(curvature(&f).unwrap(), 0.0);
        assert_eq!(cumulative_submodularity_ratio(&f).unwrap(), 1.0);
    }

    #[test]
    fn single_element_is_unconstrained() {
        let f = table(1, &[3.0, 5.0]);
        assert_eq!(submodularity_ratio(&f).unwrap(), 1.0);
        assert_eq!(curvature(&f).unwrap(), 0.0);
        assert!(submodularity_ratio_detail(&f).unwrap().witness.is_none());
    }

    #[test]
    fn zero_marginal_conventions() {
        // f = min(|S|, 1): ρ_j(R) = 0 once R is nonempty, so every
        // submodularity constraint with R ≠ ∅ is vacuous while the curvature
        // sees ρ_j(R) = 0 < ρ_j(∅) = 1 and is forced to 1.
        let f = SetFunction::from_fn(GroundSet::new(3).unwrap(), |s| s.len().min(1) as f64).unwrap();
        assert_eq!(submodularity_ratio(&f).unwrap(), 1.0);
        assert_eq!(curvature(&f).unwrap(), 1.0);

        // f = max(|S| − 1, 0): ρ_j(∅) = 0 < ρ_j({k}) so γ = 0, α = 0.
        let g = SetFunction::from_fn(GroundSet::new(3).unwrap(), |s| s.len().saturating_sub(1) as f64)
            .unwrap();
        assert_eq!(submodularity_ratio(&g).unwrap(), 0.0);
        assert_eq!(curvature(&g).unwrap(), 0.0);
    }

    #[test]
    fn non_monotone_is_rejected() {
        let g = table(2, &[0., 2., 1., 1.]);
        assert!(matches!(submodularity_ratio(&g), Err(Error::NonMonotone { .. })));
        assert!(matches!(curvature(&g), Err(Error::NonMonotone { .. })));
        assert!(matches!(
            cumulative_submodularity_ratio(&g),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn size_cap() {
        let f = modular(&[1.0; 13]);
        assert!(matches!(
            submodularity_ratio(&f),
            Err(Error::GroundSetTooLarge { n: 13, limit: 12 })
        ));
    }

    #[test]
    fn marginal_bounds() {
        let (b, g, a) = marginal_bounds_estimate(&t3()).unwrap();
        assert_eq!((b.lower, b.upper, g, a), (1.0, 2.0, 0.5, 0.5));
        let (b, g, a) = marginal_bounds_estimate(&sp2()).unwrap();
        assert_eq!((b.lower, b.upper, g, a), (1.0, 2.0, 0.5, 0.5));
        let (_, g, a) = marginal_bounds_estimate(&modular(&[2.0; 4])).unwrap();
        assert_eq!((g, a), (1.0, 0.0));
        let c = SetFunction::from_fn(GroundSet::new(2).unwrap(), |_| 1.0).unwrap();
        assert!(matches!(
            marginal_bounds_estimate(&c),
            Err(Error::NotStrictlyIncreasing { .. })
        ));
    }

    #[test]
    fn complement_swaps_ratios_on_t3() {
        let fh = t3().complement_function().unwrap();
        assert_eq!(submodularity_ratio(&fh).unwrap(), 0.5);
        assert_eq!(curvature(&fh).unwrap(), 0.5);
    }
}
