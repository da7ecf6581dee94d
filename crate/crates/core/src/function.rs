//! Tabulated set functions and their discrete derivatives.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};

/// A set function `f: 2^V -> R` stored as an explicit table of `2^n` values
/// indexed by subset mask. No normalization `f(∅) = 0` is assumed.
///
/// Every call to [`SetFunction::eval`] bumps an atomic evaluation counter, so a
/// shared `&SetFunction` can be queried from several threads.
pub struct SetFunction {
    ground: GroundSet,
    values: Arc<[f64]>,
    evals: AtomicU64,
}

impl SetFunction {
    pub fn from_table(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != ground.subset_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values for n = {}, found {}",
                ground.subset_count(),
                ground.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "value at mask {i} is not finite"
            )));
        }
        Ok(SetFunction {
            ground,
            values: values.into(),
            evals: AtomicU64::new(0),
        })
    }

    /// Tabulates a closed-form rule over every subset.
    pub fn from_fn(ground: GroundSet, rule: impl Fn(Subset) -> f64) -> Result<Self> {
        let values = ground.subsets().map(rule).collect();
        Self::from_table(ground, values)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// Oracle call.
    #[inline]
    pub fn eval(&self, s: Subset) -> f64 {
        self.evals.fetch_add(1, Ordering::Relaxed);
        self.values[s.index()]
    }

    /// The raw table, without touching the evaluation counter.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    /// `ρ_j(S) = f(S ∪ {j}) − f(S)`; exactly zero when `j ∈ S`.
    pub fn marginal(&self, s: Subset, j: usize) -> Result<f64> {
        self.ground.check_element(j)?;
        Ok(self.gain(s, j))
    }

    #[inline]
    pub(crate) fn gain(&self, s: Subset, j: usize) -> f64 {
        if s.contains(j) {
            return 0.0;
        }
        self.eval(s.with(j)) - self.eval(s)
    }

    /// `ρ_R(S) = f(S ∪ R) − f(S)`.
    pub fn set_marginal(&self, s: Subset, r: Subset) -> f64 {
        self.eval(s.union(r)) - self.eval(s)
    }

    /// `δ_j(S) = f(S) − f(S ∖ {j})`, defined only for `j ∈ S`.
    pub fn shifted_marginal(&self, s: Subset, j: usize) -> Result<f64> {
        self.ground.check_element(j)?;
        if !s.contains(j) {
            return Err(Error::NotAMember { element: j, set: s });
        }
        Ok(self.loss(s, j))
    }

    #[inline]
    pub(crate) fn loss(&self, s: Subset, j: usize) -> f64 {
        self.eval(s) - self.eval(s.without(j))
    }

    /// Scans every `ρ_j(S)` with `j ∉ S` in mask-then-element order.
    pub fn check_monotone(&self) -> MonotonicityReport {
        let full = self.ground.full();
        let mut weak = None;
        let mut strict = None;
        for s in self.ground.subsets() {
            let base = self.eval(s);
            for j in full.difference(s).elements() {
                let rho = self.eval(s.with(j)) - base;
                if strict.is_none() && rho <= 0.0 {
                    strict = Some((s, j));
                }
                if rho < 0.0 {
                    weak = Some((s, j));
                    break;
                }
            }
            if weak.is_some() {
                break;
            }
        }
        MonotonicityReport {
            increasing: weak.is_none(),
            strictly_increasing: strict.is_none(),
            witness: weak.or(strict),
        }
    }

    pub(crate) fn require_increasing(&self) -> Result<()> {
        let report = self.check_monotone();
        match report.witness {
            Some((set, element)) if !report.increasing => Err(Error::NonMonotone { set, element }),
            _ => Ok(()),
        }
    }

    pub(crate) fn require_strictly_increasing(&self) -> Result<()> {
        let report = self.check_monotone();
        match report.witness {
            Some((set, element)) => Err(Error::NotStrictlyIncreasing { set, element }),
            None => Ok(()),
        }
    }

    /// `f̂(S) = −f(V ∖ S)`. Increasing whenever `f` is.
    pub fn complement_function(&self) -> Result<SetFunction> {
        self.require_increasing()?;
        Ok(self.complement_unchecked())
    }

    /// Complement without the monotonicity precondition; greedy runs use it
    /// because the algorithms themselves do not require monotonicity.
    pub(crate) fn complement_unchecked(&self) -> SetFunction {
        let full = self.ground.full().mask();
        // `0.0 - v` rather than `-v` so that f̂(V) is +0 when f(∅) = 0.
        let values: Vec<f64> = (0..self.ground.subset_count() as u32)
            .map(|m| 0.0 - self.values[(full ^ m) as usize])
            .collect();
        SetFunction {
            ground: self.ground,
            values: values.into(),
            evals: AtomicU64::new(0),
        }
    }
}

impl Clone for SetFunction {
    fn clone(&self) -> Self {
        SetFunction {
            ground: self.ground,
            values: Arc::clone(&self.values),
            evals: AtomicU64::new(self.eval_count()),
        }
    }
}

impl PartialEq for SetFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground
            && self
                .values
                .iter()
                .zip(other.values.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunction")
            .field("n", &self.ground.len())
            .field("values", &&self.values[..])
            .finish()
    }
}

/// Outcome of [`SetFunction::check_monotone`]. The witness is the first
/// `(S, j)` violating weak monotonicity if any, otherwise the first violating
/// strict monotonicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub increasing: bool,
    pub strictly_increasing: bool,
    pub witness: Option<(Subset, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> SetFunction {
        SetFunction::from_table(
            GroundSet::new(3).unwrap(),
            vec![0., 2., 1., 3., 1., 3., 3., 4.],
        )
        .unwrap()
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    #[test]
    fn marginals_on_t3() {
        let f = t3();
        assert_eq!(f.marginal(Subset::EMPTY, 0).unwrap(), 2.0);
        assert_eq!(f.marginal(set(&[1, 2]), 0).unwrap(), 1.0);
        assert_eq!(f.marginal(set(&[0, 1]), 1).unwrap(), 0.0);
        assert!(matches!(
            f.marginal(Subset::EMPTY, 3),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn set_marginals_on_t3() {
        let f = t3();
        assert_eq!(f.set_marginal(Subset::EMPTY, set(&[1, 2])), 3.0);
        assert_eq!(f.set_marginal(set(&[2]), set(&[0, 1])), 3.0);
        assert_eq!(f.set_marginal(set(&[0, 1]), set(&[1])), 0.0);
    }

    #[test]
    fn shifted_marginals_on_t3() {
        let f = t3();
        let v = f.ground().full();
        assert_eq!(f.shifted_marginal(v, 0).unwrap(), 1.0);
        assert_eq!(f.shifted_marginal(set(&[0, 1]), 1).unwrap(), 1.0);
        assert!(matches!(
            f.shifted_marginal(set(&[0]), 1),
            Err(Error::NotAMember { .. })
        ));
    }

    #[test]
    fn shifted_marginal_of_modular_is_weight() {
        let w = [1.5, 2.0, 3.25];
        let f = SetFunction::from_fn(GroundSet::new(3).unwrap(), |s| {
            s.elements().map(|j| w[j]).sum()
        })
        .unwrap();
        for s in f.ground().subsets() {
            for j in s.elements() {
                assert_eq!(f.shifted_marginal(s, j).unwrap(), w[j]);
            }
        }
    }

    #[test]
    fn monotonicity_reports() {
        let r = t3().check_monotone();
        assert!(r.increasing && r.strictly_increasing && r.witness.is_none());

        let g = SetFunction::from_table(GroundSet::new(2).unwrap(), vec![0., 2., 1., 1.]).unwrap();
        let r = g.check_monotone();
        assert!(!r.increasing && !r.strictly_increasing);
        assert_eq!(r.witness, Some((set(&[0]), 1)));

        let c = SetFunction::from_fn(GroundSet::new(3).unwrap(), |_| 7.0).unwrap();
        let r = c.check_monotone();
        assert!(r.increasing && !r.strictly_increasing);
        assert_eq!(r.witness, Some((Subset::EMPTY, 0)));
    }

    #[test]
    fn complement_of_t3() {
        let f = t3();
        let fh = f.complement_function().unwrap();
        // f̂(S) = −f(V∖S) evaluated pointwise.
        assert_eq!(fh.values(), &[-4., -3., -3., -1., -3., -1., -2., 0.]);
        assert!(fh.values()[7].is_sign_positive());
        assert_eq!(fh.complement_function().unwrap(), f);
    }

    #[test]
    fn complement_requires_increasing() {
        let g = SetFunction::from_table(GroundSet::new(2).unwrap(), vec![0., 2., 1., 1.]).unwrap();
        assert!(matches!(
            g.complement_function(),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn eval_count_is_monotone_and_pure() {
        let f = t3();
        let s = set(&[0, 2]);
        let before = f.eval_count();
        let a = f.eval(s);
        let b = f.eval(s);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(f.eval_count(), before + 2);
    }

    #[test]
    fn concurrent_evaluation_counts_every_call() {
        let f = t3();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for m in 0..1000u32 {
                        f.eval(Subset::from_mask(m % 8));
                    }
                });
            }
        });
        assert_eq!(f.eval_count(), 4000);
    }

    #[test]
    fn table_length_is_checked() {
        assert!(SetFunction::from_table(GroundSet::new(3).unwrap(), vec![0.0; 7]).is_err());
        assert!(SetFunction::from_table(GroundSet::new(1).unwrap(), vec![0.0, f64::NAN]).is_err());
    }
}
