//! Forward greedy, reverse greedy, and the reverse greedy run as a forward
//! greedy maximisation on the dual matroid.
//!
//! Each while-iteration examines one candidate: the best unrejected element.
//! If it is infeasible it joins the rejected set and the step counter does
//! not advance. Ties go to the smallest element id.
//!
//! All runs work on `truncate(M, N)` so that every base has exactly `N`
//! elements.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::matroid::{Matroid, MAX_ENUMERATION};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Forward,
    Reverse,
    ReverseAsForward,
}

impl Algorithm {
    pub fn is_reverse(self) -> bool {
        !matches!(self, Algorithm::Forward)
    }
}

/// One accepted greedy step. `marginal` is `ρ_{s_t}(S^{t−1})` for the forward
/// greedy and the removal cost `δ_{r_t}(X^{t−1}) = ρ̂_{r_t}(R^{t−1})` for both
/// reverse variants. `set_after` is `S^t`, resp. `X^t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Step {
    pub t: usize,
    pub chosen: usize,
    pub marginal: f64,
    pub set_after: Subset,
}

/// An element rejected by the feasibility check while looking for step
/// `before_step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub before_step: usize,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub algorithm: Algorithm,
    pub steps: Vec<Step>,
    pub rejected: Vec<Rejection>,
    pub final_set: Subset,
    /// `f(∅)` for the forward greedy, `f(V)` for the reverse variants.
    pub f_initial: f64,
    pub f_final: f64,
}

impl GreedyTrace {
    /// Intermediate sets `S^0, S^1, ..` (forward) or `X^0, X^1, ..` (reverse).
    pub fn iterates(&self, full: Subset) -> Vec<Subset> {
        let start = if self.algorithm.is_reverse() {
            full
        } else {
            Subset::EMPTY
        };
        std::iter::once(start)
            .chain(self.steps.iter().map(|s| s.set_after))
            .collect()
    }

    /// Forward iterates `R^t = V ∖ X^t` of the dual formulation.
    pub fn dual_iterates(&self, full: Subset) -> Vec<Subset> {
        self.iterates(full)
            .into_iter()
            .map(|x| full.difference(x))
            .collect()
    }

    /// Same run up to the algorithm label: chosen elements, marginals
    /// (bitwise), intermediate sets, rejections and final set.
    pub fn same_run(&self, other: &GreedyTrace) -> bool {
        self.final_set == other.final_set
            && self.rejected == other.rejected
            && self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|(a, b)| {
                a.t == b.t
                    && a.chosen == b.chosen
                    && a.set_after == b.set_after
                    && a.marginal.to_bits() == b.marginal.to_bits()
            })
    }
}

fn prepare(f: &SetFunction, m: &Matroid, cardinality: usize) -> Result<Matroid> {
    if f.ground() != m.ground() {
        return Err(Error::InvalidArgument(format!(
            "function has {} elements but the matroid has {}",
            f.n(),
            m.ground().len()
        )));
    }
    let truncated = m.truncate(cardinality);
    if truncated.rank_full() < cardinality {
        return Err(Error::Infeasible {
            rank: m.rank_full(),
            required: cardinality,
        });
    }
    Ok(truncated)
}

/// Best candidate outside `excluded`, smallest id on ties. `better(a, b)` is
/// true when score `a` strictly beats `b`.
fn select(
    candidates: Subset,
    score: impl Fn(usize) -> f64,
    better: impl Fn(f64, f64) -> bool,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for j in candidates.elements() {
        let v = score(j);
        match best {
            Some((_, b)) if !better(v, b) => {}
            _ => best = Some((j, v)),
        }
    }
    best
}

/// Adds the cheapest feasible element until `N` are chosen.
pub fn forward_greedy(f: &SetFunction, m: &Matroid, cardinality: usize) -> Result<GreedyTrace> {
    let m = prepare(f, m, cardinality)?;
    let full = f.ground().full();
    let mut s = Subset::EMPTY;
    let mut considered = Subset::EMPTY;
    let mut steps = Vec::with_capacity(cardinality);
    let mut rejected = Vec::new();
    let f_initial = f.eval(Subset::EMPTY);
    let mut fs = f_initial;
    while s.len() < cardinality {
        let t = steps.len() + 1;
        let (j, rho) = select(
            full.difference(considered),
            |j| f.eval(s.with(j)) - fs,
            |a, b| a < b,
        )
        .ok_or(Error::Infeasible {
            rank: m.rank_full(),
            required: cardinality,
        })?;
        considered = considered.with(j);
        if !m.is_independent(s.with(j)) {
            rejected.push(Rejection {
                before_step: t,
                element: j,
            });
            continue;
        }
        s = s.with(j);
        fs = f.eval(s);
        steps.push(Step {
            t,
            chosen: j,
            marginal: rho,
            set_after: s,
        });
    }
    Ok(GreedyTrace {
        algorithm: Algorithm::Forward,
        steps,
        rejected,
        final_set: s,
        f_initial,
        f_final: fs,
    })
}

/// Starting from `V`, removes the most expensive element whose removal still
/// leaves a base of cardinality `N` in the remaining set.
pub fn reverse_greedy(f: &SetFunction, m: &Matroid, cardinality: usize) -> Result<GreedyTrace> {
    let m = prepare(f, m, cardinality)?;
    let full = f.ground().full();
    let mut x = full;
    let mut considered = Subset::EMPTY;
    let mut steps = Vec::new();
    let mut rejected = Vec::new();
    let f_initial = f.eval(full);
    let mut fx = f_initial;
    while x.len() > cardinality {
        let t = steps.len() + 1;
        let (k, delta) = select(
            full.difference(considered),
            |j| fx - f.eval(x.without(j)),
            |a, b| a > b,
        )
        .ok_or(Error::Infeasible {
            rank: m.rank_full(),
            required: cardinality,
        })?;
        considered = considered.with(k);
        if m.rank(x.without(k)) < cardinality {
            rejected.push(Rejection {
                before_step: t,
                element: k,
            });
            continue;
        }
        x = x.without(k);
        fx = f.eval(x);
        steps.push(Step {
            t,
            chosen: k,
            marginal: delta,
            set_after: x,
        });
    }
    Ok(GreedyTrace {
        algorithm: Algorithm::Reverse,
        steps,
        rejected,
        final_set: x,
        f_initial,
        f_final: fx,
    })
}

/// Forward greedy maximisation of `f̂(R) = −f(V ∖ R)` over the dual of
/// `truncate(M, N)` with cardinality `|V| − N`. Reported sets are the
/// complements `X^t = V ∖ R^t`, so the trace lines up with [`reverse_greedy`].
pub fn reverse_greedy_as_forward(
    f: &SetFunction,
    m: &Matroid,
    cardinality: usize,
) -> Result<GreedyTrace> {
    let dual = prepare(f, m, cardinality)?.dual();
    let fhat = f.complement_unchecked();
    let full = f.ground().full();
    let target = f.n() - cardinality;
    let mut r = Subset::EMPTY;
    let mut considered = Subset::EMPTY;
    let mut steps = Vec::new();
    let mut rejected = Vec::new();
    let mut fr = fhat.eval(r);
    while r.len() < target {
        let t = steps.len() + 1;
        let (k, rho) = select(
            full.difference(considered),
            |j| fhat.eval(r.with(j)) - fr,
            |a, b| a > b,
        )
        .ok_or(Error::Infeasible {
            rank: m.rank_full(),
            required: cardinality,
        })?;
        considered = considered.with(k);
        if !dual.is_independent(r.with(k)) {
            rejected.push(Rejection {
                before_step: t,
                element: k,
            });
            continue;
        }
        r = r.with(k);
        fr = fhat.eval(r);
        steps.push(Step {
            t,
            chosen: k,
            marginal: rho,
            set_after: full.difference(r),
        });
    }
    let final_set = full.difference(r);
    Ok(GreedyTrace {
        algorithm: Algorithm::ReverseAsForward,
        steps,
        rejected,
        final_set,
        f_initial: f.eval(full),
        f_final: f.eval(final_set),
    })
}

/// Ordering of a base aligned step by step with a greedy run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingWitness {
    pub base: Subset,
    /// `m_1, .., m_N`.
    pub ordering: Vec<usize>,
    /// `(marginal of m_t at the greedy iterate, greedy marginal ρ_t)` per step.
    pub per_step_check: Vec<(f64, f64)>,
}

/// Orders `base` so that each `m_t` is comparable to the greedy pick `t`:
/// `ρ_{m_t}(S^{t−1}) >= ρ_t` for a forward trace, `ρ̂_{m_t}(R^{t−1}) <= ρ̂_t`
/// for a reverse trace. Built backwards from `t = N`: keep the greedy pick
/// when it is still available, otherwise take the smallest remaining base
/// element that extends the greedy iterate.
///
/// `m` is the matroid the greedy was called with. For forward traces `base`
/// must be a base of `truncate(m, N)`; for reverse traces a base of its dual.
pub fn ordering_witness(
    trace: &GreedyTrace,
    f: &SetFunction,
    base: Subset,
    m: &Matroid,
) -> Result<OrderingWitness> {
    let full = f.ground().full();
    let steps = trace.steps.len();
    let fhat;
    let (objective, oracle, iterates, sense_ge) = if trace.algorithm.is_reverse() {
        let cardinality = f.n().checked_sub(steps).ok_or_else(|| {
            Error::TraceMismatch(format!("{steps} steps on {} elements", f.n()))
        })?;
        fhat = f.complement_unchecked();
        let dual = prepare(f, m, cardinality)?.dual();
        (&fhat, dual, trace.dual_iterates(full), false)
    } else {
        (f, prepare(f, m, steps)?, trace.iterates(full), true)
    };

    if !oracle.is_base(base) {
        return Err(Error::InvalidArgument(format!(
            "{base} is not a base of the matroid the trace ran on"
        )));
    }

    let mut ordering = vec![0; steps];
    let mut remaining = base;
    for t in (1..=steps).rev() {
        let pick = trace.steps[t - 1].chosen;
        let prev = iterates[t - 1];
        let m_t = if remaining.contains(pick) {
            pick
        } else {
            remaining
                .difference(prev)
                .elements()
                .find(|&j| oracle.is_independent(prev.with(j)))
                .ok_or_else(|| {
                    Error::WitnessFailure(format!(
                        "no element of {remaining} extends the iterate {prev} at step {t}"
                    ))
                })?
        };
        ordering[t - 1] = m_t;
        remaining = remaining.without(m_t);
    }

    let mut per_step_check = Vec::with_capacity(steps);
    for (t, &m_t) in ordering.iter().enumerate() {
        let prev = iterates[t];
        let lhs = objective.gain(prev, m_t);
        let rhs = trace.steps[t].marginal;
        let holds = if sense_ge { lhs >= rhs } else { lhs <= rhs };
        if !holds {
            return Err(Error::WitnessFailure(format!(
                "step {}: base element {m_t} has marginal {lhs} against greedy {rhs}",
                t + 1
            )));
        }
        per_step_check.push((lhs, rhs));
    }

    Ok(OrderingWitness {
        base,
        ordering,
        per_step_check,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimumRecord {
    pub optimum_set: Subset,
    pub optimum_value: f64,
    pub bases_examined: usize,
}

/// Exhaustive optimum of `f` over the bases of `truncate(m, N)`; the smallest
/// mask wins ties.
pub fn brute_force_optimum(
    f: &SetFunction,
    m: &Matroid,
    cardinality: usize,
    sense: Sense,
) -> Result<OptimumRecord> {
    f.ground().require_at_most(MAX_ENUMERATION)?;
    let bases = prepare(f, m, cardinality)?.enumerate_bases()?;
    let mut best: Option<(Subset, f64)> = None;
    for &b in &bases {
        let v = f.eval(b);
        let improves = match (best, sense) {
            (None, _) => true,
            (Some((_, cur)), Sense::Min) => v < cur,
            (Some((_, cur)), Sense::Max) => v > cur,
        };
        if improves {
            best = Some((b, v));
        }
    }
    let (optimum_set, optimum_value) = best.ok_or(Error::Infeasible {
        rank: m.rank_full(),
        required: cardinality,
    })?;
    Ok(OptimumRecord {
        optimum_set,
        optimum_value,
        bases_examined: bases.len(),
    })
}
