//! Matroid independence oracles.
//!
//! A [`Matroid`] is built from a declarative [`MatroidSpec`]. Uniform,
//! partition and graphic matroids are correct by construction; explicit
//! families are checked against the three axioms at build time. Duals use the
//! rank characterisation `S` independent in the dual iff `r(V ∖ S) = r(V)`,
//! so no base list is ever materialised.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};

/// Base enumeration walks all `2^n` masks.
pub const MAX_ENUMERATION: usize = 16;
/// Exhaustive axiom checking is quadratic in the number of independent sets.
pub const MAX_AXIOM_CHECK: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    /// Element `i` is edge `i`.
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Independent sets listed as masks.
    Explicit {
        independent: Vec<u32>,
    },
    Dual {
        of: Box<MatroidSpec>,
    },
    Truncate {
        of: Box<MatroidSpec>,
        q: usize,
    },
}

impl MatroidSpec {
    pub fn build(&self, ground: GroundSet) -> Result<Matroid> {
        Matroid::build(self, ground)
    }
}

#[derive(Clone, Debug)]
enum Oracle {
    Uniform(usize),
    Partition {
        block_of: Vec<usize>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Explicit(HashSet<u32>),
    Dual(Box<Matroid>),
    Truncate(Box<Matroid>, usize),
}

#[derive(Clone, Debug)]
pub struct Matroid {
    ground: GroundSet,
    spec: MatroidSpec,
    oracle: Oracle,
    rank_full: usize,
}

impl Matroid {
    pub fn build(spec: &MatroidSpec, ground: GroundSet) -> Result<Matroid> {
        let n = ground.len();
        let oracle = match spec {
            MatroidSpec::Uniform { rank } => Oracle::Uniform(*rank),
            MatroidSpec::Partition { blocks, capacities } => {
                if blocks.len() != capacities.len() {
                    return Err(Error::invalid_spec(format!(
                        "{} blocks but {} capacities",
                        blocks.len(),
                        capacities.len()
                    )));
                }
                let mut block_of = vec![usize::MAX; n];
                for (b, block) in blocks.iter().enumerate() {
                    for &e in block {
                        if e >= n {
                            return Err(Error::invalid_spec(format!(
                                "partition element {e} out of range for n = {n}"
                            )));
                        }
                        if block_of[e] != usize::MAX {
                            return Err(Error::invalid_spec(format!(
                                "element {e} appears in blocks {} and {b}",
                                block_of[e]
                            )));
                        }
                        block_of[e] = b;
                    }
                }
                if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
                    return Err(Error::invalid_spec(format!(
                        "element {e} is not covered by any block"
                    )));
                }
                Oracle::Partition {
                    block_of,
                    capacities: capacities.clone(),
                }
            }
            MatroidSpec::Graphic { vertices, edges } => {
                if edges.len() != n {
                    return Err(Error::invalid_spec(format!(
                        "graphic matroid needs one edge per element: {} edges for n = {n}",
                        edges.len()
                    )));
                }
                if let Some([a, b]) = edges.iter().find(|[a, b]| a >= vertices || b >= vertices) {
                    return Err(Error::invalid_spec(format!(
                        "edge ({a}, {b}) references a vertex outside 0..{vertices}"
                    )));
                }
                Oracle::Graphic {
                    vertices: *vertices,
                    edges: edges.iter().map(|&[a, b]| (a, b)).collect(),
                }
            }
            MatroidSpec::Explicit { independent } => {
                if let Some(&m) = independent.iter().find(|&&m| !ground.contains(Subset::from_mask(m))) {
                    return Err(Error::invalid_spec(format!(
                        "independent mask {m} has bits outside the ground set"
                    )));
                }
                Oracle::Explicit(independent.iter().copied().collect())
            }
            MatroidSpec::Dual { of } => Oracle::Dual(Box::new(Matroid::build(of, ground)?)),
            MatroidSpec::Truncate { of, q } => {
                Oracle::Truncate(Box::new(Matroid::build(of, ground)?), *q)
            }
        };
        let mut m = Matroid {
            ground,
            spec: spec.clone(),
            oracle,
            rank_full: 0,
        };
        m.rank_full = m.rank(ground.full());
        if let Oracle::Explicit(family) = &m.oracle {
            let mut members: Vec<Subset> = family.iter().map(|&x| Subset::from_mask(x)).collect();
            members.sort();
            let report = m.axioms_over(&members);
            if !report.all_ok() {
                return Err(Error::InvalidSpec {
                    reason: format!("explicit family violates the {} axiom", report.failed_axiom()),
                    witness: report.witness,
                });
            }
        }
        Ok(m)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn spec(&self) -> &MatroidSpec {
        &self.spec
    }

    /// Cardinality of every base.
    pub fn rank_full(&self) -> usize {
        self.rank_full
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        match &self.oracle {
            Oracle::Uniform(rank) => s.len() <= *rank,
            Oracle::Partition {
                block_of,
                capacities,
            } => {
                let mut counts = vec![0usize; capacities.len()];
                s.elements().all(|e| {
                    let b = block_of[e];
                    counts[b] += 1;
                    counts[b] <= capacities[b]
                })
            }
            Oracle::Graphic { vertices, edges } => {
                let mut forest = UnionFind::new(*vertices);
                s.elements().all(|e| {
                    let (a, b) = edges[e];
                    forest.union(a, b)
                })
            }
            Oracle::Explicit(family) => family.contains(&s.mask()),
            Oracle::Dual(inner) => inner.rank(self.ground.complement(s)) == inner.rank_full,
            Oracle::Truncate(inner, q) => s.len() <= *q && inner.is_independent(s),
        }
    }

    /// Size of a maximal independent subset of `s`, by greedy augmentation
    /// over the members of `s` in ascending order.
    pub fn rank(&self, s: Subset) -> usize {
        let mut acc = Subset::EMPTY;
        for j in s.elements() {
            let grown = acc.with(j);
            if self.is_independent(grown) {
                acc = grown;
            }
        }
        acc.len()
    }

    /// All bases in ascending mask order.
    pub fn enumerate_bases(&self) -> Result<Vec<Subset>> {
        self.ground.require_at_most(MAX_ENUMERATION)?;
        Ok(self
            .ground
            .subsets()
            .filter(|s| s.len() == self.rank_full && self.is_independent(*s))
            .collect())
    }

    pub fn is_base(&self, s: Subset) -> bool {
        self.ground.contains(s) && s.len() == self.rank_full && self.is_independent(s)
    }

    pub fn dual(&self) -> Matroid {
        Matroid {
            ground: self.ground,
            spec: MatroidSpec::Dual {
                of: Box::new(self.spec.clone()),
            },
            rank_full: self.ground.len() - self.rank_full,
            oracle: Oracle::Dual(Box::new(self.clone())),
        }
    }

    /// Intersection with the uniform matroid of rank `q`.
    pub fn truncate(&self, q: usize) -> Matroid {
        Matroid {
            ground: self.ground,
            spec: MatroidSpec::Truncate {
                of: Box::new(self.spec.clone()),
                q,
            },
            rank_full: q.min(self.rank_full),
            oracle: Oracle::Truncate(Box::new(self.clone()), q),
        }
    }

    /// Exhaustive check of the three matroid axioms over every independent set.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        self.ground.require_at_most(MAX_AXIOM_CHECK)?;
        let members: Vec<Subset> = self
            .ground
            .subsets()
            .filter(|s| self.is_independent(*s))
            .collect();
        Ok(self.axioms_over(&members))
    }

    /// Axioms restricted to the listed family (ascending masks), using the
    /// oracle for membership of derived sets.
    fn axioms_over(&self, members: &[Subset]) -> AxiomReport {
        let mut report = AxiomReport {
            nonempty_ok: self.is_independent(Subset::EMPTY),
            hereditary_ok: true,
            exchange_ok: true,
            witness: None,
        };
        if !report.nonempty_ok {
            report.witness = Some((Subset::EMPTY, Subset::EMPTY));
        }

        'hereditary: for &s in members {
            for r in s.submasks().skip(1) {
                if !self.is_independent(r) {
                    report.hereditary_ok = false;
                    report.witness.get_or_insert((s, r));
                    break 'hereditary;
                }
            }
        }

        'exchange: for &s1 in members {
            for &s2 in members {
                if s1.len() >= s2.len() {
                    continue;
                }
                let augmentable = s2
                    .difference(s1)
                    .elements()
                    .any(|j| self.is_independent(s1.with(j)));
                if !augmentable {
                    report.exchange_ok = false;
                    report.witness.get_or_insert((s1, s2));
                    break 'exchange;
                }
            }
        }
        report
    }
}

/// Result of [`Matroid::check_axioms`]. The witness is the first violating
/// pair: `(∅, ∅)` for the nonempty axiom, `(S, R)` with `R ⊊ S` dependent for
/// heredity, `(S1, S2)` with no augmenting element for exchange.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub nonempty_ok: bool,
    pub hereditary_ok: bool,
    pub exchange_ok: bool,
    pub witness: Option<(Subset, Subset)>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.nonempty_ok && self.hereditary_ok && self.exchange_ok
    }

    fn failed_axiom(&self) -> &'static str {
        if !self.nonempty_ok {
            "nonempty"
        } else if !self.hereditary_ok {
            "hereditary"
        } else {
            "exchange"
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the components of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn uniform(rank: usize, n: usize) -> Matroid {
        MatroidSpec::Uniform { rank }.build(v(n)).unwrap()
    }

    fn partition_2x2() -> Matroid {
        MatroidSpec::Partition {
            blocks: vec![vec![0, 1], vec![2, 3]],
            capacities: vec![1, 1],
        }
        .build(v(4))
        .unwrap()
    }

    fn triangle() -> Matroid {
        MatroidSpec::Graphic {
            vertices: 3,
            edges: vec![[0, 1], [1, 2], [2, 0]],
        }
        .build(v(3))
        .unwrap()
    }

    fn masks(sets: &[Subset]) -> Vec<u32> {
        sets.iter().map(|s| s.mask()).collect()
    }

    #[test]
    fn uniform_basics() {
        let m = uniform(2, 3);
        assert_eq!(m.rank_full(), 2);
        for s in v(3).subsets() {
            assert_eq!(m.is_independent(s), s.len() <= 2);
        }
        assert!(!m.is_independent(set(&[0, 1, 2])));
        assert_eq!(m.rank(v(3).full()), 2);
        assert_eq!(
            m.enumerate_bases().unwrap(),
            vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]
        );
    }

    #[test]
    fn partition_basics() {
        let m = partition_2x2();
        assert_eq!(m.rank_full(), 2);
        assert_eq!(m.rank(set(&[0, 1])), 1);
        assert_eq!(
            m.enumerate_bases().unwrap(),
            vec![set(&[0, 2]), set(&[1, 2]), set(&[0, 3]), set(&[1, 3])]
        );
    }

    #[test]
    fn partition_validation() {
        let overlap = MatroidSpec::Partition {
            blocks: vec![vec![0, 1], vec![1, 2]],
            capacities: vec![1, 1],
        };
        assert!(matches!(overlap.build(v(3)), Err(Error::InvalidSpec { .. })));
        let uncovered = MatroidSpec::Partition {
            blocks: vec![vec![0, 1]],
            capacities: vec![1],
        };
        assert!(uncovered.build(v(3)).is_err());
        let short = MatroidSpec::Partition {
            blocks: vec![vec![0], vec![1]],
            capacities: vec![1],
        };
        assert!(short.build(v(2)).is_err());
    }

    #[test]
    fn graphic_triangle() {
        let m = triangle();
        assert!(!m.is_independent(set(&[0, 1, 2])));
        assert!(m.is_independent(set(&[0, 1])));
        assert_eq!(m.rank(v(3).full()), 2);
        assert_eq!(m.rank_full(), 2);
    }

    #[test]
    fn graphic_validation() {
        let bad_vertex = MatroidSpec::Graphic {
            vertices: 2,
            edges: vec![[0, 1], [1, 2]],
        };
        assert!(bad_vertex.build(v(2)).is_err());
        let wrong_count = MatroidSpec::Graphic {
            vertices: 3,
            edges: vec![[0, 1]],
        };
        assert!(wrong_count.build(v(2)).is_err());
    }

    #[test]
    fn graphic_loop_is_dependent() {
        let m = MatroidSpec::Graphic {
            vertices: 2,
            edges: vec![[0, 0], [0, 1]],
        }
        .build(v(2))
        .unwrap();
        assert!(!m.is_independent(set(&[0])));
        assert_eq!(m.rank_full(), 1);
    }

    #[test]
    fn dual_of_uniform() {
        let d = uniform(2, 3).dual();
        assert!(d.is_independent(set(&[0])));
        assert!(!d.is_independent(set(&[0, 1])));
        assert_eq!(d.rank_full(), 1);
        assert_eq!(d.enumerate_bases().unwrap(), vec![set(&[0]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn dual_of_triangle() {
        let d = triangle().dual();
        assert_eq!(d.rank_full(), 1);
        assert_eq!(d.enumerate_bases().unwrap(), vec![set(&[0]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn truncations() {
        let t = uniform(2, 3).truncate(1);
        assert_eq!(t.rank_full(), 1);
        assert_eq!(masks(&t.enumerate_bases().unwrap()), vec![1, 2, 4]);

        let m = partition_2x2();
        assert_eq!(
            m.truncate(5).enumerate_bases().unwrap(),
            m.enumerate_bases().unwrap()
        );
        assert_eq!(masks(&m.truncate(1).enumerate_bases().unwrap()), vec![1, 2, 4, 8]);
    }

    #[test]
    fn explicit_hereditary_violation() {
        let spec = MatroidSpec::Explicit {
            independent: vec![0, 1, 3],
        };
        match spec.build(v(2)) {
            Err(Error::InvalidSpec { witness, .. }) => {
                assert_eq!(witness, Some((set(&[0, 1]), set(&[1]))));
            }
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn explicit_rank_one_family_is_fine() {
        let m = MatroidSpec::Explicit {
            independent: vec![0, 1, 2],
        }
        .build(v(2))
        .unwrap();
        let report = m.check_axioms().unwrap();
        assert!(report.all_ok());
        assert_eq!(m.rank_full(), 1);
    }

    #[test]
    fn explicit_exchange_violation() {
        // {∅,{0},{1},{0,1},{2}}
        let spec = MatroidSpec::Explicit {
            independent: vec![0, 1, 2, 3, 4],
        };
        match spec.build(v(3)) {
            Err(Error::InvalidSpec { witness, .. }) => {
                assert_eq!(witness, Some((set(&[2]), set(&[0, 1]))));
            }
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn explicit_missing_empty_set() {
        let spec = MatroidSpec::Explicit {
            independent: vec![1],
        };
        assert!(spec.build(v(1)).is_err());
    }

    #[test]
    fn check_axioms_uniform() {
        let r = uniform(2, 3).check_axioms().unwrap();
        assert!(r.all_ok() && r.witness.is_none());
        let big = MatroidSpec::Uniform { rank: 1 }.build(v(11)).unwrap();
        assert!(matches!(
            big.check_axioms(),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn spec_serde_shape() {
        let spec = MatroidSpec::Truncate {
            of: Box::new(MatroidSpec::Graphic {
                vertices: 3,
                edges: vec![[0, 1], [1, 2]],
            }),
            q: 1,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"truncate","of":{"kind":"graphic","vertices":3,"edges":[[0,1],[1,2]]},"q":1}"#
        );
        let back: MatroidSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn uniform_rank_above_n_clamps() {
        assert_eq!(uniform(5, 3).rank_full(), 3);
    }
}
