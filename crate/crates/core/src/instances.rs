//! Problem instances: generators for the synthetic function families, random
//! matroids, and the JSON instance file.
//!
//! Every function is expanded to an explicit table at generation time, so the
//! table is the only representation anything downstream sees.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::matroid::{Matroid, MatroidSpec, MAX_ENUMERATION};
use crate::subset::GroundSet;

/// Size cap for [`gen_bounded_marginal`].
pub const MAX_BOUNDED: usize = 12;
/// Size cap for [`gen_explicit_random`].
pub const MAX_EXPLICIT_RANDOM: usize = 10;

/// A set function, a matroid and the target base cardinality `N`.
///
/// Construction checks that the truncation of the matroid to `N` has rank `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: String,
    pub ground: GroundSet,
    pub function: SetFunction,
    pub matroid_spec: MatroidSpec,
    pub cardinality: usize,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn new(
        id: impl Into<String>,
        function: SetFunction,
        matroid_spec: MatroidSpec,
        cardinality: usize,
        seed: Option<u64>,
    ) -> Result<Self> {
        let ground = function.ground();
        let m = matroid_spec.build(ground)?;
        if cardinality == 0 || m.rank_full() < cardinality {
            return Err(Error::InfeasibleInstance {
                rank: m.rank_full(),
                required: cardinality,
            });
        }
        Ok(Instance {
            id: id.into(),
            ground,
            function,
            matroid_spec,
            cardinality,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn matroid(&self) -> Matroid {
        self.matroid_spec
            .build(self.ground)
            .expect("spec validated at construction")
    }

    /// Pretty-printed JSON with a trailing newline. Floats use the shortest
    /// representation that parses back to the same bits.
    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            id: self.id.clone(),
            n: self.n(),
            function: FunctionFile::Explicit {
                values: self.function.values().to_vec(),
            },
            matroid: self.matroid_spec.clone(),
            cardinality: self.cardinality,
            seed: self.seed,
        };
        let mut out = serde_json::to_string_pretty(&file).expect("instance serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_syntax() || inner.is_eof() || path == "?" || path == "." {
                Error::Schema(inner.to_string())
            } else {
                Error::Schema(format!("field `{path}`: {inner}"))
            }
        })?;
        file.into_instance()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    id: String,
    n: usize,
    function: FunctionFile,
    matroid: MatroidSpec,
    #[serde(rename = "N")]
    cardinality: usize,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum FunctionFile {
    Explicit { values: Vec<f64> },
}

impl InstanceFile {
    fn into_instance(self) -> Result<Instance> {
        let ground =
            GroundSet::new(self.n).map_err(|_| Error::Schema(format!("field `n`: {} is outside 1..=20", self.n)))?;
        let FunctionFile::Explicit { values } = self.function;
        if values.len() != ground.subset_count() {
            return Err(Error::Schema(format!(
                "field `function.values`: expected 2^{} = {} values, found {}",
                self.n,
                ground.subset_count(),
                values.len()
            )));
        }
        let function = SetFunction::from_table(ground, values)
            .map_err(|e| Error::Schema(format!("field `function.values`: {e}")))?;
        if self.cardinality == 0 {
            return Err(Error::Schema("field `N`: must be at least 1".into()));
        }
        Instance::new(self.id, function, self.matroid, self.cardinality, self.seed)
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    Instance::from_json(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance.to_json())?;
    Ok(())
}

/// `f(S) = Σ_{j∈S} w_j` with every weight positive.
pub fn gen_modular(n: usize, weights: &[f64]) -> Result<SetFunction> {
    let ground = GroundSet::new(n)?;
    if weights.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} weights, found {}",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
    }
    SetFunction::from_fn(ground, |s| s.elements().map(|j| weights[j]).sum())
}

/// `f(S) = c|S| + h(S)` with `c = (lo + hi)/2` and `h(S)` uniform on
/// `[0, (hi − lo)/2]` per nonempty subset, so each marginal lies in `[lo, hi]`.
pub fn gen_bounded_marginal(n: usize, lo: f64, hi: f64, seed: u64) -> Result<SetFunction> {
    let ground = GroundSet::new(n)?;
    ground.require_at_most(MAX_BOUNDED)?;
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < lo <= hi, got lo = {lo}, hi = {hi}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (lo + hi) / 2.0;
    let width = (hi - lo) / 2.0;
    let mut values = Vec::with_capacity(ground.subset_count());
    for s in ground.subsets() {
        let h = if s.is_empty() {
            0.0
        } else {
            width * rng.gen::<f64>()
        };
        values.push(c * s.len() as f64 + h);
    }
    SetFunction::from_table(ground, values)
}

/// Positive per-element weights plus a max-plus chain
/// `g(S) = max_{j∈S} g(S ∖ j) + u(S)`, `u(S)` uniform on `(0, 1]`.
/// Strictly increasing by construction.
pub fn gen_explicit_random(n: usize, seed: u64) -> Result<SetFunction> {
    let ground = GroundSet::new(n)?;
    ground.require_at_most(MAX_EXPLICIT_RANDOM)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..n).map(|_| open_unit(&mut rng)).collect();
    let mut chain = vec![0.0f64; ground.subset_count()];
    for s in ground.subsets().skip(1) {
        let top = s
            .elements()
            .map(|j| chain[s.without(j).index()])
            .fold(f64::NEG_INFINITY, f64::max);
        chain[s.index()] = top + open_unit(&mut rng);
    }
    SetFunction::from_fn(ground, |s| {
        s.elements().map(|j| weights[j]).sum::<f64>() + chain[s.index()]
    })
}

/// Uniform on `(0, 1]`.
fn open_unit(rng: &mut impl Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    Modular { weights: Vec<f64> },
    BoundedMarginal { lo: f64, hi: f64 },
    ExplicitRandom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn generate(&self) -> Result<SetFunction> {
        match &self.kind {
            GeneratorKind::Modular { weights } => gen_modular(self.n, weights),
            GeneratorKind::BoundedMarginal { lo, hi } => gen_bounded_marginal(self.n, *lo, *hi, self.seed),
            GeneratorKind::ExplicitRandom => gen_explicit_random(self.n, self.seed),
        }
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            GeneratorKind::Modular { .. } => "modular",
            GeneratorKind::BoundedMarginal { .. } => "bounded",
            GeneratorKind::ExplicitRandom => "explicit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidFamily {
    Uniform,
    Partition,
    Graphic,
}

impl MatroidFamily {
    pub const ALL: [MatroidFamily; 3] = [MatroidFamily::Uniform, MatroidFamily::Partition, MatroidFamily::Graphic];
}

/// A random matroid on `n >= 2` elements from the given family.
///
/// * uniform: rank in `1..n`;
/// * partition: 2 or 3 nonempty blocks over a shuffled ground set, each
///   capacity in `1..=|block|`;
/// * graphic: a connected multigraph on at most 6 vertices with `n` edges,
///   a random spanning tree plus random extra edges.
pub fn random_matroid_spec(n: usize, family: MatroidFamily, rng: &mut impl Rng) -> Result<MatroidSpec> {
    if n < 2 {
        return Err(Error::InvalidArgument("random matroids need n >= 2".into()));
    }
    Ok(match family {
        MatroidFamily::Uniform => MatroidSpec::Uniform {
            rank: rng.gen_range(1..n),
        },
        MatroidFamily::Partition => {
            let count = rng.gen_range(2..=3.min(n));
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut cuts: Vec<usize> = (1..n).collect();
            cuts.shuffle(rng);
            let mut cuts = cuts[..count - 1].to_vec();
            cuts.sort_unstable();
            let mut blocks = Vec::with_capacity(count);
            let mut start = 0;
            for end in cuts.into_iter().chain([n]) {
                let mut block = order[start..end].to_vec();
                block.sort_unstable();
                blocks.push(block);
                start = end;
            }
            let capacities = blocks.iter().map(|b| rng.gen_range(1..=b.len())).collect();
            MatroidSpec::Partition { blocks, capacities }
        }
        MatroidFamily::Graphic => {
            let vertices = rng.gen_range(2..=(n + 1).min(6));
            let mut edges = Vec::with_capacity(n);
            for v in 1..vertices {
                edges.push([rng.gen_range(0..v), v]);
            }
            while edges.len() < n {
                let a = rng.gen_range(0..vertices);
                let mut b = rng.gen_range(0..vertices - 1);
                if b >= a {
                    b += 1;
                }
                edges.push([a.min(b), a.max(b)]);
            }
            edges.shuffle(rng);
            MatroidSpec::Graphic { vertices, edges }
        }
    })
}

/// [`random_matroid_spec`] driven by its own seeded generator.
pub fn seeded_matroid_spec(n: usize, family: MatroidFamily, seed: u64) -> Result<MatroidSpec> {
    random_matroid_spec(n, family, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Target cardinality `N` uniform on `1..=min(rank, n − 1)`.
fn random_cardinality(m: &Matroid, rng: &mut impl Rng) -> usize {
    let top = m.rank_full().min(m.ground().len() - 1).max(1);
    rng.gen_range(1..=top)
}

fn random_instance(
    id: String,
    n: usize,
    family: MatroidFamily,
    seed: u64,
    function: impl FnOnce(&mut ChaCha8Rng) -> Result<SetFunction>,
) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = function(&mut rng)?;
    let spec = random_matroid_spec(n, family, &mut rng)?;
    let m = spec.build(f.ground())?;
    let cardinality = random_cardinality(&m, &mut rng);
    Instance::new(id, f, spec, cardinality, Some(seed))
}

fn suite_sizes(count: usize, n_min: usize, n_max: usize, seed: u64) -> Result<Vec<(usize, u64)>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| (master.gen_range(n_min..=n_max), master.gen()))
        .collect())
}

/// `count` seeded random instances with `n` uniform on `n_min..=n_max`; entry
/// `i` is [`suite_instance`]`(i, n, ·)` with a per-instance seed.
pub fn suite(count: usize, n_min: usize, n_max: usize, seed: u64) -> Result<Vec<Instance>> {
    if n_max > MAX_BOUNDED {
        return Err(Error::GroundSetTooLarge { n: n_max, limit: MAX_BOUNDED });
    }
    suite_sizes(count, n_min, n_max, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, (n, sub))| suite_instance(i, n, sub))
        .collect()
}

/// One random instance. Even `index` (or `n` above the explicit-random cap)
/// gives a bounded-marginal function, odd `index` an explicit random one; the
/// matroid family cycles uniform, partition, graphic with `index`.
pub fn suite_instance(index: usize, n: usize, seed: u64) -> Result<Instance> {
    let family = MatroidFamily::ALL[index % 3];
    let bounded = index.is_multiple_of(2) || n > MAX_EXPLICIT_RANDOM;
    random_instance(format!("r{index}-n{n}-{seed:016x}"), n, family, seed, |rng| {
        if bounded {
            let lo = rng.gen_range(0.5..2.0);
            let hi = lo * rng.gen_range(1.0..4.0);
            gen_bounded_marginal(n, lo, hi, rng.gen())
        } else {
            gen_explicit_random(n, rng.gen())
        }
    })
}

/// Like [`suite`], with random modular functions (weights uniform on `(0, 10]`).
pub fn modular_suite(count: usize, n_min: usize, n_max: usize, seed: u64) -> Result<Vec<Instance>> {
    if n_max > MAX_ENUMERATION {
        return Err(Error::GroundSetTooLarge { n: n_max, limit: MAX_ENUMERATION });
    }
    suite_sizes(count, n_min, n_max, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, (n, sub))| {
            random_instance(format!("m{i}-n{n}-{sub:016x}"), n, MatroidFamily::ALL[i % 3], sub, |rng| {
                let w: Vec<f64> = (0..n).map(|_| 10.0 * open_unit(rng)).collect();
                gen_modular(n, &w)
            })
        })
        .collect()
}

/// The three-element instance used throughout the documentation:
/// table `[0, 2, 1, 3, 1, 3, 3, 4]`, uniform matroid of rank 2, `N = 2`.
pub fn t3() -> Instance {
    let ground = GroundSet::new(3).expect("n = 3");
    let f = SetFunction::from_table(ground, vec![0., 2., 1., 3., 1., 3., 3., 4.]).expect("finite");
    Instance::new("t3", f, MatroidSpec::Uniform { rank: 2 }, 2, None).expect("feasible")
}
