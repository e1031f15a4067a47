//! Monte Carlo generalized urn model.
//!
//! Ball types are the two-valued states of a partition labeling, drawn
//! i.i.d. from a rational measure. Looking at a ball through the "color" of
//! a context reveals the unique atom of that context whose label contains
//! the ball type.
//!
//! Randomness: ChaCha8 seeded with `seed`; shard `s` uses stream `s`. The
//! counts depend only on `(seed, draws, shards)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{Measure, ProbError};
use crate::logic::Context;
use crate::matrix::Matrix;
use crate::partition::PartitionLabeling;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UrnError {
    #[error("measure has {found} weights but the family has {expected} states")]
    Misaligned { expected: usize, found: usize },
    #[error("number of draws must be positive")]
    ZeroDraws,
    #[error("number of shards must be positive")]
    ZeroShards,
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("atom `{atom}` is not in context `{context}`")]
    AtomNotInContext { context: String, atom: String },
    #[error("atom `{0}` has probability zero; nothing to prepare")]
    ZeroProbability(String),
    #[error("labels of context `{0}` do not partition the ball types")]
    NotPartition(String),
    #[error(transparent)]
    Measure(#[from] ProbError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UrnSpec {
    pub labeling: PartitionLabeling,
    pub measure: Measure,
    pub seed: u64,
}

impl UrnSpec {
    pub fn new(labeling: PartitionLabeling, measure: Measure, seed: u64) -> Result<Self, UrnError> {
        if labeling.size() != measure.len() {
            return Err(UrnError::Misaligned { expected: labeling.size(), found: measure.len() });
        }
        Ok(Self { labeling, measure, seed })
    }

    fn context(&self, name: &str) -> Result<&Context, UrnError> {
        self.labeling.logic().context(name).ok_or_else(|| UrnError::UnknownContext(name.to_string()))
    }

    /// For each ball type (0-based), the position of its symbol in `ctx`.
    fn symbols(&self, ctx: &Context) -> Result<Vec<usize>, UrnError> {
        let mut symbol = vec![None; self.labeling.size()];
        for (pos, &atom) in ctx.members().iter().enumerate() {
            for &ball in self.labeling.label_at(atom) {
                if symbol[ball - 1].replace(pos).is_some() {
                    return Err(UrnError::NotPartition(ctx.name.clone()));
                }
            }
        }
        symbol.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| UrnError::NotPartition(ctx.name.clone()))
    }
}

/// Draws ball types exactly: an integer variate uniform on `[0, range)` is
/// compared against integer cumulative thresholds.
#[derive(Debug, Clone)]
struct BallSampler {
    range: u128,
    thresholds: Vec<u128>,
}

impl BallSampler {
    fn new(measure: &Measure) -> Self {
        let den = measure.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let mut cumulative = BigRational::zero();
        let cumulative: Vec<BigRational> = measure
            .weights()
            .iter()
            .map(|w| {
                cumulative += w;
                cumulative.clone()
            })
            .collect();
        match den.to_u64() {
            // thresholds c_k * den are integers
            Some(d) => Self {
                range: u128::from(d),
                thresholds: cumulative.iter().map(|c| (c * &den).to_integer().to_u128().expect("fits")).collect(),
            },
            // r / 2^64 < c_k  <=>  r < ceil(c_k * 2^64)
            None => {
                let scale = BigRational::from_integer(BigInt::one() << 64);
                Self {
                    range: 1u128 << 64,
                    thresholds: cumulative
                        .iter()
                        .map(|c| (c * &scale).ceil().to_integer().to_u128().expect("fits"))
                        .collect(),
                }
            }
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let r = rng.random_range(0..self.range);
        self.thresholds.partition_point(|&t| t <= r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMatrix {
    pub row_context: String,
    pub col_context: String,
    pub row_atoms: Vec<String>,
    pub col_atoms: Vec<String>,
    pub counts: Matrix<u64>,
    pub draws: u64,
    pub seed: u64,
    pub shards: usize,
}

impl EmpiricalMatrix {
    /// Number of draws whose row symbol was atom `i`.
    pub fn condition_count(&self, i: usize) -> u64 {
        self.counts.row(i).iter().sum()
    }

    /// `count(e_i ∧ f_j) / count(e_i)`, undefined when `count(e_i) = 0`.
    pub fn estimates(&self) -> Matrix<Option<f64>> {
        Matrix::from_fn(self.counts.rows(), self.counts.cols(), |i, j| {
            let total = self.condition_count(i);
            (total > 0).then(|| *self.counts.get(i, j) as f64 / total as f64)
        })
    }
}

pub fn simulate_cond_prob(spec: &UrnSpec, rows: &str, cols: &str, draws: u64) -> Result<EmpiricalMatrix, UrnError> {
    simulate_cond_prob_sharded(spec, rows, cols, draws, 1)
}

/// Splits the draws over `shards` threads (the first `draws % shards`
/// shards take one extra draw) and sums their counts.
pub fn simulate_cond_prob_sharded(
    spec: &UrnSpec,
    rows: &str,
    cols: &str,
    draws: u64,
    shards: usize,
) -> Result<EmpiricalMatrix, UrnError> {
    if draws == 0 {
        return Err(UrnError::ZeroDraws);
    }
    if shards == 0 {
        return Err(UrnError::ZeroShards);
    }
    let (c1, c2) = (spec.context(rows)?, spec.context(cols)?);
    let (row_of, col_of) = (spec.symbols(c1)?, spec.symbols(c2)?);
    let sampler = BallSampler::new(&spec.measure);
    let (n, m) = (c1.len(), c2.len());

    let run_shard = |shard: usize| -> Vec<u64> {
        let quota = draws / shards as u64 + u64::from((shard as u64) < draws % shards as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(shard as u64);
        let mut counts = vec![0u64; n * m];
        for _ in 0..quota {
            let ball = sampler.draw(&mut rng);
            counts[row_of[ball] * m + col_of[ball]] += 1;
        }
        counts
    };
    let per_shard: Vec<Vec<u64>> = if shards == 1 {
        vec![run_shard(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..shards).map(|s| scope.spawn(move || run_shard(s))).collect();
            handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
        })
    };
    let counts = Matrix::from_fn(n, m, |i, j| per_shard.iter().map(|c| c[i * m + j]).sum());
    Ok(EmpiricalMatrix {
        row_context: c1.name.clone(),
        col_context: c2.name.clone(),
        row_atoms: c1.atoms.clone(),
        col_atoms: c2.atoms.clone(),
        counts,
        draws,
        seed: spec.seed,
        shards,
    })
}

/// The mixture an observer restricted to `context` produces when asked to
/// prepare `atom`: the measure conditioned on `label(atom)`.
pub fn intrinsic_prepare(spec: &UrnSpec, context: &str, atom: &str) -> Result<Measure, UrnError> {
    let ctx = spec.context(context)?;
    let logic = spec.labeling.logic();
    let index = logic
        .atom_index(atom)
        .filter(|&i| ctx.members().contains(&i))
        .ok_or_else(|| UrnError::AtomNotInContext { context: context.to_string(), atom: atom.to_string() })?;
    let label = spec.labeling.label_at(index);
    let mass = spec.measure.mass(label);
    if mass.is_zero() {
        return Err(UrnError::ZeroProbability(atom.to_string()));
    }
    let weights = spec
        .measure
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| if label.contains(&(i + 1)) { w / &mass } else { BigRational::zero() })
        .collect();
    Ok(Measure::new(weights)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_logic;
    use crate::partition::canonical_partition_labels;
    use crate::scalar::ratio;
    use crate::states::enumerate_two_valued_states;

    fn firefly(measure: Measure, seed: u64) -> UrnSpec {
        let logic = parse_logic(
            r#"{"contexts":[{"name":"C1","atoms":["e1","e2","h"]},{"name":"C2","atoms":["f1","f2","h"]}]}"#,
        )
        .unwrap();
        let labels = canonical_partition_labels(&enumerate_two_valued_states(&logic)).unwrap();
        UrnSpec::new(labels, measure, seed).unwrap()
    }

    #[test]
    fn sampler_is_exact_on_small_denominators() {
        let s = BallSampler::new(&Measure::new(vec![ratio(1, 3), ratio(0, 1), ratio(2, 3)]).unwrap());
        assert_eq!(s.range, 3);
        assert_eq!(s.thresholds, vec![1, 1, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..1000).all(|_| s.draw(&mut rng) != 1));
    }

    #[test]
    fn sampler_handles_huge_denominators() {
        let p = BigRational::new(BigInt::one(), BigInt::from(3u8).pow(50u32));
        let m = Measure::new(vec![p.clone(), BigRational::one() - p]).unwrap();
        let s = BallSampler::new(&m);
        assert_eq!(s.range, 1u128 << 64);
        assert_eq!(*s.thresholds.last().unwrap(), 1u128 << 64);
    }

    #[test]
    fn single_draw() {
        let e = simulate_cond_prob(&firefly(Measure::uniform(5), 3), "C1", "C2", 1).unwrap();
        let est = e.estimates();
        let ones = est.iter().filter(|x| **x == Some(1.0)).count();
        let undefined_rows = (0..3).filter(|&i| est.row(i).iter().all(Option::is_none)).count();
        assert_eq!(ones, 1);
        assert_eq!(undefined_rows, 2);
    }

    #[test]
    fn singular_measure_never_shows_f2() {
        let e = simulate_cond_prob(&firefly(Measure::point(5, 1), 0), "C2", "C1", 1000).unwrap();
        assert_eq!(e.condition_count(1), 0);
        assert!(e.estimates().row(1).iter().all(Option::is_none));
        assert_eq!(e.counts.get(0, 0), &1000);
    }

    #[test]
    fn seed_determinism_and_sharding() {
        let spec = firefly(Measure::uniform(5), 42);
        let a = simulate_cond_prob_sharded(&spec, "C1", "C2", 10_000, 3).unwrap();
        let b = simulate_cond_prob_sharded(&spec, "C1", "C2", 10_000, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 10_000);
        let c = simulate_cond_prob(&spec, "C1", "C2", 10_000).unwrap();
        assert_eq!(c.counts.iter().sum::<u64>(), 10_000);
    }

    #[test]
    fn errors() {
        let spec = firefly(Measure::uniform(5), 0);
        assert_eq!(simulate_cond_prob(&spec, "C1", "C2", 0), Err(UrnError::ZeroDraws));
        assert_eq!(simulate_cond_prob(&spec, "C1", "X", 5), Err(UrnError::UnknownContext("X".into())));
        let labels = spec.labeling.clone();
        assert_eq!(UrnSpec::new(labels, Measure::uniform(4), 0), Err(UrnError::Misaligned { expected: 5, found: 4 }));
        assert!(matches!(intrinsic_prepare(&spec, "C1", "f1"), Err(UrnError::AtomNotInContext { .. })));
        let singular = firefly(Measure::point(5, 1), 0);
        assert_eq!(intrinsic_prepare(&singular, "C2", "f2"), Err(UrnError::ZeroProbability("f2".into())));
    }

    #[test]
    fn intrinsic_preparation() {
        let spec = firefly(Measure::uniform(5), 0);
        let p = intrinsic_prepare(&spec, "C1", "e1").unwrap();
        assert_eq!(p.weights(), &[ratio(1, 2), ratio(1, 2), ratio(0, 1), ratio(0, 1), ratio(0, 1)]);
        let skewed = firefly(
            Measure::new(vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(1, 10), ratio(3, 10)]).unwrap(),
            0,
        );
        assert_eq!(intrinsic_prepare(&skewed, "C2", "h").unwrap(), Measure::point(5, 5));
        assert_eq!(intrinsic_prepare(&spec, "C1", "h").unwrap(), Measure::point(5, 5));
    }
}
