//! The random pairing machinery as executable samplers: zero-truncated
//! Poisson degree sequences conditioned on their sum, uniform stub
//! bijections, rejection down to the exactly uniform digraph G_{1,1}(n,m),
//! and seeded, reproducible Monte Carlo estimators.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::asym::solve_lambda;
use crate::error::{Error, Result};
use crate::graph::{self, DegreeSequencePair, Digraph, EventAConfig, MultiDigraph};

/// Default attempts allowed per accepted sample.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Monte Carlo result; `mean` and `stderr` are exact functions of the
/// integer hit count, so equal seeds give bit-identical estimates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub n_workers: usize,
    pub seed: u64,
}

/// One uniform stub bijection for a fixed degree pair.
#[derive(Debug, Clone)]
pub struct PairingOutcome {
    pub dsp: DegreeSequencePair,
    pub graph: MultiDigraph,
    pub simple: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    StronglyConnected,
    NoSimpleSs,
    NoSimpleSsMg,
    NoIsolatedCycle,
    EventA,
    SimplePairing,
}

impl std::str::FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "strongly_connected" => Event::StronglyConnected,
            "no_simple_ss" => Event::NoSimpleSs,
            "no_simple_ss_mg" => Event::NoSimpleSsMg,
            "no_isolated_cycle" => Event::NoIsolatedCycle,
            "event_A" | "event_a" => Event::EventA,
            "simple_pairing" => Event::SimplePairing,
            other => return Err(Error::Parse(format!("unknown event `{other}`"))),
        })
    }
}

/// Shared sampling state for one (n, m): the zero-truncated Poisson cdf
/// and the rejection budget.
pub struct PairingModel {
    pub n: usize,
    pub m: usize,
    pub lambda: f64,
    cdf: Vec<f64>,
    pub budget: u64,
}

impl PairingModel {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m < n || n == 0 {
            return Err(Error::InvalidRegime(format!(
                "need m >= n >= 1, got n = {n}, m = {m}"
            )));
        }
        let (lambda, cdf) = if m == n {
            (0.0, vec![1.0]) // degenerate: every degree is forced to 1
        } else {
            let lambda = solve_lambda(m as f64 / n as f64)?;
            let norm = lambda.exp_m1();
            let mut cdf = Vec::new();
            let mut p = 1.0; // lambda^j / j!, starting at j = 1
            let mut acc = 0.0;
            for j in 1..200 {
                p *= lambda / j as f64;
                acc += p / norm;
                cdf.push(acc);
                if j > 5 && 1.0 - acc < 1e-17 {
                    break;
                }
            }
            (lambda, cdf)
        };
        Ok(Self {
            n,
            m,
            lambda,
            cdf,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn sample_ztp(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.r#gen();
        for (i, &c) in self.cdf.iter().enumerate() {
            if u < c {
                return i + 1;
            }
        }
        self.cdf.len()
    }

    /// One degree vector: n iid zero-truncated Poissons conditioned on
    /// summing to m, by rejection with early abort.
    fn sample_degree_vector(&self, rng: &mut impl Rng) -> Result<Vec<usize>> {
        if self.m == self.n {
            return Ok(vec![1; self.n]);
        }
        let mut attempts = 0u64;
        let mut v = vec![0usize; self.n];
        loop {
            attempts += 1;
            if attempts > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                    accepted: 0,
                });
            }
            let mut sum = 0usize;
            let mut ok = true;
            for slot in v.iter_mut() {
                let d = self.sample_ztp(rng);
                sum += d;
                if sum > self.m {
                    ok = false;
                    break;
                }
                *slot = d;
            }
            if ok && sum == self.m {
                return Ok(v);
            }
        }
    }

    pub fn sample_degrees(&self, rng: &mut impl Rng) -> Result<DegreeSequencePair> {
        let delta = self.sample_degree_vector(rng)?;
        let big_delta = self.sample_degree_vector(rng)?;
        DegreeSequencePair::new(delta, big_delta)
    }

    /// Degrees plus a uniform pairing: the multi-digraph model MG_{1,1}.
    pub fn sample_multigraph(&self, rng: &mut impl Rng) -> Result<(Vec<(usize, usize)>, bool)> {
        let dsp = self.sample_degrees(rng)?;
        Ok(pair_arcs(&dsp, rng))
    }

    /// Exactly uniform over the C_{1,1}(n,m) simple digraphs: fresh
    /// degrees and a fresh pairing per attempt, accepted when simple.
    pub fn sample_digraph_arcs(&self, rng: &mut impl Rng) -> Result<Vec<(usize, usize)>> {
        for _ in 0..self.budget {
            let (arcs, simple) = self.sample_multigraph(rng)?;
            if simple {
                return Ok(arcs);
            }
        }
        Err(Error::BudgetExceeded {
            budget: self.budget,
            accepted: 0,
        })
    }
}

/// Expand the degree pair into stubs, match them with one uniform
/// permutation, and report the arcs plus a simplicity flag.
fn pair_arcs(dsp: &DegreeSequencePair, rng: &mut impl Rng) -> (Vec<(usize, usize)>, bool) {
    let m = dsp.m();
    let mut heads = Vec::with_capacity(m);
    for (v, &d) in dsp.in_degrees.iter().enumerate() {
        heads.extend(std::iter::repeat(v).take(d));
    }
    heads.shuffle(rng);
    let mut arcs = Vec::with_capacity(m);
    let mut k = 0;
    for (v, &d) in dsp.out_degrees.iter().enumerate() {
        for _ in 0..d {
            arcs.push((v, heads[k]));
            k += 1;
        }
    }
    let simple = is_simple_arc_list(dsp.n(), &arcs);
    (arcs, simple)
}

fn is_simple_arc_list(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut keys: Vec<u64> = arcs
        .iter()
        .map(|&(i, j)| (i * n + j) as u64)
        .collect();
    if arcs.iter().any(|&(i, j)| i == j) {
        return false;
    }
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

pub fn sample_truncated_poisson_degrees(
    n: usize,
    m: usize,
    rng: &mut impl Rng,
) -> Result<DegreeSequencePair> {
    PairingModel::new(n, m)?.sample_degrees(rng)
}

pub fn sample_pairing(dsp: &DegreeSequencePair, rng: &mut impl Rng) -> PairingOutcome {
    let (arcs, simple) = pair_arcs(dsp, rng);
    PairingOutcome {
        dsp: dsp.clone(),
        graph: MultiDigraph::new(dsp.n(), arcs).unwrap(),
        simple,
    }
}

pub fn sample_g11_uniform(n: usize, m: usize, rng: &mut impl Rng) -> Result<Digraph> {
    let arcs = PairingModel::new(n, m)?.sample_digraph_arcs(rng)?;
    Digraph::new(n, arcs)
}

fn worker_rng(seed: u64, worker: usize) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64 + 1);
    rng
}

fn split_samples(n_samples: u64, workers: usize) -> Vec<u64> {
    let base = n_samples / workers as u64;
    let rem = n_samples % workers as u64;
    (0..workers as u64)
        .map(|w| base + u64::from(w < rem))
        .collect()
}

/// Monte Carlo frequency of `event` over `n_samples` draws, split across
/// `workers` independent RNG streams and recombined in worker order.
pub fn estimate(
    event: Event,
    n: usize,
    m: usize,
    n_samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if workers == 0 || n_samples == 0 {
        return Err(Error::InvalidRegime("need workers >= 1 and samples >= 1".into()));
    }
    if event == Event::EventA && n > graph::MAX_SUBSET_N {
        return Err(Error::SizeGuard {
            op: "estimate(event_A)",
            n,
            limit: graph::MAX_SUBSET_N,
        });
    }
    let counts = split_samples(n_samples, workers);
    let hits = run_workers(workers, seed, |w, rng| {
        let model = PairingModel::new(n, m)?;
        let mut hit = 0u64;
        for _ in 0..counts[w] {
            if sample_event(event, &model, rng)? {
                hit += 1;
            }
        }
        Ok(hit)
    })?;
    Ok(combine(hits.iter().sum(), n_samples, workers, seed))
}

fn sample_event(event: Event, model: &PairingModel, rng: &mut ChaCha12Rng) -> Result<bool> {
    let n = model.n;
    Ok(match event {
        Event::NoSimpleSsMg => {
            let (arcs, _) = model.sample_multigraph(rng)?;
            !graph::has_simple_sink_or_source_set(n, &arcs)
        }
        Event::SimplePairing => model.sample_multigraph(rng)?.1,
        Event::NoSimpleSs => {
            let arcs = model.sample_digraph_arcs(rng)?;
            !graph::has_simple_sink_or_source_set(n, &arcs)
        }
        Event::StronglyConnected => {
            let arcs = model.sample_digraph_arcs(rng)?;
            graph::is_strongly_connected(&Digraph::new(n, arcs)?)
        }
        Event::NoIsolatedCycle => {
            let arcs = model.sample_digraph_arcs(rng)?;
            !graph::has_isolated_cycle(&Digraph::new(n, arcs)?)
        }
        Event::EventA => {
            let arcs = model.sample_digraph_arcs(rng)?;
            graph::check_event_a(&Digraph::new(n, arcs)?, EventAConfig::default())?
        }
    })
}

fn combine(hits: u64, n_samples: u64, workers: usize, seed: u64) -> McEstimate {
    let mean = hits as f64 / n_samples as f64;
    let stderr = (mean * (1.0 - mean) / n_samples as f64).sqrt();
    McEstimate {
        mean,
        stderr,
        n_samples,
        n_workers: workers,
        seed,
    }
}

fn run_workers<T: Send>(
    workers: usize,
    seed: u64,
    job: impl Fn(usize, &mut ChaCha12Rng) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let mut out: Vec<Result<T>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers {
            let job = &job;
            handles.push(scope.spawn(move || {
                let mut rng = worker_rng(seed, w);
                job(w, &mut rng)
            }));
        }
        for h in handles {
            out.push(h.join().expect("worker panicked"));
        }
    });
    out.into_iter().collect()
}

/// Empirical simplicity rate of the pairing at one fixed degree pair.
pub fn estimate_simplicity_for_degrees(
    dsp: &DegreeSequencePair,
    n_samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    let counts = split_samples(n_samples, workers);
    let hits = run_workers(workers, seed, |w, rng| {
        let mut hit = 0u64;
        for _ in 0..counts[w] {
            if pair_arcs(dsp, rng).1 {
                hit += 1;
            }
        }
        Ok(hit)
    })?;
    Ok(combine(hits.iter().sum(), n_samples, workers, seed))
}

/// Histogram of uniform G_{1,1}(n,m) samples keyed by sorted arc list.
pub fn sample_digraph_histogram(
    n: usize,
    m: usize,
    n_samples: u64,
    seed: u64,
    workers: usize,
) -> Result<BTreeMap<Vec<(usize, usize)>, u64>> {
    let counts = split_samples(n_samples, workers);
    let maps = run_workers(workers, seed, |w, rng| {
        let model = PairingModel::new(n, m)?;
        let mut map: BTreeMap<Vec<(usize, usize)>, u64> = BTreeMap::new();
        for _ in 0..counts[w] {
            let mut arcs = model.sample_digraph_arcs(rng)?;
            arcs.sort_unstable();
            *map.entry(arcs).or_insert(0) += 1;
        }
        Ok(map)
    })?;
    let mut merged: BTreeMap<Vec<(usize, usize)>, u64> = BTreeMap::new();
    for map in maps {
        for (k, v) in map {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    Ok(merged)
}

/// Pearson chi-square statistic for observed counts against expected.
pub fn chi_square_stat(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}
