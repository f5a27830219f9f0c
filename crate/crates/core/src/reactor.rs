//! The reactor: population, central energy buffer and the iteration loop.
//!
//! Each iteration selects one elementary reaction, lets the operator build
//! and evaluate candidates, and commits them only if the energy check
//! passes. Total energy (PE + KE over all molecules plus the buffer) is
//! conserved by every reaction, accepted or rejected.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::adaptive::{coll_rate, update_counter};
use crate::benchmarks::Objective;
use crate::config::AlgorithmConfig;
use crate::error::CroError;
use crate::molecule::Molecule;
use crate::operators::{self, ReactionKind, ReactionOutcome};
use crate::{report_value, CroRng};

/// Iterations between two collision-rate trace samples.
pub const DEFAULT_TRACE_INTERVAL: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ReactorState {
    pub population: Vec<Molecule>,
    pub buffer: f64,
    /// Successful inter-molecular minus successful on-wall collisions.
    pub counter: i64,
    pub coll_rate: f64,
    pub fe_used: u64,
    pub iteration: u64,
}

impl ReactorState {
    /// Sum of PE and KE over the population plus the buffer.
    pub fn total_energy(&self) -> f64 {
        self.population.iter().map(Molecule::energy).sum::<f64>() + self.buffer
    }
}

/// Attempt and acceptance tallies per reaction type, in the order
/// on-wall, decomposition, inter-molecular, synthesis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReactionStats {
    pub attempted: [u64; 4],
    pub accepted: [u64; 4],
    /// Reactions rejected because a candidate evaluated to a non-finite value.
    pub non_finite: u64,
}

fn slot(kind: &ReactionKind) -> usize {
    match kind {
        ReactionKind::Onwall(_) => 0,
        ReactionKind::Decomposition(_) => 1,
        ReactionKind::Inter(..) => 2,
        ReactionKind::Synthesis(..) => 3,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Best PE ever committed, after the zero-threshold rule.
    pub best_value: f64,
    pub raw_best_value: f64,
    pub best_structure: Vec<f64>,
    pub fe_used: u64,
    pub iterations: u64,
    /// `(fe_used, best so far)` each time the global best improves.
    pub best_trajectory: Vec<(u64, f64)>,
    /// `(iteration, coll_rate)` samples.
    pub coll_rate_trace: Vec<(u64, f64)>,
    pub seed: u64,
    /// Filled in by callers that have a clock; zero otherwise.
    pub wall_time: f64,
    pub final_counter: i64,
    pub final_population: usize,
    pub stats: ReactionStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub kind: ReactionKind,
    pub accepted: bool,
    pub evaluations: u64,
}

/// Picks the next reaction. See [`select_reaction_with`].
pub fn select_reaction<R: Rng + ?Sized>(
    state: &ReactorState,
    config: &AlgorithmConfig,
    rng: &mut R,
) -> ReactionKind {
    let t = rng.random::<f64>();
    select_reaction_with(t, state, config, rng)
}

/// Reaction selection given the uniform draw `t`.
///
/// `t > coll_rate` selects a single-molecule reaction: decomposition if the
/// chosen molecule has gone more than `dec_threshold` hits without
/// improving, on-wall otherwise. Otherwise two distinct molecules collide:
/// synthesis if both hold at most `syn_threshold` KE, inter-molecular
/// otherwise. Adaptive-collision variants force an inter-molecular
/// collision when only two molecules remain; the canonical variants fall
/// back to single-molecule reactions when only one remains.
pub fn select_reaction_with<R: Rng + ?Sized>(
    t: f64,
    state: &ReactorState,
    config: &AlgorithmConfig,
    rng: &mut R,
) -> ReactionKind {
    let pop = &state.population;
    let n = pop.len();
    debug_assert!(n > 0);
    if t > state.coll_rate || n < 2 {
        let i = rng.random_range(0..n);
        return if pop[i].hits_since_improvement() > config.dec_threshold {
            ReactionKind::Decomposition(i)
        } else {
            ReactionKind::Onwall(i)
        };
    }
    let (i, j) = pick_two(n, rng);
    if config.variant.is_ac_family() && n <= 2 {
        return ReactionKind::Inter(i, j);
    }
    if pop[i].ke <= config.syn_threshold && pop[j].ke <= config.syn_threshold {
        ReactionKind::Synthesis(i, j)
    } else {
        ReactionKind::Inter(i, j)
    }
}

fn pick_two<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

pub struct Reactor<'a, P: Objective + ?Sized> {
    config: AlgorithmConfig,
    problem: &'a P,
    rng: CroRng,
    state: ReactorState,
    best_pe: f64,
    best_structure: Vec<f64>,
    trajectory: Vec<(u64, f64)>,
    trace: Vec<(u64, f64)>,
    trace_interval: u64,
    stats: ReactionStats,
}

impl<'a, P: Objective + ?Sized> Reactor<'a, P> {
    /// Draws the initial population uniformly in the problem's box.
    pub fn initialize(config: &AlgorithmConfig, problem: &'a P) -> Result<Self, CroError> {
        config.validate()?;
        let dim = problem.dim();
        if dim == 0 {
            return Err(CroError::InvalidConfig(
                "problem dimension must be positive".into(),
            ));
        }
        let (lo, hi) = problem.bounds();
        let mut rng = CroRng::seed_from_u64(config.seed);
        let mut population = Vec::with_capacity(config.pop_size);
        for _ in 0..config.pop_size {
            let x: Vec<f64> = (0..dim)
                .map(|_| lo + (hi - lo) * rng.random::<f64>())
                .collect();
            let pe = problem.evaluate(&x);
            if !pe.is_finite() {
                return Err(CroError::NonFiniteInitial { value: pe });
            }
            population.push(Molecule::new(x, pe, config.init_ke));
        }
        let coll_rate = if config.variant.adapts_coll_rate() {
            coll_rate(0, config.max_fe)
        } else {
            config.coll_rate_init
        };
        let best = population
            .iter()
            .min_by(|a, b| a.pe.total_cmp(&b.pe))
            .expect("population is non-empty");
        let (best_pe, best_structure) = (best.pe, best.structure.clone());
        let state = ReactorState {
            population,
            buffer: config.init_buffer,
            counter: 0,
            coll_rate,
            fe_used: config.pop_size as u64,
            iteration: 0,
        };
        Ok(Reactor {
            trajectory: alloc::vec![(state.fe_used, best_pe)],
            trace: alloc::vec![(0, coll_rate)],
            config: config.clone(),
            problem,
            rng,
            state,
            best_pe,
            best_structure,
            trace_interval: DEFAULT_TRACE_INTERVAL,
            stats: ReactionStats::default(),
        })
    }

    /// Sample the collision rate every `interval` iterations (0 disables
    /// sampling beyond the initial value).
    pub fn with_trace_interval(mut self, interval: u64) -> Self {
        self.trace_interval = interval;
        self
    }

    pub fn state(&self) -> &ReactorState {
        &self.state
    }

    pub fn config(&self) -> &AlgorithmConfig {
        &self.config
    }

    pub fn best(&self) -> (f64, &[f64]) {
        (self.best_pe, &self.best_structure)
    }

    pub fn is_done(&self) -> bool {
        self.state.fe_used >= self.config.max_fe
    }

    /// Runs one iteration: select, react, energy check, commit or discard.
    pub fn step(&mut self) -> StepReport {
        let variant = self.config.variant;
        if variant.adapts_coll_rate() {
            self.state.coll_rate = coll_rate(self.state.counter, self.config.max_fe);
        }
        let kind = select_reaction(&self.state, &self.config, &mut self.rng);
        let outcome = self.react(&kind);
        debug_assert_eq!(outcome.evaluations, kind.cost(variant));

        let s = slot(&kind);
        self.stats.attempted[s] += 1;
        if outcome.non_finite {
            self.stats.non_finite += 1;
        }
        let accepted = outcome.accepted;
        if accepted {
            self.stats.accepted[s] += 1;
            self.commit(&kind, outcome.clone());
        }
        if variant.is_ac_family() {
            self.state.counter = update_counter(self.state.counter, &kind, accepted);
        }
        if variant.adapts_coll_rate() {
            self.state.coll_rate = coll_rate(self.state.counter, self.config.max_fe);
        }
        self.state.fe_used += outcome.evaluations;
        self.state.iteration += 1;
        if accepted {
            self.track_best(&outcome);
        }
        if self.trace_interval > 0 && self.state.iteration.is_multiple_of(self.trace_interval) {
            self.trace
                .push((self.state.iteration, self.state.coll_rate));
        }
        StepReport {
            kind,
            accepted,
            evaluations: outcome.evaluations,
        }
    }

    fn react(&mut self, kind: &ReactionKind) -> ReactionOutcome {
        let pop = &self.state.population;
        let cfg = &self.config;
        let rng = &mut self.rng;
        match *kind {
            ReactionKind::Onwall(i) => operators::onwall(&pop[i], cfg, self.problem, rng),
            ReactionKind::Decomposition(i) => {
                operators::decompose(&pop[i], self.state.buffer, cfg, self.problem, rng)
            }
            ReactionKind::Inter(i, j) if cfg.variant.is_ac_family() => {
                operators::inter_ac(&pop[i], &pop[j], cfg, self.problem, rng)
            }
            ReactionKind::Inter(i, j) => {
                operators::inter_canonical(&pop[i], &pop[j], cfg, self.problem, rng)
            }
            ReactionKind::Synthesis(i, j) => {
                operators::synthesize(&pop[i], &pop[j], self.problem, rng)
            }
        }
    }

    fn commit(&mut self, kind: &ReactionKind, outcome: ReactionOutcome) {
        let ReactionOutcome {
            new_structures,
            new_pes,
            new_kes,
            energy_delta_to_buffer,
            ..
        } = outcome;
        let mut structures = new_structures.into_iter();
        let pop = &mut self.state.population;
        match *kind {
            ReactionKind::Onwall(i) => {
                pop[i].accept(structures.next().unwrap(), new_pes[0], new_kes[0]);
            }
            ReactionKind::Decomposition(i) => {
                let c1 = Molecule::new(structures.next().unwrap(), new_pes[0], new_kes[0]);
                let c2 = Molecule::new(structures.next().unwrap(), new_pes[1], new_kes[1]);
                pop[i] = c1;
                pop.push(c2);
            }
            ReactionKind::Inter(i, j) => {
                pop[i].accept(structures.next().unwrap(), new_pes[0], new_kes[0]);
                pop[j].accept(structures.next().unwrap(), new_pes[1], new_kes[1]);
            }
            ReactionKind::Synthesis(i, j) => {
                pop[i] = Molecule::new(structures.next().unwrap(), new_pes[0], new_kes[0]);
                pop.remove(j);
            }
        }
        self.state.buffer += energy_delta_to_buffer;
    }

    fn track_best(&mut self, outcome: &ReactionOutcome) {
        for (x, &pe) in outcome.new_structures.iter().zip(&outcome.new_pes) {
            if pe < self.best_pe {
                self.best_pe = pe;
                self.best_structure.clone_from(x);
            }
        }
        if self.best_pe < self.trajectory.last().map_or(f64::INFINITY, |p| p.1) {
            self.trajectory.push((self.state.fe_used, self.best_pe));
        }
    }

    /// Steps until the evaluation budget is spent.
    pub fn run_to_completion(&mut self) {
        while !self.is_done() {
            self.step();
        }
    }

    pub fn finish(self) -> RunRecord {
        RunRecord {
            best_value: report_value(self.best_pe),
            raw_best_value: self.best_pe,
            best_structure: self.best_structure,
            fe_used: self.state.fe_used,
            iterations: self.state.iteration,
            best_trajectory: self.trajectory,
            coll_rate_trace: self.trace,
            seed: self.config.seed,
            wall_time: 0.0,
            final_counter: self.state.counter,
            final_population: self.state.population.len(),
            stats: self.stats,
        }
    }
}

/// One complete run with the default trace interval.
pub fn run<P: Objective + ?Sized>(
    config: &AlgorithmConfig,
    problem: &P,
) -> Result<RunRecord, CroError> {
    run_traced(config, problem, DEFAULT_TRACE_INTERVAL)
}

pub fn run_traced<P: Objective + ?Sized>(
    config: &AlgorithmConfig,
    problem: &P,
    trace_interval: u64,
) -> Result<RunRecord, CroError> {
    let mut reactor = Reactor::initialize(config, problem)?.with_trace_interval(trace_interval);
    reactor.run_to_completion();
    Ok(reactor.finish())
}
