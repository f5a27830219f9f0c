//! Elementary reactions and the structure-manipulation primitives they use.
//!
//! Every operator is a pure function of its inputs and the random stream:
//! it builds candidate structures, evaluates them and decides acceptance via
//! the energy check, but leaves committing to the reactor. The energy-check
//! arithmetic is split out into `*_energy` functions so it can be exercised
//! with fixed random draws.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::benchmarks::Objective;
use crate::config::{AlgorithmConfig, BoundaryScheme, Variant};
use crate::molecule::Molecule;

/// A selected reaction with the population indices it involves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReactionKind {
    Onwall(usize),
    Decomposition(usize),
    Inter(usize, usize),
    Synthesis(usize, usize),
}

impl ReactionKind {
    /// Objective evaluations charged for this reaction, accepted or not.
    pub fn cost(&self, variant: Variant) -> u64 {
        match self {
            ReactionKind::Onwall(_) | ReactionKind::Synthesis(..) => 1,
            ReactionKind::Decomposition(_) => 2,
            ReactionKind::Inter(..) if variant == Variant::CroAc1Step => 1,
            ReactionKind::Inter(..) => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReactionKind::Onwall(_) => "onwall",
            ReactionKind::Decomposition(_) => "decomposition",
            ReactionKind::Inter(..) => "inter",
            ReactionKind::Synthesis(..) => "synthesis",
        }
    }
}

/// Candidate result of one elementary reaction.
///
/// `new_structures`, `new_pes` and `new_kes` line up with the reacting
/// molecules in the order they were passed in (one entry for on-wall and
/// synthesis, two for decomposition and inter-molecular collisions).
/// `new_kes` is only meaningful when `accepted` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactionOutcome {
    pub new_structures: Vec<Vec<f64>>,
    pub new_pes: Vec<f64>,
    pub new_kes: Vec<f64>,
    pub accepted: bool,
    /// Signed energy flow into the central buffer on acceptance.
    pub energy_delta_to_buffer: f64,
    pub evaluations: u64,
    /// Set when any candidate evaluated to NaN or an infinity.
    pub non_finite: bool,
}

impl ReactionOutcome {
    fn rejected(new_structures: Vec<Vec<f64>>, new_pes: Vec<f64>, evaluations: u64) -> Self {
        let non_finite = new_pes.iter().any(|p| !p.is_finite());
        ReactionOutcome {
            new_kes: vec![0.0; new_pes.len()],
            new_structures,
            new_pes,
            accepted: false,
            energy_delta_to_buffer: 0.0,
            evaluations,
            non_finite,
        }
    }
}

// ---------------------------------------------------------------------------
// Energy checks
// ---------------------------------------------------------------------------

/// On-wall energy check. `q` is the fraction of the surplus kept as KE.
/// Returns `(new_ke, to_buffer)` on acceptance.
pub fn onwall_energy(pe: f64, ke: f64, new_pe: f64, q: f64) -> Option<(f64, f64)> {
    let surplus = pe + ke - new_pe;
    if surplus >= 0.0 {
        Some((surplus * q, surplus * (1.0 - q)))
    } else {
        None
    }
}

/// Decomposition energy check with buffer assistance.
///
/// `assist` is the product of two uniform draws and is only consulted when
/// the molecule alone cannot pay for the children. `split` decides how the
/// available energy is shared. Returns `(ke1, ke2, to_buffer)`.
pub fn decomposition_energy(
    pe: f64,
    ke: f64,
    child_pes: (f64, f64),
    buffer: f64,
    assist: f64,
    split: f64,
) -> Option<(f64, f64, f64)> {
    let surplus = pe + ke - child_pes.0 - child_pes.1;
    let (available, to_buffer) = if surplus >= 0.0 {
        (surplus, 0.0)
    } else {
        let drawn = assist * buffer;
        let e = surplus + drawn;
        if e < 0.0 {
            return None;
        }
        (e, -drawn)
    };
    Some((available * split, available * (1.0 - split), to_buffer))
}

/// Joint check for a two-molecule collision; `total_in` is the summed
/// PE + KE of both inputs. Returns the two new KE values.
pub fn inter_energy(total_in: f64, new_pes: (f64, f64), split: f64) -> Option<(f64, f64)> {
    let surplus = total_in - new_pes.0 - new_pes.1;
    if surplus >= 0.0 {
        Some((surplus * split, surplus * (1.0 - split)))
    } else {
        None
    }
}

/// Synthesis check: the merged molecule keeps the whole surplus as KE.
pub fn synthesis_energy(total_in: f64, new_pe: f64) -> Option<f64> {
    let surplus = total_in - new_pe;
    (surplus >= 0.0).then_some(surplus)
}

// ---------------------------------------------------------------------------
// Structure primitives
// ---------------------------------------------------------------------------

/// Brings every coordinate of `x` back into `[lo, hi]`.
pub fn apply_boundary<R: Rng + ?Sized>(
    x: &mut [f64],
    (lo, hi): (f64, f64),
    scheme: BoundaryScheme,
    rng: &mut R,
) {
    let width = hi - lo;
    for xi in x.iter_mut() {
        if *xi >= lo && *xi <= hi {
            continue;
        }
        *xi = match scheme {
            BoundaryScheme::Clip => xi.max(lo).min(hi),
            BoundaryScheme::Resample => lo + width * rng.random::<f64>(),
            BoundaryScheme::Reflect => {
                if width <= 0.0 {
                    lo
                } else {
                    // Repeated folding is periodic with period 2 * width.
                    let period = 2.0 * width;
                    let mut t = *xi - lo;
                    t -= period * libm::floor(t / period);
                    if t > width {
                        t = period - t;
                    }
                    (lo + t).max(lo).min(hi)
                }
            }
        };
    }
}

/// Copy of `structure` with `eps` added to coordinate `index`.
pub fn displace(structure: &[f64], index: usize, eps: f64) -> Vec<f64> {
    let mut out = structure.to_vec();
    out[index] += eps;
    out
}

/// Gaussian neighborhood move: one uniformly chosen coordinate receives a
/// zero-mean normal perturbation with variance `step_size`.
pub fn neighborhood<R: Rng + ?Sized>(
    structure: &[f64],
    step_size: f64,
    bounds: (f64, f64),
    scheme: BoundaryScheme,
    rng: &mut R,
) -> Vec<f64> {
    let mut out = structure.to_vec();
    perturb_in_place(&mut out, step_size, bounds, scheme, rng);
    out
}

fn perturb_in_place<R: Rng + ?Sized>(
    x: &mut [f64],
    step_size: f64,
    bounds: (f64, f64),
    scheme: BoundaryScheme,
    rng: &mut R,
) {
    let index = rng.random_range(0..x.len());
    let eps = gaussian(step_size, rng);
    x[index] += eps;
    apply_boundary(&mut x[index..=index], bounds, scheme, rng);
}

fn gaussian<R: Rng + ?Sized>(variance: f64, rng: &mut R) -> f64 {
    Normal::new(0.0, libm::sqrt(variance))
        .expect("step size is validated positive")
        .sample(rng)
}

/// First half of the two-step collision: moves the worse structure `s`
/// toward the better structure `t`, `s'_i = (t_i - s_i) r_i + s_i`.
pub fn pull_toward(s: &[f64], t: &[f64], r: &[f64]) -> Vec<f64> {
    s.iter()
        .zip(t)
        .zip(r)
        .map(|((&si, &ti), &ri)| (ti - si) * ri + si)
        .collect()
}

/// Second half: pushes `t` away from the moved structure,
/// `t'_i = (t_i - s'_i) r_i + t_i`.
pub fn push_away(t: &[f64], s_moved: &[f64], r: &[f64]) -> Vec<f64> {
    t.iter()
        .zip(s_moved)
        .zip(r)
        .map(|((&ti, &si), &ri)| (ti - si) * ri + ti)
        .collect()
}

fn uniform_vec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.random::<f64>()).collect()
}

// ---------------------------------------------------------------------------
// Elementary reactions
// ---------------------------------------------------------------------------

pub fn onwall<P, R>(
    m: &Molecule,
    config: &AlgorithmConfig,
    problem: &P,
    rng: &mut R,
) -> ReactionOutcome
where
    P: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let candidate = neighborhood(
        &m.structure,
        config.step_size,
        problem.bounds(),
        config.boundary_scheme,
        rng,
    );
    let new_pe = problem.evaluate(&candidate);
    if !new_pe.is_finite() {
        return ReactionOutcome::rejected(vec![candidate], vec![new_pe], 1);
    }
    let q = config.ke_loss_rate + (1.0 - config.ke_loss_rate) * rng.random::<f64>();
    match onwall_energy(m.pe, m.ke, new_pe, q) {
        Some((ke, to_buffer)) => ReactionOutcome {
            new_structures: vec![candidate],
            new_pes: vec![new_pe],
            new_kes: vec![ke],
            accepted: true,
            energy_delta_to_buffer: to_buffer,
            evaluations: 1,
            non_finite: false,
        },
        None => ReactionOutcome::rejected(vec![candidate], vec![new_pe], 1),
    }
}

/// Splits `m` into two children, each perturbed by `dec_perturbations`
/// independent neighborhood moves. `buffer` is the current central buffer.
pub fn decompose<P, R>(
    m: &Molecule,
    buffer: f64,
    config: &AlgorithmConfig,
    problem: &P,
    rng: &mut R,
) -> ReactionOutcome
where
    P: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let bounds = problem.bounds();
    let mut children = [m.structure.clone(), m.structure.clone()];
    for child in children.iter_mut() {
        for _ in 0..config.dec_perturbations {
            perturb_in_place(child, config.step_size, bounds, config.boundary_scheme, rng);
        }
    }
    let [c1, c2] = children;
    let pes = (problem.evaluate(&c1), problem.evaluate(&c2));
    let structures = vec![c1, c2];
    if !(pes.0.is_finite() && pes.1.is_finite()) {
        return ReactionOutcome::rejected(structures, vec![pes.0, pes.1], 2);
    }
    let surplus = m.pe + m.ke - pes.0 - pes.1;
    let assist = if surplus < 0.0 {
        rng.random::<f64>() * rng.random::<f64>()
    } else {
        0.0
    };
    let split = rng.random::<f64>();
    match decomposition_energy(m.pe, m.ke, pes, buffer, assist, split) {
        Some((ke1, ke2, to_buffer)) => ReactionOutcome {
            new_structures: structures,
            new_pes: vec![pes.0, pes.1],
            new_kes: vec![ke1, ke2],
            accepted: true,
            energy_delta_to_buffer: to_buffer,
            evaluations: 2,
            non_finite: false,
        },
        None => ReactionOutcome::rejected(structures, vec![pes.0, pes.1], 2),
    }
}

fn finish_inter<R: Rng + ?Sized>(
    m1: &Molecule,
    m2: &Molecule,
    structures: Vec<Vec<f64>>,
    pes: (f64, f64),
    evaluations: u64,
    rng: &mut R,
) -> ReactionOutcome {
    if !(pes.0.is_finite() && pes.1.is_finite()) {
        return ReactionOutcome::rejected(structures, vec![pes.0, pes.1], evaluations);
    }
    let split = rng.random::<f64>();
    match inter_energy(m1.energy() + m2.energy(), pes, split) {
        Some((ke1, ke2)) => ReactionOutcome {
            new_structures: structures,
            new_pes: vec![pes.0, pes.1],
            new_kes: vec![ke1, ke2],
            accepted: true,
            energy_delta_to_buffer: 0.0,
            evaluations,
            non_finite: false,
        },
        None => ReactionOutcome::rejected(structures, vec![pes.0, pes.1], evaluations),
    }
}

/// Canonical inter-molecular collision: an independent neighborhood move
/// on each molecule, accepted jointly.
pub fn inter_canonical<P, R>(
    m1: &Molecule,
    m2: &Molecule,
    config: &AlgorithmConfig,
    problem: &P,
    rng: &mut R,
) -> ReactionOutcome
where
    P: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let bounds = problem.bounds();
    let c1 = neighborhood(
        &m1.structure,
        config.step_size,
        bounds,
        config.boundary_scheme,
        rng,
    );
    let c2 = neighborhood(
        &m2.structure,
        config.step_size,
        bounds,
        config.boundary_scheme,
        rng,
    );
    let pes = (problem.evaluate(&c1), problem.evaluate(&c2));
    finish_inter(m1, m2, vec![c1, c2], pes, 2, rng)
}

/// Adaptive-collision inter-molecular operator.
///
/// The molecule with the larger PE (`m1` on a tie) is pulled toward the
/// other one with a fresh uniform weight per dimension; unless the variant
/// is one-step, the better molecule is then pushed away from the moved
/// structure with new per-dimension weights. In the one-step variant the
/// better molecule is left untouched and only one evaluation is spent.
pub fn inter_ac<P, R>(
    m1: &Molecule,
    m2: &Molecule,
    config: &AlgorithmConfig,
    problem: &P,
    rng: &mut R,
) -> ReactionOutcome
where
    P: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let bounds = problem.bounds();
    let first_is_worse = m1.pe >= m2.pe;
    let (worse, better) = if first_is_worse { (m1, m2) } else { (m2, m1) };
    let dim = worse.structure.len();

    let r = uniform_vec(dim, rng);
    let mut moved = pull_toward(&worse.structure, &better.structure, &r);
    let (mut pushed, evaluations) = if config.variant.two_step_inter() {
        let r = uniform_vec(dim, rng);
        (push_away(&better.structure, &moved, &r), 2)
    } else {
        (better.structure.clone(), 1)
    };
    apply_boundary(&mut moved, bounds, config.boundary_scheme, rng);
    apply_boundary(&mut pushed, bounds, config.boundary_scheme, rng);

    let moved_pe = problem.evaluate(&moved);
    let pushed_pe = if evaluations == 2 {
        problem.evaluate(&pushed)
    } else {
        better.pe
    };
    let (structures, pes) = if first_is_worse {
        (vec![moved, pushed], (moved_pe, pushed_pe))
    } else {
        (vec![pushed, moved], (pushed_pe, moved_pe))
    };
    finish_inter(m1, m2, structures, pes, evaluations, rng)
}

/// Merges two molecules: each coordinate is copied from either parent
/// with probability one half.
pub fn synthesize<P, R>(m1: &Molecule, m2: &Molecule, problem: &P, rng: &mut R) -> ReactionOutcome
where
    P: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let child: Vec<f64> = m1
        .structure
        .iter()
        .zip(&m2.structure)
        .map(|(&a, &b)| if rng.random::<bool>() { a } else { b })
        .collect();
    let pe = problem.evaluate(&child);
    if !pe.is_finite() {
        return ReactionOutcome::rejected(vec![child], vec![pe], 1);
    }
    match synthesis_energy(m1.energy() + m2.energy(), pe) {
        Some(ke) => ReactionOutcome {
            new_structures: vec![child],
            new_pes: vec![pe],
            new_kes: vec![ke],
            accepted: true,
            energy_delta_to_buffer: 0.0,
            evaluations: 1,
            non_finite: false,
        },
        None => ReactionOutcome::rejected(vec![child], vec![pe], 1),
    }
}
