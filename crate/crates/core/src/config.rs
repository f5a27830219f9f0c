//! Algorithm variants and tunable parameters.

use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::error::CroError;

/// Which member of the CRO family to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Two-step inter-molecular collision with the adaptive collision rate.
    CroAc,
    /// Two-step collision, collision rate fixed at `coll_rate_init`.
    CroAc02,
    /// Adaptive collision rate, but the collision only pulls the worse
    /// molecule toward the better one.
    CroAc1Step,
    CroBp,
    CroHp,
    CroBb,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::CroAc,
        Variant::CroAc02,
        Variant::CroAc1Step,
        Variant::CroBp,
        Variant::CroHp,
        Variant::CroBb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::CroAc => "cro-ac",
            Variant::CroAc02 => "cro-ac-0.2",
            Variant::CroAc1Step => "cro-ac-1step",
            Variant::CroBp => "cro-bp",
            Variant::CroHp => "cro-hp",
            Variant::CroBb => "cro-bb",
        }
    }

    /// Stable numeric code, used when deriving per-run seeds.
    pub fn code(self) -> u64 {
        match self {
            Variant::CroAc => 1,
            Variant::CroAc02 => 2,
            Variant::CroAc1Step => 3,
            Variant::CroBp => 4,
            Variant::CroHp => 5,
            Variant::CroBb => 6,
        }
    }

    /// Members of the adaptive-collision family: they use the new
    /// inter-molecular operator, track the success counter and never let
    /// the population drop below two.
    pub fn is_ac_family(self) -> bool {
        matches!(
            self,
            Variant::CroAc | Variant::CroAc02 | Variant::CroAc1Step
        )
    }

    /// Whether the collision rate follows the success counter.
    pub fn adapts_coll_rate(self) -> bool {
        matches!(self, Variant::CroAc | Variant::CroAc1Step)
    }

    pub fn two_step_inter(self) -> bool {
        !matches!(self, Variant::CroAc1Step)
    }

    pub fn default_boundary(self) -> BoundaryScheme {
        match self {
            Variant::CroHp => BoundaryScheme::Resample,
            Variant::CroBb => BoundaryScheme::Clip,
            _ => BoundaryScheme::Reflect,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = CroError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace(['/', '_'], "-");
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == norm)
            .ok_or_else(|| CroError::Unknown {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

/// How coordinates that leave the search box are brought back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryScheme {
    /// Fold back across the violated bound until inside.
    Reflect,
    /// Saturate at the violated bound.
    Clip,
    /// Redraw the coordinate uniformly in range.
    Resample,
}

impl BoundaryScheme {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryScheme::Reflect => "reflect",
            BoundaryScheme::Clip => "clip",
            BoundaryScheme::Resample => "resample",
        }
    }
}

impl fmt::Display for BoundaryScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryScheme {
    type Err = CroError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reflect" => Ok(BoundaryScheme::Reflect),
            "clip" => Ok(BoundaryScheme::Clip),
            "resample" => Ok(BoundaryScheme::Resample),
            _ => Err(CroError::Unknown {
                kind: "boundary scheme",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub variant: Variant,
    pub pop_size: usize,
    /// Variance of the Gaussian neighborhood perturbation.
    pub step_size: f64,
    pub init_buffer: f64,
    pub init_ke: f64,
    pub coll_rate_init: f64,
    pub ke_loss_rate: f64,
    /// Decomposition fires once `num_hit - min_hit` exceeds this.
    pub dec_threshold: u64,
    /// Synthesis fires when both molecules hold at most this much KE.
    pub syn_threshold: f64,
    pub max_fe: u64,
    pub boundary_scheme: BoundaryScheme,
    /// Neighborhood applications per child in a decomposition.
    pub dec_perturbations: usize,
    pub seed: u64,
}

impl AlgorithmConfig {
    /// Default parameters for `variant` (population 20, step size 1,
    /// buffer 1e5, initial KE 1e7, collision rate 0.2, KE loss 0.1,
    /// decomposition threshold 1.5e5, synthesis threshold 10, 300000 FEs).
    pub fn new(variant: Variant) -> Self {
        AlgorithmConfig {
            variant,
            pop_size: 20,
            step_size: 1.0,
            init_buffer: 1e5,
            init_ke: 1e7,
            coll_rate_init: 0.2,
            ke_loss_rate: 0.1,
            dec_threshold: 150_000,
            syn_threshold: 10.0,
            max_fe: 300_000,
            boundary_scheme: variant.default_boundary(),
            dec_perturbations: 10,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_fe(mut self, max_fe: u64) -> Self {
        self.max_fe = max_fe;
        self
    }

    pub fn validate(&self) -> Result<(), CroError> {
        let fail = |msg: &str| Err(CroError::InvalidConfig(msg.to_string()));
        let min_pop = if self.variant.is_ac_family() { 2 } else { 1 };
        if self.pop_size < min_pop {
            return Err(CroError::InvalidConfig(format!(
                "{} needs a population of at least {min_pop}",
                self.variant
            )));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return fail("step_size must be positive and finite");
        }
        if !(self.init_buffer >= 0.0 && self.init_buffer.is_finite()) {
            return fail("init_buffer must be non-negative and finite");
        }
        if !(self.init_ke >= 0.0 && self.init_ke.is_finite()) {
            return fail("init_ke must be non-negative and finite");
        }
        if !(self.coll_rate_init > 0.0 && self.coll_rate_init < 1.0) {
            return fail("coll_rate_init must lie in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.ke_loss_rate) {
            return fail("ke_loss_rate must lie in [0, 1]");
        }
        if self.dec_threshold == 0 {
            return fail("dec_threshold must be positive");
        }
        if self.syn_threshold.is_nan() {
            return fail("syn_threshold must be a number");
        }
        if self.dec_perturbations == 0 {
            return fail("dec_perturbations must be positive");
        }
        if self.max_fe < self.pop_size as u64 {
            return fail("max_fe must cover the initial population");
        }
        Ok(())
    }
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig::new(Variant::CroAc)
    }
}
