use alloc::vec::Vec;

/// One candidate solution together with its energies and hit statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    pub structure: Vec<f64>,
    /// Potential energy: the objective value at `structure`.
    pub pe: f64,
    /// Kinetic energy: how much worse a new structure may be and still be
    /// accepted.
    pub ke: f64,
    pub num_hit: u64,
    pub min_hit: u64,
    pub min_pe: f64,
    pub min_structure: Vec<f64>,
}

impl Molecule {
    pub fn new(structure: Vec<f64>, pe: f64, ke: f64) -> Self {
        Molecule {
            min_structure: structure.clone(),
            structure,
            pe,
            ke,
            num_hit: 0,
            min_hit: 0,
            min_pe: pe,
        }
    }

    pub fn energy(&self) -> f64 {
        self.pe + self.ke
    }

    /// Hits since `min_pe` last improved.
    pub fn hits_since_improvement(&self) -> u64 {
        self.num_hit - self.min_hit
    }

    /// Commits a new structure after a successful reaction and updates the
    /// hit bookkeeping.
    pub(crate) fn accept(&mut self, structure: Vec<f64>, pe: f64, ke: f64) {
        self.structure = structure;
        self.pe = pe;
        self.ke = ke;
        self.num_hit += 1;
        if pe < self.min_pe {
            self.min_pe = pe;
            self.min_structure.clone_from(&self.structure);
            self.min_hit = self.num_hit;
        }
    }
}
