//! Shared data model: element parameters, converged diatomic records and
//! their consistency checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Angular-momentum shell of an atomic basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shell {
    S,
    P,
    D,
}

impl Shell {
    pub fn l(self) -> u8 {
        match self {
            Shell::S => 0,
            Shell::P => 1,
            Shell::D => 2,
        }
    }

    /// Number of spatial orbitals, `2ℓ + 1`.
    pub fn degeneracy(self) -> usize {
        2 * self.l() as usize + 1
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "s" => Some(Shell::S),
            "p" => Some(Shell::P),
            "d" => Some(Shell::D),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Shell::S => "s",
            Shell::P => "p",
            Shell::D => "d",
        }
    }
}

/// Toy tight-binding parameters of one element.
///
/// Energies in Hartree, lengths in bohr. `n_valence` counts electrons under
/// the spin-orbital convention: every spatial orbital contributes two
/// spin-orbitals, each holding at most one electron.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementParams {
    pub symbol: String,
    pub z: u32,
    /// Shells in ascending ℓ, each with its on-site orbital energy.
    pub shells: Vec<(Shell, f64)>,
    pub hubbard_u: f64,
    pub n_valence: f64,
    pub hop_scale: f64,
    pub hop_decay: f64,
    pub overlap_scale: f64,
    pub overlap_decay: f64,
    pub rep_a: f64,
    pub rep_b: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("element {symbol}: {reason}")]
pub struct ParamError {
    pub symbol: String,
    pub reason: String,
}

impl ElementParams {
    /// Number of spatial basis orbitals on this atom.
    pub fn n_orbitals(&self) -> usize {
        self.shells.iter().map(|(s, _)| s.degeneracy()).sum()
    }

    /// Number of spin-orbitals, i.e. the maximum electron count.
    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_orbitals()
    }

    pub fn onsite(&self, shell: Shell) -> Option<f64> {
        self.shells.iter().find(|(s, _)| *s == shell).map(|&(_, e)| e)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let fail = |reason: String| {
            Err(ParamError {
                symbol: self.symbol.clone(),
                reason,
            })
        };
        if self.symbol.is_empty() {
            return fail("empty symbol".into());
        }
        if self.z < 1 {
            return fail(format!("atomic number must be >= 1, got {}", self.z));
        }
        if self.shells.is_empty() {
            return fail("no shells".into());
        }
        if self.shells.windows(2).any(|w| w[0].0 >= w[1].0) {
            return fail("shells must be distinct and in s, p, d order".into());
        }
        if self.shells.iter().any(|(_, e)| !e.is_finite()) {
            return fail("non-finite on-site energy".into());
        }
        let finite = [
            ("hubbard_u", self.hubbard_u),
            ("n_valence", self.n_valence),
            ("hop_scale", self.hop_scale),
            ("hop_decay", self.hop_decay),
            ("overlap_scale", self.overlap_scale),
            ("overlap_decay", self.overlap_decay),
            ("rep_a", self.rep_a),
            ("rep_b", self.rep_b),
        ];
        if let Some((name, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return fail(format!("{name} is not finite ({v})"));
        }
        if !(self.hubbard_u > 0.0) {
            return fail(format!("hubbard_u must be > 0, got {}", self.hubbard_u));
        }
        if !(self.hop_decay > 0.0) {
            return fail(format!("hop_decay must be > 0, got {}", self.hop_decay));
        }
        if !(self.overlap_decay > 0.0) {
            return fail(format!("overlap_decay must be > 0, got {}", self.overlap_decay));
        }
        if !(0.0..1.0).contains(&self.overlap_scale) {
            return fail(format!("overlap_scale must lie in [0, 1), got {}", self.overlap_scale));
        }
        if self.hop_scale < 0.0 || self.rep_a < 0.0 || self.rep_b < 0.0 {
            return fail("hop_scale, rep_a and rep_b must be non-negative".into());
        }
        if self.n_valence < 0.0 || self.n_valence > self.n_spin_orbitals() as f64 {
            return fail(format!(
                "n_valence {} outside [0, {}] for shells {}",
                self.n_valence,
                self.n_spin_orbitals(),
                self.shell_labels()
            ));
        }
        Ok(())
    }

    fn shell_labels(&self) -> String {
        self.shells.iter().map(|(s, _)| s.label()).collect()
    }
}

/// Gross population of one real orbital `(ℓ, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitalPopulation {
    pub l: u8,
    pub m: i8,
    pub n: f64,
}

/// Outcome of the separation line search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryStatus {
    /// `|dE/dr|` fell below the tolerance at an interior minimum.
    Converged,
    /// The energy kept decreasing up to a bracket edge.
    Unbound,
    /// Step budget exhausted before the gradient test passed.
    MaxSteps,
}

/// One relaxed two-atom system. Energies in eV, lengths in Å, dipole in
/// Debye, charges in e.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiatomicRecord {
    pub pair_id: String,
    pub elem_a: String,
    pub elem_b: String,
    pub charge_total: f64,
    pub n_electrons: f64,
    pub r_eq: f64,
    /// Spin-orbital energies, ascending.
    pub eigenvalues: Vec<f64>,
    pub occupations: Vec<f64>,
    pub fermi_level: f64,
    pub populations_a: Vec<OrbitalPopulation>,
    pub populations_b: Vec<OrbitalPopulation>,
    pub gross_charge_a: f64,
    pub gross_charge_b: f64,
    pub dipole: [f64; 3],
    pub e_band: f64,
    pub e_rep: f64,
    pub e_coul2: f64,
    pub e_tot: f64,
    pub mermin_f: f64,
    pub entropy: f64,
    pub t_e: f64,
    pub scc_iterations: u32,
    pub scc_residual: f64,
    pub converged: bool,
    pub geometry: GeometryStatus,
}

impl DiatomicRecord {
    /// True unless the SCC and the line search both succeeded.
    pub fn is_flagged(&self) -> bool {
        !self.converged || self.geometry != GeometryStatus::Converged
    }
}

/// A broken record invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub kind: &'static str,
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({:e})", self.field, self.kind, self.magnitude)
    }
}

pub const OCCUPATION_SUM_TOL: f64 = 1e-8;
pub const CHARGE_SUM_TOL: f64 = 1e-8;
pub const NEGATIVE_POPULATION_TOL: f64 = 1e-10;

/// Checks every record invariant; an empty list means the record is valid.
pub fn validate_record(rec: &DiatomicRecord) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |field, kind, magnitude| out.push(Violation { field, kind, magnitude });

    if let Some(w) = rec.eigenvalues.windows(2).find(|w| !(w[0] <= w[1])) {
        push("eigenvalues", "eigenvalues unsorted", w[0] - w[1]);
    }
    if rec.occupations.len() != rec.eigenvalues.len() {
        push(
            "occupations",
            "length differs from eigenvalues",
            rec.occupations.len() as f64 - rec.eigenvalues.len() as f64,
        );
    }
    if let Some(&f) = rec.occupations.iter().find(|f| !(0.0..=1.0).contains(*f)) {
        push("occupations", "occupation outside [0, 1]", f);
    }
    let occ_sum: f64 = rec.occupations.iter().sum();
    let occ_err = occ_sum - rec.n_electrons;
    if !(occ_err.abs() <= OCCUPATION_SUM_TOL) {
        push("occupations", "occupation sum", occ_err);
    }
    if !(rec.entropy >= 0.0) {
        push("entropy", "negative entropy", rec.entropy);
    }
    let q_err = rec.gross_charge_a + rec.gross_charge_b - rec.charge_total;
    if !(q_err.abs() <= CHARGE_SUM_TOL) {
        push("gross_charge", "charge sum", q_err);
    }
    for (field, pops) in [("populations_a", &rec.populations_a), ("populations_b", &rec.populations_b)] {
        if let Some(p) = pops.iter().find(|p| !(p.n >= -NEGATIVE_POPULATION_TOL)) {
            push(field, "negative population", p.n);
        }
    }
    let finite = [
        ("r_eq", rec.r_eq),
        ("fermi_level", rec.fermi_level),
        ("e_band", rec.e_band),
        ("e_rep", rec.e_rep),
        ("e_coul2", rec.e_coul2),
        ("e_tot", rec.e_tot),
        ("mermin_f", rec.mermin_f),
        ("t_e", rec.t_e),
    ];
    for (field, v) in finite {
        if !v.is_finite() {
            push(field, "non-finite value", v);
        }
    }
    if rec.eigenvalues.iter().chain(&rec.dipole).any(|v| !v.is_finite()) {
        push("eigenvalues", "non-finite value", f64::NAN);
    }
    out
}
