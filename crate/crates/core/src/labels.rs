//! Scalar labels derived from a relaxed dimer record.
//!
//! Ionisation potential and electron affinity use Koopmans' approximation,
//! `I = −ε_HOMO` and `A = −ε_LUMO`. Quantities that divide by the hardness
//! are left undefined (`None`) when `|η|` does not exceed [`ETA_FLOOR`].

use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::model::DiatomicRecord;
use crate::units::e_bohr_to_debye;

/// Hardness (eV) at or below which softness and electrophilicity are undefined.
pub const ETA_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabelError {
    #[error("{n_e} electrons fill all {n_levels} levels; no LUMO")]
    NoVirtual { n_e: f64, n_levels: usize },
    #[error("electron count {n_e} is not positive")]
    NoElectrons { n_e: f64 },
    #[error("record {0} is flagged (unconverged SCC or geometry)")]
    Flagged(String),
}

/// Frontier levels in the units of the input eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frontier {
    pub e_homo: f64,
    pub e_lumo: f64,
    pub e_g: f64,
}

/// HOMO is the level with 1-based index `⌈n_e⌉` under spin-orbital aufbau
/// filling, LUMO the one after it.
pub fn derive_frontier(eigenvalues: &[f64], n_e: f64) -> Result<Frontier, LabelError> {
    if !(n_e > 0.0) {
        return Err(LabelError::NoElectrons { n_e });
    }
    let homo = libm::ceil(n_e) as usize;
    if homo >= eigenvalues.len() {
        return Err(LabelError::NoVirtual {
            n_e,
            n_levels: eigenvalues.len(),
        });
    }
    let e_homo = eigenvalues[homo - 1];
    let e_lumo = eigenvalues[homo];
    Ok(Frontier {
        e_homo,
        e_lumo,
        e_g: e_lumo - e_homo,
    })
}

pub fn koopmans_ip_ea(e_homo: f64, e_lumo: f64) -> (f64, f64) {
    (-e_homo, -e_lumo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConceptualDft {
    pub chi: f64,
    pub eta: f64,
    pub softness: Option<f64>,
    pub mu_chem: f64,
    pub omega: Option<f64>,
}

/// χ = (I + A)/2, η = (I − A)/2, μ = −χ, S = 1/η, ω = μ²/(2η).
pub fn conceptual_dft(ip: f64, ea: f64) -> ConceptualDft {
    let chi = 0.5 * (ip + ea);
    let eta = 0.5 * (ip - ea);
    let mu_chem = -chi;
    let defined = eta.abs() > ETA_FLOOR;
    ConceptualDft {
        chi,
        eta,
        softness: defined.then(|| 1.0 / eta),
        mu_chem,
        omega: defined.then(|| mu_chem * mu_chem / (2.0 * eta)),
    }
}

/// Point-charge dipole `Σ q_α R_α` in Debye, for charges in e and positions
/// in bohr.
pub fn point_charge_dipole(charges: &[f64], positions: &[[f64; 3]]) -> [f64; 3] {
    assert_eq!(charges.len(), positions.len(), "one position per charge");
    let mut mu = [0.0; 3];
    for (q, r) in charges.iter().zip(positions) {
        for k in 0..3 {
            mu[k] += q * r[k];
        }
    }
    mu.map(e_bohr_to_debye)
}

pub fn dipole_norm(mu: [f64; 3]) -> f64 {
    libm::sqrt(mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeStats {
    pub q_maxabs: f64,
    pub q_absmean: f64,
    pub q_std: f64,
}

/// `max(|q_A|, |q_B|)`, `½(|q_A| + |q_B|)` and the population standard
/// deviation of `(q_A, q_B)`.
pub fn charge_statistics(q_a: f64, q_b: f64) -> ChargeStats {
    let mean = 0.5 * (q_a + q_b);
    let var = 0.5 * ((q_a - mean) * (q_a - mean) + (q_b - mean) * (q_b - mean));
    ChargeStats {
        q_maxabs: q_a.abs().max(q_b.abs()),
        q_absmean: 0.5 * (q_a.abs() + q_b.abs()),
        q_std: libm::sqrt(var),
    }
}

/// One label row. Energies in eV, dipoles in Debye, `bond_r` in Å.
///
/// `None` marks an undefined value: quantities built on the LUMO when every
/// level is filled, and softness or electrophilicity for a vanishing
/// hardness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarLabels {
    pub pair_id: String,
    pub elem_a: String,
    pub elem_b: String,
    pub e_g: Option<f64>,
    pub e_homo: f64,
    pub e_lumo: Option<f64>,
    pub e_fermi: f64,
    pub e_band: f64,
    pub e_rep: f64,
    pub e_tot: f64,
    pub mermin_f: f64,
    pub ip: f64,
    pub ea: Option<f64>,
    pub chi: Option<f64>,
    pub eta: Option<f64>,
    pub softness: Option<f64>,
    pub mu_chem: Option<f64>,
    pub omega: Option<f64>,
    pub mu_x: f64,
    pub mu_y: f64,
    pub mu_z: f64,
    pub mu_norm: f64,
    pub bond_r: f64,
    pub q_maxabs: f64,
    pub q_absmean: f64,
    pub q_std: f64,
}

impl ScalarLabels {
    /// Column names in serialization order.
    pub const COLUMNS: [&'static str; 26] = [
        "pair_id", "elem_a", "elem_b", "e_g", "e_homo", "e_lumo", "e_fermi", "e_band", "e_rep", "e_tot", "mermin_f",
        "ip", "ea", "chi", "eta", "softness", "mu_chem", "omega", "mu_x", "mu_y", "mu_z", "mu_norm", "bond_r",
        "q_maxabs", "q_absmean", "q_std",
    ];

    /// Numeric columns (everything after the three identifiers) in order.
    pub fn numeric(&self) -> [Option<f64>; 23] {
        [
            self.e_g,
            Some(self.e_homo),
            self.e_lumo,
            Some(self.e_fermi),
            Some(self.e_band),
            Some(self.e_rep),
            Some(self.e_tot),
            Some(self.mermin_f),
            Some(self.ip),
            self.ea,
            self.chi,
            self.eta,
            self.softness,
            self.mu_chem,
            self.omega,
            Some(self.mu_x),
            Some(self.mu_y),
            Some(self.mu_z),
            Some(self.mu_norm),
            Some(self.bond_r),
            Some(self.q_maxabs),
            Some(self.q_absmean),
            Some(self.q_std),
        ]
    }
}

/// Builds the label row of a relaxed, converged record.
///
/// The record already carries eV / Å / Debye, so no unit conversion happens
/// here. A filled spectrum is not an error: the LUMO-dependent columns come
/// back as `None`.
pub fn assemble_labels(rec: &DiatomicRecord) -> Result<ScalarLabels, LabelError> {
    if rec.is_flagged() {
        return Err(LabelError::Flagged(rec.pair_id.clone()));
    }
    let (e_homo, e_lumo) = match derive_frontier(&rec.eigenvalues, rec.n_electrons) {
        Ok(f) => (f.e_homo, Some(f.e_lumo)),
        Err(LabelError::NoVirtual { .. }) => {
            let k = libm::ceil(rec.n_electrons) as usize;
            (rec.eigenvalues[k.min(rec.eigenvalues.len()) - 1], None)
        }
        Err(e) => return Err(e),
    };
    let ip = -e_homo;
    let cdft = e_lumo.map(|l| conceptual_dft(ip, -l));
    let q = charge_statistics(rec.gross_charge_a, rec.gross_charge_b);
    let [mu_x, mu_y, mu_z] = rec.dipole;

    Ok(ScalarLabels {
        pair_id: rec.pair_id.clone(),
        elem_a: rec.elem_a.clone(),
        elem_b: rec.elem_b.clone(),
        e_g: e_lumo.map(|l| l - e_homo),
        e_homo,
        e_lumo,
        e_fermi: rec.fermi_level,
        e_band: rec.e_band,
        e_rep: rec.e_rep,
        e_tot: rec.e_tot,
        mermin_f: rec.mermin_f,
        ip,
        ea: e_lumo.map(|l| -l),
        chi: cdft.map(|c| c.chi),
        eta: cdft.map(|c| c.eta),
        softness: cdft.and_then(|c| c.softness),
        mu_chem: cdft.map(|c| c.mu_chem),
        omega: cdft.and_then(|c| c.omega),
        mu_x,
        mu_y,
        mu_z,
        mu_norm: dipole_norm(rec.dipole),
        bond_r: rec.r_eq,
        q_maxabs: q.q_maxabs,
        q_absmean: q.q_absmean,
        q_std: q.q_std,
    })
}
