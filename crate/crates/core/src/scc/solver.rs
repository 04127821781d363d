use alloc::vec::Vec;

use super::hamiltonian::{repulsive_energy, TbModel};
use super::mulliken::{mulliken, Mulliken};
use super::occupation::{electronic_entropy, occupy};
use super::SccError;
use crate::linalg::Matrix;
use crate::model::ElementParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SccOptions {
    /// Linear mixing weight α of the new charges, `0 < α ≤ 1`.
    pub mixing: f64,
    /// Charge tolerance ε_SCC (e).
    pub eps_scc: f64,
    /// Total-energy tolerance ε_SCF (Ha).
    pub eps_scf: f64,
    pub max_iter: u32,
}

impl Default for SccOptions {
    fn default() -> Self {
        Self {
            mixing: 0.3,
            eps_scc: 1e-8,
            eps_scf: 1e-8,
            max_iter: 200,
        }
    }
}

impl SccOptions {
    fn check(&self) -> Result<(), SccError> {
        if !(self.mixing > 0.0 && self.mixing <= 1.0) {
            return Err(SccError::Domain("mixing weight must lie in (0, 1]"));
        }
        if !(self.eps_scc > 0.0) || !(self.eps_scf > 0.0) {
            return Err(SccError::Domain("SCC tolerances must be > 0"));
        }
        if self.max_iter == 0 {
            return Err(SccError::Domain("max_iter must be >= 1"));
        }
        Ok(())
    }
}

/// Energy decomposition in Hartree (entropy dimensionless).
///
/// `e_tot` and `mermin_f` are always computed by [`EnergyLedger::new`], so
/// `e_tot == e_band + e_coul2 + e_rep` and `mermin_f == e_tot − t_e·entropy`
/// hold bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLedger {
    pub e_band: f64,
    pub e_coul2: f64,
    pub e_rep: f64,
    pub e_tot: f64,
    pub entropy: f64,
    pub mermin_f: f64,
}

impl EnergyLedger {
    pub fn new(e_band: f64, e_coul2: f64, e_rep: f64, entropy: f64, t_e: f64) -> Self {
        let e_tot = e_band + e_coul2 + e_rep;
        Self {
            e_band,
            e_coul2,
            e_rep,
            e_tot,
            entropy,
            mermin_f: e_tot - t_e * entropy,
        }
    }
}

/// Converged (or last) SCC iterate.
#[derive(Debug, Clone)]
pub struct SccState {
    /// Net Mulliken charges `(Δq_A, Δq_B)` of the final density.
    pub dq: [f64; 2],
    /// Spatial orbital energies (Ha), ascending.
    pub orbital_energies: Vec<f64>,
    /// Spatial coefficients; column `k` belongs to `orbital_energies[k]`.
    pub coefficients: Matrix,
    /// Spin-orbital energies: every spatial level listed once per spin.
    pub eigenvalues: Vec<f64>,
    /// Spin-orbital occupations, parallel to `eigenvalues`.
    pub occupations: Vec<f64>,
    pub fermi_level: f64,
    pub mulliken: Mulliken,
    pub n_electrons: f64,
    /// Mulliken charges of every iterate, in order.
    pub dq_history: Vec<[f64; 2]>,
    pub iterations: u32,
    pub residual: f64,
    pub converged: bool,
}

/// Spin-orbital view of a spin-unpolarised spatial solution: each level and
/// coefficient column is repeated for the two spin channels.
pub(crate) fn spin_orbitals(values: &[f64], c: &Matrix) -> (Vec<f64>, Matrix) {
    let eps = values.iter().flat_map(|&e| [e, e]).collect();
    let c2 = Matrix::from_fn(c.rows(), 2 * c.cols(), |i, j| c[(i, j / 2)]);
    (eps, c2)
}

/// Self-consistent-charge solve at fixed separation `r` (bohr).
///
/// Starts from an even split of `charge_total` and mixes linearly,
/// `Δq ← (1−α)Δq + α·Δq_out`, until the mixed charges move by less than
/// `eps_scc` and the total energy by less than `eps_scf` between iterations.
/// Running out of iterations is not an error: the last iterate is returned
/// with `converged = false`.
pub fn scc_solve(
    pa: &ElementParams,
    pb: &ElementParams,
    r: f64,
    t_e: f64,
    charge_total: f64,
    opts: &SccOptions,
) -> Result<(SccState, EnergyLedger), SccError> {
    opts.check()?;
    if !(t_e >= 0.0) || !t_e.is_finite() {
        return Err(SccError::Domain("electronic temperature must be finite and >= 0"));
    }
    let model = TbModel::new(pa, pb, r)?;
    let n_valence = [pa.n_valence, pb.n_valence];
    let n_e = n_valence[0] + n_valence[1] - charge_total;
    let n_levels = 2 * model.basis.n_orb();
    if !(n_e > 0.0 && n_e < n_levels as f64) {
        return Err(SccError::ElectronCount { n_e, n_levels });
    }
    let e_rep = repulsive_energy(pa, pb, r);
    // Identical atoms: the symmetric density is exact, so rounding noise
    // between the halves is averaged out.
    let homonuclear = pa == pb;
    let alpha = opts.mixing;

    let mut dq_in = [0.5 * charge_total; 2];
    let mut prev_energy: Option<f64> = None;
    let mut history = Vec::new();
    let mut iter = 0;
    loop {
        iter += 1;
        let h = model.hamiltonian(dq_in);
        let eig = model.cholesky.solve_generalized(&h)?;
        let (eps, c_spin) = spin_orbitals(&eig.values, &eig.vectors);
        let (mu, occ) = occupy(&eps, n_e, t_e)?;
        let mut m = mulliken(&c_spin, &occ, &model.overlap, &model.basis, n_valence);
        if homonuclear {
            m.mirror_average(&model.basis, n_valence);
        }
        let dq_out = m.charges;
        history.push(dq_out);

        let e_band: f64 = occ.iter().zip(&eps).map(|(f, e)| f * e).sum();
        let ledger = EnergyLedger::new(
            e_band,
            model.coulomb_energy(dq_out),
            e_rep,
            electronic_entropy(&occ),
            t_e,
        );

        let dq_next = [
            (1.0 - alpha) * dq_in[0] + alpha * dq_out[0],
            (1.0 - alpha) * dq_in[1] + alpha * dq_out[1],
        ];
        let residual = (dq_next[0] - dq_in[0]).abs().max((dq_next[1] - dq_in[1]).abs());
        let energy_ok = prev_energy.is_some_and(|e| (ledger.e_tot - e).abs() < opts.eps_scf);
        let converged = energy_ok && residual < opts.eps_scc;

        if converged || iter >= opts.max_iter {
            let state = SccState {
                dq: dq_out,
                orbital_energies: eig.values,
                coefficients: eig.vectors,
                eigenvalues: eps,
                occupations: occ,
                fermi_level: mu,
                mulliken: m,
                n_electrons: n_e,
                dq_history: history,
                iterations: iter,
                residual,
                converged,
            };
            return Ok((state, ledger));
        }
        prev_energy = Some(ledger.e_tot);
        dq_in = dq_next;
    }
}
