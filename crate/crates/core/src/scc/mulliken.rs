use alloc::vec::Vec;

use super::basis::{Atom, BasisMap};
use crate::linalg::Matrix;
use crate::model::OrbitalPopulation;

/// Mulliken partition of one density.
#[derive(Debug, Clone, PartialEq)]
pub struct Mulliken {
    /// Gross population `(PS)_μμ` of every basis orbital.
    pub orbital: Vec<f64>,
    /// Gross atomic populations `g_A`, `g_B`.
    pub gross: [f64; 2],
    /// Net charges `q_α = n_valence(α) − g_α`.
    pub charges: [f64; 2],
}

impl Mulliken {
    /// `(ℓ, m)`-resolved populations of one atom in basis order.
    pub fn populations(&self, basis: &BasisMap, atom: Atom) -> Vec<OrbitalPopulation> {
        basis
            .range(atom)
            .map(|mu| {
                let o = basis.orbital(mu);
                OrbitalPopulation {
                    l: o.l(),
                    m: o.m,
                    n: self.orbital[mu],
                }
            })
            .collect()
    }

    /// Replaces both atoms' populations by their mirror average. Only
    /// meaningful for a homonuclear basis, where it removes the last-bit
    /// asymmetry rounding leaves between the two halves.
    pub fn mirror_average(&mut self, basis: &BasisMap, n_valence: [f64; 2]) {
        let (ra, rb) = (basis.range(Atom::A), basis.range(Atom::B));
        debug_assert_eq!(ra.len(), rb.len());
        for (mu, nu) in ra.clone().zip(rb.clone()) {
            let avg = 0.5 * (self.orbital[mu] + self.orbital[nu]);
            self.orbital[mu] = avg;
            self.orbital[nu] = avg;
        }
        self.gross = [ra.map(|mu| self.orbital[mu]).sum(), rb.map(|nu| self.orbital[nu]).sum()];
        self.charges = [n_valence[0] - self.gross[0], n_valence[1] - self.gross[1]];
    }
}

/// Density matrix `P_μν = Σ_i f_i c_μi c_νi` over the columns of `c`.
pub fn density_matrix(c: &Matrix, occupations: &[f64]) -> Matrix {
    assert_eq!(c.cols(), occupations.len(), "one occupation per column");
    let n = c.rows();
    let mut p = Matrix::zeros(n, n);
    for (i, &f) in occupations.iter().enumerate() {
        if f == 0.0 {
            continue;
        }
        for mu in 0..n {
            let fc = f * c[(mu, i)];
            for nu in 0..n {
                p[(mu, nu)] += fc * c[(nu, i)];
            }
        }
    }
    p
}

/// Mulliken analysis of the states in the columns of `c` with occupations
/// `occupations`; `n_valence` holds the neutral-atom electron counts of A and B.
pub fn mulliken(
    c: &Matrix,
    occupations: &[f64],
    overlap: &Matrix,
    basis: &BasisMap,
    n_valence: [f64; 2],
) -> Mulliken {
    let p = density_matrix(c, occupations);
    let n = basis.n_orb();
    let orbital: Vec<f64> = (0..n)
        .map(|mu| (0..n).map(|nu| p[(mu, nu)] * overlap[(nu, mu)]).sum())
        .collect();
    let mut gross = [0.0; 2];
    for atom in [Atom::A, Atom::B] {
        gross[atom.index()] = basis.range(atom).map(|mu| orbital[mu]).sum();
    }
    let charges = [n_valence[0] - gross[0], n_valence[1] - gross[1]];
    Mulliken {
        orbital,
        gross,
        charges,
    }
}
