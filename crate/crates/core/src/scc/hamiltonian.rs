//! Toy two-centre matrix elements, the γ interaction and the pair repulsion.
//!
//! Inter-atomic H⁰ and S blocks couple only orbitals with equal `(ℓ, m)`:
//!
//! ```text
//! H⁰_μν = −√(hop_A · hop_B) · exp(−r / ℓ_h),   ℓ_h = √(hop_decay_A · hop_decay_B)
//! S_μν  =  √(ovl_A · ovl_B) · exp(−r / ℓ_s),   ℓ_s = √(ovl_decay_A · ovl_decay_B)
//! ```

use super::basis::{Atom, BasisMap};
use super::SccError;
use crate::linalg::{Cholesky, Matrix};
use crate::model::ElementParams;

/// Klopman–Ohno interaction `1/√(r² + ¼(1/U_A + 1/U_B)²)` in Hartree/e².
pub fn gamma(u_a: f64, u_b: f64, r: f64) -> Result<f64, SccError> {
    if !(u_a > 0.0) || !(u_b > 0.0) || !(r >= 0.0) || !r.is_finite() {
        return Err(SccError::Domain("gamma needs U_A > 0, U_B > 0 and finite r >= 0"));
    }
    let a = 1.0 / u_a + 1.0 / u_b;
    Ok(1.0 / libm::sqrt(r * r + 0.25 * a * a))
}

/// Born–Mayer pair repulsion `√(a_A a_B) · exp(−½(b_A + b_B) r)` in Hartree.
pub fn repulsive_energy(pa: &ElementParams, pb: &ElementParams, r: f64) -> f64 {
    libm::sqrt(pa.rep_a * pb.rep_a) * libm::exp(-0.5 * (pa.rep_b + pb.rep_b) * r)
}

/// Geometry-dependent but charge-independent part of a dimer problem:
/// H⁰, S (already factorised) and the 2×2 γ matrix.
#[derive(Debug, Clone)]
pub struct TbModel {
    pub basis: BasisMap,
    pub h0: Matrix,
    pub overlap: Matrix,
    pub cholesky: Cholesky,
    /// `γ[A][B]` indexed by [`Atom::index`].
    pub gamma: [[f64; 2]; 2],
}

impl TbModel {
    pub fn new(pa: &ElementParams, pb: &ElementParams, r: f64) -> Result<Self, SccError> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(SccError::Domain("separation must be finite and > 0"));
        }
        let basis = BasisMap::new(pa, pb);
        let n = basis.n_orb();

        let hop = libm::sqrt(pa.hop_scale * pb.hop_scale) * libm::exp(-r / libm::sqrt(pa.hop_decay * pb.hop_decay));
        let ovl = libm::sqrt(pa.overlap_scale * pb.overlap_scale)
            * libm::exp(-r / libm::sqrt(pa.overlap_decay * pb.overlap_decay));

        let mut h0 = Matrix::zeros(n, n);
        let mut overlap = Matrix::identity(n);
        for mu in basis.range(Atom::A) {
            h0[(mu, mu)] = basis.orbital(mu).onsite;
        }
        for nu in basis.range(Atom::B) {
            h0[(nu, nu)] = basis.orbital(nu).onsite;
        }
        for mu in basis.range(Atom::A) {
            let om = basis.orbital(mu);
            for nu in basis.range(Atom::B) {
                let on = basis.orbital(nu);
                if om.l() == on.l() && om.m == on.m {
                    h0[(mu, nu)] = -hop;
                    h0[(nu, mu)] = -hop;
                    overlap[(mu, nu)] = ovl;
                    overlap[(nu, mu)] = ovl;
                }
            }
        }

        let cholesky = Cholesky::new(&overlap).map_err(SccError::Overlap)?;
        let g_ab = gamma(pa.hubbard_u, pb.hubbard_u, r)?;
        let gamma = [
            [gamma(pa.hubbard_u, pa.hubbard_u, 0.0)?, g_ab],
            [g_ab, gamma(pb.hubbard_u, pb.hubbard_u, 0.0)?],
        ];
        Ok(Self {
            basis,
            h0,
            overlap,
            cholesky,
            gamma,
        })
    }

    /// SCC Hamiltonian for net atomic charges `dq` (positive = electron
    /// deficit).
    ///
    /// `H_μν = H⁰_μν + ½ S_μν Σ_C (γ_AC + γ_BC) Δn_C` with `Δn_C = −dq_C` the
    /// electron-count fluctuation, so that an electron-rich atom has its levels
    /// pushed up.
    pub fn hamiltonian(&self, dq: [f64; 2]) -> Matrix {
        let shift = |atom: Atom| -> f64 {
            let i = atom.index();
            -(self.gamma[i][0] * dq[0] + self.gamma[i][1] * dq[1])
        };
        let shifts = [shift(Atom::A), shift(Atom::B)];
        let n = self.basis.n_orb();
        let mut h = self.h0.clone();
        for mu in 0..n {
            let sa = shifts[self.basis.orbital(mu).atom.index()];
            for nu in 0..n {
                let s = self.overlap[(mu, nu)];
                if s != 0.0 {
                    let sb = shifts[self.basis.orbital(nu).atom.index()];
                    h[(mu, nu)] += 0.5 * s * (sa + sb);
                }
            }
        }
        h
    }

    /// `½ Σ_AB γ_AB Δq_A Δq_B`.
    pub fn coulomb_energy(&self, dq: [f64; 2]) -> f64 {
        let mut e = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                e += self.gamma[a][b] * dq[a] * dq[b];
            }
        }
        0.5 * e
    }
}

/// Builds `(H, S, basis)` for separation `r` (bohr) and net charges `dq`.
pub fn build_matrices(
    pa: &ElementParams,
    pb: &ElementParams,
    r: f64,
    dq: [f64; 2],
) -> Result<(Matrix, Matrix, BasisMap), SccError> {
    let model = TbModel::new(pa, pb, r)?;
    let h = model.hamiltonian(dq);
    Ok((h, model.overlap, model.basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Shell;
    use alloc::vec;

    fn s_only(symbol: &str, onsite: f64) -> ElementParams {
        ElementParams {
            symbol: symbol.into(),
            z: 1,
            shells: vec![(Shell::S, onsite)],
            hubbard_u: 0.4,
            n_valence: 1.0,
            hop_scale: 0.5,
            hop_decay: 1.0,
            overlap_scale: 0.3,
            overlap_decay: 1.0,
            rep_a: 1.0,
            rep_b: 1.0,
        }
    }

    #[test]
    fn gamma_examples() {
        assert!((gamma(0.4, 0.4, 0.0).unwrap() - 0.4).abs() < 1e-15);
        let g = gamma(0.5, 0.5, 3.0).unwrap();
        assert!((g - 0.277_350_098_112_614_6).abs() < 1e-12);
        let far = gamma(0.4, 0.4, 1000.0).unwrap();
        assert!((far * 1000.0 - 1.0).abs() < 1e-5);
        assert!(gamma(0.0, 0.4, 1.0).is_err());
        assert!(gamma(0.4, 0.4, -1.0).is_err());
    }

    #[test]
    fn gamma_decreases_with_distance() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let g = gamma(0.3, 0.7, i as f64 * 0.1).unwrap();
            assert!(g < prev);
            prev = g;
        }
    }

    #[test]
    fn repulsion_examples() {
        let p = s_only("X", -0.3);
        assert!((repulsive_energy(&p, &p, 0.0) - 1.0).abs() < 1e-15);
        assert!((repulsive_energy(&p, &p, 2.0) - 0.135_335_283_236_612_7).abs() < 1e-12);
        assert!(repulsive_energy(&p, &p, 800.0) < 1e-300);
    }

    #[test]
    fn single_s_hopping_element() {
        let p = s_only("X", -0.3);
        let (h, s, basis) = build_matrices(&p, &p, 1.0, [0.0, 0.0]).unwrap();
        assert_eq!(basis.n_orb(), 2);
        assert!((h[(0, 1)] + 0.183_939_720_585_721_2).abs() < 1e-12);
        assert_eq!(h[(0, 0)], -0.3);
        assert_eq!(h[(0, 0)], h[(1, 1)]);
        assert!(h.is_symmetric(0.0));
        assert_eq!(s[(0, 0)], 1.0);
        assert!((s[(0, 1)] - 0.3 * libm::exp(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn blocks_vanish_at_large_separation() {
        let mut p = s_only("X", -0.3);
        p.shells = vec![(Shell::S, -0.5), (Shell::P, -0.2)];
        let (h, s, basis) = build_matrices(&p, &p, 200.0, [0.0, 0.0]).unwrap();
        for mu in basis.range(Atom::A) {
            for nu in basis.range(Atom::B) {
                assert!(h[(mu, nu)].abs() < 1e-40);
                assert!(s[(mu, nu)].abs() < 1e-40);
            }
        }
    }

    #[test]
    fn selection_rule_couples_equal_lm_only() {
        let mut pa = s_only("X", -0.3);
        pa.shells = vec![(Shell::S, -0.5), (Shell::P, -0.2)];
        let mut pb = s_only("Y", -0.4);
        pb.shells = vec![(Shell::P, -0.25), (Shell::D, -0.1)];
        let (h, s, basis) = build_matrices(&pa, &pb, 2.0, [0.0, 0.0]).unwrap();
        for mu in basis.range(Atom::A) {
            for nu in basis.range(Atom::B) {
                let (om, on) = (basis.orbital(mu), basis.orbital(nu));
                let coupled = om.l() == on.l() && om.m == on.m;
                assert_eq!(h[(mu, nu)] != 0.0, coupled);
                assert_eq!(s[(mu, nu)] != 0.0, coupled);
            }
        }
    }

    #[test]
    fn scc_shift_raises_electron_rich_atom() {
        let pa = s_only("X", -0.3);
        let pb = s_only("Y", -0.3);
        // A carries −0.2 e (extra electrons), B +0.2 e.
        let (h, _, _) = build_matrices(&pa, &pb, 2.0, [-0.2, 0.2]).unwrap();
        assert!(h[(0, 0)] > -0.3);
        assert!(h[(1, 1)] < -0.3);
        let g_aa = 0.4;
        let g_ab = gamma(0.4, 0.4, 2.0).unwrap();
        assert!((h[(0, 0)] - (-0.3 + 0.2 * (g_aa - g_ab))).abs() < 1e-15);
    }

    #[test]
    fn misconfigured_overlap_is_a_distinct_failure() {
        let mut p = s_only("X", -0.3);
        p.overlap_scale = 1.5;
        let err = build_matrices(&p, &p, 0.1, [0.0, 0.0]).unwrap_err();
        assert!(matches!(err, SccError::Overlap(_)));
        assert!(matches!(build_matrices(&p, &p, 0.0, [0.0, 0.0]), Err(SccError::Domain(_))));
    }
}
