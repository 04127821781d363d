//! Fermi–Dirac occupations, Fermi-level search and the electronic entropy.
//!
//! Occupations are per spin-orbital, `f ∈ [0, 1]`, with `Σ f = N_e`.

use alloc::vec;
use alloc::vec::Vec;

use super::SccError;

/// Target accuracy of `Σ f − N_e` after the Fermi-level search.
pub const ELECTRON_COUNT_TOL: f64 = 1e-10;

/// Relative width inside which T = 0 levels count as degenerate with μ_F.
const DEGENERACY_TOL: f64 = 1e-12;

/// `1 / (1 + exp(x))`, evaluated without overflow for large `|x|`.
#[inline]
fn logistic_complement(x: f64) -> f64 {
    if x > 0.0 {
        let e = libm::exp(-x);
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + libm::exp(x))
    }
}

/// Occupation of one level.
///
/// At `t_e = 0` this is the step function with `f(μ_F) = ½`.
#[inline]
pub fn fermi_dirac(eps: f64, mu: f64, t_e: f64) -> f64 {
    if t_e > 0.0 {
        logistic_complement((eps - mu) / t_e)
    } else if eps < mu {
        1.0
    } else if eps > mu {
        0.0
    } else {
        0.5
    }
}

/// Fermi–Dirac occupations of every level.
pub fn fermi_occupations(eigenvalues: &[f64], mu: f64, t_e: f64) -> Vec<f64> {
    eigenvalues.iter().map(|&e| fermi_dirac(e, mu, t_e)).collect()
}

/// `−Σ [f ln f + (1−f) ln(1−f)]` with `0 ln 0 = 0`.
pub fn electronic_entropy(occupations: &[f64]) -> f64 {
    let xlnx = |x: f64| if x > 0.0 { x * libm::log(x) } else { 0.0 };
    let s: f64 = occupations.iter().map(|&f| xlnx(f) + xlnx(1.0 - f)).sum();
    // Each term is ≤ 0; only the sign of an exact zero needs fixing.
    if s == 0.0 {
        0.0
    } else {
        -s
    }
}

fn check_count(eigenvalues: &[f64], n_e: f64) -> Result<(), SccError> {
    if !(n_e > 0.0 && n_e < eigenvalues.len() as f64) {
        return Err(SccError::ElectronCount {
            n_e,
            n_levels: eigenvalues.len(),
        });
    }
    Ok(())
}

/// Finds μ_F with `Σ f(ε_i, μ_F, t_e) = n_e`.
///
/// `eigenvalues` must be ascending. For `t_e > 0` the count equation is
/// bisected down to machine resolution. The residual is evaluated as
/// `Σ_{i≥k} f_i − Σ_{i<k} (1 − f_i) − (n_e − k)` with `k = ⌊n_e⌋`, which keeps
/// the exponentially small tails of both sides, so the root sits where the
/// tails actually balance (mid-gap for a symmetric gap) rather than anywhere
/// in the floating-point plateau of `Σ f`.
///
/// At `t_e = 0` and integer `n_e` the midpoint of levels `n_e` and `n_e + 1`
/// (1-based) is returned; degenerate frontier levels return the level itself.
pub fn find_fermi_level(eigenvalues: &[f64], n_e: f64, t_e: f64) -> Result<f64, SccError> {
    check_count(eigenvalues, n_e)?;
    if !(t_e >= 0.0) || !t_e.is_finite() {
        return Err(SccError::Domain("electronic temperature must be finite and >= 0"));
    }
    if t_e == 0.0 {
        return Ok(zero_temperature_level(eigenvalues, n_e));
    }

    let k = libm::floor(n_e) as usize;
    let frac = n_e - k as f64;
    let residual = |mu: f64| -> f64 {
        let mut above = 0.0;
        for &e in &eigenvalues[k..] {
            above += fermi_dirac(e, mu, t_e);
        }
        let mut holes = 0.0;
        for &e in &eigenvalues[..k] {
            holes += logistic_complement((mu - e) / t_e);
        }
        above - holes - frac
    };

    let first = eigenvalues[0];
    let last = eigenvalues[eigenvalues.len() - 1];
    let margin = 50.0 * t_e + 1.0;
    let mut lo = first - margin;
    let mut hi = last + margin;
    let mut r_lo = residual(lo);
    let mut r_hi = residual(hi);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = residual(mid);
        if r == 0.0 {
            return Ok(mid);
        }
        if r < 0.0 {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
    }
    Ok(if r_lo.abs() <= r_hi.abs() { lo } else { hi })
}

fn zero_temperature_level(eigenvalues: &[f64], n_e: f64) -> f64 {
    let top = libm::ceil(n_e) as usize; // 1-based index of the highest filled level
    let homo = eigenvalues[top - 1];
    let tol = DEGENERACY_TOL * (1.0 + homo.abs());
    if n_e == top as f64 {
        let lumo = eigenvalues[top];
        if lumo - homo > tol {
            return 0.5 * (homo + lumo);
        }
    }
    homo
}

/// Aufbau occupations at `t_e = 0`: levels below μ_F are full, levels
/// degenerate with μ_F share the remaining electrons equally.
pub fn zero_temperature_occupations(eigenvalues: &[f64], n_e: f64, mu: f64) -> Vec<f64> {
    let tol = DEGENERACY_TOL * (1.0 + mu.abs());
    let mut occ = vec![0.0; eigenvalues.len()];
    let mut below = 0usize;
    let mut shell = Vec::new();
    for (i, &e) in eigenvalues.iter().enumerate() {
        if e < mu - tol {
            occ[i] = 1.0;
            below += 1;
        } else if e <= mu + tol {
            shell.push(i);
        }
    }
    if !shell.is_empty() {
        let share = ((n_e - below as f64) / shell.len() as f64).clamp(0.0, 1.0);
        for i in shell {
            occ[i] = share;
        }
    }
    occ
}

/// Occupations and μ_F for the given temperature, using the step-function
/// branch at `t_e = 0`.
pub fn occupy(eigenvalues: &[f64], n_e: f64, t_e: f64) -> Result<(f64, Vec<f64>), SccError> {
    let mu = find_fermi_level(eigenvalues, n_e, t_e)?;
    let occ = if t_e > 0.0 {
        fermi_occupations(eigenvalues, mu, t_e)
    } else {
        zero_temperature_occupations(eigenvalues, n_e, mu)
    };
    Ok((mu, occ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_spectrum_centres_fermi_level() {
        let mu = find_fermi_level(&[-1.0, 1.0], 1.0, 0.1).unwrap();
        assert_eq!(mu, 0.0);
    }

    #[test]
    fn zero_temperature_midpoint() {
        assert_eq!(find_fermi_level(&[0.0, 1.0], 1.0, 0.0).unwrap(), 0.5);
    }

    #[test]
    fn three_level_count_is_conserved() {
        let eps = [0.0, 0.2, 1.0];
        let mu = find_fermi_level(&eps, 2.0, 0.05).unwrap();
        let n: f64 = fermi_occupations(&eps, mu, 0.05).iter().sum();
        assert!((n - 2.0).abs() <= ELECTRON_COUNT_TOL);
    }

    #[test]
    fn electron_count_outside_range_is_rejected() {
        assert!(find_fermi_level(&[0.0, 1.0], 2.0, 0.1).is_err());
        assert!(find_fermi_level(&[0.0, 1.0], 0.0, 0.1).is_err());
        assert!(find_fermi_level(&[0.0, 1.0], 1.0, -0.1).is_err());
    }

    #[test]
    fn occupation_examples() {
        assert_eq!(fermi_dirac(0.3, 0.3, 0.01), 0.5);
        let f = fermi_dirac(libm::log(3.0) * 0.02, 0.0, 0.02);
        assert!((f - 0.25).abs() < 1e-12);
        assert_eq!(fermi_dirac(-1.0, 0.0, 0.0), 1.0);
        assert_eq!(fermi_dirac(1.0, 0.0, 0.0), 0.0);
        assert_eq!(fermi_dirac(0.0, 0.0, 0.0), 0.5);
        // No overflow far from μ.
        assert_eq!(fermi_dirac(1e3, 0.0, 1e-6), 0.0);
        assert_eq!(fermi_dirac(-1e3, 0.0, 1e-6), 1.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(electronic_entropy(&[0.0, 1.0, 1.0, 0.0]), 0.0);
        let two = electronic_entropy(&[0.5, 0.5]);
        assert!((two - 2.0 * core::f64::consts::LN_2).abs() < 1e-15);
        let q = electronic_entropy(&[0.25]);
        assert!((q - 0.562_335_144_618_808_6).abs() < 1e-12);
    }

    #[test]
    fn zero_temperature_degenerate_frontier_shares_electrons() {
        let eps = [-1.0, 0.0, 0.0, 0.0, 2.0];
        let (mu, occ) = occupy(&eps, 2.0, 0.0).unwrap();
        assert_eq!(mu, 0.0);
        let third = 1.0 / 3.0;
        assert_eq!(occ, [1.0, third, third, third, 0.0]);
        let (mu, occ) = occupy(&[0.0, 1.0], 1.0, 0.0).unwrap();
        assert_eq!(mu, 0.5);
        assert_eq!(occ, [1.0, 0.0]);
    }

    #[test]
    fn fractional_electron_count_at_zero_temperature() {
        let (mu, occ) = occupy(&[-1.0, 0.0, 1.0], 1.5, 0.0).unwrap();
        assert_eq!(mu, 0.0);
        assert_eq!(occ, [1.0, 0.5, 0.0]);
    }

    #[test]
    fn entropy_grows_with_temperature_on_gapless_pair() {
        let eps = [0.0, 0.0, 0.1, 0.1];
        let mut prev = -1.0;
        for t in [0.001, 0.01, 0.05, 0.1, 0.5] {
            let (_, occ) = occupy(&eps, 2.0, t).unwrap();
            let s = electronic_entropy(&occ);
            assert!(s >= prev);
            prev = s;
        }
    }
}
