//! One-dimensional relaxation of the internuclear separation.
//!
//! Bracketing by golden-ratio expansion from `r0`, then golden-section
//! reduction. Termination is the central finite-difference test
//! `|dE/dr| < eps_geom` with step `h = max(1e-4, 1e-6·r)` bohr.

use core::cell::Cell;

use super::solver::{scc_solve, EnergyLedger, SccOptions, SccState};
use super::SccError;
use crate::model::{ElementParams, GeometryStatus};

const GOLDEN: f64 = 1.618_033_988_749_895;
const GOLDEN_SECTION: f64 = 0.381_966_011_250_105_1;
const INITIAL_STEP: f64 = 0.1;
const INITIAL_WIDTH: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxOptions {
    /// Gradient tolerance ε_geom (Ha/bohr).
    pub eps_geom: f64,
    /// Search window `[lo, hi]` in bohr.
    pub bracket: (f64, f64),
    /// Energy evaluations allowed for the golden-section stage.
    pub max_steps: u32,
}

impl Default for RelaxOptions {
    fn default() -> Self {
        Self {
            eps_geom: 1e-4,
            bracket: (0.6, 12.0),
            max_steps: 200,
        }
    }
}

/// Result of [`minimize_separation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearch {
    pub r: f64,
    pub energy: f64,
    /// Last finite-difference gradient (NaN for unbound results).
    pub gradient: f64,
    pub status: GeometryStatus,
    pub evaluations: u32,
}

fn fd_step(r: f64) -> f64 {
    (1e-6 * r).max(1e-4)
}

/// Minimises `energy(r)` over the bracket, starting from `r0`.
///
/// This is the engine-independent seam of [`relax_geometry`]: any energy
/// curve can be plugged in.
pub fn minimize_separation<F>(mut energy: F, r0: f64, opts: &RelaxOptions) -> Result<LineSearch, SccError>
where
    F: FnMut(f64) -> Result<f64, SccError>,
{
    let (lo, hi) = opts.bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(SccError::Domain("bracket must satisfy 0 < lo < hi"));
    }
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(SccError::Domain("initial separation must be finite and > 0"));
    }
    if !(opts.eps_geom > 0.0) {
        return Err(SccError::Domain("eps_geom must be > 0"));
    }

    let count = Cell::new(0u32);
    let mut eval = |r: f64| -> Result<f64, SccError> {
        count.set(count.get() + 1);
        energy(r)
    };
    let unbound = |r: f64, e: f64| LineSearch {
        r,
        energy: e,
        gradient: f64::NAN,
        status: GeometryStatus::Unbound,
        evaluations: count.get(),
    };

    // Bracket (a, b, c) with a < b < c and E(b) ≤ E(a), E(b) ≤ E(c).
    let mut b = r0.clamp(lo, hi);
    let mut fb = eval(b)?;
    let c0 = (b + INITIAL_STEP).min(hi);
    let fc0 = if c0 > b { eval(c0)? } else { f64::INFINITY };

    let (mut a, mut fa, mut c, mut fc);
    if fc0 < fb {
        // Downhill to larger r.
        let mut prev = b;
        let mut fprev = fb;
        b = c0;
        fb = fc0;
        loop {
            if b >= hi {
                return Ok(unbound(hi, fb));
            }
            let next = (b + GOLDEN * (b - prev)).min(hi);
            let fnext = eval(next)?;
            if fnext > fb {
                a = prev;
                fa = fprev;
                c = next;
                fc = fnext;
                break;
            }
            prev = b;
            fprev = fb;
            b = next;
            fb = fnext;
        }
    } else {
        c = c0;
        fc = fc0;
        let a0 = (b - INITIAL_STEP).max(lo);
        let fa0 = if a0 < b { eval(a0)? } else { f64::INFINITY };
        if fa0 < fb {
            // Downhill to smaller r.
            let mut prev = b;
            let mut fprev = fb;
            b = a0;
            fb = fa0;
            loop {
                if b <= lo {
                    return Ok(unbound(lo, fb));
                }
                let next = (b - GOLDEN * (prev - b)).max(lo);
                let fnext = eval(next)?;
                if fnext > fb {
                    a = next;
                    fa = fnext;
                    c = prev;
                    fc = fprev;
                    break;
                }
                prev = b;
                fprev = fb;
                b = next;
                fb = fnext;
            }
        } else {
            a = a0;
            fa = fa0;
        }
    }
    // r0 sat on a bracket edge with the energy rising inward.
    if a >= b || b >= c {
        let edge = b;
        let (inner_lo, inner_hi) = if a >= b { (b, c) } else { (a, b) };
        let x = inner_lo + GOLDEN_SECTION * (inner_hi - inner_lo);
        let fx = eval(x)?;
        if fx >= fb {
            return Ok(unbound(edge, fb));
        }
        if a >= b {
            a = b;
            fa = fb;
        } else {
            c = b;
            fc = fb;
        }
        b = x;
        fb = fx;
    }
    let _ = (fa, fc);

    let mut width_tol = INITIAL_WIDTH;
    let mut steps = 0u32;
    loop {
        if c - a <= width_tol * (1.0 + b) {
            let h = fd_step(b);
            let g = (eval(b + h)? - eval(b - h)?) / (2.0 * h);
            if g.abs() < opts.eps_geom {
                return Ok(LineSearch {
                    r: b,
                    energy: fb,
                    gradient: g,
                    status: GeometryStatus::Converged,
                    evaluations: count.get(),
                });
            }
            width_tol *= 0.1;
            if width_tol < 1e-14 {
                return Ok(LineSearch {
                    r: b,
                    energy: fb,
                    gradient: g,
                    status: GeometryStatus::MaxSteps,
                    evaluations: count.get(),
                });
            }
        }
        if steps >= opts.max_steps {
            let h = fd_step(b);
            let g = (eval(b + h)? - eval(b - h)?) / (2.0 * h);
            let status = if g.abs() < opts.eps_geom {
                GeometryStatus::Converged
            } else {
                GeometryStatus::MaxSteps
            };
            return Ok(LineSearch {
                r: b,
                energy: fb,
                gradient: g,
                status,
                evaluations: count.get(),
            });
        }
        steps += 1;
        let x = if c - b > b - a {
            b + GOLDEN_SECTION * (c - b)
        } else {
            b - GOLDEN_SECTION * (b - a)
        };
        let fx = eval(x)?;
        if fx < fb {
            if x > b {
                a = b;
            } else {
                c = b;
            }
            b = x;
            fb = fx;
        } else if x > b {
            c = x;
        } else {
            a = x;
        }
    }
}

/// Relaxed dimer.
#[derive(Debug, Clone)]
pub struct Relaxed {
    /// Equilibrium separation (bohr).
    pub r_eq: f64,
    pub state: SccState,
    pub ledger: EnergyLedger,
    pub status: GeometryStatus,
    pub gradient: f64,
}

/// Relaxes the separation of a dimer, each trial energy being a full
/// [`scc_solve`]. A non-converged SCC at any trial point marks the final
/// state as not converged.
pub fn relax_geometry(
    pa: &ElementParams,
    pb: &ElementParams,
    r0: f64,
    t_e: f64,
    charge_total: f64,
    scc: &SccOptions,
    opts: &RelaxOptions,
) -> Result<Relaxed, SccError> {
    let mut all_converged = true;
    let search = minimize_separation(
        |r| {
            let (state, ledger) = scc_solve(pa, pb, r, t_e, charge_total, scc)?;
            all_converged &= state.converged;
            Ok(ledger.e_tot)
        },
        r0,
        opts,
    )?;
    let (mut state, ledger) = scc_solve(pa, pb, search.r, t_e, charge_total, scc)?;
    state.converged &= all_converged;
    Ok(Relaxed {
        r_eq: search.r,
        state,
        ledger,
        status: search.status,
        gradient: search.gradient,
    })
}
