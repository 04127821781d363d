//! Unit conventions.
//!
//! The engine computes in atomic units. These constants are the only place
//! where conversion factors are defined.

/// eV per Hartree. Deliberately the 6-significant-figure value used by the
/// dataset, not the CODATA one.
pub const HARTREE_TO_EV: f64 = 27.2114;

/// Å per bohr.
pub const BOHR_TO_ANGSTROM: f64 = 0.529177;

/// Debye per e·bohr.
pub const E_BOHR_TO_DEBYE: f64 = 2.541746;

#[inline]
pub fn hartree_to_ev(x: f64) -> f64 {
    x * HARTREE_TO_EV
}

#[inline]
pub fn bohr_to_angstrom(x: f64) -> f64 {
    x * BOHR_TO_ANGSTROM
}

#[inline]
pub fn e_bohr_to_debye(x: f64) -> f64 {
    x * E_BOHR_TO_DEBYE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hartree_examples() {
        assert_eq!(hartree_to_ev(1.0), 27.2114);
        assert_eq!(hartree_to_ev(0.0), 0.0);
        assert!((hartree_to_ev(-0.5) - (-13.6057)).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn hartree_is_linear(a in -1.0e3f64..1.0e3, b in -1.0e3f64..1.0e3) {
            let lhs = hartree_to_ev(a + b);
            let rhs = hartree_to_ev(a) + hartree_to_ev(b);
            let scale = 1.0 + hartree_to_ev(a).abs() + hartree_to_ev(b).abs();
            proptest::prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale);
        }
    }
}
