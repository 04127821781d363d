use alloc::vec::Vec;

use crate::model::{ElementParams, Shell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    A,
    B,
}

impl Atom {
    pub fn index(self) -> usize {
        match self {
            Atom::A => 0,
            Atom::B => 1,
        }
    }
}

/// One spatial basis function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbital {
    pub atom: Atom,
    pub shell: Shell,
    pub m: i8,
    pub onsite: f64,
}

impl Orbital {
    pub fn l(&self) -> u8 {
        self.shell.l()
    }
}

/// Orbital layout of a dimer: all orbitals of A, then all of B, each atom
/// ordered by `(ℓ, m)` with `m` running from `−ℓ` to `ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMap {
    orbitals: Vec<Orbital>,
    n_a: usize,
}

impl BasisMap {
    pub fn new(pa: &ElementParams, pb: &ElementParams) -> Self {
        let mut orbitals = Vec::with_capacity(pa.n_orbitals() + pb.n_orbitals());
        for (atom, params) in [(Atom::A, pa), (Atom::B, pb)] {
            for &(shell, onsite) in &params.shells {
                let l = shell.l() as i8;
                for m in -l..=l {
                    orbitals.push(Orbital {
                        atom,
                        shell,
                        m,
                        onsite,
                    });
                }
            }
        }
        Self {
            orbitals,
            n_a: pa.n_orbitals(),
        }
    }

    pub fn n_orb(&self) -> usize {
        self.orbitals.len()
    }

    pub fn orbitals(&self) -> &[Orbital] {
        &self.orbitals
    }

    pub fn orbital(&self, mu: usize) -> &Orbital {
        &self.orbitals[mu]
    }

    /// Index range of the orbitals centred on `atom`.
    pub fn range(&self, atom: Atom) -> core::ops::Range<usize> {
        match atom {
            Atom::A => 0..self.n_a,
            Atom::B => self.n_a..self.orbitals.len(),
        }
    }
}
