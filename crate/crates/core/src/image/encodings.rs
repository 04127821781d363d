//! Small per-record matrices that are later resampled onto the canvas.

use crate::model::OrbitalPopulation;

use super::ImageError;

pub type Mat3 = [[f64; 3]; 3];
pub type Mat2 = [[f64; 2]; 2];

/// Shell populations `P_ℓ = Σ_m n_ℓm` for ℓ = s, p, d.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShellVector(pub [f64; 3]);

impl ShellVector {
    pub fn from_populations(pops: &[OrbitalPopulation]) -> Result<Self, ImageError> {
        let mut p = [0.0; 3];
        for o in pops {
            if o.l > 2 {
                return Err(ImageError::AngularMomentum { l: o.l });
            }
            p[o.l as usize] += o.n;
        }
        Ok(Self(p))
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `P_ℓ / Σ P`, or zeros for an empty atom.
    pub fn distribution(&self) -> [f64; 3] {
        let t = self.total();
        if t == 0.0 {
            [0.0; 3]
        } else {
            self.0.map(|x| x / t)
        }
    }
}

/// Min–max normalisation over the three shells; a flat vector maps to ½.
pub fn normalize_shells(p: ShellVector) -> [f64; 3] {
    let lo = p.0.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = p.0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    if !(range > 0.0) {
        return [0.5; 3];
    }
    p.0.map(|x| ((x - lo) / range).clamp(0.0, 1.0))
}

/// Gramian angular field `G_ij = cos(φ_i + φ_j)`, `φ = arccos p̃`.
pub fn gaf(p: [f64; 3]) -> Mat3 {
    let phi = p.map(|x| libm::acos(x.clamp(-1.0, 1.0)));
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = libm::cos(phi[i] + phi[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

/// Rank state (0-based) of every element; ties keep sequence order.
fn rank_states(p: [f64; 3]) -> [usize; 3] {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
    let mut state = [0usize; 3];
    for (rank, &idx) in order.iter().enumerate() {
        state[idx] = rank;
    }
    state
}

/// Markov transition field over the rank states of `(p̃_0, p̃_1, p̃_2)`.
/// Rows of states never left are all zero.
pub fn mtf(p: [f64; 3]) -> Mat3 {
    let s = rank_states(p);
    let mut counts = [[0u32; 3]; 3];
    for t in 0..2 {
        counts[s[t]][s[t + 1]] += 1;
    }
    let mut m = [[0.0; 3]; 3];
    for (u, row) in counts.iter().enumerate() {
        let out: u32 = row.iter().sum();
        if out > 0 {
            for v in 0..3 {
                m[u][v] = f64::from(row[v]) / f64::from(out);
            }
        }
    }
    m
}

/// Orbital map: `tile[ℓ][m + 2] = n_ℓm`.
pub fn omap(pops: &[OrbitalPopulation]) -> Result<[[f64; 5]; 3], ImageError> {
    let mut tile = [[0.0; 5]; 3];
    for o in pops {
        if o.l > 2 {
            return Err(ImageError::AngularMomentum { l: o.l });
        }
        if o.m.unsigned_abs() > o.l {
            return Err(ImageError::MagneticNumber { l: o.l, m: o.m });
        }
        tile[o.l as usize][(o.m + 2) as usize] += o.n;
    }
    Ok(tile)
}

fn outer(a: [f64; 3], b: [f64; 3]) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i] * b[j];
        }
    }
    m
}

/// Co-occurrence matrix `P^A ⊗ P^B` and its normalised variant built from
/// the per-atom shell distributions.
pub fn com(pa: ShellVector, pb: ShellVector) -> (Mat3, Mat3) {
    (outer(pa.0, pb.0), outer(pa.distribution(), pb.distribution()))
}

/// Charge images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QImages {
    pub diag: Mat2,
    pub absdiff: Mat2,
    pub prod: Mat2,
}

pub fn q_images(q_a: f64, q_b: f64) -> QImages {
    let d = (q_a - q_b).abs();
    let p = q_a * q_b;
    QImages {
        diag: [[q_a, 0.0], [0.0, q_b]],
        absdiff: [[0.0, d], [d, 0.0]],
        prod: [[0.0, p], [p, 0.0]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop(l: u8, m: i8, n: f64) -> OrbitalPopulation {
        OrbitalPopulation { l, m, n }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_shells(ShellVector([2.0, 1.0, 0.0])), [1.0, 0.5, 0.0]);
        assert_eq!(normalize_shells(ShellVector([1.0, 1.0, 1.0])), [0.5; 3]);
        assert_eq!(normalize_shells(ShellVector([0.0, 4.0, 2.0])), [0.0, 1.0, 0.5]);
    }

    #[test]
    fn gaf_examples() {
        assert_eq!(gaf([1.0; 3]), [[1.0; 3]; 3]);
        for row in gaf([0.0; 3]) {
            for v in row {
                assert!((v + 1.0).abs() < 1e-15);
            }
        }
        let g = gaf([1.0, 0.5, 0.0]);
        assert!((g[0][1] - 0.5).abs() < 1e-15);
        assert!((g[1][1] + 0.5).abs() < 1e-15);
        assert!((g[1][2] + 0.866_025_403_784_438_6).abs() < 1e-15);
        assert!(g[0][2].abs() < 1e-15);
    }

    #[test]
    fn mtf_examples() {
        let up = mtf([0.1, 0.5, 0.9]);
        let mut want = [[0.0; 3]; 3];
        want[0][1] = 1.0;
        want[1][2] = 1.0;
        assert_eq!(up, want);

        let down = mtf([0.9, 0.5, 0.1]);
        let mut want = [[0.0; 3]; 3];
        want[2][1] = 1.0;
        want[1][0] = 1.0;
        assert_eq!(down, want);

        assert_eq!(mtf([0.5; 3]), up);
    }

    #[test]
    fn omap_examples() {
        let t = omap(&[pop(0, 0, 2.0)]).unwrap();
        assert_eq!(t[0], [0.0, 0.0, 2.0, 0.0, 0.0]);
        assert_eq!(t[1], [0.0; 5]);

        let t = omap(&[pop(1, -1, 1.0), pop(1, 0, 1.0), pop(1, 1, 1.0)]).unwrap();
        assert_eq!(t[1], [0.0, 1.0, 1.0, 1.0, 0.0]);

        assert_eq!(omap(&[]).unwrap(), [[0.0; 5]; 3]);
        assert!(matches!(omap(&[pop(3, 0, 1.0)]), Err(ImageError::AngularMomentum { l: 3 })));
        assert!(omap(&[pop(1, 2, 1.0)]).is_err());
    }

    #[test]
    fn com_examples() {
        let (c, _) = com(ShellVector([1.0, 0.0, 0.0]), ShellVector([0.0, 1.0, 0.0]));
        let mut want = [[0.0; 3]; 3];
        want[0][1] = 1.0;
        assert_eq!(c, want);

        let (c, n) = com(ShellVector([2.0, 1.0, 0.0]), ShellVector([1.0, 3.0, 0.0]));
        assert_eq!(c, [[2.0, 6.0, 0.0], [1.0, 3.0, 0.0], [0.0; 3]]);
        let s: f64 = n.iter().flatten().sum();
        assert!((s - 1.0).abs() < 1e-15);

        let (c, n) = com(ShellVector::default(), ShellVector::default());
        assert_eq!((c, n), ([[0.0; 3]; 3], [[0.0; 3]; 3]));
    }

    #[test]
    fn q_image_examples() {
        let z = q_images(0.0, 0.0);
        assert_eq!((z.diag, z.absdiff, z.prod), ([[0.0; 2]; 2], [[0.0; 2]; 2], [[0.0; 2]; 2]));

        let q = q_images(0.3, -0.3);
        assert_eq!(q.diag, [[0.3, 0.0], [0.0, -0.3]]);
        assert_eq!(q.absdiff, [[0.0, 0.6], [0.6, 0.0]]);
        assert!((q.prod[0][1] + 0.09).abs() < 1e-15);
        assert_eq!(q.prod[0][1], q.prod[1][0]);

        assert_eq!(q_images(0.7, 0.7).absdiff, [[0.0; 2]; 2]);
    }
}
