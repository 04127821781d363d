#![allow(dead_code)]

use qcanvas_core::linalg::Matrix;
use qcanvas_core::{ElementParams, Shell};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn element(symbol: &str, shells: &[(Shell, f64)], u: f64, n_valence: f64) -> ElementParams {
    ElementParams {
        symbol: symbol.into(),
        z: 1,
        shells: shells.to_vec(),
        hubbard_u: u,
        n_valence,
        hop_scale: 0.4,
        hop_decay: 1.6,
        overlap_scale: 0.2,
        overlap_decay: 1.6,
        rep_a: 1.5,
        rep_b: 1.8,
    }
}

/// One-s-orbital element that forms a bound homonuclear dimer.
pub fn s_atom(symbol: &str, onsite: f64, u: f64) -> ElementParams {
    element(symbol, &[(Shell::S, onsite)], u, 1.0)
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-scale..scale);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// `S = I + ε·(B Bᵀ)/n` with small random `B`: symmetric, positive definite,
/// unit-ish diagonal like a real overlap matrix.
pub fn random_overlap(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let b = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let bbt = b.matmul(&b.transpose());
    Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id + 0.5 * bbt[(i, j)] / n as f64
    })
}

/// Random S-orthonormal columns via Gram–Schmidt in the S inner product.
pub fn s_orthonormal(rng: &mut ChaCha8Rng, s: &Matrix) -> Matrix {
    let n = s.rows();
    let dot = |x: &[f64], y: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += x[i] * s[(i, j)] * y[j];
            }
        }
        acc
    };
    let mut cols: Vec<Vec<f64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = dot(c, &v);
                v.iter_mut().zip(c).for_each(|(vi, ci)| *vi -= p * ci);
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    Matrix::from_fn(n, n, |i, j| cols[j][i])
}
