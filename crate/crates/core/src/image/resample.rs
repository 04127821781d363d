use crate::linalg::Matrix;

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}

/// Source coordinate of output index `i` for corner-aligned sampling.
#[inline]
fn source_coord(i: usize, src: usize, out: usize) -> (usize, usize, f64) {
    if src == 1 || out == 1 {
        return (0, 0, 0.0);
    }
    let x = (i * (src - 1)) as f64 / (out - 1) as f64;
    let x0 = (libm::floor(x) as usize).min(src - 1);
    let x1 = (x0 + 1).min(src - 1);
    (x0, x1, x - x0 as f64)
}

/// Corner-aligned bilinear resampling of `m` to `out × out`.
///
/// Output corners reproduce the input corners exactly and every value lies
/// within the input's range.
pub fn upsample_bilinear(m: &Matrix, out: usize) -> Matrix {
    assert!(m.rows() >= 1 && m.cols() >= 1 && out >= 1, "empty resample");
    let (lo, hi) = m
        .as_slice()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let cols: alloc::vec::Vec<_> = (0..out).map(|j| source_coord(j, m.cols(), out)).collect();
    Matrix::from_fn(out, out, |i, j| {
        let (y0, y1, fy) = source_coord(i, m.rows(), out);
        let (x0, x1, fx) = cols[j];
        let top = lerp(m[(y0, x0)], m[(y0, x1)], fx);
        let bottom = lerp(m[(y1, x0)], m[(y1, x1)], fx);
        lerp(top, bottom, fy).clamp(lo, hi)
    })
}

/// Nearest-neighbour block replication: output `(i, j)` copies source
/// `(⌊i·h/out⌋, ⌊j·w/out⌋)`.
pub fn upsample_nearest(m: &Matrix, out: usize) -> Matrix {
    assert!(m.rows() >= 1 && m.cols() >= 1 && out >= 1, "empty resample");
    Matrix::from_fn(out, out, |i, j| m[(i * m.rows() / out, j * m.cols() / out)])
}
