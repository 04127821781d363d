mod common;

use common::{random_overlap, random_symmetric, rng};
use qcanvas_core::linalg::{eigen_residual, orthonormality_defect, solve_generalized_eig, Matrix};
use rand::Rng;

/// Roots of det(H − εS) = 0 for 2×2 symmetric H, S, ascending.
fn quadratic_roots(h: &Matrix, s: &Matrix) -> [f64; 2] {
    let a = s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(0, 1)];
    let b = -(h[(0, 0)] * s[(1, 1)] + h[(1, 1)] * s[(0, 0)] - 2.0 * h[(0, 1)] * s[(0, 1)]);
    let c = h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(0, 1)];
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    // Cancellation-free pair of roots.
    let q = -0.5 * (b + b.signum() * disc);
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    [r1.min(r2), r1.max(r2)]
}

#[test]
fn random_generalized_problems_satisfy_residual_bounds() {
    let mut rng = rng(0xE16E);
    for case in 0..1000 {
        let n = rng.gen_range(2..=8);
        let h = random_symmetric(&mut rng, n, 2.0);
        let s = random_overlap(&mut rng, n);
        let eig = solve_generalized_eig(&h, &s).unwrap();
        let res = eigen_residual(&h, &s, &eig);
        assert!(res <= 1e-8 * (1.0 + h.max_abs()), "case {case}: residual {res}");
        let ortho = orthonormality_defect(&s, &eig.vectors);
        assert!(ortho <= 1e-8, "case {case}: CᵀSC − I = {ortho}");
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]), "case {case}: unsorted");
    }
}

#[test]
fn two_by_two_matches_closed_form_roots() {
    let mut rng = rng(22);
    for _ in 0..1000 {
        let h = random_symmetric(&mut rng, 2, 1.5);
        let s = random_overlap(&mut rng, 2);
        let eig = solve_generalized_eig(&h, &s).unwrap();
        let want = quadratic_roots(&h, &s);
        for k in 0..2 {
            assert!((eig.values[k] - want[k]).abs() <= 1e-10, "{:?} vs {want:?}", eig.values);
        }
    }
}

#[test]
fn documented_two_level_examples() {
    let h = Matrix::from_rows(&[&[-2.0, -1.0], &[-1.0, -2.0]]);
    let s = Matrix::from_rows(&[&[1.0, 0.25], &[0.25, 1.0]]);
    let eig = solve_generalized_eig(&h, &s).unwrap();
    assert!((eig.values[0] - -2.4).abs() < 1e-12);
    assert!((eig.values[1] - -4.0 / 3.0).abs() < 1e-12);
    let roots = quadratic_roots(&h, &s);
    assert!((roots[0] - -2.4).abs() < 1e-12 && (roots[1] - -4.0 / 3.0).abs() < 1e-12);

    let h = Matrix::from_rows(&[&[0.0, -1.0], &[-1.0, 0.0]]);
    let eig = solve_generalized_eig(&h, &Matrix::identity(2)).unwrap();
    assert!((eig.values[0] + 1.0).abs() < 1e-14 && (eig.values[1] - 1.0).abs() < 1e-14);
}

#[test]
fn indefinite_overlap_fails() {
    let s = Matrix::from_rows(&[&[1.0, 1.5], &[1.5, 1.0]]);
    assert!(solve_generalized_eig(&Matrix::identity(2), &s).is_err());
}
