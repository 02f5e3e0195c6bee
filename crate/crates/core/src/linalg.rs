//! Small dense symmetric eigenproblems in closed form.

use std::f64::consts::PI;

pub type Vec3 = [f64; 3];
pub type Sym3 = [[f64; 3]; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `uᵀ M v` for a symmetric 3×3 matrix.
pub fn quad_form(m: &Sym3, u: &Vec3, v: &Vec3) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += u[i] * m[i][j] * v[j];
        }
    }
    acc
}

/// Largest eigenvalue of the real symmetric 2×2 matrix `[[a, b], [b, c]]`.
pub fn sym2_max_eigenvalue(a: f64, b: f64, c: f64) -> f64 {
    let mean = 0.5 * (a + c);
    let half_diff = 0.5 * (a - c);
    mean + half_diff.hypot(b)
}

/// Eigenvalues of a real symmetric 3×3 matrix in descending order.
///
/// Trigonometric solution of the characteristic cubic. The matrix is shifted by
/// its mean diagonal and scaled before solving, which keeps the result accurate
/// for nearly isotropic inputs.
pub fn sym3_eigenvalues(m: &Sym3) -> [f64; 3] {
    let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if off == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(|x, y| y.total_cmp(x));
        return d;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let d0 = m[0][0] - q;
    let d1 = m[1][1] - q;
    let d2 = m[2][2] - q;
    let p = ((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    // B = (A - qI) / p
    let b = [
        [d0 / p, m[0][1] / p, m[0][2] / p],
        [m[0][1] / p, d1 / p, m[1][2] / p],
        [m[0][2] / p, m[1][2] / p, d2 / p],
    ];
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let half_det = (0.5 * det_b).clamp(-1.0, 1.0);
    let angle = half_det.acos() / 3.0;
    let l0 = q + 2.0 * p * angle.cos();
    let l2 = q + 2.0 * p * (angle + 2.0 * PI / 3.0).cos();
    let l1 = 3.0 * q - l0 - l2;
    [l0, l1, l2]
}

pub fn sym3_max_eigenvalue(m: &Sym3) -> f64 {
    sym3_eigenvalues(m)[0]
}
