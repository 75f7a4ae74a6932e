//! Small dense kernels: Pauli matrices, Hermitian eigensolvers and a 3x3 SVD.

use nalgebra::{Complex, Matrix2, Matrix3, Matrix4, SMatrix, SVector, Vector2, Vector3};
use std::sync::OnceLock;

pub type C64 = Complex<f64>;

pub const JACOBI_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const SVD_TOL: f64 = 1e-14;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `[I, sigma_x, sigma_y, sigma_z]`.
pub fn pauli() -> &'static [Matrix2<C64>; 4] {
    static P: OnceLock<[Matrix2<C64>; 4]> = OnceLock::new();
    P.get_or_init(|| {
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        [
            Matrix2::new(o, z, z, o),
            Matrix2::new(z, o, o, z),
            Matrix2::new(z, -i, i, z),
            Matrix2::new(o, z, z, -o),
        ]
    })
}

/// `sigma_i (x) sigma_j` at index `4 i + j`.
pub fn pauli_products() -> &'static [Matrix4<C64>; 16] {
    static P: OnceLock<[Matrix4<C64>; 16]> = OnceLock::new();
    P.get_or_init(|| {
        let s = pauli();
        std::array::from_fn(|k| s[k / 4].kronecker(&s[k % 4]))
    })
}

pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    a.kronecker(b)
}

pub fn kron_vec(a: &Vector2<C64>, b: &Vector2<C64>) -> SVector<C64, 4> {
    SVector::<C64, 4>::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
}

pub fn hermitian_defect<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Closed-form eigenpairs of a 2x2 Hermitian matrix, largest eigenvalue first.
///
/// With a zero off-diagonal the input basis order is kept on ties.
pub fn eigh2(m: &Matrix2<C64>) -> ([f64; 2], Matrix2<C64>) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let disc = (half * half + b.norm_sqr()).sqrt();
    let hi = mean + disc;
    let lo = mean - disc;

    let x1 = Vector2::new(b, c(hi - a, 0.0));
    let x2 = Vector2::new(c(hi - d, 0.0), b.conj());
    let (n1, n2) = (x1.norm(), x2.norm());
    let v = if n1.max(n2) == 0.0 {
        Vector2::new(c(1.0, 0.0), c(0.0, 0.0))
    } else if n2 >= n1 {
        x2 / c(n2, 0.0)
    } else {
        x1 / c(n1, 0.0)
    };
    let w = Vector2::new(-v[1].conj(), v[0].conj());
    ([hi, lo], Matrix2::from_columns(&[v, w]))
}

pub fn eigvalsh2(m: &Matrix2<C64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let disc = (half * half + b.norm_sqr()).sqrt();
    [mean + disc, mean - disc]
}

fn off_norm<const N: usize>(h: &SMatrix<C64, N, N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += h[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Returns eigenvalues in descending order with matching eigenvector columns.
pub fn eigh<const N: usize>(m: &SMatrix<C64, N, N>) -> (SVector<f64, N>, SMatrix<C64, N, N>) {
    let (vals, vecs) = jacobi(m, true);
    (vals, vecs.expect("vectors requested"))
}

/// Eigenvalues only, descending.
pub fn eigvalsh<const N: usize>(m: &SMatrix<C64, N, N>) -> SVector<f64, N> {
    jacobi(m, false).0
}

fn jacobi<const N: usize>(
    m: &SMatrix<C64, N, N>,
    want_vectors: bool,
) -> (SVector<f64, N>, Option<SMatrix<C64, N, N>>) {
    let mut h = (m + m.adjoint()) * c(0.5, 0.0);
    let mut v = if want_vectors {
        Some(SMatrix::<C64, N, N>::identity())
    } else {
        None
    };
    let scale = h.norm().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&h) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = h[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let e = apq / r;
                let d = e.conj();
                let theta = (h[(q, q)].re - h[(p, p)].re) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // J = D R with D = diag(1, .., d at q, ..) and the real rotation
                // R_pp = R_qq = cs, R_pq = sn, R_qp = -sn.
                let jpp = c(cs, 0.0);
                let jpq = c(sn, 0.0);
                let jqp = d * (-sn);
                let jqq = d * cs;
                for k in 0..N {
                    let xp = h[(k, p)];
                    let xq = h[(k, q)];
                    h[(k, p)] = xp * jpp + xq * jqp;
                    h[(k, q)] = xp * jpq + xq * jqq;
                }
                for k in 0..N {
                    let xp = h[(p, k)];
                    let xq = h[(q, k)];
                    h[(p, k)] = jpp.conj() * xp + jqp.conj() * xq;
                    h[(q, k)] = jpq.conj() * xp + jqq.conj() * xq;
                }
                h[(p, q)] = c(0.0, 0.0);
                h[(q, p)] = c(0.0, 0.0);
                h[(p, p)] = c(h[(p, p)].re, 0.0);
                h[(q, q)] = c(h[(q, q)].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..N {
                        let xp = v[(k, p)];
                        let xq = v[(k, q)];
                        v[(k, p)] = xp * jpp + xq * jqp;
                        v[(k, q)] = xp * jpq + xq * jqq;
                    }
                }
            }
        }
    }
    let mut idx: [usize; N] = std::array::from_fn(|i| i);
    idx.sort_by(|&a, &b| h[(b, b)].re.total_cmp(&h[(a, a)].re));
    let vals = SVector::<f64, N>::from_fn(|i, _| h[(idx[i], idx[i])].re);
    let vecs = v.map(|v| SMatrix::<C64, N, N>::from_fn(|r, col| v[(r, idx[col])]));
    (vals, vecs)
}

/// Real SVD `m = u diag(s) v^T` by one-sided Jacobi.
///
/// Singular values are non-negative and descending; `u` and `v` are
/// orthogonal but may have determinant -1.
pub fn svd3(m: &Matrix3<f64>) -> (Matrix3<f64>, Vector3<f64>, Matrix3<f64>) {
    let mut a = *m;
    let mut v = Matrix3::<f64>::identity();
    for _ in 0..60 {
        let mut rotated = false;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let alpha = a.column(i).norm_squared();
                let beta = a.column(j).norm_squared();
                let gamma = a.column(i).dot(&a.column(j));
                if gamma == 0.0 || gamma.abs() <= SVD_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..3 {
                    let ai = a[(k, i)];
                    let aj = a[(k, j)];
                    a[(k, i)] = cs * ai - sn * aj;
                    a[(k, j)] = sn * ai + cs * aj;
                    let vi = v[(k, i)];
                    let vj = v[(k, j)];
                    v[(k, i)] = cs * vi - sn * vj;
                    v[(k, j)] = sn * vi + cs * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: [f64; 3] = std::array::from_fn(|k| a.column(k).norm());
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let s = Vector3::new(norms[idx[0]], norms[idx[1]], norms[idx[2]]);
    let v = Matrix3::from_columns(&[v.column(idx[0]), v.column(idx[1]), v.column(idx[2])]);
    let small = 1e-12 * s[0].max(f64::MIN_POSITIVE);
    let mut cols: Vec<Vector3<f64>> = Vec::with_capacity(3);
    for k in 0..3 {
        let col: Vector3<f64> = a.column(idx[k]).into_owned();
        if s[k] > small && s[0] > 0.0 {
            cols.push(col / s[k]);
        } else {
            break;
        }
    }
    complete_orthonormal(&mut cols);
    let u = Matrix3::from_columns(&cols);
    (u, s, v)
}

/// Extend a list of orthonormal vectors to a basis of R^3.
fn complete_orthonormal(cols: &mut Vec<Vector3<f64>>) {
    if cols.is_empty() {
        cols.push(Vector3::x());
    }
    if cols.len() == 1 {
        let u = cols[0];
        let e = if u.x.abs() <= u.y.abs() && u.x.abs() <= u.z.abs() {
            Vector3::x()
        } else if u.y.abs() <= u.z.abs() {
            Vector3::y()
        } else {
            Vector3::z()
        };
        let w = (e - u * u.dot(&e)).normalize();
        cols.push(w);
    }
    if cols.len() == 2 {
        let w = cols[0].cross(&cols[1]);
        cols.push(w.normalize());
    }
}

/// Rotation by `angle` about the unit axis `n` (right-handed).
pub fn rotation_matrix(angle: f64, n: &Vector3<f64>) -> Matrix3<f64> {
    let n = n.normalize();
    let k = Matrix3::new(0.0, -n.z, n.y, n.z, 0.0, -n.x, -n.y, n.x, 0.0);
    Matrix3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh2_keeps_input_order_on_ties() {
        let m = Matrix2::new(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        let (vals, vecs) = eigh2(&m);
        assert_eq!(vals, [0.5, 0.5]);
        assert!((vecs[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eigh2_reconstructs() {
        let m = Matrix2::new(c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.7, 0.0));
        let (vals, vecs) = eigh2(&m);
        let d = Matrix2::new(c(vals[0], 0.0), c(0.0, 0.0), c(0.0, 0.0), c(vals[1], 0.0));
        let r = vecs * d * vecs.adjoint();
        assert!((r - m).norm() < 1e-14);
        assert!(vals[0] >= vals[1]);
    }

    #[test]
    fn jacobi_diagonalizes_hermitian() {
        let mut m = Matrix4::<C64>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let x = (i * 7 + j * 3) as f64 * 0.1;
                m[(i, j)] = c(x.sin(), if i == j { 0.0 } else { x.cos() * (j as f64 - i as f64) });
            }
        }
        let m = (m + m.adjoint()) * c(0.5, 0.0);
        let (vals, vecs) = eigh(&m);
        let d = Matrix4::from_diagonal(&vals.map(|x| c(x, 0.0)));
        assert!((vecs * d * vecs.adjoint() - m).norm() < 1e-12);
        assert!((vecs.adjoint() * vecs - Matrix4::identity()).norm() < 1e-12);
        for k in 0..3 {
            assert!(vals[k] >= vals[k + 1]);
        }
    }

    #[test]
    fn svd3_reconstructs_rank_deficient() {
        let m = Matrix3::new(1.0, 2.0, 0.0, 2.0, 4.0, 0.0, 0.0, 0.0, 0.0);
        let (u, s, v) = svd3(&m);
        assert!((u * Matrix3::from_diagonal(&s) * v.transpose() - m).norm() < 1e-12);
        assert!((u.transpose() * u - Matrix3::identity()).norm() < 1e-12);
        assert!((v.transpose() * v - Matrix3::identity()).norm() < 1e-12);
        assert!(s[1].abs() < 1e-12 && s[2].abs() < 1e-12);
    }

    #[test]
    fn svd3_zero_matrix() {
        let (u, s, v) = svd3(&Matrix3::zeros());
        assert_eq!(s, Vector3::zeros());
        assert!((u.transpose() * u - Matrix3::identity()).norm() < 1e-15);
        assert!((v.transpose() * v - Matrix3::identity()).norm() < 1e-15);
    }

    #[test]
    fn rotation_about_z() {
        let r = rotation_matrix(std::f64::consts::FRAC_PI_2, &Vector3::z());
        assert!((r * Vector3::x() - Vector3::y()).norm() < 1e-15);
    }
}
