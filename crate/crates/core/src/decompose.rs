//! Normal form `T = R1 diag(lambda) R2^T` with proper rotations, the SU(2)
//! lift of rotations, and the minimal-entropy input set of unital maps.

use crate::channel::{ChannelAffine, DiagonalChannel};
use crate::error::{Error, Result};
use crate::linalg::{c, svd3, C64};
use nalgebra::{Matrix2, Matrix3, Vector3};

/// Relative gap below which singular values count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelNormalForm {
    /// `R2`: input-side rotation.
    pub pre_rotation: Matrix3<f64>,
    /// `R1`: output-side rotation.
    pub post_rotation: Matrix3<f64>,
    /// `Phi[lambda]` with translation `R1^T t`, so that
    /// `Phi(w) = R1 (t' + diag(lambda) R2^T w)`.
    pub diag: DiagonalChannel,
    pub lifted_pre: Matrix2<C64>,
    pub lifted_post: Matrix2<C64>,
}

impl ChannelNormalForm {
    /// `R1 diag(lambda) R2^T`.
    pub fn reconstruct(&self) -> Matrix3<f64> {
        self.post_rotation * Matrix3::from_diagonal(&Vector3::from(self.diag.lambda)) * self.pre_rotation.transpose()
    }

    /// Translation of the self-adjoint factor `S = R2 diag(lambda) R2^T` when
    /// the map is written as `R (S w + R^T t)` with `R = R1 R2^T`.
    pub fn selfadjoint_translation(&self, t: &Vector3<f64>) -> Vector3<f64> {
        self.pre_rotation * self.post_rotation.transpose() * t
    }

    /// The polar rotation `R = R1 R2^T`.
    pub fn polar_rotation(&self) -> Matrix3<f64> {
        self.post_rotation * self.pre_rotation.transpose()
    }

    /// The self-adjoint factor `S = R2 diag(lambda) R2^T`.
    pub fn selfadjoint_part(&self) -> Matrix3<f64> {
        self.pre_rotation * Matrix3::from_diagonal(&Vector3::from(self.diag.lambda)) * self.pre_rotation.transpose()
    }
}

pub fn polar_factor(phi: &ChannelAffine) -> ChannelNormalForm {
    let (mut u, s, mut v) = svd3(phi.matrix());
    let mut lambda = [s[0], s[1], s[2]];
    if u.determinant() < 0.0 {
        u.set_column(2, &(-u.column(2)));
        lambda[2] = -lambda[2];
    }
    if v.determinant() < 0.0 {
        v.set_column(2, &(-v.column(2)));
        lambda[2] = -lambda[2];
    }
    let tp = u.transpose() * phi.t();
    let lifted_pre = lift_rotation(&v).expect("proper rotation");
    let lifted_post = lift_rotation(&u).expect("proper rotation");
    ChannelNormalForm {
        pre_rotation: v,
        post_rotation: u,
        diag: DiagonalChannel::new_unchecked(lambda, [tp.x, tp.y, tp.z]),
        lifted_pre,
        lifted_post,
    }
}

/// `U` in SU(2) with `U sigma_i U^dagger = sum_j R_ji sigma_j`.
///
/// `U = w I - i (x sigma_1 + y sigma_2 + z sigma_3)` from the unit quaternion
/// of `R`; of the two lifts the one whose first nonzero component among
/// `(w, x, y, z)` is positive is returned.
pub fn lift_rotation(r: &Matrix3<f64>) -> Result<Matrix2<C64>> {
    let orth = (r.transpose() * r - Matrix3::identity()).amax();
    let det = r.determinant();
    if orth > 1e-10 || (det - 1.0).abs() > 1e-10 {
        return Err(Error::ImproperRotation(det));
    }
    let tr = r.trace();
    let (w, x, y, z);
    let cands = [tr, r[(0, 0)], r[(1, 1)], r[(2, 2)]];
    let best = (0..4).max_by(|&a, &b| cands[a].total_cmp(&cands[b])).unwrap();
    match best {
        0 => {
            let s = 0.5 * (1.0 + tr).max(0.0).sqrt();
            w = s;
            x = (r[(2, 1)] - r[(1, 2)]) / (4.0 * s);
            y = (r[(0, 2)] - r[(2, 0)]) / (4.0 * s);
            z = (r[(1, 0)] - r[(0, 1)]) / (4.0 * s);
        }
        1 => {
            let s = 0.5 * (1.0 + 2.0 * r[(0, 0)] - tr).max(0.0).sqrt();
            x = s;
            w = (r[(2, 1)] - r[(1, 2)]) / (4.0 * s);
            y = (r[(0, 1)] + r[(1, 0)]) / (4.0 * s);
            z = (r[(0, 2)] + r[(2, 0)]) / (4.0 * s);
        }
        2 => {
            let s = 0.5 * (1.0 + 2.0 * r[(1, 1)] - tr).max(0.0).sqrt();
            y = s;
            w = (r[(0, 2)] - r[(2, 0)]) / (4.0 * s);
            x = (r[(0, 1)] + r[(1, 0)]) / (4.0 * s);
            z = (r[(1, 2)] + r[(2, 1)]) / (4.0 * s);
        }
        _ => {
            let s = 0.5 * (1.0 + 2.0 * r[(2, 2)] - tr).max(0.0).sqrt();
            z = s;
            w = (r[(1, 0)] - r[(0, 1)]) / (4.0 * s);
            x = (r[(0, 2)] + r[(2, 0)]) / (4.0 * s);
            y = (r[(1, 2)] + r[(2, 1)]) / (4.0 * s);
        }
    }
    let q = [w, x, y, z];
    let n = q.iter().map(|a| a * a).sum::<f64>().sqrt();
    let lead = q.iter().copied().find(|a| a.abs() > 1e-12).unwrap_or(1.0);
    let sg = if lead < 0.0 { -1.0 / n } else { 1.0 / n };
    let [w, x, y, z] = q.map(|a| a * sg);
    Ok(Matrix2::new(c(w, -z), c(-y, -x), c(y, -x), c(w, z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinEntropyKind {
    Axis,
    Disk,
    Sphere,
}

impl MinEntropyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Axis => "axis",
            Self::Disk => "disk",
            Self::Sphere => "sphere",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinEntropySet {
    pub kind: MinEntropyKind,
    /// Largest singular value of `T`.
    pub mu: f64,
    /// Orthonormal basis of the eigenspace (input Bloch directions).
    pub basis: Vec<Vector3<f64>>,
}

impl MinEntropySet {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Pure inputs along the top eigenspace of the self-adjoint factor.
pub fn minimal_entropy_set(phi: &ChannelAffine) -> Result<MinEntropySet> {
    minimal_entropy_set_with_tol(phi, DEGENERACY_TOL)
}

pub fn minimal_entropy_set_with_tol(phi: &ChannelAffine, tol: f64) -> Result<MinEntropySet> {
    if !phi.is_unital() {
        return Err(Error::WrongFamily("minimal-entropy set is defined for unital maps".into()));
    }
    let nf = polar_factor(phi);
    let mu = nf.diag.lambda[0].abs();
    let basis: Vec<Vector3<f64>> = (0..3)
        .filter(|&k| mu - nf.diag.lambda[k].abs() <= tol * mu || mu == 0.0)
        .map(|k| nf.pre_rotation.column(k).into_owned())
        .collect();
    let kind = match basis.len() {
        1 => MinEntropyKind::Axis,
        2 => MinEntropyKind::Disk,
        _ => MinEntropyKind::Sphere,
    };
    Ok(MinEntropySet { kind, mu, basis })
}
