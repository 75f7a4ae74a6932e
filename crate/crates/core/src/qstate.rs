//! One- and two-qubit states, Bloch conversion, entropies and Schmidt form.

use crate::error::{Error, Result};
use crate::linalg::{c, eigh2, eigvalsh, eigvalsh2, hermitian_defect, pauli, C64};
use nalgebra::{Matrix2, Matrix4, SVector, Vector2, Vector3};

pub const STATE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    w: Vector3<f64>,
}

impl BlochVector {
    pub fn new(w: Vector3<f64>) -> Result<Self> {
        let n = w.norm();
        if !n.is_finite() || n > 1.0 + STATE_TOL {
            return Err(Error::InvalidState(format!("Bloch vector norm {n} exceeds 1")));
        }
        Ok(Self { w })
    }

    pub fn from_array(w: [f64; 3]) -> Result<Self> {
        Self::new(Vector3::from(w))
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.w
    }

    pub fn norm(&self) -> f64 {
        self.w.norm()
    }

    pub fn is_pure(&self) -> bool {
        (self.w.norm() - 1.0).abs() <= 1e-10
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Matrix2<C64>,
}

impl DensityMatrix {
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        if hermitian_defect(&m) > STATE_TOL {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let ev = eigvalsh2(&m);
        if ev[1] < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", ev[1])));
        }
        Ok(Self { m })
    }

    pub fn pure(psi: &Vector2<C64>) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v = psi / c(n, 0.0);
        Ok(Self { m: v * v.adjoint() })
    }

    pub fn maximally_mixed() -> Self {
        Self { m: Matrix2::identity() * c(0.5, 0.0) }
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.m
    }

    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> [f64; 2] {
        eigvalsh2(&self.m)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> TwoQubitState {
        TwoQubitState { m: self.m.kronecker(&other.m) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    m: Matrix4<C64>,
}

impl TwoQubitState {
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        if hermitian_defect(&m) > STATE_TOL {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let ev = eigvalsh(&m);
        if ev[3] < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", ev[3])));
        }
        Ok(Self { m })
    }

    pub(crate) fn from_raw(m: Matrix4<C64>) -> Self {
        Self { m }
    }

    pub fn from_pure(psi: &TwoQubitPure) -> Self {
        let v = psi.vector();
        Self { m: v * v.adjoint() }
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.m
    }

    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let e = eigvalsh(&self.m);
        [e[0], e[1], e[2], e[3]]
    }
}

/// Bipartite pure state stored as its amplitude matrix `a[(j, k)]`, the
/// coefficient of `|j>|k>` (vector index `2 j + k`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure {
    a: Matrix2<C64>,
}

impl TwoQubitPure {
    pub fn new(a: Matrix2<C64>) -> Result<Self> {
        let n = a.norm();
        if (n - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("amplitude norm {n} differs from 1")));
        }
        Ok(Self { a })
    }

    /// Normalizes `a`; fails only for the zero matrix.
    pub fn normalized(a: Matrix2<C64>) -> Result<Self> {
        let n = a.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("zero amplitude matrix".into()));
        }
        Ok(Self { a: a / c(n, 0.0) })
    }

    pub fn from_vector(v: &SVector<C64, 4>) -> Result<Self> {
        Self::new(Matrix2::new(v[0], v[1], v[2], v[3]))
    }

    pub fn product(x: &Vector2<C64>, y: &Vector2<C64>) -> Result<Self> {
        Self::normalized(x * y.transpose())
    }

    /// `a|00> + e^{i theta} d|11>` with `a = sqrt(alpha)`, `d = sqrt(1 - alpha)`.
    pub fn diagonal_family(alpha: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!("alpha {alpha} outside [0, 1]")));
        }
        let a = alpha.sqrt();
        let d = (1.0 - alpha).sqrt();
        Self::new(Matrix2::new(
            c(a, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            C64::from_polar(d, theta),
        ))
    }

    pub fn amplitudes(&self) -> &Matrix2<C64> {
        &self.a
    }

    pub fn vector(&self) -> SVector<C64, 4> {
        SVector::<C64, 4>::new(self.a[(0, 0)], self.a[(0, 1)], self.a[(1, 0)], self.a[(1, 1)])
    }

    /// Applies `u (x) v`.
    pub fn local_unitary(&self, u: &Matrix2<C64>, v: &Matrix2<C64>) -> Self {
        Self { a: u * self.a * v.transpose() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtForm {
    pub coefficients: [f64; 2],
    /// Columns are the first-factor vectors.
    pub left: Matrix2<C64>,
    /// Columns are the second-factor vectors; `a = left diag(mu) right^T`.
    pub right: Matrix2<C64>,
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> Matrix2<C64> {
        let d = Matrix2::new(
            c(self.coefficients[0], 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(self.coefficients[1], 0.0),
        );
        self.left * d * self.right.transpose()
    }

    /// The dominant product term `psi_1 (x) chi_1`.
    pub fn leading_product(&self) -> TwoQubitPure {
        let x: Vector2<C64> = self.left.column(0).into_owned();
        let y: Vector2<C64> = self.right.column(0).into_owned();
        TwoQubitPure { a: x * y.transpose() }
    }
}

pub fn bloch_to_density(w: &BlochVector) -> DensityMatrix {
    let s = pauli();
    let v = w.vector();
    let m = (s[0] + s[1] * c(v.x, 0.0) + s[2] * c(v.y, 0.0) + s[3] * c(v.z, 0.0)) * c(0.5, 0.0);
    DensityMatrix { m }
}

pub fn density_to_bloch(rho: &DensityMatrix) -> BlochVector {
    BlochVector { w: bloch_of(&rho.m) }
}

/// Unit vector whose projector has Bloch vector `w / |w|` (north pole for `w = 0`).
pub fn pure_from_bloch(w: &Vector3<f64>) -> Vector2<C64> {
    let n = w.norm();
    if n == 0.0 {
        return Vector2::new(c(1.0, 0.0), c(0.0, 0.0));
    }
    let z = (w.z / n).clamp(-1.0, 1.0);
    let half = 0.5 * z.acos();
    let phi = w.y.atan2(w.x);
    Vector2::new(c(half.cos(), 0.0), C64::from_polar(half.sin(), phi))
}

/// `w_k = Tr(m sigma_k)` for any 2x2 matrix, real parts only.
pub(crate) fn bloch_of(m: &Matrix2<C64>) -> Vector3<f64> {
    Vector3::new(
        (m[(0, 1)] + m[(1, 0)]).re,
        (m[(1, 0)] - m[(0, 1)]).im,
        (m[(0, 0)] - m[(1, 1)]).re,
    )
}

/// `-sum p ln p` with `0 ln 0 = 0`; slightly negative eigenvalues count as zero.
pub fn entropy_of_spectrum(ev: &[f64]) -> f64 {
    ev.iter()
        .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
        .sum()
}

pub trait Spectrum {
    fn spectrum(&self) -> Vec<f64>;
}

impl Spectrum for DensityMatrix {
    fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues().to_vec()
    }
}

impl Spectrum for TwoQubitState {
    fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues().to_vec()
    }
}

pub fn von_neumann_entropy<S: Spectrum>(rho: &S) -> f64 {
    entropy_of_spectrum(&rho.spectrum())
}

/// Entropy of a qubit state with Bloch length `r`, clamped to `[0, 1]`.
pub fn bloch_entropy(r: f64) -> f64 {
    let r = r.clamp(0.0, 1.0);
    let p = 0.5 * (1.0 + r);
    let q = 0.5 * (1.0 - r);
    let mut s = 0.0;
    if p > 0.0 {
        s -= p * p.ln();
    }
    if q > 0.0 {
        s -= q * q.ln();
    }
    s
}

/// `h(mu) = -(1+mu)/2 ln((1+mu)/2) - (1-mu)/2 ln((1-mu)/2)`.
pub fn binary_entropy_h(mu: f64) -> Result<f64> {
    if !(-STATE_TOL..=1.0 + STATE_TOL).contains(&mu) {
        return Err(Error::Domain(format!("h requires mu in [0, 1], got {mu}")));
    }
    Ok(bloch_entropy(mu))
}

/// `eta(alpha, x) = -(alpha + x) ln(alpha + x) - (alpha - x) ln(alpha - x)`.
///
/// `alpha = 0` is accepted together with `x = 0` and gives 0.
pub fn eta(alpha: f64, x: f64) -> Result<f64> {
    if alpha < 0.0 || !alpha.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!("eta requires alpha >= 0, got {alpha}")));
    }
    let mut x = x;
    if x.abs() > alpha {
        if x.abs() - alpha <= STATE_TOL {
            x = alpha.copysign(x);
        } else {
            return Err(Error::Domain(format!("eta requires |x| <= alpha, got ({alpha}, {x})")));
        }
    }
    let xlx = |z: f64| if z > 0.0 { z * z.ln() } else { 0.0 };
    Ok(-xlx(alpha + x) - xlx(alpha - x))
}

/// `Tr P (ln P - ln Q)`, or `f64::INFINITY` when the support of `P` is not
/// contained in that of `Q`.
pub fn relative_entropy(p: &DensityMatrix, q: &DensityMatrix) -> f64 {
    let (qv, qvec) = eigh2(&q.m);
    let mut cross = 0.0;
    for k in 0..2 {
        let v = qvec.column(k);
        let weight = (v.adjoint() * p.m * v)[(0, 0)].re;
        if qv[k] <= PSD_TOL {
            if weight > PSD_TOL {
                return f64::INFINITY;
            }
            continue;
        }
        cross += weight * qv[k].ln();
    }
    let neg_s = -entropy_of_spectrum(&p.eigenvalues());
    (neg_s - cross).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Keep the first factor (trace out the second).
    First,
    /// Keep the second factor (trace out the first).
    Second,
}

pub fn partial_trace(rho: &TwoQubitState, keep: Side) -> DensityMatrix {
    let m = &rho.m;
    let mut r = Matrix2::<C64>::zeros();
    for x in 0..2 {
        for y in 0..2 {
            r[(x, y)] = match keep {
                Side::First => m[(2 * x, 2 * y)] + m[(2 * x + 1, 2 * y + 1)],
                Side::Second => m[(x, y)] + m[(2 + x, 2 + y)],
            };
        }
    }
    DensityMatrix { m: r }
}

/// Reduced states of a pure state: `(A A^dagger, (A^dagger A)^T)`.
pub fn reduced_states(psi: &TwoQubitPure) -> (DensityMatrix, DensityMatrix) {
    let a = psi.a;
    (
        DensityMatrix { m: a * a.adjoint() },
        DensityMatrix { m: (a.adjoint() * a).transpose() },
    )
}

pub fn schmidt_decompose(psi: &TwoQubitPure) -> SchmidtForm {
    let a = psi.a;
    let (_, v) = eigh2(&(a.adjoint() * a));
    let v1: Vector2<C64> = v.column(0).into_owned();
    let v2: Vector2<C64> = v.column(1).into_owned();
    let av1 = a * v1;
    let n1 = av1.norm();
    let u1 = if n1 > 0.0 {
        av1 / c(n1, 0.0)
    } else {
        Vector2::new(c(1.0, 0.0), c(0.0, 0.0))
    };
    let mut u2 = Vector2::new(-u1[1].conj(), u1[0].conj());
    let z = (u2.adjoint() * a * v2)[(0, 0)];
    let n2 = z.norm();
    if n2 > 0.0 {
        u2 *= z / n2;
    }
    SchmidtForm {
        coefficients: [n1, n2],
        left: Matrix2::from_columns(&[u1, u2]),
        right: Matrix2::from_columns(&[v1.conjugate(), v2.conjugate()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn close(a: &Matrix2<C64>, b: &Matrix2<C64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn bloch_examples() {
        let half = c(0.5, 0.0);
        let z = c(0.0, 0.0);
        let rho = bloch_to_density(&BlochVector::from_array([0.0, 0.0, 0.0]).unwrap());
        assert!(close(rho.matrix(), &Matrix2::new(half, z, z, half), 1e-15));
        let rho = bloch_to_density(&BlochVector::from_array([0.0, 0.0, 1.0]).unwrap());
        assert!(close(rho.matrix(), &Matrix2::new(c(1.0, 0.0), z, z, z), 1e-15));
        let rho = bloch_to_density(&BlochVector::from_array([1.0, 0.0, 0.0]).unwrap());
        assert!(close(rho.matrix(), &Matrix2::new(half, half, half, half), 1e-15));
        assert!(BlochVector::from_array([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn density_to_bloch_examples() {
        let y = DensityMatrix::new(Matrix2::new(c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.5, 0.0)))
            .unwrap();
        assert!((density_to_bloch(&y).vector() - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        let up = DensityMatrix::new(Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)))
            .unwrap();
        assert_eq!(density_to_bloch(&up).vector(), Vector3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed();
        assert!((von_neumann_entropy(&mixed) - LN_2).abs() < 1e-15);
        let p = DensityMatrix::pure(&Vector2::new(c(0.6, 0.0), c(0.0, 0.8))).unwrap();
        assert!(von_neumann_entropy(&p).abs() < 1e-12);
        let both = mixed.tensor(&mixed);
        assert!((von_neumann_entropy(&both) - 4f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn h_values() {
        assert!((binary_entropy_h(0.0).unwrap() - LN_2).abs() < 1e-16);
        assert_eq!(binary_entropy_h(1.0).unwrap(), 0.0);
        assert!((binary_entropy_h(FRAC_1_SQRT_2).unwrap() - 0.416_495_530_699_687_45).abs() < 1e-15);
        assert!(binary_entropy_h(1.1).is_err());
        assert!(binary_entropy_h(-0.1).is_err());
    }

    #[test]
    fn eta_values() {
        assert!((eta(0.5, 0.0).unwrap() - LN_2).abs() < 1e-16);
        assert!((eta(1.0, 1.0).unwrap() + 2.0 * LN_2).abs() < 1e-16);
        assert_eq!(eta(0.7, 0.3).unwrap(), eta(0.7, -0.3).unwrap());
        assert_eq!(eta(0.0, 0.0).unwrap(), 0.0);
        assert!(eta(0.5, 0.6).is_err());
        assert!((eta(0.5, 0.5 + 1e-13).unwrap() - eta(0.5, 0.5).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn relative_entropy_examples() {
        let up = DensityMatrix::new(Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)))
            .unwrap();
        let mixed = DensityMatrix::maximally_mixed();
        assert!((relative_entropy(&up, &mixed) - LN_2).abs() < 1e-15);
        assert_eq!(relative_entropy(&up, &up), 0.0);
        let down = DensityMatrix::new(Matrix2::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)))
            .unwrap();
        assert_eq!(relative_entropy(&up, &down), f64::INFINITY);
        let rho = bloch_to_density(&BlochVector::from_array([0.2, -0.3, 0.5]).unwrap());
        let expect = LN_2 - von_neumann_entropy(&rho);
        assert!((relative_entropy(&rho, &mixed) - expect).abs() < 1e-14);
    }

    #[test]
    fn partial_trace_examples() {
        let r = bloch_to_density(&BlochVector::from_array([0.1, 0.2, 0.3]).unwrap());
        let g = bloch_to_density(&BlochVector::from_array([-0.4, 0.0, 0.5]).unwrap());
        let rg = r.tensor(&g);
        assert!(close(partial_trace(&rg, Side::First).matrix(), r.matrix(), 1e-15));
        assert!(close(partial_trace(&rg, Side::Second).matrix(), g.matrix(), 1e-15));

        let bell = TwoQubitPure::diagonal_family(0.5, 0.0).unwrap();
        let rho = TwoQubitState::from_pure(&bell);
        let mixed = DensityMatrix::maximally_mixed();
        assert!(close(partial_trace(&rho, Side::First).matrix(), mixed.matrix(), 1e-15));
        assert!(close(partial_trace(&rho, Side::Second).matrix(), mixed.matrix(), 1e-15));

        let psi = TwoQubitPure::diagonal_family(0.36, 0.0).unwrap();
        let rho = TwoQubitState::from_pure(&psi);
        let expect = Matrix2::new(c(0.36, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.64, 0.0));
        assert!(close(partial_trace(&rho, Side::First).matrix(), &expect, 1e-15));
    }

    #[test]
    fn schmidt_examples() {
        let z = c(0.0, 0.0);
        let prod = TwoQubitPure::new(Matrix2::new(c(1.0, 0.0), z, z, z)).unwrap();
        assert_eq!(schmidt_decompose(&prod).coefficients, [1.0, 0.0]);

        let bell = TwoQubitPure::diagonal_family(0.5, 0.0).unwrap();
        let s = schmidt_decompose(&bell);
        assert!((s.coefficients[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.coefficients[1] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(close(&s.reconstruct(), bell.amplitudes(), 1e-15));

        let psi = TwoQubitPure::new(Matrix2::new(c(0.6, 0.0), z, z, c(0.8, 0.0))).unwrap();
        let s = schmidt_decompose(&psi);
        assert!((s.coefficients[0] - 0.8).abs() < 1e-15);
        assert!((s.coefficients[1] - 0.6).abs() < 1e-15);
        assert!(close(&s.reconstruct(), psi.amplitudes(), 1e-15));
    }

    #[test]
    fn schmidt_general_complex() {
        let a = Matrix2::new(c(0.3, 0.1), c(-0.2, 0.5), c(0.4, -0.3), c(0.1, 0.2));
        let psi = TwoQubitPure::normalized(a).unwrap();
        let s = schmidt_decompose(&psi);
        assert!(close(&s.reconstruct(), psi.amplitudes(), 1e-14));
        assert!(s.coefficients[0] >= s.coefficients[1]);
        assert!((s.left.adjoint() * s.left - Matrix2::identity()).norm() < 1e-14);
        assert!((s.right.adjoint() * s.right - Matrix2::identity()).norm() < 1e-14);
    }
}
