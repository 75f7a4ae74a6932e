//! Channel representations, conversions, application and the built-in catalog.

use crate::cp;
use crate::error::{Error, Result};
use crate::linalg::{c, pauli, pauli_products, rotation_matrix, C64};
use crate::qstate::{bloch_of, bloch_to_density, BlochVector, DensityMatrix, TwoQubitState, PSD_TOL};
use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};

pub const MAX_KRAUS: usize = 8;
pub const KRAUS_TOL: f64 = 1e-10;
pub const UNITAL_TOL: f64 = 1e-12;

/// Operator-sum form `Phi(rho) = sum_k A_k^dagger rho A_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    ops: Vec<Matrix2<C64>>,
}

impl KrausSet {
    pub fn new(ops: Vec<Matrix2<C64>>) -> Result<Self> {
        if ops.is_empty() || ops.len() > MAX_KRAUS {
            return Err(Error::InvalidKraus(format!(
                "expected 1 to {MAX_KRAUS} operators, got {}",
                ops.len()
            )));
        }
        if ops.iter().any(|a| a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
            return Err(Error::InvalidKraus("non-finite entry".into()));
        }
        let s: Matrix2<C64> = ops.iter().map(|a| a * a.adjoint()).sum();
        let dev = (s - Matrix2::identity()).norm();
        if dev > KRAUS_TOL {
            return Err(Error::InvalidKraus(format!(
                "sum A A^dagger deviates from I by {dev:.3e}"
            )));
        }
        Ok(Self { ops })
    }

    pub fn ops(&self) -> &[Matrix2<C64>] {
        &self.ops
    }

    pub fn is_unital(&self) -> bool {
        let s: Matrix2<C64> = self.ops.iter().map(|a| a.adjoint() * a).sum();
        (s - Matrix2::identity()).norm() <= KRAUS_TOL
    }

    pub fn apply_matrix(&self, m: &Matrix2<C64>) -> Matrix2<C64> {
        self.ops.iter().map(|a| a.adjoint() * m * a).sum()
    }
}

/// Affine action `w -> t + T w` on Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelAffine {
    t: Vector3<f64>,
    m: Matrix3<f64>,
}

impl ChannelAffine {
    /// Validated constructor: the map must pass the Choi test.
    pub fn new(t: Vector3<f64>, m: Matrix3<f64>) -> Result<Self> {
        let ch = Self::new_unchecked(t, m);
        let rep = cp::choi_check(&ch);
        if !rep.is_cp {
            return Err(Error::NotCp(format!(
                "Choi matrix has eigenvalue {:.6e}",
                rep.choi_min_eigenvalue
            )));
        }
        Ok(ch)
    }

    /// Affine map without the complete-positivity check (e.g. the transpose).
    pub fn new_unchecked(t: Vector3<f64>, m: Matrix3<f64>) -> Self {
        Self { t, m }
    }

    pub fn identity() -> Self {
        Self::new_unchecked(Vector3::zeros(), Matrix3::identity())
    }

    pub fn t(&self) -> &Vector3<f64> {
        &self.t
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    /// The 4x4 real matrix `[[1, 0], [t, T]]` acting on `(w0, w)`.
    pub fn affine4(&self) -> Matrix4<f64> {
        let mut a = Matrix4::zeros();
        a[(0, 0)] = 1.0;
        for i in 0..3 {
            a[(i + 1, 0)] = self.t[i];
            for j in 0..3 {
                a[(i + 1, j + 1)] = self.m[(i, j)];
            }
        }
        a
    }

    pub fn is_unital(&self) -> bool {
        self.t.norm() <= UNITAL_TOL
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.m[(i, j)].abs() <= UNITAL_TOL))
    }

    pub fn diagonal(&self) -> Option<DiagonalChannel> {
        self.is_diagonal().then(|| DiagonalChannel {
            lambda: [self.m[(0, 0)], self.m[(1, 1)], self.m[(2, 2)]],
            t: [self.t.x, self.t.y, self.t.z],
        })
    }

    pub fn apply_bloch(&self, w: &Vector3<f64>) -> Vector3<f64> {
        self.t + self.m * w
    }

    /// Linear extension to any 2x2 matrix `w0 I + w.sigma`.
    pub fn apply_matrix(&self, x: &Matrix2<C64>) -> Matrix2<C64> {
        let s = pauli();
        let w0 = 0.5 * (x[(0, 0)] + x[(1, 1)]);
        let w = [
            0.5 * (x[(0, 1)] + x[(1, 0)]),
            0.5 * c(0.0, 1.0) * (x[(0, 1)] - x[(1, 0)]),
            0.5 * (x[(0, 0)] - x[(1, 1)]),
        ];
        let mut out = s[0] * w0;
        for j in 0..3 {
            let mut cj = w0 * self.t[j];
            for k in 0..3 {
                cj += w[k] * self.m[(j, k)];
            }
            out += s[j + 1] * cj;
        }
        out
    }

    /// `Omega o self`: apply `self` first.
    pub fn then(&self, other: &ChannelAffine) -> ChannelAffine {
        ChannelAffine::new_unchecked(other.t + other.m * self.t, other.m * self.m)
    }
}

/// `Phi[l1, l2, l3]` with translation `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalChannel {
    pub lambda: [f64; 3],
    pub t: [f64; 3],
}

impl DiagonalChannel {
    /// Validated constructor (Choi test on the affine form).
    pub fn new(lambda: [f64; 3], t: [f64; 3]) -> Result<Self> {
        let d = Self { lambda, t };
        ChannelAffine::new(Vector3::from(t), Matrix3::from_diagonal(&Vector3::from(lambda)))?;
        Ok(d)
    }

    /// Unital diagonal map; checked against the tetrahedron inequalities.
    pub fn unital(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        let d = Self { lambda: [l1, l2, l3], t: [0.0; 3] };
        let rep = cp::check_tetrahedron(&d.to_affine_unchecked())?;
        if !rep.is_cp {
            return Err(Error::NotCp(violation_text(&rep)));
        }
        Ok(d)
    }

    pub fn new_unchecked(lambda: [f64; 3], t: [f64; 3]) -> Self {
        Self { lambda, t }
    }

    pub fn to_affine_unchecked(&self) -> ChannelAffine {
        ChannelAffine::new_unchecked(
            Vector3::from(self.t),
            Matrix3::from_diagonal(&Vector3::from(self.lambda)),
        )
    }

    pub fn is_unital(&self) -> bool {
        Vector3::from(self.t).norm() <= UNITAL_TOL
    }

    /// Semi-axes and centre of the image ellipsoid.
    pub fn ellipsoid(&self) -> ([f64; 3], [f64; 3]) {
        (self.lambda.map(f64::abs), self.t)
    }
}

fn violation_text(rep: &cp::CpReport) -> String {
    rep.violated
        .iter()
        .map(|v| format!("{} (margin {:.6e})", v.id, v.margin))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Stokes coefficients `(v0, v1, v2, v3)` of `A = v0 I + v.sigma`.
fn stokes(a: &Matrix2<C64>) -> [C64; 4] {
    let s = pauli();
    std::array::from_fn(|i| 0.5 * (s[i] * a).trace())
}

/// Affine form from the Kraus-vector inner products.
///
/// With `V_i` the vector of i-th Stokes coefficients across operators and
/// `<x, y> = sum conj(x_k) y_k`:
/// `T_jj = <V0,V0> + <Vj,Vj> - sum_{i != 0, j} <Vi,Vi>`,
/// `T_ij = 2 Re<Vi,Vj> -+ 2 Im<V0,Vk>` (minus for cyclic `(i, j, k)`),
/// `t_j = 4 Re<V0,Vj>`.
fn affine_from_inner_products(k: &KrausSet) -> (Vector3<f64>, Matrix3<f64>) {
    let v: Vec<[C64; 4]> = k.ops.iter().map(stokes).collect();
    let ip = |i: usize, j: usize| -> C64 { v.iter().map(|x| x[i].conj() * x[j]).sum() };
    let q: [f64; 4] = std::array::from_fn(|i| ip(i, i).re);
    let mut m = Matrix3::zeros();
    let mut t = Vector3::zeros();
    for j in 1..4 {
        m[(j - 1, j - 1)] = q[0] + q[j] - (1..4).filter(|&i| i != j).map(|i| q[i]).sum::<f64>();
        t[j - 1] = 4.0 * ip(0, j).re;
    }
    for i in 1..4 {
        for j in 1..4 {
            if i == j {
                continue;
            }
            let kk = 6 - i - j;
            let cyclic = matches!((i, j), (1, 2) | (2, 3) | (3, 1));
            let sign = if cyclic { -1.0 } else { 1.0 };
            m[(i - 1, j - 1)] = 2.0 * ip(i, j).re + sign * 2.0 * ip(0, kk).im;
        }
    }
    (t, m)
}

/// Affine form by applying the map to `{I, sigma_1, sigma_2, sigma_3}`:
/// `t_j = Tr(sigma_j Phi(I)) / 2`, `T_jk = Tr(sigma_j Phi(sigma_k)) / 2`.
fn affine_from_basis(k: &KrausSet) -> (Vector3<f64>, Matrix3<f64>) {
    let s = pauli();
    let phi_i = k.apply_matrix(&s[0]);
    let t = bloch_of(&phi_i) * 0.5;
    let mut m = Matrix3::zeros();
    for col in 0..3 {
        let out = k.apply_matrix(&s[col + 1]);
        let b = bloch_of(&out) * 0.5;
        for row in 0..3 {
            m[(row, col)] = b[row];
        }
    }
    (t, m)
}

pub fn kraus_to_affine(k: &KrausSet) -> Result<ChannelAffine> {
    let (t1, m1) = affine_from_inner_products(k);
    let (t2, m2) = affine_from_basis(k);
    let dev = (t1 - t2).amax().max((m1 - m2).amax());
    if dev > 1e-12 {
        return Err(Error::Numerical(format!(
            "Kraus conversion cross-check differs by {dev:.3e}"
        )));
    }
    Ok(ChannelAffine::new_unchecked(t2, m2))
}

pub fn apply(phi: &ChannelAffine, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let w = bloch_of(rho.matrix());
    let out = phi.apply_bloch(&w);
    let n = out.norm();
    if n > 1.0 + 2.0 * PSD_TOL {
        return Err(Error::NotCp(format!("output Bloch length {n} exceeds 1")));
    }
    let out = if n > 1.0 { out / n } else { out };
    Ok(bloch_to_density(&BlochVector::new(out)?))
}

/// `(Phi (x) Omega)(m)` for any 4x4 matrix via the `sigma_i (x) sigma_j` expansion.
pub fn apply_product_matrix(phi: &ChannelAffine, omega: &ChannelAffine, m: &Matrix4<C64>) -> Matrix4<C64> {
    let basis = pauli_products();
    let mut coef = Matrix4::<C64>::zeros();
    for (k, p) in basis.iter().enumerate() {
        // Tr(m p) with p a monomial Pauli product.
        let mut tr = c(0.0, 0.0);
        for r in 0..4 {
            for s in 0..4 {
                let ps = p[(s, r)];
                if ps.re != 0.0 || ps.im != 0.0 {
                    tr += m[(r, s)] * ps;
                }
            }
        }
        coef[(k / 4, k % 4)] = tr;
    }
    let a = phi.affine4().map(|x| c(x, 0.0));
    let b = omega.affine4().map(|x| c(x, 0.0));
    let out_coef = a * coef * b.transpose();
    let mut out = Matrix4::<C64>::zeros();
    for (k, p) in basis.iter().enumerate() {
        let w = out_coef[(k / 4, k % 4)] * 0.25;
        if w.re == 0.0 && w.im == 0.0 {
            continue;
        }
        for r in 0..4 {
            for s in 0..4 {
                let ps = p[(r, s)];
                if ps.re != 0.0 || ps.im != 0.0 {
                    out[(r, s)] += w * ps;
                }
            }
        }
    }
    out
}

pub fn apply_product(
    phi: &ChannelAffine,
    omega: &ChannelAffine,
    rho: &TwoQubitState,
) -> Result<TwoQubitState> {
    let out = apply_product_matrix(phi, omega, rho.matrix());
    let ev = crate::linalg::eigvalsh(&out);
    if ev[3] < -PSD_TOL {
        return Err(Error::NotCp(format!("output has eigenvalue {:.6e}", ev[3])));
    }
    Ok(TwoQubitState::from_raw(out))
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub form: &'static str,
    pub cp_condition: &'static str,
}

/// Built-in channels, sorted by name.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "amplitude-damping",
        params: "t in [0, 1]",
        form: "t = (0, 0, t), T = diag(\u{221a}(1\u{2212}t), \u{221a}(1\u{2212}t), 1\u{2212}t)",
        cp_condition: "equality in (\u{3bb}\u{2081}\u{b1}\u{3bb}\u{2082})\u{b2} \u{2264} (1\u{b1}\u{3bb}\u{2083})\u{b2} \u{2212} t\u{b2} for all t",
    },
    CatalogEntry {
        name: "depolarizing",
        params: "x in [0, 1]",
        form: "\u{3a6}[1\u{2212}4x/3, 1\u{2212}4x/3, 1\u{2212}4x/3]",
        cp_condition: "|\u{3bb}\u{2081} \u{b1} \u{3bb}\u{2082}| \u{2264} |1 \u{b1} \u{3bb}\u{2083}| holds for x in [0, 1]",
    },
    CatalogEntry {
        name: "fuchs",
        params: "none",
        form: "\u{3bb}\u{2081} = 1/\u{221a}3, \u{3bb}\u{2082} = 0, t = \u{3bb}\u{2083} = 1/3",
        cp_condition: "equality in \u{3bb}\u{2081}\u{b2} + t\u{b2} \u{2264} (1 \u{2212} |\u{3bb}\u{2083}|)\u{b2}",
    },
    CatalogEntry {
        name: "phase-damping",
        params: "x in [0, 2]",
        form: "\u{3a6}[1\u{2212}x, 1\u{2212}x, 1]",
        cp_condition: "|\u{3bb}\u{2081} \u{b1} \u{3bb}\u{2082}| \u{2264} |1 \u{b1} \u{3bb}\u{2083}| holds for x in [0, 2]",
    },
    CatalogEntry {
        name: "rotation",
        params: "theta, n1, n2, n3 (axis need not be normalized)",
        form: "t = 0, T = rotation by theta about n",
        cp_condition: "always completely positive (unitary conjugation)",
    },
    CatalogEntry {
        name: "splaying-family",
        params: "lambda1, lambda3, t",
        form: "t = (0, 0, t), T = diag(\u{3bb}\u{2081}, 0, \u{3bb}\u{2083})",
        cp_condition: "\u{3bb}\u{2081}\u{b2} + t\u{b2} \u{2264} (1 \u{2212} |\u{3bb}\u{2083}|)\u{b2}",
    },
    CatalogEntry {
        name: "two-pauli",
        params: "x in [0, 1]",
        form: "\u{3a6}[x, x, 2x\u{2212}1]",
        cp_condition: "|\u{3bb}\u{2081} \u{b1} \u{3bb}\u{2082}| \u{2264} |1 \u{b1} \u{3bb}\u{2083}| holds for x in [0, 1]",
    },
];

fn expect_params(name: &str, params: &[f64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::Domain(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain(format!("{name}: non-finite parameter")));
    }
    Ok(())
}

fn unital_diag(l: [f64; 3]) -> Result<ChannelAffine> {
    Ok(DiagonalChannel::unital(l[0], l[1], l[2])?.to_affine_unchecked())
}

fn special(l1: f64, l3: f64, t: f64) -> Result<ChannelAffine> {
    let rep = cp::check_nonunital_special(l1, l3, t);
    if !rep.is_cp {
        return Err(Error::NotCp(violation_text(&rep)));
    }
    Ok(DiagonalChannel::new_unchecked([l1, 0.0, l3], [0.0, 0.0, t]).to_affine_unchecked())
}

/// Built-in channel by name; parameters outside the CP region are rejected
/// with the violated inequality named in the error.
pub fn catalog(name: &str, params: &[f64]) -> Result<ChannelAffine> {
    match name {
        "depolarizing" => {
            expect_params(name, params, 1)?;
            let l = 1.0 - 4.0 * params[0] / 3.0;
            unital_diag([l, l, l])
        }
        "two-pauli" => {
            expect_params(name, params, 1)?;
            let x = params[0];
            unital_diag([x, x, 2.0 * x - 1.0])
        }
        "phase-damping" => {
            expect_params(name, params, 1)?;
            let x = params[0];
            unital_diag([1.0 - x, 1.0 - x, 1.0])
        }
        "rotation" => {
            expect_params(name, params, 4)?;
            let n = Vector3::new(params[1], params[2], params[3]);
            if n.norm() == 0.0 {
                return Err(Error::Domain("rotation axis must be nonzero".into()));
            }
            Ok(ChannelAffine::new_unchecked(Vector3::zeros(), rotation_matrix(params[0], &n)))
        }
        "amplitude-damping" => {
            expect_params(name, params, 1)?;
            let t = params[0];
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::NotCp(format!("amplitude-damping requires t in [0, 1], got {t}")));
            }
            let s = (1.0 - t).sqrt();
            Ok(ChannelAffine::new_unchecked(
                Vector3::new(0.0, 0.0, t),
                Matrix3::from_diagonal(&Vector3::new(s, s, 1.0 - t)),
            ))
        }
        "fuchs" => {
            expect_params(name, params, 0)?;
            special(1.0 / 3f64.sqrt(), 1.0 / 3.0, 1.0 / 3.0)
        }
        "splaying-family" => {
            expect_params(name, params, 3)?;
            special(params[0], params[1], params[2])
        }
        _ => Err(Error::UnknownChannel(name.to_string())),
    }
}

/// Kraus operators for catalog members that have a standard operator-sum form.
pub fn catalog_kraus(name: &str, params: &[f64]) -> Result<KrausSet> {
    let s = pauli();
    let r = |x: f64| c(x, 0.0);
    match name {
        "depolarizing" => {
            expect_params(name, params, 1)?;
            let x = params[0];
            KrausSet::new(vec![
                s[0] * r((1.0 - x).sqrt()),
                s[1] * r((x / 3.0).sqrt()),
                s[2] * r((x / 3.0).sqrt()),
                s[3] * r((x / 3.0).sqrt()),
            ])
        }
        "two-pauli" => {
            expect_params(name, params, 1)?;
            let x = params[0];
            let y = ((1.0 - x) / 2.0).sqrt();
            KrausSet::new(vec![s[0] * r(x.sqrt()), s[1] * r(y), s[2] * r(y)])
        }
        "phase-damping" => {
            expect_params(name, params, 1)?;
            let x = params[0];
            let h = r(0.5 * x.sqrt());
            KrausSet::new(vec![
                s[0] * r((1.0 - x).sqrt()),
                (s[0] + s[3]) * h,
                (s[0] - s[3]) * h,
            ])
        }
        "amplitude-damping" => {
            expect_params(name, params, 1)?;
            let t = params[0];
            KrausSet::new(vec![
                Matrix2::new(r(1.0), r(0.0), r(0.0), r((1.0 - t).sqrt())),
                Matrix2::new(r(0.0), r(0.0), r(t.sqrt()), r(0.0)),
            ])
        }
        _ => Err(Error::UnknownChannel(format!("{name} (no Kraus form)"))),
    }
}
