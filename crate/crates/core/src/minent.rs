//! Output norms and entropies of single and product channels, closed-form
//! product spectra for the `a|00> + e^{i theta} d|11>` family, and randomized
//! additivity / multiplicativity scans.

use crate::channel::{apply_product_matrix, ChannelAffine, DiagonalChannel};
use crate::cp;
use crate::decompose::{lift_rotation, polar_factor};
use crate::error::{Error, Result};
use crate::linalg::{c, eigvalsh, C64};
use crate::optimize::NelderMead;
use crate::qstate::{
    bloch_entropy, entropy_of_spectrum, eta, pure_from_bloch, schmidt_decompose, BlochVector,
    TwoQubitPure,
};
use nalgebra::{Matrix2, Matrix3, SVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_PI_2, PI};

pub const NORM_TOL: f64 = 1e-11;
pub const VIOLATION_TOL: f64 = 1e-7;

fn require_cp(phi: &ChannelAffine) -> Result<()> {
    let rep = cp::choi_check(phi);
    if rep.is_cp {
        Ok(())
    } else {
        Err(Error::NotCp(format!(
            "Choi matrix has eigenvalue {:.6e}",
            rep.choi_min_eigenvalue
        )))
    }
}

/// Largest output Bloch length and an input achieving it.
///
/// Unital maps use the normal form. Otherwise `|t + T w|^2` is maximized on
/// the unit sphere by the ascent iteration `w <- normalize(T^T (t + T w))`
/// from the 26 nonzero points of `{-1, 0, 1}^3`.
pub fn max_output_bloch(phi: &ChannelAffine) -> (f64, Vector3<f64>) {
    if phi.is_unital() {
        let nf = polar_factor(phi);
        return (nf.diag.lambda[0].abs(), nf.pre_rotation.column(0).into_owned());
    }
    let t = *phi.t();
    let m = *phi.matrix();
    let mt = m.transpose();
    let mut best = (-1.0, Vector3::z());
    for i in -1i32..=1 {
        for j in -1i32..=1 {
            for k in -1i32..=1 {
                if i == 0 && j == 0 && k == 0 {
                    continue;
                }
                let mut w = Vector3::new(i as f64, j as f64, k as f64).normalize();
                for _ in 0..100_000 {
                    let g = mt * (t + m * w);
                    let gn = g.norm();
                    if gn == 0.0 {
                        break;
                    }
                    let nw = g / gn;
                    let step = (nw - w).norm();
                    w = nw;
                    if step <= NORM_TOL {
                        break;
                    }
                }
                let len = (t + m * w).norm();
                if len > best.0 {
                    best = (len, w);
                }
            }
        }
    }
    (best.0.min(1.0), best.1)
}

/// `sup_rho ||Phi(rho)||`, the largest output eigenvalue.
pub fn max_norm(phi: &ChannelAffine) -> Result<f64> {
    require_cp(phi)?;
    Ok(0.5 * (1.0 + max_output_bloch(phi).0))
}

/// Minimal output entropy and a pure input achieving it.
pub fn min_output_entropy(phi: &ChannelAffine) -> Result<(f64, BlochVector)> {
    require_cp(phi)?;
    let (len, w) = max_output_bloch(phi);
    Ok((bloch_entropy(len), BlochVector::new(w)?))
}

/// Spectrum data of `(Phi (x) Omega)(rho)` for `rho` in the diagonal family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductBlockSpectrum {
    pub lambda: [f64; 3],
    pub omega: [f64; 3],
    /// `1 + l3 w3`.
    pub a: f64,
    /// `1 - l3 w3`.
    pub b: f64,
    /// `(l1+l2)(l1-l2)(w1+w2)(w1-w2)`.
    pub gamma: f64,
    pub theta: f64,
}

impl ProductBlockSpectrum {
    pub fn new(phi: &DiagonalChannel, omega: &DiagonalChannel, theta: f64) -> Result<Self> {
        if !phi.is_unital() || !omega.is_unital() {
            return Err(Error::WrongFamily("block spectrum needs unital diagonal maps".into()));
        }
        let l = phi.lambda;
        let w = omega.lambda;
        Ok(Self {
            lambda: l,
            omega: w,
            a: 1.0 + l[2] * w[2],
            b: 1.0 - l[2] * w[2],
            gamma: (l[0] + l[1]) * (l[0] - l[1]) * (w[0] + w[1]) * (w[0] - w[1]),
            theta,
        })
    }

    fn pm(&self) -> (f64, f64, f64, f64) {
        let l = self.lambda;
        let w = self.omega;
        (l[0] + l[1], l[0] - l[1], w[0] + w[1], w[0] - w[1])
    }

    /// Half-width of the outer block spectrum (times 4).
    pub fn f(&self, t: f64) -> f64 {
        let (lp, lm, wp, wm) = self.pm();
        let s = self.lambda[2] + self.omega[2];
        let q = (1.0 - t) * s * s
            + 0.25 * t * (lp * lp * wp * wp + lm * lm * wm * wm + 2.0 * (2.0 * self.theta).cos() * self.gamma);
        q.max(0.0).sqrt()
    }

    /// Half-width of the inner block spectrum (times 4).
    pub fn g(&self, t: f64) -> f64 {
        let (lp, lm, wp, wm) = self.pm();
        let s = self.lambda[2] - self.omega[2];
        let q = (1.0 - t) * s * s
            + 0.25 * t * (lp * lp * wm * wm + lm * lm * wp * wp + 2.0 * (2.0 * self.theta).cos() * self.gamma);
        q.max(0.0).sqrt()
    }

    /// `[(A + f)/4, (A - f)/4, (B + g)/4, (B - g)/4]`.
    pub fn eigenvalues(&self, t: f64) -> [f64; 4] {
        let f = self.f(t);
        let g = self.g(t);
        [0.25 * (self.a + f), 0.25 * (self.a - f), 0.25 * (self.b + g), 0.25 * (self.b - g)]
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

/// Eigenvalues of `(Phi (x) Omega)(rho)` for `rho = |psi><psi|`,
/// `psi = a|00> + e^{i theta} d|11>`, `t = 4 a^2 d^2`.
pub fn block_spectrum(
    phi: &DiagonalChannel,
    omega: &DiagonalChannel,
    t: f64,
    theta: f64,
) -> Result<[f64; 4]> {
    check_t(t)?;
    Ok(ProductBlockSpectrum::new(phi, omega, theta)?.eigenvalues(t))
}

/// `S(t) = eta(A, f)/4 + eta(B, g)/4 + ln 4`, with `theta = 0` when
/// `gamma >= 0` and `theta = pi/2` otherwise.
pub fn entropy_curve_s(phi: &DiagonalChannel, omega: &DiagonalChannel, t: f64) -> Result<f64> {
    check_t(t)?;
    let mut sp = ProductBlockSpectrum::new(phi, omega, 0.0)?;
    if sp.gamma < 0.0 {
        sp.theta = FRAC_PI_2;
    }
    Ok(0.25 * eta(sp.a, sp.f(t))? + 0.25 * eta(sp.b, sp.g(t))? + 4f64.ln())
}

fn check_mu_u(mu: f64, u: f64) -> Result<()> {
    if !(-1e-12..=1.0 + 1e-12).contains(&mu) || u.abs() > mu + 1e-12 {
        return Err(Error::WrongFamily(format!(
            "need 0 <= |u| <= mu <= 1, got mu = {mu}, u = {u}"
        )));
    }
    if cp::tetrahedron_margins([mu, u, mu]).iter().any(|&m| m < -1e-12) {
        return Err(Error::NotCp(format!("Phi[{mu}, {u}, {mu}] is not completely positive")));
    }
    Ok(())
}

/// `4 [S(1) - S(0)]` for `Phi[mu, u, mu] (x) Omega[nu, v, nu]`.
pub fn entropy_difference_params(mu: f64, u: f64, nu: f64, v: f64) -> Result<f64> {
    check_mu_u(mu, u)?;
    check_mu_u(nu, v)?;
    let p = mu * nu;
    let q = u * v;
    Ok(eta(1.0 + p, p + q)? - eta(1.0 + p, mu + nu)? + eta(1.0 - p, p - q)? - eta(1.0 - p, mu - nu)?)
}

pub fn entropy_difference(phi: &DiagonalChannel, omega: &DiagonalChannel) -> Result<f64> {
    let form = |d: &DiagonalChannel| -> Result<(f64, f64)> {
        if !d.is_unital() || (d.lambda[0] - d.lambda[2]).abs() > 1e-12 {
            return Err(Error::WrongFamily(format!(
                "expected Phi[mu, u, mu], got Phi{:?}",
                d.lambda
            )));
        }
        Ok((d.lambda[0], d.lambda[1]))
    };
    let (mu, u) = form(phi)?;
    let (nu, v) = form(omega)?;
    entropy_difference_params(mu, u, nu, v)
}

/// Admissible `u` at the extreme points of the `(u, v)` region for `Phi[mu, u, mu]`.
pub fn extreme_points(mu: f64) -> Result<Vec<f64>> {
    if !(-1e-12..=1.0 + 1e-12).contains(&mu) {
        return Err(Error::Domain(format!("mu = {mu} outside [0, 1]")));
    }
    let mu = mu.clamp(0.0, 1.0);
    let mut v = if mu <= 1.0 / 3.0 { vec![mu, -mu] } else { vec![mu, 2.0 * mu - 1.0] };
    v.sort_by(|a, b| b.total_cmp(a));
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Minimize output entropy; baseline is the sum of single-channel minima.
    Additivity,
    /// Maximize the largest output eigenvalue; baseline is `M_Phi M_Omega`.
    Norm,
}

impl ScanKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Additivity => "additivity",
            Self::Norm => "norm",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    /// Alternate Haar samples with the diagonal family in normal-form bases.
    pub stratified: bool,
    pub refine: bool,
    pub tolerance: f64,
}

impl ScanConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, workers: 1, stratified: false, refine: true, tolerance: VIOLATION_TOL }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub kind: ScanKind,
    pub best_value: f64,
    pub best_state: TwoQubitPure,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub product_baseline: f64,
    /// Distance from the baseline in the direction the bound allows;
    /// negative means the bound is crossed.
    pub gap: f64,
    pub violation: bool,
    pub tolerance: f64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for worker `index`: `splitmix64(master ^ splitmix64(index + 1))`.
pub fn worker_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(1)))
}

/// Haar-random two-qubit pure state from four complex Gaussians.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitPure {
    loop {
        let mut z = [c(0.0, 0.0); 4];
        for x in z.iter_mut() {
            *x = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        if let Ok(p) = TwoQubitPure::normalized(Matrix2::new(z[0], z[1], z[2], z[3])) {
            return p;
        }
    }
}

#[derive(Clone, Copy)]
struct Objective {
    kind: ScanKind,
    phi: ChannelAffine,
    omega: ChannelAffine,
}

impl Objective {
    /// Value to minimize.
    fn eval(&self, psi: &SVector<C64, 4>) -> f64 {
        let rho = psi * psi.adjoint();
        let out = apply_product_matrix(&self.phi, &self.omega, &rho);
        let ev = eigvalsh(&out);
        match self.kind {
            ScanKind::Additivity => entropy_of_spectrum(ev.as_slice()),
            ScanKind::Norm => -ev[0],
        }
    }

    fn report(&self, v: f64) -> f64 {
        match self.kind {
            ScanKind::Additivity => v,
            ScanKind::Norm => -v,
        }
    }
}

/// Local unitary taking `|0>` to the top input direction of a channel.
fn family_frame(phi: &ChannelAffine) -> Matrix2<C64> {
    let nf = polar_factor(phi);
    let q = Matrix3::new(0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    lift_rotation(&(nf.pre_rotation * q)).expect("proper rotation")
}

fn run_worker(obj: &Objective, n: usize, seed: u64, frames: Option<(Matrix2<C64>, Matrix2<C64>)>) -> Option<(f64, SVector<C64, 4>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, SVector<C64, 4>)> = None;
    for i in 0..n {
        let psi = match frames {
            Some((u1, u2)) if i % 2 == 1 => {
                let alpha: f64 = rng.random();
                let theta: f64 = rng.random::<f64>() * 2.0 * PI;
                TwoQubitPure::diagonal_family(alpha, theta)
                    .expect("alpha in [0, 1)")
                    .local_unitary(&u1, &u2)
            }
            _ => haar_state(&mut rng),
        };
        let v = psi.vector();
        let val = obj.eval(&v);
        if best.as_ref().is_none_or(|(b, _)| val < *b) {
            best = Some((val, v));
        }
    }
    best
}

/// Orthonormal basis of the complement of a unit vector in C^4.
fn complement_basis(psi: &SVector<C64, 4>) -> [SVector<C64, 4>; 3] {
    let mut skip = 0;
    for k in 1..4 {
        if psi[k].norm() > psi[skip].norm() {
            skip = k;
        }
    }
    let mut basis: Vec<SVector<C64, 4>> = vec![*psi];
    for k in 0..4 {
        if k == skip {
            continue;
        }
        let mut e = SVector::<C64, 4>::zeros();
        e[k] = c(1.0, 0.0);
        for b in &basis {
            let proj = b.dotc(&e);
            e -= b * proj;
        }
        let n = e.norm();
        basis.push(e / c(n, 0.0));
    }
    [basis[1], basis[2], basis[3]]
}

fn chart(psi0: &SVector<C64, 4>, basis: &[SVector<C64, 4>; 3], p: &[f64]) -> SVector<C64, 4> {
    let mut v = *psi0;
    for k in 0..3 {
        v += basis[k] * c(p[2 * k], p[2 * k + 1]);
    }
    let n = v.norm();
    v / c(n, 0.0)
}

/// Nelder-Mead in the tangent chart `psi(p) = normalize(psi0 + sum (p_2k + i p_2k+1) v_k)`,
/// re-centred after every 120-iteration round.
fn refine(obj: &Objective, start: (f64, SVector<C64, 4>)) -> (f64, SVector<C64, 4>) {
    let (mut best, mut psi) = start;
    let mut step = 0.1;
    for _ in 0..80 {
        let basis = complement_basis(&psi);
        let nm = NelderMead { max_iter: 120, tol: 1e-12, step };
        let r = nm.minimize(|p| obj.eval(&chart(&psi, &basis, p)), &[0.0; 6]);
        let gain = best - r.value;
        if r.value < best {
            best = r.value;
            psi = chart(&psi, &basis, &r.x);
        }
        if gain <= 1e-13 {
            step *= 0.25;
        }
        if step < 1e-7 {
            break;
        }
    }
    (best, psi)
}

/// Product of the single-channel optimal inputs (largest output Bloch length).
fn optimal_product(phi: &ChannelAffine, omega: &ChannelAffine) -> SVector<C64, 4> {
    let (_, w1) = max_output_bloch(phi);
    let (_, w2) = max_output_bloch(omega);
    crate::linalg::kron_vec(&pure_from_bloch(&w1), &pure_from_bloch(&w2))
}

pub fn run_scan(kind: ScanKind, phi: &ChannelAffine, omega: &ChannelAffine, cfg: &ScanConfig) -> Result<ScanResult> {
    require_cp(phi)?;
    require_cp(omega)?;
    let baseline = match kind {
        ScanKind::Additivity => min_output_entropy(phi)?.0 + min_output_entropy(omega)?.0,
        ScanKind::Norm => max_norm(phi)? * max_norm(omega)?,
    };
    let obj = Objective { kind, phi: *phi, omega: *omega };
    let workers = cfg.workers.max(1);
    let frames = cfg.stratified.then(|| (family_frame(phi), family_frame(omega)));

    let (best_val, best_vec) = if cfg.samples == 0 {
        let v = optimal_product(phi, omega);
        (obj.eval(&v), v)
    } else {
        let base = cfg.samples / workers;
        let extra = cfg.samples % workers;
        let results: Vec<Option<(f64, SVector<C64, 4>)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|i| {
                    let n = base + usize::from(i < extra);
                    let seed = worker_seed(cfg.seed, i as u64);
                    let obj = &obj;
                    s.spawn(move || run_worker(obj, n, seed, frames))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
        });
        let mut best: Option<(f64, SVector<C64, 4>)> = None;
        for r in results.into_iter().flatten() {
            if best.as_ref().is_none_or(|(b, _)| r.0 < *b) {
                best = Some(r);
            }
        }
        let mut best = best.expect("at least one sample");
        if cfg.refine {
            best = refine(&obj, best);
            // Prefer the dominant Schmidt term when it is no worse.
            let psi = TwoQubitPure::normalized(Matrix2::new(best.1[0], best.1[1], best.1[2], best.1[3]))?;
            let lead = schmidt_decompose(&psi).leading_product().vector();
            let lv = obj.eval(&lead);
            if lv <= best.0 + 1e-12 {
                best = (lv, lead);
            }
        }
        best
    };

    let best_value = obj.report(best_val);
    let gap = match kind {
        ScanKind::Additivity => best_value - baseline,
        ScanKind::Norm => baseline - best_value,
    };
    Ok(ScanResult {
        kind,
        best_value,
        best_state: TwoQubitPure::from_vector(&best_vec)
            .or_else(|_| TwoQubitPure::normalized(Matrix2::new(best_vec[0], best_vec[1], best_vec[2], best_vec[3])))?,
        samples: cfg.samples,
        seed: cfg.seed,
        workers,
        product_baseline: baseline,
        gap,
        violation: gap < -cfg.tolerance,
        tolerance: cfg.tolerance,
    })
}

pub fn additivity_scan(phi: &ChannelAffine, omega: &ChannelAffine, samples: usize, seed: u64) -> Result<ScanResult> {
    run_scan(ScanKind::Additivity, phi, omega, &ScanConfig::new(samples, seed))
}

pub fn norm_multiplicativity_scan(
    phi: &ChannelAffine,
    omega: &ChannelAffine,
    samples: usize,
    seed: u64,
) -> Result<ScanResult> {
    run_scan(ScanKind::Norm, phi, omega, &ScanConfig::new(samples, seed))
}
