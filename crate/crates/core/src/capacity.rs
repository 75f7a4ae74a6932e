//! Holevo and Shannon capacities, fixed points and the ellipse geometry of
//! the `diag(l1, 0, l3)` non-unital family.

use crate::channel::ChannelAffine;
use crate::cp;
use crate::error::{Error, Result};
use crate::linalg::{svd3, C64};
use crate::minent::max_output_bloch;
use crate::optimize::{golden_section_max, NelderMead};
use crate::qstate::{bloch_entropy, bloch_of, bloch_to_density, pure_from_bloch, BlochVector, DensityMatrix};
use nalgebra::{Matrix2, Matrix3, Vector3};
use std::f64::consts::{LN_2, PI};

pub const MAX_ENSEMBLE: usize = 8;
pub const CAPACITY_TOL: f64 = 1e-10;
pub const PRIOR_GRID: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    priors: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Ensemble {
    pub fn new(priors: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if priors.is_empty() || priors.len() > MAX_ENSEMBLE || priors.len() != states.len() {
            return Err(Error::Domain(format!(
                "ensemble needs 1 to {MAX_ENSEMBLE} priors matching the states, got {} and {}",
                priors.len(),
                states.len()
            )));
        }
        if priors.iter().any(|&p| !(p >= -1e-12)) {
            return Err(Error::Domain("priors must be non-negative".into()));
        }
        let s: f64 = priors.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("priors sum to {s}, not 1")));
        }
        Ok(Self { priors, states })
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn bloch_vectors(&self) -> Vec<Vector3<f64>> {
        self.states.iter().map(|s| bloch_of(s.matrix())).collect()
    }

    fn from_bloch(priors: Vec<f64>, ws: &[Vector3<f64>]) -> Result<Self> {
        let states = ws
            .iter()
            .map(|w| Ok(bloch_to_density(&BlochVector::new(*w)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(priors, states)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<Matrix2<C64>>,
}

impl Povm {
    pub fn new(elements: Vec<Matrix2<C64>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("POVM needs at least one element".into()));
        }
        let s: Matrix2<C64> = elements.iter().sum();
        if (s - Matrix2::identity()).norm() > 1e-10 {
            return Err(Error::Domain("POVM elements do not sum to I".into()));
        }
        for e in &elements {
            if crate::linalg::hermitian_defect(e) > 1e-10 || crate::linalg::eigvalsh2(e)[1] < -1e-10 {
                return Err(Error::Domain("POVM element is not positive".into()));
            }
        }
        Ok(Self { elements })
    }

    /// `E_+- = (I +- n.sigma) / 2` for a unit axis `n`.
    pub fn projective(n: &Vector3<f64>) -> Result<Self> {
        let n = n.normalize();
        let p = bloch_to_density(&BlochVector::new(n)?);
        let q = bloch_to_density(&BlochVector::new(-n)?);
        Self::new(vec![*p.matrix(), *q.matrix()])
    }

    pub fn elements(&self) -> &[Matrix2<C64>] {
        &self.elements
    }

    /// `p_j = Tr(rho E_j)`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Vec<f64> {
        self.elements.iter().map(|e| (rho.matrix() * e).trace().re).collect()
    }
}

fn require_cp(phi: &ChannelAffine) -> Result<()> {
    let rep = cp::choi_check(phi);
    if rep.is_cp {
        Ok(())
    } else {
        Err(Error::NotCp(format!("Choi matrix has eigenvalue {:.6e}", rep.choi_min_eigenvalue)))
    }
}

fn chi(phi: &ChannelAffine, priors: &[f64], ws: &[Vector3<f64>]) -> f64 {
    let mut mean = Vector3::zeros();
    let mut avg = 0.0;
    for (p, w) in priors.iter().zip(ws) {
        let b = phi.apply_bloch(w);
        mean += b * *p;
        avg += p * bloch_entropy(b.norm());
    }
    bloch_entropy(mean.norm()) - avg
}

/// `S(Phi(sum p_i rho_i)) - sum p_i S(Phi(rho_i))`.
pub fn holevo_quantity(phi: &ChannelAffine, ens: &Ensemble) -> f64 {
    chi(phi, &ens.priors, &ens.bloch_vectors()).max(0.0)
}

fn sph(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

fn angles(w: &Vector3<f64>) -> (f64, f64) {
    let n = w.norm();
    if n == 0.0 {
        return (0.0, 0.0);
    }
    ((w.z / n).clamp(-1.0, 1.0).acos(), w.y.atan2(w.x))
}

/// Four Fibonacci-lattice directions on the sphere.
fn fibonacci_directions() -> [Vector3<f64>; 4] {
    let golden = PI * (3.0 - 5f64.sqrt());
    std::array::from_fn(|k| {
        let z = 1.0 - (2 * k + 1) as f64 / 4.0;
        let r = (1.0 - z * z).sqrt();
        let a = golden * k as f64;
        Vector3::new(r * a.cos(), r * a.sin(), z)
    })
}

/// `(prior, w1, w2)` seeds: Fibonacci directions paired with their antipodes
/// times the prior grid.
fn two_state_starts() -> Vec<(f64, Vector3<f64>, Vector3<f64>)> {
    let mut v = Vec::with_capacity(20);
    for w in fibonacci_directions() {
        for p in PRIOR_GRID {
            v.push((p, w, -w));
        }
    }
    v
}

fn prior_param(p: f64) -> f64 {
    p.clamp(0.0, 1.0).sqrt().asin()
}

fn decode2(x: &[f64]) -> (f64, Vector3<f64>, Vector3<f64>) {
    (x[0].sin().powi(2), sph(x[1], x[2]), sph(x[3], x[4]))
}

fn encode2(p: f64, w1: &Vector3<f64>, w2: &Vector3<f64>) -> Vec<f64> {
    let (t1, f1) = angles(w1);
    let (t2, f2) = angles(w2);
    vec![prior_param(p), t1, f1, t2, f2]
}

fn polish<F: FnMut(&[f64]) -> f64>(mut f: F, x0: Vec<f64>, step: f64) -> (Vec<f64>, f64) {
    let mut x = x0;
    let mut best = f(&x);
    let mut step = step;
    for _ in 0..20 {
        let r = NelderMead { max_iter: 4000, tol: CAPACITY_TOL, step }.minimize(&mut f, &x);
        if r.value < best - 1e-15 {
            best = r.value;
            x = r.x;
        } else {
            step *= 0.3;
            if step < 1e-6 {
                break;
            }
        }
    }
    (x, best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub value: f64,
    pub ensemble: Ensemble,
}

fn holevo_two_state(phi: &ChannelAffine) -> (f64, Vec<f64>) {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (p, w1, w2) in two_state_starts() {
        let x0 = encode2(p, &w1, &w2);
        let (x, v) = polish(
            |x| {
                let (p, a, b) = decode2(x);
                -chi(phi, &[p, 1.0 - p], &[a, b])
            },
            x0,
            0.3,
        );
        if best.as_ref().is_none_or(|(bv, _)| -v > *bv) {
            best = Some((-v, x));
        }
    }
    best.expect("starts are non-empty")
}

fn decode3(x: &[f64]) -> ([f64; 3], [Vector3<f64>; 3]) {
    let sa = x[0].sin().powi(2);
    let cb = x[1].cos().powi(2);
    (
        [sa * cb, sa * (1.0 - cb), 1.0 - sa],
        [sph(x[2], x[3]), sph(x[4], x[5]), sph(x[6], x[7])],
    )
}

/// Holevo capacity. Unital maps use `ln 2 - h(mu)` with the antipodal
/// ensemble along the top input direction; otherwise two-state ensembles are
/// optimized from 20 starts and checked against a three-state pass.
pub fn holevo_capacity(phi: &ChannelAffine) -> Result<CapacityResult> {
    require_cp(phi)?;
    if phi.is_unital() {
        let (mu, w) = max_output_bloch(phi);
        let ens = Ensemble::from_bloch(vec![0.5, 0.5], &[w, -w])?;
        return Ok(CapacityResult { value: LN_2 - bloch_entropy(mu), ensemble: ens });
    }
    let (v2, x2) = holevo_two_state(phi);
    let (p, a, b) = decode2(&x2);

    let mid = a + b;
    let w3 = if mid.norm() > 1e-6 { mid.normalize() } else { Vector3::z() };
    let (t1, f1) = angles(&a);
    let (t2, f2) = angles(&b);
    let (t3, f3) = angles(&w3);
    let x0 = vec![0.95f64.sqrt().asin(), p.sqrt().acos(), t1, f1, t2, f2, t3, f3];
    let (x3, v3) = polish(
        |x| {
            let (pr, ws) = decode3(x);
            -chi(phi, &pr, &ws)
        },
        x0,
        0.2,
    );
    let ens = if -v3 > v2 + 1e-12 {
        let (pr, ws) = decode3(&x3);
        Ensemble::from_bloch(pr.to_vec(), &ws)?
    } else {
        Ensemble::from_bloch(vec![p, 1.0 - p], &[a, b])?
    };
    Ok(CapacityResult { value: holevo_quantity(phi, &ens), ensemble: ens })
}

/// Holevo quantity maximized over two-state ensembles of orthogonal pure states.
pub fn holevo_orthogonal(phi: &ChannelAffine) -> Result<CapacityResult> {
    require_cp(phi)?;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (p, w, _) in two_state_starts() {
        let (t, f) = angles(&w);
        let (x, v) = polish(
            |x| {
                let p = x[0].sin().powi(2);
                let w = sph(x[1], x[2]);
                -chi(phi, &[p, 1.0 - p], &[w, -w])
            },
            vec![prior_param(p), t, f],
            0.3,
        );
        if best.as_ref().is_none_or(|(bv, _)| -v > *bv) {
            best = Some((-v, x));
        }
    }
    let (_, x) = best.expect("starts are non-empty");
    let p = x[0].sin().powi(2);
    let w = sph(x[1], x[2]);
    let ens = Ensemble::from_bloch(vec![p, 1.0 - p], &[w, -w])?;
    Ok(CapacityResult { value: holevo_quantity(phi, &ens), ensemble: ens })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShannonResult {
    pub value: f64,
    pub ensemble: Ensemble,
    pub povm: Povm,
}

fn xlogy_ratio(p: f64, q: f64) -> f64 {
    if p <= 0.0 || q <= 0.0 {
        0.0
    } else {
        p * (p / q).ln()
    }
}

/// Mutual information of a two-state ensemble measured along `n`.
fn mutual_info(phi: &ChannelAffine, p: f64, w1: &Vector3<f64>, w2: &Vector3<f64>, n: &Vector3<f64>) -> f64 {
    let b1 = phi.apply_bloch(w1);
    let b2 = phi.apply_bloch(w2);
    let a = (0.5 * (1.0 + b1.dot(n))).clamp(0.0, 1.0);
    let b = (0.5 * (1.0 + b2.dot(n))).clamp(0.0, 1.0);
    let q = p * a + (1.0 - p) * b;
    p * (xlogy_ratio(a, q) + xlogy_ratio(1.0 - a, 1.0 - q))
        + (1.0 - p) * (xlogy_ratio(b, q) + xlogy_ratio(1.0 - b, 1.0 - q))
}

/// Shannon capacity over two-state ensembles and two-outcome projective
/// measurements.
pub fn shannon_capacity(phi: &ChannelAffine) -> Result<ShannonResult> {
    let hol = holevo_capacity(phi)?;
    let mut seeds: Vec<(f64, Vector3<f64>, Vector3<f64>)> = Vec::new();
    if hol.ensemble.priors.len() == 2 {
        let ws = hol.ensemble.bloch_vectors();
        seeds.push((hol.ensemble.priors[0], ws[0], ws[1]));
    }
    seeds.extend(two_state_starts());
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (p, w1, w2) in seeds {
        let d = phi.apply_bloch(&w1) - phi.apply_bloch(&w2);
        let n = if d.norm() > 1e-9 { d.normalize() } else { w1.normalize() };
        let mut x0 = encode2(p, &w1, &w2);
        let (tn, fn_) = angles(&n);
        x0.extend([tn, fn_]);
        let (x, v) = polish(
            |x| {
                let (p, a, b) = decode2(x);
                -mutual_info(phi, p, &a, &b, &sph(x[5], x[6]))
            },
            x0,
            0.3,
        );
        if best.as_ref().is_none_or(|(bv, _)| -v > *bv) {
            best = Some((-v, x));
        }
    }
    let (value, x) = best.expect("seeds are non-empty");
    let (p, a, b) = decode2(&x);
    Ok(ShannonResult {
        value,
        ensemble: Ensemble::from_bloch(vec![p, 1.0 - p], &[a, b])?,
        povm: Povm::projective(&sph(x[5], x[6]))?,
    })
}

/// Column-stochastic matrix of the `l1 = 0` limit of the special family:
/// column `j` holds the outcome distribution along the third axis for the
/// input pole `+z` (`j = 0`) or `-z` (`j = 1`).
pub fn classical_limit_matrix(l3: f64, t: f64) -> Matrix2<f64> {
    Matrix2::new(1.0 + t + l3, 1.0 + t - l3, 1.0 - t - l3, 1.0 - t + l3) * 0.5
}

/// Capacity and optimal prior (of the first input) of a binary classical
/// channel given as a column-stochastic matrix.
pub fn binary_channel_capacity(m: &Matrix2<f64>) -> (f64, f64) {
    let info = |p: f64| {
        let q0 = p * m[(0, 0)] + (1.0 - p) * m[(0, 1)];
        let q1 = 1.0 - q0;
        p * (xlogy_ratio(m[(0, 0)], q0) + xlogy_ratio(m[(1, 0)], q1))
            + (1.0 - p) * (xlogy_ratio(m[(0, 1)], q0) + xlogy_ratio(m[(1, 1)], q1))
    };
    let (p, v) = golden_section_max(info, 0.0, 1.0, 1e-12);
    (v, p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    /// Minimum-norm solution of `(I - T) w = t`.
    pub point: BlochVector,
    /// Directions along which fixed points are not unique.
    pub kernel: Vec<Vector3<f64>>,
    pub residual: f64,
}

pub fn fixed_point(phi: &ChannelAffine) -> Result<FixedPoint> {
    let m = Matrix3::identity() - phi.matrix();
    let (u, s, v) = svd3(&m);
    let cutoff = 1e-12 * s[0].max(1.0);
    let mut w = Vector3::zeros();
    let mut kernel = Vec::new();
    for k in 0..3 {
        if s[k] > cutoff {
            w += v.column(k) * (u.column(k).dot(phi.t()) / s[k]);
        } else {
            kernel.push(v.column(k).into_owned());
        }
    }
    let residual = (phi.t() + phi.matrix() * w - w).norm();
    if residual > 1e-10 {
        return Err(Error::NoFixedPoint(format!(
            "(I - T) is singular and t is not in its range (residual {residual:.3e})"
        )));
    }
    Ok(FixedPoint { point: BlochVector::new(w)?, kernel, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipseGeometry {
    pub a_plus: Vector3<f64>,
    pub a_minus: Vector3<f64>,
    /// Points of maximal Bloch length on the image ellipse (one or two).
    pub min_entropy_points: Vec<Vector3<f64>>,
    /// Maximal Bloch length.
    pub level_circle_radius: f64,
}

/// Image ellipse `w1^2/l1^2 + (w3 - t)^2/l3^2 = 1` of the map with
/// `T = diag(l1, 0, l3)`, `t = (0, 0, t)`.
pub fn ellipse_geometry(phi: &ChannelAffine) -> Result<EllipseGeometry> {
    let m = phi.matrix();
    let tv = phi.t();
    let off = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|(i, j)| i != j);
    let off_ok = off.into_iter().all(|(i, j)| m[(i, j)].abs() <= 1e-12);
    if !off_ok || m[(1, 1)].abs() > 1e-12 || tv.x.abs() > 1e-12 || tv.y.abs() > 1e-12 {
        return Err(Error::WrongFamily("expected T = diag(l1, 0, l3) and t along the third axis".into()));
    }
    let (l1, l3, t) = (m[(0, 0)], m[(2, 2)], tv.z);
    let point = |cphi: f64, sign: f64| {
        let s = (1.0 - cphi * cphi).max(0.0).sqrt();
        Vector3::new(sign * l1.abs() * s, 0.0, t + l3 * cphi)
    };
    // r^2(c) = (l3^2 - l1^2) c^2 + 2 t l3 c + l1^2 + t^2 with c = cos(phi).
    let r2 = |cphi: f64| (l3 * l3 - l1 * l1) * cphi * cphi + 2.0 * t * l3 * cphi + l1 * l1 + t * t;
    let denom = l1 * l1 - l3 * l3;
    let cstar = if denom.abs() > 1e-12 {
        let cs = t * l3 / denom;
        let mut cands = vec![-1.0, 1.0];
        if cs.abs() < 1.0 {
            cands.push(cs);
        }
        cands.into_iter().max_by(|a, b| r2(*a).total_cmp(&r2(*b))).unwrap()
    } else {
        let (phi_opt, _) = golden_section_max(
            |ph| {
                let p = point(ph.cos(), 1.0);
                p.norm_squared()
            },
            0.0,
            PI,
            1e-12,
        );
        let cands = [-1.0, 1.0, phi_opt.cos()];
        cands.into_iter().max_by(|a, b| r2(*a).total_cmp(&r2(*b))).unwrap()
    };
    let radius = r2(cstar).max(0.0).sqrt();
    let pts = if (1.0 - cstar.abs()) <= 1e-12 || l1 == 0.0 {
        vec![point(cstar.signum(), 1.0)]
    } else {
        vec![point(cstar, 1.0), point(cstar, -1.0)]
    };
    Ok(EllipseGeometry {
        a_plus: Vector3::new(l1.abs(), 0.0, t),
        a_minus: Vector3::new(-l1.abs(), 0.0, t),
        min_entropy_points: pts,
        level_circle_radius: radius,
    })
}

/// Pure input state with Bloch vector `w` (as a density matrix).
pub fn pure_input(w: &Vector3<f64>) -> Result<DensityMatrix> {
    DensityMatrix::pure(&pure_from_bloch(w))
}

/// `|<psi_1|psi_2>|` for two pure states given as density matrices.
pub fn overlap(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    (a.matrix() * b.matrix()).trace().re.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{catalog, DiagonalChannel};
    use crate::qstate::binary_entropy_h;

    fn diag(l: [f64; 3]) -> ChannelAffine {
        DiagonalChannel::new_unchecked(l, [0.0; 3]).to_affine_unchecked()
    }

    #[test]
    fn holevo_quantity_examples() {
        let id = ChannelAffine::identity();
        let up = Vector3::z();
        let single = Ensemble::from_bloch(vec![1.0], &[up]).unwrap();
        assert_eq!(holevo_quantity(&id, &single), 0.0);
        let bit = Ensemble::from_bloch(vec![0.5, 0.5], &[up, -up]).unwrap();
        assert!((holevo_quantity(&id, &bit) - LN_2).abs() < 1e-15);
        let mu = 0.6;
        let phi = diag([mu, 0.3, mu]);
        let ens = Ensemble::from_bloch(vec![0.5, 0.5], &[Vector3::x(), -Vector3::x()]).unwrap();
        assert!((holevo_quantity(&phi, &ens) - (LN_2 - binary_entropy_h(mu).unwrap())).abs() < 1e-15);
    }

    #[test]
    fn unital_capacities() {
        let x = 0.1;
        let phi = catalog("depolarizing", &[x]).unwrap();
        let h = holevo_capacity(&phi).unwrap();
        assert!((h.value - (LN_2 - binary_entropy_h(1.0 - 4.0 * x / 3.0).unwrap())).abs() < 1e-15);
        let s = shannon_capacity(&phi).unwrap();
        assert!((s.value - h.value).abs() < 1e-9);

        let id = ChannelAffine::identity();
        let s = shannon_capacity(&id).unwrap();
        assert!((s.value - LN_2).abs() < 1e-12);
        let ws = s.ensemble.bloch_vectors();
        assert!((ws[0] + ws[1]).norm() < 1e-5);
    }

    #[test]
    fn splaying_boundary_capacity_is_h_of_t() {
        let t: f64 = 0.6;
        let l1 = (1.0 - t * t).sqrt();
        let phi = catalog("splaying-family", &[l1, 0.0, t]).unwrap();
        let h = holevo_capacity(&phi).unwrap();
        assert!((h.value - binary_entropy_h(t).unwrap()).abs() < 1e-9);
        assert!(h.value < LN_2 - 1e-3);
    }

    #[test]
    fn fuchs_needs_non_orthogonal_states() {
        let f = catalog("fuchs", &[]).unwrap();
        let h = holevo_capacity(&f).unwrap();
        let o = holevo_orthogonal(&f).unwrap();
        assert!(h.value >= o.value + 1e-6);
        let st = h.ensemble.states();
        assert!(overlap(&st[0], &st[1]) > 1e-3);
        assert!((h.ensemble.priors()[0] - 0.5).abs() < 1e-4);
        assert!((holevo_quantity(&f, &h.ensemble) - h.value).abs() < 1e-10);
    }

    #[test]
    fn classical_limit_prior_is_not_half() {
        let (l3, t) = (0.5, 0.3);
        let phi = catalog("splaying-family", &[0.0, l3, t]).unwrap();
        let m = classical_limit_matrix(l3, t);
        for w in [-1.0, -0.4, 0.0, 0.7, 1.0] {
            let out = m * nalgebra::Vector2::new(1.0 + w, 1.0 - w) * 0.5;
            let b = phi.apply_bloch(&Vector3::new(0.0, 0.0, w));
            assert!((out[0] - out[1] - b.z).abs() < 1e-15);
        }
        let (cap, p) = binary_channel_capacity(&m);
        assert!((p - 0.5).abs() > 1e-3);
        let s = shannon_capacity(&phi).unwrap();
        assert!((s.value - cap).abs() < 1e-8);
    }

    #[test]
    fn fixed_points() {
        let fp = fixed_point(&catalog("depolarizing", &[0.4]).unwrap()).unwrap();
        assert_eq!(fp.point.vector(), Vector3::zeros());
        let (l1, l3, t) = (0.3, 0.5, 0.2);
        let fp = fixed_point(&catalog("splaying-family", &[l1, l3, t]).unwrap()).unwrap();
        assert!((fp.point.vector() - Vector3::new(0.0, 0.0, t / (1.0 - l3))).norm() < 1e-15);
        let fp = fixed_point(&catalog("fuchs", &[]).unwrap()).unwrap();
        assert!((fp.point.vector() - Vector3::new(0.0, 0.0, 0.5)).norm() < 1e-12);
        let fp = fixed_point(&ChannelAffine::identity()).unwrap();
        assert_eq!(fp.kernel.len(), 3);
        let shift = ChannelAffine::new_unchecked(Vector3::new(0.0, 0.0, 0.1), Matrix3::identity());
        assert!(matches!(fixed_point(&shift), Err(Error::NoFixedPoint(_))));
    }

    #[test]
    fn ellipse_examples() {
        let g = ellipse_geometry(&catalog("fuchs", &[]).unwrap()).unwrap();
        assert!((g.a_plus.norm() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.min_entropy_points.len(), 2);
        assert!((g.min_entropy_points[0] - Vector3::new(0.5, 0.0, 0.5)).norm() < 1e-12);
        assert!((g.min_entropy_points[1] - Vector3::new(-0.5, 0.0, 0.5)).norm() < 1e-12);
        assert!((g.level_circle_radius - 0.5f64.sqrt()).abs() < 1e-15);

        let phi = catalog("splaying-family", &[0.2, 0.5, 0.3]).unwrap();
        let g = ellipse_geometry(&phi).unwrap();
        assert_eq!(g.min_entropy_points, vec![Vector3::new(0.0, 0.0, 0.8)]);
        assert!(ellipse_geometry(&catalog("amplitude-damping", &[0.3]).unwrap()).is_err());
    }
}
