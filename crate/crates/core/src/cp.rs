//! Complete-positivity tests: tetrahedron inequalities, the non-unital
//! special case, and the Choi-matrix oracle.

use crate::channel::{apply_product_matrix, ChannelAffine, UNITAL_TOL};
use crate::error::{Error, Result};
use crate::linalg::{c, eigvalsh, C64};
use nalgebra::Matrix4;

/// Margins within this distance of zero are reported as boundary cases.
pub const CP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub id: &'static str,
    /// Non-negative when satisfied.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CpReport {
    pub is_cp: bool,
    /// Some margin (or the Choi eigenvalue) lies within `CP_TOL` of zero.
    pub boundary: bool,
    pub margins: Vec<Inequality>,
    pub violated: Vec<Inequality>,
    pub choi_min_eigenvalue: f64,
}

impl CpReport {
    fn from_margins(margins: Vec<Inequality>, choi_min_eigenvalue: f64) -> Self {
        let violated: Vec<Inequality> = margins.iter().filter(|m| m.margin < -CP_TOL).cloned().collect();
        let boundary = margins.iter().any(|m| m.margin.abs() <= CP_TOL);
        Self {
            is_cp: violated.is_empty(),
            boundary,
            margins,
            violated,
            choi_min_eigenvalue,
        }
    }
}

pub const TETRAHEDRON_IDS: [&str; 4] = [
    "l1+l2<=1+l3",
    "l1-l2<=1-l3",
    "-l1+l2<=1-l3",
    "-l1-l2<=1+l3",
];

/// Margins of the four faces of the tetrahedron with corners
/// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
pub fn tetrahedron_margins(l: [f64; 3]) -> [f64; 4] {
    let [l1, l2, l3] = l;
    [
        1.0 + l3 - l1 - l2,
        1.0 - l3 - l1 + l2,
        1.0 - l3 + l1 - l2,
        1.0 + l3 + l1 + l2,
    ]
}

/// Necessary and sufficient test for unital maps with diagonal `T`.
pub fn check_tetrahedron(phi: &ChannelAffine) -> Result<CpReport> {
    if !phi.is_unital() || !phi.is_diagonal() {
        return Err(Error::WrongTest(
            "tetrahedron test needs a unital diagonal map; use choi_check".into(),
        ));
    }
    let m = phi.matrix();
    let l = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
    let margins = tetrahedron_margins(l)
        .iter()
        .zip(TETRAHEDRON_IDS)
        .map(|(&margin, id)| Inequality { id, margin })
        .collect();
    Ok(CpReport::from_margins(margins, choi_min_eigenvalue(phi)))
}

/// `l1^2 + t^2 <= (1 - |l3|)^2` for `T = diag(l1, 0, l3)`, `t = (0, 0, t)`,
/// together with `|l3| <= 1`.
pub fn check_nonunital_special(l1: f64, l3: f64, t: f64) -> CpReport {
    let margins = vec![
        Inequality {
            id: "l1^2+t^2<=(1-|l3|)^2",
            margin: (1.0 - l3.abs()).powi(2) - l1 * l1 - t * t,
        },
        Inequality {
            id: "|l3|<=1",
            margin: 1.0 - l3.abs(),
        },
    ];
    let phi = crate::channel::DiagonalChannel::new_unchecked([l1, 0.0, l3], [0.0, 0.0, t]);
    CpReport::from_margins(margins, choi_min_eigenvalue(&phi.to_affine_unchecked()))
}

/// `(I (x) Phi)(|Phi+><Phi+|)` with `|Phi+> = (|00> + |11>)/sqrt 2`.
pub fn choi_matrix(phi: &ChannelAffine) -> Matrix4<C64> {
    let mut bell = Matrix4::<C64>::zeros();
    for &(r, s) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
        bell[(r, s)] = c(0.5, 0.0);
    }
    apply_product_matrix(&ChannelAffine::identity(), phi, &bell)
}

pub fn choi_min_eigenvalue(phi: &ChannelAffine) -> f64 {
    eigvalsh(&choi_matrix(phi))[3]
}

/// Authoritative test for any affine map.
pub fn choi_check(phi: &ChannelAffine) -> CpReport {
    let ev = choi_min_eigenvalue(phi);
    let mut rep = CpReport::from_margins(vec![Inequality { id: "choi>=0", margin: ev }], ev);
    rep.margins.clear();
    rep
}

/// Picks the inequality test that applies to `phi` (tetrahedron for unital
/// diagonal maps, the special inequality for `diag(l1, 0, l3)` with
/// translation along the third axis) and falls back to the Choi test.
pub fn check(phi: &ChannelAffine) -> (&'static str, CpReport) {
    if phi.is_diagonal() {
        if phi.is_unital() {
            if let Ok(rep) = check_tetrahedron(phi) {
                return ("tetrahedron", rep);
            }
        }
        let m = phi.matrix();
        let t = phi.t();
        if m[(1, 1)].abs() <= UNITAL_TOL && t.x.abs() <= UNITAL_TOL && t.y.abs() <= UNITAL_TOL {
            return ("nonunital-special", check_nonunital_special(m[(0, 0)], m[(2, 2)], t.z));
        }
    }
    ("choi", choi_check(phi))
}
