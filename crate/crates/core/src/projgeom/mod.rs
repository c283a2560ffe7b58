//! Projective geometry of `P⁷`: subspaces, the quadric pencil, null lines,
//! rulings of `Y`, the fiber projectivity and central projections.

pub mod lines;
pub mod quadric;
pub mod subspace;

pub use lines::{common_lines, common_lines_with_tolerance, is_null_line, line_is_null, LineSet};
pub use quadric::{
    null_cone, pencil_member, quadric_e, quadric_y4, quadric_y8, study_quadric, QuadricForm, QuadricLabel, Signature,
};
pub use subspace::{Line, ProjPoint, Subspace};

use crate::algebra::{dot, left_mul_matrix, right_mul_matrix, DualQuaternion, Matrix, Quaternion, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handedness {
    RightRuling,
    LeftRuling,
    NotARuling,
}

impl Handedness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Handedness::RightRuling => "RightRuling",
            Handedness::LeftRuling => "LeftRuling",
            Handedness::NotARuling => "NotARuling",
        }
    }
}

/// Quaternion of a point of `[εH]`, given either in `P⁷` or in the chart `εd ↦ d`.
fn eps_chart(p: &ProjPoint) -> Option<Quaternion> {
    match p.ambient() {
        4 => Some(Quaternion::from_slice(p.coords())),
        8 => {
            let q = p.to_dq();
            q.primal.is_zero().then_some(q.dual)
        }
        _ => None,
    }
}

/// Which family of rulings of `Y` the line `[a] ∨ [b]` belongs to.
///
/// The right ruling through `[εa]` is `[ε a H]`, the set fixed by right
/// Clifford translations, and the left ruling is `[ε H a]`.
pub fn ruling_handedness(a: &ProjPoint, b: &ProjPoint) -> Handedness {
    let (Some(qa), Some(qb)) = (eps_chart(a), eps_chart(b)) else {
        return Handedness::NotARuling;
    };
    if ProjPoint::new(qa.coords().to_vec()) == ProjPoint::new(qb.coords().to_vec()) {
        return Handedness::NotARuling;
    }
    let on_y = qa.norm_sq().is_zero() && qb.norm_sq().is_zero() && qa.dot(&qb).is_zero();
    if !on_y {
        return Handedness::NotARuling;
    }
    let target = qb.coords();
    if left_mul_matrix(&qa).solve(&target).is_some() {
        Handedness::RightRuling
    } else if right_mul_matrix(&qa).solve(&target).is_some() {
        Handedness::LeftRuling
    } else {
        Handedness::NotARuling
    }
}

/// Matrix of `p + εd ↦ εp`.
pub fn fiber_matrix() -> Matrix {
    let z = Matrix::zeros(4, 4);
    Matrix::from_blocks(&z, &z, &Matrix::identity(4), &z)
}

/// The fiber projectivity `[x' + εx''] ↦ [εx']`.
pub fn fiber_projectivity(x: &ProjPoint) -> Result<ProjPoint> {
    if x.ambient() != 8 {
        return Err(Error::Dimension("fiber projectivity acts on P7".into()));
    }
    x.map(&fiber_matrix()).ok_or(Error::FiberUndefined)
}

/// Image of a subspace under the fiber projectivity.
pub fn fiber_image(u: &Subspace) -> Result<Subspace> {
    if u.ambient() != 8 {
        return Err(Error::Dimension("fiber projectivity acts on P7".into()));
    }
    let img = u.map(&fiber_matrix());
    if img.is_empty() {
        return Err(Error::FiberUndefined);
    }
    Ok(img)
}

/// The fiber line `[x] ∨ φ([x])`.
pub fn fiber_line(x: &ProjPoint) -> Result<Line> {
    let fx = fiber_projectivity(x)?;
    Subspace::line(x, &fx)
}

/// Matrix of the quaternion conjugation map `χ: [q] ↦ [q̄]`.
pub fn chi_matrix() -> Matrix {
    Matrix::diag(&[1, -1, -1, -1, 1, -1, -1, -1].map(Scalar::int))
}

pub fn chi_point(p: &ProjPoint) -> ProjPoint {
    p.map(&chi_matrix()).expect("chi is invertible")
}

pub fn chi_subspace(u: &Subspace) -> Subspace {
    u.map(&chi_matrix())
}

/// Projection of `x` from `center` onto `target`: the point `(x ∨ center) ∧ target`.
pub fn project_from_center(x: &ProjPoint, center: &Subspace, target: &Subspace) -> Result<ProjPoint> {
    if center.contains(x) {
        return Err(Error::ProjectionUndefined);
    }
    let joined = center.join_point(x);
    joined.meet(target).as_point().ok_or(Error::ProjectionUndefined)
}

/// Whether `x` lies on the quadric of `form`.
pub fn on_quadric(form: &QuadricForm, x: &ProjPoint) -> bool {
    form.eval(x.coords()).is_zero()
}

/// Whether the subspace lies on the quadric of `form`.
pub fn subspace_on_quadric(form: &QuadricForm, u: &Subspace) -> bool {
    form.restrict(u).gram().is_zero()
}

/// The point `[q]` of a dual quaternion; panics on zero.
pub fn point(q: &DualQuaternion) -> ProjPoint {
    ProjPoint::from_dq(q).expect("nonzero dual quaternion")
}

/// Polar value `xᵀ G y` written out for callers that only hold vectors.
pub fn polar_value(form: &QuadricForm, x: &[Scalar], y: &[Scalar]) -> Scalar {
    dot(x, &form.gram().mul_vec(y))
}
