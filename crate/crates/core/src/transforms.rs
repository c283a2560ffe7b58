//! The group of admissible transformations of `P⁷`: coordinate changes in the
//! fixed and moving frame, acting as `[q] ↦ [l q r]`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::algebra::{
    left_mul_matrix, left_mul_matrix8, right_mul_matrix, right_mul_matrix8, DualQuaternion, Matrix, Quaternion, Scalar,
};
use crate::error::{Error, Result};
use crate::projgeom::{null_cone, pencil_member, study_quadric, ProjPoint, QuadricForm, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleTransform {
    pub matrix: Matrix,
    pub factors: Option<(DualQuaternion, DualQuaternion)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pencil_fixed: bool,
    pub shape_ok: bool,
    pub rulings_preserved: bool,
    pub overall: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pencil_fixed={}, shape_ok={}, rulings_preserved={}",
            self.pencil_fixed, self.shape_ok, self.rulings_preserved
        )
    }
}

fn check_factor(q: &DualQuaternion, side: &str) -> Result<()> {
    if q.primal.is_zero() {
        return Err(Error::NotStudy(format!("{side} factor has zero primal part")));
    }
    if !q.study_condition() {
        return Err(Error::NotStudy(format!("{side} factor violates the Study condition")));
    }
    Ok(())
}

/// The transformation `[q] ↦ [l q r]`, as the product of the two commuting
/// multiplication matrices.
pub fn build_transform(l: &DualQuaternion, r: &DualQuaternion) -> Result<AdmissibleTransform> {
    check_factor(l, "left")?;
    check_factor(r, "right")?;
    Ok(AdmissibleTransform {
        matrix: left_mul_matrix8(l).matmul(&right_mul_matrix8(r)),
        factors: Some((l.clone(), r.clone())),
    })
}

impl AdmissibleTransform {
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        p.map(&self.matrix).expect("admissible transforms are invertible")
    }

    pub fn apply_dq(&self, q: &DualQuaternion) -> DualQuaternion {
        DualQuaternion::from_slice(&self.matrix.mul_vec(&q.coords()))
    }

    pub fn apply_subspace(&self, u: &Subspace) -> Subspace {
        u.map(&self.matrix)
    }

    pub fn compose(&self, other: &AdmissibleTransform) -> AdmissibleTransform {
        let factors = match (&self.factors, &other.factors) {
            (Some((l1, r1)), Some((l2, r2))) => Some((l1 * l2, r2 * r1)),
            _ => None,
        };
        AdmissibleTransform {
            matrix: self.matrix.matmul(&other.matrix),
            factors,
        }
    }
}

fn proportional(m: &Matrix, g: &Matrix) -> bool {
    let Some(k) = g.entries().iter().position(|x| !x.is_zero()) else {
        return m.is_zero();
    };
    let c = &m.entries()[k] / &g.entries()[k];
    !c.is_zero() && *m == g.scale(&c)
}

/// Checks the invariance characterisation of admissible transformations.
pub fn verify_admissible(t: &Matrix) -> Result<VerificationReport> {
    if t.rows() != 8 || t.cols() != 8 {
        return Err(Error::Dimension("transformations are 8x8".into()));
    }
    if t.det().is_zero() {
        return Err(Error::Singular);
    }
    let forms: [QuadricForm; 3] = [
        null_cone(),
        study_quadric(),
        pencil_member(&Scalar::one(), &Scalar::one())?,
    ];
    let tt = t.transpose();
    let pencil_fixed = forms
        .iter()
        .all(|g| proportional(&tt.matmul(g.gram()).matmul(t), g.gram()));

    let a = t.block(0, 0, 4, 4);
    let b = t.block(0, 4, 4, 4);
    let c = t.block(4, 0, 4, 4);
    let d = t.block(4, 4, 4, 4);
    let ata = a.transpose().matmul(&a);
    let lambda = ata[(0, 0)].clone();
    let scaled_orthogonal =
        lambda.real_sign() == Some(Ordering::Greater) && ata == Matrix::identity(4).scale(&lambda);
    let skew = c.transpose().matmul(&a).add(&a.transpose().matmul(&c)).is_zero();
    let shape_ok = b.is_zero() && d == a && scaled_orthogonal && skew;
    let rulings_preserved = a.det().real_sign() == Some(Ordering::Greater);
    Ok(VerificationReport {
        pencil_fixed,
        shape_ok,
        rulings_preserved,
        overall: pencil_fixed && shape_ok && rulings_preserved,
    })
}

fn frobenius(x: &Matrix, y: &Matrix) -> Scalar {
    x.entries().iter().zip(y.entries()).map(|(a, b)| a * b).sum()
}

/// Writes a positive scalar multiple of a rotation of `R⁴` as `L(l)·R(r)`.
///
/// The sixteen matrices `L(e_a) R(e_b)` are pairwise orthogonal with squared
/// Frobenius norm four, so the coefficients `K_ab = ⟨A, L(e_a) R(e_b)⟩ / 4`
/// form the rank one matrix `l rᵀ`. The sign is fixed by making the first
/// nonzero coordinate of `l` positive.
pub fn factor_so4(a: &Matrix) -> Result<(Quaternion, Quaternion)> {
    if a.rows() != 4 || a.cols() != 4 {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    let ata = a.transpose().matmul(a);
    let lambda = ata[(0, 0)].clone();
    if lambda.real_sign() != Some(Ordering::Greater) || ata != Matrix::identity(4).scale(&lambda) {
        return Err(Error::NotScalarOrthogonal);
    }
    if a.det().real_sign() != Some(Ordering::Greater) {
        return Err(Error::OrientationReversing);
    }
    let quarter = Scalar::ratio(1, 4);
    let mut k = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let basis = left_mul_matrix(&Quaternion::basis(i)).matmul(&right_mul_matrix(&Quaternion::basis(j)));
            k[(i, j)] = &frobenius(a, &basis) * &quarter;
        }
    }
    let (pa, pb) = (0..16)
        .map(|n| (n / 4, n % 4))
        .max_by(|&(i, j), &(p, q)| k[(i, j)].abs_f64().total_cmp(&k[(p, q)].abs_f64()))
        .unwrap();
    let pivot = k[(pa, pb)].clone();
    let mut l = Quaternion::from_slice(&k.col(pb));
    let mut r = Quaternion::from_slice(&k.row(pa)).scale(&pivot.inv());
    let negative = l.coords().into_iter().find(|c| !c.is_zero()).is_some_and(|first| match first.real_sign() {
        Some(o) => o == Ordering::Less,
        None => first.to_c64().re < 0.0,
    });
    if negative {
        l = -l;
        r = -r;
    }
    if left_mul_matrix(&l).matmul(&right_mul_matrix(&r)) != *a {
        return Err(Error::NotScalarOrthogonal);
    }
    Ok((l, r))
}

/// Recovers Study factors `(l, r)` with `t = L(l)·R(r)`.
///
/// The primal parts come from [`factor_so4`] on the diagonal block; the dual
/// parts solve `C = L(l₂)R(r₁) + L(l₁)R(r₂)` together with the Study
/// conditions `l₁·l₂ = r₁·r₂ = 0`, which remove the one-dimensional kernel
/// `(l₂, r₂) = (l₁, −r₁)`.
pub fn factor_transform(t: &Matrix) -> Result<(DualQuaternion, DualQuaternion)> {
    let report = verify_admissible(t)?;
    if !report.overall {
        return Err(Error::NotAdmissible(report.to_string()));
    }
    let a = t.block(0, 0, 4, 4);
    let c = t.block(4, 0, 4, 4);
    let (l1, r1) = factor_so4(&a)?;
    let rr1 = right_mul_matrix(&r1);
    let ll1 = left_mul_matrix(&l1);
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(8);
    for k in 0..4 {
        let mut col = left_mul_matrix(&Quaternion::basis(k)).matmul(&rr1).entries().to_vec();
        col.push(l1.coords()[k].clone());
        col.push(Scalar::zero());
        columns.push(col);
    }
    for k in 0..4 {
        let mut col = ll1.matmul(&right_mul_matrix(&Quaternion::basis(k))).entries().to_vec();
        col.push(Scalar::zero());
        col.push(r1.coords()[k].clone());
        columns.push(col);
    }
    let system = Matrix::from_cols(&columns, 18);
    let mut rhs = c.entries().to_vec();
    rhs.push(Scalar::zero());
    rhs.push(Scalar::zero());
    let x = system
        .solve(&rhs)
        .ok_or_else(|| Error::NotAdmissible("dual block has no factorisation".into()))?;
    let l = DualQuaternion::new(l1, Quaternion::from_slice(&x[0..4]));
    let r = DualQuaternion::new(r1, Quaternion::from_slice(&x[4..8]));
    Ok((l, r))
}
