//! Scalars, quaternions, dual quaternions and their multiplication matrices.

pub mod matrix;
pub mod quaternion;
pub mod scalar;

pub use matrix::{dot, Matrix, Rref};
pub use quaternion::{dq_mul, dq_norm, study_condition, DualNumber, DualQuaternion, Quaternion};
pub use scalar::{rational_sqrt, ComplexFloat, GaussianRational, Scalar, DEFAULT_TOLERANCE};

/// Matrix of `x ↦ p·x` in the basis `1, 𝐢, 𝐣, 𝐤`.
///
/// Columns are the coordinates of `p·e_k`, so the entries come from the
/// product itself rather than a transcribed table.
pub fn left_mul_matrix(p: &Quaternion) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..4)
        .map(|k| (p * &Quaternion::basis(k)).coords().to_vec())
        .collect();
    Matrix::from_cols(&cols, 4)
}

/// Matrix of `x ↦ x·p`.
pub fn right_mul_matrix(p: &Quaternion) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..4)
        .map(|k| (&Quaternion::basis(k) * p).coords().to_vec())
        .collect();
    Matrix::from_cols(&cols, 4)
}

/// Matrix of `q ↦ h·q` on the eight dual quaternion coordinates.
pub fn left_mul_matrix8(h: &DualQuaternion) -> Matrix {
    let a = left_mul_matrix(&h.primal);
    let c = left_mul_matrix(&h.dual);
    Matrix::from_blocks(&a, &Matrix::zeros(4, 4), &c, &a)
}

/// Matrix of `q ↦ q·h`.
pub fn right_mul_matrix8(h: &DualQuaternion) -> Matrix {
    let a = right_mul_matrix(&h.primal);
    let c = right_mul_matrix(&h.dual);
    Matrix::from_blocks(&a, &Matrix::zeros(4, 4), &c, &a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords8(q: &DualQuaternion) -> Vec<Scalar> {
        q.coords()
    }

    #[test]
    fn left_and_right_examples() {
        assert_eq!(left_mul_matrix(&Quaternion::one()), Matrix::identity(4));
        assert_eq!(right_mul_matrix(&Quaternion::one()), Matrix::identity(4));
        let i = Quaternion::unit_i();
        let j = Quaternion::unit_j();
        let l = left_mul_matrix(&i).mul_vec(&j.coords());
        assert_eq!(Quaternion::from_slice(&l), Quaternion::unit_k());
        let r = right_mul_matrix(&i).mul_vec(&j.coords());
        assert_eq!(Quaternion::from_slice(&r), -Quaternion::unit_k());
    }

    #[test]
    fn eight_by_eight_examples() {
        assert_eq!(left_mul_matrix8(&DualQuaternion::one()), Matrix::identity(8));
        let eps = DualQuaternion::eps(Quaternion::one());
        let m = left_mul_matrix8(&eps);
        assert!(m.block(0, 0, 4, 4).is_zero());
        assert!(m.block(4, 4, 4, 4).is_zero());
        assert_eq!(m.block(4, 0, 4, 4), Matrix::identity(4));

        let h = DualQuaternion::from_ints([1, -2, 0, 3, 0, 1, 1, -1]);
        let q = DualQuaternion::from_ints([2, 1, -1, 0, 5, 0, 2, 1]);
        assert_eq!(left_mul_matrix8(&h).mul_vec(&coords8(&q)), coords8(&(&h * &q)));
        assert_eq!(right_mul_matrix8(&h).mul_vec(&coords8(&q)), coords8(&(&q * &h)));
    }

    #[test]
    fn scaled_orthogonal() {
        let p = Quaternion::from_ints(1, 2, -3, 4);
        let n = p.norm_sq();
        for m in [left_mul_matrix(&p), right_mul_matrix(&p)] {
            assert_eq!(&m.transpose() * &m, Matrix::identity(4).scale(&n));
        }
    }
}
