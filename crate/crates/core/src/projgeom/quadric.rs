//! Quadratic forms: the pencil spanned by the Study quadric and the null cone,
//! the quadrics `E` and `Y`, restriction to subspaces and Sylvester signature.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{dot, Matrix, Scalar};
use crate::error::{Error, Result};

use super::subspace::Subspace;

#[derive(Clone, Debug, PartialEq)]
pub enum QuadricLabel {
    S,
    N,
    E,
    Y,
    Pencil(Scalar, Scalar),
    Restricted,
}

impl fmt::Display for QuadricLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadricLabel::S => f.write_str("S"),
            QuadricLabel::N => f.write_str("N"),
            QuadricLabel::E => f.write_str("E"),
            QuadricLabel::Y => f.write_str("Y"),
            QuadricLabel::Pencil(nu, sigma) => write!(f, "pencil({nu},{sigma})"),
            QuadricLabel::Restricted => f.write_str("restricted"),
        }
    }
}

/// Symmetric bilinear form with its quadric label.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricForm {
    gram: Matrix,
    label: QuadricLabel,
}

/// Sylvester inertia `(positive, negative, zero)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl QuadricForm {
    pub fn new(gram: Matrix, label: QuadricLabel) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Dimension("Gram matrix must be square and symmetric".into()));
        }
        Ok(QuadricForm { gram, label })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn label(&self) -> &QuadricLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.polar(x, x)
    }

    pub fn polar(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y))
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_regular(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Restriction `B G Bᵀ` to a subspace with basis rows `B`.
    pub fn restrict(&self, u: &Subspace) -> QuadricForm {
        let b = u.basis();
        QuadricForm {
            gram: b.matmul(&self.gram).matmul(&b.transpose()),
            label: QuadricLabel::Restricted,
        }
    }

    /// Sylvester signature by exact symmetric congruence diagonalisation.
    pub fn signature(&self) -> Result<Signature> {
        if self.gram.entries().iter().any(|s| !s.is_real()) {
            return Err(Error::NonRealForm);
        }
        if !self.gram.is_exact() {
            return Err(Error::InexactForm);
        }
        let mut a = self.gram.clone();
        let n = a.rows();
        let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(p) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                    swap_sym(&mut a, k, p);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero())
                {
                    // x_i += x_j makes the diagonal entry 2 a_ij
                    add_sym(&mut a, i, j);
                    swap_sym(&mut a, k, i);
                } else {
                    sig.zero += n - k;
                    break;
                }
            }
            let d = a[(k, k)].clone();
            match d.real_sign() {
                Some(Ordering::Greater) => sig.pos += 1,
                Some(Ordering::Less) => sig.neg += 1,
                _ => unreachable!("pivot is a nonzero rational"),
            }
            let inv = d.inv();
            for i in k + 1..n {
                let f = &a[(i, k)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
                for j in k..n {
                    let t = &f * &a[(j, k)];
                    a[(j, i)] = &a[(j, i)] - &t;
                }
            }
        }
        Ok(sig)
    }
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let p = permutation(a.rows(), i, j);
    *a = p.matmul(a).matmul(&p);
}

fn add_sym(a: &mut Matrix, i: usize, j: usize) {
    let mut e = Matrix::identity(a.rows());
    e[(i, j)] = Scalar::one();
    *a = e.matmul(a).matmul(&e.transpose());
}

fn permutation(n: usize, i: usize, j: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    p[(i, i)] = Scalar::zero();
    p[(j, j)] = Scalar::zero();
    p[(i, j)] = Scalar::one();
    p[(j, i)] = Scalar::one();
    p
}

/// Member `[[νI, σI], [σI, 0]]` of the pencil spanned by the null cone and the
/// Study quadric.
pub fn pencil_member(nu: &Scalar, sigma: &Scalar) -> Result<QuadricForm> {
    if nu.is_zero() && sigma.is_zero() {
        return Err(Error::DegeneratePencil);
    }
    let i4 = Matrix::identity(4);
    let gram = Matrix::from_blocks(&i4.scale(nu), &i4.scale(sigma), &i4.scale(sigma), &Matrix::zeros(4, 4));
    let label = if sigma.is_zero() {
        QuadricLabel::N
    } else if nu.is_zero() {
        QuadricLabel::S
    } else {
        QuadricLabel::Pencil(nu.clone(), sigma.clone())
    };
    Ok(QuadricForm { gram, label })
}

/// The Study quadric; its form is `2 p·d` on `p + εd`.
pub fn study_quadric() -> QuadricForm {
    pencil_member(&Scalar::zero(), &Scalar::one()).unwrap()
}

/// The null cone `p + εd ↦ p p̄`.
pub fn null_cone() -> QuadricForm {
    pencil_member(&Scalar::one(), &Scalar::zero()).unwrap()
}

/// The quadric `E ⊂ [H]` in its own four coordinates.
pub fn quadric_e() -> QuadricForm {
    QuadricForm {
        gram: Matrix::identity(4),
        label: QuadricLabel::E,
    }
}

/// The quadric `Y ⊂ [εH]` in the chart `εd ↦ d`.
pub fn quadric_y4() -> QuadricForm {
    QuadricForm {
        gram: Matrix::identity(4),
        label: QuadricLabel::Y,
    }
}

/// Rank four extension of `Y` to the whole space.
pub fn quadric_y8() -> QuadricForm {
    let z = Matrix::zeros(4, 4);
    QuadricForm {
        gram: Matrix::from_blocks(&z, &z, &z, &Matrix::identity(4)),
        label: QuadricLabel::Y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DualQuaternion, Quaternion};

    #[test]
    fn pencil_ranks() {
        assert_eq!(null_cone().rank(), 4);
        assert_eq!(study_quadric().rank(), 8);
        let third = pencil_member(&Scalar::one(), &Scalar::one()).unwrap();
        assert_eq!(third.rank(), 8);
        assert_eq!(third.label().to_string(), "pencil(1,1)");
        assert_eq!(
            pencil_member(&Scalar::zero(), &Scalar::zero()).unwrap_err(),
            Error::DegeneratePencil
        );
    }

    #[test]
    fn study_form_matches_norm() {
        let q = DualQuaternion::from_ints([1, 2, 0, -1, 3, 0, 1, 1]);
        let s = study_quadric().eval(&q.coords());
        assert_eq!(s, &Scalar::int(2) * &q.primal.dot(&q.dual));
        assert_eq!(null_cone().eval(&q.coords()), q.primal.norm_sq());
    }

    #[test]
    fn signatures() {
        let id = Matrix::identity(4);
        assert_eq!(
            QuadricForm::new(id, QuadricLabel::Restricted).unwrap().signature().unwrap(),
            Signature { pos: 4, neg: 0, zero: 0 }
        );
        let d = Matrix::diag(&[1, 1, -1, -1].map(Scalar::int));
        assert_eq!(
            QuadricForm::new(d, QuadricLabel::Restricted).unwrap().signature().unwrap(),
            Signature { pos: 2, neg: 2, zero: 0 }
        );
        // 2R space of the half-turns k and i + εk
        let h1 = DualQuaternion::real(Quaternion::unit_k());
        let h2 = DualQuaternion::new(Quaternion::unit_i(), Quaternion::unit_k());
        let u = Subspace::span_dq(&[DualQuaternion::one(), h1.clone(), h2.clone(), &h1 * &h2]);
        let r = study_quadric().restrict(&u);
        assert_eq!(r.signature().unwrap(), Signature { pos: 2, neg: 2, zero: 0 });
        let gauss = Matrix::diag(&[Scalar::i(), Scalar::one()]);
        assert_eq!(
            QuadricForm::new(gauss, QuadricLabel::Restricted).unwrap().signature().unwrap_err(),
            Error::NonRealForm
        );
    }

    #[test]
    fn restrictions_to_eps_h() {
        assert!(null_cone().restrict(&Subspace::eps_h()).gram().is_zero());
        assert_eq!(*quadric_y8().restrict(&Subspace::eps_h()).gram(), Matrix::identity(4));
    }

    #[test]
    fn zero_diagonal_signature() {
        let m = Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let f = QuadricForm::new(m, QuadricLabel::Restricted).unwrap();
        assert_eq!(f.signature().unwrap(), Signature { pos: 1, neg: 1, zero: 1 });
    }
}
