//! Projective points and subspaces stored as reduced row echelon spans.

use std::fmt;

use crate::algebra::{DualQuaternion, Matrix, Scalar};
use crate::error::{Error, Result};

/// A point of projective space, normalised so its first nonzero coordinate is one.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let Some(k) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::Dimension("projective point with all coordinates zero".into()));
        };
        let inv = coords[k].inv();
        let mut coords: Vec<Scalar> = coords.iter().map(|c| c * &inv).collect();
        coords[k] = Scalar::one();
        for c in coords[..k].iter_mut() {
            *c = Scalar::zero();
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_dq(q: &DualQuaternion) -> Result<Self> {
        ProjPoint::new(q.coords())
    }

    /// Integer coordinates; panics when all vanish.
    pub fn from_ints(c: &[i64]) -> Self {
        ProjPoint::new(c.iter().map(|&v| Scalar::int(v)).collect()).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// Representative dual quaternion of a point of `P⁷`.
    pub fn to_dq(&self) -> DualQuaternion {
        DualQuaternion::from_slice(&self.coords)
    }

    pub fn conj(&self) -> ProjPoint {
        ProjPoint::new(self.coords.iter().map(Scalar::conj).collect()).unwrap()
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(Scalar::is_exact)
    }

    /// Image under a linear map; `None` when the image vector vanishes.
    pub fn map(&self, m: &Matrix) -> Option<ProjPoint> {
        ProjPoint::new(m.mul_vec(&self.coords)).ok()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(Scalar::to_text).collect();
        write!(f, "[{}]", c.join(", "))
    }
}

/// Projective subspace of `P(K^n)` given by the nonzero rows of a reduced
/// row echelon spanning matrix, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: Matrix,
}

/// A projective line.
pub type Line = Subspace;

impl Subspace {
    /// Span of the given vectors in `K^ambient`.
    pub fn from_vectors(vectors: &[Vec<Scalar>], ambient: usize) -> Self {
        Subspace {
            basis: Matrix::from_rows(vectors, ambient).row_space_basis(),
        }
    }

    pub fn span(points: &[ProjPoint]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Dimension("span of an empty point list needs an ambient dimension".into()));
        };
        let n = first.ambient();
        if points.iter().any(|p| p.ambient() != n) {
            return Err(Error::Dimension("points of different ambient dimension".into()));
        }
        let v: Vec<Vec<Scalar>> = points.iter().map(|p| p.coords.clone()).collect();
        Ok(Subspace::from_vectors(&v, n))
    }

    pub fn span_dq(qs: &[DualQuaternion]) -> Self {
        let v: Vec<Vec<Scalar>> = qs.iter().map(DualQuaternion::coords).collect();
        Subspace::from_vectors(&v, 8)
    }

    /// Line through two distinct points.
    pub fn line(a: &ProjPoint, b: &ProjPoint) -> Result<Line> {
        let l = Subspace::span(&[a.clone(), b.clone()])?;
        if l.dim() != 1 {
            return Err(Error::Coincident("a line needs two distinct points".into()));
        }
        Ok(l)
    }

    pub fn empty(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
        }
    }

    /// The exceptional generator `[εH]`.
    pub fn eps_h() -> Self {
        let v: Vec<Vec<Scalar>> = (4..8).map(|k| DualQuaternion::basis(k).coords()).collect();
        Subspace::from_vectors(&v, 8)
    }

    /// The primal three-space `[H]`.
    pub fn primal_h() -> Self {
        let v: Vec<Vec<Scalar>> = (0..4).map(|k| DualQuaternion::basis(k).coords()).collect();
        Subspace::from_vectors(&v, 8)
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Projective dimension (`-1` for the empty subspace).
    pub fn dim(&self) -> isize {
        self.basis.rows() as isize - 1
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.basis_vectors()
            .into_iter()
            .map(|v| ProjPoint::new(v).expect("basis rows are nonzero"))
            .collect()
    }

    /// The single point of a zero-dimensional subspace.
    pub fn as_point(&self) -> Option<ProjPoint> {
        (self.dim() == 0).then(|| self.points().remove(0))
    }

    pub fn is_exact(&self) -> bool {
        self.basis.is_exact()
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient(), "ambient dimensions differ");
        Subspace {
            basis: self.basis.vstack(&other.basis).row_space_basis(),
        }
    }

    pub fn join_point(&self, p: &ProjPoint) -> Subspace {
        self.join(&Subspace::from_vectors(&[p.coords.clone()], p.ambient()))
    }

    /// Linear equations cutting out the subspace, one per row.
    pub fn equations(&self) -> Matrix {
        let n = self.ambient();
        if self.is_empty() {
            return Matrix::identity(n);
        }
        Matrix::from_rows(&self.basis.nullspace(), n)
    }

    pub fn meet(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient(), "ambient dimensions differ");
        let n = self.ambient();
        let eqs = self.equations().vstack(&other.equations());
        Subspace::from_vectors(&eqs.nullspace(), n)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.contains_vector(p.coords())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.equations().mul_vec(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains_vector(v))
    }

    /// Entrywise complex conjugate subspace.
    pub fn conj(&self) -> Subspace {
        Subspace {
            basis: self.basis.conj().row_space_basis(),
        }
    }

    pub fn conjugation_closed(&self) -> bool {
        self.conj() == *self
    }

    /// Image of the subspace under a linear map of the ambient space.
    pub fn map(&self, m: &Matrix) -> Subspace {
        let v: Vec<Vec<Scalar>> = self.basis_vectors().iter().map(|r| m.mul_vec(r)).collect();
        Subspace::from_vectors(&v, m.rows())
    }

    /// Embeds a subspace given in coordinates relative to this one's basis.
    pub fn lift(&self, local: &Subspace) -> Subspace {
        assert_eq!(local.ambient(), self.rank(), "local subspace has the wrong ambient dimension");
        let v = local.basis.matmul(&self.basis);
        Subspace::from_vectors(&v.row_vectors(), self.ambient())
    }

    /// Expresses a vector of this subspace in its basis.
    pub fn local_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.transpose().solve(v)
    }

    pub fn to_complex(&self, tol: f64) -> Subspace {
        Subspace {
            basis: self.basis.to_complex(tol).row_space_basis(),
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.points().iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", p.join(" v "))
    }
}
