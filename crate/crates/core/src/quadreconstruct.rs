//! Cycles of four central projections between the joins of a three-space
//! `E` with four points, and the unique reconstruction of a spatial
//! quadrilateral on a quadric from its projection.

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::projgeom::{project_from_center, ProjPoint, QuadricForm, Subspace};

/// Three-space `E`, four points `[u'1], [v'1], [u'2], [v'2]` spanning `F`,
/// and projection centres `[m1], [n1], [m2], [n2]` spanning the plane `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionCycle {
    pub e: Subspace,
    pub f_points: [ProjPoint; 4],
    pub centers: [ProjPoint; 4],
}

impl ProjectionCycle {
    pub fn new(e: Subspace, f_points: [ProjPoint; 4], centers: [ProjPoint; 4]) -> Result<Self> {
        let c = ProjectionCycle { e, f_points, centers };
        c.validate()?;
        Ok(c)
    }

    pub fn f(&self) -> Subspace {
        Subspace::span(&self.f_points).expect("points of equal ambient dimension")
    }

    pub fn l(&self) -> Subspace {
        Subspace::span(&self.centers).expect("points of equal ambient dimension")
    }

    /// `E ∨ [u'1]`, `E ∨ [v'1]`, `E ∨ [u'2]`, `E ∨ [v'2]`.
    pub fn joins(&self) -> [Subspace; 4] {
        std::array::from_fn(|k| self.e.join_point(&self.f_points[k]))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.e.ambient();
        if n != 8 || self.f_points.iter().chain(&self.centers).any(|p| p.ambient() != n) {
            return Err(Error::Dimension("projection cycles live in P7".into()));
        }
        if self.e.dim() != 3 || self.f().dim() != 3 {
            return Err(Error::Configuration("E and F must be three-spaces".into()));
        }
        if !self.e.meet(&self.f()).is_empty() {
            return Err(Error::Configuration("E and F intersect".into()));
        }
        for a in 0..4 {
            for b in a + 1..4 {
                if self.centers[a] == self.centers[b] {
                    return Err(Error::Configuration("projection centres must be pairwise different".into()));
                }
            }
        }
        let l = self.l();
        if l.dim() != 2 {
            return Err(Error::Configuration("projection centres must span a plane".into()));
        }
        let joins = self.joins();
        if joins.iter().any(|j| !l.meet(j).is_empty()) {
            return Err(Error::Configuration("plane of centres is not complementary to E ∨ F-point".into()));
        }
        for k in 0..4 {
            let both = joins[k].join(&joins[(k + 1) % 4]);
            if !both.contains(&self.centers[k]) {
                return Err(Error::ProjectionUndefined);
            }
        }
        Ok(())
    }
}

/// Runs `u1 → v1 → u2 → v2 → u1` through the four projections.
pub fn run_cycle(c: &ProjectionCycle, start: &ProjPoint) -> Result<[ProjPoint; 4]> {
    let joins = c.joins();
    if !joins[0].contains(start) {
        return Err(Error::Configuration("start point must lie in E ∨ [u'1]".into()));
    }
    if c.e.contains(start) {
        return Err(Error::ProjectionUndefined);
    }
    let mut out = Vec::with_capacity(4);
    let mut x = start.clone();
    for k in 0..4 {
        let center = Subspace::span(&[c.centers[k].clone()])?;
        x = project_from_center(&x, &center, &joins[(k + 1) % 4])?;
        out.push(x.clone());
    }
    Ok(out.try_into().expect("four projections"))
}

/// A regular quadric containing `E` together with a projection cycle whose
/// centres lie on the quadric.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionProblem {
    pub omega: QuadricForm,
    pub cycle: ProjectionCycle,
}

impl ReconstructionProblem {
    pub fn new(omega: QuadricForm, cycle: ProjectionCycle) -> Result<Self> {
        let p = ReconstructionProblem { omega, cycle };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega.dim() != 8 {
            return Err(Error::Dimension("quadric must live in P7".into()));
        }
        if !self.omega.gram().is_exact() || !self.cycle.e.is_exact() {
            return Err(Error::ExactRequired("reconstruction works over exact scalars".into()));
        }
        self.cycle.validate()?;
        if !self.omega.restrict(&self.cycle.e).gram().is_zero() {
            return Err(Error::NotAdmissiblePosition);
        }
        if !self.omega.is_regular() {
            return Err(Error::NotAdmissiblePosition);
        }
        if self.cycle.centers.iter().any(|m| !self.omega.eval(m.coords()).is_zero()) {
            return Err(Error::Configuration("projection centres must lie on the quadric".into()));
        }
        Ok(())
    }
}

/// Reconstructed quadrilateral with the scalars of the construction and the
/// checked postconditions.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    /// `[u1], [v1], [u2], [v2]`.
    pub vertices: [ProjPoint; 4],
    /// `ζ1, η1, ζ2`.
    pub scalars: [Scalar; 3],
    /// Coordinates of `u1` with respect to the basis of `E`.
    pub x: Vec<Scalar>,
    /// Only the four diagonal conditions `ω(w, w) = 0` were imposed.
    pub diagonal_conditions: bool,
    /// All of `ω(ui,ui) = ω(vi,vi) = ω(ui,vj) = 0`.
    pub all_conditions: bool,
    /// `[m1] ∈ [u1] ∨ [v1]`, `[n1] ∈ [v1] ∨ [u2]`, `[m2] ∈ [u2] ∨ [v2]`, `[n2] ∈ [v2] ∨ [u1]`.
    pub incidences: bool,
    /// Projection from `E` into `F` gives back `[u'1], [v'1], [u'2], [v'2]`.
    pub projection: bool,
}

impl Reconstruction {
    pub fn verified(&self) -> bool {
        self.diagonal_conditions && self.all_conditions && self.incidences && self.projection
    }
}

pub fn reconstruct_quadrilateral(p: &ReconstructionProblem) -> Result<Reconstruction> {
    reconstruct_with_basis(p, &p.cycle.e.basis_vectors())
}

/// Reconstruction using the given basis of `E` for the adapted coordinates.
pub fn reconstruct_with_basis(p: &ReconstructionProblem, e_basis: &[Vec<Scalar>]) -> Result<Reconstruction> {
    p.validate()?;
    let c = &p.cycle;
    if e_basis.len() != 4 || Subspace::from_vectors(e_basis, 8) != c.e {
        return Err(Error::Configuration("basis does not span E".into()));
    }
    let mut rows: Vec<Vec<Scalar>> = c.f_points.iter().map(|q| q.coords().to_vec()).collect();
    rows.extend(e_basis.iter().cloned());
    let basis = Matrix::from_rows(&rows, 8);
    let w = basis.matmul(p.omega.gram()).matmul(&basis.transpose());
    let a = w.block(0, 0, 4, 4);
    let b = w.block(0, 4, 4, 4);
    if !w.block(4, 4, 4, 4).is_zero() {
        return Err(Error::NotAdmissiblePosition);
    }
    if b.rank() != 4 {
        return Err(Error::NotAdmissiblePosition);
    }
    let bt = basis.transpose();
    let coords = |v: &[Scalar]| bt.solve(v).expect("adapted basis spans P7");

    // walk around the cycle in F-coordinates, collecting the E offsets
    let mut scale = vec![Scalar::one()];
    let mut offsets = vec![vec![Scalar::zero(); 4]];
    let mut scalars = Vec::new();
    for k in 0..3 {
        let z = coords(c.centers[k].coords());
        let (zf, ze) = z.split_at(4);
        let other = (0..4).filter(|&j| j != k && j != k + 1);
        if zf[k].is_zero() || other.clone().any(|j| !zf[j].is_zero()) {
            return Err(Error::ProjectionUndefined);
        }
        let coef = -(&scale[k] / &zf[k]);
        let next = &coef * &zf[k + 1];
        if next.is_zero() {
            return Err(Error::ProjectionUndefined);
        }
        let off: Vec<Scalar> = offsets[k].iter().zip(ze).map(|(t, e)| t + &(&coef * e)).collect();
        scale.push(next);
        offsets.push(off);
        scalars.push(coef);
    }
    // ω(w_k, w_k) = s² A_kk + 2 s (B (x + t_k))_k = 0
    let rhs: Vec<Scalar> = (0..4)
        .map(|k| {
            let bt_k: Scalar = (0..4).map(|j| &b[(k, j)] * &offsets[k][j]).sum();
            let half = &(&scale[k] * &a[(k, k)]) / &Scalar::int(2);
            -&(&half + &bt_k)
        })
        .collect();
    let x = b.solve(&rhs).ok_or(Error::NotAdmissiblePosition)?;
    let mut vertices = Vec::new();
    for k in 0..4 {
        let mut v = vec![Scalar::zero(); 8];
        v[k] = scale[k].clone();
        for j in 0..4 {
            v[4 + j] = &x[j] + &offsets[k][j];
        }
        vertices.push(ProjPoint::new(bt.mul_vec(&v))?);
    }
    let vertices: [ProjPoint; 4] = vertices.try_into().expect("four vertices");
    let om = |i: usize, j: usize| p.omega.polar(vertices[i].coords(), vertices[j].coords()).is_zero();
    let diagonal_conditions = (0..4).all(|k| om(k, k));
    // indices: u1 = 0, v1 = 1, u2 = 2, v2 = 3
    let all_conditions = diagonal_conditions && [(0, 1), (0, 3), (2, 1), (2, 3)].iter().all(|&(i, j)| om(i, j));
    let incidences = (0..4).all(|k| {
        Subspace::line(&vertices[k], &vertices[(k + 1) % 4])
            .map(|side| side.contains(&c.centers[k]))
            .unwrap_or(false)
    });
    let f = c.f();
    let projection = (0..4).all(|k| {
        project_from_center(&vertices[k], &c.e, &f)
            .map(|q| q == c.f_points[k])
            .unwrap_or(false)
    });
    Ok(Reconstruction {
        vertices,
        scalars: scalars.try_into().expect("three scalars"),
        x,
        diagonal_conditions,
        all_conditions,
        incidences,
        projection,
    })
}

/// Problem whose solution is a given quadrilateral `[u1], [v1], [u2], [v2]`
/// on `omega`: `F`-points are its projection from `E` onto `f`, and the
/// centres are the given points on the four sides.
pub fn problem_from_quadrilateral(
    omega: QuadricForm,
    e: Subspace,
    f: &Subspace,
    vertices: &[ProjPoint; 4],
    centers: [ProjPoint; 4],
) -> Result<ReconstructionProblem> {
    let f_points: Vec<ProjPoint> = vertices
        .iter()
        .map(|v| project_from_center(v, &e, f))
        .collect::<Result<_>>()?;
    let cycle = ProjectionCycle::new(e, f_points.try_into().expect("four points"), centers)?;
    ReconstructionProblem::new(omega, cycle)
}
