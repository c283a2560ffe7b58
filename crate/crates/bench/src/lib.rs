//! Fixed inputs for the benchmarks in `benches/`.

use dqkin::quadreconstruct::problem_from_quadrilateral;
use dqkin::{
    build_transform, darboux, null_quadrilateral, study_quadric, DualQuaternion, Line, MotionPoly, ProjPoint,
    Quaternion, ReconstructionProblem, Scalar, Subspace,
};

fn dq(c: [i64; 8]) -> DualQuaternion {
    DualQuaternion::from_ints(c)
}

/// RR constraint space with axes `𝐤` and `𝐢 + ε𝐤`.
pub fn rr_space() -> Subspace {
    let (h1, h2) = (dq([0, 0, 0, 1, 0, 0, 0, 0]), dq([0, 1, 0, 0, 0, 0, 0, 1]));
    Subspace::span_dq(&[DualQuaternion::one(), h1.clone(), h2.clone(), &h1 * &h2])
}

/// The RR space moved by a fixed admissible transformation.
pub fn moved_rr_space() -> Subspace {
    // primal and dual parts are orthogonal, so l is a displacement
    let l = DualQuaternion::new(Quaternion::from_ints(1, 2, 0, -1), Quaternion::from_ints(2, 1, 0, 4));
    let r = dq([1, 0, 1, 0, 0, 0, 0, 0]);
    build_transform(&l, &r).expect("Study factors").apply_subspace(&rr_space())
}

pub fn darboux_motion() -> MotionPoly {
    darboux(&Scalar::int(1), &Scalar::int(2), &Scalar::int(3))
}

pub fn sample_point() -> ProjPoint {
    ProjPoint::from_ints(&[1, 2, -1, 3])
}

/// Generic line through the identity.
pub fn generic_line() -> Line {
    Subspace::span_dq(&[DualQuaternion::one(), dq([0, 0, 0, 1, 0, 1, 0, 0])])
}

/// Reconstruction problem on the Study quadric whose solution is the null
/// quadrilateral of the RR space.
pub fn reconstruction_problem() -> ReconstructionProblem {
    let u = rr_space();
    let set = dqkin::common_lines(&study_quadric().restrict(&u), &dqkin::null_cone().restrict(&u))
        .expect("four lines");
    let lines: Vec<Line> = set.lines.iter().map(|l| u.lift(l)).collect();
    let quad = null_quadrilateral(&lines).expect("closed quadrilateral");
    let v = &quad.vertices;
    let side_point = |a: &ProjPoint, b: &ProjPoint, t: i64| {
        let c: Vec<Scalar> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + &(y * &Scalar::int(t))).collect();
        ProjPoint::new(c).expect("distinct vertices")
    };
    // coplanar centres: the products of the side ratios equal one
    let centers = [
        side_point(&v[0], &v[1], 1),
        side_point(&v[1], &v[2], 2),
        side_point(&v[2], &v[3], -1),
        ProjPoint::new(
            v[3].coords().iter().zip(v[0].coords()).map(|(x, y)| x + &(y * &Scalar::ratio(-1, 2))).collect(),
        )
        .expect("distinct vertices"),
    ];
    problem_from_quadrilateral(study_quadric(), Subspace::eps_h(), &Subspace::primal_h(), v, centers)
        .expect("valid problem")
}
