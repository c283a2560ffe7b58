//! Seeded generators of random exact fixtures shared by the integration tests.
#![allow(dead_code)]

use dqkin::algebra::Matrix;
use dqkin::dyads::{build_variety, DyadKind, DyadSpec};
use dqkin::projgeom::{project_from_center, QuadricLabel};
use dqkin::quadreconstruct::{problem_from_quadrilateral, ProjectionCycle, ReconstructionProblem};
use dqkin::{build_transform, AdmissibleTransform, DualQuaternion, ProjPoint, QuadricForm, Quaternion, Scalar, Subspace};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(rng: &mut impl Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn nonzero_rat(rng: &mut impl Rng) -> Scalar {
    loop {
        let s = rat(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn int(rng: &mut impl Rng, r: i64) -> Scalar {
    Scalar::int(rng.gen_range(-r..=r))
}

pub fn vec_rat(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| rat(rng)).collect()
}

pub fn quat(rng: &mut impl Rng) -> Quaternion {
    Quaternion::from_slice(&vec_rat(rng, 4))
}

pub fn nonzero_quat(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = quat(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn pure(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(Scalar::zero(), rat(rng), rat(rng), rat(rng))
}

/// Rational point of the unit sphere by inverse stereographic projection.
pub fn unit_pure(rng: &mut impl Rng) -> Quaternion {
    let (s, t) = (rat(rng), rat(rng));
    let n = &(&(&s * &s) + &(&t * &t)) + &Scalar::one();
    let two = Scalar::int(2);
    Quaternion::new(
        Scalar::zero(),
        &(&two * &s) / &n,
        &(&two * &t) / &n,
        &(&(&(&s * &s) + &(&t * &t)) - &Scalar::one()) / &n,
    )
}

/// Unit half-turn `u + ε(d)` about a random line with unit direction `u`.
pub fn half_turn(rng: &mut impl Rng) -> DualQuaternion {
    let u = unit_pure(rng);
    let v = pure(rng);
    let d = &v - &u.scale(&v.dot(&u));
    DualQuaternion::new(u, d)
}

/// Random displacement `p + ε t p / 2`.
pub fn displacement(rng: &mut impl Rng) -> DualQuaternion {
    let p = nonzero_quat(rng);
    let t = pure(rng);
    let d = (&t * &p).scale(&Scalar::ratio(1, 2));
    DualQuaternion::new(p, d)
}

pub fn transform(rng: &mut impl Rng) -> AdmissibleTransform {
    build_transform(&displacement(rng), &displacement(rng)).expect("Study factors")
}

/// Random dyad whose constraint space is a regular quadric: translations
/// perpendicular to a revolute axis (the planar group, which lies inside
/// the Study quadric) are redrawn.
pub fn dyad_spec(rng: &mut impl Rng, kind: DyadKind) -> DyadSpec {
    loop {
        let spec = match kind {
            DyadKind::RR => DyadSpec::new(kind, half_turn(rng), half_turn(rng)),
            DyadKind::RP | DyadKind::PR => DyadSpec::with_translation(kind, half_turn(rng), nonzero_pure(rng)),
            DyadKind::C => {
                let h = half_turn(rng);
                let p = h.primal.scale(&nonzero_rat(rng));
                DyadSpec::with_translation(kind, h, p)
            }
        };
        let planar = matches!(kind, DyadKind::RP | DyadKind::PR) && spec.h1.primal.dot(&spec.h2.dual).is_zero();
        if !planar && build_variety(&spec).is_ok() {
            return spec;
        }
    }
}

pub fn nonzero_pure(rng: &mut impl Rng) -> Quaternion {
    loop {
        let p = pure(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn point8(rng: &mut impl Rng) -> ProjPoint {
    loop {
        if let Ok(p) = ProjPoint::new(vec_rat(rng, 8)) {
            return p;
        }
    }
}

pub fn point4(rng: &mut impl Rng) -> ProjPoint {
    loop {
        let mut c = vec_rat(rng, 4);
        if c[0].is_zero() {
            c[0] = Scalar::one();
        }
        if let Ok(p) = ProjPoint::new(c) {
            return p;
        }
    }
}

/// Generic real line through a random displacement.
pub fn generic_line(rng: &mut impl Rng) -> Subspace {
    loop {
        let base = displacement(rng);
        let l = Subspace::from_vectors(&[base.coords(), vec_rat(rng, 8)], 8);
        if l.dim() == 1 && dqkin::c_space_from_line(&l).is_ok() {
            return l;
        }
    }
}

/// Real line whose null cone intersections are Gaussian rational: the line
/// `[1] ∨ [y]` with `|vec y'|` rational, moved by a random admissible
/// transformation.
pub fn exact_line(rng: &mut impl Rng) -> Subspace {
    loop {
        let r = nonzero_rat(rng);
        let primal = &Quaternion::scalar(rat(rng)) + &unit_pure(rng).scale(&r);
        let y = DualQuaternion::new(primal, quat(rng));
        let l = Subspace::span_dq(&[DualQuaternion::one(), y]);
        let l = transform(rng).apply_subspace(&l);
        if l.dim() == 1 && dqkin::c_space_from_line(&l).is_ok() {
            return l;
        }
    }
}

fn unit_vec(k: usize) -> Vec<Scalar> {
    (0..8).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect()
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| int(rng, 3)).collect()).collect();
        let m = Matrix::from_rows(&rows, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

/// Points `g_k = e_k + (E-part)` in adapted coordinates, with `E` spanned by
/// the last four unit vectors.
fn lifted_frame(rng: &mut impl Rng) -> Vec<Vec<Scalar>> {
    (0..4)
        .map(|k| {
            let mut v = unit_vec(k);
            for j in 4..8 {
                v[j] = int(rng, 4);
            }
            v
        })
        .collect()
}

/// Centres `g0 + a g1, g1 + b g2, g2 + c g3, g3 + d g0` with `abcd = 1`,
/// which makes them coplanar.
fn cycle_centres(rng: &mut impl Rng, g: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let a = nonzero_rat(rng);
    let b = nonzero_rat(rng);
    let c = nonzero_rat(rng);
    let d = (&(&a * &b) * &c).inv();
    vec![
        add(&g[0], &scale(&g[1], &a)),
        add(&g[1], &scale(&g[2], &b)),
        add(&g[2], &scale(&g[3], &c)),
        add(&g[3], &scale(&g[0], &d)),
    ]
}

fn to_points(m: &Matrix, vs: &[Vec<Scalar>]) -> Vec<ProjPoint> {
    vs.iter().map(|v| ProjPoint::new(m.mul_vec(v)).expect("invertible map")).collect()
}

/// Random valid projection cycle: an adapted-coordinate configuration moved
/// by a random projectivity.
pub fn projection_cycle(rng: &mut impl Rng) -> ProjectionCycle {
    loop {
        let g = lifted_frame(rng);
        let centres = cycle_centres(rng, &g);
        let m = random_invertible(rng, 8);
        let e = Subspace::from_vectors(&(4..8).map(|k| m.mul_vec(&unit_vec(k))).collect::<Vec<_>>(), 8);
        let f: Vec<Vec<Scalar>> = (0..4).map(|k| scale(&unit_vec(k), &nonzero_rat(rng))).collect();
        let fp = to_points(&m, &f);
        let cp = to_points(&m, &centres);
        if let Ok(c) = ProjectionCycle::new(e, fp.try_into().unwrap(), cp.try_into().unwrap()) {
            return c;
        }
    }
}

/// Random start point in `E ∨ [u'1]` outside `E`.
pub fn cycle_start(rng: &mut impl Rng, c: &ProjectionCycle) -> ProjPoint {
    let mut v = c.f_points[0].coords().to_vec();
    for b in c.e.basis_vectors() {
        v = add(&v, &scale(&b, &rat(rng)));
    }
    ProjPoint::new(v).unwrap()
}

/// Forward-generated reconstruction problem with its generating
/// quadrilateral `[u1], [v1], [u2], [v2]`.
pub struct ForwardProblem {
    pub problem: ReconstructionProblem,
    pub quadrilateral: [ProjPoint; 4],
}

/// Quadric `[[A, B], [Bᵀ, 0]]` built around a random spatial quadrilateral,
/// then moved by a random projectivity; `F` is a random three-space.
pub fn forward_problem(rng: &mut impl Rng) -> ForwardProblem {
    loop {
        let g = lifted_frame(rng);
        let b = random_invertible(rng, 4);
        let bx: Vec<Vec<Scalar>> = g.iter().map(|v| b.mul_vec(&v[4..])).collect();
        let mut a = Matrix::zeros(4, 4);
        for k in 0..4 {
            a[(k, k)] = -&(&Scalar::int(2) * &bx[k][k]);
            let n = (k + 1) % 4;
            let v = -&(&bx[n][k] + &bx[k][n]);
            a[(k, n)] = v.clone();
            a[(n, k)] = v;
        }
        for (i, j) in [(0, 2), (1, 3)] {
            let v = int(rng, 3);
            a[(i, j)] = v.clone();
            a[(j, i)] = v;
        }
        let gram = Matrix::from_blocks(&a, &b, &b.transpose(), &Matrix::zeros(4, 4));
        let centres = cycle_centres(rng, &g);
        let m = random_invertible(rng, 8);
        let minv = m.inverse().unwrap();
        let omega = QuadricForm::new(minv.transpose().matmul(&gram).matmul(&minv), QuadricLabel::Restricted).unwrap();
        let e = Subspace::from_vectors(&(4..8).map(|k| m.mul_vec(&unit_vec(k))).collect::<Vec<_>>(), 8);
        let f = Subspace::from_vectors(&(0..4).map(|_| vec_rat(rng, 8)).collect::<Vec<_>>(), 8);
        let quad: [ProjPoint; 4] = to_points(&m, &g).try_into().unwrap();
        let cp: [ProjPoint; 4] = to_points(&m, &centres).try_into().unwrap();
        if f.dim() != 3 || !f.meet(&e).is_empty() {
            continue;
        }
        if let Ok(problem) = problem_from_quadrilateral(omega, e, &f, &quad, cp) {
            return ForwardProblem {
                problem,
                quadrilateral: quad,
            };
        }
    }
}

/// Problem on the Study quadric with `E = [εH]`, `F = [H]` and the null
/// quadrilateral of the RR dyad with axes `h1`, `h2` as solution.
pub fn two_r_problem(rng: &mut impl Rng, h1: &DualQuaternion, h2: &DualQuaternion) -> Option<ForwardProblem> {
    let i = DualQuaternion::scalar(Scalar::i());
    let mi = DualQuaternion::scalar(-Scalar::i());
    let vertex = |t1: &DualQuaternion, t2: &DualQuaternion| {
        ProjPoint::from_dq(&(&(t1 - h1) * &(t2 - h2))).expect("nonzero product")
    };
    // consecutive vertices share one parameter, so each side is a null line
    let quad = [vertex(&i, &i), vertex(&i, &mi), vertex(&mi, &mi), vertex(&mi, &i)];
    let g: Vec<Vec<Scalar>> = quad.iter().map(|p| p.coords().to_vec()).collect();
    let centres = cycle_centres(rng, &g);
    let cp: Vec<ProjPoint> = centres.into_iter().map(|c| ProjPoint::new(c).unwrap()).collect();
    let e = Subspace::eps_h();
    let f = Subspace::primal_h();
    problem_from_quadrilateral(dqkin::study_quadric(), e, &f, &quad, cp.try_into().ok()?)
        .ok()
        .map(|problem| ForwardProblem {
            problem,
            quadrilateral: quad,
        })
}

/// Projection of a point from `E` onto `F`, for cross-checks.
pub fn project(x: &ProjPoint, e: &Subspace, f: &Subspace) -> ProjPoint {
    project_from_center(x, e, f).unwrap()
}
