//! Null lines and the lines common to two quadrics of a three-space.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{dot, Matrix, Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::poly::{exact_roots, float_roots, Poly};

use super::quadric::QuadricForm;
use super::subspace::{Line, ProjPoint, Subspace};

/// Lines of a three-space together with whether all of them are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSet {
    pub lines: Vec<Line>,
    pub exact: bool,
}

/// Whether the line `[x] ∨ [y]` lies on both the Study quadric and the null cone.
///
/// This holds iff `x x̄`, `y ȳ` and `x ȳ + y x̄` all vanish.
pub fn is_null_line(x: &ProjPoint, y: &ProjPoint) -> Result<bool> {
    if x.ambient() != 8 || y.ambient() != 8 {
        return Err(Error::Dimension("null lines live in P7".into()));
    }
    if x == y {
        return Err(Error::Coincident("a null line test needs two distinct points".into()));
    }
    let (a, b) = (x.to_dq(), y.to_dq());
    let mixed = &(&a * &b.conj()) + &(&b * &a.conj());
    Ok(a.norm().is_zero() && b.norm().is_zero() && mixed.is_zero())
}

/// Null line test for a line given as a subspace.
pub fn line_is_null(l: &Line) -> Result<bool> {
    if l.dim() != 1 {
        return Err(Error::Dimension("expected a line".into()));
    }
    let p = l.points();
    is_null_line(&p[0], &p[1])
}

/// All lines on both quadric surfaces of a three-space, `q1` regular.
///
/// Every common line lies on each singular member `λ q1 + q2` of the pencil,
/// so the lines are read off the components of singular members: plane pairs
/// and double planes are cut with `q1`, cones contribute the lines of `q1`
/// through their vertex. Roots of `det(λ q1 + q2)` and the square roots
/// needed to split conics are taken exactly in `Q(i)` when possible; otherwise
/// the computation is repeated in complex floating point with `tol` and the
/// lines are rationalised where an exact check confirms them.
pub fn common_lines_with_tolerance(q1: &QuadricForm, q2: &QuadricForm, tol: f64) -> Result<LineSet> {
    if q1.dim() != 4 || q2.dim() != 4 {
        return Err(Error::Dimension("common lines expects forms on a three-space".into()));
    }
    if !q1.is_regular() {
        return Err(Error::SingularAnchor);
    }
    let g1 = q1.gram();
    let g2 = q2.gram();
    let stacked = Matrix::from_rows(&[g1.entries().to_vec(), g2.entries().to_vec()], 16);
    if stacked.rank() < 2 {
        return Err(Error::IdenticalQuadrics);
    }
    let det = det_polynomial(g1, g2);

    if g1.is_exact() && g2.is_exact() {
        let found = exact_roots(&det);
        let mut lines = Vec::new();
        let mut any = false;
        for r in &found.roots {
            if let Some(ls) = lines_on_member(&member(g1, g2, r), g1) {
                any = true;
                for l in ls {
                    push_unique(&mut lines, l);
                }
            }
        }
        if any {
            lines.retain(|l| on_both(l, g1, g2, tol));
            return Ok(LineSet { lines, exact: true });
        }
    }

    let (c1, c2) = (g1.to_complex(tol), g2.to_complex(tol));
    let roots = if det.is_exact() {
        float_roots(&det.square_free().to_complex(tol), tol)
    } else {
        merge_clusters(float_roots(&det, tol), tol)
    };
    let mut lines = Vec::new();
    for r in &roots {
        let Some(ls) = lines_on_member(&member(&c1, &c2, r), &c1) else {
            continue;
        };
        for l in ls {
            push_unique(&mut lines, l);
        }
    }
    lines.retain(|l| on_both(l, &c1, &c2, tol));
    if lines.is_empty() && roots.is_empty() {
        return Err(Error::RootIsolation("no singular pencil member found".into()));
    }
    let mut exact = true;
    let lines = lines
        .into_iter()
        .map(|l| match rationalize_line(&l, g1, g2) {
            Some(e) => e,
            None => {
                exact = false;
                l
            }
        })
        .collect();
    Ok(LineSet { lines, exact })
}

pub fn common_lines(q1: &QuadricForm, q2: &QuadricForm) -> Result<LineSet> {
    common_lines_with_tolerance(q1, q2, DEFAULT_TOLERANCE)
}

fn member(g1: &Matrix, g2: &Matrix, lambda: &Scalar) -> Matrix {
    g1.scale(lambda).add(g2)
}

fn det_polynomial(g1: &Matrix, g2: &Matrix) -> Poly {
    let xs: Vec<Scalar> = (0..5).map(Scalar::int).collect();
    let ys: Vec<Scalar> = xs.iter().map(|x| member(g1, g2, x).det()).collect();
    Poly::interpolate(&xs, &ys)
}

fn push_unique(lines: &mut Vec<Line>, l: Line) {
    if l.dim() == 1 && !lines.contains(&l) {
        lines.push(l);
    }
}

/// Averages float roots closer than `sqrt(tol)`; multiple roots scatter.
fn merge_clusters(roots: Vec<Scalar>, tol: f64) -> Vec<Scalar> {
    let radius = tol.sqrt();
    let mut clusters: Vec<Vec<Scalar>> = Vec::new();
    for r in roots {
        match clusters
            .iter_mut()
            .find(|c| (c[0].to_c64() - r.to_c64()).norm() <= radius * (1.0 + r.abs_f64()))
        {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }
    clusters
        .into_iter()
        .map(|c| {
            let n = c.len() as f64;
            let mean = c.iter().map(Scalar::to_c64).sum::<num_complex::Complex64>() / n;
            Scalar::complex(mean.re, mean.im, tol)
        })
        .collect()
}

fn vanishes(q: &Matrix, a: &[Scalar], b: &[Scalar], tol: f64) -> bool {
    let v = dot(a, &q.mul_vec(b));
    if v.is_exact() && q.is_exact() && a.iter().chain(b).all(Scalar::is_exact) {
        return v.is_zero();
    }
    let norm = |x: &[Scalar]| x.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
    let scale = q.entries().iter().map(Scalar::abs_f64).fold(1.0, f64::max) * norm(a).max(1.0) * norm(b).max(1.0);
    v.abs_f64() <= tol * scale
}

fn on_form(l: &Line, q: &Matrix, tol: f64) -> bool {
    let v = l.basis_vectors();
    vanishes(q, &v[0], &v[0], tol) && vanishes(q, &v[0], &v[1], tol) && vanishes(q, &v[1], &v[1], tol)
}

fn on_both(l: &Line, g1: &Matrix, g2: &Matrix, tol: f64) -> bool {
    on_form(l, g1, tol) && on_form(l, g2, tol)
}

/// Lines on the singular quadric `m` that also lie on the regular quadric `q`.
/// `None` when a needed square root is not available in the scalar field.
fn lines_on_member(m: &Matrix, q: &Matrix) -> Option<Vec<Line>> {
    let n = m.rows();
    let kernel = m.nullspace();
    match kernel.len() {
        3 => conic_lines(q, &kernel),
        2 => {
            let comp = complement(&kernel, n);
            let form = restrict(m, &comp);
            let [w1, w2] = isotropic(&form, &comp[0], &comp[1])?;
            let mut out = Vec::new();
            for w in [w1, w2] {
                let mut plane = kernel.clone();
                plane.push(w);
                out.extend(conic_lines(q, &plane)?);
            }
            Some(out)
        }
        1 => {
            let v = &kernel[0];
            if !vanishes(q, v, v, m.tolerance().max(q.tolerance())) {
                return Some(Vec::new());
            }
            let polar = Matrix::from_rows(&[q.mul_vec(v)], n);
            let tangent = polar.nullspace();
            let tol = m.tolerance().max(q.tolerance());
            let lines = conic_lines(q, &tangent)?;
            Some(lines.into_iter().filter(|l| on_form(l, m, tol)).collect())
        }
        _ => Some(Vec::new()),
    }
}

/// Lines in the plane spanned by `plane` lying on the quadric `q`.
pub(crate) fn conic_lines(q: &Matrix, plane: &[Vec<Scalar>]) -> Option<Vec<Line>> {
    let n = q.rows();
    let b = Matrix::from_rows(plane, n);
    let c = b.matmul(q).matmul(&b.transpose());
    let lift = |local: &[Vec<Scalar>]| -> Line {
        let v: Vec<Vec<Scalar>> = local.iter().map(|x| b.transpose().mul_vec(x)).collect();
        Subspace::from_vectors(&v, n)
    };
    let kernel = c.nullspace();
    match kernel.len() {
        2 => Some(vec![lift(&kernel)]),
        1 => {
            let comp = complement(&kernel, 3);
            let form = restrict(&c, &comp);
            let [a1, a2] = isotropic(&form, &comp[0], &comp[1])?;
            Some(vec![
                lift(&[kernel[0].clone(), a1]),
                lift(&[kernel[0].clone(), a2]),
            ])
        }
        _ => Some(Vec::new()),
    }
}

/// Standard basis vectors completing `vectors` to a basis.
fn complement(vectors: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    let mut current: Vec<Vec<Scalar>> = vectors.to_vec();
    let mut out = Vec::new();
    for k in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[k] = Scalar::one();
        let mut trial = current.clone();
        trial.push(e.clone());
        if Matrix::from_rows(&trial, n).rank() == trial.len() {
            current = trial;
            out.push(e);
        }
        if current.len() == n {
            break;
        }
    }
    out
}

fn restrict(m: &Matrix, basis: &[Vec<Scalar>]) -> Matrix {
    let b = Matrix::from_rows(basis, m.rows());
    b.matmul(m).matmul(&b.transpose())
}

fn combine(x: &Scalar, e1: &[Scalar], y: &Scalar, e2: &[Scalar]) -> Vec<Scalar> {
    e1.iter().zip(e2).map(|(a, b)| &(x * a) + &(y * b)).collect()
}

/// The two isotropic vectors of a regular binary form on `span(e1, e2)`.
fn isotropic(form: &Matrix, e1: &[Scalar], e2: &[Scalar]) -> Option<[Vec<Scalar>; 2]> {
    let (a, b, c) = (&form[(0, 0)], &form[(0, 1)], &form[(1, 1)]);
    if a.is_zero() {
        let second = combine(c, e1, &(-&(&Scalar::int(2) * b)), e2);
        return Some([e1.to_vec(), second]);
    }
    let s = (&(b * b) - &(a * c)).sqrt()?;
    Some([
        combine(&(&(-b) + &s), e1, a, e2),
        combine(&(&(-b) - &s), e1, a, e2),
    ])
}

/// Best rational approximation of `x` with denominator at most `max_den`.
pub(crate) fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (q1 != 0).then(|| BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

fn rationalize_scalar(s: &Scalar) -> Option<Scalar> {
    let z = s.to_c64();
    let tol = s.tolerance().max(1e-12);
    let re = if z.re.abs() <= tol { BigRational::from_integer(0.into()) } else { rationalize(z.re, 1_000_000)? };
    let im = if z.im.abs() <= tol { BigRational::from_integer(0.into()) } else { rationalize(z.im, 1_000_000)? };
    Some(Scalar::gaussian(re, im))
}

fn rationalize_line(l: &Line, g1: &Matrix, g2: &Matrix) -> Option<Line> {
    if !g1.is_exact() || !g2.is_exact() {
        return None;
    }
    let v: Option<Vec<Vec<Scalar>>> = l
        .basis_vectors()
        .iter()
        .map(|row| row.iter().map(rationalize_scalar).collect())
        .collect();
    let e = Subspace::from_vectors(&v?, l.ambient());
    (e.dim() == 1 && on_both(&e, g1, g2, 0.0)).then_some(e)
}
