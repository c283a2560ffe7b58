//! The extended kinematic map, rational motions and their trajectories,
//! Darboux and Mannheim motions, and straight lines of `P⁷` as vertical
//! Darboux motions.

use std::fmt;

use crate::algebra::{left_mul_matrix8, DualQuaternion, Quaternion, Scalar, DEFAULT_TOLERANCE};
use crate::dyads::{classify, Verdict};
use crate::error::{Error, Result};
use crate::poly::{exact_roots, Poly};
use crate::projgeom::{
    fiber_matrix, null_cone, ruling_handedness, study_quadric, subspace_on_quadric, Handedness, Line, ProjPoint,
    QuadricForm, Subspace,
};

/// Image of the point `x0 + ε(x1𝐢 + x2𝐣 + x3𝐤)` under `q = p + εd`:
/// `[q x (p̄ - εd̄)]`.
///
/// The Study condition is not required. With this convention `1 + εu/2`
/// translates by the vector `u`.
pub fn act(q: &DualQuaternion, x: &ProjPoint) -> Result<ProjPoint> {
    if x.ambient() != 4 {
        return Err(Error::Dimension("points of P3 have four coordinates".into()));
    }
    if q.primal.is_zero() {
        return Err(Error::ExceptionalGenerator);
    }
    let c = x.coords();
    let (p, d) = (&q.primal, &q.dual);
    let pc = p.conj();
    let v = Quaternion::new(Scalar::zero(), c[1].clone(), c[2].clone(), c[3].clone());
    let y0 = &c[0] * &p.norm_sq();
    let shift = &(d * &pc) - &(p * &d.conj());
    let y = &(&(p * &v) * &pc) + &shift.scale(&c[0]);
    ProjPoint::new(vec![y0, y.x, y.y, y.z]).map_err(|_| Error::ExceptionalGenerator)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MotionLabel {
    Darboux { a: Scalar, b: Scalar, c: Scalar },
    Mannheim { a: Scalar, b: Scalar, c: Scalar },
    VerticalDarboux { b: Scalar, c: Scalar },
    Line,
    Generic,
}

impl fmt::Display for MotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotionLabel::Darboux { a, b, c } => write!(f, "Darboux({a},{b},{c})"),
            MotionLabel::Mannheim { a, b, c } => write!(f, "Mannheim({a},{b},{c})"),
            MotionLabel::VerticalDarboux { b, c } => write!(f, "VerticalDarboux({b},{c})"),
            MotionLabel::Line => f.write_str("Line"),
            MotionLabel::Generic => f.write_str("Generic"),
        }
    }
}

/// Polynomial in one real parameter with dual quaternion coefficients,
/// stored highest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionPoly {
    coefficients: Vec<DualQuaternion>,
    label: MotionLabel,
}

impl MotionPoly {
    pub fn new(coefficients: Vec<DualQuaternion>, label: MotionLabel) -> Result<Self> {
        let first = coefficients.iter().position(|c| !c.is_zero());
        match first {
            Some(k) => Ok(MotionPoly {
                coefficients: coefficients[k..].to_vec(),
                label,
            }),
            None => Err(Error::Configuration("motion polynomial is zero".into())),
        }
    }

    /// The motion `t ↦ t·x + y` of a line spanned by `[x]` and `[y]`.
    pub fn line(l: &Line) -> Result<Self> {
        if l.ambient() != 8 || l.dim() != 1 {
            return Err(Error::Dimension("expected a line of P7".into()));
        }
        let b = l.basis_vectors();
        MotionPoly::new(
            vec![DualQuaternion::from_slice(&b[0]), DualQuaternion::from_slice(&b[1])],
            MotionLabel::Line,
        )
    }

    pub fn coefficients(&self) -> &[DualQuaternion] {
        &self.coefficients
    }

    pub fn label(&self) -> &MotionLabel {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, t: &Scalar) -> DualQuaternion {
        let ts = DualQuaternion::scalar(t.clone());
        self.coefficients
            .iter()
            .fold(DualQuaternion::zero(), |acc, c| &(&acc * &ts) + c)
    }

    /// Primal and dual parts as quaternion polynomials, lowest degree first.
    fn parts(&self) -> (Vec<Quaternion>, Vec<Quaternion>) {
        let rev = self.coefficients.iter().rev();
        (rev.clone().map(|c| c.primal.clone()).collect(), rev.map(|c| c.dual.clone()).collect())
    }

    /// Primal part as four scalar polynomials.
    pub fn primal_components(&self) -> [Poly; 4] {
        components(&self.parts().0)
    }

    pub fn is_exact(&self) -> bool {
        self.coefficients.iter().all(DualQuaternion::is_exact)
    }
}

fn qpoly_mul(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Quaternion::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn qpoly_add(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn qpoly_conj(a: &[Quaternion]) -> Vec<Quaternion> {
    a.iter().map(Quaternion::conj).collect()
}

fn qpoly_scale(a: &[Quaternion], s: &Scalar) -> Vec<Quaternion> {
    a.iter().map(|q| q.scale(s)).collect()
}

fn components(a: &[Quaternion]) -> [Poly; 4] {
    std::array::from_fn(|k| Poly::new(a.iter().map(|q| q.coords()[k].clone()).collect()))
}

/// Reduced parametrisation of the trajectory of a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub components: [Poly; 4],
    pub degree: usize,
}

impl Trajectory {
    pub fn point(&self, t: &Scalar) -> Option<ProjPoint> {
        ProjPoint::new(self.components.iter().map(|c| c.eval(t)).collect()).ok()
    }
}

/// Trajectory of `x` under the motion `m`, with the common factor of the four
/// homogeneous components cancelled. Exact coefficients only.
pub fn trajectory(m: &MotionPoly, x: &ProjPoint) -> Result<Trajectory> {
    if x.ambient() != 4 {
        return Err(Error::Dimension("points of P3 have four coordinates".into()));
    }
    if !m.is_exact() || !x.is_exact() {
        return Err(Error::InexactTrajectory);
    }
    let (p, d) = m.parts();
    if p.iter().all(Quaternion::is_zero) {
        return Err(Error::ExceptionalGenerator);
    }
    let c = x.coords();
    let v = [Quaternion::new(Scalar::zero(), c[1].clone(), c[2].clone(), c[3].clone())];
    let pc = qpoly_conj(&p);
    let norm = qpoly_mul(&p, &pc);
    let rot = qpoly_mul(&qpoly_mul(&p, &v), &pc);
    let shift = qpoly_add(&qpoly_mul(&d, &pc), &qpoly_scale(&qpoly_mul(&p, &qpoly_conj(&d)), &-Scalar::one()));
    let y = qpoly_add(&rot, &qpoly_scale(&shift, &c[0]));
    let [n0, _, _, _] = components(&norm);
    let [_, y1, y2, y3] = components(&y);
    let raw = [n0.scale(&c[0]), y1, y2, y3];
    let g = raw.iter().fold(Poly::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return Err(Error::ExceptionalGenerator);
    }
    let components: [Poly; 4] = std::array::from_fn(|k| raw[k].divrem(&g).0);
    let degree = components.iter().filter_map(Poly::degree).max().unwrap_or(0);
    Ok(Trajectory { components, degree })
}

/// `C(t) = (cε + 𝐤)t³ + (1 + ε(b - a𝐢 - c𝐤))t² + (𝐤 - ε(a𝐣 + b𝐤))t + 1`.
pub fn darboux(a: &Scalar, b: &Scalar, c: &Scalar) -> MotionPoly {
    let z = Scalar::zero;
    let coefficients = vec![
        DualQuaternion::new(Quaternion::unit_k(), Quaternion::scalar(c.clone())),
        DualQuaternion::new(Quaternion::one(), Quaternion::new(b.clone(), -a, z(), -c)),
        DualQuaternion::new(Quaternion::unit_k(), Quaternion::new(z(), z(), -a, -b)),
        DualQuaternion::one(),
    ];
    let label = if a.is_zero() {
        MotionLabel::VerticalDarboux {
            b: b.clone(),
            c: c.clone(),
        }
    } else {
        MotionLabel::Darboux {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        }
    };
    MotionPoly { coefficients, label }
}

/// The inverse motion of [`darboux`].
pub fn mannheim(a: &Scalar, b: &Scalar, c: &Scalar) -> MotionPoly {
    let mut m = chi(&darboux(a, b, c));
    m.label = MotionLabel::Mannheim {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    m
}

/// Coefficient-wise quaternion conjugation, mapping a motion to its inverse.
pub fn chi(m: &MotionPoly) -> MotionPoly {
    let label = match &m.label {
        MotionLabel::Darboux { a, b, c } => MotionLabel::Mannheim {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        MotionLabel::VerticalDarboux { b, c } => MotionLabel::Mannheim {
            a: Scalar::zero(),
            b: b.clone(),
            c: c.clone(),
        },
        MotionLabel::Mannheim { a, b, c } if a.is_zero() => MotionLabel::VerticalDarboux {
            b: b.clone(),
            c: c.clone(),
        },
        MotionLabel::Mannheim { a, b, c } => MotionLabel::Darboux {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        other => other.clone(),
    };
    MotionPoly {
        coefficients: m.coefficients.iter().map(DualQuaternion::conj).collect(),
        label,
    }
}

/// Points where a motion curve meets `[εH]` and where its fiber projection
/// meets `Y`, paired by curve parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants {
    pub params: Vec<Scalar>,
    /// Curve points in `[εH]`.
    pub d: Vec<DualQuaternion>,
    /// Points of the fiber projection on `Y`.
    pub f: Vec<DualQuaternion>,
    pub on_y: bool,
    pub handedness: Vec<Handedness>,
    pub coincident: Vec<bool>,
}

fn eps_point(q: &Quaternion) -> ProjPoint {
    ProjPoint::from_dq(&DualQuaternion::eps(q.clone())).expect("nonzero quaternion")
}

pub fn curve_invariants(m: &MotionPoly) -> Result<CurveInvariants> {
    let prim = m.primal_components();
    let g = prim.iter().fold(Poly::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return Err(Error::ExceptionalGenerator);
    }
    let roots = exact_roots(&g);
    if !roots.complete {
        return Err(Error::RootIsolation("curve parameters in [εH] are not in Q(i)".into()));
    }
    let reduced: Vec<Poly> = prim.iter().map(|c| c.divrem(&g).0).collect();
    let norm = reduced.iter().fold(Poly::zero(), |s, c| s.add(&c.mul(c)));
    let mut params = Vec::new();
    let (mut d, mut f) = (Vec::new(), Vec::new());
    for t in &roots.roots {
        if !norm.eval(t).is_zero() {
            continue;
        }
        let fq = Quaternion::from_slice(&reduced.iter().map(|c| c.eval(t)).collect::<Vec<_>>());
        let dq = m.eval(t);
        if dq.is_zero() || fq.is_zero() {
            continue;
        }
        params.push(t.clone());
        d.push(dq);
        f.push(DualQuaternion::eps(fq));
    }
    if params.is_empty() {
        return Err(Error::Configuration("curve does not meet [εH] on the fiber projection of Y".into()));
    }
    let on_y = d.iter().chain(&f).all(|q| q.primal.is_zero() && q.dual.norm_sq().is_zero());
    let mut handedness = Vec::new();
    let mut coincident = Vec::new();
    for (dq, fq) in d.iter().zip(&f) {
        let (pd, pf) = (eps_point(&dq.dual), eps_point(&fq.dual));
        coincident.push(pd == pf);
        handedness.push(ruling_handedness(&pd, &pf));
    }
    Ok(CurveInvariants {
        params,
        d,
        f,
        on_y,
        handedness,
        coincident,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxReport {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    /// `p = -b + a𝐢 + c𝐤`.
    pub p: Quaternion,
    pub curve: CurveInvariants,
    /// `[d_k] = [p f_k]` for both points.
    pub d_equals_pf: bool,
    /// `[d_k] = [f_k]` for both points.
    pub coincident: bool,
    pub vertical: bool,
    /// Ruling type spanned by `[d1]` and `[f1]`.
    pub handedness: Handedness,
    /// The same for the Mannheim motion.
    pub inverse_handedness: Handedness,
}

pub fn darboux_invariants(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<DarbouxReport> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Configuration("(a, b, c) must not vanish".into()));
    }
    let curve = curve_invariants(&darboux(a, b, c))?;
    let inverse = curve_invariants(&mannheim(a, b, c))?;
    let p = Quaternion::new(-b, a.clone(), Scalar::zero(), c.clone());
    let d_equals_pf = curve.d.len() == 2
        && curve
            .d
            .iter()
            .zip(&curve.f)
            .all(|(d, f)| eps_point(&d.dual) == eps_point(&(&p * &f.dual)));
    let coincident = curve.coincident.iter().all(|&x| x);
    Ok(DarbouxReport {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        p,
        d_equals_pf,
        coincident,
        vertical: a.is_zero(),
        handedness: curve.handedness[0],
        inverse_handedness: inverse.handedness[0],
        curve,
    })
}

/// Result of the straight line construction: `U = ℓ ∨ φ(ℓ)` with the
/// quantities of the normal form through `[1]`.
#[derive(Clone, Debug)]
pub struct CSpaceReport {
    pub line: Line,
    /// Point of the line's fiber on the Study quadric, used as base.
    pub base: ProjPoint,
    pub space: Subspace,
    pub verdict: Verdict,
    /// Whether the null cone intersections are Gaussian rational.
    pub exact: bool,
    pub f: Scalar,
    pub g1: Scalar,
    pub g2: Scalar,
    pub e1: Line,
    pub l1: Line,
    pub l2: Line,
    pub s1: ProjPoint,
    pub s2: ProjPoint,
    /// `e1`, `ℓ1`, `ℓ2` on `S ∩ N`; `[n1] ∈ ℓ1`, `[n2] ∈ ℓ2` with `[1]` on
    /// their join; that join on `S` and skew to `e1`.
    pub memberships: [bool; 5],
    /// `span{a, b, φ(a), φ(b)}` equals `U`.
    pub space_matches: bool,
}

impl CSpaceReport {
    pub fn all_memberships(&self) -> bool {
        self.memberships.iter().all(|&m| m) && self.space_matches
    }
}

fn form_vanishes(form: &QuadricForm, vs: &[Vec<Scalar>]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, x)| vs[i..].iter().all(|y| form.polar(x, y).is_zero()))
}

fn on_s_and_n(vs: &[Vec<Scalar>]) -> bool {
    form_vanishes(&study_quadric(), vs) && form_vanishes(&null_cone(), vs)
}

// "real" in the quaternion sense: a scalar quaternion, possibly with a
// complex coefficient
fn real_scalar(q: &Quaternion) -> Option<Scalar> {
    q.vector_part().is_zero().then(|| q.w.clone())
}

/// Checks the hypotheses on a line and returns `(p, y)`: a basis point off
/// `[εH]` and a second basis point.
fn line_hypotheses(l: &Line) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if l.ambient() != 8 || l.dim() != 1 {
        return Err(Error::Dimension("expected a line of P7".into()));
    }
    if !l.is_exact() {
        return Err(Error::ExactRequired("line must have exact coordinates".into()));
    }
    if !l.conjugation_closed() {
        return Err(Error::InvalidSpace("line must be real".into()));
    }
    let eps_h = Subspace::eps_h();
    if eps_h.contains_subspace(l) {
        return Err(Error::LineInExceptionalGenerator);
    }
    let n = null_cone().restrict(l);
    if n.gram().is_zero() {
        return Err(Error::LineInNullCone);
    }
    let mut b = l.basis_vectors();
    if b[0][..4].iter().all(Scalar::is_zero) {
        b.swap(0, 1);
    }
    let p = b[0].clone();
    let t = eps_h.join_point(&ProjPoint::new(p.clone())?);
    if t.contains_subspace(l) {
        return Err(Error::LineInTranslationSpace);
    }
    if n.gram().det().is_zero() {
        return Err(Error::LineInNullCone);
    }
    Ok((p, b[1].clone()))
}

/// Builds the cylinder space spanned by a line and its fiber image.
pub fn c_space_from_line(l: &Line) -> Result<CSpaceReport> {
    let (p, y) = line_hypotheses(l)?;
    let fm = fiber_matrix();
    let space = Subspace::from_vectors(&[p.clone(), y.clone(), fm.mul_vec(&p), fm.mul_vec(&y)], 8);
    if space.dim() != 3 {
        return Err(Error::LineInTranslationSpace);
    }
    // move along the fiber of [p] onto the Study quadric, then to [1]
    let pq = DualQuaternion::from_slice(&p);
    let lambda = -(&study_quadric().eval(&p) / &(&Scalar::int(2) * &pq.primal.norm_sq()));
    let base_q = &pq + &DualQuaternion::eps(pq.primal.scale(&lambda));
    let ginv = base_q.inverse().ok_or(Error::ExceptionalGenerator)?;
    let y0 = &ginv * &DualQuaternion::from_slice(&y);
    // second point of the line with pure primal part
    let y0 = &y0 - &DualQuaternion::scalar(y0.primal.w.clone());
    let s = y0.primal.norm_sq();
    let exact_root = s.sqrt().filter(|r| r.is_real());
    let exact = exact_root.is_some();
    let t1 = match exact_root {
        Some(r) => &Scalar::i() / &r,
        None => Scalar::complex(0.0, 1.0 / s.to_c64().re.sqrt(), DEFAULT_TOLERANCE),
    };
    let one = DualQuaternion::one();
    let a = &one + &y0.scale(&t1);
    let (a1, a2) = (a.primal.clone(), a.dual.clone());
    let a1c = a1.conj();
    let b = DualQuaternion::new(a1c.clone(), -&a2);
    let f = real_scalar(&(&(&a1 * &a1) + &(&a1c * &a1c)))
        .filter(|f| !f.is_zero())
        .ok_or_else(|| Error::Configuration("f must be a nonzero scalar".into()))?;
    let g1 = real_scalar(&(&(&a1 * &a2.conj()) + &(&a2 * &a1c)))
        .ok_or_else(|| Error::Configuration("g1 must be a scalar".into()))?;
    let g2 = real_scalar(&(&(&a1c * &a2.conj()) + &(&a2 * &a1)))
        .ok_or_else(|| Error::Configuration("g2 must be a scalar".into()))?;

    let sa = DualQuaternion::eps(a1.clone());
    let sb = DualQuaternion::eps(a1c.clone());
    let combo = |al: &Scalar, be: &Scalar, ga: &Scalar, de: &Scalar| {
        let q = &(&(&a.scale(al) + &b.scale(be)) + &sa.scale(ga)) + &sb.scale(de);
        q.coords()
    };
    let z = Scalar::zero();
    let mf = -&f;
    let e1v = vec![sa.coords(), sb.coords()];
    let l1v = vec![combo(&mf, &z, &z, &g1), sa.coords()];
    let l2v = vec![combo(&z, &f, &g2, &z), sb.coords()];
    let n1 = combo(&mf, &z, &g2, &g1);
    let n2 = combo(&z, &f, &g2, &g1);
    let (e1, l1, l2) = (
        Subspace::from_vectors(&e1v, 8),
        Subspace::from_vectors(&l1v, 8),
        Subspace::from_vectors(&l2v, 8),
    );
    let n = Subspace::from_vectors(&[n1.clone(), n2.clone()], 8);
    let memberships = [
        on_s_and_n(&e1v),
        on_s_and_n(&l1v),
        on_s_and_n(&l2v),
        l1.contains_vector(&n1) && l2.contains_vector(&n2) && n.contains_vector(&one.coords()),
        n.dim() == 1 && form_vanishes(&study_quadric(), &[n1, n2]) && n.meet(&e1).is_empty(),
    ];
    let on_line = Subspace::span_dq(&[one.clone(), y0.clone()]);
    let b_ok = on_line.contains_vector(&b.coords()) && null_cone().eval(&b.coords()).is_zero();
    let local = Subspace::from_vectors(&[a.coords(), b.coords(), sa.coords(), sb.coords()], 8);
    let g = left_mul_matrix8(&base_q);
    let back = local.map(&g);
    let space_matches = b_ok
        && if exact {
            back == space
        } else {
            back.dim() == 3 && space.basis_vectors().iter().all(|v| back.contains_vector(v))
        };
    let verdict = classify(&space)?.verdict;
    let map_point = |q: &DualQuaternion| ProjPoint::new(g.mul_vec(&q.coords()));
    Ok(CSpaceReport {
        line: l.clone(),
        base: ProjPoint::from_dq(&base_q)?,
        space,
        verdict,
        exact,
        f,
        g1,
        g2,
        e1: e1.map(&g),
        l1: l1.map(&g),
        l2: l2.map(&g),
        s1: map_point(&sa)?,
        s2: map_point(&sb)?,
        memberships,
        space_matches,
    })
}

/// Fixed sample points used for trajectory degree checks.
pub fn sample_points() -> [ProjPoint; 3] {
    [
        ProjPoint::from_ints(&[1, 0, 0, 0]),
        ProjPoint::from_ints(&[1, 1, 2, 3]),
        ProjPoint::from_ints(&[2, -1, 1, -3]),
    ]
}

/// Whether the motion of a line is a vertical Darboux motion: either the
/// line spans a cylinder space with its fiber image, or it lies on the Study
/// quadric without meeting `[εH]`. Trajectories must have degree at most two.
pub fn is_vertical_darboux(l: &Line) -> Result<bool> {
    if l.ambient() != 8 || l.dim() != 1 {
        return Err(Error::Dimension("expected a line of P7".into()));
    }
    let on_s = subspace_on_quadric(&study_quadric(), l) && l.meet(&Subspace::eps_h()).is_empty();
    let structural = on_s || {
        let r = c_space_from_line(l)?;
        r.verdict == Verdict::C && r.all_memberships()
    };
    if !structural {
        return Ok(false);
    }
    let m = MotionPoly::line(l)?;
    for x in sample_points() {
        if trajectory(&m, &x)?.degree > 2 {
            return Ok(false);
        }
    }
    Ok(true)
}
