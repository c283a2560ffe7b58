//! Constraint spaces of RR, RP, PR and cylindrical dyads: construction,
//! classification of three-spaces and recovery of joint axes.

use std::fmt;

use crate::algebra::{DualQuaternion, Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::projgeom::lines::conic_lines;
use crate::projgeom::{
    common_lines, fiber_image, line_is_null, null_cone, ruling_handedness, study_quadric, Handedness, Line, ProjPoint,
    QuadricForm, Signature, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DyadKind {
    RR,
    RP,
    PR,
    C,
}

impl DyadKind {
    pub const ALL: [DyadKind; 4] = [DyadKind::RR, DyadKind::RP, DyadKind::PR, DyadKind::C];

    pub fn as_str(&self) -> &'static str {
        match self {
            DyadKind::RR => "RR",
            DyadKind::RP => "RP",
            DyadKind::PR => "PR",
            DyadKind::C => "C",
        }
    }

    pub fn parse(s: &str) -> Option<DyadKind> {
        match s.to_ascii_uppercase().as_str() {
            "RR" | "2R" => Some(DyadKind::RR),
            "RP" => Some(DyadKind::RP),
            "PR" => Some(DyadKind::PR),
            "C" => Some(DyadKind::C),
            _ => None,
        }
    }
}

impl fmt::Display for DyadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Joint data of a dyad.
///
/// For `RR`, `h1` and `h2` are the half-turns about the two axes. For the
/// other kinds `h1` is the rotation half-turn `h` and `h2 = εp` holds the
/// translation direction `p`. Half-turns need not be normalised; only their
/// projective class matters for the constraint space.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadSpec {
    pub kind: DyadKind,
    pub h1: DualQuaternion,
    pub h2: DualQuaternion,
}

impl DyadSpec {
    pub fn new(kind: DyadKind, h1: DualQuaternion, h2: DualQuaternion) -> Self {
        DyadSpec { kind, h1, h2 }
    }

    /// Dyad with a translation direction `p` stored as `εp`.
    pub fn with_translation(kind: DyadKind, h: DualQuaternion, p: Quaternion) -> Self {
        DyadSpec::new(kind, h, DualQuaternion::eps(p))
    }
}

/// Constraint variety of a dyad: its three-space, the restricted Study form,
/// and named witnesses.
#[derive(Clone, Debug)]
pub struct ConstraintVariety {
    pub spec: DyadSpec,
    pub space: Subspace,
    pub quadric: QuadricForm,
    pub witnesses: Vec<(String, Subspace)>,
}

impl ConstraintVariety {
    /// Point of the constraint variety for joint parameters `(t1, t2)`.
    pub fn sample(&self, t1: &Scalar, t2: &Scalar) -> DualQuaternion {
        parametrize(&self.spec, t1, t2)
    }

    pub fn witness(&self, name: &str) -> Option<&Subspace> {
        self.witnesses.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

/// `(t1 - h1)(t2 - h2)` for RR, `(u - h)(v - εp)` for RP and C,
/// `(v - εp)(u - h)` for PR.
pub fn parametrize(spec: &DyadSpec, t1: &Scalar, t2: &Scalar) -> DualQuaternion {
    let a = &DualQuaternion::scalar(t1.clone()) - &spec.h1;
    let b = &DualQuaternion::scalar(t2.clone()) - &spec.h2;
    match spec.kind {
        DyadKind::PR => &b * &a,
        _ => &a * &b,
    }
}

fn is_pure(q: &DualQuaternion) -> bool {
    q.is_pure()
}

fn check_half_turn(h: &DualQuaternion, name: &str) -> Result<()> {
    if h.primal.is_zero() {
        return Err(Error::InvalidDyad(format!("{name} has zero primal part")));
    }
    if !is_pure(h) {
        return Err(Error::InvalidDyad(format!("{name} is not a half-turn (h + h̄ ≠ 0)")));
    }
    if !h.study_condition() {
        return Err(Error::InvalidDyad(format!("{name} violates the Study condition")));
    }
    Ok(())
}

fn proportional(a: &Quaternion, b: &Quaternion) -> bool {
    Subspace::from_vectors(&[a.coords().to_vec(), b.coords().to_vec()], 4).rank() < 2
}

fn point(q: &DualQuaternion) -> ProjPoint {
    ProjPoint::from_dq(q).expect("nonzero dual quaternion")
}

fn line2(a: &DualQuaternion, b: &DualQuaternion) -> Line {
    Subspace::span_dq(&[a.clone(), b.clone()])
}

/// Builds the constraint three-space of a dyad.
pub fn build_variety(spec: &DyadSpec) -> Result<ConstraintVariety> {
    let one = DualQuaternion::one();
    let i = DualQuaternion::scalar(Scalar::i());
    let mi = DualQuaternion::scalar(-Scalar::i());
    let (space, witnesses) = match spec.kind {
        DyadKind::RR => {
            let (h1, h2) = (&spec.h1, &spec.h2);
            check_half_turn(h1, "h1")?;
            check_half_turn(h2, "h2")?;
            let h12 = h1 * h2;
            if h12 == h2 * h1 {
                return Err(Error::InvalidDyad("axes are coplanar (h1 h2 = h2 h1)".into()));
            }
            if proportional(&h1.primal, &h2.primal) {
                return Err(Error::InvalidDyad("axes are parallel (dependent primal parts)".into()));
            }
            let space = Subspace::span_dq(&[one.clone(), h1.clone(), h2.clone(), h12.clone()]);
            let mut w = vec![
                ("h1".to_string(), Subspace::span(&[point(h1)])?),
                ("h2".to_string(), Subspace::span(&[point(h2)])?),
                ("h1h2".to_string(), Subspace::span(&[point(&h12)])?),
            ];
            for (name, t) in [("+i", &i), ("-i", &mi)] {
                let a = t - h1;
                w.push((format!("t1={name}"), line2(&a, &(&a * h2))));
                let b = t - h2;
                w.push((format!("t2={name}"), line2(&b, &(h1 * &b))));
            }
            (space, w)
        }
        DyadKind::RP | DyadKind::PR | DyadKind::C => {
            let h = &spec.h1;
            let m = &spec.h2;
            check_half_turn(h, "h")?;
            if !m.primal.is_zero() || !m.dual.w.is_zero() || m.dual.is_zero() {
                return Err(Error::InvalidDyad("translation must be εp with p nonzero and pure".into()));
            }
            let p = &m.dual;
            let parallel = proportional(&h.primal, p);
            match (spec.kind, parallel) {
                (DyadKind::C, false) => {
                    return Err(Error::InvalidDyad("cylinder needs translation parallel to the axis".into()))
                }
                (DyadKind::RP | DyadKind::PR, true) => {
                    return Err(Error::InvalidDyad(
                        "translation parallel to the axis gives a cylinder, not RP/PR".into(),
                    ))
                }
                _ => {}
            }
            let hp = match spec.kind {
                DyadKind::PR => m * h,
                _ => h * m,
            };
            let space = Subspace::span_dq(&[one.clone(), h.clone(), m.clone(), hp.clone()]);
            let e1 = line2(m, &hp);
            let mut w = vec![("e1".to_string(), e1)];
            for (k, t) in [(1, &i), (2, &mi)] {
                let a = t - h;
                let s = match spec.kind {
                    DyadKind::PR => m * &a,
                    _ => &a * m,
                };
                w.push((format!("l{k}"), line2(&a, &s)));
                w.push((format!("s{k}"), Subspace::span(&[point(&s)])?));
            }
            (space, w)
        }
    };
    if space.dim() != 3 {
        return Err(Error::InvalidDyad(format!("span has dimension {} instead of 3", space.dim())));
    }
    let quadric = study_quadric().restrict(&space);
    Ok(ConstraintVariety {
        spec: spec.clone(),
        space,
        quadric,
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TwoR,
    RP,
    PR,
    C,
    NotADyadSpace,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::TwoR => "TwoR",
            Verdict::RP => "RP",
            Verdict::PR => "PR",
            Verdict::C => "C",
            Verdict::NotADyadSpace => "NotADyadSpace",
        }
    }

    pub fn kind(&self) -> Option<DyadKind> {
        match self {
            Verdict::TwoR => Some(DyadKind::RR),
            Verdict::RP => Some(DyadKind::RP),
            Verdict::PR => Some(DyadKind::PR),
            Verdict::C => Some(DyadKind::C),
            Verdict::NotADyadSpace => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Four null lines in cyclic order with their consecutive intersection points.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrilateral {
    pub lines: [Line; 4],
    pub vertices: [ProjPoint; 4],
}

#[derive(Clone, Debug, Default)]
pub struct Evidence {
    pub signature: Option<Signature>,
    /// Projective dimension of `U ∧ [εH]`.
    pub meet_dim: isize,
    pub null_lines: Vec<Line>,
    pub lines_exact: bool,
    pub quadrilateral: Option<Quadrilateral>,
    pub e1: Option<Line>,
    pub conjugate_pair: Option<(Line, Line)>,
    pub s_points: Option<(ProjPoint, ProjPoint)>,
    pub handedness: Option<Handedness>,
    pub fiber_image: Option<Subspace>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Orders exactly four null lines into a closed quadrilateral.
pub fn null_quadrilateral(lines: &[Line]) -> Option<Quadrilateral> {
    if lines.len() != 4 || lines.iter().any(|l| l.dim() != 1) {
        return None;
    }
    if lines[0].ambient() == 8 && !lines.iter().all(|l| line_is_null(l).unwrap_or(false)) {
        return None;
    }
    for order in [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]] {
        let ls: Vec<&Line> = order.iter().map(|&k| &lines[k]).collect();
        let vertices: Option<Vec<ProjPoint>> = (0..4).map(|k| ls[k].meet(ls[(k + 1) % 4]).as_point()).collect();
        let Some(vertices) = vertices else {
            continue;
        };
        let distinct = (0..4).all(|a| (a + 1..4).all(|b| vertices[a] != vertices[b]));
        if distinct {
            return Some(Quadrilateral {
                lines: [ls[0].clone(), ls[1].clone(), ls[2].clone(), ls[3].clone()],
                vertices: vertices.try_into().ok()?,
            });
        }
    }
    None
}

fn conjugate_pair(lines: &[Line]) -> Option<(Line, Line)> {
    let eps_h = Subspace::eps_h();
    for (a, l) in lines.iter().enumerate() {
        if eps_h.contains_subspace(l) || l.conjugation_closed() {
            continue;
        }
        let c = l.conj();
        if let Some(m) = lines[a + 1..].iter().find(|m| **m == c) {
            return Some((l.clone(), m.clone()));
        }
    }
    None
}

/// Decides whether a real three-space is the constraint space of an RR, RP,
/// PR or cylindrical dyad, collecting the geometric evidence on the way.
pub fn classify(u: &Subspace) -> Result<Classification> {
    if u.ambient() != 8 || u.dim() != 3 {
        return Err(Error::InvalidSpace(format!(
            "expected a three-space of P7, got dimension {}",
            u.dim()
        )));
    }
    if !u.is_exact() {
        return Err(Error::InvalidSpace("basis must be exact".into()));
    }
    if !u.conjugation_closed() {
        return Err(Error::InvalidSpace("subspace is not closed under conjugation".into()));
    }
    let mut ev = Evidence::default();
    let not_dyad = |ev: Evidence| Ok(Classification {
        verdict: Verdict::NotADyadSpace,
        evidence: ev,
    });
    let s = study_quadric().restrict(u);
    let sig = s.signature()?;
    ev.signature = Some(sig);
    let e = u.meet(&Subspace::eps_h());
    ev.meet_dim = e.dim();
    if sig != (Signature { pos: 2, neg: 2, zero: 0 }) {
        return not_dyad(ev);
    }
    let set = common_lines(&s, &null_cone().restrict(u))?;
    ev.lines_exact = set.exact;
    ev.null_lines = set.lines.iter().map(|l| u.lift(l)).collect();
    match e.dim() {
        -1 => {
            ev.quadrilateral = null_quadrilateral(&ev.null_lines);
            if ev.quadrilateral.is_some() {
                return Ok(Classification {
                    verdict: Verdict::TwoR,
                    evidence: ev,
                });
            }
            not_dyad(ev)
        }
        1 => {
            ev.e1 = Some(e.clone());
            let fib = fiber_image(u)?;
            ev.fiber_image = Some(fib.clone());
            ev.conjugate_pair = conjugate_pair(&ev.null_lines);
            let Some((l1, l2)) = ev.conjugate_pair.clone() else {
                return not_dyad(ev);
            };
            if fib == e {
                return Ok(Classification {
                    verdict: Verdict::C,
                    evidence: ev,
                });
            }
            let (Some(s1), Some(s2)) = (l1.meet(&e).as_point(), l2.meet(&e).as_point()) else {
                return not_dyad(ev);
            };
            ev.s_points = Some((s1.clone(), s2));
            let Some(f1) = fiber_image(&l1)?.as_point() else {
                return not_dyad(ev);
            };
            let hand = ruling_handedness(&f1, &s1);
            ev.handedness = Some(hand);
            let verdict = match hand {
                Handedness::RightRuling => Verdict::RP,
                Handedness::LeftRuling => Verdict::PR,
                Handedness::NotARuling => Verdict::NotADyadSpace,
            };
            Ok(Classification { verdict, evidence: ev })
        }
        _ => not_dyad(ev),
    }
}

/// Axes recovered from a constraint space.
#[derive(Clone, Debug)]
pub struct RecoveredAxes {
    /// Joint data relative to the base displacement moved to the identity.
    pub spec: DyadSpec,
    /// Dual quaternion of the base point; the constraint space is
    /// `base · span(build_variety(spec))`.
    pub base: DualQuaternion,
    /// Whether every half-turn and translation could be scaled to unit norm.
    pub normalized: bool,
}

impl RecoveredAxes {
    /// The constraint space this recovery describes.
    pub fn space(&self) -> Result<Subspace> {
        let v = build_variety(&self.spec)?;
        Ok(v.space.map(&crate::algebra::left_mul_matrix8(&self.base)))
    }
}

fn normalize(q: &DualQuaternion) -> (DualQuaternion, bool) {
    let n = if q.primal.is_zero() { q.dual.norm_sq() } else { q.primal.norm_sq() };
    match n.sqrt().filter(|s| s.is_real() && !s.is_zero()) {
        Some(s) => (q.scale(&s.inv()), true),
        None => (q.clone(), false),
    }
}

/// Recovers joint axes from the constraint space `u` using `base` as the
/// reference displacement.
///
/// The space is moved by left multiplication with the inverse of `base` so
/// that it passes through `[1]`; the two rulings through `[1]` are cut out by
/// the tangent plane there, and their pure points give the half-turns (or the
/// translation `εp`).
pub fn recover_axes(u: &Subspace, base: &ProjPoint) -> Result<RecoveredAxes> {
    if u.ambient() != 8 || u.dim() != 3 {
        return Err(Error::InvalidSpace("expected a three-space of P7".into()));
    }
    let s = study_quadric();
    if !u.contains(base) || !s.eval(base.coords()).is_zero() {
        return Err(Error::InvalidBase("not on the quadric of the constraint space".into()));
    }
    let b = base.to_dq();
    let inv = b
        .inverse()
        .ok_or_else(|| Error::InvalidBase("lies in the exceptional generator".into()))?;
    let moved = u.map(&crate::algebra::left_mul_matrix8(&inv));
    let rest = s.restrict(&moved);
    if !rest.is_regular() {
        return Err(Error::InvalidBase("quadric of the constraint space is singular".into()));
    }
    // tangent plane at [1]: vanishing dual scalar part
    let tangent: Vec<Vec<Scalar>> = {
        let eq = crate::algebra::Matrix::from_rows(
            &[moved.basis_vectors().iter().map(|v| v[4].clone()).collect()],
            4,
        );
        eq.nullspace()
            .iter()
            .map(|c| moved.basis().transpose().mul_vec(c))
            .collect()
    };
    let rulings = conic_lines(s.gram(), &tangent)
        .ok_or_else(|| Error::InvalidDyad("rulings through the base point are not defined over Q(i)".into()))?;
    if rulings.len() != 2 {
        return Err(Error::InvalidDyad("expected two rulings through the base point".into()));
    }
    let mut axes = Vec::new();
    for r in &rulings {
        let v = r.basis_vectors();
        // a pure point: primal scalar part zero
        let (a, c) = (&v[0][0], &v[1][0]);
        let combo: Vec<Scalar> = if a.is_zero() {
            v[0].clone()
        } else {
            v[0].iter().zip(&v[1]).map(|(x, y)| &(c * x) - &(a * y)).collect()
        };
        let q = DualQuaternion::from_slice(&combo);
        if q.is_zero() || !q.is_exact() && !q.is_pure() {
            return Err(Error::InvalidDyad("ruling has no pure point".into()));
        }
        axes.push(q);
    }
    let translation: Vec<bool> = axes.iter().map(|q| q.primal.is_zero()).collect();
    let contains = |q: &DualQuaternion| !q.is_zero() && moved.contains(&point(q));
    let (spec, norm_ok) = match (translation[0], translation[1]) {
        (false, false) => {
            let (h1, ok1) = normalize(&axes[0]);
            let (h2, ok2) = normalize(&axes[1]);
            let (h1, h2) = if contains(&(&h1 * &h2)) { (h1, h2) } else { (h2, h1) };
            (DyadSpec::new(DyadKind::RR, h1, h2), ok1 && ok2)
        }
        (true, true) => return Err(Error::InvalidDyad("two translational rulings".into())),
        _ => {
            let (h, m) = if translation[0] { (&axes[1], &axes[0]) } else { (&axes[0], &axes[1]) };
            let (h, ok1) = normalize(h);
            let (m, ok2) = normalize(m);
            let rp = contains(&(&h * &m));
            let pr = contains(&(&m * &h));
            let kind = match (rp, pr) {
                (true, true) => DyadKind::C,
                (true, false) => DyadKind::RP,
                (false, true) => DyadKind::PR,
                (false, false) => return Err(Error::InvalidDyad("no product of the rulings lies in the space".into())),
            };
            (DyadSpec::new(kind, h, m), ok1 && ok2)
        }
    };
    Ok(RecoveredAxes {
        spec,
        base: b,
        normalized: norm_ok,
    })
}

/// Checks on the Gaussian three-space `span([1], [m1], [n1], [s1])` with
/// `m1 = ε𝐢` and `n1 = i + 𝐢`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example2Report {
    /// `[m1] ∨ [s1]` is a null line inside `[εH]`.
    pub m1_s1_null_in_eps_h: bool,
    /// `[n1] ∨ [s1]` and its conjugate are null lines outside `[εH]`.
    pub n1_s1_conjugate_null_pair: bool,
    /// The quadric `(u - 𝐢)(v - ε𝐢)` is not contained in the three-space.
    pub quadric_not_contained: bool,
    /// Five rational samples of `(u - 𝐢)(v - ε𝐢)` satisfy the Study condition.
    pub samples_on_study_quadric: bool,
}

impl Example2Report {
    pub fn all(&self) -> bool {
        self.m1_s1_null_in_eps_h && self.n1_s1_conjugate_null_pair && self.quadric_not_contained && self.samples_on_study_quadric
    }
}

pub fn example2_m1() -> DualQuaternion {
    DualQuaternion::eps(Quaternion::unit_i())
}

pub fn example2_n1() -> DualQuaternion {
    DualQuaternion::real(Quaternion::new(Scalar::i(), Scalar::one(), Scalar::zero(), Scalar::zero()))
}

/// `ε(i + 𝐢 + 𝐣 + i𝐤)`.
pub fn example2_s1() -> DualQuaternion {
    DualQuaternion::eps(Quaternion::new(Scalar::i(), Scalar::one(), Scalar::one(), Scalar::i()))
}

/// Runs the checks for the fixture point `s1`.
pub fn example2_checks_with(s1: &DualQuaternion) -> Result<Example2Report> {
    let m1 = example2_m1();
    let n1 = example2_n1();
    let eps_h = Subspace::eps_h();
    let u = Subspace::span_dq(&[DualQuaternion::one(), m1.clone(), n1.clone(), s1.clone()]);
    let ms = line2(&m1, s1);
    let m1_s1_null_in_eps_h = ms.dim() == 1 && line_is_null(&ms)? && eps_h.contains_subspace(&ms);
    let ns = line2(&n1, s1);
    let nsc = ns.conj();
    let n1_s1_conjugate_null_pair = ns.dim() == 1
        && line_is_null(&ns)?
        && line_is_null(&nsc)?
        && !eps_h.contains_subspace(&ns)
        && !eps_h.contains_subspace(&nsc);
    let spec = DyadSpec::with_translation(DyadKind::C, DualQuaternion::real(Quaternion::unit_i()), Quaternion::unit_i());
    let params = [(0, 1), (1, 0), (1, 1), (2, -3), (-1, 5)];
    let samples: Vec<DualQuaternion> = params
        .iter()
        .map(|&(a, b)| parametrize(&spec, &Scalar::int(a), &Scalar::int(b)))
        .collect();
    let samples_on_study_quadric = samples.iter().all(DualQuaternion::study_condition);
    let quadric_span = Subspace::span_dq(&samples);
    let quadric_not_contained = !u.contains_subspace(&quadric_span);
    Ok(Example2Report {
        m1_s1_null_in_eps_h,
        n1_s1_conjugate_null_pair,
        quadric_not_contained,
        samples_on_study_quadric,
    })
}

pub fn example2_checks() -> Result<Example2Report> {
    example2_checks_with(&example2_s1())
}
