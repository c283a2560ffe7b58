//! Acceptance suite: each criterion prints one PASS/FAIL line with its
//! running time; the process exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use dqkin::dyads::{example2_checks, DyadKind};
use dqkin::motions::sample_points;
use dqkin::projgeom::{chi_matrix, chi_subspace};
use dqkin::quadreconstruct::reconstruct_with_basis;
use dqkin::{
    build_variety, c_space_from_line, classify, common_lines, darboux, darboux_invariants, factor_transform,
    fiber_projectivity, mannheim, null_cone, null_quadrilateral, reconstruct_quadrilateral, run_cycle,
    study_quadric, trajectory, verify_admissible, DualQuaternion, Handedness, MotionPoly, ProjPoint, Quaternion,
    Scalar, Subspace, Verdict,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pt(q: &DualQuaternion) -> ProjPoint {
    ProjPoint::from_dq(q).expect("nonzero")
}

fn trajectory_degrees() -> Outcome {
    let mut r = rng(1);
    for _ in 0..10 {
        let (a, b, c) = (nonzero_rat(&mut r), nonzero_rat(&mut r), nonzero_rat(&mut r));
        let motions = [(darboux(&a, &b, &c), 2), (mannheim(&a, &b, &c), 4)];
        for _ in 0..5 {
            let x = point4(&mut r);
            for (m, want) in &motions {
                let tr = trajectory(m, &x).map_err(|e| e.to_string())?;
                ensure(tr.degree == *want, || {
                    format!("({a},{b},{c}) at {x}: degree {} instead of {want}", tr.degree)
                })?;
                // the reduced curve still passes through the acted points
                for t in [Scalar::int(0), Scalar::ratio(1, 3), Scalar::int(-2)] {
                    let direct = dqkin::act(&m.eval(&t), &x).map_err(|e| e.to_string())?;
                    ensure(tr.point(&t) == Some(direct), || format!("trajectory mismatch at t = {t}"))?;
                }
            }
        }
    }
    Ok(())
}

fn classifier_soundness() -> Outcome {
    let mut r = rng(2);
    for kind in DyadKind::ALL {
        for n in 0..100 {
            let spec = dyad_spec(&mut r, kind);
            let v = build_variety(&spec).map_err(|e| e.to_string())?;
            let got = classify(&v.space).map_err(|e| e.to_string())?.verdict;
            ensure(got.kind() == Some(kind), || format!("{} #{n}: classified as {}", kind.as_str(), got.as_str()))?;
            if kind == DyadKind::RP {
                let swapped = classify(&chi_subspace(&v.space)).map_err(|e| e.to_string())?.verdict;
                ensure(swapped == Verdict::PR, || format!("RP #{n}: chi image classified as {}", swapped.as_str()))?;
            }
        }
    }
    Ok(())
}

fn two_r_quadrilateral() -> Outcome {
    let h1 = DualQuaternion::real(Quaternion::unit_k());
    let h2 = DualQuaternion::new(Quaternion::unit_i(), Quaternion::unit_k());
    let u = Subspace::span_dq(&[DualQuaternion::one(), h1.clone(), h2.clone(), &h1 * &h2]);
    let set = common_lines(&study_quadric().restrict(&u), &null_cone().restrict(&u)).map_err(|e| e.to_string())?;
    let found: Vec<Subspace> = set.lines.iter().map(|l| u.lift(l)).collect();
    let mut expected = Vec::new();
    for t in [Scalar::i(), -Scalar::i()] {
        let t = DualQuaternion::scalar(t);
        // t1 fixed: (t - h1)(s - h2) sweeps the span of (t - h1) and (t - h1) h2
        let a = &t - &h1;
        expected.push(Subspace::span_dq(&[a.clone(), &a * &h2]));
        let b = &t - &h2;
        expected.push(Subspace::span_dq(&[b.clone(), &h1 * &b]));
    }
    ensure(set.exact, || "lines not exact".into())?;
    ensure(found.len() == 4, || format!("{} lines found", found.len()))?;
    ensure(expected.iter().all(|e| found.contains(e)), || "line sets differ".into())?;
    ensure(null_quadrilateral(&found).is_some(), || "lines do not close up".into())
}

fn transform_round_trip() -> Outcome {
    let mut r = rng(4);
    for n in 0..100 {
        let (l, rr) = (displacement(&mut r), displacement(&mut r));
        let t = dqkin::build_transform(&l, &rr).map_err(|e| e.to_string())?;
        let rep = verify_admissible(&t.matrix).map_err(|e| e.to_string())?;
        ensure(rep.overall && rep.pencil_fixed && rep.shape_ok && rep.rulings_preserved, || {
            format!("#{n}: {rep}")
        })?;
        let (fl, fr) = factor_transform(&t.matrix).map_err(|e| e.to_string())?;
        ensure(pt(&fl) == pt(&l) && pt(&fr) == pt(&rr), || format!("#{n}: factors not recovered"))?;
    }
    let chi = verify_admissible(&chi_matrix()).map_err(|e| e.to_string())?;
    ensure(chi.pencil_fixed && chi.shape_ok && !chi.rulings_preserved && !chi.overall, || {
        format!("chi: {chi}")
    })
}

fn cylinder_from_lines() -> Outcome {
    let mut r = rng(5);
    let mut exact = 0;
    for n in 0..50 {
        let l = if n < 25 { exact_line(&mut r) } else { generic_line(&mut r) };
        let rep = c_space_from_line(&l).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::C, || format!("line #{n}: verdict {}", rep.verdict.as_str()))?;
        ensure(rep.all_memberships() && rep.space_matches, || {
            format!("line #{n}: memberships {:?}, space {}", rep.memberships, rep.space_matches)
        })?;
        if rep.exact {
            exact += 1;
        }
        let m = MotionPoly::line(&l).map_err(|e| e.to_string())?;
        for x in sample_points() {
            let d = trajectory(&m, &x).map_err(|e| e.to_string())?.degree;
            ensure(d <= 2, || format!("line #{n}: trajectory degree {d}"))?;
        }
    }
    ensure(exact >= 10, || format!("only {exact} exact instances"))
}

fn example2() -> Outcome {
    let rep = example2_checks().map_err(|e| e.to_string())?;
    ensure(rep.all(), || format!("{rep:?}"))
}

fn cycle_identity() -> Outcome {
    let mut r = rng(7);
    for n in 0..50 {
        let c = projection_cycle(&mut r);
        for _ in 0..20 {
            let start = cycle_start(&mut r, &c);
            let out = run_cycle(&c, &start).map_err(|e| e.to_string())?;
            ensure(out[3] == start, || format!("cycle #{n}: {} returned {}", start, out[3]))?;
        }
    }
    Ok(())
}

fn reconstruction_uniqueness() -> Outcome {
    let mut r = rng(8);
    for n in 0..20 {
        let fp = forward_problem(&mut r);
        let rec = reconstruct_quadrilateral(&fp.problem).map_err(|e| e.to_string())?;
        ensure(rec.vertices == fp.quadrilateral, || format!("problem #{n}: different quadrilateral"))?;
        ensure(rec.verified(), || format!("problem #{n}: postconditions fail"))?;
        // re-solve in another basis of E
        let old = fp.problem.cycle.e.basis_vectors();
        let basis: Vec<Vec<Scalar>> = (0..4)
            .map(|i| {
                (0..8)
                    .map(|j| (0..4).map(|k| if k <= i { &old[k][j] * &Scalar::int((i + k + 1) as i64) } else { Scalar::zero() }).sum())
                    .collect()
            })
            .collect();
        let again = reconstruct_with_basis(&fp.problem, &basis).map_err(|e| e.to_string())?;
        ensure(again.vertices == rec.vertices, || format!("problem #{n}: basis change disagrees"))?;
    }
    Ok(())
}

fn darboux_invariant_points() -> Outcome {
    let mut r = rng(9);
    for n in 0..10 {
        let (a, b, c) = (nonzero_rat(&mut r), rat(&mut r), rat(&mut r));
        let rep = darboux_invariants(&a, &b, &c).map_err(|e| e.to_string())?;
        let p = Quaternion::new(-&b, a.clone(), Scalar::zero(), c.clone());
        let pd = DualQuaternion::real(p);
        ensure(!rep.curve.d.is_empty() && rep.curve.d.len() == rep.curve.f.len(), || {
            format!("#{n}: {} d points, {} f points", rep.curve.d.len(), rep.curve.f.len())
        })?;
        for (d, f) in rep.curve.d.iter().zip(&rep.curve.f) {
            ensure(pt(d) == pt(&(&pd * f)), || format!("#{n}: d != p f"))?;
        }
        ensure(rep.handedness == Handedness::LeftRuling, || format!("#{n}: {}", rep.handedness.as_str()))?;
    }
    for n in 0..10 {
        let (b, c) = (nonzero_rat(&mut r), rat(&mut r));
        let rep = darboux_invariants(&Scalar::zero(), &b, &c).map_err(|e| e.to_string())?;
        ensure(!rep.curve.d.is_empty(), || format!("a = 0 #{n}: no points"))?;
        for (d, f) in rep.curve.d.iter().zip(&rep.curve.f) {
            ensure(pt(d) == pt(f), || format!("a = 0 #{n}: d != f"))?;
        }
    }
    Ok(())
}

fn fiber_equivariance() -> Outcome {
    let mut r = rng(10);
    let e = Subspace::eps_h();
    let mut n = 0;
    while n < 100 {
        let t = transform(&mut r);
        let x = point8(&mut r);
        if e.contains(&x) {
            continue;
        }
        let lhs = t.apply(&fiber_projectivity(&x).map_err(|e| e.to_string())?);
        let rhs = fiber_projectivity(&t.apply(&x)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("#{n}: {lhs} != {rhs}"))?;
        n += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("trajectory degrees of Darboux and Mannheim motions", trajectory_degrees, 5),
        ("classifier soundness and chi swap", classifier_soundness, 60),
        ("2R null quadrilateral", two_r_quadrilateral, 60),
        ("transformation round trip", transform_round_trip, 60),
        ("cylinder spaces from lines", cylinder_from_lines, 60),
        ("fixed conjugate null line example", example2, 60),
        ("projection cycle identity", cycle_identity, 60),
        ("quadrilateral reconstruction", reconstruction_uniqueness, 60),
        ("Darboux invariants", darboux_invariant_points, 60),
        ("fiber projectivity equivariance", fiber_equivariance, 60),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(k + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(took <= Duration::from_secs(*limit), || format!("took {took:.2?}, limit {limit} s"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} {name} ... PASS ({took:.2?}, limit {limit} s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name} ... FAIL ({took:.2?}): {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
