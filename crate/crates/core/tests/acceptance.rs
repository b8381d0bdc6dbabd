//! Acceptance criteria, one PASS/FAIL line each. Lines go straight to the
//! stdout handle so they show up without `--nocapture`.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use aurum_core::approx::{self, ApproxResult, MirrorSet, DEFAULT_MAX_ITER};
use aurum_core::golden::DyadicGolden;
use aurum_core::group::{self, SigmaNormalForm};
use aurum_core::quaternion::{self, QuatR};
use aurum_core::roots::{self, Dimension, Filtration, Side};
use aurum_core::verify::{self, Status, Suite, REFERENCE_TARGET, TARGET_COUNT, TARGET_SEED};
use aurum_core::sample;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn report(n: u32, title: &str, started: Instant, outcome: &Outcome) {
    let (tag, detail) = match outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let line = format!("[{tag}] criterion {n}: {title} ({detail}; {:.2?})\n", started.elapsed());
    std::io::stdout().write_all(line.as_bytes()).unwrap();
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    if t.elapsed() <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2?}, limit {limit:?}", t.elapsed()))
    }
}

fn root_counts() -> Outcome {
    let t = Instant::now();
    let delta = roots::gen_delta(Dimension::Four, false);
    let unit = delta.iter().filter(|x| x.coords().iter().filter(|c| !c.is_zero()).count() == 1).count();
    let half = DyadicGolden::half();
    let halves = delta.iter().filter(|x| x.coords().iter().all(|c| *c == half || -c == half)).count();
    let strata = (unit, halves, roots::dot_delta(Dimension::Four, false).len());
    let k = roots::k_roots().len();
    let d3 = roots::gen_delta(Dimension::Three, false).len();
    within(t, Duration::from_secs(1))?;
    let got = format!("|Delta| = {} = {}+{}+{}, |K| = {k}, |Delta[3]| = {d3}", delta.len(), strata.0, strata.1, strata.2);
    if delta.len() == 120 && strata == (8, 16, 96) && k == 24 && d3 == 30 {
        Ok(got)
    } else {
        Err(got)
    }
}

fn filtration_counts() -> (Outcome, Option<Filtration>) {
    let t = Instant::now();
    let f4 = match Filtration::generate(3, Dimension::Four, 3) {
        Ok(f) => f,
        Err(e) => return (Err(e.to_string()), None),
    };
    let gen_time = t.elapsed();
    let f3 = match Filtration::generate(5, Dimension::Three, 5) {
        Ok(f) => f,
        Err(e) => return (Err(e.to_string()), Some(f4)),
    };
    let mut bad = Vec::new();
    for n in 1..=3u32 {
        let want = 3 << (4 * n + 1);
        for side in [Side::Dot, Side::DotPrime] {
            if f4.cardinality(n, side) != want {
                bad.push(format!("|S_{n}| {side:?} = {}", f4.cardinality(n, side)));
            }
        }
    }
    for n in 1..=5u32 {
        let want = 3 << (2 * n + 1);
        for side in [Side::Dot, Side::DotPrime] {
            if f3.cardinality(n, side) != want {
                bad.push(format!("|S_{n}[3]| {side:?} = {}", f3.cardinality(n, side)));
            }
        }
    }
    let outcome = if !bad.is_empty() {
        Err(bad.join(", "))
    } else if gen_time > Duration::from_secs(60) {
        Err(format!("4D level 3 took {gen_time:.2?}"))
    } else {
        Ok(format!("96/1536/24576 and 24/96/384/1536/6144; 4D level 3 in {gen_time:.2?}"))
    };
    (outcome, Some(f4))
}

fn mirror_count(f: &Filtration) -> Outcome {
    // count sign classes directly from the union, independently of MirrorSet
    let classes: HashSet<QuatR> = f.union_up_to(3).iter().map(QuatR::oriented).collect();
    let signed = 2 * classes.len();
    let m = MirrorSet::build(f, 3).map_err(|e| e.to_string())?;
    if signed == 52416 && m.signed_count() == 52416 {
        Ok("|U_3| = 52416 = 2*3*(2^5 + 2^9 + 2^13)".into())
    } else {
        Err(format!("{signed} sign-class count, {} oriented", m.signed_count()))
    }
}

fn structural_suite() -> Outcome {
    let t = Instant::now();
    let wanted = [
        "isotropy",
        "trichotomy",
        "level-shift",
        "three-droppers",
        "delta-closure",
        "EE/2=E",
        "4CC'-table",
        "relation-s",
        "gamma",
    ];
    let mut checks = verify::run(Suite::Roots).checks;
    checks.extend(verify::run(Suite::Group).checks);
    let picked: Vec<_> = checks.iter().filter(|c| wanted.contains(&c.id.as_str())).collect();
    if picked.len() != wanted.len() {
        return Err(format!("{} of {} checks found", picked.len(), wanted.len()));
    }
    if let Some(c) = picked.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("{} failed: {}", c.id, c.counterexample.clone().unwrap_or_default()));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{} exhaustive checks", picked.len()))
}

fn normal_form_round_trip() -> Outcome {
    let mut rng = sample::rng(5);
    let forms: Vec<SigmaNormalForm> = (0..100_000).map(|i| group::random_normal_form(&mut rng, i % 9)).collect();
    let results: Vec<Result<QuatR, String>> = forms
        .par_iter()
        .map(|form| {
            let x = form.evaluate();
            let back = group::decompose(&x).map_err(|e| format!("{x}: {e}"))?;
            if &back != form || back.evaluate() != x {
                return Err(format!("{x} does not round-trip"));
            }
            Ok(x)
        })
        .collect();
    let values = results.into_iter().collect::<Result<Vec<QuatR>, String>>()?;
    let distinct_forms: HashSet<&SigmaNormalForm> = forms.iter().collect();
    let distinct_values: HashSet<&QuatR> = values.iter().collect();
    if distinct_forms.len() != distinct_values.len() {
        return Err(format!("{} distinct forms but {} distinct elements", distinct_forms.len(), distinct_values.len()));
    }
    Ok(format!("100000 forms, {} distinct, no collisions", distinct_forms.len()))
}

struct Approximations {
    reference: ApproxResult,
    random: Vec<ApproxResult>,
}

fn approximation(m: &MirrorSet) -> (Outcome, Option<Approximations>) {
    let t = Instant::now();
    let run = || -> Result<Approximations, String> {
        let reference = approx::approximate(&REFERENCE_TARGET, m, DEFAULT_MAX_ITER).map_err(|e| e.to_string())?;
        let random = sample::haar_quaternions(TARGET_COUNT, TARGET_SEED)
            .iter()
            .map(|x| approx::approximate(x, m, DEFAULT_MAX_ITER))
            .collect::<aurum_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        Ok(Approximations { reference, random })
    };
    let a = match run() {
        Ok(a) => a,
        Err(e) => return (Err(e), None),
    };
    let check = || -> Outcome {
        let entries = a.reference.residual_matrix().map_err(|e| e.to_string())?.max_abs();
        let len = a.reference.word.len();
        if !a.reference.converged || entries > 2e-2 || len > 12 {
            return Err(format!("reference target: entries {entries:.3e}, {len} mirrors"));
        }
        let converged = a.random.iter().filter(|r| r.converged && r.iterations <= DEFAULT_MAX_ITER).count();
        // certify the final points independently of the descent's own test
        let floats: Vec<[f64; 4]> = m.roots.iter().map(|r| r.to_f64().unwrap()).collect();
        let certified = a
            .random
            .iter()
            .filter(|r| floats.iter().all(|f| sample::dot(f, &r.final_point) <= 1e-12))
            .count();
        let residuals: Vec<f64> = a.random.iter().map(|r| r.residual).collect();
        let median = verify::median(&residuals);
        within(t, Duration::from_secs(120))?;
        let detail = format!(
            "reference: {len} mirrors, entries {entries:.2e}; random: {converged}/100 converged, {certified}/100 certified, median {median:.3e}"
        );
        if converged == 100 && certified == 100 && median <= 1e-2 {
            Ok(detail)
        } else {
            Err(detail)
        }
    };
    (check(), Some(a))
}

fn exactness(f: &Filtration, a: &Approximations) -> Outcome {
    let mut count = 0;
    for r in std::iter::once(&a.reference).chain(&a.random) {
        let q = &r.approximant;
        if !q.norm_sq().is_one() {
            return Err(format!("{q} has norm^2 {}", q.norm_sq()));
        }
        let mat = quaternion::to_su2(q).map_err(|e| e.to_string())?;
        if mat.adjoint().mul(&mat) != quaternion::ExactSu2::identity() {
            return Err(format!("M^dagger M != I for {q}"));
        }
        let rev: Vec<QuatR> = r.word.iter().rev().cloned().collect();
        if quaternion::apply_word(&rev, &QuatR::one()).map_err(|e| e.to_string())? != *q {
            return Err(format!("mirror word does not evaluate to {q}"));
        }
        let expanded = approx::expand_word(&r.word, f).map_err(|e| e.to_string())?;
        let rev: Vec<QuatR> = expanded.iter().rev().cloned().collect();
        if quaternion::apply_word(&rev, &QuatR::one()).map_err(|e| e.to_string())? != *q {
            return Err(format!("expanded word does not evaluate to {q}"));
        }
        if !approx::same_action(&expanded, &r.word).map_err(|e| e.to_string())? {
            return Err("expanded word acts differently".into());
        }
        count += 1;
    }
    Ok(format!("{count} approximants exact, unitary, expansion-invariant"))
}

fn monotone(f: &Filtration) -> Outcome {
    let maxima = (1..=3)
        .map(|n| {
            let m = MirrorSet::build(f, n).map_err(|e| e.to_string())?;
            Ok(verify::target_residuals(&m)?.into_iter().fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    let detail = format!("max residual {:.4} > {:.4} > {:.4}", maxima[0], maxima[1], maxima[2]);
    if maxima[1] < maxima[0] && maxima[2] < maxima[1] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    let mut run = |n: u32, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        report(n, title, t, &outcome);
        if outcome.is_err() {
            failed.push(n);
        }
    };

    run(1, "root counts", &mut root_counts);
    let mut filtration = None;
    run(2, "filtration cardinalities", &mut || {
        let (o, f) = filtration_counts();
        filtration = f;
        o
    });
    let f = filtration.expect("level-3 filtration");
    run(3, "mirror-set count", &mut || mirror_count(&f));
    run(4, "structural checks", &mut structural_suite);
    run(5, "normal-form round trip", &mut normal_form_round_trip);
    let m3 = MirrorSet::build(&f, 3).expect("level-3 mirrors");
    let mut approximations = None;
    run(6, "approximation reproduction", &mut || {
        let (o, a) = approximation(&m3);
        approximations = a;
        o
    });
    run(7, "exactness of deliverables", &mut || match &approximations {
        Some(a) => exactness(&f, a),
        None => Err("no approximations to check".into()),
    });
    run(8, "monotone refinement", &mut || monotone(&f));

    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
