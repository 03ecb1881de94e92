//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tripod_core::curves::{FourierCurve, RadialChart, RadialCurve, TrigSeries};
use tripod_core::io::{ConfigurationRecord, RecordSource, ResultDocument};
use tripod_core::morse::{
    analyze, expected_boundary_index, find_diameters, hyperbolic_minor_checks, MinorCase, MorseAnalysis,
    SearchOptions, TripodSpace,
};
use tripod_core::polygon::enumerate_regular;
use tripod_core::triple_normal::{solve_triple_normal, tau_center, Triangle};
use tripod_core::tripod_euclidean::{
    delta_curve_test, enumerate_classes, equidistant_invariance_check, find_tripods, tripod_lower_bound,
};
use tripod_core::{GeometryKind, SampledCurve, SupportCurve, Vec2};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn random_convex(r: &mut ChaCha8Rng) -> SupportCurve {
    loop {
        let k_max = r.gen_range(2..=6usize);
        let terms: Vec<(usize, f64, f64)> = (1..=k_max)
            .map(|k| {
                let s = 0.15 / (k * k) as f64;
                (k, r.gen_range(-s..s), r.gen_range(-s..s))
            })
            .collect();
        if let Ok(sc) = SupportCurve::from_harmonics(1.0, &terms) {
            return sc;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let (mut bad, mut continua, mut slowest, mut worst_c, mut worst_a) = (Vec::new(), 0, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..50 {
        let sc = random_convex(&mut r);
        let t = Instant::now();
        let s = match find_tripods(&sc) {
            Ok(s) => s,
            Err(e) => {
                bad.push(format!("#{i}: {e}"));
                continue;
            }
        };
        slowest = slowest.max(secs(t.elapsed()));
        if s.continuum {
            continua += 1;
            continue;
        }
        for c in &s.configurations {
            worst_c = worst_c.max(c.concurrency_residual / s.diameter);
            worst_a = worst_a.max(c.angle_residual);
        }
        let ok = s.configurations.len() >= 2
            && s.configurations
                .iter()
                .all(|c| c.concurrency_residual < 1e-7 * s.diameter && c.angle_residual < 1e-8);
        if !ok {
            bad.push(format!("#{i}: {} configurations", s.configurations.len()));
        }
    }
    outcome(
        bad.is_empty() && slowest < 1.0,
        format!(
            "50 curves, {continua} continua, max concurrency/diam {worst_c:.1e}, max angle {worst_a:.1e}, slowest {slowest:.3}s {bad:?}"
        ),
    )
}

/// Orbits of triples with residues {0, 1, 2} mod 3 under translation in
/// Z/3n, counted by minimal sorted representative.
fn orbit_count(n: usize) -> usize {
    let m = 3 * n;
    let mut reps = BTreeSet::new();
    for a in (0..m).step_by(3) {
        for b in (1..m).step_by(3) {
            for c in (2..m).step_by(3) {
                let rep = (0..m)
                    .map(|s| {
                        let mut t = [(a + s) % m, (b + s) % m, (c + s) % m];
                        t.sort();
                        t
                    })
                    .min()
                    .unwrap();
                reps.insert(rep);
            }
        }
    }
    reps.len()
}

fn criterion_2() -> Outcome {
    let mismatches: Vec<_> = (1..=10)
        .filter(|&n| enumerate_classes(n).len() != orbit_count(n))
        .collect();
    let curves = [
        SupportCurve::new(2, 1.0, vec![0.0, 0.0, 0.05, 0.0, 0.02], vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.01]),
        SupportCurve::new(3, 1.0, vec![0.3, 0.1, 0.0, 0.05], vec![0.0, 0.05, 0.0, 0.0, 0.03]),
    ];
    let mut found = Vec::new();
    let mut ok = mismatches.is_empty();
    for c in curves {
        let sc = match c {
            Ok(sc) => sc,
            Err(e) => return outcome(false, format!("test curve rejected: {e}")),
        };
        let t = Instant::now();
        match find_tripods(&sc) {
            Ok(s) => {
                let certified = s.configurations.iter().filter(|c| c.passes(s.diameter)).count();
                let need = tripod_lower_bound(sc.rotation_index);
                ok &= !s.continuum && certified >= need && secs(t.elapsed()) < 5.0;
                found.push(format!("n={}: {certified}/{need} in {:.2}s", sc.rotation_index, secs(t.elapsed())));
            }
            Err(e) => {
                ok = false;
                found.push(e.to_string());
            }
        }
    }
    outcome(
        ok,
        format!("class counts n=1..10 mismatches {mismatches:?}; {}", found.join(", ")),
    )
}

fn sampled(model: impl tripod_core::CurveModel + 'static) -> SampledCurve {
    SampledCurve::new(Arc::new(model), GeometryKind::Euclidean).expect("sampled curve")
}

fn from_points(f: impl Fn(f64) -> Vec2) -> FourierCurve {
    let pts: Vec<Vec2> = (0..256).map(|i| f(TAU * i as f64 / 256.0)).collect();
    FourierCurve::from_samples(&pts, None).expect("band-limited curve")
}

fn non_convex_curves(r: &mut ChaCha8Rng) -> Vec<SampledCurve> {
    let mut out = Vec::new();
    for _ in 0..4 {
        let b = 1.0;
        let a = r.gen_range(1.3..2.2);
        let rot = r.gen_range(0.0..TAU);
        let c = from_points(move |t| {
            let rho = b + a * t.cos();
            let (s, co) = (t + rot).sin_cos();
            Vec2::new(rho * co, rho * s)
        });
        out.push(sampled(c));
    }
    for _ in 0..3 {
        let c1 = r.gen_range(0.6..0.9);
        let (c2, ph) = (r.gen_range(0.02..0.08), r.gen_range(0.0..TAU));
        let c = from_points(move |t| {
            Vec2::new(t.cos(), t.sin())
                + c1 * Vec2::new((-2.0 * t).cos(), (-2.0 * t).sin())
                + c2 * Vec2::new((3.0 * t + ph).cos(), (3.0 * t + ph).sin())
        });
        out.push(sampled(c));
    }
    for _ in 0..3 {
        let k = r.gen_range(3..=5) as f64;
        let amp = r.gen_range(0.2..0.3);
        let (a2, ph) = (r.gen_range(0.0..0.05), r.gen_range(0.0..TAU));
        let c = from_points(move |t| {
            let rho = 1.0 + amp * (k * t).cos() + a2 * (2.0 * t + ph).cos();
            Vec2::new(rho * t.cos(), rho * t.sin())
        });
        out.push(sampled(c));
    }
    out
}

fn random_angles(r: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let a = r.gen_range(0.3..PI - 0.3);
        let b = r.gen_range(0.3..PI - 0.3);
        let c = TAU - a - b;
        if c > 0.3 && c < PI - 0.3 {
            return [a, b, c];
        }
    }
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let convex: Vec<SampledCurve> = (0..10).map(|_| sampled(random_convex(&mut r))).collect();
    let immersed = non_convex_curves(&mut r);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, c) in convex.iter().chain(&immersed).enumerate() {
        for _ in 0..5 {
            let thetas = random_angles(&mut r);
            let hit = solve_triple_normal(c, thetas, None).map(|rs| {
                rs.iter()
                    .filter(|x| x.certified())
                    .map(|x| {
                        (0..3)
                            .map(|j| (x.achieved_angles[j] - thetas[j]).abs())
                            .fold(0.0, f64::max)
                    })
                    .fold(f64::INFINITY, f64::min)
            });
            match hit {
                Ok(d) if d < 1e-7 => worst = worst.max(d),
                Ok(d) => failures.push(format!("curve {i} angles {thetas:.3?}: best {d:.1e}")),
                Err(e) => failures.push(format!("curve {i}: {e}")),
            }
        }
    }
    let third = TAU / 3.0;
    let mut tripods = Vec::new();
    for (i, c) in immersed.iter().enumerate() {
        let n = solve_triple_normal(c, [third; 3], None)
            .map(|rs| rs.iter().filter(|x| x.certified()).count())
            .unwrap_or(0);
        if n == 0 {
            failures.push(format!("immersed curve {i}: no tripod"));
        }
        tripods.push(n);
    }
    outcome(
        failures.is_empty(),
        format!("100 solves, worst angle error {worst:.1e}; tripods on immersed curves {tripods:?} {failures:?}"),
    )
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let (mut worst, mut done) = (0.0f64, 0);
    let mut errors = Vec::new();
    while done < 1000 {
        let mut v = || Vec2::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let t = match Triangle::new(v(), v(), v()) {
            Ok(t) if t.area() > 1e-2 => t,
            _ => continue,
        };
        let (a, b) = (r.gen_range(0.05..PI - 0.1), r.gen_range(0.05..PI - 0.1));
        if a + b > PI - 0.05 {
            continue;
        }
        match tau_center(&t, [a, b, PI - a - b]) {
            Ok(c) => worst = worst.max(c.circle_residual),
            Err(e) => errors.push(e.to_string()),
        }
        done += 1;
    }
    outcome(
        worst < 1e-9 && errors.is_empty(),
        format!("1000 instances, max third-circle residual {worst:.1e} {errors:?}"),
    )
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for radius in [0.3f64, 0.5, 0.7] {
        let s = radius * radius + 1.0;
        let closed = [-3.0 * radius / s, 2.0 * radius * radius / (s * s), -radius.powi(3) / s.powi(3)];
        let one = match hyperbolic_minor_checks(radius, MinorCase::One) {
            Ok(x) => x,
            Err(e) => return outcome(false, e.to_string()),
        };
        let worst = one
            .minors
            .iter()
            .zip(closed)
            .map(|(m, c)| ((m.computed - c) / c).abs())
            .fold(0.0, f64::max);
        let flips = one.m4.sign_positive_d == one.m4.expected_sign_positive_d
            && one.m4.sign_negative_d == -one.m4.expected_sign_positive_d;
        let two = match hyperbolic_minor_checks(radius, MinorCase::Two) {
            Ok(x) => x,
            Err(e) => return outcome(false, e.to_string()),
        };
        let limits = two.m4.scaled_limit.signum() == two.m4.published_limit.signum()
            && two.m4.sign_positive_d == -two.m4.sign_negative_d;
        ok &= worst < 1e-4 && flips && one.passed && two.passed && limits;
        notes.push(format!("R={radius}: rel {worst:.1e}, case two passed {}", two.passed));
    }
    let elapsed = secs(t.elapsed());
    outcome(ok && elapsed < 10.0, format!("{} in {elapsed:.3}s", notes.join("; ")))
}

fn near_circles() -> Vec<(String, SampledCurve)> {
    let mut r = rng(7);
    let mut out = Vec::new();
    for (chart, g, lo, hi) in [
        (RadialChart::Sphere, GeometryKind::Spherical, 0.4, 0.9),
        (RadialChart::Disk, GeometryKind::HyperbolicDisk, 0.3, 0.6),
    ] {
        for _ in 0..10 {
            let radius = r.gen_range(lo..hi);
            let k = r.gen_range(2..=4usize);
            // relative curvature variation of a few percent
            let amp = radius * r.gen_range(0.02..0.08) / (k * k) as f64;
            let phase = r.gen_range(0.0..TAU);
            let m = RadialCurve::circle(chart, radius)
                .with_harmonic(k, amp, phase)
                .with_harmonic(k + 1, amp / 8.0, 0.0);
            let name = format!("{} r={radius:.3} k={k} a={amp:.4}", g.name());
            out.push((name, SampledCurve::new(Arc::new(m), g).expect("near circle")));
        }
    }
    out
}

type Analyses = Vec<(String, GeometryKind, Result<MorseAnalysis, String>, f64)>;

fn run_analyses() -> Analyses {
    near_circles()
        .into_iter()
        .map(|(name, c)| {
            let t = Instant::now();
            let a = analyze(&c, &SearchOptions::default()).map_err(|e| e.to_string());
            (name, c.geometry(), a, secs(t.elapsed()))
        })
        .collect()
}

fn criterion_6(runs: &Analyses) -> Outcome {
    let (mut checked, mut agree) = (0, 0);
    let mut per_geometry = [0usize; 2];
    let mut issues = Vec::new();
    for (name, g, a, _) in runs {
        let Ok(a) = a else {
            issues.push(format!("{name}: failed"));
            continue;
        };
        if a.boundary.is_empty() {
            issues.push(format!("{name}: no boundary critical points {:?}", a.diagnostics));
            continue;
        }
        per_geometry[usize::from(*g == GeometryKind::HyperbolicDisk)] += 1;
        for b in &a.boundary {
            checked += 1;
            let expected = expected_boundary_index(b.case, b.orientation_sign);
            if expected == Some(b.point.morse_index) && b.matches_table {
                agree += 1;
            }
        }
    }
    outcome(
        checked > 0 && agree == checked && per_geometry.iter().all(|&n| n >= 5),
        format!(
            "{agree}/{checked} boundary indices agree on {} spherical and {} hyperbolic curves {issues:?}",
            per_geometry[0], per_geometry[1]
        ),
    )
}

fn criterion_7(runs: &Analyses) -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    let mut slowest: f64 = 0.0;
    for (name, _, a, t) in runs {
        slowest = slowest.max(*t);
        match a {
            Ok(a) => {
                let n = a.interior.critical_points.len();
                counts.push(n);
                if a.continuum() || n < 2 || !a.polynomials.holds() || *t >= 60.0 {
                    failures.push(format!("{name}: {n} points, identity {}", a.polynomials.holds()));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!("orbits per curve {counts:?}, slowest {slowest:.2}s {failures:?}"),
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=30 {
        let expected = if n % 3 == 0 { n / 3 } else { n };
        match enumerate_regular(n) {
            Ok(v) if v.len() == expected && v.iter().all(|t| t.passes()) => {}
            Ok(v) => bad.push(format!("n={n}: {} of {expected}", v.len())),
            Err(e) => bad.push(format!("n={n}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("n = 3..30 {bad:?}"))
}

fn gradient_check(r: &mut ChaCha8Rng) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for (chart, g) in [
        (RadialChart::Plane, GeometryKind::Euclidean),
        (RadialChart::Sphere, GeometryKind::Spherical),
        (RadialChart::Disk, GeometryKind::HyperbolicDisk),
    ] {
        let m = RadialCurve::circle(chart, 0.5).with_harmonic(3, 0.004, r.gen_range(0.0..TAU));
        let c = SampledCurve::new(Arc::new(m), g).map_err(|e| e.to_string())?;
        let space = TripodSpace::new(&c, None).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let x = [
                r.gen_range(0.0..TAU),
                r.gen_range(0.0..TAU),
                r.gen_range(0.0..TAU),
                r.gen_range(-0.2..0.2),
                r.gen_range(-0.2..0.2),
            ];
            let point = |x: &[f64; 5]| space.point(x[0], x[1], x[2], Vec2::new(x[3], x[4]));
            let grad = space.gradient(&point(&x)).map_err(|e| e.to_string())?;
            let h = 1e-5;
            let mut err: f64 = 0.0;
            let norm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
            for i in 0..5 {
                let (mut xp, mut xm) = (x, x);
                xp[i] += h;
                xm[i] -= h;
                let fp = space.value(&point(&xp)).map_err(|e| e.to_string())?;
                let fm = space.value(&point(&xm)).map_err(|e| e.to_string())?;
                err = err.max(((fp - fm) / (2.0 * h) - grad[i]).abs());
            }
            worst = worst.max(err / norm);
        }
    }
    Ok(worst)
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut ok = true;
    let mut notes = Vec::new();

    match gradient_check(&mut r) {
        Ok(w) => {
            ok &= w < 1e-5;
            notes.push(format!("gradient rel {w:.1e}"));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("gradient: {e}"));
        }
    }

    let mut invariant = 0;
    for _ in 0..10 {
        let sc = random_convex(&mut r);
        if equidistant_invariance_check(&sc, r.gen_range(0.05..0.5)).unwrap_or(false) {
            invariant += 1;
        }
    }
    ok &= invariant == 10;
    notes.push(format!("equidistant {invariant}/10"));

    let mut delta_ok = 0;
    for _ in 0..5 {
        let rotor = SupportCurve::from_harmonics(
            1.0,
            &[(2, r.gen_range(-0.05..0.05), r.gen_range(-0.05..0.05)), (4, r.gen_range(-0.01..0.01), 0.0)],
        );
        let broken = SupportCurve::from_harmonics(1.0, &[(2, 0.03, 0.0), (3, r.gen_range(0.01..0.05), 0.0)]);
        if let (Ok(a), Ok(b)) = (rotor, broken) {
            if delta_curve_test(&a) == Ok(true) && delta_curve_test(&b) == Ok(false) {
                delta_ok += 1;
            }
        }
    }
    ok &= delta_ok == 5;
    notes.push(format!("delta {delta_ok}/5"));

    let mut paired = 0;
    for (chart, g) in [
        (RadialChart::Plane, GeometryKind::Euclidean),
        (RadialChart::Sphere, GeometryKind::Spherical),
        (RadialChart::Disk, GeometryKind::HyperbolicDisk),
    ] {
        for _ in 0..3 {
            let m = RadialCurve::circle(chart, 0.5)
                .with_harmonic(r.gen_range(2..=4), r.gen_range(0.002..0.006), r.gen_range(0.0..TAU));
            let good = SampledCurve::new(Arc::new(m), g)
                .and_then(|c| find_diameters(&c))
                .map(|d| !d.continuum && d.paired() && !d.diameters.is_empty())
                .unwrap_or(false);
            paired += usize::from(good);
        }
    }
    ok &= paired == 9;
    notes.push(format!("diameters paired {paired}/9"));

    let mut roundtrip: f64 = 0.0;
    for _ in 0..5 {
        let series = |r: &mut ChaCha8Rng| TrigSeries {
            c0: r.gen_range(-1.0..1.0),
            cos: (0..6).map(|_| r.gen_range(-0.3..0.3)).collect(),
            sin: (0..6).map(|_| r.gen_range(-0.3..0.3)).collect(),
        };
        let c = FourierCurve {
            x: series(&mut r),
            y: series(&mut r),
        };
        let pts: Vec<Vec2> = (0..64).map(|i| tripod_core::CurveModel::point(&c, TAU * i as f64 / 64.0)).collect();
        if let Ok(fit) = FourierCurve::from_samples(&pts, Some(6)) {
            let coeffs = |f: &FourierCurve| -> Vec<f64> {
                [&f.x, &f.y]
                    .iter()
                    .flat_map(|s| std::iter::once(s.c0).chain(s.cos.iter().copied()).chain(s.sin.iter().copied()))
                    .collect()
            };
            for (a, b) in coeffs(&c).iter().zip(coeffs(&fit)) {
                roundtrip = roundtrip.max((a - b).abs());
            }
        } else {
            roundtrip = f64::INFINITY;
        }
        let p = Vec2::new(r.gen_range(-0.9..0.9), r.gen_range(-0.9..0.9));
        let back = GeometryKind::from_sphere(GeometryKind::to_sphere(p));
        roundtrip = roundtrip.max((back - p).norm());
    }
    ok &= roundtrip < 1e-12;
    notes.push(format!("fourier/sphere round trip {roundtrip:.1e}"));

    let sc = random_convex(&mut r);
    let doc_ok = find_tripods(&sc)
        .map_err(|e| e.to_string())
        .and_then(|s| {
            let mut doc = ResultDocument::new("find-tripods");
            doc.geometry = Some(GeometryKind::Euclidean);
            for c in &s.configurations {
                doc.configurations
                    .push(ConfigurationRecord::from_tripod(c, RecordSource::SupportFunction, s.diameter).map_err(|e| e.to_string())?);
            }
            let text = doc.to_json().map_err(|e| e.to_string())?;
            let back = ResultDocument::from_json(&text).map_err(|e| e.to_string())?;
            let again = back.to_json().map_err(|e| e.to_string())?;
            Ok(back == doc && again == text && back.recertify().map(|x| x.ok).unwrap_or(false))
        })
        .unwrap_or(false);
    ok &= doc_ok;
    notes.push(format!("document round trip {doc_ok}"));

    outcome(ok, notes.join(", "))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "convex existence", criterion_1()),
        (2, "class-count bound", criterion_2()),
        (3, "triple normal intersection", criterion_3()),
        (4, "tau-center concurrency", criterion_4()),
        (5, "hyperbolic minors", criterion_5()),
    ];
    let runs = run_analyses();
    results.push((6, "boundary index table", criterion_6(&runs)));
    results.push((7, "near-circle existence", criterion_7(&runs)));
    results.push((8, "polygon counts", criterion_8()));
    results.push((9, "property suites", criterion_9()));

    let mut failed = 0;
    for (n, title, o) in &results {
        println!("criterion {n} [{title}]: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        secs(start.elapsed())
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
