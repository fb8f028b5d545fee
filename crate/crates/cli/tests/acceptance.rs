//! Acceptance run: one PASS/FAIL line per criterion, then a single assert.

use std::process::Command;
use std::time::Instant;

use ratcrit::bounds::theorem3_terms;
use ratcrit::verify::generate_ensemble;
use ratcrit::{
    alexander_walsh_radius, critical_points, exclusion_radius, find_roots, log_derivative,
    run_suite, theorem3_l, theorem4_threshold, Complex64, EnsembleConfig, Polynomial,
    RationalFunction, SuiteParams, TheoremId, VerificationReport, DEFAULT_MAX_ITERS, DEFAULT_TOL,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn suite(theorem: TheoremId) -> VerificationReport {
    run_suite(
        theorem,
        &EnsembleConfig::for_suite(theorem),
        &SuiteParams::default(),
    )
    .unwrap()
}

fn counts(r: &VerificationReport) -> String {
    let s = &r.summary;
    format!(
        "{} trials: {} pass, {} fail, {} skipped, {} inconclusive, min margin {:.3e}",
        s.trials, s.passed, s.failures, s.skipped, s.inconclusive, s.min_margin
    )
}

fn exclusion_family() -> (bool, String) {
    let r = suite(TheoremId::Thm1);
    let ok = r.summary.trials == 1000 && r.summary.failures == 0 && r.summary.inconclusive == 0;
    (ok, counts(&r))
}

fn tight_family() -> (bool, String) {
    let mut worst = 0.0f64;
    let mut ok = true;
    for m in 1..=6 {
        let f = RationalFunction::from_triples(&[(0.0, 0.0, m), (1.0, 0.0, 1)]).unwrap();
        let radius = exclusion_radius(&f, c(0.0, 0.0)).unwrap();
        let found = critical_points(&f, DEFAULT_TOL).unwrap();
        let m = f64::from(m);
        ok &= found.roots.len() == 1 && found.roots[0].1 == 1;
        ok &= (found.roots[0].0 - c(m / (m + 1.0), 0.0)).norm() <= 1e-9;
        let gap = (found.roots[0].0.norm() - radius).abs();
        worst = worst.max(gap);
    }
    (
        ok && worst <= 1e-9,
        format!("max |distance - radius| = {worst:.3e} over m = 1..6"),
    )
}

fn improvement() -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    for f in generate_ensemble(&EnsembleConfig::default()).unwrap() {
        for z0 in f.locations() {
            ok &= exclusion_radius(&f, z0).unwrap() >= alexander_walsh_radius(&f, z0).unwrap();
            checked += 1;
        }
    }
    let mut worst_rel = 0.0f64;
    for k in 1..=7usize {
        for (m0, r, phase) in [(1, 0.5, 0.1), (-2, 1.7, 0.37), (3, 0.05, 0.9)] {
            let center = c(0.3, -0.2);
            let mut triples = vec![(center.re, center.im, m0)];
            for j in 0..k {
                let w = center
                    + Complex64::from_polar(
                        r,
                        std::f64::consts::TAU * (j as f64 + phase) / k as f64,
                    );
                triples.push((w.re, w.im, if j % 2 == 0 { 1 + (j as i32 % 3) } else { -1 }));
            }
            let f = RationalFunction::from_triples(&triples).unwrap();
            let ours = exclusion_radius(&f, center).unwrap();
            let classical = alexander_walsh_radius(&f, center).unwrap();
            worst_rel = worst_rel.max((ours - classical).abs() / classical);
        }
    }
    let f = RationalFunction::from_triples(&[(0.0, 0.0, 1), (1.0, 0.0, 1), (3.0, 0.0, 1)]).unwrap();
    let a = exclusion_radius(&f, c(0.0, 0.0)).unwrap();
    let b = alexander_walsh_radius(&f, c(0.0, 0.0)).unwrap();
    let worked = (a - 3.0 / 7.0).abs() <= 1e-12 && (b - 1.0 / 3.0).abs() <= 1e-12;
    (
        ok && worst_rel <= 1e-12 && worked,
        format!("{checked} zeros/poles dominated; co-circular max rel diff {worst_rel:.1e}; radii {a:.12} and {b:.12}"),
    )
}

fn continuity() -> (bool, String) {
    let r = suite(TheoremId::Lemma1);
    (
        r.summary.trials == 1000 && r.summary.passed == 1000,
        counts(&r),
    )
}

fn counting() -> (bool, String) {
    let count = suite(TheoremId::RemarkCount);
    let lemma = suite(TheoremId::Lemma2);
    let ok = count.summary.passed == 1000 && lemma.summary.passed == 1000;
    (
        ok,
        format!("count: {}; residuals: {}", counts(&count), counts(&lemma)),
    )
}

fn power_worked_case() -> (bool, String) {
    let g = RationalFunction::from_triples(&[(0.0, 0.0, 1)]).unwrap();
    let h = RationalFunction::from_triples(&[(1.0, 0.0, 1)]).unwrap();
    let t = theorem4_threshold(&g, &h, 0.5, 1 << 14).unwrap();
    let (big, small) = (t.max_g.value, t.min_h.value);
    let f = g.product(&h.power(t.n).unwrap()).unwrap();
    let found = critical_points(&f, DEFAULT_TOL).unwrap();
    let single = found.roots.len() == 1 && found.roots[0].1 == 1;
    let at = found.roots.first().map(|r| r.0).unwrap_or(c(f64::NAN, 0.0));
    let ok = (big - 2.0).abs() <= 1e-6
        && (small - 2.0 / 3.0).abs() <= 1e-6
        && t.n == 4
        && single
        && (at - c(0.2, 0.0)).norm() <= 1e-8;
    (
        ok,
        format!(
            "M = {big:.9}, m = {small:.9}, n = {}, critical points {:?}",
            t.n, found.roots
        ),
    )
}

fn power_suite() -> (bool, String) {
    let r = suite(TheoremId::Thm4);
    (
        r.summary.trials == 200 && r.summary.passed == 200,
        counts(&r),
    )
}

fn distant_suite() -> (bool, String) {
    let r = suite(TheoremId::Thm2);
    let s = &r.summary;
    let ok = s.trials == 200 && s.failures == 0 && (s.skipped + s.inconclusive) * 20 <= s.trials;
    let redrawn = r
        .records
        .iter()
        .filter(|x| x.note.starts_with("g redrawn"))
        .count();
    (
        ok,
        format!("{}; {redrawn} g redrawn to meet the hypotheses", counts(&r)),
    )
}

fn polynomial_case() -> (bool, String) {
    let l = theorem3_l(2, 2.0, 1.0).unwrap();
    let terms = theorem3_terms(2, 2.0, 1.0).unwrap();
    let constants = (l / (6.0 / 169.0) - 1.0).abs() <= 1e-12
        && (terms[1] - 1.0 / (2.0 + 1.0 / 6.0)).abs() <= 1e-12
        && (terms[2] - 0.1).abs() <= 1e-12
        && theorem3_l(3, 2.0, 1.0).unwrap() < l;
    let r = suite(TheoremId::Thm3);
    let ok = constants && r.summary.trials == 200 && r.summary.failures == 0;
    (ok, format!("L(2,2,1) = {l:.12}; {}", counts(&r)))
}

fn regression_set() -> Vec<Vec<(Complex64, u32)>> {
    vec![
        vec![(c(2.0, 0.0), 1)],
        vec![(c(-0.5, 1.5), 1)],
        vec![(c(0.0, 1.0), 1), (c(0.0, -1.0), 1)],
        vec![(c(3.0, 0.0), 2)],
        vec![(c(0.4514162296, 0.0), 1), (c(2.2152504370, 0.0), 1)],
        vec![(c(1.0, 0.0), 3)],
        vec![(c(1.0, 0.0), 1), (c(2.0, 0.0), 1), (c(3.0, 0.0), 1)],
        vec![(c(0.0, 0.0), 2), (c(1.0, 0.0), 1)],
        vec![(c(-1.0, 1.0), 1), (c(-1.0, -1.0), 1), (c(0.5, 0.0), 1)],
        vec![
            (c(1.0, 0.0), 1),
            (c(-1.0, 0.0), 1),
            (c(0.0, 1.0), 1),
            (c(0.0, -1.0), 1),
        ],
        vec![(c(0.5, 0.5), 2), (c(-0.5, -0.5), 2)],
        vec![(c(2.0, -1.0), 4)],
        vec![
            (c(0.1, 0.0), 1),
            (c(0.2, 0.0), 1),
            (c(10.0, 0.0), 1),
            (c(-10.0, 5.0), 1),
        ],
        vec![
            (c(0.0, 0.0), 1),
            (c(1.0, 0.0), 1),
            (c(2.0, 0.0), 1),
            (c(3.0, 0.0), 1),
            (c(4.0, 0.0), 1),
        ],
        vec![(c(1.0, 1.0), 3), (c(-1.0, 0.0), 2)],
        vec![
            (c(0.25, 0.0), 1),
            (c(-0.25, 0.0), 1),
            (c(0.0, 0.25), 1),
            (c(0.0, -0.25), 1),
            (c(3.0, 3.0), 1),
        ],
        vec![(c(0.0, 0.0), 3), (c(1.5, -0.5), 3)],
        vec![(c(1.0, 0.0), 2), (c(-1.0, 0.0), 2), (c(0.0, 2.0), 2)],
        vec![(c(-0.5, 0.0), 5), (c(0.0, 0.0), 1)],
        (0..6)
            .map(|k| {
                (
                    Complex64::from_polar(1.5, std::f64::consts::TAU * k as f64 / 6.0),
                    1,
                )
            })
            .collect(),
    ]
}

fn oracle_soundness() -> (bool, String) {
    let mut matched = 0;
    let mut worst = 0.0f64;
    for roots in regression_set() {
        let p = Polynomial::from_roots(&roots);
        let Ok(found) = find_roots(&p, DEFAULT_TOL, DEFAULT_MAX_ITERS) else {
            continue;
        };
        let mut ok = found.roots.len() == roots.len() && found.total_multiplicity() == p.degree();
        for &(w, m) in &roots {
            let best = found
                .roots
                .iter()
                .min_by(|a, b| (a.0 - w).norm().total_cmp(&(b.0 - w).norm()));
            match best {
                Some(&(z, k)) => {
                    worst = worst.max((z - w).norm());
                    ok &= k == m && (z - w).norm() <= 1e-8;
                }
                None => ok = false,
            }
        }
        matched += usize::from(ok);
    }
    let mut conserved = 0;
    let ensemble = generate_ensemble(&EnsembleConfig::default()).unwrap();
    for f in &ensemble {
        let ld = log_derivative(f).unwrap();
        let ok = find_roots(&ld.numerator, DEFAULT_TOL, DEFAULT_MAX_ITERS)
            .is_ok_and(|r| r.total_multiplicity() == ld.numerator.degree())
            && critical_points(f, DEFAULT_TOL).is_ok_and(|r| {
                r.total_multiplicity() + r.deficiency_at_infinity == f.distinct_count() - 1
            });
        conserved += usize::from(ok);
    }
    (
        matched == 20 && conserved == ensemble.len(),
        format!("{matched}/20 regression polynomials (worst offset {worst:.1e}); counts conserved on {conserved}/{} functions", ensemble.len()),
    )
}

fn determinism() -> (bool, String) {
    let dir = std::env::temp_dir().join(format!("ratcrit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for name in ["first.csv", "second.csv"] {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_ratcrit"))
            .args(["verify", "thm1", "--seed", "42", "--trials", "100", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        outputs.push((status.code(), std::fs::read(&path).unwrap_or_default()));
    }
    let _ = std::fs::remove_dir_all(&dir);
    let same = outputs[0].1 == outputs[1].1 && !outputs[0].1.is_empty();
    let rows = outputs[0].1.iter().filter(|&&b| b == b'\n').count();
    let ok = same && outputs.iter().all(|o| o.0 == Some(0)) && rows == 101;
    (
        ok,
        format!(
            "{} bytes, {rows} lines, identical: {same}",
            outputs[0].1.len()
        ),
    )
}

type Criterion = fn() -> (bool, String);

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 11] = [
        (
            "exclusion radius on 1000 random functions",
            exclusion_family,
        ),
        ("tight family z^m (z - 1)", tight_family),
        ("improvement over Alexander-Walsh", improvement),
        ("continuity of rho", continuity),
        ("critical point count and residuals", counting),
        ("power threshold worked case", power_worked_case),
        ("power threshold suite", power_suite),
        ("distant perturbation suite", distant_suite),
        ("polynomial case constants and suite", polynomial_case),
        ("oracle soundness", oracle_soundness),
        ("deterministic reports", determinism),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = check();
        println!(
            "criterion {:>2} {} {name}: {detail} ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    println!("acceptance total {:.2}s", start.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
