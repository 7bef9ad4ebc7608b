//! Acceptance suite. Each test prints one `PASS` or `FAIL` line straight to
//! stderr (bypassing output capture) and then fails if its criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cheby_ramsey_core::deduction::{
    antiperiod_certificates, antiperiod_consequences, forced_lines, forced_segment, line_certificates,
    segment_extension_trace, Expectation, Obligation, VectorCase,
};
use cheby_ramsey_core::density::{density_lower_torus, density_upper_patch, find_periodic_copy, product_construction};
use cheby_ramsey_core::hypergraph::{hypergraph_chromatic, max_copy_free_subset, Hypergraph, Witness};
use cheby_ramsey_core::line::{chi_line_lower, chi_line_upper, rational_distance_reduction, DistanceSet, LineColoring};
use cheby_ramsey_core::plane::{certify_lift, lift, plane_chromatic_bounds, sample_verify, LiftAxis, ShiftVector};
use cheby_ramsey_core::{
    enumerate_copies, is_copy, lemma1_filter, parse_scalar, two_distance_locus, Point, PointSet, Rational, Scalar,
    Triangle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn criterion(n: u32, name: &str, limit: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    };
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed > limit {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        } else {
            Ok(())
        }
    });
    let line = match &outcome {
        Ok(()) => format!("criterion {n:>2}: PASS  {name} ({} ms)", elapsed.as_millis()),
        Err(e) => format!("criterion {n:>2}: FAIL  {name}: {e}"),
    };
    let _ = writeln!(std::io::stderr().lock(), "{line}");
    if let Err(e) = outcome {
        panic!("criterion {n} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(s: &str) -> Rational {
    parse_scalar(s).unwrap()
}

fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

fn tri(a: i64, b: i64, c: i64) -> Triangle {
    Triangle::from_ints(a, b, c).unwrap()
}

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn inputs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs")
}

fn cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cheby-ramsey")).args(args).output().expect("spawn cli");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn payload(args: &[&str]) -> Value {
    let (stdout, _) = cli(args);
    let v: Value = serde_json::from_slice(&stdout).expect("json report");
    v["payload"].clone()
}

/// A random copy of a random non-degenerate rational triangle: two vertices
/// at one side length, the third on the locus of the other two distances.
fn random_copy(rng: &mut ChaCha8Rng) -> Option<(Triangle, [Point; 3])> {
    let den = rng.random_range(1..=12i64);
    let r = |rng: &mut ChaCha8Rng| Rational::new(rng.random_range(1..=40i64).into(), den.into());
    let t = Triangle::new(r(rng), r(rng), r(rng)).ok().filter(|t| !t.is_degenerate())?;
    let sides = t.side_set();
    let first = rng.random_range(0..3);
    let s1 = sides[first].clone();
    let rest: Vec<_> = (0..3).filter(|&i| i != first).map(|i| sides[i].clone()).collect();
    let (r1, r2) = if rng.random_bool(0.5) { (rest[0].clone(), rest[1].clone()) } else { (rest[1].clone(), rest[0].clone()) };
    let z1 = Point::new(
        Rational::new(rng.random_range(-100..=100i64).into(), den.into()),
        Rational::new(rng.random_range(-100..=100i64).into(), den.into()),
    );
    let tilt = s1.clone() * Rational::new(rng.random_range(-40..=40i64).into(), 40.into());
    let (dx, dy) = match rng.random_range(0..4) {
        0 => (s1.clone(), tilt),
        1 => (-s1.clone(), tilt),
        2 => (tilt, s1.clone()),
        _ => (tilt, -s1.clone()),
    };
    let z2 = z1.translate(&dx, &dy);
    let locus = two_distance_locus(&z1, &r1, &z2, &r2);
    if locus.is_empty() {
        return None;
    }
    let (lo, hi) = locus[rng.random_range(0..locus.len())].clone();
    let f = Rational::new(rng.random_range(0..=64i64).into(), 64.into());
    let z3 = Point::new(lo.x.clone() + (hi.x - lo.x) * f.clone(), lo.y.clone() + (hi.y - lo.y) * f);
    let mut z = [z1, z2, z3];
    let k = rng.random_range(0..3);
    z.rotate_left(k);
    Some((t, z))
}

#[test]
fn criterion_01_copy_filter_soundness() {
    criterion(1, "filter accepts 100000 random exact copies", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut accepted = 0;
        let mut generated = 0;
        while generated < 100_000 {
            let Some((t, [z1, z2, z3])) = random_copy(&mut rng) else { continue };
            ensure(is_copy(&z1, &z2, &z3, &t), "generator produced a non-copy")?;
            generated += 1;
            if lemma1_filter(&z1, &z2, &z3, &t) == Ok(true) {
                accepted += 1;
            }
        }
        ensure(accepted == generated, format!("accepted {accepted} of {generated}"))
    });
}

#[test]
fn criterion_02_five_point_configuration() {
    criterion(2, "five-point set for T(2,3,4) has exactly the three named copies", Duration::MAX, || {
        let z = [p(2, 2), p(1, 0), p(5, 3), p(5, -1), p(3, 2)];
        let set = PointSet::new(z.to_vec()).unwrap();
        let found: BTreeSet<Vec<Point>> = enumerate_copies(&set, &tri(2, 3, 4))
            .into_iter()
            .map(|e| {
                let mut v: Vec<_> = e.iter().map(|&i| set.get(i).clone()).collect();
                v.sort();
                v
            })
            .collect();
        let expected: BTreeSet<Vec<Point>> = [[0, 1, 2], [0, 1, 3], [2, 3, 4]]
            .iter()
            .map(|e| {
                let mut v: Vec<_> = e.iter().map(|&i| z[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        let extra: Vec<Vec<String>> = found
            .difference(&expected)
            .map(|v| v.iter().map(|z| format!("({}, {})", z.x, z.y)).collect())
            .collect();
        ensure(
            found == expected,
            format!("found {} copies; not in the named list: {:?}", found.len(), extra),
        )
    });
}

#[test]
fn criterion_03_diagonal_parity_certified() {
    criterion(3, "diagonal parity lift is copy-free for T(1,1,1) and T(2,3,4)", Duration::from_secs(60), || {
        let c = lift(&LineColoring::parity(), LiftAxis::Diagonal);
        for (t, diag) in [(tri(1, 1, 1), vec![qi(1)]), (tri(2, 3, 4), vec![qi(1), qi(3), qi(5)])] {
            let cert = certify_lift(&c, &t).map_err(|e| e.to_string())?;
            ensure(cert.is_copy_free(), format!("{t:?} not certified"))?;
            let mut d: Vec<_> = t.diag_set().to_vec();
            d.dedup();
            ensure(d == diag, format!("diag set {d:?}"))?;
            let v = sample_verify(&c, &t, &qi(32), &q("1/4")).map_err(|e| e.to_string())?;
            ensure(!v.found_counterexample(), format!("counterexample {v:?}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_04_chromatic_pipeline() {
    criterion(4, "line and plane chromatic bounds meet", Duration::MAX, || {
        let ints = |v: &[i64]| {
            let set = DistanceSet::new(v.iter().map(|&x| qi(x)).collect()).unwrap();
            rational_distance_reduction(&set).unwrap().integers
        };
        let up = chi_line_upper::<Rational>(&ints(&[1, 3, 5]), 4).map_err(|e| e.to_string())?;
        ensure(up.value == 2, format!("chi_line_upper(1,3,5; 4) = {}", up.value))?;
        let b = plane_chromatic_bounds(&tri(2, 3, 4), 4).map_err(|e| e.to_string())?;
        ensure(b.lower == 2 && b.upper == Some(2) && b.is_exact(), format!("plane bounds {} {:?}", b.lower, b.upper))?;
        let [c0, c1, c2] = &b.copy;
        ensure(is_copy(c0, c1, c2, &tri(2, 3, 4)), "lower-bound copy is not a copy")?;
        let side = ints(&[2, 3, 4]);
        let lo = chi_line_lower(&side, 6).map_err(|e| e.to_string())?;
        let hi = chi_line_upper::<Rational>(&side, 6).map_err(|e| e.to_string())?;
        ensure(lo.value == 3 && hi.value == 3, format!("side route lower {} upper {}", lo.value, hi.value))?;
        let report = payload(&["chi-line", "--triangle", "2,3,4", "--route", "diagonal", "--max-period", "4"]);
        ensure(report["plane"]["exact"] == true && report["plane"]["upper"] == 2, "cli does not report exact value 2")
    });
}

fn vset(list: &[(i64, i64)]) -> BTreeSet<ShiftVector<Rational>> {
    list.iter().map(|&(x, y)| ShiftVector::from_ints(x, y)).collect()
}

#[test]
fn criterion_05_antiperiod_lists() {
    criterion(5, "anti-period and period lists", Duration::MAX, || {
        let r = antiperiod_consequences(&tri(2, 3, 4), 10).map_err(|e| e.to_string())?;
        let anti: BTreeSet<_> = r.anti_periods.iter().map(|d| d.vector.clone()).collect();
        let per: BTreeSet<_> = r.periods.iter().map(|d| d.vector.clone()).collect();
        let want_anti = vset(&[(2, 1), (-2, 1), (1, 2), (1, -2), (3, -2), (-3, -2), (-2, 3), (-2, -3)]);
        let want_per = vset(&[(4, 0), (6, 0), (8, 0), (0, 4), (0, 6), (0, 8)]);
        ensure(r.anti_periods.len() == 8 && anti == want_anti, format!("anti-periods {anti:?}"))?;
        ensure(r.periods.len() == 6 && per == want_per, format!("periods {per:?}"))?;
        ensure(r.check_decompositions(), "a period decomposition does not check")?;
        ensure(r.certificate.is_none() && r.extra_anti_periods.is_empty(), "unexpected certificate for T(2,3,4)")?;

        let t = Triangle::new(q("3/2"), qi(2), q("5/2")).unwrap();
        let r = antiperiod_consequences(&t, 5).map_err(|e| e.to_string())?;
        let certs = antiperiod_certificates(&t, 5);
        ensure(r.certificate.is_some(), "no certificate for T(3/2,2,5/2)")?;
        ensure(certs.contains(&[2, 0, -1]), format!("(2,0,-1) missing from {certs:?}"))?;
        let extra: BTreeSet<_> = r.extra_anti_periods.iter().map(|d| d.vector.clone()).collect();
        let want: BTreeSet<_> = [("5/2", "1/2"), ("-5/2", "1/2"), ("1/2", "5/2"), ("1/2", "-5/2")]
            .iter()
            .map(|(x, y)| ShiftVector::new(q(x), q(y)))
            .collect();
        ensure(r.extra_anti_periods.len() == 4 && extra == want, format!("extra anti-periods {extra:?}"))?;
        ensure(r.check_decompositions(), "a decomposition does not check")
    });
}

fn copies_hold(list: &[Obligation<Rational>], t: &Triangle) -> Result<usize, String> {
    let mut n = 0;
    for o in list {
        ensure(o.verified, format!("obligation not verified: {}", o.note))?;
        if o.expected == Expectation::Copy {
            let [a, b, c] = &o.points[..] else { return Err(format!("copy obligation with {} points", o.points.len())) };
            ensure(is_copy(a, b, c, t), format!("not a copy: {}", o.note))?;
            n += 1;
        }
    }
    Ok(n)
}

#[test]
fn criterion_06_deduction_obligations() {
    criterion(6, "every emitted copy obligation is a copy", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut copies = 0;
        let mut triangles = 0;
        while triangles < 200 {
            let den = rng.random_range(1..=6i64);
            let r = |rng: &mut ChaCha8Rng| Rational::new(rng.random_range(1..=30i64).into(), den.into());
            let Some(t) = Triangle::new(r(&mut rng), r(&mut rng), r(&mut rng)).ok().filter(|t| !t.is_degenerate())
            else {
                continue;
            };
            triangles += 1;
            let base = Point::new(
                Rational::new(rng.random_range(-50..=50i64).into(), den.into()),
                Rational::new(rng.random_range(-50..=50i64).into(), den.into()),
            );
            for case in VectorCase::all() {
                let v = case.vector(&t);
                let other = base.translate(&v.dx, &v.dy);
                let fs = forced_segment((&base, &other), case, &t).map_err(|e| e.to_string())?;
                copies += copies_hold(&fs.obligations, &t)?;
            }
        }
        let t = tri(2, 3, 4);
        let fl = forced_lines(&t, 10).map_err(|e| e.to_string())?;
        copies += copies_hold(&fl.obligations, &t)?;
        for t in [tri(2, 3, 3), tri(2, 3, 4)] {
            for depth in 1..=3 {
                let tr = segment_extension_trace(&t, depth).map_err(|e| e.to_string())?;
                copies += copies_hold(&tr.obligations, &t)?;
            }
        }
        ensure(copies > 0, "no copy obligations emitted")
    });
}

#[test]
fn criterion_07_forced_line_certificate() {
    criterion(7, "forced blue lines y = 2, 3, 4 with an even-sum certificate", Duration::MAX, || {
        let r = forced_lines(&tri(2, 3, 4), 10).map_err(|e| e.to_string())?;
        let blue: BTreeSet<_> = r.blue_lines.iter().cloned().collect();
        ensure(blue == [qi(2), qi(3), qi(4)].into_iter().collect(), format!("blue lines {blue:?}"))?;
        let [n, m] = r.certificate.ok_or("no certificate")?;
        ensure((n + m) % 2 == 0 && (1..=2).contains(&(2 * n + 3 * m)), format!("certificate ({n},{m})"))?;
        ensure(line_certificates(&tri(2, 3, 4), 10).contains(&[4, -2]), "(4,-2) not among the certificates")
    });
}

fn brute_chromatic(h: &Hypergraph) -> usize {
    let n = h.vertex_count();
    if n == 0 {
        return 0;
    }
    for k in 1.. {
        let mut colors = vec![0usize; n];
        loop {
            if h.is_proper_coloring(&colors) {
                return k;
            }
            let mut i = 0;
            while i < n && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!()
}

fn brute_alpha(h: &Hypergraph) -> usize {
    let n = h.vertex_count();
    (0u32..1 << n)
        .filter_map(|mask| {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            h.is_free_subset(&s).then_some(s.len())
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn criterion_08_solver_oracle() {
    criterion(8, "solvers match exhaustive enumeration on 100 instances", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..100 {
            let n = rng.random_range(1..=12usize);
            let m = if n < 3 { 0 } else { rng.random_range(0..=3 * n) };
            let edges: Vec<Vec<usize>> = (0..m)
                .filter_map(|_| {
                    let e: BTreeSet<usize> = (0..3).map(|_| rng.random_range(0..n)).collect();
                    (e.len() == 3).then(|| e.into_iter().collect())
                })
                .collect();
            let h = Hypergraph::new(n, edges).map_err(|e| e.to_string())?;
            let chi = hypergraph_chromatic(&h, 12);
            let want = brute_chromatic(&h);
            ensure(chi.optimum == Some(want), format!("instance {i}: chromatic {:?} vs {want}", chi.optimum))?;
            let Witness::Coloring(c) = &chi.witness else { return Err(format!("instance {i}: no coloring")) };
            ensure(h.is_proper_coloring(c), format!("instance {i}: improper coloring"))?;
            let a = max_copy_free_subset(&h);
            let want = brute_alpha(&h);
            ensure(a.optimum == Some(want), format!("instance {i}: subset {:?} vs {want}", a.optimum))?;
            let Witness::Subset(s) = &a.witness else { return Err(format!("instance {i}: no subset")) };
            ensure(s.len() == want && h.is_free_subset(s), format!("instance {i}: bad subset"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_09_degenerate_density() {
    criterion(9, "T(1,1,2) density 2/3 in one dimension, 4/9 in two", Duration::from_secs(600), || {
        let t = tri(1, 1, 2);
        let two_thirds = Rational::new(2.into(), 3.into());
        let four_ninths = Rational::new(4.into(), 9.into());
        let lo = density_lower_torus(&t, &[3]).map_err(|e| e.to_string())?;
        let hi = density_upper_patch(&t, &[3]).map_err(|e| e.to_string())?;
        ensure(lo.lower == two_thirds && hi.upper == two_thirds, format!("1D bounds {} {}", lo.lower, hi.upper))?;
        let prod = product_construction(&t, &lo).map_err(|e| e.to_string())?;
        ensure(prod.lower == four_ninths, format!("product density {}", prod.lower))?;
        ensure(find_periodic_copy([1, 1, 2], &prod.dims, &prod.witness).is_none(), "product witness has a copy")?;
        let patch = density_upper_patch(&t, &[9, 9]).map_err(|e| e.to_string())?;
        let gap = (patch.upper.clone() - four_ninths.clone()).to_f64_lossy();
        ensure(
            patch.upper >= four_ninths && gap <= 0.15,
            format!("9x9 patch upper bound {} (gap {gap})", patch.upper),
        )
    });
}

#[test]
fn criterion_10_thread_determinism() {
    criterion(10, "payloads identical across thread counts", Duration::MAX, || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let five = inputs().join("five_points.json");
        let five = five.to_str().unwrap();
        let diag = inputs().join("diagonal_parity.toml");
        let diag = diag.to_str().unwrap();
        let (hg, _) = cli(&["chi-set", "--triangle", "2,3,4", "--points", five]);
        let hg: Value = serde_json::from_slice(&hg).map_err(|e| e.to_string())?;
        let hg_path = dir.path().join("five_point_hypergraph.json");
        std::fs::write(&hg_path, hg["payload"]["hypergraph"].to_string()).map_err(|e| e.to_string())?;
        let hg_path = hg_path.to_str().unwrap();
        let runs: Vec<Vec<&str>> = vec![
            vec!["copies", "--triangle", "2,3,4", "--points", five],
            vec!["verify", "--triangle", "2,3,4", "--coloring", diag],
            vec!["chi-line", "--triangle", "2,3,4", "--route", "diagonal"],
            vec!["chi-line", "--distances", "2,3,4", "--window", "6", "--max-period", "6"],
            vec!["chi-set", "--triangle", "2,3,4", "--points", five],
            vec!["chi-set", "--hypergraph", hg_path],
            vec!["density", "--triangle", "1,1,2", "--dims", "3"],
            vec!["density", "--triangle", "1,1,2", "--dims", "3,3", "--patch", "6,6"],
            vec!["witness", "--triangle", "1,1,2", "--colors", "2", "--window", "4"],
            vec!["witness", "--triangle", "1,1,1", "--colors", "3", "--step", "1/2", "--window", "4"],
            vec!["deduce", "--triangle", "2,3,4"],
            vec!["render", "--coloring", diag],
            vec!["render", "--points", five, "--triangle", "2,3,4"],
        ];
        for args in runs {
            let mut outputs = Vec::new();
            for threads in ["1", "8", "1", "8"] {
                let mut full = vec!["--threads", threads];
                full.extend(&args);
                let (stdout, code) = cli(&full);
                ensure(code == 0, format!("{args:?} exited {code}"))?;
                let bytes = if args[0] == "render" {
                    stdout
                } else {
                    let v: Value = serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
                    serde_json::to_vec(&v["payload"]).unwrap()
                };
                outputs.push(bytes);
            }
            ensure(outputs.windows(2).all(|w| w[0] == w[1]), format!("{args:?} differs across runs"))?;
        }
        Ok(())
    });
}
