//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any of them fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clap::Parser;
use quiver_udr::cli::{cmd_verify_udr, execute, Cli, OutputFormat};
use quiver_udr::deform::{
    check_module, lifts_isomorphic, make_lift, tangent_space_dim, trivial_lift, udr_report, Verdict,
};
use quiver_udr::format::{
    parse_quiver_file, parse_rep_file, write_quiver_file, write_rep_file, QuiverFile,
};
use quiver_udr::indec::{
    all_indecomposables, construct_indecomposable, generic_rep_oracle, reflect_at_sink,
    reflect_at_source,
};
use quiver_udr::par::Execution;
use quiver_udr::quiver::dynkin::{dynkin_quiver, extended_d4, kronecker, oriented_cycle};
use quiver_udr::quiver::{classify, euler_form, DimVector, DynkinType, Orientation, Quiver};
use quiver_udr::rep::{direct_sum, ext1_space, hom_space, is_isomorphic, Representation};
use quiver_udr::roots::{box_scan_roots, positive_roots};
use quiver_udr::xlinalg::{FieldSpec, Matrix};

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::PrimeField(2);
const F3: FieldSpec = FieldSpec::PrimeField(3);
const F5: FieldSpec = FieldSpec::PrimeField(5);

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quiver_file(t: DynkinType, o: Orientation) -> QuiverFile {
    QuiverFile {
        name: format!("{t}-{}", o.name()),
        quiver: dynkin_quiver(t, o),
    }
}

/// Per-entry `(dims, end, ext, verdict)` as reported by the verify-udr command.
type Verdicts = Vec<(Vec<u64>, u64, u64, String)>;

fn verify_udr_verdicts(
    t: DynkinType,
    o: Orientation,
    field: FieldSpec,
) -> std::result::Result<Verdicts, String> {
    let qf = quiver_file(t, o);
    let out = cmd_verify_udr(
        &qf,
        field,
        None,
        0,
        0,
        Execution::Parallel,
        OutputFormat::Json,
    )
    .map_err(|e| format!("{t} {} {field}: {e}", o.name()))?;
    ensure(out.exit_code == 0, || {
        format!("{t} {} {field}: exit {}", o.name(), out.exit_code)
    })?;
    let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let entries = v["result"]["entries"].as_array().ok_or("no entries")?;
    Ok(entries
        .iter()
        .map(|e| {
            (
                e["dims"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap())
                    .collect(),
                e["end_dim"].as_u64().unwrap(),
                e["ext_dim"].as_u64().unwrap(),
                e["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect())
}

fn closed_form_count(t: DynkinType) -> usize {
    match t {
        DynkinType::A(n) => n * (n + 1) / 2,
        DynkinType::D(n) => n * (n - 1),
        DynkinType::E6 => 36,
        DynkinType::E7 => 63,
        DynkinType::E8 => 120,
    }
}

/// Criteria 1 and 8 share the verification runs; this holds them.
struct Suite {
    verdicts: Vec<(DynkinType, Orientation, FieldSpec, Verdicts)>,
}

fn run_main_theorem_suite() -> std::result::Result<Suite, String> {
    let mut verdicts = Vec::new();
    for t in DynkinType::all_up_to(8) {
        for o in Orientation::STANDARD {
            for field in [Q, F2, F3, F5] {
                verdicts.push((t, o, field, verify_udr_verdicts(t, o, field)?));
            }
        }
    }
    Ok(Suite { verdicts })
}

fn criterion_1(suite: &std::result::Result<Suite, String>) -> Check {
    let suite = suite.as_ref().map_err(Clone::clone)?;
    let mut entries = 0;
    let mut instances = 0;
    for (t, o, field, v) in &suite.verdicts {
        if *field == F5 {
            continue;
        }
        instances += 1;
        ensure(v.len() == closed_form_count(*t), || {
            format!("{t} {} {field}: {} entries", o.name(), v.len())
        })?;
        for (d, end, ext, verdict) in v {
            ensure(*end == 1 && *ext == 0 && verdict == "IsomorphicToK", || {
                format!(
                    "{t} {} {field} at {d:?}: end {end}, ext {ext}, {verdict}",
                    o.name()
                )
            })?;
            entries += 1;
        }
    }
    Ok(format!(
        "{entries}/{entries} catalog entries over {instances} (type, orientation, field) instances have end 1, ext 0, IsomorphicToK"
    ))
}

fn criterion_2() -> Check {
    let mut compared = 0;
    for t in DynkinType::all_up_to(8) {
        for o in Orientation::STANDARD {
            let q = dynkin_quiver(t, o);
            let roots = positive_roots(&q).map_err(|e| e.to_string())?;
            ensure(roots.len() == closed_form_count(t), || {
                format!(
                    "{t} {}: {} roots, expected {}",
                    o.name(),
                    roots.len(),
                    closed_form_count(t)
                )
            })?;
            let scanned = box_scan_roots(&q, 6, Execution::Parallel);
            ensure(scanned == roots.roots(), || {
                format!("{t} {}: box scan disagrees", o.name())
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "closed-form counts and box scan (coordinates <= 6) agree on {compared} quivers"
    ))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let types = DynkinType::all_up_to(6);
    let mut pairs = 0;
    for k in 0..150 {
        let t = types[rng.random_range(0..types.len())];
        let q = dynkin_quiver(t, Orientation::Random(rng.random()));
        let field = [Q, F2, F3][k % 3];
        let mut dims = || {
            DimVector::new(
                (0..q.vertex_count())
                    .map(|_| rng.random_range(0..=2))
                    .collect(),
            )
        };
        let (dm, dn) = (dims(), dims());
        let m = Representation::random(&q, field, dm, &mut rng, 2);
        let n = Representation::random(&q, field, dn, &mut rng, 2);
        let hom = hom_space(&m, &n).map_err(|e| e.to_string())?.dimension() as i64;
        let ext = ext1_space(&m, &n).map_err(|e| e.to_string())?.dimension() as i64;
        let euler = euler_form(&q, m.dims(), n.dims()).map_err(|e| e.to_string())?;
        ensure(hom - ext == euler, || {
            format!(
                "{t} over {field}: hom {hom} - ext {ext} != euler {euler} for {} -> {}",
                m.dims(),
                n.dims()
            )
        })?;
        pairs += 1;
    }
    Ok(format!(
        "dim Hom - dim Ext^1 = Euler form on {pairs} random pairs over Q, F2, F3"
    ))
}

fn small_quivers() -> Vec<(DynkinType, Orientation, Quiver)> {
    let mut out = Vec::new();
    for t in DynkinType::all_up_to(4) {
        for o in Orientation::STANDARD {
            out.push((t, o, dynkin_quiver(t, o)));
        }
    }
    out
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for (t, o, q) in small_quivers() {
        for field in [Q, F2, F3] {
            let catalog =
                all_indecomposables(&q, field, Execution::Parallel).map_err(|e| e.to_string())?;
            for i in (0..q.vertex_count()).filter(|&i| q.is_sink(i)) {
                for (d, m) in &catalog.entries {
                    if d.as_unit() == Some(i) {
                        continue;
                    }
                    let (q1, m1) = reflect_at_sink(&q, i, m).map_err(|e| e.to_string())?;
                    let (q2, m2) = reflect_at_source(&q1, i, &m1).map_err(|e| e.to_string())?;
                    ensure(q2 == q, || format!("{t} {}: quiver changed", o.name()))?;
                    let v = is_isomorphic(&m2, m).map_err(|e| e.to_string())?;
                    ensure(v.is_isomorphic(), || {
                        format!("{t} {} {field} sink {i} at {d}: {v:?}", o.name())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "round trip through sink and source reflection is an isomorphism in {checked} cases"
    ))
}

fn criterion_5() -> Check {
    let mut checked = 0;
    for t in [DynkinType::A(4), DynkinType::D(4)] {
        for o in Orientation::STANDARD {
            let q = dynkin_quiver(t, o);
            for d in positive_roots(&q).map_err(|e| e.to_string())?.roots() {
                let built = construct_indecomposable(&q, d, Q).map_err(|e| e.to_string())?;
                for seed in 0..5 {
                    let generic = generic_rep_oracle(&q, d, Q, seed).map_err(|e| e.to_string())?;
                    let v = is_isomorphic(&generic, &built).map_err(|e| e.to_string())?;
                    ensure(v.is_isomorphic(), || {
                        format!("{t} {} at {d}, seed {seed}: {v:?}", o.name())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "random Schur representation is isomorphic to the constructed one in {checked} cases"
    ))
}

fn criterion_6() -> Check {
    let negatives = [
        ("Kronecker", kronecker()),
        ("cycle3", oriented_cycle(3)),
        ("extendedD4", extended_d4()),
    ];
    for (name, q) in &negatives {
        ensure(!classify(q).map_err(|e| e.to_string())?.is_finite(), || {
            format!("{name} classified finite")
        })?;
        let qf = QuiverFile {
            name: name.to_string(),
            quiver: q.clone(),
        };
        let code =
            match cmd_verify_udr(&qf, Q, None, 0, 0, Execution::Parallel, OutputFormat::Table) {
                Ok(out) => out.exit_code,
                Err(e) => e.exit_code(),
            };
        ensure(code == 2, || format!("{name}: verify-udr exit code {code}"))?;
    }
    let kq = kronecker();
    let m = Representation::new(
        kq.clone(),
        Q,
        DimVector::new(vec![1, 1]),
        vec![Matrix::from_i64(Q, &[&[1]]), Matrix::from_i64(Q, &[&[0]])],
    )
    .map_err(|e| e.to_string())?;
    let r = udr_report(&kq, &m).map_err(|e| e.to_string())?;
    ensure(
        r.end_dim == 1 && r.ext_dim == 1 && r.verdict == Verdict::QuotientOfPowerSeries(1),
        || format!("Kronecker module report {r:?}"),
    )?;
    Ok("Kronecker, oriented 3-cycle, extended D4 are infinite and verify-udr exits 2; Kronecker (1,1) module gives end 1, ext 1, QuotientOfPowerSeries(1)".into())
}

fn criterion_7() -> Check {
    let mut lifts = 0;
    for (t, o, q) in small_quivers() {
        for field in [Q, F2, F3] {
            let catalog =
                all_indecomposables(&q, field, Execution::Parallel).map_err(|e| e.to_string())?;
            for (k, (d, m)) in catalog.entries.iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
                let c = check_module(&q, m, 20, &mut rng).map_err(|e| e.to_string())?;
                ensure(c.lifts_trivial == 20 && c.verified(), || {
                    format!(
                        "{t} {} {field} at {d}: {}/20 lifts trivial",
                        o.name(),
                        c.lifts_trivial
                    )
                })?;
                lifts += 20;
            }
        }
    }
    let a2 = dynkin_quiver(DynkinType::A(2), Orientation::Linear);
    let m = direct_sum(
        &Representation::simple(&a2, Q, 0),
        &Representation::simple(&a2, Q, 1),
    )
    .map_err(|e| e.to_string())?;
    let tangent = tangent_space_dim(&m).map_err(|e| e.to_string())?;
    ensure(tangent == 1, || {
        format!("S1+S2 tangent dimension {tangent}")
    })?;
    let bent = make_lift(&m, vec![Matrix::from_i64(Q, &[&[1]])]).map_err(|e| e.to_string())?;
    let nontrivial = !lifts_isomorphic(&bent, &trivial_lift(&m)).map_err(|e| e.to_string())?;
    ensure(nontrivial, || {
        "S1+S2 lift with g = 1 was judged trivial".into()
    })?;
    Ok(format!(
        "{lifts} random lifts over rank <= 4 catalogs are trivial; S1+S2 on A2 has tangent dim 1 and a detected nontrivial lift"
    ))
}

fn criterion_8(suite: &std::result::Result<Suite, String>) -> Check {
    let suite = suite.as_ref().map_err(Clone::clone)?;
    let mut groups = 0;
    for chunk in suite.verdicts.chunks(4) {
        let (t, o, _, reference) = &chunk[0];
        for (_, _, field, v) in &chunk[1..] {
            ensure(v == reference, || {
                format!("{t} {}: verdicts over {field} differ from Q", o.name())
            })?;
        }
        groups += 1;
    }
    for t in DynkinType::all_up_to(8) {
        let q = dynkin_quiver(t, Orientation::Linear);
        let counts: Vec<usize> = [Q, F2, F3, F5]
            .into_iter()
            .map(|f| all_indecomposables(&q, f, Execution::Parallel).map(|c| c.len()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(counts.iter().all(|&c| c == closed_form_count(t)), || {
            format!("{t}: catalog sizes {counts:?}")
        })?;
    }
    Ok(format!(
        "verdicts and counts identical over Q, F2, F3, F5 on {groups} quivers"
    ))
}

fn criterion_9() -> Check {
    let examples = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/quivers");
    let mut quivers = 0;
    for entry in std::fs::read_dir(&examples).map_err(|e| e.to_string())? {
        let text = std::fs::read_to_string(entry.map_err(|e| e.to_string())?.path())
            .map_err(|e| e.to_string())?;
        let qf = parse_quiver_file(&text).map_err(|e| e.to_string())?;
        let back = parse_quiver_file(&write_quiver_file(&qf.name, &qf.quiver))
            .map_err(|e| e.to_string())?;
        ensure(back == qf, || format!("{} does not round-trip", qf.name))?;
        quivers += 1;
    }
    let mut reps = 0;
    for (t, o) in [
        (DynkinType::D(5), Orientation::Bipartite),
        (DynkinType::E6, Orientation::Reversed),
    ] {
        let q = dynkin_quiver(t, o);
        for field in [Q, F3, FieldSpec::PrimeField(101)] {
            let catalog =
                all_indecomposables(&q, field, Execution::Parallel).map_err(|e| e.to_string())?;
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for (d, m) in &catalog.entries {
                let random = Representation::random(&q, field, d.clone(), &mut rng, 7);
                for r in [m, &random] {
                    let back =
                        parse_rep_file(&write_rep_file("M", r), &q).map_err(|e| e.to_string())?;
                    ensure(&back.rep == r, || {
                        format!("{t} {field} at {d} does not round-trip")
                    })?;
                    reps += 1;
                }
            }
        }
    }
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/a3_linear_verify_udr_q_seed0.json");
    let golden = std::fs::read_to_string(golden_path).map_err(|e| e.to_string())?;
    let a3 = examples.join("a3_linear.quiver");
    let args = [
        "quiver-udr",
        "verify-udr",
        a3.to_str().unwrap(),
        "--format",
        "json",
        "--seed",
        "0",
    ];
    for sequential in [false, true, false] {
        let mut argv = args.to_vec();
        if sequential {
            argv.push("--sequential");
        }
        let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
        let out = execute(&cli).map_err(|e| e.to_string())?;
        ensure(out.stdout == golden, || {
            "A3 verification JSON differs from the golden file".into()
        })?;
    }
    Ok(format!(
        "{quivers} quiver files and {reps} representations round-trip; A3 verification JSON is byte-identical to the golden file"
    ))
}

fn run(number: usize, title: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {number} PASS [{title}] {detail} ({secs:.1}s)");
            true
        }
        Err(reason) => {
            println!("criterion {number} FAIL [{title}] {reason} ({secs:.1}s)");
            false
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // cargo passes libtest flags such as `--list` to every test target
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let suite_start = Instant::now();
    let suite = panic::catch_unwind(run_main_theorem_suite)
        .unwrap_or_else(|_| Err("verification run panicked".into()));
    let suite_secs = suite_start.elapsed().as_secs_f64();
    let results = [
        run(1, "main theorem", || {
            criterion_1(&suite)
                .map(|d| format!("{d}; shared verification run took {suite_secs:.1}s"))
        }),
        run(2, "root counts", criterion_2),
        run(3, "Euler identity", criterion_3),
        run(4, "reflection round trip", criterion_4),
        run(5, "cross-oracle construction", criterion_5),
        run(6, "negative controls", criterion_6),
        run(7, "first-order triviality", criterion_7),
        run(8, "characteristic independence", || criterion_8(&suite)),
        run(9, "format round trip and golden output", criterion_9),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
