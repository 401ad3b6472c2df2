//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as a plain binary so timings are not disturbed by
//! other tests.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ghforge_core::matrix_file::write_matrix;
use ghforge_core::{
    classify_all_functions, matrix_m, verify_gh, verify_gh_with, Construction, FieldFunction,
    FiniteField, GhMatrix, VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gf(q: u32) -> FiniteField {
    let (p, n) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        16 => (2, 4),
        25 => (5, 2),
        27 => (3, 3),
        p => (p, 1),
    };
    FiniteField::new(p, n).unwrap()
}

fn single_threaded() -> VerifyOptions {
    VerifyOptions {
        threads: Some(1),
        ..Default::default()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn example_fixtures() -> Outcome {
    let start = Instant::now();
    let f3 = gf(3);
    let f4 = FiniteField::create(2, 2, Some(&[1, 1, 1])).unwrap();
    let cases = [
        ("example_3_1", Construction::QuadraticBlocks, &f3),
        ("example_3_2", Construction::LinearBlocks, &f3),
        ("example_3_3", Construction::LinearBlocks, &f4),
        ("example_3_4", Construction::ShiftedLinearBlocks, &f3),
    ];
    for (name, construction, field) in cases {
        let golden = std::fs::read_to_string(fixtures_dir().join(format!("{name}.ghm")))
            .map_err(|e| format!("{name}: {e}"))?;
        let built = write_matrix(&construction.build(field).map_err(|e| e.to_string())?);
        ensure(built == golden, || {
            format!("{name} differs from the golden matrix")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("4 matrices identical, {elapsed:?}"))
}

fn theorem_soundness() -> Outcome {
    let start = Instant::now();
    let plan: [(Construction, &[u32]); 3] = [
        (Construction::QuadraticBlocks, &[3, 5, 7, 9, 11, 13, 25, 27]),
        (
            Construction::LinearBlocks,
            &[2, 3, 4, 5, 7, 8, 9, 16, 25, 27],
        ),
        (Construction::ShiftedLinearBlocks, &[2, 3, 4, 5, 7, 8, 9]),
    ];
    let mut checked = 0;
    let mut order_729 = Duration::ZERO;
    for (construction, qs) in plan {
        for &q in qs {
            let t = Instant::now();
            let h = construction.build(&gf(q)).map_err(|e| e.to_string())?;
            let report = verify_gh_with(&h, h.claimed_lambda(), &single_threaded())
                .map_err(|e| e.to_string())?;
            ensure(report.passed, || {
                format!("{construction:?} q={q}: {:?}", report.first_failure)
            })?;
            if construction == Construction::ShiftedLinearBlocks && q == 9 {
                order_729 = t.elapsed();
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(order_729 < Duration::from_secs(60), || {
        format!("q=9 GH(q, q^2) took {order_729:?}")
    })?;
    ensure(elapsed < Duration::from_secs(300), || {
        format!("suite took {elapsed:?}")
    })?;
    Ok(format!(
        "{checked} matrices flat, {elapsed:?} total, order 729 in {order_729:?}"
    ))
}

fn all_tables(q: usize) -> impl Iterator<Item = Vec<u16>> {
    (0..q.pow(q as u32)).map(move |mut code| {
        (0..q)
            .map(|_| {
                let d = (code % q) as u16;
                code /= q;
                d
            })
            .collect()
    })
}

fn planar_iff_type_i() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for q in [2, 3, 4] {
        let field = gf(q);
        for table in all_tables(q as usize) {
            let f = FieldFunction::from_table(&field, table).unwrap();
            let gh = verify_gh_with(&matrix_m(&f), 1, &single_threaded())
                .map_err(|e| e.to_string())?
                .passed;
            ensure(f.is_planar() == gh, || format!("q={q} {:?}", f.table()))?;
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{total} functions agree, {elapsed:?}"))
}

fn family_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for q in [3, 5, 9, 7] {
        let field = gf(q);
        let q = q as u16;
        for _ in 0..100 {
            let b: Vec<u16> = (1..field.n()).map(|_| rng.gen_range(0..q)).collect();
            let (a0, a1, a2) = (
                rng.gen_range(0..q),
                rng.gen_range(0..q),
                rng.gen_range(1..q),
            );
            let f = FieldFunction::quadratic_linearized(&field, a0, a1, a2, &b)
                .map_err(|e| e.to_string())?;
            ensure(f.is_planar(), || {
                format!("not planar: GF({q}) {:?}", f.origin())
            })?;
            checked += 1;
        }
    }
    // exhaustive quadratic family at q = 3
    let f3 = gf(3);
    for a0 in 0..3 {
        for a1 in 0..3 {
            for a2 in 1..3 {
                let f = FieldFunction::quadratic_linearized(&f3, a0, a1, a2, &[]).unwrap();
                ensure(f.is_planar(), || format!("not planar: {:?}", f.origin()))?;
                checked += 1;
            }
        }
    }
    for q in [2, 3, 4, 8, 9] {
        let field = gf(q);
        let q = q as u16;
        for _ in 0..100 {
            let b: Vec<u16> = (0..field.n()).map(|_| rng.gen_range(0..q)).collect();
            let f = FieldFunction::affine_linearized(&field, rng.gen_range(0..q), &b)
                .map_err(|e| e.to_string())?;
            ensure(f.is_type_ii(), || {
                format!("not type II: GF({q}) {:?}", f.origin())
            })?;
            checked += 1;
        }
    }
    // exhaustive affine-linearized family for q <= 4
    for q in [2u32, 3, 4] {
        let field = gf(q);
        let terms = field.n() as usize + 1;
        for code in 0..(q as usize).pow(terms as u32) {
            let digits: Vec<u16> = (0..terms)
                .map(|i| ((code / (q as usize).pow(i as u32)) % q as usize) as u16)
                .collect();
            let f = FieldFunction::affine_linearized(&field, digits[0], &digits[1..]).unwrap();
            ensure(f.is_type_ii(), || format!("not type II: {:?}", f.origin()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} family members, zero failures"))
}

/// Literal definitions, independent of the library's tests.
fn naive_counts(field: &FiniteField) -> (u64, u64) {
    let q = field.q() as u16;
    let (mut planar, mut type_ii) = (0, 0);
    for t in all_tables(q as usize) {
        let is_planar = (1..q).all(|a| {
            let mut image: Vec<u16> = (0..q)
                .map(|x| field.sub_raw(t[field.add_raw(x, a) as usize], t[x as usize]))
                .collect();
            image.sort_unstable();
            image.dedup();
            image.len() == q as usize
        });
        let is_type_ii = (0..q).all(|a| {
            let diffs: Vec<u16> = (0..q)
                .map(|b| field.sub_raw(t[b as usize], t[field.sub_raw(b, a) as usize]))
                .collect();
            diffs.iter().all(|&d| d == diffs[0])
        });
        planar += is_planar as u64;
        type_ii += is_type_ii as u64;
    }
    (planar, type_ii)
}

fn classification() -> Outcome {
    let f3 = gf(3);
    let f4 = gf(4);
    let c3 = classify_all_functions(&f3).map_err(|e| e.to_string())?;
    let c4 = classify_all_functions(&f4).map_err(|e| e.to_string())?;
    ensure((c3.type_i, c3.type_ii) == (18, 9), || {
        format!("GF(3): {c3:?}")
    })?;
    ensure(c4.type_ii == 64, || format!("GF(4): {c4:?}"))?;
    ensure(naive_counts(&f3) == (18, 9), || {
        "GF(3) naive oracle disagrees".into()
    })?;
    ensure(naive_counts(&f4).1 == 64, || {
        "GF(4) naive oracle disagrees".into()
    })?;
    // quadratics a0 + a1 x + a2 x^2 with a2 != 0; affine maps a + b0 x + b1 x^p ...
    ensure(3 * 3 * 2 == c3.type_i && 3u64.pow(2) == c3.type_ii, || {
        "GF(3) formula".into()
    })?;
    ensure(4u64.pow(3) == c4.type_ii, || "GF(4) formula".into())?;
    Ok(format!(
        "GF(3) type I {} type II {}, GF(4) type II {}",
        c3.type_i, c3.type_ii, c4.type_ii
    ))
}

fn mutation_sensitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut matrices: Vec<GhMatrix> = Vec::new();
    for q in [2, 3, 4, 5] {
        let field = gf(q);
        if q % 2 == 1 {
            matrices.push(Construction::QuadraticBlocks.build(&field).unwrap());
        }
        matrices.push(Construction::LinearBlocks.build(&field).unwrap());
        matrices.push(Construction::ShiftedLinearBlocks.build(&field).unwrap());
    }
    let mut mutants = 0;
    for h in &matrices {
        let q = h.q() as u16;
        for _ in 0..50 {
            let mut m = h.clone();
            let (r, c) = (rng.gen_range(0..h.order()), rng.gen_range(0..h.order()));
            m.set(r, c, (h.get(r, c) + rng.gen_range(1..q)) % q)
                .unwrap();
            let report = verify_gh(&m, h.claimed_lambda()).map_err(|e| e.to_string())?;
            ensure(!report.passed, || {
                format!("escape: {:?} q={q} at ({r}, {c})", h.provenance())
            })?;
            mutants += 1;
        }
    }
    Ok(format!(
        "{mutants} mutants over {} matrices, zero escapes",
        matrices.len()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_ghforge");
    let invocations: [&[&str]; 5] = [
        &["--theorem", "3.1", "--p", "3", "--n", "2"],
        &["--theorem", "3.2", "--p", "2", "--n", "3"],
        &["--theorem", "3.2", "--p", "3", "--n", "1"],
        &["--theorem", "3.3", "--p", "3", "--n", "1"],
        &["--theorem", "3.3", "--p", "2", "--n", "2"],
    ];
    for (i, args) in invocations.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{i}-{run}.ghm"));
            let status = Command::new(bin)
                .arg("construct")
                .args(*args)
                .arg("--out")
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())?
                .status;
            ensure(status.success(), || format!("construct {args:?} failed"))?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{args:?} not byte-identical")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let base = Construction::ShiftedLinearBlocks.build(&gf(4)).unwrap();
    let mut mutated = base.clone();
    for _ in 0..3 {
        let (r, c) = (rng.gen_range(0..64), rng.gen_range(0..64));
        mutated.set(r, c, (mutated.get(r, c) + 1) % 4).unwrap();
    }
    for h in [&base, &mutated] {
        for collect_all in [false, true] {
            let reports: Vec<_> = [1, 2, 3, 8]
                .iter()
                .map(|&threads| {
                    let opts = VerifyOptions {
                        threads: Some(threads),
                        collect_all,
                        check_columns: false,
                    };
                    verify_gh_with(h, 16, &opts).unwrap()
                })
                .collect();
            ensure(reports.windows(2).all(|w| w[0] == w[1]), || {
                "verifier report depends on thread count".into()
            })?;
        }
    }
    Ok(format!(
        "{} invocations byte-identical, verifier reports equal for 1/2/3/8 threads",
        invocations.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 example fixtures byte-exact", example_fixtures),
        ("AC2 construction soundness", theorem_soundness),
        ("AC3 planar <=> M(f) is GH(q,1), q<=4", planar_iff_type_i),
        (
            "AC4 quadratic / linearized family properties",
            family_properties,
        ),
        ("AC5 exhaustive classification counts", classification),
        (
            "AC6 single-entry mutation sensitivity",
            mutation_sensitivity,
        ),
        ("AC7 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
