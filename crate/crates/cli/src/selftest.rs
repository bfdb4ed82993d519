//! Deterministic replay of the reference examples and seeded property
//! batteries. Every check returns a one-line detail on success.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riordan_core::compress::{
    build_compressed, compress_matrix, compress_matrix_to, compressed_recurrence_check,
    compressed_seqchar, hat_spec,
};
use riordan_core::double::{
    build_dar, build_double, dar_inverse, dar_mul, dar_production, dar_seqchar, dar_seqchar_oracle,
    w_forms, DarSpec,
};
use riordan_core::eco::{generate_from_production, rule_levels, rule_production, unit_seed};
use riordan_core::fixtures;
use riordan_core::rational::{int, rat};
use riordan_core::riordan::{build_riordan, production_from_az, riordan_seqchar, shift_violation};
use riordan_core::sample::{random_dar_spec, random_pf_core};
use riordan_core::tp::{
    is_tp, recheck_witness, tp_build_linear_b, tp_build_tg_alpha, tp_check_thm61, Verdict,
};
use riordan_core::{Matrix, Rational, Series};

/// Seed of every random battery.
pub const SEED: u64 = 0x5eed_2024;
/// Number of random specs in each battery.
pub const BATCH: usize = 50;

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn() -> Result<String, String>;

fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("example-matrix", example_matrix),
        ("example-sequences", example_sequences),
        ("example-production", example_production),
        ("compression", compression),
        ("pascal-chain", pascal_chain),
        ("tp-witness", tp_witness),
        ("group-laws", group_laws),
        ("compression-properties", compression_properties),
        ("tp-theorems", tp_theorems),
        ("errata", errata),
        ("succession-rules", succession_rules),
    ]
}

pub fn names() -> Vec<&'static str> {
    checks().into_iter().map(|(n, _)| n).collect()
}

/// Runs every check whose name contains `filter`.
pub fn run(filter: Option<&str>) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|(name, check)| {
            let start = Instant::now();
            let outcome =
                std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CheckResult {
                    name,
                    passed: true,
                    detail,
                    millis,
                },
                Err(detail) => CheckResult {
                    name,
                    passed: false,
                    detail,
                    millis,
                },
            }
        })
        .collect()
}

pub fn table(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{mark}  {:<width$}  {:>6} ms  {}\n",
            r.name, r.millis, r.detail
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!(
        "{} passed, {failed} failed\n",
        results.len() - failed
    ));
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn int_matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_int_rows(rows)
}

fn example_matrix() -> Result<String, String> {
    let m = build_dar(&fixtures::example_dar(12).map_err(err)?, 9).map_err(err)?;
    let rows: Vec<&[i64]> = fixtures::EXAMPLE_DAR_ROWS.iter().map(|r| &r[..]).collect();
    ensure(m == int_matrix(&rows), || {
        format!("built matrix differs:\n{m}")
    })?;
    Ok("10 rows match".into())
}

fn example_sequences() -> Result<String, String> {
    let b = dar_seqchar(&fixtures::example_dar(24).map_err(err)?).map_err(err)?;
    let want = |name: &str, s: &Series, v: &[i64]| {
        ensure(
            s.trunc() + 1 >= v.len() && s.agrees_with(&Series::from_ints(v)),
            || format!("{name} = {s}"),
        )
    };
    want("A", &b.a, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0])?;
    want("Z1", &b.z1, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0])?;
    want("Z2", &b.z2, &fixtures::EXAMPLE_Z2)?;
    want("W", &b.w, &fixtures::EXAMPLE_W)?;
    Ok("A, Z1, Z2, W agree through degree 10".into())
}

fn example_production() -> Result<String, String> {
    let spec = fixtures::example_dar(24).map_err(err)?;
    let p = dar_production(&spec, 15).map_err(err)?;
    for (i, row) in fixtures::EXAMPLE_DAR_PRODUCTION.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            ensure(p.get(i, j) == &int(v), || {
                format!("P[{i}][{j}] = {}", p.get(i, j))
            })?;
        }
    }
    let d = build_dar(&spec, 15).map_err(err)?;
    ensure(shift_violation(&d, &p, 2).map_err(err)?.is_none(), || {
        "D P differs from D shifted by two rows".into()
    })?;
    Ok("printed columns match; D P = D shifted by two through n = 16".into())
}

fn compression() -> Result<String, String> {
    let double = fixtures::fibonacci_stanley_double(16).map_err(err)?;
    let c = compress_matrix(&build_double(&double, 12).map_err(err)?).map_err(err)?;
    for (i, row) in fixtures::FIBONACCI_STANLEY_ROWS.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            ensure(c.get(i, k) == &int(v), || format!("row {i} differs"))?;
        }
    }
    let sums: Vec<Rational> = (0..6).map(|i| c.row(i).iter().sum()).collect();
    ensure(sums == [1, 2, 3, 5, 8, 13].map(int), || {
        format!("row sums {sums:?}")
    })?;
    let hs = hat_spec(&fixtures::example_dar(16).map_err(err)?).map_err(err)?;
    ensure(
        hs.agrees_with(&fixtures::example_hat(8).map_err(err)?),
        || "hat_spec differs".into(),
    )?;
    Ok("Fibonacci-Stanley rows and row sums; compressed example spec".into())
}

fn pascal_chain() -> Result<String, String> {
    let spec = fixtures::pascal(12).map_err(err)?;
    let az = riordan_seqchar(&spec, &int(1)).map_err(err)?;
    ensure(
        az.a.agrees_with(&Series::from_ints(&[1, 1, 0, 0, 0, 0])),
        || format!("A = {}", az.a),
    )?;
    ensure(
        az.z.agrees_with(&Series::from_ints(&[1, 0, 0, 0, 0, 0])),
        || format!("Z = {}", az.z),
    )?;
    let p = production_from_az(&az, 8).map_err(err)?;
    let g = generate_from_production(&p, 5, &unit_seed(8, 0)).map_err(err)?;
    for (i, row) in fixtures::PASCAL_ROWS.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            ensure(g.get(i, k) == &int(v), || {
                format!("generated row {i} differs")
            })?;
        }
    }
    let sums = build_riordan(&spec, 5).map_err(err)?.antidiagonal_sums();
    ensure(sums == [1, 1, 2, 3, 5, 8].map(int), || {
        format!("antidiagonal sums {sums:?}")
    })?;
    Ok("A = 1 + t, Z = 1, rows regenerate, antidiagonals 1,1,2,3,5,8".into())
}

fn tp_witness() -> Result<String, String> {
    let m = build_compressed(&fixtures::not_tp_spec(8).map_err(err)?, 4).map_err(err)?;
    let r = is_tp(&m, 5, 3);
    let w = r.witness.as_ref().ok_or("no witness")?;
    ensure(
        r.verdict == Verdict::NotTp
            && w.rows == fixtures::NOT_TP_WITNESS_ROWS
            && w.cols == fixtures::NOT_TP_WITNESS_COLS
            && w.det == int(fixtures::NOT_TP_WITNESS_DET),
        || format!("got rows {:?} cols {:?} det {}", w.rows, w.cols, w.det),
    )?;
    ensure(recheck_witness(&m, w), || "cofactor recheck failed".into())?;
    Ok("rows {1,2,3}, cols {0,1,2}, det -1".into())
}

/// The seeded batch of random double almost-Riordan specs.
pub fn random_specs(trunc: usize) -> Vec<DarSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..BATCH)
        .map(|_| random_dar_spec(&mut rng, trunc))
        .collect()
}

fn group_laws() -> Result<String, String> {
    let specs = random_specs(12);
    let id = DarSpec::identity(12);
    for (i, a) in specs.iter().enumerate() {
        let b = &specs[(i + 1) % BATCH];
        let c = &specs[(i + 2) % BATCH];
        let left = dar_mul(&dar_mul(a, b).map_err(err)?, c).map_err(err)?;
        let right = dar_mul(a, &dar_mul(b, c).map_err(err)?).map_err(err)?;
        ensure(left.agrees_with(&right), || {
            format!("spec {i}: associativity")
        })?;
        let inv = dar_inverse(a).map_err(err)?;
        ensure(dar_mul(a, &inv).map_err(err)?.agrees_with(&id), || {
            format!("spec {i}: inverse")
        })?;
        let lhs = build_dar(a, 10)
            .map_err(err)?
            .mul(&build_dar(b, 10).map_err(err)?)
            .map_err(err)?;
        ensure(
            lhs == build_dar(&dar_mul(a, b).map_err(err)?, 10).map_err(err)?,
            || format!("spec {i}: matrix product"),
        )?;
        let closed = dar_seqchar(a).map_err(err)?;
        let oracle = dar_seqchar_oracle(&build_dar(a, 12).map_err(err)?).map_err(err)?;
        ensure(closed.agrees_with(&oracle), || {
            format!("spec {i}: closed forms vs oracle")
        })?;
        let (direct, production) = w_forms(a).map_err(err)?;
        ensure(direct == production, || format!("spec {i}: W forms"))?;
    }
    Ok(format!("{BATCH} seeded specs at trunc 12"))
}

fn compression_properties() -> Result<String, String> {
    for (i, a) in random_specs(12).iter().enumerate() {
        let hs = hat_spec(a).map_err(err)?;
        let via = compress_matrix_to(&build_dar(a, 12).map_err(err)?, 6).map_err(err)?;
        ensure(via == build_compressed(&hs, 6).map_err(err)?, || {
            format!("spec {i}: routes differ")
        })?;
        let bundle = compressed_seqchar(&hs).map_err(err)?;
        ensure(bundle.agrees_with(&dar_seqchar(a).map_err(err)?), || {
            format!("spec {i}: bundles differ")
        })?;
        let report = compressed_recurrence_check(&via, &bundle);
        ensure(report.passed(), || {
            format!("spec {i}: {:?}", report.violation)
        })?;
    }
    Ok(format!(
        "{BATCH} seeded specs: routes, bundles, skewed recurrences"
    ))
}

fn tp_theorems() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (n, r) = (8, 3);
    let mut constructions = 0;
    for i in 0..BATCH {
        let core = random_pf_core(&mut rng, n + 2);
        let rep = tp_check_thm61(&core, n, r).map_err(err)?;
        ensure(rep.report.is_tp(), || {
            format!("core {i}: {:?}", rep.report.witness)
        })?;
        ensure(rep.ladder.holds(), || {
            format!("core {i}: ladder {:?}", rep.ladder)
        })?;
        for alpha in [int(1), rat(5, 2)] {
            let c = tp_build_tg_alpha(&alpha, &core, n, r).map_err(err)?;
            ensure(c.report.is_tp(), || {
                format!("core {i}, alpha {alpha}: {:?}", c.report.witness)
            })?;
            constructions += 1;
        }
        for b0 in 0..4 {
            for b1 in 0..4 {
                let c = tp_build_linear_b(&int(b0), &int(b1), &core, n, r).map_err(err)?;
                ensure(c.report.is_tp(), || {
                    format!("core {i}, b = {b0} + {b1} t: {:?}", c.report.witness)
                })?;
                constructions += 1;
            }
        }
    }
    Ok(format!(
        "{BATCH} PF cores and {constructions} constructions at n = {n}, r = {r}"
    ))
}

fn errata() -> Result<String, String> {
    let spec = fixtures::pascal(12).map_err(err)?;
    let pascal = build_riordan(&spec, 4).map_err(err)?;
    let computed =
        production_from_az(&riordan_seqchar(&spec, &int(1)).map_err(err)?, 5).map_err(err)?;
    ensure(
        shift_violation(&pascal, &computed, 1)
            .map_err(err)?
            .is_none(),
        || "computed P fails".into(),
    )?;
    let printed: Vec<Vec<Rational>> = fixtures::PASCAL_PRODUCTION_PRINTED
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    let printed = Matrix::from_rows(printed).block(4, 4).map_err(err)?;
    let rows = generate_from_production(&printed, 3, &unit_seed(4, 0)).map_err(err)?;
    ensure(rows.get(2, 0) != &int(1), || {
        "the printed P unexpectedly generates Pascal".into()
    })?;

    let dar = fixtures::example_dar(24).map_err(err)?;
    let d = build_dar(&dar, 15).map_err(err)?;
    let p = dar_production(&dar, 15).map_err(err)?;
    ensure(shift_violation(&d, &p, 2).map_err(err)?.is_none(), || {
        "two-row shift fails".into()
    })?;
    ensure(shift_violation(&d, &p, 1).map_err(err)?.is_some(), || {
        "one-row shift unexpectedly holds".into()
    })?;
    Ok("computed Pascal P generates Pascal, printed one does not; shift is two rows".into())
}

fn succession_rules() -> Result<String, String> {
    let rule = fixtures::fibonacci_stanley_rule(0, 32).map_err(err)?;
    let counts = rule_levels(&rule, 8).map_err(err)?.counts;
    let want: Vec<_> = fixtures::FIBONACCI[1..10]
        .iter()
        .map(|&v| v.into())
        .collect();
    ensure(counts == want, || format!("level counts {counts:?}"))?;
    let p = rule_production(&rule, 12).map_err(err)?;
    let g = generate_from_production(&p, 6, &unit_seed(12, 0)).map_err(err)?;
    for (i, row) in fixtures::FIBONACCI_STANLEY_ROWS.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            ensure(g.get(i, k) == &int(v), || {
                format!("generated row {i} differs")
            })?;
        }
    }
    Ok("level counts 1,2,3,5,8,...; generated rows match the compressed array".into())
}
