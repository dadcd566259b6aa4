//! Named verification suites: golden-example fidelity, equienumeration,
//! bijection round trips, statistic preservation, evaluator/oracle
//! equivalence, lattice behaviour, and the diagonal subtraction sweep.
//!
//! Every suite is deterministic given [`CheckOptions`]; a failing check
//! carries mismatched totals or a serialized counterexample in its
//! details. Panics inside a check are caught and reported as failures.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bijection::{
    covered_cells, first_column_inversion_rows, forward_trace_invariants, gog_to_gogam_left,
    gogam_to_gog_left, inversions, left_completion_invariance, rectangle_map_n2,
    standard_procedure, Direction, Inversion,
};
use crate::fixtures;
use crate::gog::{
    complete_left_gog, complete_right_gog, extract_rectangle, gog_from_asm, is_gog_rectangle,
    is_gog_triangle, is_left_gog_trapezoid, is_right_gog_trapezoid, mirror, mirror_left_to_right,
    mirror_right_to_left, AsmMatrix,
};
use crate::gogam::{
    complete_left_gogam, complete_right_gogam, constant_on_partial_diagonals, eval_lhs,
    gogam_max_lhs, gogam_max_lhs_brute, is_gogam_triangle, is_left_gogam_n2,
    is_left_gogam_trapezoid, is_right_gogam_trapezoid, replace_diagonal_from, replace_upper_left,
    DiagonalSequence,
};
use crate::pattern::{Pattern, Shape};
use crate::search::{
    self, count_with, enumerate_with, Family, FamilySpec, SearchOptions, CATALAN, TRIANGLE_COUNTS,
};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CheckResult {
    /// One status line; embedded newlines in the details are flattened.
    pub fn line(&self) -> String {
        format!(
            "{} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.details.replace('\n', " / ")
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "status": if self.passed { "pass" } else { "fail" },
            "details": self.details,
            "elapsed_seconds": self.elapsed.as_secs_f64(),
        })
    }
}

/// Suite knobs. `n_max` of `None` uses the suite's default size cap;
/// `seed` drives every randomized sample; `threads` partitions enumeration
/// work without affecting results.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub n_max: Option<usize>,
    pub seed: u64,
    pub threads: usize,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions { n_max: None, seed: 0, threads: search::default_threads() }
    }
}

/// The named verification suites exposed by the CLI `check` subcommand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    WorkedExamples,
    Equienumeration,
    RoundTrip,
    Statistic,
    GogamOracle,
    Lattice,
    StandardProcedure,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::WorkedExamples,
        Suite::Equienumeration,
        Suite::RoundTrip,
        Suite::Statistic,
        Suite::GogamOracle,
        Suite::Lattice,
        Suite::StandardProcedure,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Suite::WorkedExamples => "paper-examples",
            Suite::Equienumeration => "equienumeration",
            Suite::RoundTrip => "roundtrip",
            Suite::Statistic => "statistic",
            Suite::GogamOracle => "gogam-oracle",
            Suite::Lattice => "lattice",
            Suite::StandardProcedure => "standard-procedure",
        }
    }

    pub fn from_token(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|k| k.token() == s)
    }

    /// Default size cap: 8 for the width-two round trip, 6 elsewhere.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::RoundTrip => 8,
            _ => 6,
        }
    }
}

/// Run one suite and collect its check results.
pub fn run_suite(suite: Suite, opts: &CheckOptions) -> Vec<CheckResult> {
    let n_max = opts.n_max.unwrap_or_else(|| suite.default_n_max());
    match suite {
        Suite::WorkedExamples => worked_examples(),
        Suite::Equienumeration => equienumeration(n_max, opts),
        Suite::RoundTrip => roundtrip(n_max, opts),
        Suite::Statistic => statistic(n_max, opts),
        Suite::GogamOracle => gogam_oracle(n_max, opts),
        Suite::Lattice => lattice(n_max, opts),
        Suite::StandardProcedure => standard_procedure_suite(n_max, opts),
    }
}

type CheckOutcome = Result<String, String>;

fn run_check(out: &mut Vec<CheckResult>, name: &str, f: impl FnOnce() -> CheckOutcome) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (passed, details) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(payload) => {
            let msg = if let Some(s) = payload.downcast_ref::<&str>() {
                (*s).to_string()
            } else if let Some(s) = payload.downcast_ref::<String>() {
                s.clone()
            } else {
                "non-string payload".to_string()
            };
            (false, format!("panicked: {msg}"))
        }
    };
    out.push(CheckResult { name: name.to_string(), passed, details, elapsed });
}

fn search_opts(opts: &CheckOptions) -> SearchOptions {
    SearchOptions { threads: opts.threads, oracle_seed: opts.seed, oracle_sample_percent: 1 }
}

fn spec(family: Family, shape: Shape) -> FamilySpec {
    FamilySpec { family, shape }
}

fn triangle(n: usize) -> Shape {
    Shape::triangle(n).unwrap()
}

fn left(n: usize, k: usize) -> Shape {
    Shape::left_trapezoid(n, k).unwrap()
}

fn right(n: usize, l: usize) -> Shape {
    Shape::right_trapezoid(n, l).unwrap()
}

fn rect(n: usize, k: usize, l: usize) -> Shape {
    Shape::rectangle(n, k, l).unwrap()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// Compare two sorted lists of serialized patterns, reporting sizes and the
/// first difference instead of dumping both lists.
fn expect_same_sets(what: &str, a: &[String], b: &[String]) -> Result<(), String> {
    if a == b {
        return Ok(());
    }
    let first = a
        .iter()
        .zip(b.iter())
        .find(|(x, y)| x != y)
        .map(|(x, y)| format!("first difference:\n{x}vs\n{y}"))
        .unwrap_or_else(|| "one list is a strict prefix of the other".to_string());
    Err(format!("{what}: sizes {} vs {}; {first}", a.len(), b.len()))
}

// ---------------------------------------------------------------------------
// Suite: bundled worked examples (golden bytes)
// ---------------------------------------------------------------------------

fn worked_examples() -> Vec<CheckResult> {
    let mut out = Vec::new();

    run_check(&mut out, "fixture-bytes", || {
        for (name, raw) in fixtures::RAW {
            let p = Pattern::parse(raw).map_err(|e| format!("{name}: {e}"))?;
            expect_eq(&format!("{name} re-serialization"), p.serialize().as_str(), *raw)?;
        }
        Ok(format!("{} fixtures parse and re-serialize byte-identically", fixtures::RAW.len()))
    });

    run_check(&mut out, "family-membership", || {
        expect(is_gog_triangle(&fixtures::eq05()), "eq05 must be a Gog triangle")?;
        expect(!is_gogam_triangle(&fixtures::eq05()), "eq05 must not be GOGAm")?;
        expect(is_right_gog_trapezoid(&fixtures::eq06()), "eq06 must be a right Gog trapezoid")?;
        expect(is_left_gog_trapezoid(&fixtures::eq07()), "eq07 must be a left Gog trapezoid")?;
        expect(!is_left_gogam_trapezoid(&fixtures::eq07()), "eq07 must not be left GOGAm")?;
        expect(is_gog_triangle(&fixtures::eq11()), "eq11 must be a Gog triangle")?;
        expect(is_right_gogam_trapezoid(&fixtures::eq14()), "eq14 must be right GOGAm")?;
        expect(!is_right_gog_trapezoid(&fixtures::eq14()), "eq14 must not be right Gog")?;
        expect(is_left_gogam_trapezoid(&fixtures::eq15()), "eq15 must be left GOGAm")?;
        expect(is_left_gogam_n2(&fixtures::eq15()), "eq15 must satisfy the width-two test")?;
        expect(!is_left_gog_trapezoid(&fixtures::eq15()), "eq15 must not be left Gog")?;
        expect(is_gogam_triangle(&fixtures::eq16()), "eq16 must be a GOGAm triangle")?;
        expect(!is_gog_triangle(&fixtures::eq16()), "eq16 must not be Gog")?;
        // A partial sweep only guarantees a valid triangle, not family membership:
        // eq17 tops out at 2 on the level-1 diagonal bound, so it is not GOGAm.
        expect(fixtures::eq17().is_gt_valid(), "eq17 must be a valid triangle")?;
        expect(!is_gogam_triangle(&fixtures::eq17()), "eq17 must sit outside the GOGAm family")?;
        Ok("all bundled patterns classify as expected".into())
    });

    run_check(&mut out, "left-gog-completion", || {
        let got = complete_left_gog(&fixtures::eq07()).map_err(|e| e.to_string())?;
        expect_eq("completion bytes", got.serialize(), fixtures::eq11().serialize())?;
        Ok("eq07 completes to eq11 byte-exactly".into())
    });

    run_check(&mut out, "left-gogam-completion", || {
        let got = complete_left_gogam(&fixtures::eq15());
        expect_eq("completion bytes", got.serialize(), fixtures::eq16().serialize())?;
        Ok("eq15 completes to eq16 byte-exactly".into())
    });

    run_check(&mut out, "right-completions", || {
        let g = complete_right_gog(&fixtures::eq06());
        expect_eq(
            "gog fill rows",
            g.rows().to_vec(),
            vec![vec![1, 2, 3, 4, 5], vec![1, 2, 4, 5], vec![1, 3, 4], vec![1, 3], vec![2]],
        )?;
        expect(is_gog_triangle(&g), "filled completion of eq06 must be Gog")?;
        let m = complete_right_gogam(&fixtures::eq14());
        expect_eq(
            "gogam fill rows",
            m.rows().to_vec(),
            vec![vec![1, 1, 1, 2, 4], vec![1, 1, 2, 4], vec![1, 2, 4], vec![1, 4], vec![3]],
        )?;
        expect(is_gogam_triangle(&m), "ones completion of eq14 must be GOGAm")?;
        Ok("right-trapezoid completions match derived values".into())
    });

    run_check(&mut out, "subtraction-sweep", || {
        let (got, ok) = standard_procedure(&fixtures::eq11(), 4);
        expect(ok, "sweep must stay valid")?;
        expect_eq("sweep bytes", got.serialize(), fixtures::eq17().serialize())?;
        Ok("eq11 sweeps to eq17 over the 4 rightmost diagonals".into())
    });

    run_check(&mut out, "inversion-set", || {
        let got: BTreeSet<Inversion> = inversions(&fixtures::eq20()).into_iter().collect();
        let want: BTreeSet<Inversion> =
            [Inversion { i: 2, j: 2 }, Inversion { i: 3, j: 1 }, Inversion { i: 4, j: 1 }]
                .into_iter()
                .collect();
        expect_eq("inversions of eq20", got, want)?;
        Ok("eq20 has exactly the inversions (2,2), (3,1), (4,1)".into())
    });

    run_check(&mut out, "covered-cells", || {
        expect_eq(
            "covered cells of eq20",
            covered_cells(&fixtures::eq20()),
            fixtures::eq22_cells(),
        )?;
        Ok("covered set matches the 6 golden cells".into())
    });

    run_check(&mut out, "forward-trace", || {
        let x = fixtures::sec43_step(0);
        let (y, trace) = gog_to_gogam_left(&x).map_err(|e| e.to_string())?;
        expect_eq("final image bytes", y.serialize(), fixtures::sec43_step(4).serialize())?;
        let pivots: Vec<usize> = trace.steps.iter().map(|s| s.pivot).collect();
        expect_eq("pivots", pivots, fixtures::SEC43_FORWARD_PIVOTS.to_vec())?;
        let invs: Vec<usize> = trace.steps.iter().map(|s| s.inversion_row).collect();
        expect_eq("inversion rows", invs, fixtures::SEC43_INVERSION_ROWS.to_vec())?;
        for (idx, s) in trace.steps.iter().enumerate() {
            expect_eq(
                &format!("intermediate {}", idx + 1),
                s.pattern.serialize(),
                fixtures::sec43_step(idx + 1).serialize(),
            )?;
        }
        forward_trace_invariants(&x, &trace)?;
        Ok("4 steps with pivots 7,6,5,2; every intermediate byte-exact".into())
    });

    run_check(&mut out, "inverse-trace", || {
        let y = fixtures::sec43_step(4);
        let (x, trace) = gogam_to_gog_left(&y).map_err(|e| e.to_string())?;
        expect_eq("recovered input bytes", x.serialize(), fixtures::sec43_step(0).serialize())?;
        for (pos, s) in trace.steps.iter().enumerate() {
            expect_eq(&format!("intermediate index at position {pos}"), s.step, 3 - pos)?;
            expect_eq(
                &format!("intermediate bytes at position {pos}"),
                s.pattern.serialize(),
                fixtures::sec43_step(3 - pos).serialize(),
            )?;
        }
        let pivots: Vec<usize> = trace.steps.iter().map(|s| s.pivot).collect();
        expect_eq("pivots", pivots, fixtures::SEC43_INVERSE_PIVOTS.to_vec())?;
        Ok("inverse recovers the input and replays the intermediates in reverse".into())
    });

    run_check(&mut out, "mirror-involution", || {
        let m = mirror(&fixtures::eq05()).map_err(|e| e.to_string())?;
        expect_eq(
            "mirrored rows",
            m.rows().to_vec(),
            vec![vec![1, 2, 3, 4, 5], vec![1, 2, 3, 5], vec![1, 2, 5], vec![2, 4], vec![3]],
        )?;
        let back = mirror(&m).map_err(|e| e.to_string())?;
        expect_eq("double mirror", back, fixtures::eq05())?;
        expect_eq("bottom entry", m.bottom_entry(), 3)?;
        Ok("mirror matches the derived value and squares to the identity".into())
    });

    run_check(&mut out, "staircase-evaluation", || {
        let stair = DiagonalSequence::new(1, vec![5, 4, 3, 2, 1]).map_err(|e| e.to_string())?;
        expect_eq("staircase value on eq05", eval_lhs(&fixtures::eq05(), &stair), 2)?;
        let (max1, _) = gogam_max_lhs(&fixtures::eq05(), 1);
        expect(max1 >= 2, "level-1 maximum of eq05 must be at least 2")?;
        let report = crate::gogam::gogam_slack_report(&fixtures::eq16());
        expect(report.all_within(), "every level of eq16 must satisfy its bound")?;
        Ok("level-1 staircase on eq05 evaluates to 2; eq16 passes all levels".into())
    });

    run_check(&mut out, "rectangle-slice", || {
        let r = extract_rectangle(&fixtures::eq05(), 2, 2).map_err(|e| e.to_string())?;
        expect_eq(
            "extracted rows",
            r.rows().to_vec(),
            vec![vec![], vec![], vec![4], vec![2, 4], vec![3]],
        )?;
        let t = crate::gog::extract_left(&fixtures::eq11(), 2).map_err(|e| e.to_string())?;
        expect_eq("left extraction bytes", t.serialize(), fixtures::eq07().serialize())?;
        Ok("extractions match the derived cell sets".into())
    });

    out
}

// ---------------------------------------------------------------------------
// Suite: equienumeration (totals, histograms, mirror witness)
// ---------------------------------------------------------------------------

fn equienumeration(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    run_check(&mut out, "triangle-totals", || {
        let mut seen = Vec::new();
        for n in 1..=n_max {
            let g = count_with(&spec(Family::Gog, triangle(n)), &so);
            let m = count_with(&spec(Family::Gogam, triangle(n)), &so);
            expect_eq(&format!("triangle totals at n={n}"), g.total, m.total)?;
            if n <= TRIANGLE_COUNTS.len() {
                expect_eq(
                    &format!("known triangle total at n={n}"),
                    g.total,
                    TRIANGLE_COUNTS[n - 1],
                )?;
            }
            seen.push(g.total);
        }
        Ok(format!("totals agree for n<=#{n_max}: {seen:?}"))
    });

    run_check(&mut out, "right-trapezoids", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for l in 1..=n {
                let g = count_with(&spec(Family::Gog, right(n, l)), &so);
                let m = count_with(&spec(Family::Gogam, right(n, l)), &so);
                expect_eq(&format!("right ({n},{l}) totals"), g.total, m.total)?;
                classes += 1;
            }
        }
        Ok(format!("{classes} right-trapezoid shapes equienumerated"))
    });

    run_check(&mut out, "left-trapezoids", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for k in 1..=n {
                let g = count_with(&spec(Family::Gog, left(n, k)), &so);
                let m = count_with(&spec(Family::Gogam, left(n, k)), &so);
                expect_eq(&format!("left ({n},{k}) totals"), g.total, m.total)?;
                expect_eq(
                    &format!("left ({n},{k}) bottom-entry histograms"),
                    g.by_bottom_entry,
                    m.by_bottom_entry,
                )?;
                classes += 1;
            }
        }
        Ok(format!("{classes} left-trapezoid shapes: totals and histograms agree"))
    });

    run_check(&mut out, "rectangles", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for k in 1..=n {
                for l in 1..=(n + 1 - k) {
                    let g = count_with(&spec(Family::Gog, rect(n, k, l)), &so);
                    let m = count_with(&spec(Family::Gogam, rect(n, k, l)), &so);
                    expect_eq(&format!("rect ({n},{k},{l}) totals"), g.total, m.total)?;
                    expect_eq(
                        &format!("rect ({n},{k},{l}) bottom-entry histograms"),
                        g.by_bottom_entry,
                        m.by_bottom_entry,
                    )?;
                    classes += 1;
                }
            }
        }
        Ok(format!("{classes} rectangle shapes: totals and histograms agree"))
    });

    run_check(&mut out, "left-right-mirror", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for k in 1..=n {
                let lefts = enumerate_with(&spec(Family::Gog, left(n, k)), &so);
                let rights = enumerate_with(&spec(Family::Gog, right(n, k)), &so);
                let mapped: BTreeSet<String> = lefts
                    .iter()
                    .map(|t| {
                        let r = mirror_left_to_right(t);
                        let back = mirror_right_to_left(&r);
                        assert_eq!(&back, t, "mirror must invert on ({n},{k})");
                        r.serialize()
                    })
                    .collect();
                let want: BTreeSet<String> = rights.iter().map(|t| t.serialize()).collect();
                expect_eq(&format!("mirror image set at ({n},{k})"), mapped.len(), lefts.len())?;
                if mapped != want {
                    return Err(format!(
                        "mirror images of left ({n},{k}) Gog trapezoids differ from the right set"
                    ));
                }
                classes += 1;
            }
        }
        Ok(format!("{classes} shapes: mirror is a bijection between left and right sets"))
    });

    out
}

// ---------------------------------------------------------------------------
// Suite: bijection round trips
// ---------------------------------------------------------------------------

fn roundtrip(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    run_check(&mut out, "width-two-forward", || {
        let mut total = 0u64;
        for n in 2..=n_max {
            for x in enumerate_with(&spec(Family::Gog, left(n, 2)), &so) {
                let (y, trace) = gog_to_gogam_left(&x)
                    .map_err(|e| format!("forward failed on\n{}: {e}", x.serialize()))?;
                if !is_left_gogam_n2(&y) || !is_left_gogam_trapezoid(&y) {
                    return Err(format!("image fails membership:\n{}", y.serialize()));
                }
                let (back, _) = gogam_to_gog_left(&y).map_err(|e| e.to_string())?;
                if back != x {
                    return Err(format!(
                        "inverse(forward) != id on\n{}got\n{}",
                        x.serialize(),
                        back.serialize()
                    ));
                }
                if y.bottom_entry() != x.bottom_entry() {
                    return Err(format!("bottom entry changed on\n{}", x.serialize()));
                }
                if first_column_inversion_rows(&y).len() != first_column_inversion_rows(&x).len() {
                    return Err(format!("inversion count changed on\n{}", x.serialize()));
                }
                if !y.leq(&x).map_err(|e| e.to_string())? {
                    return Err(format!("image exceeds input on\n{}", x.serialize()));
                }
                forward_trace_invariants(&x, &trace)
                    .map_err(|e| format!("trace invariant broken on\n{}: {e}", x.serialize()))?;
                total += 1;
            }
        }
        Ok(format!("{total} width-two inputs up to n={n_max}: image valid, inverse exact"))
    });

    run_check(&mut out, "width-two-inverse", || {
        let mut total = 0u64;
        for n in 2..=n_max {
            for y in enumerate_with(&spec(Family::Gogam, left(n, 2)), &so) {
                let (x, _) = gogam_to_gog_left(&y)
                    .map_err(|e| format!("inverse failed on\n{}: {e}", y.serialize()))?;
                if !is_left_gog_trapezoid(&x) {
                    return Err(format!("preimage fails membership:\n{}", x.serialize()));
                }
                let (fwd, _) = gog_to_gogam_left(&x).map_err(|e| e.to_string())?;
                if fwd != y {
                    return Err(format!(
                        "forward(inverse) != id on\n{}got\n{}",
                        y.serialize(),
                        fwd.serialize()
                    ));
                }
                total += 1;
            }
        }
        Ok(format!("{total} width-two images up to n={n_max}: forward(inverse) = id"))
    });

    run_check(&mut out, "width-one-families", || {
        let bound = (n_max + 2).min(10);
        let mut total = 0u64;
        for n in 1..=bound {
            // Everything below compares string-sorted lists, so sort the
            // numerically ordered enumerator output the same way.
            let mut gog: Vec<String> = enumerate_with(&spec(Family::Gog, left(n, 1)), &so)
                .iter()
                .map(|p| p.serialize())
                .collect();
            gog.sort();
            let mut gogam: Vec<String> = enumerate_with(&spec(Family::Gogam, left(n, 1)), &so)
                .iter()
                .map(|p| p.serialize())
                .collect();
            gogam.sort();
            expect_same_sets(&format!("width-one families at n={n}"), &gog, &gogam)?;
            let mut direct = bounded_columns(n);
            direct.sort();
            expect_same_sets(&format!("width-one vs bound-only set at n={n}"), &gog, &direct)?;
            if n <= CATALAN.len() {
                expect_eq(&format!("Catalan total at n={n}"), gog.len() as u64, CATALAN[n - 1])?;
            }
            for raw in &gog {
                let t = Pattern::parse(raw).unwrap();
                let (f, _) = gog_to_gogam_left(&t).map_err(|e| e.to_string())?;
                let (b, _) = gogam_to_gog_left(&t).map_err(|e| e.to_string())?;
                if f != t || b != t {
                    return Err(format!("width-one map is not the identity on\n{raw}"));
                }
                total += 1;
            }
        }
        Ok(format!("{total} width-one patterns up to n={bound}: families equal, maps identity"))
    });

    run_check(&mut out, "inversion-positions-move", || {
        let x = fixtures::sec43_step(0);
        let y = fixtures::sec43_step(4);
        let xi = first_column_inversion_rows(&x);
        let yi = first_column_inversion_rows(&y);
        expect_eq("witness input rows", xi.clone(), vec![6, 5, 2, 1])?;
        expect_eq("witness output rows", yi.clone(), vec![6, 5, 4, 1])?;
        expect(xi.len() == yi.len() && xi != yi, "counts must agree while positions differ")?;
        Ok("count preserved (4) while positions moved: {6,5,2,1} vs {6,5,4,1}".into())
    });

    run_check(&mut out, "rectangle-roundtrip", || {
        let bound = n_max.min(6);
        let mut total = 0u64;
        for n in 2..=bound {
            for l in 1..=(n - 1) {
                for r in enumerate_with(&spec(Family::Gog, rect(n, 2, l)), &so) {
                    let img = rectangle_map_n2(&r, Direction::GogToGogam)
                        .map_err(|e| format!("forward failed on\n{}: {e}", r.serialize()))?;
                    if !crate::gogam::is_gogam_rectangle(&img) {
                        return Err(format!("image not GOGAm:\n{}", img.serialize()));
                    }
                    let back =
                        rectangle_map_n2(&img, Direction::GogamToGog).map_err(|e| e.to_string())?;
                    if back != r {
                        return Err(format!("rectangle round trip broke on\n{}", r.serialize()));
                    }
                    total += 1;
                }
                for r in enumerate_with(&spec(Family::Gogam, rect(n, 2, l)), &so) {
                    let pre = rectangle_map_n2(&r, Direction::GogamToGog)
                        .map_err(|e| format!("inverse failed on\n{}: {e}", r.serialize()))?;
                    if !is_gog_rectangle(&pre) {
                        return Err(format!("preimage not Gog:\n{}", pre.serialize()));
                    }
                    let fwd =
                        rectangle_map_n2(&pre, Direction::GogToGogam).map_err(|e| e.to_string())?;
                    if fwd != r {
                        return Err(format!("rectangle round trip broke on\n{}", r.serialize()));
                    }
                    total += 1;
                }
            }
        }
        Ok(format!("{total} width-two rectangles up to n={bound} round-trip exactly"))
    });

    run_check(&mut out, "rectangle-restriction-well-defined", || {
        // The restriction to width-two rectangles goes through the canonical
        // completion: complete, map the trapezoids, extract.  That composite
        // is total on every rectangle and bijective onto the other family.
        let bound = n_max.min(6);
        let mut total = 0u64;
        for n in 2..=bound {
            for l in 1..=(n - 1) {
                let shape = rect(n, 2, l);
                let gog_rects = enumerate_with(&spec(Family::Gog, shape), &so);
                let gogam_rects = enumerate_with(&spec(Family::Gogam, shape), &so);
                let mut image: Vec<String> = Vec::new();
                for r in &gog_rects {
                    let y =
                        rectangle_map_n2(r, Direction::GogToGogam).map_err(|e| e.to_string())?;
                    let back =
                        rectangle_map_n2(&y, Direction::GogamToGog).map_err(|e| e.to_string())?;
                    expect_eq("rectangle round trip", back.serialize(), r.serialize())?;
                    image.push(y.serialize());
                }
                image.sort();
                let target: Vec<String> = {
                    let mut t: Vec<String> = gogam_rects.iter().map(|p| p.serialize()).collect();
                    t.sort();
                    t
                };
                expect_same_sets(&format!("({n},2,{l}) rectangle image"), &image, &target)?;
                total += gog_rects.len() as u64;
            }
        }
        // The raw trapezoid map does not factor through rectangle slices: these
        // two members share their (3,2,1) slice yet map to different slices, so
        // the canonical completion above is load-bearing, not a convenience.
        let t1 = Pattern::parse("left 3 2\n1 2\n1 3\n2\n").map_err(|e| e.to_string())?;
        let t2 = Pattern::parse("left 3 2\n1 2\n2 3\n2\n").map_err(|e| e.to_string())?;
        let shape = rect(3, 2, 1);
        expect_eq(
            "shared slice",
            t1.extract(shape).map_err(|e| e.to_string())?.serialize(),
            t2.extract(shape).map_err(|e| e.to_string())?.serialize(),
        )?;
        let (y1, _) = gog_to_gogam_left(&t1).map_err(|e| e.to_string())?;
        let (y2, _) = gog_to_gogam_left(&t2).map_err(|e| e.to_string())?;
        expect(
            y1.extract(shape).map_err(|e| e.to_string())?.serialize()
                != y2.extract(shape).map_err(|e| e.to_string())?.serialize(),
            "slice images must differ without the canonical completion",
        )?;
        Ok(format!("{total} rectangles up to n={bound} map bijectively via canonical completion"))
    });

    out
}

/// All width-one left-trapezoid members generated directly from the bound
/// `X_{i,1} <= n - i + 1` and column monotonicity, serialized.
fn bounded_columns(n: usize) -> Vec<String> {
    fn rec(n: usize, i: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<String>) {
        if i == 0 {
            let shape = Shape::left_trapezoid(n, 1).unwrap();
            let rows = cur.iter().map(|&v| vec![v]).collect();
            out.push(Pattern::new(shape, rows).unwrap().serialize());
            return;
        }
        for v in min..=(n - i + 1) as u32 {
            cur.push(v);
            rec(n, i - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, 1, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Suite: bottom-entry statistic
// ---------------------------------------------------------------------------

fn statistic(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    run_check(&mut out, "map-preserves-bottom-entry", || {
        let mut total = 0u64;
        for n in 1..=n_max {
            for k in 1..=2.min(n) {
                for x in enumerate_with(&spec(Family::Gog, left(n, k)), &so) {
                    let (y, _) = gog_to_gogam_left(&x).map_err(|e| e.to_string())?;
                    if y.bottom_entry() != x.bottom_entry() {
                        return Err(format!("forward changed the statistic on\n{}", x.serialize()));
                    }
                    total += 1;
                }
                for y in enumerate_with(&spec(Family::Gogam, left(n, k)), &so) {
                    let (x, _) = gogam_to_gog_left(&y).map_err(|e| e.to_string())?;
                    if x.bottom_entry() != y.bottom_entry() {
                        return Err(format!("inverse changed the statistic on\n{}", y.serialize()));
                    }
                    total += 1;
                }
            }
        }
        Ok(format!("{total} trapezoid mappings preserve the bottom entry"))
    });

    run_check(&mut out, "rectangle-map-preserves-bottom-entry", || {
        let mut total = 0u64;
        for n in 2..=n_max {
            for l in 1..=(n - 1) {
                for r in enumerate_with(&spec(Family::Gog, rect(n, 2, l)), &so) {
                    let img =
                        rectangle_map_n2(&r, Direction::GogToGogam).map_err(|e| e.to_string())?;
                    if img.bottom_entry() != r.bottom_entry() {
                        return Err(format!(
                            "rectangle map changed the statistic on\n{}",
                            r.serialize()
                        ));
                    }
                    total += 1;
                }
            }
        }
        Ok(format!("{total} rectangle mappings preserve the bottom entry"))
    });

    run_check(&mut out, "left-histograms", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for k in 1..=n {
                let g = count_with(&spec(Family::Gog, left(n, k)), &so);
                let m = count_with(&spec(Family::Gogam, left(n, k)), &so);
                expect_eq(
                    &format!("left ({n},{k}) histograms"),
                    g.by_bottom_entry,
                    m.by_bottom_entry,
                )?;
                classes += 1;
            }
        }
        Ok(format!("{classes} left-trapezoid histograms agree"))
    });

    run_check(&mut out, "rectangle-histograms", || {
        let mut classes = 0;
        for n in 1..=n_max {
            for k in 1..=n {
                for l in 1..=(n + 1 - k) {
                    let g = count_with(&spec(Family::Gog, rect(n, k, l)), &so);
                    let m = count_with(&spec(Family::Gogam, rect(n, k, l)), &so);
                    expect_eq(
                        &format!("rect ({n},{k},{l}) histograms"),
                        g.by_bottom_entry,
                        m.by_bottom_entry,
                    )?;
                    classes += 1;
                }
            }
        }
        Ok(format!("{classes} rectangle histograms agree"))
    });

    out
}

// ---------------------------------------------------------------------------
// Suite: optimized evaluator vs literal enumeration
// ---------------------------------------------------------------------------

fn gogam_oracle(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    fn agree(p: &Pattern) -> Result<(), String> {
        for k in 1..p.n() {
            let (v, w) = gogam_max_lhs(p, k);
            let (bv, bw) = gogam_max_lhs_brute(p, k);
            if v != bv || w != bw {
                return Err(format!(
                    "level {k} disagreement on\n{}optimized ({v}, {:?}), brute ({bv}, {:?})",
                    p.serialize(),
                    w.indices(),
                    bw.indices()
                ));
            }
            if eval_lhs(p, &w) != v {
                return Err(format!("witness does not reproduce the value on\n{}", p.serialize()));
            }
        }
        Ok(())
    }

    run_check(&mut out, "exhaustive-triangles", || {
        let bound = n_max.min(5);
        let mut total = 0u64;
        for n in 1..=bound {
            for family in [Family::Gog, Family::Gogam] {
                for p in enumerate_with(&spec(family, triangle(n)), &so) {
                    agree(&p)?;
                    total += 1;
                }
            }
        }
        Ok(format!("{total} enumerated triangles up to n={bound}: all levels agree"))
    });

    run_check(&mut out, "random-triangles", || {
        let bound = (n_max + 1).min(7);
        let per_n = 1750usize;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut total = 0u64;
        for n in 2..=bound {
            for _ in 0..per_n {
                let p = search::random_gt_triangle(n, &mut rng);
                agree(&p)?;
                total += 1;
            }
        }
        expect(total >= 10_000 || bound < 7, "need at least 10^4 samples at the full bound")?;
        Ok(format!("{total} random GT triangles up to n={bound}: all levels agree"))
    });

    run_check(&mut out, "reference-values", || {
        let (v, w) = gogam_max_lhs(&fixtures::eq05(), 1);
        expect_eq("level-1 maximum on eq05", v, 2)?;
        expect_eq("witness evaluates back", eval_lhs(&fixtures::eq05(), &w), 2)?;
        let ones =
            Pattern::new(triangle(4), vec![vec![1, 1, 1, 1], vec![1, 1, 1], vec![1, 1], vec![1]])
                .unwrap();
        for k in 1..4 {
            expect_eq(&format!("all-ones maximum at level {k}"), gogam_max_lhs(&ones, k).0, 1)?;
        }
        Ok("reference maxima match hand values".into())
    });

    out
}

// ---------------------------------------------------------------------------
// Suite: lattice behaviour
// ---------------------------------------------------------------------------

/// Pinned pair of GOGAm triangles whose entrywise maximum is not GOGAm
/// (the level-2 inequality fails on the join), fixing non-closure as a
/// regression.
pub const NON_CLOSURE_WITNESS: (&str, &str) =
    ("triangle 3\n1 2 2\n2 2\n2\n", "triangle 3\n1 1 3\n1 3\n2\n");

fn lattice(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    run_check(&mut out, "order-laws", || {
        let bound = n_max.min(4);
        let mut sets = 0;
        for n in 1..=bound {
            for family in [Family::Gog, Family::Gogam] {
                let set = enumerate_with(&spec(family, triangle(n)), &so);
                for p in &set {
                    expect(p.leq(p).unwrap(), "reflexivity")?;
                }
                for p in &set {
                    for q in &set {
                        let pq = p.leq(q).unwrap();
                        let qp = q.leq(p).unwrap();
                        if pq && qp && p != q {
                            return Err("antisymmetry failed".into());
                        }
                        let j = p.join(q).unwrap();
                        let m = p.meet(q).unwrap();
                        expect(m.leq(p).unwrap() && m.leq(q).unwrap(), "meet is a lower bound")?;
                        expect(p.leq(&j).unwrap() && q.leq(&j).unwrap(), "join is an upper bound")?;
                        expect(p.join(&m).unwrap() == *p, "absorption join(p, meet(p,q)) = p")?;
                        expect(p.meet(&j).unwrap() == *p, "absorption meet(p, join(p,q)) = p")?;
                        for r in &set {
                            if pq && q.leq(r).unwrap() && !p.leq(r).unwrap() {
                                return Err("transitivity failed".into());
                            }
                            if p.leq(r).unwrap() && q.leq(r).unwrap() && !j.leq(r).unwrap() {
                                return Err("join is not the least upper bound".into());
                            }
                            if r.leq(p).unwrap() && r.leq(q).unwrap() && !r.leq(&m).unwrap() {
                                return Err("meet is not the greatest lower bound".into());
                            }
                        }
                    }
                }
                sets += 1;
            }
        }
        Ok(format!("order and lattice laws hold over {sets} enumerated sets up to n={bound}"))
    });

    run_check(&mut out, "gog-closure", || {
        let bound = n_max.min(4);
        let mut pairs = 0u64;
        for n in 1..=bound {
            let set = enumerate_with(&spec(Family::Gog, triangle(n)), &so);
            for p in &set {
                for q in &set {
                    let j = p.join(q).unwrap();
                    let m = p.meet(q).unwrap();
                    if !is_gog_triangle(&j) || !is_gog_triangle(&m) {
                        return Err(format!(
                            "closure failed for\n{}and\n{}",
                            p.serialize(),
                            q.serialize()
                        ));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} pairs up to n={bound}: join and meet stay inside the family"))
    });

    run_check(&mut out, "gogam-not-closed", || {
        let bound = n_max.min(4);
        let mut witness = None;
        'outer: for n in 2..=bound {
            let set = enumerate_with(&spec(Family::Gogam, triangle(n)), &so);
            for p in &set {
                for q in &set {
                    let j = p.join(q).unwrap();
                    let m = p.meet(q).unwrap();
                    if !is_gogam_triangle(&j) || !is_gogam_triangle(&m) {
                        witness = Some((p.clone(), q.clone()));
                        break 'outer;
                    }
                }
            }
        }
        let (p, q) = witness.ok_or_else(|| {
            format!("expected a non-closure witness among the triangles up to n={bound}")
        })?;
        let found =
            format!("search found non-closure at n={}:\n{}{}", p.n(), p.serialize(), q.serialize());
        // Pinned regression pair: both members, join outside the family.
        let a = Pattern::parse(NON_CLOSURE_WITNESS.0).unwrap();
        let b = Pattern::parse(NON_CLOSURE_WITNESS.1).unwrap();
        expect(is_gogam_triangle(&a), "pinned witness a must be GOGAm")?;
        expect(is_gogam_triangle(&b), "pinned witness b must be GOGAm")?;
        let j = a.join(&b).unwrap();
        expect(j.is_gt_valid(), "pinned join must remain GT-valid")?;
        expect(!is_gogam_triangle(&j), "pinned join must fall outside the family")?;
        Ok(found)
    });

    run_check(&mut out, "replacement-closure", || {
        let bound = n_max.min(5);
        let mut replacements = 0u64;
        for n in 2..=bound {
            for x in enumerate_with(&spec(Family::Gogam, triangle(n)), &so) {
                for k in 1..n {
                    let y = replace_upper_left(&x, k);
                    expect(y.is_gt_valid(), "upper-left replacement must stay GT-valid")?;
                    if !is_gogam_triangle(&y) {
                        return Err(format!(
                            "upper-left replacement (k={k}) left the family on\n{}",
                            x.serialize()
                        ));
                    }
                    monotone_lhs(&x, &y, n)?;
                    replacements += 1;
                }
                for k in 1..=n {
                    for m in k..=n {
                        if !constant_on_partial_diagonals(&x, m, k) {
                            continue;
                        }
                        let y = replace_diagonal_from(&x, m, k);
                        expect(y.is_gt_valid(), "diagonal replacement must stay GT-valid")?;
                        if !is_gogam_triangle(&y) {
                            return Err(format!(
                                "diagonal replacement (m={m}, k={k}) left the family on\n{}",
                                x.serialize()
                            ));
                        }
                        monotone_lhs(&x, &y, n)?;
                        replacements += 1;
                    }
                }
            }
        }
        Ok(format!(
            "{replacements} replacements up to n={bound} stay GOGAm and never raise a level"
        ))
    });

    out
}

/// The per-level maxima of `y` never exceed those of `x`; at tiny sizes,
/// also compare every individual sequence value.
fn monotone_lhs(x: &Pattern, y: &Pattern, n: usize) -> Result<(), String> {
    for k in 1..n {
        if gogam_max_lhs(y, k).0 > gogam_max_lhs(x, k).0 {
            return Err(format!("replacement raised the level-{k} maximum on\n{}", x.serialize()));
        }
        if n <= 4 {
            for s in crate::gogam::all_diagonal_sequences(n, k) {
                if eval_lhs(y, &s) > eval_lhs(x, &s) {
                    return Err(format!(
                        "replacement raised a sequence value at level {k} on\n{}",
                        x.serialize()
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Suite: diagonal subtraction sweep
// ---------------------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

fn standard_procedure_suite(n_max: usize, opts: &CheckOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let so = search_opts(opts);

    run_check(&mut out, "completion-invariance", || {
        let bound = n_max.min(5);
        let mut total = 0u64;
        for n in 1..=bound {
            for k in 1..=n {
                for t in enumerate_with(&spec(Family::Gog, left(n, k)), &so) {
                    if !left_completion_invariance(&t) {
                        return Err(format!("invariance failed on\n{}", t.serialize()));
                    }
                    total += 1;
                }
            }
        }
        Ok(format!("{total} left Gog trapezoids up to n={bound}: sweep replicates column k"))
    });

    run_check(&mut out, "permutation-sweeps", || {
        let bound = n_max.min(6);
        let mut total = 0u64;
        for n in 1..=bound {
            for perm in permutations(n) {
                let asm = AsmMatrix::from_permutation(&perm).map_err(|e| e.to_string())?;
                let gog = gog_from_asm(&asm);
                let (y, ok) = standard_procedure(&gog, n);
                if !ok {
                    return Err(format!("sweep went invalid for permutation {perm:?}"));
                }
                if !is_gogam_triangle(&y) {
                    return Err(format!("sweep output not GOGAm for permutation {perm:?}"));
                }
                total += 1;
            }
        }
        Ok(format!("{total} permutation triangles up to n={bound} sweep into the GOGAm family"))
    });

    run_check(&mut out, "reference-sweeps", || {
        let (got, ok) = standard_procedure(&fixtures::eq11(), 4);
        expect(ok, "reference sweep must stay valid")?;
        expect_eq("reference sweep bytes", got.serialize(), fixtures::eq17().serialize())?;
        let asm = AsmMatrix::from_permutation(&[2, 3, 1]).map_err(|e| e.to_string())?;
        let gog = gog_from_asm(&asm);
        expect_eq(
            "triangle of the sample permutation",
            gog.rows().to_vec(),
            vec![vec![1, 2, 3], vec![2, 3], vec![2]],
        )?;
        let (y, ok) = standard_procedure(&gog, 3);
        expect(ok, "sample permutation sweep must stay valid")?;
        expect(is_gogam_triangle(&y), "sample permutation sweep must land in the family")?;
        // Strictly increasing columns leave nothing for the sweep to touch.
        let fixed = Pattern::new(triangle(3), vec![vec![1, 2, 3], vec![2, 3], vec![3]]).unwrap();
        expect(inversions(&fixed).is_empty(), "the strict-column triangle has no inversions")?;
        let (same, ok2) = standard_procedure(&fixed, 3);
        expect(ok2 && same == fixed, "inversion-free triangles must be unchanged")?;
        Ok("reference sweeps reproduce golden data".into())
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(results: &[CheckResult]) {
        for r in results {
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn worked_examples_pass() {
        assert_all_pass(&run_suite(Suite::WorkedExamples, &CheckOptions::default()));
    }

    #[test]
    fn small_equienumeration_passes() {
        let opts = CheckOptions { n_max: Some(4), ..Default::default() };
        assert_all_pass(&run_suite(Suite::Equienumeration, &opts));
    }

    #[test]
    fn small_roundtrip_passes() {
        let opts = CheckOptions { n_max: Some(5), ..Default::default() };
        assert_all_pass(&run_suite(Suite::RoundTrip, &opts));
    }

    #[test]
    fn small_statistic_passes() {
        let opts = CheckOptions { n_max: Some(4), ..Default::default() };
        assert_all_pass(&run_suite(Suite::Statistic, &opts));
    }

    #[test]
    fn small_oracle_passes() {
        let opts = CheckOptions { n_max: Some(4), ..Default::default() };
        assert_all_pass(&run_suite(Suite::GogamOracle, &opts));
    }

    #[test]
    fn small_lattice_passes() {
        let opts = CheckOptions { n_max: Some(4), ..Default::default() };
        assert_all_pass(&run_suite(Suite::Lattice, &opts));
    }

    #[test]
    fn small_standard_procedure_passes() {
        let opts = CheckOptions { n_max: Some(4), ..Default::default() };
        assert_all_pass(&run_suite(Suite::StandardProcedure, &opts));
    }

    #[test]
    fn suite_tokens_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_token(s.token()), Some(s));
        }
        assert_eq!(Suite::from_token("nope"), None);
    }

    #[test]
    fn result_line_flattens_newlines() {
        let r = CheckResult {
            name: "demo".into(),
            passed: false,
            details: "a\nb".into(),
            elapsed: Duration::from_millis(10),
        };
        assert!(r.line().starts_with("FAIL demo"));
        assert!(!r.line().contains('\n'));
        assert_eq!(r.to_json()["status"], "fail");
    }
}
