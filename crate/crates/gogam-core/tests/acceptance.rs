//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`) and enforcing the stated
//! runtime budget where one exists. Run with
//! `cargo test --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use gogam_core::checks::{run_suite, CheckOptions, CheckResult, Suite};
use gogam_core::search::{
    count_with, enumerate_naive, enumerate_with, Family, FamilySpec, SearchOptions, CATALAN,
    TRIANGLE_COUNTS,
};
use gogam_core::Shape;

/// Run one criterion body, print its status line, and enforce the budget.
fn gate(label: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (word, details) = match &outcome {
        Ok(d) => ("PASS", d.clone()),
        Err(d) => ("FAIL", d.clone()),
    };
    println!(
        "ACCEPTANCE {label}: {word} ({:.2}s) - {}",
        elapsed.as_secs_f64(),
        details.replace('\n', " / ")
    );
    if let Err(d) = outcome {
        panic!("{label} failed: {d}");
    }
    if let Some(b) = budget {
        assert!(
            elapsed <= b,
            "{label} exceeded its {:.0}s budget: took {:.2}s",
            b.as_secs_f64(),
            elapsed.as_secs_f64()
        );
    }
}

/// Print every check line of a suite and fold them into one result.
fn report_all_pass(suite: Suite, results: &[CheckResult]) -> Result<String, String> {
    for r in results {
        println!("  {}", r.line());
    }
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        Ok(format!("suite {}: {} checks passed", suite.token(), results.len()))
    } else {
        Err(failed.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"))
    }
}

/// Assert the named checks all ran (guards against silently dropping one).
fn require_checks(results: &[CheckResult], names: &[&str]) -> Result<(), String> {
    for want in names {
        if !results.iter().any(|r| r.name == *want) {
            return Err(format!("expected a check named {want}"));
        }
    }
    Ok(())
}

fn spec(family: Family, shape: Shape) -> FamilySpec {
    FamilySpec { family, shape }
}

#[test]
fn criterion_1_worked_example_fidelity() {
    gate("1 worked-example-fidelity", Some(Duration::from_secs(1)), || {
        let results = run_suite(Suite::WorkedExamples, &CheckOptions::default());
        require_checks(
            &results,
            &[
                "left-gog-completion",
                "left-gogam-completion",
                "subtraction-sweep",
                "inversion-set",
                "covered-cells",
                "forward-trace",
                "inverse-trace",
            ],
        )?;
        report_all_pass(Suite::WorkedExamples, &results)
    });
}

#[test]
fn criterion_2_width_one_catalan_counts() {
    gate("2 width-one-catalan-counts", Some(Duration::from_secs(10)), || {
        let so = SearchOptions::default();
        let mut totals = Vec::new();
        for n in 1..=7usize {
            let shape = Shape::left_trapezoid(n, 1).map_err(|e| e.to_string())?;
            let g = count_with(&spec(Family::Gog, shape), &so).total;
            let m = count_with(&spec(Family::Gogam, shape), &so).total;
            if g != m {
                return Err(format!("families disagree at n={n}: {g} vs {m}"));
            }
            if g != CATALAN[n - 1] {
                return Err(format!("expected {} at n={n}, got {g}", CATALAN[n - 1]));
            }
            totals.push(g);
        }
        Ok(format!("width-one totals for n=1..7: {totals:?}"))
    });
}

#[test]
fn criterion_3_width_two_round_trip() {
    gate("3 width-two-round-trip", Some(Duration::from_secs(600)), || {
        let opts = CheckOptions { n_max: Some(8), ..CheckOptions::default() };
        let results = run_suite(Suite::RoundTrip, &opts);
        require_checks(
            &results,
            &[
                "width-two-forward",
                "width-two-inverse",
                "width-one-families",
                "inversion-positions-move",
                "rectangle-roundtrip",
                "rectangle-restriction-well-defined",
            ],
        )?;
        report_all_pass(Suite::RoundTrip, &results)
    });
}

#[test]
fn criterion_4_equienumeration_and_histograms() {
    gate("4 equienumeration-and-histograms", Some(Duration::from_secs(600)), || {
        let opts = CheckOptions { n_max: Some(6), ..CheckOptions::default() };
        let results = run_suite(Suite::Equienumeration, &opts);
        require_checks(
            &results,
            &[
                "triangle-totals",
                "right-trapezoids",
                "left-trapezoids",
                "rectangles",
                "left-right-mirror",
            ],
        )?;
        let first = report_all_pass(Suite::Equienumeration, &results)?;
        let stat = run_suite(Suite::Statistic, &opts);
        let second = report_all_pass(Suite::Statistic, &stat)?;
        Ok(format!("{first}; {second}"))
    });
}

#[test]
fn criterion_5_evaluator_oracle_equivalence() {
    gate("5 evaluator-oracle-equivalence", Some(Duration::from_secs(60)), || {
        let opts = CheckOptions { n_max: Some(6), ..CheckOptions::default() };
        let results = run_suite(Suite::GogamOracle, &opts);
        require_checks(
            &results,
            &["exhaustive-triangles", "random-triangles", "reference-values"],
        )?;
        report_all_pass(Suite::GogamOracle, &results)
    });
}

#[test]
fn criterion_6_lattice_and_replacement_closure() {
    gate("6 lattice-and-replacement-closure", None, || {
        let opts = CheckOptions { n_max: Some(5), ..CheckOptions::default() };
        let results = run_suite(Suite::Lattice, &opts);
        require_checks(
            &results,
            &["order-laws", "gog-closure", "gogam-not-closed", "replacement-closure"],
        )?;
        report_all_pass(Suite::Lattice, &results)
    });
}

#[test]
fn criterion_7_subtraction_sweep() {
    gate("7 subtraction-sweep", None, || {
        let opts = CheckOptions { n_max: Some(6), ..CheckOptions::default() };
        let results = run_suite(Suite::StandardProcedure, &opts);
        require_checks(
            &results,
            &["completion-invariance", "permutation-sweeps", "reference-sweeps"],
        )?;
        report_all_pass(Suite::StandardProcedure, &results)
    });
}

#[test]
fn criterion_8_enumerator_completeness() {
    gate("8 enumerator-completeness", None, || {
        let so = SearchOptions::default();
        let mut compared = 0u64;
        let mut shapes: Vec<Shape> = Vec::new();
        for n in 1..=5usize {
            shapes.push(Shape::triangle(n).map_err(|e| e.to_string())?);
        }
        for n in 1..=6usize {
            for k in 1..=n {
                shapes.push(Shape::left_trapezoid(n, k).map_err(|e| e.to_string())?);
                shapes.push(Shape::right_trapezoid(n, k).map_err(|e| e.to_string())?);
                for l in 1..=(n + 1 - k) {
                    shapes.push(Shape::rectangle(n, k, l).map_err(|e| e.to_string())?);
                }
            }
        }
        for shape in shapes {
            for family in [Family::Gog, Family::Gogam] {
                let pruned: Vec<String> = enumerate_with(&spec(family, shape), &so)
                    .iter()
                    .map(|p| p.serialize())
                    .collect();
                let naive: Vec<String> =
                    enumerate_naive(&spec(family, shape)).iter().map(|p| p.serialize()).collect();
                if pruned != naive {
                    return Err(format!(
                        "pruned and naive outputs differ for {} {shape}: {} vs {} members",
                        family.token(),
                        pruned.len(),
                        naive.len()
                    ));
                }
                compared += pruned.len() as u64;
            }
        }
        for n in 1..=6usize {
            let shape = Shape::triangle(n).map_err(|e| e.to_string())?;
            let g = count_with(&spec(Family::Gog, shape), &so).total;
            let m = count_with(&spec(Family::Gogam, shape), &so).total;
            if g != TRIANGLE_COUNTS[n - 1] || m != TRIANGLE_COUNTS[n - 1] {
                return Err(format!(
                    "triangle totals at n={n}: gog {g}, gogam {m}, want {}",
                    TRIANGLE_COUNTS[n - 1]
                ));
            }
        }
        Ok(format!("{compared} members agree between pruned and naive enumeration"))
    });
}
