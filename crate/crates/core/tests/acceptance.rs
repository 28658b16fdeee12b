//! One PASS/FAIL line per acceptance criterion.
//!
//! Two criteria fail for reasons recorded in the decisions ledger: a misprinted
//! row of the quadratic table, and the negative generator case of monomial
//! positivity. Their failures are pinned exactly; the process exits nonzero
//! only when a criterion fails in some other way.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use pfaflab::cli::{run_check, RunConfig};
use pfaflab::diagrams::{enumerate_sym_tl, Matching, DEFAULT_DIAGRAM_BOUND};
use pfaflab::exact_poly::ExactPolynomial;
use pfaflab::immanants::tl_immanants;
use pfaflab::pfaffian_core::{GeneralMatrix, SkewArray};
use pfaflab::pfaffinants::{diagram_pfaffinant, VerificationReport};
use pfaflab::schur_q::{
    join_meet, scan_cell_transfer, scan_con1, scan_sort, skew_shapes_up_to, sort_split, strict_partitions_up_to, summarize,
    ScanRecord, Verdict,
};
use pfaflab::uncross::{enumerate_uncrossings, f_coefficient, ChordMap, DEFAULT_CLASS_BOUND};

enum Outcome {
    Pass(String),
    Fail(String),
    Known(String),
}

type Res = Result<Outcome, String>;

fn config(n: usize, bound: usize) -> RunConfig {
    RunConfig {
        n: Some(n),
        k: None,
        bound: (bound > 0).then_some(bound),
        format: None,
        cache_dir: None,
        seed: 0,
        no_cache: true,
        jobs: None,
    }
}

fn report(id: &str, n: usize, bound: usize) -> Result<VerificationReport, String> {
    run_check(id, &config(n, bound)).map_err(|e| format!("{id}: {e}"))
}

/// Runs the checks and merges their verdicts.
fn all_pass(checks: &[(&str, usize, usize)]) -> Res {
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for &(id, n, bound) in checks {
        let r = report(id, n, bound)?;
        notes.push(format!("{id}: {} cases", r.cases));
        if !r.passed() {
            failed.push(format!("{id}: {:?}", r.failures));
        }
    }
    Ok(if failed.is_empty() { Outcome::Pass(notes.join("; ")) } else { Outcome::Fail(failed.join("; ")) })
}

fn poly(s: &str) -> ExactPolynomial {
    s.parse().expect("literal polynomial")
}

fn counting() -> Res {
    all_pass(&[("sym-tl-counts", 8, 0)])
}

fn nested_pair() -> Res {
    let want: BTreeMap<String, i64> =
        [("V[]", 1), ("V[(1,2)]", -1), ("V[(3,4)]", -1), ("V[(1,2)(3,4)]", 2), ("V[(1,4)(2,3)]", -1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
    let pi = Matching::new(2, vec![(1, 4), (2, 3)]).map_err(|e| e.to_string())?;
    for seed in [0, 7] {
        let count = enumerate_uncrossings(&ChordMap::embed_nu_pi(&pi, seed), DEFAULT_CLASS_BOUND).map_err(|e| e.to_string())?.len();
        let got: BTreeMap<String, i64> =
            f_coefficient(&pi, seed).map_err(|e| e.to_string())?.into_iter().map(|(d, w)| (d.key(), w)).collect();
        if count != 16 || got != want {
            return Ok(Outcome::Fail(format!("seed {seed}: {count} uncrossings, table {got:?}")));
        }
    }
    Ok(Outcome::Pass("seeds 0 and 7: 16 uncrossings, table exact".into()))
}

fn six_pfaffinants() -> Res {
    let printed = [
        ("V[]", "a[1,2]*a[3,4] - a[1,3]*a[2,4] + a[1,4]*a[2,3]"),
        ("V[(1,2)]", "-a[1,2]*a[3,4] + a[1,3]*a[2,4] - a[1,4]*a[2,3]"),
        ("V[(2,3)]", "0"),
        ("V[(3,4)]", "-a[1,2]*a[3,4] + a[1,3]*a[2,4] - a[1,4]*a[2,3]"),
        ("V[(1,2)(3,4)]", "a[1,2]*a[3,4] - a[1,3]*a[2,4] + 2*a[1,4]*a[2,3]"),
        ("V[(1,4)(2,3)]", "a[1,3]*a[2,4] - a[1,4]*a[2,3]"),
    ];
    let a = SkewArray::symbolic(2);
    let diagrams = enumerate_sym_tl(2, DEFAULT_DIAGRAM_BOUND).map_err(|e| e.to_string())?;
    let mut got = BTreeMap::new();
    for d in &diagrams {
        got.insert(d.key(), diagram_pfaffinant(d, &a).map_err(|e| e.to_string())?);
    }
    let want: BTreeMap<String, ExactPolynomial> = printed.iter().map(|(k, p)| (k.to_string(), poly(p))).collect();
    Ok(if got == want {
        Outcome::Pass("all six equal the printed polynomials".into())
    } else {
        Outcome::Fail(format!("computed {got:?}"))
    })
}

fn decompositions() -> Res {
    all_pass(&[
        ("diagram-decomposition", 3, 0),
        ("tl-decomposition", 3, 0),
        ("diagram-decomposition", 4, 24),
        ("tl-decomposition", 4, 24),
    ])
}

fn transition() -> Res {
    all_pass(&[("transition-triangular", 4, 0), ("tl-basis", 4, 0)])
}

fn embeddings() -> Res {
    all_pass(&[("embedding-independence", 3, 0)])
}

fn networks() -> Res {
    all_pass(&[("stembridge-paths", 3, 10), ("network-equality", 3, 10)])
}

fn network_type() -> Res {
    all_pass(&[("network-type", 3, 0)])
}

fn boolean_cone() -> Res {
    all_pass(&[("boolean-cone", 3, 0)])
}

fn immanant_suite() -> Res {
    // B = [[x, y], [z, t]] with x = a[1,3], y = a[1,4], z = a[2,3], t = a[2,4]
    let values: BTreeSet<String> =
        tl_immanants(&GeneralMatrix::symbolic_block(2)).map_err(|e| e.to_string())?.values().map(|p| p.to_string()).collect();
    let want: BTreeSet<String> =
        [poly("a[1,3]*a[2,4] - a[1,4]*a[2,3]"), poly("a[1,4]*a[2,3]")].iter().map(|p| p.to_string()).collect();
    if values != want {
        return Ok(Outcome::Fail(format!("n = 2 immanants {values:?}")));
    }
    let rest = all_pass(&[("immanant-decomposition", 3, 0), ("pfaffian-square", 3, 0), ("immanant-non-span", 3, 0)])?;
    if let Outcome::Fail(m) = rest {
        return Ok(Outcome::Fail(m));
    }
    let q = report("quadratic-relations", 2, 0)?;
    let misprint = "T[(1,2)(3,4)(5,8)(6,7)]: published [\"1\", \"1\", \"1\", \"0\", \"1\", \"0\"], computed Some([\"1\", \"2\", \"1\", \"0\", \"1\", \"0\"])";
    Ok(match q.failures.as_slice() {
        [] => Outcome::Pass("immanants, decompositions, pf^2 = det, witness and quadratic table exact".into()),
        [only] if only == misprint => Outcome::Known(format!(
            "7 of 8 quadratic rows match; the printed row for T[(1,2)(3,4)(5,8)(6,7)] has L*M coefficient 1, the identity needs 2; other parts pass ({} quadratic cases)",
            q.cases
        )),
        other => Outcome::Fail(format!("quadratic table: {other:?}")),
    })
}

fn bridge() -> Res {
    all_pass(&[("pfaffinant-immanant-bridge", 3, 0)])
}

fn q_pfaffian() -> Res {
    all_pass(&[("q-jacobi-trudi", 2, 8)])
}

fn generator_case() -> Res {
    let r = report("generator-monomial-positivity", 2, 6)?;
    let horizontal_negative = r.failures.iter().all(|f| !f.starts_with("V[] "));
    Ok(if r.passed() {
        Outcome::Pass(format!("{} cases", r.cases))
    } else if r.cases == 258 && r.failures.len() == 127 && horizontal_negative {
        Outcome::Known(format!(
            "{} of {} (D, shape) cases have a negative monomial; Pfaf'_D(A) = -pf(A) already for D = {{(1,2)}}, so the literal statement fails",
            r.failures.len(),
            r.cases
        ))
    } else {
        Outcome::Fail(format!("{} of {} failed: {:?}", r.failures.len(), r.cases, r.failures.iter().take(3).collect::<Vec<_>>()))
    })
}

fn min_difference() -> Res {
    all_pass(&[("min-difference-q", 2, 8)])
}

/// Every record flagged trivial must be positive with an empty expansion.
fn trivial_ok(records: &[ScanRecord], trivial: &[bool]) -> Result<usize, String> {
    if records.len() != trivial.len() {
        return Err(format!("{} records for {} instances", records.len(), trivial.len()));
    }
    let mut count = 0;
    for (r, &t) in records.iter().zip(trivial) {
        if t {
            count += 1;
            if r.verdict != Verdict::Positive || !r.expansion.is_empty() {
                return Err(format!("trivial instance {} classified {:?} {:?}", r.instance, r.verdict, r.expansion));
            }
        }
    }
    Ok(count)
}

fn scanners() -> Res {
    let bound = 10;
    let e = |e: pfaflab::Error| e.to_string();

    let shapes = skew_shapes_up_to(bound);
    let mut trivial2 = Vec::new();
    for (i, a) in shapes.iter().enumerate() {
        for b in &shapes[i..] {
            if a.outer().iter().sum::<usize>() + b.outer().iter().sum::<usize>() <= bound {
                let (j, m) = join_meet(a, b).map_err(e)?;
                trivial2.push((&j == a && &m == b) || (&j == b && &m == a));
            }
        }
    }
    let con2 = scan_cell_transfer(bound).map_err(e)?;

    let parts = strict_partitions_up_to(bound);
    let mut trivial3 = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i..] {
            if a.iter().sum::<usize>() + b.iter().sum::<usize>() <= bound {
                let (s1, s2) = sort_split(a, b).map_err(e)?;
                trivial3.push((&s1 == a && &s2 == b) || (&s1 == b && &s2 == a));
            }
        }
    }
    let con3 = scan_sort(bound).map_err(e)?;
    let con1 = scan_con1(2, bound).map_err(e)?;

    let (t2, t3) = match (trivial_ok(&con2, &trivial2), trivial_ok(&con3, &trivial3)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(m), _) | (_, Err(m)) => return Ok(Outcome::Fail(m)),
    };
    let describe = |name: &str, recs: &[ScanRecord]| {
        let s = summarize(recs);
        format!("{name} {} instances ({} positive, {} negative, {} outside span)", s.instances, s.positive, s.counterexamples, s.not_in_q_span)
    };
    if t2 == 0 || t3 == 0 {
        return Ok(Outcome::Fail("no trivial instances found".into()));
    }
    Ok(Outcome::Pass(format!(
        "{}; {}; {}; {t2} + {t3} zero-difference instances classified positive",
        describe("generators", &con1),
        describe("cell transfer", &con2),
        describe("sorting", &con3)
    )))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Res); 15] = [
        ("diagram counts for n <= 8", counting),
        ("uncrossing table of {(1,4),(2,3)}", nested_pair),
        ("six diagram pfaffinants for n = 2", six_pfaffinants),
        ("complementary pfaffian decompositions", decompositions),
        ("transition matrix and TL basis rank", transition),
        ("embedding independence of f and g", embeddings),
        ("planar network identities", networks),
        ("type of the network of a diagram", network_type),
        ("boolean cone generators", boolean_cone),
        ("immanant suite", immanant_suite),
        ("pfaffinant-immanant bridge", bridge),
        ("Q-function pfaffian formula", q_pfaffian),
        ("generator monomial positivity", generator_case),
        ("min-partition and cell-transfer differences", min_difference),
        ("positivity scanners", scanners),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(Outcome::Pass(m)) => ("PASS", m),
            Ok(Outcome::Known(m)) => ("FAIL", format!("known deviation: {m}")),
            Ok(Outcome::Fail(m)) | Err(m) => {
                unexpected += 1;
                ("FAIL", m)
            }
        };
        println!("{tag} {:>2} {name} [{secs:.2}s]: {detail}", i + 1);
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
