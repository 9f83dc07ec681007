use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use serde_json::{json, Value};

use quatlattice::invariants::{albanese_kernel_dim, chern_numbers, complex_counts};
use quatlattice::lattice::standard_structure;
use quatlattice::presentations::{
    abelianization, fixed_presentations, orbifold_presentation, Presentation,
};
use quatlattice::square_complex::{build_complex, SquareComplexVH};
use quatlattice::suite::{ball_certificate, run_all};
use quatlattice::verification::{ball_check, ball_check_parallel};
use quatlattice::Error;

use crate::output::{certificate_table, envelope, pretty, rows};
use crate::{Cli, Command, Format, What, Which};

const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");

enum Outcome {
    Pass,
    Fail,
}

pub fn run(cli: Cli) -> ExitCode {
    let json = cli.json;
    let result = match cli.command {
        Command::Verify {
            radius,
            parallel,
            golden,
            fixtures,
        } => verify(
            json,
            radius,
            parallel,
            golden.then(|| fixtures.unwrap_or_else(|| DEFAULT_FIXTURES.into())),
        ),
        Command::Present { which } => present(json, which),
        Command::BallCheck { radius, parallel } => ball(json, radius, parallel),
        Command::Invariants { n, q, ell } => invariants(json, n, q, &ell),
        Command::Export { format, what, out } => export(json, format, what, out.as_deref()),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::InvalidInput(_) | Error::Parse { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn complex() -> anyhow::Result<SquareComplexVH> {
    Ok(build_complex(&standard_structure())?)
}

fn golden_name(radius: u32) -> String {
    format!("verify-r{radius}.json")
}

fn verify(
    json: bool,
    radius: u32,
    parallel: bool,
    golden: Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let report = run_all(radius, parallel)?;
    let mut failures = report.failures();
    let mut body = envelope(
        "verify",
        json!({
            "passed": report.passed,
            "radius": radius,
            "failures": failures,
            "certificates": report.certificates,
        }),
    );
    if let Some(dir) = golden {
        let path = dir.join(golden_name(radius));
        match fs::read_to_string(&path)
            .map_err(anyhow::Error::from)
            .and_then(|s| Ok(serde_json::from_str::<Value>(&s)?))
        {
            Ok(expected) if expected == body => {}
            Ok(_) => failures.push(format!("golden: {} differs", path.display())),
            Err(e) => failures.push(format!("golden: {}: {e}", path.display())),
        }
        body["failures"] = json!(failures);
        body["passed"] = json!(failures.is_empty());
    }
    if json {
        print!("{}", pretty(&body));
    } else {
        print!("{}", certificate_table(&report.certificates));
        for f in &failures {
            eprintln!("FAIL {f}");
        }
    }
    Ok(if failures.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn present(json: bool, which: Which) -> anyhow::Result<Outcome> {
    let f = fixed_presentations();
    let (name, p): (&str, Presentation) = match which {
        Which::Lambda => ("lambda", f.lambda),
        Which::Gr => ("gr", f.gr),
        Which::Gamma => ("gamma", f.gamma),
        Which::Orbifold => ("orbifold", orbifold_presentation(&complex()?)),
    };
    if json {
        let relators: Vec<String> = p.relators.iter().map(|r| p.format_word(r)).collect();
        let ab = abelianization(&p)?;
        print!(
            "{}",
            pretty(&envelope(
                "present",
                json!({
                    "name": name,
                    "text": p.to_text(),
                    "generators": p.generators,
                    "relators": relators,
                    "abelianization": ab.to_string(),
                }),
            ))
        );
    } else {
        println!("{}", p.to_text());
    }
    Ok(Outcome::Pass)
}

fn ball(json: bool, radius: u32, parallel: bool) -> anyhow::Result<Outcome> {
    let report = if parallel {
        ball_check_parallel(radius)?
    } else {
        ball_check(radius)?
    };
    let cert = ball_certificate(&report);
    if json {
        print!(
            "{}",
            pretty(&envelope(
                "ball-check",
                json!({
                    "passed": cert.passed,
                    "failures": cert.failures().iter().map(|i| i.name.clone()).collect::<Vec<_>>(),
                    "report": report,
                }),
            ))
        );
    } else {
        print!(
            "{}",
            rows(&[
                ("radius", report.radius.to_string()),
                ("words", report.word_count.to_string()),
                ("distinct elements", report.distinct_elements.to_string()),
                ("distinct vertices", report.distinct_vertices.to_string()),
                ("expected vertices", report.expected_vertices.to_string()),
                (
                    "enumerated vertices",
                    report.enumerated_vertices.to_string()
                ),
                ("stabilizer trivial", report.stabilizer_trivial.to_string()),
                ("injective", report.injective.to_string()),
            ])
        );
        println!("{}", if cert.passed { "PASS" } else { "FAIL" });
    }
    Ok(if cert.passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn invariants(json: bool, n: u64, q: u64, ells: &[u64]) -> anyhow::Result<Outcome> {
    let counts = complex_counts(n, q)?;
    let chern = chern_numbers(n, q)?;
    let c = complex()?;
    let kernels = ells
        .iter()
        .map(|&ell| Ok((ell, albanese_kernel_dim(&c, ell)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let gamma_ab = abelianization(&fixed_presentations().gamma)?;
    if json {
        let kernel_json: Vec<Value> = kernels
            .iter()
            .map(|(ell, d)| json!({ "ell": ell, "dimension": d }))
            .collect();
        print!(
            "{}",
            pretty(&envelope(
                "invariants",
                json!({
                    "counts": counts,
                    "chern": chern,
                    "kernel": kernel_json,
                    "gamma_ab": gamma_ab.to_string(),
                }),
            ))
        );
    } else {
        let mut r = vec![
            ("N", counts.vertices.to_string()),
            ("q", counts.q.to_string()),
            ("edges", counts.edges.to_string()),
            ("squares", counts.squares.to_string()),
            ("chi", counts.chi.to_string()),
            ("c1^2", chern.c1_squared.to_string()),
            ("c2", chern.c2.to_string()),
        ];
        let labels: Vec<String> = kernels
            .iter()
            .map(|(ell, _)| format!("dim ker d mod {ell}"))
            .collect();
        for (label, (_, d)) in labels.iter().zip(&kernels) {
            r.push((label.as_str(), d.to_string()));
        }
        r.push(("Gamma^ab", gamma_ab.to_string()));
        print!("{}", rows(&r));
    }
    Ok(Outcome::Pass)
}

fn export(json: bool, format: Format, what: What, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let c = complex()?;
    let text = match (format, what) {
        (Format::Json, What::Complex) => pretty(&envelope(
            "export",
            json!({ "what": "complex", "complex": c.to_export() }),
        )),
        (Format::Json, What::Links) => pretty(&envelope(
            "export",
            json!({ "what": "links", "links": c.links() }),
        )),
        (Format::Dot, What::Complex) => c.complex_dot(),
        (Format::Dot, What::Links) => c.links_dot(),
    };
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
            if json {
                print!(
                    "{}",
                    pretty(&envelope("export", json!({ "written": path })))
                );
            } else {
                println!("wrote {}", path.display());
            }
        }
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}
