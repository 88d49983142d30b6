use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use bihom_core::catalog::{self, AnyAlgebra, CatalogError};
use bihom_core::classify::{graded_simple, graded_simple_with_oracle, ClassifyError, DEFAULT_DIM_CAP};
use bihom_core::connect::{classes, verify_witness};
use bihom_core::decompose::decompose;
use bihom_core::document::{self, DocumentError};
use bihom_core::{Field, GradedBiHomAlgebra, Subspace};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::render::human;
use crate::{CatalogAction, Cli, Command, Format};

/// Outcome of one analysis: the result tree and whether a check failed.
struct Outcome {
    result: Value,
    failed: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            result,
            failed: false,
        }
    }
}

enum Failure {
    Usage(String),
    Schema(DocumentError),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Schema(_) => 3,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Usage(m) => json!({ "kind": "usage", "message": m }),
            Failure::Schema(e) => json!({ "kind": "schema", "path": e.path, "message": e.message }),
        }
    }
}

macro_rules! on_algebra {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Rational($a) => $body,
            AnyAlgebra::Prime($a) => $body,
        }
    };
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Support { .. } => "support",
        Command::Classes { .. } => "classes",
        Command::Decompose { .. } => "decompose",
        Command::Simplicity { .. } => "simplicity",
        Command::Catalog {
            action: CatalogAction::List,
        } => "catalog list",
        Command::Catalog {
            action: CatalogAction::Emit { .. },
        } => "catalog emit",
    }
}

fn options(cmd: &Command) -> Value {
    match cmd {
        Command::Classes {
            verify_witnesses, ..
        } => json!({ "verify_witnesses": verify_witnesses }),
        Command::Decompose { bases, .. } => json!({ "bases": bases }),
        Command::Simplicity { oracle, .. } => json!({ "oracle": oracle }),
        Command::Catalog {
            action: CatalogAction::Emit { name, .. },
        } => json!({ "name": name }),
        _ => json!({}),
    }
}

pub fn run(cli: &Cli) -> u8 {
    let start = Instant::now();
    let mut report = Map::new();
    report.insert("command".into(), Value::from(name(&cli.command)));
    report.insert("options".into(), options(&cli.command));
    let code = match execute(cli, &mut report) {
        Ok(Some(outcome)) => {
            report.insert(
                "status".into(),
                Value::from(if outcome.failed { "fail" } else { "pass" }),
            );
            report.insert("result".into(), outcome.result);
            u8::from(outcome.failed)
        }
        // The command already wrote its product to standard output.
        Ok(None) => return 0,
        Err(f) => {
            report.insert("status".into(), Value::from("error"));
            report.insert("error".into(), f.to_json());
            if cli.format == Format::Human {
                match &f {
                    Failure::Usage(m) => eprintln!("error: {m}"),
                    Failure::Schema(e) => eprintln!("schema error at {}: {}", e.path, e.message),
                }
            }
            f.code()
        }
    };
    let report = Value::Object(report);
    let text = match cli.format {
        Format::Machine => serde_json::to_string_pretty(&report).expect("json") + "\n",
        Format::Human => format!("{}elapsed: {} ms\n", human(&report), start.elapsed().as_millis()),
    };
    emit(&text);
    code
}

/// Writes to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(path: &Path, cli: &Cli, report: &mut Map<String, Value>) -> Result<AnyAlgebra, Failure> {
    let bytes = read(path)?;
    report.insert("input".into(), json!({ "sha256": sha256(&bytes) }));
    let text = String::from_utf8(bytes).map_err(|_| {
        Failure::Schema(DocumentError {
            path: "$".into(),
            message: "input is not UTF-8".into(),
        })
    })?;
    let loaded = document::load(&text, cli.lenient).map_err(Failure::Schema)?;
    if !loaded.warnings.is_empty() {
        if cli.format == Format::Human {
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
        }
        report.insert("warnings".into(), json!(loaded.warnings));
    }
    Ok(loaded.algebra)
}

fn execute(cli: &Cli, report: &mut Map<String, Value>) -> Result<Option<Outcome>, Failure> {
    match &cli.command {
        Command::Validate { path } => {
            let any = load(path, cli, report)?;
            Ok(Some(on_algebra!(&any, a => validate(a))))
        }
        Command::Support { path } => {
            let any = load(path, cli, report)?;
            Ok(Some(on_algebra!(&any, a => support(a))))
        }
        Command::Classes {
            path,
            verify_witnesses,
        } => {
            let any = load(path, cli, report)?;
            Ok(Some(on_algebra!(&any, a => guarded(a, |a| cmd_classes(a, *verify_witnesses)))))
        }
        Command::Decompose { path, bases } => {
            let any = load(path, cli, report)?;
            Ok(Some(on_algebra!(&any, a => guarded(a, |a| cmd_decompose(a, *bases)))))
        }
        Command::Simplicity { path, oracle } => {
            let any = load(path, cli, report)?;
            Ok(Some(on_algebra!(&any, a => guarded(a, |a| cmd_simplicity(a, *oracle)))))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            let entries = serde_json::to_value(catalog::entries()).expect("json");
            Ok(Some(Outcome::ok(json!({ "entries": entries }))))
        }
        Command::Catalog {
            action: CatalogAction::Emit { name, out },
        } => {
            let any = catalog::build(name).map_err(|e| match e {
                CatalogError::UnknownEntry(_) => Failure::Usage(e.to_string()),
                other => Failure::Usage(format!("cannot build {name}: {other}")),
            })?;
            let text = serde_json::to_string_pretty(&any.to_document()).expect("json") + "\n";
            match out {
                None => {
                    emit(&text);
                    Ok(None)
                }
                Some(p) => {
                    fs::write(p, &text).map_err(|e| {
                        Failure::Usage(format!("cannot write {}: {e}", p.display()))
                    })?;
                    Ok(Some(Outcome::ok(json!({
                        "entry": name,
                        "written": p.display().to_string(),
                        "sha256": sha256(text.as_bytes()),
                    }))))
                }
            }
        }
    }
}

fn basis<F: Field>(a: &GradedBiHomAlgebra<F>, s: &Subspace<F::Elem>) -> Value {
    json!(s.basis().iter().map(|v| a.render(v)).collect::<Vec<_>>())
}

fn validate<F: Field>(a: &GradedBiHomAlgebra<F>) -> Outcome {
    let r = a.validate();
    Outcome {
        failed: !r.passed(),
        result: json!({ "passed": r.passed(), "checks": r.checks }),
    }
}

/// Runs `f` only on algebras that pass validation.
fn guarded<F: Field>(
    a: &GradedBiHomAlgebra<F>,
    f: impl FnOnce(&GradedBiHomAlgebra<F>) -> Outcome,
) -> Outcome {
    let v = validate(a);
    if v.failed {
        Outcome {
            failed: true,
            result: json!({ "validation": v.result }),
        }
    } else {
        f(a)
    }
}

fn support<F: Field>(a: &GradedBiHomAlgebra<F>) -> Outcome {
    let s = a.support();
    let degrees: Vec<Value> = s
        .degrees()
        .iter()
        .map(|g| json!({ "degree": g, "dim": a.component(g).dim() }))
        .collect();
    let symmetric = match s.asymmetric_witness() {
        None => json!({ "passed": true }),
        Some(g) => json!({ "passed": false, "witness": { "kind": "degree", "degree": g } }),
    };
    Outcome::ok(json!({
        "size": s.len(),
        "degrees": degrees,
        "degree_zero_dim": a.degree_zero().dim(),
        "dim": a.dim(),
        "symmetric": symmetric,
    }))
}

fn error_outcome(e: impl std::fmt::Display, detail: Value) -> Outcome {
    Outcome {
        failed: true,
        result: json!({ "error": e.to_string(), "detail": detail }),
    }
}

fn cmd_classes<F: Field>(a: &GradedBiHomAlgebra<F>, verify: bool) -> Outcome {
    let p = match classes(a) {
        Ok(p) => p,
        Err(e) => return error_outcome(&e, Value::Null),
    };
    let mut result = serde_json::to_value(&p).expect("json");
    let mut failed = false;
    if verify {
        let mut failures = Vec::new();
        for ((g, h), w) in p.witnesses() {
            if let Err(v) = verify_witness(a, g, h, w) {
                failures.push(json!({ "from": g, "to": h, "violations": v }));
            }
        }
        let missing = p.missing_witnesses();
        failed = !failures.is_empty() || !missing.is_empty();
        result["verification"] = json!({
            "checked": p.witnesses().len(),
            "failures": failures,
            "missing": missing,
        });
    }
    Outcome { result, failed }
}

fn cmd_decompose<F: Field>(a: &GradedBiHomAlgebra<F>, bases: bool) -> Outcome {
    let d = match decompose(a) {
        Ok(d) => d,
        Err(e) => return error_outcome(&e, Value::Null),
    };
    let ideals: Vec<Value> = d
        .ideals
        .iter()
        .map(|i| {
            let mut v = json!({
                "class": i.class_support,
                "dim": i.dim(),
                "zero_part_dim": i.zero_part.dim(),
            });
            if bases {
                v["basis"] = basis(a, &i.total);
            }
            v
        })
        .collect();
    let space = |s: &Subspace<F::Elem>| {
        let mut v = json!({ "dim": s.dim() });
        if bases {
            v["basis"] = basis(a, s);
        }
        v
    };
    let failed =
        !d.orthogonality.passed || !d.zero_part_forms_agree.passed || !d.reconstructs;
    Outcome {
        failed,
        result: json!({
            "dim": a.dim(),
            "classes": d.partition.classes(),
            "ideals": ideals,
            "complement_u": space(&d.complement_u),
            "centre": space(&d.centre),
            "centre_zero": d.centre_zero,
            "m0_condition": d.m0_condition,
            "zero_part_forms_agree": d.zero_part_forms_agree,
            "intersections_zero": d.intersections_zero,
            "orthogonality": d.orthogonality,
            "orthogonal_pairs_checked": d.orthogonal_pairs_checked,
            "direct": d.direct,
            "reconstructs": d.reconstructs,
            "summed_dim": d.summed_dim,
            "sum_is_direct": d.sum_is_direct(a.dim()),
        }),
    }
}

fn cmd_simplicity<F: Field>(a: &GradedBiHomAlgebra<F>, oracle: bool) -> Outcome {
    let (report, skipped) = if oracle {
        match graded_simple_with_oracle(a, DEFAULT_DIM_CAP) {
            Err(ClassifyError::TooLarge(why)) => (graded_simple(a), Some(why)),
            other => (other, None),
        }
    } else {
        (graded_simple(a), None)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return error_outcome(&e, Value::Null),
    };
    let mut result = serde_json::to_value(&report).expect("json");
    result["decided"] = json!(report.decided());
    if let Some(why) = skipped {
        result["oracle"] = json!({ "skipped": why });
    }
    let failed = report
        .oracle
        .as_ref()
        .is_some_and(|o| o.agrees == Some(false));
    Outcome { result, failed }
}
