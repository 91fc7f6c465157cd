//! Command-line surface: every verb maps to one library operation and emits
//! canonical JSON on stdout. Exit code 0 = success/true, 1 = a check that
//! returned false (invalid, incompatible, non-diag), 2 = input/usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use ttm::canonical::{jacobian_numeric, verify_euler_sequence};
use ttm::error::Error;
use ttm::fan::{beta_perp, dual_basis, kernel_lie_basis, validate_fan, TopologicalFan};
use ttm::fixtures;
use ttm::holomorphic::{is_diag_fan, to_classical_klyachko, to_toric};
use ttm::klyachko::{
    check_compatibility, hom_dimension, transition_cocycle, CharacterMatrix, CompatibilityResult,
    KlyachkoData, Witness,
};
use ttm::orbits::enumerate_orbits;
use ttm::scalar::{format_rat, Gauss, Scalar};
use ttm::{RVector, Result};

#[derive(Parser)]
#[command(name = "ttm", about = "Exact calculus for topological toric manifolds")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Validate the fan conditions and report diagnostics.
    Validate { fan: PathBuf },
    /// Dual basis of a maximal cone.
    Dual {
        fan: PathBuf,
        #[arg(long, value_parser = parse_cone)]
        cone: ConeArg,
    },
    /// Enumerate the torus orbits.
    Orbits { fan: PathBuf },
    /// Basis of Lie(Ker lambda) computed in a chart, plus beta_I-perp data.
    Kernel {
        fan: PathBuf,
        #[arg(long, value_parser = parse_cone)]
        cone: ConeArg,
    },
    /// Check filtration compatibility and print grading witnesses.
    Compat { fan: PathBuf, data: PathBuf },
    /// Dimension of the equivariant hom space over one chart.
    Hom {
        fan: PathBuf,
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_parser = parse_cone)]
        cone: ConeArg,
    },
    /// Symbolic transition cocycle between two charts (two --cone flags).
    Cocycle {
        fan: PathBuf,
        data: PathBuf,
        #[arg(long, value_parser = parse_cone, action = clap::ArgAction::Append)]
        cone: Vec<ConeArg>,
        #[arg(long = "at", value_parser = parse_point)]
        at: Vec<Complex64>,
    },
    /// Verify the canonical Euler-type sequence; optionally add a numeric
    /// Jacobian at a torus point.
    Euler {
        fan: PathBuf,
        #[arg(long, value_parser = parse_cone)]
        cone: Option<ConeArg>,
        #[arg(long = "at", value_parser = parse_point)]
        at: Vec<Complex64>,
    },
    /// Holomorphic degeneration verdict; with data, the classical jump table.
    Holo {
        fan: PathBuf,
        data: Option<PathBuf>,
    },
    /// Write the bundled example fan and line-bundle data files.
    Example {
        #[arg(default_value = ".")]
        dir: PathBuf,
    },
}

/// A comma-separated list of 1-based ray indices, e.g. "1,2".
#[derive(Clone, Debug)]
struct ConeArg(Vec<usize>);

fn parse_cone(s: &str) -> std::result::Result<ConeArg, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<usize>, String>>()
        .map(ConeArg)
}

fn parse_point(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected \"re,im\"".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Complex64::new(re, im))
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn rvector_json(v: &RVector) -> Value {
    Value::Array(
        v.components
            .iter()
            .map(|e| serde_json::to_value(e).expect("ring element"))
            .collect(),
    )
}

fn witness_json<K: Scalar>(w: &Witness<K>) -> Value {
    json!({
        "simplex": w.simplex,
        "pieces": w.pieces.iter().map(|p| json!({
            "weights": p.weights.iter().map(|x| serde_json::to_value(x).unwrap()).collect::<Vec<_>>(),
            "character": rvector_json(&p.character),
            "basis": p.piece.basis().iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn compat_json<K: Scalar>(result: &CompatibilityResult<K>) -> Value {
    json!({
        "compatible": result.compatible,
        "witnesses": result.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "failure": result.failure.as_ref().map(|(s, msg)| json!({
            "simplex": s,
            "message": msg,
        })),
    })
}

fn character_matrix_json<K: Scalar + ttm::scalar::ToC64>(
    m: &CharacterMatrix<K>,
    points: &[Vec<Complex64>],
) -> Result<Value> {
    let entries: Vec<Vec<Value>> = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    None => Value::Null,
                    Some((a, alpha)) => json!({
                        "scalar": a.to_string(),
                        "exponent": rvector_json(alpha),
                    }),
                })
                .collect()
        })
        .collect();
    let mut out = json!({"rows": m.rows, "cols": m.cols, "entries": entries});
    if !points.is_empty() {
        let mut values = Vec::new();
        for g in points {
            let num = m.eval(g)?;
            values.push(
                num.iter()
                    .map(|row| {
                        row.iter()
                            .map(|z| json!([sig17(z.re), sig17(z.im)]))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            );
        }
        out["values"] = json!(values);
    }
    Ok(out)
}

fn load_fan(path: &PathBuf) -> Result<TopologicalFan> {
    TopologicalFan::from_json(&std::fs::read_to_string(path)?)
}

fn load_data(path: &PathBuf) -> Result<KlyachkoData<Gauss>> {
    KlyachkoData::from_json(&std::fs::read_to_string(path)?)
}

/// true -> 0, false -> 1 exit semantics.
fn verdict(ok: bool, body: Value) -> (Value, u8) {
    (body, u8::from(!ok))
}

fn run(cli: Cli) -> Result<(Value, u8)> {
    match cli.verb {
        Verb::Validate { fan } => {
            let fan = load_fan(&fan)?;
            let report = validate_fan(&fan)?;
            let ok = report.all_ok();
            Ok(verdict(ok, serde_json::to_value(&report).expect("report")))
        }
        Verb::Dual { fan, cone } => {
            let fan = load_fan(&fan)?;
            let duals = dual_basis(&fan, &cone.0)?;
            Ok((
                json!({
                    "simplex": fan.checked_simplex(&cone.0)?,
                    "duals": duals.iter().map(rvector_json).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Verb::Orbits { fan } => {
            let fan = load_fan(&fan)?;
            Ok((
                serde_json::to_value(enumerate_orbits(&fan)).expect("orbits"),
                0,
            ))
        }
        Verb::Kernel { fan, cone } => {
            let fan = load_fan(&fan)?;
            let kernel = kernel_lie_basis(&fan, &cone.0)?;
            let perp = beta_perp(&fan, &cone.0)?;
            Ok((
                json!({
                    "simplex": fan.checked_simplex(&cone.0)?,
                    "dim": kernel.dim(),
                    "basis": kernel.basis().iter()
                        .map(|v| v.iter().map(format_rat).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "beta_perp": {
                        "bc_dim": perp.bc_space.dim(),
                        "v_lattice": perp.v_lattice.iter()
                            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    },
                }),
                0,
            ))
        }
        Verb::Compat { fan, data } => {
            let fan = load_fan(&fan)?;
            let data = load_data(&data)?;
            let result = check_compatibility(&fan, &data)?;
            Ok(verdict(result.compatible, compat_json(&result)))
        }
        Verb::Hom {
            fan,
            source,
            target,
            cone,
        } => {
            let fan = load_fan(&fan)?;
            let e = load_data(&source)?;
            let f = load_data(&target)?;
            if e.flavor != f.flavor {
                return Err(Error::BadData("mixed order flavors".into()));
            }
            let re = check_compatibility(&fan, &e)?;
            let rf = check_compatibility(&fan, &f)?;
            let (Some(we), Some(wf)) = (re.witness_for(&cone.0), rf.witness_for(&cone.0)) else {
                return Err(Error::Incompatible(
                    "hom requires compatible data on the chosen cone".into(),
                ));
            };
            let dim = hom_dimension(we, wf, e.flavor)?;
            Ok((
                json!({"simplex": we.simplex, "dimension": dim}),
                0,
            ))
        }
        Verb::Cocycle {
            fan,
            data,
            cone,
            at,
        } => {
            let fan = load_fan(&fan)?;
            let data = load_data(&data)?;
            if cone.len() != 2 {
                return Err(Error::Precondition(
                    "cocycle needs exactly two --cone flags".into(),
                ));
            }
            let result = check_compatibility(&fan, &data)?;
            if !result.compatible {
                return Err(Error::Incompatible(
                    "cocycle requires compatible data".into(),
                ));
            }
            let wi = result
                .witness_for(&cone[0].0)
                .ok_or_else(|| Error::InvalidSimplex(cone[0].0.clone()))?;
            let wj = result
                .witness_for(&cone[1].0)
                .ok_or_else(|| Error::InvalidSimplex(cone[1].0.clone()))?;
            let matrix = transition_cocycle(&fan, &data, wi, wj)?;
            let points: Vec<Vec<Complex64>> = if at.is_empty() {
                Vec::new()
            } else {
                if at.len() != fan.n {
                    return Err(Error::Dimension(
                        "--at needs one re,im pair per torus coordinate".into(),
                    ));
                }
                vec![at]
            };
            Ok((character_matrix_json(&matrix, &points)?, 0))
        }
        Verb::Euler { fan, cone, at } => {
            let fan = load_fan(&fan)?;
            let report = verify_euler_sequence(&fan)?;
            let mut body = serde_json::to_value(&report).expect("euler report");
            if !at.is_empty() {
                if at.len() != fan.m {
                    return Err(Error::Dimension(
                        "--at needs one re,im pair per ray coordinate".into(),
                    ));
                }
                let simplex = match cone {
                    Some(c) => fan.checked_maximal(&c.0)?,
                    None => fan.maximal_simplices()[0].clone(),
                };
                let jac = jacobian_numeric(&fan, &simplex, &at)?;
                body["jacobian"] = json!({
                    "simplex": simplex,
                    "matrix": jac.iter()
                        .map(|row| row.iter().map(|&x| sig17(x)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
            }
            let ok = report.ok;
            Ok(verdict(ok, body))
        }
        Verb::Holo { fan, data } => {
            let fan = load_fan(&fan)?;
            let diag = is_diag_fan(&fan);
            let mut body = json!({"diag": diag});
            if let Some(path) = data {
                let data = load_data(&path)?;
                let classical = to_classical_klyachko(&fan, &data)?;
                let filts = classical.filtrations.expect("filtrations present");
                let rays: BTreeMap<String, Value> = filts
                    .iter()
                    .map(|(ray, jumps)| {
                        (
                            ray.to_string(),
                            Value::Array(
                                jumps
                                    .iter()
                                    .map(|(j, v)| {
                                        json!({
                                            "jump": j,
                                            "dim": v.dim(),
                                            "basis": v.basis().iter()
                                                .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                                                .collect::<Vec<_>>(),
                                        })
                                    })
                                    .collect(),
                            ),
                        )
                    })
                    .collect();
                body["filtrations"] = serde_json::to_value(rays).expect("jump table");
            } else if diag {
                let classical = to_toric(&fan)?;
                body["rays"] = json!(classical
                    .rays
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
            Ok(verdict(diag, body))
        }
        Verb::Example { dir } => {
            std::fs::create_dir_all(&dir)?;
            let fan = fixtures::nontoric_fan();
            let mut written = Vec::new();
            let fan_path = dir.join("nontoric.json");
            std::fs::write(&fan_path, fan.to_json())?;
            written.push(fan_path.display().to_string());
            for i in 1..=fan.m {
                let data = ttm::canonical::line_bundle_data(&fan, i)?;
                let path = dir.join(format!("l{i}.json"));
                std::fs::write(&path, data.to_json())?;
                written.push(path.display().to_string());
            }
            Ok((json!({"written": written}), 0))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NoDual(_)
        | Error::NonRingElement(_)
        | Error::Incompatible(_)
        | Error::NotHolomorphic(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((body, code)) => {
            println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            ExitCode::from(code)
        }
        Err(err) => {
            let code = exit_code_for(&err);
            eprintln!("error: {err}");
            println!("{}", json!({"error": err.to_string()}));
            ExitCode::from(code)
        }
    }
}
