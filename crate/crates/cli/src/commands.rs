//! One function per subcommand. Each returns the text for stdout plus the
//! seeds it consumed; nothing here touches the process state.

use std::io::Read;
use std::path::{Path, PathBuf};

use ldoi::discriminate::{arc, k_bound, k_copies, local_range_sample};
use ldoi::embed::{embed, extract};
use ldoi::entangle::{max_ep_dual_ldui, monte_carlo_e_power, profile_closed_form, profile_oracle};
use ldoi::hadamardness::{exhaustive_min_with, h_measure_sign, SignMatrix};
use ldoi::io::{
    dense_from_csv, dense_to_csv, matrix_from_value, matrix_to_json, triple_from_json, JsonMatrix,
    TripleJson,
};
use ldoi::par::Execution;
use ldoi::schmidt::{make_rank, schmidt_coefficients, schmidt_rank, schmidt_rank_dense};
use ldoi::special::{
    check_special, fourier_matrix, make_dual, perfect_witness, random_phase_matrix,
    random_projection_seeded, DualFamily,
};
use ldoi::triples::{symmetry, triple_compose, triple_product, validate};
use ldoi::unitary::{check_unitary, random_unitary};
use ldoi::{InvarianceClass, MatrixTriple};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::to_json;

/// Result of a subcommand.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    /// Diagnostics that are not part of the reproducible output.
    pub stderr: String,
    pub files: Vec<(PathBuf, String)>,
    pub seeds: Vec<u64>,
    /// The command ran to completion but its verdict is a failure.
    pub failure: Option<CliError>,
}

impl Output {
    fn json<T: Serialize + ?Sized>(value: &T) -> Self {
        Output {
            stdout: to_json(value) + "\n",
            ..Output::default()
        }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.seeds.push(seed);
        self
    }

    fn failing(mut self, failure: Option<CliError>) -> Self {
        self.failure = failure;
        self
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

/// Parses triple JSON and requires a valid LDOI triple.
pub fn parse_triple(text: &str) -> CliResult<MatrixTriple> {
    let t = triple_from_json(text)?;
    let report = validate(&t, InvarianceClass::Ldoi);
    if !report.is_ok() {
        let msgs: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(CliError::Validation(msgs.join("; ")));
    }
    Ok(t)
}

fn load_triple(path: &Path) -> CliResult<MatrixTriple> {
    parse_triple(&read_text(path)?)
}

fn triple_output(t: &MatrixTriple) -> Output {
    Output::json(&TripleJson::from(t))
}

#[derive(Serialize)]
struct DenseJson {
    side: usize,
    matrix: JsonMatrix,
}

pub fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Embed { triple, format } => {
            let x = embed(&load_triple(&triple.input)?);
            Ok(match format {
                Format::Json => Output::json(&DenseJson {
                    side: x.matrix().nrows(),
                    matrix: matrix_to_json(x.matrix()),
                }),
                Format::Csv => Output {
                    stdout: dense_to_csv(&x),
                    ..Output::default()
                },
            })
        }
        Command::Extract { input } => {
            let x = dense_from_csv(&read_text(&input)?)?;
            Ok(triple_output(&extract(&x)?))
        }
        Command::Validate { triple, class } => {
            let t = triple_from_json(&read_text(&triple.input)?)?;
            let report = validate(&t, class.into());
            let failure = (!report.is_ok())
                .then(|| CliError::Validation(format!("{} violation(s)", report.violations.len())));
            Ok(Output::json(&report).failing(failure))
        }
        Command::Sample {
            class,
            field,
            dim,
            seed,
        } => {
            Ok(triple_output(&random_unitary(dim, class.into(), field.into(), seed)?).seeded(seed))
        }
        Command::Check { triple, field } => Ok(Output::json(&check_unitary(
            &load_triple(&triple.input)?,
            field.into(),
        ))),
        Command::Symmetry { triple, op } => Ok(triple_output(&symmetry(
            &load_triple(&triple.input)?,
            op.into(),
        ))),
        Command::Product {
            left,
            right,
            compose,
        } => {
            let (l, r) = (load_triple(&left)?, load_triple(&right)?);
            let t = if compose {
                triple_compose(&l, &r)?
            } else {
                triple_product(&l, &r)?
            };
            Ok(triple_output(&t))
        }
        Command::Dual(cmd) => dual(cmd),
        Command::Schmidt(cmd) => schmidt(cmd),
        Command::Entangle(cmd) => entangle(cmd),
        Command::Hadamardness(cmd) => hadamardness(cmd),
        Command::Discriminate(cmd) => discriminate(cmd),
        Command::Batch { op, input } => batch(op, &input),
        Command::Reproduce {
            suite,
            out,
            seed,
            workers,
        } => crate::reproduce::reproduce(suite, out, seed, Execution::with_workers(workers)),
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> CliResult<u64> {
    seed.ok_or_else(|| CliError::Usage(format!("{what} is randomized and requires --seed")))
}

fn dual(cmd: DualCommand) -> CliResult<Output> {
    match cmd {
        DualCommand::Make {
            family,
            dim,
            omega,
            rank,
            fourier,
            seed,
        } => {
            if dim == 0 {
                return Err(CliError::Usage("--dim must be positive".into()));
            }
            let rank = rank.unwrap_or(dim / 2);
            let (fam, seed) = match family {
                FamilyArg::Projection => {
                    let s = require_seed(seed, "the projection family")?;
                    let p = random_projection_seeded(dim, rank, s);
                    (DualFamily::Projection { p, phases: None }, Some(s))
                }
                FamilyArg::PhaseProjection => {
                    let s = require_seed(seed, "the phase-projection family")?;
                    let omega = omega.ok_or_else(|| {
                        CliError::Usage("phase-projection requires --omega re,im".into())
                    })?;
                    let p = random_projection_seeded(dim, rank, s);
                    (
                        DualFamily::PhaseProjection {
                            p,
                            omega,
                            phases: None,
                        },
                        Some(s),
                    )
                }
                FamilyArg::Ldui if fourier => (
                    DualFamily::LduiPhases {
                        c: fourier_matrix(dim),
                    },
                    None,
                ),
                FamilyArg::Ldui => {
                    let s = require_seed(seed, "the ldui family without --fourier")?;
                    (
                        DualFamily::LduiPhases {
                            c: random_phase_matrix(dim, s),
                        },
                        Some(s),
                    )
                }
            };
            let mut out = triple_output(&make_dual(&fam)?);
            out.seeds.extend(seed);
            Ok(out)
        }
        DualCommand::Check { triple } => {
            Ok(Output::json(&check_special(&load_triple(&triple.input)?)))
        }
        DualCommand::Witness { triple } => {
            Ok(Output::json(&perfect_witness(&load_triple(&triple.input)?)))
        }
    }
}

fn schmidt(cmd: SchmidtCommand) -> CliResult<Output> {
    match cmd {
        SchmidtCommand::Rank { triple, dense } => {
            let t = load_triple(&triple.input)?;
            let rank = schmidt_rank(&t);
            if !dense {
                return Ok(Output::json(&json!({ "rank": rank })));
            }
            let rank_dense = schmidt_rank_dense(&t);
            let failure = (rank != rank_dense).then(|| {
                CliError::Numeric(format!(
                    "closed-form rank {rank} differs from dense rank {rank_dense}"
                ))
            });
            Ok(Output::json(&json!({ "rank": rank, "rank_dense": rank_dense })).failing(failure))
        }
        SchmidtCommand::Spectrum { triple } => Ok(Output::json(&schmidt_coefficients(
            &load_triple(&triple.input)?,
        ))),
        SchmidtCommand::Make { dim, rank, seed } => {
            Ok(triple_output(&make_rank(dim, rank, seed)?).seeded(seed))
        }
    }
}

fn entangle(cmd: EntangleCommand) -> CliResult<Output> {
    match cmd {
        EntangleCommand::Profile { triple, oracle } => {
            let t = load_triple(&triple.input)?;
            let p = if oracle {
                profile_oracle(&t)?
            } else {
                profile_closed_form(&t)?
            };
            Ok(Output::json(&p))
        }
        EntangleCommand::MonteCarlo {
            triple,
            samples,
            seed,
            workers,
        } => {
            let t = load_triple(&triple.input)?;
            let m = monte_carlo_e_power(&t, samples, seed, Execution::with_workers(workers))?;
            Ok(Output::json(&m).seeded(seed))
        }
        EntangleCommand::MaxEp { input, dim } => {
            let c = match (input, dim) {
                (_, Some(d)) => fourier_matrix(d),
                (Some(path), None) => {
                    let v: Value = serde_json::from_str(&read_text(&path)?)
                        .map_err(|e| CliError::Validation(format!("bad matrix JSON: {e}")))?;
                    matrix_from_value(&v)?
                }
                (None, None) => unreachable!("clap requires one of MATRIX_JSON and --dim"),
            };
            Ok(Output::json(&max_ep_dual_ldui(&c)?))
        }
    }
}

fn parse_sign_matrix(text: &str) -> CliResult<SignMatrix> {
    if text.trim_start().starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("bad sign matrix JSON: {e}")))?;
        Ok(SignMatrix::from_signs(&rows)?)
    } else {
        Ok(text.parse()?)
    }
}

fn hadamardness(cmd: HadamardnessCommand) -> CliResult<Output> {
    match cmd {
        HadamardnessCommand::Min {
            dim,
            workers,
            timing,
        } => {
            let r = exhaustive_min_with(dim, Execution::with_workers(workers))?;
            let mut v = to_value(&r);
            if timing {
                v["elapsed_seconds"] = json!(r.elapsed.as_secs_f64());
            }
            Ok(Output::json(&v))
        }
        HadamardnessCommand::Eval { input } => {
            let m = parse_sign_matrix(&read_text(&input)?)?;
            let h = h_measure_sign(&m);
            let d = m.dim() as u64;
            Ok(Output::json(&json!({
                "dim": d,
                "h": h,
                "lower_bound": d.pow(3),
                "is_hadamard": h == d.pow(3),
            })))
        }
    }
}

fn discriminate(cmd: DiscriminateCommand) -> CliResult<Output> {
    match cmd {
        DiscriminateCommand::K { a, b } => {
            let (t1, t2) = (load_triple(&a)?, load_triple(&b)?);
            let k = k_copies(&t1, &t2)?;
            let bound = k_bound(&t1, &t2)?;
            let rel = triple_product(&symmetry(&t2, ldoi::Symmetry::Adjoint), &t1)?;
            Ok(Output::json(&json!({
                "theta": arc(&rel)?.theta,
                "copies": k.copies(),
                "equal_spectrum": k.copies().is_none(),
                "copies_bound": bound.copies(),
            })))
        }
        DiscriminateCommand::Arc { triple } => {
            Ok(Output::json(&arc(&load_triple(&triple.input)?)?))
        }
        DiscriminateCommand::LocalRange {
            triple,
            samples,
            seed,
            workers,
            format,
        } => {
            let t = load_triple(&triple.input)?;
            let s = local_range_sample(&t, samples, seed, Execution::with_workers(workers))?;
            let out = match format {
                Format::Json => Output::json(&s),
                Format::Csv => {
                    let mut csv = String::from("re,im\n");
                    for z in &s.values {
                        csv.push_str(&format!(
                            "{},{}\n",
                            ldoi::io::format_f64(z.re),
                            ldoi::io::format_f64(z.im)
                        ));
                    }
                    Output {
                        stdout: csv,
                        stderr: to_json(&json!({
                            "min_abs": s.min_abs,
                            "witness_index": s.witness_index,
                            "dense_check_defect": s.dense_check_defect,
                        })) + "\n",
                        ..Output::default()
                    }
                }
            };
            Ok(out.seeded(seed))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn batch_one(op: BatchOp, line: &str) -> CliResult<Value> {
    if op == BatchOp::Validate {
        return Ok(to_value(&validate(
            &triple_from_json(line)?,
            InvarianceClass::Ldoi,
        )));
    }
    let t = parse_triple(line)?;
    Ok(match op {
        BatchOp::Validate => unreachable!("handled above"),
        BatchOp::Check => to_value(&check_unitary(&t, ldoi::Field::Complex)),
        BatchOp::Dual => to_value(&check_special(&t)),
        BatchOp::Witness => to_value(&perfect_witness(&t)),
        BatchOp::Schmidt => json!({ "rank": schmidt_rank(&t) }),
        BatchOp::Entangle => to_value(&profile_closed_form(&t)?),
        BatchOp::Arc => to_value(&arc(&t)?),
    })
}

fn batch(op: BatchOp, input: &Path) -> CliResult<Output> {
    let text = read_text(input)?;
    let mut out = String::new();
    let (mut total, mut failed) = (0, 0);
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        let record = match batch_one(op, line) {
            Ok(v) => json!({ "line": n + 1, "result": v }),
            Err(e) => {
                failed += 1;
                json!({ "line": n + 1, "error": e.to_string(), "exit_code": e.exit_code() })
            }
        };
        out.push_str(&to_json(&record));
        out.push('\n');
    }
    let failure =
        (failed > 0).then(|| CliError::Validation(format!("{failed} of {total} records failed")));
    Ok(Output {
        stdout: out,
        ..Output::default()
    }
    .failing(failure))
}
