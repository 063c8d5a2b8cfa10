//! Command-line front end: every computation and check as a subcommand with
//! a versioned JSON report.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use defring::acceptance::{self, CRITERIA};
use defring::defo::{
    classify_strict, encode_hom, encode_mat, h1_dimension, verify_exceptional_lift, Certificate, SCHEMA_VERSION,
};
use defring::groups::NamedGroup;
use defring::localring::find_homs;
use defring::matrix::{decompose_transvections, minus_identity_power_test, verify_relations, Sampling};
use defring::normalize::{induced_lift, normalize_lift, random_congruence_matrix, seeded_rng};
use defring::{Error, Ideal, Mat, RingSpec};

#[derive(Parser, Debug)]
#[command(name = "defring", version, about = "Deformations of SL_n representations over finite local rings")]
struct Cli {
    /// Write the full JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the full JSON report to standard output instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a ring and print its invariants.
    Ring {
        spec: String,
        /// List every element in canonical order.
        #[arg(long)]
        elements: bool,
    },
    /// Check the transvection relations over a ring.
    Relations {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SamplingArg::Auto)]
        sampling: SamplingArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a matrix from a JSON file as a product of transvections.
    Decompose {
        /// JSON file with `ring`, `matrix` (rows of element strings) and an
        /// optional `ideal` (generator strings).
        file: PathBuf,
    },
    /// First cohomology of the adjoint representation of a named group.
    H1 {
        #[arg(long, value_parser = parse_group)]
        group: NamedGroup,
    },
    /// Enumerate and classify the lifts of a named group to a ring.
    Enumerate {
        #[arg(long, value_parser = parse_group)]
        group: NamedGroup,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Verify a characteristic-zero lift at finite precision.
    VerifyLift {
        #[arg(long, value_parser = parse_group)]
        which: NamedGroup,
        #[arg(long, default_value_t = 20)]
        precision: u32,
    },
    /// Normalize the transvection family in a certificate.
    Normalize {
        certificate: PathBuf,
        /// Write the completed certificate here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write a certificate for an induced lift conjugated by a random
    /// congruence matrix.
    MakeCertificate {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: usize,
        /// Index into the homomorphisms from source to target.
        #[arg(long, default_value_t = 0)]
        hom: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the certificate here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Compare M^n = -I with the trace criterion over all of SL_2(ring).
    Chebyshev {
        #[arg(long)]
        ring: String,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        n: Vec<u32>,
    },
    /// Run acceptance criteria.
    Acceptance {
        /// Criteria to run; all when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Vec<u8>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SamplingArg {
    Auto,
    Exhaustive,
    Random,
}

fn parse_group(s: &str) -> Result<NamedGroup, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Errors in the inputs, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(r: defring::Result<T>, what: &str) -> anyhow::Result<T> {
    r.map_err(|e| Usage(format!("{what}: {e}")).into())
}

fn parse_ring(spec: &str) -> anyhow::Result<RingSpec> {
    usage(spec.parse(), &format!("ring {spec:?}"))
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn emit_certificate(path: Option<&PathBuf>, cert: &Certificate) -> anyhow::Result<()> {
    if let Some(path) = path {
        std::fs::write(path, cert.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: &'static str,
    passed: bool,
    #[serde(flatten)]
    data: Value,
}

struct Outcome {
    report: Report,
    summary: Vec<String>,
}

fn outcome(command: &'static str, passed: bool, data: Value, summary: Vec<String>) -> Outcome {
    Outcome {
        report: Report {
            schema_version: SCHEMA_VERSION,
            command,
            passed,
            data,
        },
        summary,
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Ring { spec, elements } => {
            let r = parse_ring(&spec)?;
            let mut data = json!({
                "ring": r.to_string(),
                "p": r.p(),
                "exponent": r.exponent(),
                "degree": r.degree(),
                "size": r.size(),
                "residue_field": r.residue_field().to_string(),
                "nilpotency_index": r.nilpotency_index(),
                "is_field": r.is_field(),
            });
            if elements {
                if r.size().is_none_or(|s| s > 1 << 16) {
                    bail!(Usage(format!("{r} is too large to list")));
                }
                data["elements"] = json!(r.elements().map(|x| x.to_string()).collect::<Vec<_>>());
            }
            let summary = vec![format!(
                "{r}: size {}, residue field {}, m^{} = 0",
                r.size().map_or("huge".into(), |s| s.to_string()),
                r.residue_field(),
                r.nilpotency_index()
            )];
            Ok(outcome("ring", true, data, summary))
        }
        Command::Relations {
            ring,
            n,
            sampling,
            samples,
            seed,
        } => {
            let r = parse_ring(&ring)?;
            if n < 2 {
                bail!(Usage("n must be at least 2".into()));
            }
            let sampling = match sampling {
                SamplingArg::Auto => Sampling::Auto { samples, seed },
                SamplingArg::Exhaustive => Sampling::Exhaustive,
                SamplingArg::Random => Sampling::Random { samples, seed },
            };
            let report = verify_relations(&r, n, sampling);
            let summary = report
                .checks
                .iter()
                .map(|c| {
                    let status = if c.failure.is_none() { "ok" } else { "FAIL" };
                    format!("({}) {}: {status} after {} checks", c.relation, c.statement, c.checked)
                })
                .collect();
            Ok(outcome("relations", report.all_passed(), serde_json::to_value(&report)?, summary))
        }
        Command::Decompose { file } => {
            let input: Value = serde_json::from_str(&read(&file)?).map_err(|e| Usage(format!("{}: {e}", file.display())))?;
            let r = parse_ring(input["ring"].as_str().ok_or_else(|| Usage("missing \"ring\"".into()))?)?;
            let strings = |v: &Value| -> anyhow::Result<Vec<String>> {
                Ok(v.as_array()
                    .ok_or_else(|| Usage("expected an array".into()))?
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string()))
                    .collect())
            };
            let rows = input["matrix"]
                .as_array()
                .ok_or_else(|| Usage("missing \"matrix\"".into()))?
                .iter()
                .map(|row| {
                    strings(row)?
                        .iter()
                        .map(|s| usage(r.parse_elt(s), "matrix entry"))
                        .collect::<anyhow::Result<Vec<_>>>()
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let m = usage(Mat::from_rows(&r, &rows), "matrix")?;
            let ideal = match input.get("ideal") {
                None | Some(Value::Null) => Ideal::unit(&r),
                Some(v) => Ideal::generated_by(
                    &r,
                    strings(v)?
                        .iter()
                        .map(|s| usage(r.parse_elt(s), "ideal generator"))
                        .collect::<anyhow::Result<_>>()?,
                ),
            };
            match decompose_transvections(&m, &ideal) {
                Ok(word) => {
                    let ok = word.evaluate(&r) == m && word.factors.iter().all(|t| ideal.contains(&t.r));
                    let data = json!({
                        "ring": r.to_string(),
                        "matrix": encode_mat(&m),
                        "word": word.to_string(),
                        "factors": word.factors.iter().map(|t| json!({"a": t.a + 1, "b": t.b + 1, "r": t.r.to_string()})).collect::<Vec<_>>(),
                        "round_trip": ok,
                    });
                    Ok(outcome("decompose", ok, data, vec![format!("{} factors: {word}", word.len())]))
                }
                Err(e) => Ok(outcome(
                    "decompose",
                    false,
                    json!({"ring": r.to_string(), "error": e.to_string()}),
                    vec![format!("failed: {e}")],
                )),
            }
        }
        Command::H1 { group } => {
            let report = h1_dimension(&group.group())?;
            let summary = vec![format!("{group}: dim Z^1 = {}, dim B^1 = {}, dim H^1 = {}", report.z1, report.b1, report.h1)];
            let mut data = serde_json::to_value(&report)?;
            data["group"] = json!(group.to_string());
            Ok(outcome("h1", true, data, summary))
        }
        Command::Enumerate { group, target, shards } => {
            let s = parse_ring(&target)?;
            let lifts = acceptance::lifts_of(group, &s, shards)?;
            let classes = classify_strict(&lifts)?;
            let data = json!({
                "group": group.to_string(),
                "target": s.to_string(),
                "lifts": lifts.len(),
                "classes": classes.len(),
                "class_summaries": classes.iter().map(|c| c.summary()).collect::<Vec<_>>(),
            });
            let summary = vec![format!("{group} -> {s}: {} lifts in {} classes", lifts.len(), classes.len())];
            Ok(outcome("enumerate", true, data, summary))
        }
        Command::VerifyLift { which, precision } => {
            let report = verify_exceptional_lift(which, precision)?;
            let summary = vec![format!(
                "{which} over {}: relators {}, reduction {}",
                report.ring,
                if report.relators.holds { "hold" } else { "FAIL" },
                if report.reduces_to_base { "ok" } else { "FAIL" }
            )];
            Ok(outcome("verify-lift", report.passed, serde_json::to_value(&report)?, summary))
        }
        Command::Normalize { certificate, emit } => {
            let mut cert = usage(Certificate::from_json(&read(&certificate)?), "certificate")?;
            let lift = usage(cert.to_generator_lift(), "certificate")?;
            match normalize_lift(&lift) {
                Ok(out) => {
                    cert.conjugator_chain = Some(out.chain.iter().map(encode_mat).collect());
                    cert.recovered_hom = Some(encode_hom(&out.hom));
                    emit_certificate(emit.as_ref(), &cert)?;
                    let summary = vec![format!(
                        "induced by x -> {} after {} conjugations",
                        out.hom.x_image(),
                        out.chain.len()
                    )];
                    Ok(outcome("normalize", true, json!({ "certificate": cert }), summary))
                }
                Err(e) => Ok(outcome(
                    "normalize",
                    false,
                    json!({ "error": e.to_string() }),
                    vec![format!("failed: {e}")],
                )),
            }
        }
        Command::MakeCertificate {
            source,
            target,
            n,
            hom,
            seed,
            emit,
        } => {
            let (r, s) = (parse_ring(&source)?, parse_ring(&target)?);
            let homs = usage(find_homs(&r, &s), "homomorphisms")?.homs;
            let f = homs
                .get(hom)
                .ok_or_else(|| Usage(format!("{} homomorphisms {r} -> {s}; no index {hom}", homs.len())))?;
            let k = random_congruence_matrix(&s, n, &mut seeded_rng(seed));
            let lift = usage(induced_lift(f, n), "induced lift")?.conjugate(&k)?;
            let mut cert = Certificate::from_generator_lift(&lift);
            cert.conjugator = Some(encode_mat(&k));
            cert.hom = Some(encode_hom(f));
            emit_certificate(emit.as_ref(), &cert)?;
            let summary = vec![format!("{n}-dimensional lift of SL_{n}({r}) over {s} via x -> {}", f.x_image())];
            Ok(outcome("make-certificate", true, json!({ "certificate": cert }), summary))
        }
        Command::Chebyshev { ring, n } => {
            let r = parse_ring(&ring)?;
            if r.size().is_none_or(|s| s > 81) {
                bail!(Usage(format!("{r} is too large for an exhaustive scan")));
            }
            if let Some(e) = n.iter().find(|&&e| e % 2 == 0) {
                bail!(Usage(format!("exponent {e} must be odd")));
            }
            let all = acceptance::all_sl2(&r);
            let mut rows = Vec::new();
            let mut passed = true;
            for &e in &n {
                let (mut valid, mut agree, mut powers) = (0, 0, 0);
                let mut disagreement = None;
                for m in &all {
                    match minus_identity_power_test(m, e) {
                        Ok((direct, by_trace)) => {
                            valid += 1;
                            powers += direct as usize;
                            if direct == by_trace {
                                agree += 1;
                            } else if disagreement.is_none() {
                                disagreement = Some(m.to_string());
                            }
                        }
                        Err(Error::PreconditionViolated(_)) => {}
                        Err(err) => return Err(err.into()),
                    }
                }
                passed &= agree == valid;
                rows.push(json!({"n": e, "valid": valid, "agree": agree, "power_is_minus_identity": powers, "disagreement": disagreement}));
            }
            let summary = rows
                .iter()
                .map(|row| format!("n = {}: {}/{} agree", row["n"], row["agree"], row["valid"]))
                .collect();
            Ok(outcome("chebyshev", passed, json!({"ring": r.to_string(), "scans": rows}), summary))
        }
        Command::Acceptance { criterion } => {
            let which: Vec<u8> = if criterion.is_empty() { CRITERIA.collect() } else { criterion };
            let reports = which
                .iter()
                .map(|&c| acceptance::run(c))
                .collect::<defring::Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.passed);
            let summary = reports.iter().map(|r| r.summary_line()).collect();
            Ok(outcome("acceptance", passed, json!({ "criteria": reports }), summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|o| {
        let text = serde_json::to_string_pretty(&o.report)? + "\n";
        if let Some(path) = &cli.out {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        }
        if cli.json {
            print!("{text}");
        } else {
            for line in &o.summary {
                println!("{line}");
            }
            println!("{}", if o.report.passed { "PASS" } else { "FAIL" });
        }
        Ok(o.report.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
