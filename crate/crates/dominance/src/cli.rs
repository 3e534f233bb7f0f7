//! The `dominance` command line.
//!
//! Exit status: 0 when every verdict passes, 1 when a verification fails,
//! 2 for usage errors and unreadable or malformed input.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use dominance_core::calculus::{
    build_embedding_certificate, donaldson_obstruction, reduce_free_word, unknotify,
    verify_certificate, word_from_intersections, CertificateOptions, FreeWord, UnknotMode,
};
use dominance_core::intlattice::{
    diagonalizable_over_z, homology_from_linking, inertia, smith_normal_form, Inertia,
    IntegralLattice,
};
use dominance_core::linkdiag::{blow_down_gadget, ComponentId, FramedLinkDiagram, GadgetRecord};
use dominance_core::BigInt;
use serde_json::{json, Value};

use crate::format::{self, FormatError, Int, LinkFile, MatrixFile};
use crate::report::{InputDigest, Report};

#[derive(Debug, Parser)]
#[command(
    name = "dominance",
    version,
    about = "Surgery presentations, Kirby-move certificates and lattice obstructions"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linking matrix, determinant, inertia and first homology of a link.
    Invariants { link: PathBuf },
    /// Invariants of a symmetric matrix.
    Lattice { matrix: PathBuf },
    /// Replace crossing changes by blow-up gadgets until the link is descending.
    Unknotify {
        link: PathBuf,
        /// Write the resulting link here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Component order for the descending traversal.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u64>>,
        /// Also change crossings between components, producing an unlink.
        #[arg(long)]
        unlink: bool,
    },
    /// Build and check an embedding certificate for a link of unknots.
    CertifyEmbedding {
        link: PathBuf,
        /// Write the certificate here instead of into the report.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u64>>,
        /// Add a +1/-1 pair of blow-ups when m or n would be zero.
        #[arg(long)]
        pad_positive: bool,
        /// Unknot the components with gadgets first.
        #[arg(long)]
        auto_unknotify: bool,
    },
    /// Replay and check an embedding certificate.
    Verify { certificate: PathBuf },
    /// Definite-form obstruction for a link or matrix.
    Obstruction { input: PathBuf },
    /// Reduce the free-group word of an intersection sequence.
    Word { intersections: PathBuf },
}

/// Status and output of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let mut report = Report::new(argv);
    if let Err(e) = execute(&cli.command, &mut report) {
        return Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        };
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let passed = report.passed();
    report.status = if passed { "PASS" } else { "FAIL" }.into();
    let stdout = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Outcome {
        status: if passed { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn read(path: &Path, report: &mut Report) -> Result<String, InputError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| InputError::Io {
        path: shown.clone(),
        source,
    })?;
    report.inputs.push(InputDigest::of(&shown, &bytes));
    String::from_utf8(bytes).map_err(|e| InputError::Io {
        path: shown,
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, InputError> {
    r.map_err(|source| InputError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn int(v: &BigInt) -> Value {
    serde_json::to_value(Int(v.clone())).expect("integers serialize")
}

fn inertia_json(i: &Inertia) -> Value {
    json!({"positive": i.positive, "zero": i.zero, "negative": i.negative})
}

fn matrix_value(l: &IntegralLattice) -> Value {
    serde_json::to_value(MatrixFile::from_lattice(l)).expect("matrices serialize")
}

fn link_value(d: &FramedLinkDiagram) -> Value {
    serde_json::to_value(LinkFile::from_diagram(d)).expect("links serialize")
}

/// The invariants reported for any form.
pub fn lattice_summary(l: &IntegralLattice) -> Value {
    let inert = inertia(l);
    let snf = smith_normal_form(l.matrix());
    let h = homology_from_linking(l);
    let diag = if inert.is_positive_definite() && l.is_unimodular() {
        diagonalizable_over_z(l).ok()
    } else {
        None
    };
    json!({
        "dimension": l.dim(),
        "determinant": int(&l.determinant()),
        "unimodular": l.is_unimodular(),
        "inertia": inertia_json(&inert),
        "signature": inert.signature(),
        "positive_definite": inert.is_positive_definite(),
        "smith_diagonal": snf.invariant_factors().iter().map(int).collect::<Vec<_>>(),
        "homology": h.to_string(),
        "homology_rank": h.rank,
        "homology_torsion": h.torsion.iter().map(int).collect::<Vec<_>>(),
        "diagonalizable": diag.as_ref().map(|d| d.diagonalizable),
    })
}

fn component_order(order: &Option<Vec<u64>>) -> Option<Vec<ComponentId>> {
    order
        .as_ref()
        .map(|o| o.iter().map(|&k| ComponentId(k)).collect())
}

fn gadget_value(g: &GadgetRecord) -> Value {
    json!({
        "unknot": g.unknot.0,
        "crossing": g.crossing.0,
        "epsilon": g.epsilon.value(),
        "passage_signs": [g.passage_signs.0.value(), g.passage_signs.1.value()],
        "framing_compensations": g
            .framing_compensations
            .iter()
            .map(|(k, v)| (k.0.to_string(), int(v)))
            .collect::<serde_json::Map<_, _>>(),
    })
}

fn execute(command: &Command, report: &mut Report) -> Result<(), InputError> {
    match command {
        Command::Invariants { link } => {
            let d = parsed(link, format::parse_link(&read(link, report)?))?;
            let l = parsed(link, d.linking_matrix().map_err(FormatError::from))?;
            let mut result = lattice_summary(&l);
            result["components"] = json!(d.num_components());
            result["crossings"] = json!(d.num_crossings());
            result["linking_matrix"] = matrix_value(&l);
            report.result = result;
        }
        Command::Lattice { matrix } => {
            let l = parsed(matrix, format::parse_matrix(&read(matrix, report)?))?;
            report.result = lattice_summary(&l);
        }
        Command::Unknotify {
            link,
            output,
            order,
            unlink,
        } => {
            let d = parsed(link, format::parse_link(&read(link, report)?))?;
            let order = component_order(order).unwrap_or_else(|| d.default_order());
            let mode = if *unlink {
                UnknotMode::Unlink
            } else {
                UnknotMode::Components
            };
            let u = match unknotify(&d, Some(&order), mode) {
                Ok(u) => u,
                Err(e) => {
                    return Err(InputError::Format {
                        path: link.display().to_string(),
                        source: e.into(),
                    })
                }
            };
            let descending = match mode {
                UnknotMode::Unlink => u.diagram.is_descending(&order).unwrap_or(false),
                UnknotMode::Components => order
                    .iter()
                    .all(|&c| u.diagram.is_descending(&[c]).unwrap_or(false)),
            };
            report.verdict("original_components_descending", descending, "");
            let unit = u.gadgets.iter().all(|g| {
                u.diagram
                    .framing(g.unknot)
                    .is_ok_and(|f| *f == BigInt::from(g.epsilon.value()))
            });
            report.verdict("gadget_framings_unit", unit, "");
            let mut back = Ok(u.diagram.clone());
            for g in u.gadgets.iter().rev() {
                back = back.and_then(|b| blow_down_gadget(&b, g));
            }
            let restored = back.and_then(|b| b.linking_matrix()).ok() == d.linking_matrix().ok();
            report.verdict("blow_down_restores_matrix", restored, "");
            let l = u
                .diagram
                .linking_matrix()
                .expect("unknotify output is valid");
            report.result = json!({
                "p": u.p,
                "mode": if *unlink { "unlink" } else { "components" },
                "gadgets": u.gadgets.iter().map(gadget_value).collect::<Vec<_>>(),
                "components": u.diagram.num_components(),
                "crossings": u.diagram.num_crossings(),
                "linking_matrix": matrix_value(&l),
            });
            match output {
                Some(path) => write(path, &format::link_json(&u.diagram))?,
                None => report.result["diagram"] = link_value(&u.diagram),
            }
        }
        Command::CertifyEmbedding {
            link,
            output,
            order,
            pad_positive,
            auto_unknotify,
        } => {
            let d = parsed(link, format::parse_link(&read(link, report)?))?;
            let options = CertificateOptions {
                auto_unknotify: *auto_unknotify,
                pad_positive: *pad_positive,
                order: component_order(order),
            };
            let cert = match build_embedding_certificate(&d, &options) {
                Ok(c) => c,
                Err(e) => {
                    report.verdict("certificate_built", false, e.to_string());
                    return Ok(());
                }
            };
            let checks = verify_certificate(&cert);
            for c in &checks.checks {
                report.verdict(c.name, c.passed, c.detail.clone());
            }
            report.result = json!({
                "m": cert.m,
                "n": cert.n,
                "p": cert.p,
                "initial_components": cert.initial().num_components(),
                "moves": cert.script.moves.len(),
            });
            let text = format::certificate_json(&cert);
            match output {
                Some(path) => write(path, &text)?,
                None => {
                    report.result["certificate"] =
                        serde_json::from_str(&text).expect("certificate json re-parses");
                }
            }
        }
        Command::Verify { certificate } => {
            let cert = parsed(
                certificate,
                format::parse_certificate(&read(certificate, report)?),
            )?;
            let checks = verify_certificate(&cert);
            for c in &checks.checks {
                report.verdict(c.name, c.passed, c.detail.clone());
            }
            report.result = json!({
                "m": cert.m,
                "n": cert.n,
                "p": cert.p,
                "moves": cert.script.moves.len(),
                "final_components": checks.replay.as_ref().map(|r| r.diagram.num_components()),
            });
        }
        Command::Obstruction { input } => {
            let text = read(input, report)?;
            let value: Value = parsed(
                input,
                serde_json::from_str(&text).map_err(FormatError::from),
            )?;
            let (kind, l) = if value.get("entries").is_some() {
                ("matrix", parsed(input, format::parse_matrix(&text))?)
            } else {
                let d = parsed(input, format::parse_link(&text))?;
                (
                    "link",
                    parsed(input, d.linking_matrix().map_err(FormatError::from))?,
                )
            };
            let r = donaldson_obstruction(&l);
            report.result = json!({
                "input_kind": kind,
                "dimension": l.dim(),
                "determinant": int(&r.determinant),
                "unimodular": r.unimodular,
                "inertia": inertia_json(&r.inertia),
                "positive_definite": r.positive_definite,
                "diagonalizable": r.diagonalization.as_ref().map(|d| d.diagonalizable),
                "diagonal_part": r.diagonalization.as_ref().map(|d| d.diagonal_part),
                "residual": r.diagonalization.as_ref().map(|d| matrix_value(&d.residual)),
                "verdict": r.verdict.to_string(),
            });
        }
        Command::Word { intersections } => {
            let seq = parsed(
                intersections,
                format::parse_intersections(&read(intersections, report)?),
            )?;
            let w = word_from_intersections(&seq);
            let r = reduce_free_word(&w);
            let letters = |w: &FreeWord| {
                w.letters
                    .iter()
                    .map(|l| json!([l.generator, l.exponent.value()]))
                    .collect::<Vec<_>>()
            };
            report.result = json!({
                "word": w.to_string(),
                "reduced": r.reduced.to_string(),
                "cyclically_reduced": r.cyclically_reduced.to_string(),
                "reduced_letters": letters(&r.reduced),
                "cyclic_letters": letters(&r.cyclically_reduced),
                "trivial": r.trivial,
            });
        }
    }
    Ok(())
}
