//! `isoschur`: command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget or bound exhausted, 3 internal failure.

mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use io::{load_quiver, load_sequence, parse_vector, SequenceFile};
use isoschur::analysis::{self, hypersurface_relation, AnalysisReport, DEFAULT_BOUND};
use isoschur::braid::{self, apply_sigma_word, BraidWord, IsoTypeSequence};
use isoschur::cone::{cone_report, slice_coordinates, slice_text};
use isoschur::exceptional::{Direction, ExceptionalSequence};
use isoschur::generic::GenericCalculus;
use isoschur::linalg::IntMatrix;
use isoschur::oracle::sample_hom_ext;
use isoschur::position::Subcategory;
use isoschur::quiver::QuiverFile;
use isoschur::stability::StabilityChecker;
use isoschur::{DimVector, Error, KClass, Quiver};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = analysis::SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(name = "isoschur", version, about = "Isotropic Schur roots of acyclic quivers")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    /// Re-run a saved JSON report and compare results.
    #[arg(long, value_name = "REPORT")]
    check: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    /// Euler matrix, or ⟨a, b⟩ with --pair.
    Euler {
        quiver: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
    },
    /// Coxeter matrix Φ = −E⁻¹Eᵀ.
    Coxeter {
        quiver: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Affine type of the quiver, or the root kind of a vector.
    Classify { quiver: PathBuf, vector: Option<String> },
    /// Generic hom and ext.
    Homext {
        quiver: PathBuf,
        a: String,
        b: String,
        /// Also sample random representations.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
    /// Canonical decomposition.
    Candecomp { quiver: PathBuf, vector: String },
    /// Whether a general representation of `a` embeds in one of `b`.
    Embeds { quiver: PathBuf, a: String, b: String },
    /// σ_δ-stability of one vector, or all stable vectors up to --bound.
    Stable {
        quiver: PathBuf,
        #[arg(long)]
        delta: String,
        vector: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
    },
    /// The cone spanned by the σ_δ-stable vectors.
    Cone {
        quiver: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
        /// Write the slice Σx = 1 as rows `label x y`.
        #[arg(long, value_name = "FILE")]
        slice_out: Option<PathBuf>,
        /// Mark δ̄ in the slice (runs the analysis).
        #[arg(long)]
        with_delta_bar: bool,
    },
    /// Stable exceptional sequence, δ̄, R(Q, δ) and the class of SI(Q, δ).
    Analyze {
        quiver: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
    },
    /// Exceptional sequence files.
    Seq(SeqArgs),
    /// All isotropic Schur roots with entries at most --bound.
    Isotropic {
        quiver: PathBuf,
        #[arg(long)]
        bound: u32,
        /// Compare against an exhaustive scan.
        #[arg(long)]
        verify: bool,
        /// Reduce one sequence per root to tame type and report where it lands.
        #[arg(long)]
        probe_orbits: bool,
        #[arg(long, default_value_t = braid::DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct SeqArgs {
    #[command(subcommand)]
    action: SeqAction,
}

#[derive(Subcommand, Debug, Clone)]
enum SeqAction {
    /// Validate against generic hom and ext.
    Check { file: PathBuf },
    /// One mutation σ_i (left) or σ_i⁻¹ (right).
    Mutate {
        file: PathBuf,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        dir: String,
    },
    /// Relative simples of the thick subcategory.
    Simples {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quiver of the relative simples.
    Quiver { file: PathBuf },
    /// A σ-word, rightmost generator first.
    Sigma {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// A γ-word on a sequence of isotropic type, rightmost generator first.
    Gamma {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Braid word to a sequence of tame type.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = braid::DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Serialize, Deserialize, Default, Debug, Clone, PartialEq)]
struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quiver: Option<QuiverFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sequence: Option<SequenceFile>,
}

#[derive(Serialize, Deserialize, Debug)]
struct Envelope {
    schema_version: u32,
    verb: String,
    argv: Vec<String>,
    inputs: Inputs,
    result: Value,
}

struct Out {
    result: Value,
    text: String,
    dot: Option<String>,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(Error::Invalid(_) | Error::DimensionMismatch { .. }) => 1,
            Failure::Lib(Error::Exhausted { .. } | Error::Uncertified(_)) => 2,
            Failure::Lib(Error::Inconsistent(_)) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

/// Inputs read from disk, or replayed from a saved report.
struct Ctx {
    replay: Option<Inputs>,
    write_files: bool,
    inputs: Inputs,
}

impl Ctx {
    fn quiver(&mut self, path: &Path) -> Res<Quiver> {
        let q = match self.replay.as_ref().and_then(|r| r.quiver.as_ref()) {
            Some(f) => Quiver::from_file(f)?,
            None => load_quiver(path)?,
        };
        self.inputs.quiver = Some(q.to_file());
        Ok(q)
    }

    fn sequence(&mut self, path: &Path) -> Res<(Quiver, SequenceFile)> {
        let (q, file) = match self.replay.as_ref().and_then(|r| r.sequence.clone()) {
            Some(f) => (f.resolve(Path::new("."))?, f),
            None => load_sequence(path)?,
        };
        self.inputs.sequence = Some(SequenceFile::inline(&q, file.classes.clone(), file.position));
        Ok((q, file))
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    let rows: Vec<KClass> = m.to_rows().into_iter().map(KClass::new).collect();
    json!(rows)
}

fn int_json(x: &impl std::fmt::Display) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or_else(|_| json!(s), |i| json!(i))
}

fn vectors_text(vs: &[DimVector]) -> String {
    vs.iter().map(|v| format!("({v})")).collect::<Vec<_>>().join(" ")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn run_cmd(cmd: &Cmd, ctx: &mut Ctx) -> Res<Out> {
    match cmd {
        Cmd::Euler { quiver, pair } => {
            let q = ctx.quiver(quiver)?;
            match pair {
                Some(p) => {
                    let (a, b) = (parse_vector(&q, &p[0])?, parse_vector(&q, &p[1])?);
                    let v = q.euler_pairing(&a, &b)?;
                    Ok(Out { result: json!({ "a": a, "b": b, "pairing": int_json(&v) }), text: format!("{v}\n"), dot: None })
                }
                None => {
                    let m = q.euler_matrix();
                    Ok(Out { result: json!({ "matrix": matrix_json(m) }), text: m.to_string(), dot: None })
                }
            }
        }
        Cmd::Coxeter { quiver, inverse } => {
            let q = ctx.quiver(quiver)?;
            let m = if *inverse { q.coxeter_inverse() } else { q.coxeter_matrix() };
            Ok(Out { result: json!({ "inverse": inverse, "matrix": matrix_json(m) }), text: m.to_string(), dot: None })
        }
        Cmd::Classify { quiver, vector } => {
            let q = ctx.quiver(quiver)?;
            let dot = Some(q.to_dot("Q"));
            match vector {
                None => {
                    let t = q.affine_type();
                    let form = Subcategory::full(&q).form_type();
                    let result = json!({
                        "affine_type": t.tag.to_string(),
                        "null_root": t.null_root,
                        "form": form,
                        "connected": q.is_connected(),
                    });
                    let mut text = format!("affine_type: {}\nform: {}\n", t.tag, to_value(&form).as_str().unwrap_or(""));
                    if let Some(d) = &t.null_root {
                        writeln!(text, "null_root: {d}").ok();
                    }
                    Ok(Out { result, text, dot })
                }
                Some(v) => {
                    let d = parse_vector(&q, v)?;
                    let cand = q.classify_self_pairing(&d)?;
                    let calc = GenericCalculus::new(&q);
                    let schur = calc.is_schur_root(&d)?;
                    let dec = calc.canonical_decomposition(&d)?;
                    let result = json!({
                        "vector": d,
                        "self_pairing": int_json(&q.pair(&d, &d)),
                        "candidate": cand.to_string(),
                        "schur": schur,
                        "canonical_decomposition": dec,
                    });
                    let text = format!("candidate: {cand}\nschur: {schur}\ncanonical_decomposition: {dec}\n");
                    Ok(Out { result, text, dot })
                }
            }
        }
        Cmd::Homext { quiver, a, b, oracle, seed, trials } => {
            let q = ctx.quiver(quiver)?;
            let (a, b) = (parse_vector(&q, a)?, parse_vector(&q, b)?);
            let calc = GenericCalculus::new(&q);
            let (h, e) = calc.hom_ext(&a, &b)?;
            let mut result = json!({ "a": a, "b": b, "hom": h, "ext": e, "euler": int_json(&q.pair(&a, &b)) });
            let mut text = format!("hom: {h}\next: {e}\n");
            if *oracle {
                let (sh, se) = sample_hom_ext(&q, &a, &b, *seed, *trials)?;
                result["oracle"] = json!({ "hom": sh, "ext": se, "seed": seed, "trials": trials, "agree": (sh, se) == (h, e) });
                writeln!(text, "oracle: hom {sh} ext {se} ({})", if (sh, se) == (h, e) { "agree" } else { "DISAGREE" }).ok();
            }
            Ok(Out { result, text, dot: None })
        }
        Cmd::Candecomp { quiver, vector } => {
            let q = ctx.quiver(quiver)?;
            let d = parse_vector(&q, vector)?;
            let dec = GenericCalculus::new(&q).canonical_decomposition(&d)?;
            Ok(Out { text: format!("{dec}\n"), result: to_value(&dec), dot: None })
        }
        Cmd::Embeds { quiver, a, b } => {
            let q = ctx.quiver(quiver)?;
            let (a, b) = (parse_vector(&q, a)?, parse_vector(&q, b)?);
            let e = GenericCalculus::new(&q).embeds(&a, &b)?;
            Ok(Out { result: json!({ "a": a, "b": b, "embeds": e }), text: format!("{e}\n"), dot: None })
        }
        Cmd::Stable { quiver, delta, vector, bound } => {
            let q = ctx.quiver(quiver)?;
            let delta = parse_vector(&q, delta)?;
            let calc = GenericCalculus::new(&q);
            let st = StabilityChecker::new(&calc, &delta)?;
            match vector {
                Some(x) => {
                    let x = parse_vector(&q, x)?;
                    let status = st.status(&x)?;
                    let dec = if status == isoschur::stability::Stability::Unstable {
                        None
                    } else {
                        Some(st.stable_decomposition(&x)?)
                    };
                    let mut text = format!("{status}\n");
                    if let Some(d) = &dec {
                        let parts: Vec<String> = d.iter().map(|(v, m)| format!("({v})x{m}")).collect();
                        writeln!(text, "factors: {}", parts.join(" ")).ok();
                    }
                    let factors: Option<Vec<Value>> =
                        dec.map(|d| d.iter().map(|(v, m)| json!({ "root": v, "multiplicity": m })).collect());
                    Ok(Out { result: json!({ "delta": delta, "vector": x, "status": status, "factors": factors }), text, dot: None })
                }
                None => {
                    let all = st.enumerate_stable(*bound);
                    let text = all.iter().map(|v| format!("{v}\n")).collect();
                    Ok(Out { result: json!({ "delta": delta, "bound": bound, "stable": all }), text, dot: None })
                }
            }
        }
        Cmd::Cone { quiver, delta, bound, slice_out, with_delta_bar } => {
            let q = ctx.quiver(quiver)?;
            let delta = parse_vector(&q, delta)?;
            let calc = GenericCalculus::new(&q);
            let report = cone_report(&calc, &delta, *bound)?;
            let bar = if *with_delta_bar { Some(analysis::analyze(&calc, &delta, *bound)?.delta_bar) } else { None };
            let slice = slice_coordinates(&report, bar.as_ref());
            if let (Some(path), true) = (slice_out, ctx.write_files) {
                std::fs::write(path, slice_text(&slice))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let mut text = String::new();
            writeln!(text, "rays: {}", vectors_text(&report.rays)).ok();
            writeln!(text, "dimension: {}", report.dimension).ok();
            writeln!(text, "facets: {}", report.facets).ok();
            writeln!(
                text,
                "delta_face: {} coefficients {}",
                vectors_text(&report.delta_face.rays),
                report.delta_face.coefficients.join(",")
            )
            .ok();
            writeln!(text, "delta_on_boundary: {}", report.delta_on_boundary).ok();
            writeln!(text, "proper: {}", vectors_text(&report.proper)).ok();
            writeln!(text, "simplicial: {}", report.simplicial).ok();
            if report.bound_touched {
                writeln!(text, "warning: a stable vector reaches the bound {bound}").ok();
            }
            let mut result = to_value(&report);
            result["slice"] = to_value(&slice);
            Ok(Out { result, text, dot: None })
        }
        Cmd::Analyze { quiver, delta, bound } => {
            let q = ctx.quiver(quiver)?;
            let delta = parse_vector(&q, delta)?;
            let calc = GenericCalculus::new(&q);
            let report = analysis::analyze(&calc, &delta, *bound)?;
            let dot = Some(Quiver::from_file(&report.r_quiver)?.to_dot("R"));
            Ok(Out { text: analysis_text(&report)?, result: to_value(&report), dot })
        }
        Cmd::Seq(SeqArgs { action }) => run_seq(action, ctx),
        Cmd::Isotropic { quiver, bound, verify, probe_orbits, budget } => {
            let q = ctx.quiver(quiver)?;
            let calc = GenericCalculus::new(&q);
            let roots = braid::enumerate_isotropic(&calc, *bound)?;
            let mut result = json!({ "bound": bound, "roots": roots });
            let mut text: String = roots.iter().map(|r| format!("{r}\n")).collect();
            if *verify {
                let brute = calc.brute_isotropic(*bound);
                if brute != roots {
                    return Err(Error::inconsistent(format!(
                        "closure found {} roots, scan found {}",
                        roots.len(),
                        brute.len()
                    ))
                    .into());
                }
                result["verified"] = json!(true);
                writeln!(text, "verified against exhaustive scan: {} roots", roots.len()).ok();
            }
            if *probe_orbits {
                let mut starts = Vec::new();
                for r in &roots {
                    starts.push(IsoTypeSequence::for_root(&calc, r, DEFAULT_BOUND.max(*bound))?);
                }
                let probes = braid::probe_orbits(&starts, *budget);
                for p in &probes {
                    match (&p.reached, &p.error) {
                        (Some(f), _) => writeln!(text, "probe {} -> {}", p.start.root_type(), f.root_type()).ok(),
                        (_, Some(e)) => writeln!(text, "probe {} -> {e}", p.start.root_type()).ok(),
                        _ => None,
                    };
                }
                result["probes"] = to_value(&probes);
            }
            Ok(Out { result, text, dot: None })
        }
    }
}

fn sequence_out(q: &Quiver, s: &ExceptionalSequence, extra: Value) -> Out {
    let file = SequenceFile::inline(q, s.classes().to_vec(), IsoTypeSequence::detect(s.clone()).ok().map(|i| i.position()));
    let mut result = json!({ "classes": s.classes(), "sequence_file": file });
    if let (Value::Object(m), Value::Object(e)) = (&mut result, extra) {
        m.extend(e);
    }
    Out { result, text: format!("{s}\n"), dot: None }
}

fn run_seq(action: &SeqAction, ctx: &mut Ctx) -> Res<Out> {
    match action {
        SeqAction::Check { file } => {
            let (q, f) = ctx.sequence(file)?;
            let calc = GenericCalculus::new(&q);
            let s = ExceptionalSequence::validate(&calc, f.classes.clone())?;
            let iso = match f.position {
                Some(r) => Some(IsoTypeSequence::new(s.clone(), r)?),
                None => IsoTypeSequence::detect(s.clone()).ok(),
            };
            if let Some(i) = &iso {
                i.verify(&calc)?;
            }
            let mut o = sequence_out(
                &q,
                &s,
                json!({
                    "valid": true,
                    "full": s.is_full(),
                    "gram": matrix_json(s.gram()),
                    "isotropic_position": iso.as_ref().map(|i| i.position()),
                    "root_type": iso.as_ref().map(|i| i.root_type().clone()),
                }),
            );
            o.text = format!("valid: {s}\n");
            if let Some(i) = &iso {
                writeln!(o.text, "isotropic position {} root type ({})", i.position(), i.root_type()).ok();
            }
            Ok(o)
        }
        SeqAction::Mutate { file, at, dir } => {
            let (q, f) = ctx.sequence(file)?;
            let d: Direction = dir.parse()?;
            let s = ExceptionalSequence::from_classes(&q, f.classes.clone())?.mutate(*at, d)?;
            Ok(sequence_out(&q, &s, json!({})))
        }
        SeqAction::Simples { file, budget } => {
            let (q, f) = ctx.sequence(file)?;
            let s = ExceptionalSequence::from_classes(&q, f.classes.clone())?.reduce_to_simples(*budget)?;
            Ok(sequence_out(&q, &s, json!({})))
        }
        SeqAction::Quiver { file } => {
            let (q, f) = ctx.sequence(file)?;
            let s = ExceptionalSequence::from_classes(&q, f.classes.clone())?;
            let sub = Subcategory::new(&s)?;
            let local = sub.quiver().clone();
            let result = json!({
                "simples": sub.simples().classes(),
                "quiver": local.to_file(),
                "affine_type": local.affine_type().tag.to_string(),
                "form": sub.form_type(),
            });
            let text = format!(
                "simples: {}\narrows: {:?}\naffine_type: {}\n",
                vectors_text(sub.simples().classes()),
                local.arrows(),
                local.affine_type().tag
            );
            Ok(Out { result, text, dot: Some(local.to_dot("C")) })
        }
        SeqAction::Sigma { file, word } => {
            let (q, f) = ctx.sequence(file)?;
            let w: BraidWord = word.parse()?;
            let s = apply_sigma_word(&ExceptionalSequence::from_classes(&q, f.classes.clone())?, &w)?;
            Ok(sequence_out(&q, &s, json!({ "word": w.display_with("s") })))
        }
        SeqAction::Gamma { file, word } => {
            let (q, f) = ctx.sequence(file)?;
            let e = iso_of(&q, &f)?;
            let w: BraidWord = word.parse()?;
            let g = e.apply(&w)?;
            let mut o = sequence_out(&q, g.base(), json!({ "word": w, "position": g.position(), "root_type": g.root_type() }));
            o.text = format!("{g}\n");
            Ok(o)
        }
        SeqAction::Reduce { file, budget } => {
            let (q, f) = ctx.sequence(file)?;
            let e = iso_of(&q, &f)?;
            let (w, g) = braid::reduce_to_tame_type(&e, *budget)?;
            let s = g.is_tame_type()?;
            let mut o = sequence_out(
                &q,
                g.base(),
                json!({ "word": w, "position": g.position(), "root_type": g.root_type(), "split": s }),
            );
            o.text = format!("word: {w}\nreached: {g}\nsplit: {}\n", s.map(|s| s.to_string()).unwrap_or_default());
            Ok(o)
        }
    }
}

fn iso_of(q: &Quiver, f: &SequenceFile) -> Res<IsoTypeSequence> {
    let s = ExceptionalSequence::from_classes(q, f.classes.clone())?;
    Ok(match f.position {
        Some(r) => IsoTypeSequence::new(s, r)?,
        None => IsoTypeSequence::detect(s)?,
    })
}

fn analysis_text(r: &AnalysisReport) -> Res<String> {
    let mut t = String::new();
    writeln!(t, "delta: {}", r.delta).ok();
    writeln!(t, "stable_sequence: {}", vectors_text(&r.stable_sequence)).ok();
    writeln!(t, "tame_pair: ({}) ({})", r.tame_pair.0, r.tame_pair.1).ok();
    for l in &r.chain {
        writeln!(t, "level {}: M = ({}) {} {} delta = ({})", l.level, l.m, l.kind, l.position.tag, l.delta).ok();
    }
    writeln!(t, "delta_bar: {}", r.delta_bar).ok();
    writeln!(t, "tame_levels: {}", levels_text(&r.tame_levels)).ok();
    if r.r_levels != r.tame_levels {
        writeln!(t, "r_levels: {} (widened)", levels_text(&r.r_levels)).ok();
    }
    writeln!(t, "r_generators: {}", vectors_text(&r.r_generators)).ok();
    writeln!(t, "r_affine: {}", r.r_affine).ok();
    writeln!(t, "si_class: {}", r.si_class).ok();
    writeln!(t, "smaller_type: {}", r.smaller_type).ok();
    writeln!(t, "adjoined_variables: {}", r.adjoined_variables).ok();
    for (i, tube) in r.tubes.iter().enumerate() {
        writeln!(t, "tube {}: {}", i + 1, vectors_text(tube)).ok();
    }
    if let Some(rel) = hypersurface_relation(r)? {
        writeln!(t, "relation: {}", rel.text).ok();
    }
    if r.bound_touched {
        writeln!(t, "warning: a stable vector reaches the bound {}", r.bound).ok();
    }
    Ok(t)
}

fn levels_text(l: &[usize]) -> String {
    if l.is_empty() {
        return "none".into();
    }
    l.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn verb_name(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Euler { .. } => "euler",
        Cmd::Coxeter { .. } => "coxeter",
        Cmd::Classify { .. } => "classify",
        Cmd::Homext { .. } => "homext",
        Cmd::Candecomp { .. } => "candecomp",
        Cmd::Embeds { .. } => "embeds",
        Cmd::Stable { .. } => "stable",
        Cmd::Cone { .. } => "cone",
        Cmd::Analyze { .. } => "analyze",
        Cmd::Seq(_) => "seq",
        Cmd::Isotropic { .. } => "isotropic",
    }
    .to_string()
}

/// Arguments with `--output` removed, for replay.
fn replay_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--output" {
            skip = true;
            continue;
        }
        if a.starts_with("--output=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn check(path: &Path) -> Res<String> {
    let text = io::read_text(path)?;
    let env: Envelope =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: not a report: {e}", path.display())))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Failure::Usage(format!("schema version {} is not {SCHEMA_VERSION}", env.schema_version)));
    }
    let mut argv = vec!["isoschur".to_string()];
    argv.extend(env.argv.iter().cloned());
    let cli = Cli::try_parse_from(&argv).map_err(|e| Failure::Usage(format!("stored arguments: {e}")))?;
    let cmd = cli.command.ok_or_else(|| Failure::Usage("report has no command".into()))?;
    if verb_name(&cmd) != env.verb {
        return Err(Failure::Usage(format!("verb `{}` does not match its arguments", env.verb)));
    }
    let mut ctx = Ctx { replay: Some(env.inputs.clone()), write_files: false, inputs: Inputs::default() };
    let out = run_cmd(&cmd, &mut ctx)?;
    if out.result != env.result {
        return Err(Failure::Usage(format!("{}: result differs on recomputation", path.display())));
    }
    Ok(format!("ok: {} report revalidates\n", env.verb))
}

fn run(args: Vec<String>) -> Res<String> {
    let cli = match Cli::try_parse_from(std::iter::once("isoschur".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(e.to_string()),
                _ => Err(Failure::Usage(e.to_string().trim_start_matches("error: ").trim_end().to_string())),
            };
        }
    };
    if let Some(path) = &cli.check {
        if cli.command.is_some() {
            return Err(Failure::Usage("--check takes no command".into()));
        }
        return check(path);
    }
    let cmd = cli.command.ok_or_else(|| Failure::Usage("no command given; see --help".into()))?;
    let mut ctx = Ctx { replay: None, write_files: true, inputs: Inputs::default() };
    let out = run_cmd(&cmd, &mut ctx)?;
    match cli.output {
        Format::Text => Ok(out.text),
        Format::Dot => out.dot.ok_or_else(|| Failure::Usage(format!("`{}` has no dot output", verb_name(&cmd)))),
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                verb: verb_name(&cmd),
                argv: replay_argv(&args),
                inputs: ctx.inputs,
                result: out.result,
            };
            Ok(serde_json::to_string_pretty(&env).expect("report serializes") + "\n")
        }
    }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = std::panic::catch_unwind(|| run(args));
    match outcome {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            eprintln!("error: internal failure {msg}");
            ExitCode::from(3)
        }
    }
}
