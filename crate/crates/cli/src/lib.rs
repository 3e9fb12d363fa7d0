//! Command implementations behind the `qtilt` binary. Every command returns a
//! [`Report`]; commands that produce a file return it as an artifact.

use std::fs;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use qtilt::covering::{
    build_covering, components, endo_covering, module_first_kind, pullup, pullup_tilting_check, pushdown,
    summands_first_kind, verify_covering_functor,
};
use qtilt::endo::{apr_tilt, endo_presentation, lemma41_check, prop43_check, prop46_check, transport, verify_thm45, Caps};
use qtilt::format::{AlgebraSpecFile, GradingSpecFile, ModuleSpecFile};
use qtilt::repmod::{direct_sum, split};
use qtilt::tilting::{hasse_diagram, is_tilting};
use qtilt::{fixtures, Algebra, Assertion, CoveringData, Error, Grading, Representation, TiltingCandidate};

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Assertion(_) => EXIT_ASSERTION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::ExceedsCap(_) | Error::VertexCapExceeded(_) => CliError::Cap(e.to_string()),
            Error::AssertionFailed(_) | Error::ValidationFailed(_) => CliError::Assertion(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub cap_pd: Option<usize>,
    pub cap_vertices: Option<usize>,
    pub cap_length: Option<usize>,
    pub seed: u64,
    /// Replaces the group orders of a grading file.
    pub group: Option<Vec<u64>>,
}

impl Options {
    fn caps(&self) -> Caps {
        Caps {
            vertices: self.cap_vertices,
            pd: self.cap_pd,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the command line and every input document.
    pub digest: String,
    pub seed: u64,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub payload: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_ASSERTION
        }
    }
}

/// A report and, for commands that emit one, a document to write out.
#[derive(Clone, Debug)]
pub struct Output {
    pub report: Report,
    pub artifact: Option<String>,
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(command: &str, args: &[&str], opts: &Options) -> Inputs {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for a in args {
            hasher.update([0u8]);
            hasher.update(a.as_bytes());
        }
        hasher.update(
            format!("{:?}{:?}{:?}{}{:?}", opts.cap_pd, opts.cap_vertices, opts.cap_length, opts.seed, opts.group).as_bytes(),
        );
        Inputs { hasher }
    }

    fn read(&mut self, path: &str) -> CliResult<String> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        self.hasher.update([1u8]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn note(&mut self, text: &str) {
        self.hasher.update([1u8]);
        self.hasher.update(text.as_bytes());
    }

    fn finish(self, command: &str, opts: &Options, assertions: Vec<Assertion>, payload: Value) -> Report {
        Report {
            command: command.to_string(),
            digest: hex::encode(self.hasher.finalize()),
            seed: opts.seed,
            passed: assertions.iter().all(|a| a.passed),
            assertions,
            payload,
        }
    }
}

/// `fixture:<name>`, a bare fixture name, or a path to an algebra file.
fn load_algebra(inputs: &mut Inputs, spec: &str, opts: &Options) -> CliResult<Algebra> {
    let name = spec.strip_prefix("fixture:").unwrap_or(spec);
    let text = match fixtures::algebra_source(name) {
        Some(src) => {
            inputs.note(src);
            src.to_string()
        }
        None if spec.starts_with("fixture:") => return Err(CliError::Input(format!("no fixture named {name:?}"))),
        None => inputs.read(spec)?,
    };
    let mut file = AlgebraSpecFile::parse(&text)?;
    if opts.cap_length.is_some() {
        file.length_cap = opts.cap_length;
    }
    Ok(Arc::new(file.to_presentation()?))
}

fn load_grading(inputs: &mut Inputs, spec: &str) -> CliResult<GradingSpecFile> {
    let name = spec.strip_prefix("fixture:").unwrap_or(spec);
    let text = match fixtures::grading_source(name) {
        Some(src) => {
            inputs.note(src);
            src.to_string()
        }
        None if spec.starts_with("fixture:") => return Err(CliError::Input(format!("no grading fixture named {name:?}"))),
        None => inputs.read(spec)?,
    };
    Ok(GradingSpecFile::parse(&text)?)
}

fn load_module(inputs: &mut Inputs, path: &str, algebra: &Algebra) -> CliResult<Representation> {
    let text = inputs.read(path)?;
    Ok(ModuleSpecFile::parse(&text)?.to_representation(algebra)?)
}

/// `A`, `DA`, `apr:<sink>`, or module files whose summands are collected.
fn load_candidate(inputs: &mut Inputs, specs: &[String], algebra: &Algebra) -> CliResult<TiltingCandidate> {
    match specs {
        [] => Err(CliError::Input("no tilting module given".into())),
        [s] if s == "A" => Ok(TiltingCandidate::regular(algebra)),
        [s] if s == "DA" => Ok(TiltingCandidate::dual_regular(algebra)),
        [s] if s.starts_with("apr:") => {
            let v = &s[4..];
            let x = algebra
                .quiver()
                .vertex_index(v)
                .ok_or_else(|| CliError::Input(format!("unknown vertex {v:?}")))?;
            Ok(apr_tilt(algebra, x)?)
        }
        files => {
            let mut summands = Vec::new();
            for f in files {
                let m = load_module(inputs, f, algebra)?;
                summands.extend(split(&m)?.into_iter().map(|s| s.module));
            }
            Ok(TiltingCandidate::new(summands))
        }
    }
}

fn dims_of(t: &TiltingCandidate) -> Vec<String> {
    t.summands().iter().map(Representation::dim_vector_string).collect()
}

pub fn cmd_basis(algebra: &str, opts: &Options) -> CliResult<Output> {
    let mut inputs = Inputs::new("basis", &[algebra], opts);
    let a = load_algebra(&mut inputs, algebra, opts)?;
    let q = a.quiver();
    let payload = json!({
        "dim": a.dim(),
        "vertices": q.vertices(),
        "arrows": q.arrows().iter().map(|arr| arr.name.clone()).collect::<Vec<_>>(),
        "basis": a.basis().iter().map(|p| q.path_name(p)).collect::<Vec<_>>(),
        "hom_dims": a.hom_space_dims(),
    });
    Ok(Output {
        report: inputs.finish("basis", opts, Vec::new(), payload),
        artifact: None,
    })
}

/// The Hasse diagram from `start`; the artifact is its DOT rendering.
pub fn cmd_hasse(algebra: &str, start: &[String], opts: &Options) -> CliResult<Output> {
    let args: Vec<&str> = std::iter::once(algebra).chain(start.iter().map(String::as_str)).collect();
    let mut inputs = Inputs::new("hasse", &args, opts);
    let a = load_algebra(&mut inputs, algebra, opts)?;
    let default = vec!["A".to_string()];
    let t = load_candidate(&mut inputs, if start.is_empty() { &default } else { start }, &a)?;
    let d = hasse_diagram(&a, &t, opts.cap_vertices, opts.cap_pd)?;
    let sources = d.sources();
    let sinks = d.sinks();
    let assertions = vec![
        Assertion::new("unique source", sources.len() == 1, format!("{sources:?}")),
        Assertion::new("unique sink", sinks.len() == 1, format!("{sinks:?}")),
    ];
    let payload = serde_json::to_value(d.report()).expect("diagram report serializes");
    Ok(Output {
        report: inputs.finish("hasse", opts, assertions, payload),
        artifact: Some(d.to_dot()),
    })
}

/// `End_A(T)`; the artifact is the presentation of `B` as an algebra file.
pub fn cmd_endo(algebra: &str, t: &[String], opts: &Options) -> CliResult<Output> {
    let args: Vec<&str> = std::iter::once(algebra).chain(t.iter().map(String::as_str)).collect();
    let mut inputs = Inputs::new("endo", &args, opts);
    let a = load_algebra(&mut inputs, algebra, opts)?;
    let t = load_candidate(&mut inputs, t, &a)?;
    let verdict = is_tilting(&t, opts.cap_pd);
    let e = endo_presentation(&t)?;
    let b = e.algebra();
    let projectives = (0..a.num_vertices())
        .map(|x| Ok(transport(&Representation::projective(&a, x), &e)?.module().dim_vector_string()))
        .collect::<CliResult<Vec<_>>>()?;
    let summands = t
        .summands()
        .iter()
        .map(|s| Ok(transport(s, &e)?.module().dim_vector_string()))
        .collect::<CliResult<Vec<_>>>()?;
    let spec = AlgebraSpecFile::from_presentation(b).to_toml();
    let assertions = vec![
        Assertion::new("T tilting", verdict.is_yes(), format!("{verdict:?}")),
        Assertion::new("composition matches", e.check_composition(), ""),
    ];
    let payload = json!({
        "summands": dims_of(&t),
        "dim": b.dim(),
        "vertices": b.quiver().vertices(),
        "arrows": b.quiver().arrows().iter().map(|arr| format!("{}: {} -> {}", arr.name, b.quiver().vertex_name(arr.source), b.quiver().vertex_name(arr.target))).collect::<Vec<_>>(),
        "relations": b.relations().iter().map(|r| r.terms().iter().map(|(c, p)| format!("{c}*{}", b.quiver().path_name(p))).collect::<Vec<_>>().join(" + ")).collect::<Vec<_>>(),
        "transported_projectives": projectives,
        "transported_summands": summands,
        "presentation": spec,
    });
    Ok(Output {
        report: inputs.finish("endo", opts, assertions, payload),
        artifact: Some(spec),
    })
}

pub fn cmd_verify(algebra: &str, check: &str, t: &[String], opts: &Options) -> CliResult<Output> {
    let args: Vec<&str> = [algebra, check].into_iter().chain(t.iter().map(String::as_str)).collect();
    let mut inputs = Inputs::new("verify", &args, opts);
    let a = load_algebra(&mut inputs, algebra, opts)?;
    let t = load_candidate(&mut inputs, t, &a)?;
    let caps = opts.caps();
    let (assertions, payload) = match check {
        "thm45" => {
            let r = verify_thm45(&a, &t, caps)?;
            let payload = json!({
                "hull_a": r.hull_a,
                "hull_b": r.hull_b,
                "diagram_a": r.diagram_a,
                "diagram_b": r.diagram_b,
                "vertex_map": r.vertex_map,
            });
            (r.assertions, payload)
        }
        "lemma41" | "prop43" | "prop46" => {
            let r = match check {
                "lemma41" => lemma41_check(&a, &t, caps)?,
                "prop43" => prop43_check(&a, &t, caps)?,
                _ => prop46_check(&a, &t, caps)?,
            };
            (r.assertions, json!({ "checked": r.checked }))
        }
        other => return Err(CliError::Input(format!("unknown check {other:?}"))),
    };
    Ok(Output {
        report: inputs.finish("verify", opts, assertions, payload),
        artifact: None,
    })
}

pub const COVER_SUBCOMMANDS: [&str; 7] = ["build", "verify", "pushdown", "pullup", "first-kind", "pullup-tilting", "endo-cover"];

fn covering_from(a: &Algebra, g: &GradingSpecFile) -> CliResult<CoveringData> {
    let (group, w) = Grading::from_spec(a, g)?;
    Ok(build_covering(a, &w, &group)?)
}

pub fn cmd_cover(algebra: &str, grading: &str, sub: &str, modules: &[String], opts: &Options) -> CliResult<Output> {
    let args: Vec<&str> = [algebra, grading, sub].into_iter().chain(modules.iter().map(String::as_str)).collect();
    let mut inputs = Inputs::new("cover", &args, opts);
    let a = load_algebra(&mut inputs, algebra, opts)?;
    let mut g = load_grading(&mut inputs, grading)?;
    if let Some(orders) = &opts.group {
        g.group = orders.clone();
    }
    let cd = covering_from(&a, &g)?;
    let cover = cd.cover();
    let comps = components(cover);
    let base_payload = json!({
        "group": cd.group().orders(),
        "vertices": cover.num_vertices(),
        "arrows": cover.quiver().num_arrows(),
        "dim": cover.dim(),
        "components": comps.len(),
        "connected": comps.len() <= 1,
    });
    let mut payload = base_payload.as_object().expect("object").clone();
    let mut assertions = Vec::new();
    let mut artifact = None;
    let one_module = |inputs: &mut Inputs, over: &Algebra| -> CliResult<Representation> {
        match modules {
            [] => Err(CliError::Input("no module file given".into())),
            files => {
                let ms = files.iter().map(|f| load_module(inputs, f, over)).collect::<CliResult<Vec<_>>>()?;
                Ok(direct_sum(over, &ms).0)
            }
        }
    };
    match sub {
        "build" => {
            let spec = AlgebraSpecFile::from_presentation(cover).to_toml();
            payload.insert("presentation".into(), json!(spec));
            artifact = Some(spec);
        }
        "verify" => {
            let r = verify_covering_functor(&cd);
            payload.insert("checked_pairs".into(), json!(r.checked_pairs));
            payload.insert("failures".into(), serde_json::to_value(&r.failures).expect("serializes"));
            assertions = r.assertions;
        }
        "pushdown" => {
            let m = one_module(&mut inputs, cover)?;
            let pd = pushdown(&cd, &m)?;
            let spec = ModuleSpecFile::from_representation(&pd, Some(algebra.to_string())).to_toml();
            payload.insert("dims".into(), json!(pd.dims()));
            payload.insert("module".into(), json!(spec));
            artifact = Some(spec);
        }
        "pullup" => {
            let m = one_module(&mut inputs, &a)?;
            let up = pullup(&cd, &m)?;
            let spec = ModuleSpecFile::from_representation(&up, None).to_toml();
            payload.insert("dims".into(), json!(up.dims()));
            payload.insert("module".into(), json!(spec));
            artifact = Some(spec);
        }
        "first-kind" => {
            let r = if modules.len() == 1 && (modules[0] == "A" || modules[0] == "DA" || modules[0].starts_with("apr:")) {
                let t = load_candidate(&mut inputs, modules, &a)?;
                summands_first_kind(&cd, t.summands(), opts.seed)?
            } else {
                module_first_kind(&cd, &one_module(&mut inputs, &a)?, opts.seed)?
            };
            let rows: Vec<Value> = r
                .summands
                .iter()
                .zip(&r.witnesses)
                .map(|(s, w)| json!({ "summand": s.dim_vector_string(), "lift": w.as_ref().map(|w| w.lift.dims().to_vec()) }))
                .collect();
            payload.insert("witnesses".into(), Value::Array(rows));
            assertions.push(Assertion::new("first kind", r.is_first_kind(), ""));
        }
        "pullup-tilting" => {
            let t = load_candidate(&mut inputs, modules, &a)?;
            let r = pullup_tilting_check(&cd, &t, opts.cap_pd, opts.seed)?;
            payload.insert("summands".into(), json!(r.checked));
            assertions = r.assertions;
        }
        "endo-cover" => {
            let t = load_candidate(&mut inputs, modules, &a)?;
            let fk = summands_first_kind(&cd, t.summands(), opts.seed)?;
            if !fk.is_first_kind() {
                return Err(CliError::Assertion("T is not of the first kind".into()));
            }
            let witnesses: Vec<_> = fk.witnesses.into_iter().map(|w| w.expect("checked")).collect();
            let ec = endo_covering(&cd, &t, &witnesses)?;
            let bc = ec.covering.cover();
            let bcomps = components(bc);
            let spec = AlgebraSpecFile::from_presentation(bc).to_toml();
            payload.insert(
                "endo".into(),
                json!({
                    "dim": ec.endo.algebra().dim(),
                    "relations": ec.endo.algebra().relations().len(),
                    "degrees": ec.degrees.iter().map(|d| cd.group().format(d)).collect::<Vec<_>>(),
                    "cover_vertices": bc.num_vertices(),
                    "cover_components": bcomps.len(),
                    "connected": bcomps.len() <= 1,
                    "presentation": spec,
                }),
            );
            assertions = ec.report.assertions;
            artifact = Some(spec);
        }
        other => return Err(CliError::Input(format!("unknown cover subcommand {other:?}"))),
    }
    Ok(Output {
        report: inputs.finish("cover", opts, assertions, Value::Object(payload)),
        artifact,
    })
}
