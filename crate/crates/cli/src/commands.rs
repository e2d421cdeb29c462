use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use log::{debug, info};
use perscontext::context::{StreamingContext, World};
use perscontext::harness::{evaluate as score, simulate as run, QueryStrategy, RunConfig};
use perscontext::hierarchy::{
    compile_with, to_dot, validate_hierarchy, validate_hierarchy_sources, CompileOptions, Hierarchy, HierarchyDoc,
    HierarchyError,
};
use perscontext::io::{self, Config, LabelsDoc};
use perscontext::kg::{snapshot_eg, validate_eg, validate_etg, Eg, Etg};
use perscontext::labels::LabelSpace;
use perscontext::ValidationReport;

/// Invalid input or a failed compilation; exits with status 2.
#[derive(Debug)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

pub struct Globals {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl Globals {
    fn config(&self) -> Result<Config> {
        match &self.config {
            None => Ok(Config::default()),
            Some(p) => {
                let text = io::read_text(p)?;
                io::parse_config(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))
            }
        }
    }
}

fn load<T: io::Document>(path: &Path) -> Result<T> {
    let text = io::read_text(path)?;
    io::from_json_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_hierarchy(path: &Path) -> Result<Hierarchy> {
    let doc: HierarchyDoc = load(path)?;
    Hierarchy::try_from(doc).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            io::write_text(p, text)?;
            info!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn split_list(s: &str) -> BTreeSet<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(String::from)
        .collect()
}

#[derive(Args)]
pub struct CompileArgs {
    #[arg(long)]
    etg: PathBuf,
    #[arg(long)]
    eg: PathBuf,
    /// Comma-separated property ids to exclude; defaults to the
    /// context-dependent non-function properties. Pass "" for none.
    #[arg(long)]
    q: Option<String>,
    /// Comma-separated property names compiled as direct edges.
    #[arg(long)]
    structural: Option<String>,
    /// Hierarchy document output; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write Graphviz DOT here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

pub fn compile(_g: &Globals, a: CompileArgs) -> Result<()> {
    let etg: Etg = load(&a.etg)?;
    let eg: Eg = load(&a.eg)?;
    let mut opts = CompileOptions::for_etg(&etg);
    if let Some(q) = &a.q {
        opts.q = split_list(q);
    }
    if let Some(s) = &a.structural {
        opts.structural = split_list(s);
    }
    debug!("excluded properties: {:?}", opts.q);
    let h = compile_with(&etg, &eg, &opts).map_err(|e| match e {
        HierarchyError::InvalidInput(r) => invalid(format!("input graphs are invalid:\n{r}")),
        other => invalid(other.to_string()),
    })?;
    info!("{} nodes, {} edges", h.node_count(), h.edge_count());
    emit(a.output.as_deref(), &io::to_json_string(&HierarchyDoc::from(&h)))?;
    if let Some(dot) = &a.dot {
        io::write_text(dot, &to_dot(&h))?;
    }
    Ok(())
}

#[derive(Args)]
pub struct ValidateArgs {
    #[arg(long)]
    etg: Option<PathBuf>,
    #[arg(long, requires = "etg")]
    eg: Option<PathBuf>,
    #[arg(long)]
    world: Option<PathBuf>,
    /// Stream file; super chains and ordering are checked when --world is given.
    #[arg(long)]
    stream: Option<PathBuf>,
    #[arg(long)]
    hierarchy: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<PathBuf>,
}

pub fn validate(g: &Globals, a: ValidateArgs) -> Result<()> {
    let mut report = ValidationReport::new();
    let mut checked = Vec::new();
    let etg: Option<Etg> = a.etg.as_deref().map(load).transpose()?;
    let eg: Option<Eg> = a.eg.as_deref().map(load).transpose()?;
    if let Some(etg) = &etg {
        report.extend(validate_etg(etg));
        checked.push("etg");
        if let Some(eg) = &eg {
            report.extend(validate_eg(etg, eg));
            checked.push("eg");
        }
    }
    let world: Option<World> = a.world.as_deref().map(load).transpose()?;
    if let Some(w) = &world {
        report.extend(w.validate());
        checked.push("world");
    }
    if let Some(path) = &a.stream {
        let records =
            io::parse_stream(&io::read_text(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        if let Some(w) = &world {
            let containment = w.containment().map_err(|e| invalid(e.to_string()))?;
            StreamingContext::from_records(records, &containment)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        }
        checked.push("stream");
    }
    if let Some(path) = &a.hierarchy {
        let h = load_hierarchy(path)?;
        report.extend(match (&etg, &eg) {
            (Some(etg), Some(eg)) => validate_hierarchy_sources(&h, etg, eg),
            _ => validate_hierarchy(&h),
        });
        checked.push("hierarchy");
    }
    if let Some(path) = &a.scenario {
        let script: perscontext::harness::ScenarioScript = load(path)?;
        if let Some(eg) = &eg {
            script
                .check(eg)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        }
        checked.push("scenario");
    }
    if let Some(p) = &g.config {
        g.config()?;
        debug!("config {} is valid", p.display());
        checked.push("config");
    }
    if checked.is_empty() {
        bail!("nothing to validate; pass at least one input document");
    }
    if !report.is_empty() {
        print!("{report}");
        if !report.to_string().ends_with('\n') {
            println!();
        }
    }
    if report.has_errors() {
        return Err(invalid(format!(
            "{} finding(s) in {}",
            report.errors().count(),
            checked.join(", ")
        )));
    }
    println!("ok: {}", checked.join(", "));
    Ok(())
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long)]
    etg: PathBuf,
    #[arg(long)]
    eg: PathBuf,
    #[arg(long)]
    scenario: PathBuf,
    /// always, never or margin:<t>; overrides the configuration.
    #[arg(long)]
    strategy: Option<QueryStrategy>,
    /// Window length in minutes; overrides the configuration.
    #[arg(long)]
    window_minutes: Option<f64>,
    /// Event log (JSON Lines), one line per window.
    #[arg(long)]
    events: Option<PathBuf>,
    /// Predicted label vectors.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Ground-truth label vectors.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Summary JSON; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn simulate(g: &Globals, a: SimulateArgs) -> Result<()> {
    let mut config = g.config()?;
    if let Some(s) = a.strategy {
        config.strategy = s;
    }
    if let Some(w) = a.window_minutes {
        config.window_minutes = w;
    }
    config.check().map_err(invalid)?;
    let etg: Etg = load(&a.etg)?;
    let eg: Eg = load(&a.eg)?;
    let script = load(&a.scenario)?;
    let run_config = RunConfig {
        window_s: config.window_s(),
        strategy: config.strategy,
        seed: Some(g.seed.unwrap_or(config.seed)),
        ..RunConfig::default()
    };
    let out = run(&script, &etg, &eg, &run_config).map_err(|e| invalid(e.to_string()))?;
    info!(
        "{} windows, {} queries, F1 {:.3}",
        out.summary.windows, out.summary.queries, out.summary.metrics.f1
    );
    if let Some(p) = &a.events {
        io::write_text(p, &io::write_jsonl(&out.events))?;
    }
    if let Some(p) = &a.predictions {
        io::save(p, &LabelsDoc::new(&out.space, out.predictions.clone()))?;
    }
    if let Some(p) = &a.truth {
        io::save(p, &LabelsDoc::new(&out.space, out.truth.clone()))?;
    }
    let mut text = serde_json::to_string_pretty(&out.summary)?;
    text.push('\n');
    emit(a.output.as_deref(), &text)
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    hierarchy: PathBuf,
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn evaluate(_g: &Globals, a: EvaluateArgs) -> Result<()> {
    let h = load_hierarchy(&a.hierarchy)?;
    let space = LabelSpace::new(&h).map_err(|e| invalid(e.to_string()))?;
    let predictions: LabelsDoc = load(&a.predictions)?;
    let truth: LabelsDoc = load(&a.truth)?;
    for (doc, path) in [(&predictions, &a.predictions), (&truth, &a.truth)] {
        doc.check(&space)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    let metrics = score(&space, &predictions.vectors, &truth.vectors).map_err(|e| invalid(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&metrics)?;
    text.push('\n');
    emit(a.output.as_deref(), &text)
}

#[derive(Args)]
pub struct ExportDotArgs {
    #[arg(long)]
    hierarchy: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn export_dot(_g: &Globals, a: ExportDotArgs) -> Result<()> {
    let h = load_hierarchy(&a.hierarchy)?;
    emit(a.output.as_deref(), &to_dot(&h))
}

#[derive(Args)]
pub struct SnapshotArgs {
    #[arg(long)]
    etg: PathBuf,
    #[arg(long)]
    eg: PathBuf,
    #[arg(long)]
    stream: PathBuf,
    /// Zero-based record index.
    #[arg(long, default_value_t = 0)]
    record: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn snapshot(_g: &Globals, a: SnapshotArgs) -> Result<()> {
    let etg: Etg = load(&a.etg)?;
    let eg: Eg = load(&a.eg)?;
    let records =
        io::parse_stream(&io::read_text(&a.stream)?).map_err(|e| invalid(format!("{}: {e}", a.stream.display())))?;
    let record = records
        .get(a.record)
        .with_context(|| format!("record {} out of range ({} records)", a.record, records.len()))?;
    let s = snapshot_eg(&eg, record, &etg);
    for note in &s.unresolved {
        log::warn!("{note}");
    }
    emit(a.output.as_deref(), &io::to_json_string(&s.eg))
}
