//! Command-line front end. Every command is deterministic; `--output json`
//! gives the machine-readable report and `golden` rewrites the shipped goldens.
//!
//! Exit codes: 0 computation finished without an obstruction, 2 obstruction
//! found, 1 error.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{fgl_log, fgl_make, k_series, quillen_idempotent_coord, FglLabel};
use crate::frobenius::{
    bullett_macdonald_experiment, fp_fraction_text, frobenius_fp_view, sharp_coordinate, SharpSpec,
};
use crate::obstruction::{
    cyclotomic_rigidity_constraints, en_vanishing_bound, en_verdict, jn_default_window, jn_obstruction, Level,
    OrientationData,
};
use crate::ring::{is_prime, RingSpec};
use crate::series::{Series, Trunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// E_n verdict for an orientation.
    Obstruct,
    /// The d-th JN obstruction over the Hazewinkel generators.
    Jn,
    /// The Frobenius coordinate, over F_p or over a named law.
    Frobenius,
    /// A sharp coordinate with chosen circle weights.
    Sharp,
    /// The cyclotomic rigidity computation at p = 2.
    Rigidity,
    /// A formal group law with its logarithm and p-series.
    Fgl,
    /// Both sides of the Bullett-MacDonald identity.
    BmExperiment,
    /// Rewrites the golden reports into --path.
    Golden,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Flags, or the same fields in a JSON file passed with `--config`.
/// Flags given on the command line win over the file.
#[derive(Parser, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
#[command(name = "fglobs", version, about = "Formal group laws, Frobenius coordinates and E_n obstructions")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Prime p (default 3).
    #[arg(long)]
    pub prime: Option<u32>,
    /// E_n level, a positive integer or "inf" (default 5).
    #[arg(long)]
    pub n: Option<String>,
    /// todd-p-typical, identity or identity-universal (default todd-p-typical).
    #[arg(long)]
    pub orientation: Option<String>,
    /// Largest x-degree (default 27 for obstruct, 4 otherwise).
    #[arg(long, visible_alias = "pow-choice")]
    pub x_bound: Option<u32>,
    /// Largest reported t-degree (default 4 for obstruct, 2 otherwise).
    #[arg(long)]
    pub t_bound: Option<i32>,
    /// Lowest t-degree of the window (default -x_bound).
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<i32>,
    /// fp, todd, universal or additive.
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// Degree d of [CP^d] for jn (default 2).
    #[arg(long)]
    pub d: Option<u32>,
    /// Order of the rigidity check (default 6).
    #[arg(long)]
    pub order: Option<u32>,
    /// Largest power x^k in the Bullett-MacDonald experiment (default 2).
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Circle weights for sharp, comma separated (default 1..p-1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    /// Output directory for golden.
    #[arg(long)]
    pub path: Option<PathBuf>,
    /// JSON file with any of the fields above.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl RunConfig {
    /// Fills unset fields from `file`.
    pub fn merged_with(self, file: RunConfig) -> RunConfig {
        RunConfig {
            command: self.command.or(file.command),
            prime: self.prime.or(file.prime),
            n: self.n.or(file.n),
            orientation: self.orientation.or(file.orientation),
            x_bound: self.x_bound.or(file.x_bound),
            t_bound: self.t_bound.or(file.t_bound),
            t_min: self.t_min.or(file.t_min),
            ring: self.ring.or(file.ring),
            output: self.output.or(file.output),
            d: self.d.or(file.d),
            order: self.order.or(file.order),
            k_max: self.k_max.or(file.k_max),
            weights: self.weights.or(file.weights),
            path: self.path.or(file.path),
            config: None,
        }
    }

    /// Reads `--config` when given and merges it under the flags.
    pub fn resolve(self) -> Result<RunConfig> {
        match &self.config {
            None => Ok(self),
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let file: RunConfig =
                    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                Ok(self.merged_with(file))
            }
        }
    }

    fn prime(&self) -> Result<u32> {
        let p = self.prime.unwrap_or(3);
        if !is_prime(p) {
            return Err(Error::Config(format!("--prime {p} is not prime")));
        }
        Ok(p)
    }

    fn level(&self) -> Result<Level> {
        let n = self.n.as_deref().unwrap_or("5");
        Level::parse(n).ok_or_else(|| Error::Config(format!("--n {n}: expected a positive integer or inf")))
    }

    fn window(&self, x_default: u32, t_default: i32) -> Result<Trunc> {
        let x = self.x_bound.unwrap_or(x_default);
        let t = self.t_bound.unwrap_or(t_default);
        if x == 0 {
            return Err(Error::Config("--x-bound must be positive".into()));
        }
        if t < 0 {
            return Err(Error::Config("--t-bound must be nonnegative".into()));
        }
        let t_min = self.t_min.unwrap_or(-(x as i32));
        if t_min > 0 {
            return Err(Error::Config("--t-min must be at most 0".into()));
        }
        Ok(Trunc::new(x, t_min, t))
    }

    fn law(&self, default: &str) -> Result<FglLabel> {
        let name = self.ring.as_deref().unwrap_or(default);
        FglLabel::parse(name).ok_or_else(|| Error::Config(format!("--ring {name}: expected todd, universal or additive")))
    }
}

fn ring_for(label: &FglLabel, cap: u32) -> RingSpec {
    match label {
        FglLabel::Todd => RingSpec::todd(),
        FglLabel::Universal => RingSpec::universal(cap.max(1)),
        _ => RingSpec::additive(),
    }
}

/// A rendered report and its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Outcome {
        Outcome { code, text, json }
    }

    /// The report in the requested format.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.text.clone(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Runs one configuration. Errors are returned, not printed.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let command = cfg.command.ok_or_else(|| Error::Config("no command given".into()))?;
    match command {
        Command::Obstruct => obstruct(cfg),
        Command::Jn => jn(cfg),
        Command::Frobenius => frobenius(cfg),
        Command::Sharp => sharp(cfg),
        Command::Rigidity => rigidity(cfg),
        Command::Fgl => fgl(cfg),
        Command::BmExperiment => bm(cfg),
        Command::Golden => {
            let dir = cfg.path.clone().ok_or_else(|| Error::Config("golden needs --path".into()))?;
            let written = write_goldens(&dir)?;
            let text = written.iter().map(|p| format!("wrote {}\n", p.display())).collect();
            let json = json!({"written": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()});
            Ok(Outcome::new(0, text, json))
        }
    }
}

fn obstruct(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime()?;
    let n = cfg.level()?;
    let name = cfg.orientation.as_deref().unwrap_or("todd-p-typical");
    let data = OrientationData::preset(name, p, cfg.window(27, 4)?)?;
    let v = en_verdict(&data, n)?;
    let mut json = v.to_json();
    json["orientation"] = json!(name);
    Ok(Outcome::new(if v.failed() { 2 } else { 0 }, v.text(), json))
}

fn jn(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime.unwrap_or(2);
    let p = RunConfig { prime: Some(p), ..RunConfig::default() }.prime()?;
    let n = cfg.level()?;
    let d = cfg.d.unwrap_or(2);
    let probe = Trunc::new(1, 0, cfg.t_bound.unwrap_or(0));
    let tbd = en_vanishing_bound(p, n, &probe)?;
    let r = jn_obstruction(p, d, n, jn_default_window(p, d, tbd))?;
    Ok(Outcome::new(if r.leading.is_zero() { 0 } else { 2 }, r.text(), r.to_json()))
}

fn frobenius(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime()?;
    if cfg.ring.as_deref().unwrap_or("fp") == "fp" {
        let s = frobenius_fp_view(p)?;
        let text = fp_fraction_text(&s, p)?;
        let json = json!({"ring": "fp", "p": p, "frobenius": text, "terms": s.to_json()});
        return Ok(Outcome::new(0, format!("{text}\n"), json));
    }
    let mut c = cfg.clone();
    c.weights = Some((1..p as i64).collect());
    sharp_report(&c, "frobenius", p)
}

fn sharp(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime()?;
    sharp_report(cfg, "sharp", p)
}

fn sharp_report(cfg: &RunConfig, what: &str, p: u32) -> Result<Outcome> {
    let label = cfg.law("todd")?;
    let window = cfg.window(4, 2)?;
    let ring = Arc::new(ring_for(&label, (window.full_xy().x_max as i64 - 1).max(1) as u32));
    let f = fgl_make(&label, &ring, window)?;
    let weights = cfg.weights.clone().unwrap_or_else(|| (1..p as i64).collect());
    let s = sharp_coordinate(&f, &SharpSpec { weights: weights.clone(), mod_p_series: false })?.rewindow(window)?;
    let text = format!("{what} coordinate of the {label} law, weights {weights:?}:\n{}\n", s.display_text());
    let json = json!({"law": label.to_string(), "weights": weights, "series": s.to_json(), "text": s.reported_text()});
    Ok(Outcome::new(0, text, json))
}

fn rigidity(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime.unwrap_or(2);
    let rep = cyclotomic_rigidity_constraints(p, cfg.order.unwrap_or(6))?;
    Ok(Outcome::new(if rep.all_hold() { 0 } else { 2 }, rep.text(), rep.to_json()))
}

fn fgl(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime()?;
    let label = cfg.law("todd")?;
    let window = cfg.window(4, 0)?;
    let ring = Arc::new(ring_for(&label, (window.full_xy().x_max as i64 - 1).max(1) as u32));
    let f = fgl_make(&label, &ring, window)?;
    let bivariate = Trunc::new(window.x_max, 0, 0).with_y_max(window.x_max);
    let law = f.law().rewindow(f.trunc().intersect(&bivariate.full_xy()).unwrap_or(bivariate))?;
    let log = fgl_log(&f)?.rewindow(Trunc::new(window.x_max, 0, 0))?;
    let ps = k_series(&f, p as i64)?.rewindow(Trunc::new(0, 0, window.x_max as i32))?;
    let mut text = format!("{label} law\nF(x, y) = {}\nlog(x) = {}\n[{p}](t) = {}\n", law.display_text(), log.display_text(), ps.display_text());
    let mut json = json!({"law": label.to_string(), "F": law.reported_text(), "log": log.reported_text(), "p": p, "p_series": ps.reported_text()});
    if label == FglLabel::Todd {
        let q = quillen_idempotent_coord(&f, p)?;
        let qs: Series = q.series().rewindow(Trunc::new(window.x_max, 0, 0))?;
        text.push_str(&format!("{p}-typical coordinate: {}\n", qs.display_text()));
        json["ptypical_coordinate"] = json!(qs.reported_text());
    }
    Ok(Outcome::new(0, text, json))
}

fn bm(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.prime.unwrap_or(2);
    let label = cfg.law("additive")?;
    let w = cfg.window(3, 3)?;
    let window = w.with_s(w.t_min, w.t_max);
    let rep = bullett_macdonald_experiment(&label, p, window, cfg.k_max.unwrap_or(2))?;
    Ok(Outcome::new(0, rep.text(), rep.to_json()))
}

/// The configurations whose reports ship as goldens, by file stem.
pub fn golden_configs() -> Vec<(&'static str, RunConfig)> {
    let base = |command| RunConfig { command: Some(command), ..RunConfig::default() };
    let mut out = vec![("todd3_typical_n5", RunConfig { prime: Some(3), n: Some("5".into()), ..base(Command::Obstruct) })];
    for d in [2, 4] {
        let name = if d == 2 { "jn_p2_d2" } else { "jn_p2_d4" };
        out.push((name, RunConfig { prime: Some(2), n: Some("5".into()), d: Some(d), ..base(Command::Jn) }));
    }
    for (name, p) in [("frobenius_fp2", 2), ("frobenius_fp3", 3), ("frobenius_fp5", 5)] {
        out.push((name, RunConfig { prime: Some(p), ring: Some("fp".into()), ..base(Command::Frobenius) }));
    }
    out.push(("todd_p3", RunConfig { prime: Some(3), ring: Some("todd".into()), x_bound: Some(5), ..base(Command::Fgl) }));
    out.push(("rigidity_p2", RunConfig { prime: Some(2), order: Some(6), ..base(Command::Rigidity) }));
    out
}

/// Renders one golden exactly as it is stored.
pub fn golden_text(cfg: &RunConfig) -> Result<String> {
    let out = run(cfg)?;
    let mut doc = json!({"config": cfg, "exit_code": out.code, "report": out.json});
    if let Some(m) = doc["config"].as_object_mut() {
        m.retain(|_, v| !v.is_null());
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    Ok(s)
}

pub fn write_goldens(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, cfg) in golden_configs() {
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, golden_text(&cfg)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match cfg.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match run(&cfg) {
        Ok(out) => {
            print!("{}", out.render(cfg.output.unwrap_or_default()));
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
