//! Command-line front end.
//!
//! Every subcommand produces an [`Output`]: an optional table, named scalars
//! and diagnostics. JSON renders it as one object (`command`, parameters,
//! `rows`, scalars, `diagnostics`); CSV renders the table with a header row
//! followed by one `name,value` row per scalar, or a `metric,value` table
//! when there is no row data. CSV diagnostics go to standard error.
//!
//! Probabilities below exp(−700) are written as `{"log_value": ln p}` in
//! JSON and `log:<ln p>` in CSV.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::author_model::{AuthorModelParams, AuthorSampler, CitationCountY, HYPERGEOMETRIC_MAX_S};
use crate::error::ModelError;
use crate::hirsch::{HirschCaps, HirschMode, HirschOutcome, HirschParams, HirschSimulator};
use crate::montecarlo::{par_draws, STREAM_DERIVATION};
use crate::scientometrics::{self, round2, DatasetSource, Fixture};
use crate::trial_chain::{ChainSampler, GrowingChainParams, SampleOutcome, TrialChainParams, DEFAULT_CAP};

/// Log-probability threshold below which values are written in log form.
pub const LOG_OUTPUT_THRESHOLD: f64 = -700.0;

/// Largest `--s-max` accepted with `--method oracle`.
pub const ORACLE_MAX_S: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Hyp,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Trial,
    Author,
    Hirsch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    True,
}

#[derive(Debug, Parser)]
#[command(name = "citemodel", version, about = "Citation-count probability models and citation-table analysis")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P{X = n}, n = 1..=n-max, for success probabilities p/n^γ.
    Pmf {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        n_max: u64,
        /// P{X = n | X < ∞} (γ > 1 only).
        #[arg(long)]
        conditional: bool,
    },
    /// P{X ≥ m}, m = 1..=m-max.
    Tail {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        m_max: u64,
    },
    /// P{X = ∞}.
    ImproperMass {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// pmf against the large-n shape on a grid, with the fitted constant.
    Asym {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
    },
    /// pmf for success probabilities 1 − q/n^γ.
    GrowingPmf {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long)]
        n_max: u64,
    },
    /// P{Y = s} for an author's total citations.
    AuthorPmf {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long)]
        s_max: u64,
        #[arg(long, value_enum, default_value = "hyp")]
        method: Method,
    },
    /// P{H = h} for the Hirsch index, with the normalization deficit.
    HirschPmf {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long)]
        h_max: u64,
    },
    /// Seeded Monte Carlo draws.
    Sample {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: Option<f64>,
        /// Required for the trial model; author and hirsch use γ = 1.
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value = "paper")]
        hirsch_mode: ModeArg,
    },
    /// κ, h summary and correlations for a citation table.
    Analyze {
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        input: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
    },
}

/// Output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    /// Probability with its natural log; the log decides the output form.
    Prob { value: f64, ln: f64 },
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn prob(p: f64) -> Cell {
        Cell::Prob { value: p, ln: p.ln() }
    }

    pub fn ln_prob(ln: f64) -> Cell {
        Cell::Prob { value: ln.exp(), ln }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Num(x) => num(*x),
            Cell::Prob { value, ln } => {
                if *ln < LOG_OUTPUT_THRESHOLD && ln.is_finite() {
                    let mut m = Map::new();
                    m.insert("log_value".into(), num(*ln));
                    Value::Object(m)
                } else {
                    num(*value)
                }
            }
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Prob { value, ln } => {
                if *ln < LOG_OUTPUT_THRESHOLD && ln.is_finite() {
                    format!("log:{ln}")
                } else {
                    value.to_string()
                }
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Result of one subcommand.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub command: String,
    pub params: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub scalars: Vec<(String, Cell)>,
    /// JSON-only list values (written as indexed scalars in CSV).
    pub lists: Vec<(String, Vec<Cell>)>,
    pub diagnostics: Vec<String>,
}

impl Output {
    fn new(command: &str) -> Self {
        Self { command: command.into(), ..Default::default() }
    }

    fn param(mut self, name: &str, v: Cell) -> Self {
        self.params.push((name.into(), v));
        self
    }

    fn scalar(&mut self, name: &str, v: Cell) {
        self.scalars.push((name.into(), v));
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.clone()));
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.to_json());
        }
        m.insert("params".into(), Value::Object(params));
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| {
                    let mut o = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        o.insert(c.clone(), v.to_json());
                    }
                    Value::Object(o)
                })
                .collect();
            m.insert("rows".into(), Value::Array(rows));
        }
        for (k, v) in &self.scalars {
            m.insert(k.clone(), v.to_json());
        }
        for (k, vs) in &self.lists {
            m.insert(k.clone(), Value::Array(vs.iter().map(Cell::to_json).collect()));
        }
        m.insert(
            "diagnostics".into(),
            Value::Array(self.diagnostics.iter().map(|d| Value::from(d.clone())).collect()),
        );
        Value::Object(m)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let width = self.columns.len().max(2);
        let pad = |mut r: Vec<String>| {
            r.resize(width, String::new());
            r
        };
        if self.columns.is_empty() {
            w.write_record(["metric", "value"]).unwrap();
        } else {
            w.write_record(&self.columns).unwrap();
            for r in &self.rows {
                w.write_record(r.iter().map(Cell::to_csv)).unwrap();
            }
        }
        for (k, vs) in &self.lists {
            for (i, v) in vs.iter().enumerate() {
                w.write_record(pad(vec![format!("{k}_{}", i + 1), v.to_csv()])).unwrap();
            }
        }
        for (k, v) in &self.scalars {
            w.write_record(pad(vec![k.clone(), v.to_csv()])).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Runs the CLI on `argv` (including the program name), writing the result
/// to `out` and messages to `err`; returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            let _ = writeln!(err, "error: {first}");
            return 2;
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok(o) => {
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&o.to_json()).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    for d in &o.diagnostics {
                        let _ = writeln!(err, "warning: {d}");
                    }
                    o.to_csv()
                }
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

/// Entry point for the binary.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn chain(p: f64, gamma: f64) -> Result<TrialChainParams<f64>, ModelError> {
    TrialChainParams::new(p, gamma)
}

fn trial_params(o: Output, p: f64, gamma: f64) -> Output {
    o.param("p", Cell::Num(p)).param("gamma", Cell::Num(gamma))
}

fn regime_name(c: &TrialChainParams<f64>) -> String {
    serde_json::to_value(c.regime()).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn execute(command: Command) -> Result<Output, ModelError> {
    match command {
        Command::Pmf { p, gamma, n_max, conditional } => {
            let c = chain(p, gamma)?;
            let mut o = trial_params(Output::new("pmf"), p, gamma).param("n_max", Cell::Int(n_max));
            o.params.push(("conditional".into(), Cell::Bool(conditional)));
            let t = if conditional { c.conditional_pmf_table(n_max)? } else { c.pmf_table(n_max) };
            o.columns = vec!["n".into(), "pmf".into()];
            let scale = if conditional { 1.0 / (1.0 - c.improper_mass()) } else { 1.0 };
            let mut b = 1.0;
            for (i, &l) in t.ln_probs.iter().enumerate() {
                let n = i as u64 + 1;
                o.rows.push(vec![Cell::Int(n), Cell::Prob { value: c.success_prob(n) * b * scale, ln: l }]);
                b *= 1.0 - c.success_prob(n);
            }
            o.scalar("regime", Cell::Text(regime_name(&c)));
            if conditional {
                o.scalar("tail", Cell::ln_prob(t.ln_tail));
            } else {
                o.scalar("tail", Cell::Prob { value: b, ln: t.ln_tail });
            }
            if !c.is_proper() {
                o.scalar("improper_mass", Cell::ln_prob(c.ln_improper_mass()));
                if !conditional {
                    o.diagnostics.push("tail includes the mass at infinity".into());
                }
            }
            Ok(o)
        }
        Command::Tail { p, gamma, m_max } => {
            let c = chain(p, gamma)?;
            let mut o = trial_params(Output::new("tail"), p, gamma).param("m_max", Cell::Int(m_max));
            o.columns = vec!["m".into(), "tail".into()];
            let mut b = 1.0;
            for (i, l) in c.ln_tail_table(m_max).into_iter().enumerate() {
                let m = i as u64 + 1;
                o.rows.push(vec![Cell::Int(m), Cell::Prob { value: b, ln: l }]);
                b *= 1.0 - c.success_prob(m);
            }
            o.scalar("regime", Cell::Text(regime_name(&c)));
            Ok(o)
        }
        Command::ImproperMass { p, gamma } => {
            let c = chain(p, gamma)?;
            let mut o = trial_params(Output::new("improper-mass"), p, gamma);
            o.scalar("regime", Cell::Text(regime_name(&c)));
            o.scalar("proper", Cell::Bool(c.is_proper()));
            o.scalar("improper_mass", Cell::ln_prob(c.ln_improper_mass()));
            if !c.is_proper() {
                o.scalar("ln_improper_mass", Cell::Num(c.ln_improper_mass()));
                o.scalar("without_log_weights", Cell::prob(c.improper_mass_without_log_weights()));
                o.diagnostics.push(
                    "without_log_weights = exp(-sum p/(k^gamma - p)) omits the 1/j weights of the log series and is not P{X = inf}"
                        .into(),
                );
            }
            Ok(o)
        }
        Command::Asym { p, gamma, grid } => {
            let c = chain(p, gamma)?;
            let est = c.estimate_constant(&grid)?;
            let mut o = trial_params(Output::new("asym"), p, gamma);
            o.lists.push(("grid".into(), grid.iter().map(|&n| Cell::Int(n)).collect()));
            o.columns = vec!["n".into(), "pmf".into(), "asym_shape".into(), "ratio".into()];
            for &(n, ln_ratio) in &est.ln_ratios {
                let ln_pmf = if c.is_proper() { c.ln_pmf(n) } else { c.ln_conditional_pmf(n)? };
                let ln_shape = c.ln_asym_pmf_shape_for(est.branch, n, crate::trial_chain::ExponentSign::Decaying)?;
                o.rows.push(vec![Cell::Int(n), Cell::ln_prob(ln_pmf), Cell::ln_prob(ln_shape), Cell::Num(ln_ratio.exp())]);
            }
            let branch = serde_json::to_value(est.branch).ok().and_then(|v| v.as_str().map(String::from));
            o.scalar("branch", Cell::Text(branch.unwrap_or_default()));
            o.scalar("constant", Cell::Num(est.constant));
            o.scalar("spread", Cell::Num(est.spread));
            if !c.is_proper() {
                o.diagnostics.push("gamma > 1: pmf column is conditional on X < inf".into());
            }
            o.diagnostics.extend(est.warning);
            Ok(o)
        }
        Command::GrowingPmf { q, gamma, n_max } => {
            let g = GrowingChainParams::new(q, gamma)?;
            let mut o = Output::new("growing-pmf")
                .param("q", Cell::Num(q))
                .param("gamma", Cell::Num(gamma))
                .param("n_max", Cell::Int(n_max));
            o.columns = vec!["n".into(), "pmf".into()];
            o.rows = (1..=n_max).map(|n| vec![Cell::Int(n), Cell::ln_prob(g.ln_pmf(n))]).collect();
            o.scalar("tail", Cell::ln_prob(g.ln_tail(n_max + 1)));
            o.scalar("mode", Cell::Int(g.mode()));
            Ok(o)
        }
        Command::AuthorPmf { p, q, s_max, method } => {
            let m = AuthorModelParams::new(p, q)?;
            let mut o = Output::new("author-pmf")
                .param("p", Cell::Num(p))
                .param("q", Cell::Num(q))
                .param("s_max", Cell::Int(s_max));
            let t = match method {
                Method::Hyp => {
                    o.params.push(("method".into(), Cell::Text("hyp".into())));
                    if s_max > HYPERGEOMETRIC_MAX_S {
                        o.diagnostics.push(format!(
                            "s > {HYPERGEOMETRIC_MAX_S} evaluated by the three-term recurrence instead of 2F1"
                        ));
                    }
                    m.pmf_table(s_max)?
                }
                Method::Oracle => {
                    o.params.push(("method".into(), Cell::Text("oracle".into())));
                    if s_max > ORACLE_MAX_S {
                        return Err(ModelError::Domain {
                            op: "author-pmf",
                            detail: format!("--method oracle supports s-max <= {ORACLE_MAX_S}"),
                        });
                    }
                    m.pmf_oracle(s_max)
                }
            };
            o.columns = vec!["s".into(), "pmf".into()];
            o.rows = t.ln_probs.iter().enumerate().map(|(s, &l)| vec![Cell::Int(s as u64), Cell::ln_prob(l)]).collect();
            o.scalar("remaining_mass", Cell::ln_prob(t.ln_tail));
            Ok(o)
        }
        Command::HirschPmf { p, q, h_max } => {
            let m = HirschParams::new(p, q)?;
            let mut o = Output::new("hirsch-pmf")
                .param("p", Cell::Num(p))
                .param("q", Cell::Num(q))
                .param("h_max", Cell::Int(h_max));
            o.columns = vec!["h".into(), "pmf".into(), "nu".into()];
            o.rows.push(vec![Cell::Int(0), Cell::ln_prob(m.ln_pmf(0)), Cell::Text(String::new())]);
            for h in 1..=h_max {
                o.rows.push(vec![Cell::Int(h), Cell::ln_prob(m.ln_pmf(h)), Cell::Num(m.nu(h)?)]);
            }
            o.scalar("normalization_deficit", Cell::Num(m.normalization_deficit(h_max.max(1))?));
            o.diagnostics.push(
                "normalization_deficit = 1 - q - sum_{h=1}^{h_max} P{H=h}; nu depends on h so the pmf need not sum to 1"
                    .into(),
            );
            Ok(o)
        }
        Command::Sample { model, p, q, gamma, count, seed, cap, hirsch_mode } => {
            sample(model, p, q, gamma, count, seed, cap, hirsch_mode)
        }
        Command::Analyze { input, fixture } => analyze(input, fixture),
    }
}

#[allow(clippy::too_many_arguments)]
fn sample(
    model: Model,
    p: f64,
    q: Option<f64>,
    gamma: Option<f64>,
    count: u64,
    seed: u64,
    cap: u64,
    hirsch_mode: ModeArg,
) -> Result<Output, ModelError> {
    if cap == 0 {
        return Err(ModelError::Domain { op: "sample", detail: "cap must be at least 1".into() });
    }
    let need_q = || q.ok_or(ModelError::Domain { op: "sample", detail: "--q is required for this model".into() });
    let mut o = Output::new("sample").param("p", Cell::Num(p));
    let (name, values): (&str, Vec<Cell>) = match model {
        Model::Trial => {
            let g = gamma.ok_or(ModelError::Domain { op: "sample", detail: "--gamma is required for the trial model".into() })?;
            let s = ChainSampler::new(chain(p, g)?, cap);
            o = o.param("gamma", Cell::Num(g));
            let draws = par_draws(count, seed, |rng| s.sample(rng));
            let v = draws
                .into_iter()
                .map(|d| match d {
                    SampleOutcome::Finite(n) => Cell::Int(n),
                    SampleOutcome::Censored(_) => Cell::Text("censored".into()),
                })
                .collect();
            ("trial", v)
        }
        Model::Author => {
            check_unit_gamma(gamma)?;
            let q = need_q()?;
            let s = AuthorSampler::new(AuthorModelParams::new(p, q)?, cap);
            o = o.param("q", Cell::Num(q)).param("gamma", Cell::Num(1.0));
            let draws = par_draws(count, seed, |rng| s.sample(rng));
            let v = draws
                .into_iter()
                .map(|d| match d {
                    CitationCountY::Count(n) => Cell::Int(n),
                    CitationCountY::Censored(_) => Cell::Text("censored".into()),
                })
                .collect();
            ("author", v)
        }
        Model::Hirsch => {
            check_unit_gamma(gamma)?;
            let q = need_q()?;
            let mode = match hirsch_mode {
                ModeArg::Paper => HirschMode::PaperEvent,
                ModeArg::True => HirschMode::TrueHIndex,
            };
            let sim = HirschSimulator::new(
                HirschParams::new(p, q)?,
                mode,
                HirschCaps { max_papers: cap, max_citations: cap },
            );
            o = o.param("q", Cell::Num(q)).param("gamma", Cell::Num(1.0));
            o.params.push((
                "hirsch_mode".into(),
                Cell::Text(if mode == HirschMode::PaperEvent { "paper" } else { "true" }.into()),
            ));
            let draws = par_draws(count, seed, |rng| sim.sample(rng));
            let censored_papers: u64 = draws.iter().map(|d| d.censored_papers).sum();
            if censored_papers > 0 {
                o.diagnostics.push(format!("{censored_papers} papers reached the citation cap and were kept at the cap"));
            }
            let v = draws
                .into_iter()
                .map(|d| match d.outcome {
                    HirschOutcome::Index(h) => Cell::Int(h),
                    HirschOutcome::NoMatch => Cell::Text("no_match".into()),
                    HirschOutcome::Censored => Cell::Text("censored".into()),
                })
                .collect();
            ("hirsch", v)
        }
    };
    o.params.push(("model".into(), Cell::Text(name.into())));
    o.params.push(("count".into(), Cell::Int(count)));
    o.params.push(("seed".into(), Cell::Int(seed)));
    o.params.push(("cap".into(), Cell::Int(cap)));
    let censored = values.iter().filter(|c| **c == Cell::Text("censored".into())).count() as u64;
    let no_match = values.iter().filter(|c| **c == Cell::Text("no_match".into())).count() as u64;
    o.columns = vec!["draw".into(), "value".into()];
    o.rows = values.into_iter().enumerate().map(|(i, v)| vec![Cell::Int(i as u64 + 1), v]).collect();
    o.scalar("censored_count", Cell::Int(censored));
    o.scalar("censored_fraction", Cell::Num(if count == 0 { 0.0 } else { censored as f64 / count as f64 }));
    if model == Model::Hirsch {
        o.scalar("no_match_count", Cell::Int(no_match));
    }
    o.diagnostics.push(format!("streams: {STREAM_DERIVATION}"));
    Ok(o)
}

fn check_unit_gamma(gamma: Option<f64>) -> Result<(), ModelError> {
    match gamma {
        Some(g) if g != 1.0 => Err(ModelError::Domain {
            op: "sample",
            detail: format!("gamma = {g}: author and hirsch models use gamma = 1"),
        }),
        _ => Ok(()),
    }
}

fn analyze(input: Option<PathBuf>, fixture: Option<String>) -> Result<Output, ModelError> {
    let mut o = Output::new("analyze");
    let records = match (&input, &fixture) {
        (Some(path), _) => {
            o = o.param("input", Cell::Text(path.display().to_string()));
            scientometrics::load_dataset(DatasetSource::Path(path))?
        }
        (None, Some(name)) => {
            let f: Fixture = name.parse()?;
            o = o.param("fixture", Cell::Text(f.name().into()));
            scientometrics::load_dataset(DatasetSource::Fixture(f))?
        }
        (None, None) => {
            return Err(ModelError::Domain { op: "analyze", detail: "one of --input or --fixture is required".into() })
        }
    };
    let r = scientometrics::report::<f64>(&records)?;
    o.lists.push(("kappa".into(), r.kappa.iter().map(|&k| Cell::Num(round2(k))).collect()));
    o.scalar("h_mean", Cell::Num(r.h_mean));
    o.scalar("h_sample_sd", Cell::Num(round2(r.h_sample_sd)));
    o.scalar("rho1", Cell::Num(r.rho1));
    o.scalar("rho2", Cell::Num(r.rho2));
    o.scalar("kappa_le_5_count", Cell::Int(r.kappa_le_5_count as u64));
    o.scalar("kappa_5_6_count", Cell::Int(r.kappa_5_6_count as u64));
    o.scalar("top_citation_ratio", Cell::Num(scientometrics::top_citation_ratio::<f64>(&records)?));
    o.diagnostics.push("kappa and h_sample_sd rounded to 2 decimals; h_sample_sd uses the n-1 denominator".into());
    Ok(o)
}
