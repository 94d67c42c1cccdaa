//! The `urysohn` command line.
//!
//! Exit codes: 0 success or the property holds, 1 the property fails,
//! 2 invalid input, 3 internal assertion (a theorem check failed).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::classify;
use crate::enumeration::{census, enumerate_monoids, verify_classsize, verify_unique};
use crate::independence::{forks, rel_dmax};
use crate::monoid::text::{format_monoid, parse_monoid};
use crate::monoid::{DistanceMonoid, DistanceValue, Monoid};
use crate::sequences::text::parse_diagonal_spec;
use crate::sequences::{
    build_so_sequence, check_np_bound, cyclic_check, diag_transitive, witness_nonsimple,
    witness_order_property, witness_tp2, Cyclicity, NonsimpleVariant,
};
use crate::space::text::{format_space, monoid_ref, parse_space, SpaceJson};
use crate::space::{free_amalgam, fraisse_grow, GrowError, RMetricSpace};

#[derive(Debug, Parser)]
#[command(name = "urysohn", version, about = "Distance monoids, their Urysohn spaces, and model-theoretic invariants")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the main artifact here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct MonoidArg {
    /// Family tag: R:<n>, MAX:<k>, Q1, QT:<q>, Q, N, GRID:Q1:<D>.
    #[arg(long, conflicts_with = "monoid")]
    pub family: Option<String>,
    /// Monoid table file.
    #[arg(long)]
    pub monoid: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Op,
    Nonsimple4,
    Nonsimple5,
    Tp2,
    Soseq,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a monoid table file.
    ValidateMonoid { file: PathBuf },
    /// Theory profile of a monoid.
    Classify {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        family: Option<String>,
    },
    /// Enumerate all monoids with `n` nonzero elements.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        census: bool,
        /// Comma-separated: unique, classsize.
        #[arg(long, value_delimiter = ',')]
        verify: Vec<String>,
    },
    /// Validate a space file.
    SpaceValidate { file: PathBuf },
    /// Free amalgam of two spaces over identified points.
    Amalgamate {
        a: PathBuf,
        b: PathBuf,
        /// Identifications `x=y` (point of A = point of B), comma-separated.
        #[arg(long, default_value = "")]
        common: String,
    },
    /// Grow a space with the k-point extension property.
    Generate {
        #[command(flatten)]
        monoid: MonoidArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether A forks with B over C.
    Forking {
        space: PathBuf,
        #[arg(long = "A", default_value = "")]
        a: String,
        #[arg(long = "B", default_value = "")]
        b: String,
        #[arg(long = "C", default_value = "")]
        c: String,
    },
    /// Decide n-cyclicity of an ε-matrix file.
    Cyclic {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Build a witness configuration.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[command(flatten)]
        monoid: MonoidArg,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        s: Option<String>,
        /// Grid size for tp2.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Sequence length for op, number of copies for soseq.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Comma-separated chain for soseq.
        #[arg(long, default_value = "")]
        chain: String,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        // Only the first pool configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let mut ctx = Ctx {
        format: cli.format,
        out: cli.out.clone(),
        stdout: String::new(),
    };
    match ctx.dispatch(&cli.command) {
        Ok(code) => Outcome { code, stdout: ctx.stdout, stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            stdout: ctx.stdout,
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Internal(msg)) => Outcome {
            code: 3,
            stdout: ctx.stdout,
            stderr: format!("internal error: {msg}\n"),
        },
    }
}

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
    stdout: String,
}

/// Writes via a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, content: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).map_err(|e| input(e.to_string()))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// A family tag, or a monoid file resolved relative to `base`.
fn resolve_monoid(reference: &str, base: Option<&Path>) -> Result<Monoid, Failure> {
    let path = match base {
        Some(dir) => dir.join(reference),
        None => PathBuf::from(reference),
    };
    if path.is_file() {
        return Ok(Monoid::Finite(parse_monoid(&read(&path)?)?));
    }
    Monoid::from_tag(reference).map_err(|e| input(format!("`{reference}` is neither a monoid file nor a family tag: {e}")))
}

fn monoid_from_arg(arg: &MonoidArg) -> Result<(Monoid, String), Failure> {
    match (&arg.family, &arg.monoid) {
        (Some(tag), None) => Ok((Monoid::from_tag(tag)?, tag.clone())),
        (None, Some(path)) => Ok((
            Monoid::Finite(parse_monoid(&read(path)?)?),
            path.display().to_string(),
        )),
        _ => Err(input("give exactly one of --family or --monoid")),
    }
}

fn load_space(path: &Path) -> Result<(RMetricSpace<Monoid>, String), Failure> {
    let text = read(path)?;
    let reference = monoid_ref(&text)?;
    let monoid = resolve_monoid(&reference, path.parent())?;
    Ok((parse_space(&text, monoid)?, reference))
}

fn labels(list: &str) -> Vec<&str> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn value(m: &Monoid, name: &str, raw: &Option<String>) -> Result<DistanceValue, Failure> {
    let raw = raw.as_deref().ok_or_else(|| input(format!("--{name} is required")))?;
    m.parse_value(raw)
        .ok_or_else(|| input(format!("`{raw}` is not a distance in {}", m.describe())))
}

impl Ctx {
    fn print(&mut self, s: &str) {
        self.stdout.push_str(s);
    }

    /// Sends `artifact` to `--out` or stdout, and `report` to stdout.
    ///
    /// JSON mode prints one object `{ "space": …, "report": … }` (without
    /// the space when it went to a file). Text mode appends the report as
    /// `#` comment lines so the output is still a valid space file.
    fn emit_space(
        &mut self,
        space: &RMetricSpace<Monoid>,
        reference: &str,
        report: serde_json::Value,
    ) -> Result<(), Failure> {
        let text = format_space(space, reference);
        if let Some(out) = &self.out {
            write_atomic(out, &text)?;
        }
        match self.format {
            Format::Json => {
                let mut obj = json!({ "report": report });
                match &self.out {
                    Some(out) => obj["space_file"] = json!(out.display().to_string()),
                    None => obj["space"] = json!(SpaceJson::from_space(space, reference)),
                }
                self.print(&to_json(&obj));
            }
            Format::Text => {
                if self.out.is_none() {
                    self.print(&text);
                }
                self.print(&comment_lines(&report));
            }
        }
        Ok(())
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<i32, Failure> {
        match cmd {
            Command::ValidateMonoid { file } => self.validate_monoid(file),
            Command::Classify { file, family } => self.classify(file.as_deref(), family.as_deref()),
            Command::Enumerate { n, census, verify } => self.enumerate(*n, *census, verify),
            Command::SpaceValidate { file } => self.space_validate(file),
            Command::Amalgamate { a, b, common } => self.amalgamate(a, b, common),
            Command::Generate { monoid, k, budget, seed } => self.generate(monoid, *k, *budget, *seed),
            Command::Forking { space, a, b, c } => self.forking(space, a, b, c),
            Command::Cyclic { file, n } => self.cyclic(file, *n),
            Command::Witness { kind, monoid, r, s, k, m, chain } => {
                self.witness(*kind, monoid, r, s, *k, *m, chain)
            }
        }
    }

    fn validate_monoid(&mut self, file: &Path) -> Result<i32, Failure> {
        let m = parse_monoid(&read(file)?)?;
        match self.format {
            Format::Json => self.print(&to_json(&json!({
                "valid": true,
                "elements": m.labels(),
                "nonzero": m.nonzero_count(),
            }))),
            Format::Text => self.print(&format!(
                "valid distance monoid with {} nonzero elements\n",
                m.nonzero_count()
            )),
        }
        Ok(0)
    }

    fn classify(&mut self, file: Option<&Path>, family: Option<&str>) -> Result<i32, Failure> {
        let monoid = match (file, family) {
            (Some(f), None) => Monoid::Finite(parse_monoid(&read(f)?)?),
            (None, Some(tag)) => Monoid::from_tag(tag)?,
            _ => return Err(input("give a monoid file or --family")),
        };
        let profile = classify(&monoid);
        let text = match self.format {
            Format::Json => to_json(&profile),
            Format::Text => profile.to_text(),
        };
        match &self.out {
            Some(out) => write_atomic(out, &text)?,
            None => self.print(&text),
        }
        Ok(0)
    }

    fn enumerate(&mut self, n: usize, with_census: bool, verify: &[String]) -> Result<i32, Failure> {
        let monoids = enumerate_monoids(n);
        let mut verdicts = serde_json::Map::new();
        let mut violated = None;
        for v in verify {
            let result = match v.as_str() {
                "unique" => verify_unique(n, &monoids).map(|r| json!(r)),
                "classsize" => verify_classsize(&monoids).map(|r| json!(r)),
                other => return Err(input(format!("unknown check `{other}` (expected unique, classsize)"))),
            };
            match result {
                Ok(r) => {
                    verdicts.insert(v.clone(), json!({ "holds": true, "report": r }));
                }
                Err(e) => {
                    verdicts.insert(v.clone(), json!({ "holds": false, "error": e.to_string() }));
                    violated = Some(e.to_string());
                }
            }
        }
        let census_data = with_census.then(|| census(n));
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir)?;
            for (i, m) in monoids.iter().enumerate() {
                write_atomic(&dir.join(format!("monoid-{n}-{i:03}.mon")), &format_monoid(m))?;
            }
            if let Some(c) = &census_data {
                write_atomic(&dir.join("census.csv"), &c.to_csv())?;
            }
            write_atomic(&dir.join("verdicts.json"), &to_json(&verdicts))?;
        }
        match self.format {
            Format::Json => {
                let mut obj = json!({ "n": n, "count": monoids.len(), "verdicts": verdicts });
                if let Some(c) = &census_data {
                    obj["census"] = json!(c);
                }
                self.print(&to_json(&obj));
            }
            Format::Text => {
                self.print(&format!("{} monoids with {n} nonzero elements\n", monoids.len()));
                if let Some(c) = &census_data {
                    self.print(&c.to_csv());
                }
                for (k, v) in &verdicts {
                    self.print(&format!("{k}: {}\n", if v["holds"] == json!(true) { "holds" } else { "VIOLATED" }));
                }
            }
        }
        match violated {
            Some(msg) => Err(Failure::Internal(msg)),
            None => Ok(0),
        }
    }

    fn space_validate(&mut self, file: &Path) -> Result<i32, Failure> {
        let (space, reference) = load_space(file)?;
        self.emit_space(&space, &reference, json!({ "valid": true, "points": space.len() }))?;
        Ok(0)
    }

    fn amalgamate(&mut self, a: &Path, b: &Path, common: &str) -> Result<i32, Failure> {
        let (sa, ra) = load_space(a)?;
        let (sb, _) = load_space(b)?;
        if sa.monoid() != sb.monoid() {
            return Err(input("spaces are over different monoids"));
        }
        let pairs = labels(common)
            .into_iter()
            .map(|p| {
                let (x, y) = p
                    .split_once('=')
                    .ok_or_else(|| input(format!("`{p}` is not of the form x=y")))?;
                Ok((sa.index_of(x)?, sb.index_of(y)?))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let amalgam = free_amalgam(&sa, &sb, &pairs)?;
        self.emit_space(&amalgam, &ra, json!({ "points": amalgam.len() }))?;
        Ok(0)
    }

    fn generate(&mut self, arg: &MonoidArg, k: usize, budget: usize, seed: u64) -> Result<i32, Failure> {
        let (monoid, reference) = monoid_from_arg(arg)?;
        match fraisse_grow(monoid, k, budget, seed) {
            Ok(space) => {
                let report = json!({ "extension_property": k, "points": space.len(), "seed": seed });
                self.emit_space(&space, &reference, report)?;
                Ok(0)
            }
            Err(GrowError::BudgetExceeded { partial, unrealized }) => {
                let report = json!({
                    "budget_exceeded": true,
                    "points": partial.len(),
                    "unrealized": unrealized,
                    "seed": seed,
                });
                self.emit_space(&partial, &reference, report)?;
                Ok(1)
            }
            Err(GrowError::Space(e)) => Err(input(e.to_string())),
        }
    }

    fn forking(&mut self, path: &Path, a: &str, b: &str, c: &str) -> Result<i32, Failure> {
        let (space, _) = load_space(path)?;
        if let Monoid::Family(f) = space.monoid() {
            if !f.has_max() {
                return Err(input("forking needs a monoid with a maximum"));
            }
        }
        let (a, b, c) = (
            space.indices_of(&labels(a))?,
            space.indices_of(&labels(b))?,
            space.indices_of(&labels(c))?,
        );
        let report = forks(&space, &a, &b, &c);
        match self.format {
            Format::Json => self.print(&to_json(&report)),
            Format::Text => {
                self.print(&format!("{}\n", if report.forks() { "forks" } else { "independent" }));
                self.print(&comment_lines(&json!(report.certificate)));
            }
        }
        Ok(if report.forks() { 1 } else { 0 })
    }

    fn cyclic(&mut self, file: &Path, n: usize) -> Result<i32, Failure> {
        if n == 0 {
            return Err(input("--n must be at least 1"));
        }
        let text = read(file)?;
        let reference = monoid_ref(&text)?;
        let monoid = resolve_monoid(&reference, file.parent())?;
        let spec = parse_diagonal_spec(&text, monoid)?;
        let result = cyclic_check(&spec, n);
        let m = &spec.monoid;
        let report = match &result {
            Cyclicity::Cyclic => json!({ "n": n, "cyclic": true }),
            Cyclicity::Violation { chain, wrap, path_sum } => json!({
                "n": n,
                "cyclic": false,
                "chain": chain.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "wrap": m.label(wrap),
                "path_sum": m.label(path_sum),
            }),
        };
        match self.format {
            Format::Json => self.print(&to_json(&report)),
            Format::Text => {
                self.print(&format!("{}-cyclic: {}\n", n, result.is_cyclic()));
                if !result.is_cyclic() {
                    self.print(&comment_lines(&report));
                }
            }
        }
        Ok(if result.is_cyclic() { 0 } else { 1 })
    }

    #[allow(clippy::too_many_arguments)]
    fn witness(
        &mut self,
        kind: WitnessKind,
        arg: &MonoidArg,
        r: &Option<String>,
        s: &Option<String>,
        k: usize,
        m: usize,
        chain: &str,
    ) -> Result<i32, Failure> {
        let (monoid, reference) = monoid_from_arg(arg)?;
        let ix = |space: &RMetricSpace<Monoid>, ls: &[&str]| space.indices_of(ls);
        match kind {
            WitnessKind::Op => {
                let r = value(&monoid, "r", r)?;
                let w = witness_order_property(monoid, &r, m)?;
                let holds = w.has_order_property;
                self.emit_space(&w.space, &reference, json!({ "order_property": holds }))?;
                Ok(if holds { 0 } else { 1 })
            }
            WitnessKind::Nonsimple4 | WitnessKind::Nonsimple5 => {
                let (rv, sv) = (value(&monoid, "r", r)?, value(&monoid, "s", s)?);
                let variant = if kind == WitnessKind::Nonsimple4 {
                    NonsimpleVariant::FourPoint
                } else {
                    NonsimpleVariant::FivePoint
                };
                let space = witness_nonsimple(monoid, &rv, &sv, variant)?;
                let (report, holds) = match variant {
                    NonsimpleVariant::FourPoint => {
                        let fwd = forks(&space, &ix(&space, &["a"])?, &ix(&space, &["b1", "b2"])?, &ix(&space, &["c"])?);
                        let bwd = forks(&space, &ix(&space, &["b1", "b2"])?, &ix(&space, &["a"])?, &ix(&space, &["c"])?);
                        (
                            json!({ "a_over_c_with_b1b2": fwd.verdict, "b1b2_over_c_with_a": bwd.verdict }),
                            fwd.forks() && !bwd.forks(),
                        )
                    }
                    NonsimpleVariant::FivePoint => {
                        let (a, b, c) = (ix(&space, &["a"])?, ix(&space, &["b1", "b2"])?, ix(&space, &["c1", "c2"])?);
                        let dm = rel_dmax(&space, &a, &b, &c);
                        let f = forks(&space, &a, &b, &c);
                        (json!({ "rel_dmax": dm, "forking": f.verdict }), dm && f.forks())
                    }
                };
                self.emit_space(&space, &reference, report)?;
                Ok(if holds { 0 } else { 1 })
            }
            WitnessKind::Tp2 => {
                let (rv, sv) = (value(&monoid, "r", r)?, value(&monoid, "s", s)?);
                let w = witness_tp2(monoid, &rv, &sv, k)?;
                let report = w.check();
                self.emit_space(&w.space, &reference, json!(report))?;
                Ok(if report.holds() { 0 } else { 1 })
            }
            WitnessKind::Soseq => {
                let chain = labels(chain)
                    .into_iter()
                    .map(|raw| {
                        monoid
                            .parse_value(raw)
                            .ok_or_else(|| input(format!("`{raw}` is not a distance in {}", monoid.describe())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let so = build_so_sequence(monoid.clone(), &chain, m)?;
                let np = check_np_bound(&so.sequence)?;
                if !np.cyclic {
                    return Err(Failure::Internal(format!(
                        "sequence with {} non-parameter coordinates is not {}-cyclic",
                        np.np_count,
                        np.np_count + 1
                    )));
                }
                let report = json!({
                    "diagonal": so.diagonal.iter().map(|v| monoid.label(v)).collect::<Vec<_>>(),
                    "transitive": diag_transitive(&monoid, &so.diagonal),
                    "np_count": np.np_count,
                    "cyclic_at_np_plus_one": np.cyclic,
                });
                self.emit_space(&so.sequence.space, &reference, report)?;
                Ok(0)
            }
        }
    }
}

/// A JSON object as `# key: value` lines.
fn comment_lines(v: &serde_json::Value) -> String {
    match v.as_object() {
        Some(obj) => obj
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("# {k}: {s}\n"),
                other => format!("# {k}: {other}\n"),
            })
            .collect(),
        None => format!("# {v}\n"),
    }
}
