//! The `orbk` command-line front end.
//!
//! [`run`] parses arguments, evaluates one subcommand and writes JSON (or a
//! markdown rendering of it) to `out`. Exit codes: 0 success, 1 a golden
//! check failed, 2 malformed input, 3 a mathematical domain error.

pub mod fixtures;
mod render;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbikit::exactnum::{format_rational, set_max_conductor, DEFAULT_MAX_CONDUCTOR};
use orbikit::hatk_point::{is_real, torus_equal, torus_trace, TorusClassFunction};
use orbikit::json as js;
use orbikit::localize::{localize_module, separating_witness, survives, SectorModule};
use orbikit::mtorus::{approximate_values, mapping_torus_class};
use orbikit::wproj::{mv_generators, CohomologyRules, EquivLineBundle};
use orbikit::{Error, FiniteAbelianGroup};

pub use fixtures::{reproduce, Fixture, FixtureOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "orbk", version, about = "Exact invariants of differential K-theory for finite abelian orbifolds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Allow floating-point input and print labelled approximations.
    #[arg(long, global = true)]
    approx: bool,
    /// JSON file with defaults for the global options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest conductor allowed in cyclotomic arithmetic (also ORBK_MAX_CONDUCTOR).
    #[arg(long, global = true)]
    max_conductor: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GroupOpt {
    /// Cyclic factor orders, e.g. `2,4`; optional when the input names its group.
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<u64>>,
}

impl GroupOpt {
    fn group(&self) -> CliResult<Option<FiniteAbelianGroup>> {
        self.orders.clone().map(FiniteAbelianGroup::new).transpose().map_err(Into::into)
    }

    fn required(&self) -> CliResult<FiniteAbelianGroup> {
        self.group()?.ok_or_else(|| CliError::Input("--orders is required".into()))
    }
}

#[derive(Args, Debug, Clone)]
struct BundleOpt {
    #[arg(long)]
    k: u64,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, allow_hyphen_values = true)]
    h: i64,
}

impl BundleOpt {
    fn bundle(&self) -> CliResult<EquivLineBundle> {
        Ok(EquivLineBundle::new(self.k, self.l, self.h)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tr_G of a virtual character (an integer) or of a class function.
    Trace {
        #[command(flatten)]
        group: GroupOpt,
        #[arg(long, allow_hyphen_values = true)]
        rep: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        classfun: Option<String>,
    },
    /// The integer pairing Tr_G(x ⊗ y).
    Pairing {
        #[command(flatten)]
        group: GroupOpt,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Chern character of a virtual character, or character coefficients of a class function.
    Ch {
        #[command(flatten)]
        group: GroupOpt,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        classfun: Option<String>,
    },
    /// Induction from a subgroup.
    Induce {
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        rep: String,
    },
    /// Restriction to a subgroup.
    Restrict {
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        rep: String,
    },
    /// Invariants under a subgroup, as a virtual character of the quotient.
    Invariants {
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        rep: String,
    },
    /// Average of a class function over a subgroup, as a class function of the quotient.
    Average {
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        classfun: String,
    },
    /// A point of K̂⁰ (from --rep) or K̂¹ (from --classfun) of [*/G].
    HatkPoint {
        #[command(flatten)]
        group: GroupOpt,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        classfun: Option<String>,
        /// Another class function to compare with modulo characters.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Whether the sector at h survives localization at g, with a witness if not.
    Localize {
        #[command(flatten)]
        group: GroupOpt,
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
    },
    /// Line bundles on [CP¹/(Z/k)].
    Cp1 {
        #[command(subcommand)]
        command: Cp1Command,
    },
    /// Mapping torus class from holonomy data (`-` reads stdin).
    Mtorus {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check every stored golden value.
    ReproducePaper {
        /// Directory of fixture files; the built-in fixtures are used otherwise.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Cp1Command {
    /// H⁰ − H¹ and its dimension.
    Index(BundleOpt),
    /// Global sections as a virtual character of Z/k.
    H0(BundleOpt),
    /// First cohomology as a virtual character of Z/k.
    H1(BundleOpt),
    /// Intersection pairing on a list of bundles.
    PairingMatrix {
        #[arg(long)]
        k: u64,
        /// `default` or a JSON list of `[l, h]` pairs.
        #[arg(long, default_value = "default")]
        basis: String,
    },
    /// Determinant, Smith form and non-degeneracy of the pairing.
    Nondeg {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "default")]
        basis: String,
    },
}

/// Settings that affect evaluation but not parsing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Context {
    pub rules: CohomologyRules,
    pub approx: bool,
}

fn read_source(s: &str) -> CliResult<String> {
    match s.strip_prefix('@') {
        Some(path) => read_path(Path::new(path)),
        None => Ok(s.to_string()),
    }
}

fn read_path(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn json_arg(s: &str) -> CliResult<Value> {
    Ok(js::parse_str(&read_source(s)?)?)
}

fn coords_arg(s: &str) -> CliResult<Vec<i64>> {
    Ok(js::parse_key(s)?)
}

fn exactly_one<'a>(a: &'a Option<String>, b: &'a Option<String>, names: &str) -> CliResult<(Option<&'a str>, Option<&'a str>)> {
    match (a, b) {
        (Some(_), Some(_)) | (None, None) => Err(CliError::Input(format!("give exactly one of {names}"))),
        _ => Ok((a.as_deref(), b.as_deref())),
    }
}

fn bundle_json(b: &EquivLineBundle) -> Value {
    json!({ "k": b.k(), "l": b.l(), "h": b.h() })
}

fn parse_basis(k: u64, s: &str) -> CliResult<Vec<EquivLineBundle>> {
    if s == "default" {
        return Ok(mv_generators(k)?);
    }
    let v = json_arg(s)?;
    let items = v.as_array().ok_or_else(|| CliError::Input("basis must be a JSON array of [l, h] pairs".into()))?;
    items
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([l, h]) => match (l.as_i64(), h.as_i64()) {
                (Some(l), Some(h)) => Ok(EquivLineBundle::new(k, l, h)?),
                _ => Err(CliError::Input(format!("bad basis entry {p}"))),
            },
            _ => Err(CliError::Input(format!("bad basis entry {p}"))),
        })
        .collect()
}

fn cp1(cmd: &Cp1Command, ctx: &Context) -> CliResult<Value> {
    let rules = &ctx.rules;
    Ok(match cmd {
        Cp1Command::Index(b) => {
            let b = b.bundle()?;
            let x = rules.index(&b);
            json!({
                "bundle": bundle_json(&b),
                "h0": js::rep_to_json(&rules.h0(&b)),
                "h1": js::rep_to_json(&rules.h1(&b)),
                "index": js::rep_to_json(&x),
                "dimension": x.dim(),
            })
        }
        Cp1Command::H0(b) => {
            let b = b.bundle()?;
            json!({ "bundle": bundle_json(&b), "h0": js::rep_to_json(&rules.h0(&b)) })
        }
        Cp1Command::H1(b) => {
            let b = b.bundle()?;
            json!({ "bundle": bundle_json(&b), "h1": js::rep_to_json(&rules.h1(&b)) })
        }
        Cp1Command::PairingMatrix { k, basis } => {
            let basis = parse_basis(*k, basis)?;
            let m = rules.pairing_matrix(&basis)?;
            json!({
                "k": k,
                "basis": basis.iter().map(|b| json!([b.l(), b.h()])).collect::<Vec<_>>(),
                "matrix": js::matrix_to_json(&m),
                "det": m.det()?,
            })
        }
        Cp1Command::Nondeg { k, basis } => {
            let basis = parse_basis(*k, basis)?;
            let m = rules.pairing_matrix(&basis)?;
            let det = m.det()?;
            let smith = m.smith_normal_form();
            let unimodular = det.abs() == 1;
            let obstructions: Vec<i64> = smith.diagonal().into_iter().filter(|&d| d != 1).collect();
            json!({
                "k": k,
                "basis": basis.iter().map(|b| json!([b.l(), b.h()])).collect::<Vec<_>>(),
                "matrix": js::matrix_to_json(&m),
                "det": det,
                "snf": js::matrix_to_json(&smith.d),
                "unimodular": unimodular,
                "invariant_factors": obstructions,
            })
        }
    })
}

fn torus_report(u: &TorusClassFunction) -> Value {
    json!({
        "representative": js::torus_classfun_to_json(u),
        "coefficients_mod_z": js::torus_coefficients_to_json(u),
        "trace": js::cyclotomic_to_json(torus_trace(u).representative()),
        "real": is_real(u),
    })
}

/// Evaluates one parsed command.
fn execute(cmd: &Command, ctx: &Context) -> CliResult<Value> {
    Ok(match cmd {
        Command::Trace { group, rep, classfun } => {
            let g = group.group()?;
            match exactly_one(rep, classfun, "--rep, --classfun")? {
                (Some(r), _) => json!(js::parse_rep(&json_arg(r)?, g.as_ref())?.trace()),
                (_, Some(f)) => js::cyclotomic_to_json(&js::parse_classfun(&json_arg(f)?, g.as_ref())?.trace()),
                _ => unreachable!(),
            }
        }
        Command::Pairing { group, left, right } => {
            let g = group.group()?;
            let x = js::parse_rep(&json_arg(left)?, g.as_ref())?;
            let y = js::parse_rep(&json_arg(right)?, g.as_ref())?;
            json!(x.pairing(&y)?)
        }
        Command::Ch { group, rep, classfun } => {
            let g = group.group()?;
            match exactly_one(rep, classfun, "--rep, --classfun")? {
                (Some(r), _) => js::classfun_to_json(&js::parse_rep(&json_arg(r)?, g.as_ref())?.ch()),
                (_, Some(f)) => {
                    let f = js::parse_classfun(&json_arg(f)?, g.as_ref())?;
                    let coeffs: serde_json::Map<String, Value> = f
                        .ch_inverse()
                        .iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (js::format_key(k), js::cyclotomic_to_json(c)))
                        .collect();
                    json!({ "group": js::group_to_json(f.group()), "coeffs": coeffs })
                }
                _ => unreachable!(),
            }
        }
        Command::Induce { subgroup, rep } => {
            let e = js::parse_subgroup(&json_arg(subgroup)?)?;
            js::rep_to_json(&e.induce(&js::parse_rep(&json_arg(rep)?, Some(e.domain()))?)?)
        }
        Command::Restrict { subgroup, rep } => {
            let e = js::parse_subgroup(&json_arg(subgroup)?)?;
            js::rep_to_json(&e.restrict(&js::parse_rep(&json_arg(rep)?, Some(e.ambient()))?)?)
        }
        Command::Invariants { subgroup, rep } => {
            let e = js::parse_subgroup(&json_arg(subgroup)?)?;
            js::rep_to_json(&e.invariants(&js::parse_rep(&json_arg(rep)?, Some(e.ambient()))?)?)
        }
        Command::Average { subgroup, classfun } => {
            let e = js::parse_subgroup(&json_arg(subgroup)?)?;
            js::classfun_to_json(&e.average(&js::parse_classfun(&json_arg(classfun)?, Some(e.ambient()))?)?)
        }
        Command::HatkPoint { group, rep, classfun, compare } => {
            let g = group.group()?;
            match exactly_one(rep, classfun, "--rep, --classfun")? {
                (Some(r), _) => {
                    let x = js::parse_rep(&json_arg(r)?, g.as_ref())?;
                    json!({ "degree": 0, "value": js::rep_to_json(&x), "trace": x.trace() })
                }
                (_, Some(f)) => {
                    let u = js::parse_torus_classfun(&json_arg(f)?, g.as_ref())?;
                    let mut out = torus_report(&u);
                    out["degree"] = json!(1);
                    if let Some(c) = compare {
                        let v = js::parse_torus_classfun(&json_arg(c)?, Some(u.group()))?;
                        out["equal"] = json!(torus_equal(&u, &v)?);
                    }
                    out
                }
                _ => unreachable!(),
            }
        }
        Command::Localize { group, h, g } => {
            let group = group.required()?;
            let h = group.element(&coords_arg(h)?)?;
            let g = group.element(&coords_arg(g)?)?;
            let witness = separating_witness(&h, &g)?;
            let sectors = localize_module(&SectorModule::full(&group, 1), &g)?;
            let surviving: Vec<String> = sectors.sectors().iter().map(|(x, _)| js::format_key(x.coords())).collect();
            json!({
                "survives": survives(&h, &g)?,
                "witness": witness.as_ref().map(js::rep_to_json),
                "witness_values": witness.as_ref().map(|w| js::classfun_to_json(&w.ch())),
                "surviving_sectors": surviving,
            })
        }
        Command::Cp1 { command } => cp1(command, ctx)?,
        Command::Mtorus { input } => {
            let d = js::parse_holonomy(&js::parse_str(&read_path(input)?)?)?;
            if ctx.approx {
                let values: serde_json::Map<String, Value> = approximate_values(&d)
                    .iter()
                    .enumerate()
                    .map(|(i, z)| (js::format_key(&d.group().coords_of(i)), json!([z.re, z.im])))
                    .collect();
                json!({ "inexact": true, "group": js::group_to_json(d.group()), "values": values })
            } else {
                let c = mapping_torus_class(&d)?;
                let mut out = torus_report(c.class());
                out["phi"] = js::classfun_to_json(c.phi());
                out["periods"] = c
                    .periods()
                    .iter()
                    .map(|(g, t)| json!([js::format_key(&d.group().coords_of(*g)), format_rational(t)]))
                    .collect();
                out
            }
        }
        Command::ReproducePaper { .. } => unreachable!("handled by run"),
    })
}

#[derive(Debug, Default)]
struct Config {
    format: Option<Format>,
    approx: Option<bool>,
    max_conductor: Option<u64>,
}

fn load_config(path: &Path) -> CliResult<Config> {
    let v = js::parse_str(&read_path(path)?)?;
    let obj = v.as_object().ok_or_else(|| CliError::Input("config must be a JSON object".into()))?;
    let mut c = Config::default();
    for (key, val) in obj {
        let bad = || CliError::Input(format!("bad value for config key {key:?}: {val}"));
        match key.as_str() {
            "format" => {
                c.format = Some(match val.as_str() {
                    Some("json") => Format::Json,
                    Some("table") => Format::Table,
                    _ => return Err(bad()),
                })
            }
            "approx" => c.approx = Some(val.as_bool().ok_or_else(bad)?),
            "max_conductor" | "max-conductor" => c.max_conductor = Some(val.as_u64().ok_or_else(bad)?),
            _ => return Err(CliError::Input(format!("unknown config key {key:?}"))),
        }
    }
    Ok(c)
}

fn max_conductor_from_env() -> CliResult<Option<u64>> {
    match std::env::var("ORBK_MAX_CONDUCTOR") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("ORBK_MAX_CONDUCTOR must be a positive integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn write_value(out: &mut dyn Write, v: &Value, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Table => write!(out, "{}", render::markdown(v)),
    }
}

/// Parses one command line (including the program name) and evaluates it
/// under `ctx`, returning its JSON
/// output. Used by the golden driver so that fixtures exercise the same code
/// path as the binary.
pub fn evaluate<I, T>(args: I, ctx: &Context) -> std::result::Result<Value, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    if matches!(cli.command, Command::ReproducePaper { .. }) {
        return Err("fixtures cannot run reproduce-paper".into());
    }
    execute(&cli.command, &Context { approx: cli.approx || ctx.approx, ..*ctx }).map_err(|e| e.to_string())
}

/// Runs `orbk` with the given arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run_cli(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "orbk: {e}");
            e.code()
        }
    }
}

fn run_cli(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let config = match &cli.config {
        Some(p) => load_config(p)?,
        None => Config::default(),
    };
    let format = cli.format.or(config.format).unwrap_or_default();
    let approx = cli.approx || config.approx.unwrap_or(false);
    let max_conductor = match cli.max_conductor {
        Some(n) => Some(n),
        None => max_conductor_from_env()?.or(config.max_conductor),
    }
    .unwrap_or(DEFAULT_MAX_CONDUCTOR);
    if max_conductor == 0 {
        return Err(CliError::Input("the conductor cap must be positive".into()));
    }
    set_max_conductor(max_conductor);
    let ctx = Context { approx, ..Context::default() };

    let io = |e: std::io::Error| CliError::Input(format!("writing output: {e}"));
    if let Command::ReproducePaper { fixtures } = &cli.command {
        let list = match fixtures {
            Some(dir) => fixtures::load_dir(dir)?,
            None => fixtures::builtin(),
        };
        let outcomes = reproduce(&list, &ctx);
        let failed = outcomes.iter().filter(|o| !o.pass).count();
        let report = fixtures::report(&outcomes);
        write_value(out, &report, format).map_err(io)?;
        return Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED });
    }
    let v = execute(&cli.command, &ctx)?;
    write_value(out, &v, format).map_err(io)?;
    Ok(EXIT_OK)
}
