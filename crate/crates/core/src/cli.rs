//! Command-line driver. Every command serializes library results directly.
//!
//! Exit statuses: 0 success, 1 mathematical failure, 2 input error, 3 node budget
//! exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construction::{
    check_theorem_conditions, decompose_bracket, induce_bracket, Action, ConditionReport,
    ConstructionError,
};
use crate::group::{
    subgroup_generated, verify_group, Elem, GroupRef, Subgroup, DEFAULT_ORDER_BOUND,
};
use crate::io::{
    bracket_table_from_json, bracket_to_json, brackets_result_to_json, construction_from_json,
    construction_to_json, parse_preset, read_file, resolve_group, to_canonical_json, write_file,
    GroupDoc, IoError,
};
use crate::mla::{commutator_bracket, trivial_bracket, verify_mla, Equivalence, LieBracket};
use crate::scenarios;
use crate::search::{enumerate_brackets, SearchConfig, SearchError, DEFAULT_NODE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mla-forge",
    version,
    about = "Multiplicative Lie algebra structures on finite groups"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Cap on backtracking nodes.
    #[arg(long, global = true, env = "MLA_FORGE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a group, a bracket or construction data.
    Verify(VerifyArgs),
    /// Enumerate all brackets on a group.
    Enumerate(EnumerateArgs),
    /// Build the bracket induced by construction data.
    Induce(InduceArgs),
    /// Extract construction data from a bracket on a split extension.
    Decompose(DecomposeArgs),
    /// Run the built-in scenario catalog.
    Scenarios(ScenarioArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Group file or preset (Zn, Dn, Qm, S3, AxB, A:B:sigma=FILE).
    #[arg(long)]
    pub group: Option<String>,
    /// `trivial`, `commutator` or a bracket file.
    #[arg(long)]
    pub bracket: Option<String>,
    /// Construction data file.
    #[arg(long, alias = "data", conflicts_with_all = ["group", "bracket"])]
    pub construction: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub group: String,
    /// Report one representative per class.
    #[arg(long)]
    pub up_to_iso: bool,
    /// Required ideal: `H` (first factor of a product preset) or generating elements `1,2,...`.
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long, value_enum, default_value_t = EquivalenceArg::Isotopy)]
    pub equivalence: EquivalenceArg,
    #[arg(long, default_value_t = crate::search::DEFAULT_MAX_GROUP_ORDER)]
    pub max_order: usize,
    /// Write one bracket file per reported item into this directory.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquivalenceArg {
    Automorphism,
    Isotopy,
}

impl From<EquivalenceArg> for Equivalence {
    fn from(e: EquivalenceArg) -> Self {
        match e {
            EquivalenceArg::Automorphism => Equivalence::Automorphism,
            EquivalenceArg::Isotopy => Equivalence::Isotopy,
        }
    }
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    #[arg(long, alias = "data")]
    pub construction: PathBuf,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Split extension preset `AxB` or `A:B:sigma=FILE`, with `A` the abelian factor.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub bracket: PathBuf,
    /// The ideal to split off; only `H` (the first factor) is supported.
    #[arg(long, default_value = "H")]
    pub ideal: String,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Run only scenarios whose name starts with this.
    #[arg(long)]
    pub only: Option<String>,
    /// List scenarios without running them.
    #[arg(long)]
    pub list: bool,
}

/// An error with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }

    fn math(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::input(e)
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Construction(c) => c.into(),
            SearchError::Mla(_) | SearchError::Group(_) => Failure::math(e),
            _ => Failure::input(e),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Group(_) | ConstructionError::GroupMismatch(_) => Failure::input(e),
            _ => Failure::math(e),
        }
    }
}

struct Out<'a> {
    format: Format,
    stdout: &'a mut dyn Write,
}

impl Out<'_> {
    /// Writes `json` in JSON mode and `text` otherwise.
    fn emit(&mut self, json: &str, text: &str) {
        let s = match self.format {
            Format::Json => json,
            Format::Text => text,
        };
        let _ = writeln!(self.stdout, "{}", s.trim_end());
    }
}

/// Parses `args` and runs the command; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut out = Out {
        format: cli.format,
        stdout,
    };
    let config = SearchConfig {
        worker_count: cli.jobs,
        node_budget: cli.node_budget,
        ..SearchConfig::default()
    };
    let result = match &cli.command {
        Command::Verify(a) => verify(a, &mut out),
        Command::Enumerate(a) => enumerate(a, &config, &mut out),
        Command::Induce(a) => induce(a, &mut out),
        Command::Decompose(a) => decompose(a, &mut out),
        Command::Scenarios(a) => run_scenarios(a, &config, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn cwd() -> &'static Path {
    Path::new(".")
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

#[derive(Serialize)]
struct Violations<T: Serialize> {
    violations: Vec<T>,
}

fn verify(a: &VerifyArgs, out: &mut Out) -> Result<i32, Failure> {
    if let Some(path) = &a.construction {
        let data = construction_from_json(&read_file(path)?, &base_of(path))?;
        let report = check_theorem_conditions(&data);
        out.emit(&to_canonical_json(&report), &report.to_string());
        return Ok(status(report.all_pass()));
    }
    match (&a.group, &a.bracket) {
        (None, None) => Err(Failure::input(
            "nothing to verify: pass --group, --bracket or --construction",
        )),
        (Some(g), None) => verify_group_input(g, out),
        (group, Some(b)) => {
            let (g, rows) = load_bracket_table(group.as_deref(), b)?;
            let violations = verify_mla(&g, &rows).map_err(Failure::input)?;
            let text = if violations.is_empty() {
                format!("bracket on {} satisfies A1-A5", g.name())
            } else {
                violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let ok = violations.is_empty();
            out.emit(&to_canonical_json(&Violations { violations }), &text);
            Ok(status(ok))
        }
    }
}

fn verify_group_input(spec: &str, out: &mut Out) -> Result<i32, Failure> {
    let path = Path::new(spec);
    let violations: Vec<String> = if path.is_file() {
        let doc: GroupDoc = serde_json::from_str(&read_file(path)?).map_err(Failure::input)?;
        verify_group(&doc.cayley, doc.generators.as_deref())
            .iter()
            .map(|v| v.to_string())
            .collect()
    } else {
        let g = parse_preset(spec, cwd())?;
        verify_group(&g.cayley_rows(), g.declared_generators())
            .iter()
            .map(|v| v.to_string())
            .collect()
    };
    let text = if violations.is_empty() {
        "valid group".to_string()
    } else {
        violations.join("\n")
    };
    let ok = violations.is_empty();
    out.emit(&to_canonical_json(&Violations { violations }), &text);
    Ok(status(ok))
}

fn load_group(spec: &str) -> Result<GroupRef, Failure> {
    Ok(resolve_group(spec, cwd())?)
}

/// The group and table named by `--group` / `--bracket`.
fn load_bracket_table(
    group: Option<&str>,
    bracket: &str,
) -> Result<(GroupRef, Vec<Vec<Elem>>), Failure> {
    match bracket {
        "trivial" | "commutator" => {
            let g = load_group(group.ok_or_else(|| Failure::input("--group is required"))?)?;
            let b = if bracket == "trivial" {
                trivial_bracket(&g)
            } else {
                commutator_bracket(&g)
            };
            Ok((g, b.rows()))
        }
        file => {
            let path = Path::new(file);
            let (g, rows) = bracket_table_from_json(&read_file(path)?, &base_of(path))?;
            if let Some(spec) = group {
                if !load_group(spec)?.same_table(&g) {
                    return Err(Failure::input(format!("bracket file is not on {spec}")));
                }
            }
            Ok((g, rows))
        }
    }
}

/// `(H, K, σ)` from `AxB` or `A:B:sigma=FILE`.
fn split_extension(spec: &str) -> Result<Action, Failure> {
    let (h, k, sigma_file) = if let Some((h, rest)) = spec.split_once(':') {
        let (k, file) = rest
            .split_once(":sigma=")
            .ok_or_else(|| Failure::input(format!("bad preset {spec}")))?;
        (h, k, Some(file))
    } else {
        spec.rsplit_once('x')
            .map(|(h, k)| (h, k, None))
            .ok_or_else(|| {
                Failure::input(format!(
                    "{spec} is not a product preset AxB or A:B:sigma=FILE"
                ))
            })?
    };
    let h: GroupRef = Arc::new(parse_preset(h, cwd())?);
    let k: GroupRef = Arc::new(parse_preset(k, cwd())?);
    match sigma_file {
        None => Ok(Action::trivial(&h, &k)),
        Some(f) => {
            let tables: Vec<Vec<Elem>> =
                serde_json::from_str(&read_file(Path::new(f))?).map_err(Failure::input)?;
            Action::new(h, k, tables).map_err(Failure::input)
        }
    }
}

fn parse_ideal(spec: &str, group_spec: &str, g: &GroupRef) -> Result<Subgroup, Failure> {
    if spec == "H" {
        let sigma = split_extension(group_spec)?;
        let members: Vec<Elem> = (0..sigma.h().order()).collect();
        return Ok(subgroup_generated(g, &members));
    }
    let gens: Vec<Elem> = spec
        .split(',')
        .map(|s| s.trim().parse::<Elem>().map_err(Failure::input))
        .collect::<Result<_, _>>()?;
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Failure::input(format!("element {bad} outside the group")));
    }
    Ok(subgroup_generated(g, &gens))
}

fn enumerate(a: &EnumerateArgs, base: &SearchConfig, out: &mut Out) -> Result<i32, Failure> {
    let g = load_group(&a.group)?;
    let require_ideal = a
        .ideal
        .as_deref()
        .map(|s| parse_ideal(s, &a.group, &g))
        .transpose()?;
    let config = SearchConfig {
        max_group_order: a.max_order,
        require_ideal,
        up_to_iso: a.up_to_iso,
        equivalence: a.equivalence.into(),
        automorphism_bound: DEFAULT_ORDER_BOUND,
        ..base.clone()
    };
    let r = enumerate_brackets(&g, &config)?;
    if let Some(dir) = &a.emit {
        std::fs::create_dir_all(dir).map_err(Failure::input)?;
        for (i, b) in r.items.iter().enumerate() {
            write_file(
                &dir.join(format!("bracket_{i:03}.json")),
                &bracket_to_json(b),
            )?;
        }
    }
    let mut text = format!(
        "group {} (order {})\nraw_count {}\nclass_count {}\nexhausted {}\n",
        g.name(),
        g.order(),
        r.raw_count,
        r.class_count,
        r.exhausted
    );
    let heading = if a.up_to_iso {
        "representatives"
    } else {
        "brackets"
    };
    text.push_str(&format!("{heading}:\n"));
    for (i, b) in r.items.iter().enumerate() {
        text.push_str(&format!("  [{i}] {}\n", describe_on_generators(b)));
    }
    out.emit(&brackets_result_to_json(&r), &text);
    Ok(if r.exhausted { EXIT_OK } else { EXIT_BUDGET })
}

/// `g ⋆ h = v` for ordered pairs of distinct generators.
fn describe_on_generators(b: &LieBracket) -> String {
    let gens = b.group().generators();
    let mut parts = Vec::new();
    for &x in gens {
        for &y in gens {
            if x != y {
                parts.push(format!("{x}*{y}={}", b.star(x, y)));
            }
        }
    }
    if parts.is_empty() {
        "trivial".into()
    } else {
        parts.join(" ")
    }
}

fn induce(a: &InduceArgs, out: &mut Out) -> Result<i32, Failure> {
    let data = construction_from_json(&read_file(&a.construction)?, &base_of(&a.construction))?;
    match induce_bracket(&data) {
        Ok(b) => {
            let json = bracket_to_json(&b);
            match &a.out {
                Some(path) => {
                    write_file(path, &json)?;
                    out.emit(&json, &format!("wrote {}", path.display()));
                }
                None => out.emit(&json, &json),
            }
            Ok(EXIT_OK)
        }
        Err(ConstructionError::ConditionsViolated(report)) => {
            report_conditions(&report, out);
            Ok(EXIT_FAILURE)
        }
        Err(e) => Err(e.into()),
    }
}

fn report_conditions(report: &ConditionReport, out: &mut Out) {
    out.emit(
        &to_canonical_json(report),
        &format!("conditions violated:\n{report}"),
    );
}

fn decompose(a: &DecomposeArgs, out: &mut Out) -> Result<i32, Failure> {
    if a.ideal != "H" {
        return Err(Failure::input("only --ideal H is supported"));
    }
    let sigma = split_extension(&a.group)?;
    let (g, rows) = load_bracket_table(None, &a.bracket.to_string_lossy())?;
    let bracket = LieBracket::new(g, &rows).map_err(Failure::math)?;
    let data = decompose_bracket(&sigma, &bracket)?;
    let json = construction_to_json(&data);
    let text = {
        let k = data.k();
        let mut s = String::from("Gamma on generators of K:\n");
        for &x in k.generators() {
            s.push_str(&format!("  Gamma_{x} = {:?}\n", data.gamma().table(x)));
        }
        s.push_str(&format!(
            "beta (pairing map h(x,y)) trivial: {}\nbracket on K trivial: {}\n",
            data.beta().is_trivial(),
            data.star_k().is_trivial()
        ));
        s
    };
    match &a.out {
        Some(path) => {
            write_file(path, &json)?;
            out.emit(&json, &format!("{text}wrote {}", path.display()));
        }
        None => out.emit(&json, &format!("{text}{json}")),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ScenarioListing {
    name: &'static str,
    description: &'static str,
}

fn run_scenarios(a: &ScenarioArgs, config: &SearchConfig, out: &mut Out) -> Result<i32, Failure> {
    let selected = scenarios::select(a.only.as_deref());
    if selected.is_empty() {
        return Err(Failure::input(format!("no scenario matches {:?}", a.only)));
    }
    if a.list {
        let listing: Vec<ScenarioListing> = selected
            .iter()
            .map(|s| ScenarioListing {
                name: s.name,
                description: s.description,
            })
            .collect();
        let text: String = listing
            .iter()
            .map(|s| format!("{:<20} {}\n", s.name, s.description))
            .collect();
        out.emit(&to_canonical_json(&listing), &text);
        return Ok(EXIT_OK);
    }
    let outcomes: Vec<_> = selected.iter().map(|s| s.run(config)).collect();
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&format!(
            "{} {}\n",
            if o.pass() { "PASS" } else { "FAIL" },
            o.name
        ));
        if let Some(e) = &o.error {
            text.push_str(&format!("    error: {e}\n"));
        }
        for c in &o.checks {
            let mark = if c.pass { "ok" } else { "MISMATCH" };
            text.push_str(&format!(
                "    {mark:<8} {}: expected {}, actual {}\n",
                c.label, c.expected, c.actual
            ));
        }
    }
    let ok = outcomes.iter().all(|o| o.pass());
    out.emit(&to_canonical_json(&outcomes), &text);
    Ok(status(ok))
}
