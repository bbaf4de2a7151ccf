use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hecke_kit::coxeter::{symmetric_group, CoxeterSystem, GenSet, GroupSpec, Side, DEFAULT_CAP};
use hecke_kit::exec::Exec;
use hecke_kit::hecke::checks::check_theta_braid;
use hecke_kit::mackey::{corollary_type_a, verify_mackey};
use hecke_kit::repmod::HeckeModule;
use hecke_kit::report::VerificationReport;
use hecke_kit::scalars::{ParamSpec, Rat};
use hecke_kit::suite::{algebra_report, run_suite, DEFAULT_SEED};
use hecke_kit::twists::{verify_anti_twists, verify_outer_twists, BranchStats};
use hecke_kit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hecke-kit",
    version,
    about = "Coxeter groups, Hecke algebras and verified module isomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest group the coset enumeration may produce.
    #[arg(long, global = true, env = "HECKE_KIT_CAP", default_value_t = DEFAULT_CAP)]
    group_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the JSON report here as well.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run independent checks one after another instead of on the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, longest element, coset representatives and double cosets.
    Describe(SceneArgs),
    /// Run one family of checks over the parameter battery.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        scene: SceneArgs,
    },
    /// Run the full battery and write report.json.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CheckKind {
    Mackey,
    Corollary,
    #[value(name = "thm44", alias = "outer-twists")]
    #[serde(rename = "thm44")]
    OuterTwists,
    #[value(name = "thm48", alias = "anti-twists")]
    #[serde(rename = "thm48")]
    AntiTwists,
    ThetaBraid,
    Algebra,
}

/// Scene fields, from flags or a JSON scene file; flags win.
#[derive(Args, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SceneArgs {
    /// JSON file with any of the fields below.
    #[arg(long)]
    #[serde(skip)]
    scene: Option<PathBuf>,
    /// Named type (A3, B3, I2(5), ...) or a Coxeter matrix as JSON.
    #[arg(long)]
    group: Option<String>,
    /// Generator labels, 1-based and comma separated.
    #[arg(long = "I")]
    #[serde(rename = "I")]
    i: Option<String>,
    #[arg(long = "J")]
    #[serde(rename = "J")]
    j: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// `a,b`; repeatable. Defaults to the four-point battery.
    #[arg(long)]
    params: Vec<String>,
    /// regular, small, companion, scalar:λ, conjugate:SEED, or a module JSON file.
    #[arg(long)]
    module: Option<String>,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m_module: Option<String>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n_module: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

impl SceneArgs {
    fn resolve(mut self) -> Result<SceneArgs> {
        let Some(path) = self.scene.take() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let file: SceneArgs =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(SceneArgs {
            scene: None,
            group: self.group.or(file.group),
            i: self.i.or(file.i),
            j: self.j.or(file.j),
            m: self.m.or(file.m),
            n: self.n.or(file.n),
            k: self.k.or(file.k),
            params: if self.params.is_empty() {
                file.params
            } else {
                self.params
            },
            module: self.module.or(file.module),
            m_module: self.m_module.or(file.m_module),
            n_module: self.n_module.or(file.n_module),
            seed: self.seed.or(file.seed),
        })
    }

    fn system(&self, cap: usize) -> Result<Arc<CoxeterSystem>> {
        let spec: GroupSpec = self
            .group
            .as_deref()
            .ok_or_else(|| Error::Invalid("--group is required".into()))?
            .parse()?;
        Ok(Arc::new(CoxeterSystem::from_spec(&spec, cap)?))
    }

    fn params(&self) -> Result<Vec<ParamSpec>> {
        if self.params.is_empty() {
            return Ok(ParamSpec::battery());
        }
        self.params.iter().map(|p| p.parse()).collect()
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn size(&self, name: &str, v: Option<usize>) -> Result<usize> {
        match v {
            Some(x) if x >= 1 => Ok(x),
            Some(_) => Err(Error::Invalid(format!("--{name} must be at least 1"))),
            None => Err(Error::Invalid(format!("--{name} is required"))),
        }
    }
}

fn parse_subset(sys: &CoxeterSystem, text: Option<&str>) -> Result<GenSet> {
    let Some(text) = text else {
        return Ok(GenSet::empty());
    };
    let mut labels = Vec::new();
    for (pos, part) in text.split(',').map(str::trim).filter(|p| !p.is_empty()).enumerate() {
        let part = part.trim_start_matches('s');
        let l: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("generator list `{text}`, item {}: `{part}`", pos + 1)))?;
        if l == 0 {
            return Err(Error::Parse(format!("generator list `{text}`: labels are 1-based")));
        }
        labels.push(l);
    }
    let set = GenSet::from_labels(&labels);
    sys.check_subset(set)?;
    Ok(set)
}

/// A module over `H_subset` from a constructor spec, or loaded from a file.
/// File modules carry their own parameters, which replace `params`.
fn build_module(
    spec: &str,
    sys: &Arc<CoxeterSystem>,
    subset: GenSet,
    params: &ParamSpec,
    seed: u64,
    cap: usize,
) -> Result<HeckeModule> {
    let (head, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match head {
        "regular" => HeckeModule::regular(sys, subset, params),
        "small" => HeckeModule::small(sys, subset, params),
        "companion" => HeckeModule::companion(sys, subset, params),
        "scalar" => {
            let lambda: Rat = arg.parse().map_err(|_| Error::Parse(format!("scalar value `{arg}`")))?;
            HeckeModule::scalar(sys, subset, params, &lambda)
        }
        "conjugate" => {
            let s = if arg.is_empty() {
                seed
            } else {
                arg.parse().map_err(|_| Error::Parse(format!("seed `{arg}`")))?
            };
            HeckeModule::regular(sys, subset, params)?.random_conjugate(s)
        }
        _ => {
            let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("module `{spec}`: {e}")))?;
            let m = HeckeModule::from_json(&text, cap)?;
            if m.system().matrix() != sys.matrix() {
                return Err(Error::SystemMismatch);
            }
            if m.subset() != subset {
                return Err(Error::Invalid(format!(
                    "module file is over {}, expected {subset}",
                    m.subset()
                )));
            }
            let ids: BTreeMap<usize, usize> = subset.iter().map(|s| (s, s)).collect();
            m.relabel(sys, &ids)
        }
    }
}

fn is_file_spec(spec: &str) -> bool {
    let head = spec.split_once(':').map_or(spec, |(h, _)| h);
    !matches!(head, "regular" | "small" | "companion" | "scalar" | "conjugate")
}

/// The parameter points to run at: file modules pin their own.
fn run_params(scene: &SceneArgs, specs: &[&str], cap: usize) -> Result<Vec<ParamSpec>> {
    for spec in specs {
        if is_file_spec(spec) {
            let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("module `{spec}`: {e}")))?;
            return Ok(vec![HeckeModule::from_json(&text, cap)?.params().clone()]);
        }
    }
    scene.params()
}

#[derive(Serialize)]
struct CheckOutput {
    command: CheckKind,
    seed: u64,
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    extra: Value,
    passed: bool,
}

impl CheckOutput {
    fn text(&self) -> String {
        let mut out: String = self.reports.iter().map(|r| r.to_text()).collect();
        if !self.extra.is_null() {
            out.push_str(&format!("{}\n", self.extra));
        }
        out.push_str(if self.passed { "PASS\n" } else { "FAIL\n" });
        out
    }
}

fn full_module(n: usize, spec: &str, p: &ParamSpec, seed: u64, cap: usize) -> Result<HeckeModule> {
    let sys = symmetric_group(n);
    build_module(spec, &sys, sys.all_gens(), p, seed, cap)
}

fn run_check(what: CheckKind, scene: SceneArgs, cap: usize, exec: Exec) -> Result<CheckOutput> {
    let seed = scene.seed();
    let mut extra = Value::Null;
    let reports: Vec<VerificationReport> = match what {
        CheckKind::Mackey => {
            let sys = scene.system(cap)?;
            let i = parse_subset(&sys, scene.i.as_deref())?;
            let j = parse_subset(&sys, scene.j.as_deref())?;
            let spec = scene.module.as_deref().unwrap_or("regular");
            let params = run_params(&scene, &[spec], cap)?;
            let modules = params
                .iter()
                .map(|p| build_module(spec, &sys, i, p, seed, cap))
                .collect::<Result<Vec<_>>>()?;
            exec.map(modules, |m| verify_mackey(&m, j))
        }
        CheckKind::Corollary | CheckKind::OuterTwists | CheckKind::AntiTwists => {
            let m = scene.size("m", scene.m)?;
            let n = scene.size("n", scene.n)?;
            let (ms, ns) = (
                scene.m_module.as_deref().unwrap_or("small"),
                scene.n_module.as_deref().unwrap_or("small"),
            );
            let k = if matches!(what, CheckKind::Corollary) {
                let k = scene.k.ok_or_else(|| Error::Invalid("--k is required".into()))?;
                if k > m + n {
                    return Err(Error::Invalid(format!("--k {k} exceeds m + n = {}", m + n)));
                }
                k
            } else {
                0
            };
            let params = run_params(&scene, &[ms, ns], cap)?;
            let pairs = params
                .iter()
                .map(|p| Ok((full_module(m, ms, p, seed, cap)?, full_module(n, ns, p, seed, cap)?)))
                .collect::<Result<Vec<_>>>()?;
            match what {
                CheckKind::Corollary => exec.map(pairs, |(a, b)| corollary_type_a(k, &a, &b)),
                CheckKind::OuterTwists => exec.map(pairs, |(a, b)| {
                    let mut ls = Vec::new();
                    if let Ok(boxed) = HeckeModule::boxtimes(&a, &b) {
                        ls.push(boxed.module);
                    }
                    if m + n == 3 {
                        let s3 = symmetric_group(3);
                        if let Ok(reg) = HeckeModule::regular(&s3, s3.all_gens(), a.params()) {
                            ls.push(reg);
                        }
                    }
                    verify_outer_twists(&a, &b, &ls)
                }),
                _ => {
                    let results = exec.map(pairs, |(a, b)| verify_anti_twists(&a, &b));
                    let mut total = BranchStats::default();
                    for (_, s) in &results {
                        total.merge(s);
                    }
                    extra = json!({ "branches": total });
                    results.into_iter().map(|(r, _)| r).collect()
                }
            }
        }
        CheckKind::ThetaBraid => {
            let sys = scene.system(cap)?;
            let mut rep = VerificationReport::new("theta-braid", json!({ "group": sys.label() }), None);
            for i in 0..sys.rank() {
                for j in i + 1..sys.rank() {
                    for row in check_theta_braid(&sys, i, j)? {
                        let mij = sys.matrix().entry(i, j);
                        rep.check(format!("s{} s{} (m = {mij}), n = {}", i + 1, j + 1, row.n), row.holds);
                    }
                }
            }
            vec![rep]
        }
        CheckKind::Algebra => {
            let sys = scene.system(cap)?;
            vec![algebra_report(&sys, seed, exec)]
        }
    };
    let passed = reports.iter().all(|r| r.passed);
    Ok(CheckOutput {
        command: what,
        seed,
        reports,
        extra,
        passed,
    })
}

fn describe(scene: SceneArgs, cap: usize) -> Result<(Value, String)> {
    let sys = scene.system(cap)?;
    let fmt_list = |xs: &[hecke_kit::coxeter::Elem]| xs.iter().map(|&w| sys.format_elem(w)).collect::<Vec<_>>();
    let longest = sys.longest();
    let mut data = json!({
        "group": sys.label(),
        "rank": sys.rank(),
        "order": sys.size(),
        "longest": sys.format_elem(longest),
        "longest_length": sys.length(longest),
    });
    let mut text = format!(
        "group {}: rank {}, |W| = {}\nlongest element {} (length {})\n",
        sys.label(),
        sys.rank(),
        sys.size(),
        sys.format_elem(longest),
        sys.length(longest)
    );
    if scene.i.is_some() {
        let i = parse_subset(&sys, scene.i.as_deref())?;
        let reps = fmt_list(&sys.min_coset_reps(i, Side::Left));
        text.push_str(&format!(
            "W^I for I = {i}: {} elements\n  {}\n",
            reps.len(),
            reps.join(", ")
        ));
        data["I"] = json!(i);
        data["left_coset_reps"] = json!(reps);
        if scene.j.is_some() {
            let j = parse_subset(&sys, scene.j.as_deref())?;
            let mut rows = Vec::new();
            text.push_str(&format!("double cosets for J = {j}, I = {i}:\n"));
            for tau in sys.double_coset_reps(j, i) {
                let (k, kp, _) = sys.cross_section(tau, j, i)?;
                text.push_str(&format!("  {:<16} K = {k}  K' = {kp}\n", sys.format_elem(tau)));
                rows.push(json!({ "tau": sys.format_elem(tau), "K": k, "K_prime": kp }));
            }
            data["J"] = json!(j);
            data["double_cosets"] = json!(rows);
        }
    }
    Ok((data, text))
}

fn write_out(path: &Path, json_text: &str) -> Result<()> {
    fs::write(path, json_text).map_err(|e| Error::Invalid(format!("writing {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let (json_text, text, passed, out) = match cli.command {
        Command::Describe(scene) => {
            let (data, text) = describe(scene.resolve()?, cli.group_cap)?;
            (
                serde_json::to_string_pretty(&data).expect("serializes") + "\n",
                text,
                true,
                cli.out,
            )
        }
        Command::Check { what, scene } => {
            let output = run_check(what, scene.resolve()?, cli.group_cap, exec)?;
            let json_text = serde_json::to_string_pretty(&output).expect("serializes") + "\n";
            (json_text, output.text(), output.passed, cli.out)
        }
        Command::Suite { seed } => {
            let report = run_suite(seed, exec);
            let out = cli.out.unwrap_or_else(|| PathBuf::from("report.json"));
            (report.to_json(), report.to_text(), report.passed, Some(out))
        }
    };
    if let Some(path) = out {
        write_out(&path, &json_text)?;
    }
    match cli.format {
        Format::Json => print!("{json_text}"),
        Format::Text => print!("{text}"),
    }
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
