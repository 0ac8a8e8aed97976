mod config;
mod modules;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modrep_core::branching::perm_module_signature;
use modrep_core::classifier::{
    ground_truth, standard_families, survey, theorem_a_cases, theorem_b_decide, theorem_tnat_decide, SubgroupDescriptor,
    SurveyOptions,
};
use modrep_core::partitions::{
    alpha, beta, cogood_node, e_tilde, enumerate_p_regular, epsilon, f_tilde, good_node, is_js, mullineux, phi,
    signature, Partition,
};
use modrep_core::perm_groups::{wreath, NAMED_GROUPS};
use modrep_core::reps::{composition_factors, hom_dim, ModuleLibrary};
use modrep_core::verify::{run_suite, SuiteParams, SUITES};
use modrep_core::{Caps, Error, Result};
use serde_json::{json, Value};

use config::{resolve, FileConfig, FlagOverrides};
use modules::ModuleSpec;
use output::{Format, Report};

/// Modular representations of symmetric groups and their restrictions to subgroups.
#[derive(Parser, Debug)]
#[command(name = "modrep", version)]
struct Cli {
    /// Output format [default: text].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// A `key = value` file with seed, dim_cap, word_cap, cache_dir, format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    #[arg(long, global = true)]
    word_cap: Option<usize>,
    /// Directory for cached modules; also read from CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorics of p-regular partitions.
    Partition {
        #[command(subcommand)]
        cmd: PartitionCmd,
    },
    /// Dimensions, composition factors, homomorphisms and invariants.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Run the reduction criteria (and optionally the MeatAxe) on one restriction.
    Classify(ClassifyArgs),
    /// Classify every partition against a list of subgroup families.
    Survey(SurveyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PartitionArg {
    #[arg(long = "p")]
    p: u32,
    /// A partition such as "(5,3,1)".
    lambda: String,
}

#[derive(Subcommand, Debug)]
enum PartitionCmd {
    Regular(PartitionArg),
    Mullineux(PartitionArg),
    /// The i-signature for one residue, or all of them.
    Signature {
        #[command(flatten)]
        arg: PartitionArg,
        #[arg(long = "i")]
        i: Option<u32>,
    },
    /// Whether the partition has exactly one normal node.
    Js(PartitionArg),
    /// ε, φ, good and cogood nodes and the crystal operators per residue.
    Crystal(PartitionArg),
    /// The partitions (n-1,1) and the basic spin label.
    Special { which: Special, n: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Special {
    Alpha,
    Beta,
}

#[derive(Args, Debug)]
struct ModuleArg {
    #[arg(long = "p")]
    p: u32,
    /// The degree, needed for M3, S2, S1dual and similar.
    #[arg(long)]
    n: Option<usize>,
    /// D (6,4), S (5,1), M3, S1dual, ...
    #[arg(required = true, num_args = 1..)]
    module: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    Dim(ModuleArg),
    /// Composition factors, labelled by partitions.
    Factors(ModuleArg),
    /// dim Hom(A, B) for two modules given as single words, e.g. "D(5,1)" M1.
    Hom {
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        n: Option<usize>,
        from: String,
        to: String,
    },
    /// Dimension of the fixed points of the restriction to a subgroup.
    Fixed {
        #[command(flatten)]
        arg: ModuleArg,
        #[arg(long)]
        group: String,
    },
    /// Factors, socle and head multiplicities of M_k.
    PermSignature {
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long = "p")]
    p: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: String,
    /// Sn, An, Sn-1, young:(a,b,..), intransitive:n:k, wreath:a:b, named:NAME, gens:FILE
    #[arg(long)]
    group: String,
    /// Also decide absolute irreducibility with the MeatAxe.
    #[arg(long)]
    ground_truth: bool,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    #[arg(long = "p")]
    p: u32,
    #[arg(long)]
    n: usize,
    /// Comma-separated: An, Sn-1, young (all S_{n-k} x S_k), wreath (all S_a wr S_b),
    /// standard, or explicit group specs.
    #[arg(long)]
    families: Option<String>,
    /// Restrict to these partitions (repeatable).
    #[arg(long)]
    lambda: Vec<String>,
    #[arg(long)]
    skip_ground_truth: bool,
    /// Record per-cell wall-clock times (makes the output non-reproducible).
    #[arg(long)]
    timings: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// One of the suite names, or "all".
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "p")]
    p: Option<u32>,
}

struct Context {
    caps: Caps,
    lib: ModuleLibrary,
}

fn parse_partition(s: &str) -> Result<Partition> {
    Partition::from_str(s)
}

fn partition_cmd(cmd: &PartitionCmd) -> Result<Report> {
    Ok(match cmd {
        PartitionCmd::Regular(a) => {
            let l = parse_partition(&a.lambda)?;
            modrep_core::linalg::check_modulus(a.p as u64)?;
            Report::new(json!(l.is_p_regular(a.p)))
        }
        PartitionCmd::Mullineux(a) => Report::new(json!(mullineux(&parse_partition(&a.lambda)?, a.p)?.to_string())),
        PartitionCmd::Js(a) => {
            let l = parse_partition(&a.lambda)?;
            l.require_p_regular(a.p)?;
            Report::new(json!(is_js(&l, a.p)))
        }
        PartitionCmd::Signature { arg, i } => {
            let l = parse_partition(&arg.lambda)?;
            l.require_p_regular(arg.p)?;
            let residues: Vec<u32> = match i {
                Some(i) if *i < arg.p => vec![*i],
                Some(i) => return Err(Error::Precondition(format!("residue {i} is not below p = {}", arg.p))),
                None => (0..arg.p).collect(),
            };
            let rows: Vec<Value> = residues
                .iter()
                .map(|&i| {
                    let s = signature(&l, i, arg.p);
                    json!({ "i": i, "signature": s.to_string(), "epsilon": s.epsilon(), "phi": s.phi() })
                })
                .collect();
            let text = rows.iter().map(|r| format!("{}: {}\n", r["i"], r["signature"].as_str().unwrap_or(""))).collect();
            Report::new(Value::Array(rows)).with_text(text)
        }
        PartitionCmd::Crystal(a) => {
            let l = parse_partition(&a.lambda)?;
            l.require_p_regular(a.p)?;
            let p = a.p;
            let rows: Vec<Value> = (0..p)
                .map(|i| {
                    json!({
                        "i": i,
                        "epsilon": epsilon(&l, i, p),
                        "phi": phi(&l, i, p),
                        "good": good_node(&l, i, p).map(|x| x.to_string()),
                        "cogood": cogood_node(&l, i, p).map(|x| x.to_string()),
                        "e_tilde": e_tilde(&l, i, p).map(|x| x.to_string()),
                        "f_tilde": f_tilde(&l, i, p).map(|x| x.to_string()),
                    })
                })
                .collect();
            let text = rows
                .iter()
                .map(|r| {
                    let s = |k: &str| r[k].as_str().unwrap_or("-").to_string();
                    format!(
                        "i={} eps={} phi={} good={} cogood={} e~={} f~={}\n",
                        r["i"], r["epsilon"], r["phi"], s("good"), s("cogood"), s("e_tilde"), s("f_tilde")
                    )
                })
                .collect();
            Report::new(Value::Array(rows)).with_text(text)
        }
        PartitionCmd::Special { which, n } => {
            let l = match which {
                Special::Alpha => alpha(*n)?,
                Special::Beta => beta(*n)?,
            };
            Report::new(json!(l.to_string()))
        }
    })
}

/// The degree implied by a group spec, when it names one.
fn group_degree(spec: &str) -> Option<usize> {
    let fields: Vec<&str> = spec.split(':').collect();
    match fields.as_slice() {
        ["wreath", a, b] => Some(a.parse::<usize>().ok()? * b.parse::<usize>().ok()?),
        ["intransitive", n, _] => n.parse().ok(),
        ["named", name] => NAMED_GROUPS.iter().find(|(x, _, _)| x == name).map(|&(_, d, _)| d),
        ["young", mu] => Partition::from_str(mu).ok().map(|l| l.size()),
        _ => None,
    }
}

fn module_cmd(cmd: &ModuleCmd, ctx: &Context) -> Result<Report> {
    let (lib, caps) = (&ctx.lib, &ctx.caps);
    Ok(match cmd {
        ModuleCmd::Dim(a) => Report::new(json!(ModuleSpec::parse(&a.module)?.build(a.n, a.p, lib)?.dim())),
        ModuleCmd::Factors(a) => {
            let spec = ModuleSpec::parse(&a.module)?;
            let n = spec.degree(a.n)?;
            let m = spec.build(a.n, a.p, lib)?;
            let found = composition_factors(&m, &enumerate_p_regular(n, a.p), lib, caps)?;
            let rows: Vec<Value> = found
                .iter()
                .map(|(mu, c)| json!({ "factor": mu.to_string(), "dim": lib.irreducible(mu, a.p).map(|d| d.dim()).unwrap_or(0), "multiplicity": c }))
                .collect();
            let text = found.iter().map(|(mu, c)| format!("D{mu} x {c}\n")).collect();
            Report::new(Value::Array(rows)).with_text(text)
        }
        ModuleCmd::Hom { p, n, from, to } => {
            let a = ModuleSpec::parse(std::slice::from_ref(from))?.build(*n, *p, lib)?;
            let b = ModuleSpec::parse(std::slice::from_ref(to))?.build(*n, *p, lib)?;
            Report::new(json!(hom_dim(&a, &b, caps)?))
        }
        ModuleCmd::Fixed { arg, group } => {
            let spec = ModuleSpec::parse(&arg.module)?;
            let n = arg.n.or_else(|| spec.degree(None).ok()).or_else(|| group_degree(group));
            let m = spec.build(n, arg.p, lib)?;
            let g = SubgroupDescriptor::from_spec(group, m.degree())?;
            Report::new(json!(m.restrict(&g.group)?.fixed_points().dim()))
        }
        ModuleCmd::PermSignature { p, n, k } => {
            let sig = perm_module_signature(*n, *p, *k, lib, caps)?;
            let value = serde_json::to_value(&sig).expect("signature serialises");
            let fmt_map = |m: &std::collections::BTreeMap<String, usize>| {
                m.iter().filter(|(_, &c)| c > 0).map(|(l, c)| format!("{l} x {c}")).collect::<Vec<_>>().join(", ")
            };
            let factors: Vec<String> = sig.factors.iter().map(|(l, c)| format!("{l} x {c}")).collect();
            let text = format!(
                "factors: {}\nsocle: {}\nhead: {}\ninvariants: {}\n",
                factors.join(", "),
                fmt_map(&sig.hom_in),
                fmt_map(&sig.hom_out),
                sig.invariants_dim
            );
            Report::new(value).with_text(text)
        }
    })
}

fn classify_cmd(a: &ClassifyArgs, ctx: &Context) -> Result<Report> {
    let lambda = parse_partition(&a.lambda)?;
    if lambda.size() != a.n {
        return Err(Error::DimensionMismatch(format!("{lambda} is not a partition of {}", a.n)));
    }
    lambda.require_p_regular(a.p)?;
    let g = SubgroupDescriptor::from_spec(&a.group, a.n)?;
    let mut out = serde_json::Map::new();
    out.insert("lambda".into(), json!(lambda.to_string()));
    out.insert("p".into(), json!(a.p));
    out.insert("n".into(), json!(a.n));
    out.insert("group".into(), json!(a.group));
    out.insert("order".into(), json!(g.group.order().to_string()));
    out.insert("flags".into(), serde_json::to_value(&g.flags).expect("flags serialise"));
    let reduction = theorem_a_cases(&lambda, a.p, &g);
    match &reduction {
        Ok(o) => {
            out.insert("reduction".into(), serde_json::to_value(&o.verdict).expect("verdict serialises"));
        }
        Err(e) if !e.is_resource_cap() => {
            out.insert("reduction".into(), json!(format!("not applicable: {e}")));
        }
        Err(_) => return Err(reduction.err().expect("matched an error")),
    }
    if a.p == 2 && a.n >= 5 && lambda == beta(a.n)? {
        let o = theorem_b_decide(a.n, &g)?;
        out.insert("basic_spin".into(), serde_json::to_value(&o.verdict).expect("verdict serialises"));
    }
    if a.p == 2 && a.n >= 6 && a.n % 4 == 2 && lambda == alpha(a.n)? && g.group.is_subgroup_of(&wreath(a.n / 2, 2)?) {
        let (irr, cert) = theorem_tnat_decide(&g.group, &ctx.lib, &ctx.caps)?;
        out.insert("natural".into(), json!({ "irreducible": irr, "certificate": cert }));
    }
    if a.ground_truth {
        let gt = ground_truth(&lambda, a.p, &g.group, &ctx.lib, &ctx.caps)?;
        if let Ok(o) = reduction {
            out.insert("consistent".into(), json!(o.with_ground_truth(gt.clone()).consistent()));
        }
        out.insert("ground_truth".into(), json!(gt.to_string()));
    }
    Ok(Report::new(Value::Object(out)))
}

fn expand_families(list: &str, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "young" => out.extend((2..=n / 2).map(|k| format!("intransitive:{n}:{k}"))),
            "wreath" => out.extend((2..n).filter(|a| n % a == 0 && n / a >= 2).map(|a| format!("wreath:{a}:{}", n / a))),
            "standard" => out.extend(standard_families(n)),
            other => out.push(other.to_string()),
        }
    }
    out
}

fn survey_cmd(a: &SurveyArgs, ctx: &Context, format: Format) -> Result<Report> {
    let opts = SurveyOptions {
        partitions: a.lambda.iter().map(|s| parse_partition(s)).collect::<Result<_>>()?,
        families: a.families.as_deref().map(|f| expand_families(f, a.n)).unwrap_or_default(),
        skip_ground_truth: a.skip_ground_truth,
        timings: a.timings,
    };
    let report = survey(a.n, a.p, &opts, &ctx.lib, &ctx.caps)?;
    let summary = format!(
        "{} cells, {} inconsistent, {} errors\n",
        report.cells.len(),
        report.inconsistencies(),
        report.errors()
    );
    let mut text = String::new();
    for c in &report.cells {
        let gt = c.ground_truth.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "-".into());
        let cases = if c.cases.is_empty() { "-".to_string() } else { c.cases.join(" ") };
        let tail = c.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default();
        text.push_str(&format!("{} {} cases={cases} gt={gt} consistent={}{tail}\n", c.lambda, c.group, c.consistent));
    }
    text.push_str(&summary);
    let rendered = Report::new(serde_json::to_value(&report).expect("report serialises"))
        .with_text(text)
        .with_csv(report.to_csv());
    match &a.out {
        Some(path) => {
            std::fs::write(path, rendered.render(format, "survey", &ctx.caps))?;
            Ok(Report::new(json!({
                "cells": report.cells.len(),
                "inconsistent": report.inconsistencies(),
                "errors": report.errors(),
                "written": path.display().to_string(),
            })))
        }
        None => Ok(rendered),
    }
}

fn verify_cmd(a: &VerifyArgs, ctx: &Context) -> Result<(Report, bool)> {
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let params = SuiteParams { n: a.n, p: a.p };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, params, &ctx.lib, &ctx.caps)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        for n in &r.notes {
            text.push_str(&format!("  {n}\n"));
        }
        for f in &r.failures {
            text.push_str(&format!("  failure: {f}\n"));
        }
    }
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "criterion": r.criterion, "name": r.name, "passed": r.passed(), "checks": r.checks, "failures": r.failures.len() }))
        .collect();
    let value = serde_json::to_value(&reports).expect("reports serialise");
    Ok((Report::new(value).with_text(text).with_csv(output::to_csv(&Value::Array(rows))), passed))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Partition { .. } => "partition",
        Command::Module { .. } => "module",
        Command::Classify(_) => "classify",
        Command::Survey(_) => "survey",
        Command::Verify(_) => "verify",
    }
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = FlagOverrides {
        seed: cli.seed,
        dim_cap: cli.dim_cap,
        word_cap: cli.word_cap,
        cache_dir: cli.cache_dir.clone(),
        format: cli.format,
    };
    let settings = resolve(&flags, std::env::var_os("CACHE_DIR").map(PathBuf::from), &file)?;
    if let Some(dir) = &settings.cache_dir {
        std::fs::create_dir_all(dir)?;
    }
    let ctx = Context { caps: settings.caps, lib: ModuleLibrary::new(settings.cache_dir.clone()) };
    let mut ok = true;
    let report = match &cli.command {
        Command::Partition { cmd } => partition_cmd(cmd)?,
        Command::Module { cmd } => module_cmd(cmd, &ctx)?,
        Command::Classify(a) => classify_cmd(a, &ctx)?,
        Command::Survey(a) => survey_cmd(a, &ctx, settings.format)?,
        Command::Verify(a) => {
            let (r, passed) = verify_cmd(a, &ctx)?;
            ok = passed;
            r
        }
    };
    Ok((report.render(settings.format, command_name(&cli.command), &ctx.caps), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_cap() { 3 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_from_group_specs() {
        assert_eq!(group_degree("wreath:3:2"), Some(6));
        assert_eq!(group_degree("intransitive:9:2"), Some(9));
        assert_eq!(group_degree("named:m10"), Some(10));
        assert_eq!(group_degree("young:(2,2,1)"), Some(5));
        assert_eq!(group_degree("An"), None);
    }

    #[test]
    fn family_lists() {
        assert_eq!(expand_families("An,young", 8), vec!["An", "intransitive:8:2", "intransitive:8:3", "intransitive:8:4"]);
        assert_eq!(expand_families("wreath", 8), vec!["wreath:2:4", "wreath:4:2"]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
