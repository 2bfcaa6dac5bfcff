use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use mlab::bogomolov::sha2;
use mlab::catalog::{load_path, Cache, GroupDefinition};
use mlab::cohomology::schur_h2;
use mlab::group::{GroupTable, DEFAULT_ORDER_CAP};
use mlab::linalg::AbelianInvariants;
use mlab::verifier::{self, Budgets, CheckReport, MultKind, Status};
use mlab::Result;

#[derive(Parser)]
#[command(name = "mlab", version, about = "finite-group multiplier laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur multiplier invariants of each group in a file
    Multiplier {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Bogomolov multiplier invariants of each group in a file
    Bogomolov {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// A Sylow p-subgroup of one group
    Sylow {
        file: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(short)]
        p: u64,
    },
    /// Normalizer of a Sylow p-subgroup
    Normalizer {
        file: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(short)]
        p: u64,
    },
    /// Nilpotency class of each group in a file
    Class {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Run one named check over the groups of a file
    Verify {
        file: PathBuf,
        #[arg(long)]
        check: CheckName,
        #[arg(long)]
        group: Option<String>,
        #[arg(short)]
        p: Option<u64>,
        #[arg(long, default_value = "1")]
        n: usize,
        #[arg(long, value_enum, default_value = "schur")]
        kind: KindArg,
    },
    /// Run the full check suite over a file or a directory of .grp files
    Suite {
        path: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    TheoremBogomolov,
    TheoremHolt,
    ResCor,
    Mackey,
    Stable,
    LemmaComm,
    PropZc,
    CorNg,
    ShaSubmodule,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Schur,
    Sha,
}

fn order_cap() -> usize {
    std::env::var("MLAB_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

fn cache() -> Option<Cache> {
    let dir = std::env::var_os("MLAB_CACHE_DIR")?;
    Cache::new(PathBuf::from(dir)).ok()
}

fn build_selected(
    file: &PathBuf,
    group: &Option<String>,
) -> Result<Vec<Arc<GroupTable>>> {
    let cap = order_cap();
    let defs = load_path(file)?;
    let selected: Vec<&GroupDefinition> = match group {
        Some(name) => {
            let d = defs
                .iter()
                .find(|d| &d.name == name)
                .ok_or_else(|| mlab::Error::UnknownGroup(name.clone()))?;
            vec![d]
        }
        None => defs.iter().collect(),
    };
    selected.iter().map(|d| d.build(cap)).collect()
}

fn cached_invariants(
    g: &Arc<GroupTable>,
    kind: &str,
    compute: impl Fn(&Arc<GroupTable>) -> Result<AbelianInvariants>,
) -> Result<AbelianInvariants> {
    let e = (g.order as i64).max(2);
    if let Some(cache) = cache() {
        if let Some(v) = cache.get(g, kind, e) {
            if let Ok(factors) = serde_json::from_value::<Vec<u64>>(v) {
                return Ok(AbelianInvariants::new(factors));
            }
        }
        let inv = compute(g)?;
        let _ = cache.put(g, kind, e, serde_json::json!(inv.factors));
        return Ok(inv);
    }
    compute(g)
}

fn print_reports(reports: &[CheckReport], json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(reports).unwrap());
    } else {
        for r in reports {
            println!("{r}");
        }
        let (pass, fail, na, skip) = verifier::summarize(reports);
        println!("summary: {pass} PASS, {fail} FAIL, {na} NOT_APPLICABLE, {skip} SKIPPED_BUDGET");
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let coh_cap = 64.min(order_cap());
    match cli.command {
        Command::Multiplier { file, group } => {
            for g in build_selected(&file, &group)? {
                let inv = cached_invariants(&g, "schur", |g| schur_h2(g, coh_cap))?;
                println!("{}: {}", g.name, inv);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bogomolov { file, group } => {
            for g in build_selected(&file, &group)? {
                let inv = cached_invariants(&g, "sha2", |g| sha2(g, coh_cap))?;
                println!("{}: {}", g.name, inv);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sylow { file, group, p } => {
            for g in build_selected(&file, &Some(group))? {
                let s = g.sylow_subgroup(p)?;
                println!("{}: sylow {p} order {} elements {:?}", g.name, s.order(), s.elements);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalizer { file, group, p } => {
            for g in build_selected(&file, &Some(group))? {
                let s = g.sylow_subgroup(p)?;
                let n = g.normalizer(&s);
                println!(
                    "{}: normalizer of sylow {p} order {} elements {:?}",
                    g.name,
                    n.order(),
                    n.elements
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Class { file, group } => {
            for g in build_selected(&file, &group)? {
                match g.nilpotency_class(&g.full_subgroup()) {
                    Some(c) => println!("{}: class {c}", g.name),
                    None => println!("{}: not nilpotent", g.name),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            check,
            group,
            p,
            n,
            kind,
        } => {
            let groups = build_selected(&file, &group)?;
            let mut reports = Vec::new();
            for g in &groups {
                let primes = match p {
                    Some(p) => vec![p],
                    None => g.prime_divisors(),
                };
                match check {
                    CheckName::TheoremBogomolov => {
                        for &p in &primes {
                            reports.push(verifier::check_theorem_bogomolov(g, p)?);
                        }
                    }
                    CheckName::TheoremHolt => {
                        for &p in &primes {
                            reports.push(verifier::check_theorem_holt(g, p)?);
                        }
                    }
                    CheckName::ResCor => {
                        for &p in &primes {
                            let h = g.sylow_subgroup(p)?;
                            reports.push(verifier::check_res_cor_identity(g, &h)?);
                        }
                    }
                    CheckName::Mackey => {
                        for &p in &primes {
                            let h = g.sylow_subgroup(p)?;
                            for a in g.bicyclic_subgroups().into_iter().take(3) {
                                reports.push(verifier::check_mackey(g, &h, &a)?);
                            }
                        }
                    }
                    CheckName::Stable => {
                        let k = match kind {
                            KindArg::Schur => MultKind::Schur,
                            KindArg::Sha => MultKind::Sha,
                        };
                        for &p in &primes {
                            let h = g.sylow_subgroup(p)?;
                            reports.push(verifier::check_stable_isomorphism(g, &h, p, k)?);
                        }
                    }
                    CheckName::LemmaComm => {
                        let normals = g.normal_subgroups();
                        for a in normals.iter().take(6) {
                            for b in normals.iter().take(6) {
                                reports.push(verifier::check_lemma_comm(g, a, b, n)?);
                            }
                        }
                    }
                    CheckName::PropZc => {
                        for q in g.normal_subgroups() {
                            if !q.is_trivial() && q.order() < g.order {
                                reports.push(verifier::check_prop_zc(g, &q)?);
                            }
                        }
                    }
                    CheckName::CorNg => {
                        for q in g.normal_subgroups() {
                            if q.is_trivial() || q.order() == g.order {
                                continue;
                            }
                            for &p in &primes {
                                let mut m = q.order();
                                while m % p as usize == 0 {
                                    m /= p as usize;
                                }
                                if m == 1 {
                                    reports.push(verifier::check_cor_ng(g, &q, p)?);
                                }
                            }
                        }
                    }
                    CheckName::ShaSubmodule => {
                        for q in g.normal_subgroups() {
                            if !q.is_trivial() && q.order() < g.order {
                                reports.push(verifier::check_sha_submodule(g, &q)?);
                            }
                        }
                    }
                }
            }
            Ok(print_reports(&reports, false))
        }
        Command::Suite {
            path,
            max_order,
            json,
        } => {
            let cap = order_cap();
            let defs = load_path(&path)?;
            let mut groups = Vec::new();
            for d in &defs {
                let g = d.build(cap)?;
                if let Some(m) = max_order {
                    if g.order > m {
                        continue;
                    }
                }
                groups.push(g);
            }
            let reports = verifier::run_suite(&groups, &Budgets::default());
            Ok(print_reports(&reports, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
