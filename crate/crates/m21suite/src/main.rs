use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use m21_core::groebner::{groebner_basis, IdealPresentation};
use m21_core::polyring::{parse_poly, MonomialOrder, Ring};
use m21suite::scenario::{CheckKind, Scenario};
use m21suite::{load_scenario, run_checks};

#[derive(Parser)]
#[command(name = "m21", version, about = "Verify Chow ring presentations from scenario files")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the checks of a scenario.
    Verify {
        file: PathBuf,
        /// Only run checks whose name matches this glob.
        #[arg(long)]
        check: Option<String>,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a Groebner basis.
    Gb {
        #[arg(long)]
        ring: String,
        /// Generators separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        /// `grevlex` or `elim:k` (eliminate the first k variables).
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// List the scenarios in a directory.
    List { dir: PathBuf },
    /// Show one named definition of a scenario.
    Show { file: PathBuf, name: String },
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match cli.cmd {
        Cmd::Verify { file, check, report, format } => verify(&file, check.as_deref(), report.as_deref(), format),
        Cmd::Gb { ring, ideal, order } => gb(&ring, &ideal, &order),
        Cmd::List { dir } => list(&dir),
        Cmd::Show { file, name } => show(&file, &name),
    }
}

fn verify(file: &Path, filter: Option<&str>, report_path: Option<&Path>, format: Format) -> ExitCode {
    let s = match load_scenario(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let report = run_checks(&s, filter);
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => {
            let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
            print!("{}", report.to_text(color));
        }
    }
    if let Some(p) = report_path {
        if let Err(e) = std::fs::write(p, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(USAGE);
        }
    }
    ExitCode::from(u8::from(report.any_failed()))
}

fn gb(ring: &str, ideal: &str, order: &str) -> ExitCode {
    let ring = match Ring::parse(ring) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let order = match order.split_once(':') {
        None if order == "grevlex" => MonomialOrder::WeightedDegRevLex,
        Some(("elim", k)) => match k.parse::<usize>() {
            Ok(k) if k <= ring.nvars() => MonomialOrder::elimination(k),
            _ => {
                eprintln!("error: bad elimination count `{k}`");
                return ExitCode::from(USAGE);
            }
        },
        _ => {
            eprintln!("error: unknown order `{order}` (use grevlex or elim:k)");
            return ExitCode::from(USAGE);
        }
    };
    let gens: Result<Vec<_>, _> =
        ideal.split(';').map(str::trim).filter(|s| !s.is_empty()).map(|s| parse_poly(s, &ring)).collect();
    let ideal = match gens.and_then(|g| IdealPresentation::new(&ring, g)) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    match groebner_basis(&ideal, &order) {
        Ok(g) => {
            for p in g.basis() {
                println!("{p}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn list(dir: &Path) -> ExitCode {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(USAGE);
        }
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "scn"))
        .collect();
    files.sort();
    let mut code = ExitCode::SUCCESS;
    for f in files {
        let name = f.file_name().unwrap_or_default().to_string_lossy().into_owned();
        match load_scenario(&f) {
            Ok(s) => println!(
                "{name}\t{}\t[{}]\t{} checks\t{}",
                s.id,
                s.covers.join(","),
                s.checks.len(),
                s.description
            ),
            Err(e) => {
                println!("{name}\tERROR\t{e}");
                code = ExitCode::from(USAGE);
            }
        }
    }
    code
}

fn describe(s: &Scenario, name: &str) -> Option<String> {
    if let Some(r) = s.ring(name) {
        let mut out = format!("ring {r}");
        for (v, doc) in r.docs() {
            out.push_str(&format!("\n  {v}: {doc}"));
        }
        return Some(out);
    }
    if let Some(m) = s.map(name) {
        let mut out = format!("map {}: {} -> {}", name, m.source, m.map.target().name());
        let src = m.map.source();
        for (k, img) in m.map.substitution().images().iter().enumerate() {
            out.push_str(&format!("\n  {} |-> {}", src.var_name(k), img));
        }
        return Some(out);
    }
    if let Some(c) = s.class(name) {
        return Some(format!("class {} in {}: {}", c.name, c.ring, c.value));
    }
    if let Some(o) = s.operator(name) {
        let state = match &o.op {
            Ok(_) => "consistent".to_string(),
            Err(e) => format!("inconsistent: {e}"),
        };
        return Some(format!(
            "operator {}: {} -> {} ({state})",
            o.name,
            o.upstream.name(),
            o.downstream.name()
        ));
    }
    if let Some(c) = s.check(name) {
        let extra = match &c.kind {
            CheckKind::IdealEqual { lhs, rhs } => format!("\n  {lhs}\n  {rhs}"),
            CheckKind::Member { ring, elements, .. } => {
                let els: Vec<String> = elements.iter().map(|(l, _)| l.clone()).collect();
                format!(" in {}\n  {}", ring.name(), els.join("\n  "))
            }
            _ => String::new(),
        };
        return Some(format!("check {} [{}]{extra}", c.name, c.kind.label()));
    }
    None
}

fn show(file: &Path, name: &str) -> ExitCode {
    let s = match load_scenario(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    match describe(&s, name) {
        Some(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        None => {
            eprintln!("error: no definition named `{name}` in {}", file.display());
            ExitCode::from(USAGE)
        }
    }
}
