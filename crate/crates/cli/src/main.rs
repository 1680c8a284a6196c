//! `tensordeg`: tensor squares, tensor degrees and the theorem suite from
//! the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tensordeg::coset::{todd_coxeter, DEFAULT_MAX_COSETS};
use tensordeg::degrees::{comm_degree, rel_n_tensor_degree, tensor_degree};
use tensordeg::group::{FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use tensordeg::rational::ExactRational;
use tensordeg::spec::{parse_words, GroupSpec};
use tensordeg::tensor::{tensor_square_presentation, TensorSquare};
use tensordeg::verify::{
    build_corpus, builtin_specs, parse_corpus_file, run_suite, Config, TensorCache, TheoremId,
    DEFAULT_MAX_ORDER,
};
use tensordeg::{Error, Result};

#[derive(Parser)]
#[command(
    name = "tensordeg",
    version,
    about = "Nonabelian tensor squares and tensor degrees of small groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, center, derived subgroup, nilpotency class, subgroup count.
    Info {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// |G⊗G|, |J₂(G)|, |Z⊗(G)| and the tensor class.
    Tensor {
        spec: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Print the coset table of the tensor-square presentation.
        #[arg(long)]
        dump_table: bool,
    },
    /// d(G), d⊗(G) and dₙ⊗(H,G).
    Degree {
        spec: String,
        /// Generators of H as words over the group's labels, e.g. "a^2,a*b".
        /// Defaults to H = G.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Evaluate the theorem suite over a corpus and emit a report.
    Verify {
        /// `builtin` or a file with one spec per line.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// `all` or comma-separated ids such as `thm-2.2,ex-3.3`.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn fraction(r: &ExactRational) -> String {
    format!("{r} ({})", r.to_decimal(3))
}

fn run(command: Command) -> Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| Error::Internal(e.to_string());
    match command {
        Command::Info { spec, max_order } => {
            let g = build(&spec, max_order)?;
            let class = g
                .nilpotency_class()
                .map_or_else(|| "none".to_string(), |c| c.to_string());
            writeln!(out, "group: {}", g.name()).map_err(io)?;
            writeln!(out, "order: {}", g.order()).map_err(io)?;
            writeln!(out, "center: {}", g.center().order()).map_err(io)?;
            writeln!(out, "derived subgroup: {}", g.derived_subgroup().order()).map_err(io)?;
            writeln!(out, "nilpotency class: {class}").map_err(io)?;
            writeln!(
                out,
                "subgroups: {}",
                g.all_subgroups(DEFAULT_SUBGROUP_BOUND.max(g.order()))?
                    .len()
            )
            .map_err(io)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tensor {
            spec,
            max_order,
            max_cosets,
            dump_table,
        } => {
            let g = build(&spec, max_order)?;
            if dump_table {
                let table = todd_coxeter(&tensor_square_presentation(&g)?, max_cosets)?;
                write!(out, "{}", table.dump()).map_err(io)?;
            }
            let t = TensorSquare::compute(&g, max_cosets)?;
            let class = t
                .tensor_class(&g)?
                .map_or_else(|| "none".to_string(), |c| c.to_string());
            writeln!(out, "group: {}", g.name()).map_err(io)?;
            writeln!(out, "tensor square order: {}", t.order()).map_err(io)?;
            writeln!(out, "J2 order: {}", t.j2_order(&g)?).map_err(io)?;
            writeln!(out, "tensor center: {}", t.tensor_center(&g)?.order()).map_err(io)?;
            writeln!(out, "tensor class: {class}").map_err(io)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Degree {
            spec,
            subgroup,
            n,
            max_order,
            max_cosets,
        } => {
            if n == 0 {
                return Err(Error::InvalidArgument("--n must be at least 1".into()));
            }
            let g = build(&spec, max_order)?;
            let h = match subgroup {
                Some(words) => subgroup_from_words(&g, &words)?,
                None => g.whole(),
            };
            let t = TensorSquare::compute(&g, max_cosets)?;
            writeln!(out, "d(G) = {}", fraction(&comm_degree(&g))).map_err(io)?;
            writeln!(out, "d⊗(G) = {}", fraction(&tensor_degree(&g, &t)?)).map_err(io)?;
            writeln!(
                out,
                "d{n}⊗(H,G) = {}",
                fraction(&rel_n_tensor_degree(&g, &t, &h, n)?)
            )
            .map_err(io)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            corpus,
            theorems,
            max_order,
            out: path,
            format,
            jobs,
            max_cosets,
        } => {
            let config = Config {
                max_cosets,
                max_order,
                jobs,
                ..Config::default()
            };
            config.validate()?;
            let theorems = TheoremId::parse_list(&theorems)?;
            let specs = if corpus == "builtin" {
                builtin_specs(max_order)?
            } else {
                let text = fs::read_to_string(&corpus).map_err(|e| {
                    Error::InvalidArgument(format!("cannot read corpus {corpus}: {e}"))
                })?;
                parse_corpus_file(&text)?
            };
            let cache = TensorCache::new(max_cosets);
            let entries = build_corpus(specs, max_order, &config, &cache)?;
            let report = run_suite(&entries, &theorems, &config, &cache)?;
            let text = match format {
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv()?,
                Format::Table => report.to_table(),
            };
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))
                })?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            let s = &report.summary;
            eprintln!(
                "pass {}  fail {}  skipped {}  flagged {}",
                s.pass, s.fail, s.skipped, s.flagged
            );
            Ok(if s.fail > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn build(spec: &str, max_order: usize) -> Result<FiniteGroup> {
    GroupSpec::parse(spec)?.build(max_order)
}

fn subgroup_from_words(g: &FiniteGroup, words: &str) -> Result<Subgroup> {
    let gens = parse_words(words)?
        .iter()
        .map(|w| g.eval_word(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.subgroup_generated(&gens))
}
