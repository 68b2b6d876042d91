use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use permbound_core::bounds::{binary_sphere_graph_stats, sphere_graph_stats, MAX_SPHERE_N};
use permbound_core::constructions::{
    affine_pa, clique_lower, greedy_gv, mathieu_pa, mathieu_pa_with, pa_from_mols, pgl2_pa, reduce_d2, reduce_d3,
    standard_mols, verify_distance, GreedyOrder, MathieuConfig, MolsSet, Provenance, Verification, VerifyPolicy,
    Witness, DEFAULT_CLIQUE_BUDGET,
};
use permbound_core::gfq::{count_pps_by_degree, make_field, pp_class_totals, ClassTotal, DEFAULT_PP_BUDGET};
use permbound_core::perm::{io, min_distance, PermutationArray};
use permbound_core::tabulator::{
    all_bounds, build_table, render_comparison, to_csv, to_markdown, CliqueSource, TableOptions,
};
use permbound_core::{Error, Result};

/// Bounds, constructions and tables for permutation arrays under the
/// Hamming metric.
#[derive(Parser)]
#[command(name = "permbound", version)]
struct Cli {
    /// Seed for sampled verification and shuffled greedy order.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every applicable bound on P(n, d).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Best-known lower bounds for all 2 <= d <= n <= n-max.
    Table(TableArgs),
    /// Build a witness array.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a permutation-array file against a minimum distance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Count permutation polynomials over GF(q) by degree.
    PpCount {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
    /// Edge and vertex counts of the Hamming sphere graphs.
    SphereStats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Render the comparison tables at these prime powers instead.
    #[arg(long, value_delimiter = ',')]
    compare: Vec<u64>,
    /// Include the Mathieu closures and their reductions.
    #[arg(long)]
    mathieu: bool,
    /// Greedy witnesses and covered-ball bounds up to this length.
    #[arg(long, default_value_t = 0)]
    anchor: usize,
    /// Clique search up to this length.
    #[arg(long)]
    clique: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Construct {
    /// Affine maps x -> ux + v over GF(q).
    Affine {
        #[arg(long)]
        q: u64,
    },
    /// Array from mutually orthogonal latin squares (JSON `[[[..]]]`), or
    /// the standard ones of prime-power order.
    Mols {
        #[arg(long, conflicts_with = "squares")]
        q: Option<u64>,
        #[arg(long)]
        squares: Option<PathBuf>,
    },
    /// Fractional linear maps over GF(q) together with infinity.
    Pgl2 {
        #[arg(long)]
        q: u64,
    },
    /// Mathieu group M11 or M12, optionally from generators in JSON.
    Mathieu {
        #[arg(long, default_value_t = 12)]
        which: usize,
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Shorten by one point, distance drops by at most 3.
    #[command(name = "reduce-d3")]
    ReduceD3(SourceArgs),
    /// Shorten by two points, keeping the larger bucket; distance drops by at most 2.
    #[command(name = "reduce-d2")]
    ReduceD2(SourceArgs),
    /// Lexicographic (or shuffled) greedy code.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        shuffle: bool,
    },
    /// Maximum-clique search in the distance graph.
    Clique {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Source array; M12 when absent.
    #[arg(long, requires = "d")]
    input: Option<PathBuf>,
    /// Distance of the source array.
    #[arg(long)]
    d: Option<usize>,
}

fn env_budget() -> Result<Option<u64>> {
    match std::env::var("PERMBOUND_BUDGET") {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| Error::Config(format!("PERMBOUND_BUDGET={v:?} is not an integer")))
        }
        Err(_) => Ok(None),
    }
}

/// Writes to stdout; a closed pipe (`permbound ... | head`) is not an error.
fn print_text(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print_text(text)?,
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn emit_witness(out: Option<&Path>, w: &Witness) -> Result<()> {
    match out {
        Some(p) => {
            io::write_pa_file(p, w.pa())?;
            std::fs::write(sidecar_path(p), w.sidecar_json() + "\n")?;
            let c = w.claim();
            print_text(&format!(
                "wrote {} permutations of length {} with distance >= {} to {}\n",
                c.m,
                c.n,
                c.d,
                p.display()
            ))?;
        }
        None => print_text(&io::to_string(w.pa()))?,
    }
    Ok(())
}

fn source_witness(args: &SourceArgs, policy: &VerifyPolicy) -> Result<Witness> {
    match (&args.input, args.d) {
        (Some(path), Some(d)) => {
            let pa = io::read_pa_file(path)?;
            let verification = verify_distance(&pa, d, policy)?;
            let provenance = Provenance { tag: "file".into(), params: Default::default(), verification };
            Witness::from_verified_parts(pa, d, provenance)
        }
        _ => mathieu_pa(12),
    }
}

fn construct(c: &Construct, policy: &VerifyPolicy, budget: Option<u64>) -> Result<Witness> {
    match c {
        Construct::Affine { q } => affine_pa(*q, policy),
        Construct::Mols { q: Some(q), .. } => pa_from_mols(&standard_mols(*q)?, policy),
        Construct::Mols { squares: Some(path), .. } => {
            let squares: Vec<Vec<Vec<u16>>> = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let order = squares.first().map_or(0, |s| s.len());
            pa_from_mols(&MolsSet::new(order, squares)?, policy)
        }
        Construct::Mols { .. } => Err(Error::Config("mols needs --q or --squares".into())),
        Construct::Pgl2 { q } => pgl2_pa(*q),
        Construct::Mathieu { which, generators: None } => mathieu_pa(*which),
        Construct::Mathieu { which, generators: Some(path) } => {
            let cfg: MathieuConfig = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            if cfg.which != *which {
                return Err(Error::Config(format!("generator file is for M{}, not M{which}", cfg.which)));
            }
            mathieu_pa_with(&cfg)
        }
        Construct::ReduceD3(src) => reduce_d3(&source_witness(src, policy)?, policy),
        Construct::ReduceD2(src) => reduce_d2(&source_witness(src, policy)?, policy),
        Construct::Greedy { n, d, shuffle } => {
            let order = if *shuffle { GreedyOrder::Shuffled(policy.seed) } else { GreedyOrder::Lex };
            greedy_gv(*n, *d, order, policy)
        }
        Construct::Clique { n, d, budget: b } => clique_lower(*n, *d, b.or(budget).unwrap_or(DEFAULT_CLIQUE_BUDGET)),
    }
}

fn verify(file: &Path, d: usize, policy: &VerifyPolicy) -> Result<String> {
    let pa: PermutationArray = io::read_pa_file(file)?;
    let m = pa.len() as u64;
    if m * m.saturating_sub(1) / 2 > policy.full_pair_limit {
        return match verify_distance(&pa, d, policy)? {
            Verification::Sampled { pairs, seed } => {
                Ok(format!("min distance >= {d} on {pairs} sampled pairs (seed {seed}): OK\n"))
            }
            _ => unreachable!("large arrays are sampled"),
        };
    }
    match min_distance(&pa) {
        None => Ok(format!("fewer than two permutations, min distance {d} holds vacuously: OK\n")),
        Some(md) if md >= d => Ok(format!("min distance {md}: OK\n")),
        Some(md) => Err(Error::Validation(format!("min distance {md} is below {d}"))),
    }
}

fn pp_count(q: u64, max_deg: usize, budget: u64) -> Result<String> {
    let f = make_field(q)?;
    let all = count_pps_by_degree(&f, max_deg, false, budget)?;
    let monic = count_pps_by_degree(&f, max_deg, true, budget)?;
    let mut s = String::from("degree,all,monic\n");
    for k in 1..=max_deg {
        let _ = writeln!(s, "{k},{},{}", all[&k], monic[&k]);
    }
    s.push_str("\nclass,degree,condition,total\n");
    for r in pp_class_totals(q, max_deg)? {
        let total = match &r.total {
            None => "not applicable".to_string(),
            Some(ClassTotal::Exact(v)) => v.to_string(),
            Some(ClassTotal::Ambiguous { high, low }) => format!("{high} or {low}"),
        };
        let total = if r.subsumed { format!("{total} (counted by another class)") } else { total };
        let _ = writeln!(s, "\"{}\",{},{},{total}", r.label, r.degree, r.restriction);
    }
    Ok(s)
}

fn sphere_stats(n: usize, d: usize) -> Result<String> {
    let mut s = String::new();
    if n <= MAX_SPHERE_N {
        let st = sphere_graph_stats(n, d)?;
        let _ = writeln!(s, "T = {}\nD = {}\nT' = {}\nD' = {}", st.t, st.d, st.t2, st.d2);
    } else {
        let (t2, d2) = binary_sphere_graph_stats(n, d)?;
        let _ = writeln!(s, "T' = {t2}\nD' = {d2}");
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Error::Config(e.to_string()))?;
    }
    let budget = env_budget()?;
    let policy = VerifyPolicy::with_seed(cli.seed);
    let out = cli.out.as_deref();
    match &cli.cmd {
        Command::Bound { n, d } => {
            let recs = all_bounds(*n, *d, budget.unwrap_or(DEFAULT_PP_BUDGET))?;
            let mut s = String::from("n,d,sense,value,method,parents\n");
            for r in &recs {
                let _ = writeln!(s, "{}", r.to_line());
            }
            emit(out, &s)
        }
        Command::Table(a) => {
            if !a.compare.is_empty() {
                return emit(out, &render_comparison(&a.compare)?);
            }
            let opts = TableOptions {
                pp_budget: budget.unwrap_or(DEFAULT_PP_BUDGET),
                mathieu: a.mathieu,
                anchor_max_n: a.anchor,
                clique: a.clique.map(|max_n| CliqueSource { max_n, budget: budget.unwrap_or(DEFAULT_CLIQUE_BUDGET) }),
                verify: policy,
                ..TableOptions::default()
            };
            let t = build_table(a.n_max, &opts)?;
            emit(
                out,
                &match a.format {
                    Format::Csv => to_csv(&t),
                    Format::Markdown => to_markdown(&t),
                },
            )
        }
        Command::Construct(c) => emit_witness(out, &construct(c, &policy, budget)?),
        Command::Verify { file, d } => emit(out, &verify(file, *d, &policy)?),
        Command::PpCount { q, max_deg } => emit(out, &pp_count(*q, *max_deg, budget.unwrap_or(DEFAULT_PP_BUDGET))?),
        Command::SphereStats { n, d } => emit(out, &sphere_stats(*n, *d)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
