//! `groupcx` command-line front end.
//!
//! Tables go to stdout as CSV (or JSON with `--json`), or to the file given by
//! `--csv`. Short human-readable summaries are written to stderr, prefixed
//! with `#`. Exit status: 0 on success, 1 on I/O failure, 2 on invalid input,
//! 3 when a request exceeds an enumeration or search budget.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use groupcx::bench::{self, avgcase_estimate, exhaustive_average, BenchRecord, Task};
use groupcx::cayleyhash::{self, collision_free_bound, hash_bits, shortest_collision_bfs};
use groupcx::matgrowth::{self, ProductWord};
use groupcx::stats::log10_abs;
use groupcx::subwords::{
    self, build_avoidance_automaton, decay_rate, ratio_table, DEFAULT_DECAY_WINDOW,
};
use groupcx::whitehead::{
    analyze_graph, fast_check, primitivity_composite, primitivity_whitehead, whitehead_descent,
    whitehead_graph, FastCheckOutcome, Primitivity,
};
use groupcx::wordproblem::{abelianization, heisenberg_eval, wp_composite, Group};
use groupcx::words::{count_reduced, sample_word, SamplingModel};
use groupcx::{Error, Result, Seed, Word};

#[derive(Parser)]
#[command(
    name = "groupcx",
    version,
    about = "Average-case experiments on free groups, matrix products and word problems"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Master seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Print the table as JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random words.
    Sample {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "reduced")]
        model: SamplingModel,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Decide whether a word is primitive.
    Primitive {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long)]
        word: String,
        /// Use only the Whitehead descent.
        #[arg(long)]
        whitehead_only: bool,
        /// Show the Whitehead graph, the prefix check and the descent.
        #[arg(long)]
        trace: bool,
    },
    /// Average cost of a task over words of given lengths.
    Avgcase {
        #[arg(long, default_value = "primitivity_composite")]
        task: Task,
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Comma-separated word lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        lens: Vec<usize>,
        #[arg(long, default_value = "cyclic")]
        model: SamplingModel,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Also report the exact average over all words (small lengths only).
        #[arg(long)]
        exact: bool,
    },
    /// Exact counts of reduced words avoiding forbidden subwords.
    Subwords {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Comma-separated forbidden subwords.
        #[arg(long, value_delimiter = ',')]
        forbidden: Vec<String>,
        #[arg(long)]
        maxlen: usize,
        /// Count words whose Whitehead graph is incomplete instead (rank 2).
        #[arg(long, conflicts_with = "forbidden")]
        incomplete_graph: bool,
        /// With --incomplete-graph: restrict to cyclically reduced words and
        /// include the closing edge.
        #[arg(long, requires = "incomplete_graph")]
        cyclic: bool,
        #[arg(long, default_value_t = DEFAULT_DECAY_WINDOW)]
        window: usize,
    },
    /// Entry growth of products of A(x) = (1 x; 0 1) and B(y) = (1 0; y 1).
    Matgrowth {
        #[command(subcommand)]
        mode: MatgrowthMode,
    },
    /// Cayley hashing in SL2(Z/p).
    Hash {
        #[command(subcommand)]
        mode: HashMode,
    },
    /// Word problem in free, free abelian and Heisenberg groups.
    Wp(WpArgs),
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    x: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    y: i64,
}

#[derive(Subcommand)]
enum MatgrowthMode {
    /// Largest entry over all 2^n products, for every length up to n.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Powers of a fixed pattern, at every multiple of its length up to n.
    Pattern {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Statistics of uniformly random products.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        params: Params,
    },
    /// Exact average first row over all products, for every length up to n.
    Average {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Whether two products are equal.
    Relation {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Subcommand)]
enum HashMode {
    /// Hash a bit string; prints the four residues row-major.
    Digest {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bits: String,
        #[command(flatten)]
        params: Params,
    },
    /// Certified collision-free length and the logarithmic estimate.
    Bound {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        params: Params,
    },
    /// Shortest length with two colliding words, by exhaustive search.
    Collide {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        maxlen: usize,
        #[arg(long, default_value_t = cayleyhash::DEFAULT_BFS_BUDGET)]
        budget: u64,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct WpArgs {
    #[command(subcommand)]
    bench: Option<WpBench>,

    /// free, abelian, abelian:R or heisenberg
    #[arg(long, default_value = "heisenberg")]
    group: Group,
    #[arg(long)]
    word: Option<String>,
    /// Rank of the word's alphabet (free groups only; defaults to 2).
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand)]
enum WpBench {
    /// Average cost of the solver over uniformly random words.
    Bench {
        #[arg(long, default_value = "heisenberg")]
        group: Group,
        #[arg(long, value_delimiter = ',', required = true)]
        lens: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value = "all")]
        model: SamplingModel,
    },
}

fn main() -> ExitCode {
    // exit quietly when the reader of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invalid(_) => 2,
                Error::Budget { .. } => 3,
                Error::Io { .. } => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let seed = Seed(g.seed);
    match cli.command {
        Command::Sample {
            rank,
            n,
            model,
            count,
        } => cmd_sample(g, rank, n, model, count),
        Command::Primitive {
            rank,
            word,
            whitehead_only,
            trace,
        } => cmd_primitive(rank, &word, whitehead_only, trace),
        Command::Avgcase {
            task,
            rank,
            lens,
            model,
            trials,
            exact,
        } => {
            let records = lens
                .iter()
                .map(|&n| avgcase_estimate(task, rank, n, model, trials, seed))
                .collect::<Result<Vec<_>>>()?;
            if exact {
                for &n in &lens {
                    let e = exhaustive_average(task, rank, n, model)?;
                    summary(format!(
                        "exact n={n}: mean={} ({:.6}) over {} words",
                        e.mean,
                        rational_f64(&e.mean),
                        e.words
                    ));
                }
            }
            emit_bench(g, &records)
        }
        Command::Subwords {
            rank,
            forbidden,
            maxlen,
            incomplete_graph,
            cyclic,
            window,
        } => cmd_subwords(
            g,
            rank,
            &forbidden,
            maxlen,
            incomplete_graph,
            cyclic,
            window,
        ),
        Command::Matgrowth { mode } => cmd_matgrowth(g, seed, mode),
        Command::Hash { mode } => cmd_hash(mode),
        Command::Wp(args) => cmd_wp(g, seed, args),
    }
}

fn summary(line: impl AsRef<str>) {
    eprintln!("# {}", line.as_ref());
}

fn rational_f64(q: &num_rational::BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_text<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize to CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("UTF-8")
}

/// Writes a table to the `--csv` file, or prints it as CSV or JSON.
fn emit_text(g: &Global, csv: String, json: String, rows: usize) -> Result<()> {
    if let Some(path) = &g.csv {
        std::fs::write(path, csv).map_err(|e| io_error(path, e))?;
        summary(format!("wrote {rows} rows to {}", path.display()));
        if g.json {
            println!("{json}");
        }
    } else if g.json {
        println!("{json}");
    } else {
        print!("{csv}");
    }
    Ok(())
}

fn emit<T: Serialize>(g: &Global, rows: &[T]) -> Result<()> {
    let json = serde_json::to_string_pretty(rows).expect("rows serialize to JSON");
    emit_text(g, csv_text(rows), json, rows.len())
}

fn emit_bench(g: &Global, records: &[BenchRecord]) -> Result<()> {
    for r in records {
        let strata: Vec<String> = r
            .strata
            .iter()
            .map(|s| format!("{}={:.4}", s.label, s.freq))
            .collect();
        summary(format!(
            "{} n={} mean={:.3} std={:.3} p95={} [{}]",
            r.task,
            r.n,
            r.mean_cost,
            r.std_cost,
            r.p95,
            strata.join(" ")
        ));
    }
    let rows = bench::csv_rows(records).len();
    emit_text(
        g,
        bench::csv_string(records),
        bench::json_string(records),
        rows,
    )
}

#[derive(Serialize)]
struct SampleRow {
    index: u64,
    len: usize,
    word: String,
}

fn cmd_sample(g: &Global, rank: u32, n: usize, model: SamplingModel, count: u64) -> Result<()> {
    if rank == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    if model == SamplingModel::CyclicallyReduced && rank == 1 && n > 1 {
        return Err(Error::Invalid(format!(
            "no cyclically reduced words of length {n} in rank 1"
        )));
    }
    let rows: Vec<SampleRow> = (0..count)
        .map(|i| {
            let w = sample_word(rank, n, model, &mut Seed(g.seed).stream(i));
            SampleRow {
                index: i,
                len: w.len(),
                word: w.to_string(),
            }
        })
        .collect();
    emit(g, &rows)
}

fn cmd_primitive(rank: u32, text: &str, whitehead_only: bool, trace: bool) -> Result<()> {
    let w = Word::parse(rank, text)?;
    if trace {
        let c = w.cyclic_reduce();
        println!("input: {w} (length {})", w.len());
        println!("cyclic reduction: {c} (length {})", c.len());
        if !c.is_empty() {
            let graph = whitehead_graph(&c, true)?;
            let v = analyze_graph(&graph);
            println!(
                "whitehead graph: {} edges, {} of {} vertex pairs covered",
                graph.edge_count(),
                graph.covered_pairs(),
                graph.vertex_count() * (graph.vertex_count() - 1) / 2
            );
            println!(
                "  complete={} isolated_edge={} cut_vertex={}",
                v.complete, v.has_isolated_edge, v.has_cut_vertex
            );
        }
        if c.len() > 2 {
            let t = fast_check(&c)?;
            match t.outcome {
                FastCheckOutcome::NotPrimitive { prefix_len } => {
                    println!(
                        "fast check: prefix of length {prefix_len} has a complete graph ({})",
                        t.cost
                    )
                }
                FastCheckOutcome::Inconclusive => println!("fast check: inconclusive ({})", t.cost),
            }
        }
        let d = whitehead_descent(&c)?;
        println!("descent from {}:", d.start);
        for (i, s) in d.steps.iter().enumerate() {
            println!(
                "  {:>3}. {} -> {} (length {})",
                i + 1,
                s.automorphism,
                s.word,
                s.word.len()
            );
        }
        println!("  ends at {} ({})", d.end(), d.cost);
    }
    let v = if whitehead_only {
        primitivity_whitehead(&w)?
    } else {
        primitivity_composite(&w)?
    };
    let verdict = match v.verdict {
        Primitivity::Primitive => "primitive",
        Primitivity::NotPrimitive => "not primitive",
    };
    println!("{verdict}");
    println!("decided_by: {}", v.decided_by.label());
    println!("cost: {}", v.cost);
    Ok(())
}

#[derive(Serialize)]
struct CountRow {
    len: usize,
    count: String,
    reduced_total: String,
    ratio: f64,
}

fn cmd_subwords(
    g: &Global,
    rank: u32,
    forbidden: &[String],
    maxlen: usize,
    incomplete_graph: bool,
    cyclic: bool,
    window: usize,
) -> Result<()> {
    let (counts, base) = if incomplete_graph {
        if cyclic {
            let counts = subwords::incomplete_graph_series_cyclic(rank, maxlen)?;
            let base = (0..=maxlen)
                .map(|l| groupcx::words::count_cyclically_reduced(rank, l))
                .collect::<Vec<_>>();
            (counts, base)
        } else {
            let counts = subwords::incomplete_graph_series(rank, maxlen)?;
            (
                counts,
                (0..=maxlen).map(|l| count_reduced(rank, l)).collect(),
            )
        }
    } else {
        let patterns = forbidden
            .iter()
            .filter(|p| !p.trim().is_empty())
            .map(|p| Word::parse(rank, p))
            .collect::<Result<Vec<_>>>()?;
        let aut = build_avoidance_automaton(rank, &patterns)?;
        summary(format!("automaton with {} states", aut.state_count()));
        (
            aut.counts(maxlen),
            (0..=maxlen).map(|l| count_reduced(rank, l)).collect(),
        )
    };
    let rows: Vec<CountRow> = ratio_table(&counts, &base)
        .into_iter()
        .map(|r| CountRow {
            len: r.len,
            count: r.count,
            reduced_total: r.reduced_total,
            ratio: r.ratio,
        })
        .collect();
    // decay estimate over the tail where both counts are positive
    let start = counts
        .iter()
        .zip(&base)
        .rposition(|(c, b)| num_traits::Zero::is_zero(c) || num_traits::Zero::is_zero(b))
        .map_or(0, |i| i + 1);
    if counts.len() - start >= 3 {
        if let Ok(d) = decay_rate(&counts[start..], &base[start..], window) {
            summary(format!(
                "decay base s = {:.6} from lengths {}..{}",
                d.s,
                d.from + start,
                d.to + start
            ));
        }
    }
    emit(g, &rows)
}

#[derive(Serialize)]
struct LevelRow {
    n: usize,
    max_entry: String,
    log10_max_entry: f64,
    argmax: String,
}

#[derive(Serialize)]
struct PowerRow {
    n: usize,
    max_entry: String,
    log10_max_entry: f64,
    trace: String,
}

#[derive(Serialize)]
struct RandomRow {
    n: usize,
    trials: u64,
    x: i64,
    y: i64,
    seed: u64,
    mean_log10: f64,
    median_log10: f64,
    min_log10: f64,
    max_log10: f64,
    generic_base: Option<f64>,
    mean_base: Option<f64>,
}

#[derive(Serialize)]
struct AverageRow {
    n: usize,
    mean_a: String,
    mean_b: String,
    mean_a_approx: f64,
    mean_b_approx: f64,
}

fn cmd_matgrowth(g: &Global, seed: Seed, mode: MatgrowthMode) -> Result<()> {
    match mode {
        MatgrowthMode::Exhaustive { n, params } => {
            let levels = matgrowth::max_entries_by_length(n, params.x, params.y)?;
            let rows: Vec<LevelRow> = levels
                .iter()
                .map(|l| LevelRow {
                    n: l.n,
                    max_entry: l.max_entry.to_string(),
                    log10_max_entry: log10_abs(&l.max_entry),
                    argmax: l.argmax.to_string(),
                })
                .collect();
            let points: Vec<(u64, BigInt)> = levels
                .iter()
                .skip(1)
                .map(|l| (l.n as u64, l.max_entry.clone()))
                .collect();
            if let Ok(b) = matgrowth::growth_base(&points) {
                summary(format!(
                    "growth base {:.6} from n={}..{}",
                    b.base, b.from_n, b.to_n
                ));
            }
            emit(g, &rows)
        }
        MatgrowthMode::Pattern { pattern, n, params } => {
            let pat = ProductWord::parse(&pattern)?;
            if pat.is_empty() {
                return Err(Error::Invalid("pattern must be nonempty".into()));
            }
            let mut rows = Vec::new();
            let mut points = Vec::new();
            for k in (pat.len()..=n).step_by(pat.len()) {
                let m = matgrowth::pattern_power(&pat, k, params.x, params.y)?;
                let top = m.max_abs_entry();
                rows.push(PowerRow {
                    n: k,
                    max_entry: top.to_string(),
                    log10_max_entry: log10_abs(&top),
                    trace: m.trace().to_string(),
                });
                points.push((k as u64, top));
            }
            if let Ok(b) = matgrowth::growth_base(&points) {
                summary(format!(
                    "growth base {:.6} from n={}..{}",
                    b.base, b.from_n, b.to_n
                ));
            }
            emit(g, &rows)
        }
        MatgrowthMode::Random { n, trials, params } => {
            let s = matgrowth::random_product_stats(n, trials, params.x, params.y, seed)?;
            emit(
                g,
                &[RandomRow {
                    n,
                    trials,
                    x: params.x,
                    y: params.y,
                    seed: seed.0,
                    mean_log10: s.mean,
                    median_log10: s.median,
                    min_log10: s.min,
                    max_log10: s.max,
                    generic_base: s.generic_base,
                    mean_base: s.mean_base,
                }],
            )
        }
        MatgrowthMode::Average { n, params } => {
            if n > matgrowth::MAX_AVERAGE_LEN {
                return Err(Error::Budget {
                    what: "exact average enumeration (length)",
                    required: n.to_string(),
                    limit: matgrowth::MAX_AVERAGE_LEN.to_string(),
                });
            }
            let rows = (0..=n)
                .map(|k| {
                    let (a, b) = matgrowth::exact_average_entries(k, params.x, params.y)?;
                    Ok(AverageRow {
                        n: k,
                        mean_a_approx: rational_f64(&a),
                        mean_b_approx: rational_f64(&b),
                        mean_a: a.to_string(),
                        mean_b: b.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit(g, &rows)
        }
        MatgrowthMode::Relation { u, v, params } => {
            let (u, v) = (ProductWord::parse(&u)?, ProductWord::parse(&v)?);
            let mu = matgrowth::eval_product(&u, params.x, params.y);
            let mv = matgrowth::eval_product(&v, params.x, params.y);
            println!("{u} = {mu}");
            println!("{v} = {mv}");
            println!("{}", mu == mv);
            Ok(())
        }
    }
}

fn cmd_hash(mode: HashMode) -> Result<()> {
    match mode {
        HashMode::Digest { p, bits, params } => {
            let h = hash_bits(&ProductWord::parse(&bits)?, p, params.x, params.y)?;
            println!("{h}");
        }
        HashMode::Bound { p, params } => {
            let r = collision_free_bound(p, params.x, params.y)?;
            println!("p: {}", r.p);
            println!("x: {} y: {}", r.x, r.y);
            match r.exact_bound {
                Some(n) => println!("certified length: {n} ({})", r.method.label()),
                None => println!("certified length: none ({})", r.method.label()),
            }
            if let Some(m) = &r.max_entry_at_bound {
                println!("max entry up to certified length: {m}");
            }
            if let Some(m) = &r.max_entry_beyond {
                println!("max entry one step further: {m}");
            }
            println!("growth base: {:.6}", r.base);
            match r.heuristic_bound {
                Some(h) => println!("log bound: {h:.4}"),
                None => println!("log bound: none"),
            }
        }
        HashMode::Collide {
            p,
            maxlen,
            budget,
            params,
        } => match shortest_collision_bfs(p, params.x, params.y, maxlen, budget)? {
            Some(c) => {
                println!("length: {}", c.length);
                println!("u: {}", c.u);
                println!("v: {}", c.v);
                println!("digest: {}", c.digest);
            }
            None => println!("no collision up to length {maxlen}"),
        },
    }
    Ok(())
}

fn cmd_wp(g: &Global, seed: Seed, args: WpArgs) -> Result<()> {
    if let Some(WpBench::Bench {
        group,
        lens,
        trials,
        model,
    }) = args.bench
    {
        let rank = match group {
            Group::FreeAbelian(r) => r,
            _ => 2,
        };
        let records = lens
            .iter()
            .map(|&n| avgcase_estimate(Task::for_group(group), rank, n, model, trials, seed))
            .collect::<Result<Vec<_>>>()?;
        return emit_bench(g, &records);
    }
    let text = args
        .word
        .ok_or_else(|| Error::Invalid("wp needs --word (or the bench subcommand)".into()))?;
    let rank = match args.group {
        Group::FreeAbelian(r) => r,
        Group::Heisenberg => 2,
        Group::Free => args.rank.unwrap_or(2),
    };
    let w = Word::parse(rank, &text)?;
    if args.trace {
        println!("word: {w} (length {})", w.len());
        println!("abelianization: {:?}", abelianization(&w));
        if args.group == Group::Heisenberg {
            println!("heisenberg element: {}", heisenberg_eval(&w)?);
        }
        if args.group == Group::Free {
            println!("reduced: {}", w.reduce());
        }
    }
    let v = wp_composite(args.group, &w)?;
    println!(
        "{}",
        if v.is_identity {
            "identity"
        } else {
            "not identity"
        }
    );
    println!("decided_by: {}", v.decided_by.label());
    println!(
        "cost: letters_read={} bigint_ops={} total={}",
        v.cost.letters_read,
        v.cost.bigint_ops,
        v.cost.total()
    );
    Ok(())
}
