//! `tempograph` command-line front end.

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use tempograph::ingest::{default_cache_dir, DatasetEntry, DatasetManifest, Fetcher, LoadOptions};
use tempograph::stats::{self, EmptySnapshots, SummaryOptions};
use tempograph::transform::{discretize, subsample, subsample_random, Granularity, SplitSpec};
use tempograph::viz::{self, ChartConfig, ExportFormat, Series};
use tempograph::{exec, EventStream, NodeId, TimeUnit};

#[derive(Parser)]
#[command(name = "tempograph", version, about = "Temporal graph statistics and charts")]
struct Cli {
    /// Worker threads for data-parallel stages (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the datasets in the manifest.
    List {
        /// Manifest JSON to use instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ListFormat::Table)]
        format: ListFormat,
    },
    /// Download a named dataset into the cache and print its path.
    Fetch {
        name: String,
        /// Cache directory (default: $TEMPOGRAPH_CACHE or the user cache dir).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Manifest JSON to use instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Dataset summary: counts, duration and the temporal indices.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        disc: DiscArgs,
        /// Fraction of events in the training split.
        #[arg(long, default_value_t = SplitSpec::DEFAULT_TRAIN_FRACTION)]
        train_frac: f64,
        /// Count empty snapshots in the node activity denominator.
        #[arg(long, value_enum, default_value_t = Empty::Include)]
        activity_empty: Empty,
        /// Count empty snapshots in the novelty denominator.
        #[arg(long, value_enum, default_value_t = Empty::Exclude)]
        novelty_empty: Empty,
        #[arg(long, value_enum, default_value_t = StatsFormat::Table)]
        format: StatsFormat,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temporal edge appearance: new vs repeated edges per snapshot.
    Tea {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        output: ChartOut,
    },
    /// Temporal edge traffic: edge × snapshot presence raster.
    Tet {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        output: ChartOut,
        /// Refuse to build more rows than this.
        #[arg(long, default_value_t = stats::TET_ROW_CAP)]
        max_rows: usize,
    },
    /// Per-snapshot node/edge counts or average degree.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        disc: DiscArgs,
        #[arg(long, value_enum)]
        chart: Chart,
        #[command(flatten)]
        output: ChartOut,
    },
    /// Write the stream with timestamps replaced by snapshot indices.
    Discretize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        disc: DiscArgs,
        /// Output edge-list file.
        #[arg(long)]
        out: PathBuf,
        /// Output delimiter.
        #[arg(long, default_value_t = ',')]
        out_delimiter: char,
    },
    /// Write the sub-stream induced by a node set (see --subsample-*).
    Subsample {
        #[command(flatten)]
        input: InputArgs,
        /// Output edge-list file.
        #[arg(long)]
        out: PathBuf,
        /// Output delimiter.
        #[arg(long, default_value_t = ',')]
        out_delimiter: char,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file (optionally gzip-compressed).
    #[arg(long, conflicts_with = "dataset", required_unless_present = "dataset")]
    input: Option<PathBuf>,
    /// Named dataset from the manifest; fetched on first use.
    #[arg(long)]
    dataset: Option<String>,
    /// Cache directory for --dataset.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Manifest JSON to use instead of the built-in one.
    #[arg(long)]
    manifest: Option<PathBuf>,

    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// First row is a header (default: auto-detect).
    #[arg(long, conflicts_with = "no_header")]
    header: bool,
    /// First row is data.
    #[arg(long)]
    no_header: bool,
    #[arg(long, default_value_t = 0)]
    src_col: usize,
    #[arg(long, default_value_t = 1)]
    dst_col: usize,
    #[arg(long, default_value_t = 2)]
    time_col: usize,
    /// unix_seconds, days, years or index (default: from the manifest, else unix_seconds).
    #[arg(long)]
    time_unit: Option<TimeUnit>,
    /// Store each edge with its endpoints in ascending ID order.
    #[arg(long)]
    undirected: bool,

    /// Keep only events touching N nodes drawn with --seed.
    #[arg(long, value_name = "N", conflicts_with = "subsample_nodes")]
    subsample_random: Option<usize>,
    /// Keep only events touching the node labels listed in FILE, one per line.
    #[arg(long, value_name = "FILE")]
    subsample_nodes: Option<PathBuf>,
    /// Seed for --subsample-random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DiscArgs {
    /// Number of equal-width snapshots.
    #[arg(long, conflicts_with = "granularity")]
    bins: Option<u64>,
    /// daily, weekly, monthly, yearly or bins:k.
    #[arg(long)]
    granularity: Option<Granularity>,
}

#[derive(Args)]
struct ChartOut {
    #[arg(long, value_enum, default_value_t = ChartFormat::Svg)]
    format: ChartFormat,
    /// Output file; required for SVG, stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the series as CSV, or JSON if the name ends in `.json`.
    #[arg(long, value_name = "FILE")]
    export: Option<PathBuf>,
    /// Chart title.
    #[arg(long)]
    title: Option<String>,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ChartFormat {
    Svg,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Chart {
    Counts,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Empty {
    Include,
    Exclude,
}

impl From<Empty> for EmptySnapshots {
    fn from(e: Empty) -> Self {
        match e {
            Empty::Include => EmptySnapshots::Include,
            Empty::Exclude => EmptySnapshots::Exclude,
        }
    }
}

type CliResult<T = ()> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        exec::set_threads(n as usize);
    }
    check_usage(&cli.command);
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::List { manifest, format } => {
            let m = load_manifest(manifest.as_deref())?;
            match format {
                ListFormat::Json => emit(None, m.to_json().as_bytes()),
                ListFormat::Table => emit(None, list_table(&m).as_bytes()),
            }
        }
        Command::Fetch {
            name,
            cache_dir,
            manifest,
        } => {
            let m = load_manifest(manifest.as_deref())?;
            let entry = m.get(&name).map_err(err)?;
            let path = Fetcher::new(cache_dir.unwrap_or_else(default_cache_dir))
                .fetch(entry)
                .map_err(err)?;
            println!("{}", path.display());
            Ok(())
        }
        Command::Stats {
            input,
            disc,
            train_frac,
            activity_empty,
            novelty_empty,
            format,
            out,
        } => {
            let (stream, entry) = load(&input)?;
            let g = granularity(&disc, &stream, entry.as_ref());
            let spec = SplitSpec::new(train_frac).map_err(err)?;
            let opts = SummaryOptions {
                activity_empty: activity_empty.into(),
                novelty_empty: novelty_empty.into(),
            };
            let mut report = stats::summarize_with(&stream, g, spec, opts).map_err(err)?;
            if let Some(name) = input.dataset.clone().or_else(|| file_stem(input.input.as_deref())) {
                report = report.with_name(name);
            }
            let text = match format {
                StatsFormat::Json => report.to_json(),
                StatsFormat::Table => report.to_table(out.is_none() && use_color()),
            };
            emit(out.as_deref(), text.as_bytes())
        }
        Command::Tea { input, disc, output } => {
            let (stream, entry) = load(&input)?;
            let seq = discretize(&stream, granularity(&disc, &stream, entry.as_ref())).map_err(err)?;
            let tea = stats::tea_series(&seq);
            let cfg = chart_config(ChartConfig::tea(), &output);
            chart_output(&output, &tea, || viz::render_tea_chart(&tea, &cfg))
        }
        Command::Tet {
            input,
            disc,
            output,
            max_rows,
        } => {
            let (stream, entry) = load(&input)?;
            let seq = discretize(&stream, granularity(&disc, &stream, entry.as_ref())).map_err(err)?;
            let tet = stats::tet_matrix_capped(&seq, max_rows).map_err(err)?;
            let cfg = ChartConfig {
                tet_row_cap: max_rows,
                ..chart_config(ChartConfig::tet(), &output)
            };
            chart_output(&output, &tet, || viz::render_tet_chart(&tet, &cfg))
        }
        Command::Plot {
            input,
            disc,
            chart,
            output,
        } => {
            let (stream, entry) = load(&input)?;
            let seq = discretize(&stream, granularity(&disc, &stream, entry.as_ref())).map_err(err)?;
            match chart {
                Chart::Counts => {
                    let counts = stats::snapshot_counts(&seq);
                    let cfg = chart_config(ChartConfig::counts(), &output);
                    chart_output(&output, &counts, || viz::render_counts_chart(&counts, &cfg))
                }
                Chart::Degree => {
                    let deg = stats::average_degree_series(&seq);
                    let cfg = chart_config(ChartConfig::degree(), &output);
                    chart_output(&output, &deg, || viz::render_degree_chart(&deg, &cfg))
                }
            }
        }
        Command::Discretize {
            input,
            disc,
            out,
            out_delimiter,
        } => {
            let (stream, entry) = load(&input)?;
            let seq = discretize(&stream, granularity(&disc, &stream, entry.as_ref())).map_err(err)?;
            let mut buf = Vec::new();
            tempograph::ingest::write_discretized(&stream, &seq, out_delimiter, &mut buf)
                .map_err(err)?;
            emit(Some(&out), &buf)
        }
        Command::Subsample {
            input,
            out,
            out_delimiter,
        } => {
            let (stream, _) = load(&input)?;
            let mut buf = Vec::new();
            tempograph::ingest::write_edgelist(&stream, out_delimiter, &mut buf).map_err(err)?;
            emit(Some(&out), &buf)
        }
    }
}

fn load_manifest(path: Option<&Path>) -> CliResult<DatasetManifest> {
    match path {
        Some(p) => DatasetManifest::from_path(p).map_err(err),
        None => Ok(DatasetManifest::builtin()),
    }
}

fn load(a: &InputArgs) -> CliResult<(EventStream, Option<DatasetEntry>)> {
    let (stream, entry) = match (&a.input, &a.dataset) {
        (Some(path), _) => {
            let mut opts = LoadOptions::default();
            opts.format.delimiter = a.delimiter;
            opts.format.has_header = match (a.header, a.no_header) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            opts.format.col_src = a.src_col;
            opts.format.col_dst = a.dst_col;
            opts.format.col_time = a.time_col;
            opts.unit = a.time_unit.unwrap_or_default();
            opts.undirected = a.undirected;
            let s = tempograph::read_edgelist_with(path, &opts)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            (s, None)
        }
        (None, Some(name)) => {
            let m = load_manifest(a.manifest.as_deref())?;
            let entry = m.get(name).map_err(err)?.clone();
            let cache = a.cache_dir.clone().unwrap_or_else(default_cache_dir);
            let path = Fetcher::new(cache).fetch(&entry).map_err(err)?;
            let mut opts = entry.load_options();
            opts.undirected = a.undirected;
            if let Some(u) = a.time_unit {
                opts.unit = u;
            }
            let s = tempograph::read_edgelist_with(&path, &opts)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            (s, Some(entry))
        }
        (None, None) => return Err("one of --input or --dataset is required".into()),
    };

    let stream = if let Some(n) = a.subsample_random {
        subsample_random(&stream, n, a.seed).map_err(err)?
    } else if let Some(file) = &a.subsample_nodes {
        let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
        let nodes = node_ids(&stream, &text)?;
        subsample(&stream, &nodes).map_err(err)?
    } else {
        stream
    };
    Ok((stream, entry))
}

/// Resolves node labels (one per line, blank lines ignored) to IDs.
fn node_ids(stream: &EventStream, text: &str) -> CliResult<Vec<NodeId>> {
    let index: std::collections::HashMap<&str, usize> = stream
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            index
                .get(l)
                .map(|&i| NodeId(i as u32))
                .ok_or_else(|| format!("unknown node label '{l}'"))
        })
        .collect()
}

/// Explicit flags win. Otherwise a dataset's published discretization is
/// used when its timestamps are unix seconds, and streams in other units
/// get one snapshot per unit step.
fn granularity(d: &DiscArgs, stream: &EventStream, entry: Option<&DatasetEntry>) -> Granularity {
    if let Some(k) = d.bins {
        return Granularity::Bins(k);
    }
    if let Some(g) = d.granularity {
        return g;
    }
    if stream.unit() == TimeUnit::UnixSeconds {
        return entry
            .and_then(|e| e.reference.as_ref())
            .and_then(|r| r.discretization.parse().ok())
            .unwrap_or(Granularity::Daily);
    }
    let steps = (stream.t_max() as i128 - stream.t_min() as i128 + 1) as u64;
    Granularity::Bins(steps)
}

fn chart_config(base: ChartConfig, out: &ChartOut) -> ChartConfig {
    let mut cfg = base;
    if let Some(t) = &out.title {
        cfg.title = t.clone();
    }
    cfg.width_px = out.width;
    cfg.height_px = out.height;
    cfg
}

fn chart_output<S: Series>(
    out: &ChartOut,
    series: &S,
    render: impl FnOnce() -> tempograph::Result<String>,
) -> CliResult {
    let bytes = match out.format {
        ChartFormat::Svg => render().map_err(err)?,
        ChartFormat::Csv => viz::export_series(series, ExportFormat::Csv),
        ChartFormat::Json => viz::export_series(series, ExportFormat::Json),
    };
    if let Some(path) = &out.export {
        let fmt = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            ExportFormat::Json
        } else {
            ExportFormat::Csv
        };
        emit(Some(path), viz::export_series(series, fmt).as_bytes())?;
    }
    emit(out.out.as_deref(), bytes.as_bytes())
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, msg).exit()
}

/// Flag combinations clap cannot express; exits with status 2.
fn check_usage(cmd: &Command) {
    let chart = match cmd {
        Command::Tea { output, .. } | Command::Tet { output, .. } | Command::Plot { output, .. } => {
            Some(output)
        }
        Command::Subsample { input, .. } => {
            if input.subsample_random.is_none() && input.subsample_nodes.is_none() {
                usage_error("subsample needs --subsample-random N or --subsample-nodes FILE");
            }
            None
        }
        _ => None,
    };
    if let Some(o) = chart {
        if o.format == ChartFormat::Svg && o.out.is_none() {
            usage_error("SVG output needs --out FILE");
        }
    }
}

/// Writes to `path` atomically (temp file in the same directory, then
/// rename), or to stdout.
fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult {
    let Some(path) = path else {
        let mut stdout = io::stdout().lock();
        return stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(err);
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let ctx = |e: io::Error| format!("{}: {e}", path.display());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(ctx)?;
    tmp.write_all(bytes).map_err(ctx)?;
    tmp.persist(path).map_err(|e| ctx(e.error))?;
    Ok(())
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal()
}

fn file_stem(path: Option<&Path>) -> Option<String> {
    let name = path?.file_name()?.to_str()?;
    let name = name.strip_suffix(".gz").unwrap_or(name);
    Some(
        Path::new(name)
            .file_stem()
            .map_or(name.to_string(), |s| s.to_string_lossy().into_owned()),
    )
}

fn list_table(m: &DatasetManifest) -> String {
    let mut rows = vec![[
        "name".to_string(),
        "group".to_string(),
        "unit".to_string(),
        "events".to_string(),
        "title".to_string(),
    ]];
    for d in &m.datasets {
        rows.push([
            d.name.clone(),
            d.group.clone().unwrap_or_default(),
            d.timestamp_unit.to_string(),
            d.expected
                .map(|e| e.num_events.to_string())
                .unwrap_or_else(|| "-".into()),
            d.title.clone().unwrap_or_default(),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (v, w))| if c == 3 { format!("{v:>w$}") } else { format!("{v:<w$}") })
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}
