//! `capgraph`: command-line access to fuzzy-measure validation, indices,
//! integrals, fitting, random generation, rendering and comparison analytics.
//!
//! Exit codes: 0 on success, 1 on a domain error (invalid measure, infeasible
//! input, I/O failure), 2 on a usage error.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use capgraph::analysis::{
    alternatives_choquet_profile, hierarchical_cluster, integral_comparison, measure_features, measure_summary,
    subset_features, Feature,
};
use capgraph::fitting::{default_normalization, fit, fit_incremental, Dataset, Normalization};
use capgraph::integrals::Integral;
use capgraph::io::{csv_text, format_number, load_dataset, read_measure_file, MeasureFile};
use capgraph::lattice::validate;
use capgraph::random::{derive_seed, random_batch, random_k_interactive, GeneratorConfig};
use capgraph::render::{layout, plot_heatmap, plot_lines, plot_scatter, render_dot, render_svg, PlotConfig, Style, StyleConfig};
use capgraph::transforms::IndexKind;
use capgraph::{FuzzyMeasure, LabelMode};

use output::Output;

#[derive(Parser)]
#[command(name = "capgraph", version, about = "Discrete fuzzy measures: checks, indices, integrals, fitting and drawings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print numbers in full precision instead of 6 significant digits
    #[arg(long, global = true)]
    full_precision: bool,
    /// Tolerance for monotonicity and boundary checks
    #[arg(long, global = true, default_value_t = capgraph::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Load measure files without validating them
    #[arg(long, global = true)]
    no_validate: bool,
    /// Subset names in exports; also adds a labels array to written measure files
    #[arg(long, global = true, value_enum)]
    labels: Option<Labels>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    /// {1,3}
    Canonical,
    /// c(1, 3)
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Topological,
    Height,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OverlayArg {
    None,
    Mobius,
    Shapley,
    Nonadditivity,
    Nonmodularity,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Svg,
    Dot,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum IndexArg {
    All,
    Mobius,
    Shapley,
    Nonadditivity,
    Nonmodularity,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum IntegralArg {
    All,
    Choquet,
    Sugeno,
    Pan,
}

#[derive(Args)]
struct NormArgs {
    /// Normalization offset; defaults to the smallest partial score
    #[arg(long, requires = "scale")]
    offset: Option<f64>,
    /// Normalization scale; defaults to the partial-score range
    #[arg(long, requires = "offset")]
    scale: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check boundary and monotonicity conditions and list every violation
    Validate {
        measure: PathBuf,
    },
    /// Print summary statistics, family orders and lattice properties
    Props {
        measure: PathBuf,
    },
    /// Export Möbius, Shapley, nonadditivity or nonmodularity values per subset as CSV
    Index {
        measure: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        kind: IndexArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate Choquet, Sugeno and pan integrals of one input vector
    Integrate {
        measure: PathBuf,
        /// Comma-separated partial scores
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, value_enum, default_value = "all")]
        integral: IntegralArg,
    },
    /// Fit a measure to a scored dataset by least absolute deviation
    Fit {
        dataset: PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        /// Fit every prefix of the dataset and write one frame per round
        #[arg(long, requires = "out_dir")]
        incremental: bool,
        /// Directory for round files, drawings and the manifest
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Drawing style for round frames
        #[arg(long, value_enum, default_value = "height")]
        style: StyleArg,
        /// Where to write the fitted measure
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate seeded random measures
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Directory for a batch (required when count > 1)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the lattice graph as SVG or Graphviz DOT
    Render {
        measure: PathBuf,
        #[arg(long, value_enum, default_value = "topological")]
        style: StyleArg,
        #[arg(long, value_enum, default_value = "none")]
        overlay: OverlayArg,
        /// Output format; inferred from a .dot output name when omitted
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Print marginal contributions next to edges
        #[arg(long)]
        edge_values: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate all three integrals of one input over random measures
    CompareIntegrals {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        /// Number of criteria; must match the input length
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// CSV with one row per sample
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Line plot of the three series with their pointwise median
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Choquet values of every dataset alternative over random measures
    ProfileAlternatives {
        dataset: PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// One line per sample across alternatives, median in red
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Average-linkage clustering of subsets (one measure) or of measures (entropy, orness)
    Cluster {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Comma-separated features: mu, mobius, shapley, nonadditivity, nonmodularity, or entropy, orness
        #[arg(long, value_delimiter = ',', default_value = "mu,nonadditivity")]
        features: Vec<String>,
        /// CSV of merge steps
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// CSV of the feature matrix
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Heatmap with the merge tree
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Entropy, orness and family flags for measure files and generated batches
    Summarize {
        inputs: Vec<PathBuf>,
        /// Add this many random measures
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        /// Add this many random k-interactive measures
        #[arg(long, requires = "seed")]
        k_interactive: Option<usize>,
        /// Criteria for generated measures
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Level k for generated k-interactive measures
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Entropy-orness scatter plot
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

struct Ctx {
    global: Global,
    out: Output,
}

impl Ctx {
    fn num(&self, v: f64) -> String {
        format_number(v, self.global.full_precision)
    }

    fn label_mode(&self) -> LabelMode {
        match self.global.labels {
            Some(Labels::Paper) => LabelMode::Coalition,
            _ => LabelMode::Canonical,
        }
    }

    fn load_measure(&self, path: &Path) -> Result<FuzzyMeasure> {
        let file = read_measure_file(path).with_context(|| format!("reading {}", path.display()))?;
        let mu = if self.global.no_validate {
            FuzzyMeasure::new_unchecked(file.to_set_function()?)
        } else {
            file.to_measure(self.global.tol)?
        };
        Ok(mu)
    }

    fn measure_json(&self, mu: &FuzzyMeasure, name: Option<String>) -> String {
        let labels = self.global.labels.map(|_| self.label_mode());
        let mut text = MeasureFile::from_measure(mu, name, labels).to_json();
        text.push('\n');
        text
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        global: cli.global,
        out: Output::from_env(),
    };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<()> {
    match command {
        Command::Validate { measure } => cmd_validate(ctx, &measure),
        Command::Props { measure } => cmd_props(ctx, &measure),
        Command::Index { measure, kind, output } => cmd_index(ctx, &measure, kind, output.as_deref()),
        Command::Integrate { measure, x, integral } => cmd_integrate(ctx, &measure, &x, integral),
        Command::Fit {
            dataset,
            norm,
            incremental,
            out_dir,
            style,
            output,
        } => cmd_fit(ctx, &dataset, &norm, incremental, out_dir.as_deref(), style, output.as_deref()),
        Command::Random {
            n,
            seed,
            count,
            out_dir,
            output,
        } => cmd_random(ctx, n, seed, count, out_dir.as_deref(), output.as_deref()),
        Command::Render {
            measure,
            style,
            overlay,
            format,
            edge_values,
            output,
        } => cmd_render(ctx, &measure, style, overlay, format, edge_values, output.as_deref()),
        Command::CompareIntegrals {
            x,
            n,
            samples,
            seed,
            output,
            svg,
        } => cmd_compare(ctx, &x, n, samples, seed, output.as_deref(), svg.as_deref()),
        Command::ProfileAlternatives {
            dataset,
            norm,
            samples,
            seed,
            output,
            svg,
        } => cmd_profile(ctx, &dataset, &norm, samples, seed, output.as_deref(), svg.as_deref()),
        Command::Cluster {
            inputs,
            features,
            output,
            matrix,
            svg,
        } => cmd_cluster(ctx, &inputs, &features, output.as_deref(), matrix.as_deref(), svg.as_deref()),
        Command::Summarize {
            inputs,
            random,
            k_interactive,
            n,
            k,
            seed,
            output,
            svg,
        } => cmd_summarize(ctx, &inputs, random, k_interactive, n, k, seed, output.as_deref(), svg.as_deref()),
    }
}

fn cmd_validate(ctx: &Ctx, path: &Path) -> Result<()> {
    let sf = read_measure_file(path)
        .and_then(|f| f.to_set_function())
        .with_context(|| format!("reading {}", path.display()))?;
    let report = validate(&sf, ctx.global.tol);
    if report.ok {
        println!("valid (n = {}, tolerance {})", sf.n(), ctx.global.tol);
        Ok(())
    } else {
        println!("{report}");
        bail!(
            "{} boundary and {} monotonicity violations",
            report.boundary_violations.len(),
            report.edge_violations.len()
        )
    }
}

fn flag(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |k| k.to_string())
}

fn cmd_props(ctx: &Ctx, path: &Path) -> Result<()> {
    let mu = ctx.load_measure(path)?;
    let r = measure_summary(&mu, ctx.global.tol)?;
    let shapley = capgraph::transforms::shapley_values(&mu);
    let list = |v: &[f64]| v.iter().map(|x| ctx.num(*x)).collect::<Vec<_>>().join(", ");
    let f = &r.family;
    let mut lines = vec![
        format!("n: {}", mu.n()),
        format!("entropy: {}", ctx.num(r.summary.entropy)),
        format!("orness: {}", ctx.num(r.summary.orness)),
        format!("level_means: {}", list(&r.summary.level_means)),
        format!("shapley: {}", list(&shapley)),
        format!("additive: {}", r.additive),
        format!("symmetric: {}", r.symmetric),
        format!("superadditive: {}", r.superadditive),
        format!("subadditive: {}", r.subadditive),
        format!("supermodular: {}", r.supermodular),
        format!("submodular: {}", r.submodular),
        format!("additivity_order: {}", f.additivity_order),
        format!("maxitive_order: {}", f.maxitive_order),
        format!("minitive_order: {}", f.minitive_order),
        format!("tolerant_order: {}", flag(f.tolerant_order)),
        format!("intolerant_order: {}", flag(f.intolerant_order)),
    ];
    lines.push(match f.interactive {
        Some((k, big_k)) => format!("interactive: k = {k}, K = {}", ctx.num(big_k)),
        None => "interactive: none".to_string(),
    });
    lines.push(match &f.partition {
        Some(p) => format!(
            "indifference_blocks: {}",
            p.blocks.iter().map(|b| b.label(ctx.label_mode())).collect::<Vec<_>>().join(" ")
        ),
        None => "indifference_blocks: ambiguous".to_string(),
    });
    println!("{}", lines.join("\n"));
    Ok(())
}

fn index_kinds(kind: IndexArg) -> Vec<IndexKind> {
    match kind {
        IndexArg::All => IndexKind::ALL.to_vec(),
        IndexArg::Mobius => vec![IndexKind::Mobius],
        IndexArg::Shapley => vec![IndexKind::ShapleyComprehensive],
        IndexArg::Nonadditivity => vec![IndexKind::Nonadditivity],
        IndexArg::Nonmodularity => vec![IndexKind::Nonmodularity],
    }
}

fn cmd_index(ctx: &Ctx, path: &Path, kind: IndexArg, output: Option<&Path>) -> Result<()> {
    let mu = ctx.load_measure(path)?;
    let features: Vec<Feature> = std::iter::once(Feature::Value)
        .chain(index_kinds(kind).into_iter().map(Feature::Index))
        .collect();
    let fm = subset_features(&mu, &features, ctx.label_mode())?;
    ctx.out.write(output, &fm.to_csv(ctx.global.full_precision))
}

fn cmd_integrate(ctx: &Ctx, path: &Path, x: &[f64], which: IntegralArg) -> Result<()> {
    let mu = ctx.load_measure(path)?;
    let chosen: Vec<Integral> = match which {
        IntegralArg::All => Integral::ALL.to_vec(),
        IntegralArg::Choquet => vec![Integral::Choquet],
        IntegralArg::Sugeno => vec![Integral::Sugeno],
        IntegralArg::Pan => vec![Integral::Pan],
    };
    for f in chosen {
        println!("{f}: {}", ctx.num(f.evaluate(&mu, x)?));
    }
    Ok(())
}

fn normalization(ds: &Dataset, args: &NormArgs) -> Result<Normalization> {
    let norm = match (args.offset, args.scale) {
        (Some(offset), Some(scale)) => Normalization::new(offset, scale)?,
        _ => default_normalization(ds)?,
    };
    eprintln!("normalization: (v - {}) / {}", norm.offset, norm.scale);
    Ok(norm)
}

fn load_table(path: &Path) -> Result<Dataset> {
    load_dataset(path).with_context(|| format!("reading {}", path.display()))
}

fn style_of(style: StyleArg) -> Style {
    match style {
        StyleArg::Topological => Style::Topological,
        StyleArg::Height => Style::HeightOn,
    }
}

fn cmd_fit(
    ctx: &Ctx,
    path: &Path,
    norm_args: &NormArgs,
    incremental: bool,
    out_dir: Option<&Path>,
    style: StyleArg,
    output: Option<&Path>,
) -> Result<()> {
    let ds = load_table(path)?;
    let norm = normalization(&ds, norm_args)?;
    let result = fit(&ds, &norm)?;
    eprintln!("objective: {}", ctx.num(result.objective));
    if let Some(dir) = out_dir {
        let dir = ctx.out.resolve(dir);
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let cfg = StyleConfig {
            style: style_of(style),
            labels: ctx.label_mode(),
            ..StyleConfig::default()
        };
        let rounds = if incremental {
            fit_incremental(&ds, &norm)?.rounds
        } else {
            vec![result.clone()]
        };
        let mut manifest = Vec::new();
        for (t, round) in rounds.iter().enumerate() {
            let stem = format!("round_{:02}", t + 1);
            let json_name = format!("{stem}.json");
            let svg_name = format!("{stem}.svg");
            let name = Some(format!("round {}", t + 1));
            std::fs::write(dir.join(&json_name), ctx.measure_json(&round.measure, name))?;
            std::fs::write(dir.join(&svg_name), render_svg(&layout(&round.measure, &cfg)?, &cfg))?;
            println!("round {}: objective {}", t + 1, ctx.num(round.objective));
            manifest.push(json!({
                "round": t + 1,
                "alternatives": t + 1,
                "objective": round.objective,
                "measure": json_name,
                "svg": svg_name,
            }));
        }
        let manifest = json!({
            "dataset": path.display().to_string(),
            "normalization": { "offset": norm.offset, "scale": norm.scale },
            "rounds": manifest,
        });
        std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    }
    if output.is_some() || out_dir.is_none() {
        ctx.out.write(output, &ctx.measure_json(&result.measure, None))?;
    }
    Ok(())
}

fn cmd_random(
    ctx: &Ctx,
    n: usize,
    seed: u64,
    count: usize,
    out_dir: Option<&Path>,
    output: Option<&Path>,
) -> Result<()> {
    let batch = random_batch(&GeneratorConfig::new(n, seed, count)?)?;
    match out_dir {
        Some(dir) => {
            let dir = ctx.out.resolve(dir);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for (k, mu) in batch.iter().enumerate() {
                let name = format!("sample_{:04}", k + 1);
                std::fs::write(dir.join(format!("{name}.json")), ctx.measure_json(mu, Some(name)))?;
            }
            eprintln!("wrote {count} measures to {}", dir.display());
            Ok(())
        }
        None if count == 1 => ctx.out.write(output, &ctx.measure_json(&batch[0], None)),
        None => bail!("--out-dir is required when --count exceeds 1"),
    }
}

fn cmd_render(
    ctx: &Ctx,
    path: &Path,
    style: StyleArg,
    overlay: OverlayArg,
    format: Option<FormatArg>,
    edge_values: bool,
    output: Option<&Path>,
) -> Result<()> {
    let mu = ctx.load_measure(path)?;
    let overlay = match overlay {
        OverlayArg::None => None,
        OverlayArg::Mobius => Some(IndexKind::Mobius),
        OverlayArg::Shapley => Some(IndexKind::ShapleyComprehensive),
        OverlayArg::Nonadditivity => Some(IndexKind::Nonadditivity),
        OverlayArg::Nonmodularity => Some(IndexKind::Nonmodularity),
    };
    let cfg = StyleConfig {
        style: style_of(style),
        overlay,
        labels: ctx.label_mode(),
        edge_values,
        ..StyleConfig::default()
    };
    let dot_by_name = output.is_some_and(|p| p.extension().is_some_and(|e| e == "dot"));
    let text = match format {
        Some(FormatArg::Dot) => render_dot(&mu, &cfg),
        None if dot_by_name => render_dot(&mu, &cfg),
        _ => render_svg(&layout(&mu, &cfg)?, &cfg),
    };
    ctx.out.write(output, &text)
}

fn cmd_compare(
    ctx: &Ctx,
    x: &[f64],
    n: Option<usize>,
    samples: usize,
    seed: u64,
    output: Option<&Path>,
    svg: Option<&Path>,
) -> Result<()> {
    let n = n.unwrap_or(x.len());
    if n != x.len() {
        bail!("--x has {} components but --n is {n}", x.len());
    }
    let cmp = integral_comparison(x, &GeneratorConfig::new(n, seed, samples)?)?;
    let [c, s, p] = cmp.medians;
    eprintln!(
        "medians: choquet {}, sugeno {}, pan {}; fraction(C >= S) {}; fraction(S >= N) {}",
        ctx.num(c),
        ctx.num(s),
        ctx.num(p),
        ctx.num(cmp.frac_choquet_ge_sugeno),
        ctx.num(cmp.frac_sugeno_ge_pan)
    );
    ctx.out.write(output, &cmp.to_csv(ctx.global.full_precision))?;
    if let Some(svg) = svg {
        let cfg = PlotConfig {
            title: Some(format!("Integrals of ({}) over {samples} random measures", join(x))),
            x_label: Some("sample".into()),
            y_label: Some("value".into()),
            ..PlotConfig::default()
        };
        let series: Vec<Vec<f64>> = (0..3).map(|j| cmp.series(j)).collect();
        ctx.out.write(Some(svg), &plot_lines(&series, &cfg)?)?;
    }
    Ok(())
}

fn join(x: &[f64]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_profile(
    ctx: &Ctx,
    path: &Path,
    norm_args: &NormArgs,
    samples: usize,
    seed: u64,
    output: Option<&Path>,
    svg: Option<&Path>,
) -> Result<()> {
    let ds = load_table(path)?;
    let norm = normalization(&ds, norm_args)?;
    let profile = alternatives_choquet_profile(&ds, &norm, &GeneratorConfig::new(ds.n(), seed, samples)?)?;
    for (label, m) in profile.labels.iter().zip(&profile.medians) {
        eprintln!("median {label}: {}", ctx.num(*m));
    }
    ctx.out.write(output, &profile.to_csv(ctx.global.full_precision))?;
    if let Some(svg) = svg {
        let lines: Vec<Vec<f64>> = (0..samples)
            .map(|s| profile.series.iter().map(|series| series[s]).collect())
            .collect();
        let cfg = PlotConfig {
            title: Some(format!("Choquet values over {samples} random measures")),
            x_label: Some(format!("alternatives {}", profile.labels.join(", "))),
            y_label: Some("Choquet integral".into()),
            ..PlotConfig::default()
        };
        ctx.out.write(Some(svg), &plot_lines(&lines, &cfg)?)?;
    }
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn cmd_cluster(
    ctx: &Ctx,
    inputs: &[PathBuf],
    names: &[String],
    output: Option<&Path>,
    matrix: Option<&Path>,
    svg: Option<&Path>,
) -> Result<()> {
    let features = names.iter().map(|s| s.parse::<Feature>()).collect::<capgraph::Result<Vec<_>>>()?;
    let subset_level = features.iter().filter(|f| f.is_subset_level()).count();
    let fm = if subset_level == features.len() {
        let [path] = inputs else {
            bail!("subset features take exactly one measure file, got {}", inputs.len());
        };
        subset_features(&ctx.load_measure(path)?, &features, ctx.label_mode())?
    } else if subset_level == 0 {
        let measures = inputs.iter().map(|p| ctx.load_measure(p)).collect::<Result<Vec<_>>>()?;
        let full = measure_features(&measures, inputs.iter().map(|p| stem(p)).collect())?;
        let keep: Vec<usize> = features
            .iter()
            .map(|f| full.columns.iter().position(|c| c == f.name()).ok_or_else(|| anyhow!("unknown feature {f}")))
            .collect::<Result<_>>()?;
        capgraph::analysis::FeatureMatrix::new(
            full.row_ids.clone(),
            keep.iter().map(|&j| full.columns[j].clone()).collect(),
            full.data.iter().map(|row| keep.iter().map(|&j| row[j]).collect()).collect(),
        )?
    } else {
        bail!("cannot mix subset features with measure-level features (entropy, orness)");
    };
    let dendrogram = hierarchical_cluster(&fm)?;
    ctx.out.write(output, &dendrogram.to_csv(ctx.global.full_precision))?;
    if let Some(matrix) = matrix {
        ctx.out.write(Some(matrix), &fm.to_csv(ctx.global.full_precision))?;
    }
    if let Some(svg) = svg {
        let cfg = PlotConfig {
            title: Some(format!("Average-linkage clustering on {}", fm.columns.join(", "))),
            ..PlotConfig::default()
        };
        ctx.out.write(Some(svg), &plot_heatmap(&fm, &dendrogram, &cfg)?)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_summarize(
    ctx: &Ctx,
    inputs: &[PathBuf],
    random: Option<usize>,
    k_interactive: Option<usize>,
    n: usize,
    k: usize,
    seed: Option<u64>,
    output: Option<&Path>,
    svg: Option<&Path>,
) -> Result<()> {
    let mut named: Vec<(String, FuzzyMeasure)> = Vec::new();
    for p in inputs {
        named.push((stem(p), ctx.load_measure(p)?));
    }
    if let (Some(count), Some(seed)) = (random, seed) {
        for (j, mu) in random_batch(&GeneratorConfig::new(n, seed, count)?)?.into_iter().enumerate() {
            named.push((format!("random_{:03}", j + 1), mu));
        }
    }
    if let (Some(count), Some(seed)) = (k_interactive, seed) {
        for j in 0..count {
            let mu = random_k_interactive(n, k, derive_seed(seed, random.unwrap_or(0) + j))?;
            named.push((format!("interactive_{:03}", j + 1), mu));
        }
    }
    if named.is_empty() {
        bail!("nothing to summarize: pass measure files, --random or --k-interactive");
    }
    let mut rows = Vec::with_capacity(named.len());
    let mut points = Vec::with_capacity(named.len());
    for (id, mu) in &named {
        let r = measure_summary(mu, ctx.global.tol)?;
        points.push((r.summary.entropy, r.summary.orness));
        rows.push(vec![
            id.clone(),
            mu.n().to_string(),
            ctx.num(r.summary.entropy),
            ctx.num(r.summary.orness),
            r.additive.to_string(),
            r.symmetric.to_string(),
            r.supermodular.to_string(),
            r.submodular.to_string(),
            r.family.additivity_order.to_string(),
            r.family.interactive.map_or_else(String::new, |(k, _)| k.to_string()),
        ]);
    }
    let header = [
        "id",
        "n",
        "entropy",
        "orness",
        "additive",
        "symmetric",
        "supermodular",
        "submodular",
        "additivity_order",
        "interactive_k",
    ];
    ctx.out.write(output, &csv_text(&header, rows))?;
    if let Some(svg) = svg {
        let max_n = named.iter().map(|(_, mu)| mu.n()).max().unwrap_or(2);
        let cfg = PlotConfig {
            title: Some(format!("Entropy and orness of {} measures", named.len())),
            x_label: Some("entropy".into()),
            y_label: Some("orness".into()),
            ..PlotConfig::default()
        };
        let labels: Vec<String> = named.iter().map(|(id, _)| id.clone()).collect();
        let plot = plot_scatter(&points, &labels, (0.0, (max_n as f64).ln()), (0.0, 1.0), &cfg)?;
        ctx.out.write(Some(svg), &plot)?;
    }
    Ok(())
}
