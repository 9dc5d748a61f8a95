use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use gdesign::bounds::{check_theorem, growth_profile, BoundCertificate, CheckOptions, GrowthProfile};
use gdesign::catalog::{catalog_get, CATALOG};
use gdesign::design::{design_strength, Design, DesignReport, EqualWeightScorer};
use gdesign::fixtures::{all_claims, claim, reproduce_claim, ClaimOutcome};
use gdesign::graph::{
    from_graph6, pairwise_distance_sum, parse_edge_list, parse_lcf, to_dot, Graph, VertexSubset,
};
use gdesign::search::{
    brute_force, default_heat_steps, heat_local_search, heuristic_distance_search, multi_seed,
    BruteForceOptions, SearchResult, DEFAULT_BUDGET, DEFAULT_WITNESS_CAP,
};
use gdesign::spectral::{ClassBasis, SpectralCheck, Spectrum, SpectrumExport, Tolerances};
use gdesign::weighted::{find_minor_design, solve_weights, WeightedSolution, DEFAULT_EPS_SING};
use gdesign::Error;

/// Set when the JSON report goes to stdout; the summary then goes to stderr.
static JSON_ON_STDOUT: AtomicBool = AtomicBool::new(false);

macro_rules! say {
    ($($t:tt)*) => {
        if JSON_ON_STDOUT.load(Ordering::Relaxed) {
            eprintln!($($t)*)
        } else {
            println!($($t)*)
        }
    };
}

#[derive(Parser)]
#[command(name = "gdesign", version, about = "Find and verify graphical designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in graphs with their invariants.
    Catalog(CatalogArgs),
    /// Eigenvalues, frequency classes and solver checks.
    Spectrum(SpectrumArgs),
    /// Strength of a design and its growth-bound certificate.
    Verify(VerifyArgs),
    /// Search equal-weight designs of a given size.
    Search {
        #[command(subcommand)]
        method: SearchMethod,
    },
    /// Neighbourhood growth of a design against the lower bounds.
    Bound(BoundArgs),
    /// Weighted designs from eigenvector minors.
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// Re-run every reference figure and table claim.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
enum SearchMethod {
    /// Exhaustive search over all subsets.
    Brute(BruteArgs),
    /// Pairwise-distance ascent from random starts.
    Distance(DistanceArgs),
    /// Heat-kernel collision descent from random starts.
    Heat(HeatArgs),
}

#[derive(Subcommand)]
enum WeightsAction {
    /// Weights on a given subset for given eigenfunction positions.
    Solve(SolveArgs),
    /// k vertices and weights integrating the first k eigenfunctions.
    Minor(MinorArgs),
}

#[derive(Args, Clone)]
#[group(id = "source", required = true, multiple = false)]
struct GraphSource {
    /// Catalog graph name.
    #[arg(long)]
    graph: Option<String>,
    /// LCF code such as "[5,-9,7,-7,9,-5]^4".
    #[arg(long)]
    lcf: Option<String>,
    /// Edge-list file ("n m" header, one "u v" per line).
    #[arg(long)]
    edgelist: Option<PathBuf>,
    /// File holding one graph6 string.
    #[arg(long)]
    graph6: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    eps_eig: f64,
    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    eps_deg: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    eps_int: f64,
}

impl TolArgs {
    fn get(self) -> Tolerances {
        Tolerances { eps_eig: self.eps_eig, eps_deg: self.eps_deg, eps_int: self.eps_int }
    }
}

#[derive(Args, Clone)]
struct Output {
    /// Write the JSON report here ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// 0-based vertex indices, comma separated.
    #[arg(long)]
    subset: String,
    /// Weight 1/|W| on every vertex (the default).
    #[arg(long, conflicts_with = "weights")]
    equal_weights: bool,
    /// One weight per subset vertex in subset order; fractions such as 1/3 allowed.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    tol: TolArgs,
    /// Include eigenvectors in the JSON report.
    #[arg(long)]
    vectors: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    design: DesignArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Exit 1 unless the design reaches this strength.
    #[arg(long)]
    expect_k: Option<usize>,
    /// Write a DOT drawing with the design vertices marked.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct BruteArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    size: usize,
    /// Largest number of subsets to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Largest number of witnesses to keep.
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
    #[command(flatten)]
    tol: TolArgs,
    /// Write a DOT drawing of the first witness.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LocalArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    size: usize,
    /// First seed; runs use seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of seeded runs.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    common: LocalArgs,
}

#[derive(Args)]
struct HeatArgs {
    #[command(flatten)]
    common: LocalArgs,
    /// Diffusion steps; defaults to half the diameter, rounded up.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    design: DesignArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Use this lambda instead of the verified threshold.
    #[arg(long)]
    lambda: Option<f64>,
    /// Evaluate on a non-regular graph anyway.
    #[arg(long)]
    allow_non_regular: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    subset: String,
    /// Eigenfunction positions in frequency order (0 = constant).
    #[arg(long)]
    targets: String,
    #[arg(long, default_value_t = DEFAULT_EPS_SING, value_parser = positive)]
    eps_sing: f64,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct MinorArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_EPS_SING, value_parser = positive)]
    eps_sing: f64,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Only these claims (e.g. fig-2,table-gosset).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    out: Output,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

/// Failures that decide the exit status.
enum Failure {
    Usage(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(Error::Parameter(e.to_string()))
    }
}

type Run = std::result::Result<(), Failure>;

fn load_graph(src: &GraphSource) -> Result<(String, Graph), Failure> {
    if let Some(name) = &src.graph {
        return Ok((name.clone(), catalog_get(name)?));
    }
    if let Some(code) = &src.lcf {
        return Ok((format!("lcf {code}"), parse_lcf(code)?.build()?));
    }
    if let Some(path) = &src.edgelist {
        let text = std::fs::read_to_string(path)?;
        return Ok((path.display().to_string(), parse_edge_list(&text)?));
    }
    if let Some(path) = &src.graph6 {
        let text = std::fs::read_to_string(path)?;
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        return Ok((path.display().to_string(), from_graph6(line.trim())?));
    }
    Err(Failure::Usage(Error::Parameter("no graph source given".into())))
}

fn parse_weight(t: &str) -> Result<f64, Error> {
    let bad = || Error::Parameter(format!("bad weight `{t}`"));
    match t.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0.0 {
                return Err(bad());
            }
            Ok(a / b)
        }
        None => t.trim().parse().map_err(|_| bad()),
    }
}

fn build_design(n: usize, args: &DesignArgs) -> Result<Design, Error> {
    let raw: Vec<usize> = args
        .subset
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parameter(format!("bad vertex index `{t}`"))))
        .collect::<Result<_, _>>()?;
    let subset = VertexSubset::new(n, raw.iter().copied())?;
    let Some(text) = &args.weights else {
        return Ok(Design::equal(subset));
    };
    let given: Vec<f64> = text.split(',').map(parse_weight).collect::<Result<_, _>>()?;
    if given.len() != raw.len() {
        return Err(Error::DimensionMismatch { expected: raw.len(), got: given.len() });
    }
    // Weights follow the order the vertices were given in; the subset is sorted.
    let weights = subset
        .members()
        .iter()
        .map(|v| given[raw.iter().position(|r| r == v).unwrap()])
        .collect();
    Design::weighted(subset, weights)
}

fn basis_of(g: &Graph, tol: Tolerances) -> Result<(Spectrum, ClassBasis), Error> {
    let s = Spectrum::of(g, tol.eps_eig)?;
    let b = ClassBasis::new(&s, tol.eps_deg);
    Ok((s, b))
}

fn emit<T: Serialize>(out: &Output, value: &T) -> Run {
    let Some(path) = &out.json else {
        return Ok(());
    };
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    if path == Path::new("-") {
        print!("{text}");
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn write_dot(path: Option<&PathBuf>, g: &Graph, w: Option<&VertexSubset>) -> Run {
    if let Some(p) = path {
        std::fs::write(p, to_dot(g, w))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GraphSummary {
    source: String,
    n: usize,
    m: usize,
    regular_degree: Option<usize>,
}

fn summary(source: String, g: &Graph) -> GraphSummary {
    GraphSummary { source, n: g.n(), m: g.edge_count(), regular_degree: g.regular_degree() }
}

fn catalog(args: CatalogArgs) -> Run {
    let mut rows = Vec::new();
    say!("{:<22} {:>5} {:>5} {:>6} {:>5}  construction", "name", "n", "m", "degree", "girth");
    for e in CATALOG {
        let i = e.invariants;
        say!("{:<22} {:>5} {:>5} {:>6} {:>5}  {}", e.name, i.order, i.size, i.degree, i.girth, e.construction());
        rows.push(json!({
            "name": e.name,
            "order": i.order,
            "size": i.size,
            "degree": i.degree,
            "girth": i.girth,
            "construction": e.construction(),
        }));
    }
    emit(&args.out, &json!({ "graphs": rows }))
}

#[derive(Serialize)]
struct SpectrumOutput {
    graph: GraphSummary,
    tolerances: Tolerances,
    spectrum: SpectrumExport,
    check: SpectralCheck,
    check_passed: bool,
}

fn spectrum(args: SpectrumArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let s = Spectrum::of(&g, tol.eps_eig)?;
    let export = s.export(tol.eps_deg, args.vectors);
    let check = s.check(&g);
    let passed = check.passes(g.n(), tol.eps_eig);
    say!("{name}: n = {}, {} frequency classes{}", g.n(), export.classes.len(), if export.ambiguous { " (ambiguous gap)" } else { "" });
    for c in &export.classes {
        say!("  frequency {:.12}  dimension {}", c.frequency, c.dimension);
    }
    say!("solver checks {}", if passed { "pass" } else { "FAIL" });
    emit(
        &args.out,
        &SpectrumOutput { graph: summary(name, &g), tolerances: tol, spectrum: export, check, check_passed: passed },
    )?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("spectral checks failed: {check:?}")))
    }
}

#[derive(Serialize)]
struct VerifyOutput {
    graph: GraphSummary,
    tolerances: Tolerances,
    subset: VertexSubset,
    weights: Vec<f64>,
    equal_weights: bool,
    report: DesignReport,
    pairwise_distance_sum: u64,
    certificate: Option<BoundCertificate>,
    /// Why no certificate was produced.
    certificate_skipped: Option<String>,
}

fn certificate_or_reason(
    g: &Graph,
    basis: &ClassBasis,
    d: &Design,
    eps_int: f64,
    opts: CheckOptions,
) -> Result<(Option<BoundCertificate>, Option<String>), Error> {
    match check_theorem(g, basis, d, eps_int, opts) {
        Ok(c) => Ok((Some(c), None)),
        Err(e @ (Error::NonPositiveWeights | Error::NonRegular { .. })) => Ok((None, Some(e.to_string()))),
        Err(e) => Err(e),
    }
}

fn verify(args: VerifyArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let d = build_design(g.n(), &args.design)?;
    let (_, basis) = basis_of(&g, tol)?;
    let report = design_strength(&basis, &d, tol.eps_int)?;
    let (certificate, certificate_skipped) = certificate_or_reason(&g, &basis, &d, tol.eps_int, CheckOptions::default())?;
    say!(
        "{name}: W = {{{}}}  K = {}  K_min = {}  lambda* = {:.12}",
        d.subset(),
        report.k,
        report.k_min,
        report.lambda_star
    );
    match (&certificate, &certificate_skipped) {
        (Some(c), _) => say!("growth bounds {}", if c.passed { "hold" } else { "FAIL" }),
        (None, Some(why)) => say!("growth bounds not evaluated: {why}"),
        _ => {}
    }
    write_dot(args.dot.as_ref(), &g, Some(d.subset()))?;
    let out = VerifyOutput {
        graph: summary(name, &g),
        tolerances: tol,
        subset: d.subset().clone(),
        weights: d.weights().to_vec(),
        equal_weights: d.is_equal_weights(),
        pairwise_distance_sum: pairwise_distance_sum(&g, d.subset()),
        report,
        certificate,
        certificate_skipped,
    };
    emit(&args.out, &out)?;
    if out.certificate.as_ref().is_some_and(|c| !c.passed) {
        return Err(Failure::Verification("growth bound violated".into()));
    }
    if let Some(want) = args.expect_k.filter(|&want| out.report.k < want) {
        return Err(Failure::Verification(format!("K = {} is below the expected {want}", out.report.k)));
    }
    Ok(())
}

#[derive(Serialize)]
struct SearchOutput {
    graph: GraphSummary,
    tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    result: SearchResult,
    /// Full report of the first witness.
    best: DesignReport,
    verified: bool,
}

#[allow(clippy::too_many_arguments)]
fn finish_search(
    name: String,
    g: &Graph,
    basis: &ClassBasis,
    tol: Tolerances,
    steps: Option<usize>,
    result: SearchResult,
    dot: Option<&PathBuf>,
    out: &Output,
) -> Run {
    let first = result.witnesses[0].clone();
    let best = design_strength(basis, &Design::equal(first.clone()), tol.eps_int)?;
    let verified = result.verify(basis, tol.eps_int);
    say!(
        "{name}: {} search, size {}: best K = {} ({} witnesses, {} subsets examined)",
        result.method, result.size, result.best_k, result.witness_count, result.subsets_examined
    );
    say!("first witness {{{first}}}  K_min = {}  lambda* = {:.12}", best.k_min, best.lambda_star);
    write_dot(dot, g, Some(&first))?;
    emit(out, &SearchOutput { graph: summary(name, g), tolerances: tol, steps, result, best, verified })?;
    if verified {
        Ok(())
    } else {
        Err(Failure::Verification("a witness failed re-verification".into()))
    }
}

fn search_brute(args: BruteArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let (_, basis) = basis_of(&g, tol)?;
    let opts = BruteForceOptions { budget: args.budget, witness_cap: args.witness_cap.max(1) };
    let result = brute_force(&basis, args.size, tol.eps_int, opts)?;
    finish_search(name, &g, &basis, tol, None, result, args.dot.as_ref(), &args.out)
}

fn search_local(args: LocalArgs, steps: Option<Option<usize>>) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let (_, basis) = basis_of(&g, tol)?;
    let scorer = EqualWeightScorer::new(&basis, tol.eps_int);
    let steps = steps.map(|s| s.unwrap_or_else(|| default_heat_steps(&g)));
    let seeds: Vec<u64> = (0..args.runs.max(1)).map(|i| args.seed.wrapping_add(i)).collect();
    let result = multi_seed(&seeds, DEFAULT_WITNESS_CAP, |seed| match steps {
        Some(t) => heat_local_search(&g, &scorer, args.size, t, seed, args.max_iters),
        None => heuristic_distance_search(&g, &scorer, args.size, seed, args.max_iters),
    })?;
    finish_search(name, &g, &basis, tol, steps, result, args.dot.as_ref(), &args.out)
}

#[derive(Serialize)]
struct BoundOutput {
    graph: GraphSummary,
    tolerances: Tolerances,
    subset: VertexSubset,
    weights: Vec<f64>,
    profile: GrowthProfile,
    certificate: BoundCertificate,
}

fn bound(args: BoundArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let d = build_design(g.n(), &args.design)?;
    let (_, basis) = basis_of(&g, tol)?;
    let opts = CheckOptions { allow_non_regular: args.allow_non_regular, lambda_override: args.lambda };
    let certificate = check_theorem(&g, &basis, &d, tol.eps_int, opts)?;
    let profile = growth_profile(&g, d.subset());
    say!("{name}: lambda = {:.12} ({}){}", certificate.lambda, certificate.lambda_source, if certificate.vacuous { ", vacuous" } else { "" });
    say!("{:>6} {:>8} {:>12} {:>12} {:>12}", "radius", "observed", "general", "equal", "sharp");
    for r in &certificate.rows {
        let eq = r.equal_weight.map_or("-".to_string(), |e| format!("{e:.4}"));
        say!("{:>6} {:>8} {:>12.4} {:>12} {:>12.4}", r.radius, r.observed, r.general, eq, r.sharp);
    }
    say!("growth bounds {}", if certificate.passed { "hold" } else { "FAIL" });
    let passed = certificate.passed;
    emit(
        &args.out,
        &BoundOutput {
            graph: summary(name, &g),
            tolerances: tol,
            subset: d.subset().clone(),
            weights: d.weights().to_vec(),
            profile,
            certificate,
        },
    )?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("growth bound violated".into()))
    }
}

#[derive(Serialize)]
struct WeightsOutput {
    graph: GraphSummary,
    tolerances: Tolerances,
    eps_sing: f64,
    solution: WeightedSolution,
    /// `residual <= eps_int`.
    verified: bool,
}

fn finish_weights(name: String, g: &Graph, tol: Tolerances, eps_sing: f64, sol: WeightedSolution, out: &Output) -> Run {
    let verified = sol.residual <= tol.eps_int;
    say!(
        "{name}: W = {{{}}}  targets {:?}  residual {:.3e}  rcond {:.3e}{}",
        sol.subset,
        sol.eigen_positions,
        sol.residual,
        sol.rcond,
        if sol.all_weights_positive { "  positive" } else { "" }
    );
    say!("weights {:?}", sol.weights);
    emit(out, &WeightsOutput { graph: summary(name, g), tolerances: tol, eps_sing, solution: sol, verified })?;
    if verified {
        Ok(())
    } else {
        Err(Failure::Verification("weighted residual above eps_int".into()))
    }
}

fn weights_solve(args: SolveArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let s = Spectrum::of(&g, tol.eps_eig)?;
    let w = VertexSubset::parse(g.n(), &args.subset)?;
    let targets: Vec<usize> = args
        .targets
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parameter(format!("bad target `{t}`"))))
        .collect::<Result<_, _>>()?;
    let sol = solve_weights(&s, &w, &targets, args.eps_sing)?;
    finish_weights(name, &g, tol, args.eps_sing, sol, &args.out)
}

fn weights_minor(args: MinorArgs) -> Run {
    let tol = args.tol.get();
    let (name, g) = load_graph(&args.source)?;
    let s = Spectrum::of(&g, tol.eps_eig)?;
    let sol = find_minor_design(&s, args.k, args.eps_sing)?;
    finish_weights(name, &g, tol, args.eps_sing, sol, &args.out)
}

#[derive(Serialize)]
struct ReproduceOutput {
    tolerances: Tolerances,
    claims: Vec<ClaimOutcome>,
    passed: bool,
}

fn reproduce(args: ReproduceArgs) -> Run {
    let tol = args.tol.get();
    let selected: Vec<_> = if args.only.is_empty() {
        all_claims().collect()
    } else {
        args.only
            .iter()
            .map(|l| claim(l).ok_or_else(|| Error::Parameter(format!("unknown claim `{l}`"))))
            .collect::<Result<_, _>>()?
    };
    say!(
        "{:<24} {:<22} {:>4} {:>7} {:>6} {:>9} {:<15} {:>6}",
        "claim", "graph", "size", "claimed", "best K", "K_min", "agreement", "status"
    );
    let mut claims = Vec::new();
    for c in selected {
        let o = reproduce_claim(c, tol)?;
        let status = if o.passed() { "pass" } else { "FAIL" };
        let agreement = serde_json::to_value(o.agreement).unwrap();
        say!(
            "{:<24} {:<22} {:>4} {:>7} {:>6} {:>9} {:<15} {:>6}",
            o.label,
            o.graph,
            o.size,
            o.claimed_k,
            o.best_k,
            format!("{}..{}", o.best_k_min.0, o.best_k_min.1),
            agreement.as_str().unwrap(),
            status
        );
        claims.push(o);
    }
    let passed = claims.iter().all(ClaimOutcome::passed);
    emit(&args.out, &ReproduceOutput { tolerances: tol, claims, passed })?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("some claims did not reproduce".into()))
    }
}

fn error_json(code: &str, message: &str, exit: u8) -> Value {
    json!({ "error": { "code": code, "message": message }, "exit_code": exit })
}

fn json_target(cmd: &Command) -> Option<&Output> {
    match cmd {
        Command::Catalog(a) => Some(&a.out),
        Command::Spectrum(a) => Some(&a.out),
        Command::Verify(a) => Some(&a.out),
        Command::Search { method: SearchMethod::Brute(a) } => Some(&a.out),
        Command::Search { method: SearchMethod::Distance(a) } => Some(&a.common.out),
        Command::Search { method: SearchMethod::Heat(a) } => Some(&a.common.out),
        Command::Bound(a) => Some(&a.out),
        Command::Weights { action: WeightsAction::Solve(a) } => Some(&a.out),
        Command::Weights { action: WeightsAction::Minor(a) } => Some(&a.out),
        Command::Reproduce(a) => Some(&a.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = json_target(&cli.command).cloned();
    if out.as_ref().and_then(|o| o.json.as_deref()) == Some(Path::new("-")) {
        JSON_ON_STDOUT.store(true, Ordering::Relaxed);
    }
    let result = match cli.command {
        Command::Catalog(a) => catalog(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => verify(a),
        Command::Search { method: SearchMethod::Brute(a) } => search_brute(a),
        Command::Search { method: SearchMethod::Distance(a) } => search_local(a.common, None),
        Command::Search { method: SearchMethod::Heat(a) } => search_local(a.common, Some(a.steps)),
        Command::Bound(a) => bound(a),
        Command::Weights { action: WeightsAction::Solve(a) } => weights_solve(a),
        Command::Weights { action: WeightsAction::Minor(a) } => weights_minor(a),
        Command::Reproduce(a) => reproduce(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error [{}]: {e}", e.code());
            if let Some(out) = out {
                let _ = emit(&out, &error_json(e.code(), &e.to_string(), 2));
            }
            ExitCode::from(2)
        }
    }
}
