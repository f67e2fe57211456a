use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use rainbowlab::danger::audit_whp_lemmas;
use rainbowlab::experiments::corollary::CorollaryParams;
use rainbowlab::experiments::{
    run_corollary_experiment, run_hitting_experiment, run_random_k_coloring_experiment, trial_rng, CsvRow,
    ExperimentConfig, GraphSource, HittingParams, Report,
};
use rainbowlab::io;
use rainbowlab::oracle::{rc_at_most_2, rc_exact_with_witness, OracleBudget, Rc2Answer, RcValue};
use rainbowlab::{
    audit_property_m, build_two_round, gen_gnp, gen_weighted_process, recolor as run_recolor, verify_rc2_coloring,
    Diameter, Error, Result, TwoRoundParams,
};

use crate::{Common, Format, TwoRoundArgs};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

fn require_n(common: &Common) -> Result<usize> {
    common
        .n
        .ok_or_else(|| Error::Params("--n is required".into()))
}

fn config(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(require_n(common)?, common.trials, common.seed);
    cfg.threads = common.threads;
    cfg.validate()?;
    Ok(cfg)
}

/// Writes to `--out` when given, otherwise to stdout.
fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => io::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report<C, R, S>(common: &Common, report: &Report<C, R, S>) -> Result<()>
where
    C: serde::Serialize,
    R: serde::Serialize + CsvRow,
    S: serde::Serialize,
{
    let text = match common.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    emit(common, &text)
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn two_round_params(n: usize, args: &TwoRoundArgs) -> Result<TwoRoundParams> {
    let params = match (args.p1, args.p) {
        (Some(p1), Some(p)) => TwoRoundParams::with_probabilities(n, p1, p)?,
        _ => TwoRoundParams::new(n)?,
    };
    let params = params.with_d(args.d).with_eps(args.eps);
    params.validate()?;
    Ok(params)
}

fn out_dir(common: &Common) -> Result<PathBuf> {
    let dir = common
        .out
        .clone()
        .ok_or_else(|| Error::Params("--out DIR is required".into()))?;
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

pub fn gen(common: &Common, p: f64) -> Result<()> {
    let n = require_n(common)?;
    let g = gen_gnp(n, p, &mut trial_rng(common.seed, 0))?;
    emit(common, &io::graph_to_string(&g))
}

pub fn process(common: &Common) -> Result<()> {
    let n = require_n(common)?;
    if n == 0 {
        return Err(Error::Params("--n must be at least 1".into()));
    }
    let seq = gen_weighted_process(n, &mut trial_rng(common.seed, 0));
    emit(common, &io::process_to_string(&seq))
}

pub fn diam(common: &Common, graph: &Path) -> Result<()> {
    let g = io::read_graph(graph)?;
    let value = match g.diameter() {
        Diameter::Finite(d) => json!(d),
        Diameter::Infinite => json!("infinite"),
    };
    match common.format {
        Format::Json => emit(common, &to_json(&json!({ "n": g.n(), "m": g.m(), "diameter": value }))?),
        Format::Csv => emit(common, &format!("n,m,diameter\n{},{},{}\n", g.n(), g.m(), value.to_string().trim_matches('"'))),
    }
}

pub fn rc(common: &Common, graph: &Path, at_most_2: bool, budget: Option<u64>) -> Result<()> {
    let g = io::read_graph(graph)?;
    let mut b = OracleBudget::default();
    if let Some(max) = budget {
        b.max_colorings = max;
    }
    let write_witness = |col: &rainbowlab::EdgeColoring| -> Result<Option<String>> {
        match &common.out {
            Some(path) => {
                io::write_text(path, &io::coloring_to_string(col))?;
                Ok(Some(path.display().to_string()))
            }
            None => Ok(None),
        }
    };
    let result = if at_most_2 {
        match rc_at_most_2(&g, b)? {
            Rc2Answer::Yes(col) => json!({ "rc_at_most_2": true, "witness_file": write_witness(&col)? }),
            Rc2Answer::No => json!({ "rc_at_most_2": false, "witness_file": null }),
            Rc2Answer::BudgetExceeded => json!({ "rc_at_most_2": null, "budget_exceeded": true }),
        }
    } else {
        let (value, witness) = rc_exact_with_witness(&g, b)?;
        let file = match &witness {
            Some(col) => write_witness(col)?,
            None => None,
        };
        match value {
            RcValue::Finite(k) => json!({ "rc": k, "witness_file": file }),
            RcValue::Infinite => json!({ "rc": "infinite", "witness_file": null }),
            RcValue::BudgetExceeded { k } => json!({ "rc": null, "budget_exceeded_at_k": k }),
        }
    };
    print!("{}", to_json(&result)?);
    Ok(())
}

pub fn color2round(common: &Common, args: &TwoRoundArgs) -> Result<()> {
    let n = require_n(common)?;
    let params = two_round_params(n, args)?;
    let dir = out_dir(common)?;
    let out = build_two_round(&params, &mut trial_rng(common.seed, 0), None)?;
    io::write_text(&dir.join("g1.graph"), &io::graph_to_string(&out.g1))?;
    io::write_text(&dir.join("g1.coloring"), &io::coloring_to_string(&out.round1_coloring()))?;
    io::write_text(&dir.join("g2.graph"), &io::graph_to_string(&out.g2))?;
    io::write_text(&dir.join("g2.coloring"), &io::coloring_to_string(&out.coloring))?;
    io::write_text(&dir.join("fix_log.json"), &to_json(&out.fix_log)?)?;
    let summary = json!({
        "params": params,
        "p1": out.p1,
        "p2": out.p2,
        "g1_edges": out.g1.m(),
        "g2_edges": out.g2.m(),
        "round1_dangerous": out.round1_dangerous.len(),
        "round2_edges": out.round2_edges.len(),
        "targeted_fixes": out.fix_log.iter().filter(|f| f.target.is_some()).count(),
    });
    print!("{}", to_json(&summary)?);
    Ok(())
}

pub fn recolor(
    common: &Common,
    graph: &Path,
    subgraph: &Path,
    coloring: &Path,
    d: usize,
    trace: Option<&Path>,
) -> Result<()> {
    let g = io::read_graph(graph)?;
    let gsub = io::read_graph(subgraph)?;
    let col = io::read_coloring(coloring, &gsub)?;
    let outcome = run_recolor(&g, &gsub, &col, d)?;
    if let Some(path) = trace {
        io::write_text(path, &to_json(outcome.trace())?)?;
    }
    let mut witness_file = None;
    if let Some(c) = outcome.coloring() {
        if !verify_rc2_coloring(&g, c)? {
            return Err(Error::Invariant("recolour output fails verification".into()));
        }
        if let Some(path) = &common.out {
            io::write_text(path, &io::coloring_to_string(c))?;
            witness_file = Some(path.display().to_string());
        }
    }
    let summary = json!({
        "success": outcome.is_success(),
        "failure": outcome.failure(),
        "max_flags_per_vertex": outcome.trace().max_flags_per_vertex,
        "coloring_file": witness_file,
    });
    print!("{}", to_json(&summary)?);
    Ok(())
}

pub fn audit(common: &Common, graph: &Path, coloring: &Path, d: usize, lemmas_eps: Option<f64>) -> Result<()> {
    let g = io::read_graph(graph)?;
    let col = io::read_coloring(coloring, &g)?;
    let m = audit_property_m(&g, &col, d)?;
    let value = match lemmas_eps {
        Some(eps) => json!({ "property_m": m, "lemmas": audit_whp_lemmas(&g, &col, eps, d)? }),
        None => json!({ "property_m": m }),
    };
    emit(common, &to_json(&value)?)
}

fn hitting_params(n: usize, args: &TwoRoundArgs, exact_cutoff: usize, dir: Option<PathBuf>) -> Result<HittingParams> {
    let params = HittingParams {
        d: args.d,
        eps: args.eps,
        probabilities: args.p1.zip(args.p),
        exact_cutoff,
        certificate_dir: dir,
        ..HittingParams::default()
    };
    params.two_round_params(n)?;
    Ok(params)
}

pub fn certify(common: &Common, args: &TwoRoundArgs, exact_cutoff: usize) -> Result<()> {
    let cfg = config(common)?;
    let dir = out_dir(common)?;
    let params = hitting_params(cfg.n, args, exact_cutoff, Some(dir.clone()))?;
    let report = run_hitting_experiment(&cfg, &params)?;
    let (name, text) = match common.format {
        Format::Json => ("certify.json", report.to_json()?),
        Format::Csv => ("certify.csv", report.to_csv()?),
    };
    io::write_text(&dir.join(name), &text)?;
    print!("{}", to_json(&report.summary)?);
    Ok(())
}

pub fn exp_corollary(common: &Common, cs: Vec<f64>, certify_trials: usize, d: usize) -> Result<()> {
    let cfg = config(common)?;
    let params = CorollaryParams { cs, certify_trials, d };
    emit_report(common, &run_corollary_experiment(&cfg, &params)?)
}

pub fn exp_hitting(common: &Common, args: &TwoRoundArgs, exact_cutoff: usize, certificates: Option<PathBuf>) -> Result<()> {
    let cfg = config(common)?;
    let params = hitting_params(cfg.n, args, exact_cutoff, certificates)?;
    emit_report(common, &run_hitting_experiment(&cfg, &params)?)
}

pub fn exp_kcoloring(common: &Common, k: usize, omega: f64, graph: Option<&Path>) -> Result<()> {
    let source = match graph {
        Some(path) => GraphSource::Fixed {
            graph: io::read_graph(path)?,
            label: path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into()),
        },
        None => GraphSource::Gnp { omega },
    };
    let mut common = common.clone();
    if let (None, GraphSource::Fixed { graph, .. }) = (common.n, &source) {
        common.n = Some(graph.n());
    }
    let cfg = config(&common)?;
    emit_report(&common, &run_random_k_coloring_experiment(&cfg, k, &source)?)
}
