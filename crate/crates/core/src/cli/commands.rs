//! Subcommand bodies. Each returns a [`Table`]; `heatmap` and
//! `pyramid-sim` can also draw an SVG.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::svg::{render_svg, SvgCell, SvgScene};
use super::table::{num, text, Table};
use super::{config_err, parse_rational, CliError, CliResult, Command, Mode, Proposal, RunConfig};
use crate::chain::{identity_residual, sample_path, CentralKernel, HarmonicFn};
use crate::diagram::{
    finite_horizon_kernel, forward_level, DiagramModel, Dimensions, ExplicitDiagram, ToyOne, ToyTwo,
};
use crate::growth::{
    comb_model, crp_kernel, kreweras_counts, kreweras_diagnostics, pyramid_counts, pyramid_model,
    stirling_identity_residual, two_sided_kernel, CombHarmonic, CombModel, CrpLogGamma, FrameModel,
    PyramidState, TwoSidedModel, TwoSidedParams,
};
use crate::knuth::{
    knuth_estimate, pyramid_estimate, pyramid_merw_approx_sample, table1_experiment, ApproxParams,
    Grw, OutDegreePower, WalkRule, TABLE1_MAX_N,
};
use crate::lattice::{
    partitions, pascal_merw_harmonic, pascal_model, plancherel_kernel, polya_kernel, young_dim,
    PascalHarmonic, PascalModel, PascalParams, YoungModel,
};
use crate::rng::{stream, derive};
use crate::scalar::{factorial, Exact, Scalar, HARMONIC_TOL};
use crate::shape::{
    area_matched_distance, boundary_distance, curve_g, sample_pyramids, staircase, Heatmap,
    DISTANCE_SAMPLES,
};
use crate::tree::{
    bst_kernel, comb2_residual, comb3_residual, comb4_residual, idla_annealed_kernel,
    weighted_bst_merw, DaryTreeModel, LabelField, PreferentialWeights,
};

/// Largest level for which `kreweras` also counts the three-column frame
/// and checks it against the walk count.
const FRAME_CHECK_MAX: usize = 20;

pub(super) fn table(command: Command, cfg: &RunConfig) -> CliResult<Table> {
    match command {
        Command::Count => count(cfg),
        Command::Identities => identities(cfg),
        Command::Kernel => kernel(cfg),
        Command::Sample => sample(cfg),
        Command::Estimate => estimate(cfg),
        Command::Table1 => table1(cfg),
        Command::PyramidSim => Ok(pyramid_sim(cfg)?.0),
        Command::Heatmap => Ok(heatmap_table(&heatmap(cfg)?)),
        Command::ShapeDistance => shape_distance(cfg),
        Command::Kreweras => kreweras(cfg),
    }
}

pub(super) fn svg(command: Command, cfg: &RunConfig) -> CliResult<String> {
    let mut scene = match command {
        Command::Heatmap => heatmap_scene(&heatmap(cfg)?, cfg.grid)?,
        Command::PyramidSim => pyramid_sim(cfg)?.1,
        other => {
            return Err(config_err(format!("{} has no SVG output", other.name())));
        }
    };
    if cfg.overlay() {
        scene.curve = Some(curve_g(DISTANCE_SAMPLES)?.points);
    }
    render_svg(&scene)
}

// ---------------------------------------------------------------- parameters

/// Converts an exact rational into the working arithmetic.
fn conv<S: Scalar>(q: &Exact) -> S {
    let v = S::from_big(q.numer().magnitude()) / S::from_big(q.denom().magnitude());
    if q.is_negative() {
        S::zero() - v
    } else {
        v
    }
}

fn rational(value: &Option<String>, flag: &str) -> CliResult<Exact> {
    let s = value
        .as_deref()
        .ok_or_else(|| config_err(format!("--{flag} is required for this model")))?;
    parse_rational(s)
}

fn rational_or(value: &Option<String>, default: Exact) -> CliResult<Exact> {
    value.as_deref().map_or(Ok(default), parse_rational)
}

fn rational_list(values: &Option<Vec<String>>, flag: &str) -> CliResult<Vec<Exact>> {
    values
        .as_ref()
        .ok_or_else(|| config_err(format!("--{flag} is required")))?
        .iter()
        .map(|s| parse_rational(s))
        .collect()
}

fn arity(cfg: &RunConfig) -> u8 {
    cfg.d.unwrap_or(2)
}

fn pascal_params<S: Scalar>(cfg: &RunConfig) -> CliResult<PascalParams<S>> {
    let alpha = rational_or(&cfg.alpha, Exact::from_integer(1.into()))?;
    let beta = rational_or(&cfg.beta, Exact::from_integer(1.into()))?;
    Ok(PascalParams::new(conv(&alpha), conv(&beta))?)
}

fn pascal<S: Scalar>(cfg: &RunConfig) -> CliResult<CentralKernel<PascalModel<S>, PascalHarmonic<S>>> {
    let params = pascal_params::<S>(cfg)?;
    let phi = pascal_merw_harmonic(&params)?;
    Ok(CentralKernel::new(pascal_model(Some(params)), phi)?)
}

fn comb<S: Scalar>(cfg: &RunConfig) -> CliResult<CentralKernel<CombModel<S>, CombHarmonic<S>>> {
    let theta = rational_list(&cfg.theta, "theta")?;
    Ok(crate::growth::comb_kernel(theta.iter().map(conv).collect())?)
}

fn two_sided_params<S: Scalar>(cfg: &RunConfig) -> CliResult<TwoSidedParams<S>> {
    let half = Exact::new(1.into(), 2.into());
    let alpha = rational_or(&cfg.alpha, half.clone())?;
    let beta = rational_or(&cfg.beta, half)?;
    let theta0 = Exact::from_integer(1.into()) - &alpha - &beta;
    let right = match &cfg.theta {
        Some(_) => rational_list(&cfg.theta, "theta")?,
        None => Vec::new(),
    };
    Ok(TwoSidedParams::new(
        conv(&theta0),
        right.iter().map(conv).collect(),
        Vec::new(),
        conv(&alpha),
        conv(&beta),
    )?)
}

fn weights<S: Scalar>(cfg: &RunConfig) -> CliResult<(S, S)> {
    Ok((conv(&rational(&cfg.x, "x")?), conv(&rational(&cfg.y, "y")?)))
}

/// Binds `$k` to the central kernel named by `--model` in the arithmetic
/// chosen by `--mode`, then evaluates `$body`.
macro_rules! with_kernel {
    ($cfg:expr, $k:ident => $body:expr) => {{
        let cfg: &RunConfig = $cfg;
        match (cfg.model_name()?, cfg.mode()) {
            ("pascal", Mode::Exact) => { let $k = pascal::<Exact>(cfg)?; lift($body) }
            ("pascal", Mode::Float) => { let $k = pascal::<f64>(cfg)?; lift($body) }
            ("polya", Mode::Exact) => { let $k = polya_kernel(); lift($body) }
            ("young" | "plancherel", Mode::Exact) => { let $k = plancherel_kernel(); lift($body) }
            ("bst", Mode::Exact) => { let $k = bst_kernel::<Exact>(arity(cfg), None)?; lift($body) }
            ("bst", Mode::Float) => { let $k = bst_kernel::<f64>(arity(cfg), None)?; lift($body) }
            ("wbst", Mode::Exact) => {
                let (x, y) = weights::<Exact>(cfg)?;
                let $k = weighted_bst_merw(x, y)?;
                lift($body)
            }
            ("wbst", Mode::Float) => {
                let (x, y) = weights::<f64>(cfg)?;
                let $k = weighted_bst_merw(x, y)?;
                lift($body)
            }
            ("idla", Mode::Exact) => {
                let a = rational_list(&cfg.w, "w")?;
                let $k = idla_annealed_kernel::<Exact>(a)?;
                lift($body)
            }
            ("idla", Mode::Float) => {
                let a = rational_list(&cfg.w, "w")?;
                let $k = idla_annealed_kernel::<f64>(a.iter().map(conv).collect())?;
                lift($body)
            }
            ("comb", Mode::Exact) => { let $k = comb::<Exact>(cfg)?; lift($body) }
            ("comb", Mode::Float) => { let $k = comb::<f64>(cfg)?; lift($body) }
            ("crp", Mode::Exact) => {
                let $k = crp_kernel(rational(&cfg.gamma, "gamma")?)?;
                lift($body)
            }
            ("crp", Mode::Float) => {
                let g = conv::<f64>(&rational(&cfg.gamma, "gamma")?);
                let $k = CentralKernel::new(CombModel::<f64>::new(), CrpLogGamma::new(g)?)?;
                lift($body)
            }
            ("two-sided", Mode::Exact) => { let $k = two_sided_kernel(two_sided_params::<Exact>(cfg)?)?; lift($body) }
            ("two-sided", Mode::Float) => { let $k = two_sided_kernel(two_sided_params::<f64>(cfg)?)?; lift($body) }
            (m @ ("polya" | "young" | "plancherel"), Mode::Float) => {
                Err(config_err(format!("model {m} is available in exact mode only")))
            }
            (m, _) => Err(config_err(format!("model {m} has no closed-form central kernel"))),
        }
    }};
}

/// Binds `$m` to the diagram named by `--model` (exact weights).
macro_rules! with_model {
    ($cfg:expr, $m:ident => $body:expr) => {{
        let cfg: &RunConfig = $cfg;
        match cfg.model_name()? {
            "pyramid" => { let $m = pyramid_model(cfg.base)?; lift($body) }
            "frame" => { let $m = FrameModel; lift($body) }
            "pascal" => { let $m = pascal_model(Some(pascal_params::<Exact>(cfg)?)); lift($body) }
            "polya" => { let $m = pascal_model::<Exact>(None); lift($body) }
            "young" | "plancherel" => { let $m = YoungModel; lift($body) }
            "bst" => { let $m = DaryTreeModel::<Exact>::new(arity(cfg))?; lift($body) }
            "idla" => {
                let d = rational_list(&cfg.w, "w")?.len() as u8;
                let $m = DaryTreeModel::<Exact>::new(d)?;
                lift($body)
            }
            "wbst" => {
                let (x, y) = weights::<Exact>(cfg)?;
                let $m = DaryTreeModel::weighted(PreferentialWeights::binary(x, y)?);
                lift($body)
            }
            "comb" | "crp" => { let $m = comb_model(); lift($body) }
            "two-sided" => { let $m = TwoSidedModel::<Exact>::new(); lift($body) }
            "toy1" => { let $m = ToyOne; lift($body) }
            "toy2" => { let $m = ToyTwo; lift($body) }
            "sample" => { let $m = ExplicitDiagram::sample(); lift($body) }
            m => Err(config_err(format!("unknown model {m}"))),
        }
    }};
}

/// Lifts library and CLI results alike into a [`CliResult`].
fn lift<T, E: Into<CliError>>(r: Result<T, E>) -> CliResult<T> {
    r.map_err(Into::into)
}

fn scalar_cell<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        text(x)
    } else {
        num(x.to_f64())
    }
}

// ------------------------------------------------------------------- count

fn count(cfg: &RunConfig) -> CliResult<Table> {
    let n = cfg.need_n()?;
    let budget = cfg.budget();
    let value = if cfg.model_name()? == "pyramid" {
        let model = pyramid_model(cfg.base)?;
        pyramid_counts(&model, n, budget)?[n].to_string()
    } else {
        with_model!(cfg, m => {
            let dims = Dimensions::with_budget(&m, budget);
            dims.to_level(&m.root(), n).map(|v| v.to_string())
        })?
    };
    let mut t = Table::new(&["model", "n", "count"]);
    t.push(vec![text(cfg.model_name()?), Value::from(n), text(value)]);
    Ok(t)
}

// ------------------------------------------------------------- identities

/// Failure message when a checking command produced a row whose `passed`
/// column is not `true`.
pub(super) fn verdict(command: Command, t: &Table) -> Option<String> {
    if !matches!(command, Command::Identities | Command::Kreweras) {
        return None;
    }
    let passed = t.column("passed")?;
    let failures = t.rows.iter().filter(|r| r[passed] == Value::Bool(false)).count();
    (failures > 0).then(|| format!("{failures} row(s) failed their check"))
}

fn exact_row(kind: &str, n: usize, parameter: String, residual: &Exact) -> Vec<Value> {
    vec![
        text(kind),
        Value::from(n),
        text(parameter),
        text(residual),
        Value::Bool(residual.is_zero()),
    ]
}

fn combipower_row<M, H>(k: &CentralKernel<M, H>, cfg: &RunConfig, n: usize) -> CliResult<Vec<Value>>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    let r = identity_residual(k.model(), k.harmonic(), n, cfg.budget())?;
    let tol = cfg.tolerance.unwrap_or(HARMONIC_TOL);
    let passed = M::Weight::negligible(&r, &M::Weight::one(), tol);
    Ok(vec![
        text("combipower"),
        Value::from(n),
        text(k.harmonic().description()),
        scalar_cell(&r),
        Value::Bool(passed),
    ])
}

fn identities(cfg: &RunConfig) -> CliResult<Table> {
    let kind = cfg.kind.as_deref().ok_or_else(|| config_err("--kind is required"))?;
    let n = cfg.need_n()?;
    let budget = cfg.budget();
    let mut t = Table::new(&["kind", "n", "parameter", "residual", "passed"]);
    match kind {
        "stirling" => {
            let xs = match &cfg.x {
                Some(x) => vec![parse_rational(x)?],
                None => (1..=10).map(|x| Exact::from_integer(x.into())).collect(),
            };
            for x in xs {
                let r = stirling_identity_residual(n, &x, budget)?;
                t.push(exact_row(kind, n, format!("X={x}"), &r));
            }
        }
        "plancherel" => {
            let total: BigUint = partitions(n as u32).iter().map(|l| young_dim(l).pow(2)).sum();
            let r = Exact::from_integer(total.into()) - Exact::from_integer(factorial(n as u64).into());
            t.push(exact_row(kind, n, "sum dim^2 - n!".into(), &r));
        }
        "comb3" => {
            let d = arity(cfg);
            t.push(exact_row(kind, n, format!("d={d}"), &comb3_residual(d, n)?));
        }
        "comb4" => {
            let w = rational_list(&cfg.w, "w")?;
            let label = w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            t.push(exact_row(kind, n, format!("w=({label})"), &comb4_residual(&w, n)?));
        }
        "comb2" => {
            let d = arity(cfg);
            let seed = cfg.need_seed()?;
            let labels = LabelField::random_rational(d, n, 9, &mut stream(seed, 0));
            t.push(exact_row(kind, n, format!("d={d} seed={seed}"), &comb2_residual(&labels, n)?));
        }
        "combipower" => {
            let row = with_kernel!(cfg, k => combipower_row(&k, cfg, n))?;
            t.push(row);
        }
        other => return Err(config_err(format!("unknown identity kind {other}"))),
    }
    Ok(t)
}

// ----------------------------------------------------------------- kernel

fn central_rows<M, H>(k: &CentralKernel<M, H>, level: usize, budget: usize) -> CliResult<Table>
where
    M: DiagramModel,
    H: HarmonicFn<M::Vertex, Value = M::Weight>,
{
    let model = k.model();
    let layer = forward_level(model, &model.root(), level, None, budget)?;
    let mut t = Table::new(&["level", "from", "to", "probability"]);
    for x in layer.keys() {
        if k.harmonic().eval(x) <= M::Weight::zero() {
            continue;
        }
        for (y, p) in k.checked_transitions(x)? {
            t.push(vec![Value::from(level), text(x), text(&y), scalar_cell(&p)]);
        }
    }
    Ok(t)
}

fn horizon_rows<M: DiagramModel>(model: &M, level: usize, horizon: usize, budget: usize) -> CliResult<Table> {
    if horizon <= level {
        return Err(config_err("--horizon must exceed --n"));
    }
    let dims = Dimensions::with_budget(model, budget);
    let layer = forward_level(model, &model.root(), level, None, budget)?;
    let mut t = Table::new(&["level", "from", "to", "probability"]);
    for x in layer.keys() {
        if dims.to_level(x, horizon)?.is_zero() {
            continue;
        }
        for (y, p) in finite_horizon_kernel(&dims, x, horizon)?.transitions {
            t.push(vec![Value::from(level), text(x), text(&y), scalar_cell(&p)]);
        }
    }
    Ok(t)
}

/// Rows of the closed-form kernel at level `--n`; with `--horizon H` the
/// finite-horizon kernel `p_H` of any catalogued diagram instead.
fn kernel(cfg: &RunConfig) -> CliResult<Table> {
    let level = cfg.need_n()?;
    let budget = cfg.budget();
    match cfg.horizon {
        Some(h) => with_model!(cfg, m => horizon_rows(&m, level, h, budget)),
        None => with_kernel!(cfg, k => central_rows(&k, level, budget)),
    }
}

// ----------------------------------------------------------------- sample

fn sample(cfg: &RunConfig) -> CliResult<Table> {
    let steps = cfg.steps.or(cfg.n).ok_or_else(|| config_err("--steps is required"))?;
    let seed = cfg.need_seed()?;
    with_kernel!(cfg, k => {
        let path = sample_path(&k, steps, &mut stream(seed, 0))?;
        let mut t = Table::new(&["step", "vertex", "step_probability"]);
        for (i, v) in path.vertices.iter().enumerate() {
            let p = if i == 0 { 1.0 } else { path.step_probs[i - 1] };
            t.push(vec![Value::from(i), text(v), num(p)]);
        }
        Ok::<_, CliError>(t)
    })
}

// --------------------------------------------------------------- estimate

fn estimate(cfg: &RunConfig) -> CliResult<Table> {
    let n = cfg.need_n()?;
    let seed = cfg.need_seed()?;
    let samples = cfg.samples.unwrap_or(10_000);
    let proposal = cfg.proposal.unwrap_or(Proposal::Rw1);
    let result = if cfg.model_name()? == "pyramid" {
        let model = pyramid_model(cfg.base)?;
        let rule = match proposal {
            Proposal::Rw0 => WalkRule::Grw,
            Proposal::Rw1 => WalkRule::rw1(),
        };
        pyramid_estimate(&model, &PyramidState::single(), n, &rule, samples, seed)?
    } else {
        with_model!(cfg, m => {
            let root = m.root();
            match proposal {
                Proposal::Rw0 => knuth_estimate(&m, &root, n, &Grw, samples, seed),
                Proposal::Rw1 => knuth_estimate(&m, &root, n, &OutDegreePower::scheduled(), samples, seed),
            }
        })?
    };
    let mut t = Table::new(&["model", "n", "proposal", "N", "seed", "mean", "std", "log_mean"]);
    t.push(vec![
        text(cfg.model_name()?),
        Value::from(n),
        text(format!("{proposal:?}").to_lowercase()),
        Value::from(samples),
        Value::from(seed),
        num(result.mean),
        num(result.sample_std),
        num(result.log_mean),
    ]);
    Ok(t)
}

// ----------------------------------------------------------------- table1

fn table1(cfg: &RunConfig) -> CliResult<Table> {
    let n_max = cfg.n.unwrap_or(TABLE1_MAX_N);
    if n_max == 0 || n_max > TABLE1_MAX_N {
        return Err(config_err(format!("--n must lie in 1..={TABLE1_MAX_N}")));
    }
    let samples = cfg.samples.unwrap_or(10_000);
    let ns: Vec<usize> = (1..=n_max).collect();
    let rows = table1_experiment(&ns, samples, &[cfg.need_seed()?])?;
    let mut t = Table::new(&["n", "exact", "rw0_mean", "rw0_std", "rw1_mean", "rw1_std", "N", "seed"]);
    for r in rows {
        t.push(vec![
            Value::from(r.n),
            text(&r.exact),
            num(r.rw0_mean),
            num(r.rw0_std),
            num(r.rw1_mean),
            num(r.rw1_std),
            Value::from(r.samples),
            Value::from(r.seed),
        ]);
    }
    Ok(t)
}

// ------------------------------------------------------- pyramid sampling

struct ApproxRun {
    size: usize,
    params: ApproxParams,
    rule: WalkRule,
}

fn approx_run(cfg: &RunConfig) -> CliResult<ApproxRun> {
    let size = cfg.need_n()?;
    if size < 2 {
        return Err(config_err("--n (pyramid size) must be at least 2"));
    }
    let rule = match cfg.proposal.unwrap_or(Proposal::Rw1) {
        Proposal::Rw0 => WalkRule::Grw,
        Proposal::Rw1 => WalkRule::rw1(),
    };
    let params = ApproxParams {
        n: size - 1,
        depth: cfg.depth.unwrap_or(10),
        samples: cfg.samples.unwrap_or(100),
        seed: cfg.need_seed()?,
    };
    params.validate()?;
    Ok(ApproxRun { size, params, rule })
}

/// `--np` pyramids of `--n` boxes; pyramid `k` uses seed `derive(seed, k)`.
fn sampled_pyramids(cfg: &RunConfig) -> CliResult<(usize, Vec<PyramidState>)> {
    let run = approx_run(cfg)?;
    let model = pyramid_model(cfg.base)?;
    let count = cfg.np.unwrap_or(100);
    if count == 0 {
        return Err(config_err("--np must be at least 1"));
    }
    let states = sample_pyramids(
        |seed| {
            let params = ApproxParams { seed, ..run.params.clone() };
            Ok(pyramid_merw_approx_sample(&model, &run.rule, &params)?.sample.last().clone())
        },
        count,
        run.params.seed,
    )?;
    Ok((run.size, states))
}

fn box_cells(state: &PyramidState, n: usize, value: f64) -> Vec<SvgCell> {
    let mut h = Heatmap::empty(n);
    h.add(state);
    h.counts
        .keys()
        .map(|&(c, r)| {
            let (x0, x1, y0, y1) = h.cell_rect(c, r);
            SvgCell { x0, x1, y0, y1, value }
        })
        .collect()
}

fn pyramid_sim(cfg: &RunConfig) -> CliResult<(Table, SvgScene)> {
    let run = approx_run(cfg)?;
    let model = pyramid_model(cfg.base)?;
    let out = pyramid_merw_approx_sample(&model, &run.rule, &run.params)?;
    let mut t = Table::new(&["step", "state", "step_probability"]);
    for (i, v) in out.sample.vertices.iter().enumerate() {
        let p = if i == 0 { 1.0 } else { out.sample.step_probs[i - 1] };
        t.push(vec![Value::from(i), text(v), num(p)]);
    }
    let last = out.sample.last();
    let scene = SvgScene {
        cells: box_cells(last, run.size, 0.35),
        curve: None,
        outline: Some(staircase(last, run.size)),
    };
    Ok((t, scene))
}

fn heatmap(cfg: &RunConfig) -> CliResult<Heatmap> {
    let (n, states) = sampled_pyramids(cfg)?;
    let mut h = Heatmap::empty(n);
    for s in &states {
        h.add(s);
    }
    Ok(h)
}

fn heatmap_table(h: &Heatmap) -> Table {
    let mut t = Table::new(&["column", "row", "x", "y", "frequency"]);
    for &(c, r) in h.counts.keys() {
        let (x0, x1, y0, y1) = h.cell_rect(c, r);
        t.push(vec![
            Value::from(c),
            Value::from(r),
            num((x0 + x1) / 2.0),
            num((y0 + y1) / 2.0),
            num(h.frequency(c, r)),
        ]);
    }
    t
}

fn heatmap_scene(h: &Heatmap, grid: Option<usize>) -> CliResult<SvgScene> {
    let cells = match grid {
        None => h
            .counts
            .keys()
            .map(|&(c, r)| {
                let (x0, x1, y0, y1) = h.cell_rect(c, r);
                SvgCell { x0, x1, y0, y1, value: h.frequency(c, r) }
            })
            .collect(),
        Some(g) => {
            // smallest window, in steps of 1/4, holding every box
            let reach = h
                .counts
                .keys()
                .map(|&(c, r)| {
                    let (x0, x1, _, y1) = h.cell_rect(c, r);
                    x0.abs().max(x1.abs()).max(y1 / 2.0)
                })
                .fold(0.0, f64::max);
            let extent = (reach * 4.0).ceil() / 4.0;
            let raster = h.raster(g, extent)?;
            let side = raster.cell_side();
            let mut cells = Vec::new();
            for j in 0..g {
                for i in 0..g {
                    let v = raster.value(i, j);
                    if v > 0.0 {
                        let x0 = -extent + i as f64 * side;
                        let y0 = j as f64 * side;
                        cells.push(SvgCell { x0, x1: x0 + side, y0, y1: y0 + side, value: v });
                    }
                }
            }
            cells
        }
    };
    Ok(SvgScene { cells, curve: None, outline: None })
}

fn shape_distance(cfg: &RunConfig) -> CliResult<Table> {
    let (n, states) = sampled_pyramids(cfg)?;
    let seed = cfg.need_seed()?;
    let mut t = Table::new(&["sample", "seed", "distance", "area_matched_distance"]);
    let (mut sum, mut sum_matched) = (0.0, 0.0);
    for (k, s) in states.iter().enumerate() {
        let d = boundary_distance(s, n)?;
        let m = area_matched_distance(s, n)?;
        sum += d;
        sum_matched += m;
        t.push(vec![text(k), Value::from(derive(seed, k as u64)), num(d), num(m)]);
    }
    let count = states.len() as f64;
    t.push(vec![text("mean"), Value::Null, num(sum / count), num(sum_matched / count)]);
    Ok(t)
}

// --------------------------------------------------------------- kreweras

fn kreweras(cfg: &RunConfig) -> CliResult<Table> {
    let n_max = cfg.n.unwrap_or(FRAME_CHECK_MAX);
    if n_max == 0 {
        return Err(config_err("--n must be at least 1"));
    }
    let counts = kreweras_counts(n_max)?;
    let diag = kreweras_diagnostics(n_max)?;
    let frame = FrameModel;
    let dims = Dimensions::with_budget(&frame, cfg.budget());
    let mut t = Table::new(&["n", "count", "frame_count", "passed", "growth_ratio", "scaled"]);
    for d in &diag {
        let (frame_cell, passed) = if d.n <= FRAME_CHECK_MAX {
            let f = dims.to_level(&frame.root(), d.n)?;
            let same = f == Exact::from_integer(counts[d.n].clone().into());
            (text(&f), Value::Bool(same))
        } else {
            (Value::Null, Value::Null)
        };
        t.push(vec![
            Value::from(d.n),
            text(&counts[d.n]),
            frame_cell,
            passed,
            num(d.growth_ratio),
            num(d.scaled),
        ]);
    }
    Ok(t)
}
