use anyhow::{bail, Result};
use serde_json::{json, Value};

use epsap::colorings::{
    build_alternate_labeling, build_blowup_1d, build_lower_bound_coloring, build_simple_r2_coloring, minimal_k,
    params_eq5, verify_no_mono_ap, Coloring, LowerBoundConfig,
};
use epsap::density::{
    build_behrend_digit_set, build_cube_blowup, find_dense_translate, product_free_set, verify_cube_free,
    APkFreeProvider, ProviderMode, TranslateMode,
};
use epsap::formats::{parse_coloring, parse_grid, parse_set, write_coloring, write_grid, write_set};
use epsap::geometry::{index_grid_points, recognize_ap_set, recognize_cube, CubeVerdict, WitnessMD};
use epsap::search::{
    enumerate_eps_aps, exact_f, exact_f_exact_ap, exact_w, export_hypergraph, OutcomeKind, SearchLimits,
    SearchOutcome, Witness,
};
use epsap::Epsilon;

use crate::output::{deliver, read, Report};
use crate::{Cli, Command, Construct, Recognize, TranslateModeArg, Verify};

/// Runs the command; `Ok(true)` maps to exit 0, `Ok(false)` to exit 1.
pub fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.global.format();
    let (report, found) = match &cli.command {
        Command::Recognize(r) => recognize(r)?,
        Command::Construct(c) => construct(c, cli.global.seed)?,
        Command::Verify(v) => verify(v)?,
        Command::Wnumber { k, r, eps, nmax, node_cap } => {
            let out = exact_w(*k, *r, eps, *nmax, SearchLimits { node_cap: *node_cap, ..Default::default() })?;
            outcome_report(&out, eps)?
        }
        Command::Density { n, m, k, eps, node_cap, exact_ap } => {
            let limits = SearchLimits { node_cap: *node_cap, ..Default::default() };
            let out = if *exact_ap {
                if *m != 1 {
                    bail!("--exact-ap needs m = 1");
                }
                exact_f_exact_ap(*n, *k, limits)?
            } else {
                exact_f(*n, *m, *k, eps, limits)?
            };
            outcome_report(&out, eps)?
        }
        Command::Hypergraph { n, k, eps, as_format, output } => {
            let h = enumerate_eps_aps(*n, *k, eps, epsap::search::hypergraph::DEFAULT_EDGE_CAP)?;
            let body = export_hypergraph(&h, as_format)?;
            let printed = deliver(body, output.as_deref())?;
            let report = Report::new().field("n", *n).field("k", *k).field("eps", eps.to_string()).field("edges", h.edges.len());
            let report = match printed {
                Some(text) => report.text(text),
                None => report,
            };
            (report, true)
        }
        Command::Translate { a, x, n, mode, cap, max_samples } => {
            let a_pts = parse_set(&read(a)?)?;
            let x_pts = parse_set(&read(x)?)?;
            let m = a_pts.first().map_or(0, Vec::len);
            let mode = match mode {
                TranslateModeArg::Auto => TranslateMode::Auto { seed: cli.global.seed },
                TranslateModeArg::Deterministic => TranslateMode::Deterministic { cap: *cap },
                TranslateModeArg::Randomized => {
                    TranslateMode::Randomized { seed: cli.global.seed, max_samples: *max_samples }
                }
            };
            let r = find_dense_translate(&a_pts, &x_pts, *n, m, mode)?;
            let shift: Vec<String> = r.shift.iter().map(i64::to_string).collect();
            let report = Report::new()
                .field("shift", json!(r.shift))
                .field("shift_str", shift.join(" "))
                .field("count", r.count)
                .field("meets_bound", r.meets_bound)
                .field("shifts_examined", r.shifts_examined);
            (report, r.meets_bound)
        }
    };
    report.emit(fmt)?;
    Ok(found)
}

fn md_witness(w: &WitnessMD) -> Value {
    json!({
        "a": w.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "d": w.d.to_string(),
        "residual": w.residual.to_string(),
        "tol": w.tol.to_string(),
    })
}

fn recognize(r: &Recognize) -> Result<(Report, bool)> {
    match r {
        Recognize::Ap { points, eps } => {
            let w = recognize_ap_set(points, eps)?;
            let mut sorted = points.clone();
            sorted.sort_unstable();
            let text = match &w {
                Some(w) => format!("AP_{}({eps}): yes\na = {}\nd = {}\nmargin = {}\n", sorted.len(), w.a, w.d, w.margin),
                None => format!("AP_{}({eps}): no\n", sorted.len()),
            };
            let report = Report::new()
                .field("points", json!(sorted))
                .field("eps", eps.to_string())
                .field("is_ap", w.is_some())
                .serialized("witness", &w)?
                .text(text);
            Ok((report, w.is_some()))
        }
        Recognize::Cube { input, indexed, m, k, eps, tol } => {
            let text = read(input)?;
            let grid = if *indexed { parse_grid(&text, *m, *k)? } else { index_grid_points(&parse_set(&text)?, *m, *k, eps)? };
            let verdict = recognize_cube(&grid, eps, *tol)?;
            let (name, witness, found) = match &verdict {
                CubeVerdict::Feasible { witness } => ("feasible", md_witness(witness), true),
                CubeVerdict::Infeasible => ("infeasible", Value::Null, false),
                CubeVerdict::Boundary { best_gap } => ("boundary", json!({ "best_gap": best_gap.to_string() }), false),
            };
            let report = Report::new()
                .field("m", *m)
                .field("k", *k)
                .field("eps", eps.to_string())
                .field("verdict", name)
                .field("witness", witness);
            Ok((report, found))
        }
    }
}

fn coloring_output(c: &Coloring, eps: &Epsilon, k: usize, out: Option<&std::path::Path>, report: Report) -> Result<Report> {
    let body = write_coloring(c, eps, k);
    let report = report.field("n", c.n()).field("r", c.r()).field("colors", json!(c.as_slice()));
    Ok(match deliver(body, out)? {
        Some(text) => report.text(text),
        None => report,
    })
}

fn set_output(points: &[Vec<i64>], out: Option<&std::path::Path>, report: Report) -> Result<Report> {
    let body = write_set(points);
    let report = report.field("size", points.len()).field("points", json!(points));
    Ok(match deliver(body, out)? {
        Some(text) => report.text(text),
        None => report,
    })
}

fn construct(c: &Construct, seed: u64) -> Result<(Report, bool)> {
    let report = match c {
        Construct::Blowup { k, r, eps, out } => {
            let spec = build_blowup_1d(*k, *r, eps)?;
            let pts: Vec<Vec<i64>> = spec.one_based().into_iter().map(|x| vec![x]).collect();
            let base = Report::new().field("k", *k).field("r", *r).field("eps", eps.to_string()).field("t", spec.t);
            set_output(&pts, out.output.as_deref(), base)?
        }
        Construct::Alternate { r, block, t, offset, k, eps, out } => {
            let lab = build_alternate_labeling(*r, *block, *t, *offset)?;
            let base = Report::new().field("block", *block).field("t", *t).field("offset", *offset);
            coloring_output(&lab.to_coloring()?, eps, *k, out.output.as_deref(), base)?
        }
        Construct::SimpleR2 { k, eps, out } => {
            let col = build_simple_r2_coloring(*k)?;
            coloring_output(&col, eps, *k, out.output.as_deref(), Report::new().field("k", *k))?
        }
        Construct::Lowerbound { k, r, eps, eps0, max_len, params_only, out } => {
            let config = LowerBoundConfig { eps0: eps0.clone(), max_len: *max_len };
            let k = k.unwrap_or_else(|| minimal_k(*r, eps));
            if *params_only {
                let p = params_eq5(k, *r, eps, &config)?;
                Report::new().field("k", k).field("n1", p.n1).serialized("params", &p)?
            } else {
                let built = build_lower_bound_coloring(k, *r, eps, &config)?;
                let base = Report::new().field("k", k).serialized("params", &built.params)?;
                coloring_output(&built.coloring, eps, k as usize, out.output.as_deref(), base)?
            }
        }
        Construct::Behrend { eps, h, k, provider, one_based, out } => {
            let mode: ProviderMode = provider.parse()?;
            let provider = APkFreeProvider { mode, ..APkFreeProvider::default() };
            let (info, set) = build_behrend_digit_set(eps, *h, *k, &provider)?;
            let shift = i64::from(*one_based);
            let pts: Vec<Vec<i64>> = set.iter().map(|&x| vec![x + shift]).collect();
            let base = Report::new()
                .field("q", info.q)
                .field("h", info.h)
                .field("head", json!(info.head))
                .field("tail", json!(info.tail))
                .field("n", info.n);
            set_output(&pts, out.output.as_deref(), base)?
        }
        Construct::CubeBlowup { m, k, eps, alpha, cap, transversal, out } => {
            let spec = build_cube_blowup(*m, *k, eps, alpha, *cap)?;
            let base = Report::new().field("r", spec.r).field("t", spec.t).field("side", spec.side);
            if *transversal {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let grid = spec.random_transversal(&mut rng)?;
                let report = base.field("seed", seed).field("size", grid.points().len()).field("points", json!(grid.points()));
                match deliver(write_grid(&grid), out.output.as_deref())? {
                    Some(text) => report.text(text),
                    None => report,
                }
            } else {
                set_output(&spec.elements, out.output.as_deref(), base)?
            }
        }
        Construct::Product { input, m, n, out } => {
            let a = parse_set(&read(input)?)?;
            if a.iter().any(|p| p.len() != 1) {
                bail!("product needs a one-dimensional SET file");
            }
            let a: Vec<i64> = a.into_iter().map(|p| p[0]).collect();
            let s = product_free_set(&a, *m, *n)?;
            set_output(&s, out.output.as_deref(), Report::new().field("m", *m).field("n", *n))?
        }
    };
    Ok((report, true))
}

fn verify(v: &Verify) -> Result<(Report, bool)> {
    match v {
        Verify::Coloring { input, k, eps } => {
            let (c, header) = parse_coloring(&read(input)?)?;
            let k = k.unwrap_or(header.k);
            let eps = eps.clone().unwrap_or(header.eps);
            let mono = verify_no_mono_ap(&c, k, &eps);
            let text = match &mono {
                None => format!("no monochromatic AP_{k}({eps}) in {} elements\n", c.n()),
                Some(m) => format!("monochromatic AP_{k}({eps}) in color {}: {:?}\n", m.color, m.subset),
            };
            let report = Report::new()
                .field("n", c.n())
                .field("k", k)
                .field("eps", eps.to_string())
                .field("good", mono.is_none())
                .serialized("monochromatic", &mono)?
                .text(text);
            Ok((report, mono.is_none()))
        }
        Verify::Set { input, k, eps } => {
            let pts = parse_set(&read(input)?)?;
            let m = pts.first().map_or(1, Vec::len);
            let found: Option<Value> = if m == 1 {
                let xs: Vec<i64> = pts.iter().map(|p| p[0]).collect();
                epsap::colorings::first_eps_ap(&xs, *k, eps)
                    .map(|(s, w)| json!({ "points": s, "witness": serde_json::to_value(w).unwrap() }))
            } else {
                verify_cube_free(&pts, m, *k, eps).map(|(g, w)| json!({ "points": g.points(), "witness": md_witness(&w) }))
            };
            let report = Report::new()
                .field("size", pts.len())
                .field("m", m)
                .field("k", *k)
                .field("eps", eps.to_string())
                .field("free", found.is_none())
                .field("structure", found.clone().unwrap_or(Value::Null));
            Ok((report, found.is_none()))
        }
    }
}

fn outcome_report(out: &SearchOutcome, eps: &Epsilon) -> Result<(Report, bool)> {
    let kind = match out.kind {
        OutcomeKind::Value => "value",
        OutcomeKind::LowerBoundOnly => "lower_bound_only",
    };
    let mut text = format!("{kind}: {}\nnodes: {}\n", out.value, out.stats.nodes);
    if let Some(Witness::Set(s)) = &out.witness {
        let cells: Vec<String> = s.iter().map(|p| p.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
        text += &format!("witness: {}\n", cells.join(", "));
    }
    if let Some(Witness::Coloring(c)) = &out.witness {
        let cells: String = c.as_slice().iter().map(u8::to_string).collect();
        text += &format!("witness: {cells}\n");
    }
    let report = Report::new()
        .field("kind", kind)
        .field("value", out.value)
        .field("eps", eps.to_string())
        .field("nodes", out.stats.nodes)
        .serialized("witness", &out.witness)?
        .text(text);
    Ok((report, out.kind == OutcomeKind::Value))
}
