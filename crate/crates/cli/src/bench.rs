use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use icr_core::forge::{connected_graphs, generate, SimpleGraph};
use icr_core::format::parse_graph;
use icr_core::model::{Instance, Side, StrictProfile};
use icr_core::oracle::{oracle_icr_exact, oracle_min_icr, OracleMode};
use icr_core::pbp::PbpDegree;
use icr_core::solver::{naive_cost, solve_icr_traced, solve_min_icr};
use icr_core::vc::VcMode;

use crate::commands::{build_reduction, gen_params};
use crate::{at, read, BenchArgs, CliError, CliResult, Construction};

const HEADER: [&str; 15] = [
    "instance_id",
    "family",
    "n_men",
    "n_women",
    "pbp_count",
    "pbp1_count",
    "pbp2_count",
    "m_prime_size",
    "vc_size",
    "solver_cost",
    "oracle_cost",
    "naive_cost",
    "structure_used",
    "runtime_ms",
    "error",
];

/// One market to benchmark. Family trials target the man-proposing stable
/// matching; graph markets let the solver choose the matching.
struct Trial {
    id: String,
    family: String,
    market: icr_core::Result<(Instance, StrictProfile)>,
}

fn trials(args: &BenchArgs) -> CliResult<Vec<Trial>> {
    let graph_trial = |id: String, construction: Construction, g: &SimpleGraph| Trial {
        id,
        family: construction.name().into(),
        market: build_reduction(construction, g).map(|r| (r.instance, r.truth)),
    };
    if let Some(max) = args.census {
        return Ok(connected_graphs(max, 3)
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let id = format!("g{}-n{}-e{}", i + 1, g.vertex_count(), g.edge_count());
                graph_trial(id, args.construction, g)
            })
            .collect());
    }
    if let Some(dir) = &args.graph_dir {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| CliError::Io(dir.clone(), e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "graph"))
            .collect();
        paths.sort();
        let mut out = Vec::new();
        for path in paths {
            let g = at(&path, parse_graph(&read(&path)?))?;
            let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            out.push(graph_trial(id, args.construction, &g));
        }
        return Ok(out);
    }
    let family = args
        .family
        .family
        .ok_or_else(|| CliError::Usage("bench needs --family, --graph-dir or --census".into()))?;
    let params = gen_params(&args.family);
    params.validate(family)?;
    Ok((0..args.trials)
        .map(|i| Trial {
            id: format!("{family}-{i}"),
            family: family.to_string(),
            market: generate(family, &params, args.seed.wrapping_add(i as u64)),
        })
        .collect())
}

fn row(trial: &Trial, args: &BenchArgs) -> Vec<String> {
    let mut cells = vec![trial.id.clone(), trial.family.clone()];
    let fail = |mut cells: Vec<String>, e: icr_core::IcrError| {
        cells.resize(HEADER.len() - 1, String::new());
        cells.push(e.to_string());
        cells
    };
    let (instance, truth) = match &trial.market {
        Ok(m) => m,
        Err(e) => return fail(cells, e.clone()),
    };
    cells.push(instance.n_men().to_string());
    cells.push(instance.n_women().to_string());
    let by_graph = trial.family.starts_with("vc3");
    let start = Instant::now();
    let solved = if by_graph {
        solve_min_icr(instance, truth, 8).map(|(_, mu)| mu)
    } else {
        Ok(icr_core::stability::gale_shapley(truth, Side::Man))
    }
    .and_then(|mu| solve_icr_traced(instance, truth, &mu, VcMode::AutoStructured).map(|s| (s, mu)));
    let elapsed = start.elapsed();
    let ((sol, trace), mu) = match solved {
        Ok(s) => s,
        Err(e) => return fail(cells, e),
    };
    let pairs = instance.acceptable_pairs().len();
    let oracle = if pairs > args.cap {
        String::new()
    } else {
        let cost = if by_graph {
            oracle_min_icr(instance, truth, args.cap).map(|r| r.0)
        } else {
            oracle_icr_exact(instance, truth, &mu, OracleMode::Pruned, args.cap).map(|r| r.0)
        };
        match cost {
            Ok(c) => c.to_string(),
            Err(e) => return fail(cells, e),
        }
    };
    let report = &trace.report;
    let d1 = report.all_pbps.iter().filter(|p| p.degree == PbpDegree::D1).count();
    cells.extend([
        report.all_pbps.len().to_string(),
        d1.to_string(),
        (report.all_pbps.len() - d1).to_string(),
        report.m_prime.len().to_string(),
        sol.breakdown.vc.to_string(),
        sol.cost.to_string(),
        oracle,
        naive_cost(instance).to_string(),
        sol.structure_used.to_string(),
        if args.no_timing {
            String::new()
        } else {
            format!("{:.3}", elapsed.as_secs_f64() * 1000.0)
        },
        String::new(),
    ]);
    cells
}

pub fn run(args: &BenchArgs) -> CliResult<bool> {
    let trials = trials(args)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|e| CliError::Io(path.clone(), e))?),
        None => Box::new(std::io::stdout()),
    };
    let io = |e: csv::Error| {
        let path = args.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
        CliError::Io(path, std::io::Error::other(e))
    };
    let mut out = csv::Writer::from_writer(sink);
    out.write_record(HEADER).map_err(io)?;
    out.flush().map_err(|e| io(e.into()))?;
    let mut failures = 0;
    for trial in &trials {
        let cells = row(trial, args);
        if !cells[HEADER.len() - 1].is_empty() {
            log::warn!("{}: {}", trial.id, cells[HEADER.len() - 1]);
            failures += 1;
        }
        out.write_record(&cells).map_err(io)?;
        out.flush().map_err(|e| io(e.into()))?;
    }
    if let Some(path) = &args.out {
        eprintln!("wrote {} rows to {}", trials.len(), path.display());
    }
    Ok(failures == 0)
}
