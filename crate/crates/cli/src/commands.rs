use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use icr_core::forge::{generate, vc3_to_smt, vc3_to_smti, GenParams, Reduction};
use icr_core::format::{
    parse_graph, parse_instance, parse_matching, parse_profile, parse_refined_instance,
    write_instance, write_matching, write_profile, InstanceFormat,
};
use icr_core::model::{Instance, Matching, StrictProfile};
use icr_core::oracle::{exists_super_stable, oracle_icr_exact, oracle_min_icr, OracleMode};
use icr_core::refine::{interview_cost, recognize_interview_compatible};
use icr_core::solver::{naive_cost, parse_certificate, solve_icr_traced, solve_min_icr, write_certificate, IcrSolution};
use icr_core::stability::{is_stable, StabilityLevel};
use icr_core::ties::detect_tie_structure;
use icr_core::vc::VcMode;
use icr_core::validate_instance;

use crate::{
    at, read, write, CheckArgs, CliError, CliResult, Construction, FamilyArgs, FormatArg, GenArgs, ModeArg,
    OracleArgs, SolveArgs, VcArg,
};

fn load_instance(path: &Path) -> CliResult<Instance> {
    let parsed = at(path, parse_instance(&read(path)?))?;
    for w in &parsed.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(parsed.instance)
}

fn load_truth(path: &Path) -> CliResult<StrictProfile> {
    at(path, parse_profile(&read(path)?))
}

fn load_matching(path: &Path, instance: &Instance) -> CliResult<Matching> {
    at(path, parse_matching(&read(path)?, instance.n_men(), instance.n_women()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn gen_params(f: &FamilyArgs) -> GenParams {
    GenParams {
        n_men: f.men,
        n_women: f.women,
        tiers: f.tiers.clone(),
        tie_cap: f.tie_cap,
        density: f.density,
    }
}

pub fn build_reduction(construction: Construction, graph: &icr_core::forge::SimpleGraph) -> icr_core::Result<Reduction> {
    match construction {
        Construction::Smti => vc3_to_smti(graph),
        Construction::Smt => Ok(vc3_to_smt(graph)),
    }
}

pub fn gen(args: &GenArgs) -> CliResult<bool> {
    let format = args.format.map(|f| match f {
        FormatArg::Smti => InstanceFormat::Smti,
        FormatArg::Smpi => InstanceFormat::Smpi,
    });
    let (provenance, instance, truth, matching) = if let Some(path) = &args.graph {
        let graph = at(path, parse_graph(&read(path)?))?;
        let red = build_reduction(args.construction, &graph)?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let header = format!("# icr gen construction={} graph={name}\n", args.construction.name());
        (header, red.instance, red.truth, Some(red.matching))
    } else {
        let family = args
            .family
            .family
            .ok_or_else(|| CliError::Usage("gen needs --family or --graph".into()))?;
        let params = gen_params(&args.family);
        let (instance, truth) = generate(family, &params, args.seed)?;
        let header = format!("# icr gen family={family} {params} seed={}\n", args.seed);
        (header, instance, truth, None)
    };
    let inst_text = format!("{provenance}{}", write_instance(&instance, format)?);
    let truth_text = format!("{provenance}{}", write_profile(&truth));
    let match_text = matching.map(|m| format!("{provenance}{}", write_matching(&m)));
    match &args.out {
        Some(prefix) => {
            let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
            let mut files = vec![(with("inst"), inst_text), (with("truth"), truth_text)];
            if let Some(text) = match_text {
                files.push((with("match"), text));
            }
            for (path, text) in files {
                write(&path, &text)?;
                println!("wrote {}", path.display());
            }
        }
        None => {
            print!("{inst_text}\n{truth_text}");
            if let Some(text) = match_text {
                print!("\n{text}");
            }
        }
    }
    Ok(true)
}

fn tie_report(instance: &Instance) -> String {
    let report = detect_tie_structure(instance);
    let mut out = format!("kind: {}\n", report.kind);
    for (agent, ties) in &report.per_agent {
        let text = match ties {
            Some(t) => t
                .classes
                .iter()
                .map(|c| {
                    let names: Vec<String> = c.iter().map(|&x| agent.candidate(x).to_string()).collect();
                    if c.len() == 1 {
                        names[0].clone()
                    } else {
                        format!("({})", names.join(" "))
                    }
                })
                .collect::<Vec<_>>()
                .join(" "),
            None => "not tie-shaped".into(),
        };
        writeln!(out, "  {agent}: {text}").unwrap();
    }
    out
}

pub fn check(args: &CheckArgs) -> CliResult<bool> {
    let base = load_instance(&args.instance)?;
    let mut ok = true;
    println!("instance: {}", args.instance.display());
    println!("validation: {}", validate_instance(&base));
    print!("{}", tie_report(&base));

    let refined = match (&args.refined, &args.certificate) {
        (Some(path), _) => Some((path, at(path, parse_refined_instance(&read(path)?))?, None)),
        (_, Some(path)) => {
            let cert = at(path, parse_certificate(&read(path)?))?;
            Some((path, cert.solution.refined.clone(), Some(cert.solution)))
        }
        _ => None,
    };
    if let Some((path, refined, claimed)) = &refined {
        println!("refined: {}", path.display());
        let witness = recognize_interview_compatible(&base, refined)?;
        match &witness.offending {
            None => {
                let (cost, t) = interview_cost(&base, refined)?;
                println!("compatibility: compatible");
                println!("interview cost: {cost}");
                println!("interviews: {t}");
                if let Some(sol) = claimed {
                    let agrees = sol.cost == cost && sol.interviews.len() == cost;
                    println!("certificate cost {} matches: {}", sol.cost, yes(agrees));
                    ok &= agrees;
                }
            }
            Some(why) => {
                println!("compatibility: not reachable by interviews: {why}");
                ok = false;
            }
        }
    }
    if let Some(path) = &args.truth {
        let truth = load_truth(path)?;
        let refines_base = truth.check_refines(&base);
        println!("truth refines instance: {}", yes(refines_base.is_ok()));
        if let Err(e) = refines_base {
            println!("  {e}");
            ok = false;
        }
        if let Some((_, refined, _)) = &refined {
            let good = truth.refines(refined);
            println!("truth refines refined instance: {}", yes(good));
            ok &= good;
        }
    }
    let target = refined.as_ref().map_or(&base, |r| &r.1);
    if let Some(path) = &args.matching {
        let mu = load_matching(path, target)?;
        println!("matching: {mu}");
        for (name, level) in [
            ("weakly", StabilityLevel::Weak),
            ("strongly", StabilityLevel::Strong),
            ("super", StabilityLevel::Super),
        ] {
            let stable = is_stable(target, &mu, level)?;
            println!("{name}-stable: {}", yes(stable));
            if level == StabilityLevel::Super {
                ok &= stable;
            }
        }
    } else if refined.is_some() {
        match exists_super_stable(target, args.cap)? {
            Some(mu) => println!("super-stable matching exists: yes {mu}"),
            None => {
                println!("super-stable matching exists: no");
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn summary(sol: &IcrSolution, naive: usize) -> String {
    format!(
        "cost {}  breakdown {}  structure {}  naive {}",
        sol.cost, sol.breakdown, sol.structure_used, naive
    )
}

pub fn solve(args: &SolveArgs) -> CliResult<bool> {
    let instance = load_instance(&args.instance)?;
    let truth = load_truth(&args.truth)?;
    at(&args.truth, truth.check_refines(&instance))?;
    let vc_mode = match args.vc {
        VcArg::Auto => VcMode::AutoStructured,
        VcArg::General => VcMode::ForceGeneral,
    };
    let naive = naive_cost(&instance);
    let (sol, mu) = if args.min_icr {
        let (best, mu) = solve_min_icr(&instance, &truth, args.cap)?;
        let sol = if vc_mode == VcMode::AutoStructured {
            best
        } else {
            solve_icr_traced(&instance, &truth, &mu, vc_mode)?.0
        };
        (sol, mu)
    } else {
        let path = args.matching.as_ref().expect("clap requires --matching without --min-icr");
        let mu = load_matching(path, &instance)?;
        (solve_icr_traced(&instance, &truth, &mu, vc_mode)?.0, mu)
    };
    println!("{}", summary(&sol, naive));
    if args.min_icr {
        println!("matching: {mu}");
    }
    let mut ok = true;
    if args.oracle_verify {
        let cost = if args.min_icr {
            oracle_min_icr(&instance, &truth, args.cap)?.0
        } else {
            oracle_icr_exact(&instance, &truth, &mu, OracleMode::Pruned, args.cap)?.0
        };
        ok = cost == sol.cost;
        println!("oracle cost {cost}: {}", if ok { "agrees" } else { "DISAGREES" });
    }
    let cert = write_certificate(&sol, naive)?;
    match &args.out {
        Some(path) => write(path, &cert)?,
        None => print!("\n{cert}"),
    }
    Ok(ok)
}

pub fn oracle(args: &OracleArgs) -> CliResult<bool> {
    let instance = load_instance(&args.instance)?;
    let truth = load_truth(&args.truth)?;
    match &args.matching {
        Some(path) => {
            let mu = load_matching(path, &instance)?;
            let mode = match args.mode {
                ModeArg::Pure => OracleMode::Pure,
                ModeArg::Pruned => OracleMode::Pruned,
            };
            let (cost, t) = oracle_icr_exact(&instance, &truth, &mu, mode, args.cap)?;
            println!("oracle cost {cost}");
            println!("interviews: {t}");
        }
        None => {
            let (cost, t, mu) = oracle_min_icr(&instance, &truth, args.cap)?;
            println!("oracle cost {cost}");
            println!("interviews: {t}");
            println!("matching: {mu}");
        }
    }
    Ok(true)
}
