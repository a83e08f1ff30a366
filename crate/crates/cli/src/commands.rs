use std::path::Path;
use std::process::ExitCode;

use anyhow::Result;
use serde_json::{json, Map, Value};

use obsinfer_core::extended::Measure;
use obsinfer_core::measures::build_restricted_thirder;
use obsinfer_core::model_file::{MeasureFile, ModelFile};
use obsinfer_core::montecarlo::samplers::{AtomDraw, CycleDraw, ZoneDraw};
use obsinfer_core::montecarlo::{
    estimate_halfer, estimate_halfer_colour_mass, estimate_thirder, AtomSampler, CosmoSampler,
    Estimate, HartleSrednickiSampler, ObjectiveSampler, TwoZoneSampler,
};
use obsinfer_core::principles::{check, CheckOptions};
use obsinfer_core::rational::{fmt_rational, to_f64};
use obsinfer_core::{
    build_halfer, build_thirder, compile, solve, CellSet, ExtendedSpace, Principle, Solution,
};

use crate::args::{CheckMeasure, Format, ModelArgs, QueryMeasure, Which};
use crate::model::{sample_count, usage, Builtin, BUILTINS};
use crate::output::{emit, exact_fields, show, Table};

pub fn scenarios(format: Format) -> Result<ExitCode> {
    let mut table = Table::new(&["name", "defaults", "description"]);
    let mut records = Vec::new();
    for b in &BUILTINS {
        table.row(vec![b.name.into(), b.params.into(), b.about.into()]);
        records.push(json!({ "name": b.name, "defaults": b.params, "description": b.about }));
    }
    emit(format, &table, &records)?;
    Ok(ExitCode::SUCCESS)
}

pub fn dump(model: &ModelArgs, output: Option<&Path>) -> Result<ExitCode> {
    let text = ModelFile::from_scenario(&model.load()?).to_json();
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn restricted_cells(ext: &ExtendedSpace, cells: Option<&str>) -> Result<Vec<CellSet>> {
    let text = cells.ok_or_else(|| usage("the restricted measure needs --cells"))?;
    let base = ext.base();
    let mut keep = CellSet::empty(base.n_cells());
    for label in text.split(',').map(str::trim) {
        let x = base
            .cell_index(label)
            .ok_or_else(|| obsinfer_core::Error::UnknownCell(label.to_string()))?;
        keep.insert(x);
    }
    Ok(base
        .atoms()
        .iter()
        .map(|a| a.occupied.intersection(&keep))
        .collect())
}

pub fn query(
    format: Format,
    model: &ModelArgs,
    measure: QueryMeasure,
    event: &str,
    given: Option<&str>,
    cells: Option<&str>,
) -> Result<ExitCode> {
    let sc = model.load()?;
    let f = sc.event(event)?;
    let g = given.map(|g| sc.event(g)).transpose()?;
    let value = if measure == QueryMeasure::Objective {
        match &g {
            Some(g) => sc.ext.objective_conditional(&f, g)?,
            None => sc.ext.objective_probability(&f)?,
        }
    } else {
        let m = match measure {
            QueryMeasure::Thirder => build_thirder(&sc.ext)?,
            QueryMeasure::Halfer => build_halfer(&sc.ext)?,
            _ => build_restricted_thirder(&sc.ext, &restricted_cells(&sc.ext, cells)?)?,
        };
        match &g {
            Some(g) => m.conditional(&f, g)?,
            None => m.probability(&f),
        }
    };
    match format {
        Format::Table => println!("{}", show(&value)),
        Format::Records => {
            let (exact, decimal) = exact_fields(&value);
            let record = json!({
                "model": sc.name,
                "measure": format!("{measure:?}").to_lowercase(),
                "event": event,
                "given": given,
                "value": exact,
                "decimal": decimal,
            });
            println!("{record}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn principles(names: &[String], ext: &ExtendedSpace) -> Result<Vec<Principle>> {
    if names.is_empty() {
        let sequential = ext.base().sequential().is_some();
        return Ok(Principle::ALL
            .into_iter()
            .filter(|p| sequential || *p != Principle::PNFI)
            .collect());
    }
    names
        .iter()
        .map(|n| {
            n.parse().map_err(|_| {
                usage(format!(
                    "unknown principle `{n}` (PN, PI, PIst, PEI, PP, PNFI)"
                ))
            })
        })
        .collect()
}

pub fn check_cmd(
    format: Format,
    model: &ModelArgs,
    measure: CheckMeasure,
    weights: Option<&Path>,
    cap: usize,
    names: &[String],
) -> Result<ExitCode> {
    let sc = model.load()?;
    let ext = &sc.ext;
    let m = match measure {
        CheckMeasure::Thirder => build_thirder(ext)?,
        CheckMeasure::Halfer => build_halfer(ext)?,
        CheckMeasure::File => {
            let path = weights.ok_or_else(|| usage("--measure file needs --weights <path>"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            MeasureFile::from_json(&text)?.to_measure(ext)?
        }
    };
    let opts = CheckOptions { cap };
    let mut table = Table::new(&["principle", "holds", "violations"]);
    let mut records = Vec::new();
    let mut all_hold = true;
    for p in principles(names, ext)? {
        let r = check(ext, &m, p, &opts)?;
        all_hold &= r.holds;
        let count = r.violations.len() + r.omitted;
        table.row(vec![
            p.to_string(),
            if r.holds { "yes" } else { "no" }.into(),
            count.to_string(),
        ]);
        for v in &r.violations {
            table.row(vec![
                String::new(),
                String::new(),
                format!(
                    "{}: {} vs {}",
                    v.witness,
                    fmt_rational(&v.lhs),
                    fmt_rational(&v.rhs)
                ),
            ]);
        }
        if r.omitted > 0 {
            table.row(vec![
                String::new(),
                String::new(),
                format!("... {} more", r.omitted),
            ]);
        }
        let violations: Vec<Value> = r
            .violations
            .iter()
            .map(|v| json!({ "witness": v.witness, "lhs": fmt_rational(&v.lhs), "rhs": fmt_rational(&v.rhs) }))
            .collect();
        records.push(json!({
            "principle": p.to_string(),
            "holds": r.holds,
            "violations": violations,
            "omitted": r.omitted,
        }));
    }
    emit(format, &table, &records)?;
    Ok(if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn weights_record(ext: &ExtendedSpace, w: &[obsinfer_core::Rational]) -> Value {
    let map: Map<String, Value> = w
        .iter()
        .enumerate()
        .filter(|(_, x)| !num::Zero::is_zero(*x))
        .map(|(i, x)| (ext.atom_name(i), Value::from(fmt_rational(x))))
        .collect();
    Value::Object(map)
}

fn measure_table(ext: &ExtendedSpace, m: &Measure) -> Table {
    let mut t = Table::new(&["atom", "weight"]);
    for (i, w) in m.weights().iter().enumerate() {
        if !num::Zero::is_zero(w) {
            t.row(vec![ext.atom_name(i), show(w)]);
        }
    }
    t
}

pub fn solve_cmd(format: Format, model: &ModelArgs, names: &[String]) -> Result<ExitCode> {
    let sc = model.load()?;
    let ext = &sc.ext;
    let ps: Vec<Principle> = if names.is_empty() {
        Vec::new()
    } else {
        principles(names, ext)?
    };
    let solution = solve(&compile(ext, &ps)?);
    let listed: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    let record = match &solution {
        Solution::Infeasible => json!({ "principles": listed, "solution": "infeasible" }),
        Solution::Unique(m) => json!({
            "principles": listed,
            "solution": "unique",
            "dimension": 0,
            "weights": weights_record(ext, m.weights()),
        }),
        Solution::Affine {
            dimension,
            witness,
            basis,
        } => json!({
            "principles": listed,
            "solution": "affine",
            "dimension": dimension,
            "weights": weights_record(ext, witness.weights()),
            "basis": basis.iter().map(|v| weights_record(ext, v)).collect::<Vec<_>>(),
        }),
    };
    match format {
        Format::Records => println!("{record}"),
        Format::Table => {
            let mut out = std::io::stdout().lock();
            match &solution {
                Solution::Infeasible => println!("Infeasible"),
                Solution::Unique(m) => {
                    println!("Unique");
                    println!();
                    measure_table(ext, m).render(&mut out)?;
                }
                Solution::Affine {
                    dimension,
                    witness,
                    basis,
                } => {
                    println!("Affine({dimension})");
                    println!();
                    println!("witness:");
                    measure_table(ext, witness).render(&mut out)?;
                    println!();
                    println!("directions:");
                    let mut t = Table::new(&["direction", "atom", "coefficient"]);
                    for (k, v) in basis.iter().enumerate() {
                        for (i, c) in v.iter().enumerate() {
                            if !num::Zero::is_zero(c) {
                                t.row(vec![(k + 1).to_string(), ext.atom_name(i), fmt_rational(c)]);
                            }
                        }
                    }
                    t.render(&mut out)?;
                }
            }
        }
    }
    Ok(if solution.is_feasible() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Debug, PartialEq, Eq)]
struct Target {
    thirder: bool,
    event: Option<String>,
    colour: Option<String>,
}

fn parse_target(text: &str) -> Result<Target> {
    let bad = || {
        usage(format!(
            "--target: expected <thirder|halfer>[-<event>][-given-colour<y>], got `{text}`"
        ))
    };
    let lower = text.to_ascii_lowercase();
    let (thirder, rest) = if lower.starts_with("thirder") {
        (true, &text["thirder".len()..])
    } else if lower.starts_with("halfer") {
        (false, &text["halfer".len()..])
    } else {
        return Err(bad());
    };
    let rest = match rest.strip_prefix('-') {
        Some(r) => r,
        None if rest.is_empty() => rest,
        None => return Err(bad()),
    };
    let (event, colour) = match rest.to_ascii_lowercase().find("given-colour") {
        Some(i) => {
            let colour = &rest[i + "given-colour".len()..];
            if colour.is_empty() {
                return Err(bad());
            }
            (rest[..i].trim_end_matches('-'), Some(colour.to_string()))
        }
        None => (rest, None),
    };
    Ok(Target {
        thirder,
        event: (!event.is_empty()).then(|| event.to_string()),
        colour,
    })
}

/// Resolves `name` case-insensitively against `names`.
fn pick<'a>(name: &str, names: &[&'a str], what: &str) -> Result<&'a str> {
    names
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name))
        .copied()
        .ok_or_else(|| {
            usage(format!(
                "unknown {what} `{name}`; expected one of {}",
                names.join(", ")
            ))
        })
}

fn run<S: ObjectiveSampler>(
    sampler: &S,
    target: &Target,
    colour: Option<u32>,
    event: impl Fn(&S::Outcome) -> bool + Sync,
    n: u64,
    seed: u64,
    streams: usize,
) -> Result<Estimate> {
    Ok(if target.thirder {
        estimate_thirder(sampler, event, colour, n, seed, streams)?
    } else {
        estimate_halfer(sampler, event, colour, n, seed, streams)?
    })
}

pub struct EstimateArgs<'a> {
    pub target: Option<&'a str>,
    pub samples: &'a str,
    pub seed: u64,
    pub streams: usize,
    pub which: Option<Which>,
    pub theta: Option<f64>,
}

pub fn estimate(format: Format, model: &ModelArgs, a: &EstimateArgs) -> Result<ExitCode> {
    let n = sample_count(a.samples)?;
    let (label, estimate, exact) = match model.builtin() {
        Some(Builtin::Cosmo) => {
            if a.target.is_some() {
                return Err(usage(
                    "the cosmo model takes --which and --theta instead of --target",
                ));
            }
            let params = model.cosmo_params()?;
            let theta = a.theta.unwrap_or(0.5);
            let i = model.theta_index(theta, params.n)?;
            let which = a.which.unwrap_or(Which::L);
            match which {
                Which::E => {
                    let r = params.pi_thirder(i);
                    let e = Estimate {
                        value: to_f64(&r),
                        std_error: 0.0,
                        n_samples: 0,
                        seed: a.seed,
                        accepted: 0,
                    };
                    (format!("pi_E(theta={theta})"), e, Some(r))
                }
                Which::L => {
                    let kappa = to_f64(&params.kappa);
                    let sampler = CosmoSampler::new(kappa, &params.y_dist_f64(), i)?;
                    let e = estimate_halfer_colour_mass(&sampler, 0, n, a.seed, a.streams)?;
                    (format!("pi_L(theta={theta})"), e, None)
                }
            }
        }
        b => {
            if a.which.is_some() || a.theta.is_some() {
                return Err(usage("--which and --theta apply to the cosmo model only"));
            }
            let target = parse_target(a.target.unwrap_or("thirder"))?;
            let e = match b {
                Some(Builtin::HartleSrednicki) => {
                    let sampler = HartleSrednickiSampler::new(
                        model.big_n(4) as u64,
                        model.big_m(2) as u64,
                        to_f64(&model.p()?),
                    )?;
                    let event = pick(
                        target.event.as_deref().unwrap_or("SR"),
                        &["SR", "AR"],
                        "event",
                    )?;
                    let colour = target
                        .colour
                        .as_deref()
                        .map(|c| pick(c, &["R", "B"], "colour"))
                        .transpose()?;
                    let some_red = event == "SR";
                    let colour = colour.map(|c| u32::from(c == "B"));
                    run(
                        &sampler,
                        &target,
                        colour,
                        |d: &CycleDraw| d.some_red == some_red,
                        n,
                        a.seed,
                        a.streams,
                    )?
                }
                Some(Builtin::TwoZone) => {
                    let [p0, p1, p2] = model.zone_probabilities()?;
                    let sampler = TwoZoneSampler::new(
                        model.big_m(3) as u64,
                        to_f64(&p0),
                        to_f64(&p1),
                        to_f64(&p2),
                    )?;
                    let event = pick(
                        target.event.as_deref().unwrap_or("W0"),
                        &["W0", "W1"],
                        "event",
                    )?;
                    let colour = target
                        .colour
                        .as_deref()
                        .map(|c| pick(c, &["0", "1"], "colour"))
                        .transpose()?;
                    let w = event == "W1";
                    let colour = colour.map(|c| u32::from(c == "1"));
                    run(
                        &sampler,
                        &target,
                        colour,
                        |d: &ZoneDraw| d.w == w,
                        n,
                        a.seed,
                        a.streams,
                    )?
                }
                _ => {
                    let sc = model.load()?;
                    let name = match &target.event {
                        Some(e) => sc
                            .events
                            .keys()
                            .find(|k| k.eq_ignore_ascii_case(e))
                            .cloned()
                            .unwrap_or_else(|| e.clone()),
                        None => sc.default_event.clone().unwrap_or_else(|| "Omega".into()),
                    };
                    let event = sc.event(&name)?;
                    let inside = AtomSampler::indicator(&sc.ext, &event)?;
                    let colour = match &target.colour {
                        Some(c) => Some(
                            sc.space()
                                .colour_index(c)
                                .ok_or_else(|| obsinfer_core::Error::UnknownColour(c.clone()))?,
                        ),
                        None => None,
                    };
                    let sampler = AtomSampler::new(sc.space());
                    run(
                        &&sampler,
                        &target,
                        colour,
                        |d: &AtomDraw| inside[d.index],
                        n,
                        a.seed,
                        a.streams,
                    )?
                }
            };
            (a.target.unwrap_or("thirder").to_string(), e, None)
        }
    };

    let mut table = Table::new(&[
        "target",
        "value",
        "std_error",
        "samples",
        "accepted",
        "seed",
    ]);
    let value = match &exact {
        Some(r) => show(r),
        None => format!("{:.6}", estimate.value),
    };
    table.row(vec![
        label.clone(),
        value,
        if estimate.std_error == 0.0 {
            "0".into()
        } else {
            format!("{:.3e}", estimate.std_error)
        },
        estimate.n_samples.to_string(),
        estimate.accepted.to_string(),
        estimate.seed.to_string(),
    ]);
    let mut record = json!({
        "model": model.model,
        "target": label,
        "value": estimate.value,
        "std_error": estimate.std_error,
        "samples": estimate.n_samples,
        "accepted": estimate.accepted,
        "seed": estimate.seed,
    });
    if let Some(r) = &exact {
        record["exact"] = Value::from(fmt_rational(r));
    }
    emit(format, &table, &[record])?;
    Ok(ExitCode::SUCCESS)
}
