use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use cyclodecim::catalog::{best_cost, variants, Catalog};
use cyclodecim::cyclotomic::{cyclotomic_poly, cyclotomic_rational, dc_gain, mobius, totient, CpIndex, MAX_INDEX};
use cyclodecim::design::run_design;
use cyclodecim::eligibility::eligible_set_with;
use cyclodecim::optimizer::ProblemOptions;
use cyclodecim::simulate::{architectures, compare, format_stream, parse_stream, Architecture, Stimulus};
use cyclodecim::spectrum::{composite_response, verify_spec, VerifyReport};
use cyclodecim::synthesis::{
    cascade_pow2_stages, expand_impulse, noble_shift, polyphase_decompose, pow2_decompose, recursive_cic_form,
    wordlength_plan, StageGraph, StagePlan,
};
use cyclodecim::{DesignFile, DesignSpec, Freq, Status};

use crate::{ArchChoice, Command, DesignArgs, SimulateArgs, StimulusChoice};
use crate::{EXIT_CHECK_FAILED, EXIT_INFEASIBLE};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Poly { q, gamma } => poly(q, gamma),
        Command::Design(args) => design(args),
        Command::Response {
            design,
            grid,
            out,
            check,
        } => response(&design, grid, out.as_deref(), check),
        Command::Synth { design, arch, rin, out } => synth(&design, arch, rin, out.as_deref()),
        Command::Simulate(args) => simulate(args),
        Command::Eligible {
            decimation,
            nu,
            threshold,
        } => eligible(decimation, nu, &threshold),
        Command::Tables {
            totient,
            mobius,
            catalog,
            max,
            gamma,
        } => {
            if totient {
                totient_table(max.unwrap_or(69))
            } else if mobius {
                mobius_table(max.unwrap_or(MAX_INDEX as u64))
            } else {
                debug_assert!(catalog);
                catalog_table(gamma)
            }
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            let written = stdout.write_all(text.as_bytes()).and_then(|()| match text.ends_with('\n') {
                true => Ok(()),
                false => stdout.write_all(b"\n"),
            });
            match written {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn read_design(path: &Path) -> Result<DesignFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    DesignFile::from_json(&text).with_context(|| format!("loading design {}", path.display()))
}

fn poly(q: u32, gamma: f64) -> Result<ExitCode> {
    let idx = CpIndex::new(q)?;
    let p = cyclotomic_poly(idx);
    println!("C_{q} = {p}");
    if idx.is_degenerate() {
        eprintln!("warning: C_1 has its zero at DC and cannot be normalized to unity DC gain");
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "degree {}, phi({q}) = {}, dc gain {}",
        p.degree().unwrap_or(0),
        totient(q as u64)?,
        dc_gain(idx)?
    );
    let mobius_form = cyclotomic_rational(idx);
    println!("mobius form:  {mobius_form}");
    println!("compact form: {}", mobius_form.compact());
    println!("variants:");
    for v in variants(idx) {
        println!(
            "  {:<12} {:<7} adders {:>3}  delays {:>3}  {}",
            format!("{:?}", v.kind).to_lowercase(),
            format!("{:?}", v.derivation).to_lowercase(),
            v.adders,
            v.delays,
            v.form
        );
    }
    let best = best_cost(idx, gamma)?;
    println!(
        "cheapest at gamma {gamma}: {} adders, {} delays: {}",
        best.adders, best.delays, best.variant.form
    );
    Ok(ExitCode::SUCCESS)
}

fn describe_verify(r: &VerifyReport) -> String {
    format!(
        "passband deviation {:.4} dB (budget {}), least band attenuation {:.2} dB (target {}): {}",
        r.passband_dev_db,
        r.ripple_db,
        r.min_attenuation_db(),
        r.attenuation_db,
        if r.pass() { "pass" } else { "FAIL" }
    )
}

fn design(args: DesignArgs) -> Result<ExitCode> {
    let spec = DesignSpec::new(args.decimation, args.nu, args.ripple_db, args.attenuation_db)?.with_grid(args.grid)?;
    let outcome = run_design(&spec, args.gamma, ProblemOptions::default())?;
    let file = outcome.to_file();
    eprintln!(
        "cutoff {}, {} eligible CPs, {} folding bands",
        spec.cutoff,
        outcome.eligible.len(),
        outcome.table.band_count()
    );
    eprintln!(
        "search: {} nodes, relaxation bound {:.3}",
        outcome.solution.node_count, outcome.solution.root_bound
    );
    emit(args.out.as_deref(), &file.to_json())?;
    match outcome.solution.status {
        Status::Optimal => {
            eprintln!(
                "optimal: H = {}  cost {} ({} adders, {} delays)",
                outcome.cascade, file.cost, file.cost_adders, file.cost_delays
            );
            if let Some(r) = &outcome.verify {
                eprintln!("verify: {}", describe_verify(r));
            }
            Ok(ExitCode::SUCCESS)
        }
        Status::Infeasible => {
            eprintln!("infeasible: no cascade of eligible CPs meets the specification");
            Ok(ExitCode::from(EXIT_INFEASIBLE))
        }
    }
}

fn response(path: &Path, grid: usize, out: Option<&Path>, check: bool) -> Result<ExitCode> {
    let file = read_design(path)?;
    let cascade = file.cascade();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["f", "db"])?;
    for (f, db) in composite_response(&cascade, grid) {
        w.write_record([f.to_string(), db.to_string()])?;
    }
    let text = String::from_utf8(w.into_inner()?)?;
    emit(out, &text)?;
    if check {
        let r = verify_spec(&cascade, &file.design_spec()?);
        eprintln!("verify: {}", describe_verify(&r));
        if !r.pass() {
            return Ok(ExitCode::from(EXIT_CHECK_FAILED));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn synth_one(file: &DesignFile, arch: ArchChoice, rin: u32) -> Result<Value> {
    let cascade = file.cascade();
    let d = file.spec.decimation;
    let h = expand_impulse(&cascade);
    let graph_json = |g: &StageGraph, name: &str| -> Result<Value> {
        Ok(serde_json::to_value(wordlength_plan(g, rin)?.to_json(name))?)
    };
    Ok(match arch {
        ArchChoice::Direct => graph_json(&StageGraph::direct(h, d), "direct")?,
        ArchChoice::Polyphase => {
            let bank = polyphase_decompose(&h, d)?;
            let csd: Vec<Vec<String>> = bank
                .components
                .iter()
                .map(|e| e.coeffs().iter().map(|&c| pow2_decompose(c).to_string()).collect())
                .collect();
            json!({
                "architecture": "polyphase",
                "decimation": d,
                "components": bank.components,
                "csd": csd,
                "csd_totals": bank.csd_totals(),
            })
        }
        ArchChoice::Recursive => {
            let (pre, post) = noble_shift(&recursive_cic_form(&cascade), d)?;
            graph_json(&StageGraph::recursive(pre, d, post), "recursive")?
        }
        ArchChoice::Cascade => match cascade_pow2_stages(&cascade, d) {
            StagePlan::Stages { graph } => graph_json(&graph, "cascade")?,
            StagePlan::NotApplicable { reason } => json!({
                "architecture": "cascade",
                "status": "not_applicable",
                "reason": reason,
            }),
        },
        ArchChoice::All => Value::Array(
            [
                ArchChoice::Direct,
                ArchChoice::Polyphase,
                ArchChoice::Recursive,
                ArchChoice::Cascade,
            ]
            .into_iter()
            .map(|a| synth_one(file, a, rin))
            .collect::<Result<_>>()?,
        ),
    })
}

fn synth(path: &Path, arch: ArchChoice, rin: u32, out: Option<&Path>) -> Result<ExitCode> {
    let file = read_design(path)?;
    let value = synth_one(&file, arch, rin)?;
    emit(out, &serde_json::to_string_pretty(&value)?)?;
    Ok(ExitCode::SUCCESS)
}

fn stimuli(args: &SimulateArgs) -> Result<Vec<Stimulus>> {
    let generated = |kind: StimulusChoice| -> Result<Stimulus> {
        Ok(match kind {
            StimulusChoice::Impulse => Stimulus::impulse(args.length),
            StimulusChoice::Step => Stimulus::step(args.length),
            StimulusChoice::Prng => Stimulus::prng(args.seed, args.length, args.rin)?,
            StimulusChoice::File => {
                let Some(path) = &args.input else {
                    bail!("--stimulus file needs --input");
                };
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Stimulus::from_samples(parse_stream(&text)?, args.rin)?
            }
            StimulusChoice::All => unreachable!("expanded by the caller"),
        })
    };
    match args.stimulus {
        StimulusChoice::All => [StimulusChoice::Impulse, StimulusChoice::Step, StimulusChoice::Prng]
            .into_iter()
            .map(generated)
            .collect(),
        one => Ok(vec![generated(one)?]),
    }
}

fn stimulus_tag(s: &Stimulus) -> &'static str {
    use cyclodecim::simulate::StimulusKind::*;
    match s.kind {
        Impulse => "impulse",
        Step => "step",
        Prng { .. } => "prng",
        File { .. } => "file",
    }
}

fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let file = read_design(&args.design)?;
    let cascade = file.cascade();
    let wanted = |a: &Architecture| {
        let name = a.name();
        name == "direct"
            || args.arch.iter().any(|c| match c {
                ArchChoice::All => true,
                ArchChoice::Direct => name == "direct",
                ArchChoice::Polyphase => name == "polyphase",
                ArchChoice::Recursive => name == "recursive",
                ArchChoice::Cascade => name == "cascade",
            })
    };
    let archs: Vec<Architecture> = architectures(&cascade, file.spec.decimation)?
        .into_iter()
        .filter(wanted)
        .collect();
    if args.arch.contains(&ArchChoice::Cascade) && !archs.iter().any(|a| a.name() == "cascade") {
        eprintln!("note: the power-of-two cascade does not apply to {cascade}");
    }
    let stimuli = stimuli(&args)?;
    let report = compare(&archs, &stimuli);

    if let Some(dir) = &args.dump {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for run in &report.runs {
            for (s, stream) in stimuli.iter().zip(&run.outputs) {
                let path = dir.join(format!("{}-{}.txt", run.architecture, stimulus_tag(s)));
                fs::write(&path, format_stream(stream)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let names: Vec<&str> = report.runs.iter().map(|r| r.architecture.as_str()).collect();
    match &report.first_mismatch {
        None => println!(
            "pass: {} identical on {} (widest output {} bits)",
            names.join(", "),
            report.stimuli.join(", "),
            report.max_width_bits
        ),
        Some(m) => println!(
            "FAIL: {} differs from direct on {} at output {} (expected {:?}, got {:?})",
            m.architecture, m.stimulus, m.index, m.expected, m.actual
        ),
    }
    if args.check && !report.pass {
        return Ok(ExitCode::from(EXIT_CHECK_FAILED));
    }
    Ok(ExitCode::SUCCESS)
}

fn eligible(decimation: u32, nu: u32, threshold: &str) -> Result<ExitCode> {
    let t: Freq = threshold
        .parse()
        .map_err(|e| anyhow::anyhow!("invalid threshold {threshold:?}: {e:?}"))?;
    // attenuation and ripple do not affect eligibility
    let spec = DesignSpec::new(decimation, nu, 1.0, 0.0)?;
    let set = eligible_set_with(&spec, t);
    println!("{} eligible CPs for D={decimation}, nu={nu} (cutoff {})", set.len(), spec.cutoff);
    let list: Vec<String> = set.iter().map(|q| q.to_string()).collect();
    println!("{}", list.join(", "));
    Ok(ExitCode::SUCCESS)
}

fn totient_table(max: u64) -> Result<ExitCode> {
    let mut text = String::from("n\tphi(n)\n");
    for n in 1..=max {
        writeln!(text, "{n}\t{}", totient(n)?)?;
    }
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn mobius_table(max: u64) -> Result<ExitCode> {
    let mut text = String::new();
    for class in [-1i8, 1, 0] {
        let mut members = Vec::new();
        for n in 1..=max {
            if mobius(n)? == class {
                members.push(n.to_string());
            }
        }
        writeln!(text, "mu = {class:>2}: {}", members.join(", "))?;
    }
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn catalog_table(gamma: f64) -> Result<ExitCode> {
    let catalog = Catalog::build(gamma)?;
    let mut text = String::from("q\tNa\tNd\tNa_rec\tNd_rec\tchosen\n");
    let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    for r in catalog.rows() {
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.q,
            r.na_nonrec,
            r.nd_nonrec,
            dash(r.na_rec),
            dash(r.nd_rec),
            r.chosen
        )?;
    }
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}
