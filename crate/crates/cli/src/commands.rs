use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use emb_core::closedform::relative_entropy_sandwich;
use emb_core::emb::{e_hmin, e_locc, emb_general, emb_tripartite, MeasureResult};
use emb_core::geometric::{geometric_measure_general, geometric_measure_symmetric, tangle_ghz_w, SYMMETRY_TOLERANCE};
use emb_core::measures::{bipartite_entanglement, max_bipartite_entanglement, schmidt_decompose};
use emb_core::state::named_state;
use emb_core::sweep::{ghz_w_sweep, to_csv};
use emb_core::verify::{check_state, verify_random, StateCheck};
use emb_core::{Budget, Diagnostics, OptimizerConfig, Partition, StateTensor};

use crate::{Cli, Command, Measure, OptArgs, OptionalStateArgs, ParamArgs, StateArgs};

/// Exit status when `--strict` turns an unconverged search into a failure.
const EXIT_UNCONVERGED: u8 = 2;

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute { state, measure, cut, opt } => compute(&state, measure, cut.as_deref(), &opt),
        Command::Sweep { family, points, out, no_assert, opt } => {
            sweep(&family, points, out.as_deref(), no_assert, &opt)
        }
        Command::Verify { trials, state, opt } => verify(trials, &state, &opt),
        Command::Schmidt { state, cut } => {
            let s = load_state(state.state.as_deref(), state.named.as_deref(), &state.params)?;
            print_schmidt(&s, cut.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn budget(opt: &OptArgs) -> Result<Budget> {
    let mut cfg = OptimizerConfig { seed: opt.seed, ..OptimizerConfig::default() };
    if let Some(g) = opt.grid {
        cfg.grid_resolution = g;
    }
    if let Some(r) = opt.restarts {
        cfg.restart_count = r;
    }
    if let Some(e) = opt.max_evals {
        cfg.max_evaluations = e;
    }
    if let Some(t) = opt.tol {
        cfg.objective_tolerance = t;
    }
    cfg.validate()?;
    Ok(Budget::from_config(cfg))
}

fn family_params(params: &ParamArgs) -> Vec<f64> {
    match (&params.alpha, &params.q) {
        (Some(a), _) => vec![*a],
        (None, Some(q)) => q.clone(),
        (None, None) => Vec::new(),
    }
}

fn load_state(path: Option<&std::path::Path>, named: Option<&str>, params: &ParamArgs) -> Result<StateTensor> {
    match (path, named) {
        (Some(p), _) => {
            if params.alpha.is_some() || params.q.is_some() {
                bail!("--alpha and --q only apply to --named states");
            }
            let text = fs::read(p).with_context(|| format!("cannot read state file {}", p.display()))?;
            let (s, factor) =
                StateTensor::from_json(&text).with_context(|| format!("invalid state file {}", p.display()))?;
            if (factor - 1.0).abs() > 1e-12 {
                eprintln!("note: amplitudes rescaled by {factor}");
            }
            Ok(s)
        }
        (None, Some(name)) => Ok(named_state(name, &family_params(params))?),
        (None, None) => bail!("give a state with --state or --named"),
    }
}

/// 1-based party list to a 0-based cut.
fn parse_cut(cut: Option<&[usize]>, parties: usize) -> Result<Partition> {
    let block: Vec<usize> = match cut {
        None => vec![0],
        Some(list) => list
            .iter()
            .map(|&p| if p == 0 || p > parties { bail!("party {p} is out of range 1..={parties}") } else { Ok(p - 1) })
            .collect::<Result<_>>()?,
    };
    Ok(Partition::bipartition(&block, parties)?)
}

fn fmt(v: f64) -> String {
    format!("{v:.10}")
}

fn print_diagnostics(d: &Diagnostics) {
    println!(
        "diagnostics: evaluations={} restarts={} converged={} grid_best={} gap={}",
        d.evaluations,
        d.restarts,
        d.converged,
        fmt(d.grid_best),
        d.gap.map_or_else(|| "-".into(), fmt)
    );
}

fn print_result(r: &MeasureResult) {
    println!("value: {}", fmt(r.value));
    if !r.argmin.is_empty() {
        let args: Vec<String> = r.argmin.iter().map(|&x| fmt(x)).collect();
        println!("argmin: [{}]", args.join(", "));
    }
    let parties: Vec<String> = r.parties.iter().map(|p| (p + 1).to_string()).collect();
    println!("parties: {}", parties.join(","));
    if let Some(tree) = &r.outcome_tree {
        let order: Vec<String> = tree.party_order().iter().map(|p| (p + 1).to_string()).collect();
        println!(
            "hierarchy: order {} with {} measurements, outcome entropy {}",
            order.join(","),
            tree.measurement_count(),
            fmt(tree.entropy())
        );
    }
    print_diagnostics(&r.diagnostics);
}

fn require_three_qubits(s: &StateTensor, what: &str) -> Result<()> {
    if s.num_parties() != 3 || !s.is_qubits() {
        bail!("{what} is defined for three qubits; the state has dims {:?}", s.dims());
    }
    Ok(())
}

fn finish(converged: bool, strict: bool) -> ExitCode {
    if converged {
        ExitCode::SUCCESS
    } else if strict {
        eprintln!("error: optimizer did not converge within its budget");
        ExitCode::from(EXIT_UNCONVERGED)
    } else {
        eprintln!("warning: optimizer did not converge within its budget");
        ExitCode::SUCCESS
    }
}

fn compute(args: &StateArgs, measure: Measure, cut: Option<&[usize]>, opt: &OptArgs) -> Result<ExitCode> {
    let budget = budget(opt)?;
    if measure == Measure::TangleGhzw {
        let alpha = match (args.named.as_deref(), args.params.alpha) {
            (Some(n), Some(a)) if n.eq_ignore_ascii_case("ghz-w") || n.eq_ignore_ascii_case("ghzw") => a,
            _ => bail!("tangle-ghzw needs --named GHZ-W --alpha A"),
        };
        named_state("GHZ-W", &[alpha])?;
        println!("value: {}", fmt(tangle_ghz_w(alpha)));
        return Ok(ExitCode::SUCCESS);
    }
    let s = load_state(args.state.as_deref(), args.named.as_deref(), &args.params)?;
    let converged = match measure {
        Measure::Emb => {
            let r = if s.num_parties() == 3 && s.is_qubits() {
                emb_tripartite(&s, &budget.emb)?
            } else {
                emb_general(&s, &Partition::finest(s.num_parties()), &budget)?
            };
            print_result(&r);
            r.diagnostics.converged
        }
        Measure::Ehmin => {
            require_three_qubits(&s, "E_Hmin")?;
            let r = e_hmin(&s, &budget)?;
            print_result(&r);
            r.diagnostics.converged
        }
        Measure::Elocc => {
            require_three_qubits(&s, "E_LOCC")?;
            let r = e_locc(&s, &budget)?;
            print_result(&r);
            r.diagnostics.converged
        }
        Measure::Egeom => {
            let r = geometric_measure_general(&s, &budget.geometric)?;
            print_result(&r);
            if s.is_qubits() && s.symmetry_defect() <= SYMMETRY_TOLERANCE {
                let sym = geometric_measure_symmetric(&s, &budget.emb)?;
                println!("symmetric search: {}", fmt(sym.value));
            }
            r.diagnostics.converged
        }
        Measure::Ebi => {
            let v = match cut {
                Some(_) => bipartite_entanglement(&s, &parse_cut(cut, s.num_parties())?)?,
                None => max_bipartite_entanglement(&s)?,
            };
            println!("value: {}", fmt(v));
            true
        }
        Measure::Sandwich => {
            require_three_qubits(&s, "the relative-entropy sandwich")?;
            let sw = relative_entropy_sandwich(&s, &budget)?;
            println!("lower: {}", fmt(sw.lower));
            println!("upper: {}", fmt(sw.upper));
            match sw.exact {
                Some(v) => println!("exact: {}", fmt(v)),
                None => println!("exact: -"),
            }
            print_diagnostics(&sw.bound.diagnostics);
            sw.bound.diagnostics.converged
        }
        Measure::Schmidt => {
            print_schmidt(&s, cut)?;
            true
        }
        Measure::TangleGhzw => unreachable!("answered from --alpha above"),
    };
    Ok(finish(converged, opt.strict))
}

fn print_schmidt(s: &StateTensor, cut: Option<&[usize]>) -> Result<()> {
    let part = parse_cut(cut, s.num_parties())?;
    let sp = schmidt_decompose(s, &part)?;
    let side: Vec<String> = part.blocks()[0].iter().map(|p| (p + 1).to_string()).collect();
    println!("cut: {{{}}} | rest", side.join(","));
    let vals: Vec<String> = sp.values.iter().map(|&v| fmt(v)).collect();
    println!("values: [{}]", vals.join(", "));
    println!("rank: {}", sp.rank());
    println!("entropy: {}", fmt(sp.entropy()));
    Ok(())
}

fn sweep(family: &str, points: usize, out: Option<&std::path::Path>, no_assert: bool, opt: &OptArgs) -> Result<ExitCode> {
    if !matches!(family.to_ascii_lowercase().as_str(), "ghz-w" | "ghzw") {
        bail!("unknown sweep family {family:?}; only GHZ-W is available");
    }
    let budget = budget(opt)?;
    let rows = ghz_w_sweep(points, &budget)?;
    let csv = to_csv(&rows);
    match out {
        Some(path) => fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    if !no_assert {
        let violations: Vec<String> = rows.iter().flat_map(|r| r.violations()).collect();
        if !violations.is_empty() {
            for v in &violations {
                eprintln!("{v}");
            }
            bail!("{} row ordering violation(s)", violations.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_check(label: &str, c: &StateCheck) {
    println!(
        "{label}: {} emb={} ehmin={} egeom={} ebi={} elocc={}",
        if c.passed() { "pass" } else { "FAIL" },
        fmt(c.emb),
        fmt(c.ehmin),
        fmt(c.egeom),
        fmt(c.ebi),
        fmt(c.elocc)
    );
    for f in &c.failures {
        println!("  violated: {f}");
    }
    if !c.tight.is_empty() {
        println!("  tight: {}", c.tight.join(", "));
    }
}

fn verify(trials: usize, state: &OptionalStateArgs, opt: &OptArgs) -> Result<ExitCode> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let budget = budget(opt)?;
    let checks = if state.state.is_some() || state.named.is_some() {
        let s = load_state(state.state.as_deref(), state.named.as_deref(), &state.params)?;
        require_three_qubits(&s, "the inequality check")?;
        let c = check_state(&s, &budget)?;
        print_check("state", &c);
        vec![c]
    } else {
        let report = verify_random(opt.seed, trials, &budget)?;
        for c in report.checks.iter().filter(|c| !c.passed()) {
            print_check(&format!("seed {}", c.seed.unwrap_or_default()), c);
        }
        report.checks
    };
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("passed: {passed}/{}", checks.len());
    let converged = checks.iter().all(|c| !c.unconverged);
    if passed != checks.len() {
        return Ok(ExitCode::FAILURE);
    }
    Ok(finish(converged, opt.strict))
}
