//! Command-line front end: validate carrier files, check dynamical maps,
//! explore translation groups, verify exchange operators, and certify the
//! generator-and-relation algebra.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use frtlab_core::carriers::Structure;
use frtlab_core::dybm::DybmFile;
use frtlab_core::frt::{
    check_bialgebroid_axioms, counit, demo_nondirect_sum, element_from_terms, word_degrees,
    Channel, ElementTerm, EvaluationBattery,
};
use frtlab_core::lop::{boxtimes, check_rll, sigma_loperator, unit_loperator};
use frtlab_core::frt::g_functor;
use frtlab_core::wgroup::generate_group;
use frtlab_core::{builtin_q5, builtin_q5_map, builtin_z5_ternary, LOperator, SigmaContext};

#[derive(Parser)]
#[command(name = "frtlab", version, about = "Exact checks for dynamical Yang-Baxter structures")]
struct Cli {
    /// Emit structured JSON instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    /// Include first counterexamples in human-readable output.
    #[arg(long, global = true)]
    witness: bool,
    /// Print elapsed time per step.
    #[arg(long, global = true)]
    timing: bool,
    /// Seed for randomized subchecks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on group closure size.
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a carrier structure file (quasigroup, action, or ternary).
    Validate { file: PathBuf },
    /// Checks on dynamical map files.
    Dybm {
        #[command(subcommand)]
        command: DybmCommand,
    },
    /// Translation-group computations.
    Wgroup {
        #[command(subcommand)]
        command: WgroupCommand,
    },
    /// Exchange-operator checks.
    Lop {
        #[command(subcommand)]
        command: LopCommand,
    },
    /// Generator-and-relation algebra commands.
    Frt {
        #[command(subcommand)]
        command: FrtCommand,
    },
    /// Run the full built-in pipeline and report every headline check.
    Reproduce,
}

#[derive(Subcommand)]
enum DybmCommand {
    /// Run checks on a dynamical map file; all checks by default.
    Check {
        file: PathBuf,
        #[command(flatten)]
        which: DybmChecks,
    },
    /// Write the built-in five-point map to a file.
    ExportQ5 {
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Default)]
struct DybmChecks {
    #[arg(long)]
    qdybe: bool,
    #[arg(long)]
    weight_zero: bool,
    #[arg(long)]
    bijective: bool,
    #[arg(long)]
    unitary: bool,
}

impl DybmChecks {
    fn all(&self) -> bool {
        !(self.qdybe || self.weight_zero || self.bijective || self.unitary)
    }
}

#[derive(Subcommand)]
enum WgroupCommand {
    /// Order of the group generated by the translations of a carrier file.
    Order { file: PathBuf },
}

#[derive(Subcommand)]
enum LopCommand {
    /// Write the basic operator of a map to a file.
    ExportBasic {
        map: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the exchange relation for an operator file against a map file.
    Check { map: PathBuf, lop: PathBuf },
    /// Product of two operator files.
    Tensor {
        map: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum FrtCommand {
    /// Worked example on the built-in five-point map.
    DemoQ5,
    /// Certify relations and coalgebra axioms for a map file.
    Verify {
        map: PathBuf,
        /// Extra representation channels from operator files.
        #[arg(long)]
        loperators: Vec<PathBuf>,
    },
    /// Evaluate an element file through every channel.
    Eval { map: PathBuf, element: PathBuf },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn load_context(path: &Path) -> Result<SigmaContext> {
    let file: DybmFile = read_json(path)?;
    let map = file.into_map().map_err(|e| anyhow::anyhow!("bad map file: {e}"))?;
    SigmaContext::from_map(&map).map_err(|e| anyhow::anyhow!("map is not a valid operator: {e}"))
}

/// A single pass/fail line of a report.
#[derive(Serialize)]
struct Line {
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    millis: Option<u128>,
}

struct Report {
    json: bool,
    witness: bool,
    timing: bool,
    lines: Vec<Line>,
}

impl Report {
    fn new(cli: &Cli) -> Report {
        Report { json: cli.json, witness: cli.witness, timing: cli.timing, lines: Vec::new() }
    }

    fn step<F: FnOnce() -> (bool, Option<serde_json::Value>)>(&mut self, name: &str, f: F) {
        let start = Instant::now();
        let (pass, detail) = f();
        let millis = start.elapsed().as_millis();
        self.lines.push(Line {
            name: name.to_string(),
            pass,
            detail,
            millis: if self.timing { Some(millis) } else { None },
        });
    }

    fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    fn finish(self) -> ! {
        if self.json {
            let out = json!({ "pass": self.pass(), "checks": self.lines });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        } else {
            for line in &self.lines {
                let status = if line.pass { "pass" } else { "FAIL" };
                let mut text = format!("{status}  {}", line.name);
                if self.witness || !line.pass {
                    if let Some(d) = &line.detail {
                        text.push_str(&format!("  {d}"));
                    }
                }
                if let Some(ms) = line.millis {
                    text.push_str(&format!("  [{ms} ms]"));
                }
                println!("{text}");
            }
            println!("{}", if self.pass() { "all checks passed" } else { "some checks FAILED" });
        }
        std::process::exit(if self.pass() { 0 } else { 1 })
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Validate { file } => {
            let structure: Structure = read_json(file)?;
            let validation = structure
                .validate()
                .map_err(|e| anyhow::anyhow!("malformed structure: {e}"))?;
            let mut report = Report::new(cli);
            report.step("structure is valid", || {
                (validation.pass, Some(json!({ "failures": validation.failures })))
            });
            report.finish()
        }
        Command::Dybm { command } => run_dybm(cli, command),
        Command::Wgroup { command } => run_wgroup(cli, command),
        Command::Lop { command } => run_lop(cli, command),
        Command::Frt { command } => run_frt(cli, command),
        Command::Reproduce => run_reproduce(cli),
    }
}

fn run_dybm(cli: &Cli, command: &DybmCommand) -> Result<()> {
    match command {
        DybmCommand::ExportQ5 { output } => {
            write_json(output, &DybmFile::from_map(&builtin_q5_map()))?;
            Ok(())
        }
        DybmCommand::Check { file, which } => {
            let map_file: DybmFile = read_json(file)?;
            let map = map_file.into_map().map_err(|e| anyhow::anyhow!("bad map file: {e}"))?;
            let mut report = Report::new(cli);
            if which.all() || which.qdybe {
                let out = map.check_qdybe();
                report.step("braid relation", || (out.pass, Some(json!(out))));
            }
            if which.all() || which.weight_zero {
                let out = map.check_weight_zero();
                report.step("weight zero", || (out.pass, Some(json!(out))));
            }
            if which.all() || which.bijective {
                let out = map.check_bijective();
                report.step("bijective", || (out.pass, Some(json!(out))));
            }
            if which.all() || which.unitary {
                let out = map.check_unitarity();
                let pass = out.tau_r_tau_r.pass && out.r_tau_r_tau.pass;
                report.step("unitarity (both orientations)", || (pass, Some(json!(out))));
            }
            report.finish()
        }
    }
}

fn action_of_structure(structure: &Structure) -> Result<frtlab_core::FiniteAction> {
    match structure {
        Structure::Action(a) => Ok(a.clone()),
        Structure::Quasigroup(q) => Ok(q.as_action()),
        Structure::Ternary(_) => bail!("ternary systems carry no translation action"),
    }
}

fn run_wgroup(cli: &Cli, command: &WgroupCommand) -> Result<()> {
    match command {
        WgroupCommand::Order { file } => {
            let structure: Structure = read_json(file)?;
            let action = action_of_structure(&structure)?;
            let closure = generate_group(&action, cli.cap)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            if cli.json {
                println!("{}", json!({ "order": closure.order() }));
            } else {
                println!("order {}", closure.order());
            }
            std::process::exit(0)
        }
    }
}

fn run_lop(cli: &Cli, command: &LopCommand) -> Result<()> {
    match command {
        LopCommand::ExportBasic { map, output } => {
            let ctx = load_context(map)?;
            write_json(output, &sigma_loperator(&ctx))?;
            Ok(())
        }
        LopCommand::Check { map, lop } => {
            let ctx = load_context(map)?;
            let operator: LOperator = read_json(lop)?;
            operator
                .revalidate(&ctx)
                .map_err(|e| anyhow::anyhow!("operator file is malformed: {e}"))?;
            let mut report = Report::new(cli);
            report.step("exchange relation", || {
                let out = check_rll(&ctx, &operator);
                (out.pass, Some(json!(out)))
            });
            report.finish()
        }
        LopCommand::Tensor { map, a, b, output } => {
            let ctx = load_context(map)?;
            let la: LOperator = read_json(a)?;
            let lb: LOperator = read_json(b)?;
            la.revalidate(&ctx).map_err(|e| anyhow::anyhow!("first operator: {e}"))?;
            lb.revalidate(&ctx).map_err(|e| anyhow::anyhow!("second operator: {e}"))?;
            let product = boxtimes(&ctx, &la, &lb);
            write_json(output, &product)?;
            Ok(())
        }
    }
}

fn battery_with_extras(ctx: &SigmaContext, extras: &[PathBuf]) -> Result<EvaluationBattery> {
    let mut battery = EvaluationBattery::standard(ctx);
    for (i, path) in extras.iter().enumerate() {
        let operator: LOperator = read_json(path)?;
        operator
            .revalidate(ctx)
            .map_err(|e| anyhow::anyhow!("operator {}: {e}", path.display()))?;
        battery
            .channels
            .push((format!("loperator-{i}"), Channel::Rep(g_functor(ctx, &operator))));
    }
    Ok(battery)
}

fn run_frt(cli: &Cli, command: &FrtCommand) -> Result<()> {
    match command {
        FrtCommand::DemoQ5 => {
            let ctx = SigmaContext::from_map(&builtin_q5_map())
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let demo = demo_nondirect_sum(&ctx);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&demo)?);
                std::process::exit(if demo.pass { 0 } else { 1 });
            }
            let mut report = Report::new(cli);
            report.step("counit of the demo word at the base parameter is 1", || {
                (demo.counit_value_at_zero == "1", Some(json!(demo.counit_value_at_zero)))
            });
            report.step("left and right degrees agree", || (demo.left_degree_equals_right, None));
            report.step("degree [1][2] differs from [3][4]", || {
                (demo.degree_12_differs_from_34, None)
            });
            report.step("unique generator pair of degree [1][2] is (1,2)", || {
                (demo.unique_degree_pair == Some((1, 2)), Some(json!(demo.unique_degree_pair)))
            });
            report.step("rewriting is an exact relation (all channels)", || {
                (demo.rewrite_is_relation, None)
            });
            report.step("rewritten words avoid left degree [1][2]", || {
                (demo.rhs_left_degrees_avoid_12, None)
            });
            report.finish()
        }
        FrtCommand::Verify { map, loperators } => {
            let ctx = load_context(map)?;
            let battery = battery_with_extras(&ctx, loperators)?;
            let mut report = Report::new(cli);
            for (name, ch) in &battery.channels {
                report.step(&format!("channel '{name}' kills the relations"), || {
                    let cert = frtlab_core::frt::certify_kills_ideal(&ctx, name, ch);
                    (cert.pass, Some(json!(cert)))
                });
            }
            report.step("coalgebra axioms (coassociativity, counit, grading)", || {
                let axioms = check_bialgebroid_axioms(&ctx, &battery, &[]);
                (axioms.pass(), Some(json!(axioms)))
            });
            report.finish()
        }
        FrtCommand::Eval { map, element } => {
            let ctx = load_context(map)?;
            let terms: Vec<ElementTerm> = read_json(element)?;
            let e = element_from_terms(ctx.h_size(), ctx.x_size(), &terms)
                .map_err(|e| anyhow::anyhow!("bad element file: {e}"))?;
            let battery = EvaluationBattery::standard(&ctx);
            let ones = vec![frtlab_core::scalar::int(1); ctx.h_size()];
            let counit_values: Vec<String> = counit(&ctx.action, &e)
                .apply(&ones)
                .iter()
                .map(frtlab_core::scalar::scalar_string)
                .collect();
            let degrees: Vec<(Vec<usize>, Vec<usize>)> = e
                .terms
                .keys()
                .map(|w| {
                    let (l, r) = word_degrees(&ctx.action, w);
                    (l.perm, r.perm)
                })
                .collect();
            let channels: Vec<serde_json::Value> = battery
                .channels
                .iter()
                .map(|(name, ch)| json!({ "channel": name, "zero": ch.kills(&ctx.action, &e) }))
                .collect();
            let out = json!({
                "terms": e.terms.len(),
                "word_degrees": degrees,
                "counit_on_constant_one": counit_values,
                "channels": channels,
            });
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("terms: {}", e.terms.len());
                println!("counit on the constant function 1: {:?}", counit_values);
                for ch in &channels {
                    println!("channel {}: zero = {}", ch["channel"], ch["zero"]);
                }
            }
            std::process::exit(0)
        }
    }
}

fn run_reproduce(cli: &Cli) -> Result<()> {
    let mut report = Report::new(cli);

    let q5 = builtin_q5();
    report.step("built-in quasigroup is a Latin square", || {
        let v = q5.validate().expect("shape");
        (v.pass, Some(json!(v.failures)))
    });
    report.step("built-in ternary system is regular", || {
        let v = builtin_z5_ternary().validate().expect("shape");
        (v.pass, Some(json!(v.failures)))
    });

    let map = builtin_q5_map();
    report.step("map satisfies the braid relation (625 parameter cases)", || {
        let out = map.check_qdybe();
        (out.pass, Some(json!(out)))
    });
    report.step("map is weight zero", || {
        let out = map.check_weight_zero();
        (out.pass, Some(json!(out)))
    });
    report.step("map is bijective per parameter", || {
        let out = map.check_bijective();
        (out.pass, Some(json!(out)))
    });
    report.step("map is unitary in both operator orders", || {
        let out = map.check_unitarity();
        (out.tau_r_tau_r.pass && out.r_tau_r_tau.pass, Some(json!(out)))
    });
    report.step("first map value R(0)(1,2) = (4,3)", || {
        (map.apply(0, 1, 2) == (4, 3), Some(json!(map.apply(0, 1, 2))))
    });

    let closure = generate_group(&map.action, cli.cap).map_err(|e| anyhow::anyhow!("{e}"))?;
    report.step("translation group has order 120", || {
        (closure.order() == 120, Some(json!(closure.order())))
    });

    let ctx = SigmaContext::from_map(&map).map_err(|e| anyhow::anyhow!("{e}"))?;
    report.step("linearized operator satisfies the operator braid relation", || {
        let out = ctx.check_yb_operator();
        (out.pass, Some(json!(out)))
    });

    let sigma_op = sigma_loperator(&ctx);
    let unit_op = unit_loperator(&ctx);
    report.step("basic operator satisfies the exchange relation", || {
        let out = check_rll(&ctx, &sigma_op);
        (out.pass, Some(json!(out)))
    });
    report.step("unit operator satisfies the exchange relation", || {
        let out = check_rll(&ctx, &unit_op);
        (out.pass, Some(json!(out)))
    });
    let product = boxtimes(&ctx, &sigma_op, &sigma_op);
    report.step("product operator satisfies the exchange relation", || {
        let out = check_rll(&ctx, &product);
        (out.pass, Some(json!(out)))
    });

    let battery = EvaluationBattery::standard(&ctx);
    for (name, ch) in &battery.channels {
        report.step(&format!("channel '{name}' kills the defining relations"), || {
            let cert = frtlab_core::frt::certify_kills_ideal(&ctx, name, ch);
            (cert.pass, Some(json!(cert)))
        });
    }

    report.step("coalgebra axioms on the full alphabet", || {
        let axioms = check_bialgebroid_axioms(&ctx, &battery, &[]);
        (axioms.pass(), Some(json!(axioms)))
    });

    report.step("operator-representation correspondence round-trips", || {
        let rep = g_functor(&ctx, &sigma_op);
        let back = frtlab_core::frt::f_functor(&ctx, &rep);
        (back.l == sigma_op.l && back.l_inv == sigma_op.l_inv, None)
    });

    let demo = demo_nondirect_sum(&ctx);
    report.step("non-direct-sum demo", || (demo.pass, Some(json!(demo))));

    report.finish()
}
