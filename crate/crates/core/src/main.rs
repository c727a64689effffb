use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dotswitch::gates::{self, TwoQubitModel, DEFAULT_J_MHZ};
use dotswitch::spectrum::magic_transitions;
use dotswitch::spin::{nmr_at_field, nmr_numeric};
use dotswitch::sweep::{load_config, run_sweep, write_sweep_outputs, SweepSpec};
use dotswitch::{DotConfig, Error, Result};

#[derive(Parser)]
#[command(
    name = "dotswitch",
    version,
    about = "Field- and IR-switched NMR of a nucleus in a two-electron quantum dot"
)]
struct Cli {
    /// JSON config file (DotConfig keys plus optional "sweep" object).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep x = ω_c/ω₀ and write sweep.csv, optional SVG plots and manifest.json.
    Sweep {
        #[arg(long)]
        x_min: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Also plot the IR-excited (center-of-mass renormalized) columns.
        #[arg(long)]
        ir: bool,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Emit SVG plots of the coupling density and the relative NMR shift.
        #[arg(long)]
        svg: bool,
    },
    /// List ground-state (magic number) transitions.
    Transitions {
        #[arg(long, default_value_t = 0.0)]
        x_min: f64,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
    },
    /// NMR frequency at a field ratio, or for an explicit coupling and field.
    Nmr {
        #[arg(long, conflicts_with_all = ["a_mhz", "b_tesla"])]
        x: Option<f64>,
        #[arg(long)]
        ir: bool,
        #[arg(long, requires = "b_tesla")]
        a_mhz: Option<f64>,
        #[arg(long, requires = "a_mhz")]
        b_tesla: Option<f64>,
    },
    /// Hadamard check and conditional-resonance CNOT fidelity.
    Gate {
        #[arg(long, default_value_t = 15.0)]
        f_a: f64,
        #[arg(long, default_value_t = 17.0)]
        f_b: f64,
        #[arg(long, default_value_t = DEFAULT_J_MHZ)]
        j_mhz: f64,
        #[arg(long, default_value_t = 0.05)]
        rabi_over_j: f64,
    },
}

fn configure(path: Option<&PathBuf>) -> Result<(DotConfig, SweepSpec)> {
    match path {
        Some(p) => load_config(p),
        None => Ok((DotConfig::default().validate()?, SweepSpec::default())),
    }
}

fn run(cli: Cli) -> Result<()> {
    let (cfg, file_spec) = configure(cli.config.as_ref())?;
    match cli.command {
        Command::Sweep {
            x_min,
            x_max,
            steps,
            ir,
            out_dir,
            svg,
        } => {
            let spec = SweepSpec {
                x_min: x_min.unwrap_or(file_spec.x_min),
                x_max: x_max.unwrap_or(file_spec.x_max),
                steps: steps.unwrap_or(file_spec.steps),
            }
            .validate()?;
            let rows = run_sweep(&cfg, &spec)?;
            let mut columns = Vec::new();
            if svg {
                columns.extend(["delta_l0sq", "shift"]);
                if ir {
                    columns.extend(["delta_cm_l0sq", "shift_ir"]);
                }
            }
            let out = write_sweep_outputs(&cfg, &spec, &rows, &columns, &out_dir)?;
            for f in &out.manifest.files {
                println!("{}  {}", f.sha256, out.dir.join(&f.name).display());
            }
            println!("{}", out.dir.join("manifest.json").display());
        }
        Command::Transitions { x_min, x_max } => {
            println!("x_star\tb_tesla\tfrom\tto");
            for t in magic_transitions(&cfg, x_min, x_max)? {
                println!(
                    "{:.6}\t{:.6}\t{}\t{}",
                    t.x_star,
                    cfg.b_field_from_ratio(t.x_star),
                    t.from,
                    t.to
                );
            }
        }
        Command::Nmr { x, ir, a_mhz, b_tesla } => match (x, a_mhz, b_tesla) {
            (Some(x), _, _) => {
                let r = nmr_at_field(&cfg, x, ir)?;
                println!("x        {:.6}", r.x);
                println!("B        {:.6} T", r.b_tesla);
                println!("ground   ({},{})", r.m_abs, r.s_total);
                println!("A        {:.6} MHz{}", r.a_mhz, if ir { " (IR)" } else { "" });
                println!("f0       {:.6} MHz", r.f0);
                println!("f_nmr    {:.6} MHz", r.f_nmr);
                println!("shift    {:.6}", r.shift);
                println!("c1, c2   {:.9}, {:.9}", r.c1, r.c2);
            }
            (None, Some(a), Some(b)) => {
                let r = nmr_numeric(a, b, &cfg)?;
                println!("f_nmr    {:.9} MHz", r.f_nmr);
                println!("f_closed {:.9} MHz", r.f_closed);
                println!("f0       {:.9} MHz", r.f0);
                println!("c1, c2   {:.9}, {:.9}", r.c1, r.c2);
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "nmr needs --x or both --a-mhz and --b-tesla".into(),
                ))
            }
        },
        Command::Gate {
            f_a,
            f_b,
            j_mhz,
            rabi_over_j,
        } => {
            let h = gates::hadamard();
            println!(
                "hadamard [[{:.6}, {:.6}], [{:.6}, {:.6}]]",
                h[(0, 0)].re,
                h[(0, 1)].re,
                h[(1, 0)].re,
                h[(1, 1)].re
            );
            let model = TwoQubitModel::new(f_a, f_b, j_mhz)?;
            let report = gates::cnot_conditional(&model, rabi_over_j)?;
            println!("cnot rabi/J = {rabi_over_j}");
            println!("  fidelity              {:.9}", report.fidelity);
            println!("  uncorrected fidelity  {:.9}", report.uncorrected_fidelity);
            println!("  off-resonant residual {:.3e}", report.residual_offresonant_population);
            println!(
                "  Z corrections (rad)   control {:.6}, target {:.6}",
                report.control_phase, report.target_phase
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
