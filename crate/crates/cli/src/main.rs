use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mukai_lab::json::{self, JsonError};
use mukai_lab::scalar::{format_rational, parse_rational};
use mukai_lab::{BigInt, BigRational, Polarization, SurfaceModel};
use serde_json::Value;

mod commands;
mod plot;

const BUILTIN_SURFACE: &str = "elliptic-k3";

#[derive(Parser, Debug)]
#[command(name = "mukai-lab", version, about = "Exact lattice computations for sheaves on K3 surfaces")]
struct Cli {
    /// Surface model JSON file, or `elliptic-k3` for the built-in model.
    #[arg(long, global = true, env = "MUKAI_LAB_SURFACE")]
    surface: Option<String>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mukai pairing of two elements.
    Pair {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Dimension 2 + <v, v> of the moduli space.
    Dim {
        #[arg(long, requires = "n", conflicts_with = "v")]
        r: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        /// Mukai vector JSON (instead of --r/--n).
        #[arg(long, required_unless_present = "r")]
        v: Option<String>,
    },
    /// The canonical vector v_r of dimension 2n.
    Vr {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
    },
    /// Twist v to the equivalent vector with chi = 1.
    Normalize {
        #[arg(long)]
        v: String,
    },
    /// k-walls meeting the ample cone.
    Walls {
        #[arg(long, value_parser = rational_arg)]
        k: BigRational,
        /// Write an SVG of the walls in the (a, b) quadrant.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Genericity and suitability of a polarization.
    Suitable {
        #[arg(long = "H", value_parser = polarization_arg)]
        h: Polarization,
        #[arg(long, value_parser = rational_arg)]
        k: BigRational,
    },
    /// Signs of L·H over the k-walls.
    Chamber {
        #[arg(long = "H", value_parser = polarization_arg)]
        h: Polarization,
        #[arg(long, value_parser = rational_arg)]
        k: BigRational,
    },
    /// Walls separating two polarizations.
    Separate {
        #[arg(long = "H0", value_parser = polarization_arg)]
        h0: Polarization,
        #[arg(long = "H1", value_parser = polarization_arg)]
        h1: Polarization,
        #[arg(long, value_parser = rational_arg)]
        k: BigRational,
    },
    /// The Mukai map θ_r on an element of v_r^⊥.
    Theta {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
        /// Use the family map, defined on all of H*(S).
        #[arg(long)]
        family: bool,
    },
    /// Isometry certificates for θ_r over a grid of (r, n).
    VerifyTheta {
        #[arg(long, default_value_t = 8)]
        r_max: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Beauville pairing on H²(S^[n]).
    Beauville {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Fujiki constant (2n)!/(n! 2^n).
    Fujiki {
        #[arg(long)]
        n: u64,
    },
    /// Donaldson polynomial q_v(α) for v = v_r of dimension 2n.
    Donaldson {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
    },
    /// Run the full invariant suite.
    CheckAll,
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn polarization_arg(s: &str) -> Result<Polarization, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Polarization::new(parse(a)?, parse(b)?))
}

/// Failure of a command, with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Domain error: exit 1.
    Domain(mukai_lab::Error),
    /// Bad input that parsed as arguments: exit 2.
    Input(String),
    /// The command ran but some check failed: exit 1.
    Checks,
}

impl From<mukai_lab::Error> for Failure {
    fn from(e: mukai_lab::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Domain(d) => Failure::Domain(d),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Loaded configuration shared by the commands.
pub struct Config {
    pub surface: SurfaceModel,
    pub json: bool,
}

fn load_surface(spec: Option<&str>) -> Result<SurfaceModel, Failure> {
    match spec {
        None | Some(BUILTIN_SURFACE) => Ok(SurfaceModel::elliptic_k3()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            Ok(json::surface_from_json(&json::parse(&text)?)?)
        }
    }
}

fn print_error(f: &Failure) {
    let obj = match f {
        Failure::Domain(e) => json::error_to_json(e),
        Failure::Input(msg) => serde_json::json!({ "code": "INVALID_INPUT", "message": msg }),
        Failure::Checks => return,
    };
    eprintln!("{obj}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_surface(cli.surface.as_deref())
        .and_then(|surface| commands::run(&Config { surface, json: cli.json }, cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            print_error(&f);
            match f {
                Failure::Input(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

/// Integer as a JSON value, or its decimal form for text output.
pub fn int_out(cfg: &Config, x: &BigInt) -> String {
    if cfg.json {
        json::int_json(x).to_string()
    } else {
        x.to_string()
    }
}

/// A rational printed as an integer when it is one.
pub fn number_out(cfg: &Config, q: &BigRational) -> Value {
    if q.is_integer() {
        json::int_json(&q.to_integer())
    } else if cfg.json {
        json::rational_json(q)
    } else {
        Value::String(format_rational(q))
    }
}
