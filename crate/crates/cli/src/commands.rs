//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;

use mukai_lab::check::run_all;
use mukai_lab::donaldson::q_eval;
use mukai_lab::hilbert::{beauville_pair, fujiki_lambda};
use mukai_lab::json::{self, JsonScalar};
use mukai_lab::mukai::{canonical_vr, dim_moduli, mukai_pairing, normalize};
use mukai_lab::scalar::format_rational;
use mukai_lab::theta::{theta, theta_family, verify_isometry};
use mukai_lab::walls::{
    chamber_signature, enumerate_walls, is_k_generic, is_k_suitable, separating_walls, suitable_by_criterion,
};
use mukai_lab::{BigInt, BigRational, HilbClass, MukaiElement, SurfaceModel, WallClass};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::{number_out, plot, Command, Config, Failure};

pub fn run(cfg: &Config, cmd: Command) -> Result<(), Failure> {
    let s = &cfg.surface;
    match cmd {
        Command::Pair { alpha, beta } => {
            let a = mukai_arg::<BigRational>(&alpha)?;
            let b = mukai_arg::<BigRational>(&beta)?;
            print_value(cfg, number_out(cfg, &mukai_pairing(s, &a, &b)?));
        }
        Command::Dim { r, n, v } => {
            let v = match (r, n, v) {
                (Some(r), Some(n), _) => canonical_vr(s, r, n)?,
                (_, _, Some(v)) => mukai_arg::<BigInt>(&v)?,
                _ => return Err(Failure::Input("give --r and --n, or --v".into())),
            };
            println!("{}", crate::int_out(cfg, &dim_moduli(s, &v)?));
        }
        Command::Vr { r, n } => print_mukai(cfg, s, &canonical_vr::<BigInt>(s, r, n)?),
        Command::Normalize { v } => print_mukai(cfg, s, &normalize(s, &mukai_arg::<BigInt>(&v)?)?),
        Command::Walls { k, plot: path } => {
            let walls = enumerate_walls(s, &k)?;
            if let Some(path) = path {
                fs::write(&path, plot::walls_svg(&walls, &k))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            print_walls(cfg, &walls);
        }
        Command::Suitable { h, k } => {
            let generic = is_k_generic(s, &h, &k)?;
            let suitable = is_k_suitable(s, &h, &k)?;
            let criterion = suitable_by_criterion(&h, &k)?;
            if cfg.json {
                let obj = json!({
                    "H": json::polarization_to_json(&h),
                    "k": format_rational(&k),
                    "generic": generic,
                    "suitable": suitable,
                    "criterion": criterion,
                });
                println!("{obj}");
            } else {
                println!("k-generic: {generic}");
                println!("k-suitable: {suitable}");
                println!("b/a >= k + 1: {criterion}");
            }
        }
        Command::Chamber { h, k } => {
            let signs: Vec<&str> = chamber_signature(s, &h, &k)?
                .into_iter()
                .map(|o| if o.is_gt() { "+" } else { "-" })
                .collect();
            if cfg.json {
                println!("{}", json!(signs));
            } else {
                println!("({})", signs.join(", "));
            }
        }
        Command::Separate { h0, h1, k } => print_walls(cfg, &separating_walls(s, &h0, &h1, &k)?),
        Command::Theta { r, n, alpha, family } => {
            let a = mukai_arg::<BigRational>(&alpha)?;
            let image = if family { theta_family(s, r, n, &a)? } else { theta(s, r, n, &a)? };
            print_hilb(cfg, s, &image);
        }
        Command::VerifyTheta { r_max, n_max } => {
            let mut reports = Vec::new();
            for r in 1..=r_max {
                for n in 2..=n_max {
                    reports.push(verify_isometry(s, r, n)?);
                }
            }
            if cfg.json {
                let arr: Vec<Value> = reports.iter().map(json::isometry_report_to_json).collect();
                println!("{}", Value::Array(arr));
            } else {
                for rep in &reports {
                    println!(
                        "r={} n={} integral={} gram_preserved={} disc_vperp={} disc_lambda={} surjective={}",
                        rep.r,
                        rep.n,
                        rep.integral,
                        rep.gram_preserved,
                        rep.disc_vperp_omega,
                        rep.disc_lambda_r,
                        rep.surjective
                    );
                }
            }
            if reports.iter().any(|r| !r.surjective) {
                return Err(Failure::Checks);
            }
        }
        Command::Beauville { n, beta, gamma } => {
            let b = hilb_arg(&beta)?;
            let g = hilb_arg(&gamma)?;
            print_value(cfg, number_out(cfg, &beauville_pair(s, n, &b, &g)?));
        }
        Command::Fujiki { n } => println!("{}", crate::int_out(cfg, &fujiki_lambda(n)?)),
        Command::Donaldson { r, n, alpha } => {
            let a = json::surface_class_from_json::<BigRational>(&json::parse(&alpha)?)?;
            let q = q_eval(s, &canonical_vr(s, r, n)?, &a)?;
            print_value(cfg, json::rational_json(&q));
        }
        Command::CheckAll => {
            let outcomes = run_all(s);
            if cfg.json {
                let arr: Vec<Value> = outcomes
                    .iter()
                    .map(|o| json!({ "name": o.name, "passed": o.passed(), "cases": o.cases, "failure": o.failure }))
                    .collect();
                println!("{}", Value::Array(arr));
            } else {
                for o in &outcomes {
                    match &o.failure {
                        None => println!("PASS {} ({} cases)", o.name, o.cases),
                        Some(msg) => println!("FAIL {}: {msg}", o.name),
                    }
                }
            }
            if outcomes.iter().any(|o| !o.passed()) {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn mukai_arg<T: JsonScalar>(text: &str) -> Result<MukaiElement<T>, Failure> {
    Ok(json::mukai_from_json(&json::parse(text)?)?)
}

fn hilb_arg(text: &str) -> Result<HilbClass<BigRational>, Failure> {
    Ok(json::hilb_from_json(&json::parse(text)?)?)
}

/// Prints a scalar JSON value; strings lose their quotes in text mode.
fn print_value(cfg: &Config, v: Value) {
    match v {
        Value::String(s) if !cfg.json => println!("{s}"),
        other => println!("{other}"),
    }
}

fn picard_names(s: &SurfaceModel, suffix: &str) -> Vec<String> {
    (0..s.picard_rank())
        .map(|i| {
            if Some(i) == s.sigma_index() {
                format!("Sigma{suffix}")
            } else if Some(i) == s.fiber_index() {
                format!("C{suffix}")
            } else {
                format!("e{i}{suffix}")
            }
        })
        .collect()
}

/// `c0 + c1 name1 - ...` with zero terms dropped.
fn linear_combination(terms: &[(BigRational, String)]) -> String {
    let mut out = String::new();
    for (c, name) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag.is_one();
        let coeff = if mag.is_integer() { mag.to_integer().to_string() } else { format_rational(&mag) };
        match (name.is_empty(), unit) {
            (true, _) => out.push_str(&coeff),
            (false, true) => out.push_str(name),
            (false, false) => {
                let _ = write!(out, "{coeff} {name}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn trans_terms(trans: &Option<Vec<BigRational>>, suffix: &str) -> Vec<(BigRational, String)> {
    trans
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, c)| (c.clone(), format!("t{i}{suffix}")))
        .collect()
}

fn print_mukai(cfg: &Config, s: &SurfaceModel, m: &MukaiElement<BigInt>) {
    if cfg.json {
        println!("{}", json::mukai_to_json(m));
        return;
    }
    let mut terms = vec![(q(&m.a0), String::new())];
    terms.extend(m.c1.iter().map(q).zip(picard_names(s, "")));
    terms.extend(trans_terms(&m.trans.as_ref().map(|t| t.iter().map(q).collect()), ""));
    terms.push((q(&m.a2), "omega".into()));
    println!("{}", linear_combination(&terms));
}

fn print_hilb(cfg: &Config, s: &SurfaceModel, h: &HilbClass<BigRational>) {
    if cfg.json {
        let v = match h.to_integral() {
            Some(int) => json::hilb_to_json(&int),
            None => json::hilb_to_json(h),
        };
        println!("{v}");
        return;
    }
    let mut terms: Vec<(BigRational, String)> = h.pic.iter().cloned().zip(picard_names(s, "1")).collect();
    terms.extend(trans_terms(&h.trans, "1"));
    terms.push((h.t.clone(), "T".into()));
    println!("{}", linear_combination(&terms));
}

fn print_walls(cfg: &Config, walls: &[WallClass]) {
    if cfg.json {
        println!("{}", Value::Array(walls.iter().map(json::wall_to_json).collect()));
        return;
    }
    if walls.is_empty() {
        println!("no walls");
    }
    for w in walls {
        let l = linear_combination(&[
            (BigRational::from_integer(w.x.into()), "Sigma".into()),
            (BigRational::from_integer(w.y.into()), "C".into()),
        ]);
        let (a, b) = w.ray_direction();
        println!("{l}    L^2 = {}    wall b/a = {}", w.l_squared, format_ratio(b, a));
    }
}

fn format_ratio(num: i64, den: i64) -> String {
    let r = BigRational::new(num.into(), den.into());
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format_rational(&r)
    }
}
