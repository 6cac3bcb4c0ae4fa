//! The batch invariant suite behind `check-all`.
//!
//! Each check sweeps a fixed grid (ranks up to 8, `n` up to 10, `k` up to 60)
//! and compares library output with an independent computation. Checks run
//! in parallel; the report keeps the declaration order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::donaldson::{iota, q_eval, SurfaceClass};
use crate::hilbert::{beauville_pair, class_l, fujiki_lambda, sigma_embed, HilbClass};
use crate::lattice::det;
use crate::mukai::{canonical_vr, chi, dim_moduli, mukai_pairing, twist, wall_bound, MukaiElement, SurfaceModel};
use crate::theta::{beta_r, build_theta_recursive, lambda_r_basis, theta_r_closed, verify_isometry};
use crate::walls::{enumerate_walls, is_suitable_for, suitable_by_criterion, Polarization, WallClass};

pub const R_MAX: u32 = 8;
pub const N_MAX: u64 = 10;
pub const K_MAX: i64 = 60;

/// Result of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type CheckFn = fn(&SurfaceModel) -> Result<u64, String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("canonical_vector", check_canonical_vector),
    ("twist_isometry", check_twist),
    ("perpendicular_split", check_perpendicular_split),
    ("theta_isometry", check_theta_isometry),
    ("theta_recursion", check_theta_recursion),
    ("wall_enumeration", check_wall_enumeration),
    ("suitability_criterion", check_suitability),
    ("beauville_lattice", check_beauville),
    ("fujiki_constant", check_fujiki),
    ("donaldson_closed_form", check_donaldson),
];

/// Names of all checks in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check on the elliptic model.
pub fn run_all(s: &SurfaceModel) -> Vec<CheckOutcome> {
    CHECKS
        .par_iter()
        .map(|(name, f)| match f(s) {
            Ok(cases) => CheckOutcome { name, cases, failure: None },
            Err(msg) => CheckOutcome { name, cases: 0, failure: Some(msg) },
        })
        .collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: crate::Error) -> String {
    format!("{}: {e}", e.code())
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Small deterministic sample of Picard vectors: every coordinate in `-2..=2`.
fn picard_grid(rank: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-2..=2).map(move |c| {
                    let mut w = v.clone();
                    w.push(b(c));
                    w
                })
            })
            .collect();
    }
    out
}

fn check_canonical_vector(s: &SurfaceModel) -> Result<u64, String> {
    let mut cases = 0;
    for r in 1..=R_MAX {
        for n in 0..=N_MAX {
            let v = canonical_vr::<BigInt>(s, r, n).map_err(err)?;
            let d = dim_moduli(s, &v).map_err(err)?;
            ensure(d == b(2 * n as i64), || format!("d(v_{r}) = {d} for n = {n}"))?;
            ensure(chi(&v).is_one(), || format!("chi(v_{r}) != 1 for n = {n}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn check_twist(s: &SurfaceModel) -> Result<u64, String> {
    let grid = picard_grid(s.picard_rank());
    let vs: Vec<MukaiElement<BigInt>> = (1..=4)
        .flat_map(|r| [0u64, 3, 7].map(|n| canonical_vr(s, r, n).unwrap()))
        .collect();
    let mut cases = 0;
    for (i, v) in vs.iter().enumerate() {
        let w = &vs[(i + 5) % vs.len()];
        for xi in &grid {
            let tv = twist(s, v, xi).map_err(err)?;
            let tw = twist(s, w, xi).map_err(err)?;
            let before = mukai_pairing(s, v, w).map_err(err)?;
            let after = mukai_pairing(s, &tv, &tw).map_err(err)?;
            ensure(before == after, || format!("pairing changed under twist by {xi:?}"))?;
            ensure(wall_bound(s, v).map_err(err)? == wall_bound(s, &tv).map_err(err)?, || {
                format!("|v| changed under twist by {xi:?}")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn check_perpendicular_split(s: &SurfaceModel) -> Result<u64, String> {
    let grid = picard_grid(s.picard_rank());
    let mut cases = 0;
    for r in 1..=R_MAX {
        for n in 1..=N_MAX {
            let v = canonical_vr::<BigInt>(s, r, n).map_err(err)?;
            let beta = beta_r::<BigInt>(s, r, n).map_err(err)?;
            let pair = |a: &MukaiElement<BigInt>, c: &MukaiElement<BigInt>| mukai_pairing(s, a, c).map_err(err);
            ensure(pair(&beta, &v)?.is_zero(), || format!("beta_{r} not perpendicular to v_{r}, n = {n}"))?;
            ensure(pair(&beta, &beta)? == b(-2 * (n as i64 - 1)), || format!("<beta_{r}, beta_{r}> wrong, n = {n}"))?;
            for u in lambda_r_basis::<BigInt>(s, r).map_err(err)? {
                ensure(pair(&u, &v)?.is_zero() && pair(&u, &beta)?.is_zero(), || {
                    format!("Lambda_{r} not perpendicular to v_{r} and beta_{r}, n = {n}")
                })?;
            }
            let vq = v.cast::<BigRational>();
            for c1 in &grid {
                let alpha = SurfaceClass::algebraic(c1.iter().map(|x| BigRational::from_integer(x.clone())).collect());
                let image = iota(s, &vq, &alpha).map_err(err)?;
                ensure(mukai_pairing(s, &vq, &image).map_err(err)?.is_zero(), || {
                    format!("iota_v({c1:?}) not perpendicular to v_{r}, n = {n}")
                })?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn check_theta_isometry(s: &SurfaceModel) -> Result<u64, String> {
    let mut cases = 0;
    for r in 1..=R_MAX {
        for n in 2..=N_MAX {
            let rep = verify_isometry(s, r, n).map_err(err)?;
            let disc_ok = rep.disc_vperp_omega.magnitude() == b(2 * (n as i64 - 1)).magnitude()
                && rep.disc_lambda_r.magnitude().is_one();
            ensure(rep.integral && rep.gram_preserved && rep.surjective && disc_ok, || {
                format!("theta_{r} is not a surjective isometry for n = {n}: {rep:?}")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn check_theta_recursion(s: &SurfaceModel) -> Result<u64, String> {
    let mut cases = 0;
    let one = MukaiElement::<BigInt>::one(s);
    let fiber = MukaiElement::<BigInt>::fiber(s).map_err(err)?;
    let omega = MukaiElement::<BigInt>::omega(s);
    for n in 2..=N_MAX {
        let tables = build_theta_recursive(s, n, R_MAX).map_err(err)?;
        for t in tables.iter().filter(|t| t.r >= 3) {
            let r = t.r;
            for (name, alpha, got) in [("1", &one, t.unit()), ("C", &fiber, t.fiber()), ("omega", &omega, t.omega())] {
                let want = theta_r_closed(s, r, n, alpha).map_err(err)?;
                ensure(&want == got, || format!("recursive theta_{r}({name}) differs from closed form, n = {n}"))?;
            }
            let beta = beta_r::<BigInt>(s, r, n).map_err(err)?;
            let image = t.eval(s, &beta).map_err(err)?;
            ensure(image == HilbClass::t_class(s), || format!("recursive theta_{r}(beta_{r}) != T, n = {n}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

/// Exhaustive scan: every `(x, y)` with `1 ≤ x ≤ ⌈k/2⌉` and
/// `x − ⌈k/2⌉ ≤ y < x`, kept when primitive, `−k ≤ L² < 0` and `L^⊥` contains
/// an ample point.
pub fn brute_force_walls(k: &BigRational) -> Vec<WallClass> {
    let reach = (k / q(2)).ceil().to_integer().try_into().unwrap_or(0i64);
    let mut out = Vec::new();
    for x in 1..=reach {
        for y in (x - reach)..x {
            if x.gcd(&y) != 1 {
                continue;
            }
            let l2 = 2 * x * (y - x);
            if q(l2) < -k.clone() {
                continue;
            }
            // L·H = xb + (y − 2x)a vanishes on the ray (a, b) = (x, 2x − y).
            if Polarization::new(x, 2 * x - y).is_ample() {
                out.push(WallClass { x, y, l_squared: l2 });
            }
        }
    }
    out.sort();
    out
}

fn k_samples() -> Vec<BigRational> {
    let mut ks: Vec<BigRational> = (1..=4i64)
        .flat_map(|den| (1..=K_MAX * den).map(move |num| BigRational::new(num.into(), den.into())))
        .collect();
    ks.sort();
    ks.dedup();
    ks
}

fn check_wall_enumeration(s: &SurfaceModel) -> Result<u64, String> {
    let ks = k_samples();
    for k in &ks {
        let got = enumerate_walls(s, k).map_err(err)?;
        ensure(got == brute_force_walls(k), || format!("wall list differs from the scan at k = {k}"))?;
    }
    Ok(ks.len() as u64)
}

fn check_suitability(s: &SurfaceModel) -> Result<u64, String> {
    let mut cases = 0;
    for k in 1..=50i64 {
        let kq = q(k);
        let walls = enumerate_walls(s, &kq).map_err(err)?;
        for a in 1..=20i64 {
            for bb in (2 * a + 1)..=(60 * a) {
                let h = Polarization::new(a, bb);
                let suitable = is_suitable_for(&walls, &h);
                if suitable_by_criterion(&h, &kq).map_err(err)? {
                    ensure(suitable, || format!("({a}, {bb}) meets b/a >= k + 1 but is not {k}-suitable"))?;
                }
                if a <= 4 {
                    for m in [2, 3, 5] {
                        ensure(is_suitable_for(&walls, &h.scaled(m)) == suitable, || {
                            format!("suitability of ({a}, {bb}) changes under scaling by {m}, k = {k}")
                        })?;
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn check_beauville(s: &SurfaceModel) -> Result<u64, String> {
    let grid = picard_grid(s.picard_rank());
    let mut cases = 0;
    for n in 2..=N_MAX {
        let bn = b(-2 * (n as i64 - 1));
        let t = HilbClass::<BigInt>::t_class(s);
        ensure(beauville_pair(s, n, &t, &t).map_err(err)? == bn, || format!("B(T) wrong for n = {n}"))?;
        let l = class_l::<BigInt>(s, n).map_err(err)?;
        ensure(beauville_pair(s, n, &l, &l).map_err(err)? == bn, || format!("B(L) wrong for n = {n}"))?;
        for x in &grid {
            let sx = sigma_embed(s, n, x, None).map_err(err)?;
            ensure(beauville_pair(s, n, &sx, &t).map_err(err)?.is_zero(), || format!("B(sigma({x:?}), T) != 0"))?;
            for y in grid.iter().step_by(3) {
                let sy = sigma_embed(s, n, y, None).map_err(err)?;
                let lhs = beauville_pair(s, n, &sx, &sy).map_err(err)?;
                let rhs = mukai_pairing(s, &MukaiElement::divisor(x.clone()), &MukaiElement::divisor(y.clone()))
                    .map_err(err)?;
                ensure(lhs == rhs, || format!("sigma is not isometric on {x:?}, {y:?}"))?;
                cases += 1;
            }
        }
        let block = crate::theta::beauville_block(n).map_err(err)?;
        let d = det(block.gram()).map_err(err)?;
        ensure(d.magnitude() == bn.magnitude(), || format!("|det| of the Beauville block is {d} for n = {n}"))?;
    }
    Ok(cases)
}

fn check_fujiki(_: &SurfaceModel) -> Result<u64, String> {
    let mut double_factorial = BigInt::one();
    for n in 1..=20u64 {
        double_factorial *= 2 * n - 1;
        let lambda = fujiki_lambda(n).map_err(err)?;
        ensure(lambda == double_factorial, || format!("lambda_{n} = {lambda}, expected {double_factorial}"))?;
    }
    Ok(20)
}

fn check_donaldson(s: &SurfaceModel) -> Result<u64, String> {
    let grid = picard_grid(s.picard_rank());
    let mut cases = 0;
    for r in 1..=R_MAX {
        for n in 2..=N_MAX {
            let v = canonical_vr::<BigInt>(s, r, n).map_err(err)?;
            let lambda = BigRational::from_integer(fujiki_lambda(n).map_err(err)?);
            for c1 in grid.iter().step_by(2) {
                let alpha = SurfaceClass::algebraic(c1.iter().map(|x| BigRational::from_integer(x.clone())).collect());
                let sq = alpha.square(s).map_err(err)?;
                let want = &lambda * crate::hilbert::pow(&sq, n);
                let got = q_eval(s, &v, &alpha).map_err(err)?;
                ensure(got == want, || format!("q_v({c1:?}) = {got}, expected {want}, r = {r}, n = {n}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}
