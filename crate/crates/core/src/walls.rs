//! Walls and chambers in the ample cone of an elliptic K3 with
//! `Pic = ZΣ ⊕ ZC`.
//!
//! A class `L = xΣ + yC` has `L² = 2x(y − x)` and `L·H = xb + (y − 2x)a` for
//! `H = aΣ + bC`. The ample cone is `{a > 0, b > 2a}`. A k-wall is `L^⊥` for
//! `−k ≤ L² < 0` when that line meets the open cone; for `x > 0` this happens
//! exactly when `y < 0`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mukai::{wall_bound, MukaiElement, SurfaceModel};
use crate::scalar::format_rational;

/// `H = aΣ + bC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Polarization {
    pub a: i64,
    pub b: i64,
}

impl Polarization {
    pub fn new(a: i64, b: i64) -> Self {
        Polarization { a, b }
    }

    pub fn is_ample(&self) -> bool {
        self.a > 0 && self.b > 2 * self.a
    }

    fn check_ample(&self) -> Result<()> {
        if self.is_ample() {
            Ok(())
        } else {
            Err(Error::NotAmple { a: self.a, b: self.b })
        }
    }

    pub fn scaled(&self, m: i64) -> Self {
        Polarization { a: self.a * m, b: self.b * m }
    }
}

/// A primitive class `L = xΣ + yC` with `x > 0` defining a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallClass {
    pub x: i64,
    pub y: i64,
    pub l_squared: i64,
}

impl WallClass {
    /// The primitive representative with `x > 0` of the line through `(x, y)`.
    pub fn from_class(x: i64, y: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / g, y / g);
        if x < 0 {
            x = -x;
            y = -y;
        }
        Some(WallClass { x, y, l_squared: 2 * x * (y - x) })
    }

    /// `L·H`.
    pub fn dot(&self, h: &Polarization) -> i128 {
        let (x, y) = (self.x as i128, self.y as i128);
        x * h.b as i128 + (y - 2 * x) * h.a as i128
    }

    /// `L·C = x`.
    pub fn dot_fiber(&self) -> i64 {
        self.x
    }

    /// A point `(a, b)` on the ray `L^⊥` in the closed positive quadrant.
    pub fn ray_direction(&self) -> (i64, i64) {
        (self.x, 2 * self.x - self.y)
    }
}

fn require_rank_two(s: &SurfaceModel) -> Result<()> {
    if s.is_rank_two_elliptic() && s.sigma_index() == Some(0) && s.fiber_index() == Some(1) {
        Ok(())
    } else {
        Err(Error::UnsupportedSurface)
    }
}

fn check_k(k: &BigRational) -> Result<()> {
    if k.is_positive() {
        Ok(())
    } else {
        Err(Error::NonpositiveK(format_rational(k)))
    }
}

/// All k-walls meeting the open ample cone, sorted by `(x, y)`.
pub fn enumerate_walls(s: &SurfaceModel, k: &BigRational) -> Result<Vec<WallClass>> {
    require_rank_two(s)?;
    check_k(k)?;
    // 2x(x − y) ≤ k with x ≥ 1 and x − y ≥ 1 bounds both x and x − y by ⌊k/2⌋.
    let half = (k / BigRational::from_integer(2.into())).floor().to_integer();
    let Some(bound) = half.to_i64() else {
        return Err(Error::NonpositiveK("k too large".into()));
    };
    let mut walls = Vec::new();
    for x in 1..=bound {
        // gap = x − y; y < 0 (inside the cone) means gap > x, and
        // x·gap ≤ ⌊k/2⌋ is the bound −k ≤ L².
        for gap in (x + 1)..=(bound / x) {
            let y = x - gap;
            if x.gcd(&y) == 1 {
                walls.push(WallClass { x, y, l_squared: -2 * x * gap });
            }
        }
    }
    walls.sort();
    Ok(walls)
}

/// True when `H` lies on no k-wall.
pub fn is_k_generic(s: &SurfaceModel, h: &Polarization, k: &BigRational) -> Result<bool> {
    h.check_ample()?;
    Ok(enumerate_walls(s, k)?.iter().all(|w| w.dot(h) != 0))
}

/// k-generic and on the same side as `C` of every wall (`L·H > 0` for the
/// representatives with `L·C > 0`).
pub fn is_k_suitable(s: &SurfaceModel, h: &Polarization, k: &BigRational) -> Result<bool> {
    h.check_ample()?;
    Ok(enumerate_walls(s, k)?.iter().all(|w| w.dot(h) > 0))
}

/// Same as [`is_k_suitable`] against a precomputed wall list.
pub fn is_suitable_for(walls: &[WallClass], h: &Polarization) -> bool {
    walls.iter().all(|w| w.dot(h) > 0)
}

/// The sufficient criterion `b/a ≥ k + 1`.
pub fn suitable_by_criterion(h: &Polarization, k: &BigRational) -> Result<bool> {
    h.check_ample()?;
    let ratio = BigRational::new(h.b.into(), h.a.into());
    Ok(ratio >= k + BigRational::from_integer(1.into()))
}

/// Signs of `L·H` over [`enumerate_walls`], in its order.
pub fn chamber_signature(s: &SurfaceModel, h: &Polarization, k: &BigRational) -> Result<Vec<Ordering>> {
    h.check_ample()?;
    enumerate_walls(s, k)?
        .iter()
        .map(|w| match w.dot(h).cmp(&0) {
            Ordering::Equal => Err(Error::OnWall { a: h.a, b: h.b, x: w.x, y: w.y }),
            o => Ok(o),
        })
        .collect()
}

/// Walls with `L·H₀` and `L·H₁` of opposite signs.
pub fn separating_walls(
    s: &SurfaceModel,
    h0: &Polarization,
    h1: &Polarization,
    k: &BigRational,
) -> Result<Vec<WallClass>> {
    let walls = enumerate_walls(s, k)?;
    let s0 = chamber_signature(s, h0, k)?;
    let s1 = chamber_signature(s, h1, k)?;
    Ok(walls
        .into_iter()
        .zip(s0.into_iter().zip(s1))
        .filter(|(_, (a, b))| a != b)
        .map(|(w, _)| w)
        .collect())
}

/// `−2|v| ≤ ξ² ≤ 0`.
pub fn wall_bound_check(s: &SurfaceModel, v: &MukaiElement<BigInt>, xi: &[BigInt]) -> Result<bool> {
    let bound = wall_bound(s, v)?;
    let sq = BigRational::from_integer(s.picard().square(xi)?);
    let lower = -(bound * BigRational::from_integer(2.into()));
    Ok(lower <= sq && !sq.is_positive())
}

/// Turns a destabilizing subsheaf's `(r_A, c₁(A))` into the wall of
/// `ξ = v⁰·c₁(A) − r_A·v¹`, when `ξ ≠ 0`, `ξ·H = 0` and `ξ` satisfies the
/// Bogomolov bound. `Ok(None)` means no wall.
pub fn destabilizer_to_wall(
    s: &SurfaceModel,
    v: &MukaiElement<BigInt>,
    r_a: &BigInt,
    c1_a: &[BigInt],
    h: &Polarization,
) -> Result<Option<WallClass>> {
    require_rank_two(s)?;
    if !r_a.is_positive() || r_a >= &v.a0 {
        return Err(Error::RankRange { r_a: r_a.to_string(), rank: v.a0.to_string() });
    }
    crate::error::check_len(2, c1_a.len())?;
    v.check_conforms(s)?;
    let xi: Vec<BigInt> = c1_a.iter().zip(&v.c1).map(|(a, c)| &v.a0 * a - r_a * c).collect();
    if xi.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    let hv = [BigInt::from(h.a), BigInt::from(h.b)];
    if !s.picard().pair(&xi, &hv)?.is_zero() || !wall_bound_check(s, v, &xi)? {
        return Ok(None);
    }
    let (Some(x), Some(y)) = (xi[0].to_i64(), xi[1].to_i64()) else {
        return Ok(None);
    };
    Ok(WallClass::from_class(x, y))
}
