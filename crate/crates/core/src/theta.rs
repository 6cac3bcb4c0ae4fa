//! The Mukai map θ from `v_r^⊥` to the Beauville lattice of `S^[n]`.
//!
//! Closed forms exist in rank one, rank two and rank at least three. The rank
//! `r + 1` family map is also obtained from the rank `r` one by the elementary
//! modification recursion on the basis `{1, C, Σ, ω}` of `Ω`; the two routes
//! are checked against each other in the tests and the acceptance suite.
//!
//! Every map here is linear with integer coefficients, so it is implemented
//! once for any [`Scalar`] and used over `BigInt` for integral images and over
//! `BigRational` when the input carries denominators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{beauville_pair, HilbClass};
use crate::lattice::{det, LatticeVector, QuadLattice};
use crate::mukai::{canonical_vr, mukai_pairing, MukaiElement, SurfaceModel};
use crate::scalar::{lift, sc, Scalar};

type H<T> = HilbClass<T>;

fn require_n(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::NTooSmall { n, min: 2 })
    } else {
        Ok(())
    }
}

fn int<T: Scalar>(x: i128) -> T {
    lift(&BigInt::from(x))
}

/// The pieces of `α` the formulas need: `α⁰`, `α¹·Σ`, `α¹·C`, `α²` and `σ(α¹)`.
struct Parts<T> {
    a0: T,
    dot_sigma: T,
    dot_fiber: T,
    a2: T,
    sigma_a1: H<T>,
}

fn parts<T: Scalar>(s: &SurfaceModel, alpha: &MukaiElement<T>) -> Result<Parts<T>> {
    alpha.check_conforms(s)?;
    let sigma = s.sigma_class::<T>()?;
    let fiber = s.fiber_class::<T>()?;
    Ok(Parts {
        a0: alpha.a0.clone(),
        dot_sigma: s.picard().pair(&alpha.c1, &sigma)?,
        dot_fiber: s.picard().pair(&alpha.c1, &fiber)?,
        a2: alpha.a2.clone(),
        sigma_a1: H { pic: alpha.c1.clone(), trans: alpha.trans.clone(), t: T::zero() },
    })
}

/// `x·Σ₁ + y·C₁ + z·T`.
fn combo<T: Scalar>(s: &SurfaceModel, x: T, y: T, z: T) -> Result<H<T>> {
    let (si, ci) = s.elliptic_indices()?;
    let mut pic = vec![T::zero(); s.picard_rank()];
    pic[si] = x;
    pic[ci] = y;
    Ok(H::new(pic, z))
}

/// Rank one: `θ(α) = −σ(α¹) + α⁰(Σ₁ + nC₁ − T)`.
pub fn theta1<T: Scalar>(s: &SurfaceModel, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    require_n(n)?;
    let p = parts(s, alpha)?;
    let n: T = int(n as i128);
    let tail = combo(s, p.a0.clone(), p.a0.clone() * n, -p.a0)?;
    Ok((&tail - &p.sigma_a1).canonical())
}

/// The rank-two family map `θ_{F²}`, defined on all of `H*(S)`.
pub fn theta2_family<T: Scalar>(s: &SurfaceModel, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    require_n(n)?;
    let p = parts(s, alpha)?;
    let ni = n as i128;
    let c_coeff = -(p.a0.clone() * int(ni - 2)
        + p.dot_sigma.clone() * int(ni - 2)
        + p.dot_fiber.clone() * int(ni * ni - 3 * ni + 3)
        - p.a2.clone() * int(2 * ni - 3));
    let sigma_coeff =
        -(p.dot_sigma.clone() + p.dot_fiber.clone() * int(ni - 1) - p.a2.clone() * sc(2));
    let t_coeff = p.a0 + p.dot_sigma + p.dot_fiber * int(ni - 1) - p.a2 * sc(2);
    let tail = combo(s, sigma_coeff, c_coeff, t_coeff)?;
    Ok((&tail - &p.sigma_a1).canonical())
}

/// Rank two restricted to `v₂^⊥`.
pub fn theta2<T: Scalar>(s: &SurfaceModel, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    require_n(n)?;
    let v2 = canonical_vr::<T>(s, 2, n)?;
    let pairing = mukai_pairing(s, alpha, &v2)?;
    if !pairing.is_zero() {
        return Err(Error::NotPerpendicular(pairing.to_string()));
    }
    let p = parts(s, alpha)?;
    let ni = n as i128;
    let c_coeff = -(p.dot_fiber.clone() * int(ni - 1) - p.a2.clone());
    let sigma_coeff = -(p.dot_sigma + p.dot_fiber.clone() * int(ni - 1) - p.a2 * sc(2));
    let tail = combo(s, sigma_coeff, c_coeff, p.dot_fiber)?;
    Ok((&tail - &p.sigma_a1).canonical())
}

/// `β_r = v_r − 2(n − 1)C`.
pub fn beta_r<T: Scalar>(s: &SurfaceModel, r: u32, n: u64) -> Result<MukaiElement<T>> {
    if n < 1 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    let v = canonical_vr::<T>(s, r, n)?;
    let c = MukaiElement::fiber(s)?.scale(&int(2 * (n as i128 - 1)));
    Ok(&v - &c)
}

/// Basis `{1 − (r − 1)C, rC + ω}` of `Λ_r = {x + yC + zω : (r − 1)x + y − rz = 0}`.
pub fn lambda_r_basis<T: Scalar>(s: &SurfaceModel, r: u32) -> Result<[MukaiElement<T>; 2]> {
    if r == 0 {
        return Err(Error::InvalidRank);
    }
    let c = MukaiElement::<T>::fiber(s)?;
    let u1 = &MukaiElement::one(s) - &c.scale(&int(r as i128 - 1));
    let u2 = &c.scale(&int(r as i128)) + &MukaiElement::omega(s);
    Ok([u1, u2])
}

/// Splits `α` into its `Ω`-coordinates `(α⁰, Σ-coeff, C-coeff, α²)` and the
/// remaining `Ω^⊥` part of `α¹` (Picard and transcendental).
fn split_omega<T: Scalar>(s: &SurfaceModel, alpha: &MukaiElement<T>) -> Result<([T; 4], H<T>)> {
    let p = parts(s, alpha)?;
    let (si, ci) = s.elliptic_indices()?;
    // aΣ + bC has the same pairings with Σ and C as α¹ when a = α¹·C and
    // b = α¹·Σ + 2α¹·C.
    let a = p.dot_fiber.clone();
    let b = p.dot_sigma + p.dot_fiber * sc(2);
    let mut perp = p.sigma_a1;
    perp.pic[si] = perp.pic[si].clone() - a.clone();
    perp.pic[ci] = perp.pic[ci].clone() - b.clone();
    Ok(([p.a0, a, b, p.a2], perp))
}

/// Rank `r ≥ 3`: `θ(x + yC + zω) = x(C₁ − (r−2)Σ₁) − yΣ₁ + z(rΣ₁ − C₁)`,
/// `θ(β_r) = T`, and `−σ` on `Ω^⊥`.
///
/// The `Ω`-part is written as `c·β_r + (x + yC + zω)`; `c` is its Σ-coordinate
/// because `β_r` is the only one of `{β_r, 1, C, ω}` with a Σ-component.
pub fn theta_r_closed<T: Scalar>(s: &SurfaceModel, r: u32, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    require_n(n)?;
    if r < 3 {
        return Err(Error::InvalidRank);
    }
    let ([a0, sig, fib, a2], perp) = split_omega(s, alpha)?;
    let (ri, ni) = (r as i128, n as i128);
    let c = sig;
    // β_r = r + Σ + (r − r² − n + 2)C + (1 − r)ω.
    let x = a0 - c.clone() * int(ri);
    let y = fib - c.clone() * int(ri - ri * ri - ni + 2);
    let z = a2 - c.clone() * int(1 - ri);
    let sigma_coeff = -(x.clone() * int(ri - 2)) - y + z.clone() * int(ri);
    let c_coeff = x - z;
    let tail = combo(s, sigma_coeff, c_coeff, c)?;
    Ok((&tail - &perp).canonical())
}

/// θ_r on `v_r^⊥`, choosing the closed form for the rank.
pub fn theta<T: Scalar>(s: &SurfaceModel, r: u32, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    match r {
        0 => Err(Error::InvalidRank),
        1 => theta1(s, n, alpha),
        2 => theta2(s, n, alpha),
        _ => theta_r_closed(s, r, n, alpha),
    }
}

/// The family map `θ_{F^r}` on all of `H*(S)`.
pub fn theta_family<T: Scalar>(s: &SurfaceModel, r: u32, n: u64, alpha: &MukaiElement<T>) -> Result<H<T>> {
    match r {
        0 => Err(Error::InvalidRank),
        1 => theta1(s, n, alpha),
        2 => theta2_family(s, n, alpha),
        _ => theta_r_closed(s, r, n, alpha),
    }
}

/// Order of the basis `{1, C, Σ, ω}` of `Ω` used by [`ThetaTable`].
pub const OMEGA_BASIS: [&str; 4] = ["1", "C", "Sigma", "omega"];

/// Values of `θ_{F^r}` on `{1, C, Σ, ω}` with the bookkeeping classes
/// `c₁(ξ_r)` and `ρ_*[c₁(F^r)ω]₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTable {
    pub r: u32,
    pub n: u64,
    pub values: [H<BigInt>; 4],
    pub xi_c1: H<BigInt>,
    pub push_c1_omega: H<BigInt>,
}

impl ThetaTable {
    pub fn unit(&self) -> &H<BigInt> {
        &self.values[0]
    }
    pub fn fiber(&self) -> &H<BigInt> {
        &self.values[1]
    }
    pub fn sigma(&self) -> &H<BigInt> {
        &self.values[2]
    }
    pub fn omega(&self) -> &H<BigInt> {
        &self.values[3]
    }

    /// Evaluates the tabulated family map on any element by linearity, with
    /// `−σ` on the `Ω^⊥` part.
    pub fn eval<T: Scalar>(&self, s: &SurfaceModel, alpha: &MukaiElement<T>) -> Result<H<T>> {
        let ([a0, sig, fib, a2], perp) = split_omega(s, alpha)?;
        let lifted: Vec<H<T>> = self.values.iter().map(|v| v.map(lift::<T>)).collect();
        let mut acc = &lifted[0].scale(&a0) + &lifted[1].scale(&fib);
        acc = &acc + &lifted[2].scale(&sig);
        acc = &acc + &lifted[3].scale(&a2);
        Ok((&acc - &perp).canonical())
    }
}

/// Builds the tables for ranks `2..=r_max` from the rank-two seeds by the
/// elementary-modification recursion, checking the known checkpoints:
///
/// * the seed `c₁(ξ₂)` equals `−θ_{F¹}(e^{2C})` (rank one has
///   `ρ_*[c₁(F¹)ω]₃ = 0`);
/// * `c₁(ξ₃) = (n − 1)C₁ − T`;
/// * for `r ≥ 4`, `c₁(ξ_r) = 0` and `ρ_*[c₁(F^{r−1})ω]₃ = C₁ − (r − 1)Σ₁`.
pub fn build_theta_recursive(s: &SurfaceModel, n: u64, r_max: u32) -> Result<Vec<ThetaTable>> {
    require_n(n)?;
    if r_max < 2 {
        return Err(Error::InvalidRank);
    }
    let ni = n as i128;
    let one = MukaiElement::<BigInt>::one(s);
    let fiber = MukaiElement::<BigInt>::fiber(s)?;
    let sigma = MukaiElement::<BigInt>::sigma(s)?;
    let omega = MukaiElement::<BigInt>::omega(s);
    let sigma1 = H::<BigInt>::sigma1(s)?;
    let fiber1 = H::<BigInt>::fiber1(s)?;
    let t = H::<BigInt>::t_class(s);
    let k = |x: i128| BigInt::from(x);

    let xi2 = combo(s, k(-1), k(-(ni - 2)), k(1))?;
    let rank1_e2c = &theta1(s, n, &one)? + &theta1(s, n, &fiber)?.scale(&k(2));
    if (-&rank1_e2c) != xi2 {
        return Err(Error::RecursionMismatch { rank: 2, what: "c1(xi_2) seed".into() });
    }

    let values = [
        theta2_family(s, n, &one)?,
        theta2_family(s, n, &fiber)?,
        theta2_family(s, n, &sigma)?,
        theta2_family(s, n, &omega)?,
    ];
    let push2 = combo(s, k(-2), k(-(2 * ni - 3)), k(2))?;
    let mut tables = vec![ThetaTable { r: 2, n, values, xi_c1: xi2, push_c1_omega: push2 }];

    for r in 2..r_max {
        let prev = tables.last().unwrap();
        let ri = r as i128;
        let e2c = prev.unit() + &prev.fiber().scale(&k(2));
        let xi = &(-&e2c) + &prev.push_c1_omega;
        let next_unit = &(&e2c + &xi.scale(&k(ri + 1))) + &sigma1;
        let next_fiber = prev.fiber() + &xi;
        let next_sigma = &(&(prev.sigma() + &prev.omega().scale(&k(2))) - &xi.scale(&k(ri * ri + ri + 2 - ni))) - &sigma1;
        let next_omega = &(prev.omega() - &xi.scale(&k(ri))) + &sigma1;
        let next_push = &(&prev.push_c1_omega + &xi.scale(&k(ri))) - &sigma1;

        let rank = r + 1;
        if rank == 3 {
            let expected = &fiber1.scale(&k(ni - 1)) - &t;
            if xi != expected {
                return Err(Error::RecursionMismatch { rank, what: "c1(xi_3) != (n-1)C1 - T".into() });
            }
        } else {
            if !xi.is_zero() {
                return Err(Error::RecursionMismatch { rank, what: "c1(xi_r) != 0".into() });
            }
            let expected = &fiber1 - &sigma1.scale(&k(ri));
            if prev.push_c1_omega != expected {
                return Err(Error::RecursionMismatch {
                    rank,
                    what: format!("push-forward for rank {r} != C1 - {r}Sigma1"),
                });
            }
        }
        tables.push(ThetaTable {
            r: rank,
            n,
            values: [next_unit, next_fiber, next_sigma, next_omega],
            xi_c1: xi,
            push_c1_omega: next_push,
        });
    }
    Ok(tables)
}

/// Outcome of [`verify_isometry`].
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    pub r: u32,
    pub n: u64,
    /// Every image of the integral basis is integral.
    pub integral: bool,
    /// Mukai Gram of the basis equals the Beauville Gram of its images.
    pub gram_preserved: bool,
    /// Discriminant of `v_r^⊥ ∩ Ω`, from an independently computed complement.
    pub disc_vperp_omega: BigInt,
    pub disc_lambda_r: BigInt,
    /// `{β_r} ∪ Λ_r` spans the saturated complement.
    pub basis_spans: bool,
    /// The images of `{β_r} ∪ Λ_r` form a basis of `Z{Σ₁, C₁, T}`.
    pub image_unimodular: bool,
    pub surjective: bool,
    pub images: Vec<H<BigInt>>,
}

fn omega_coords(m: &MukaiElement<BigInt>, si: usize, ci: usize) -> LatticeVector {
    vec![m.a0.clone(), m.c1[si].clone(), m.c1[ci].clone(), m.a2.clone()]
}

/// Basis of `Ω^⊥` inside the Mukai lattice: Picard classes orthogonal to
/// `{Σ, C}` followed by the transcendental unit vectors.
pub fn omega_perp_basis(s: &SurfaceModel) -> Result<Vec<MukaiElement<BigInt>>> {
    let sigma = s.sigma_class::<BigInt>()?;
    let fiber = s.fiber_class::<BigInt>()?;
    let mut out: Vec<MukaiElement<BigInt>> = s
        .picard()
        .orthogonal_complement(&[sigma, fiber])?
        .into_iter()
        .map(|c1| {
            let m = MukaiElement::divisor(c1);
            if s.trans_rank() > 0 {
                m.with_trans(vec![BigInt::zero(); s.trans_rank()])
            } else {
                m
            }
        })
        .collect();
    for i in 0..s.trans_rank() {
        let mut t = vec![BigInt::zero(); s.trans_rank()];
        t[i] = BigInt::one();
        out.push(MukaiElement::divisor(vec![BigInt::zero(); s.picard_rank()]).with_trans(t));
    }
    Ok(out)
}

/// Certifies that θ_r is an integral isometry of `v_r^⊥` onto the Beauville
/// lattice of `S^[n]`.
pub fn verify_isometry(s: &SurfaceModel, r: u32, n: u64) -> Result<IsometryReport> {
    require_n(n)?;
    let (si, ci) = s.elliptic_indices()?;
    let v = canonical_vr::<BigInt>(s, r, n)?;
    let beta = beta_r::<BigInt>(s, r, n)?;
    let [u1, u2] = lambda_r_basis::<BigInt>(s, r)?;

    let block = s.omega_block()?;
    let complement = block.orthogonal_complement(&[omega_coords(&v, si, ci)])?;
    let disc_vperp_omega = det(&block.gram_of(&complement)?)?;
    let lambda_basis = [omega_coords(&u1, si, ci), omega_coords(&u2, si, ci)];
    let disc_lambda_r = det(&block.gram_of(&lambda_basis)?)?;
    let ours: Vec<LatticeVector> = [&beta, &u1, &u2].iter().map(|m| omega_coords(m, si, ci)).collect();
    let basis_spans = ours.iter().all(|x| block.decompose(x, &complement).is_ok())
        && complement.iter().all(|x| block.decompose(x, &ours).is_ok());

    let mut basis = vec![beta, u1, u2];
    basis.extend(omega_perp_basis(s)?);

    let images_q: Vec<H<BigRational>> = basis
        .iter()
        .map(|b| theta(s, r, n, &b.cast::<BigRational>()))
        .collect::<Result<_>>()?;
    let integral_images: Vec<Option<H<BigInt>>> = images_q.iter().map(H::to_integral).collect();
    let integral = integral_images.iter().all(Option::is_some);

    let mut gram_preserved = true;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let mukai = mukai_pairing(s, a, b)?;
            let bv = beauville_pair(s, n, &images_q[i], &images_q[j])?;
            if BigRational::from_integer(mukai) != bv {
                gram_preserved = false;
            }
        }
    }

    let images: Vec<H<BigInt>> = integral_images.into_iter().flatten().collect();
    let image_unimodular = integral && {
        let m: Vec<Vec<BigInt>> = images[..3]
            .iter()
            .map(|h| vec![h.pic[si].clone(), h.pic[ci].clone(), h.t.clone()])
            .collect();
        // Images of the Ω-part must lie in span{Σ₁, C₁, T}.
        let confined = images[..3].iter().all(|h| {
            h.pic.iter().enumerate().all(|(i, x)| i == si || i == ci || x.is_zero())
                && h.trans.iter().flatten().all(Zero::is_zero)
        });
        confined && det(&m)?.abs().is_one()
    };

    let two_n_minus_2 = BigInt::from(2 * (n - 1));
    let surjective = integral
        && gram_preserved
        && basis_spans
        && image_unimodular
        && disc_vperp_omega.abs() == two_n_minus_2
        && disc_lambda_r.abs().is_one();

    Ok(IsometryReport {
        r,
        n,
        integral,
        gram_preserved,
        disc_vperp_omega,
        disc_lambda_r,
        basis_spans,
        image_unimodular,
        surjective,
        images,
    })
}

/// The Beauville lattice restricted to `Z{Σ₁, C₁, T}`, for callers that want
/// to run lattice algorithms on images.
pub fn beauville_block(n: u64) -> Result<QuadLattice> {
    require_n(n)?;
    let t = -2 * (n as i64 - 1);
    QuadLattice::from_i64(&[&[-2, 1, 0], &[1, 0, 0], &[0, 0, t]])
}
