//! Mukai vectors on a K3 surface model.
//!
//! An element of the Mukai lattice is stored as `(a0, c1, trans, a2)`: the
//! rank component, Picard coordinates, optional transcendental coordinates and
//! the coefficient of the point class ω. The pairing is
//! `⟨α, β⟩ = α¹·β¹ − α⁰β² − α²β⁰`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::lattice::{Matrix, QuadLattice};
use crate::scalar::{lift, sc, Scalar};

/// A K3 surface described by its Picard lattice, optionally an elliptic
/// structure (section Σ and fiber C among the Picard basis vectors) and an
/// optional transcendental block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    picard: QuadLattice,
    sigma: Option<usize>,
    fiber: Option<usize>,
    trans: Option<QuadLattice>,
}

impl SurfaceModel {
    pub fn new(
        picard: QuadLattice,
        sigma: Option<usize>,
        fiber: Option<usize>,
        trans: Option<QuadLattice>,
    ) -> Result<Self> {
        if picard.rank() == 0 {
            return Err(Error::InvalidSurface("Picard rank must be positive".into()));
        }
        if !picard.is_even() {
            return Err(Error::InvalidSurface("Picard lattice is not even".into()));
        }
        if let Some(t) = &trans {
            if !t.is_even() {
                return Err(Error::InvalidSurface("transcendental lattice is not even".into()));
            }
        }
        match (sigma, fiber) {
            (Some(si), Some(ci)) => {
                let rank = picard.rank();
                if si >= rank || ci >= rank || si == ci {
                    return Err(Error::InvalidSurface("bad section/fiber indices".into()));
                }
                let ok = *picard.entry(si, si) == BigInt::from(-2)
                    && picard.entry(ci, ci).is_zero()
                    && picard.entry(si, ci).is_one();
                if !ok {
                    return Err(Error::InvalidSurface(
                        "designated classes must satisfy Σ² = -2, C² = 0, Σ·C = 1".into(),
                    ));
                }
            }
            (None, None) => {}
            _ => {
                return Err(Error::InvalidSurface(
                    "section and fiber must be designated together".into(),
                ))
            }
        }
        Ok(SurfaceModel { picard, sigma, fiber, trans })
    }

    /// Elliptic K3 with section, `Pic = ZΣ ⊕ ZC`.
    pub fn elliptic_k3() -> Self {
        Self::new(QuadLattice::from_i64(&[&[-2, 1], &[1, 0]]).unwrap(), Some(0), Some(1), None)
            .unwrap()
    }

    pub fn with_transcendental(mut self, trans: QuadLattice) -> Result<Self> {
        if !trans.is_even() {
            return Err(Error::InvalidSurface("transcendental lattice is not even".into()));
        }
        self.trans = Some(trans);
        Ok(self)
    }

    pub fn picard(&self) -> &QuadLattice {
        &self.picard
    }

    pub fn transcendental(&self) -> Option<&QuadLattice> {
        self.trans.as_ref()
    }

    pub fn picard_rank(&self) -> usize {
        self.picard.rank()
    }

    pub fn trans_rank(&self) -> usize {
        self.trans.as_ref().map_or(0, QuadLattice::rank)
    }

    pub fn sigma_index(&self) -> Option<usize> {
        self.sigma
    }

    pub fn fiber_index(&self) -> Option<usize> {
        self.fiber
    }

    /// Indices of Σ and C, or `UnsupportedSurface`.
    pub fn elliptic_indices(&self) -> Result<(usize, usize)> {
        self.sigma.zip(self.fiber).ok_or(Error::UnsupportedSurface)
    }

    /// True for the rank-two model `Pic = ZΣ ⊕ ZC`.
    pub fn is_rank_two_elliptic(&self) -> bool {
        self.picard_rank() == 2 && self.sigma.is_some()
    }

    pub fn sigma_class<T: Scalar>(&self) -> Result<Vec<T>> {
        let (si, _) = self.elliptic_indices()?;
        Ok(unit_vec(self.picard_rank(), si))
    }

    pub fn fiber_class<T: Scalar>(&self) -> Result<Vec<T>> {
        let (_, ci) = self.elliptic_indices()?;
        Ok(unit_vec(self.picard_rank(), ci))
    }

    /// Intersection product of two H²-classes given by Picard and optional
    /// transcendental coordinates. A missing transcendental part counts as zero.
    pub fn h2_pair<T: Scalar>(
        &self,
        pic_a: &[T],
        trans_a: Option<&[T]>,
        pic_b: &[T],
        trans_b: Option<&[T]>,
    ) -> Result<T> {
        let mut acc = self.picard.pair(pic_a, pic_b)?;
        if let (Some(a), Some(b)) = (trans_a, trans_b) {
            let t = self.trans.as_ref().ok_or(Error::DimensionMismatch {
                expected: 0,
                found: a.len(),
            })?;
            acc = acc + t.pair(a, b)?;
        } else {
            for part in [trans_a, trans_b].into_iter().flatten() {
                check_len(self.trans_rank(), part.len())?;
            }
        }
        Ok(acc)
    }

    /// Mukai form on `Ω = span{1, Σ, C, ω}` in those coordinates.
    pub fn omega_block(&self) -> Result<QuadLattice> {
        self.elliptic_indices()?;
        QuadLattice::from_i64(&[&[0, 0, 0, -1], &[0, -2, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]])
    }

    /// The full algebraic (plus transcendental, when present) Mukai lattice in
    /// coordinates `(a0, c1.., trans.., a2)`.
    pub fn mukai_lattice(&self) -> QuadLattice {
        let p = self.picard_rank();
        let t = self.trans_rank();
        let n = p + t + 2;
        let mut g: Matrix<BigInt> = vec![vec![BigInt::zero(); n]; n];
        g[0][n - 1] = BigInt::from(-1);
        g[n - 1][0] = BigInt::from(-1);
        for i in 0..p {
            for j in 0..p {
                g[1 + i][1 + j] = self.picard.entry(i, j).clone();
            }
        }
        if let Some(tr) = &self.trans {
            for i in 0..t {
                for j in 0..t {
                    g[1 + p + i][1 + p + j] = tr.entry(i, j).clone();
                }
            }
        }
        QuadLattice::new(g).expect("block-diagonal Gram is symmetric")
    }
}

pub(crate) fn unit_vec<T: Scalar>(len: usize, at: usize) -> Vec<T> {
    let mut v = vec![T::zero(); len];
    v[at] = T::one();
    v
}

/// An element `a0 + c1 + trans + a2·ω` of the Mukai lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct MukaiElement<T> {
    pub a0: T,
    pub c1: Vec<T>,
    pub trans: Option<Vec<T>>,
    pub a2: T,
}

impl<T: Scalar> MukaiElement<T> {
    pub fn new(a0: T, c1: Vec<T>, a2: T) -> Self {
        MukaiElement { a0, c1, trans: None, a2 }
    }

    pub fn with_trans(mut self, trans: Vec<T>) -> Self {
        self.trans = Some(trans);
        self
    }

    pub fn zero(s: &SurfaceModel) -> Self {
        Self::new(T::zero(), vec![T::zero(); s.picard_rank()], T::zero())
    }

    /// The unit `1 ∈ H⁰`.
    pub fn one(s: &SurfaceModel) -> Self {
        Self::new(T::one(), vec![T::zero(); s.picard_rank()], T::zero())
    }

    /// The point class ω.
    pub fn omega(s: &SurfaceModel) -> Self {
        Self::new(T::zero(), vec![T::zero(); s.picard_rank()], T::one())
    }

    /// A pure H² class.
    pub fn divisor(c1: Vec<T>) -> Self {
        Self::new(T::zero(), c1, T::zero())
    }

    pub fn sigma(s: &SurfaceModel) -> Result<Self> {
        Ok(Self::divisor(s.sigma_class()?))
    }

    pub fn fiber(s: &SurfaceModel) -> Result<Self> {
        Ok(Self::divisor(s.fiber_class()?))
    }

    pub fn scale(&self, k: &T) -> Self {
        MukaiElement {
            a0: self.a0.clone() * k.clone(),
            c1: self.c1.iter().map(|x| x.clone() * k.clone()).collect(),
            trans: self.trans.as_ref().map(|t| t.iter().map(|x| x.clone() * k.clone()).collect()),
            a2: self.a2.clone() * k.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero()
            && self.a2.is_zero()
            && self.c1.iter().all(Zero::is_zero)
            && self.trans.iter().flatten().all(Zero::is_zero)
    }

    pub fn check_conforms(&self, s: &SurfaceModel) -> Result<()> {
        check_len(s.picard_rank(), self.c1.len())?;
        if let Some(t) = &self.trans {
            check_len(s.trans_rank(), t.len())?;
        }
        Ok(())
    }

    /// Coordinates `(a0, c1.., trans.., a2)` in [`SurfaceModel::mukai_lattice`].
    /// A missing transcendental part is written as zeros.
    pub fn coords(&self, s: &SurfaceModel) -> Vec<T> {
        let mut out = Vec::with_capacity(s.picard_rank() + s.trans_rank() + 2);
        out.push(self.a0.clone());
        out.extend(self.c1.iter().cloned());
        match &self.trans {
            Some(t) => out.extend(t.iter().cloned()),
            None => out.extend(std::iter::repeat_n(T::zero(), s.trans_rank())),
        }
        out.push(self.a2.clone());
        out
    }

    pub fn from_coords(s: &SurfaceModel, coords: &[T]) -> Result<Self> {
        let p = s.picard_rank();
        let t = s.trans_rank();
        check_len(p + t + 2, coords.len())?;
        let trans = (t > 0).then(|| coords[1 + p..1 + p + t].to_vec());
        Ok(MukaiElement {
            a0: coords[0].clone(),
            c1: coords[1..1 + p].to_vec(),
            trans,
            a2: coords[p + t + 1].clone(),
        })
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> MukaiElement<U> {
        MukaiElement {
            a0: f(&self.a0),
            c1: self.c1.iter().map(&f).collect(),
            trans: self.trans.as_ref().map(|t| t.iter().map(&f).collect()),
            a2: f(&self.a2),
        }
    }

    /// Re-expresses the element over another scalar type.
    pub fn cast<U: Scalar>(&self) -> MukaiElement<U> {
        self.map(|x| U::from_rational_exact(&x.to_rational()))
    }
}

/// Conversion used by [`MukaiElement::cast`] and friends.
pub trait FromRational: Sized {
    fn from_rational_exact(q: &BigRational) -> Self;
}

impl<U: Scalar> FromRational for U {
    fn from_rational_exact(q: &BigRational) -> Self {
        let num: U = lift(q.numer());
        let den: U = lift(q.denom());
        num / den
    }
}

fn zip_trans<T: Scalar>(
    a: &Option<Vec<T>>,
    b: &Option<Vec<T>>,
    f: impl Fn(T, T) -> T,
) -> Option<Vec<T>> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.iter().map(|v| f(v.clone(), T::zero())).collect()),
        (None, Some(y)) => Some(y.iter().map(|v| f(T::zero(), v.clone())).collect()),
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| f(p.clone(), q.clone())).collect()),
    }
}

impl<T: Scalar> Add for &MukaiElement<T> {
    type Output = MukaiElement<T>;
    fn add(self, rhs: Self) -> MukaiElement<T> {
        MukaiElement {
            a0: self.a0.clone() + rhs.a0.clone(),
            c1: self.c1.iter().zip(&rhs.c1).map(|(x, y)| x.clone() + y.clone()).collect(),
            trans: zip_trans(&self.trans, &rhs.trans, |x, y| x + y),
            a2: self.a2.clone() + rhs.a2.clone(),
        }
    }
}

impl<T: Scalar> Sub for &MukaiElement<T> {
    type Output = MukaiElement<T>;
    fn sub(self, rhs: Self) -> MukaiElement<T> {
        MukaiElement {
            a0: self.a0.clone() - rhs.a0.clone(),
            c1: self.c1.iter().zip(&rhs.c1).map(|(x, y)| x.clone() - y.clone()).collect(),
            trans: zip_trans(&self.trans, &rhs.trans, |x, y| x - y),
            a2: self.a2.clone() - rhs.a2.clone(),
        }
    }
}

impl<T: Scalar> Neg for &MukaiElement<T> {
    type Output = MukaiElement<T>;
    fn neg(self) -> MukaiElement<T> {
        self.map(|x| -x.clone())
    }
}

/// Chern data `(r, c1, c2)` of a sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub r: BigInt,
    pub c1: Vec<BigInt>,
    pub c2: BigInt,
}

/// `⟨α, β⟩ = α¹·β¹ − α⁰β² − α²β⁰`.
pub fn mukai_pairing<T: Scalar>(s: &SurfaceModel, a: &MukaiElement<T>, b: &MukaiElement<T>) -> Result<T> {
    a.check_conforms(s)?;
    b.check_conforms(s)?;
    let h2 = s.h2_pair(&a.c1, a.trans.as_deref(), &b.c1, b.trans.as_deref())?;
    Ok(h2 - a.a0.clone() * b.a2.clone() - a.a2.clone() * b.a0.clone())
}

/// `d(v) = 2 + ⟨v, v⟩`.
pub fn dim_moduli<T: Scalar>(s: &SurfaceModel, v: &MukaiElement<T>) -> Result<T> {
    Ok(sc::<T>(2) + mukai_pairing(s, v, v)?)
}

/// Euler characteristic `χ = a2 + a0`.
pub fn chi<T: Scalar>(v: &MukaiElement<T>) -> T {
    v.a2.clone() + v.a0.clone()
}

/// `|v| = (v⁰)²⟨v,v⟩/4 + (v⁰)⁴/2`, exactly.
pub fn wall_bound<T: Scalar>(s: &SurfaceModel, v: &MukaiElement<T>) -> Result<BigRational> {
    let r = v.a0.to_rational();
    let vv = mukai_pairing(s, v, v)?.to_rational();
    let r2 = &r * &r;
    let four = BigRational::from_integer(4.into());
    let two = BigRational::from_integer(2.into());
    Ok(&r2 * vv / four + &r2 * &r2 / two)
}

/// `ch(ξ)·v` with `ch(ξ) = 1 + ξ + (ξ²/2)ω`.
pub fn twist<T: Scalar>(s: &SurfaceModel, v: &MukaiElement<T>, xi: &[T]) -> Result<MukaiElement<T>> {
    v.check_conforms(s)?;
    check_len(s.picard_rank(), xi.len())?;
    let xi_sq = s.picard().square(xi)?;
    let v1_xi = s.h2_pair(&v.c1, None, xi, None)?;
    Ok(MukaiElement {
        a0: v.a0.clone(),
        c1: v.c1.iter().zip(xi).map(|(c, x)| c.clone() + v.a0.clone() * x.clone()).collect(),
        trans: v.trans.clone(),
        a2: v.a2.clone() + v1_xi + v.a0.clone() * xi_sq / sc::<T>(2),
    })
}

/// Twists a vector with `v¹·C = 1` to the equivalent one with `χ = 1`.
pub fn normalize<T: Scalar>(s: &SurfaceModel, v: &MukaiElement<T>) -> Result<MukaiElement<T>> {
    let xi = normalizing_twist(s, v)?;
    twist(s, v, &xi)
}

/// The class `(1 − χ(v))·C` used by [`normalize`].
pub fn normalizing_twist<T: Scalar>(s: &SurfaceModel, v: &MukaiElement<T>) -> Result<Vec<T>> {
    v.check_conforms(s)?;
    let fiber = s.fiber_class::<T>()?;
    let v1_c = s.picard().pair(&v.c1, &fiber)?;
    if !v1_c.is_one() {
        return Err(Error::NotNumericalSection(v1_c.to_string()));
    }
    let k = T::one() - chi(v);
    Ok(fiber.into_iter().map(|x| x * k.clone()).collect())
}

/// `v_r = r + Σ + (n − r² + r)C + (1 − r)ω`.
pub fn canonical_vr<T: Scalar>(s: &SurfaceModel, r: u32, n: u64) -> Result<MukaiElement<T>> {
    if r == 0 {
        return Err(Error::InvalidRank);
    }
    let (si, ci) = s.elliptic_indices()?;
    let r_big = BigInt::from(r);
    let n_big = BigInt::from(n);
    let mut c1 = vec![T::zero(); s.picard_rank()];
    c1[si] = T::one();
    c1[ci] = lift(&(&n_big - &r_big * &r_big + &r_big));
    Ok(MukaiElement::new(lift(&r_big), c1, lift(&(BigInt::one() - &r_big))))
}

/// `max(d + 1 − χ(v), 0)`.
pub fn brill_noether_codim<T: Scalar>(v: &MukaiElement<T>, d: u64) -> T {
    let c = sc::<T>(1) + T::from_integer(&BigInt::from(d)) - chi(v);
    if c.is_negative() {
        T::zero()
    } else {
        c
    }
}

/// `Δ = c2 − (r − 1)/(2r)·c1²`.
pub fn delta_discriminant(s: &SurfaceModel, cd: &ChernData) -> Result<BigRational> {
    if !cd.r.is_positive() {
        return Err(Error::InvalidRank);
    }
    let c1_sq = s.picard().square(&cd.c1)?;
    let coeff = BigRational::new(&cd.r - 1, &cd.r * 2);
    Ok(BigRational::from_integer(cd.c2.clone()) - coeff * BigRational::from_integer(c1_sq))
}

/// `v(F) = (r, c1, χ − r)` with `χ = 2r + c1²/2 − c2` (Riemann–Roch on a K3).
pub fn v_from_chern(s: &SurfaceModel, cd: &ChernData) -> Result<MukaiElement<BigInt>> {
    if !cd.r.is_positive() {
        return Err(Error::InvalidRank);
    }
    let c1_sq = s.picard().square(&cd.c1)?;
    let chi = &cd.r * 2 + c1_sq / 2 - &cd.c2;
    Ok(MukaiElement::new(cd.r.clone(), cd.c1.clone(), chi - &cd.r))
}
