//! The Beauville lattice `H²(S^[n]; Z) = σ(H²(S; Z)) ⊕ Z·T`.
//!
//! `σ` is an isometry onto its image, the sum is orthogonal and
//! `B(T, T) = −2(n − 1)`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_len, Error, Result};
use crate::mukai::SurfaceModel;
use crate::scalar::{lift, sc, Scalar};

/// A class `σ(pic + trans) + t·T` in `H²(S^[n])`.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbClass<T> {
    pub pic: Vec<T>,
    pub trans: Option<Vec<T>>,
    pub t: T,
}

impl<T: Scalar> HilbClass<T> {
    pub fn new(pic: Vec<T>, t: T) -> Self {
        HilbClass { pic, trans: None, t }
    }

    pub fn zero(s: &SurfaceModel) -> Self {
        Self::new(vec![T::zero(); s.picard_rank()], T::zero())
    }

    /// The class `T` (half the non-reduced divisor).
    pub fn t_class(s: &SurfaceModel) -> Self {
        Self::new(vec![T::zero(); s.picard_rank()], T::one())
    }

    /// `Σ₁ = σ(Σ)`.
    pub fn sigma1(s: &SurfaceModel) -> Result<Self> {
        Ok(Self::new(s.sigma_class()?, T::zero()))
    }

    /// `C₁ = σ(C)`.
    pub fn fiber1(s: &SurfaceModel) -> Result<Self> {
        Ok(Self::new(s.fiber_class()?, T::zero()))
    }

    pub fn scale(&self, k: &T) -> Self {
        HilbClass {
            pic: self.pic.iter().map(|x| x.clone() * k.clone()).collect(),
            trans: self.trans.as_ref().map(|v| v.iter().map(|x| x.clone() * k.clone()).collect()),
            t: self.t.clone() * k.clone(),
        }
    }

    pub fn scale_i(&self, k: i64) -> Self {
        self.scale(&sc(k))
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero() && self.pic.iter().all(Zero::is_zero) && self.trans.iter().flatten().all(Zero::is_zero)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> HilbClass<U> {
        HilbClass {
            pic: self.pic.iter().map(&f).collect(),
            trans: self.trans.as_ref().map(|v| v.iter().map(&f).collect()),
            t: f(&self.t),
        }
    }

    /// Integral version of the class, or `None` if some coordinate is fractional.
    pub fn to_integral(&self) -> Option<HilbClass<BigInt>> {
        Some(HilbClass {
            pic: self.pic.iter().map(Scalar::to_integer).collect::<Option<_>>()?,
            trans: match &self.trans {
                Some(v) => Some(v.iter().map(Scalar::to_integer).collect::<Option<_>>()?),
                None => None,
            },
            t: self.t.to_integer()?,
        })
    }

    /// Canonical form: an all-zero transcendental part is dropped.
    pub fn canonical(mut self) -> Self {
        if self.trans.as_ref().is_some_and(|v| v.iter().all(Zero::is_zero)) {
            self.trans = None;
        }
        self
    }

    pub fn check_conforms(&self, s: &SurfaceModel) -> Result<()> {
        check_len(s.picard_rank(), self.pic.len())?;
        if let Some(t) = &self.trans {
            check_len(s.trans_rank(), t.len())?;
        }
        Ok(())
    }
}

impl<T: Scalar> Add for &HilbClass<T> {
    type Output = HilbClass<T>;
    fn add(self, rhs: Self) -> HilbClass<T> {
        HilbClass {
            pic: self.pic.iter().zip(&rhs.pic).map(|(a, b)| a.clone() + b.clone()).collect(),
            trans: match (&self.trans, &rhs.trans) {
                (None, None) => None,
                (Some(a), None) => Some(a.clone()),
                (None, Some(b)) => Some(b.clone()),
                (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()),
            },
            t: self.t.clone() + rhs.t.clone(),
        }
    }
}

impl<T: Scalar> Neg for &HilbClass<T> {
    type Output = HilbClass<T>;
    fn neg(self) -> HilbClass<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Scalar> Sub for &HilbClass<T> {
    type Output = HilbClass<T>;
    fn sub(self, rhs: Self) -> HilbClass<T> {
        self + &(-rhs)
    }
}

fn require_n(n: u64, min: u64) -> Result<()> {
    if n < min {
        Err(Error::NTooSmall { n, min })
    } else {
        Ok(())
    }
}

/// `σ(α)` for an H²-class given by Picard and optional transcendental parts.
pub fn sigma_embed<T: Scalar>(s: &SurfaceModel, n: u64, pic: &[T], trans: Option<&[T]>) -> Result<HilbClass<T>> {
    require_n(n, 2)?;
    check_len(s.picard_rank(), pic.len())?;
    if let Some(t) = trans {
        check_len(s.trans_rank(), t.len())?;
    }
    Ok(HilbClass { pic: pic.to_vec(), trans: trans.map(<[T]>::to_vec), t: T::zero() })
}

/// Beauville form `B(β, γ) = β¹·γ¹ − 2(n − 1)·β_T·γ_T`.
pub fn beauville_pair<T: Scalar>(s: &SurfaceModel, n: u64, a: &HilbClass<T>, b: &HilbClass<T>) -> Result<T> {
    require_n(n, 2)?;
    a.check_conforms(s)?;
    b.check_conforms(s)?;
    let h2 = s.h2_pair(&a.pic, a.trans.as_deref(), &b.pic, b.trans.as_deref())?;
    let t_sq: T = lift(&(BigInt::from(n - 1) * -2));
    Ok(h2 + t_sq * a.t.clone() * b.t.clone())
}

/// The divisor `L ~ (n − 1)C₁ − T`.
pub fn class_l<T: Scalar>(s: &SurfaceModel, n: u64) -> Result<HilbClass<T>> {
    require_n(n, 2)?;
    let c1 = HilbClass::<T>::fiber1(s)?;
    Ok(&c1.scale(&lift(&BigInt::from(n - 1))) - &HilbClass::t_class(s))
}

/// Fujiki constant of `S^[n]`: `(2n)! / (n!·2ⁿ)`.
pub fn fujiki_lambda(n: u64) -> Result<BigInt> {
    require_n(n, 1)?;
    let mut two_n_fact = BigInt::one();
    for k in 1..=2 * n {
        two_n_fact *= k;
    }
    let mut n_fact = BigInt::one();
    for k in 1..=n {
        n_fact *= k;
    }
    let pow2 = BigInt::one() << n;
    Ok(two_n_fact / (n_fact * pow2))
}

/// `∫ β^{2n} = λ_n · B(β, β)ⁿ`.
pub fn fujiki_eval<T: Scalar>(s: &SurfaceModel, n: u64, beta: &HilbClass<T>) -> Result<T> {
    let lambda: T = lift(&fujiki_lambda(n)?);
    let b = beauville_pair(s, n, beta, beta)?;
    Ok(lambda * pow(&b, n))
}

pub(crate) fn pow<T: Scalar>(x: &T, e: u64) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{det, QuadLattice};
    use crate::mukai::{mukai_pairing, MukaiElement};
    use proptest::prelude::*;

    type H = HilbClass<BigInt>;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sigma_embed_examples() {
        let s = SurfaceModel::elliptic_k3();
        assert_eq!(sigma_embed(&s, 3, &[b(1), b(0)], None).unwrap(), H::sigma1(&s).unwrap());
        assert!(sigma_embed(&s, 3, &[b(0), b(0)], None).unwrap().is_zero());
        let c1 = sigma_embed(&s, 3, &[b(0), b(1)], None).unwrap();
        assert_eq!(beauville_pair(&s, 3, &c1, &c1).unwrap(), b(0));
        assert_eq!(sigma_embed(&s, 1, &[b(0), b(1)], None), Err(Error::NTooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn beauville_examples() {
        let s = SurfaceModel::elliptic_k3();
        let t = H::t_class(&s);
        assert_eq!(beauville_pair(&s, 4, &t, &t).unwrap(), b(-6));
        let sigma = H::sigma1(&s).unwrap();
        assert_eq!(beauville_pair(&s, 4, &sigma, &t).unwrap(), b(0));
        let sc = &sigma + &H::fiber1(&s).unwrap();
        assert_eq!(beauville_pair(&s, 4, &sc, &sc).unwrap(), b(0));
    }

    #[test]
    fn class_l_examples() {
        let s = SurfaceModel::elliptic_k3();
        assert_eq!(class_l::<BigInt>(&s, 2).unwrap(), H::new(vec![b(0), b(1)], b(-1)));
        assert_eq!(class_l::<BigInt>(&s, 5).unwrap(), H::new(vec![b(0), b(4)], b(-1)));
        let l = class_l::<BigInt>(&s, 3).unwrap();
        assert_eq!(beauville_pair(&s, 3, &l, &l).unwrap(), b(-4));
    }

    #[test]
    fn fujiki_examples() {
        assert_eq!(fujiki_lambda(1).unwrap(), b(1));
        assert_eq!(fujiki_lambda(2).unwrap(), b(3));
        assert_eq!(fujiki_lambda(6).unwrap(), b(10395));
        assert!(fujiki_lambda(0).is_err());
        let s = SurfaceModel::elliptic_k3();
        let c1 = H::fiber1(&s).unwrap();
        assert_eq!(fujiki_eval(&s, 3, &c1).unwrap(), b(0));
        assert_eq!(fujiki_eval(&s, 2, &H::t_class(&s)).unwrap(), b(12));
        assert_eq!(fujiki_eval(&s, 3, &H::sigma1(&s).unwrap()).unwrap(), b(-120));
    }

    #[test]
    fn fujiki_is_double_factorial() {
        for n in 1..=20u64 {
            let dfact: BigInt = (1..=n).map(|k| BigInt::from(2 * k - 1)).product();
            assert_eq!(fujiki_lambda(n).unwrap(), dfact);
        }
    }

    #[test]
    fn beauville_gram_discriminant() {
        let s = SurfaceModel::elliptic_k3();
        for n in 2..=10u64 {
            let basis = [H::sigma1(&s).unwrap(), H::fiber1(&s).unwrap(), H::t_class(&s)];
            let g: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|x| basis.iter().map(|y| beauville_pair(&s, n, x, y).unwrap()).collect())
                .collect();
            assert_eq!(det(&g).unwrap(), BigInt::from(2 * (n as i64 - 1)));
        }
    }

    #[test]
    fn transcendental_block_pairs() {
        let s = SurfaceModel::elliptic_k3().with_transcendental(QuadLattice::hyperbolic_plane()).unwrap();
        let a = H { pic: vec![b(1), b(0)], trans: Some(vec![b(1), b(0)]), t: b(0) };
        let c = H { pic: vec![b(0), b(0)], trans: Some(vec![b(0), b(3)]), t: b(1) };
        assert_eq!(beauville_pair(&s, 3, &a, &c).unwrap(), b(3));
    }

    proptest! {
        #[test]
        fn sigma_is_isometry(x in -20i64..20, y in -20i64..20, z in -20i64..20, w in -20i64..20, n in 2u64..10) {
            let s = SurfaceModel::elliptic_k3();
            let (p, q) = (vec![b(x), b(y)], vec![b(z), b(w)]);
            let lhs = beauville_pair(&s, n, &sigma_embed(&s, n, &p, None).unwrap(), &sigma_embed(&s, n, &q, None).unwrap()).unwrap();
            let rhs = mukai_pairing(&s, &MukaiElement::divisor(p.clone()), &MukaiElement::divisor(q)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let t = H::t_class(&s);
            prop_assert!(beauville_pair(&s, n, &sigma_embed(&s, n, &p, None).unwrap(), &t).unwrap().is_zero());
        }
    }
}
