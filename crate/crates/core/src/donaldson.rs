//! Donaldson polynomials of moduli of sheaves on a K3 at the lattice level.
//!
//! `ι_v(α) = α + (v¹·α / v⁰)ω` lands in `v^⊥`, `μ_v = −θ_v ∘ ι_v`, and the
//! Fujiki relation turns `∫ μ_v(α)^{2n}` into `λ_n · B(μ_v(α))ⁿ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_len, Error, Result};
use crate::hilbert::{beauville_pair, fujiki_lambda, pow, HilbClass};
use crate::mukai::{canonical_vr, dim_moduli, normalize, normalizing_twist, twist, MukaiElement, SurfaceModel};
use crate::scalar::{Field, Scalar};
use crate::theta::theta;

pub type RationalMukaiElement = MukaiElement<BigRational>;

/// An H²-class of the surface: Picard coordinates plus an optional
/// transcendental part.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceClass<T> {
    pub pic: Vec<T>,
    pub trans: Option<Vec<T>>,
}

impl<T: Scalar> SurfaceClass<T> {
    pub fn algebraic(pic: Vec<T>) -> Self {
        SurfaceClass { pic, trans: None }
    }

    pub fn scale(&self, k: &T) -> Self {
        SurfaceClass {
            pic: self.pic.iter().map(|x| x.clone() * k.clone()).collect(),
            trans: self.trans.as_ref().map(|v| v.iter().map(|x| x.clone() * k.clone()).collect()),
        }
    }

    pub fn as_mukai(&self) -> MukaiElement<T> {
        MukaiElement { a0: T::zero(), c1: self.pic.clone(), trans: self.trans.clone(), a2: T::zero() }
    }

    /// Intersection form `Q(α) = α·α`.
    pub fn square(&self, s: &SurfaceModel) -> Result<T> {
        s.h2_pair(&self.pic, self.trans.as_deref(), &self.pic, self.trans.as_deref())
    }
}

/// `ι_v(α) = α + (v¹·α / v⁰)·ω`.
pub fn iota<F: Field>(s: &SurfaceModel, v: &MukaiElement<F>, alpha: &SurfaceClass<F>) -> Result<MukaiElement<F>> {
    v.check_conforms(s)?;
    check_len(s.picard_rank(), alpha.pic.len())?;
    if v.a0.is_zero() {
        return Err(Error::ZeroRank);
    }
    let dot = s.h2_pair(&v.c1, v.trans.as_deref(), &alpha.pic, alpha.trans.as_deref())?;
    let mut out = alpha.as_mukai();
    out.a2 = dot / v.a0.clone();
    Ok(out)
}

/// Identifies `v` with a canonical `v_r`: returns `(r, n, ξ)` with
/// `ch(ξ)·v = v_r`, `d(v) = 2n`.
pub fn canonical_form(s: &SurfaceModel, v: &MukaiElement<BigInt>) -> Result<(u32, u64, Vec<BigInt>)> {
    if v.a0.is_zero() {
        return Err(Error::ZeroRank);
    }
    let r: u32 = v.a0.clone().try_into().map_err(|_| Error::NotCanonical)?;
    let d = dim_moduli(s, v)?;
    if d.sign() == num_bigint::Sign::Minus || (&d % 2u32) != BigInt::zero() {
        return Err(Error::NotCanonical);
    }
    let n: u64 = (d / 2u32).try_into().map_err(|_| Error::NotCanonical)?;
    let xi = normalizing_twist(s, v)?;
    let w = normalize(s, v)?;
    let w = MukaiElement { trans: w.trans.filter(|t| t.iter().any(|x| !x.is_zero())), ..w };
    if w != canonical_vr::<BigInt>(s, r, n)? {
        return Err(Error::NotCanonical);
    }
    Ok((r, n, xi))
}

/// `μ_v(α) = −θ_v(ι_v(α))` for `v` equivalent to a canonical `v_r`.
///
/// For `w = ch(ξ)·v` one has `θ_v(β) = θ_w(ch(ξ)·β)`, so the computation runs
/// on the canonical representative.
pub fn mu(s: &SurfaceModel, v: &MukaiElement<BigInt>, alpha: &SurfaceClass<BigRational>) -> Result<HilbClass<BigRational>> {
    let (r, n, xi) = canonical_form(s, v)?;
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let vq = v.cast::<BigRational>();
    let iv = iota(s, &vq, alpha)?;
    let xi_q: Vec<BigRational> = xi.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let moved = twist(s, &iv, &xi_q)?;
    Ok(-&theta(s, r, n, &moved)?)
}

/// `μ` for the canonical vector `v_r` of dimension `2n`.
pub fn mu_canonical(s: &SurfaceModel, r: u32, n: u64, alpha: &SurfaceClass<BigRational>) -> Result<HilbClass<BigRational>> {
    mu(s, &canonical_vr(s, r, n)?, alpha)
}

/// `q_v(α) = ∫ μ_v(α)^{d(v)} = λ_n · B(μ_v(α))ⁿ`. Returns 1 when `d(v) = 0`.
pub fn q_eval(s: &SurfaceModel, v: &MukaiElement<BigInt>, alpha: &SurfaceClass<BigRational>) -> Result<BigRational> {
    let (_, n, _) = canonical_form(s, v)?;
    if n == 0 {
        return Ok(BigRational::one());
    }
    let image = mu(s, v, alpha)?;
    let b = beauville_pair(s, n, &image, &image)?;
    Ok(BigRational::from_integer(fujiki_lambda(n)?) * pow(&b, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuadLattice;
    use crate::mukai::mukai_pairing;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn alpha(x: i64, y: i64) -> SurfaceClass<BigRational> {
        SurfaceClass::algebraic(vec![q(x, 1), q(y, 1)])
    }

    #[test]
    fn iota_examples() {
        let s = SurfaceModel::elliptic_k3();
        let v = canonical_vr::<BigRational>(&s, 2, 3).unwrap();
        let i = iota(&s, &v, &alpha(0, 1)).unwrap();
        assert_eq!(i, MukaiElement::new(q(0, 1), vec![q(0, 1), q(1, 1)], q(1, 2)));
        assert!(iota(&s, &v, &alpha(0, 0)).unwrap().is_zero());
        let zero_rank = MukaiElement::new(q(0, 1), vec![q(1, 1), q(0, 1)], q(1, 1));
        assert_eq!(iota(&s, &zero_rank, &alpha(1, 1)), Err(Error::ZeroRank));
    }

    #[test]
    fn mu_examples() {
        let s = SurfaceModel::elliptic_k3();
        for r in 3..=6 {
            let m = mu_canonical(&s, r, 4, &alpha(0, 1)).unwrap();
            assert_eq!(beauville_pair(&s, 4, &m, &m).unwrap(), q(0, 1));
            // ι(C) = C + ω/r, θ(C) = −Σ₁ and θ(ω) = rΣ₁ − C₁, so μ(C) = C₁/r.
            assert_eq!(m, HilbClass::new(vec![q(0, 1), q(1, r as i64)], q(0, 1)));
        }
        assert!(mu_canonical(&s, 2, 3, &alpha(0, 0)).unwrap().is_zero());
    }

    #[test]
    fn q_examples() {
        let s = SurfaceModel::elliptic_k3();
        // α = Σ + 2C has α² = 2.
        let v = canonical_vr::<BigInt>(&s, 3, 2).unwrap();
        assert_eq!(q_eval(&s, &v, &alpha(1, 2)).unwrap(), q(12, 1));
        assert_eq!(q_eval(&s, &v, &alpha(0, 5)).unwrap(), q(0, 1));
        let point = canonical_vr::<BigInt>(&s, 2, 0).unwrap();
        assert_eq!(q_eval(&s, &point, &alpha(1, 2)).unwrap(), q(1, 1));
        let k3 = canonical_vr::<BigInt>(&s, 2, 1).unwrap();
        assert!(matches!(q_eval(&s, &k3, &alpha(1, 2)), Err(Error::NTooSmall { .. })));
    }

    #[test]
    fn equivalent_vectors_give_same_q() {
        let s = SurfaceModel::elliptic_k3();
        let v = canonical_vr::<BigInt>(&s, 3, 3).unwrap();
        let w = twist(&s, &v, &[BigInt::from(0), BigInt::from(5)]).unwrap();
        assert_eq!(canonical_form(&s, &w).unwrap().0, 3);
        let a = alpha(2, -1);
        assert_eq!(q_eval(&s, &w, &a).unwrap(), q_eval(&s, &v, &a).unwrap());
        let m = mu(&s, &w, &a).unwrap();
        assert_eq!(beauville_pair(&s, 3, &m, &m).unwrap(), a.square(&s).unwrap());
        let odd = MukaiElement::new(BigInt::from(2), vec![BigInt::from(2), BigInt::from(1)], BigInt::from(0));
        assert!(canonical_form(&s, &odd).is_err());
    }

    #[test]
    fn transcendental_alpha() {
        let trans = QuadLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let s = SurfaceModel::elliptic_k3().with_transcendental(trans).unwrap();
        let a = SurfaceClass { pic: vec![q(1, 1), q(0, 1)], trans: Some(vec![q(1, 1), q(1, 1)]) };
        for r in 1..=4 {
            let m = mu_canonical(&s, r, 3, &a).unwrap();
            assert_eq!(beauville_pair(&s, 3, &m, &m).unwrap(), a.square(&s).unwrap());
        }
    }

    proptest! {
        #[test]
        fn iota_lands_in_perp(r in 1i64..8, x in -9i64..9, y in -9i64..9, a2 in -9i64..9, ax in -9i64..9, ay in -9i64..9) {
            let s = SurfaceModel::elliptic_k3();
            let v = MukaiElement::new(q(r, 1), vec![q(x, 1), q(y, 1)], q(a2, 1));
            let i = iota(&s, &v, &alpha(ax, ay)).unwrap();
            prop_assert!(mukai_pairing(&s, &v, &i).unwrap().is_zero());
        }

        #[test]
        fn mu_is_isometric(r in 1u32..=6, n in 2u64..=8, x in -9i64..9, y in -9i64..9) {
            let s = SurfaceModel::elliptic_k3();
            let a = alpha(x, y);
            let m = mu_canonical(&s, r, n, &a).unwrap();
            prop_assert_eq!(beauville_pair(&s, n, &m, &m).unwrap(), a.square(&s).unwrap());
        }

        #[test]
        fn q_is_homogeneous_and_rank_free(n in 2u64..=5, x in -5i64..5, y in -5i64..5, k in -3i64..=3) {
            let s = SurfaceModel::elliptic_k3();
            let a = alpha(x, y);
            let base = q_eval(&s, &canonical_vr(&s, 1, n).unwrap(), &a).unwrap();
            for r in 2..=4 {
                prop_assert_eq!(&q_eval(&s, &canonical_vr(&s, r, n).unwrap(), &a).unwrap(), &base);
            }
            let scaled = q_eval(&s, &canonical_vr(&s, 3, n).unwrap(), &a.scale(&q(k, 1))).unwrap();
            prop_assert_eq!(scaled, base * pow(&q(k, 1), 2 * n));
        }
    }
}
