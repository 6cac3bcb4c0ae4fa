//! Exact linear algebra for integral quadratic lattices.
//!
//! A [`QuadLattice`] is `Z^rank` with a symmetric integral Gram matrix. Vectors
//! are plain coordinate slices; pairings run over any [`Scalar`], so the same
//! lattice pairs integral and rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::scalar::{lift, Scalar};

/// Row-major dense matrix.
pub type Matrix<T> = Vec<Vec<T>>;

/// Coordinates of a lattice vector.
pub type LatticeVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadLattice {
    gram: Matrix<BigInt>,
}

impl TryFrom<Matrix<BigInt>> for QuadLattice {
    type Error = Error;

    fn try_from(gram: Matrix<BigInt>) -> Result<Self> {
        QuadLattice::new(gram)
    }
}

impl From<QuadLattice> for Matrix<BigInt> {
    fn from(lat: QuadLattice) -> Self {
        lat.gram
    }
}

impl QuadLattice {
    pub fn new(gram: Matrix<BigInt>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i) {
                if *x != gram[j][i] {
                    return Err(Error::InvalidSurface(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(QuadLattice { gram })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self> {
        Self::new(
            gram.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_i64(&[&[0, 1], &[1, 0]]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<BigInt> {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, row)| row[i].is_even())
    }

    /// `uᵀ · gram · v`.
    pub fn pair<T: Scalar>(&self, u: &[T], v: &[T]) -> Result<T> {
        check_len(self.rank(), u.len())?;
        check_len(self.rank(), v.len())?;
        let mut acc = T::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = T::zero();
            for (j, vj) in v.iter().enumerate() {
                let g = &self.gram[i][j];
                if !g.is_zero() && !vj.is_zero() {
                    row = row + lift::<T>(g) * vj.clone();
                }
            }
            acc = acc + ui.clone() * row;
        }
        Ok(acc)
    }

    pub fn square<T: Scalar>(&self, u: &[T]) -> Result<T> {
        self.pair(u, u)
    }

    pub fn gram_of<T: Scalar>(&self, basis: &[Vec<T>]) -> Result<Matrix<T>> {
        let mut out = Vec::with_capacity(basis.len());
        for u in basis {
            let mut row = Vec::with_capacity(basis.len());
            for v in basis {
                row.push(self.pair(u, v)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Basis of the saturated sublattice `{x : ⟨x, g⟩ = 0 for all g in gens}`.
    pub fn orthogonal_complement(&self, gens: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
        let n = self.rank();
        // Row i of the constraint matrix is gens[i]ᵀ · gram.
        let mut constraints = Vec::with_capacity(gens.len());
        for g in gens {
            check_len(n, g.len())?;
            let row: Vec<BigInt> = (0..n)
                .map(|j| g.iter().zip(&self.gram).map(|(gi, grow)| gi * &grow[j]).sum())
                .collect();
            constraints.push(row);
        }
        Ok(integer_kernel(&constraints, n))
    }

    /// Integer coefficients `c` with `Σ c_i basis[i] = target`.
    pub fn decompose(&self, target: &[BigInt], basis: &[LatticeVector]) -> Result<Vec<BigInt>> {
        check_len(self.rank(), target.len())?;
        for b in basis {
            check_len(self.rank(), b.len())?;
        }
        let coeffs = solve_rational(target, basis)?.ok_or(Error::NotInSpan)?;
        coeffs
            .into_iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NotInSpan) })
            .collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> Result<T> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Matrix<T> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Saturated integer kernel of `x ↦ A·x` for an `m × ncols` matrix `A`.
///
/// Unimodular row operations on `[Aᵀ | I]` bring `Aᵀ` to echelon form; the rows
/// whose `Aᵀ` part vanishes carry a basis of the kernel in their identity part.
/// The transformation is unimodular, so that basis spans every integer point of
/// the rational kernel.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<LatticeVector> {
    let m = a.len();
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..ncols)
        .map(|i| {
            let left = (0..m).map(|r| a[r][i].clone()).collect();
            let mut right = vec![BigInt::zero(); ncols];
            right[i] = BigInt::one();
            (left, right)
        })
        .collect();

    let mut pivot = 0;
    for col in 0..m {
        if pivot == ncols {
            break;
        }
        loop {
            // Smallest nonzero entry at or below the pivot row.
            let best = (pivot..ncols)
                .filter(|&i| !rows[i].0[col].is_zero())
                .min_by(|&i, &j| rows[i].0[col].abs().cmp(&rows[j].0[col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let mut done = true;
            for i in pivot + 1..ncols {
                if rows[i].0[col].is_zero() {
                    continue;
                }
                let q = rows[i].0[col].div_floor(&rows[pivot].0[col]);
                let (p_left, p_right) = rows[pivot].clone();
                let row = &mut rows[i];
                for (x, p) in row.0.iter_mut().zip(&p_left) {
                    *x -= &q * p;
                }
                for (x, p) in row.1.iter_mut().zip(&p_right) {
                    *x -= &q * p;
                }
                if !row.0[col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    rows.into_iter().skip(pivot).map(|(_, right)| normalize_sign(right)).collect()
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -&*x;
        }
    }
    v
}

/// Rational coefficients expressing `target` in `basis`, `None` when `target`
/// is outside the rational span.
pub fn solve_rational(target: &[BigInt], basis: &[LatticeVector]) -> Result<Option<Vec<BigRational>>> {
    let dim = target.len();
    let k = basis.len();
    // Augmented dim × (k+1) system with the basis vectors as columns.
    let mut aug: Matrix<BigRational> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|b| BigRational::from_integer(b[i].clone())).collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();

    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..dim).find(|&i| !aug[i][c].is_zero()) else {
            return Err(Error::DecompositionFailed("basis is linearly dependent".into()));
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..dim {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot_row = aug[r].clone();
                for (x, p) in aug[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[k].is_zero()) {
        return Ok(None);
    }
    Ok(Some(pivots.iter().map(|&i| aug[i][k].clone()).collect()))
}
