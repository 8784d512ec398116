//! Singular value decomposition of the MSR matrix and signal-subspace
//! selection.

use nalgebra::{DMatrix, RealField, SVD};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::forward::MsrMatrix;
use crate::real::Real;

/// Default relative threshold for [`RankMode::Auto`].
pub const DEFAULT_AUTO_THRESHOLD: f64 = 0.01;

/// Factorization `M = sum_m sigma_m U_m conj(V_m)^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFactors<T: Real> {
    singular_values: Vec<T>,
    left: DMatrix<Complex<T>>,
    right: DMatrix<Complex<T>>,
    rank: Option<usize>,
}

/// How many leading singular triplets span the signal space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankMode<T> {
    Fixed(usize),
    /// Keep every singular value with `sigma_k >= tau * sigma_1`.
    Auto(T),
}

impl<T: Real> SpectralFactors<T> {
    /// Assembles factors from explicit parts. Columns of `left` and `right`
    /// are the singular vectors `U_m` and `V_m`.
    pub fn from_parts(
        singular_values: Vec<T>,
        left: DMatrix<Complex<T>>,
        right: DMatrix<Complex<T>>,
    ) -> Result<Self> {
        let n = singular_values.len();
        if left.shape() != (n, n) || right.shape() != (n, n) {
            return Err(Error::InvalidArgument(format!(
                "singular vectors must be {n}x{n}, got {:?} and {:?}",
                left.shape(),
                right.shape()
            )));
        }
        if singular_values.iter().any(|s| s.is_nan() || *s < T::zero()) {
            return Err(Error::InvalidArgument(
                "singular values must be nonnegative".into(),
            ));
        }
        if singular_values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument(
                "singular values must be sorted nonincreasing".into(),
            ));
        }
        Ok(Self {
            singular_values,
            left,
            right,
            rank: None,
        })
    }

    pub fn size(&self) -> usize {
        self.singular_values.len()
    }

    pub fn singular_values(&self) -> &[T] {
        &self.singular_values
    }

    /// Left singular vectors as columns.
    pub fn left_vectors(&self) -> &DMatrix<Complex<T>> {
        &self.left
    }

    /// Right singular vectors `V_m` as columns (the factorization uses their
    /// conjugates).
    pub fn right_vectors(&self) -> &DMatrix<Complex<T>> {
        &self.right
    }

    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    /// Copy with the given rank, bypassing mode validation.
    pub fn with_rank(mut self, rank: usize) -> Result<Self> {
        if rank > self.size() {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} exceeds matrix size {}",
                self.size()
            )));
        }
        self.rank = Some(rank);
        Ok(self)
    }

    /// Mutable access used for gauge experiments on stored vectors.
    pub fn vectors_mut(&mut self) -> (&mut DMatrix<Complex<T>>, &mut DMatrix<Complex<T>>) {
        (&mut self.left, &mut self.right)
    }

    /// `sum_{m < rank} sigma_m U_m conj(V_m)^T`.
    pub fn reconstruct(&self, rank: usize) -> DMatrix<Complex<T>> {
        let n = self.size();
        let k = rank.min(n);
        let mut out = DMatrix::zeros(n, n);
        for m in 0..k {
            let s = self.singular_values[m];
            let u = self.left.column(m);
            let v = self.right.column(m);
            for l in 0..n {
                let coeff = v[l].conj() * s;
                for j in 0..n {
                    out[(j, l)] += u[j] * coeff;
                }
            }
        }
        out
    }

    /// Frobenius norm of the discarded tail, `(sum_{k > rank} sigma_k^2)^{1/2}`.
    pub fn tail_norm(&self, rank: usize) -> T {
        self.singular_values
            .iter()
            .skip(rank)
            .map(|s| *s * *s)
            .sum::<T>()
            .sqrt()
    }
}

/// Full SVD of the MSR matrix, singular values in nonincreasing order.
pub fn decompose<T>(msr: &MsrMatrix<T>) -> Result<SpectralFactors<T>>
where
    T: Real + RealField,
{
    let n = msr.size();
    let max_iterations = 200 * n.max(10);
    let eps = <T as num_traits::Float>::epsilon();
    let svd = SVD::try_new(msr.entries().clone(), true, true, eps, max_iterations).ok_or(
        Error::SvdNonConvergence {
            size: n,
            max_iterations,
        },
    )?;
    let u = svd.u.expect("left vectors requested");
    let v_t = svd.v_t.expect("right vectors requested");
    let singular_values = svd.singular_values.iter().copied().collect();
    // nalgebra returns V^H; store V so the columns are the right vectors.
    let right = v_t.adjoint();
    Ok(SpectralFactors {
        singular_values,
        left: u,
        right,
        rank: None,
    })
}

/// Chooses the signal-space dimension.
pub fn select_rank<T: Real>(factors: SpectralFactors<T>, mode: RankMode<T>) -> Result<SpectralFactors<T>> {
    let n = factors.size();
    let rank = match mode {
        RankMode::Fixed(k) => {
            if k == 0 || k > n {
                return Err(Error::InvalidArgument(format!(
                    "fixed rank must lie in 1..={n}, got {k}"
                )));
            }
            k
        }
        RankMode::Auto(tau) => {
            if !(tau > T::zero() && tau < T::one()) {
                return Err(Error::InvalidArgument(format!(
                    "auto-rank threshold must lie in (0, 1), got {tau}"
                )));
            }
            auto_rank(factors.singular_values(), tau)
        }
    };
    factors.with_rank(rank)
}

fn auto_rank<T: Real>(singular_values: &[T], tau: T) -> usize {
    let Some(&first) = singular_values.first() else {
        return 0;
    };
    if first <= T::zero() {
        return 0;
    }
    let cut = tau * first;
    singular_values.iter().take_while(|s| **s >= cut).count()
}
