//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point type the simulator is generic over (`f32` or `f64`).
///
/// Dense eigensolves are routed through this trait so that generic code only
/// ever sees the `num-traits` method set; the implementations call into
/// nalgebra with the concrete type.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + nalgebra::Scalar
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this type.
    fn lit(x: f64) -> Self;

    fn to_f64_lossy(self) -> f64;

    /// Eigen-decomposition of a real symmetric matrix.
    ///
    /// Eigenvalues are returned in ascending order and eigenvectors are the
    /// matching columns of the returned matrix.
    fn symmetric_eigen(m: DMatrix<Self>) -> (Vec<Self>, DMatrix<Self>);

    /// Eigenvalues of a complex Hermitian matrix, ascending.
    fn hermitian_eigenvalues(m: DMatrix<Complex<Self>>) -> Vec<Self>;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn to_f64_lossy(self) -> f64 {
                self as f64
            }

            fn symmetric_eigen(m: DMatrix<Self>) -> (Vec<Self>, DMatrix<Self>) {
                let eig = m.symmetric_eigen();
                let n = eig.eigenvalues.len();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
                let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
                let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
                (values, vectors)
            }

            fn hermitian_eigenvalues(m: DMatrix<Complex<Self>>) -> Vec<Self> {
                let mut values: Vec<Self> = m.symmetric_eigenvalues().iter().copied().collect();
                values.sort_by(|a, b| a.total_cmp(b));
                values
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);
