use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar for the numeric kernels: f32 or f64.
///
/// All iterative solvers (tensor power iteration, simplex ascent, Jacobi
/// rotations, ADMM) are generic over this trait; the crate root fixes the
/// default working type with the [`crate::Real`] alias.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from a vertex count or iteration index.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
