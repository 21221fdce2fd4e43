//! Real scalar abstraction: all core math is generic over `Scalar`,
//! instantiated as `f32` or `f64` (concrete aliases live at the crate root).

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar underlying every vector, operator and report.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + std::fmt::Debug
    + std::fmt::Display
    + std::iter::Sum
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` constant (tolerances, literals) into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to scalar")
    }

    /// Lossy view as `f64`, for diagnostics and formatting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate's scalar type.
pub type C<S> = Complex<S>;

/// `Σ |v_i|²` without intermediate allocation.
pub fn norm_sqr<S: Scalar>(v: &[C<S>]) -> S {
    v.iter().fold(S::zero(), |acc, z| acc + z.norm_sqr())
}

/// Euclidean norm of a complex vector.
pub fn norm<S: Scalar>(v: &[C<S>]) -> S {
    norm_sqr(v).sqrt()
}

/// Inner product `⟨a, b⟩`, antilinear in the first argument.
pub fn dot<S: Scalar>(a: &[C<S>], b: &[C<S>]) -> C<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(C::<S>::new(S::zero(), S::zero()), |acc, (x, y)| {
            acc + x.conj() * *y
        })
}

/// Scale a vector in place by `1/‖v‖`. Returns the prior norm.
pub fn normalize<S: Scalar>(v: &mut [C<S>]) -> S {
    let n = norm(v);
    if n > S::zero() {
        let inv = S::one() / n;
        for z in v.iter_mut() {
            *z = z.scale(inv);
        }
    }
    n
}

/// `y ← y + alpha·x`.
pub fn axpy<S: Scalar>(alpha: C<S>, x: &[C<S>], y: &mut [C<S>]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * *xi;
    }
}
