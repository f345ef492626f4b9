//! Non-archimedean Newton iteration, implicit functions, and univariate
//! root finding over local fields.

pub mod roots;

pub use roots::{newton_lift, poly_derivative, poly_eval, univariate_roots};
