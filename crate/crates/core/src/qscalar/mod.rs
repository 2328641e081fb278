//! Exact scalars: rationals, Laurent polynomials and rational functions in `q`,
//! cyclotomic numbers, and the root-of-unity context.

pub mod context;
pub mod cyclo;
pub mod laurent;
pub mod ratfn;
pub mod rational;
pub mod ring;

pub use context::{build_context, specialize_scalar, verify_epsilon, CaseTag, ContextError, RootOfUnityContext, RootOrders};
pub use cyclo::{Cyc, CycField, PoleError};
pub use laurent::{gauss_factorial, gauss_int, q_minus_qinv, Laurent};
pub use ratfn::RatFn;
pub use rational::Q;
pub use ring::{AtRoot, Generic, Ring};
