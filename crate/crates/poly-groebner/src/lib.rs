//! Multivariate polynomials over Q and small prime fields, reduced Gröbner
//! bases, saturation, and rational substitutions.

mod coeff;
mod frac;
mod groebner;
mod mono;
mod poly;
mod subst;
mod text;

pub use coeff::{Coeff, Fp, DISPATCH_PRIMES, Q};
pub use frac::{substitute_poly, FracElem};
pub use groebner::{groebner, normal_form, GbBudget, GbError, PolyIdeal};
pub use mono::{Mono, MonoOrder, MAX_VARS};
pub use poly::Poly;
pub use subst::{extract_substitutions, Substitutions};
pub use text::{format_poly, parse_frac, parse_poly, var_names, ParseError};
