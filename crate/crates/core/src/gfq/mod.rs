//! Finite fields `GF(p^k)`, polynomials over them, and permutation-polynomial
//! counts.

mod classes;
mod field;
mod poly;

pub use classes::{pp_class_totals, totals_by_degree, ClassTotal, DegreeTotal, PpClassRow};
pub use field::{make_field, FieldSpec, MAX_FIELD_ORDER};
pub use poly::{count_pps_by_degree, is_permutation_poly, Poly, DEFAULT_PP_BUDGET, MAX_PP_DEGREE};
