//! The string-link homotopy group `H(n)`.
//!
//! Stacking follows `ℓ_k(T S) = ℓ_k(T) · A_T(ℓ_k(S))` where `A_T` conjugates
//! `x_m` to `ℓ_m(T)^-1 x_m ℓ_m(T)`, after which `X_k` is killed in `ℓ_k`.

mod families;
mod h4;
mod h4sym;
mod tuple;

pub use families::{
    borromean, maximal_four, maximal_sublinks, maximal_sublinks_expr, quadruple_expr, triple_expr,
};
pub use h4::{
    basis_expr, h4_commutator_entry, h4_conjugate_family, h4_is_conjugate, h4_multiply,
    h4_normalize, h4_realize, ConjugateParams, H4NormalForm, A1234, A1324, H4_KEYS, H4_PAIRS,
    H4_TRIPLES,
};
pub use h4sym::{h4_inverse, h4_pow, h4_reverse, h4_reverse_last, h4_swap};
pub(crate) use h4sym::{reverse_last_exponents, swap_exponents};
pub use tuple::{phi, phi_word, HExpr, HLetter, HModel, HWord, LongitudeTuple, MilnorVector, Pair};
