//! Bar-complex group cohomology of finite groups, extension classes from
//! sections, and the connecting homomorphism δ : H²(Γ;ℚ/ℤ) → H³(Γ;ℤ).

pub mod bar;
mod extension;
mod group;

pub use bar::{
    bar_add, bar_coboundary, bar_is_zero, bar_matrix, bar_neg, bar_sub, connecting_delta,
    group_cohomology_q_mod_z, group_cohomology_z, index_tuple, is_group_coboundary,
    is_group_coboundary_in_subgroup, is_group_coboundary_mult, reduce_int_mod1, tuple_index,
    zero_cochain, BarCochain, BarError, CircleMultModule, CochainPullbackModule, GroupModule,
    TrivialModule,
};
pub use extension::{
    builtin_corpus, heisenberg3, ExtensionCorpus, ExtensionError, ExtensionSpec, ExtensionTable,
};
pub use group::{group_from_permutations, permutation_closure, FiniteGroup, GroupError};
