//! Automorphism groups of `G(V)`: a structural engine built from basis
//! permutations (`q = 2` only), an independent search engine, and the
//! orbit/stabilizer machinery and claim checks on top of them.

pub mod checks;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod structural;

pub use checks::{check_psi_isomorphism, check_structure_lemmas, LemmaReport, PsiReport};
pub use group::{orbits_of, AutGroup, AutomorphismSet, GroupAxioms};
pub use oracle::{
    aut_group_oracle, enumerate_automorphisms, find_nontrivial_automorphism, group_order,
    orbits_by_search, DEFAULT_ELEMENT_CAP, DEFAULT_ORACLE_CAP,
};
pub use perm::{Automorphism, BasisPermutation, VertexMap};
pub use structural::{
    aut_group_structural, extend_basis_permutation, restrict_to_basis, StructuralGroup,
};

/// Conjectured order of `Aut(G(V))` for any `q`: basis permutations times
/// arbitrary permutations inside every twin set,
/// `n! * prod_i ((q-1)^i)!^C(n,i)`. Observational only; `None` on overflow.
pub fn conjectured_order(n: usize, q: u32) -> Option<u128> {
    let factorial = |k: u128| -> Option<u128> { (1..=k).try_fold(1u128, |a, x| a.checked_mul(x)) };
    let mut total = factorial(n as u128)?;
    for i in 1..=n {
        let size = ((q - 1) as u128).checked_pow(i as u32)?;
        let per_set = factorial(size)?;
        let sets = crate::vectorspace::binomial(n as u64, i as u64) as u32;
        total = total.checked_mul(per_set.checked_pow(sets)?)?;
    }
    Some(total)
}
