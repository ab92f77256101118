//! Khovanov homology of closed braids over GF(2).
//!
//! The pipeline goes braid word → marked closure diagram → cube of
//! resolutions → chain complex → homology with representatives → basepoint
//! module action → transverse cycle and the trivial-braid certificate.
//!
//! ```
//! use kh_core::{betti_table, BraidWord, KhComplex};
//!
//! let trefoil: BraidWord = "2: 1 1 1".parse().unwrap();
//! let complex = KhComplex::from_word(&trefoil, 16).unwrap();
//! assert_eq!(betti_table(&complex).unwrap().total_dim(), 6);
//! ```

pub mod basepoint;
pub mod braid;
pub mod cube;
pub mod error;
pub mod f2;
pub mod homology;
pub mod oracles;
pub mod poly;
pub mod transverse;

pub use basepoint::{
    chain_action, check_commutes, homology_action, is_free_rank_one, module_structure, ChainAction, FreenessTest,
    HomologyAction, ModuleStructure, Witness,
};
pub use braid::{BraidWord, ClosureDiagram, Permutation, Sign, Writhe};
pub use cube::{
    braid_like_vertex, build_complex, chain_group_sizes, edge_map, gradings, resolve, Bidegree, CubeVertex,
    EnhancedState, KhComplex, Label, Resolution, DEFAULT_MAX_CROSSINGS,
};
pub use error::{Error, Result};
pub use f2::{homology, induced_map, membership, BitVector, F2Matrix, LinearMap, SparseMatrix, SubquotientBasis};
pub use homology::{
    betti_table, graded_euler_characteristic, homology_at, mirror_table_check, BettiTable, HomologyTable,
};
pub use oracles::{dense_homology_oracle, kauffman_state_sum};
pub use poly::LaurentPoly;
pub use transverse::{
    admissible_component_counts, certify, euler_component_check, max_fibered_euler_char, psi_bidegree, psi_class,
    psi_is_nonzero, psi_plus, TransverseReport, Verdict,
};
