//! Exact classification of multipartite pure-state entanglement by
//! hyperdeterminants.
//!
//! Everything is computed over the Gaussian rationals with no floating
//! point: hyperdeterminants of the 2x2, 2x2x2, 3x2x2 and 2x2x2x2 formats,
//! SLOCC orbit classification, singularity tests (critical points, Hessian,
//! node conditions), and the partial order of classes under noninvertible
//! local operations.

pub mod classify;
pub mod error;
pub mod hyperdet;
pub mod linalg;
pub mod orbit;
pub mod random;
pub mod scalar;
pub mod singularity;
pub mod statefile;
pub mod tensor;

pub use classify::{
    all_classes, classify, classify_2x2x2, classify_2x2x2x2, classify_3x2x2, classify_bipartite,
    class_dimension, parse_class_name, representative, ClassName, Classification,
    EntanglementClass,
};
pub use error::{Error, Result};
pub use hyperdet::{
    binary_discriminant, concurrence_sq, det_2x2, det_2x2x2, det_2x2x2x2, det_2x2x2x2_parallel,
    det_3x2x2, factorized_det4, generic_four_qubit, hyperdet, schlafli_lift, tangle_sq,
    BinaryForm, HyperdetResult,
};
pub use linalg::{bipartite_class, local_ranks, Matrix};
pub use orbit::{can_degrade, edge_witnesses, order_diagram, order_diagram_dot, ClassDag};
pub use random::{random_state, SplitMix64};
pub use scalar::{parse_scalar, rational, GaussianRational, Rational};
pub use singularity::{
    hessian_det, hessian_matrix, is_critical_point, node1_membership_3x2x2,
    node_membership_3qubit, separability_pattern, xo_point, xo_section_member, Partition,
};
pub use statefile::{
    parse_operation, parse_point, parse_state, serialize_operation, serialize_state,
};
pub use tensor::{segre_product, LocalOperation, PartyVectorTuple, Tensor, TensorFormat};
