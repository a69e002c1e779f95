//! Exact noncommutative computer algebra for algebras of small
//! Gelfand-Kirillov dimension: normal forms in the Weyl algebra and its
//! quantum relatives, truncated arithmetic in skew Laurent series and formal
//! pseudo-differential operator rings, constructive centralizer computation,
//! and bounded-degree classification of elements by the behaviour of their
//! inner derivations.
//!
//! Everything is exact over arbitrary-precision rationals; there is no
//! floating point anywhere.

pub mod degree;
pub mod centralizer;
pub mod classify;
pub mod embed;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod series;
pub mod weyl;

pub use degree::Degree;
pub use field::{FieldEndo, FieldError, Poly1, Poly2, RatFunc, Rational, VarSet};
pub use series::{RingKind, RingTag, SeriesError, SeriesStatus, TruncatedSeries, DEFAULT_WINDOW};
pub use weyl::{AlgebraPresentation, WeylError, WeylLikeElement};

pub use centralizer::{
    centralize_deg0, centralize_posdeg, centre_probe, check_ccc_pair, check_ccc_pair_series,
    verify_eigenspace_factorization, verify_semisimple_uniqueness_series,
    verify_semisimple_uniqueness_weyl, CentralizerError, CentralizerWitness, CentreProbeReport,
    CccReport, Construction, PosdegOutcome, DEFAULT_ANSATZ_DEGREE,
};
pub use classify::{
    classify, classify_with, dp6_table_check, eigen_search, nil_space,
    no_nonzero_eigenvalue_check, torsion_component, verify_commutator_expansion, verify_degree_chain,
    verify_shared_nil, ClassificationReport, ClassifyError, DixmierClass, Dp6Report, EigenSearch,
};
pub use embed::{casimir, CasimirElement, EmbedError, EmbeddingName, EmbeddingSpec, FormalExpr};
pub use parse::{
    elaborate, elaborate_series, elaborate_weyl, parse, parse_poly1, print_series, print_weyl,
    Elaborated, Expr, ExprContext, ParseError,
};
