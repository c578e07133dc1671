//! Smoothness, relative global dimension and finite-dimensional relative
//! homological invariants of algebra extensions `B → A` over an exact field.
//!
//! Algebras are finite products of quotients `k[x]/I`. Smoothness is
//! decided by flatness plus the Jacobian criterion; the relative global
//! dimension follows from it. Finite-dimensional instances additionally get
//! explicit relative resolutions, relative Tor, `cdim` and relative
//! Hochschild homology by exact linear algebra.

pub mod algebra;
pub mod error;
pub mod extnat;
pub mod fdrel;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod relgldim;
pub mod smooth;

pub use algebra::{
    fiber_algebra, kahler_differentials, map_kernel, mult_kernel, tensor_over_base, tensor_over_k, Component,
    ComponentImage, FiberPoint, PresentedAlgebra, RingMap,
};
pub use error::{Error, Result};
pub use extnat::ExtendedNat;
pub use fdrel::{
    cdim_fd, fd_from_presentation, induce, rel_bar_homology, rel_pd, rel_projective_test, rel_tor,
    standard_resolution, FDAlgebra, FDModule, FDSubalgebra, RelResolution,
};
pub use field::{Field, FieldElem};
pub use groebner::{buchberger, krull_dim, Budget, GroebnerBasis, Ideal, KrullDim};
pub use linalg::Matrix;
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing};
pub use relgldim::{fiber_gldim, rel_gldim, rel_gldim_sampled_lower_bound, tensor_gldim_check, GldimReport, RankBound, TensorCheck};
pub use smooth::{flatness_check, is_smooth, nonsmooth_locus, FlatnessStatus, SmoothnessReport, Verdict};
