//! Exact enumeration and classification of the circles through point
//! triples of a planar set, by the depth split they induce, together with
//! machine checks of the counting identities those splits satisfy and of
//! their invariance under one-point deformations.
//!
//! All geometry is exact: coordinates are arbitrary-precision rationals and
//! every decision is the sign of a rational expression.

pub mod census;
pub mod deform;
pub mod format;
pub mod kernel;
pub mod pointset;
pub mod verify;

pub use census::{
    census, census_brute, census_sweep, classify_all, classify_circle, count_halving,
    count_halving_with, count_pair_halving, CensusError, CircleRecord, DepthHistogram, Engine,
    SplitClass,
};
pub use deform::{
    find_crossings, verify_crossing_exchange, verify_path_invariance, Boundary, CrossingEvent,
    DeformError, ExchangeReport, MotionPath, PathReport,
};
pub use format::FormatError;
pub use kernel::{
    circumcenter, circumcenter_param, in_circle, orientation, CirclePosition, KernelError,
    Orientation, Point, Scalar,
};
pub use pointset::{
    gen_gon_config, gen_random, GeneralPositionReport, GenerateError, GonConfig, PointSet,
    Violation,
};
pub use verify::{
    verify_gon_recursion, verify_pair_oddness, verify_theorem1, verify_theorem2, Check,
    VerificationReport, VerifyError,
};
