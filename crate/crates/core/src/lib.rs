//! Exact low-discrepancy sequence machinery: quadratic-field arithmetic,
//! continued fractions, interval exchange transformations, point-sequence
//! generators, and exact one-dimensional star discrepancy.
//!
//! Everything downstream of the [`quadratic`] module computes with exact
//! values; floating point only appears when rendering output or normalizing
//! discrepancy statistics.

pub mod cf;
pub mod discrepancy;
pub mod fls;
pub mod iet;
pub mod quadratic;
pub mod sequences;

pub use fls::{beta_power_coords, fls, fls_start, jls_coordinates, orbit_matches_jls, pair_enumeration_2_2, JlsOrbitReport};
pub use iet::{first_return, n3_certificate, n3_from_gamma, n3_standard, rotation, CombinatorialData, Iet, IetError, OrbitSegment, Permutation};
pub use discrepancy::{bound_monitor, scale_to_unit, brute_force_star, curve, extreme_disc_unit, normalized_max, star_disc_interval, star_disc_unit, BoundReport, CurveEntry, DiscError, DiscrepancyCurve, DiscrepancyResult, IntervalBox};
pub use cf::{cf_expand, moving_average, ContinuedFraction, MovingAverageReport};
pub use sequences::{jls_point, kronecker_point, ls_counts, ls_partition, ls_points, restrict, Interval1D, LsPartition, PointStream, SeqError, StreamKind};
pub use quadratic::{beta, QuadError, QuadReal, Rational};
