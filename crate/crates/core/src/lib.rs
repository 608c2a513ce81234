//! Planning toolkit for airborne backbone networks whose platforms fly
//! circular orbits.
//!
//! - [`kinematics`]: closed-form positions and pair distances.
//! - [`timeline`]: link lifetimes and the slice decomposition of a window.
//! - [`connectivity`]: all-time connectivity, minimum range, velocity search.
//! - [`routing`]: minimum path-switch routes.
//! - [`coverage`]: invariant coverage cylinders and orbit placement.
//! - [`scene`]: scene documents, CSV and SVG exports.

pub mod connectivity;
pub mod coverage;
pub mod error;
pub mod interval;
pub mod kinematics;
pub mod routing;
pub mod scene;
pub mod timeline;

pub use error::{Error, Result};
pub use interval::{IntervalSet, TimeInterval};
pub use kinematics::{PlatformSpec, Point3, Scenario};

/// Bisection stop and minimum live/dead run length, seconds.
pub const TIME_TOLERANCE: f64 = 1e-6;
/// Accuracy of located threshold crossings, meters.
pub const DISTANCE_TOLERANCE: f64 = 1e-6;
/// Lower bound on the angular rate used to size the root-isolation grid, rad/s.
pub const OMEGA_FLOOR: f64 = 1e-3;
