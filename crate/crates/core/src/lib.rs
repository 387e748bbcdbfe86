//! Polyhedral maps on closed surfaces and non-revisiting paths between two
//! vertices.

pub mod constructions;
pub mod cut;
pub mod error;
pub mod flow;
pub mod homotopy;
pub mod nonrevisit;
pub mod oracle;
pub mod paths;
pub mod polyhedral;
pub mod search;
pub mod smap;
pub mod surface_map;
pub mod verify;

pub use error::{Error, Result};
pub use surface_map::{Dart, Edge, EdgeId, FaceId, FaceWalk, Sign, SurfaceMap, Vertex};
