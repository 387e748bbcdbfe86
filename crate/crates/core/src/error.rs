use thiserror::Error;

use crate::surface_map::{EdgeId, FaceId, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("edge {edge} has an endpoint outside 0..{vertex_count}")]
    BadEndpoint { edge: EdgeId, vertex_count: usize },
    #[error("the underlying graph is not connected")]
    Disconnected,
    #[error("face list does not describe a closed surface: {0}")]
    BadFaceList(String),

    #[error("not a simple cycle: {0}")]
    NotSimpleCycle(String),
    #[error("vertex {vertex} is not a valid chord end on face {face}")]
    VertexNotOnFace { face: FaceId, vertex: Vertex },
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(EdgeId),
    #[error("no such edge {0}")]
    NoSuchEdge(EdgeId),
    #[error("no such face {0}")]
    NoSuchFace(FaceId),

    #[error("the underlying graph is not simple")]
    NotSimpleGraph,
    #[error("only surfaces with Euler characteristic <= 0 are covered (got {0})")]
    SurfaceNotApplicable(i64),

    #[error("x and y must be distinct (got {0} twice)")]
    SameVertex(Vertex),
    #[error("vertex {0} out of range")]
    NoSuchVertex(Vertex),
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("the two components of the revisit must be distinct")]
    ComponentsNotDistinct,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("paths {0} and {1} are not internally disjoint")]
    PathsNotDisjoint(usize, usize),
    #[error("homotopy relation is not transitive on paths {0}, {1}, {2}")]
    NonTransitiveHomotopy(usize, usize, usize),
    #[error("no pair of paths bounds a disk containing class {0:?}")]
    NoBoundingPair(Vec<usize>),

    #[error("the revisit is not contractible")]
    RevisitNotContractible,
    #[error("rerouting needs at least three paths (got {0})")]
    SystemTooSmall(usize),
    #[error("x and y are cofacial")]
    CofacialEndpoints,
    #[error("homotopy class has {0} paths; at least three are needed")]
    ClassTooSmall(usize),
    #[error("instance has {vertices} vertices, above the exhaustive cutoff {cutoff}")]
    InstanceTooLarge { vertices: usize, cutoff: usize },
    #[error("rerouting failed: {0}")]
    RerouteFailed(String),

    #[error("bad genus {0}: {1}")]
    BadGenus(usize, &'static str),
    #[error("map is not polyhedral: {0}")]
    NotPolyhedral(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
