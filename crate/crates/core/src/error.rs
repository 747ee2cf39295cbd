use std::io;

use thiserror::Error;

/// Errors raised by the forward operators, the reconstructor and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sphere radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("on-plane point not reconstructible: |z| = {abs_z} < min_abs_z = {min_abs_z}")]
    OnPlanePoint { abs_z: f64, min_abs_z: f64 },

    #[error("insufficient margin: Laplacian of order {order} at grid index ({ip}, {iq}) leaves the {np}x{nq} grid")]
    InsufficientMargin {
        order: usize,
        ip: isize,
        iq: isize,
        np: usize,
        nq: usize,
    },

    #[error("requested order {requested} exceeds coefficient table order {available}")]
    OrderExceedsTable { requested: usize, available: usize },

    #[error("phantom `{phantom}` cannot provide {what}")]
    MissingCapability { phantom: String, what: String },

    #[error("point ({x}, {y}, {z}) is not on the sphere of centre ({p}, {q}, 0) and radius {t}")]
    OffSphere {
        x: f64,
        y: f64,
        z: f64,
        p: f64,
        q: f64,
        t: f64,
    },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
