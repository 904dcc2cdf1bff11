use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    /// Invalid configuration (non-positive dimension, bad probability sum, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid input to an operation (shape mismatch, empty reference set, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A vertex sits at or behind the camera near plane.
    #[error("projection error: vertex {vertex} at depth {depth} is behind the near plane {near}")]
    Projection { vertex: usize, depth: f64, near: f64 },

    /// Non-finite values appeared in a numeric computation.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Malformed file contents (OBJ, checkpoint, manifest, embeddings CSV).
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
