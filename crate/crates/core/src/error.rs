use thiserror::Error;

use crate::model::{Coord3, Dims3};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extents must be positive, got {0}x{1}x{2}")]
    ZeroExtent(u32, u32, u32),
    #[error("volume {0}x{1}x{2} has more cells than fit in 64 bits")]
    VolumeTooLarge(u32, u32, u32),
    #[error("coordinate {coord} is outside a {dims} volume")]
    OutOfBounds { coord: Coord3, dims: Dims3 },
    #[error("rank {rank} is outside a volume of {total} cells")]
    RankOutOfRange { rank: u64, total: u64 },
    #[error("power-of-two shape uses {0} index bits, at most 63 are supported")]
    ShapeTooLarge(u32),
    #[error(
        "coordinate {coord} is outside a power-of-two shape with [slab, row, col] bits {bits:?}"
    )]
    OutOfShape { coord: Coord3, bits: [u32; 3] },
    #[error("morton index {index} does not fit in {bits} bits")]
    IndexOutOfRange { index: u64, bits: u32 },
    #[error("invalid block frame: {0}")]
    InvalidFrame(String),
    #[error("hilbert ordering requires every extent greater than 1 to be even, got {0} (use allow-odd to accept diagonal steps)")]
    EvenDimensionsRequired(Dims3),
    #[error("block {block} does not divide volume {dims}")]
    BlockNotDivisor { block: Dims3, dims: Dims3 },
    #[error("invalid ordering spec: {0}")]
    InvalidSpec(String),
    #[error("path is not a verified permutation of its volume")]
    VerificationRequired,
}
