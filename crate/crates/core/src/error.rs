use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),

    #[error("generator {g} is not a nonzero residue modulo {n}")]
    InvalidGenerator { n: u32, g: u32 },

    #[error("AP_{n}({g},{k}) is degenerate: at most {max} distinct terms")]
    DegenerateAp { n: u32, g: u32, k: u32, max: u32 },

    #[error("element {value} is out of range for Z_{n}")]
    ElementOutOfRange { n: u32, value: u32 },

    #[error("element {value} appears more than once")]
    DuplicateElement { value: u32 },

    #[error("member lives in Z_{found} but the family lives in Z_{expected}")]
    MixedModulus { expected: u32, found: u32 },

    #[error("family is not Erdős-deep")]
    NotErdosDeep,

    /// Partial normalization: the gcd step succeeded, but neither generator
    /// is a unit of the reduced modulus.
    #[error("pair (n={n}, g1={g1}, g2={g2}) cannot be scaled to g1 = 1: gcd(n, g1) = {gcd}")]
    NotReducible { n: u32, g1: u32, g2: u32, gcd: u32 },

    #[error("hitting word is all ones; the ratio is unbounded")]
    AllOnes,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("interval length {len} is not in [1, {n}]")]
    InvalidInterval { n: u32, len: u32 },

    #[error("projected work of {projected} checks exceeds the ceiling of {ceiling}")]
    BoundsTooLarge { projected: u128, ceiling: u128 },

    #[error("generator set {d:?} does not give distinct norms in Z_{n}")]
    InvalidD { n: u32, d: Vec<u32> },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
