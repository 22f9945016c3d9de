use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation is not a bijection: {0:?}")]
    NotBijective(Vec<u32>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("group order exceeds the enumeration cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element is not in the ambient group")]
    NotInGroup,
    #[error("not a subgroup of the declared ambient group")]
    NotASubgroup,
    #[error("unsupported group descriptor: {0}")]
    UnsupportedDescriptor(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size bound exceeded: {size} > {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("subgroup is not a Sylow {p}-subgroup")]
    NotSylow { p: u64 },
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: usize, p: u64 },
    #[error("fusion systems are over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("subgroup is not strongly closed")]
    NotStronglyClosed,
    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("not an F-isomorphism")]
    NotAnIsomorphism,
    #[error(
        "decomposition search exhausted: the system does not satisfy the theorem's hypotheses"
    )]
    SearchExhausted,
    #[error("saturation certification failed: {0}")]
    CertificationFailed(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
