use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty Cayley table")]
    EmptyTable,
    #[error("table row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("table entry ({a},{b}) = {value} is out of range 0..{order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("index 0 is not an identity: 0*{a} = {left}, {a}*0 = {right}")]
    NoIdentityAtZero { a: usize, left: usize, right: usize },
    #[error("element {a} has no two-sided inverse")]
    NotInvertible { a: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("group order {order} exceeds the size cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("subgroup enumeration exceeded the budget of {budget} subgroups")]
    SubgroupBudget { budget: usize },
    #[error("element set is not a subgroup: {reason}")]
    NotASubgroup { reason: String },
    #[error("subgroup is not normal: {g} conjugates {h} outside it")]
    NotNormal { g: usize, h: usize },
    #[error("action of complement element {h} is not an automorphism of the normal factor")]
    ActionNotAutomorphism { h: usize },
    #[error("action is not a homomorphism at ({h1},{h2})")]
    ActionNotHomomorphism { h1: usize, h2: usize },
    #[error("unsupported parameter for {builder}: {detail}")]
    UnsupportedParameter { builder: &'static str, detail: String },
    #[error("{n} and {p} are not coprime")]
    NotCoprime { n: u64, p: u64 },
    #[error("not a chief factor: {0}")]
    NotChiefFactor(String),
    #[error("class contains no quotient of the group (the trivial group is not a member)")]
    EmptyClass,
    #[error("class is not closed under subdirect products: quotients by {first:?} and {second:?} are members but the quotient by their intersection is not")]
    NotAFormationWitness { first: Vec<usize>, second: Vec<usize> },
    #[error("exponent function invalid at prime {prime}: v_p(f(p)) must be infinite")]
    InvalidExponentFunction { prime: u64 },
    #[error("invalid class spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pairing is undefined on the diagonal ({0},{0})")]
    DiagonalPair(u64),
    #[error("pairing index must be positive")]
    ZeroPairIndex,
    #[error("number does not fit the representation: {0}")]
    Overflow(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
