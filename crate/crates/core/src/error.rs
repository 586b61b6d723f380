use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("preference vector must be nonempty with every entry >= 1")]
    InvalidPreferences,
    #[error("invalid capacity vector: {0}")]
    InvalidCapacity(String),
    #[error("preference vector has {prefs} entries but the capacity vector has {cars}")]
    LengthMismatch { prefs: usize, cars: usize },
    #[error("car {car} failed to park")]
    NotParkingFunction { car: usize },
    #[error("composition parts sum to {sum}, expected {expected}")]
    SumMismatch { sum: usize, expected: usize },
    #[error("car {0} does not appear in the outcome")]
    CarNotInOutcome(usize),
    #[error("invalid forbidden spot sequence: {0}")]
    InvalidForbiddenSpots(String),
    #[error("lucky spot {0} is not an entry of the capacity vector")]
    InvalidLuckySpot(usize),
    #[error("invalid lucky set: {0}")]
    InvalidLuckySet(String),
    #[error("invalid outcome: {0}")]
    InvalidOutcome(String),
    #[error("search space of {space} preference vectors exceeds the cap of {cap}")]
    CapExceeded { space: u128, cap: u64 },
    #[error("worker pool: {0}")]
    WorkerPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
