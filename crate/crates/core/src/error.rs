use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input at {position}: {message}")]
    Input { position: String, message: String },

    #[error("invalid parameter {name}: {message}")]
    Parameter { name: &'static str, message: String },

    #[error("resource limit exceeded: {what} reached {value}, cap is {cap}")]
    ResourceLimit { what: &'static str, value: usize, cap: usize },

    #[error("probe {label} {problem}")]
    Probe { label: String, problem: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
