use std::fmt;
use std::path::PathBuf;

/// Failure of a command, carrying its process exit status.
#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Lib(tswarp::Error),
    Write { path: PathBuf, source: std::io::Error },
}

impl AppError {
    /// 1 usage/config, 2 data, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) | AppError::Lib(tswarp::Error::Config(_)) => 1,
            AppError::Lib(tswarp::Error::Data(_) | tswarp::Error::Parse { .. }) | AppError::Write { .. } => 2,
            AppError::Lib(tswarp::Error::Invariant(_)) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Lib(err) => write!(f, "{err}"),
            AppError::Write { path, source } => write!(f, "cannot write {}: {source}", path.display()),
        }
    }
}

impl From<tswarp::Error> for AppError {
    fn from(err: tswarp::Error) -> Self {
        AppError::Lib(err)
    }
}

pub type AppResult<T> = Result<T, AppError>;
