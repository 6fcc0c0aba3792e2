use m21_core::Error as CoreError;

/// Problems found while reading or resolving a scenario.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{location}: parse error: {msg}")]
    Parse { location: String, msg: String },
    #[error("{location}: unresolved name `{name}`")]
    Unresolved { location: String, name: String },
    #[error("{location}: type mismatch: {msg}")]
    TypeMismatch { location: String, msg: String },
    #[error("{location}: {source}")]
    Core { location: String, source: CoreError },
}

impl LoadError {
    pub(crate) fn core(location: &str, e: CoreError) -> Self {
        let location = location.to_string();
        match e {
            CoreError::Parse { pos, msg } => LoadError::Parse { location, msg: format!("at offset {pos}: {msg}") },
            CoreError::UnknownVariable { name, .. } => LoadError::Unresolved { location, name },
            CoreError::RingMismatch(msg) | CoreError::DegreeMismatch(msg) => LoadError::TypeMismatch { location, msg },
            source => LoadError::Core { location, source },
        }
    }
}
