use std::env;

use crate::error::ConfigError;

pub const THREADS_VAR: &str = "CYCLODYN_THREADS";
pub const PRECISION_VAR: &str = "CYCLODYN_PRECISION_BITS";
pub const DEFAULT_PRECISION: u32 = 128;

/// Settings read from the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvConfig {
    pub threads: Option<usize>,
    pub precision_bits: u32,
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(
    var: &str,
    raw: &str,
) -> Result<T, ConfigError> {
    match raw.trim().parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(ConfigError::new(
            var,
            format!("expected a positive integer, got {raw:?}"),
        )),
    }
}

impl EnvConfig {
    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        let threads = get(THREADS_VAR)
            .map(|s| positive::<usize>(THREADS_VAR, &s))
            .transpose()?;
        let precision_bits = match get(PRECISION_VAR) {
            Some(s) => positive::<u32>(PRECISION_VAR, &s)?,
            None => DEFAULT_PRECISION,
        };
        if precision_bits > 1 << 16 {
            return Err(ConfigError::new(PRECISION_VAR, "at most 65536 bits"));
        }
        Ok(EnvConfig {
            threads,
            precision_bits,
        })
    }

    pub fn from_env() -> Result<Self, ConfigError> {
        Self::from_lookup(|k| env::var(k).ok())
    }

    /// Sizes the global rayon pool. Only the first call in a process wins.
    pub fn install_pool(&self) {
        if let Some(n) = self.threads {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}
