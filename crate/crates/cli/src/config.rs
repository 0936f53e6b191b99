//! TOML scan configuration.

use serde::Deserialize;
use superfiltr::linalg::is_prime;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("{name} range [{lo}, {hi}] is empty")]
    EmptyRange { name: &'static str, lo: i64, hi: i64 },
    #[error("{0} is not an odd prime")]
    Prime(u64),
    #[error("shape ({0},{1}) needs m, n ≥ 1")]
    Shape(usize, usize),
    #[error("r_range, s_range and t_range must be given together")]
    PartialSteinberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exterior,
    Symmetric,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Good,
    Weyl,
    #[default]
    Both,
}

impl Mode {
    pub fn good(self) -> bool {
        matches!(self, Mode::Good | Mode::Both)
    }

    pub fn weyl(self) -> bool {
        matches!(self, Mode::Weyl | Mode::Both)
    }
}

/// Grid for `superfiltr scan`. Ranges are inclusive `[lo, hi]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub shapes: Vec<(usize, usize)>,
    pub primes: Vec<u64>,
    pub k_range: (usize, usize),
    pub kinds: Vec<Kind>,
    #[serde(default)]
    pub mode: Mode,
    pub r_range: Option<(u32, u32)>,
    pub s_range: Option<(i64, i64)>,
    pub t_range: Option<(i64, i64)>,
}

fn check_range(name: &'static str, lo: i64, hi: i64) -> Result<(), ConfigError> {
    if lo > hi {
        Err(ConfigError::EmptyRange { name, lo, hi })
    } else {
        Ok(())
    }
}

impl ScanConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.shapes.is_empty() {
            return Err(ConfigError::Empty("shapes"));
        }
        if self.primes.is_empty() {
            return Err(ConfigError::Empty("primes"));
        }
        if self.kinds.is_empty() {
            return Err(ConfigError::Empty("kinds"));
        }
        if let Some(&(m, n)) = self.shapes.iter().find(|&&(m, n)| m == 0 || n == 0) {
            return Err(ConfigError::Shape(m, n));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| p < 3 || !is_prime(p)) {
            return Err(ConfigError::Prime(p));
        }
        check_range("k", self.k_range.0 as i64, self.k_range.1 as i64)?;
        match (self.r_range, self.s_range, self.t_range) {
            (None, None, None) => Ok(()),
            (Some(r), Some(s), Some(t)) => {
                check_range("r", r.0 as i64, r.1 as i64)?;
                if r.0 == 0 {
                    return Err(ConfigError::EmptyRange {
                        name: "r",
                        lo: 0,
                        hi: r.1 as i64,
                    });
                }
                check_range("s", s.0, s.1)?;
                check_range("t", t.0, t.1)
            }
            _ => Err(ConfigError::PartialSteinberg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = ScanConfig::parse(
            r#"
            shapes = [[1, 1], [2, 1]]
            primes = [3, 5]
            k_range = [0, 8]
            kinds = ["exterior", "symmetric"]
            mode = "good"
            r_range = [1, 2]
            s_range = [-3, 3]
            t_range = [-3, 3]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.shapes, vec![(1, 1), (2, 1)]);
        assert_eq!(cfg.mode, Mode::Good);
        assert_eq!(cfg.r_range, Some((1, 2)));
    }

    #[test]
    fn rejects_bad_configs() {
        let base = |extra: &str| format!("shapes = [[1,1]]\nprimes = [3]\nkinds = [\"exterior\"]\n{extra}");
        assert_eq!(
            ScanConfig::parse(&base("k_range = [5, 2]")).unwrap_err(),
            ConfigError::EmptyRange {
                name: "k",
                lo: 5,
                hi: 2
            }
        );
        assert!(matches!(ScanConfig::parse(&base("")), Err(ConfigError::Parse(_))));
        let two = "shapes = [[1,1]]\nprimes = [2]\nkinds = [\"exterior\"]\nk_range = [0, 1]";
        assert_eq!(ScanConfig::parse(two).unwrap_err(), ConfigError::Prime(2));
        assert_eq!(
            ScanConfig::parse(&base("k_range = [0, 1]\nr_range = [1, 1]")).unwrap_err(),
            ConfigError::PartialSteinberg
        );
    }
}
