//! Flat `key = value` configuration files.

use std::path::Path;

use super::CliError;
use crate::cluster1d::ClusterExperimentConfig;
use crate::simlab::ExperimentConfig;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: Vec<(usize, String, String)>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", i + 1))
            })?;
            entries.push((
                i + 1,
                key.trim().replace('-', "_"),
                value.trim().to_string(),
            ));
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn apply_experiment(&self, config: &mut ExperimentConfig) -> Result<(), CliError> {
        for (line, key, value) in &self.entries {
            let ctx = Ctx {
                line: *line,
                key,
                value,
            };
            match key.as_str() {
                "seed" => config.seed = ctx.parse()?,
                "runs" => config.runs = ctx.parse()?,
                "n" | "n_grid" => config.n_grid = ctx.list()?,
                "p_grid" => config.p_grid = ctx.list()?,
                "p" => config.p_grid = vec![ctx.parse()?],
                "param_lo" => config.param_range.0 = ctx.parse()?,
                "param_hi" => config.param_range.1 = ctx.parse()?,
                "alpha" => config.alpha = ctx.parse()?,
                "threads" => config.threads = Some(ctx.parse()?),
                _ => return Err(ctx.unknown()),
            }
        }
        Ok(())
    }

    pub fn apply_cluster(&self, config: &mut ClusterExperimentConfig) -> Result<(), CliError> {
        for (line, key, value) in &self.entries {
            let ctx = Ctx {
                line: *line,
                key,
                value,
            };
            match key.as_str() {
                "seed" => config.seed = ctx.parse()?,
                "runs" => config.runs = ctx.parse()?,
                "epsilon" => config.epsilon = ctx.parse()?,
                "min_samples" => config.min_samples = ctx.parse()?,
                "width" => config.params.width = ctx.parse()?,
                "n_anchors" => config.params.n_anchors = ctx.parse()?,
                "n_points" => config.params.n_points = ctx.parse()?,
                "sigma" => config.params.sigma = ctx.parse()?,
                "gaussian_fraction" => config.params.gaussian_fraction = ctx.parse()?,
                "p" => config.shrinkage.depth = ctx.parse()?,
                "alpha" => config.shrinkage.alpha = ctx.parse()?,
                "threads" => config.threads = Some(ctx.parse()?),
                _ => return Err(ctx.unknown()),
            }
        }
        Ok(())
    }
}

struct Ctx<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

impl Ctx<'_> {
    fn parse<T: std::str::FromStr>(&self) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.value.parse().map_err(|e| {
            CliError::Usage(format!(
                "config line {}: field `{}`: {e}",
                self.line, self.key
            ))
        })
    }

    fn list<T: std::str::FromStr>(&self) -> Result<Vec<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.value
            .split(',')
            .map(|v| {
                v.trim().parse().map_err(|e| {
                    CliError::Usage(format!(
                        "config line {}: field `{}`: {e}",
                        self.line, self.key
                    ))
                })
            })
            .collect()
    }

    fn unknown(&self) -> CliError {
        CliError::Usage(format!(
            "config line {}: unknown field `{}`",
            self.line, self.key
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_applies() {
        let file = ConfigFile::parse("# comment\nseed = 9\nn_grid = 20, 40\nalpha=0.05\n").unwrap();
        let mut c = ExperimentConfig::comparison(1);
        file.apply_experiment(&mut c).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.n_grid, vec![20, 40]);
        assert_eq!(c.alpha, 0.05);
    }

    #[test]
    fn field_level_errors() {
        let mut c = ExperimentConfig::comparison(1);
        let err = ConfigFile::parse("runs = many")
            .unwrap()
            .apply_experiment(&mut c)
            .unwrap_err();
        assert!(err.to_string().contains("`runs`"), "{err}");
        let err = ConfigFile::parse("bogus = 1")
            .unwrap()
            .apply_experiment(&mut c)
            .unwrap_err();
        assert!(err.to_string().contains("unknown field `bogus`"));
        assert!(ConfigFile::parse("no equals sign").is_err());
    }
}
