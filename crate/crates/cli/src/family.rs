//! Family selection: a JSON config file or the equivalent flags.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use galois_core::families::{FSpec, Family, FamilyConfig, Placement};

pub const SCHEMA: &str = include_str!("../schema/family-config.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Xf,
    Ogz,
    Qogz,
    FiniteW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    CoefficientLeft,
    ShiftLeft,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Family configuration as a JSON document (see `galois schema`).
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "config")]
    pub family: Option<FamilyKind>,
    /// Signature of an OGZ or quantum OGZ family, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<usize>>,
    /// Pyramid shape of a finite W-algebra, e.g. `1,1`.
    #[arg(long, value_delimiter = ',')]
    pub pi: Option<Vec<usize>>,
    /// Parabolic subset J of 1..n-1; all of it when omitted.
    #[arg(long, value_delimiter = ',')]
    pub j: Option<Vec<usize>>,
    /// Number of variables of `X_f`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Tuple f of `X_f`: `power:K`, `power-sum:K` or `custom:EXPR;EXPR;...`.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long, value_enum)]
    pub placement: Option<PlacementArg>,
}

fn parse_f(s: &str) -> Result<FSpec> {
    let (kind, rest) = s.split_once(':').with_context(|| format!("--f {s:?}: expected KIND:VALUE"))?;
    match kind {
        "power" => Ok(FSpec::Power(rest.parse().with_context(|| format!("--f {s:?}: bad exponent"))?)),
        "power-sum" => Ok(FSpec::PowerSum(rest.parse().with_context(|| format!("--f {s:?}: bad exponent"))?)),
        "custom" => Ok(FSpec::Custom(rest.split(';').map(|e| e.trim().to_string()).collect())),
        other => bail!("--f {s:?}: unknown kind {other:?}; expected power, power-sum or custom"),
    }
}

impl FamilyArgs {
    pub fn config(&self) -> Result<FamilyConfig> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            return serde_json::from_str(&text).with_context(|| {
                format!("{}: not a valid family configuration (see `galois schema`)", path.display())
            });
        }
        let placement = self.placement.map(|p| match p {
            PlacementArg::CoefficientLeft => Placement::CoefficientLeft,
            PlacementArg::ShiftLeft => Placement::ShiftLeft,
        });
        let need = |v: &Option<Vec<usize>>, flag: &str| v.clone().with_context(|| format!("this family needs --{flag}"));
        let kind = self.family.context("either --config or --family is required")?;
        let unused = |flags: &[(&str, bool)]| -> Result<()> {
            match flags.iter().find(|(_, set)| *set) {
                Some((flag, _)) => bail!("--{flag} does not apply to this family"),
                None => Ok(()),
            }
        };
        Ok(match kind {
            FamilyKind::Xf => {
                unused(&[("r", self.r.is_some()), ("pi", self.pi.is_some()), ("j", self.j.is_some())])?;
                FamilyConfig::Xf {
                    n: self.n.context("X_f needs --n")?,
                    f: parse_f(self.f.as_deref().context("X_f needs --f")?)?,
                    placement,
                }
            }
            FamilyKind::Ogz | FamilyKind::Qogz => {
                unused(&[("pi", self.pi.is_some()), ("n", self.n.is_some()), ("f", self.f.is_some())])?;
                let r = need(&self.r, "r")?;
                let j = self.j.clone();
                if kind == FamilyKind::Ogz {
                    FamilyConfig::Ogz { r, j, placement }
                } else {
                    FamilyConfig::Qogz { r, j, placement }
                }
            }
            FamilyKind::FiniteW => {
                unused(&[("r", self.r.is_some()), ("n", self.n.is_some()), ("f", self.f.is_some())])?;
                FamilyConfig::FiniteW { pi: need(&self.pi, "pi")?, j: self.j.clone(), placement }
            }
        })
    }

    pub fn build(&self) -> Result<Family> {
        Ok(self.config()?.build()?)
    }
}
