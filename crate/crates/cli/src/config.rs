use std::fmt;
use std::str::FromStr;

use levmeas::field::FieldParams;
use levmeas::matrix::{GroupKind, MatrixFamily};

/// `additive`, `gl:M` or `sl:M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Additive,
    Matrix(GroupKind, usize),
}

impl FamilySpec {
    pub fn is_matrix(&self) -> bool {
        matches!(self, FamilySpec::Matrix(..))
    }

    pub fn matrix_family(&self, params: FieldParams) -> Option<MatrixFamily> {
        match *self {
            FamilySpec::Matrix(kind, m) => MatrixFamily::new(params, m, kind).ok(),
            FamilySpec::Additive => None,
        }
    }
}

impl FromStr for FamilySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "additive" {
            return Ok(FamilySpec::Additive);
        }
        let bad = || format!("unknown family `{s}`; expected additive, gl:M or sl:M");
        let (kind, m) = s.split_once(':').ok_or_else(bad)?;
        let m: usize = m.parse().map_err(|_| bad())?;
        let kind = match kind {
            "gl" if m >= 1 => GroupKind::GL,
            "sl" if m >= 2 => GroupKind::SL,
            _ => return Err(bad()),
        };
        Ok(FamilySpec::Matrix(kind, m))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Additive => write!(f, "additive"),
            FamilySpec::Matrix(kind, m) => write!(f, "{kind}:{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub p: u32,
    pub dim: usize,
    pub family: FamilySpec,
    pub paper_scaling: bool,
}

impl Config {
    pub fn params(&self) -> Result<FieldParams, levmeas::AlgebraError> {
        FieldParams::new(self.p, self.dim)
    }
}
