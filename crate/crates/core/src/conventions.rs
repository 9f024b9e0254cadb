//! Named conventions that every report echoes.

use std::fmt;
use std::str::FromStr;

/// Which `H2(T³; Z/2)` basis vector the generator `h(e1)` is sent to.
///
/// Both choices are compatible with every formula in this crate; the
/// default is `E1ToX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HIdentification {
    /// `h(e1) ↔ x`, `h(e2) ↔ y`
    #[default]
    E1ToX,
    /// `h(e1) ↔ y`, `h(e2) ↔ x`
    E1ToY,
}

impl HIdentification {
    pub fn as_str(self) -> &'static str {
        match self {
            HIdentification::E1ToX => "e1-to-x",
            HIdentification::E1ToY => "e1-to-y",
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            HIdentification::E1ToX => HIdentification::E1ToY,
            HIdentification::E1ToY => HIdentification::E1ToX,
        }
    }
}

impl FromStr for HIdentification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "e1-to-x" => Ok(HIdentification::E1ToX),
            "e1-to-y" => Ok(HIdentification::E1ToY),
            other => Err(format!("unknown h identification `{other}` (expected e1-to-x or e1-to-y)")),
        }
    }
}

/// Basis order is always `(x, y, θ̄)`; surgery matrices act on coordinate
/// columns and carry `(r, s, p)` in their θ̄ row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Conventions {
    pub h_identification: HIdentification,
}

impl Conventions {
    pub const BASIS: &'static str = "(x,y,θ̄)";
    pub const MATRIX_CONVENTION: &'static str = "theta-row";

    pub fn header_lines(&self) -> Vec<String> {
        let (e1, e2) = match self.h_identification {
            HIdentification::E1ToX => ("x", "y"),
            HIdentification::E1ToY => ("y", "x"),
        };
        vec![
            format!("# basis: {}", Self::BASIS),
            format!("# h-identification: {} (h(e1)↔{e1}, h(e2)↔{e2}, [∅]↔θ̄)", self.h_identification.as_str()),
            format!("# matrix convention: {} (columns are coordinates, θ̄-row = (r,s,p))", Self::MATRIX_CONVENTION),
        ]
    }
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header_lines().join("\n"))
    }
}
