//! Operators by name, applied to parsed expressions. Shared by the
//! command-line and browser front ends.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, SimplexContext, TForm};
use crate::expr::{parse_form, parse_tform};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Operator {
    D,
    BoldD,
    SBoldD,
    Ix,
    Jx,
    DsWedge,
    Koszul,
    Star,
    StarInv,
    Hr,
    Restrict,
}

impl Operator {
    pub const ALL: [Operator; 11] = [
        Operator::D,
        Operator::BoldD,
        Operator::SBoldD,
        Operator::Ix,
        Operator::Jx,
        Operator::DsWedge,
        Operator::Koszul,
        Operator::Star,
        Operator::StarInv,
        Operator::Hr,
        Operator::Restrict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::D => "d",
            Operator::BoldD => "boldd",
            Operator::SBoldD => "sboldd",
            Operator::Ix => "ix",
            Operator::Jx => "jx",
            Operator::DsWedge => "dswedge",
            Operator::Koszul => "koszul",
            Operator::Star => "star",
            Operator::StarInv => "starinv",
            Operator::Hr => "hr",
            Operator::Restrict => "restrict",
        }
    }

    /// `hr` reads a form on `T`; the rest read forms on the orthant.
    pub fn takes_simplex_input(self) -> bool {
        self == Operator::Hr
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Operator::ALL.iter().map(|op| op.name()).collect();
            Error::range(format!("unknown operator `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Result of an operator: a form on the orthant, or on `T` for `restrict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applied {
    Orthant(DiffForm),
    Simplex(TForm),
}

impl fmt::Display for Applied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Applied::Orthant(a) => a.fmt(f),
            Applied::Simplex(a) => a.fmt(f),
        }
    }
}

/// Parses `expr` on the `n`-simplex setting and applies `op`. `r` is the
/// extension degree and is required by `hr` only.
pub fn apply(op: Operator, n: usize, r: Option<u32>, expr: &str) -> Result<Applied> {
    let ctx = SimplexContext::new(n)?;
    if op == Operator::Hr {
        let r = r.ok_or_else(|| Error::range("operator hr needs the degree r"))?;
        return Ok(Applied::Orthant(ctx.h_r(&parse_tform(expr, n)?, r)?));
    }
    let alpha = parse_form(expr, n)?;
    Ok(Applied::Orthant(match op {
        Operator::D => ctx.d(&alpha),
        Operator::BoldD => ctx.bold_d(&alpha)?,
        Operator::SBoldD => ctx.s_bold_d(&alpha)?,
        Operator::Ix => ctx.i_x(&alpha),
        Operator::Jx => ctx.j_x(&alpha),
        Operator::DsWedge => ctx.ds_wedge(&alpha),
        Operator::Koszul => ctx.koszul(&alpha),
        Operator::Star => ctx.hodge_star(&alpha),
        Operator::StarInv => ctx.hodge_star_inverse(&alpha)?,
        Operator::Restrict => return Ok(Applied::Simplex(ctx.restrict_to_t(&alpha)?)),
        Operator::Hr => unreachable!(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for op in Operator::ALL {
            assert_eq!(op.name().parse::<Operator>().unwrap(), op);
        }
        assert!("curl".parse::<Operator>().is_err());
    }

    #[test]
    fn applies_by_name() {
        let out = apply(Operator::Hr, 2, Some(1), "y*dx").unwrap();
        assert_eq!(out.to_string(), "y*dx - (x*y/s)*ds");
        assert!(matches!(apply(Operator::Hr, 2, None, "y*dx"), Err(Error::ParameterRange(_))));
        let out = apply(Operator::Restrict, 2, None, "s*dx - x*ds").unwrap();
        assert_eq!(out.to_string(), "dx");
        assert_eq!(apply(Operator::SBoldD, 1, None, "x").unwrap().to_string(), "y*dx - x*dy");
    }
}
