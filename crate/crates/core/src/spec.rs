//! Curve spec strings: `char=<ℓ>;deg=<a>;e=<e>;f=<polynomial>`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ffield::{make_curve, CurveRef};
use crate::gf::make_field;
use crate::poly::Polynomial;

/// A parsed curve spec. `f` lives over `F_{ℓ^a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub characteristic: u64,
    pub degree: u32,
    pub e: u32,
    pub f: Polynomial,
}

impl CurveSpec {
    pub fn parse(s: &str) -> Result<CurveSpec> {
        let mut characteristic = None;
        let mut degree = None;
        let mut e = None;
        let mut f_text = None;
        let mut offset = 0;
        for field in s.split(';') {
            let pos = offset + (field.len() - field.trim_start().len());
            offset += field.len() + 1;
            if field.trim().is_empty() {
                continue;
            }
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(pos, "expected key=value"))?;
            let value_pos = pos + key.trim_start().len() + 1 + (value.len() - value.trim_start().len());
            let int = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(value_pos, format!("invalid integer '{}'", v.trim())))
            };
            match key.trim() {
                "char" => characteristic = Some(int(value)?),
                "deg" => degree = Some(int(value)? as u32),
                "e" => e = Some(int(value)? as u32),
                "f" => f_text = Some((value.to_string(), pos + key.trim_start().len() + 1)),
                other => return Err(Error::parse(pos, format!("unknown key '{other}'"))),
            }
        }
        let missing = |k: &str| Error::parse(s.len(), format!("missing '{k}='"));
        let characteristic = characteristic.ok_or_else(|| missing("char"))?;
        let degree = degree.ok_or_else(|| missing("deg"))?;
        let e = e.ok_or_else(|| missing("e"))?;
        let (f_text, f_pos) = f_text.ok_or_else(|| missing("f"))?;
        let field = make_field(characteristic, degree)?;
        let f = Polynomial::parse(&field, &f_text).map_err(|err| match err {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + f_pos,
                msg,
            },
            other => other,
        })?;
        Ok(CurveSpec {
            characteristic,
            degree,
            e,
            f,
        })
    }

    /// Validates the model.
    pub fn to_curve(&self) -> Result<CurveRef> {
        make_curve(self.f.field(), self.e, self.f.clone())
    }
}

impl FromStr for CurveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CurveSpec> {
        CurveSpec::parse(s)
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "char={};deg={};e={};f={}",
            self.characteristic, self.degree, self.e, self.f
        )
    }
}
