//! Decimal-string serialization: BigFloat as "d.ddd…e±k" with an explicit
//! digit count, BigComplex as {"re": "…", "im": "…"}.

use crate::{BigComplex, BigFloat, MpError};
use serde::{Deserialize, Serialize};

pub fn float_to_string(x: &BigFloat, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

pub fn float_from_string(s: &str, prec: u32) -> Result<BigFloat, MpError> {
    let parsed = BigFloat::parse(s).map_err(|e| MpError::BadInput(format!("bad float '{s}': {e}")))?;
    Ok(BigFloat::with_val(prec, parsed))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexRepr {
    pub re: String,
    pub im: String,
}

pub fn complex_to_repr(z: &BigComplex, digits: usize) -> ComplexRepr {
    ComplexRepr {
        re: float_to_string(z.real(), digits),
        im: float_to_string(z.imag(), digits),
    }
}

pub fn complex_from_repr(r: &ComplexRepr, prec: u32) -> Result<BigComplex, MpError> {
    Ok(BigComplex::with_val(
        prec,
        (float_from_string(&r.re, prec)?, float_from_string(&r.im, prec)?),
    ))
}
