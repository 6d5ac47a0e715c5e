//! Compact binary encoding used by the on-disk cache.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic "OFPC" | version u16 | nvars u16
//! nvars x (name_len u16 | name utf8 | weight u32)
//! nterms u64
//! nterms x (exponents: nvars x u16
//!           | numerator: sign u8 (0 = +, 1 = -) | len u32 | magnitude bytes
//!           | denominator: len u32 | magnitude bytes)
//! ```

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};

use super::{ExactRat, Monomial, PolyError, Polynomial, VariableSpace};

const MAGIC: &[u8; 4] = b"OFPC";
pub const BINARY_FORMAT_VERSION: u16 = 1;

impl Polynomial {
    pub fn to_binary(&self) -> Vec<u8> {
        let space = self.space();
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&BINARY_FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&(space.len() as u16).to_le_bytes());
        for (name, w) in space.names().iter().zip(space.weights()) {
            out.extend_from_slice(&(name.len() as u16).to_le_bytes());
            out.extend_from_slice(name.as_bytes());
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.extend_from_slice(&(self.len() as u64).to_le_bytes());
        for (m, c) in self.terms() {
            for e in m.exponents() {
                out.extend_from_slice(&e.to_le_bytes());
            }
            let (sign, mag) = c.numer().to_bytes_le();
            out.push(u8::from(sign == Sign::Minus));
            put_magnitude(&mut out, &mag);
            let (_, dmag) = c.denom().to_bytes_le();
            put_magnitude(&mut out, &dmag);
        }
        out
    }

    /// Decode, returning the space stored in the header alongside.
    pub fn from_binary(bytes: &[u8]) -> Result<Self, PolyError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(PolyError::Decode("bad magic".into()));
        }
        let version = r.u16()?;
        if version != BINARY_FORMAT_VERSION {
            return Err(PolyError::Decode(format!("unsupported version {version}")));
        }
        let nvars = r.u16()? as usize;
        let mut vars = Vec::with_capacity(nvars);
        for _ in 0..nvars {
            let len = r.u16()? as usize;
            let name = std::str::from_utf8(r.take(len)?)
                .map_err(|_| PolyError::Decode("variable name is not utf-8".into()))?
                .to_string();
            let w = r.u32()?;
            vars.push((name, w));
        }
        let space: Arc<VariableSpace> = VariableSpace::new(vars)?;
        let nterms = r.u64()? as usize;
        let mut terms = Vec::with_capacity(nterms.min(1 << 20));
        for _ in 0..nterms {
            let mut e = Vec::with_capacity(nvars);
            for _ in 0..nvars {
                e.push(r.u16()?);
            }
            let sign = match r.u8()? {
                0 => Sign::Plus,
                1 => Sign::Minus,
                s => return Err(PolyError::Decode(format!("bad sign byte {s}"))),
            };
            let num = BigInt::from_biguint(sign, r.magnitude()?);
            let den = BigInt::from(r.magnitude()?);
            if den == BigInt::from(0) {
                return Err(PolyError::Decode("zero denominator".into()));
            }
            terms.push((Monomial::from_exponents(&e), ExactRat::new(num, den)));
        }
        if r.pos != bytes.len() {
            return Err(PolyError::Decode("trailing bytes".into()));
        }
        Ok(Polynomial::from_terms(&space, terms))
    }
}

fn put_magnitude(out: &mut Vec<u8>, mag: &[u8]) {
    out.extend_from_slice(&(mag.len() as u32).to_le_bytes());
    out.extend_from_slice(mag);
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], PolyError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| PolyError::Decode("truncated input".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, PolyError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, PolyError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, PolyError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, PolyError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn magnitude(&mut self) -> Result<BigUint, PolyError> {
        let len = self.u32()? as usize;
        Ok(BigUint::from_bytes_le(self.take(len)?))
    }
}
