//! Bit-packed binary mask format.
//!
//! Layout: magic `QMSK`, version byte `1`, rows and cols as little-endian
//! `u32`, then `ceil(rows·cols/8)` bytes holding the row-major observed flags,
//! least significant bit first.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::solvers::Mask;

const MAGIC: &[u8; 4] = b"QMSK";
const VERSION: u8 = 1;
const HEADER: usize = 13;

pub fn encode_qmsk(mask: &Mask) -> Vec<u8> {
    let flags = mask.as_slice();
    let mut out = Vec::with_capacity(HEADER + flags.len().div_ceil(8));
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(mask.rows() as u32).to_le_bytes());
    out.extend_from_slice(&(mask.cols() as u32).to_le_bytes());
    for chunk in flags.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |b, (i, &o)| if o { b | (1 << i) } else { b });
        out.push(byte);
    }
    out
}

pub fn decode_qmsk(bytes: &[u8]) -> Result<Mask> {
    if bytes.len() < HEADER || &bytes[..4] != MAGIC {
        return Err(Error::Format("not a QMSK mask".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported QMSK version {}", bytes[4])));
    }
    let rows = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes")) as usize;
    let cols = u32::from_le_bytes(bytes[9..13].try_into().expect("4 bytes")) as usize;
    let total = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::Format("QMSK dimensions overflow".into()))?;
    let body = &bytes[HEADER..];
    if body.len() != total.div_ceil(8) {
        return Err(Error::Format(format!(
            "QMSK body has {} bytes, expected {}",
            body.len(),
            total.div_ceil(8)
        )));
    }
    let observed = (0..total).map(|i| body[i / 8] >> (i % 8) & 1 == 1).collect();
    Mask::new(rows, cols, observed)
}

pub fn save_qmsk(mask: &Mask, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_qmsk(mask))?;
    Ok(())
}

pub fn load_qmsk(path: impl AsRef<Path>) -> Result<Mask> {
    decode_qmsk(&fs::read(path)?)
}
