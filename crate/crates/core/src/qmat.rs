//! QMAT: a minimal binary container for one quaternion matrix.
//!
//! Layout: `b"QMAT"`, `u8` version (1), `u32` LE rows, `u32` LE cols, then
//! `rows·cols·4` little-endian `f64` in row-major `(w, x, y, z)` order.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

pub const MAGIC: &[u8; 4] = b"QMAT";
pub const VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 4 + 4;

pub fn encode(m: &QuaternionMatrix) -> Vec<u8> {
    let (rows, cols) = m.shape();
    let mut out = Vec::with_capacity(HEADER_LEN + rows * cols * 32);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(rows as u32).to_le_bytes());
    out.extend_from_slice(&(cols as u32).to_le_bytes());
    for q in m.to_vec() {
        for v in q.to_array() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<QuaternionMatrix> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format("QMAT header truncated".into()));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::Format("bad QMAT magic".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported QMAT version {}", bytes[4])));
    }
    let rows = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(bytes[9..13].try_into().unwrap()) as usize;
    let expected = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(32))
        .ok_or_else(|| Error::Format("QMAT dimensions overflow".into()))?;
    let body = &bytes[HEADER_LEN..];
    if body.len() != expected {
        return Err(Error::Format(format!(
            "QMAT body has {} bytes, expected {expected}",
            body.len()
        )));
    }
    let entries: Vec<Quaternion> = body
        .chunks_exact(32)
        .map(|chunk| {
            let f = |k: usize| f64::from_le_bytes(chunk[8 * k..8 * k + 8].try_into().unwrap());
            Quaternion::new(f(0), f(1), f(2), f(3))
        })
        .collect();
    QuaternionMatrix::from_vec(rows, cols, &entries)
}

pub fn write_to(m: &QuaternionMatrix, mut w: impl Write) -> Result<()> {
    w.write_all(&encode(m))?;
    Ok(())
}

pub fn read_from(mut r: impl Read) -> Result<QuaternionMatrix> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode(&buf)
}

pub fn save(m: &QuaternionMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode(m))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<QuaternionMatrix> {
    decode(&fs::read(path)?)
}
