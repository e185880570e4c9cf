//! On-disk persistence for the F-grid.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic  b"HMFC"
//! u32    format version
//! record*:
//!   u32 k, u32 m, u32 n, u32 λ
//!   u32 len, numerator   (two's-complement bytes)
//!   u32 len, denominator (unsigned bytes)
//! ```
//!
//! A file with the wrong magic or version, or one that fails to parse, is
//! treated as empty.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use hypermap_core::fseries::FKey;
use hypermap_core::{BigInt, BigRat, FGrid};
use num_bigint::Sign;
use num_traits::Zero;

pub const MAGIC: &[u8; 4] = b"HMFC";
pub const VERSION: u32 = 1;

pub fn encode(entries: &[(FKey, BigRat)]) -> Vec<u8> {
    let mut buf = Vec::with_capacity(8 + entries.len() * 32);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    for (key, value) in entries {
        for x in [key.k, key.m, key.n, key.lambda] {
            buf.extend_from_slice(&x.to_le_bytes());
        }
        push_chunk(&mut buf, &value.numer().to_signed_bytes_le());
        push_chunk(&mut buf, &value.denom().to_bytes_le().1);
    }
    buf
}

fn push_chunk(buf: &mut Vec<u8>, bytes: &[u8]) {
    buf.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    buf.extend_from_slice(bytes);
}

/// `None` for anything other than a well-formed file of the current version.
pub fn decode(bytes: &[u8]) -> Option<Vec<(FKey, BigRat)>> {
    let mut r = Reader { bytes };
    if r.take(4)? != MAGIC || r.u32()? != VERSION {
        return None;
    }
    let mut out = Vec::new();
    while !r.bytes.is_empty() {
        let (k, m, n, lambda) = (r.u32()?, r.u32()?, r.u32()?, r.u32()?);
        let len = r.u32()? as usize;
        let numer = BigInt::from_signed_bytes_le(r.take(len)?);
        let len = r.u32()? as usize;
        let denom = BigInt::from_bytes_le(Sign::Plus, r.take(len)?);
        if denom.is_zero() {
            return None;
        }
        out.push((FKey::new(k, m, n, lambda), BigRat::new(numer, denom)));
    }
    Some(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Option<&'a [u8]> {
        if self.bytes.len() < len {
            return None;
        }
        let (head, tail) = self.bytes.split_at(len);
        self.bytes = tail;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }
}

/// Seeds `grid` from `path`; returns the number of records loaded.
///
/// Missing, stale or corrupt files load nothing.
pub fn load(path: &Path, grid: &FGrid) -> usize {
    let Ok(bytes) = fs::read(path) else {
        return 0;
    };
    let Some(entries) = decode(&bytes) else {
        return 0;
    };
    let mut loaded = 0;
    for (key, value) in entries {
        if key.k >= 1 && key.k <= grid.max_darts() {
            grid.insert(key, value);
            loaded += 1;
        }
    }
    loaded
}

/// Merges `grid` into whatever is already stored at `path`, then writes it
/// back through a temporary file.
pub fn save(path: &Path, grid: &FGrid) -> io::Result<()> {
    let mut merged: std::collections::BTreeMap<FKey, BigRat> = fs::read(path)
        .ok()
        .and_then(|b| decode(&b))
        .unwrap_or_default()
        .into_iter()
        .collect();
    merged.extend(grid.entries());
    let entries: Vec<_> = merged.into_iter().collect();
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(&entries))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypermap_core::exactmath::rat;

    fn sample() -> Vec<(FKey, BigRat)> {
        vec![
            (FKey::new(1, 1, 2, 3), rat(6)),
            (FKey::new(2, 2, 2, 1), BigRat::new((-7).into(), 3.into())),
            (
                FKey::new(3, 1, 1, 1),
                BigRat::new(BigInt::from(1u8) << 200, 1.into()),
            ),
        ]
    }

    #[test]
    fn round_trip() {
        let bytes = encode(&sample());
        assert_eq!(&bytes[..4], MAGIC);
        assert_eq!(decode(&bytes).unwrap(), sample());
        assert_eq!(decode(&encode(&[])).unwrap(), vec![]);
    }

    #[test]
    fn record_layout() {
        let bytes = encode(&[(FKey::new(1, 2, 3, 4), rat(-1))]);
        let want: Vec<u8> = [
            &b"HMFC"[..],
            &VERSION.to_le_bytes(),
            &1u32.to_le_bytes(),
            &2u32.to_le_bytes(),
            &3u32.to_le_bytes(),
            &4u32.to_le_bytes(),
            &1u32.to_le_bytes(),
            &[0xff],
            &1u32.to_le_bytes(),
            &[1],
        ]
        .concat();
        assert_eq!(bytes, want);
    }

    #[test]
    fn stale_or_corrupt_files_are_ignored() {
        let mut bytes = encode(&sample());
        assert!(decode(&bytes[..bytes.len() - 1]).is_none());
        bytes[4] = bytes[4].wrapping_add(1);
        assert!(decode(&bytes).is_none());
        assert!(decode(b"nope").is_none());
        assert!(decode(b"").is_none());
    }
}
