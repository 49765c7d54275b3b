//! BFTT files: magic, u32 n, u32 m (little-endian), then m tables of
//! ceil(2^n / 8) bytes with bits packed LSB-first by index.

use std::io::{Read, Write};

use super::{BoolFnError, TruthTable};

pub const BFTT_MAGIC: &[u8; 8] = b"BFTT0001";

/// Largest n accepted when reading, to keep a corrupt header from
/// requesting an absurd allocation.
const MAX_N: u32 = 40;

fn table_bytes(n: u32) -> usize {
    (1usize << n).div_ceil(8)
}

pub fn write_bftt(mut out: impl Write, tables: &[TruthTable]) -> Result<(), BoolFnError> {
    let n = tables.first().map_or(0, |t| t.n());
    if tables.iter().any(|t| t.n() != n) {
        return Err(BoolFnError::Dimension("outputs differ in variable count".into()));
    }
    out.write_all(BFTT_MAGIC)?;
    out.write_all(&n.to_le_bytes())?;
    out.write_all(&(tables.len() as u32).to_le_bytes())?;
    let len = table_bytes(n);
    for t in tables {
        let bytes: Vec<u8> = t.words().iter().flat_map(|w| w.to_le_bytes()).take(len).collect();
        out.write_all(&bytes)?;
    }
    Ok(())
}

pub fn read_bftt(mut input: impl Read) -> Result<Vec<TruthTable>, BoolFnError> {
    let truncated = |e: std::io::Error| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            BoolFnError::Format("truncated BFTT file".into())
        } else {
            BoolFnError::Io(e)
        }
    };
    let mut header = [0u8; 16];
    input.read_exact(&mut header).map_err(truncated)?;
    if &header[..8] != BFTT_MAGIC {
        return Err(BoolFnError::Format("bad BFTT magic".into()));
    }
    let n = u32::from_le_bytes(header[8..12].try_into().expect("4 bytes"));
    let m = u32::from_le_bytes(header[12..16].try_into().expect("4 bytes"));
    if n > MAX_N {
        return Err(BoolFnError::Format(format!("{n} variables")));
    }
    let len = table_bytes(n);
    let mut tables = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let mut buf = vec![0u8; len];
        input.read_exact(&mut buf).map_err(truncated)?;
        buf.resize(len.max(8).next_multiple_of(8), 0);
        let words = buf
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        tables.push(TruthTable::from_words(n, words)?);
    }
    let mut rest = [0u8; 1];
    if input.read(&mut rest)? != 0 {
        return Err(BoolFnError::Format("trailing bytes after BFTT tables".into()));
    }
    Ok(tables)
}
