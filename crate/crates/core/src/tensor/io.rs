//! `XGT1` binary tensor files.
//!
//! Layout, all little-endian: the 4-byte magic, `u32` qubit count, `u32`
//! flags (bit 0: `g` present), then `N³` complex `g` entries when flagged,
//! then the `N⁶` complex entries of the matrix view in row-major order.
//! Each complex number is two `f64` (real, imaginary).

use super::{check_qubits, Tensor3};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const TENSOR_MAGIC: &[u8; 4] = b"XGT1";
const FLAG_RAW: u32 = 1;

fn put_c64(w: &mut impl Write, z: C64) -> std::io::Result<()> {
    w.write_all(&z.re.to_le_bytes())?;
    w.write_all(&z.im.to_le_bytes())
}

fn get_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn get_c64(r: &mut impl Read) -> Result<C64> {
    let mut b = [0u8; 16];
    r.read_exact(&mut b).map_err(truncated)?;
    let re = f64::from_le_bytes(b[..8].try_into().unwrap());
    let im = f64::from_le_bytes(b[8..].try_into().unwrap());
    Ok(C64::new(re, im))
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::Format("tensor file is truncated".into())
    } else {
        Error::Io(e)
    }
}

pub fn write_tensor(w: &mut impl Write, t: &Tensor3) -> Result<()> {
    w.write_all(TENSOR_MAGIC)?;
    w.write_all(&t.qubits().to_le_bytes())?;
    let flags = if t.raw().is_some() { FLAG_RAW } else { 0 };
    w.write_all(&flags.to_le_bytes())?;
    if let Some(g) = t.raw() {
        for &x in g {
            put_c64(w, C64::new(x, 0.0))?;
        }
    }
    let m = t.matrix();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            put_c64(w, m[(r, c)])?;
        }
    }
    Ok(())
}

pub fn read_tensor(r: &mut impl Read) -> Result<Tensor3> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(truncated)?;
    if &magic != TENSOR_MAGIC {
        return Err(Error::Format(format!("bad magic {:?}, expected XGT1", String::from_utf8_lossy(&magic))));
    }
    let qubits = get_u32(r)?;
    check_qubits(qubits)?;
    let flags = get_u32(r)?;
    if flags & !FLAG_RAW != 0 {
        return Err(Error::Format(format!("unknown flag bits {flags:#x}")));
    }
    let n = 1usize << qubits;
    let side = n * n * n;
    let raw = if flags & FLAG_RAW != 0 {
        let mut g = Vec::with_capacity(side);
        for _ in 0..side {
            let z = get_c64(r)?;
            if z.im != 0.0 {
                return Err(Error::Format("sample vector g must be real".into()));
            }
            g.push(z.re);
        }
        Some(g)
    } else {
        None
    };
    let mut entries = Vec::with_capacity(side * side);
    for _ in 0..side * side {
        entries.push(get_c64(r)?);
    }
    let matrix = CMat::from_row_slice(side, side, &entries);
    Ok(Tensor3::from_matrix(qubits, matrix)?.with_raw(raw))
}

pub fn write_tensor_file(path: impl AsRef<Path>, t: &Tensor3) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    write_tensor(&mut w, t)?;
    w.flush()?;
    Ok(())
}

pub fn read_tensor_file(path: impl AsRef<Path>) -> Result<Tensor3> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    read_tensor(&mut r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{sample_tensor, SamplerConfig};

    #[test]
    fn round_trip_with_raw() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(3)).unwrap();
        let mut buf = Vec::new();
        write_tensor(&mut buf, &t).unwrap();
        assert_eq!(buf.len(), 12 + 8 * 16 + 64 * 16);
        let back = read_tensor(&mut buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn round_trip_without_raw() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(3)).unwrap().scaled(C64::new(0.0, 1.0));
        let mut buf = Vec::new();
        write_tensor(&mut buf, &t).unwrap();
        let back = read_tensor(&mut buf.as_slice()).unwrap();
        assert!(back.raw().is_none());
        assert_eq!(back.matrix(), t.matrix());
    }

    #[test]
    fn rejects_bad_magic_and_truncation() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(3)).unwrap();
        let mut buf = Vec::new();
        write_tensor(&mut buf, &t).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'Y';
        assert!(matches!(read_tensor(&mut bad.as_slice()), Err(Error::Format(_))));
        let short = &buf[..buf.len() - 1];
        assert!(matches!(read_tensor(&mut &short[..]), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_complex_g() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(3)).unwrap();
        let mut buf = Vec::new();
        write_tensor(&mut buf, &t).unwrap();
        // imaginary part of g_0
        buf[12 + 8..12 + 16].copy_from_slice(&1.0f64.to_le_bytes());
        assert!(matches!(read_tensor(&mut buf.as_slice()), Err(Error::Format(_))));
    }
}
