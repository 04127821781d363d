//! QCIM tensor files. Little-endian throughout:
//!
//! ```text
//! "QCIM"             4 bytes
//! version            u16 = 1
//! count              u64
//! dims               3 × u32 = 10, 32, 32
//! count × {
//!     id length      u16
//!     id             UTF-8 bytes
//!     values         10·32·32 × f32, channel-major, row-major
//! }
//! ```

use std::path::Path;

use qcanvas_core::image::{ImageTensor, CHANNELS, SIZE, TENSOR_LEN};

use super::{read_bytes, write_atomic, FormatError};

pub const MAGIC: &[u8; 4] = b"QCIM";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 4 + 2 + 8 + 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QcimError {
    #[error("bad magic bytes {0:?} (expected \"QCIM\")")]
    BadMagic([u8; 4]),
    #[error("unsupported QCIM version {0} (this build reads version 1)")]
    UnsupportedVersion(u16),
    #[error("tensor dimensions {0:?} differ from (10, 32, 32)")]
    BadDims([u32; 3]),
    #[error("truncated file: {what} at byte {offset}")]
    Truncated { what: &'static str, offset: usize },
    #[error("pair id of record {index} is not UTF-8")]
    BadId { index: u64 },
    #[error("pair id {0:?} longer than 65535 bytes")]
    IdTooLong(String),
    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),
}

pub fn encode(tensors: &[ImageTensor]) -> Result<Vec<u8>, QcimError> {
    let mut out = Vec::with_capacity(HEADER_LEN + tensors.len() * (TENSOR_LEN * 4 + 16));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(tensors.len() as u64).to_le_bytes());
    for d in [CHANNELS, SIZE, SIZE] {
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for t in tensors {
        let id = t.pair_id.as_bytes();
        let len = u16::try_from(id.len()).map_err(|_| QcimError::IdTooLong(t.pair_id.clone()))?;
        out.extend_from_slice(&len.to_le_bytes());
        out.extend_from_slice(id);
        for v in t.data() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], QcimError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or(QcimError::Truncated { what, offset: self.pos })?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self, what: &'static str) -> Result<[u8; N], QcimError> {
        Ok(self.take(N, what)?.try_into().expect("length checked"))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Vec<ImageTensor>, QcimError> {
    let mut c = Cursor { buf: bytes, pos: 0 };
    let magic: [u8; 4] = c.array("magic")?;
    if &magic != MAGIC {
        return Err(QcimError::BadMagic(magic));
    }
    let version = u16::from_le_bytes(c.array("version")?);
    if version != VERSION {
        return Err(QcimError::UnsupportedVersion(version));
    }
    let count = u64::from_le_bytes(c.array("record count")?);
    let mut dims = [0u32; 3];
    for d in &mut dims {
        *d = u32::from_le_bytes(c.array("dimensions")?);
    }
    if dims != [CHANNELS as u32, SIZE as u32, SIZE as u32] {
        return Err(QcimError::BadDims(dims));
    }
    // Cap the pre-allocation by what the payload could possibly hold.
    let max_records = (bytes.len() - c.pos) / (2 + TENSOR_LEN * 4);
    let mut out = Vec::with_capacity((count as usize).min(max_records));
    for index in 0..count {
        let len = u16::from_le_bytes(c.array("pair id length")?);
        let id = c.take(len as usize, "pair id")?;
        let id = std::str::from_utf8(id).map_err(|_| QcimError::BadId { index })?.to_owned();
        let payload = c.take(TENSOR_LEN * 4, "tensor payload")?;
        let data = payload
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().expect("chunk of 4")))
            .collect();
        out.push(ImageTensor::from_data(id, data).expect("payload length fixed"));
    }
    if c.pos != bytes.len() {
        return Err(QcimError::TrailingBytes(bytes.len() - c.pos));
    }
    Ok(out)
}

pub fn write_tensors(tensors: &[ImageTensor], path: &Path) -> Result<(), FormatError> {
    let bytes = encode(tensors).map_err(|source| FormatError::Qcim {
        path: path.to_path_buf(),
        source,
    })?;
    write_atomic(path, &bytes)
}

pub fn read_tensors(path: &Path) -> Result<Vec<ImageTensor>, FormatError> {
    decode(&read_bytes(path)?).map_err(|source| FormatError::Qcim {
        path: path.to_path_buf(),
        source,
    })
}
