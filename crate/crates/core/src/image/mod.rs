//! Ten-channel 32×32 image encoding of a dimer record.

mod encodings;
mod resample;

use alloc::string::String;
use alloc::vec::Vec;

pub use encodings::{com, gaf, mtf, normalize_shells, omap, q_images, Mat2, Mat3, QImages, ShellVector};
pub use resample::{upsample_bilinear, upsample_nearest};

use crate::linalg::Matrix;
use crate::model::DiatomicRecord;

/// Canvas edge length.
pub const SIZE: usize = 32;
/// Number of channels.
pub const CHANNELS: usize = 10;
/// Values per tensor.
pub const TENSOR_LEN: usize = CHANNELS * SIZE * SIZE;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImageError {
    #[error("orbital with l = {l} cannot be rasterised (l <= 2 required)")]
    AngularMomentum { l: u8 },
    #[error("magnetic number m = {m} out of range for l = {l}")]
    MagneticNumber { l: u8, m: i8 },
}

/// Channel layout of an [`ImageTensor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Channel {
    OmapA = 0,
    OmapB = 1,
    GafA = 2,
    GafB = 3,
    MtfA = 4,
    MtfB = 5,
    Com = 6,
    ComNorm = 7,
    QDiag = 8,
    QAbsdiff = 9,
}

impl Channel {
    pub const ALL: [Channel; CHANNELS] = [
        Channel::OmapA,
        Channel::OmapB,
        Channel::GafA,
        Channel::GafB,
        Channel::MtfA,
        Channel::MtfB,
        Channel::Com,
        Channel::ComNorm,
        Channel::QDiag,
        Channel::QAbsdiff,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Channel::OmapA => "OMAP_A",
            Channel::OmapB => "OMAP_B",
            Channel::GafA => "GAF_A",
            Channel::GafB => "GAF_B",
            Channel::MtfA => "MTF_A",
            Channel::MtfB => "MTF_B",
            Channel::Com => "COM",
            Channel::ComNorm => "COM_NORM",
            Channel::QDiag => "Q_DIAG",
            Channel::QAbsdiff => "Q_ABSDIFF",
        }
    }
}

/// `CHANNELS × SIZE × SIZE` values in channel-major, row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageTensor {
    pub pair_id: String,
    data: Vec<f32>,
}

impl ImageTensor {
    /// Wraps raw data; `None` unless it holds exactly [`TENSOR_LEN`] values.
    pub fn from_data(pair_id: String, data: Vec<f32>) -> Option<Self> {
        (data.len() == TENSOR_LEN).then_some(Self { pair_id, data })
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    pub fn channel(&self, c: Channel) -> &[f32] {
        let k = c.index() * SIZE * SIZE;
        &self.data[k..k + SIZE * SIZE]
    }

    pub fn get(&self, c: Channel, i: usize, j: usize) -> f32 {
        self.channel(c)[i * SIZE + j]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

fn mat3(m: &Mat3) -> Matrix {
    Matrix::from_fn(3, 3, |i, j| m[i][j])
}

fn mat2(m: &Mat2) -> Matrix {
    Matrix::from_fn(2, 2, |i, j| m[i][j])
}

/// Encodes a record. Deterministic: equal records give bit-identical tensors.
pub fn encode_tensor(rec: &DiatomicRecord) -> Result<ImageTensor, ImageError> {
    let pa = ShellVector::from_populations(&rec.populations_a)?;
    let pb = ShellVector::from_populations(&rec.populations_b)?;
    let (na, nb) = (normalize_shells(pa), normalize_shells(pb));
    let tile = |t: [[f64; 5]; 3]| Matrix::from_fn(3, 5, |i, j| t[i][j]);
    let (com_raw, com_norm) = com(pa, pb);
    let q = q_images(rec.gross_charge_a, rec.gross_charge_b);

    let channels: [Matrix; CHANNELS] = [
        upsample_nearest(&tile(omap(&rec.populations_a)?), SIZE),
        upsample_nearest(&tile(omap(&rec.populations_b)?), SIZE),
        upsample_bilinear(&mat3(&gaf(na)), SIZE),
        upsample_bilinear(&mat3(&gaf(nb)), SIZE),
        upsample_bilinear(&mat3(&mtf(na)), SIZE),
        upsample_bilinear(&mat3(&mtf(nb)), SIZE),
        upsample_bilinear(&mat3(&com_raw), SIZE),
        upsample_bilinear(&mat3(&com_norm), SIZE),
        upsample_bilinear(&mat2(&q.diag), SIZE),
        upsample_bilinear(&mat2(&q.absdiff), SIZE),
    ];
    let mut data = Vec::with_capacity(TENSOR_LEN);
    for ch in &channels {
        data.extend(ch.as_slice().iter().map(|&v| v as f32));
    }
    Ok(ImageTensor {
        pair_id: rec.pair_id.clone(),
        data,
    })
}
