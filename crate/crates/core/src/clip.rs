//! Dense frame-stack clips and soft-label records.

use crate::error::{Error, Result};

/// A clip: n frames of H x W pixels with C channels, 8 bits per channel,
/// stored frame-major, row-major, channel-interleaved.
///
/// Constructors require n >= 2 and C in {1, 3}. Frames down to 1x1 are
/// accepted so the raw container format can round-trip; operators that
/// sample spatial regions (policy application, box mixes) demand at least
/// 8x8 through their own preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clip {
    n: usize,
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<u8>,
}

impl Clip {
    pub fn from_raw(n: usize, height: usize, width: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidClip(format!("need at least 2 frames, got {n}")));
        }
        if height == 0 || width == 0 {
            return Err(Error::InvalidClip(format!("empty frame {width}x{height}")));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidClip(format!("channels must be 1 or 3, got {channels}")));
        }
        let expect = n * height * width * channels;
        if data.len() != expect {
            return Err(Error::InvalidClip(format!(
                "payload is {} bytes, shape {n}x{height}x{width}x{channels} needs {expect}",
                data.len()
            )));
        }
        Ok(Clip { n, height, width, channels, data })
    }

    /// Clip with every byte set to `value`.
    pub fn filled(n: usize, height: usize, width: usize, channels: usize, value: u8) -> Result<Self> {
        Clip::from_raw(n, height, width, channels, vec![value; n * height * width * channels])
    }

    /// Build a clip from a pixel function (t, y, x, channel) -> value.
    pub fn from_fn<F>(n: usize, height: usize, width: usize, channels: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize) -> u8,
    {
        let mut data = Vec::with_capacity(n * height * width * channels);
        for t in 0..n {
            for y in 0..height {
                for x in 0..width {
                    for ch in 0..channels {
                        data.push(f(t, y, x, ch));
                    }
                }
            }
        }
        Clip::from_raw(n, height, width, channels, data)
    }

    pub fn n_frames(&self) -> usize {
        self.n
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Bytes in one frame.
    pub fn frame_len(&self) -> usize {
        self.height * self.width * self.channels
    }

    pub fn frame(&self, t: usize) -> &[u8] {
        let len = self.frame_len();
        &self.data[t * len..(t + 1) * len]
    }

    pub fn frame_mut(&mut self, t: usize) -> &mut [u8] {
        let len = self.frame_len();
        &mut self.data[t * len..(t + 1) * len]
    }

    #[inline]
    pub fn get(&self, t: usize, y: usize, x: usize, ch: usize) -> u8 {
        self.data[((t * self.height + y) * self.width + x) * self.channels + ch]
    }

    #[inline]
    pub fn put(&mut self, t: usize, y: usize, x: usize, ch: usize, v: u8) {
        self.data[((t * self.height + y) * self.width + x) * self.channels + ch] = v;
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn same_shape(&self, other: &Clip) -> bool {
        self.n == other.n
            && self.height == other.height
            && self.width == other.width
            && self.channels == other.channels
    }

    pub fn shape_string(&self) -> String {
        format!("{}x{}x{}x{}", self.n, self.height, self.width, self.channels)
    }
}

/// Soft-label outcome of an augmentation: the supervisory signal is split
/// `1 - weight_b` on `label_a` and `weight_b` on `label_b`. Single-clip ops
/// always report weight_b = 0 with label_b = label_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelMix {
    pub label_a: u32,
    pub label_b: u32,
    pub weight_b: f64,
}

impl LabelMix {
    /// Label record for a single-clip op: all signal stays on `label`.
    pub fn single(label: u32) -> Self {
        LabelMix { label_a: label, label_b: label, weight_b: 0.0 }
    }

    pub fn new(label_a: u32, label_b: u32, weight_b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight_b) {
            return Err(Error::InvalidPolicy(format!("weight_b {weight_b} outside [0,1]")));
        }
        Ok(LabelMix { label_a, label_b, weight_b })
    }
}
