use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Contiguous column heights anchored in absolute coordinates: column
/// `offset + k` holds `heights[k]` boxes. The first box sits in column 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile {
    pub offset: i32,
    pub heights: Vec<u32>,
}

/// A pyramid is a unimodal profile.
pub type PyramidState = Profile;

impl Profile {
    pub fn single() -> Self {
        Profile {
            offset: 0,
            heights: vec![1],
        }
    }

    pub fn new(offset: i32, heights: Vec<u32>) -> Result<Self> {
        if heights.is_empty() || heights.contains(&0) {
            return Err(Error::Invalid("heights must be positive and non-empty".into()));
        }
        Ok(Profile { offset, heights })
    }

    pub fn size(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn base(&self) -> usize {
        self.heights.len()
    }

    /// Height at absolute column `c` (0 outside the support).
    pub fn height_at(&self, c: i32) -> u32 {
        let k = c - self.offset;
        if k < 0 {
            return 0;
        }
        self.heights.get(k as usize).copied().unwrap_or(0)
    }

    /// Weakly increasing, then weakly decreasing.
    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.heights)
    }

    pub fn columns(&self) -> std::ops::Range<i32> {
        self.offset..self.offset + self.heights.len() as i32
    }
}

pub fn is_unimodal(h: &[u32]) -> bool {
    let mut k = 0;
    while k + 1 < h.len() && h[k] <= h[k + 1] {
        k += 1;
    }
    while k + 1 < h.len() && h[k] >= h[k + 1] {
        k += 1;
    }
    k + 1 >= h.len()
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(u32::to_string).collect();
        write!(f, "{}@{}", parts.join(","), self.offset)
    }
}
