use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set supported by bitmask subsets and exhaustive sweeps.
pub const MAX_GROUND_SET: usize = 20;

/// A subset of the ground set `{1, …, n}`; bit `i − 1` set ⇔ element `i` present.
///
/// Elements are handled 0-based in code (`0..n`), and printed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set of `n` elements.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SET);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(element: usize) -> Self {
        Subset(1 << element)
    }

    /// Builds a subset from 0-based element indices.
    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Self {
        Subset(elements.into_iter().fold(0, |acc, e| acc | (1 << e)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn with(self, element: usize) -> Self {
        Subset(self.0 | (1 << element))
    }

    pub fn without(self, element: usize) -> Self {
        Subset(self.0 & !(1 << element))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self != other
    }

    /// 0-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Every subset of `self`, including ∅ and `self`, in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Every nonempty subset of an `n`-element ground set, ascending.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = Subset> {
        (1..=Subset::full(n).0).map(Subset)
    }

    pub fn check_within(self, n: usize) -> Result<()> {
        if self.is_subset_of(Subset::full(n)) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange { mask: self.0, n })
        }
    }

    /// Hex form, e.g. `0x5` for `{1, 3}`.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    /// Parses either a hex mask (`0x5`) or a 1-based element list (`1,3`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = |message: String| Error::Parse {
            field: "subset".into(),
            message,
        };
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return u32::from_str_radix(hex, 16)
                .map(Subset)
                .map_err(|e| err(format!("bad hex mask {s:?}: {e}")));
        }
        let inner = s.trim_start_matches('{').trim_end_matches('}');
        let mut bits = 0u32;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let e: usize = tok
                .parse()
                .map_err(|_| err(format!("bad element {tok:?}")))?;
            if e == 0 || e > MAX_GROUND_SET {
                return Err(err(format!("element {e} outside 1..={MAX_GROUND_SET}")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}
