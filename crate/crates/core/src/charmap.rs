//! Finitely supported maps ℤ → ℤ/2ℤ, written multiplicatively with values in
//! {1, -1}, and the action of H on them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::ShiftedPermutation;

/// A map ℤ → {1, -1} stored as the (sorted) set of points sent to -1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VMap {
    support: Vec<i64>,
}

impl VMap {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_support<I: IntoIterator<Item = i64>>(points: I) -> Self {
        let support: BTreeSet<i64> = points.into_iter().collect();
        VMap {
            support: support.into_iter().collect(),
        }
    }

    /// The map `v{j}` supported at a single point.
    pub fn point(j: i64) -> Self {
        VMap { support: vec![j] }
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn support_set(&self) -> BTreeSet<i64> {
        self.support.iter().copied().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    /// Value at `j`, as 1 or -1.
    pub fn value(&self, j: i64) -> i8 {
        if self.support.binary_search(&j).is_ok() {
            -1
        } else {
            1
        }
    }

    /// Pointwise product; supports combine by symmetric difference.
    pub fn vmul(&self, other: &VMap) -> VMap {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                std::cmp::Ordering::Equal => {
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        VMap { support: out }
    }

    /// `(^h v)(j) = v(h⁻¹(j))`, i.e. the support is carried to `h(supp v)`.
    pub fn conj(&self, h: &ShiftedPermutation) -> VMap {
        let mut support: Vec<i64> = self.support.iter().map(|&j| h.apply(j)).collect();
        support.sort_unstable();
        VMap { support }
    }

    pub fn in_v_i(&self, i: u32) -> bool {
        let i = i as i64;
        self.support.iter().all(|&j| -i <= j && j <= i)
    }
}

/// `z_i`: -1 exactly on `[-i, i]`.
pub fn z(i: u32) -> VMap {
    let i = i as i64;
    VMap {
        support: (-i..=i).collect(),
    }
}

/// Free-function spelling of [`VMap::conj`], argument order as in `^h v`.
pub fn conj(h: &ShiftedPermutation, v: &VMap) -> VMap {
    v.conj(h)
}

pub fn vmul(a: &VMap, b: &VMap) -> VMap {
    a.vmul(b)
}

pub fn in_v_i(v: &VMap, i: u32) -> bool {
    v.in_v_i(i)
}

/// Uniformly random element of V_i.
pub fn random_v_i<R: Rng + ?Sized>(rng: &mut R, i: u32) -> VMap {
    let i = i as i64;
    VMap::from_support((-i..=i).filter(|_| rng.random_bool(0.5)))
}

/// All 2^(2i+1) elements of V_i, by increasing bitmask over `[-i, i]`.
pub fn enumerate_v_i(i: u32) -> impl Iterator<Item = VMap> {
    let n = 2 * i + 1;
    let lo = -(i as i64);
    (0u64..(1u64 << n)).map(move |mask| {
        VMap::from_support((0..n as i64).filter(|b| mask >> b & 1 == 1).map(|b| b + lo))
    })
}

impl fmt::Display for VMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{{{}}}", self.support.iter().join(","))
    }
}

impl FromStr for VMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_complete(s, crate::text::Parser::vmap)
    }
}
