//! The finite factors G_i = V_i ⋊ H_i, with multiplication
//! `(v0 h0)(v1 h1) = (v0 · ^{h0}v1)(h0 h1)`, and the subgroups
//! K_i = ⟨z_i⟩ × H_i that glue G_i to G_{i+1}.
//!
//! Every element carries its level explicitly. G_i and G_{i+1} are different
//! factors even where their coordinates overlap, so levels never coerce.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::charmap::{self, z, VMap};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::{self, ShiftedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GElement {
    level: u32,
    v: VMap,
    h: ShiftedPermutation,
}

impl GElement {
    pub fn new(level: u32, v: VMap, h: ShiftedPermutation) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidElement {
                level,
                reason: "levels start at 1".into(),
            });
        }
        if !v.in_v_i(level) {
            return Err(Error::InvalidElement {
                level,
                reason: format!("{v} is not supported on [-{level}, {level}]"),
            });
        }
        if !h.in_h_i(level) {
            return Err(Error::InvalidElement {
                level,
                reason: format!("{h} is not a permutation of [-{level}, {level}]"),
            });
        }
        Ok(GElement { level, v, h })
    }

    pub fn identity(level: u32) -> Self {
        GElement {
            level,
            v: VMap::trivial(),
            h: ShiftedPermutation::identity(),
        }
    }

    /// `(z_i, id)` at level `i`.
    pub fn central_z(level: u32) -> Self {
        GElement {
            level,
            v: z(level),
            h: ShiftedPermutation::identity(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn v(&self) -> &VMap {
        &self.v
    }

    pub fn h(&self) -> &ShiftedPermutation {
        &self.h
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_trivial() && self.h.is_identity()
    }

    pub fn gmul(&self, b: &GElement) -> Result<GElement> {
        if self.level != b.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: b.level,
            });
        }
        Ok(self.mul_unchecked(b))
    }

    // Same-level product; callers have already compared levels.
    pub(crate) fn mul_unchecked(&self, b: &GElement) -> GElement {
        debug_assert_eq!(self.level, b.level);
        GElement {
            level: self.level,
            v: self.v.vmul(&b.v.conj(&self.h)),
            h: self.h.compose(&b.h),
        }
    }

    pub fn ginv(&self) -> GElement {
        let hinv = self.h.inverse();
        GElement {
            level: self.level,
            v: self.v.conj(&hinv),
            h: hinv,
        }
    }

    /// Membership in K_i = ⟨z_i⟩ × H_i, which sits in G_i and G_{i+1}.
    pub fn in_k(&self, i: u32) -> Result<bool> {
        if self.level != i && self.level != i + 1 {
            return Err(Error::NotDesignatedSubgroup {
                i,
                level: self.level,
            });
        }
        Ok((self.v.is_trivial() || self.v == z(i)) && self.h.in_h_i(i))
    }

    /// Re-tags an element of K_i at the other factor containing K_i.
    pub fn transfer_k(&self, i: u32, target_level: u32) -> Result<GElement> {
        if target_level != i && target_level != i + 1 {
            return Err(Error::NotDesignatedSubgroup {
                i,
                level: target_level,
            });
        }
        if !self.in_k(i)? {
            return Err(Error::NotInK { i });
        }
        Ok(GElement {
            level: target_level,
            v: self.v.clone(),
            h: self.h.clone(),
        })
    }

    /// Compact injective encoding of an element whose window `[-L, L]` has
    /// at most 20 points: the v-bitmask followed by 5-bit image offsets.
    pub fn dense_key(&self) -> Option<u128> {
        let l = self.level as i64;
        let n = 2 * l + 1;
        if n > 20 {
            return None;
        }
        let mut key: u128 = 0;
        for &j in self.v.support() {
            key |= 1 << (j + l);
        }
        for j in -l..=l {
            let img = (self.h.apply(j) + l) as u128;
            key |= img << (n + 5 * (j + l));
        }
        Some(key)
    }
}

pub fn gmul(a: &GElement, b: &GElement) -> Result<GElement> {
    a.gmul(b)
}

pub fn ginv(a: &GElement) -> GElement {
    a.ginv()
}

pub fn in_k(a: &GElement, i: u32) -> Result<bool> {
    a.in_k(i)
}

pub fn transfer_k(a: &GElement, i: u32, target_level: u32) -> Result<GElement> {
    a.transfer_k(i, target_level)
}

/// Order of G_i′, `2^(2i+1) (2i+1)!`.
pub fn order_g(i: u32) -> u128 {
    (1u128 << (2 * i + 1)) * factorial_u128(2 * i + 1)
}

/// Order of K_i, `2 (2i+1)!`.
pub fn order_k(i: u32) -> u128 {
    2 * factorial_u128(2 * i + 1)
}

fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Every element of G_i′ exactly once: permutations in lexicographic order
/// on the outside, V_i by increasing bitmask inside. The identity is first.
pub fn enumerate_g(i: u32) -> Result<impl Iterator<Item = GElement>> {
    enumerate_g_capped(i, Limits::default().enum_cap_g)
}

pub fn enumerate_g_capped(i: u32, cap: u32) -> Result<impl Iterator<Item = GElement>> {
    if i == 0 {
        return Err(Error::InvalidElement {
            level: 0,
            reason: "levels start at 1".into(),
        });
    }
    if i > cap {
        return Err(Error::EnumerationTooLarge {
            what: "G_i",
            level: i,
            cap,
        });
    }
    let hs = perm::enumerate_h_i_capped(i, u32::MAX)?;
    Ok(hs.flat_map(move |h| {
        charmap::enumerate_v_i(i).map(move |v| GElement {
            level: i,
            v,
            h: h.clone(),
        })
    }))
}

/// The 2·(2i+1)! elements of K_i at level `i`.
pub fn enumerate_k(i: u32) -> Result<impl Iterator<Item = GElement>> {
    enumerate_k_capped(i, Limits::default().enum_cap_k)
}

pub fn enumerate_k_capped(i: u32, cap: u32) -> Result<impl Iterator<Item = GElement>> {
    if i == 0 {
        return Err(Error::InvalidElement {
            level: 0,
            reason: "levels start at 1".into(),
        });
    }
    if i > cap {
        return Err(Error::EnumerationTooLarge {
            what: "K_i",
            level: i,
            cap,
        });
    }
    let hs = perm::enumerate_h_i_capped(i, u32::MAX)?;
    Ok(hs.flat_map(move |h| {
        [VMap::trivial(), z(i)].into_iter().map(move |v| GElement {
            level: i,
            v,
            h: h.clone(),
        })
    }))
}

/// Uniformly random element of G_i′.
pub fn random_g<R: Rng + ?Sized>(rng: &mut R, i: u32) -> GElement {
    GElement {
        level: i,
        v: charmap::random_v_i(rng, i),
        h: perm::random_h_i(rng, i),
    }
}

/// Uniformly random element of K_i, tagged at `level` (i or i+1).
pub fn random_k<R: Rng + ?Sized>(rng: &mut R, i: u32, level: u32) -> GElement {
    GElement {
        level,
        v: if rng.random_bool(0.5) {
            z(i)
        } else {
            VMap::trivial()
        },
        h: perm::random_h_i(rng, i),
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g@{}[{}; {}]", self.level, self.v, self.h)
    }
}

impl FromStr for GElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_complete(s, crate::text::Parser::gelement)
    }
}
