//! Permutations of the integers of the form `j ↦ π(j) + k`, with `π`
//! finitely supported.
//!
//! This covers the group H generated by the transposition `(0 1)` and the
//! shift `s(j) = j + 1`, its finitary subgroup H_ω (shift zero) and the
//! truncations H_i of permutations supported on `[-i, i]`.
//!
//! Composition is function composition: `compose(a, b)` applies `b` first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A finitely supported bijection of ℤ, stored as its non-fixed pairs sorted
/// by source point.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinitePermutation {
    pairs: Vec<(i64, i64)>,
}

impl FinitePermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from `(source, image)` pairs. Fixed points are
    /// dropped; anything that is not a bijection of the listed domain is
    /// rejected.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Result<Self> {
        let mut pairs: Vec<(i64, i64)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let sources: Vec<i64> = pairs.iter().map(|p| p.0).collect();
        if sources.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidElement {
                level: 0,
                reason: "repeated source point".into(),
            });
        }
        let mut images: Vec<i64> = pairs.iter().map(|p| p.1).collect();
        images.sort_unstable();
        if images != sources {
            return Err(Error::InvalidElement {
                level: 0,
                reason: "pairs do not form a bijection of their domain".into(),
            });
        }
        pairs.retain(|(a, b)| a != b);
        Ok(FinitePermutation { pairs })
    }

    /// The cycle `(c0 c1 ... cn)`: `c0 ↦ c1 ↦ ... ↦ cn ↦ c0`.
    pub fn cycle(points: &[i64]) -> Result<Self> {
        if points.len() != points.iter().collect::<BTreeSet<_>>().len() {
            return Err(Error::InvalidElement {
                level: 0,
                reason: format!("cycle {points:?} repeats a point"),
            });
        }
        let n = points.len();
        Self::from_pairs((0..n).map(|k| (points[k], points[(k + 1) % n])))
    }

    // Caller guarantees bijectivity; only fixed points are filtered.
    fn from_sorted_images(pairs: Vec<(i64, i64)>) -> Self {
        let pairs = pairs.into_iter().filter(|(a, b)| a != b).collect();
        FinitePermutation { pairs }
    }

    pub fn get(&self, j: i64) -> i64 {
        match self.pairs.binary_search_by_key(&j, |p| p.0) {
            Ok(k) => self.pairs[k].1,
            Err(_) => j,
        }
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn support(&self) -> BTreeSet<i64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    /// Disjoint cycles, each starting at its least point, ordered by that
    /// point.
    pub fn cycles(&self) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &(start, _) in &self.pairs {
            if !seen.insert(start) {
                continue;
            }
            let mut cyc = vec![start];
            let mut j = self.get(start);
            while j != start {
                seen.insert(j);
                cyc.push(j);
                j = self.get(j);
            }
            out.push(cyc);
        }
        out
    }
}

/// An element `j ↦ π(j) + shift` of H.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftedPermutation {
    shift: i64,
    finite: FinitePermutation,
}

impl ShiftedPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(shift: i64, finite: FinitePermutation) -> Self {
        ShiftedPermutation { shift, finite }
    }

    /// `s^k`.
    pub fn shift_by(k: i64) -> Self {
        ShiftedPermutation {
            shift: k,
            finite: FinitePermutation::identity(),
        }
    }

    /// The generator `s`.
    pub fn s() -> Self {
        Self::shift_by(1)
    }

    pub fn finite(finite: FinitePermutation) -> Self {
        ShiftedPermutation { shift: 0, finite }
    }

    pub fn cycle(points: &[i64]) -> Result<Self> {
        FinitePermutation::cycle(points).map(Self::finite)
    }

    /// The transposition `(a b)`; `a == b` gives the identity.
    pub fn transposition(a: i64, b: i64) -> Self {
        if a == b {
            return Self::identity();
        }
        Self::finite(FinitePermutation::from_sorted_images(if a < b {
            vec![(a, b), (b, a)]
        } else {
            vec![(b, a), (a, b)]
        }))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn finite_part(&self) -> &FinitePermutation {
        &self.finite
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.finite.is_identity()
    }

    pub fn apply(&self, j: i64) -> i64 {
        self.finite.get(j) + self.shift
    }

    /// `compose(a, b)(j) = a(b(j))`.
    pub fn compose(&self, b: &ShiftedPermutation) -> ShiftedPermutation {
        let a = self;
        let kb = b.shift;
        // a(b(j)) = πa(πb(j) + kb) + ka; the finite part of the product moves
        // only points of supp(πb) ∪ (supp(πa) - kb).
        let mut domain: Vec<i64> = b
            .finite
            .pairs
            .iter()
            .map(|p| p.0)
            .chain(a.finite.pairs.iter().map(|p| p.0 - kb))
            .collect();
        domain.sort_unstable();
        domain.dedup();
        let pairs = domain
            .into_iter()
            .map(|j| (j, a.finite.get(b.finite.get(j) + kb) - kb))
            .collect();
        ShiftedPermutation {
            shift: a.shift + kb,
            finite: FinitePermutation::from_sorted_images(pairs),
        }
    }

    pub fn inverse(&self) -> ShiftedPermutation {
        let k = self.shift;
        let mut pairs: Vec<(i64, i64)> = self
            .finite
            .pairs
            .iter()
            .map(|&(x, y)| (y + k, x + k))
            .collect();
        pairs.sort_unstable();
        ShiftedPermutation {
            shift: -k,
            finite: FinitePermutation::from_sorted_images(pairs),
        }
    }

    /// `{ j : h(j) != j }`; only finite when the shift is zero.
    pub fn support(&self) -> Result<BTreeSet<i64>> {
        if self.shift != 0 {
            return Err(Error::InfiniteSupport { shift: self.shift });
        }
        Ok(self.finite.support())
    }

    /// Membership in H_i: shift zero and support inside `[-i, i]`.
    pub fn in_h_i(&self, i: u32) -> bool {
        let i = i as i64;
        self.shift == 0 && self.finite.pairs.iter().all(|p| -i <= p.0 && p.0 <= i)
    }

    /// Order of the element, `None` when the shift is nonzero.
    pub fn order(&self) -> Option<u64> {
        if self.shift != 0 {
            return None;
        }
        Some(
            self.finite
                .cycles()
                .iter()
                .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64)),
        )
    }
}

/// Every permutation of the window `[-i, i]`, each exactly once, in
/// lexicographic order of image lists (the identity comes first).
pub fn enumerate_h_i(i: u32) -> Result<impl Iterator<Item = ShiftedPermutation>> {
    enumerate_h_i_capped(i, crate::config::Limits::default().enum_cap_h)
}

pub fn enumerate_h_i_capped(i: u32, cap: u32) -> Result<impl Iterator<Item = ShiftedPermutation>> {
    if i > cap {
        return Err(Error::EnumerationTooLarge {
            what: "H_i",
            level: i,
            cap,
        });
    }
    Ok(window_permutations(-(i as i64), i as i64))
}

/// All permutations of `[lo, hi]`, identity first.
pub fn window_permutations(lo: i64, hi: i64) -> impl Iterator<Item = ShiftedPermutation> {
    let window: Vec<i64> = (lo..=hi).collect();
    let n = window.len();
    window
        .clone()
        .into_iter()
        .permutations(n)
        .map(move |images| {
            let pairs = window.iter().copied().zip(images).collect();
            ShiftedPermutation::finite(FinitePermutation::from_sorted_images(pairs))
        })
}

/// Uniformly random permutation of `[lo, hi]`.
pub fn random_window_permutation<R: Rng + ?Sized>(
    rng: &mut R,
    lo: i64,
    hi: i64,
) -> ShiftedPermutation {
    let window: Vec<i64> = (lo..=hi).collect();
    let mut images = window.clone();
    images.shuffle(rng);
    let pairs = window.into_iter().zip(images).collect();
    ShiftedPermutation::finite(FinitePermutation::from_sorted_images(pairs))
}

/// Uniformly random element of H_i.
pub fn random_h_i<R: Rng + ?Sized>(rng: &mut R, i: u32) -> ShiftedPermutation {
    random_window_permutation(rng, -(i as i64), i as i64)
}

impl fmt::Display for ShiftedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.finite.cycles();
        for c in &cycles {
            write!(f, "({})", c.iter().join(" "))?;
        }
        match (cycles.is_empty(), self.shift) {
            (true, 0) => write!(f, "()"),
            (_, 0) => Ok(()),
            (true, k) => write!(f, "s^{k}"),
            (false, k) => write!(f, " s^{k}"),
        }
    }
}

impl FromStr for ShiftedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_complete(s, crate::text::Parser::perm)
    }
}
