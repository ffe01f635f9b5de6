//! Words in the segment amalgam A ∗_C B with A = G_i, B = G_{i+1} and
//! C = K_i, reduction to alternating form, and the decision procedure for
//! equality that reduction gives via the normal form theorem.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semidirect::GElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    /// Factor level of this side in the segment at `i`.
    pub fn level(self, i: u32) -> u32 {
        match self {
            Side::A => i,
            Side::B => i + 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub side: Side,
    pub element: GElement,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    level: u32,
    syllables: Vec<Syllable>,
}

impl Word {
    /// Checks that every syllable lives in the factor its side names.
    pub fn new(level: u32, syllables: Vec<Syllable>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidElement {
                level,
                reason: "segment levels start at 1".into(),
            });
        }
        for syl in &syllables {
            let expected = syl.side.level(level);
            if syl.element.level() != expected {
                return Err(Error::LevelMismatch {
                    expected,
                    found: syl.element.level(),
                });
            }
        }
        Ok(Word { level, syllables })
    }

    pub fn empty(level: u32) -> Self {
        Word {
            level,
            syllables: Vec::new(),
        }
    }

    /// One-syllable word; the side is read off the element's level.
    pub fn single(level: u32, element: GElement) -> Result<Self> {
        let side = if element.level() == level {
            Side::A
        } else if element.level() == level + 1 {
            Side::B
        } else {
            return Err(Error::LevelMismatch {
                expected: level,
                found: element.level(),
            });
        };
        Word::new(level, vec![Syllable { side, element }])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    fn in_c(&self, syl: &Syllable) -> bool {
        // The level was validated at construction, so in_k cannot fail.
        syl.element.in_k(self.level).unwrap_or(false)
    }

    fn moved_across(&self, syl: &Syllable) -> Syllable {
        let side = syl.side.other();
        Syllable {
            side,
            element: syl
                .element
                .transfer_k(self.level, side.level(self.level))
                .expect("syllable checked to lie in C"),
        }
    }

    /// Rewrites to fixpoint, always firing the first applicable rule at its
    /// leftmost position: drop identity syllables, merge equal-side
    /// neighbours, push a C-syllable across into a neighbour. A lone
    /// C-syllable ends up on side A.
    pub fn reduce(&self) -> Word {
        let mut s = self.syllables.clone();
        loop {
            if let Some(k) = s.iter().position(|x| x.element.is_identity()) {
                s.remove(k);
                continue;
            }
            if let Some(k) = (1..s.len()).find(|&k| s[k - 1].side == s[k].side) {
                let right = s.remove(k);
                s[k - 1].element = s[k - 1].element.mul_unchecked(&right.element);
                continue;
            }
            if s.len() >= 2 {
                if let Some(k) = s.iter().position(|x| self.in_c(x)) {
                    let c = self.moved_across(&s.remove(k));
                    if k > 0 {
                        s[k - 1].element = s[k - 1].element.mul_unchecked(&c.element);
                    } else {
                        s[0].element = c.element.mul_unchecked(&s[0].element);
                    }
                    continue;
                }
            }
            break;
        }
        if s.len() == 1 && s[0].side == Side::B && self.in_c(&s[0]) {
            s[0] = self.moved_across(&s[0]);
        }
        Word {
            level: self.level,
            syllables: s,
        }
    }

    fn check_level(&self, other: &Word) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        Ok(())
    }

    pub fn wmul(&self, other: &Word) -> Result<Word> {
        self.check_level(other)?;
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        Ok(Word {
            level: self.level,
            syllables,
        }
        .reduce())
    }

    pub fn winv(&self) -> Word {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|x| Syllable {
                side: x.side,
                element: x.element.ginv(),
            })
            .collect();
        Word {
            level: self.level,
            syllables,
        }
        .reduce()
    }

    pub fn is_identity(&self) -> bool {
        let r = self.reduce();
        match r.syllables.len() {
            0 => true,
            1 => r.syllables[0].element.is_identity(),
            _ => false,
        }
    }

    pub fn equals(&self, other: &Word) -> Result<bool> {
        Ok(self.wmul(&other.winv())?.is_identity())
    }

    /// Conjugates while the first and last syllables share a side, giving a
    /// conjugate of least syllable length.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.reduce();
        while w.syllables.len() >= 2
            && w.syllables[0].side == w.syllables[w.syllables.len() - 1].side
        {
            let mut s = w.syllables;
            let last = s.pop().expect("length >= 2");
            s.insert(0, last);
            w = Word {
                level: self.level,
                syllables: s,
            }
            .reduce();
        }
        w
    }

    pub fn syllable_length(&self) -> usize {
        self.reduce().syllables.len()
    }

    /// `u w u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Result<Word> {
        u.wmul(self)?.wmul(&u.winv())
    }

    /// Whether the word represents an element of the factor on `side`.
    pub fn lies_in(&self, side: Side) -> bool {
        let r = self.reduce();
        match r.syllables.as_slice() {
            [] => true,
            [x] => x.side == side || self.in_c(x),
            _ => false,
        }
    }
}

pub fn reduce(w: &Word) -> Word {
    w.reduce()
}

pub fn wmul(a: &Word, b: &Word) -> Result<Word> {
    a.wmul(b)
}

pub fn winv(w: &Word) -> Word {
    w.winv()
}

pub fn is_identity(w: &Word) -> bool {
    w.is_identity()
}

pub fn equals(a: &Word, b: &Word) -> Result<bool> {
    a.equals(b)
}

pub fn cyclic_reduce(w: &Word) -> Word {
    w.cyclic_reduce()
}

pub fn syllable_length(w: &Word) -> usize {
    w.syllable_length()
}

impl fmt::Display for Word {
    /// Prints the reduced form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce();
        write!(f, "w@{}[", self.level)?;
        for (k, syl) in r.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}:{}", syl.side, syl.element)?;
        }
        f.write_str("]")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_complete(s, crate::text::Parser::word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmap::VMap;
    use crate::perm::ShiftedPermutation;
    use crate::semidirect::{random_g, random_k};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn syl(side: Side, element: GElement) -> Syllable {
        Syllable { side, element }
    }

    fn g2() -> Word {
        let a = GElement::new(
            2,
            VMap::from_support([-1, 0]),
            ShiftedPermutation::transposition(-2, -1),
        )
        .unwrap();
        let b = GElement::new(
            3,
            VMap::from_support([-2, -1]),
            ShiftedPermutation::transposition(-3, -2),
        )
        .unwrap();
        Word::new(2, vec![syl(Side::A, a), syl(Side::B, b)]).unwrap()
    }

    fn outside_c(rng: &mut ChaCha8Rng, i: u32, side: Side) -> GElement {
        loop {
            let x = random_g(rng, side.level(i));
            if !x.in_k(i).unwrap() {
                return x;
            }
        }
    }

    fn random_word(rng: &mut ChaCha8Rng, i: u32, max_len: usize) -> Word {
        let n = rng.random_range(0..=max_len);
        let syllables = (0..n)
            .map(|_| {
                let side = if rng.random_bool(0.5) {
                    Side::A
                } else {
                    Side::B
                };
                let element = if rng.random_bool(0.25) {
                    random_k(rng, i, side.level(i))
                } else {
                    random_g(rng, side.level(i))
                };
                syl(side, element)
            })
            .collect();
        Word::new(i, syllables).unwrap()
    }

    fn reduced_alternating(rng: &mut ChaCha8Rng, i: u32, n: usize) -> Word {
        let first = if rng.random_bool(0.5) {
            Side::A
        } else {
            Side::B
        };
        let mut side = first;
        let mut s = Vec::new();
        for _ in 0..n {
            s.push(syl(side, outside_c(rng, i, side)));
            side = side.other();
        }
        Word::new(i, s).unwrap()
    }

    fn is_reduced(w: &Word) -> bool {
        let s = w.syllables();
        s.iter().all(|x| !x.element.is_identity())
            && s.windows(2).all(|p| p[0].side != p[1].side)
            && (s.len() <= 1 || s.iter().all(|x| !x.element.in_k(w.level()).unwrap()))
    }

    #[test]
    fn level_validated() {
        let a = GElement::identity(3);
        assert!(matches!(
            Word::new(2, vec![syl(Side::A, a)]),
            Err(Error::LevelMismatch { .. })
        ));
        assert!(Word::empty(2).wmul(&Word::empty(3)).is_err());
    }

    #[test]
    fn reduce_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = outside_c(&mut rng, 2, Side::A);
        let w = Word::new(2, vec![syl(Side::A, a.clone()), syl(Side::A, a.ginv())]).unwrap();
        assert!(w.reduce().is_empty());

        for _ in 0..50 {
            let b = outside_c(&mut rng, 2, Side::B);
            let z2 = GElement::central_z(2);
            let w = Word::new(2, vec![syl(Side::A, z2.clone()), syl(Side::B, b.clone())]).unwrap();
            let moved = z2.transfer_k(2, 3).unwrap();
            let expect = Word::new(2, vec![syl(Side::B, moved.gmul(&b).unwrap())]).unwrap();
            assert_eq!(w.reduce(), expect);
            assert!(w.equals(&expect).unwrap());
        }

        assert_eq!(g2().reduce(), g2());
    }

    #[test]
    fn lone_c_syllable_goes_to_a() {
        let c = GElement::central_z(2).transfer_k(2, 3).unwrap();
        let w = Word::new(2, vec![syl(Side::B, c)]).unwrap().reduce();
        assert_eq!(w.syllables()[0].side, Side::A);
        assert_eq!(w.syllables()[0].element.level(), 2);
    }

    #[test]
    fn wmul_winv_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1_000 {
            let i = rng.random_range(1..=3);
            let w = random_word(&mut rng, i, 4);
            assert!(w.wmul(&w.winv()).unwrap().is_empty());
        }
        assert!(Word::empty(2).winv().is_empty());
        assert_eq!(g2().wmul(&Word::empty(2)).unwrap(), g2());
    }

    #[test]
    fn identity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let a = outside_c(&mut rng, 2, Side::A);
        assert!(
            Word::new(2, vec![syl(Side::A, a.clone()), syl(Side::A, a.ginv())])
                .unwrap()
                .is_identity()
        );
        assert!(!g2().is_identity());
        let z2 = GElement::central_z(2);
        let back = z2.ginv().transfer_k(2, 3).unwrap();
        assert!(Word::new(2, vec![syl(Side::A, z2), syl(Side::B, back)])
            .unwrap()
            .is_identity());
    }

    #[test]
    fn equals_examples() {
        let p = Word::single(
            2,
            GElement::new(2, VMap::trivial(), ShiftedPermutation::transposition(1, 2)).unwrap(),
        )
        .unwrap();
        let g = g2();
        assert!(p.wmul(&g).unwrap().equals(&g.wmul(&p).unwrap()).unwrap());
        assert!(!g.equals(&g.winv()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let w = random_word(&mut rng, 2, 5);
            assert!(w.equals(&w).unwrap());
        }
    }

    #[test]
    fn cyclic_reduce_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..50 {
            let a = outside_c(&mut rng, 2, Side::A);
            let b = outside_c(&mut rng, 2, Side::B);
            let w = Word::new(
                2,
                vec![
                    syl(Side::A, a.clone()),
                    syl(Side::B, b.clone()),
                    syl(Side::A, a.ginv()),
                ],
            )
            .unwrap();
            let cr = w.cyclic_reduce();
            assert_eq!(cr, Word::new(2, vec![syl(Side::B, b)]).unwrap());
            let u = Word::single(2, a).unwrap();
            assert!(w.equals(&cr.conjugate_by(&u).unwrap()).unwrap());
        }
        assert_eq!(g2().cyclic_reduce().len(), 2);
        assert!(Word::empty(3).cyclic_reduce().is_empty());
    }

    #[test]
    fn syllable_length_examples() {
        assert_eq!(Word::empty(2).syllable_length(), 0);
        assert_eq!(g2().syllable_length(), 2);
        assert_eq!(g2().wmul(&g2()).unwrap().syllable_length(), 4);
    }

    #[test]
    fn reduce_output_is_reduced_and_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for _ in 0..10_000 {
            let i = rng.random_range(1..=3);
            let w = random_word(&mut rng, i, 6);
            let r = w.reduce();
            assert!(is_reduced(&r), "{w} -> {r}");
            assert!(r.equals(&w).unwrap());
            assert_eq!(r.reduce(), r);
        }
    }

    #[test]
    fn alternating_words_are_nontrivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..1_000 {
            let i = rng.random_range(1..=3);
            let n = rng.random_range(2..=6);
            let w = reduced_alternating(&mut rng, i, n);
            assert_eq!(w.reduce().len(), n);
            assert!(!w.is_identity());
        }
    }

    #[test]
    fn conjugation_preserves_cyclic_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        for _ in 0..1_000 {
            let i = rng.random_range(1..=2);
            let w = random_word(&mut rng, i, 5);
            let u = random_word(&mut rng, i, 4);
            let c = w.conjugate_by(&u).unwrap();
            assert_eq!(
                c.cyclic_reduce().syllable_length(),
                w.cyclic_reduce().syllable_length()
            );
        }
    }

    #[test]
    fn membership_in_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let a = outside_c(&mut rng, 2, Side::A);
        let wa = Word::single(2, a).unwrap();
        assert!(wa.lies_in(Side::A));
        assert!(!wa.lies_in(Side::B));
        let c = Word::single(2, GElement::central_z(2)).unwrap();
        assert!(c.lies_in(Side::A) && c.lies_in(Side::B));
        assert!(!g2().lies_in(Side::A));
    }
}
