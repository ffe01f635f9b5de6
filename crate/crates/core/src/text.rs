//! Text grammar shared by the CLI and the report files.
//!
//! ```text
//! perm   := factor+                 factors apply left to right
//! factor := "(" int* ")" | "s" ["^" int] | "inv(" perm ")"
//! vmap   := "v{" [int ("," int)*] "}" | "z@" int
//! gelem  := "g@" int "[" vmap ";" perm "]" | "inv(" gelem ")"
//! word   := "w@" int "[" [side ":" gelem (";" side ":" gelem)*] "]"
//! side   := "A" | "B"
//! ```
//!
//! Whitespace between tokens is ignored. Printers emit canonical forms that
//! parse back to the same value.

use std::fmt;

use crate::amalgam::{Side, Syllable, Word};
use crate::charmap::{z, VMap};
use crate::error::{Error, Result};
use crate::perm::ShiftedPermutation;
use crate::semidirect::GElement;

pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

/// Runs `f` over all of `src`, rejecting trailing input.
pub fn parse_complete<'a, T>(
    src: &'a str,
    f: impl FnOnce(&mut Parser<'a>) -> Result<T>,
) -> Result<T> {
    let mut p = Parser::new(src);
    let value = f(&mut p)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek_is(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.peek_is(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let mut end = 0;
        let bytes = rest.as_bytes();
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits_start = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_start {
            return Err(self.error("expected integer"));
        }
        let value = rest[..end]
            .parse::<i64>()
            .map_err(|e| self.error(format!("bad integer: {e}")))?;
        self.pos += end;
        Ok(value)
    }

    fn level(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.int()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: start,
            msg: format!("level {n} out of range"),
        })
    }

    fn lift<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.error(other.to_string()),
        })
    }

    pub fn perm(&mut self) -> Result<ShiftedPermutation> {
        let mut acc = ShiftedPermutation::identity();
        let mut factors = 0;
        loop {
            let factor = if self.eat("inv(") {
                let inner = self.perm()?;
                self.expect(")")?;
                inner.inverse()
            } else if self.eat("(") {
                let mut points = Vec::new();
                while !self.eat(")") {
                    if self.at_end() {
                        return Err(self.error("unterminated cycle"));
                    }
                    points.push(self.int()?);
                }
                let c = ShiftedPermutation::cycle(&points);
                self.lift(c)?
            } else if self.eat("s") {
                let k = if self.eat("^") { self.int()? } else { 1 };
                ShiftedPermutation::shift_by(k)
            } else {
                break;
            };
            acc = factor.compose(&acc);
            factors += 1;
        }
        if factors == 0 {
            return Err(self.error("expected permutation"));
        }
        Ok(acc)
    }

    pub fn vmap(&mut self) -> Result<VMap> {
        if self.eat("z@") {
            return Ok(z(self.level()?));
        }
        self.expect("v{")?;
        let mut points = Vec::new();
        if !self.eat("}") {
            loop {
                let start = self.pos;
                let j = self.int()?;
                if points.contains(&j) {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("point {j} repeated"),
                    });
                }
                points.push(j);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(VMap::from_support(points))
    }

    pub fn gelement(&mut self) -> Result<GElement> {
        if self.eat("inv(") {
            let inner = self.gelement()?;
            self.expect(")")?;
            return Ok(inner.ginv());
        }
        self.expect("g@")?;
        let level = self.level()?;
        self.expect("[")?;
        let v = self.vmap()?;
        self.expect(";")?;
        let h = self.perm()?;
        self.expect("]")?;
        let g = GElement::new(level, v, h);
        self.lift(g)
    }

    pub fn word(&mut self) -> Result<Word> {
        if self.eat("inv(") {
            let inner = self.word()?;
            self.expect(")")?;
            return Ok(inner.winv());
        }
        self.expect("w@")?;
        let level = self.level()?;
        self.expect("[")?;
        let mut syllables = Vec::new();
        if !self.eat("]") {
            loop {
                let side = if self.eat("A") {
                    Side::A
                } else if self.eat("B") {
                    Side::B
                } else {
                    return Err(self.error("expected side `A` or `B`"));
                };
                self.expect(":")?;
                let element = self.gelement()?;
                syllables.push(Syllable { side, element });
                if self.eat("]") {
                    break;
                }
                self.expect(";")?;
            }
        }
        let w = Word::new(level, syllables);
        self.lift(w)
    }

    /// Any element, dispatched on its leading token.
    pub fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let mut probe = self.rest();
        while let Some(inner) = probe.strip_prefix("inv(") {
            probe = inner.trim_start();
        }
        if probe.starts_with("w@") {
            self.word().map(Expr::Word)
        } else if probe.starts_with("g@") {
            self.gelement().map(Expr::G)
        } else if probe.starts_with("v{") || probe.starts_with("z@") {
            self.vmap().map(Expr::V)
        } else {
            self.perm().map(Expr::Perm)
        }
    }
}

/// A parsed element of any of the grammars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Perm(ShiftedPermutation),
    V(VMap),
    G(GElement),
    Word(Word),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Perm(x) => x.fmt(f),
            Expr::V(x) => x.fmt(f),
            Expr::G(x) => x.fmt(f),
            Expr::Word(x) => x.fmt(f),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_complete(src, Parser::expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semidirect::random_g;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn perm_product_applies_left_to_right() {
        let p: ShiftedPermutation = "(1 2)(2 3)".parse().unwrap();
        // 1 -> 2 -> 3, 3 -> 2, 2 -> 1
        assert_eq!(p, ShiftedPermutation::cycle(&[1, 3, 2]).unwrap());
        let q: ShiftedPermutation = "s^1 (0 1)".parse().unwrap();
        assert_eq!(q.apply(-1), 1);
        assert_eq!(q.apply(0), 0);
        assert!("(0 1)(0 1)"
            .parse::<ShiftedPermutation>()
            .unwrap()
            .is_identity());
        assert_eq!(
            "s".parse::<ShiftedPermutation>().unwrap(),
            ShiftedPermutation::s()
        );
        assert_eq!(
            "inv((1 2 3))".parse::<ShiftedPermutation>().unwrap(),
            ShiftedPermutation::cycle(&[1, 3, 2]).unwrap()
        );
    }

    #[test]
    fn vmap_forms() {
        assert_eq!("v{}".parse::<VMap>().unwrap(), VMap::trivial());
        assert_eq!("z@1".parse::<VMap>().unwrap(), z(1));
        assert_eq!("v{ 2, -1 }".parse::<VMap>().unwrap().to_string(), "v{-1,2}");
        assert!("v{1,1}".parse::<VMap>().is_err());
    }

    #[test]
    fn gelement_forms() {
        let g: GElement = "g@2[v{-1,0}; (-2 -1)]".parse().unwrap();
        assert_eq!(g.to_string(), "g@2[v{-1,0}; (-2 -1)]");
        let zi: GElement = "g@2[z@2; ()]".parse().unwrap();
        assert_eq!(zi, GElement::central_z(2));
        let err = "g@1[v{2}; ()]".parse::<GElement>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn word_forms() {
        let w: Word = "w@2[ A:g@2[v{-1,0}; (-2 -1)] ; B:g@3[v{-2,-1}; (-3 -2)] ]"
            .parse()
            .unwrap();
        assert_eq!(
            w.to_string(),
            "w@2[A:g@2[v{-1,0}; (-2 -1)]; B:g@3[v{-2,-1}; (-3 -2)]]"
        );
        let e = parse_expr("w@2[A:g@2[v{-1,0}; (-2 -1)]; A:inv(g@2[v{-1,0}; (-2 -1)])]").unwrap();
        assert_eq!(e.to_string(), "w@2[]");
        assert!("w@2[A:g@3[v{}; ()]]".parse::<Word>().is_err());
    }

    #[test]
    fn errors_carry_position() {
        match parse_expr("(0 1) x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("").is_err());
        assert!(parse_expr("(0 1").is_err());
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..10_000 {
            let i = rand::Rng::random_range(&mut rng, 1..=4);
            let g = random_g(&mut rng, i);
            assert_eq!(g.to_string().parse::<GElement>().unwrap(), g);
            assert_eq!(
                g.h().to_string().parse::<ShiftedPermutation>().unwrap(),
                *g.h()
            );
            assert_eq!(g.v().to_string().parse::<VMap>().unwrap(), *g.v());
        }
    }

    proptest! {
        #[test]
        fn perm_round_trip(images in Just((-4i64..=4).collect::<Vec<_>>()).prop_shuffle(), k in -5i64..=5) {
            let pairs = (-4i64..=4).zip(images);
            let finite = crate::perm::FinitePermutation::from_pairs(pairs).unwrap();
            let h = ShiftedPermutation::new(k, finite);
            let text = h.to_string();
            prop_assert_eq!(text.parse::<ShiftedPermutation>().unwrap(), h.clone());
            prop_assert_eq!(parse_expr(&text).unwrap().to_string(), text);
        }
    }
}
