//! Finite group presentations and free-group word algebra.
//!
//! The surface syntax is `< gens | relators >`, e.g. `< x, y | x^3, y^2, (x y)^2 >`.
//! Letters may carry integer exponents (never zero, possibly negative),
//! parentheses group subwords, and a `*` between factors is accepted and
//! ignored.  Relators are stored cyclically reduced; a relator that reduces
//! away entirely is dropped.  Both normalizations are reported as warnings
//! rather than silently applied.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Orientation of a single letter: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One letter of a free-group word: a generator index together with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn positive(generator: usize) -> Letter {
        Letter { generator, sign: Sign::Pos }
    }

    pub fn negative(generator: usize) -> Letter {
        Letter { generator, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, sign: self.sign.flipped() }
    }

    /// True when `self` and `other` cancel as adjacent letters.
    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// A word in the free group on the presentation's generators.  Words are
/// plain letter sequences; no reduction is applied implicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancel adjacent inverse pairs until none remain.  Single stack pass,
    /// so linear in the word length.
    pub fn free_reduced(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// The inverse word: letters reversed, each sign flipped.
    pub fn inverted(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Freely reduce, then strip cancelling first/last pairs.  The result
    /// is the canonical representative used for stored relators.
    pub fn cyclically_reduced(&self) -> Word {
        let mut letters = self.free_reduced().letters;
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().expect("nonempty");
            if first.cancels(last) {
                letters.pop();
                letters.remove(0);
            } else {
                break;
            }
        }
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self` repeated `exponent` times; negative exponents repeat the
    /// inverse.  `exponent` must be nonzero (the grammar forbids `^0`).
    pub fn pow(&self, exponent: i64) -> Word {
        assert!(exponent != 0, "zero exponent has no word form");
        let base = if exponent > 0 { self.clone() } else { self.inverted() };
        let mut out = Word::empty();
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Render with the given generator names, e.g. `x y^-1 x`.
    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            let name = &names[letter.generator];
            match letter.sign {
                Sign::Pos => parts.push(name.clone()),
                Sign::Neg => parts.push(format!("{name}^-1")),
            }
        }
        parts.join(" ")
    }
}

/// A normalization applied to the input while constructing a
/// [`Presentation`].  Warnings never change the group being presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    /// Cyclic reduction shortened relator `index` (0-based, counting the
    /// relators as written, before any were dropped).
    RelatorReduced { index: usize, original: String, reduced: String },
    /// Relator `index` reduced to the empty word and was dropped.
    RelatorDropped { index: usize, original: String },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::RelatorReduced { index, original, reduced } => {
                write!(f, "relator {index} `{original}` stored cyclically reduced as `{reduced}`")
            }
            ParseWarning::RelatorDropped { index, original } => {
                write!(f, "relator {index} `{original}` reduces to the empty word and was dropped")
            }
        }
    }
}

/// A finite presentation: named generators and cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Build a presentation from parts, applying the same normalization and
    /// validation as the parser: generator names must be distinct and
    /// nonempty, relator letters must be in range, and every stored relator
    /// comes out cyclically reduced and nonempty.
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<(Presentation, Vec<ParseWarning>)> {
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for name in &generator_names {
            if name.is_empty() {
                return Err(Error::Syntax { position: 0, expected: "generator name".into() });
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let mut warnings = Vec::new();
        let mut stored = Vec::with_capacity(relators.len());
        for (index, relator) in relators.into_iter().enumerate() {
            for letter in relator.letters() {
                if letter.generator >= generator_names.len() {
                    return Err(Error::UnknownGenerator(format!("#{}", letter.generator)));
                }
            }
            let reduced = relator.cyclically_reduced();
            if reduced.is_empty() {
                warnings.push(ParseWarning::RelatorDropped {
                    index,
                    original: relator.display(&generator_names),
                });
            } else {
                if reduced != relator {
                    warnings.push(ParseWarning::RelatorReduced {
                        index,
                        original: relator.display(&generator_names),
                        reduced: reduced.display(&generator_names),
                    });
                }
                stored.push(reduced);
            }
        }
        Ok((Presentation { generator_names, relators: stored }, warnings))
    }

    /// Parse the `< gens | relators >` surface syntax.
    pub fn parse(text: &str) -> Result<(Presentation, Vec<ParseWarning>)> {
        Parser::new(text)?.presentation()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn display_word(&self, word: &Word) -> String {
        word.display(&self.generator_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generator_names.join(", "))?;
        let rendered: Vec<String> =
            self.relators.iter().map(|r| r.display(&self.generator_names)).collect();
        write!(f, "{} >", rendered.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Lt,
    Gt,
    Pipe,
    Comma,
    Caret,
    LParen,
    RParen,
    Star,
    Ident(String),
    Int(i64),
    End,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    names: Vec<String>,
    index_of: HashMap<String, usize>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser { tokens: lex(text)?, pos: 0, names: Vec::new(), index_of: HashMap::new() })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn here(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: Token, expected: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::Syntax { position: self.here(), expected: expected.to_string() })
        }
    }

    fn presentation(&mut self) -> Result<(Presentation, Vec<ParseWarning>)> {
        self.expect(Token::Lt, "`<`")?;
        loop {
            match self.bump() {
                Token::Ident(name) => {
                    if self.index_of.contains_key(&name) {
                        return Err(Error::DuplicateGenerator(name));
                    }
                    self.index_of.insert(name.clone(), self.names.len());
                    self.names.push(name);
                }
                _ => {
                    return Err(Error::Syntax {
                        position: self.tokens[self.pos.saturating_sub(1)].1,
                        expected: "generator name".into(),
                    })
                }
            }
            if *self.peek() == Token::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Token::Pipe, "`|`")?;
        let mut relators = Vec::new();
        if *self.peek() != Token::Gt {
            loop {
                relators.push(self.word()?);
                if *self.peek() == Token::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Token::Gt, "`>`")?;
        if *self.peek() != Token::End {
            return Err(Error::Syntax { position: self.here(), expected: "end of input".into() });
        }
        Presentation::new(std::mem::take(&mut self.names), relators)
    }

    /// word := factor+ with optional `*` between factors.
    fn word(&mut self) -> Result<Word> {
        let mut out = self.factor()?;
        loop {
            if *self.peek() == Token::Star {
                self.bump();
                // after an explicit `*` a factor is mandatory
                out = out.concat(&self.factor()?);
                continue;
            }
            match self.peek() {
                Token::Ident(_) | Token::LParen => out = out.concat(&self.factor()?),
                _ => break,
            }
        }
        Ok(out)
    }

    /// factor := atom ("^" integer)?, integer nonzero.
    fn factor(&mut self) -> Result<Word> {
        let atom = match self.bump() {
            Token::Ident(name) => match self.index_of.get(&name) {
                Some(&index) => Word::new(vec![Letter::positive(index)]),
                None => return Err(Error::UnknownGenerator(name)),
            },
            Token::LParen => {
                let inner = self.word()?;
                self.expect(Token::RParen, "`)`")?;
                inner
            }
            _ => {
                return Err(Error::Syntax {
                    position: self.tokens[self.pos.saturating_sub(1)].1,
                    expected: "generator or `(`".into(),
                })
            }
        };
        if *self.peek() == Token::Caret {
            self.bump();
            let position = self.here();
            match self.bump() {
                Token::Int(0) => {
                    Err(Error::Syntax { position, expected: "nonzero exponent".into() })
                }
                Token::Int(k) => Ok(atom.pow(k)),
                _ => Err(Error::Syntax { position, expected: "integer exponent".into() }),
            }
        } else {
            Ok(atom)
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'<' => {
                tokens.push((Token::Lt, start));
                i += 1;
            }
            b'>' => {
                tokens.push((Token::Gt, start));
                i += 1;
            }
            b'|' => {
                tokens.push((Token::Pipe, start));
                i += 1;
            }
            b',' => {
                tokens.push((Token::Comma, start));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Caret, start));
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, start));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, start));
                i += 1;
            }
            b'*' => {
                tokens.push((Token::Star, start));
                i += 1;
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                if b == b'-' && (i >= bytes.len() || !bytes[i].is_ascii_digit()) {
                    return Err(Error::Syntax { position: start, expected: "digit after `-`".into() });
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let literal = &text[start..i];
                let value: i64 = literal.parse().map_err(|_| Error::Syntax {
                    position: start,
                    expected: "integer that fits in 64 bits".into(),
                })?;
                tokens.push((Token::Int(value), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    expected: "one of `< > | , ^ ( ) *`, a name, or an integer".into(),
                })
            }
        }
    }
    tokens.push((Token::End, bytes.len()));
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(letters: &[(usize, Sign)]) -> Word {
        Word::new(letters.iter().map(|&(g, sign)| Letter { generator: g, sign }).collect())
    }

    #[test]
    fn parses_single_generator_square() {
        let (p, warnings) = Presentation::parse("< x | x^2 >").unwrap();
        assert_eq!(p.generator_names(), ["x".to_string()]);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0], word(&[(0, Sign::Pos), (0, Sign::Pos)]));
        assert!(warnings.is_empty());
    }

    #[test]
    fn parses_symmetric_group_presentation() {
        let (p, warnings) = Presentation::parse("<x,y|x^3, y^2, (x y)^2>").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.display_word(&p.relators()[2]), "x y x y");
        assert!(warnings.is_empty());
    }

    #[test]
    fn free_group_has_no_relators() {
        let (p, _) = Presentation::parse("< a, b | >").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn star_between_factors_is_ignored() {
        let (starred, _) = Presentation::parse("< x, y | x*y*x^-1*y^-1 >").unwrap();
        let (plain, _) = Presentation::parse("< x, y | x y x^-1 y^-1 >").unwrap();
        assert_eq!(starred.relators(), plain.relators());
    }

    #[test]
    fn negative_exponents_and_nesting() {
        let (p, _) = Presentation::parse("< a, b | ((a b)^2 b)^-1 >").unwrap();
        // (a b a b b)^-1 = b^-1 b^-1 a^-1 b^-1 a^-1
        assert_eq!(p.display_word(&p.relators()[0]), "b^-1 b^-1 a^-1 b^-1 a^-1");
    }

    #[test]
    fn relator_is_stored_cyclically_reduced_with_warning() {
        let (p, warnings) = Presentation::parse("< x | x x^-1 x^2 >").unwrap();
        assert_eq!(p.display_word(&p.relators()[0]), "x x");
        assert_eq!(warnings.len(), 1);
        match &warnings[0] {
            ParseWarning::RelatorReduced { index, .. } => assert_eq!(*index, 0),
            other => panic!("unexpected warning {other:?}"),
        }
    }

    #[test]
    fn trivial_relator_is_dropped_with_warning() {
        let (p, warnings) = Presentation::parse("< x | x x^-1, x^2 >").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert!(matches!(warnings[0], ParseWarning::RelatorDropped { index: 0, .. }));
    }

    #[test]
    fn conjugated_relator_cyclically_reduces() {
        // y (x y) y^-1 cyclically reduces to x y (rotate, do not just shrink)
        let (p, warnings) = Presentation::parse("< x, y | y x y y^-1 >").unwrap();
        assert_eq!(p.display_word(&p.relators()[0]), "y x");
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn duplicate_generator_is_rejected() {
        assert_eq!(
            Presentation::parse("< x, x | >").unwrap_err(),
            Error::DuplicateGenerator("x".into())
        );
    }

    #[test]
    fn unknown_generator_is_rejected() {
        assert_eq!(
            Presentation::parse("< x | y^2 >").unwrap_err(),
            Error::UnknownGenerator("y".into())
        );
    }

    #[test]
    fn zero_exponent_is_rejected() {
        match Presentation::parse("< x | x^0 >").unwrap_err() {
            Error::Syntax { expected, .. } => assert!(expected.contains("nonzero")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        // The closing `>` is missing; the error points one past the end of
        // the nine-byte input, where the delimiter should have appeared.
        match Presentation::parse("< x | x^2").unwrap_err() {
            Error::Syntax { position, expected } => {
                assert_eq!(position, 9);
                assert_eq!(expected, "`>`");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn garbage_character_is_a_syntax_error() {
        assert!(matches!(Presentation::parse("< x | x$ >"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn free_reduction_examples() {
        let w = word(&[(0, Sign::Pos), (0, Sign::Neg), (1, Sign::Pos)]);
        assert_eq!(w.free_reduced(), word(&[(1, Sign::Pos)]));
        let nested = word(&[(0, Sign::Pos), (1, Sign::Pos), (1, Sign::Neg), (0, Sign::Neg)]);
        assert!(nested.free_reduced().is_empty());
    }

    #[test]
    fn cyclic_reduction_strips_matching_ends() {
        // x y x^-1 -> y
        let w = word(&[(0, Sign::Pos), (1, Sign::Pos), (0, Sign::Neg)]);
        assert_eq!(w.cyclically_reduced(), word(&[(1, Sign::Pos)]));
    }

    fn arb_letter(generators: usize) -> impl Strategy<Value = Letter> {
        (0..generators, prop::bool::ANY).prop_map(|(generator, neg)| Letter {
            generator,
            sign: if neg { Sign::Neg } else { Sign::Pos },
        })
    }

    fn arb_word(generators: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_letter(generators), 0..max_len).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn free_reduction_is_idempotent(w in arb_word(3, 40)) {
            let once = w.free_reduced();
            prop_assert!(once.is_freely_reduced());
            prop_assert_eq!(once.free_reduced(), once);
        }

        #[test]
        fn word_times_inverse_reduces_to_identity(w in arb_word(3, 30)) {
            prop_assert!(w.concat(&w.inverted()).free_reduced().is_empty());
            prop_assert!(w.inverted().concat(&w).free_reduced().is_empty());
        }

        #[test]
        fn inversion_is_an_involution(w in arb_word(4, 30)) {
            prop_assert_eq!(w.inverted().inverted(), w);
        }

        #[test]
        fn cyclic_reduction_never_grows(w in arb_word(3, 40)) {
            let reduced = w.cyclically_reduced();
            prop_assert!(reduced.len() <= w.free_reduced().len());
            prop_assert!(reduced.is_freely_reduced());
            // stable under another pass
            prop_assert_eq!(reduced.cyclically_reduced(), reduced);
        }

        #[test]
        fn concat_length_adds(a in arb_word(3, 20), b in arb_word(3, 20)) {
            prop_assert_eq!(a.concat(&b).len(), a.len() + b.len());
        }
    }
}
