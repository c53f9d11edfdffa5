//! The mapping-class generator alphabet, a small word DSL, and word
//! operations.
//!
//! Words are the portable representation of mapping classes here: the twist
//! letters `Ta<i>`, `Tb<i>`, `Tc<i>`, the hyperelliptic involution `iota`,
//! bounding-pair letters `F<i>` (Torelli elements, trivial on homology), and
//! sphere-braid letters `s<i>`. A word evaluates to the product of its letter
//! matrices in word order, with the rightmost letter acting first on column
//! vectors.
//!
//! Grammar: letters are tokens like `Ta1`, `Tb2^-3`, `iota`, `F2`, `s4`, with
//! an optional `^<int>` exponent (zero rejected), plus parenthesized groups
//! with group exponents, e.g. `(Ta1 Tb1)^3 (Ta2 Tb2)^-3`. Canonical printing
//! emits `Sym^e` with `^1` omitted.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{IntMatrix, MatrixError, ResidueMatrix};

/// Hard cap on the letter count produced by group-exponent expansion.
const MAX_EXPANSION: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("index out of range at offset {offset}: {symbol} (valid range 1..={max})")]
    IndexOutOfRange { offset: usize, symbol: String, max: usize },
    #[error("exponent zero at offset {offset}")]
    ExponentZero { offset: usize },
    #[error("group expansion exceeds {MAX_EXPANSION} letters")]
    ExpansionTooLarge,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("braid letter {0} has no symplectic image; lift it through the hyperelliptic correspondence first")]
    BraidLetter(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A single generator symbol. Index conventions (genus context `g`):
/// `Ta`/`Tb` for `1..=g`, `Tc` and `F` for `1..=g-1`, `Sigma` for
/// `1..=2g+1` on `2g+2` strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSymbol {
    /// Left-handed Dehn twist about `a_i`.
    Ta(usize),
    /// Left-handed Dehn twist about `b_i`.
    Tb(usize),
    /// Left-handed Dehn twist about the chain curve `c_i`.
    Tc(usize),
    /// The hyperelliptic involution; acts as `-I` on homology.
    Iota,
    /// Bounding-pair map of genus `i+1` through the first handle; trivial on
    /// homology.
    F(usize),
    /// Sphere-braid half twist exchanging marked points `i`, `i+1`.
    Sigma(usize),
}

impl GeneratorSymbol {
    /// Checks index bounds for the given genus context.
    pub fn validate(&self, genus: usize) -> Result<(), WordError> {
        let out_of_range = |max: usize| WordError::IndexOutOfRange {
            offset: 0,
            symbol: self.to_string(),
            max,
        };
        match *self {
            GeneratorSymbol::Ta(i) | GeneratorSymbol::Tb(i) => {
                if i == 0 || i > genus {
                    return Err(out_of_range(genus));
                }
            }
            GeneratorSymbol::Tc(i) | GeneratorSymbol::F(i) => {
                if i == 0 || genus < 2 || i > genus - 1 {
                    return Err(out_of_range(genus.saturating_sub(1)));
                }
            }
            GeneratorSymbol::Sigma(i) => {
                if i == 0 || i > 2 * genus + 1 {
                    return Err(out_of_range(2 * genus + 1));
                }
            }
            GeneratorSymbol::Iota => {}
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSymbol::Ta(i) => write!(f, "Ta{i}"),
            GeneratorSymbol::Tb(i) => write!(f, "Tb{i}"),
            GeneratorSymbol::Tc(i) => write!(f, "Tc{i}"),
            GeneratorSymbol::Iota => write!(f, "iota"),
            GeneratorSymbol::F(i) => write!(f, "F{i}"),
            GeneratorSymbol::Sigma(i) => write!(f, "s{i}"),
        }
    }
}

/// A word over the generator alphabet in a fixed genus context. Letters carry
/// nonzero arbitrary-precision exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    genus: usize,
    letters: Vec<(GeneratorSymbol, BigInt)>,
}

impl Word {
    pub fn empty(genus: usize) -> Self {
        Word { genus, letters: Vec::new() }
    }

    pub fn new(genus: usize, letters: Vec<(GeneratorSymbol, BigInt)>) -> Result<Self, WordError> {
        for (sym, exp) in &letters {
            sym.validate(genus)?;
            if exp.is_zero() {
                return Err(WordError::ExponentZero { offset: 0 });
            }
        }
        Ok(Word { genus, letters })
    }

    /// Builds a word from machine-integer exponents; panics on invalid input.
    /// Intended for literals in code and tests.
    pub fn from_letters(genus: usize, letters: &[(GeneratorSymbol, i64)]) -> Self {
        Word::new(
            genus,
            letters.iter().map(|&(s, e)| (s, BigInt::from(e))).collect(),
        )
        .expect("invalid word literal")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[(GeneratorSymbol, BigInt)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, sym: GeneratorSymbol, exp: BigInt) -> Result<(), WordError> {
        sym.validate(self.genus)?;
        if exp.is_zero() {
            return Err(WordError::ExponentZero { offset: 0 });
        }
        self.letters.push((sym, exp));
        Ok(())
    }

    /// Reversal rule: `(u v)^-1 = v^-1 u^-1`.
    pub fn invert(&self) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|(s, e)| (*s, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.genus != other.genus {
            return Err(WordError::GenusMismatch(self.genus, other.genus));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Word { genus: self.genus, letters })
    }

    /// Cancels adjacent letters with the same symbol by summing exponents,
    /// dropping letters whose exponent becomes zero.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<(GeneratorSymbol, BigInt)> = Vec::with_capacity(self.letters.len());
        for (sym, exp) in &self.letters {
            match out.last_mut() {
                Some((last, acc)) if last == sym => {
                    *acc += exp;
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((*sym, exp.clone())),
            }
        }
        Word { genus: self.genus, letters: out }
    }

    /// Evaluates to the exact symplectic image: the product of letter matrices
    /// in word order. Bounding-pair letters evaluate to the identity; braid
    /// letters are rejected.
    pub fn evaluate(&self) -> Result<IntMatrix, WordError> {
        let n = 2 * self.genus;
        let mut acc = IntMatrix::identity(n);
        for (sym, exp) in &self.letters {
            let m = crate::generators::symbol_power(*sym, exp, self.genus)?;
            acc = acc.mul(&m)?;
        }
        Ok(acc)
    }

    /// Evaluates modulo `k`; avoids big-integer growth in long sweeps.
    pub fn evaluate_mod(&self, k: u64) -> Result<ResidueMatrix, WordError> {
        let n = 2 * self.genus;
        let mut acc = ResidueMatrix::identity(n, k)?;
        // Exponents reduce mod 2k: transvection powers only depend on the
        // exponent mod k, the involution only on its parity.
        let modulus = BigInt::from(2 * k);
        for (sym, exp) in &self.letters {
            let e = num_integer::Integer::mod_floor(exp, &modulus);
            let m = crate::generators::symbol_power(*sym, &e, self.genus)?.mod_reduce(k)?;
            acc = acc.mul(&m)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sym, exp)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if exp.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Parses the word DSL in a genus context. Parentheses are expanded
/// structurally; no free reduction is applied.
pub fn parse_word(text: &str, genus: usize) -> Result<Word, WordError> {
    let letters = Parser::new(text, SymbolContext::Mcg { genus }).parse()?;
    Ok(Word { genus, letters })
}

/// Parses a braid-only word on `strands` strands: letters `s<i>` with
/// `1 <= i <= strands-1`.
pub(crate) fn parse_braid_letters(
    text: &str,
    strands: usize,
) -> Result<Vec<(usize, BigInt)>, WordError> {
    let letters = Parser::new(text, SymbolContext::Braid { strands }).parse()?;
    Ok(letters
        .into_iter()
        .map(|(sym, exp)| match sym {
            GeneratorSymbol::Sigma(i) => (i, exp),
            _ => unreachable!("braid context only admits sigma letters"),
        })
        .collect())
}

#[derive(Clone, Copy)]
enum SymbolContext {
    Mcg { genus: usize },
    Braid { strands: usize },
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ctx: SymbolContext,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ctx: SymbolContext) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0, ctx }
    }

    fn parse(mut self) -> Result<Vec<(GeneratorSymbol, BigInt)>, WordError> {
        let letters = self.sequence(0)?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(letters)
    }

    fn err(&self, message: &str) -> WordError {
        WordError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn sequence(&mut self, depth: usize) -> Result<Vec<(GeneratorSymbol, BigInt)>, WordError> {
        let mut out: Vec<(GeneratorSymbol, BigInt)> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b')') => {
                    if depth == 0 {
                        return Err(self.err("unmatched ')'"));
                    }
                    return Ok(out);
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    let exp = self.optional_exponent()?;
                    self.expand_group(&mut out, inner, &exp)?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (sym, start) = self.symbol()?;
                    let exp = self.optional_exponent()?;
                    if exp.is_zero() {
                        return Err(WordError::ExponentZero { offset: start });
                    }
                    out.push((sym, exp));
                }
                Some(_) => return Err(self.err("expected a generator symbol or '('")),
            }
            if out.len() > MAX_EXPANSION {
                return Err(WordError::ExpansionTooLarge);
            }
        }
    }

    fn symbol(&mut self) -> Result<(GeneratorSymbol, usize), WordError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        let idx_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let idx_str = &self.text[idx_start..self.pos];
        let index = || -> Result<usize, WordError> {
            idx_str.parse::<usize>().map_err(|_| WordError::Parse {
                offset: idx_start,
                message: format!("symbol '{name}' needs a numeric index"),
            })
        };
        let sym = match name {
            "Ta" => GeneratorSymbol::Ta(index()?),
            "Tb" => GeneratorSymbol::Tb(index()?),
            "Tc" => GeneratorSymbol::Tc(index()?),
            "F" => GeneratorSymbol::F(index()?),
            "s" => GeneratorSymbol::Sigma(index()?),
            "iota" => {
                if !idx_str.is_empty() {
                    return Err(WordError::Parse {
                        offset: idx_start,
                        message: "'iota' takes no index".to_string(),
                    });
                }
                GeneratorSymbol::Iota
            }
            _ => {
                return Err(WordError::Parse {
                    offset: start,
                    message: format!("unknown symbol '{name}'"),
                })
            }
        };
        self.check_symbol(&sym, start)?;
        Ok((sym, start))
    }

    fn check_symbol(&self, sym: &GeneratorSymbol, offset: usize) -> Result<(), WordError> {
        match self.ctx {
            SymbolContext::Mcg { genus } => sym.validate(genus).map_err(|e| match e {
                WordError::IndexOutOfRange { symbol, max, .. } => {
                    WordError::IndexOutOfRange { offset, symbol, max }
                }
                other => other,
            }),
            SymbolContext::Braid { strands } => match sym {
                GeneratorSymbol::Sigma(i) => {
                    if *i == 0 || *i + 1 > strands {
                        Err(WordError::IndexOutOfRange {
                            offset,
                            symbol: sym.to_string(),
                            max: strands - 1,
                        })
                    } else {
                        Ok(())
                    }
                }
                _ => Err(WordError::Parse {
                    offset,
                    message: format!("braid words admit only s<i> letters, got '{sym}'"),
                }),
            },
        }
    }

    /// Parses `^<int>` if present; defaults to 1.
    fn optional_exponent(&mut self) -> Result<BigInt, WordError> {
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            self.pos = save;
            return Ok(BigInt::one());
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && !self.bytes[start].is_ascii_digit()) {
            return Err(WordError::Parse {
                offset: start,
                message: "expected an integer exponent after '^'".to_string(),
            });
        }
        BigInt::parse_bytes(&self.bytes[start..self.pos], 10).ok_or(WordError::Parse {
            offset: start,
            message: "invalid integer exponent".to_string(),
        })
    }

    fn expand_group(
        &self,
        out: &mut Vec<(GeneratorSymbol, BigInt)>,
        inner: Vec<(GeneratorSymbol, BigInt)>,
        exp: &BigInt,
    ) -> Result<(), WordError> {
        if exp.is_zero() {
            return Err(WordError::ExponentZero { offset: self.pos });
        }
        let reps = usize::try_from(exp.magnitude()).map_err(|_| WordError::ExpansionTooLarge)?;
        if inner
            .len()
            .checked_mul(reps)
            .map(|total| total + out.len() > MAX_EXPANSION)
            .unwrap_or(true)
        {
            return Err(WordError::ExpansionTooLarge);
        }
        if exp.is_negative() {
            let inverted: Vec<_> = inner.iter().rev().map(|(s, e)| (*s, -e)).collect();
            for _ in 0..reps {
                out.extend(inverted.iter().cloned());
            }
        } else {
            for _ in 0..reps {
                out.extend(inner.iter().cloned());
            }
        }
        Ok(())
    }
}
