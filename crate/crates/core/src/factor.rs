//! Constructive factorization of stabilizer and liftable symplectic matrices
//! over the mixed generating set: congruence-subgroup letters on the first
//! handle plus twist letters on the others.
//!
//! The engine clears one handle at a time. For the leading handle it uses a
//! congruence-aware Bezout completion of the first column, a constrained
//! two-term Bezout step giving a block in the congruence subgroup, and six
//! families of elementary clearing multipliers
//! `m1..m6`; `m4`, `m5`, `m6` individually move `e_1` mod `k`, so they are
//! only ever applied in exponents divisible by `k`, which the step trace
//! records and asserts. Remaining handles carry no congruence constraint and
//! are cleared by the same multiplier families built purely from twist
//! letters; non-adjacent handle pairs are reached by conjugating with
//! block-swap words, themselves factored through the adjacent-pair engine.
//! The residual 2x2 block on the last handle is decomposed by the Euclidean
//! algorithm.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{bezout_vector, ext_gcd, gcd_slice, is_prime, mod_inverse, ArithError};
use crate::gamma1::{gamma1_contains, sl2_decompose, unit_coset_words, Gamma1Error};
use crate::generators::{eta_embed, regenus, symbol_power, GensError};
use crate::lifting::{lmod_contains, stab_e1_contains, CoverParams, LiftError, Witness};
use crate::matrix::{IntMatrix, MatrixError};
use crate::words::{GeneratorSymbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("input is not a member: {0}")]
    NotMember(String),
    #[error("column is not primitive (gcd {0})")]
    GcdNotOne(BigInt),
    #[error("constrained Bezout precondition failed: {0}")]
    BezoutPrecondition(String),
    #[error("internal assertion failed: {message}")]
    InternalAssertion { message: String, trace: Vec<TraceStep> },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Gamma1(#[from] Gamma1Error),
    #[error(transparent)]
    Gens(#[from] GensError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// One multiplier application in the reduction, named by family:
/// `m1..m6`, `shear` (first-handle twist powers), `coset` (the unit coset
/// prefix), and `residual` (the final 2x2 block). `base` is the handle being
/// cleared and `target` the helper handle (0 when not applicable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub name: &'static str,
    pub base: usize,
    pub target: usize,
    pub exponent: BigInt,
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name)?;
        if self.base != 0 {
            write!(f, "[h{}", self.base)?;
            if self.target != 0 {
                write!(f, "->h{}", self.target)?;
            }
            write!(f, "]")?;
        }
        write!(f, "^{}", self.exponent)
    }
}

/// A letter of a factorization word: either a twist generator power away from
/// the congruence handle, an opaque congruence-subgroup element with a twist
/// witness word over `{Ta1, Tb1}`, or the distinguished unit coset prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorLetter {
    Twist { sym: GeneratorSymbol, exp: BigInt },
    Gamma1 { matrix: IntMatrix, witness: Word },
    CosetRep { unit: u64, word: Word },
}

impl FactorLetter {
    pub fn matrix(&self, genus: usize) -> Result<IntMatrix, FactorError> {
        match self {
            FactorLetter::Twist { sym, exp } => Ok(symbol_power(*sym, exp, genus)?),
            FactorLetter::Gamma1 { matrix, .. } => Ok(eta_embed(matrix, genus)?),
            FactorLetter::CosetRep { word, .. } => Ok(regenus(word, genus)?.evaluate()?),
        }
    }

    fn inverse(&self) -> Result<FactorLetter, FactorError> {
        Ok(match self {
            FactorLetter::Twist { sym, exp } => FactorLetter::Twist { sym: *sym, exp: -exp },
            FactorLetter::Gamma1 { matrix, witness } => FactorLetter::Gamma1 {
                matrix: matrix.inverse()?,
                witness: witness.invert(),
            },
            FactorLetter::CosetRep { .. } => {
                unreachable!("coset representatives are never inverted")
            }
        })
    }
}

impl std::fmt::Display for FactorLetter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FactorLetter::Twist { sym, exp } => {
                if exp.is_one() {
                    write!(f, "{sym}")
                } else {
                    write!(f, "{sym}^{exp}")
                }
            }
            FactorLetter::Gamma1 { matrix, .. } => write!(f, "G[{matrix}]"),
            FactorLetter::CosetRep { unit, word } => write!(f, "R{unit}({word})"),
        }
    }
}

/// Result of a factorization: the input, the detected unit (1 for stabilizer
/// members), the word over the generating alphabet, and the multiplier trace.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub input: IntMatrix,
    pub genus: usize,
    pub sheets: u64,
    pub unit: u64,
    pub letters: Vec<FactorLetter>,
    pub trace: Vec<TraceStep>,
}

impl FactorizationResult {
    /// Exact product of the letter matrices; must equal the input.
    pub fn evaluate(&self) -> Result<IntMatrix, FactorError> {
        let mut acc = IntMatrix::identity(2 * self.genus);
        for letter in &self.letters {
            acc = acc.mul(&letter.matrix(self.genus)?)?;
        }
        Ok(acc)
    }

    /// Checks alphabet soundness: congruence letters pass membership with
    /// witness words re-evaluating exactly, twist letters stay off the first
    /// handle, and at most one coset prefix opens the word.
    pub fn verify_alphabet(&self) -> Result<(), FactorError> {
        for (i, letter) in self.letters.iter().enumerate() {
            match letter {
                FactorLetter::Twist { sym, .. } => match sym {
                    GeneratorSymbol::Ta(i) | GeneratorSymbol::Tb(i) if *i >= 2 => {}
                    GeneratorSymbol::Tc(_) => {}
                    other => {
                        return Err(FactorError::InternalAssertion {
                            message: format!("twist letter {other} is outside the alphabet"),
                            trace: self.trace.clone(),
                        })
                    }
                },
                FactorLetter::Gamma1 { matrix, witness } => {
                    if !gamma1_contains(matrix, self.sheets)? {
                        return Err(FactorError::InternalAssertion {
                            message: format!(
                                "congruence letter {matrix} fails membership mod {}",
                                self.sheets
                            ),
                            trace: self.trace.clone(),
                        });
                    }
                    if witness.evaluate()? != *matrix {
                        return Err(FactorError::InternalAssertion {
                            message: "witness word does not evaluate to its letter".into(),
                            trace: self.trace.clone(),
                        });
                    }
                }
                FactorLetter::CosetRep { .. } => {
                    if i != 0 {
                        return Err(FactorError::InternalAssertion {
                            message: "coset representative must be the leading letter".into(),
                            trace: self.trace.clone(),
                        });
                    }
                }
            }
        }
        for step in &self.trace {
            if matches!(step.name, "m4" | "m5" | "m6") && step.base == 1 {
                let k = BigInt::from(self.sheets);
                if !(&step.exponent % &k).is_zero() {
                    return Err(FactorError::InternalAssertion {
                        message: format!("{step} applied with exponent not divisible by {k}"),
                        trace: self.trace.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Bezout completion of a primitive integer vector `a`: returns `b` with
/// `a . b = 1` and `gcd(b_1, b_2) = 1`. When `modulus` is given and
/// `a = e_1 mod k`, the leading coefficient satisfies `b_1 = 1 mod k` (this
/// follows from the dot product and is asserted).
///
/// The general case scans an arithmetic progression for a prime witness;
/// degenerate tails short-circuit to direct completions.
pub fn primitive_completion(a: &[BigInt], modulus: Option<u64>) -> Result<Vec<BigInt>, FactorError> {
    let n = a.len();
    assert!(n >= 2, "completion needs at least two coordinates");
    let g = gcd_slice(a);
    if !g.is_one() {
        return Err(FactorError::GcdNotOne(g));
    }
    let result = completion_inner(a)?;

    let dot: BigInt = a.iter().zip(&result).map(|(x, y)| x * y).sum();
    if !dot.is_one() {
        return Err(FactorError::InternalAssertion {
            message: format!("completion dot product is {dot}, not 1"),
            trace: Vec::new(),
        });
    }
    let pair_gcd = gcd_slice(&result[..2]);
    if !pair_gcd.is_one() {
        return Err(FactorError::InternalAssertion {
            message: format!("leading pair has gcd {pair_gcd}"),
            trace: Vec::new(),
        });
    }
    if let Some(k) = modulus {
        let kk = BigInt::from(k);
        let congruent = num_integer::Integer::mod_floor(&a[0], &kk) == BigInt::from(1 % k)
            && a[1..]
                .iter()
                .all(|x| num_integer::Integer::mod_floor(x, &kk).is_zero());
        if congruent && num_integer::Integer::mod_floor(&result[0], &kk) != BigInt::from(1 % k) {
            return Err(FactorError::InternalAssertion {
                message: "leading coefficient is not 1 mod k on a congruent column".into(),
                trace: Vec::new(),
            });
        }
    }
    Ok(result)
}

fn completion_inner(a: &[BigInt]) -> Result<Vec<BigInt>, FactorError> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];

    // Zero tail: the head is a unit.
    if a[1..].iter().all(|x| x.is_zero()) {
        out[0] = a[0].clone();
        return Ok(out);
    }

    let delta = gcd_slice(&a[1..]);
    let (_, mut u1, mut u2) = ext_gcd(&a[0], &delta);
    if u2.is_zero() {
        // The head alone is a unit; keep the completion supported there.
        out[0] = u1;
        return Ok(out);
    }
    if u1.is_zero() {
        // Shift to a nonzero leading coefficient; needed for the prime bound.
        u1 += &delta;
        u2 -= &a[0];
    }

    let gamma = gcd_slice(&a[2..]);
    if gamma.is_zero() {
        // Only the first two coordinates are present.
        let (_, mut x, mut y) = ext_gcd(&a[0], &a[1]);
        if x.is_zero() {
            // Prefer a nonzero leading coefficient (shift by the kernel of
            // the Bezout relation).
            x += &a[1];
            y -= &a[0];
        }
        out[0] = x;
        out[1] = y;
        return Ok(out);
    }

    // b1 * (a_2/delta) + b2 * (gamma/delta) = 1.
    let (_, b1, b2) = ext_gcd(&(&a[1] / &delta), &(&gamma / &delta));
    let step = &gamma / &delta;
    let lower = u1.magnitude().clone();
    let mut chosen: Option<(BigInt, BigInt)> = None;
    for i in 0..1_000_000i64 {
        for n_try in if i == 0 { vec![0] } else { vec![i, -i] } {
            let beta1 = &b1 + BigInt::from(n_try) * &step;
            if beta1.is_positive() && beta1.magnitude() > &lower && is_prime(&beta1)? {
                let beta2 = &b2 - BigInt::from(n_try) * (&a[1] / &delta);
                chosen = Some((beta1, beta2));
                break;
            }
        }
        if chosen.is_some() {
            break;
        }
    }
    let Some((beta1, beta2)) = chosen else {
        return Err(FactorError::InternalAssertion {
            message: "prime scan exhausted".into(),
            trace: Vec::new(),
        });
    };

    let tail_bezout = bezout_vector(&a[2..])?;
    out[0] = u1;
    out[1] = &u2 * &beta1;
    let scale = &u2 * &beta2;
    for (slot, coeff) in out[2..].iter_mut().zip(tail_bezout) {
        *slot = &scale * &coeff;
    }
    Ok(out)
}

/// Constrained Bezout step: given coprime `l1, l2` with `l1 = 1 mod k`,
/// returns `(alpha1, alpha2)` with `l1 * alpha2 + l2 * alpha1 = 1` and
/// `alpha1 = 0 mod k`, so that the block `[[l1, l2], [-alpha1, alpha2]]`
/// lands in the congruence subgroup.
pub fn congruence_bezout(
    l1: &BigInt,
    l2: &BigInt,
    k: u64,
) -> Result<(BigInt, BigInt), FactorError> {
    let (g, _, _) = ext_gcd(l1, l2);
    if !g.is_one() {
        return Err(FactorError::BezoutPrecondition(format!(
            "gcd({l1}, {l2}) = {g}, expected 1"
        )));
    }
    let kk = BigInt::from(k);
    if num_integer::Integer::mod_floor(l1, &kk) != BigInt::from(1 % k) {
        return Err(FactorError::BezoutPrecondition(format!("{l1} is not 1 mod {k}")));
    }
    let (alpha1, alpha2);
    if l1.is_zero() {
        // Only reachable with k = 1 (where every residue is 0 = 1); the
        // partner is then a unit.
        alpha1 = l2.clone();
        alpha2 = BigInt::zero();
    } else if l1.magnitude().is_one() {
        alpha1 = BigInt::zero();
        alpha2 = l1.clone();
    } else {
        let modulus = BigInt::from(l1.magnitude().clone());
        let t = mod_inverse(&(l2 * &kk), &modulus).expect("coprimality checked");
        alpha1 = &kk * &t;
        let num = BigInt::one() - l2 * &alpha1;
        debug_assert!((&num % l1).is_zero());
        alpha2 = num / l1;
    }
    debug_assert!(num_integer::Integer::mod_floor(&alpha1, &kk).is_zero());
    debug_assert_eq!(l1 * &alpha2 + l2 * &alpha1, BigInt::one());
    Ok((alpha1, alpha2))
}

/// The six clearing multipliers for genus 2 as pinned constants, each with a
/// defining word whose evaluation reproduces it. `m1` is the embedded block
/// `[[l1, l2], [-alpha1, alpha2]]`.
pub struct MultiplierTables {
    pub matrices: [IntMatrix; 6],
    pub words: [Word; 6],
}

pub fn multiplier_tables(
    l1: &BigInt,
    l2: &BigInt,
    alpha1: &BigInt,
    alpha2: &BigInt,
) -> Result<MultiplierTables, FactorError> {
    if l1 * alpha2 + l2 * alpha1 != BigInt::one() {
        return Err(FactorError::BezoutPrecondition(
            "l1*alpha2 + l2*alpha1 must be 1".into(),
        ));
    }
    let block = IntMatrix::new(
        2,
        2,
        vec![l1.clone(), l2.clone(), -alpha1, alpha2.clone()],
    )?;
    let m1 = eta_embed(&block, 2)?;
    let w1 = regenus(&sl2_decompose(&block)?, 2)?;

    let parse = |s: &str| crate::words::parse_word(s, 2).expect("fixed defining word");
    let w2 = parse("Ta2 Ta1 Tc1^-1");
    let w3 = parse("(Ta2 Tb2 Ta2) Ta2 Ta1 Tc1^-1 (Ta2 Tb2 Ta2)^-1");
    let w4 = parse("Tb1^-1");
    let w5 = parse("Tb1^-1 Ta2^-1 (Ta2 Ta1 Tc1^-1) Tb1 (Ta2 Ta1 Tc1^-1)^-1");
    let w6 = parse("(Ta2 Tb2 Ta2) Tb1^-1 Ta2^-1 (Ta2 Ta1 Tc1^-1) Tb1 (Ta2 Ta1 Tc1^-1)^-1 (Ta2 Tb2 Ta2)^-1");

    let words = [w1, w2, w3, w4, w5, w6];
    let matrices = [
        m1,
        words[1].evaluate()?,
        words[2].evaluate()?,
        words[3].evaluate()?,
        words[4].evaluate()?,
        words[5].evaluate()?,
    ];
    Ok(MultiplierTables { matrices, words })
}

// --- the reduction engine -------------------------------------------------

/// Elementary multiplier families, by the row operations they perform (all
/// indices 1-based handles, `p` the handle being cleared, `q > p` a helper):
///
/// - `m2`: `x_{2p-1} += m x_{2q}`,   `x_{2q-1} += m x_{2p}`
/// - `m3`: `x_{2p-1} += m x_{2q-1}`, `x_{2q}   -= m x_{2p}`
/// - `m5`: `x_{2p}   += m x_{2q}`,   `x_{2q-1} -= m x_{2p-1}`
/// - `m6`: `x_{2p}   += m x_{2q-1}`, `x_{2q}   += m x_{2p-1}`
/// - `m4`: `x_{2p}   += m x_{2p-1}` (a twist power about `b_p`, inverted)
/// - `shear`: `x_{2p-1} += m x_{2p}` (a twist power about `a_p`)
#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    M2,
    M3,
    M5,
    M6,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::M2 => "m2",
            Family::M3 => "m3",
            Family::M5 => "m5",
            Family::M6 => "m6",
        }
    }

    /// The (row, column, sign) increments of `I + m N`.
    fn increments(self, p: usize, q: usize) -> [(usize, usize, i64); 2] {
        let (ap, bp, aq, bq) = (2 * p - 2, 2 * p - 1, 2 * q - 2, 2 * q - 1);
        match self {
            Family::M2 => [(ap, bq, 1), (aq, bp, 1)],
            Family::M3 => [(ap, aq, 1), (bq, bp, -1)],
            Family::M5 => [(bp, bq, 1), (aq, ap, -1)],
            Family::M6 => [(bp, aq, 1), (bq, ap, 1)],
        }
    }

    fn matrix(self, p: usize, q: usize, m: &BigInt, genus: usize) -> IntMatrix {
        let mut out = IntMatrix::identity(2 * genus);
        for (r, c, sign) in self.increments(p, q) {
            out.set(r, c, m * BigInt::from(sign));
        }
        out
    }
}

struct Reducer {
    genus: usize,
    sheets: u64,
    work: IntMatrix,
    applied: Vec<AppliedStep>,
    trace: Vec<TraceStep>,
    swap_cache: HashMap<usize, (IntMatrix, Vec<FactorLetter>)>,
}

struct AppliedStep {
    letters: Vec<FactorLetter>,
}

impl Reducer {
    fn new(input: &IntMatrix, genus: usize, sheets: u64) -> Self {
        Reducer {
            genus,
            sheets,
            work: input.clone(),
            applied: Vec::new(),
            trace: Vec::new(),
            swap_cache: HashMap::new(),
        }
    }

    fn fail(&self, message: impl Into<String>) -> FactorError {
        FactorError::InternalAssertion { message: message.into(), trace: self.trace.clone() }
    }

    fn entry(&self, row: usize, col: usize) -> BigInt {
        self.work.get(row, col).clone()
    }

    /// Records and applies a multiplier from the left.
    fn apply(
        &mut self,
        name: &'static str,
        base: usize,
        target: usize,
        exponent: BigInt,
        matrix: IntMatrix,
        letters: Vec<FactorLetter>,
    ) -> Result<(), FactorError> {
        if exponent.is_zero() || matrix.is_identity() {
            return Ok(());
        }
        #[cfg(debug_assertions)]
        {
            let mut acc = IntMatrix::identity(2 * self.genus);
            for l in &letters {
                acc = acc.mul(&l.matrix(self.genus)?)?;
            }
            debug_assert_eq!(acc, matrix, "letters of {name} disagree with its matrix");
        }
        self.work = matrix.mul(&self.work)?;
        self.trace.push(TraceStep { name, base, target, exponent });
        self.applied.push(AppliedStep { letters });
        Ok(())
    }

    /// Twist-letter emission. On the congruence handle (handle 1 at top
    /// level), powers of `Ta1`/`Tb1` become opaque congruence letters.
    fn twist_letters(
        &self,
        sym: GeneratorSymbol,
        exp: &BigInt,
        congruence_base: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        if exp.is_zero() {
            return Ok(Vec::new());
        }
        if congruence_base {
            match sym {
                GeneratorSymbol::Ta(1) => {
                    let block = IntMatrix::new(
                        2,
                        2,
                        vec![BigInt::one(), exp.clone(), BigInt::zero(), BigInt::one()],
                    )?;
                    let witness = Word::new(1, vec![(GeneratorSymbol::Ta(1), exp.clone())])?;
                    return Ok(vec![FactorLetter::Gamma1 { matrix: block, witness }]);
                }
                GeneratorSymbol::Tb(1) => {
                    let block = IntMatrix::new(
                        2,
                        2,
                        vec![BigInt::one(), BigInt::zero(), -exp, BigInt::one()],
                    )?;
                    let witness = Word::new(1, vec![(GeneratorSymbol::Tb(1), exp.clone())])?;
                    return Ok(vec![FactorLetter::Gamma1 { matrix: block, witness }]);
                }
                _ => {}
            }
        }
        Ok(vec![FactorLetter::Twist { sym, exp: exp.clone() }])
    }

    /// Word for the transvection product realizing `m2` at `(p, q)`:
    /// `Ta_q^m Ta_p^m T^(-m)` about the class `a_p - a_q`, reached through
    /// the chain twist `Tc_p` conjugated by handle transport when `q > p+1`.
    fn m2_letters(
        &mut self,
        p: usize,
        q: usize,
        m: &BigInt,
        congruent: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        let mut out = Vec::new();
        out.extend(self.twist_letters(GeneratorSymbol::Ta(q), m, congruent)?);
        out.extend(self.twist_letters(GeneratorSymbol::Ta(p), m, congruent)?);
        let transport = self.transport_letters(p + 1, q)?;
        out.extend(transport.iter().cloned());
        out.push(FactorLetter::Twist { sym: GeneratorSymbol::Tc(p), exp: -m });
        out.extend(invert_letters(&transport)?);
        Ok(out)
    }

    /// `m3 = K_q m2 K_q^{-1}` with `K_q = Ta_q Tb_q Ta_q`.
    fn m3_letters(
        &mut self,
        p: usize,
        q: usize,
        m: &BigInt,
        congruent: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        let k_q = rotation_letters(q);
        let mut out = k_q.clone();
        out.extend(self.m2_letters(p, q, m, congruent)?);
        out.extend(invert_letters(&k_q)?);
        Ok(out)
    }

    /// `m5^m = Tb_p^{-m} Ta_q^{-m} (m2 Tb_p^m m2^{-1})`, valid for every `m`
    /// because the three unipotent pieces commute in the required pattern.
    fn m5_letters(
        &mut self,
        p: usize,
        q: usize,
        m: &BigInt,
        congruent: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        let mut out = Vec::new();
        out.extend(self.twist_letters(GeneratorSymbol::Tb(p), &-m, congruent)?);
        out.push(FactorLetter::Twist { sym: GeneratorSymbol::Ta(q), exp: -m });
        let conj = self.m2_letters(p, q, &BigInt::one(), congruent)?;
        out.extend(conj.iter().cloned());
        out.extend(self.twist_letters(GeneratorSymbol::Tb(p), m, congruent)?);
        out.extend(invert_letters(&conj)?);
        Ok(out)
    }

    /// `m6 = K_q m5 K_q^{-1}`.
    fn m6_letters(
        &mut self,
        p: usize,
        q: usize,
        m: &BigInt,
        congruent: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        let k_q = rotation_letters(q);
        let mut out = k_q.clone();
        out.extend(self.m5_letters(p, q, m, congruent)?);
        out.extend(invert_letters(&k_q)?);
        Ok(out)
    }

    fn family_letters(
        &mut self,
        family: Family,
        p: usize,
        q: usize,
        m: &BigInt,
        congruent: bool,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        match family {
            Family::M2 => self.m2_letters(p, q, m, congruent),
            Family::M3 => self.m3_letters(p, q, m, congruent),
            Family::M5 => self.m5_letters(p, q, m, congruent),
            Family::M6 => self.m6_letters(p, q, m, congruent),
        }
    }

    fn apply_family(
        &mut self,
        family: Family,
        p: usize,
        q: usize,
        m: BigInt,
        congruent: bool,
    ) -> Result<(), FactorError> {
        if m.is_zero() {
            return Ok(());
        }
        if congruent && matches!(family, Family::M5 | Family::M6) {
            let k = BigInt::from(self.sheets);
            if !(&m % &k).is_zero() {
                return Err(self.fail(format!(
                    "{} at handle {p} needs a k-divisible exponent, got {m}",
                    family.name()
                )));
            }
        }
        let matrix = family.matrix(p, q, &m, self.genus);
        let letters = self.family_letters(family, p, q, &m, congruent)?;
        self.apply(family.name(), p, q, m, matrix, letters)
    }

    /// Letters of a word moving handle `from` up to handle `to` (fixing
    /// handles below `from`), as a product of adjacent block swaps.
    fn transport_letters(&mut self, from: usize, to: usize) -> Result<Vec<FactorLetter>, FactorError> {
        let mut out = Vec::new();
        for j in (from..to).rev() {
            out.extend(self.swap_letters(j)?);
        }
        Ok(out)
    }

    /// Word for the block swap of handles `j`, `j+1`, factored once through
    /// the adjacent-pair engine and cached.
    fn swap_letters(&mut self, j: usize) -> Result<Vec<FactorLetter>, FactorError> {
        if let Some((_, letters)) = self.swap_cache.get(&j) {
            return Ok(letters.clone());
        }
        let g = self.genus;
        let mut swap = IntMatrix::identity(2 * g);
        for off in 0..2 {
            let a = 2 * j - 2 + off;
            let b = 2 * j + off;
            swap.set(a, a, BigInt::zero());
            swap.set(b, b, BigInt::zero());
            swap.set(a, b, BigInt::one());
            swap.set(b, a, BigInt::one());
        }
        let mut inner = Reducer::new(&swap, g, 1);
        inner.clear_handle(j, false)?;
        let residual = inner.finish_residual(j + 1)?;
        let letters = inner.into_letters_with_residual(residual)?;
        #[cfg(debug_assertions)]
        {
            let mut acc = IntMatrix::identity(2 * g);
            for l in &letters {
                acc = acc.mul(&l.matrix(g)?)?;
            }
            debug_assert_eq!(acc, swap, "swap word must evaluate to the block swap");
        }
        self.swap_cache.insert(j, (swap, letters.clone()));
        Ok(letters)
    }

    /// Clears handle `base`: afterwards columns and rows `1..=2*base` agree
    /// with the identity. `congruent` marks the congruence-constrained
    /// leading handle.
    fn clear_handle(&mut self, base: usize, congruent: bool) -> Result<(), FactorError> {
        let g = self.genus;
        let lo = 2 * base - 2;

        // Block invariant from the previous handles.
        for r in 0..lo {
            for c in lo..2 * g {
                if !self.entry(r, c).is_zero() || !self.entry(c, r).is_zero() {
                    return Err(self.fail(format!(
                        "matrix is not block-diagonal entering handle {base}"
                    )));
                }
            }
        }

        // The column completion and the constrained Bezout step give the
        // subgroup block on this handle.
        let column: Vec<BigInt> = (lo..2 * g).map(|r| self.entry(r, lo)).collect();
        let completion = primitive_completion(&column, congruent.then_some(self.sheets))?;
        let (l1, l2) = (completion[0].clone(), completion[1].clone());
        let (alpha1, alpha2) = congruence_bezout(&l1, &l2, if congruent { self.sheets } else { 1 })?;
        let block = IntMatrix::new(
            2,
            2,
            vec![l1.clone(), l2.clone(), -&alpha1, alpha2.clone()],
        )?;
        if !block.is_identity() {
            let mut m1 = IntMatrix::identity(2 * g);
            for r in 0..2 {
                for c in 0..2 {
                    m1.set(lo + r, lo + c, block.get(r, c).clone());
                }
            }
            let letters = if congruent {
                vec![FactorLetter::Gamma1 { matrix: block.clone(), witness: sl2_decompose(&block)? }]
            } else {
                relabel_to_handle(&sl2_decompose(&block)?, base)
            };
            self.apply("m1", base, 0, BigInt::one(), m1, letters)?;
        }

        // Make the leading diagonal entry 1 using the completion vector.
        for q in base + 1..=g {
            let la = completion[2 * (q - base)].clone();
            let lb = completion[2 * (q - base) + 1].clone();
            self.apply_family(Family::M2, base, q, lb.clone(), congruent)?;
            self.apply_family(Family::M3, base, q, la.clone(), congruent)?;
            let shear = -(&la * &lb);
            let letters = self.twist_letters(GeneratorSymbol::Ta(base), &shear, congruent)?;
            let matrix = shear_matrix(base, &shear, g);
            self.apply("shear", base, q, shear, matrix, letters)?;
        }
        if !self.entry(lo, lo).is_one() {
            return Err(self.fail(format!(
                "leading entry of handle {base} is {} after completion",
                self.entry(lo, lo)
            )));
        }

        // Clear the rest of the leading column; on the congruence handle all
        // these exponents are divisible by k.
        for q in base + 1..=g {
            let m6_exp = -self.entry(2 * q - 1, lo);
            self.apply_family(Family::M6, base, q, m6_exp, congruent)?;
            let m5_exp = self.entry(2 * q - 2, lo);
            self.apply_family(Family::M5, base, q, m5_exp, congruent)?;
        }
        let z = self.entry(lo + 1, lo);
        if congruent && !(&z % BigInt::from(self.sheets)).is_zero() {
            return Err(self.fail(format!("m4 exponent {z} is not divisible by k")));
        }
        if !z.is_zero() {
            // m4^m adds m * x_{2p-1} to x_{2p}; it is the inverse twist power
            // about b_p.
            let m = -z;
            let matrix = m4_matrix(base, &m, g);
            let letters = self.twist_letters(GeneratorSymbol::Tb(base), &-&m, congruent)?;
            self.apply("m4", base, 0, m, matrix, letters)?;
        }
        for r in 0..2 * g {
            let want = if r == lo { BigInt::one() } else { BigInt::zero() };
            if self.entry(r, lo) != want {
                return Err(self.fail(format!("column {} not cleared at row {}", lo + 1, r + 1)));
            }
        }

        // Symplectic rigidity: the paired row is forced.
        for c in 0..2 * g {
            let want = if c == lo + 1 { BigInt::one() } else { BigInt::zero() };
            if self.entry(lo + 1, c) != want {
                return Err(self.fail(format!(
                    "row {} is not forced to a unit row (column {})",
                    lo + 2,
                    c + 1
                )));
            }
        }

        // Clear the paired column with unconstrained multipliers.
        for q in base + 1..=g {
            let m3_exp = self.entry(2 * q - 1, lo + 1);
            self.apply_family(Family::M3, base, q, m3_exp, congruent)?;
            let m2_exp = -self.entry(2 * q - 2, lo + 1);
            self.apply_family(Family::M2, base, q, m2_exp, congruent)?;
        }
        let u = self.entry(lo, lo + 1);
        if !u.is_zero() {
            let m = -u;
            let matrix = shear_matrix(base, &m, g);
            let letters = self.twist_letters(GeneratorSymbol::Ta(base), &m, congruent)?;
            self.apply("shear", base, 0, m, matrix, letters)?;
        }
        for r in 0..2 * g {
            let want = if r == lo + 1 { BigInt::one() } else { BigInt::zero() };
            if self.entry(r, lo + 1) != want {
                return Err(self.fail(format!("column {} not cleared at row {}", lo + 2, r + 1)));
            }
        }
        for c in 0..2 * g {
            let want = if c == lo { BigInt::one() } else { BigInt::zero() };
            if self.entry(lo, c) != want {
                return Err(self.fail(format!("row {} is not forced (column {})", lo + 1, c + 1)));
            }
        }
        Ok(())
    }

    /// Consumes the residual 2x2 block on the last handle.
    fn finish_residual(&mut self, handle: usize) -> Result<Vec<FactorLetter>, FactorError> {
        let g = self.genus;
        let lo = 2 * handle - 2;
        let block = IntMatrix::new(
            2,
            2,
            vec![
                self.entry(lo, lo),
                self.entry(lo, lo + 1),
                self.entry(lo + 1, lo),
                self.entry(lo + 1, lo + 1),
            ],
        )?;
        let mut expected = IntMatrix::identity(2 * g);
        for r in 0..2 {
            for c in 0..2 {
                expected.set(lo + r, lo + c, block.get(r, c).clone());
            }
        }
        if expected != self.work {
            return Err(self.fail("reduction did not terminate in a single-handle block"));
        }
        if block.is_identity() {
            self.work = IntMatrix::identity(2 * g);
            return Ok(Vec::new());
        }
        let word = sl2_decompose(&block)?;
        self.trace.push(TraceStep {
            name: "residual",
            base: handle,
            target: 0,
            exponent: BigInt::one(),
        });
        self.work = IntMatrix::identity(2 * g);
        Ok(relabel_to_handle(&word, handle))
    }

    /// Assembles the final word. With applied multipliers `P_1, ..., P_n` (in
    /// application order) and residual word `R`, the input equals
    /// `P_1^-1 P_2^-1 ... P_n^-1 R`, so each step contributes its letters
    /// reversed and inverted, in step order.
    fn into_letters_with_residual(
        self,
        residual: Vec<FactorLetter>,
    ) -> Result<Vec<FactorLetter>, FactorError> {
        let mut word = Vec::new();
        for step in &self.applied {
            for letter in step.letters.iter().rev() {
                word.push(letter.inverse()?);
            }
        }
        word.extend(residual);
        Ok(word)
    }
}

fn shear_matrix(p: usize, m: &BigInt, genus: usize) -> IntMatrix {
    let mut out = IntMatrix::identity(2 * genus);
    out.set(2 * p - 2, 2 * p - 1, m.clone());
    out
}

fn m4_matrix(p: usize, m: &BigInt, genus: usize) -> IntMatrix {
    let mut out = IntMatrix::identity(2 * genus);
    out.set(2 * p - 1, 2 * p - 2, m.clone());
    out
}

/// `K_q = Ta_q Tb_q Ta_q`, rotating the handle so conjugation exchanges the
/// `a` and `b` directions.
fn rotation_letters(q: usize) -> Vec<FactorLetter> {
    vec![
        FactorLetter::Twist { sym: GeneratorSymbol::Ta(q), exp: BigInt::one() },
        FactorLetter::Twist { sym: GeneratorSymbol::Tb(q), exp: BigInt::one() },
        FactorLetter::Twist { sym: GeneratorSymbol::Ta(q), exp: BigInt::one() },
    ]
}

fn invert_letters(letters: &[FactorLetter]) -> Result<Vec<FactorLetter>, FactorError> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Relabels a genus-1 twist word onto another handle as plain twist letters.
fn relabel_to_handle(word: &Word, handle: usize) -> Vec<FactorLetter> {
    word.letters()
        .iter()
        .map(|(sym, exp)| {
            let sym = match sym {
                GeneratorSymbol::Ta(1) => GeneratorSymbol::Ta(handle),
                GeneratorSymbol::Tb(1) => GeneratorSymbol::Tb(handle),
                other => unreachable!("unexpected letter {other} in a genus-1 word"),
            };
            FactorLetter::Twist { sym, exp: exp.clone() }
        })
        .collect()
}

/// Factors a member of the mod-k stabilizer of `e_1` over the generating
/// set. The word letters are congruence-subgroup elements (with twist
/// witness words) and twist letters on handles 2..g; the product reproduces
/// the input exactly.
pub fn factor_stab_e1(
    input: &IntMatrix,
    cover: &CoverParams,
) -> Result<FactorizationResult, FactorError> {
    let verdict = stab_e1_contains(input, cover)?;
    if !verdict.holds {
        return Err(FactorError::NotMember(format!(
            "matrix does not stabilize e1 mod {} ({:?})",
            cover.sheets(),
            verdict.witness
        )));
    }
    let g = cover.genus();
    let mut reducer = Reducer::new(input, g, cover.sheets());
    for base in 1..g {
        reducer.clear_handle(base, base == 1)?;
    }
    let residual = if g == 1 {
        // The whole matrix is a congruence-subgroup element.
        let block = reducer.work.clone();
        reducer.work = IntMatrix::identity(2);
        if block.is_identity() {
            Vec::new()
        } else {
            reducer.trace.push(TraceStep {
                name: "residual",
                base: 1,
                target: 0,
                exponent: BigInt::one(),
            });
            vec![FactorLetter::Gamma1 { matrix: block.clone(), witness: sl2_decompose(&block)? }]
        }
    } else {
        reducer.finish_residual(g)?
    };
    let trace = reducer.trace.clone();
    let letters = reducer.into_letters_with_residual(residual)?;
    let result = FactorizationResult {
        input: input.clone(),
        genus: g,
        sheets: cover.sheets(),
        unit: 1,
        letters,
        trace,
    };
    let check = result.evaluate()?;
    if check != *input {
        return Err(FactorError::InternalAssertion {
            message: "assembled word does not evaluate to the input".into(),
            trace: result.trace,
        });
    }
    Ok(result)
}

/// Factors a liftable matrix: determines the unit `l` with `M e_1 = l e_1`
/// mod `k`, prefixes the matching unit coset word, and factors the stabilizer
/// remainder.
pub fn factor_lmod(
    input: &IntMatrix,
    cover: &CoverParams,
) -> Result<FactorizationResult, FactorError> {
    let verdict = lmod_contains(input, cover)?;
    if !verdict.holds {
        return Err(FactorError::NotMember(format!(
            "matrix is not liftable for k = {} ({:?})",
            cover.sheets(),
            verdict.witness
        )));
    }
    let Witness::Unit { ell } = verdict.witness else {
        unreachable!("liftable verdicts carry the unit")
    };
    if ell == 1 {
        return factor_stab_e1(input, cover);
    }
    let reps = unit_coset_words(cover.sheets())?;
    let rep = reps
        .into_iter()
        .find(|r| r.unit == ell)
        .expect("every unit has a coset representative");
    let rep_matrix = regenus(&rep.word, cover.genus())?.evaluate()?;
    let remainder = rep_matrix.inverse()?.mul(input)?;
    let mut result = factor_stab_e1(&remainder, cover)?;
    result.input = input.clone();
    result.unit = ell;
    result
        .letters
        .insert(0, FactorLetter::CosetRep { unit: ell, word: rep.word.clone() });
    result.trace.insert(
        0,
        TraceStep { name: "coset", base: 0, target: 0, exponent: BigInt::from(ell) },
    );
    let check = result.evaluate()?;
    if check != *input {
        return Err(FactorError::InternalAssertion {
            message: "coset-prefixed word does not evaluate to the input".into(),
            trace: result.trace,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::iota_matrix;
    use crate::words::parse_word;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bvec(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| b(v)).collect()
    }

    #[test]
    fn lemma1_examples() {
        assert_eq!(primitive_completion(&bvec(&[1, 0, 0, 0]), None).unwrap(), bvec(&[1, 0, 0, 0]));

        let out = primitive_completion(&bvec(&[3, 5, 0, 0]), None).unwrap();
        let dot: BigInt = bvec(&[3, 5, 0, 0]).iter().zip(&out).map(|(x, y)| x * y).sum();
        assert!(dot.is_one());
        assert!(gcd_slice(&out[..2]).is_one());

        let out = primitive_completion(&bvec(&[1, 2, 2, 2]), Some(2)).unwrap();
        let dot: BigInt = bvec(&[1, 2, 2, 2]).iter().zip(&out).map(|(x, y)| x * y).sum();
        assert!(dot.is_one());
        assert!((&out[0] % 2u8).magnitude().is_one(), "leading coefficient must be odd");

        assert!(matches!(
            primitive_completion(&bvec(&[2, 4, 0, 0]), None),
            Err(FactorError::GcdNotOne(_))
        ));
    }

    #[test]
    fn lemma1_forces_prime_path() {
        // Nonzero tail in three places exercises the progression scan.
        for a in [
            bvec(&[5, 3, 7, 2]),
            bvec(&[0, 3, 7, 2]),
            bvec(&[4, 6, 9, 0]),
            bvec(&[-3, 5, -10, 15]),
        ] {
            let out = primitive_completion(&a, None).unwrap();
            let dot: BigInt = a.iter().zip(&out).map(|(x, y)| x * y).sum();
            assert!(dot.is_one(), "a = {a:?}");
            assert!(gcd_slice(&out[..2]).is_one());
        }
    }

    #[test]
    fn lemma2_examples() {
        assert_eq!(congruence_bezout(&b(1), &b(0), 5).unwrap(), (b(0), b(1)));
        assert_eq!(congruence_bezout(&b(3), &b(2), 2).unwrap(), (b(2), b(-1)));
        assert_eq!(congruence_bezout(&b(5), &b(3), 4).unwrap(), (b(12), b(-7)));
        assert!(congruence_bezout(&b(2), &b(4), 2).is_err());
        assert!(congruence_bezout(&b(3), &b(2), 3).is_err());
    }

    #[test]
    fn lemma2_matches_bounded_search() {
        // Oracle: scan i0 until l1 divides 1 - l2*k*i0, exactly the
        // pigeonhole existence argument.
        for (l1, l2, k) in [(3i64, 2i64, 2u64), (5, 3, 4), (7, 5, 3), (13, 4, 6), (-3, 2, 4)] {
            let (a1, a2) = congruence_bezout(&b(l1), &b(l2), k).unwrap();
            assert_eq!(b(l1) * &a2 + b(l2) * &a1, BigInt::one());
            assert!((&a1 % b(k as i64)).is_zero());
            let mut found = false;
            for i0 in 0..200i64 {
                let num = 1 - l2 * k as i64 * i0;
                if num % l1 == 0 {
                    let alt1 = k as i64 * i0;
                    let alt2 = num / l1;
                    assert_eq!(b(l1) * b(alt2) + b(l2) * b(alt1), BigInt::one());
                    found = true;
                    break;
                }
            }
            assert!(found, "bounded oracle found no solution for ({l1}, {l2}, {k})");
        }
    }

    #[test]
    fn multiplier_constants_pinned() {
        let (a1, a2) = congruence_bezout(&b(3), &b(2), 2).unwrap();
        let t = multiplier_tables(&b(3), &b(2), &a1, &a2).unwrap();
        assert_eq!(
            t.matrices[1],
            IntMatrix::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(
            t.matrices[5],
            IntMatrix::from_rows(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[1, 0, 0, 1]])
        );
        for i in 0..6 {
            assert_eq!(t.words[i].evaluate().unwrap(), t.matrices[i], "word m{}", i + 1);
        }
    }

    #[test]
    fn factor_identity_is_empty() {
        let cover = CoverParams::new(2, 3).unwrap();
        let fac = factor_stab_e1(&IntMatrix::identity(4), &cover).unwrap();
        assert!(fac.letters.is_empty());
        assert!(fac.trace.is_empty());
    }

    #[test]
    fn factor_embedded_congruence_block() {
        let block = IntMatrix::from_rows(&[&[1, 0], &[3, 1]]);
        let m = eta_embed(&block, 2).unwrap();
        let cover = CoverParams::new(2, 3).unwrap();
        let fac = factor_stab_e1(&m, &cover).unwrap();
        assert_eq!(fac.evaluate().unwrap(), m);
        fac.verify_alphabet().unwrap();
        assert!(fac
            .letters
            .iter()
            .all(|l| matches!(l, FactorLetter::Gamma1 { .. })));
    }

    #[test]
    fn factor_rejects_non_members() {
        let tb1 = crate::generators::twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        let cover = CoverParams::new(2, 2).unwrap();
        assert!(matches!(factor_stab_e1(&tb1, &cover), Err(FactorError::NotMember(_))));
        assert!(matches!(factor_lmod(&tb1, &cover), Err(FactorError::NotMember(_))));
    }

    #[test]
    fn factor_small_words_g2() {
        let cover = CoverParams::new(2, 2).unwrap();
        for text in [
            "Tb1^2",
            "Ta1 Tb1^2 Ta2",
            "Tc1 Tb2^-1 Tc1",
            "Ta2 Tb2 Ta2 Tb1^-2",
            "(Ta1 Tb1)^3 (Ta2 Tb2)^-3",
        ] {
            let m = parse_word(text, 2).unwrap().evaluate().unwrap();
            let fac = factor_stab_e1(&m, &cover).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(fac.evaluate().unwrap(), m, "{text}");
            fac.verify_alphabet().unwrap();
        }
    }

    #[test]
    fn factor_degenerate_columns() {
        let cover = CoverParams::new(2, 4).unwrap();
        // First column already e1; work happens in the paired column.
        let m = parse_word("Ta1^3", 2).unwrap().evaluate().unwrap();
        let fac = factor_stab_e1(&m, &cover).unwrap();
        assert_eq!(fac.evaluate().unwrap(), m);

        // Zero tail below the first entry.
        let m = parse_word("Tb1^4", 2).unwrap().evaluate().unwrap();
        let fac = factor_stab_e1(&m, &cover).unwrap();
        assert_eq!(fac.evaluate().unwrap(), m);
        fac.verify_alphabet().unwrap();
    }

    #[test]
    fn factor_genus3_uses_transport() {
        let cover = CoverParams::new(3, 2).unwrap();
        for text in ["Ta3 Tb3 Tc2^-1 Tb1^2", "Tb3^2 Tc2 Tc1 Ta2^-1", "Tb2 Tb3 Ta3^2 Tb1^-2"] {
            let m = parse_word(text, 3).unwrap().evaluate().unwrap();
            let fac = factor_stab_e1(&m, &cover).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(fac.evaluate().unwrap(), m, "{text}");
            fac.verify_alphabet().unwrap();
        }
    }

    #[test]
    fn factor_genus4_smoke() {
        let cover = CoverParams::new(4, 3).unwrap();
        for text in ["Ta4 Tb4^2 Tc3^-1 Tb1^3", "Tb2 Tc2 Tb4^-1 Tc3 Ta1"] {
            let m = parse_word(text, 4).unwrap().evaluate().unwrap();
            let fac = factor_stab_e1(&m, &cover).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(fac.evaluate().unwrap(), m, "{text}");
            fac.verify_alphabet().unwrap();
        }
    }

    #[test]
    fn factor_genus1_routes_through_subgroup() {
        let cover = CoverParams::new(1, 3).unwrap();
        let m = parse_word("Tb1^3 Ta1^-2 Tb1^3", 1).unwrap().evaluate().unwrap();
        let fac = factor_stab_e1(&m, &cover).unwrap();
        assert_eq!(fac.evaluate().unwrap(), m);
        fac.verify_alphabet().unwrap();
    }

    #[test]
    fn factor_lmod_coset_word_itself() {
        let cover = CoverParams::new(2, 5).unwrap();
        let rep = unit_coset_words(5).unwrap().into_iter().find(|r| r.unit == 2).unwrap();
        let m = regenus(&rep.word, 2).unwrap().evaluate().unwrap();
        let fac = factor_lmod(&m, &cover).unwrap();
        assert_eq!(fac.unit, 2);
        assert!(matches!(fac.letters[0], FactorLetter::CosetRep { unit: 2, .. }));
        // The stabilizer remainder is the identity: only the prefix remains.
        assert_eq!(fac.letters.len(), 1);
        assert_eq!(fac.evaluate().unwrap(), m);
    }

    #[test]
    fn factor_lmod_involution() {
        let cover = CoverParams::new(2, 5).unwrap();
        let m = iota_matrix(2);
        let fac = factor_lmod(&m, &cover).unwrap();
        assert_eq!(fac.unit, 4);
        assert_eq!(fac.evaluate().unwrap(), m);
        fac.verify_alphabet().unwrap();
    }

    #[test]
    fn trace_divisibility_is_enforced() {
        let cover = CoverParams::new(2, 2).unwrap();
        let m = parse_word("Tb1^2 Tc1 Ta2^-1 Tb2", 2).unwrap().evaluate().unwrap();
        let fac = factor_stab_e1(&m, &cover).unwrap();
        for step in &fac.trace {
            if matches!(step.name, "m4" | "m5" | "m6") && step.base == 1 {
                assert!((&step.exponent % 2u8).is_zero(), "{step}");
            }
        }
    }
}
