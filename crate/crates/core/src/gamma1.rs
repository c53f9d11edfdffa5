//! The congruence subgroup of `SL(2,Z)` with `a, d = 1` and `c = 0` modulo
//! `k`: membership, coset enumeration over bottom rows, Schreier generators
//! with twist witness words, rewriting of members over those generators, and
//! the Euclidean decomposition of unimodular matrices into the two standard
//! transvections.
//!
//! Everything is expressed against the genus-1 twist matrices
//! `Ta1 = [[1, 1], [0, 1]]` and `Tb1 = [[1, 0], [-1, 1]]`, which generate
//! `SL(2,Z)`. A matrix lies in the subgroup iff its bottom row is congruent
//! to `(0, 1)`, so right cosets are classified by bottom rows mod `k`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{mod_inverse_u64, units_mod};
use crate::matrix::{IntMatrix, MatrixError};
use crate::words::{GeneratorSymbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gamma1Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("matrix must be 2x2 with determinant 1")]
    NotUnimodular,
    #[error("matrix is not a member: {0}")]
    NotMember(String),
    #[error("rewriting would expand more than {0} elementary steps")]
    RewriteTooLong(u64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn check_sl2(m: &IntMatrix) -> Result<(), Gamma1Error> {
    if m.rows() != 2 || m.cols() != 2 || m.determinant()? != BigInt::one() {
        return Err(Gamma1Error::NotUnimodular);
    }
    Ok(())
}

fn residue(v: &BigInt, k: u64) -> u64 {
    let r = num_integer::Integer::mod_floor(v, &BigInt::from(k));
    u64::try_from(&r).expect("residue fits")
}

/// Membership in the subgroup: diagonal congruent to 1 and lower-left entry
/// congruent to 0 modulo `k`. Requires determinant 1.
pub fn gamma1_contains(m: &IntMatrix, k: u64) -> Result<bool, Gamma1Error> {
    if k < 2 {
        return Err(Gamma1Error::BadModulus(k));
    }
    check_sl2(m)?;
    Ok(residue(m.get(0, 0), k) == 1 % k
        && residue(m.get(1, 1), k) == 1 % k
        && residue(m.get(1, 0), k) == 0)
}

/// Membership in the larger subgroup with only the lower-left entry congruent
/// to 0 modulo `k`.
pub fn gamma0_contains(m: &IntMatrix, k: u64) -> Result<bool, Gamma1Error> {
    if k < 2 {
        return Err(Gamma1Error::BadModulus(k));
    }
    check_sl2(m)?;
    Ok(residue(m.get(1, 0), k) == 0)
}

/// A subgroup generator together with a witness word over `{Ta1, Tb1}` whose
/// evaluation equals the matrix exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma1Generator {
    pub matrix: IntMatrix,
    pub word: Word,
}

/// A word over the indexed Schreier generators of a coset table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gamma1Word {
    pub letters: Vec<(usize, BigInt)>,
}

impl Gamma1Word {
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exact product of the referenced generator powers.
    pub fn evaluate(&self, table: &CosetTable) -> Result<IntMatrix, Gamma1Error> {
        let mut acc = IntMatrix::identity(2);
        for (idx, exp) in &self.letters {
            acc = acc.mul(&table.generators()[*idx].matrix.pow(exp)?)?;
        }
        Ok(acc)
    }

    /// Flattens into a twist word by concatenating generator witness words.
    pub fn to_twist_word(&self, table: &CosetTable) -> Result<Word, Gamma1Error> {
        let mut out = Word::empty(1);
        for (idx, exp) in &self.letters {
            let gen = &table.generators()[*idx].word;
            let mut reps = exp.magnitude().clone();
            let piece = if exp.is_negative() { gen.invert() } else { gen.clone() };
            while !reps.is_zero() {
                out = out.concat(&piece)?;
                reps -= 1u8;
            }
        }
        Ok(out.free_reduce())
    }
}

const TA: usize = 0;
const TB: usize = 1;

/// Coset table of the subgroup inside `SL(2,Z)`: states are the bottom-row
/// residue pairs reachable from `(0, 1)` under right multiplication by the
/// two transvections and their inverses, each carrying a transversal word.
/// Schreier generators close the table into a generating set.
pub struct CosetTable {
    modulus: u64,
    states: Vec<(u64, u64)>,
    step: [Vec<usize>; 2],
    step_inv: [Vec<usize>; 2],
    transversal_words: Vec<Word>,
    transversal_mats: Vec<IntMatrix>,
    schreier: Vec<[Option<usize>; 2]>,
    generators: Vec<Gamma1Generator>,
}

impl CosetTable {
    pub fn new(k: u64) -> Result<Self, Gamma1Error> {
        if k < 2 {
            return Err(Gamma1Error::BadModulus(k));
        }
        let ta = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        let tb = IntMatrix::from_rows(&[&[1, 0], &[-1, 1]]);

        // Right action on bottom rows mod k, for Ta^{+1}, Tb^{+1} and inverses.
        let act = |state: (u64, u64), dir: usize, inverse: bool| -> (u64, u64) {
            let (c, d) = state;
            match (dir, inverse) {
                (TA, false) => (c, (c + d) % k),
                (TA, true) => (c, (d + k - c % k) % k),
                (TB, false) => ((c + k - d % k) % k, d),
                (TB, true) => ((c + d) % k, d),
                _ => unreachable!(),
            }
        };

        let start = (0u64, 1 % k);
        let mut states = vec![start];
        let mut index: HashMap<(u64, u64), usize> = HashMap::from([(start, 0)]);
        let mut transversal_words = vec![Word::empty(1)];
        let mut transversal_mats = vec![IntMatrix::identity(2)];
        let mut queue = std::collections::VecDeque::from([0usize]);

        // BFS over all four directions so transversal words stay short.
        while let Some(s) = queue.pop_front() {
            for dir in [TA, TB] {
                for inverse in [false, true] {
                    let t_state = act(states[s], dir, inverse);
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t_state) {
                        let id = states.len();
                        e.insert(id);
                        states.push(t_state);
                        let sym =
                            if dir == TA { GeneratorSymbol::Ta(1) } else { GeneratorSymbol::Tb(1) };
                        let exp = if inverse { BigInt::from(-1) } else { BigInt::one() };
                        let mut w = transversal_words[s].clone();
                        w.push(sym, exp)?;
                        transversal_words.push(w.free_reduce());
                        let step_mat = if dir == TA { &ta } else { &tb };
                        let step_mat =
                            if inverse { step_mat.inverse()? } else { step_mat.clone() };
                        transversal_mats.push(transversal_mats[s].mul(&step_mat)?);
                        queue.push_back(id);
                    }
                }
            }
        }

        let n = states.len();
        let mut step = [vec![0usize; n], vec![0usize; n]];
        for (s, &st) in states.iter().enumerate() {
            for dir in [TA, TB] {
                step[dir][s] = index[&act(st, dir, false)];
            }
        }
        let mut step_inv = [vec![0usize; n], vec![0usize; n]];
        for dir in [TA, TB] {
            for s in 0..n {
                step_inv[dir][step[dir][s]] = s;
            }
        }

        // Schreier generators: transversal(s) * X * transversal(s.X)^{-1}.
        let gen_mats = [&ta, &tb];
        let mut generators: Vec<Gamma1Generator> = Vec::new();
        let mut by_matrix: HashMap<Vec<BigInt>, usize> = HashMap::new();
        let mut schreier: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
        for s in 0..n {
            for dir in [TA, TB] {
                let t = step[dir][s];
                let mat = transversal_mats[s]
                    .mul(gen_mats[dir])?
                    .mul(&transversal_mats[t].inverse()?)?;
                if mat.is_identity() {
                    continue;
                }
                let key: Vec<BigInt> = (0..2)
                    .flat_map(|r| (0..2).map(move |c| (r, c)))
                    .map(|(r, c)| mat.get(r, c).clone())
                    .collect();
                let id = *by_matrix.entry(key).or_insert_with(|| {
                    let sym = if dir == TA {
                        GeneratorSymbol::Ta(1)
                    } else {
                        GeneratorSymbol::Tb(1)
                    };
                    let mut w = transversal_words[s].clone();
                    w.push(sym, BigInt::one()).expect("valid letter");
                    let w = w.concat(&transversal_words[t].invert()).expect("same genus");
                    generators.push(Gamma1Generator { matrix: mat.clone(), word: w.free_reduce() });
                    generators.len() - 1
                });
                schreier[s][dir] = Some(id);
            }
        }

        Ok(CosetTable {
            modulus: k,
            states,
            step,
            step_inv,
            transversal_words,
            transversal_mats,
            schreier,
            generators,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of right cosets, equal to the number of unimodular bottom-row
    /// pairs mod `k`.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(u64, u64)] {
        &self.states
    }

    pub fn generators(&self) -> &[Gamma1Generator] {
        &self.generators
    }

    pub fn transversal_word(&self, state: usize) -> &Word {
        &self.transversal_words[state]
    }

    pub fn transversal_matrix(&self, state: usize) -> &IntMatrix {
        &self.transversal_mats[state]
    }

    /// Rewrites a member as a word over the Schreier generators; the product
    /// of the generator powers equals the input exactly.
    pub fn rewrite(&self, m: &IntMatrix) -> Result<Gamma1Word, Gamma1Error> {
        if !gamma1_contains(m, self.modulus)? {
            return Err(Gamma1Error::NotMember(format!(
                "bottom row {} {} is not (0, 1) mod {}",
                m.get(1, 0),
                m.get(1, 1),
                self.modulus
            )));
        }
        const MAX_STEPS: u64 = 1 << 22;
        let twist = sl2_decompose(m)?;
        let mut total: u64 = 0;
        let mut state = 0usize;
        let mut letters: Vec<(usize, BigInt)> = Vec::new();
        let push = |letters: &mut Vec<(usize, BigInt)>, id: usize, delta: i8| {
            match letters.last_mut() {
                Some((last, acc)) if *last == id => {
                    *acc += delta;
                    if acc.is_zero() {
                        letters.pop();
                    }
                }
                _ => letters.push((id, BigInt::from(delta))),
            }
        };
        for (sym, exp) in twist.letters() {
            let dir = match sym {
                GeneratorSymbol::Ta(1) => TA,
                GeneratorSymbol::Tb(1) => TB,
                other => unreachable!("decomposition emits only Ta1/Tb1, got {other}"),
            };
            let steps = u64::try_from(exp.magnitude())
                .map_err(|_| Gamma1Error::RewriteTooLong(MAX_STEPS))?;
            total = total.saturating_add(steps);
            if total > MAX_STEPS {
                return Err(Gamma1Error::RewriteTooLong(MAX_STEPS));
            }
            for _ in 0..steps {
                if exp.is_negative() {
                    let prev = self.step_inv[dir][state];
                    if let Some(id) = self.schreier[prev][dir] {
                        push(&mut letters, id, -1);
                    }
                    state = prev;
                } else {
                    if let Some(id) = self.schreier[state][dir] {
                        push(&mut letters, id, 1);
                    }
                    state = self.step[dir][state];
                }
            }
        }
        debug_assert_eq!(state, 0, "member words must return to the identity coset");
        Ok(Gamma1Word { letters })
    }
}

/// Generating set of the subgroup with twist witness words, from the Schreier
/// construction on the coset table.
pub fn gamma1_generators(k: u64) -> Result<Vec<Gamma1Generator>, Gamma1Error> {
    Ok(CosetTable::new(k)?.generators().to_vec())
}

/// One-shot rewrite against a fresh coset table. Builds the table each call;
/// use [`CosetTable`] directly for repeated rewriting.
pub fn gamma1_rewrite(m: &IntMatrix, k: u64) -> Result<(Gamma1Word, CosetTable), Gamma1Error> {
    let table = CosetTable::new(k)?;
    let word = table.rewrite(m)?;
    Ok((word, table))
}

/// Euclidean decomposition of a determinant-1 matrix into a word over
/// `{Ta1, Tb1}` whose evaluation equals the input exactly. `-I` is reached
/// through `(Ta1 Tb1 Ta1)^2`.
pub fn sl2_decompose(m: &IntMatrix) -> Result<Word, Gamma1Error> {
    check_sl2(m)?;
    let ta = GeneratorSymbol::Ta(1);
    let tb = GeneratorSymbol::Tb(1);
    let mut cur = m.clone();
    // Letters of the left-multiplier words, in application order.
    let mut applied: Vec<(GeneratorSymbol, BigInt)> = Vec::new();
    let mut closing: Vec<(GeneratorSymbol, BigInt)> = Vec::new();

    loop {
        let a = cur.get(0, 0).clone();
        let c = cur.get(1, 0).clone();
        if c.is_zero() {
            let b = cur.get(0, 1).clone();
            if a.is_one() {
                if !b.is_zero() {
                    closing.push((ta, b));
                }
            } else {
                // a = d = -1: peel off -I = (Ta1 Tb1 Ta1)^2 and a final shear.
                for _ in 0..2 {
                    closing.extend([(ta, BigInt::one()), (tb, BigInt::one()), (ta, BigInt::one())]);
                }
                if !b.is_zero() {
                    closing.push((ta, -b));
                }
            }
            break;
        }
        if a.is_zero() {
            let b = cur.get(0, 1).clone();
            let d = cur.get(1, 1).clone();
            if b.is_one() {
                // [[0, 1], [-1, d]] = S * Ta1^{-d} with S = Ta1 Tb1 Ta1.
                closing.extend([(ta, BigInt::one()), (tb, BigInt::one()), (ta, BigInt::one())]);
                if !d.is_zero() {
                    closing.push((ta, -d));
                }
            } else {
                // [[0, -1], [1, d]] = S^{-1} * Ta1^{d}.
                closing.extend([
                    (ta, BigInt::from(-1)),
                    (tb, BigInt::from(-1)),
                    (ta, BigInt::from(-1)),
                ]);
                if !d.is_zero() {
                    closing.push((ta, d));
                }
            }
            break;
        }
        // Reduce the bottom-left entry modulo the top-left one.
        let q = crate::arith::div_round(&c, &a);
        if !q.is_zero() {
            // Tb1^q from the left subtracts q * row1 from row2... with the
            // sign convention Tb1 = [[1,0],[-1,1]], Tb1^q adds -q * row1.
            cur = crate::generators::transvection_power(
                &[BigInt::zero(), BigInt::one()],
                &q,
                1,
            )
            .mul(&cur)?;
            applied.push((tb, q.clone()));
        }
        let c2 = cur.get(1, 0).clone();
        if c2.is_zero() {
            continue;
        }
        let a2 = cur.get(0, 0).clone();
        let p = crate::arith::div_round(&a2, &c2);
        if p.is_zero() {
            // |a| <= |c|/2 and q = 0 cannot happen together; guard anyway.
            debug_assert!(!q.is_zero(), "no progress in euclidean descent");
            continue;
        }
        // Ta1^{-p} adds -p * row2 to row1.
        cur = crate::generators::transvection_power(
            &[BigInt::one(), BigInt::zero()],
            &-&p,
            1,
        )
        .mul(&cur)?;
        applied.push((ta, -p));
    }

    let mut letters: Vec<(GeneratorSymbol, BigInt)> =
        applied.into_iter().map(|(s, e)| (s, -e)).collect();
    letters.extend(closing);
    let word = Word::new(1, letters)?.free_reduce();
    debug_assert_eq!(word.evaluate()?, *m, "decomposition must round-trip");
    Ok(word)
}

/// A coset representative word for a unit `l` mod `k`: the twist word
/// `Tb1^{lbar - 1} Ta1^{-1} Tb1^{l - 1}` with `l * lbar = 1 mod k`. Its
/// evaluation sends `e_1` to `l e_1` mod `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCosetWord {
    pub unit: u64,
    pub unit_inverse: u64,
    pub word: Word,
}

/// One representative word per unit mod `k`, in increasing unit order.
pub fn unit_coset_words(k: u64) -> Result<Vec<UnitCosetWord>, Gamma1Error> {
    if k < 2 {
        return Err(Gamma1Error::BadModulus(k));
    }
    let tb = GeneratorSymbol::Tb(1);
    let ta = GeneratorSymbol::Ta(1);
    units_mod(k)
        .into_iter()
        .map(|l| {
            let lbar = mod_inverse_u64(l, k).expect("units invert");
            let mut letters: Vec<(GeneratorSymbol, BigInt)> = Vec::new();
            if lbar != 1 {
                letters.push((tb, BigInt::from(lbar - 1)));
            }
            letters.push((ta, BigInt::from(-1)));
            if l != 1 {
                letters.push((tb, BigInt::from(l - 1)));
            }
            Ok(UnitCosetWord { unit: l, unit_inverse: lbar, word: Word::new(1, letters)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn eval2(w: &Word) -> IntMatrix {
        w.evaluate().unwrap()
    }

    #[test]
    fn membership_examples() {
        let t = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        for k in [2, 3, 5, 12] {
            assert!(gamma1_contains(&t, k).unwrap());
        }
        let m = IntMatrix::from_rows(&[&[1, 0], &[2, 1]]);
        assert!(gamma1_contains(&m, 2).unwrap());
        let s = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        assert!(!gamma1_contains(&s, 2).unwrap());
        assert!(gamma0_contains(&m, 2).unwrap());
        assert!(!gamma0_contains(&s, 2).unwrap());
        let bad = IntMatrix::from_rows(&[&[1, 0], &[0, 2]]);
        assert!(gamma1_contains(&bad, 2).is_err());
    }

    #[test]
    fn coset_counts() {
        assert_eq!(CosetTable::new(2).unwrap().state_count(), 3);
        assert_eq!(CosetTable::new(5).unwrap().state_count(), 24);
        // Brute-force count of unimodular bottom rows for k = 5: all nonzero
        // pairs mod a prime.
        let mut count = 0;
        for c in 0..5u64 {
            for d in 0..5u64 {
                if (c, d) != (0, 0) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn schreier_generators_are_members() {
        for k in [2, 3, 4, 6] {
            let table = CosetTable::new(k).unwrap();
            assert!(!table.generators().is_empty());
            for gen in table.generators() {
                assert!(gamma1_contains(&gen.matrix, k).unwrap(), "k={k}");
                assert_eq!(eval2(&gen.word), gen.matrix, "k={k}");
            }
        }
    }

    #[test]
    fn rewrite_examples() {
        let table = CosetTable::new(3).unwrap();
        let id = table.rewrite(&IntMatrix::identity(2)).unwrap();
        assert!(id.is_empty());

        let m = IntMatrix::from_rows(&[&[1, 0], &[3, 1]]);
        let w = table.rewrite(&m).unwrap();
        assert_eq!(w.evaluate(&table).unwrap(), m);
        assert_eq!(eval2(&w.to_twist_word(&table).unwrap()), m);

        let sq = IntMatrix::from_rows(&[&[1, 2], &[0, 1]]);
        let w = table.rewrite(&sq).unwrap();
        assert_eq!(w.evaluate(&table).unwrap(), sq);

        let non_member = IntMatrix::from_rows(&[&[1, 0], &[1, 1]]);
        assert!(matches!(table.rewrite(&non_member), Err(Gamma1Error::NotMember(_))));
    }

    #[test]
    fn decompose_examples() {
        assert!(sl2_decompose(&IntMatrix::identity(2)).unwrap().is_empty());

        let s = IntMatrix::from_rows(&[&[0, 1], &[-1, 0]]);
        let w = sl2_decompose(&s).unwrap();
        assert_eq!(w.to_string(), "Ta1 Tb1 Ta1");

        let m = IntMatrix::from_rows(&[&[1, 0], &[-3, 1]]);
        let w = sl2_decompose(&m).unwrap();
        assert_eq!(w.to_string(), "Tb1^3");

        let bad = IntMatrix::from_rows(&[&[2, 0], &[0, 2]]);
        assert!(sl2_decompose(&bad).is_err());
    }

    #[test]
    fn decompose_round_trips_randomly() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(0..12);
            let mut letters = Vec::new();
            for _ in 0..len {
                let sym = if rng.gen_bool(0.5) {
                    GeneratorSymbol::Ta(1)
                } else {
                    GeneratorSymbol::Tb(1)
                };
                let exp = loop {
                    let e = rng.gen_range(-4i64..=4);
                    if e != 0 {
                        break e;
                    }
                };
                letters.push((sym, exp));
            }
            let m = eval2(&Word::from_letters(1, &letters));
            let w = sl2_decompose(&m).unwrap();
            assert_eq!(eval2(&w), m);
        }
    }

    #[test]
    fn coset_soundness_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for k in [2u64, 3, 6] {
            for _ in 0..200 {
                let word = |rng: &mut StdRng| {
                    let len = rng.gen_range(0..10);
                    let letters: Vec<_> = (0..len)
                        .map(|_| {
                            let sym = if rng.gen_bool(0.5) {
                                GeneratorSymbol::Ta(1)
                            } else {
                                GeneratorSymbol::Tb(1)
                            };
                            (sym, if rng.gen_bool(0.5) { 1i64 } else { -1 })
                        })
                        .collect();
                    eval2(&Word::from_letters(1, &letters))
                };
                let u = word(&mut rng);
                let v = word(&mut rng);
                let same_row = residue(u.get(1, 0), k) == residue(v.get(1, 0), k)
                    && residue(u.get(1, 1), k) == residue(v.get(1, 1), k);
                let quotient_member =
                    gamma1_contains(&u.mul(&v.inverse().unwrap()).unwrap(), k).unwrap();
                assert_eq!(same_row, quotient_member, "k={k}");
            }
        }
    }

    #[test]
    fn unit_coset_words_examples() {
        let reps = unit_coset_words(2).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].word.to_string(), "Ta1^-1");

        let reps = unit_coset_words(5).unwrap();
        assert_eq!(reps.len(), 4);
        let l2 = reps.iter().find(|r| r.unit == 2).unwrap();
        assert_eq!(l2.unit_inverse, 3);
        assert_eq!(l2.word.to_string(), "Tb1^2 Ta1^-1 Tb1");

        for k in [2u64, 3, 4, 5, 6, 12] {
            let reps = unit_coset_words(k).unwrap();
            assert_eq!(reps.len() as u64, euler_phi(k));
            let mut units: Vec<u64> = reps.iter().map(|r| r.unit).collect();
            units.sort_unstable();
            assert_eq!(units, units_mod(k));
            for rep in &reps {
                let m = eval2(&rep.word);
                // e1 maps to unit * e1 mod k.
                assert_eq!(residue(m.get(0, 0), k), rep.unit % k, "k={k} l={}", rep.unit);
                assert_eq!(residue(m.get(1, 0), k), 0, "k={k} l={}", rep.unit);
            }
        }
    }

    #[test]
    fn rewrite_random_members() {
        let mut rng = StdRng::seed_from_u64(23);
        for k in [2u64, 3, 4, 5, 6, 12] {
            let table = CosetTable::new(k).unwrap();
            let mut found = 0;
            let mut attempts = 0;
            while found < 25 && attempts < 200_000 {
                attempts += 1;
                let len = rng.gen_range(0..14);
                let letters: Vec<_> = (0..len)
                    .map(|_| {
                        let sym = if rng.gen_bool(0.5) {
                            GeneratorSymbol::Ta(1)
                        } else {
                            GeneratorSymbol::Tb(1)
                        };
                        (sym, if rng.gen_bool(0.5) { 1i64 } else { -1 })
                    })
                    .collect();
                let m = eval2(&Word::from_letters(1, &letters));
                if !gamma1_contains(&m, k).unwrap() {
                    continue;
                }
                found += 1;
                let w = table.rewrite(&m).unwrap();
                assert_eq!(w.evaluate(&table).unwrap(), m, "k={k}");
            }
            assert_eq!(found, 25, "not enough members sampled for k={k}");
        }
    }
}
