//! Orbit and index computations over `Z_k^{2g}`, and the constructive
//! verification that the liftable subgroup is self-normalizing: every
//! primitive vector off the unit line of `e_1` receives a short liftable
//! word moving it off its own unit line.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::arith::{euler_phi, factorize, gcd_u64, units_mod};
use crate::lifting::{lmod_contains, CoverParams, LiftError};
use crate::matrix::{MatrixError, ResidueMatrix};
use crate::words::{GeneratorSymbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("genus must be at least {min}, got {got}")]
    BadGenus { min: usize, got: usize },
    #[error("state space k^(2g) = {states} exceeds the feasibility bound {bound}")]
    Infeasible { states: u128, bound: u128 },
    #[error("vector is not primitive mod {0}")]
    NotPrimitive(u64),
    #[error("vector lies on the unit line of e1 and is excluded")]
    ExcludedVector,
    #[error("witness search exhausted at length {max_len} for vector {vector:?}")]
    SearchExhausted { vector: Vec<u64>, max_len: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Word(#[from] WordError),
}

const FEASIBILITY_BOUND: u128 = 1_000_000;

/// Number of primitive vectors in `Z_k^n` (entries generating `Z_k` together
/// with `k`), by inclusion-exclusion over the primes dividing `k`:
/// `k^n * prod_{p | k} (1 - p^{-n})`.
pub fn count_primitive(k: u64, n: usize) -> Result<BigInt, CensusError> {
    if k < 2 {
        return Err(CensusError::BadModulus(k));
    }
    assert!(n >= 2, "dimension must be at least 2");
    let mut acc = BigInt::one();
    for (p, e) in factorize(k) {
        let p = BigInt::from(p);
        let pn = p.pow(n as u32);
        acc *= p.pow(((e - 1) as usize * n) as u32) * (&pn - 1);
    }
    Ok(acc)
}

/// Is `v` primitive mod `k`?
pub fn is_primitive(v: &[u64], k: u64) -> bool {
    let mut g = k;
    for &x in v {
        g = gcd_u64(g, x % k);
    }
    g == 1
}

/// All primitive vectors of `Z_k^n` in lexicographic order. Guarded by the
/// feasibility bound on `k^n`.
pub fn enumerate_primitive(k: u64, n: usize) -> Result<Vec<Vec<u64>>, CensusError> {
    check_feasible(k, n)?;
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        if is_primitive(&v, k) {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            v[i] += 1;
            if v[i] < k {
                break;
            }
            v[i] = 0;
        }
    }
}

fn check_feasible(k: u64, n: usize) -> Result<(), CensusError> {
    if k < 2 {
        return Err(CensusError::BadModulus(k));
    }
    let states = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if states > FEASIBILITY_BOUND {
        return Err(CensusError::Infeasible { states, bound: FEASIBILITY_BOUND });
    }
    Ok(())
}

/// Twist generator matrices mod k, with inverses, in the fixed sweep order.
fn twist_generators_mod(genus: usize, k: u64) -> Result<Vec<ResidueMatrix>, CensusError> {
    let mut gens = Vec::new();
    let mut push = |sym: GeneratorSymbol| -> Result<(), CensusError> {
        for exp in [1i64, -1] {
            let m = crate::generators::symbol_power(sym, &BigInt::from(exp), genus)?;
            gens.push(m.mod_reduce(k)?);
        }
        Ok(())
    };
    for i in 1..=genus {
        push(GeneratorSymbol::Ta(i))?;
        push(GeneratorSymbol::Tb(i))?;
    }
    for i in 1..genus {
        push(GeneratorSymbol::Tc(i))?;
    }
    Ok(gens)
}

/// Orbit of `e_1` in `Z_k^{2g}` under the twist generators and their
/// inverses, as a canonically ordered set. Equals the primitive vectors.
pub fn orbit_e1(genus: usize, k: u64) -> Result<BTreeSet<Vec<u64>>, CensusError> {
    check_feasible(k, 2 * genus)?;
    if genus < 1 {
        return Err(CensusError::BadGenus { min: 1, got: genus });
    }
    let gens = twist_generators_mod(genus, k)?;
    let mut start = vec![0u64; 2 * genus];
    start[0] = 1 % k;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let img = g.apply(&v);
            if !seen.contains(&img) {
                seen.insert(img.clone());
                queue.push_back(img);
            }
        }
    }
    Ok(seen)
}

/// Index data for the normal series over the cover: the unit-group order,
/// the primitive-vector count (the index of the `e_1` stabilizer), and their
/// quotient (the index of the liftable subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTable {
    pub genus: usize,
    pub modulus: u64,
    pub phi: u64,
    pub primitive_count: BigInt,
    pub stab_e1_index: BigInt,
    pub lmod_index: BigInt,
}

pub fn index_table(genus: usize, k: u64) -> Result<IndexTable, CensusError> {
    let primitive_count = count_primitive(k, 2 * genus)?;
    let phi = euler_phi(k);
    let lmod_index = &primitive_count / BigInt::from(phi);
    debug_assert_eq!(&lmod_index * BigInt::from(phi), primitive_count);
    Ok(IndexTable {
        genus,
        modulus: k,
        phi,
        primitive_count: primitive_count.clone(),
        stab_e1_index: primitive_count,
        lmod_index,
    })
}

/// A self-normalizing witness: a liftable word `f` with `f v` off the unit
/// line of `v` mod `k`. Re-checkable by a single evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub genus: usize,
    pub modulus: u64,
    pub vector: Vec<u64>,
    pub word: Word,
    pub image: Vec<u64>,
}

impl WitnessReport {
    /// Re-verifies independently: the word is liftable letter by letter and
    /// prefix by prefix, and its image avoids all unit multiples.
    pub fn reverify(&self) -> Result<bool, CensusError> {
        let cover = CoverParams::new(self.genus, self.modulus)?;
        let mut prefix = Word::empty(self.genus);
        for (sym, exp) in self.word.letters() {
            prefix.push(*sym, exp.clone())?;
            let m = prefix.evaluate()?;
            if !lmod_contains(&m, &cover)?.holds {
                return Ok(false);
            }
        }
        let image = self.word.evaluate_mod(self.modulus)?.apply(&self.vector);
        if image != self.image {
            return Ok(false);
        }
        Ok(!is_unit_multiple(&image, &self.vector, self.modulus))
    }
}

fn is_unit_multiple(image: &[u64], v: &[u64], k: u64) -> bool {
    units_mod(k).into_iter().any(|u| {
        image
            .iter()
            .zip(v)
            .all(|(&a, &b)| a % k == (u as u128 * b as u128 % k as u128) as u64)
    })
}

/// The liftable search alphabet in fixed order: `Ta1`, `Tb1^k`, the twist
/// generators of the other handles, then the chain twists, each with both
/// signs. Every entry is a liftable mapping class.
fn witness_alphabet(genus: usize, k: u64) -> Vec<(GeneratorSymbol, i64)> {
    let mut alphabet = Vec::new();
    let mut push = |sym: GeneratorSymbol, mag: i64| {
        alphabet.push((sym, mag));
        alphabet.push((sym, -mag));
    };
    push(GeneratorSymbol::Ta(1), 1);
    push(GeneratorSymbol::Tb(1), k as i64);
    for i in 2..=genus {
        push(GeneratorSymbol::Ta(i), 1);
        push(GeneratorSymbol::Tb(i), 1);
    }
    for i in 1..genus {
        push(GeneratorSymbol::Tc(i), 1);
    }
    alphabet
}

/// Finds a witness word for a primitive vector `v` not on the unit line of
/// `e_1`: the chain-twist shortcut covers vectors supported on the first
/// handle with a `b_1` component; the rest is a breadth-first search over the
/// liftable alphabet, deduplicated by image vector. Exhaustion is reported,
/// never hidden.
pub fn witness_self_normalizing(
    v: &[u64],
    genus: usize,
    k: u64,
    max_len: usize,
) -> Result<WitnessReport, CensusError> {
    if genus < 2 {
        return Err(CensusError::BadGenus { min: 2, got: genus });
    }
    if k < 2 {
        return Err(CensusError::BadModulus(k));
    }
    let n = 2 * genus;
    assert_eq!(v.len(), n, "vector length must be 2g");
    let v: Vec<u64> = v.iter().map(|&x| x % k).collect();
    if !is_primitive(&v, k) {
        return Err(CensusError::NotPrimitive(k));
    }
    let mut e1 = vec![0u64; n];
    e1[0] = 1 % k;
    if is_unit_multiple(&v, &e1, k) {
        return Err(CensusError::ExcludedVector);
    }

    let report = |word: Word, image: Vec<u64>| WitnessReport {
        genus,
        modulus: k,
        vector: v.clone(),
        word,
        image,
    };

    // Shortcut: vectors on the first handle with a nonzero b_1 component are
    // moved off their line by the first chain twist.
    if v[2..].iter().all(|&x| x == 0) && v[1] != 0 {
        let word = Word::from_letters(genus, &[(GeneratorSymbol::Tc(1), 1)]);
        let image = word.evaluate_mod(k)?.apply(&v);
        if !is_unit_multiple(&image, &v, k) {
            return Ok(report(word, image));
        }
    }

    let alphabet = witness_alphabet(genus, k);
    let mats: Vec<ResidueMatrix> = alphabet
        .iter()
        .map(|(sym, exp)| {
            Ok(crate::generators::symbol_power(*sym, &BigInt::from(*exp), genus)?.mod_reduce(k)?)
        })
        .collect::<Result<_, CensusError>>()?;

    type SearchState = (Vec<u64>, Vec<(GeneratorSymbol, i64)>);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([v.clone()]);
    let mut queue: VecDeque<SearchState> = VecDeque::from([(v.clone(), Vec::new())]);
    while let Some((current, path)) = queue.pop_front() {
        if path.len() >= max_len {
            continue;
        }
        for (idx, mat) in mats.iter().enumerate() {
            let image = mat.apply(&current);
            if seen.contains(&image) {
                continue;
            }
            let mut path2 = path.clone();
            path2.push(alphabet[idx]);
            if !is_unit_multiple(&image, &v, k) {
                let word = Word::from_letters(genus, &path2);
                return Ok(report(word, image));
            }
            seen.insert(image.clone());
            queue.push_back((image, path2));
        }
    }
    Err(CensusError::SearchExhausted { vector: v, max_len })
}

/// Summary of an exhaustive (or sampled) self-normalizing verification.
#[derive(Clone, Debug)]
pub struct SelfNormSummary {
    pub genus: usize,
    pub modulus: u64,
    pub eligible: u64,
    pub witnessed: u64,
    pub max_word_len: usize,
    pub sampled: bool,
    pub reports: Vec<WitnessReport>,
}

/// Exhaustive verification over all primitive vectors off the unit line of
/// `e_1`. Fails on the first unwitnessed vector.
pub fn verify_self_normalizing(
    genus: usize,
    k: u64,
    max_len: usize,
) -> Result<SelfNormSummary, CensusError> {
    if genus < 2 {
        return Err(CensusError::BadGenus { min: 2, got: genus });
    }
    check_feasible(k, 2 * genus)?;
    let n = 2 * genus;
    let mut e1 = vec![0u64; n];
    e1[0] = 1 % k;
    let mut summary = SelfNormSummary {
        genus,
        modulus: k,
        eligible: 0,
        witnessed: 0,
        max_word_len: 0,
        sampled: false,
        reports: Vec::new(),
    };
    for v in enumerate_primitive(k, n)? {
        if is_unit_multiple(&v, &e1, k) {
            continue;
        }
        summary.eligible += 1;
        let report = witness_self_normalizing(&v, genus, k, max_len)?;
        summary.max_word_len = summary.max_word_len.max(report.word.len());
        summary.witnessed += 1;
        summary.reports.push(report);
    }
    Ok(summary)
}

/// Sampled verification for state spaces beyond the feasibility bound:
/// checks `samples` random primitive vectors. The summary is marked as
/// sampled; it is evidence, not proof.
pub fn verify_self_normalizing_sampled<R: Rng>(
    genus: usize,
    k: u64,
    max_len: usize,
    samples: usize,
    rng: &mut R,
) -> Result<SelfNormSummary, CensusError> {
    if genus < 2 {
        return Err(CensusError::BadGenus { min: 2, got: genus });
    }
    if k < 2 {
        return Err(CensusError::BadModulus(k));
    }
    let n = 2 * genus;
    let mut e1 = vec![0u64; n];
    e1[0] = 1 % k;
    let mut summary = SelfNormSummary {
        genus,
        modulus: k,
        eligible: 0,
        witnessed: 0,
        max_word_len: 0,
        sampled: true,
        reports: Vec::new(),
    };
    while summary.eligible < samples as u64 {
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        if !is_primitive(&v, k) || is_unit_multiple(&v, &e1, k) {
            continue;
        }
        summary.eligible += 1;
        let report = witness_self_normalizing(&v, genus, k, max_len)?;
        summary.max_word_len = summary.max_word_len.max(report.word.len());
        summary.witnessed += 1;
        summary.reports.push(report);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_counts() {
        assert_eq!(count_primitive(2, 4).unwrap(), BigInt::from(15));
        assert_eq!(count_primitive(6, 2).unwrap(), BigInt::from(24));
        assert_eq!(count_primitive(3, 2).unwrap(), BigInt::from(8));
        assert!(count_primitive(1, 2).is_err());
        // Brute force agreement.
        for (k, n) in [(2u64, 4usize), (3, 2), (6, 2), (4, 4)] {
            let listed = enumerate_primitive(k, n).unwrap().len();
            assert_eq!(BigInt::from(listed), count_primitive(k, n).unwrap(), "k={k} n={n}");
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_e1(1, 3).unwrap().len(), 8);
        assert_eq!(orbit_e1(2, 2).unwrap().len(), 15);
        let orbit = orbit_e1(2, 2).unwrap();
        assert!(orbit.contains(&vec![0, 1, 0, 0]));
    }

    #[test]
    fn orbit_equals_primitive_set() {
        for (g, k) in [(1usize, 2u64), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)] {
            let orbit = orbit_e1(g, k).unwrap();
            let primitive: BTreeSet<Vec<u64>> =
                enumerate_primitive(k, 2 * g).unwrap().into_iter().collect();
            assert_eq!(orbit, primitive, "g={g} k={k}");
        }
    }

    #[test]
    fn index_tables() {
        let t = index_table(2, 2).unwrap();
        assert_eq!(t.phi, 1);
        assert_eq!(t.primitive_count, BigInt::from(15));
        assert_eq!(t.lmod_index, BigInt::from(15));

        let t = index_table(1, 5).unwrap();
        assert_eq!(t.phi, 4);
        assert_eq!(t.primitive_count, BigInt::from(24));
        assert_eq!(t.lmod_index, BigInt::from(6));

        // phi(2) = 1: liftable and stabilizer coincide.
        let t = index_table(3, 2).unwrap();
        assert_eq!(t.stab_e1_index, t.lmod_index);
    }

    #[test]
    fn witness_examples() {
        // b_1 gets the chain-twist shortcut.
        let r = witness_self_normalizing(&[0, 1, 0, 0], 2, 2, 4).unwrap();
        assert_eq!(r.word.to_string(), "Tc1");
        assert_eq!(r.image, vec![1, 1, 1, 0]);
        assert!(r.reverify().unwrap());

        // e_1 is excluded.
        assert!(matches!(
            witness_self_normalizing(&[1, 0, 0, 0], 2, 2, 4),
            Err(CensusError::ExcludedVector)
        ));

        // a_2 moves under the second handle twist.
        let r = witness_self_normalizing(&[0, 0, 1, 0], 2, 2, 4).unwrap();
        assert_eq!(r.word.to_string(), "Tb2");
        assert_eq!(r.image, vec![0, 0, 1, 1]);
        assert!(r.reverify().unwrap());
    }

    #[test]
    fn selfnorm_exhaustive_small() {
        let s = verify_self_normalizing(2, 2, 4).unwrap();
        assert_eq!(s.eligible, 14);
        assert_eq!(s.witnessed, 14);
        assert!(s.max_word_len <= 2, "max length {}", s.max_word_len);
        for r in &s.reports {
            assert!(r.reverify().unwrap());
        }

        let s = verify_self_normalizing(2, 3, 4).unwrap();
        assert_eq!(s.eligible, 78);
        assert_eq!(s.witnessed, 78);
        assert!(s.max_word_len <= 4);
    }

    #[test]
    fn selfnorm_scope_errors() {
        assert!(matches!(
            verify_self_normalizing(1, 2, 4),
            Err(CensusError::BadGenus { min: 2, .. })
        ));
        assert!(matches!(
            verify_self_normalizing(4, 7, 4),
            Err(CensusError::Infeasible { .. })
        ));
    }
}
