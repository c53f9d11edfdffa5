//! Braid words on the sphere with marked points: the permutation
//! representation, pure-braid conjugate words, the stabilizer of the first
//! two marked points at the `Z_2`-homology level, and the lift of braid
//! letters to twist words through the hyperelliptic correspondence.
//!
//! On `n = 2g+2` marked points the half twists `s1..s(2g+1)` correspond to
//! the twists along the standard chain `(a_1, b_1, c_1, b_2, c_2, ..., b_g,
//! a_g)`; the lift is well defined up to the hyperelliptic involution, so
//! identities are certified at the symplectic level up to sign.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::words::{parse_braid_letters, GeneratorSymbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count must be at least 2, got {0}")]
    BadStrands(usize),
    #[error("letter s{index} out of range on {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("stabilizer test needs at least 6 marked points, got {0}")]
    TooFewStrands(usize),
    #[error("pair indices must satisfy 1 <= i < j <= n, got ({0}, {1})")]
    BadPair(usize, usize),
    #[error("lift requires 2g+2 strands for genus {genus}, got {strands}")]
    LiftStrands { genus: usize, strands: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A braid word on `n` strands: letters `(i, e)` meaning the half twist
/// `s_i` to the power `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, BigInt)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, BigInt)>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::BadStrands(strands));
        }
        for (i, exp) in &letters {
            if *i == 0 || *i >= strands {
                return Err(BraidError::IndexOutOfRange { index: *i, strands });
            }
            if exp.is_zero() {
                return Err(BraidError::Word(WordError::ExponentZero { offset: 0 }));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn from_letters(strands: usize, letters: &[(usize, i64)]) -> Self {
        BraidWord::new(
            strands,
            letters.iter().map(|&(i, e)| (i, BigInt::from(e))).collect(),
        )
        .expect("invalid braid literal")
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Parses the word DSL restricted to `s<i>` letters.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::BadStrands(strands));
        }
        Ok(BraidWord { strands, letters: parse_braid_letters(text, strands)? })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, BigInt)] {
        &self.letters
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|(i, e)| (*i, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::BadStrands(other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<(usize, BigInt)> = Vec::new();
        for (i, e) in &self.letters {
            match out.last_mut() {
                Some((j, acc)) if j == i => {
                    *acc += e;
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((*i, e.clone())),
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (pos, (i, e)) in self.letters.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            if e.is_one() {
                write!(f, "s{i}")?;
            } else {
                write!(f, "s{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A permutation of `{1, ..., n}`, stored as zero-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-based image of a one-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// `(self * other)(x) = self(other(x))`: the right factor acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Setwise image of a one-based point set.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&p| self.apply(p)).collect();
        out.sort_unstable();
        out
    }
}

/// The permutation image of a braid word: each letter `s_i^e` contributes the
/// transposition `(i, i+1)` when `e` is odd.
pub fn braid_permutation(w: &BraidWord) -> Permutation {
    let n = w.strands();
    let mut acc = Permutation::identity(n);
    for (i, e) in w.letters() {
        if (e % 2u8).is_zero() {
            continue;
        }
        let t = Permutation::transposition(n, i - 1, *i);
        acc = acc.compose(&t);
    }
    acc
}

pub fn is_pure(w: &BraidWord) -> bool {
    braid_permutation(w).is_identity()
}

/// Membership in the stabilizer of the class of the first two marked points,
/// decided at the permutation level: the word must preserve `{1, 2}`
/// setwise. Needs at least 6 points so the complementary representative has
/// a different size.
pub fn stab_first_pair_contains(w: &BraidWord) -> Result<bool, BraidError> {
    if w.strands() < 6 {
        return Err(BraidError::TooFewStrands(w.strands()));
    }
    let p = braid_permutation(w);
    Ok(p.image_of_set(&[1, 2]) == vec![1, 2])
}

/// Conjugator convention for the pure-braid words `tau_{ij}`.
///
/// `Standard` is `(s_{j-1} ... s_{i+1}) s_i^2 (...)^{-1}`. `Shifted` drops
/// the core one index, `(s_{j-1} ... s_i) s_{i-1}^2 (...)^{-1}`, so that
/// `tau_23 = s2 s1^2 s2^-1`; it degenerates for `i = 1`, where it falls
/// back to `Standard`. The two conventions agree on `tau_{i,i+1}` only for
/// `i = 1`, and both always yield pure stabilizer words.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TauConvention {
    #[default]
    Shifted,
    Standard,
}

/// The pure-braid word linking a pair of marked points, under the chosen
/// convention (see [`TauConvention`]).
pub fn tau_word_with(
    i: usize,
    j: usize,
    strands: usize,
    convention: TauConvention,
) -> Result<BraidWord, BraidError> {
    if i == 0 || i >= j || j > strands {
        return Err(BraidError::BadPair(i, j));
    }
    let (conj_lo, core) = match convention {
        TauConvention::Standard => (i + 1, i),
        TauConvention::Shifted if i >= 2 => (i, i - 1),
        TauConvention::Shifted => (i + 1, i),
    };
    let mut letters: Vec<(usize, i64)> = Vec::new();
    for s in (conj_lo..j).rev() {
        letters.push((s, 1));
    }
    letters.push((core, 2));
    for s in conj_lo..j {
        letters.push((s, -1));
    }
    Ok(BraidWord::from_letters(strands, &letters))
}

/// `tau_{ij}` under the default convention.
pub fn tau_word(i: usize, j: usize, strands: usize) -> Result<BraidWord, BraidError> {
    tau_word_with(i, j, strands, TauConvention::default())
}

/// Lifts a braid word through the hyperelliptic correspondence: `s_i` maps
/// to the twist along the i-th curve of the standard chain
/// `(a_1, b_1, c_1, b_2, ..., b_g, a_g)`. Requires `2g+2` strands.
pub fn delta_lift(w: &BraidWord, genus: usize) -> Result<Word, BraidError> {
    if w.strands() != 2 * genus + 2 {
        return Err(BraidError::LiftStrands { genus, strands: w.strands() });
    }
    let mut letters = Vec::with_capacity(w.letters().len());
    for (i, e) in w.letters() {
        let sym = chain_symbol(*i, genus);
        letters.push((sym, e.clone()));
    }
    Ok(Word::new(genus, letters)?)
}

/// The i-th curve of the standard chain, as a twist symbol.
fn chain_symbol(i: usize, genus: usize) -> GeneratorSymbol {
    if i == 1 {
        GeneratorSymbol::Ta(1)
    } else if i == 2 * genus + 1 {
        GeneratorSymbol::Ta(genus)
    } else if i.is_multiple_of(2) {
        GeneratorSymbol::Tb(i / 2)
    } else {
        GeneratorSymbol::Tc((i - 1) / 2)
    }
}

/// A `Z_2` homology class of the marked sphere: a sum of point classes
/// `beta_i`, stored modulo the relation that all points sum to zero, with
/// the lexicographically smaller representative as canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedClassVector {
    points: usize,
    bits: Vec<bool>,
}

impl MarkedClassVector {
    pub fn new(points: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), points);
        let complement: Vec<bool> = bits.iter().map(|b| !b).collect();
        let canonical = if bits <= complement { bits } else { complement };
        MarkedClassVector { points, bits: canonical }
    }

    /// The class of a single marked point (one-based).
    pub fn point(points: usize, i: usize) -> Self {
        let mut bits = vec![false; points];
        bits[i - 1] = true;
        MarkedClassVector::new(points, bits)
    }

    /// The class of a sum of marked points.
    pub fn sum(points: usize, indices: &[usize]) -> Self {
        let mut bits = vec![false; points];
        for &i in indices {
            bits[i - 1] ^= true;
        }
        MarkedClassVector::new(points, bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Action of a braid word: permute the point coordinates.
    pub fn act(&self, w: &BraidWord) -> Self {
        let p = braid_permutation(w);
        let mut bits = vec![false; self.points];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                bits[p.apply(i + 1) - 1] = true;
            }
        }
        MarkedClassVector::new(self.points, bits)
    }
}

/// Closure of a permutation set under composition.
// TODO: switch to an orbit-stabilizer chain if genus beyond 5 is ever
// needed; full closure materializes the whole group.
pub fn permutation_group_order(gens: &[Permutation]) -> u64 {
    if gens.is_empty() {
        return 1;
    }
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len() as u64
}

/// Report of the two-sheeted checks for the hyperelliptic generating family.
#[derive(Clone, Debug)]
pub struct TwoSheetReport {
    pub genus: usize,
    /// Per-generator liftability verdicts for `iota, Ta1, Tag, Tb1^2,
    /// Tb2..Tbg, Tc1..Tc(g-1)` (plus the genus-2 corollary set when g = 2).
    pub members: Vec<(String, bool)>,
    pub all_members: bool,
    /// Exact identity of the involution word at genus 2.
    pub iota_identity: Option<bool>,
    pub perm_group_order: u64,
    pub perm_group_order_expected: u64,
    pub perm_group_index: u64,
}

/// Verifies the membership direction of the two-sheeted generating family,
/// the involution word identity at genus 2, and the permutation image of the
/// stabilizer generators.
pub fn verify_two_sheet_generators(genus: usize) -> Result<TwoSheetReport, BraidError> {
    use crate::lifting::{lmod_contains, CoverParams};
    assert!(genus >= 2, "the hyperelliptic family needs genus at least 2");
    let cover = CoverParams::new(genus, 2).expect("valid cover");

    let mut candidates: Vec<(String, Word)> = vec![
        ("iota".into(), Word::from_letters(genus, &[(GeneratorSymbol::Iota, 1)])),
        ("Ta1".into(), Word::from_letters(genus, &[(GeneratorSymbol::Ta(1), 1)])),
        (
            format!("Ta{genus}"),
            Word::from_letters(genus, &[(GeneratorSymbol::Ta(genus), 1)]),
        ),
        ("Tb1^2".into(), Word::from_letters(genus, &[(GeneratorSymbol::Tb(1), 2)])),
    ];
    for i in 2..=genus {
        candidates.push((
            format!("Tb{i}"),
            Word::from_letters(genus, &[(GeneratorSymbol::Tb(i), 1)]),
        ));
    }
    for i in 1..genus {
        candidates.push((
            format!("Tc{i}"),
            Word::from_letters(genus, &[(GeneratorSymbol::Tc(i), 1)]),
        ));
    }
    if genus == 2 {
        candidates.push(("Ta2".into(), Word::from_letters(2, &[(GeneratorSymbol::Ta(2), 1)])));
    }

    let mut members = Vec::new();
    let mut all = true;
    for (name, word) in &candidates {
        let holds = lmod_contains(&word.evaluate()?, &cover)
            .expect("twist words evaluate to symplectic matrices")
            .holds;
        all &= holds;
        members.push((name.clone(), holds));
    }

    let iota_identity = if genus == 2 {
        let word = crate::words::parse_word("(Ta1 Tb1^2)^2 (Ta2 Tb2)^-3", 2)?;
        Some(word.evaluate()? == crate::generators::iota_matrix(2))
    } else {
        None
    };

    // Permutation image of the stabilizer generators s1, s3, s4, ..., s(2g+1).
    let n = 2 * genus + 2;
    let mut gens = vec![Permutation::transposition(n, 0, 1)];
    for i in 3..=2 * genus + 1 {
        gens.push(Permutation::transposition(n, i - 1, i));
    }
    let order = permutation_group_order(&gens);
    let expected: u64 = 2 * (1..=2 * genus as u64).product::<u64>();
    let full: u64 = (1..=n as u64).product();
    Ok(TwoSheetReport {
        genus,
        members,
        all_members: all,
        iota_identity,
        perm_group_order: order,
        perm_group_order_expected: expected,
        perm_group_index: full / order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn permutation_examples() {
        let p = braid_permutation(&bw("s1", 6));
        assert_eq!(p.image_of_set(&[1]), vec![2]);
        assert_eq!(p.image_of_set(&[2]), vec![1]);

        let p1 = braid_permutation(&bw("s1 s2 s1", 6));
        let p2 = braid_permutation(&bw("s2 s1 s2", 6));
        assert_eq!(p1, p2);
        assert_eq!(p1.apply(1), 3);
        assert_eq!(p1.apply(3), 1);
        assert_eq!(p1.apply(2), 2);

        assert!(is_pure(&bw("s2 s1^2 s2^-1", 6)));
    }

    #[test]
    fn permutation_is_homomorphism() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        let n = 6;
        let random_word = |rng: &mut StdRng| {
            let len = rng.gen_range(0..12);
            let letters: Vec<(usize, i64)> = (0..len)
                .map(|_| {
                    (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect();
            BraidWord::from_letters(n, &letters)
        };
        for _ in 0..200 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let uv = u.concat(&v).unwrap();
            assert_eq!(
                braid_permutation(&uv),
                braid_permutation(&u).compose(&braid_permutation(&v))
            );
        }
    }

    #[test]
    fn stabilizer_examples() {
        assert!(stab_first_pair_contains(&bw("s1", 6)).unwrap());
        assert!(!stab_first_pair_contains(&bw("s2", 6)).unwrap());
        assert!(stab_first_pair_contains(&bw("s3", 6)).unwrap());
        assert!(stab_first_pair_contains(&bw("s2 s1^2 s2^-1", 6)).unwrap());
        assert!(stab_first_pair_contains(&BraidWord::empty(6)).unwrap());
        assert!(stab_first_pair_contains(&bw("s1", 4)).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_word(1, 2, 6).unwrap().to_string(), "s1^2");
        assert_eq!(tau_word(2, 3, 6).unwrap().to_string(), "s2 s1^2 s2^-1");
        assert_eq!(
            tau_word_with(2, 3, 6, TauConvention::Standard).unwrap().to_string(),
            "s2^2"
        );
        assert!(tau_word(3, 3, 6).is_err());
        assert!(tau_word(0, 2, 6).is_err());

        for conv in [TauConvention::Shifted, TauConvention::Standard] {
            for i in 1..6 {
                for j in i + 1..=6 {
                    let t = tau_word_with(i, j, 6, conv).unwrap();
                    assert!(is_pure(&t), "tau({i},{j}) {conv:?}");
                    assert!(stab_first_pair_contains(&t).unwrap());
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let w = delta_lift(&bw("s1", 6), 2).unwrap();
        assert_eq!(w.to_string(), "Ta1");

        let lhs = delta_lift(&bw("s2 s1^2 s2^-1", 6), 2).unwrap();
        let rhs = delta_lift(&bw("s1^-1 s2^2 s1", 6), 2).unwrap();
        assert_eq!(lhs.evaluate().unwrap(), rhs.evaluate().unwrap());

        assert!(delta_lift(&BraidWord::empty(6), 2).unwrap().is_empty());
        assert!(delta_lift(&bw("s1", 8), 2).is_err());

        // Chain symbols at genus 3: s1..s7 -> Ta1 Tb1 Tc1 Tb2 Tc2 Tb3 Ta3.
        let lifted = delta_lift(&bw("s1 s2 s3 s4 s5 s6 s7", 8), 3).unwrap();
        assert_eq!(lifted.to_string(), "Ta1 Tb1 Tc1 Tb2 Tc2 Tb3 Ta3");
    }

    #[test]
    fn class_action_consistency() {
        let n = 6;
        let beta12 = MarkedClassVector::sum(n, &[1, 2]);
        for text in ["s1", "s3", "s4", "s5", "s2 s1^2 s2^-1"] {
            let w = bw(text, n);
            assert_eq!(beta12.act(&w), beta12, "{text}");
            assert!(stab_first_pair_contains(&w).unwrap());
        }
        let w = bw("s2", n);
        assert_ne!(beta12.act(&w), beta12);
        assert!(!stab_first_pair_contains(&w).unwrap());

        // The canonical representative folds complements together.
        let all_but_two = MarkedClassVector::sum(n, &[3, 4, 5, 6]);
        assert_eq!(all_but_two, beta12);
    }

    #[test]
    fn two_sheet_report_g2() {
        let r = verify_two_sheet_generators(2).unwrap();
        assert!(r.all_members, "{:?}", r.members);
        assert_eq!(r.iota_identity, Some(true));
        assert_eq!(r.perm_group_order, 48);
        assert_eq!(r.perm_group_order_expected, 48);
        assert_eq!(r.perm_group_index, 15);
    }

    #[test]
    fn two_sheet_report_g3() {
        let r = verify_two_sheet_generators(3).unwrap();
        assert!(r.all_members);
        assert_eq!(r.iota_identity, None);
        assert_eq!(r.perm_group_order, 2 * 720);
    }
}
