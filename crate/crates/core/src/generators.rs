//! Symplectic images of the standard mapping-class generators, the block
//! embedding of `SL(2,Z)` into `Sp(2g,Z)`, chains of homology classes, and
//! bounding-pair data.
//!
//! Conventions, shared by the whole crate:
//! - basis order `(a_1, b_1, ..., a_g, b_g)` identified with `e_1..e_{2g}`;
//! - a Dehn twist about a curve with class `c` acts as the transvection
//!   `x -> x - <x, c> c`, so `Ta1` at genus 1 is `[[1, 1], [0, 1]]`;
//! - `[a_i] = e_{2i-1}`, `[b_i] = e_{2i}`, `[c_i] = e_{2i-1} - e_{2i+1}`
//!   (the chain curve joining handles `i` and `i+1`; transvections depend on
//!   the class only up to sign).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{symplectic_form_matrix, IntMatrix, MatrixError, SymplecticForm};
use crate::words::{GeneratorSymbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GensError {
    #[error("genus must be at least {min}, got {got}")]
    BadGenus { min: usize, got: usize },
    #[error("symbol {0} is out of range for genus {1}")]
    BadIndex(String, usize),
    #[error("embedded block must be 2x2 with determinant 1")]
    NotUnimodularBlock,
    #[error("selection parity: {0}")]
    Parity(String),
    #[error("chain condition violated: {0}")]
    ChainCondition(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Gamma1(#[from] crate::gamma1::Gamma1Error),
}

/// The transvection `x -> x - m <x, c> c` as a matrix, i.e. the `m`-th power
/// of the twist about class `c`. Closed form: `I - m c (Jc)^T`.
pub fn transvection_power(class: &[BigInt], m: &BigInt, genus: usize) -> IntMatrix {
    let n = 2 * genus;
    assert_eq!(class.len(), n, "class length must be 2g");
    let j = symplectic_form_matrix(genus);
    let jc = j.apply(class).expect("conformable");
    let mut out = IntMatrix::identity(n);
    for (r, class_r) in class.iter().enumerate() {
        if class_r.is_zero() {
            continue;
        }
        for (c, jc_c) in jc.iter().enumerate() {
            if jc_c.is_zero() {
                continue;
            }
            let v = out.get(r, c) - m * class_r * jc_c;
            out.set(r, c, v);
        }
    }
    out
}

/// Homology class of a twist symbol, or `None` for non-twist symbols.
pub fn twist_class(sym: GeneratorSymbol, genus: usize) -> Option<Vec<BigInt>> {
    let n = 2 * genus;
    let mut v = vec![BigInt::zero(); n];
    match sym {
        GeneratorSymbol::Ta(i) if i >= 1 && i <= genus => v[2 * i - 2] = BigInt::one(),
        GeneratorSymbol::Tb(i) if i >= 1 && i <= genus => v[2 * i - 1] = BigInt::one(),
        GeneratorSymbol::Tc(i) if i >= 1 && i < genus => {
            v[2 * i - 2] = BigInt::one();
            v[2 * i] = BigInt::from(-1);
        }
        _ => return None,
    }
    Some(v)
}

/// Symplectic image of a twist generator.
pub fn twist_matrix(sym: GeneratorSymbol, genus: usize) -> Result<IntMatrix, GensError> {
    twist_power(sym, &BigInt::one(), genus)
}

/// Symplectic image of a twist generator power.
pub fn twist_power(sym: GeneratorSymbol, exp: &BigInt, genus: usize) -> Result<IntMatrix, GensError> {
    let class =
        twist_class(sym, genus).ok_or_else(|| GensError::BadIndex(sym.to_string(), genus))?;
    Ok(transvection_power(&class, exp, genus))
}

/// `-I_{2g}`: the homology action of the hyperelliptic involution.
pub fn iota_matrix(genus: usize) -> IntMatrix {
    IntMatrix::identity(2 * genus).neg()
}

/// Symplectic image of any generator power. Bounding-pair letters are
/// Torelli elements and evaluate to the identity; braid letters have no
/// image here.
pub fn symbol_power(
    sym: GeneratorSymbol,
    exp: &BigInt,
    genus: usize,
) -> Result<IntMatrix, WordError> {
    sym.validate(genus)?;
    match sym {
        GeneratorSymbol::Ta(_) | GeneratorSymbol::Tb(_) | GeneratorSymbol::Tc(_) => {
            let class = twist_class(sym, genus).expect("validated twist symbol");
            Ok(transvection_power(&class, exp, genus))
        }
        GeneratorSymbol::Iota => {
            if (exp % 2u8).is_zero() {
                Ok(IntMatrix::identity(2 * genus))
            } else {
                Ok(iota_matrix(genus))
            }
        }
        GeneratorSymbol::F(_) => Ok(IntMatrix::identity(2 * genus)),
        GeneratorSymbol::Sigma(_) => Err(WordError::BraidLetter(sym.to_string())),
    }
}

/// Block embedding `SL(2,Z) -> Sp(2g,Z)`: the 2x2 block acts on the first
/// handle, identity elsewhere.
pub fn eta_embed(a: &IntMatrix, genus: usize) -> Result<IntMatrix, GensError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(GensError::NotUnimodularBlock);
    }
    if a.determinant()? != BigInt::one() {
        return Err(GensError::NotUnimodularBlock);
    }
    let mut out = IntMatrix::identity(2 * genus);
    for r in 0..2 {
        for c in 0..2 {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    Ok(out)
}

/// An integer homology class of the closed genus-`g` surface, in coordinates
/// over the basis `(a_1, b_1, ..., a_g, b_g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    genus: usize,
    coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn new(genus: usize, coords: Vec<BigInt>) -> Result<Self, GensError> {
        if coords.len() != 2 * genus {
            return Err(GensError::Matrix(MatrixError::DimensionMismatch(format!(
                "homology class needs 2g = {} coordinates, got {}",
                2 * genus,
                coords.len()
            ))));
        }
        Ok(HomologyClass { genus, coords })
    }

    pub fn from_coords(genus: usize, coords: &[i64]) -> Self {
        HomologyClass::new(genus, coords.iter().map(|&c| BigInt::from(c)).collect())
            .expect("invalid class literal")
    }

    pub fn unit(genus: usize, index: usize) -> Self {
        let mut coords = vec![BigInt::zero(); 2 * genus];
        coords[index] = BigInt::one();
        HomologyClass { genus, coords }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn pairing(&self, other: &HomologyClass) -> BigInt {
        SymplecticForm::new(self.genus).pairing(&self.coords, &other.coords)
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass { genus: self.genus, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Per-condition validity report for an ordered collection of classes:
/// (a) consecutive algebraic intersection +1, (b) non-adjacent intersection 0,
/// (c) linear independence over Z. Condition (c) is reported, never enforced;
/// it cannot hold for collections longer than the rank 2g.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub consecutive: bool,
    pub nonadjacent: bool,
    pub independent: bool,
}

impl ChainReport {
    pub fn all(&self) -> bool {
        self.consecutive && self.nonadjacent && self.independent
    }
}

/// An ordered collection of homology classes with its validity report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    genus: usize,
    classes: Vec<HomologyClass>,
    report: ChainReport,
}

impl Chain {
    pub fn new(genus: usize, classes: Vec<HomologyClass>) -> Result<Self, GensError> {
        for c in &classes {
            if c.genus() != genus {
                return Err(GensError::BadGenus { min: genus, got: c.genus() });
            }
        }
        let report = validate_chain(&classes);
        Ok(Chain { genus, classes, report })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn classes(&self) -> &[HomologyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn report(&self) -> ChainReport {
        self.report
    }
}

fn validate_chain(classes: &[HomologyClass]) -> ChainReport {
    let n = classes.len();
    let mut consecutive = true;
    let mut nonadjacent = true;
    for i in 0..n {
        for j in i + 1..n {
            let p = classes[i].pairing(&classes[j]);
            if j == i + 1 {
                if p != BigInt::one() {
                    consecutive = false;
                }
            } else if !p.is_zero() {
                nonadjacent = false;
            }
        }
    }
    let independent = if n == 0 {
        true
    } else {
        let rows = 2 * classes[0].genus();
        let entries: Vec<BigInt> = classes.iter().flat_map(|c| c.coords().iter().cloned()).collect();
        match IntMatrix::new(n, rows, entries) {
            Ok(m) => m.rank() == n,
            Err(_) => false,
        }
    };
    ChainReport { consecutive, nonadjacent, independent }
}

/// The standard length-(2g+1) chain through all handles, with orientations
/// chosen so that every consecutive pairing is +1:
/// `(a_1, b_1, a_2 - a_1, b_2, a_3 - a_2, ..., b_g, -a_g)`.
///
/// The full chain is never independent (2g+1 classes in rank 2g); its odd
/// positions sum to zero.
pub fn standard_chain(genus: usize) -> Result<Chain, GensError> {
    if genus < 2 {
        return Err(GensError::BadGenus { min: 2, got: genus });
    }
    let mut classes = Vec::with_capacity(2 * genus + 1);
    classes.push(HomologyClass::unit(genus, 0)); // a_1
    classes.push(HomologyClass::unit(genus, 1)); // b_1
    for i in 1..genus {
        // a_{i+1} - a_i
        let c = HomologyClass::unit(genus, 2 * i).add(&HomologyClass::unit(genus, 2 * i - 2).neg());
        classes.push(c);
        classes.push(HomologyClass::unit(genus, 2 * i + 1)); // b_{i+1}
    }
    classes.push(HomologyClass::unit(genus, 2 * genus - 2).neg()); // -a_g
    Chain::new(genus, classes)
}

/// Selection of a sub-collection of a chain: either the full (odd-length)
/// chain, or an even-length ordered subcollection given by zero-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSelection {
    Full,
    Subcollection(Vec<usize>),
}

/// A bounding-pair datum: the derived odd chain, its boundary class (the sum
/// of the odd-position classes), and the genus of the bounded subsurface.
/// The associated mapping class is a product of opposite twists about two
/// curves in the boundary class, so its symplectic image is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingPairSpec {
    derived: Chain,
    boundary: HomologyClass,
    genus: usize,
}

impl BoundingPairSpec {
    pub fn derived_chain(&self) -> &Chain {
        &self.derived
    }

    pub fn boundary_class(&self) -> &HomologyClass {
        &self.boundary
    }

    /// Genus of the subsurface bounded by the pair: (derived length - 1) / 2.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The symplectic image of the associated bounding-pair map.
    pub fn matrix(&self, surface_genus: usize) -> IntMatrix {
        IntMatrix::identity(2 * surface_genus)
    }
}

/// Builds the bounding pair associated with a chain selection.
///
/// A full selection requires odd length. An even subcollection
/// `(y_{i_1}, ..., y_{i_l})` derives the odd chain `(n_1, ..., n_{l-1})` with
/// `n_j` the sum of the original classes from position `i_j` up to (but not
/// including) `i_{j+1}`; the derived chain must satisfy condition (a).
pub fn bounding_pair(
    chain: &Chain,
    selection: &ChainSelection,
) -> Result<BoundingPairSpec, GensError> {
    let derived: Vec<HomologyClass> = match selection {
        ChainSelection::Full => {
            if chain.len().is_multiple_of(2) {
                return Err(GensError::Parity(format!(
                    "full selection requires odd length, got {}",
                    chain.len()
                )));
            }
            chain.classes().to_vec()
        }
        ChainSelection::Subcollection(indices) => {
            if indices.len() % 2 != 0 || indices.is_empty() {
                return Err(GensError::Parity(format!(
                    "subcollection must have even positive length, got {}",
                    indices.len()
                )));
            }
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GensError::Parity("indices must be strictly increasing".into()));
            }
            if *indices.last().unwrap() >= chain.len() {
                return Err(GensError::Parity("index beyond chain length".into()));
            }
            (0..indices.len() - 1)
                .map(|j| {
                    let mut acc = chain.classes()[indices[j]].clone();
                    for p in indices[j] + 1..indices[j + 1] {
                        acc = acc.add(&chain.classes()[p]);
                    }
                    acc
                })
                .collect()
        }
    };
    let derived = Chain::new(chain.genus(), derived)?;
    if !derived.report().consecutive {
        return Err(GensError::ChainCondition(
            "derived chain has a consecutive pairing different from +1".into(),
        ));
    }
    let mut boundary = HomologyClass::new(
        chain.genus(),
        vec![BigInt::zero(); 2 * chain.genus()],
    )?;
    for (pos, class) in derived.classes().iter().enumerate() {
        if pos % 2 == 0 {
            boundary = boundary.add(class);
        }
    }
    let genus = (derived.len() - 1) / 2;
    Ok(BoundingPairSpec { derived, boundary, genus })
}

/// The bounding pair behind the letter `F<i>`: the contiguous prefix subchain
/// of the standard chain of length `2i+3`, a bounding pair of genus `i+1`
/// meeting the first handle. Valid for `1 <= i <= g-1`.
///
/// Indexing convention: the family is labelled `F_1..F_{g-1}` with `F_i` of
/// genus `i+1`; the alternative labelling by genus `i` up to `F_g` describes
/// the same pairs shifted by one and is reachable through [`bounding_pair`]
/// on any odd subchain.
pub fn bounding_pair_f(index: usize, genus: usize) -> Result<BoundingPairSpec, GensError> {
    if genus < 2 {
        return Err(GensError::BadGenus { min: 2, got: genus });
    }
    if index == 0 || index > genus - 1 {
        return Err(GensError::BadIndex(format!("F{index}"), genus));
    }
    let chain = standard_chain(genus)?;
    let prefix = Chain::new(genus, chain.classes()[..2 * index + 3].to_vec())?;
    bounding_pair(&prefix, &ChainSelection::Full)
}

/// Assembles the liftable generating set for `g >= 3`, `k >= 2`: the unit
/// coset words (the identity-unit one replaced by the empty word), lifted
/// congruence-subgroup generator words in `{Ta1, Tb1}`, the bounding-pair
/// letters `F1..F(g-1)`, and the twist letters away from the first handle
/// plus all chain twists.
pub fn generating_set_lmod(genus: usize, k: u64) -> Result<Vec<Word>, GensError> {
    if genus < 3 {
        return Err(GensError::BadGenus { min: 3, got: genus });
    }
    let mut out = Vec::new();
    for rep in crate::gamma1::unit_coset_words(k)? {
        if rep.unit == 1 {
            out.push(Word::empty(genus));
        } else {
            out.push(regenus(&rep.word, genus)?);
        }
    }
    for gen in crate::gamma1::gamma1_generators(k)? {
        out.push(regenus(&gen.word, genus)?);
    }
    for i in 1..genus {
        out.push(Word::new(genus, vec![(GeneratorSymbol::F(i), BigInt::one())])?);
    }
    for i in 2..=genus {
        out.push(Word::new(genus, vec![(GeneratorSymbol::Ta(i), BigInt::one())])?);
        out.push(Word::new(genus, vec![(GeneratorSymbol::Tb(i), BigInt::one())])?);
    }
    for i in 1..genus {
        out.push(Word::new(genus, vec![(GeneratorSymbol::Tc(i), BigInt::one())])?);
    }
    Ok(out)
}

/// Reinterprets a word in a larger genus context (letters must stay valid).
pub fn regenus(word: &Word, genus: usize) -> Result<Word, WordError> {
    Word::new(genus, word.letters().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_symplectic;
    use crate::words::parse_word;

    #[test]
    fn twist_matrices_pinned() {
        let ta1_g1 = twist_matrix(GeneratorSymbol::Ta(1), 1).unwrap();
        assert_eq!(ta1_g1, IntMatrix::from_rows(&[&[1, 1], &[0, 1]]));

        let tb1_g2 = twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        assert_eq!(
            tb1_g2,
            IntMatrix::from_rows(&[
                &[1, 0, 0, 0],
                &[-1, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ])
        );

        let tc1_g2 = twist_matrix(GeneratorSymbol::Tc(1), 2).unwrap();
        assert_eq!(
            tc1_g2,
            IntMatrix::from_rows(&[
                &[1, 1, 0, -1],
                &[0, 1, 0, 0],
                &[0, -1, 1, 1],
                &[0, 0, 0, 1],
            ])
        );
    }

    #[test]
    fn twist_sign_depends_only_on_class_squared() {
        let class = twist_class(GeneratorSymbol::Tc(1), 2).unwrap();
        let neg: Vec<BigInt> = class.iter().map(|c| -c).collect();
        let m = BigInt::from(3);
        assert_eq!(transvection_power(&class, &m, 2), transvection_power(&neg, &m, 2));
    }

    #[test]
    fn twists_are_symplectic() {
        for g in 1..=4 {
            for i in 1..=g {
                for sym in [GeneratorSymbol::Ta(i), GeneratorSymbol::Tb(i)] {
                    let m = twist_matrix(sym, g).unwrap();
                    assert!(is_symplectic(&m, g).unwrap());
                    assert_eq!(m.determinant().unwrap(), BigInt::one());
                }
            }
            for i in 1..g {
                let m = twist_matrix(GeneratorSymbol::Tc(i), g).unwrap();
                assert!(is_symplectic(&m, g).unwrap());
                assert_eq!(m.determinant().unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn iota_checks() {
        let m = iota_matrix(2);
        assert_eq!(m, IntMatrix::identity(4).neg());
        assert_eq!(m.determinant().unwrap(), BigInt::one());
        let word = parse_word("(Ta1 Tb1)^3 (Ta2 Tb2)^-3", 2).unwrap();
        assert_eq!(word.evaluate().unwrap(), m);
    }

    #[test]
    fn eta_embedding() {
        assert_eq!(eta_embed(&IntMatrix::identity(2), 3).unwrap(), IntMatrix::identity(6));
        let s = IntMatrix::from_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(
            eta_embed(&s, 2).unwrap(),
            IntMatrix::from_rows(&[
                &[0, 1, 0, 0],
                &[-1, 0, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ])
        );
        let bad = IntMatrix::from_rows(&[&[1, 0], &[0, -1]]);
        assert!(eta_embed(&bad, 2).is_err());
    }

    #[test]
    fn standard_chain_g2() {
        let chain = standard_chain(2).unwrap();
        assert_eq!(chain.len(), 5);
        let expect = [
            HomologyClass::from_coords(2, &[1, 0, 0, 0]),
            HomologyClass::from_coords(2, &[0, 1, 0, 0]),
            HomologyClass::from_coords(2, &[-1, 0, 1, 0]),
            HomologyClass::from_coords(2, &[0, 0, 0, 1]),
            HomologyClass::from_coords(2, &[0, 0, -1, 0]),
        ];
        assert_eq!(chain.classes(), &expect);
        let report = chain.report();
        assert!(report.consecutive);
        assert!(report.nonadjacent);
        assert!(!report.independent);
        assert!(standard_chain(1).is_err());
    }

    #[test]
    fn subchains_validate() {
        let g = 2;
        let ok = Chain::new(
            g,
            vec![HomologyClass::unit(g, 0), HomologyClass::unit(g, 1)],
        )
        .unwrap();
        assert!(ok.report().all());

        let bad = Chain::new(
            g,
            vec![HomologyClass::unit(g, 0), HomologyClass::unit(g, 2)],
        )
        .unwrap();
        assert!(!bad.report().consecutive);
    }

    #[test]
    fn bounding_pair_prefix() {
        let chain = standard_chain(2).unwrap();
        let prefix = Chain::new(2, chain.classes()[..3].to_vec()).unwrap();
        let bp = bounding_pair(&prefix, &ChainSelection::Full).unwrap();
        assert_eq!(*bp.boundary_class(), HomologyClass::unit(2, 2));
        assert_eq!(bp.genus(), 1);
        for class in bp.derived_chain().classes() {
            assert_eq!(bp.boundary_class().pairing(class), BigInt::zero());
        }
        assert_eq!(bp.matrix(2), IntMatrix::identity(4));
    }

    #[test]
    fn bounding_pair_subcollection() {
        let chain = standard_chain(2).unwrap();
        // (a_1, b_2) sits at positions 0 and 3.
        let bp = bounding_pair(&chain, &ChainSelection::Subcollection(vec![0, 3])).unwrap();
        let eta1 = HomologyClass::from_coords(2, &[0, 1, 1, 0]);
        assert_eq!(bp.derived_chain().classes(), std::slice::from_ref(&eta1));
        assert_eq!(*bp.boundary_class(), eta1);
    }

    #[test]
    fn bounding_pair_parity_errors() {
        let chain = standard_chain(2).unwrap();
        let even = Chain::new(2, chain.classes()[..4].to_vec()).unwrap();
        assert!(matches!(
            bounding_pair(&even, &ChainSelection::Full),
            Err(GensError::Parity(_))
        ));
        assert!(matches!(
            bounding_pair(&chain, &ChainSelection::Subcollection(vec![0, 1, 2])),
            Err(GensError::Parity(_))
        ));
    }

    #[test]
    fn boundary_orthogonality_all_odd_prefixes() {
        for g in 2..=4 {
            let chain = standard_chain(g).unwrap();
            for end in (3..=chain.len()).step_by(2) {
                let sub = Chain::new(g, chain.classes()[..end].to_vec()).unwrap();
                let bp = bounding_pair(&sub, &ChainSelection::Full).unwrap();
                for class in sub.classes() {
                    assert_eq!(bp.boundary_class().pairing(class), BigInt::zero());
                }
                assert_eq!(bp.matrix(g), IntMatrix::identity(2 * g));
            }
        }
    }

    #[test]
    fn f_family() {
        for g in 2..=4 {
            for i in 1..g {
                let bp = bounding_pair_f(i, g).unwrap();
                assert_eq!(bp.genus(), i + 1);
            }
            assert!(bounding_pair_f(g, g).is_err());
        }
    }
}

#[cfg(test)]
mod generating_set_tests {
    use super::*;
    use crate::lifting::{lmod_contains, CoverParams};
    use crate::words::parse_word;

    #[test]
    fn lmod_generating_set_g3_k2() {
        let set = generating_set_lmod(3, 2).unwrap();
        let cover = CoverParams::new(3, 2).unwrap();
        for word in &set {
            let m = word.evaluate().unwrap();
            assert!(
                lmod_contains(&m, &cover).unwrap().holds,
                "generator {word} fails the criterion"
            );
        }
        // With two sheets the only unit is 1, so the coset part contributes
        // exactly the empty word.
        assert!(set.iter().filter(|w| w.is_empty()).count() == 1);
        // Bounding-pair letters evaluate to the identity.
        for word in set.iter().filter(|w| {
            w.letters().iter().any(|(s, _)| matches!(s, GeneratorSymbol::F(_)))
        }) {
            assert!(word.evaluate().unwrap().is_identity());
        }
    }

    #[test]
    fn lmod_generating_set_g3_k5() {
        let set = generating_set_lmod(3, 5).unwrap();
        let cover = CoverParams::new(3, 5).unwrap();
        for word in &set {
            assert!(lmod_contains(&word.evaluate().unwrap(), &cover).unwrap().holds);
        }
        assert!(generating_set_lmod(2, 2).is_err());
    }

    #[test]
    fn braid_letters_have_no_symplectic_image() {
        let w = parse_word("s1", 2).unwrap();
        assert!(matches!(w.evaluate(), Err(crate::words::WordError::BraidLetter(_))));
    }
}
