//! Membership predicates for liftability under the standard cyclic covers.
//!
//! For the k-sheeted cyclic cover of the genus-g surface, a mapping class
//! lifts iff its symplectic image `(d_ij)` has `k | d_{2i}` for every column
//! `i != 2` and `gcd(d_22, k) = 1`; equivalently iff it stabilizes the set of
//! unit multiples of `e_1` mod `k`. The stabilizer of `e_1` itself, the
//! intersection over all `k` (the ladder-cover criterion, over the integers),
//! and the lcm intersection law all live here.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::gcd_u64;
use crate::matrix::{is_symplectic, IntMatrix, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("matrix is not symplectic for genus {0}")]
    NotSymplectic(usize),
    #[error("cover parameters invalid: genus {genus}, sheets {sheets}")]
    BadCover { genus: usize, sheets: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Parameters of the standard k-sheeted regular cyclic cover of the closed
/// genus-g surface; the covering surface has genus `k(g-1) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverParams {
    genus: usize,
    sheets: u64,
}

impl CoverParams {
    pub fn new(genus: usize, sheets: u64) -> Result<Self, LiftError> {
        if genus < 1 || sheets < 2 {
            return Err(LiftError::BadCover { genus, sheets });
        }
        Ok(CoverParams { genus, sheets })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn sheets(&self) -> u64 {
        self.sheets
    }

    pub fn cover_genus(&self) -> u64 {
        self.sheets * (self.genus as u64 - 1) + 1
    }
}

/// Which predicate a verdict reports on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredicateKind {
    /// Liftable under the k-sheeted cover.
    Liftable { sheets: u64 },
    /// Stabilizes `e_1` mod k.
    StabilizesE1 { sheets: u64 },
    /// Liftable under every k-sheeted cover (integral row condition).
    Universal,
}

impl std::fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PredicateKind::Liftable { sheets } => write!(f, "liftable(k={sheets})"),
            PredicateKind::StabilizesE1 { sheets } => write!(f, "stab-e1(k={sheets})"),
            PredicateKind::Universal => write!(f, "universal"),
        }
    }
}

/// Re-checkable witness detail: either the failing entry with the congruence
/// it violates, or the unit scalar carrying `e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    FailingEntry { row: usize, col: usize, required: String },
    Unit { ell: u64 },
    IntegralUnit { sign: i8 },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub subject: IntMatrix,
    pub predicate: PredicateKind,
    pub holds: bool,
    pub witness: Witness,
}

fn residue(v: &BigInt, k: u64) -> u64 {
    let r = num_integer::Integer::mod_floor(v, &BigInt::from(k));
    u64::try_from(&r).expect("residue fits")
}

fn genus_of(m: &IntMatrix) -> Result<usize, LiftError> {
    if m.rows() != m.cols() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
        return Err(LiftError::NotSymplectic(m.rows() / 2));
    }
    let g = m.rows() / 2;
    if !is_symplectic(m, g)? {
        return Err(LiftError::NotSymplectic(g));
    }
    Ok(g)
}

/// Unit `l` with `M e_1 = l e_1` mod `k`, when the first column is a unit
/// multiple of `e_1`.
pub fn e1_image_unit(m: &IntMatrix, k: u64) -> Option<u64> {
    let ell = residue(m.get(0, 0), k);
    if gcd_u64(ell, k) != 1 {
        return None;
    }
    for r in 1..m.rows() {
        if residue(m.get(r, 0), k) != 0 {
            return None;
        }
    }
    Some(ell)
}

/// Liftability under the k-sheeted cover, decided on the second row: every
/// entry off column 2 must vanish mod k and the diagonal entry must be a
/// unit. Reports the unit `l` with `M e_1 = l e_1` mod `k` on success.
pub fn lmod_contains(m: &IntMatrix, cover: &CoverParams) -> Result<MembershipVerdict, LiftError> {
    let g = genus_of(m)?;
    if g != cover.genus() {
        return Err(LiftError::NotSymplectic(cover.genus()));
    }
    let k = cover.sheets();
    let predicate = PredicateKind::Liftable { sheets: k };
    for col in 0..2 * g {
        let entry = m.get(1, col);
        if col == 1 {
            let d = residue(entry, k);
            if gcd_u64(d, k) != 1 {
                return Ok(MembershipVerdict {
                    subject: m.clone(),
                    predicate,
                    holds: false,
                    witness: Witness::FailingEntry {
                        row: 2,
                        col: 2,
                        required: format!("gcd(d22, {k}) = 1, got d22 = {entry}"),
                    },
                });
            }
        } else if residue(entry, k) != 0 {
            return Ok(MembershipVerdict {
                subject: m.clone(),
                predicate,
                holds: false,
                witness: Witness::FailingEntry {
                    row: 2,
                    col: col + 1,
                    required: format!("{k} | entry, got {entry}"),
                },
            });
        }
    }
    let ell = e1_image_unit(m, k)
        .expect("row criterion implies the first column is a unit multiple of e1");
    Ok(MembershipVerdict { subject: m.clone(), predicate, holds: true, witness: Witness::Unit { ell } })
}

/// Stabilizer of `e_1` mod k: the first column must be congruent to `e_1`.
pub fn stab_e1_contains(m: &IntMatrix, cover: &CoverParams) -> Result<MembershipVerdict, LiftError> {
    let g = genus_of(m)?;
    if g != cover.genus() {
        return Err(LiftError::NotSymplectic(cover.genus()));
    }
    let k = cover.sheets();
    let predicate = PredicateKind::StabilizesE1 { sheets: k };
    for r in 0..2 * g {
        let want = if r == 0 { 1 % k } else { 0 };
        let got = residue(m.get(r, 0), k);
        if got != want {
            return Ok(MembershipVerdict {
                subject: m.clone(),
                predicate,
                holds: false,
                witness: Witness::FailingEntry {
                    row: r + 1,
                    col: 1,
                    required: format!("entry = {want} mod {k}, got {got}"),
                },
            });
        }
    }
    Ok(MembershipVerdict {
        subject: m.clone(),
        predicate,
        holds: true,
        witness: Witness::Unit { ell: 1 % k },
    })
}

/// Liftability under every cyclic cover at once: the integral condition
/// `d_{2i} = 0` for `i != 2` and `d_22 = +-1`.
pub fn umod_contains(m: &IntMatrix) -> Result<MembershipVerdict, LiftError> {
    let g = genus_of(m)?;
    let predicate = PredicateKind::Universal;
    for col in 0..2 * g {
        let entry = m.get(1, col);
        if col == 1 {
            if !entry.magnitude().is_one() {
                return Ok(MembershipVerdict {
                    subject: m.clone(),
                    predicate,
                    holds: false,
                    witness: Witness::FailingEntry {
                        row: 2,
                        col: 2,
                        required: format!("d22 = +-1, got {entry}"),
                    },
                });
            }
        } else if !entry.is_zero() {
            return Ok(MembershipVerdict {
                subject: m.clone(),
                predicate,
                holds: false,
                witness: Witness::FailingEntry {
                    row: 2,
                    col: col + 1,
                    required: format!("entry = 0, got {entry}"),
                },
            });
        }
    }
    let sign = if m.get(1, 1).is_positive() { 1 } else { -1 };
    Ok(MembershipVerdict {
        subject: m.clone(),
        predicate,
        holds: true,
        witness: Witness::IntegralUnit { sign },
    })
}

/// True iff `M` maps the span of all basis vectors except `e_2` into itself,
/// i.e. the second row vanishes outside column 2. This span is the image of
/// the ladder-cover homology.
pub fn stabilizes_ladder_image(m: &IntMatrix) -> Result<bool, LiftError> {
    let g = genus_of(m)?;
    for col in 0..2 * g {
        if col != 1 && !m.get(1, col).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lcm intersection law: returns membership under `k`, under `l`, and
/// under `lcm(k, l)`. The first two hold together iff the third does.
pub fn lcm_law(
    m: &IntMatrix,
    genus: usize,
    k: u64,
    l: u64,
) -> Result<(bool, bool, bool), LiftError> {
    let in_k = lmod_contains(m, &CoverParams::new(genus, k)?)?.holds;
    let in_l = lmod_contains(m, &CoverParams::new(genus, l)?)?.holds;
    let d = num_integer::lcm(k, l);
    let in_d = lmod_contains(m, &CoverParams::new(genus, d)?)?.holds;
    Ok((in_k, in_l, in_d))
}

/// Word-level wrappers: evaluate first, then decide on the matrix (the
/// criteria are purely homological, so the matrix is the ground truth).
pub fn lmod_contains_word(
    word: &crate::words::Word,
    cover: &CoverParams,
) -> Result<MembershipVerdict, LiftError> {
    let m = word.evaluate().map_err(|_| LiftError::NotSymplectic(cover.genus()))?;
    lmod_contains(&m, cover)
}

pub fn stab_e1_contains_word(
    word: &crate::words::Word,
    cover: &CoverParams,
) -> Result<MembershipVerdict, LiftError> {
    let m = word.evaluate().map_err(|_| LiftError::NotSymplectic(cover.genus()))?;
    stab_e1_contains(&m, cover)
}

pub fn umod_contains_word(word: &crate::words::Word) -> Result<MembershipVerdict, LiftError> {
    let m = word.evaluate().map_err(|_| LiftError::NotSymplectic(word.genus()))?;
    umod_contains(&m)
}

/// The criterion stated on the mod-k reduction: second row zero off the
/// diagonal entry, which must be a unit. Used to cross-check the integral
/// row criterion.
pub fn lmod_criterion_mod(m: &IntMatrix, genus: usize, k: u64) -> Result<bool, LiftError> {
    if genus_of(m)? != genus {
        return Err(LiftError::NotSymplectic(genus));
    }
    let red = m.mod_reduce(k)?;
    for col in 0..2 * genus {
        let e = red.get(1, col);
        if col == 1 {
            if gcd_u64(e, k) != 1 {
                return Ok(false);
            }
        } else if e != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The orbit form of the criterion: the first column is a unit multiple of
/// `e_1` mod `k`.
pub fn lmod_criterion_orbit(m: &IntMatrix, genus: usize, k: u64) -> Result<Option<u64>, LiftError> {
    if genus_of(m)? != genus {
        return Err(LiftError::NotSymplectic(genus));
    }
    Ok(e1_image_unit(m, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{iota_matrix, twist_matrix, twist_power};
    use crate::words::GeneratorSymbol;
    use num_bigint::BigInt;

    fn cover(g: usize, k: u64) -> CoverParams {
        CoverParams::new(g, k).unwrap()
    }

    #[test]
    fn cover_genus_formula() {
        assert_eq!(cover(2, 2).cover_genus(), 3);
        assert_eq!(cover(3, 4).cover_genus(), 9);
        assert!(CoverParams::new(0, 2).is_err());
        assert!(CoverParams::new(2, 1).is_err());
    }

    #[test]
    fn lmod_examples() {
        let tb1 = twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        let v = lmod_contains(&tb1, &cover(2, 2)).unwrap();
        assert!(!v.holds);
        assert!(matches!(v.witness, Witness::FailingEntry { row: 2, col: 1, .. }));

        let tb1_sq = twist_power(GeneratorSymbol::Tb(1), &BigInt::from(2), 2).unwrap();
        let v = lmod_contains(&tb1_sq, &cover(2, 2)).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness, Witness::Unit { ell: 1 });

        for k in [2u64, 3, 5, 7] {
            let v = lmod_contains(&iota_matrix(2), &cover(2, k)).unwrap();
            assert!(v.holds, "k={k}");
            assert_eq!(v.witness, Witness::Unit { ell: k - 1 }, "k={k}");
        }
    }

    #[test]
    fn lmod_rejects_non_symplectic() {
        let bad = IntMatrix::from_rows(&[
            &[1, 1, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert!(lmod_contains(&bad, &cover(2, 2)).is_err());
    }

    #[test]
    fn stab_e1_examples() {
        let iota = iota_matrix(2);
        assert!(stab_e1_contains(&iota, &cover(2, 2)).unwrap().holds);
        assert!(!stab_e1_contains(&iota, &cover(2, 3)).unwrap().holds);

        let ta1 = twist_matrix(GeneratorSymbol::Ta(1), 2).unwrap();
        for k in [2u64, 3, 4, 6] {
            assert!(stab_e1_contains(&ta1, &cover(2, k)).unwrap().holds);
        }

        let tb1 = twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        for k in [2u64, 3, 4, 6] {
            assert!(!stab_e1_contains(&tb1, &cover(2, k)).unwrap().holds);
        }
    }

    #[test]
    fn umod_examples() {
        assert!(umod_contains(&iota_matrix(2)).unwrap().holds);
        for m in 1..=4i64 {
            let tb = twist_power(GeneratorSymbol::Tb(1), &BigInt::from(m), 2).unwrap();
            assert!(!umod_contains(&tb).unwrap().holds);
        }
        let ta2 = twist_matrix(GeneratorSymbol::Ta(2), 2).unwrap();
        assert!(umod_contains(&ta2).unwrap().holds);
    }

    #[test]
    fn ladder_image_examples() {
        let tc1 = twist_matrix(GeneratorSymbol::Tc(1), 2).unwrap();
        assert!(stabilizes_ladder_image(&tc1).unwrap());
        let tb1 = twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        assert!(!stabilizes_ladder_image(&tb1).unwrap());
        assert!(stabilizes_ladder_image(&IntMatrix::identity(4)).unwrap());
    }

    #[test]
    fn word_wrappers_delegate() {
        let w = crate::words::parse_word("Tb1^2", 2).unwrap();
        assert!(lmod_contains_word(&w, &cover(2, 2)).unwrap().holds);
        assert!(stab_e1_contains_word(&w, &cover(2, 2)).unwrap().holds);
        assert!(!umod_contains_word(&w).unwrap().holds);
        let iota = crate::words::parse_word("iota", 3).unwrap();
        assert!(umod_contains_word(&iota).unwrap().holds);
    }

    #[test]
    fn lcm_examples() {
        let tb6 = twist_power(GeneratorSymbol::Tb(1), &BigInt::from(6), 1).unwrap();
        assert_eq!(lcm_law(&tb6, 1, 2, 3).unwrap(), (true, true, true));

        let tb2 = twist_power(GeneratorSymbol::Tb(1), &BigInt::from(2), 1).unwrap();
        assert_eq!(lcm_law(&tb2, 1, 2, 3).unwrap(), (true, false, false));

        let tb4 = twist_power(GeneratorSymbol::Tb(1), &BigInt::from(4), 1).unwrap();
        let (a, _, c) = lcm_law(&tb4, 1, 4, 4).unwrap();
        assert_eq!(a, c);
    }
}
