//! Seeded verification suites covering the headline results: pinned
//! multiplier constants, factorization round-trips, criterion equivalences,
//! orbit and index counts, universal-cover equivalences, the hyperelliptic
//! identities, the self-normalizing sweep, and the congruence-subgroup
//! machinery. The CLI `verify` subcommand and the acceptance test target
//! both run through here.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{euler_phi, units_mod};
use crate::braid::{delta_lift, verify_two_sheet_generators, BraidWord};
use crate::census::{enumerate_primitive, orbit_e1, verify_self_normalizing};
use crate::factor::{factor_stab_e1, multiplier_tables, congruence_bezout};
use crate::gamma1::{gamma1_contains, CosetTable, unit_coset_words};
use crate::generators::{eta_embed, iota_matrix, symbol_power, twist_matrix};
use crate::lifting::{
    lmod_contains, lmod_criterion_mod, lmod_criterion_orbit, stabilizes_ladder_image,
    umod_contains, CoverParams,
};
use crate::matrix::IntMatrix;
use crate::words::{parse_word, GeneratorSymbol, Word};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] criterion {}: {} - {}", self.id, self.name, self.detail)
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn report(id: usize, name: &'static str, body: Result<String, String>) -> CriterionReport {
    match body {
        Ok(detail) => CriterionReport { id, name, passed: true, detail },
        Err(detail) => CriterionReport { id, name, passed: false, detail },
    }
}

/// A random twist word: letters drawn from all twist generators of the
/// genus, exponents in `{-2, -1, 1, 2}`.
pub fn random_twist_word<R: Rng>(genus: usize, max_len: usize, rng: &mut R) -> Word {
    let mut pool = Vec::new();
    for i in 1..=genus {
        pool.push(GeneratorSymbol::Ta(i));
        pool.push(GeneratorSymbol::Tb(i));
    }
    for i in 1..genus {
        pool.push(GeneratorSymbol::Tc(i));
    }
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(GeneratorSymbol, i64)> = (0..len)
        .map(|_| {
            let sym = pool[rng.gen_range(0..pool.len())];
            let exp = loop {
                let e = rng.gen_range(-2i64..=2);
                if e != 0 {
                    break e;
                }
            };
            (sym, exp)
        })
        .collect();
    Word::from_letters(genus, &letters)
}

/// Rejection-samples random twist words that stabilize `e_1` mod `k`,
/// prefiltering with residue arithmetic before exact evaluation.
pub fn random_stab_members<R: Rng>(
    genus: usize,
    k: u64,
    count: usize,
    max_len: usize,
    rng: &mut R,
) -> Vec<(Word, IntMatrix)> {
    let cover = CoverParams::new(genus, k).expect("valid cover");
    let mut out = Vec::with_capacity(count);
    let mut attempts: u64 = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 20_000_000, "rejection sampling stalled (g={genus}, k={k})");
        let word = random_twist_word(genus, max_len, rng);
        let red = word.evaluate_mod(k).expect("twist words evaluate");
        let mut ok = true;
        for r in 0..2 * genus {
            let want = if r == 0 { 1 % k } else { 0 };
            if red.get(r, 0) != want {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let m = word.evaluate().expect("twist words evaluate");
        debug_assert!(crate::lifting::stab_e1_contains(&m, &cover).unwrap().holds);
        out.push((word, m));
    }
    out
}

/// Criterion 1: the six clearing multipliers reproduce their pinned
/// constants and defining identities, exactly.
pub fn criterion_constants() -> CriterionReport {
    report(1, "multiplier constants", (|| {
        let (l1, l2) = (BigInt::from(3), BigInt::from(2));
        let (a1, a2) = congruence_bezout(&l1, &l2, 2).map_err(|e| e.to_string())?;
        let tables = multiplier_tables(&l1, &l2, &a1, &a2).map_err(|e| e.to_string())?;

        let pinned = [
            IntMatrix::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 1], &[-1, 0, 1, 0], &[0, 0, 0, 1]]),
            IntMatrix::from_rows(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[1, 0, 0, 1]]),
        ];
        for (i, want) in pinned.iter().enumerate() {
            ensure!(
                &tables.matrices[i + 1] == want,
                "m{} does not match its pinned constant",
                i + 2
            );
        }

        // Defining identities, from the twist matrices themselves.
        let ta1 = twist_matrix(GeneratorSymbol::Ta(1), 2).unwrap();
        let tb1 = twist_matrix(GeneratorSymbol::Tb(1), 2).unwrap();
        let ta2 = twist_matrix(GeneratorSymbol::Ta(2), 2).unwrap();
        let tb2 = twist_matrix(GeneratorSymbol::Tb(2), 2).unwrap();
        let tc1 = twist_matrix(GeneratorSymbol::Tc(1), 2).unwrap();
        let mul = |ms: &[&IntMatrix]| crate::matrix::mat_product(ms.iter().copied(), 4).unwrap();

        let m2 = mul(&[&tc1, &ta1.inverse().unwrap(), &ta2.inverse().unwrap()])
            .inverse()
            .unwrap();
        ensure!(m2 == tables.matrices[1], "m2 identity fails");

        let rot = mul(&[&ta2, &tb2, &ta2]);
        let m3 = mul(&[&rot, &tables.matrices[1], &rot.inverse().unwrap()]);
        ensure!(m3 == tables.matrices[2], "m3 conjugation identity fails");

        ensure!(tb1.inverse().unwrap() == tables.matrices[3], "m4 identity fails");

        let m5 = mul(&[
            &tb1.inverse().unwrap(),
            &ta2.inverse().unwrap(),
            &tables.matrices[1],
            &tb1,
            &tables.matrices[1].inverse().unwrap(),
        ]);
        ensure!(m5 == tables.matrices[4], "m5 identity fails");

        let m6 = mul(&[&rot, &tables.matrices[4], &rot.inverse().unwrap()]);
        ensure!(m6 == tables.matrices[5], "m6 conjugation identity fails");

        // m1 is the embedded congruence block.
        let block = IntMatrix::new(2, 2, vec![l1.clone(), l2.clone(), -&a1, a2.clone()]).unwrap();
        ensure!(
            tables.matrices[0] == eta_embed(&block, 2).unwrap(),
            "m1 embedding fails"
        );
        ensure!(gamma1_contains(&block, 2).unwrap(), "m1 block is not a subgroup member");

        // Each defining word evaluates to its constant.
        for (i, word) in tables.words.iter().enumerate() {
            ensure!(
                word.evaluate().unwrap() == tables.matrices[i],
                "defining word of m{} does not evaluate to its matrix",
                i + 1
            );
        }
        Ok("m1 shape and m2..m6 constants and identities hold exactly".into())
    })())
}

/// Criterion 2: factorization round-trips on random stabilizer members.
pub fn criterion_factor_roundtrip(seed: u64) -> CriterionReport {
    report(2, "factorization round-trip", (|| {
        let mut total = 0usize;
        for k in [2u64, 3, 4, 6] {
            let mut rng = StdRng::seed_from_u64(seed ^ (k << 8));
            let cover = CoverParams::new(2, k).unwrap();
            for (word, m) in random_stab_members(2, k, 100, 20, &mut rng) {
                let fac = factor_stab_e1(&m, &cover)
                    .map_err(|e| format!("factor failed (g=2, k={k}, word {word}): {e}"))?;
                ensure!(
                    fac.evaluate().map_err(|e| e.to_string())? == m,
                    "round-trip mismatch at g=2, k={k}"
                );
                fac.verify_alphabet().map_err(|e| e.to_string())?;
                total += 1;
            }
        }
        let mut rng = StdRng::seed_from_u64(seed ^ 0xabcd);
        let cover = CoverParams::new(3, 2).unwrap();
        for (word, m) in random_stab_members(3, 2, 25, 20, &mut rng) {
            let fac = factor_stab_e1(&m, &cover)
                .map_err(|e| format!("factor failed (g=3, k=2, word {word}): {e}"))?;
            ensure!(
                fac.evaluate().map_err(|e| e.to_string())? == m,
                "round-trip mismatch at g=3, k=2"
            );
            fac.verify_alphabet().map_err(|e| e.to_string())?;
            total += 1;
        }
        Ok(format!("{total} members factored with exact round-trip and sound alphabets"))
    })())
}

/// Criterion 3: the three liftability criteria agree on a random corpus.
pub fn criterion_equivalence(seed: u64) -> CriterionReport {
    report(3, "criterion equivalence", (|| {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x3333);
        let mut checked = 0usize;
        for g in 1..=3usize {
            for _ in 0..500 {
                let word = random_twist_word(g, 16, &mut rng);
                let m = word.evaluate().unwrap();
                for k in [2u64, 3, 4, 6] {
                    let cover = CoverParams::new(g, k).unwrap();
                    let row = lmod_contains(&m, &cover).unwrap().holds;
                    let modular = lmod_criterion_mod(&m, g, k).unwrap();
                    let orbit = lmod_criterion_orbit(&m, g, k).unwrap();
                    ensure!(
                        row == modular && row == orbit.is_some(),
                        "criteria disagree at g={g}, k={k} on {word}"
                    );
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} (matrix, k) pairs, zero disagreements"))
    })())
}

/// Criterion 4: orbit of `e_1` equals the primitive vectors with the
/// inclusion-exclusion counts, and the unit coset words behave.
pub fn criterion_indices_orbits() -> CriterionReport {
    report(4, "indices and orbits", (|| {
        let expected = |g: usize, k: u64| crate::census::count_primitive(k, 2 * g).unwrap();
        let pairs: Vec<(usize, u64)> =
            vec![(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (2, 3), (3, 2)];
        for (g, k) in pairs {
            let orbit = orbit_e1(g, k).map_err(|e| e.to_string())?;
            let primitive = enumerate_primitive(k, 2 * g).map_err(|e| e.to_string())?;
            ensure!(
                orbit.len() == primitive.len()
                    && primitive.iter().all(|v| orbit.contains(v)),
                "orbit mismatch at (g, k) = ({g}, {k})"
            );
            ensure!(
                BigInt::from(orbit.len()) == expected(g, k),
                "count mismatch at (g, k) = ({g}, {k})"
            );
        }
        for (g, k, want) in [(2usize, 2u64, 15usize), (2, 3, 80), (3, 2, 63)] {
            ensure!(
                orbit_e1(g, k).unwrap().len() == want,
                "pinned count {want} fails at ({g}, {k})"
            );
        }
        for k in [2u64, 3, 4, 5, 6, 12] {
            let reps = unit_coset_words(k).map_err(|e| e.to_string())?;
            ensure!(reps.len() as u64 == euler_phi(k), "coset count != phi({k})");
            let mut units: Vec<u64> = reps.iter().map(|r| r.unit).collect();
            units.sort_unstable();
            ensure!(units == units_mod(k), "units not exhausted at k={k}");
            for rep in &reps {
                let m = rep.word.evaluate().unwrap();
                let red = m.mod_reduce(k).unwrap();
                ensure!(
                    red.get(0, 0) == rep.unit % k && (1..2).all(|r| red.get(r, 0) == 0),
                    "coset word for unit {} does not send e1 to its line (k={k})",
                    rep.unit
                );
            }
        }
        Ok("orbits equal primitive sets with exact counts; coset words hit distinct units".into())
    })())
}

/// Criterion 5: universal liftability equals the ladder-image condition, the
/// lcm law holds, and universal members act as a sign on `e_1`.
pub fn criterion_umod(seed: u64) -> CriterionReport {
    report(5, "universal cover equivalences", (|| {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5555);
        let mut universal_seen = 0usize;
        for g in 1..=3usize {
            for _ in 0..500 {
                let word = random_twist_word(g, 14, &mut rng);
                let m = word.evaluate().unwrap();
                let umod = umod_contains(&m).unwrap().holds;
                let ladder = stabilizes_ladder_image(&m).unwrap();
                ensure!(umod == ladder, "ladder equivalence fails at g={g} on {word}");

                let all_k = (2..=12u64).all(|k| {
                    lmod_contains(&m, &CoverParams::new(g, k).unwrap()).unwrap().holds
                });
                ensure!(umod == all_k, "finite sweep equivalence fails at g={g} on {word}");

                if umod {
                    universal_seen += 1;
                    let e1: Vec<BigInt> =
                        (0..2 * g).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect();
                    let img = m.apply(&e1).unwrap();
                    let pos = img == e1;
                    let neg = img.iter().zip(&e1).all(|(a, b)| *a == -b);
                    ensure!(pos || neg, "universal member moves e1 beyond a sign at g={g}");
                }

                for (k, l) in [(2u64, 3u64), (2, 4), (3, 4), (4, 6), (6, 6)] {
                    let (in_k, in_l, in_d) = crate::lifting::lcm_law(&m, g, k, l).unwrap();
                    ensure!(
                        (in_k && in_l) == in_d,
                        "lcm law fails at g={g}, (k, l) = ({k}, {l}) on {word}"
                    );
                }
            }
        }
        Ok(format!("1500 words checked; {universal_seen} universal members, zero violations"))
    })())
}

/// Criterion 6: hyperelliptic identities and the two-sheeted family.
pub fn criterion_hyperelliptic() -> CriterionReport {
    report(6, "hyperelliptic identities", (|| {
        let neg_i4 = iota_matrix(2);
        let w1 = parse_word("(Ta1 Tb1)^3 (Ta2 Tb2)^-3", 2).unwrap();
        ensure!(w1.evaluate().unwrap() == neg_i4, "chain involution word fails");
        let w2 = parse_word("(Ta1 Tb1^2)^2 (Ta2 Tb2)^-3", 2).unwrap();
        ensure!(w2.evaluate().unwrap() == neg_i4, "braided involution word fails");

        let lhs = delta_lift(&BraidWord::parse("s2 s1^2 s2^-1", 6).unwrap(), 2).unwrap();
        let rhs = delta_lift(&BraidWord::parse("s1^-1 s2^2 s1", 6).unwrap(), 2).unwrap();
        ensure!(
            lhs.evaluate().unwrap() == rhs.evaluate().unwrap(),
            "rewritten pure-braid lifts have different symplectic images"
        );

        let rep = verify_two_sheet_generators(2).map_err(|e| e.to_string())?;
        ensure!(rep.all_members, "a listed generator fails the two-sheeted criterion");
        ensure!(rep.iota_identity == Some(true), "involution word identity fails");
        ensure!(
            rep.perm_group_order == 48 && rep.perm_group_index == 15,
            "permutation image order {} (index {})",
            rep.perm_group_order,
            rep.perm_group_index
        );
        Ok("both involution words equal -I, lifts agree, permutation image has order 48 (index 15)"
            .into())
    })())
}

/// Criterion 7: exhaustive self-normalizing witnesses at (2,2) and (2,3).
pub fn criterion_selfnorm() -> CriterionReport {
    report(7, "self-normalizing witnesses", (|| {
        let mut details = Vec::new();
        for (k, expect) in [(2u64, 14u64), (3, 78)] {
            let s = verify_self_normalizing(2, k, 4).map_err(|e| e.to_string())?;
            ensure!(
                s.eligible == expect && s.witnessed == expect,
                "(2, {k}): witnessed {}/{} of expected {expect}",
                s.witnessed,
                s.eligible
            );
            ensure!(s.max_word_len <= 4, "(2, {k}): witness length {}", s.max_word_len);
            for r in &s.reports {
                ensure!(
                    r.reverify().map_err(|e| e.to_string())?,
                    "(2, {k}): witness fails re-verification"
                );
            }
            details.push(format!("(2,{k}): {} vectors, max length {}", s.witnessed, s.max_word_len));
        }
        Ok(details.join("; "))
    })())
}

/// Criterion 8: the congruence-subgroup machinery for the pinned moduli.
pub fn criterion_gamma1(seed: u64) -> CriterionReport {
    report(8, "congruence subgroup machinery", (|| {
        let mut rewrites = 0usize;
        for k in [2u64, 3, 4, 5, 6, 12] {
            let table = CosetTable::new(k).map_err(|e| e.to_string())?;
            for gen in table.generators() {
                ensure!(
                    gamma1_contains(&gen.matrix, k).unwrap(),
                    "generator fails congruences at k={k}"
                );
                ensure!(
                    gen.word.evaluate().unwrap() == gen.matrix,
                    "witness word mismatch at k={k}"
                );
            }
            let mut rng = StdRng::seed_from_u64(seed ^ (k << 4));
            let mut found = 0usize;
            let mut attempts = 0u64;
            while found < 100 {
                attempts += 1;
                ensure!(attempts < 5_000_000, "sampling stalled at k={k}");
                let word = random_genus1_word(&mut rng, 16);
                let m = word.evaluate().unwrap();
                if !gamma1_contains(&m, k).unwrap() {
                    continue;
                }
                found += 1;
                let gw = table.rewrite(&m).map_err(|e| e.to_string())?;
                ensure!(
                    gw.evaluate(&table).unwrap() == m,
                    "rewrite round-trip fails at k={k}"
                );
                rewrites += 1;
            }
        }
        Ok(format!("6 moduli; all generators witnessed; {rewrites} exact rewrites"))
    })())
}

fn random_genus1_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(GeneratorSymbol, i64)> = (0..len)
        .map(|_| {
            let sym = if rng.gen_bool(0.5) { GeneratorSymbol::Ta(1) } else { GeneratorSymbol::Tb(1) };
            let exp = loop {
                let e = rng.gen_range(-3i64..=3);
                if e != 0 {
                    break e;
                }
            };
            (sym, exp)
        })
        .collect();
    Word::from_letters(1, &letters)
}

/// Runs one criterion by number.
pub fn run_criterion(id: usize, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_constants(),
        2 => criterion_factor_roundtrip(seed),
        3 => criterion_equivalence(seed),
        4 => criterion_indices_orbits(),
        5 => criterion_umod(seed),
        6 => criterion_hyperelliptic(),
        7 => criterion_selfnorm(),
        8 => criterion_gamma1(seed),
        _ => return None,
    })
}

/// Criterion numbers in a named suite.
pub fn suite_criteria(suite: &str) -> Option<Vec<usize>> {
    Some(match suite {
        "all" => (1..=8).collect(),
        "criteria" => vec![3, 5],
        "factor" => vec![1, 2, 8],
        "census" => vec![4, 7],
        "braid" => vec![6],
        _ => return None,
    })
}

/// Runs every criterion with a base seed.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=8).map(|id| run_criterion(id, seed).unwrap()).collect()
}

/// The symplectic image of a generator power; re-exported here for sweeps.
pub fn twist_image(sym: GeneratorSymbol, exp: i64, genus: usize) -> IntMatrix {
    symbol_power(sym, &BigInt::from(exp), genus).expect("valid twist")
}
