// Broad randomized stress of the factorization paths; not part of the test
// suite, kept as a runnable example for long sweeps.
use liftmcg::factor::factor_lmod;
use liftmcg::lifting::{lmod_contains, CoverParams};
use liftmcg::verify::random_twist_word;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let mut total = 0usize;
    for (g, k, want) in [
        (2usize, 2u64, 120usize),
        (2, 5, 60),
        (2, 12, 40),
        (3, 2, 60),
        (3, 3, 40),
        (3, 6, 25),
        (4, 2, 25),
        (4, 3, 12),
    ] {
        let cover = CoverParams::new(g, k).unwrap();
        let mut rng = StdRng::seed_from_u64(0xfeed ^ ((g as u64) << 16) ^ k);
        let mut found = 0usize;
        let mut units_seen = std::collections::BTreeSet::new();
        let mut attempts = 0u64;
        while found < want {
            attempts += 1;
            assert!(attempts < 50_000_000, "stalled at g={g} k={k}");
            let w = random_twist_word(g, 20, &mut rng);
            let red = w.evaluate_mod(k).unwrap();
            // quick liftability prefilter on the second row
            let mut ok = true;
            for c in 0..2 * g {
                let e = red.get(1, c);
                if c == 1 {
                    if liftmcg::arith::gcd_u64(e, k) != 1 { ok = false; break; }
                } else if e != 0 { ok = false; break; }
            }
            if !ok { continue; }
            let m = w.evaluate().unwrap();
            let verdict = lmod_contains(&m, &cover).unwrap();
            assert!(verdict.holds);
            let fac = factor_lmod(&m, &cover).unwrap_or_else(|e| panic!("g={g} k={k} word {w}: {e}"));
            assert_eq!(fac.evaluate().unwrap(), m, "g={g} k={k} word {w}");
            fac.verify_alphabet().unwrap_or_else(|e| panic!("alphabet g={g} k={k}: {e}"));
            units_seen.insert(fac.unit);
            found += 1;
            total += 1;
        }
        println!("g={g} k={k}: {found} members, units seen {units_seen:?} ({attempts} attempts)");
    }
    println!("total factored: {total}");
}
