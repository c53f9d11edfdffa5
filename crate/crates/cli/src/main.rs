//! Batch calculator for the symplectic side of mapping class groups:
//! liftability checks, generator factorizations, congruence-subgroup
//! machinery, orbit censuses, self-normalizing witnesses, braid tools, and
//! the verification suites.
//!
//! Exit codes: 0 success or predicate true, 1 predicate false, 2 parse
//! error, 3 precondition violation, 4 internal assertion failure.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use liftmcg::braid::{
    braid_permutation, delta_lift, stab_first_pair_contains, tau_word_with, BraidError, BraidWord,
    TauConvention,
};
use liftmcg::census::{self, CensusError};
use liftmcg::factor::{FactorError, FactorLetter, FactorizationResult};
use liftmcg::gamma1::Gamma1Error;
use liftmcg::generators::{Chain, GensError, HomologyClass};
use liftmcg::io;
use liftmcg::lifting::{CoverParams, LiftError, MembershipVerdict, Witness};
use liftmcg::matrix::{IntMatrix, MatrixError};
use liftmcg::words::{parse_word, WordError};

#[derive(Parser)]
#[command(
    name = "liftmcg",
    version,
    about = "Exact symplectic computations with mapping class groups of cyclic covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SubjectArgs {
    /// Word over the twist alphabet, e.g. "Ta1 Tb1^-2 (Ta2 Tb2)^3"
    #[arg(long, conflicts_with = "matrix_file")]
    word: Option<String>,
    /// File holding a matrix (text rows or JSON array of arrays)
    #[arg(long)]
    matrix_file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symplectic matrix of a twist generator
    Twist {
        #[arg(long)]
        genus: usize,
        /// Generator name: Ta<i>, Tb<i> or Tc<i>
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a word to its exact symplectic matrix
    Eval {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate an ordered collection of homology classes as a chain
    Chain {
        #[arg(long)]
        genus: usize,
        /// Classes as semicolon-separated coordinate lists, e.g.
        /// "1,0,0,0; 0,1,0,0"
        #[arg(long)]
        validate: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide liftability under the k-sheeted cyclic cover
    LiftCheck {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        sheets: u64,
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide liftability under every cyclic cover at once
    UmodCheck {
        #[arg(long)]
        genus: usize,
        #[command(flatten)]
        subject: SubjectArgs,
        #[arg(long)]
        json: bool,
    },
    /// Factor a liftable matrix over the generating set
    Factor {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        sheets: u64,
        #[command(flatten)]
        subject: SubjectArgs,
        /// Re-evaluate the word and compare against the input before printing
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Congruence subgroup generators with their twist witness words
    Gamma1Gens {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Unit coset representative words
    Cosets {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Orbit of e1 under the twist generators mod k
    Orbit {
        #[arg(long)]
        genus: usize,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Count primitive vectors mod k (optionally listing them)
    CountPrimitive {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Self-normalizing witness for one vector
    Witness {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        sheets: u64,
        /// Vector of residues, e.g. "0,1,0,0"
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify the self-normalizing property exhaustively (or sampled)
    SelfnormVerify {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        sheets: u64,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Sample this many random primitive vectors instead of sweeping;
        /// evidence only, reported as sampled
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Braid word tools on the marked sphere
    Braid {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        word: Option<String>,
        /// Print the permutation image
        #[arg(long)]
        perm: bool,
        /// Test membership in the stabilizer of the first two points
        #[arg(long)]
        stab: bool,
        /// Lift through the hyperelliptic correspondence (needs 2g+2 strands)
        #[arg(long)]
        lift: bool,
        /// Emit the pure-braid word for a pair, e.g. --tau 2,3
        #[arg(long)]
        tau: Option<String>,
        /// Use the standard pure-braid conjugator instead of the default
        #[arg(long)]
        tau_standard: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites
    Verify {
        /// all, criteria, factor, census or braid
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0x1f2e3d4c)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Classified failure carrying the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        match e {
            WordError::GenusMismatch(..) => Failure::precondition(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Parse(_) | MatrixError::EmptyMatrix => Failure::parse(e.to_string()),
            _ => Failure::precondition(e.to_string()),
        }
    }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<GensError> for Failure {
    fn from(e: GensError) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<Gamma1Error> for Failure {
    fn from(e: Gamma1Error) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Word(w) => w.into(),
            _ => Failure::precondition(e.to_string()),
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<FactorError> for Failure {
    fn from(e: FactorError) -> Self {
        match &e {
            FactorError::InternalAssertion { message, trace } => {
                let mut text = format!("internal assertion: {message}\ntrace:");
                for step in trace {
                    let _ = write!(text, " {step}");
                }
                Failure::internal(text)
            }
            FactorError::Word(w) => w.clone().into(),
            _ => Failure::precondition(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_subject(subject: &SubjectArgs, genus: usize) -> Result<IntMatrix, Failure> {
    match (&subject.word, &subject.matrix_file) {
        (Some(text), None) => Ok(parse_word(text, genus)?.evaluate()?),
        (None, Some(path)) => {
            let content = std::fs::read_to_string(path)
                .map_err(|e| Failure::precondition(format!("cannot read {path}: {e}")))?;
            Ok(io::parse_matrix(&content)?)
        }
        _ => Err(Failure::parse("provide exactly one of --word or --matrix-file")),
    }
}

fn print_matrix(m: &IntMatrix, as_json: bool) {
    if as_json {
        println!("{}", io::matrix_to_json_string(m));
    } else {
        for r in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
            println!("{}", row.join(" "));
        }
    }
}

fn verdict_json(v: &MembershipVerdict) -> Value {
    let witness = match &v.witness {
        Witness::FailingEntry { row, col, required } => json!({
            "kind": "failing-entry", "row": row, "col": col, "required": required,
        }),
        Witness::Unit { ell } => json!({ "kind": "unit", "ell": ell }),
        Witness::IntegralUnit { sign } => json!({ "kind": "sign", "sign": sign }),
        Witness::None => Value::Null,
    };
    json!({
        "predicate": v.predicate.to_string(),
        "member": v.holds,
        "witness": witness,
    })
}

fn verdict_exit(v: &MembershipVerdict, as_json: bool) -> u8 {
    if as_json {
        println!("{}", verdict_json(v));
    } else if v.holds {
        match &v.witness {
            Witness::Unit { ell } => println!("member (unit {ell})"),
            Witness::IntegralUnit { sign } => println!("member (sign {sign:+})"),
            _ => println!("member"),
        }
    } else if let Witness::FailingEntry { row, col, required } = &v.witness {
        println!("non-member: entry ({row}, {col}) violates {required}");
    } else {
        println!("non-member");
    }
    u8::from(!v.holds)
}

fn letter_json(letter: &FactorLetter) -> Value {
    match letter {
        FactorLetter::Twist { sym, exp } => json!({
            "kind": "twist", "symbol": sym.to_string(), "exponent": exp.to_string(),
        }),
        FactorLetter::Gamma1 { matrix, witness } => json!({
            "kind": "gamma1",
            "matrix": io::matrix_to_json_value(matrix),
            "witness": witness.to_string(),
        }),
        FactorLetter::CosetRep { unit, word } => json!({
            "kind": "coset-rep", "unit": unit, "word": word.to_string(),
        }),
    }
}

fn factorization_json(f: &FactorizationResult) -> Value {
    json!({
        "genus": f.genus,
        "sheets": f.sheets,
        "unit": f.unit,
        "input": io::matrix_to_json_value(&f.input),
        "letters": f.letters.iter().map(letter_json).collect::<Vec<_>>(),
        "trace": f.trace.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Twist { genus, symbol, json } => {
            let word = parse_word(&symbol, genus)?;
            let [(sym, exp)] = word.letters() else {
                return Err(Failure::parse("expected a single generator symbol"));
            };
            if *exp != BigInt::from(1) {
                return Err(Failure::parse("expected a bare symbol without exponent"));
            }
            let m = liftmcg::generators::twist_matrix(*sym, genus)?;
            print_matrix(&m, json);
            Ok(0)
        }
        Command::Eval { genus, word, json } => {
            let m = parse_word(&word, genus)?.evaluate()?;
            print_matrix(&m, json);
            Ok(0)
        }
        Command::Chain { genus, validate, json } => {
            let chain = parse_chain(&validate, genus)?;
            let report = chain.report();
            if json {
                println!(
                    "{}",
                    json!({
                        "length": chain.len(),
                        "consecutive_pairings": report.consecutive,
                        "nonadjacent_disjoint": report.nonadjacent,
                        "independent": report.independent,
                        "chain": report.consecutive && report.nonadjacent,
                    })
                );
            } else {
                println!("length: {}", chain.len());
                println!("(a) consecutive pairings +1: {}", report.consecutive);
                println!("(b) non-adjacent pairings 0: {}", report.nonadjacent);
                println!("(c) linearly independent:    {}", report.independent);
            }
            Ok(u8::from(!(report.consecutive && report.nonadjacent)))
        }
        Command::LiftCheck { genus, sheets, subject, json } => {
            let m = load_subject(&subject, genus)?;
            let cover = CoverParams::new(genus, sheets)?;
            let verdict = liftmcg::lifting::lmod_contains(&m, &cover)?;
            Ok(verdict_exit(&verdict, json))
        }
        Command::UmodCheck { genus, subject, json } => {
            let m = load_subject(&subject, genus)?;
            let verdict = liftmcg::lifting::umod_contains(&m)?;
            Ok(verdict_exit(&verdict, json))
        }
        Command::Factor { genus, sheets, subject, verify, json } => {
            let m = load_subject(&subject, genus)?;
            let cover = CoverParams::new(genus, sheets)?;
            let fac = liftmcg::factor::factor_lmod(&m, &cover)?;
            if verify {
                let eval = fac.evaluate()?;
                if eval != m {
                    return Err(Failure::internal("re-evaluation does not match the input"));
                }
                fac.verify_alphabet()?;
            }
            if json {
                println!("{}", factorization_json(&fac));
            } else {
                println!("unit: {}", fac.unit);
                let letters: Vec<String> = fac.letters.iter().map(|l| l.to_string()).collect();
                println!("word: {}", letters.join(" "));
                let trace: Vec<String> = fac.trace.iter().map(|s| s.to_string()).collect();
                println!("trace: {}", trace.join(" "));
                if verify {
                    println!("verified: exact round-trip");
                }
            }
            Ok(0)
        }
        Command::Gamma1Gens { modulus, json } => {
            let gens = liftmcg::gamma1::gamma1_generators(modulus)?;
            if json {
                let items: Vec<Value> = gens
                    .iter()
                    .map(|g| {
                        json!({
                            "matrix": io::matrix_to_json_value(&g.matrix),
                            "word": g.word.to_string(),
                        })
                    })
                    .collect();
                println!("{}", json!({ "modulus": modulus, "generators": items }));
            } else {
                for g in &gens {
                    println!("{}  <-  {}", g.matrix, g.word);
                }
            }
            Ok(0)
        }
        Command::Cosets { modulus, json } => {
            let reps = liftmcg::gamma1::unit_coset_words(modulus)?;
            if json {
                let items: Vec<Value> = reps
                    .iter()
                    .map(|r| {
                        json!({
                            "unit": r.unit,
                            "unit_inverse": r.unit_inverse,
                            "word": r.word.to_string(),
                        })
                    })
                    .collect();
                println!("{}", json!({ "modulus": modulus, "representatives": items }));
            } else {
                for r in &reps {
                    println!("unit {}: {}", r.unit, r.word);
                }
            }
            Ok(0)
        }
        Command::Orbit { genus, modulus, json } => {
            let orbit = census::orbit_e1(genus, modulus)?;
            if json {
                let items: Vec<Value> = orbit.iter().map(|v| json!(v)).collect();
                println!(
                    "{}",
                    json!({ "genus": genus, "modulus": modulus, "size": orbit.len(), "orbit": items })
                );
            } else {
                println!("size: {}", orbit.len());
                for v in &orbit {
                    let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    println!("{}", coords.join(","));
                }
            }
            Ok(0)
        }
        Command::CountPrimitive { modulus, dim, list, json } => {
            let count = census::count_primitive(modulus, dim)?;
            let listed = if list { Some(census::enumerate_primitive(modulus, dim)?) } else { None };
            if json {
                let mut obj = json!({ "modulus": modulus, "dim": dim, "count": count.to_string() });
                if let Some(vs) = &listed {
                    obj["vectors"] = json!(vs);
                }
                println!("{obj}");
            } else {
                println!("{count}");
                if let Some(vs) = listed {
                    for v in vs {
                        let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        println!("{}", coords.join(","));
                    }
                }
            }
            Ok(0)
        }
        Command::Witness { genus, sheets, vector, max_len, json } => {
            let v = io::parse_vector_u64(&vector)?;
            match census::witness_self_normalizing(&v, genus, sheets, max_len) {
                Ok(report) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "vector": report.vector,
                                "word": report.word.to_string(),
                                "image": report.image,
                            })
                        );
                    } else {
                        println!("witness: {}", report.word);
                        let img: Vec<String> = report.image.iter().map(|c| c.to_string()).collect();
                        println!("image: {}", img.join(","));
                    }
                    Ok(0)
                }
                Err(CensusError::SearchExhausted { vector, max_len }) => {
                    println!("no witness within length {max_len} for {vector:?}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::SelfnormVerify { genus, sheets, max_len, sample, seed, json } => {
            let summary = match sample {
                None => census::verify_self_normalizing(genus, sheets, max_len)?,
                Some(n) => {
                    use rand::SeedableRng;
                    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                    census::verify_self_normalizing_sampled(genus, sheets, max_len, n, &mut rng)?
                }
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "genus": summary.genus,
                        "modulus": summary.modulus,
                        "eligible": summary.eligible,
                        "witnessed": summary.witnessed,
                        "max_word_len": summary.max_word_len,
                        "sampled": summary.sampled,
                    })
                );
            } else {
                let mode = if summary.sampled { "sampled" } else { "exhaustive" };
                println!(
                    "{mode}: {}/{} vectors witnessed, max word length {}",
                    summary.witnessed, summary.eligible, summary.max_word_len
                );
            }
            Ok(u8::from(summary.witnessed != summary.eligible))
        }
        Command::Braid { strands, word, perm, stab, lift, tau, tau_standard, json } => {
            if let Some(pair) = tau {
                let parts = io::parse_vector_u64(&pair)?;
                let [i, j] = parts.as_slice() else {
                    return Err(Failure::parse("--tau expects \"i,j\""));
                };
                let convention =
                    if tau_standard { TauConvention::Standard } else { TauConvention::Shifted };
                let w = tau_word_with(*i as usize, *j as usize, strands, convention)?;
                println!("{w}");
                return Ok(0);
            }
            let Some(text) = word else {
                return Err(Failure::parse("provide --word or --tau"));
            };
            let w = BraidWord::parse(&text, strands)?;
            if stab {
                let member = stab_first_pair_contains(&w)?;
                if json {
                    println!("{}", json!({ "stabilizes_first_pair": member }));
                } else {
                    println!("{}", if member { "member" } else { "non-member" });
                }
                return Ok(u8::from(!member));
            }
            if lift {
                if (strands % 2) != 0 || strands < 6 {
                    return Err(Failure::precondition(
                        "lift needs an even strand count 2g+2 with g >= 2",
                    ));
                }
                let genus = (strands - 2) / 2;
                let lifted = delta_lift(&w, genus)?;
                if json {
                    println!(
                        "{}",
                        json!({ "genus": genus, "word": lifted.to_string(),
                                "matrix": io::matrix_to_json_value(&lifted.evaluate()?) })
                    );
                } else {
                    println!("{lifted}");
                }
                return Ok(0);
            }
            // Default (or --perm): the permutation image.
            let _ = perm;
            let p = braid_permutation(&w);
            let images: Vec<usize> = (1..=strands).map(|i| p.apply(i)).collect();
            if json {
                println!("{}", json!({ "images": images, "pure": p.is_identity() }));
            } else {
                let text: Vec<String> =
                    (1..=strands).map(|i| format!("{i}->{}", images[i - 1])).collect();
                println!("{}", text.join(" "));
            }
            Ok(0)
        }
        Command::Verify { suite, seed, json } => {
            let Some(ids) = liftmcg::verify::suite_criteria(&suite) else {
                return Err(Failure::parse(format!("unknown suite '{suite}'")));
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for id in ids {
                let report = liftmcg::verify::run_criterion(id, seed).expect("valid id");
                all_pass &= report.passed;
                if json {
                    reports.push(json!({
                        "id": report.id,
                        "name": report.name,
                        "passed": report.passed,
                        "detail": report.detail,
                    }));
                } else {
                    println!("{report}");
                }
            }
            if json {
                println!("{}", json!({ "suite": suite, "seed": seed, "criteria": reports, "passed": all_pass }));
            }
            Ok(u8::from(!all_pass))
        }
    }
}

fn parse_chain(text: &str, genus: usize) -> Result<Chain, Failure> {
    let mut classes = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let coords = part
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Failure::parse(format!("invalid coordinate '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        classes.push(HomologyClass::new(genus, coords)?);
    }
    if classes.is_empty() {
        return Err(Failure::parse("no classes given"));
    }
    Ok(Chain::new(genus, classes)?)
}
