//! `bcoset`: command-line front end for the braid double-coset library.
//!
//! Exit status: 0 success, 1 mathematical negative (not equal, not
//! conjugate, distinct, failed verification), 2 usage or input error,
//! 3 undecided within the budget.

mod render;

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use braid_cosets::artin::{artin, final_counterexample_check, Verdict};
use braid_cosets::burau::{eta, star_t, GLCoset};
use braid_cosets::coset::{
    associativity_certificate, coset_equal, product_representative, BraidCoset, CosetEquality, SearchLimits, Transcript,
};
use braid_cosets::garside::{braid_equal, conjugate_test, normal_form, strands_for, Conjugacy, GarsideNF};
use braid_cosets::laurent::LaurentMatrix;
use braid_cosets::sym::{canonical_invariant, perm_of, sym_product, SymCoset};
use braid_cosets::word::{theta, BraidWord};
use braid_cosets::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bcoset", version, about = "Braid group double cosets, normal forms and certificates")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Search budget for `eq` and `conj` (states explored).
    #[arg(long, env = "BCOSET_BUDGET", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Garside left normal form of a word.
    Nf {
        word: String,
        /// Strand count (default: smallest that holds the word).
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Braid equality, or double-coset equality when --alpha/--gamma are given.
    Eq {
        u: String,
        v: String,
        #[arg(long, requires = "gamma")]
        alpha: Option<u32>,
        #[arg(long, requires = "alpha")]
        gamma: Option<u32>,
        /// Total witness length explored by the coset search.
        #[arg(long, default_value_t = SearchLimits::default().length_cap)]
        cap: usize,
    },
    /// Conjugacy test with a witness.
    Conj { u: String, v: String },
    /// The block-swap braid θ_n[β].
    Theta { n: u32, beta: u32 },
    /// Product of double cosets B[α] p B[β] ∘ B[β] q B[γ].
    Product {
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        gamma: u32,
        p: String,
        q: String,
    },
    /// Burau matrix as JSON.
    Burau { word: String },
    /// The ⋆_t product of the Burau images of two braids.
    Star {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        gamma: usize,
        p: String,
        q: String,
    },
    /// Permutation of a braid; with --alpha/--gamma its double-coset invariant;
    /// with a second word and --beta the symmetric product.
    Sym {
        p: String,
        q: Option<String>,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        gamma: Option<u32>,
    },
    /// Artin action on the free group, or the final-counterexample report.
    Artin {
        #[arg(required_unless_present = "final_check")]
        word: Option<String>,
        /// Run the double-coset comparison at block size N.
        #[arg(long = "final", value_name = "N")]
        final_check: Option<u32>,
        /// Moves per side in the bounded search.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Replay and re-verify a transcript, or emit an associativity transcript.
    Certify {
        /// Transcript file (`-` for stdin).
        #[arg(required_unless_present = "assoc")]
        file: Option<String>,
        /// Words a, b, c.
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], requires = "indices")]
        assoc: Option<Vec<String>>,
        /// Indices α, β, γ, δ.
        #[arg(long, num_args = 4, value_names = ["ALPHA", "BETA", "GAMMA", "DELTA"])]
        indices: Option<Vec<u32>>,
    },
    /// ASCII braid diagram.
    Render {
        word: String,
        #[arg(long, default_value_t = 0)]
        strands: usize,
    },
}

/// A finished command: payloads for both formats and the exit status.
struct Output {
    text: String,
    json: Value,
    status: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, status: 0 }
    }

    fn with_status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }
}

/// An error with the exit status it maps to.
struct Failure {
    message: String,
    status: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), status: 2 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::Verification(_)) { 1 } else { 2 };
        Failure { message: e.to_string(), status }
    }
}

fn word(text: &str) -> Result<BraidWord, Failure> {
    text.parse::<BraidWord>().map_err(|e| match e {
        Error::Parse { position, .. } => {
            Failure::usage(format!("{e}\n  {text}\n  {}^", " ".repeat(position.min(text.len()))))
        }
        other => other.into(),
    })
}

fn nf_json(nf: &GarsideNF) -> Value {
    json!({
        "strands": nf.strands(),
        "inf": nf.inf(),
        "factors": nf.factors().iter().map(|f| f.to_word().to_string()).collect::<Vec<_>>(),
        "word": nf.to_word().to_string(),
    })
}

fn nf_text(nf: &GarsideNF) -> String {
    let mut parts = Vec::new();
    if nf.inf() != 0 {
        parts.push(format!("D^{}", nf.inf()));
    }
    parts.extend(nf.factors().iter().map(|f| format!("[{}]", f.to_word())));
    if parts.is_empty() {
        parts.push("e".into());
    }
    format!("{}\nword: {}", parts.join(" "), nf.to_word())
}

fn matrix_text(m: &LaurentMatrix) -> String {
    (0..m.dim())
        .map(|r| (0..m.dim()).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>().join("\t"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = cli.budget.map(|b| b as usize);
    match &cli.command {
        Command::Nf { word: w, strands } => {
            let w = word(w)?;
            let n = strands.unwrap_or_else(|| strands_for(&[&w]));
            let nf = normal_form(&w, n)?;
            Ok(Output::ok(nf_text(&nf), nf_json(&nf)))
        }
        Command::Eq { u, v, alpha, gamma, cap } => {
            let (u, v) = (word(u)?, word(v)?);
            match (alpha, gamma) {
                (Some(a), Some(g)) => {
                    let mut limits = SearchLimits { length_cap: *cap, ..SearchLimits::default() };
                    if let Some(b) = budget {
                        limits.budget = b;
                    }
                    match coset_equal(&BraidCoset::new(*a, *g, &u), &BraidCoset::new(*a, *g, &v), limits)? {
                        CosetEquality::Equal(c) => Ok(Output::ok(
                            format!("equal\ncertificate: {}", c.to_line()),
                            json!({"result": "equal", "certificate": c.to_line()}),
                        )),
                        CosetEquality::Distinct(why) => {
                            Ok(Output::ok(format!("distinct ({why})"), json!({"result": "distinct", "reason": why}))
                                .with_status(1))
                        }
                        CosetEquality::Unknown => {
                            Ok(Output::ok("unknown", json!({"result": "unknown"})).with_status(3))
                        }
                    }
                }
                _ => {
                    let eq = braid_equal(&u, &v);
                    let text = if eq { "equal" } else { "not equal" };
                    Ok(Output::ok(text, json!({"result": text})).with_status(if eq { 0 } else { 1 }))
                }
            }
        }
        Command::Conj { u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            match conjugate_test(&u, &v, budget.unwrap_or(braid_cosets::garside::DEFAULT_SUMMIT_BUDGET)) {
                Conjugacy::Yes(c) => Ok(Output::ok(
                    format!("conjugate\nwitness: {c}"),
                    json!({"result": "conjugate", "witness": c.to_string()}),
                )),
                Conjugacy::No => Ok(Output::ok("not conjugate", json!({"result": "not conjugate"})).with_status(1)),
                Conjugacy::Indeterminate => Ok(Output::ok("unknown", json!({"result": "unknown"})).with_status(3)),
            }
        }
        Command::Theta { n, beta } => {
            let w = theta(*n, *beta);
            Ok(Output::ok(w.to_string(), json!({"n": n, "beta": beta, "word": w.to_string()})))
        }
        Command::Product { alpha, beta, gamma, p, q } => {
            let (p, q) = (BraidCoset::new(*alpha, *beta, &word(p)?), BraidCoset::new(*beta, *gamma, &word(q)?));
            let (n0, rep) = product_representative(&p, &q)?;
            let canonical = BraidCoset::new(*alpha, *gamma, &rep);
            Ok(Output::ok(
                format!("n0: {n0}\nrepresentative: {rep}\ncanonical: {}", canonical.rep()),
                json!({
                    "alpha": alpha, "gamma": gamma, "n0": n0,
                    "representative": rep.to_string(),
                    "canonical": canonical.rep().to_string(),
                }),
            ))
        }
        Command::Burau { word: w } => {
            let m = eta(&word(w)?);
            let json = m.to_json();
            Ok(Output::ok(serde_json::to_string(&json).expect("JSON value serializes"), json))
        }
        Command::Star { alpha, beta, gamma, p, q } => {
            let gp = GLCoset::from_braid(*alpha, *beta, &word(p)?);
            let gq = GLCoset::from_braid(*beta, *gamma, &word(q)?);
            let j0 = braid_cosets::burau::star_index(&gp, &gq);
            let r = star_t(&gp, &gq)?;
            Ok(Output::ok(
                format!("j0: {j0}\n{}", matrix_text(&r.rep)),
                json!({"j0": j0, "n": r.n, "m": r.m, "matrix": r.rep.to_json()}),
            ))
        }
        Command::Sym { p, q, alpha, beta, gamma } => {
            let pw = word(p)?;
            let sp = perm_of(&pw);
            match q {
                Some(q) => {
                    let (Some(a), Some(b), Some(g)) = (alpha, beta, gamma) else {
                        return Err(Failure::usage("a product needs --alpha, --beta and --gamma"));
                    };
                    let r = sym_product(&SymCoset::new(*a, *b, sp), &SymCoset::new(*b, *g, perm_of(&word(q)?)))?;
                    Ok(Output::ok(
                        format!("product: {}\ninvariant: {}", r.rep, r.invariant()),
                        json!({"product": r.rep.to_string(), "invariant": r.invariant().to_string()}),
                    ))
                }
                None => {
                    let mut text = format!("permutation: {sp}");
                    let mut out = json!({"permutation": sp.to_string()});
                    if let (Some(a), Some(g)) = (alpha, gamma) {
                        let inv = canonical_invariant(&sp, *a, *g);
                        text.push_str(&format!("\ninvariant: {inv}"));
                        out["invariant"] = json!(inv.to_string());
                    }
                    Ok(Output::ok(text, out))
                }
            }
        }
        Command::Artin { word: w, final_check, depth } => {
            if let Some(n) = final_check {
                let r = final_counterexample_check(*n, *depth)?;
                let status = match r.verdict {
                    Verdict::Confirmed => 1,
                    Verdict::Refuted => 0,
                    Verdict::Unresolved => 3,
                };
                let verdict = format!("{:?}", r.verdict).to_lowercase();
                return Ok(Output::ok(
                    r.to_string(),
                    json!({
                        "n": n,
                        "verdict": verdict,
                        "abelian_invariants_equal": r.abelian_invariants_equal,
                        "search_depth_each_side": r.search.depth_each_side,
                        "witness_found": r.search.witness.is_some(),
                    }),
                )
                .with_status(status));
            }
            let w = word(w.as_deref().unwrap_or_default())?;
            let e = artin(&w);
            let images: Vec<String> = e.endo().to_string().lines().map(str::to_string).collect();
            Ok(Output::ok(images.join("\n"), json!({"images": images})))
        }
        Command::Certify { file, assoc, indices } => {
            if let Some(words) = assoc {
                let idx = indices.as_ref().expect("clap enforces --indices");
                let (a, b, c) = (word(&words[0])?, word(&words[1])?, word(&words[2])?);
                let cert = associativity_certificate(&a, &b, &c, idx[0], idx[1], idx[2], idx[3])?;
                let mut transcript = Transcript::new();
                for step in cert.lhs.steps() {
                    transcript.push(step.clone())?;
                }
                for step in cert.rhs.steps().iter().rev() {
                    transcript.push(step.inverse())?;
                }
                let text = format!("# k = {}, l = {}, l' = {}\n{}", cert.k, cert.l, cert.l_prime, transcript.to_text());
                return Ok(Output::ok(
                    text.trim_end(),
                    json!({"k": cert.k, "l": cert.l, "l_prime": cert.l_prime, "steps": transcript.to_text().lines().collect::<Vec<_>>()}),
                ));
            }
            let path = file.as_deref().expect("clap enforces a file");
            let text = if path == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(e.to_string()))?;
                s
            } else {
                fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?
            };
            let t = Transcript::replay(&text)?;
            if t.is_empty() {
                return Err(Failure::usage("transcript has no steps"));
            }
            let c = t.compose()?;
            Ok(Output::ok(
                format!("verified {} steps\n{}", t.len(), c.to_line()),
                json!({"steps": t.len(), "certificate": c.to_line()}),
            ))
        }
        Command::Render { word: w, strands } => {
            let w = word(w)?;
            let text = render::render(&w, *strands);
            Ok(Output::ok(text.trim_end(), json!({"word": w.to_string(), "diagram": text})))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value serializes")),
            }
            ExitCode::from(out.status)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
