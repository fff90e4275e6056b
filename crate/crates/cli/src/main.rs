//! `galois`: certify operator families as Galois orders, evaluate and
//! multiply their generators, and build truncated weight modules.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 singular character,
//! 64 usage or configuration error, 74 output could not be written.

mod family;
mod output;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use galois_core::arith::{parse_ratfunc, Rational};
use galois_core::cert::{certify_coprincipal, certify_principal, CertOptions, Verdict};
use galois_core::families::OrderKind;
use galois_core::gz::{build_family_module, ModuleOptions, ModuleSide};
use galois_core::sample::Sampler;
use galois_core::skew::SkewElement;

use crate::family::FamilyArgs;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_SINGULAR: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(name = "galois", version, about = "Exact certification of Galois orders and their weight modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Principal,
    CoPrincipal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify a family as a principal or co-principal Galois order.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Defaults to the kind matching the family's placement.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Monoid exploration box `[-bound, bound]`.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i32).range(1..=64))]
        bound: i32,
        /// Random invariant products per spot check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, env = "GALOIS_OUT_DIR", default_value = "galois-out")]
        out_dir: PathBuf,
    },
    /// Apply a generator to a rational function: `X(a)`.
    Evaluate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Generator label, e.g. `X+_1`.
        #[arg(long)]
        generator: String,
        /// Use the dagger image of the generator.
        #[arg(long)]
        dagger: bool,
        /// Rational function, e.g. `x[1,1]^2/(x[2,1] - 1)`.
        #[arg(long = "arg", value_name = "EXPR")]
        argument: String,
    },
    /// Multiply two generators in the skew monoid ring.
    Multiply {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Build the truncated cyclic weight module of a seed character.
    Module {
        #[command(flatten)]
        family: FamilyArgs,
        /// Seed coordinates in table order, e.g. `1/3,2/7,5/11`; a generic
        /// point is sampled from `--seed` when omitted.
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<String>>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=8))]
        depth: u32,
        /// Value of q for quantum families.
        #[arg(long, default_value = "2")]
        q: String,
        /// Defaults to the side matching the family's order kind.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, env = "GALOIS_OUT_DIR", default_value = "galois-out")]
        out_dir: PathBuf,
    },
    /// Run the invariant suites end to end at small sizes.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Print per-suite timing.
        #[arg(long)]
        verbose: bool,
        /// Use the opposite shift convention in the oracles; must fail.
        #[arg(long)]
        flip_shift_sign: bool,
    },
    /// Print the JSON schema of family configuration files.
    Schema,
}

/// An error together with the exit code it maps to.
struct Exit {
    code: u8,
    error: anyhow::Error,
}

trait ExitContext<T> {
    fn usage(self) -> Result<T, Exit>;
    fn classify(self) -> Result<T, Exit>;
    fn io(self) -> Result<T, Exit>;
}

impl<T> ExitContext<T> for anyhow::Result<T> {
    fn usage(self) -> Result<T, Exit> {
        self.map_err(|error| Exit { code: EXIT_USAGE, error })
    }

    /// Singular characters and invalid input map to their own codes; any
    /// other library error is a failure.
    fn classify(self) -> Result<T, Exit> {
        self.map_err(|error| {
            use galois_core::Error::*;
            let code = match error.downcast_ref::<galois_core::Error>() {
                Some(SingularCharacter { .. }) => EXIT_SINGULAR,
                Some(InvalidConfig(_) | InvalidPoint(_) | EquivarianceViolation(_)) => EXIT_USAGE,
                _ => EXIT_FAIL,
            };
            Exit { code, error }
        })
    }

    fn io(self) -> Result<T, Exit> {
        self.map_err(|error| Exit { code: EXIT_IO, error })
    }
}

fn label<'a>(family: &'a galois_core::families::Family, name: &str) -> anyhow::Result<&'a SkewElement> {
    family
        .generator(name)
        .ok_or_else(|| anyhow!("unknown generator {name:?}; available: {}", family.labels.join(", ")))
}

fn print_element(x: &SkewElement) {
    println!("{}", serde_json::to_string_pretty(&x.to_json_terms()).expect("terms serialize"));
}

fn write_report(dir: &Path, name: &str, contents: &str) -> Result<(), Exit> {
    let path = dir.join(name);
    output::write_atomic(&path, contents).io()?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Exit> {
    match cli.command {
        Command::Certify { family, kind, bound, samples, seed, out_dir } => {
            let fam = family.build().usage()?;
            let opts = CertOptions { bound, spot_samples: samples, seed, ..CertOptions::default() };
            let kind = match kind {
                Some(KindArg::Principal) => OrderKind::Principal,
                Some(KindArg::CoPrincipal) => OrderKind::CoPrincipal,
                None => fam.order_kind(),
            };
            let certify = match kind {
                OrderKind::Principal => certify_principal,
                OrderKind::CoPrincipal => certify_coprincipal,
            };
            let cert = certify(&fam.setting, &fam.generators, Some(&fam.labels), &opts).map_err(anyhow::Error::from).classify()?;
            let mut json = serde_json::to_string_pretty(&cert).expect("certificate serializes");
            json.push('\n');
            write_report(&out_dir, "certificate.json", &json)?;
            let verdict = match cert.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inconclusive => "inconclusive",
            };
            let kind = match kind {
                OrderKind::Principal => "principal",
                OrderKind::CoPrincipal => "co-principal",
            };
            println!("{}: {kind} {verdict}", fam.setting.name());
            if let Some(c) = &cert.counterexample {
                println!("counterexample: {c}");
            }
            Ok(match cert.verdict {
                Verdict::Pass => EXIT_PASS,
                Verdict::Fail => EXIT_FAIL,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Evaluate { family, generator, dagger, argument } => {
            let fam = family.build().usage()?;
            let x = label(&fam, &generator).usage()?;
            let a = parse_ratfunc(fam.setting.table(), &argument)
                .with_context(|| format!("cannot parse --arg {argument:?}"))
                .usage()?;
            let op = if dagger { x.dagger(&fam.setting) } else { x.clone() };
            println!("{}", op.evaluate(&a, &fam.setting));
            Ok(EXIT_PASS)
        }
        Command::Multiply { family, left, right } => {
            let fam = family.build().usage()?;
            let x = label(&fam, &left).usage()?;
            let y = label(&fam, &right).usage()?;
            print_element(&x.mul(y, &fam.setting));
            Ok(EXIT_PASS)
        }
        Command::Module { family, point, seed, depth, q, side, out_dir } => {
            let fam = family.build().usage()?;
            let q: Rational = q.trim().parse().map_err(|_| anyhow!("--q {q:?} is not a rational number")).usage()?;
            let coords: Vec<Rational> = match point {
                Some(p) => p
                    .iter()
                    .map(|c| c.trim().parse().map_err(|_| anyhow!("--point entry {c:?} is not a rational number")))
                    .collect::<anyhow::Result<_>>()
                    .usage()?,
                None => Sampler::new(seed).generic_point(&fam.setting, 9),
            };
            let opts = ModuleOptions {
                depth: depth as usize,
                q,
                side: side.map(|s| match s {
                    SideArg::Left => ModuleSide::Left,
                    SideArg::Right => ModuleSide::Right,
                }),
            };
            let m = build_family_module(&fam, &coords, &opts).map_err(anyhow::Error::from).classify()?;
            write_report(&out_dir, "module.json", &m.to_json())?;
            write_report(&out_dir, "weights.csv", &m.weights_csv())?;
            let max_dim = m.weights.iter().map(|(_, d)| *d).max().unwrap_or(0);
            println!(
                "{}: {} basis vectors, {} weights, largest weight space {max_dim}{}",
                fam.setting.name(),
                m.dim(),
                m.weights.len(),
                if m.truncated { ", truncated" } else { "" }
            );
            Ok(EXIT_PASS)
        }
        Command::Selftest { seed, verbose, flip_shift_sign } => {
            let results = selftest::run(&selftest::Options { seed, flip_shift_sign });
            let mut code = EXIT_PASS;
            for r in &results {
                match &r.outcome {
                    Ok(detail) if verbose => println!("{:<20} ok    {:>7.2}s  {detail}", r.name, r.seconds),
                    Ok(_) => {}
                    Err(e) => {
                        code = EXIT_FAIL;
                        println!("{:<20} FAIL  {:>7.2}s  {e:#}", r.name, r.seconds);
                    }
                }
            }
            let passed = results.iter().filter(|r| r.outcome.is_ok()).count();
            println!("selftest: {passed}/{} suites passed (seed {seed})", results.len());
            Ok(code)
        }
        Command::Schema => {
            print!("{}", family::SCHEMA);
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
