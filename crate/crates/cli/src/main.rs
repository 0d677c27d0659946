use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopdiag::catalog::{catalog_get, CATALOG_NAMES};
use loopdiag::enumerate::{enumerate_slice, EnumConfig};
use loopdiag::frobenius::{make_truncated_polynomial, make_z2_group_algebra, FrobeniusAlgebra};
use loopdiag::hochschild::{HochschildElement, JEvaluator};
use loopdiag::homology::homology;
use loopdiag::json::{
    algebra_to_json, bigint_to_json, chain_or_diagram_from_json, chain_to_json, hochschild_to_json,
    parse_algebra, parse_profile, parse_tensor, parse_value, signature_to_json, to_pretty,
};
use loopdiag::split::{TypedFamily, DEFAULT_TYPE_BOUND};
use loopdiag::suites::{run_suite, SuiteOptions, SUITE_NAMES};
use loopdiag::{compose, differential, Chain, LoopedDiagram, Signature};

#[derive(Parser)]
#[command(name = "loopdiag", version, about = "Looped diagrams: chains, composition, homology and Hochschild evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks a diagram or chain file and reports its flags.
    Validate { input: Input },
    /// Prints the differential of a diagram or chain.
    Diff { input: Input },
    /// Prints y ∘ x.
    Compose { y: Input, x: Input },
    /// Betti numbers and torsion of an enumerated slice.
    Homology {
        /// Source as `n/m`, e.g. `2/0`.
        #[arg(long)]
        source: String,
        /// Target as `n/m`.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = Subcomplex::All)]
        subcomplex: Subcomplex,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long, default_value_t = 0)]
        max_genus: usize,
    },
    /// Evaluates J(x) on a Hochschild chain.
    Eval {
        /// Diagram or chain file; use `--catalog` instead for a named element.
        input: Option<Input>,
        #[arg(long, conflicts_with = "input")]
        catalog: Option<String>,
        /// `poly<N>` for ℚ[x]/(x^N), `z2` for ℚ[ℤ/2], or a JSON file.
        #[arg(long, default_value = "poly3")]
        algebra: String,
        /// Input profile `j1,j2,.../m`.
        #[arg(long)]
        profile: String,
        /// Tensor JSON file with the input chain.
        #[arg(long = "input")]
        tensor: Input,
        #[arg(long, default_value_t = DEFAULT_TYPE_BOUND)]
        type_bound: usize,
    },
    /// Lists the catalog, or prints one entry as chain JSON (`sh:3`, `B_n:2`, ...).
    Catalog {
        name: Option<String>,
        /// Prints the algebra instead (`poly<N>` or `z2`).
        #[arg(long, conflicts_with = "name")]
        algebra: Option<String>,
    },
    /// Runs a verification suite; `all` runs every suite.
    Check {
        suite: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Subcomplex {
    All,
    Positive,
    /// Non-constant cacti diagrams, partly constant faces killed.
    Cacti,
}

/// A file path or `-` for stdin.
#[derive(Clone)]
struct Input(PathBuf);

impl std::str::FromStr for Input {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Input(PathBuf::from(s)))
    }
}

impl Input {
    fn read(&self) -> Result<String> {
        if self.0.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            return Ok(s);
        }
        fs::read_to_string(&self.0).with_context(|| format!("reading {}", self.0.display()))
    }

    fn chain(&self) -> Result<(Signature, Chain)> {
        let text = self.read()?;
        let v = parse_value(&text)?;
        Ok(chain_or_diagram_from_json(&v)?)
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('/').with_context(|| format!("expected n/m, got {s:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn named_algebra(arg: &str) -> Result<FrobeniusAlgebra> {
    if arg == "z2" {
        return Ok(make_z2_group_algebra());
    }
    if let Some(n) = arg.strip_prefix("poly") {
        let n: usize = n.parse().with_context(|| format!("bad algebra {arg:?}"))?;
        if n < 2 {
            bail!("poly<N> needs N >= 2");
        }
        return Ok(make_truncated_polynomial(n));
    }
    Ok(parse_algebra(&Input(PathBuf::from(arg)).read()?)?)
}

fn catalog_entry(arg: &str) -> Result<(loopdiag::catalog::CatalogEntry, Chain)> {
    let (name, params) = match arg.split_once(':') {
        Some((n, p)) => (n, p.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<Vec<usize>, _>>()?),
        None => (arg, Vec::new()),
    };
    let e = catalog_get(name, &params)?;
    let c = e.value.chain();
    Ok((e, c))
}

fn flags_json(d: &LoopedDiagram) -> Value {
    let f = d.classify();
    json!({
        "positive_boundary": f.positive_boundary,
        "positively_oriented": f.positively_oriented,
        "nondegenerate": f.nondegenerate,
        "partly_constant": f.partly_constant,
    })
}

fn chain_out(sig: Signature, c: &Chain) -> Value {
    chain_to_json(sig, c)
}

/// Output JSON, summary line, success.
type Outcome = (Value, String, bool);

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { input } => {
            let (sig, c) = input.chain()?;
            let mut terms = Vec::new();
            let mut ok = true;
            for d in c.diagrams() {
                let valid = d.validate();
                ok &= valid.is_ok();
                terms.push(json!({
                    "degree": d.degree(),
                    "valid": valid.is_ok(),
                    "error": valid.err().map(|e| e.to_string()),
                    "flags": flags_json(d),
                }));
            }
            let summary = format!("{} term(s) of signature {sig}, {}", c.len(), if ok { "valid" } else { "INVALID" });
            Ok((json!({"signature": signature_to_json(&sig), "valid": ok, "terms": terms}), summary, ok))
        }
        Command::Diff { input } => {
            let (sig, c) = input.chain()?;
            let d = differential(&c);
            let summary = format!("d has {} term(s)", d.len());
            Ok((chain_out(sig, &d), summary, true))
        }
        Command::Compose { y, x } => {
            let (sy, cy) = y.chain()?;
            let (sx, cx) = x.chain()?;
            if (sy.n_loops, sy.m_in) != (sx.n_white, sx.m_out) {
                bail!("cannot compose {sy} after {sx}");
            }
            let c = compose(&cy, &cx)?;
            let sig = Signature::new(sx.n_loops, sx.m_in, sy.n_white, sy.m_out);
            let summary = format!("y∘x has {} term(s)", c.len());
            Ok((chain_out(sig, &c), summary, true))
        }
        Command::Homology { source, target, subcomplex, max_degree, max_word_len, max_genus } => {
            let (n1, m1) = parse_pair(&source)?;
            let (n2, m2) = parse_pair(&target)?;
            let sig = Signature::new(n1, m1, n2, m2);
            let cacti = matches!(subcomplex, Subcomplex::Cacti);
            let cfg = EnumConfig {
                max_degree,
                max_genus,
                max_word_len,
                positive_only: !matches!(subcomplex, Subcomplex::All),
                genus_slack: !cacti,
                disjoint_loops: cacti,
                ..EnumConfig::default()
            };
            let cacti_pred = |d: &LoopedDiagram| !d.is_partly_constant() && d.is_cacti().unwrap_or(false);
            let all = |_: &LoopedDiagram| true;
            let partly_constant = |d: &LoopedDiagram| d.is_partly_constant();
            let none = |_: &LoopedDiagram| false;
            let slice = if cacti {
                enumerate_slice(sig, &cfg, &cacti_pred, &partly_constant)?
            } else {
                enumerate_slice(sig, &cfg, &all, &none)?
            };
            let h = homology(&slice)?;
            let degrees: Vec<Value> = h
                .degrees
                .iter()
                .map(|d| {
                    json!({"degree": d.degree, "rank": d.rank, "betti": d.betti,
                           "torsion": d.torsion.iter().map(bigint_to_json).collect::<Vec<_>>()})
                })
                .collect();
            let summary = format!("dims {:?}, betti {:?}", slice.dims(), h.betti());
            Ok((
                json!({"signature": signature_to_json(&sig), "dims": slice.dims(), "betti": h.betti(), "degrees": degrees}),
                summary,
                true,
            ))
        }
        Command::Eval { input, catalog, algebra, profile, tensor, type_bound } => {
            let (sig, c) = match (input, catalog) {
                (Some(i), None) => i.chain()?,
                (None, Some(name)) => {
                    let (_, c) = catalog_entry(&name)?;
                    (c.sig().context("empty catalog element")?, c)
                }
                _ => bail!("give a chain file or --catalog"),
            };
            let a = named_algebra(&algebra)?;
            let p = parse_profile(&profile)?;
            if (p.degrees.len(), p.m) != (sig.n_loops, sig.m_in) {
                bail!("profile {p} does not match the source {}/{} of {sig}", sig.n_loops, sig.m_in);
            }
            let h = HochschildElement::new(p, parse_tensor(&tensor.read()?)?)?;
            let fam = TypedFamily::from_chain(&c, sig.n_loops, type_bound);
            let out = JEvaluator::new().apply_family(&a, &fam, &h)?;
            let summary = format!("J(x) over {}: {} part(s){}", a.name, out.elements().count(), if fam.truncated { ", family truncated" } else { "" });
            Ok((hochschild_to_json(&out), summary, true))
        }
        Command::Catalog { name: None, algebra: None } => {
            let names: Vec<&str> = CATALOG_NAMES.to_vec();
            Ok((json!({"names": names, "suites": SUITE_NAMES}), format!("{} catalog entries", names.len()), true))
        }
        Command::Catalog { name: None, algebra: Some(arg) } => {
            let a = named_algebra(&arg)?;
            Ok((algebra_to_json(&a), format!("algebra {} of dimension {}", a.name, a.dim), true))
        }
        Command::Catalog { name: Some(arg), .. } => {
            let (e, c) = catalog_entry(&arg)?;
            let sig = c.sig().context("empty catalog element")?;
            let v = chain_out(sig, &c);
            Ok((v, format!("{} ({}): {} term(s)", e.name, e.note, c.len()), true))
        }
        Command::Check { suite, max_degree, seed } => {
            let opts = SuiteOptions { max_degree, seed };
            let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite.as_str()] };
            if let Some(bad) = names.iter().find(|n| !SUITE_NAMES.contains(n)) {
                bail!("unknown suite {bad:?}; known: all, {}", SUITE_NAMES.join(", "));
            }
            let mut reports = Vec::new();
            let mut summary = Vec::new();
            let mut ok = true;
            for n in names {
                let r = run_suite(n, &opts)?;
                ok &= r.passed();
                summary.push(r.to_string().trim_end().to_string());
                reports.push(r.to_json());
            }
            let v = if reports.len() == 1 { reports.pop().unwrap_or(Value::Null) } else { json!({"passed": ok, "suites": reports}) };
            Ok((v, summary.join("\n"), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((v, summary, ok)) => {
            print!("{}", to_pretty(&v));
            eprintln!("{summary}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
