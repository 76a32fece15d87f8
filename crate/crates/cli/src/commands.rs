use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use graphshare::analysis;
use graphshare::codec::{decode_graph, digits_to_integer, encode_graph, integer_to_digits};
use graphshare::format::{parse_graph, parse_share, render_graph, render_share};
use graphshare::graph::{parse_bit_string, partition_of};
use graphshare::protocol::{
    reconstruct_and_verify, share_colored_graph, share_coloring, share_number_as_graph,
    shift_attack, Dealing, GraphShare, RecoveredSecret, SchemeSpec, SecretKind,
};
use graphshare::{BitPayload, ColoredGraph, FieldPrime, Graph, Predicate, RandomSource};
use num_bigint::BigUint;

use crate::{SchemeArg, SecretArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_REJECTED: u8 = 3;

fn read_graph(path: &Path) -> Result<ColoredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("{}", path.display()))
}

/// Write-then-rename so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn encode(path: &Path) -> Result<ExitCode> {
    let cg = read_graph(path)?;
    let digits = encode_graph(&cg);
    println!("{digits}");
    println!("{}", digits_to_integer(&digits));
    Ok(ExitCode::from(EXIT_OK))
}

pub fn decode(n: usize, k: u32, value: &str, out: Option<&Path>) -> Result<ExitCode> {
    let v: BigUint = value
        .parse()
        .map_err(|_| anyhow!("`{value}` is not a nonnegative integer"))?;
    let cg = decode_graph(&integer_to_digits(&v, n, k)?)?;
    let text = render_graph(&cg);
    match out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(EXIT_OK))
}

pub struct SplitArgs {
    pub graph: Option<PathBuf>,
    pub number: Option<String>,
    pub scheme: SchemeArg,
    pub threshold: Option<usize>,
    pub participants: usize,
    pub predicate: String,
    pub secret: SecretArg,
    pub prime: Option<u64>,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
}

pub fn split(args: SplitArgs) -> Result<ExitCode> {
    let spec = match args.scheme {
        SchemeArg::Shamir => {
            let threshold = args
                .threshold
                .ok_or_else(|| anyhow!("--t is required for shamir"))?;
            let prime = match args.prime {
                Some(p) => FieldPrime::new(p)?,
                None => FieldPrime::PRODUCTION,
            };
            SchemeSpec::Shamir {
                threshold,
                participants: args.participants,
                prime,
            }
        }
        SchemeArg::Kgh => {
            if args.prime.is_some() {
                bail!("--prime only applies to shamir");
            }
            if let Some(t) = args.threshold {
                if t != args.participants {
                    bail!(
                        "kgh needs every share: --t must equal --n ({})",
                        args.participants
                    );
                }
            }
            SchemeSpec::kgh(args.participants)
        }
    };
    let predicate: Predicate = args.predicate.parse()?;
    let mut rng = match args.seed {
        Some(seed) => RandomSource::from_u64(seed),
        None => RandomSource::from_entropy(),
    };

    let dealing: Dealing = match (&args.graph, &args.number) {
        (None, Some(bits)) => {
            let payload = BitPayload::new(parse_bit_string(bits)?);
            share_number_as_graph(&payload, spec, predicate, &mut rng)?
        }
        (Some(path), None) => {
            let cg = read_graph(path)?;
            match args.secret {
                SecretArg::Graph => share_colored_graph(&cg, spec, predicate, &mut rng)?,
                SecretArg::Structure => share_colored_graph(
                    &ColoredGraph::uncolored(cg.graph().clone()),
                    spec,
                    predicate,
                    &mut rng,
                )?,
                SecretArg::Coloring => share_coloring(cg.coloring(), spec, predicate, &mut rng)?,
            }
        }
        _ => bail!("give either a graph file or --number"),
    };

    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for share in &dealing.shares {
        let path = args
            .out_dir
            .join(format!("share_{}.gsh", share.share.index));
        write_atomic(&path, &render_share(share))?;
        println!("{}", path.display());
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn read_shares(paths: &[PathBuf]) -> Result<Vec<GraphShare>> {
    paths
        .iter()
        .map(|path| {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_share(&text).with_context(|| format!("{}", path.display()))
        })
        .collect()
}

fn colors_line(colors: &[u32]) -> String {
    colors
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn reconstruct(paths: &[PathBuf], out: Option<&Path>) -> Result<ExitCode> {
    let shares = read_shares(paths)?;
    let result = reconstruct_and_verify(&shares);
    let report = &result.report;
    println!("{report}");
    if let Some(reason) = &report.reason {
        let code = if reason.is_input_error() {
            EXIT_INPUT
        } else {
            EXIT_REJECTED
        };
        return Ok(ExitCode::from(code));
    }
    match result
        .secret
        .expect("accepted reconstruction carries a secret")
    {
        RecoveredSecret::Graph(cg) => {
            let text = render_graph(&cg);
            match out {
                Some(path) => write_atomic(path, &text)?,
                None => print!("{text}"),
            }
        }
        RecoveredSecret::Coloring(c) => {
            if out.is_some() {
                bail!("a coloring dealing has no graph to write; omit --out");
            }
            println!("coloring: {}", colors_line(c.colors()));
        }
        RecoveredSecret::Number(p) => match out {
            Some(path) => write_atomic(path, &format!("{}\n", p.bit_string()))?,
            None => println!("bits: {}", p.bit_string()),
        },
    }
    Ok(ExitCode::from(EXIT_OK))
}

pub fn census(vertices: usize, predicate: &str) -> Result<ExitCode> {
    let predicate: Predicate = predicate.parse()?;
    let result = analysis::census(vertices, &predicate)?;
    println!("vertices: {}", result.vertices);
    println!("predicate: {}", result.predicate);
    println!("total: {}", result.total);
    println!("valid: {}", result.valid);
    println!("fraction: {result}");
    Ok(ExitCode::from(EXIT_OK))
}

pub fn attack_demo(dir: &Path, constant: u32, graph: Option<&Path>) -> Result<ExitCode> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "gsh"));
    paths.sort();
    let mut shares = read_shares(&paths)?;
    if shares.is_empty() {
        bail!("no .gsh files in {}", dir.display());
    }
    shares.sort_by_key(|s| s.share.index);
    if shares[0].descriptor.kind != SecretKind::Coloring {
        bail!(
            "attack demo needs a coloring dealing, found {}",
            shares[0].descriptor.kind
        );
    }

    let before = recover_coloring(&shares, "original")?;
    let mut attacked = shares.clone();
    attacked[0] = shift_attack(&shares[0], constant)?;
    let after = recover_coloring(&attacked, "attacked")?;

    let structure: Option<Graph> = match graph {
        Some(path) => Some(read_graph(path)?.graph().clone()),
        None => match &shares[0].descriptor.predicate {
            Predicate::ProperColoring { reference: Some(g) } => Some(g.clone()),
            _ => None,
        },
    };
    let proper = |c: &graphshare::Coloring| -> Result<String> {
        Ok(match &structure {
            Some(g) => ColoredGraph::new(g.clone(), c.clone())?
                .is_proper()
                .to_string(),
            None => "unknown (no structure given)".into(),
        })
    };

    println!(
        "participant {} adds {} to every digit",
        shares[0].share.index, constant
    );
    println!("before: {}", colors_line(before.colors()));
    println!("after: {}", colors_line(after.colors()));
    println!("partition before: {}", partition_of(&before));
    println!("partition after: {}", partition_of(&after));
    println!(
        "partition preserved: {}",
        partition_of(&before) == partition_of(&after)
    );
    println!("assignment changed: {}", before != after);
    println!("proper before: {}", proper(&before)?);
    println!("proper after: {}", proper(&after)?);
    Ok(ExitCode::from(EXIT_OK))
}

fn recover_coloring(shares: &[GraphShare], what: &str) -> Result<graphshare::Coloring> {
    let r = reconstruct_and_verify(shares);
    match r.secret {
        Some(RecoveredSecret::Coloring(c)) => Ok(c),
        _ => Err(anyhow!("{what} shares did not reconstruct: {}", r.report)),
    }
}
