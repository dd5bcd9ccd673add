use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use k3lattice::claims::{self, io};
use k3lattice::glue::{self, GlueSpec, NamedLattice};
use k3lattice::{quadform, Error, Lattice};

#[derive(Parser)]
#[command(name = "k3lattice", version, about = "Exact lattice and quadratic form checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run registered claims.
    Verify {
        /// Claim id; omit with --all.
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        #[arg(long, requires = "all")]
        tag: Option<String>,
        /// Also write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// List claim ids instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Inspect or transform lattice files.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Rational invariants of a lattice file's form.
    Quadform {
        #[command(subcommand)]
        cmd: QuadformCmd,
    },
    /// Build a named lattice; `named --list` shows the catalogue.
    Named {
        name: Option<String>,
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long, conflicts_with = "name")]
        list: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info {
        file: PathBuf,
    },
    Op {
        #[command(subcommand)]
        op: Op,
    },
}

#[derive(Subcommand)]
enum Op {
    /// Orthogonal complement of vectors given as "1,0,2;0,1,0".
    Complement {
        file: PathBuf,
        #[arg(long)]
        vectors: String,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Adjoin glue vectors v/denominator.
    Adjoin {
        file: PathBuf,
        #[arg(long)]
        vectors: String,
        #[arg(long, default_value_t = 2)]
        denominator: i64,
        /// Allow odd results.
        #[arg(long)]
        allow_odd: bool,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Discriminant group and form values.
    DiscForm { file: PathBuf },
    /// Even overlattices up to the given index.
    Overlattices {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_index: u64,
    },
    /// Scale the form by n.
    Rescale {
        file: PathBuf,
        n: i64,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Orthogonal direct sum of several files.
    Sum {
        files: Vec<PathBuf>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuadformCmd {
    Invariants { file: PathBuf },
}

/// Failures that should exit with 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn parse_vectors(s: &str) -> Result<Vec<Vec<BigInt>>, Usage> {
    s.split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| Usage(format!("bad integer {x:?} in {s:?}"))))
                .collect()
        })
        .collect()
}

fn emit(l: &Lattice, save: Option<PathBuf>) -> Result<(), Usage> {
    match save {
        Some(p) => {
            io::save(l, &p)?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{}", io::to_json(l)),
    }
    Ok(())
}

fn info(l: &Lattice) -> Result<(), Usage> {
    let (p, n) = l.signature();
    println!("name: {}", l.name().unwrap_or("unnamed"));
    println!("rank: {}", l.rank());
    println!("det: {}", l.det());
    println!("signature: ({p},{n})");
    println!("even: {}", l.is_even());
    if l.is_nondegenerate() {
        let d = l.discriminant_group()?;
        let f: Vec<String> = d.invariant_factors.iter().map(|x| x.to_string()).collect();
        println!("discriminant group: [{}]", f.join(","));
    }
    if let Some(e) = l.embedding() {
        println!("ambient: {}", e.ambient.name().unwrap_or("unnamed"));
    }
    Ok(())
}

fn disc_form(l: &Lattice) -> Result<(), Usage> {
    let d = l.discriminant_group()?;
    let f: Vec<String> = d.invariant_factors.iter().map(|x| x.to_string()).collect();
    println!("invariant factors: [{}]", f.join(","));
    println!("order: {}", d.order());
    for (i, g) in d.generators.iter().enumerate() {
        let v: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        let q = d.q_values.as_ref().map(|q| format!(" q={} (mod 2)", q[i])).unwrap_or_default();
        println!("g{i} = ({}){q}", v.join(", "));
    }
    for row in &d.b_matrix {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("b: [{}]", r.join(", "));
    }
    Ok(())
}

fn run_op(op: Op) -> Result<ExitCode, Usage> {
    match op {
        Op::Complement { file, vectors, save } => {
            let l = io::load(&file)?;
            let name = format!("complement in {}", l.name().unwrap_or("unnamed"));
            emit(&l.orthogonal_complement(&parse_vectors(&vectors)?)?.named(name), save)?;
        }
        Op::Adjoin { file, vectors, denominator, allow_odd, save } => {
            let l = io::load(&file)?;
            let glue: Vec<GlueSpec> =
                parse_vectors(&vectors)?.into_iter().map(|v| GlueSpec::new(v, BigInt::from(denominator))).collect();
            let o = glue::adjoin(&l, &glue, !allow_odd)?;
            eprintln!("index {}", o.index);
            emit(&o.lattice, save)?;
        }
        Op::DiscForm { file } => disc_form(&io::load(&file)?)?,
        Op::Overlattices { file, max_index } => {
            let l = io::load(&file)?;
            for o in glue::even_overlattices(&l, max_index)? {
                println!("index {}  det {}", o.index, o.lattice.det());
            }
        }
        Op::Rescale { file, n, save } => emit(&io::load(&file)?.rescale(&BigInt::from(n))?, save)?,
        Op::Sum { files, save } => {
            let ls = files.iter().map(io::load).collect::<Result<Vec<_>, _>>()?;
            emit(&k3lattice::lattice::direct_sum(&ls), save)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    match cli.cmd {
        Cmd::Verify { id, all, tag, json, list } => {
            if list {
                for c in claims::registry() {
                    println!("{}  [{}]", c.id, c.tags.join(","));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let results = match (id, all) {
                (Some(id), false) => vec![claims::run_claim(&id)?],
                (None, true) => claims::run_all(tag.as_deref()),
                _ => return Err(Usage("give a claim id or --all".into())),
            };
            print!("{}", claims::text_report(&results));
            if let Some(p) = json {
                std::fs::write(&p, claims::json_report(&results)).map_err(Error::from)?;
            }
            Ok(if claims::all_passed(&results) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Lattice { cmd: LatticeCmd::Info { file } } => {
            info(&io::load(&file)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lattice { cmd: LatticeCmd::Op { op } } => run_op(op),
        Cmd::Quadform { cmd: QuadformCmd::Invariants { file } } => {
            let l = io::load(&file)?;
            let inv = quadform::invariants(l.gram())?;
            println!("{}", serde_json::to_string_pretty(&inv).expect("invariants serialize"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Named { name, save, list } => {
            if list {
                for n in NamedLattice::catalogue() {
                    println!("{n}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.ok_or_else(|| Usage("give a lattice name or --list".into()))?;
            let l = glue::build_named(&name.parse()?)?;
            if save.is_none() {
                info(&l)?;
            }
            if save.is_some() {
                emit(&l, save)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
