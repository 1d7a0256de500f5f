
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use hallcomb::cyclic::{certify_triangulation, cross_check_gale};
use hallcomb::hall::{check_associativity, monoid_algebra_oracle, structure_constants};
use hallcomb::ordcube::{
    associator_cube, boundary_decomposition, source_sink_paths, verify_unique_associator,
    PlusCube,
};
use hallcomb::segal::{
    check_dsegal_cubes, check_dsegal_triangulations, gale_triangulation, lax_degree,
    lower_upper_diagnostic, Kind, TriangulationMode,
};
use hallcomb::Error as CoreError;

use hallcomb_cli::corpus;
use hallcomb_cli::input::Input;
use hallcomb_cli::report::Report;

const DEFAULT_SEED: u64 = 0x00a1_1c0b;

#[derive(Parser)]
#[command(name = "hallcomb", about = "Associator cubes, higher Segal checks, Hall algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Triangulation,
    Cubes,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Reduced,
}

#[derive(Subcommand)]
enum Command {
    /// Print an associator cube and optionally verify its characterization.
    AssocCube {
        #[arg(long)]
        n: usize,
        /// Exhaustive uniqueness search, n <= 3.
        #[arg(long)]
        check_unique: bool,
        /// Boundary decomposition report, n <= 4.
        #[arg(long)]
        boundary: bool,
    },
    /// Check the d-Segal conditions of an input up to a simplex bound.
    SegalCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Structure constants of the counting Hall algebra of an input.
    Hall {
        #[arg(long)]
        input: PathBuf,
        /// Monoid file whose algebra the constants must reproduce.
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Lower and upper triangulations of a simplex, with optional geometric
    /// certification.
    Gale {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        geometry: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the bundled corpus files into a directory.
    #[command(hide = true)]
    EmitCorpus {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Human => print!("{}", report.human()),
                Format::Machine => print!("{}", report.machine()),
            }
            std::process::exit(if report.overall { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            std::process::exit(2);
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn load(path: &PathBuf) -> Result<(Input, String)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = Input::parse(&text)?;
    Ok((parsed, digest(text.as_bytes())))
}

/// Runs a check body, turning a check failure error into a failing record
/// while letting argument and validation errors escape as usage errors.
fn checked(
    report: &mut Report,
    name: &str,
    params: &str,
    body: impl FnOnce() -> std::result::Result<(bool, Option<String>), CoreError>,
) -> Result<()> {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok((verdict, witness)) => {
            report.push_check(name, params, verdict, witness, millis);
            Ok(())
        }
        Err(CoreError::CheckFailed(msg)) => {
            report.push_check(name, params, false, Some(msg), millis);
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cube_lines(c: &PlusCube, lines: &mut Vec<String>) {
    let n = c.dim();
    for mask in 0..(1usize << n) {
        lines.push(format!(
            "vertex {:0width$b}: <{}>",
            mask,
            c.vertex(mask),
            width = n.max(1)
        ));
    }
    for mask in 0..(1usize << n) {
        for dir in 1..=n {
            if mask & c.bit(dir) == 0 {
                lines.push(format!(
                    "edge {:0width$b} -{}-> {:?}",
                    mask,
                    dir,
                    c.edge(mask, dir).values(),
                    width = n.max(1)
                ));
            }
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::AssocCube {
            n,
            check_unique,
            boundary,
        } => {
            if *n < 1 {
                bail!("--n must be at least 1");
            }
            if *check_unique && *n > 3 {
                bail!("--check-unique is bounded at n = 3");
            }
            if *boundary && !(2..=4).contains(n) {
                bail!("--boundary needs n between 2 and 4");
            }
            let mut report = Report::new(format!(
                "assoc-cube --n {}{}{}",
                n,
                if *check_unique { " --check-unique" } else { "" },
                if *boundary { " --boundary" } else { "" }
            ));
            let cube = associator_cube(*n);
            cube_lines(&cube, &mut report.lines);
            checked(&mut report, "commutes", &format!("n={}", n), || {
                cube.validate().map(|_| (true, None))
            })?;
            checked(&mut report, "paths", &format!("n={}", n), || {
                let count = source_sink_paths(&cube)?;
                Ok((
                    count == factorial(*n),
                    Some(format!("{} source-to-sink paths", count)),
                ))
            })?;
            if *check_unique {
                checked(&mut report, "unique", &format!("n={}", n), || {
                    let count = verify_unique_associator(*n)?;
                    Ok((
                        true,
                        Some(format!("{} labelings, one orbit under direction permutation", count)),
                    ))
                })?;
            }
            if *boundary {
                checked(&mut report, "boundary", &format!("n={}", n), || {
                    let r = boundary_decomposition(*n)?;
                    let detail = r
                        .faces
                        .iter()
                        .map(|f| {
                            format!(
                                "dir {}: + face is the lower cube: {}; - face splits {}+{}: {}",
                                f.dir,
                                f.plus_is_associator,
                                f.minus_split.0,
                                f.minus_split.1,
                                f.minus_is_union
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(" | ");
                    Ok((r.all_ok(), Some(detail)))
                })?;
            }
            Ok(report)
        }
        Command::SegalCheck {
            input,
            d,
            nmax,
            method,
            mode,
        } => {
            if *d < 2 {
                bail!("--d must be at least 2");
            }
            if *d > *nmax {
                bail!("empty range: --d {} exceeds --nmax {}", d, nmax);
            }
            let (parsed, hash) = load(input)?;
            let method_name = match method {
                Method::Triangulation => "triangulation",
                Method::Cubes => "cubes",
                Method::Both => "both",
            };
            let mode_name = match mode {
                Mode::Full => "full",
                Mode::Reduced => "reduced",
            };
            let mut report = Report::new(format!(
                "segal-check --input {} --d {} --nmax {} --method {} --mode {}",
                input.display(),
                d,
                nmax,
                method_name,
                mode_name
            ));
            report.input_digest = Some(hash);
            let needs_cubes = *method != Method::Triangulation;
            let s = parsed.realize(if needs_cubes { *nmax + 1 } else { *nmax })?;
            let tri_mode = match mode {
                Mode::Full => TriangulationMode::Full,
                Mode::Reduced => TriangulationMode::Reduced,
            };
            let mut tri_ok = None;
            let mut cube_ok = None;
            if *method != Method::Cubes {
                let v = check_dsegal_triangulations(&s, *d, *nmax, tri_mode)?;
                for row in &v.rows {
                    report.push_check(
                        "adapted",
                        &format!("n={} d={} {}", row.n, row.d, row.kind.label()),
                        row.report.adapted,
                        row.report.witness.clone(),
                        0,
                    );
                }
                tri_ok = Some(v.ok);
            }
            if needs_cubes {
                let v = check_dsegal_cubes(&s, *d, *nmax)?;
                for row in &v.rows {
                    let witness = if row.report.ok() {
                        None
                    } else {
                        Some(format!("{:?}", row.report))
                    };
                    report.push_check(
                        "invertible-cube",
                        &format!("n={}", row.n),
                        row.report.ok(),
                        witness,
                        0,
                    );
                }
                cube_ok = Some(v.ok);
            }
            if let (Some(t), Some(c)) = (tri_ok, cube_ok) {
                report.push_check(
                    "routes-agree",
                    &format!("d={} nmax={}", d, nmax),
                    t == c,
                    Some(format!("triangulations: {}, cubes: {}", t, c)),
                    0,
                );
                let diag = lower_upper_diagnostic(&s, *d)?;
                report.push_info(
                    "lower-upper",
                    &format!("d={}", d),
                    format!(
                        "lower adapted: {}, upper adapted: {}, minus-leading pullback: {}, \
                         plus-leading pullback: {}, pairing: {:?}",
                        diag.lower_adapted,
                        diag.upper_adapted,
                        diag.minus_leading_pullback,
                        diag.plus_leading_pullback,
                        diag.pairing
                    ),
                );
                let lax = lax_degree(&s, *nmax - 1)?;
                report.push_info(
                    "lax-degree",
                    &format!("nmax={}", nmax - 1),
                    match lax.lax_degree {
                        Some(l) => format!("lax degree {} (smallest d = {})", l, l + 1),
                        None => "no invertible tail up to the bound".to_string(),
                    },
                );
            }
            Ok(report)
        }
        Command::Hall { input, oracle } => {
            let (parsed, hash) = load(input)?;
            let mut report = Report::new(format!(
                "hall --input {}{}",
                input.display(),
                oracle
                    .as_ref()
                    .map(|o| format!(" --oracle {}", o.display()))
                    .unwrap_or_default()
            ));
            report.input_digest = Some(hash);
            let s = parsed.realize(3)?;
            let table = structure_constants(&s)?;
            for ((a, b, x), c) in &table.constants {
                report.lines.push(format!(
                    "m[{}, {}]^{} = {}",
                    table.basis_names[*a], table.basis_names[*b], table.basis_names[*x], c
                ));
            }
            checked(&mut report, "associative", "", || {
                Ok(match check_associativity(&table) {
                    None => (true, None),
                    Some(w) => (false, Some(format!("{:?}", w))),
                })
            })?;
            if let Some(oracle_path) = oracle {
                let (oracle_input, _) = load(oracle_path)?;
                let m = oracle_input.monoid()?;
                let expected = monoid_algebra_oracle(&m)?;
                checked(&mut report, "oracle-match", "", || {
                    if table.basis_names != expected.basis_names {
                        return Ok((
                            false,
                            Some(format!(
                                "basis {:?} differs from the monoid basis {:?}",
                                table.basis_names, expected.basis_names
                            )),
                        ));
                    }
                    let mismatch = table
                        .constants
                        .iter()
                        .find(|(k, v)| expected.constants.get(k) != Some(v))
                        .or_else(|| {
                            expected
                                .constants
                                .iter()
                                .find(|(k, v)| table.constants.get(k) != Some(v))
                        });
                    Ok(match mismatch {
                        None => (true, None),
                        Some(((a, b, x), c)) => (
                            false,
                            Some(format!(
                                "constant ({}, {} -> {}) = {} disagrees",
                                table.basis_names[*a],
                                table.basis_names[*b],
                                table.basis_names[*x],
                                c
                            )),
                        ),
                    })
                })?;
            }
            Ok(report)
        }
        Command::Gale {
            n,
            d,
            geometry,
            samples,
            seed,
        } => {
            if *d > *n {
                bail!("--d must not exceed --n");
            }
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let mut report = Report::new(format!(
                "gale --n {} --d {}{}{}",
                n,
                d,
                if *geometry {
                    format!(" --geometry --samples {}", samples)
                } else {
                    String::new()
                },
                if *geometry {
                    format!(" --seed {}", seed)
                } else {
                    String::new()
                }
            ));
            for kind in [Kind::Lower, Kind::Upper] {
                let t = gale_triangulation(*n, *d, kind)?;
                report.lines.push(format!(
                    "{}: {}",
                    kind.label(),
                    t.simplices
                        .iter()
                        .map(|s| format!("{:?}", s))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            if *geometry {
                report.seed = Some(seed);
                checked(&mut report, "envelope-match", &format!("n={} d={}", n, d), || {
                    Ok((cross_check_gale(*n, *d)?, None))
                })?;
                for kind in [Kind::Lower, Kind::Upper] {
                    checked(
                        &mut report,
                        "certificate",
                        &format!("n={} d={} {}", n, d, kind.label()),
                        || {
                            let c = certify_triangulation(*n, *d, kind, *samples, seed)?;
                            let note = format!(
                                "total volume x {}! = {}",
                                d, c.total_volume
                            );
                            Ok((c.ok, Some(c.witness.unwrap_or(note))))
                        },
                    )?;
                }
            }
            Ok(report)
        }
        Command::EmitCorpus { dir } => {
            let mut report = Report::new(format!("emit-corpus --dir {}", dir.display()));
            let written = corpus::emit(dir)?;
            for name in written {
                report.lines.push(format!("wrote {}", name));
            }
            Ok(report)
        }
    }
}
