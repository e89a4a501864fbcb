//! `collapse`: build, collapse, decide and certify simplicial complexes, and
//! run the 3-SAT reduction.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or I/O error, 3 budget
//! exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use collapsibility::cnf::{parse_dimacs, Assignment, Literal};
use collapsibility::collapse::{
    check_certificate, decide_collapsible, decide_collapses_to_dim, greedy_codim1, greedy_codim1_by,
    CollapseCertificate, DecisionOutcome,
};
use collapsibility::complex::{Face, LabeledComplex, SimplicialComplex};
use collapsibility::format::{parse_certificate, parse_complex, parse_labeled, write_certificate, write_labeled, write_matching};
use collapsibility::gadgets::{self, GadgetInstance, ThickWallVariant, WallKind};
use collapsibility::homology::homology;
use collapsibility::morse::{certificate_to_matching, greedy_acyclic_matching, is_acyclic, is_perfect};
use collapsibility::reduction::{build_reduction, check_reduction_structure, verify_built, Verdict};
use collapsibility::search::PrefixSearchConfig;
use collapsibility::{standard, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FORMATS: &str = "\
Formats (text, `#` starts a comment):
  complex      one maximal face per line, vertices as non-negative integers
                 1 2 3
                 3 4
               labels:  @label <name> <vertices>      e.g. @label e(x1) 2 3
                        @path <name> <edge>, <edge>   e.g. @path p(x1) 1 2, 2 3
  certificate  @start <complex file>
               <sigma> -> <tau>        one elementary collapse per line
               @target
               <maximal faces of the final complex, one per line>
  matching     <sigma> -> <tau>        one matched pair per line
               @critical
               <critical faces, one per line>
  cnf          DIMACS: `p cnf <vars> <clauses>`, then clauses of exactly three
               literals terminated by 0

Exit codes: 0 success, 1 negative verdict, 2 usage or I/O error, 3 budget exhausted.";

#[derive(Parser)]
#[command(name = "collapse", version, about = "Collapsibility of simplicial complexes", after_help = FORMATS)]
struct Cli {
    /// Seed for randomized sampling (tie-break orders); never changes an algorithm's result.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Writes a complex: closes a maximal-face list, or builds a reference complex.
    Build {
        #[arg(long, conflicts_with = "standard")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        standard: Option<Standard>,
        /// Dimension for simplex and sphere.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Builds a gadget with its labels.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetArg,
        /// Wall of a room, or of both rooms of a house.
        #[arg(long, value_enum, default_value_t = WallArg::Thick)]
        wall: WallArg,
        /// Lower and upper wall of a house (default: --wall).
        #[arg(long, value_enum)]
        low: Option<WallArg>,
        #[arg(long, value_enum)]
        up: Option<WallArg>,
        /// Thick-wall variant.
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        /// Variable of a literal or disk gadget; number of variables of the conjunction gadget.
        #[arg(long, default_value_t = 1)]
        var: u32,
        /// Literal of B(ℓ) as a signed integer.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        literal: i64,
        /// Clause of K(c) as three signed integers, e.g. "1 -2 3".
        #[arg(long, default_value = "1 2 3", allow_hyphen_values = true)]
        clause: String,
        /// Clause indices (0-based) containing the literal of B(ℓ), e.g. "0 2".
        #[arg(long, default_value = "")]
        clauses: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for the scripted certificates.
        #[arg(long)]
        with_certificates: Option<PathBuf>,
    },
    /// Performs one elementary collapse.
    Collapse {
        #[arg(long)]
        input: PathBuf,
        /// The free face, e.g. "1 2".
        #[arg(long)]
        face: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides collapsibility (to a point, or to dimension --to-dim) by exhaustive search.
    Decide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long)]
        to_dim: Option<usize>,
        /// Where to write the certificate (default: input with extension .cert).
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Greedy codimension-one collapse; verdict is whether dimension drops.
    Greedy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Also rerun with this many seeded random tie-breaking orders.
        #[arg(long, default_value_t = 0)]
        orders: usize,
    },
    /// Replays a certificate.
    VerifyCert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Discrete Morse matching from a certificate, or a greedy acyclic one.
    Morse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer homology.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
    /// Builds K(Φ), optionally with the scripted certificate for an assignment.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, requires = "assignment")]
        certificate: Option<PathBuf>,
        /// Signed literals, e.g. "1 -2 3".
        #[arg(long, allow_hyphen_values = true)]
        assignment: Option<String>,
    },
    /// Brute-force SAT against the reduction; bounded search on the unsatisfiable side.
    VerifyReduction {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Maximal prefix length of the unsatisfiable-side search.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Check a given complex instead of building K(Φ).
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Standard {
    Simplex,
    Sphere,
    DunceHat,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    ThickWall,
    Room,
    House,
    ThreeRoom,
    ThreeRoomCollapsed,
    Literal,
    Conjunction,
    Clause,
    Bl,
    Disk,
}

#[derive(Clone, Copy, ValueEnum)]
enum WallArg {
    Thin,
    Thick,
    Collapsed,
}

impl From<WallArg> for WallKind {
    fn from(w: WallArg) -> Self {
        match w {
            WallArg::Thin => WallKind::Thin,
            WallArg::Thick => WallKind::Thick,
            WallArg::Collapsed => WallKind::Collapsed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Collapsed01,
    KeepRectangles,
}

/// Exit code with a message for stderr.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(2, e.to_string())
    }
}

type Out = Result<u8, Fail>;

fn read(p: &Path) -> Result<String, Fail> {
    fs::read_to_string(p).map_err(|e| Fail(2, format!("{}: {e}", p.display())))
}

fn write(p: &Path, s: &str) -> Result<(), Fail> {
    fs::write(p, s).map_err(|e| Fail(2, format!("{}: {e}", p.display())))
}

fn emit(out: &Option<PathBuf>, s: &str) -> Result<(), Fail> {
    match out {
        Some(p) => write(p, s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn load(p: &Path) -> Result<SimplicialComplex, Fail> {
    Ok(parse_complex(&read(p)?)?)
}

fn load_cert(p: &Path) -> Result<CollapseCertificate, Fail> {
    Ok(parse_certificate(&read(p)?)?.1)
}

fn parse_face(s: &str) -> Result<Face, Fail> {
    let vs = s
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Fail(2, format!("bad vertex `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Face::from_unsorted(vs)?)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Fail> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| Fail(2, format!("bad integer `{t}`")))).collect()
}

fn cert_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn build_gadget(cmd: &Command) -> Result<GadgetInstance, Fail> {
    let Command::Gadget { kind, wall, low, up, variant, var, literal, clause, clauses, .. } = cmd else {
        unreachable!()
    };
    let g = match kind {
        GadgetArg::ThickWall => gadgets::thick_wall(match variant {
            VariantArg::Full => ThickWallVariant::Full,
            VariantArg::Collapsed01 => ThickWallVariant::CollapsedTo01Free,
            VariantArg::KeepRectangles => ThickWallVariant::CollapsedKeepRectangles,
        }),
        GadgetArg::Room => gadgets::bing_room((*wall).into()),
        GadgetArg::House => gadgets::bing_house(low.unwrap_or(*wall).into(), up.unwrap_or(*wall).into()),
        GadgetArg::ThreeRoom => gadgets::three_room_house(false),
        GadgetArg::ThreeRoomCollapsed => gadgets::three_room_house(true),
        GadgetArg::Literal => gadgets::literal_gadget(*var),
        GadgetArg::Conjunction => gadgets::conjunction_gadget(*var),
        GadgetArg::Clause => {
            let c = parse_ints(clause)?;
            if c.len() != 3 {
                return Err(Fail(2, "a clause has exactly three literals".into()));
            }
            let lits = [Literal::from_dimacs(c[0])?, Literal::from_dimacs(c[1])?, Literal::from_dimacs(c[2])?];
            gadgets::clause_gadget(0, lits)
        }
        GadgetArg::Bl => {
            let idx = parse_ints(clauses)?.into_iter().map(|i| i as usize).collect::<Vec<_>>();
            gadgets::bl_gadget(Literal::from_dimacs(*literal)?, &idx)
        }
        GadgetArg::Disk => gadgets::disk_gadget(*var),
    };
    Ok(g?)
}

fn safe_name(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn run(cli: Cli) -> Out {
    match &cli.command {
        Command::Build { input, standard: std_kind, dim, out } => {
            let k = match (input, std_kind) {
                (Some(p), _) => load(p)?,
                (None, Some(Standard::Simplex)) => standard::simplex(*dim),
                (None, Some(Standard::Sphere)) => standard::sphere(*dim),
                (None, Some(Standard::DunceHat)) => standard::dunce_hat(),
                (None, None) => return Err(Fail(2, "give --input or --standard".into())),
            };
            emit(out, &write_labeled(&LabeledComplex::new(k)))?;
            Ok(0)
        }
        cmd @ Command::Gadget { out, with_certificates, .. } => {
            let g = build_gadget(cmd)?;
            emit(out, &write_labeled(&g.labeled))?;
            if let Some(dir) = with_certificates {
                fs::create_dir_all(dir).map_err(|e| Fail(2, format!("{}: {e}", dir.display())))?;
                for c in &g.scripted_certificates {
                    let base = safe_name(&c.name);
                    let start = if c.start == *g.complex() {
                        out.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "gadget".into())
                    } else {
                        let p = dir.join(format!("{base}.start.cplx"));
                        write(&p, &write_labeled(&LabeledComplex::new(c.start.clone())))?;
                        p.display().to_string()
                    };
                    write(&dir.join(format!("{base}.cert")), &write_certificate(&c.certificate, &start))?;
                }
            }
            Ok(0)
        }
        Command::Collapse { input, face, out } => {
            let k = load(input)?;
            let sigma = parse_face(face)?;
            match k.elementary_collapse(&sigma) {
                Ok(r) => {
                    emit(out, &write_labeled(&LabeledComplex::new(r)))?;
                    Ok(0)
                }
                Err(e) => Err(Fail(1, e.to_string())),
            }
        }
        Command::Decide { input, budget, to_dim, certificate } => {
            let k = load(input)?;
            let outcome = match to_dim {
                Some(d) => decide_collapses_to_dim(&k, *d, *budget),
                None => decide_collapsible(&k, *budget),
            };
            match outcome {
                DecisionOutcome::Collapsible(cert) => {
                    let path = certificate.clone().unwrap_or_else(|| input.with_extension("cert"));
                    write(&path, &write_certificate(&cert, &cert_name(input)))?;
                    println!("collapsible ({} steps)", cert.len());
                    println!("{}", path.display());
                    Ok(0)
                }
                DecisionOutcome::NotCollapsible => {
                    println!("not collapsible");
                    Ok(1)
                }
                DecisionOutcome::Exhausted { budget } => Err(Fail(3, format!("undecided: budget of {budget} nodes exhausted"))),
            }
        }
        Command::Greedy { input, out, certificate, orders } => {
            let k = load(input)?;
            let d = k.dim().unwrap_or(0);
            let (res, cert) = greedy_codim1(&k);
            let drops = |r: &SimplicialComplex| d == 0 || r.dim().unwrap_or(0) < d;
            let verdict = drops(&res);
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            for i in 0..*orders {
                let (r, _) = greedy_codim1_by(&k, |faces| rng.gen_range(0..faces.len()));
                if drops(&r) != verdict {
                    return Err(Fail(1, format!("verdict changed under random order {i}")));
                }
            }
            if let Some(p) = certificate {
                write(p, &write_certificate(&cert, &cert_name(input)))?;
            }
            emit(out, &write_labeled(&LabeledComplex::new(res.clone())))?;
            eprintln!("greedy: {} steps, residue dimension {:?}", cert.len(), res.dim());
            eprintln!("collapses to dimension {}: {}", d.saturating_sub(1), if verdict { "yes" } else { "no" });
            Ok(if verdict { 0 } else { 1 })
        }
        Command::VerifyCert { input, certificate } => {
            let k = load(input)?;
            let cert = load_cert(certificate)?;
            match check_certificate(&k, &cert) {
                Ok(()) => {
                    println!("certificate verified ({} steps)", cert.len());
                    Ok(0)
                }
                Err(e) => Err(Fail(1, e.to_string())),
            }
        }
        Command::Morse { input, certificate, out } => {
            let k = load(input)?;
            let m = match certificate {
                Some(p) => certificate_to_matching(&k, &load_cert(p)?).map_err(|e| Fail(1, e.to_string()))?,
                None => greedy_acyclic_matching(&k),
            };
            let acyclic = is_acyclic(&m)?;
            if let Some(p) = out {
                write(p, &write_matching(&m))?;
            }
            println!("pairs={} critical={} acyclic={acyclic} perfect={}", m.pairs.len(), m.critical.len(), is_perfect(&m));
            Ok(if acyclic { 0 } else { 1 })
        }
        Command::Homology { input } => {
            let k = load(input)?;
            let h = homology(&k);
            print!("{h}");
            println!("point-like: {}", h.is_point_like());
            Ok(0)
        }
        Command::Reduce { cnf, out, certificate, assignment } => {
            let phi = parse_dimacs(&read(cnf)?)?;
            let rc = build_reduction(&phi)?;
            for w in &rc.warnings {
                eprintln!("warning: {w}");
            }
            write(out, &write_labeled(&rc.labeled))?;
            eprintln!("K(Φ): {} faces, dimension 3", rc.complex().len());
            if let (Some(cp), Some(a)) = (certificate, assignment) {
                let a = Assignment::parse(a, phi.variable_count)?;
                let cert = rc.scripted_certificate(&a).map_err(|e| Fail(1, e.to_string()))?;
                write(cp, &write_certificate(&cert, &cert_name(out)))?;
                eprintln!("certificate: {} steps to v_and", cert.len());
            }
            Ok(0)
        }
        Command::VerifyReduction { cnf, budget, depth, complex, report } => {
            let phi = parse_dimacs(&read(cnf)?)?;
            let rc = build_reduction(&phi)?;
            if let Some(p) = complex {
                let given = parse_labeled(&read(p)?)?;
                check_reduction_structure(&given, &phi)?;
                if given.complex != *rc.complex() {
                    return Err(Fail(2, "not a reduction complex: differs from K(Φ) of the formula".into()));
                }
            }
            let cfg = PrefixSearchConfig { max_depth: *depth, node_budget: *budget };
            let r = verify_built(&rc, cfg)?;
            emit(report, &r.to_string())?;
            if report.is_some() {
                print!("{}", r.summary_line() + "\n");
            }
            Ok(match r.verdict() {
                Verdict::Consistent => 0,
                Verdict::Inconsistent => 1,
                Verdict::Inconclusive => 3,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
