//! Command line front end: groups, division tables, inverse patterns,
//! Moufang loops and the block-Fourier reduction, with text/JSON/CSV output.
//!
//! Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
//! 1 infeasible or failed verification, 2 usage error, 3 malformed input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use wardkit::algebra::catalogue::*;
use wardkit::algebra::{magma_report, FiniteGroup, Magma, SubgroupData};
use wardkit::io;
use wardkit::loops::{
    build_gwq_block_table, chein, cyclic_subloop, gwq, gwq_right_division, LoopTable,
};
use wardkit::pattern::{
    complete_index2, complete_index3, extract_pattern, feasibility_search, InversePattern,
};
use wardkit::spectral::{
    block_diagonalize, characters, evaluate_group_matrix, similarity_residual,
    symbolic_group_matrix,
};
use wardkit::table::{build_ward_table, make_ordering, BlockTable, CosetOrdering};
use wardkit::ward::{check_axiom_set, AxiomSet};
use wardkit::{Complex64, Error};

#[derive(Parser)]
#[command(name = "wardkit", version, about = "Division tables of finite groups and loops")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Numeric tolerance override (also read from WARDKIT_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite groups: construction, verification, conjugacy classes.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Division quasigroups x∘y = x·y⁻¹ and their block tables.
    #[command(subcommand)]
    Ward(WardCmd),
    /// Inverse patterns: extraction, completion, feasibility search.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Moufang loops: doubled groups and generalized division tables.
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Group matrices: evaluation, block diagonalization, characters.
    #[command(subcommand)]
    Matrix(MatrixCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Exactly one source for a group: a builtin constructor or a JSON file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// Builtin name: c9, d8, q8, dic12, ea8, s3, a4, f21, or products like c7xc3.
    #[arg(long)]
    group: Option<String>,
    /// JSON Cayley table file.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

/// Exactly one way to pick the cyclic subgroup S.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SubgroupSel {
    /// Generator element of S.
    #[arg(long)]
    subgroup_generator: Option<usize>,
    /// Order of S; the smallest generating element wins.
    #[arg(long)]
    subgroup_order: Option<usize>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Print the Cayley table.
    Build {
        #[command(flatten)]
        src: GroupSource,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the group axioms one by one; fails on a non-group.
    Verify {
        #[command(flatten)]
        src: GroupSource,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List conjugacy classes.
    Classes {
        #[command(flatten)]
        src: GroupSource,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum WardCmd {
    /// The coset-ordered division table as a block grid.
    Table {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        /// Coset representatives, comma-separated, identity first.
        #[arg(long)]
        reps: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a table file against the division-quasigroup axiom systems.
    Check {
        /// JSON Cayley table file (use "magma": true for raw tables).
        #[arg(long)]
        table_file: PathBuf,
        /// One axiom system; all four when omitted.
        #[arg(long, value_enum)]
        axioms: Option<AxiomChoice>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum AxiomChoice {
    Quasigroup,
    RowSurjective,
    LeftCancellation,
    PrimeInvolution,
}

impl AxiomChoice {
    fn set(self) -> AxiomSet {
        match self {
            AxiomChoice::Quasigroup => AxiomSet::Quasigroup,
            AxiomChoice::RowSurjective => AxiomSet::RowSurjective,
            AxiomChoice::LeftCancellation => AxiomSet::LeftCancellation,
            AxiomChoice::PrimeInvolution => AxiomSet::PrimeInvolution,
        }
    }

    fn name(self) -> &'static str {
        match self {
            AxiomChoice::Quasigroup => "quasigroup",
            AxiomChoice::RowSurjective => "row-surjective",
            AxiomChoice::LeftCancellation => "left-cancellation",
            AxiomChoice::PrimeInvolution => "prime-involution",
        }
    }
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Read the inverse pattern off a division table.
    Extract {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        #[arg(long)]
        reps: Option<String>,
    },
    /// Rebuild the full table from a pattern (index 2 or 3).
    Complete {
        /// Subgroup index k (2 or 3).
        #[arg(long)]
        index: usize,
        /// Pattern file path, or the pattern text itself.
        #[arg(long)]
        pattern: String,
        /// One known product "a,b,c" meaning a∘b = c (index 3 only).
        #[arg(long)]
        hint: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive feasibility search with refutation witnesses.
    Search {
        /// Pattern file path, or the pattern text itself.
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The canonical pattern shape for an odd number of cosets.
    Canonical {
        /// Subgroup order m.
        #[arg(long)]
        block_size: usize,
        /// Number of cosets k (odd).
        #[arg(long)]
        cosets: usize,
    },
}

#[derive(Subcommand)]
enum LoopCmd {
    /// Double a group into a Moufang loop of twice the order.
    Chein {
        #[command(flatten)]
        src: GroupSource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generalized division table x∘y = x·y⁻¹ of an AAIP loop.
    Gwq {
        /// JSON Cayley table file of the loop ("magma": true).
        #[arg(long)]
        loop_file: PathBuf,
        /// Use plain right division x/y even without two-sided inverses.
        #[arg(long)]
        right_division: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Coset-ordered division table of a loop, blocks classified C/R.
    Classify {
        /// JSON Cayley table file of the loop ("magma": true).
        #[arg(long, conflicts_with = "chein_of")]
        loop_file: Option<PathBuf>,
        /// Classify the doubled loop of a builtin group instead.
        #[arg(long)]
        chein_of: Option<String>,
        #[command(flatten)]
        sub: SubgroupSel,
        #[arg(long)]
        reps: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// The symbolic group matrix as a grid of circulant blocks.
    Build {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the group matrix at an assignment of the variables.
    Eval {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        /// Comma-separated values x_1,..,x_n; complex entries like 1+2i.
        #[arg(long)]
        values: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Conjugate into block-diagonal form diag(B_1..B_m).
    Diagonalize {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        /// Comma-separated values x_1,..,x_n; complex entries like 1+2i.
        #[arg(long)]
        values: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Numeric character table extracted from the blocks.
    Chars {
        #[command(flatten)]
        src: GroupSource,
        #[command(flatten)]
        sub: SubgroupSel,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = tolerance(cli.tol);
    match run(cli.cmd, tol) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Malformed(_) => ExitCode::from(3),
                Error::Infeasible { .. }
                | Error::Ambiguous { .. }
                | Error::Structure(_)
                | Error::Precondition(_) => ExitCode::from(1),
                Error::Parameter(_) | Error::Transversal(_) => ExitCode::from(2),
            }
        }
    }
}

/// Tolerance for the numeric diagnostics; overrides are echoed to stderr.
fn tolerance(flag: Option<f64>) -> f64 {
    let mut tol = 1e-9;
    let mut source = None;
    if let Ok(text) = std::env::var("WARDKIT_TOL") {
        match text.parse::<f64>() {
            Ok(v) => {
                tol = v;
                source = Some("WARDKIT_TOL");
            }
            Err(_) => eprintln!("ignoring unparsable WARDKIT_TOL value `{text}`"),
        }
    }
    if let Some(v) = flag {
        tol = v;
        source = Some("--tol");
    }
    if let Some(s) = source {
        eprintln!("tolerance override via {s}: {tol:e}");
    }
    tol
}

fn run(cmd: Cmd, tol: f64) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Group(c) => run_group(c),
        Cmd::Ward(c) => run_ward(c),
        Cmd::Pattern(c) => run_pattern(c),
        Cmd::Loop(c) => run_loop(c),
        Cmd::Matrix(c) => run_matrix(c, tol),
    }
}

/// Builds a catalogue group from a spec like `c9`, `d8`, `dic12`, `ea8`,
/// `s3`, `a4`, `f21`, or an `x`-joined product of such.
fn builtin_group(spec: &str) -> Result<FiniteGroup, Error> {
    let s = spec.trim().to_ascii_lowercase();
    if let Some((a, b)) = s.split_once('x') {
        return Ok(direct_product(&builtin_group(a)?, &builtin_group(b)?));
    }
    let parse = |rest: &str| {
        rest.parse::<usize>()
            .map_err(|_| Error::Parameter(format!("unknown group spec `{spec}`")))
    };
    match s.as_str() {
        "s3" => return Ok(symmetric3()),
        "a4" => return Ok(alternating4()),
        "f21" => return Ok(frobenius21()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("dic") {
        return dicyclic(parse(rest)?);
    }
    if let Some(rest) = s.strip_prefix("ea") {
        let n = parse(rest)?;
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "elementary abelian order must be a power of two, got {n}"
            )));
        }
        return Ok(elementary_abelian2(n.trailing_zeros()));
    }
    if let Some(rest) = s.strip_prefix('c') {
        let n = parse(rest)?;
        if n == 0 {
            return Err(Error::Parameter("cyclic group order must be positive".into()));
        }
        return Ok(cyclic(n));
    }
    if let Some(rest) = s.strip_prefix('d') {
        return dihedral(parse(rest)?);
    }
    if let Some(rest) = s.strip_prefix('q') {
        return dicyclic(parse(rest)?);
    }
    Err(Error::Parameter(format!("unknown group spec `{spec}`")))
}

fn load_group(src: &GroupSource) -> Result<FiniteGroup, Error> {
    match (&src.group, &src.group_file) {
        (Some(spec), None) => builtin_group(spec),
        (None, Some(path)) => io::read_group_json(&read_file(path)?),
        _ => unreachable!("clap enforces exactly one source"),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

/// `--pattern` takes a file path when one exists, otherwise inline text.
fn load_pattern(arg: &str) -> Result<InversePattern, Error> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        io::read_pattern_text(&read_file(&path.to_path_buf())?)
    } else {
        io::read_pattern_text(arg)
    }
}

fn parse_reps(reps: &Option<String>) -> Result<Option<Vec<usize>>, Error> {
    reps.as_deref()
        .map(|text| {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parameter(format!("bad representative `{t}`")))
                })
                .collect()
        })
        .transpose()
}

/// Picks S by generator or by order (smallest generating element).
fn select_subgroup(g: &FiniteGroup, sel: &SubgroupSel) -> Result<SubgroupData, Error> {
    if let Some(x) = sel.subgroup_generator {
        if x == 0 || x > g.order() {
            return Err(Error::Parameter(format!(
                "generator {x} is outside 1..={}",
                g.order()
            )));
        }
        return Ok(g.subgroup_generated(x));
    }
    let m = sel.subgroup_order.expect("clap enforces one selector");
    (1..=g.order())
        .find(|&x| g.element_order(x) == m)
        .map(|x| g.subgroup_generated(x))
        .ok_or_else(|| {
            Error::Parameter(format!("the group has no cyclic subgroup of order {m}"))
        })
}

fn ordering_from(
    g: &FiniteGroup,
    sel: &SubgroupSel,
    reps: &Option<String>,
) -> Result<CosetOrdering, Error> {
    let s = select_subgroup(g, sel)?;
    let reps = parse_reps(reps)?;
    make_ordering(g, &s, reps.as_deref())
}

fn plain_table_text(m: &Magma) -> String {
    let n = m.order();
    let width = n.to_string().len();
    let mut out = String::new();
    for a in 1..=n {
        let row: Vec<String> = (1..=n).map(|b| format!("{:width$}", m.op(a, b))).collect();
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn print_block_table(bt: &BlockTable, format: Format) -> Result<ExitCode, Error> {
    match format {
        Format::Text => print!("{}", io::write_block_table_text(bt)),
        Format::Json => print!("{}", io::write_block_table_json(bt)),
        Format::Csv => {
            return Err(Error::Parameter(
                "block tables have no CSV form; use text or json".into(),
            ))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_magma(m: &Magma, magma_flag: bool, format: Format) -> Result<ExitCode, Error> {
    match format {
        Format::Text => print!("{}", plain_table_text(m)),
        Format::Json => print!("{}", io::write_table_json(m, magma_flag)),
        Format::Csv => {
            return Err(Error::Parameter(
                "Cayley tables have no CSV form; use text or json".into(),
            ))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_group(cmd: GroupCmd) -> Result<ExitCode, Error> {
    match cmd {
        GroupCmd::Build { src, format } => {
            let g = load_group(&src)?;
            print_magma(g.magma(), false, format)
        }
        GroupCmd::Verify { src, format } => {
            let magma = match (&src.group, &src.group_file) {
                (Some(spec), None) => builtin_group(spec)?.magma().clone(),
                (None, Some(path)) => io::read_table_json(&read_file(path)?)?.0,
                _ => unreachable!("clap enforces exactly one source"),
            };
            let report = magma_report(&magma);
            match format {
                Format::Text => {
                    println!("latin: {}", report.latin);
                    println!("associative: {}", report.associative);
                    println!("identity: {}", report.identity.is_some());
                    println!("inverses: {}", report.inverses);
                    println!("group: {}", report.is_group());
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "latin": report.latin,
                        "associative": report.associative,
                        "identity": report.identity,
                        "inverses": report.inverses,
                        "group": report.is_group(),
                    })
                ),
                Format::Csv => {
                    return Err(Error::Parameter(
                        "verification reports have no CSV form".into(),
                    ))
                }
            }
            Ok(if report.is_group() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        GroupCmd::Classes { src, format } => {
            let g = load_group(&src)?;
            let classes = g.conjugacy_classes();
            match format {
                Format::Text => {
                    for class in &classes {
                        let line: Vec<String> = class.iter().map(|x| x.to_string()).collect();
                        println!("{}", line.join(" "));
                    }
                }
                Format::Json => println!("{}", serde_json::json!({ "classes": classes })),
                Format::Csv => {
                    return Err(Error::Parameter("class lists have no CSV form".into()))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_ward(cmd: WardCmd) -> Result<ExitCode, Error> {
    match cmd {
        WardCmd::Table {
            src,
            sub,
            reps,
            format,
        } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &reps)?;
            print_block_table(&build_ward_table(&g, &ord), format)
        }
        WardCmd::Check { table_file, axioms } => {
            let (magma, _) = io::read_table_json(&read_file(&table_file)?)?;
            let chosen: Vec<AxiomChoice> = match axioms {
                Some(one) => vec![one],
                None => vec![
                    AxiomChoice::Quasigroup,
                    AxiomChoice::RowSurjective,
                    AxiomChoice::LeftCancellation,
                    AxiomChoice::PrimeInvolution,
                ],
            };
            let mut all = true;
            for choice in chosen {
                let holds = check_axiom_set(&magma, choice.set());
                all &= holds;
                println!("{}: {holds}", choice.name());
            }
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_pattern(cmd: PatternCmd) -> Result<ExitCode, Error> {
    match cmd {
        PatternCmd::Extract { src, sub, reps } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &reps)?;
            let pattern = extract_pattern(&build_ward_table(&g, &ord))?;
            print!("{}", io::write_pattern_text(&pattern));
            Ok(ExitCode::SUCCESS)
        }
        PatternCmd::Complete {
            index,
            pattern,
            hint,
            format,
        } => {
            let pat = load_pattern(&pattern)?;
            let table = match index {
                2 => complete_index2(&pat)?,
                3 => {
                    let hint = hint.ok_or_else(|| {
                        Error::Parameter("index 3 needs --hint a,b,c".into())
                    })?;
                    let parts: Vec<usize> = hint
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Parameter(format!("bad hint `{hint}`")))
                        })
                        .collect::<Result<_, _>>()?;
                    if parts.len() != 3 {
                        return Err(Error::Parameter("a hint has exactly three entries".into()));
                    }
                    complete_index3(&pat, (parts[0], parts[1], parts[2]))?
                }
                other => {
                    return Err(Error::Parameter(format!(
                        "completion is implemented for index 2 and 3, not {other}"
                    )))
                }
            };
            print_block_table(&table, format)
        }
        PatternCmd::Search { pattern, format } => {
            let pat = load_pattern(&pattern)?;
            let outcome = feasibility_search(&pat);
            let feasible = !outcome.completions.is_empty();
            match format {
                Format::Text => {
                    if feasible {
                        println!("feasible: {} completions", outcome.completions.len());
                        for table in &outcome.completions {
                            println!();
                            print!("{}", io::write_block_table_text(table));
                        }
                    } else {
                        println!("infeasible");
                        for refutation in &outcome.refutations {
                            println!("{refutation}");
                        }
                    }
                }
                Format::Json => {
                    let completions: Vec<serde_json::Value> = outcome
                        .completions
                        .iter()
                        .map(|t| {
                            serde_json::from_str(&io::write_block_table_json(t))
                                .expect("block table json")
                        })
                        .collect();
                    let refutations: Vec<String> =
                        outcome.refutations.iter().map(|r| r.to_string()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "feasible": feasible,
                            "completions": completions,
                            "refutations": refutations,
                        })
                    );
                }
                Format::Csv => {
                    return Err(Error::Parameter("search results have no CSV form".into()))
                }
            }
            Ok(if feasible {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        PatternCmd::Canonical { block_size, cosets } => {
            let pattern = InversePattern::canonical(block_size, cosets)?;
            print!("{}", io::write_pattern_text(&pattern));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn loop_subgroup(l: &LoopTable, sel: &SubgroupSel) -> Result<SubgroupData, Error> {
    if let Some(x) = sel.subgroup_generator {
        return cyclic_subloop(l, x);
    }
    let m = sel.subgroup_order.expect("clap enforces one selector");
    for x in 1..=l.order() {
        if let Ok(s) = cyclic_subloop(l, x) {
            if s.order() == m {
                return Ok(s);
            }
        }
    }
    Err(Error::Parameter(format!(
        "the loop has no cyclic subloop of order {m}"
    )))
}

fn run_loop(cmd: LoopCmd) -> Result<ExitCode, Error> {
    match cmd {
        LoopCmd::Chein { src, format } => {
            let g = load_group(&src)?;
            let l = chein(&g);
            eprintln!(
                "order {} loop: aaip={} moufang={} diassociative={}",
                l.order(),
                l.aaip,
                l.moufang,
                l.diassociative
            );
            let is_group = magma_report(l.magma()).is_group();
            print_magma(l.magma(), !is_group, format)
        }
        LoopCmd::Gwq {
            loop_file,
            right_division,
            format,
        } => {
            let l = io::read_loop_json(&read_file(&loop_file)?)?;
            let division = if right_division {
                gwq_right_division(&l)
            } else {
                gwq(&l)?
            };
            let is_group = magma_report(&division).is_group();
            print_magma(&division, !is_group, format)
        }
        LoopCmd::Classify {
            loop_file,
            chein_of,
            sub,
            reps,
            format,
        } => {
            let l = match (&loop_file, &chein_of) {
                (Some(path), None) => io::read_loop_json(&read_file(path)?)?,
                (None, Some(spec)) => chein(&builtin_group(spec)?),
                _ => {
                    return Err(Error::Parameter(
                        "give exactly one of --loop-file and --chein-of".into(),
                    ))
                }
            };
            let s = loop_subgroup(&l, &sub)?;
            let reps = parse_reps(&reps)?;
            let table = build_gwq_block_table(&l, &s, reps.as_deref())?;
            print_block_table(&table, format)
        }
    }
}

fn parse_complex(token: &str) -> Result<Complex64, Error> {
    let bad = || Error::Parameter(format!("unreadable value `{token}`"));
    let t = token.trim();
    if let Some(body) = t.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_text, im_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im_text {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse().map_err(|_| bad())?,
        };
        let re = if re_text.is_empty() {
            0.0
        } else {
            re_text.parse().map_err(|_| bad())?
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

fn parse_values(text: &str, expected: usize) -> Result<Vec<Complex64>, Error> {
    let values: Vec<Complex64> = text
        .split(',')
        .map(parse_complex)
        .collect::<Result<_, _>>()?;
    if values.len() != expected {
        return Err(Error::Parameter(format!(
            "expected {expected} values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn format_complex_cell(z: Complex64) -> String {
    let part = |x: f64| {
        if (x - x.round()).abs() < 1e-9 {
            format!("{}", x.round() as i64)
        } else {
            format!("{x:.4}")
        }
    };
    if z.im.abs() < 1e-9 {
        part(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", part(z.re), part(z.im))
    } else {
        format!("{}-{}i", part(z.re), part(-z.im))
    }
}

fn aligned_matrix_text(mat: &[Vec<Complex64>]) -> String {
    let cells: Vec<Vec<String>> = mat
        .iter()
        .map(|row| row.iter().map(|&z| format_complex_cell(z)).collect())
        .collect();
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{:>width$}", cell, width = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn print_matrix(mat: &[Vec<Complex64>], format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", aligned_matrix_text(mat)),
        Format::Json => print!("{}", io::write_matrix_json(mat)),
        Format::Csv => print!("{}", io::write_matrix_csv(mat)),
    }
    ExitCode::SUCCESS
}

fn run_matrix(cmd: MatrixCmd, tol: f64) -> Result<ExitCode, Error> {
    match cmd {
        MatrixCmd::Build { src, sub, format } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &None)?;
            print_block_table(&build_ward_table(&g, &ord), format)
        }
        MatrixCmd::Eval {
            src,
            sub,
            values,
            format,
        } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &None)?;
            let sm = symbolic_group_matrix(&g, &ord);
            let assignment = parse_values(&values, g.order())?;
            Ok(print_matrix(&evaluate_group_matrix(&sm, &assignment), format))
        }
        MatrixCmd::Diagonalize {
            src,
            sub,
            values,
            format,
        } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &None)?;
            let sm = symbolic_group_matrix(&g, &ord);
            let assignment = parse_values(&values, g.order())?;
            let form = block_diagonalize(&sm, &assignment);
            let residual = similarity_residual(&sm, &assignment, &form);
            eprintln!("similarity residual: {residual:e}");
            if residual > tol {
                eprintln!("residual exceeds tolerance {tol:e}");
            }
            Ok(print_matrix(&form.assemble_block_diagonal(), format))
        }
        MatrixCmd::Chars { src, sub, format } => {
            let g = load_group(&src)?;
            let ord = ordering_from(&g, &sub, &None)?;
            let table = characters::<f64>(&g, &ord);
            if !table.is_complete() {
                let unsplit = table
                    .rows
                    .iter()
                    .filter(|r| (r.norm - 1.0).abs() > 1e-6)
                    .count();
                eprintln!("{unsplit} rows remain unsplit (norm above 1)");
            }
            match format {
                Format::Text => print!("{}", io::write_character_table_text(&table)),
                Format::Json => print!("{}", io::write_character_table_json(&table)),
                Format::Csv => {
                    let values: Vec<Vec<Complex64>> =
                        table.rows.iter().map(|r| r.values.clone()).collect();
                    print!("{}", io::write_matrix_csv(&values));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
