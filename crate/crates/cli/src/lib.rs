//! The `bivinc` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or round-trip check
//! finds a mismatch (or a lookup fails at run time), 2 on usage errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use bivincular::bijections::{self as bij, AscentSequence};
use bivincular::closed_forms::{verify_registry, FormulaId, VerificationReport};
use bivincular::enumeration::{
    avoidance_sequence, burnside_direct, burnside_s, burnside_table, distribution, symmetry_partition,
    wilf_classify,
};
use bivincular::oeis::{citation_note, LookupMode, OeisClient, OeisConfig, OeisEntry};
use bivincular::pattern::{avoids, canonical_representative, count_occurrences};
use bivincular::perm::permutations_of;
use bivincular::report::{emit_report, ReportDocument, ReportFormat};
use bivincular::{BiVincularPattern, Permutation};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bivinc", version, about = "Bi-vincular permutation pattern toolkit")]
struct Cli {
    /// Worker threads for exhaustive searches (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a_1..a_N for joint avoidance of the given patterns
    Avoid {
        #[arg(short = 'p', long = "pattern", required = true)]
        patterns: Vec<BiVincularPattern>,
        #[arg(short = 'n', default_value_t = 7)]
        n: usize,
    },
    /// Print the occurrence-count distribution for lengths 1..N
    Distribution {
        #[arg(short = 'p', long = "pattern")]
        pattern: BiVincularPattern,
        #[arg(short = 'n', default_value_t = 7)]
        n: usize,
    },
    /// Group the symmetry classes of length k into Wilf classes
    Classify {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 7)]
        horizon: usize,
        #[arg(long, default_value = "md")]
        format: ReportFormat,
    },
    /// List the symmetry classes of length k
    Symmetry {
        #[arg(short = 'k')]
        k: usize,
        /// Print only the number of classes
        #[arg(long)]
        count: bool,
    },
    /// Number of symmetry classes of patterns of length n
    Burnside {
        #[arg(short = 'n')]
        n: usize,
        /// Count orbits directly instead of using the closed form
        #[arg(long)]
        direct: bool,
        /// Print s_2..s_n with notes
        #[arg(long, conflicts_with = "direct")]
        table: bool,
    },
    /// Check closed forms against brute force
    Verify {
        #[arg(long)]
        id: Option<FormulaId>,
        #[arg(short = 'n', default_value_t = 7)]
        n: usize,
    },
    /// Apply one of the bijections, or check it exhaustively
    Bijection(BijectionArgs),
    /// Sequence lookups
    Oeis {
        #[command(subcommand)]
        action: OeisAction,
    },
    /// Regenerate report files
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    F,
    G,
    H,
    Reverse1,
    #[value(name = "shiftB", alias = "shiftb")]
    ShiftB,
    Wilf22,
    Colswap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Roundtrip,
}

#[derive(Debug, Args)]
struct BijectionArgs {
    map: MapName,
    /// Ascent sequence for f and h, permutation otherwise
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    check: Option<Check>,
    #[arg(short = 'n', default_value_t = 7)]
    n: usize,
    /// Source pattern for shiftB
    #[arg(long)]
    pattern: Option<BiVincularPattern>,
}

#[derive(Debug, Subcommand)]
enum OeisAction {
    /// Find sequences containing the terms as a contiguous run
    Lookup {
        #[arg(required = true, value_delimiter = ',')]
        terms: Vec<num_bigint::BigInt>,
        #[arg(long)]
        offline: bool,
        /// Skip the cache and always ask the server
        #[arg(long, conflicts_with = "offline")]
        live: bool,
    },
    /// Fetch one entry by id
    Id {
        id: String,
        #[arg(long)]
        offline: bool,
        #[arg(long, conflicts_with = "offline")]
        live: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ReportAction {
    /// Write table1.<ext> (length 2) and table2.<ext> (length 3) into a directory
    Tables {
        #[arg(long, default_value = "md")]
        format: ReportFormat,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, default_value_t = 7)]
        horizon: usize,
    },
}

/// Outcome of a subcommand: exit code, or an error message with its code.
type Outcome = Result<i32, (i32, String)>;

fn usage<E: std::fmt::Display>(e: E) -> (i32, String) {
    (EXIT_USAGE, e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> (i32, String) {
    (EXIT_MISMATCH, e.to_string())
}

fn io_err(e: std::io::Error) -> (i32, String) {
    (EXIT_MISMATCH, e.to_string())
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_MISMATCH;
        }
    };
    let mut buf = Vec::new();
    let outcome = pool.install(|| dispatch(cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match outcome {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut Vec<u8>) -> Outcome {
    match cmd {
        Command::Avoid { patterns, n } => {
            let seq = avoidance_sequence(&patterns, n).map_err(usage)?;
            let terms: Vec<String> = seq.terms.iter().map(u64::to_string).collect();
            writeln!(out, "{}", terms.join(",")).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Distribution { pattern, n } => {
            let table = distribution(&pattern, n).map_err(usage)?;
            for (i, row) in table.rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|(j, d)| format!("{j}:{d}")).collect();
                writeln!(out, "{}: {}", i + 1, cells.join(" ")).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { k, horizon, format } => {
            let report = wilf_classify(k, horizon).map_err(usage)?;
            let text = emit_report(&ReportDocument::from(&report), format).map_err(failure)?;
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Symmetry { k, count } => {
            let classes = symmetry_partition(k).map_err(usage)?;
            if count {
                writeln!(out, "{}", classes.len()).map_err(io_err)?;
            } else {
                for class in &classes {
                    let rep = canonical_representative(class).expect("orbits are non-empty");
                    let members: Vec<String> = class.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "{rep}\t{}", members.join(" ")).map_err(io_err)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Burnside { n, direct, table } => {
            if direct {
                writeln!(out, "{}", burnside_direct(n).map_err(usage)?).map_err(io_err)?;
            } else if table {
                for row in burnside_table(n).map_err(usage)? {
                    match row.note {
                        Some(note) => writeln!(out, "s_{} = {}  # {note}", row.n, row.value),
                        None => writeln!(out, "s_{} = {}", row.n, row.value),
                    }
                    .map_err(io_err)?;
                }
            } else {
                let v = burnside_s(n).map_err(usage)?;
                writeln!(out, "{v}").map_err(io_err)?;
                if let Some(note) = burnside_table(n.max(2)).ok().and_then(|t| t.last().and_then(|r| r.note.clone())) {
                    writeln!(out, "# {note}").map_err(io_err)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { id, n } => {
            let mut report = verify_registry(n).map_err(usage)?;
            if let Some(id) = id {
                report.checked.retain(|(i, _)| *i == id);
                report.mismatches.retain(|m| m.id == id);
            }
            write_verification(&report, id, out)?;
            Ok(verification_exit_code(&report))
        }
        Command::Bijection(args) => bijection(args, out),
        Command::Oeis { action } => oeis(action, out),
        Command::Report { action } => match action {
            ReportAction::Tables { format, output, horizon } => {
                fs::create_dir_all(&output).map_err(io_err)?;
                for (k, name) in [(2, "table1"), (3, "table2")] {
                    let report = wilf_classify(k, horizon).map_err(usage)?;
                    let text = emit_report(&ReportDocument::from(&report), format).map_err(failure)?;
                    let path = output.join(format!("{name}.{}", format.extension()));
                    fs::write(&path, text).map_err(io_err)?;
                    writeln!(out, "wrote {}", path.display()).map_err(io_err)?;
                }
                Ok(EXIT_OK)
            }
        },
    }
}

/// 1 when the report lists any mismatch, 0 otherwise.
pub fn verification_exit_code(report: &VerificationReport) -> i32 {
    if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn write_verification(report: &VerificationReport, only: Option<FormulaId>, out: &mut Vec<u8>) -> Outcome {
    if let Some(id) = only {
        if report.checked.is_empty() {
            writeln!(out, "{id}: no formula").map_err(io_err)?;
        }
    }
    for (id, members) in &report.checked {
        let bad = report.mismatches.iter().filter(|m| m.id == *id).count();
        let status = if bad == 0 { "ok".to_string() } else { format!("{bad} mismatches") };
        writeln!(out, "{id}: {status} ({members} patterns, n=1..{})", report.horizon).map_err(io_err)?;
    }
    for m in &report.mismatches {
        writeln!(
            out,
            "mismatch {} {} n={}: formula {} brute force {}",
            m.id, m.pattern, m.n, m.formula, m.brute_force
        )
        .map_err(io_err)?;
    }
    writeln!(out, "{} mismatches", report.mismatches.len()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn parse_ascent(s: &str) -> Result<AscentSequence, (i32, String)> {
    let x: Vec<usize> = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("bad ascent sequence {s:?}: {e}")))?;
    AscentSequence::new(x).map_err(usage)
}

fn parse_perm(s: &str) -> Result<Permutation, (i32, String)> {
    s.trim().trim_start_matches('(').trim_end_matches(')').parse().map_err(usage)
}

fn bijection(args: BijectionArgs, out: &mut Vec<u8>) -> Outcome {
    if args.input.is_none() && args.check.is_none() {
        return Err(usage("give --input or --check roundtrip"));
    }
    if args.pattern.is_some() && args.map != MapName::ShiftB {
        return Err(usage("--pattern only applies to shiftB"));
    }
    let source = args.pattern.clone().unwrap_or_else(bij::set_b_default_source);
    if let Some(input) = &args.input {
        let text = match args.map {
            MapName::F => bij::map_f(&parse_ascent(input)?).to_string(),
            MapName::H => bij::map_h(&parse_ascent(input)?).map_err(usage)?.to_string(),
            MapName::G => bij::map_g(&parse_perm(input)?).map_err(usage)?.to_string(),
            MapName::Reverse1 => bij::reverse_after_one(&parse_perm(input)?).to_string(),
            MapName::ShiftB => bij::cyclic_shift_set_b(&parse_perm(input)?, &source).map_err(usage)?.to_string(),
            MapName::Wilf22 => bij::wilf22_map(&parse_perm(input)?).map_err(usage)?.to_string(),
            MapName::Colswap => bij::column_swap_map(&parse_perm(input)?).map_err(usage)?.to_string(),
        };
        writeln!(out, "{text}").map_err(io_err)?;
    }
    if args.check.is_some() {
        if !(1..=8).contains(&args.n) {
            return Err(usage(format!("-n {} is outside 1..=8", args.n)));
        }
        let mut failures = 0;
        for n in 1..=args.n {
            if let Err(msg) = check_map(args.map, n, &source) {
                writeln!(out, "n={n}: FAIL {msg}").map_err(io_err)?;
                failures += 1;
            } else {
                writeln!(out, "n={n}: ok").map_err(io_err)?;
            }
        }
        return Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH });
    }
    Ok(EXIT_OK)
}

fn avoiders(n: usize, p: &BiVincularPattern) -> BTreeSet<Permutation> {
    permutations_of(n).filter(|q| avoids(q, p)).collect()
}

/// Exhaustive check of one map at one length.
fn check_map(map: MapName, n: usize, source: &BiVincularPattern) -> Result<(), String> {
    let injective_into = |domain: Vec<Permutation>, image: BTreeSet<Permutation>| {
        if image.len() == domain.len() {
            Ok(())
        } else {
            Err(format!("{} inputs give {} images", domain.len(), image.len()))
        }
    };
    match map {
        MapName::F | MapName::G => {
            let p = if map == MapName::F { bij::pattern_231() } else { bij::pattern_132() };
            let mut image = BTreeSet::new();
            for x in bij::generate_ascent_sequences(n).map_err(|e| e.to_string())? {
                let (pi, back) = if map == MapName::F {
                    let pi = bij::map_f(&x);
                    let back = bij::map_f_inverse(&pi).map_err(|e| e.to_string())?;
                    (pi, back)
                } else {
                    let pi = bij::map_g_inverse(&x).map_err(|e| e.to_string())?;
                    let back = bij::map_g(&pi).map_err(|e| e.to_string())?;
                    (pi, back)
                };
                if back != x {
                    return Err(format!("{x} -> {pi} -> {back}"));
                }
                image.insert(pi);
            }
            if image != avoiders(n, &p) {
                return Err(format!("image of size {} differs from the avoiders of {p}", image.len()));
            }
            Ok(())
        }
        MapName::H => {
            let p: BiVincularPattern = "321|X=1|Y=1".parse().expect("literal pattern");
            let restricted: Vec<_> = bij::generate_ascent_sequences(n)
                .map_err(|e| e.to_string())?
                .filter(AscentSequence::is_restricted)
                .collect();
            let image: BTreeSet<_> = restricted.iter().map(|x| bij::map_h(x).expect("restricted input")).collect();
            if image.len() != restricted.len() || image != avoiders(n - 1, &p) {
                return Err(format!("{} inputs, {} images", restricted.len(), image.len()));
            }
            Ok(())
        }
        MapName::Reverse1 => match permutations_of(n).find(|q| bij::reverse_after_one(&bij::reverse_after_one(q)) != *q) {
            Some(q) => Err(format!("not an involution at {q}")),
            None => Ok(()),
        },
        MapName::ShiftB => {
            let target = bij::set_b_target(source);
            let domain: Vec<Permutation> = permutations_of(n).filter(|q| count_occurrences(q, source) == 1).collect();
            let mut image = BTreeSet::new();
            for q in &domain {
                image.insert(bij::cyclic_shift_set_b(q, source).map_err(|e| e.to_string())?);
            }
            if image.iter().any(|q| count_occurrences(q, &target) != 1) {
                return Err(format!("an image does not contain {target} exactly once"));
            }
            injective_into(domain, image)
        }
        MapName::Wilf22 => {
            let domain: Vec<Permutation> = permutations_of(n)
                .filter(|q| bivincular::closed_forms::c10_pairs(q.as_slice(), false).len() == 1)
                .collect();
            let mut image = BTreeSet::new();
            for q in &domain {
                let r = bij::wilf22_map(q).map_err(|e| e.to_string())?;
                if bivincular::closed_forms::c10_pairs(r.as_slice(), true).len() != 1 {
                    return Err(format!("{q} -> {r} leaves the codomain"));
                }
                image.insert(r);
            }
            injective_into(domain, image)
        }
        MapName::Colswap => {
            let p = bij::pattern_c12();
            let domain: Vec<Permutation> =
                permutations_of(n).filter(|q| avoids(q, &p) && q.position_of(n) >= 2).collect();
            let mut image = BTreeSet::new();
            for q in &domain {
                let r = bij::column_swap_map(q).map_err(|e| e.to_string())?;
                if !avoids(&r, &p) || r.position_of(n) + 1 != q.position_of(n) {
                    return Err(format!("{q} -> {r}"));
                }
                image.insert(r);
            }
            injective_into(domain, image)
        }
    }
}

fn write_entry(e: &OeisEntry, out: &mut Vec<u8>) -> Outcome {
    let terms: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
    writeln!(out, "{}\t{}\t{}", e.id, e.name, terms.join(",")).map_err(io_err)?;
    if let Some(note) = citation_note(&e.id) {
        writeln!(out, "# note: {note}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn mode(offline: bool, live: bool) -> LookupMode {
    if offline {
        LookupMode::Offline
    } else if live {
        LookupMode::Live
    } else {
        LookupMode::Cached
    }
}

fn oeis(action: OeisAction, out: &mut Vec<u8>) -> Outcome {
    let client = OeisClient::new(OeisConfig::from_env());
    match action {
        OeisAction::Lookup { terms, offline, live } => {
            let result = client.lookup_by_terms(&terms, mode(offline, live)).map_err(|e| match e {
                bivincular::oeis::OeisError::TooFewTerms(_) => usage(e),
                other => failure(other),
            })?;
            if result.snapshot_miss {
                writeln!(out, "snapshot-miss").map_err(io_err)?;
            }
            for e in &result.entries {
                write_entry(e, out)?;
            }
            Ok(EXIT_OK)
        }
        OeisAction::Id { id, offline, live } => {
            let entry = client.lookup_by_id(&id, mode(offline, live)).map_err(|e| match e {
                bivincular::oeis::OeisError::MalformedId(_) => usage(e),
                other => failure(other),
            })?;
            write_entry(&entry, out)
        }
    }
}
