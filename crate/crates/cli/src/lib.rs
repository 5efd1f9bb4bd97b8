//! Command-line front end for `polyspace`.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 mathematically empty
//! result (empty polygon space, unrealizable family), 3 internal limit.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use polyspace::cohomology::{
    classify_pair, cohomology_report, quotient_basis_dimensions, ring_presentation,
    rings_isomorphic_bruteforce, RingPresentation,
};
use polyspace::lengths::{check_enumeration_limit, DEFAULT_MAX_N};
use polyspace::morse::{verify, Realization, SolverOptions, VerifyReport};
use polyspace::{
    chamber_signature, enumerate_chambers, parse_length_vector, realize_signature,
    ChamberSignature, Error, LengthVector, SubsetMask,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "polyspace", version, about = "Classify polygon spaces E_d(l)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit JSON instead of a human-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse vectors with more entries than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Z2-Betti numbers, Euler characteristic and ring summary.
    Betti {
        /// Length vector, e.g. 1,2,2,2,4,4 or 3/20,0.15,...
        #[arg(long = "l")]
        l: String,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology ring presentation and quotient basis dimensions.
    Ring {
        #[arg(long = "l")]
        l: String,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Diffeomorphism verdict for two length vectors.
    Compare {
        #[arg(long = "l")]
        l: String,
        #[arg(long = "l2")]
        l2: String,
        #[arg(long)]
        d: u32,
        /// Also run the brute-force ring isomorphism search.
        #[arg(long)]
        ring_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// All chambers for n sides, with integer representatives.
    Census {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Critical submanifolds, Hessian signatures and a realized polygon.
    Verify {
        #[arg(long = "l")]
        l: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Pairwise verdicts for every vector in a file (one per line, `#` comments).
    ClassifyFile {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Find a length vector whose chamber signature is the given family.
    Realize {
        #[arg(long)]
        n: usize,
        /// Subsets of {1..n-1} separated by `;`, indices by `,`; `{}` is the empty set.
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[command(flatten)]
        common: Common,
    },
}

/// A failure already rendered for the user, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchTooLarge { .. }
            | Error::OutOfRange { .. }
            | Error::ConvergenceFailure { .. } => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    // Build the whole report before writing so failures never leave partial output.
    let mut buffer = Vec::new();
    match dispatch(cli.command, &mut buffer) {
        Ok(code) => {
            if out.write_all(&buffer).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut Vec<u8>) -> Outcome {
    match command {
        Command::Betti { l, d, common } => betti(&l, d, &common, out),
        Command::Ring { l, d, common } => ring(&l, d, &common, out),
        Command::Compare {
            l,
            l2,
            d,
            ring_check,
            common,
        } => compare(&l, &l2, d, ring_check, &common, out),
        Command::Census { n, common } => census(n, &common, out),
        Command::Verify {
            l,
            d,
            seed,
            restarts,
            common,
        } => verify_cmd(&l, d, seed, restarts, &common, out),
        Command::ClassifyFile { path, d, common } => classify_file(&path, d, &common, out),
        Command::Realize { n, family, common } => realize(n, &family, &common, out),
    }
}

fn read_vector(text: &str, common: &Common) -> Result<LengthVector, Failure> {
    let l = parse_length_vector(text)?;
    check_enumeration_limit(l.n(), common.max_n)?;
    Ok(l)
}

/// Sorted copy, plus a note when sorting changed the order.
fn ordered(l: &LengthVector) -> (LengthVector, Option<String>) {
    if l.is_ordered() {
        (l.clone(), None)
    } else {
        let (s, perm) = l.sorted();
        let note = format!("input sorted; entries come from original positions {perm:?}");
        (s, Some(note))
    }
}

fn write_json<T: Serialize>(out: &mut Vec<u8>, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    })?;
    out.push(b'\n');
    Ok(())
}

fn empty_code(l: &LengthVector) -> i32 {
    if l.is_empty_space() {
        EXIT_EMPTY
    } else {
        EXIT_OK
    }
}

fn monomial(s: SubsetMask) -> String {
    if s.is_empty() {
        return "1".to_string();
    }
    s.iter().map(|j| format!("Z{j}")).collect()
}

#[derive(Serialize)]
struct BettiJson {
    lengths: Vec<String>,
    #[serde(flatten)]
    report: polyspace::CohomologyReport,
}

fn betti(text: &str, d: u32, common: &Common, out: &mut Vec<u8>) -> Outcome {
    let (l, sort_note) = ordered(&read_vector(text, common)?);
    let mut report = cohomology_report(&l, d)?;
    report.notes.extend(sort_note);
    if common.json {
        write_json(
            out,
            &BettiJson {
                lengths: l.to_strings(),
                report,
            },
        )?;
        return Ok(empty_code(&l));
    }
    writeln!(out, "l = {l}, d = {d}")?;
    writeln!(
        out,
        "manifold dimension {}, Euler characteristic {}",
        report.manifold_dim, report.euler
    )?;
    writeln!(out, "a = {:?}", report.a)?;
    writeln!(out, "b = {:?}", report.b)?;
    writeln!(out, "degree  dim")?;
    for (deg, dim) in &report.betti {
        writeln!(out, "{deg:>6}  {dim}")?;
    }
    if report.betti.is_empty() {
        writeln!(out, "(all Betti numbers vanish)")?;
    }
    if let Some(s) = report.special {
        writeln!(out, "special type: {s}")?;
    }
    for note in &report.notes {
        writeln!(out, "note: {note}")?;
    }
    Ok(empty_code(&l))
}

#[derive(Serialize)]
struct RingJson<'a> {
    lengths: Vec<String>,
    #[serde(flatten)]
    ring: &'a RingPresentation,
    zero_ring: bool,
    /// Quotient dimension by absolute degree.
    quotient_dims: BTreeMap<usize, u64>,
}

fn ring(text: &str, d: u32, common: &Common, out: &mut Vec<u8>) -> Outcome {
    let (l, sort_note) = ordered(&read_vector(text, common)?);
    let ring = ring_presentation(&l, d)?;
    let step = (d - 1) as usize;
    let quotient_dims: BTreeMap<usize, u64> = quotient_basis_dimensions(&l, d)?
        .into_iter()
        .enumerate()
        .filter(|&(_, dim)| dim > 0)
        .map(|(k, dim)| (step * k, dim))
        .collect();
    if common.json {
        write_json(
            out,
            &RingJson {
                lengths: l.to_strings(),
                ring: &ring,
                zero_ring: ring.is_zero_ring(),
                quotient_dims,
            },
        )?;
        return Ok(empty_code(&l));
    }
    writeln!(out, "l = {l}, d = {d}")?;
    writeln!(
        out,
        "variables Z1..Z{} in degree {}, Zj^2 = 0",
        ring.n, ring.generator_degree
    )?;
    if ring.is_zero_ring() {
        writeln!(out, "ideal contains 1: zero ring")?;
    } else {
        let pruned: Vec<String> = ring.pruned.iter().map(|j| format!("Z{j}")).collect();
        writeln!(
            out,
            "pruned: {}",
            if pruned.is_empty() {
                "none".into()
            } else {
                pruned.join(", ")
            }
        )?;
        let gens: Vec<String> = ring
            .minimal_generators
            .iter()
            .map(|&g| monomial(g))
            .collect();
        writeln!(
            out,
            "generators: {}",
            if gens.is_empty() {
                "none".into()
            } else {
                gens.join(", ")
            }
        )?;
        writeln!(out, "degree  quotient dim")?;
        for (deg, dim) in &quotient_dims {
            writeln!(out, "{deg:>6}  {dim}")?;
        }
    }
    if let Some(note) = sort_note {
        writeln!(out, "note: {note}")?;
    }
    Ok(empty_code(&l))
}

#[derive(Serialize)]
struct CompareJson {
    lengths: Vec<String>,
    lengths2: Vec<String>,
    d: u32,
    #[serde(flatten)]
    verdict: polyspace::PairVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    rings_isomorphic: Option<bool>,
}

fn compare(
    a: &str,
    b: &str,
    d: u32,
    ring_check: bool,
    common: &Common,
    out: &mut Vec<u8>,
) -> Outcome {
    let l = read_vector(a, common)?;
    let l2 = read_vector(b, common)?;
    let verdict = classify_pair(&l, &l2, d)?;
    let rings_isomorphic = if ring_check {
        let p = ring_presentation(&l.sorted().0, d)?;
        let q = ring_presentation(&l2.sorted().0, d)?;
        Some(rings_isomorphic_bruteforce(&p, &q)?)
    } else {
        None
    };
    if common.json {
        write_json(
            out,
            &CompareJson {
                lengths: l.to_strings(),
                lengths2: l2.to_strings(),
                d,
                verdict,
                rings_isomorphic,
            },
        )?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{verdict}")?;
    for note in &verdict.notes {
        writeln!(out, "note: {note}")?;
    }
    if let Some(iso) = rings_isomorphic {
        writeln!(
            out,
            "ring check: presentations {}",
            if iso { "isomorphic" } else { "not isomorphic" }
        )?;
    }
    Ok(EXIT_OK)
}

fn census(n: usize, common: &Common, out: &mut Vec<u8>) -> Outcome {
    check_enumeration_limit(n, common.max_n)?;
    let result = enumerate_chambers(n)?;
    if common.json {
        write_json(out, &result)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "n = {n}: {} chambers", result.count)?;
    for (i, c) in result.chambers.iter().enumerate() {
        writeln!(out, "{:>4}  {}  {}", i + 1, c.representative, c.signature)?;
    }
    Ok(EXIT_OK)
}

fn verify_cmd(
    text: &str,
    d: u32,
    seed: u64,
    restarts: usize,
    common: &Common,
    out: &mut Vec<u8>,
) -> Outcome {
    let l = read_vector(text, common)?;
    let options = SolverOptions {
        seed,
        max_restarts: restarts,
        ..SolverOptions::default()
    };
    let report = verify(&l, d, &options)?;
    let code = empty_code(&l);
    if common.json {
        write_json(out, &report)?;
        return Ok(code);
    }
    write_verify(&l, &report, out)?;
    Ok(code)
}

fn write_verify(l: &LengthVector, r: &VerifyReport, out: &mut Vec<u8>) -> std::io::Result<()> {
    writeln!(out, "l = {l}, d = {}", r.d)?;
    writeln!(out, "{} critical submanifolds", r.critical_records.len())?;
    writeln!(
        out,
        "{:<18} {:>14} {:>6}  signature (+, -, 0)",
        "J", "value", "index"
    )?;
    for c in &r.critical_records {
        let s = c.hessian_signature;
        writeln!(
            out,
            "{:<18} {:>14} {:>6}  ({}, {}, {})",
            c.j.to_string(),
            c.critical_value.to_string(),
            c.index,
            s.positive,
            s.negative,
            s.zero
        )?;
    }
    writeln!(
        out,
        "index law: {}",
        if r.index_law { "holds" } else { "FAILS" }
    )?;
    writeln!(
        out,
        "complement Poincare polynomial: {}",
        r.complement_poincare
    )?;
    writeln!(
        out,
        "lacunary consistency: {}",
        if r.lacunary_consistent {
            "holds"
        } else {
            "FAILS"
        }
    )?;
    match &r.realization {
        Realization::Polygon(p) => {
            writeln!(
                out,
                "polygon: residual {:.3e} after {} sweeps (restart {})",
                p.configuration.residual(),
                p.sweeps,
                p.restart
            )?;
            if let Some(rank) = r.jacobian_rank {
                writeln!(out, "jacobian rank: {rank} of {}", r.n)?;
            }
        }
        Realization::EmptySpace(c) => {
            writeln!(
                out,
                "empty space: {} is long, min |sum l_j u_j| = {}",
                c.witness, c.min_residual
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FileEntry {
    line: usize,
    lengths: Vec<String>,
    generic: bool,
    /// Index into `classes` for generic vectors.
    class: Option<usize>,
}

#[derive(Serialize)]
struct FileReport {
    d: u32,
    vectors: Vec<FileEntry>,
    /// `matrix[i][j]`: diffeomorphic, or null when not comparable.
    matrix: Vec<Vec<Option<bool>>>,
    classes: Vec<Vec<usize>>,
}

fn classify_file(path: &PathBuf, d: u32, common: &Common, out: &mut Vec<u8>) -> Outcome {
    if d < 3 {
        return Err(Error::UnsupportedDimension(d).into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    let mut vectors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let l = read_vector(line, common).map_err(|f| Failure {
            code: f.code,
            message: format!("line {}: {}", i + 1, f.message),
        })?;
        vectors.push((i + 1, l));
    }
    // Chamber of each sorted generic vector; equal chambers mean diffeomorphic.
    let chambers: Vec<Option<ChamberSignature>> = vectors
        .iter()
        .map(|(_, l)| chamber_signature(&l.sorted().0).ok())
        .collect();
    let mut classes: Vec<(ChamberSignature, Vec<usize>)> = Vec::new();
    let mut class_of = vec![None; vectors.len()];
    for (i, c) in chambers.iter().enumerate() {
        let Some(c) = c else { continue };
        match classes.iter().position(|(sig, _)| sig == c) {
            Some(k) => {
                classes[k].1.push(i);
                class_of[i] = Some(k);
            }
            None => {
                class_of[i] = Some(classes.len());
                classes.push((c.clone(), vec![i]));
            }
        }
    }
    let matrix: Vec<Vec<Option<bool>>> = (0..vectors.len())
        .map(|i| {
            (0..vectors.len())
                .map(|j| match (&chambers[i], &chambers[j]) {
                    (Some(a), Some(b)) if a.n() == b.n() => Some(a == b),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let report = FileReport {
        d,
        vectors: vectors
            .iter()
            .zip(&class_of)
            .zip(&chambers)
            .map(|(((line, l), class), c)| FileEntry {
                line: *line,
                lengths: l.to_strings(),
                generic: c.is_some(),
                class: *class,
            })
            .collect(),
        matrix,
        classes: classes.into_iter().map(|(_, members)| members).collect(),
    };
    if common.json {
        write_json(out, &report)?;
        return Ok(EXIT_OK);
    }
    for (i, ((line, l), entry)) in vectors.iter().zip(&report.vectors).enumerate() {
        let tag = match entry.class {
            Some(k) => format!("class {}", k + 1),
            None => "nongeneric".to_string(),
        };
        writeln!(out, "{:>3}  line {line:<4} {tag:<12} {l}", i + 1)?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "'=' diffeomorphic, '.' not, '-' not comparable (d = {d})"
    )?;
    write!(out, "    ")?;
    for j in 0..vectors.len() {
        write!(out, "{:>3}", j + 1)?;
    }
    writeln!(out)?;
    for (i, row) in report.matrix.iter().enumerate() {
        write!(out, "{:>3} ", i + 1)?;
        for cell in row {
            let c = match cell {
                Some(true) => '=',
                Some(false) => '.',
                None => '-',
            };
            write!(out, "{c:>3}")?;
        }
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

/// `"{};{1};{2,3}"` as masks.
fn parse_family(text: &str, n: usize) -> Result<Vec<SubsetMask>, Failure> {
    let malformed = |what: &str| Failure {
        code: EXIT_INPUT,
        message: format!("malformed family {text:?}: {what}"),
    };
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim().trim_start_matches('{').trim_end_matches('}');
        let mut mask = SubsetMask::EMPTY;
        for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| malformed(tok))?;
            if i == 0 || i >= n {
                return Err(malformed(&format!("index {i} outside 1..{}", n - 1)));
            }
            mask = mask.with(i);
        }
        out.push(mask);
    }
    if text.trim().is_empty() {
        out.clear();
    }
    Ok(out)
}

#[derive(Serialize)]
struct RealizeJson {
    signature: ChamberSignature,
    representative: Option<LengthVector>,
}

fn realize(n: usize, family: &str, common: &Common, out: &mut Vec<u8>) -> Outcome {
    check_enumeration_limit(n, common.max_n)?;
    if !(3..=polyspace::lengths::MAX_ENTRIES).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 3,
            max: polyspace::lengths::MAX_ENTRIES,
        }
        .into());
    }
    let signature = ChamberSignature::from_family(n, parse_family(family, n)?)?;
    let representative = realize_signature(&signature);
    let code = if representative.is_some() {
        EXIT_OK
    } else {
        EXIT_EMPTY
    };
    if common.json {
        write_json(
            out,
            &RealizeJson {
                signature,
                representative,
            },
        )?;
        return Ok(code);
    }
    match representative {
        Some(l) => writeln!(out, "{l}")?,
        None => writeln!(out, "no length vector realizes {signature}")?,
    }
    Ok(code)
}
