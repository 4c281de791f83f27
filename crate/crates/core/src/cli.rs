//! Command-line front end.
//!
//! Matrices go to standard output (or `--output`), counts and diagnostics to
//! standard error. Exit codes: 0 success, 1 invalid input or negative answer,
//! 2 unreadable or malformed file, 3 size bound exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::amalgam::{
    enumerate_nonconnected_with, extract_structure_maps, glue2_by_completion, glue2_with,
};
use crate::decomp::{
    complemented_subquandles, is_connected, minimal_complemented_partition, orbit_decomposition,
    subquandle_depth,
};
use crate::error::QuandleError;
use crate::format::{parse_records, serialize, serialize_all, Record};
use crate::generators;
use crate::isomorph::{are_isomorphic, canonical_form_with_witness, census_with_limit};
use crate::limits::Limits;
use crate::table::QuandleTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quandle", version, about = "Finite quandles as operation matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Cap on the order accepted by exponential searches (automorphisms, canonical forms, census).
    #[arg(long, global = true, value_name = "K")]
    pub max_order: Option<usize>,
    /// Run the exhaustive cross-checks alongside the main algorithms.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Write matrices to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every record against the quandle axioms.
    Validate { file: PathBuf },
    /// Orbit decomposition report for every record.
    Orbits {
        file: PathBuf,
        /// Also list every complemented subquandle.
        #[arg(long)]
        complemented: bool,
        /// Also print the structure maps between orbits.
        #[arg(long)]
        actions: bool,
    },
    /// Subquandle depth of every record.
    Depth { file: PathBuf },
    /// Dual quandle of every record.
    Dual { file: PathBuf },
    /// Cartesian product of two single-record files.
    Product { left: PathBuf, right: PathBuf },
    /// All quandle structures on the disjoint union of two quandles.
    Glue {
        left: PathBuf,
        right: PathBuf,
        /// Keep one canonical form per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// All non-connected structures on the union of the records in a file.
    Enumerate {
        file: PathBuf,
        /// Print canonical forms instead of block-layout representatives.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Isomorphism test; exit 0 with a witness, 1 if not isomorphic.
    Iso {
        left: PathBuf,
        right: Option<PathBuf>,
        /// Compare against a generated quandle instead of a second file, e.g. `dihedral:9`.
        #[arg(long, value_name = "SPEC", conflicts_with = "right")]
        against: Option<String>,
    },
    /// All quandles of order N up to isomorphism.
    Census { n: usize },
    /// Generate a standard quandle.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenCommand {
    Trivial { n: usize },
    Dihedral { n: usize },
    Alexander {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        t: i64,
    },
    /// Conjugation quandle of a group given as a `group <n>` Cayley table.
    Conjugation { file: PathBuf },
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into() }
    }
}

impl From<QuandleError> for Failure {
    fn from(e: QuandleError) -> Self {
        let code = match e {
            QuandleError::BoundExceeded { .. } => EXIT_BOUND,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

struct Ctx<'a> {
    global: GlobalOpts,
    limits: Limits,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn note(&mut self, message: &str) {
        let _ = writeln!(self.err, "{message}");
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match &self.global.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| Failure::invalid(format!("write failed: {e}"))),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let limits = match cli.global.max_order {
        Some(k) => Limits::with_max_order(k),
        None => Limits::default(),
    };
    let mut ctx = Ctx { global: cli.global.clone(), limits, out, err };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            ctx.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(command: &Command, ctx: &mut Ctx<'_>) -> CmdResult {
    match command {
        Command::Validate { file } => cmd_validate(file, ctx),
        Command::Orbits { file, complemented, actions } => cmd_orbits(file, *complemented, *actions, ctx),
        Command::Depth { file } => {
            let mut text = String::new();
            for (idx, q) in load_valid(file)?.iter().enumerate() {
                text.push_str(&format!("record {}: depth {}\n", idx + 1, subquandle_depth(q)));
            }
            ctx.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Dual { file } => {
            let duals: Vec<QuandleTable> = load_valid(file)?.iter().map(QuandleTable::dual).collect();
            ctx.emit(&serialize_all(&duals))?;
            Ok(EXIT_OK)
        }
        Command::Product { left, right } => {
            let p = generators::product(&load_single(left)?, &load_single(right)?);
            ctx.emit(&serialize(&p))?;
            Ok(EXIT_OK)
        }
        Command::Glue { left, right, up_to_iso } => cmd_glue(left, right, *up_to_iso, ctx),
        Command::Enumerate { file, up_to_iso } => {
            let blocks = load_valid(file)?;
            let found = enumerate_nonconnected_with(&blocks, &ctx.limits)?;
            let shown = if *up_to_iso { canonical_all(&found, &ctx.limits)? } else { found };
            ctx.note(&format!("{} non-connected structures up to isomorphism", shown.len()));
            ctx.emit(&serialize_all(&shown))?;
            Ok(EXIT_OK)
        }
        Command::Iso { left, right, against } => cmd_iso(left, right.as_deref(), against.as_deref(), ctx),
        Command::Census { n } => {
            let list = census_with_limit(*n, ctx.limits.max_census_order)?;
            ctx.note(&format!("{} quandles of order {n} up to isomorphism", list.len()));
            ctx.emit(&serialize_all(&list))?;
            Ok(EXIT_OK)
        }
        Command::Gen(g) => {
            let q = match g {
                GenCommand::Trivial { n } => generators::trivial(*n)?,
                GenCommand::Dihedral { n } => generators::dihedral(*n)?,
                GenCommand::Alexander { n, t } => generators::alexander(*n, *t)?,
                GenCommand::Conjugation { file } => {
                    let records = load_records(file)?;
                    let [record] = records.as_slice() else {
                        return Err(Failure::invalid(format!("{}: expected exactly one record", file.display())));
                    };
                    generators::conjugation(&record.rows)?
                }
            };
            ctx.emit(&serialize(&q))?;
            Ok(EXIT_OK)
        }
    }
}

fn load_records(path: &Path) -> Result<Vec<Record>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_records(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Vec<QuandleTable>, Failure> {
    let records = load_records(path)?;
    let mut out = Vec::with_capacity(records.len());
    for (idx, record) in records.iter().enumerate() {
        let q = QuandleTable::validate(&record.rows).map_err(|e| {
            Failure::invalid(format!("{} record {} (line {}): {e}", path.display(), idx + 1, record.line))
        })?;
        out.push(q);
    }
    Ok(out)
}

fn load_single(path: &Path) -> Result<QuandleTable, Failure> {
    let mut all = load_valid(path)?;
    if all.len() != 1 {
        return Err(Failure::invalid(format!(
            "{}: expected exactly one record, found {}",
            path.display(),
            all.len()
        )));
    }
    Ok(all.remove(0))
}

fn canonical_all(tables: &[QuandleTable], limits: &Limits) -> Result<Vec<QuandleTable>, Failure> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for q in tables {
        let (c, _) = canonical_form_with_witness(q, limits.max_canonical_order)?;
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    Ok(out)
}

fn cmd_validate(file: &Path, ctx: &mut Ctx<'_>) -> CmdResult {
    let records = load_records(file)?;
    let mut failures = 0;
    for (idx, record) in records.iter().enumerate() {
        match QuandleTable::validate(&record.rows) {
            Ok(_) => {
                let _ = writeln!(ctx.out, "record {}: valid", idx + 1);
            }
            Err(e) => {
                failures += 1;
                let _ = writeln!(ctx.out, "record {}: invalid", idx + 1);
                ctx.note(&format!("record {} (line {}): {e}", idx + 1, record.line));
            }
        }
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INVALID })
}

fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn cmd_orbits(file: &Path, complemented: bool, actions: bool, ctx: &mut Ctx<'_>) -> CmdResult {
    let tables = load_valid(file)?;
    let mut text = String::new();
    let mut code = EXIT_OK;
    for (idx, q) in tables.iter().enumerate() {
        let decomposition = orbit_decomposition(q);
        if idx > 0 {
            text.push('\n');
        }
        text.push_str(&format!("record {}\n", idx + 1));
        text.push_str(&serialize(q));
        text.push_str(&format!("parts {}\n", decomposition.len()));
        for (p, part) in decomposition.parts().iter().enumerate() {
            let sub = q.restrict(part)?;
            text.push_str(&format!(
                "part {}: {} connected {}\n",
                p + 1,
                format_set(part),
                if is_connected(&sub) { "yes" } else { "no" }
            ));
            text.push_str(&serialize(&sub));
        }
        text.push_str(&format!("depth {}\n", subquandle_depth(q)));
        if complemented {
            let sets: Vec<String> = complemented_subquandles(q)?.iter().map(|s| format_set(s)).collect();
            text.push_str(&format!("complemented {}\n", sets.join(" ")));
        }
        if actions {
            let maps = extract_structure_maps(q, &decomposition)?;
            let k = maps.blocks().len();
            for i in 0..k {
                for j in (0..k).filter(|&j| j != i) {
                    // column r is φ^(i,j)_r, as in the block-matrix reading
                    text.push_str(&format!("action {} -> {}\n", i + 1, j + 1));
                    let family = maps.family(i, j);
                    for row in 1..=maps.blocks()[j].order() {
                        let line: Vec<String> = family.iter().map(|p| p.apply(row).to_string()).collect();
                        text.push_str(&format!("{}\n", line.join(" ")));
                    }
                }
            }
        }
        if ctx.global.oracle {
            let oracle = minimal_complemented_partition(q)?;
            if oracle != decomposition.parts() {
                code = EXIT_INVALID;
                ctx.note(&format!(
                    "record {}: oracle mismatch, complemented-intersection parts {:?}",
                    idx + 1,
                    oracle
                ));
            } else {
                ctx.note(&format!("record {}: oracle agrees", idx + 1));
            }
        }
    }
    ctx.emit(&text)?;
    Ok(code)
}

fn cmd_glue(left: &Path, right: &Path, up_to_iso: bool, ctx: &mut Ctx<'_>) -> CmdResult {
    let (q, q2) = (load_single(left)?, load_single(right)?);
    let glued = glue2_with(&q, &q2, &ctx.limits)?;
    let mut code = EXIT_OK;
    if ctx.global.oracle {
        let mut expected = glue2_by_completion(&q, &q2)?;
        let mut got = glued.clone();
        expected.sort();
        got.sort();
        if expected == got {
            ctx.note("oracle agrees");
        } else {
            ctx.note(&format!("oracle mismatch: {} by completion, {} by rack actions", expected.len(), got.len()));
            code = EXIT_INVALID;
        }
    }
    let shown = if up_to_iso { canonical_all(&glued, &ctx.limits)? } else { glued };
    ctx.note(&format!(
        "{} structures{}",
        shown.len(),
        if up_to_iso { " up to isomorphism" } else { "" }
    ));
    ctx.emit(&serialize_all(&shown))?;
    Ok(code)
}

/// `trivial:N`, `dihedral:N` or `alexander:N:T`.
fn parse_generator_spec(spec: &str) -> Result<QuandleTable, Failure> {
    let fields: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Failure::parse(format!("bad number {s:?} in {spec:?}")));
    let q = match fields.as_slice() {
        ["trivial", n] => generators::trivial(num(n)?)?,
        ["dihedral", n] => generators::dihedral(num(n)?)?,
        ["alexander", n, t] => {
            let t = t.parse::<i64>().map_err(|_| Failure::parse(format!("bad number {t:?} in {spec:?}")))?;
            generators::alexander(num(n)?, t)?
        }
        _ => return Err(Failure::parse(format!("unknown generator {spec:?}"))),
    };
    Ok(q)
}

fn cmd_iso(left: &Path, right: Option<&Path>, against: Option<&str>, ctx: &mut Ctx<'_>) -> CmdResult {
    let q = load_single(left)?;
    let q2 = match (right, against) {
        (Some(path), None) => load_single(path)?,
        (None, Some(spec)) => parse_generator_spec(spec)?,
        _ => return Err(Failure::parse("give a second file or --against SPEC")),
    };
    match are_isomorphic(&q, &q2) {
        Some(rho) => {
            let images: Vec<String> = rho.images().iter().map(usize::to_string).collect();
            ctx.emit(&format!("isomorphic\nwitness {}\ncycles {}\n", images.join(" "), rho))?;
            Ok(EXIT_OK)
        }
        None => {
            ctx.emit("not isomorphic\n")?;
            Ok(EXIT_INVALID)
        }
    }
}
