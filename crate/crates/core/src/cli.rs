//! Batch front end: `brandt <command> --group … --n …`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::brandt::{AlgebraElement, BrandtContext};
use crate::cartan::{block_view, cartan_matrix, discrepancy_note};
use crate::codes::{
    enumerate_idempotent_codes, ideal_on, mask_generator, min_weight, Side, DEFAULT_GENERATOR_CAP,
    DEFAULT_WEIGHT_CAP,
};
use crate::groups::{
    character_table, load_table, parse_group_spec, validate_orthogonality, CharacterTable, Group,
    TableError,
};
use crate::idempotents::{primitive_idempotents, verify_complete_set, IdempotentSet};

#[derive(Debug, Parser)]
#[command(
    name = "brandt",
    about = "Idempotents, Cartan matrices and codes of Brandt semigroup algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print (and validate) a character table.
    Chartab(Common),
    /// Print the primitive orthogonal idempotents e_ij.
    Idempotents(Common),
    /// Check idempotency, orthogonality, completeness and primitivity.
    Verify(Common),
    /// Print the Cartan matrix.
    Cartan(Common),
    /// Report every code generated by a sum of idempotents.
    Codes(Common),
    /// Minimum weight of a single code.
    Minweight {
        #[command(flatten)]
        common: Common,
        /// Idempotent subset, e.g. 1010 (entry 0 leftmost).
        #[arg(long, conflicts_with = "element")]
        mask: Option<String>,
        /// Generator in element syntax, e.g. "1*(1,e,1) - 1*(1,a^2,1)".
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// cyclic:k | s3 | product:A,B[,…] | file:path (chartab only)
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest support handled by the minimum-weight search.
    #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,
    /// Exit with status 2 when results disagree with printed values.
    #[arg(long)]
    paper_strict: bool,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
    /// Add a header row to CSV output.
    #[arg(long)]
    header: bool,
    /// Character table file to use instead of the built-in one.
    #[arg(long)]
    table: Option<PathBuf>,
}

/// Exit status plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// A failed run: usage errors exit 1, validation failures exit 2.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(1, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let (common, result) = match &cli.command {
        Command::Chartab(c) => (c, chartab(c)),
        Command::Idempotents(c) => (c, idempotents(c)),
        Command::Verify(c) => (c, verify(c)),
        Command::Cartan(c) => (c, cartan(c)),
        Command::Codes(c) => (c, codes(c)),
        Command::Minweight {
            common,
            mask,
            element,
        } => (
            common,
            minweight(common, mask.as_deref(), element.as_deref()),
        ),
    };
    let (code, report, note) = match result {
        Ok(r) => (r.code, r.body, r.note),
        Err(Failure(code, msg)) => return Outcome::fail(code, msg),
    };
    let mut out = Outcome {
        code,
        stdout: report,
        stderr: note,
    };
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Outcome::fail(1, format!("cannot write {}: {e}", path.display()));
        }
        out.stdout.clear();
    }
    out
}

struct Report {
    code: i32,
    body: String,
    /// Diagnostics for stderr.
    note: String,
}

impl Report {
    fn ok(body: String) -> Self {
        Report {
            code: 0,
            body,
            note: String::new(),
        }
    }
}

fn group_of(c: &Common) -> Result<Group, Failure> {
    if c.group.starts_with("file:") {
        return Err(usage(
            "file: groups only support chartab; use --table to pair a file with a built-in group",
        ));
    }
    parse_group_spec(&c.group).map_err(usage)
}

fn table_for(c: &Common, g: &Group) -> Result<CharacterTable, Failure> {
    let t = match &c.table {
        Some(path) => load_table(path).map_err(table_failure)?,
        None => character_table(g).map_err(|e| usage(e.to_string()))?,
    };
    t.element_columns(g).map_err(|e| usage(e.to_string()))?;
    Ok(t)
}

/// Tables that load but fail validation exit 2; unreadable ones are usage errors.
fn table_failure(e: TableError) -> Failure {
    let code = if matches!(e, TableError::Validation(_)) {
        2
    } else {
        1
    };
    Failure(code, e.to_string())
}

fn setup(c: &Common) -> Result<IdempotentSet, Failure> {
    let g = group_of(c)?;
    let t = table_for(c, &g)?;
    let ctx = BrandtContext::new(g, c.n as usize, t.field().clone());
    primitive_idempotents(&ctx, &t).map_err(|e| usage(e.to_string()))
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let mut line = cells
        .iter()
        .map(|c| csv_cell(c))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn chartab(c: &Common) -> Result<Report, Failure> {
    let t = if let Some(path) = c.group.strip_prefix("file:") {
        load_table(path).map_err(table_failure)?
    } else {
        table_for(c, &parse_group_spec(&c.group).map_err(usage)?)?
    };
    let report = validate_orthogonality(&t);
    if !report.passed() {
        let msgs: Vec<String> = report.failures().map(ToString::to_string).collect();
        return Err(Failure(2, msgs.join("; ")));
    }
    let reps: Vec<String> = t.classes().iter().map(|k| k.rep.clone()).collect();
    let rows: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let body = match c.format {
        Format::Json => t.to_json(),
        Format::Csv => {
            let mut s = String::new();
            if c.header {
                s.push_str(&csv_line(&reps));
            }
            for r in &rows {
                s.push_str(&csv_line(r));
            }
            s
        }
        Format::Text => {
            let mut cols: Vec<Vec<String>> = Vec::new();
            let mut first = vec![String::new()];
            first.extend((1..=rows.len()).map(|i| format!("chi_{i}")));
            cols.push(first);
            for (k, rep) in reps.iter().enumerate() {
                let mut col = vec![rep.clone()];
                col.extend(rows.iter().map(|r| r[k].clone()));
                cols.push(col);
            }
            let widths: Vec<usize> = cols
                .iter()
                .map(|col| col.iter().map(|s| s.chars().count()).max().unwrap_or(0))
                .collect();
            let mut s = format!(
                "{} (|G| = {}, Q(zeta_{}))\n",
                t.name(),
                t.group_order(),
                t.field().order()
            );
            for line in 0..=rows.len() {
                let cells: Vec<String> = cols
                    .iter()
                    .zip(&widths)
                    .map(|(col, &w)| format!("{:<w$}", col[line]))
                    .collect();
                s.push_str(cells.join("  ").trim_end());
                s.push('\n');
            }
            s
        }
    };
    Ok(Report::ok(body))
}

#[derive(Serialize)]
struct IdempotentRecord {
    character: usize,
    slot: usize,
    cyclic_label: Option<usize>,
    sequential_label: usize,
    element: String,
}

fn idempotents(c: &Common) -> Result<Report, Failure> {
    let s = setup(c)?;
    let records: Vec<IdempotentRecord> = s
        .entries()
        .iter()
        .enumerate()
        .map(|(pos, e)| IdempotentRecord {
            character: e.character + 1,
            slot: e.slot,
            cyclic_label: s.cyclic_label(pos),
            sequential_label: s.sequential_label(pos),
            element: e.element.to_string(),
        })
        .collect();
    let body = match c.format {
        Format::Text => records.iter().map(|r| format!("{}\n", r.element)).collect(),
        Format::Json => json(&records),
        Format::Csv => {
            let mut s = String::new();
            if c.header {
                s.push_str("character,slot,cyclic_label,sequential_label,element\n");
            }
            for r in &records {
                s.push_str(&csv_line(&[
                    r.character.to_string(),
                    r.slot.to_string(),
                    r.cyclic_label.map(|l| l.to_string()).unwrap_or_default(),
                    r.sequential_label.to_string(),
                    r.element.clone(),
                ]));
            }
            s
        }
    };
    Ok(Report::ok(body))
}

#[derive(Serialize)]
struct VerifyRecord {
    character: usize,
    slot: usize,
    element: String,
    nonzero: bool,
    idempotent: bool,
    orthogonal_to_others: bool,
    claimed_dimension: usize,
    measured_dimension: usize,
    primitive: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    group: String,
    n: usize,
    complete: bool,
    passed: bool,
    entries: Vec<VerifyRecord>,
}

fn verify(c: &Common) -> Result<Report, Failure> {
    let s = setup(c)?;
    let cert = verify_complete_set(&s);
    let entries: Vec<VerifyRecord> = s
        .entries()
        .iter()
        .enumerate()
        .map(|(u, e)| VerifyRecord {
            character: e.character + 1,
            slot: e.slot,
            element: e.element.to_string(),
            nonzero: cert.nonzero[u],
            idempotent: cert.idempotency[u],
            orthogonal_to_others: cert
                .orthogonality
                .iter()
                .filter(|((a, b), _)| *a == u || *b == u)
                .all(|(_, ok)| *ok),
            claimed_dimension: cert.primitivity[u].claimed,
            measured_dimension: cert.primitivity[u].measured,
            primitive: cert.primitivity[u].pass,
        })
        .collect();
    let rep = VerifyReport {
        group: s.context().group().name().to_string(),
        n: s.context().n(),
        complete: cert.completeness,
        passed: cert.passed(),
        entries,
    };
    let body = match c.format {
        Format::Json => json(&rep),
        Format::Csv => {
            let mut s = String::new();
            if c.header {
                s.push_str("character,slot,element,nonzero,idempotent,orthogonal,claimed_dimension,measured_dimension,primitive\n");
            }
            for r in &rep.entries {
                s.push_str(&csv_line(&[
                    r.character.to_string(),
                    r.slot.to_string(),
                    r.element.clone(),
                    r.nonzero.to_string(),
                    r.idempotent.to_string(),
                    r.orthogonal_to_others.to_string(),
                    r.claimed_dimension.to_string(),
                    r.measured_dimension.to_string(),
                    r.primitive.to_string(),
                ]));
            }
            s
        }
        Format::Text => {
            let mut s = format!("B({}, {})\n", rep.group, rep.n);
            for r in &rep.entries {
                let _ = writeln!(
                    s,
                    "e_{{{},{}}}  idempotent={} orthogonal={} dim={}/{} primitive={}  {}",
                    r.character,
                    r.slot,
                    r.idempotent,
                    r.orthogonal_to_others,
                    r.measured_dimension,
                    r.claimed_dimension,
                    r.primitive,
                    r.element
                );
            }
            let _ = writeln!(s, "sum equals identity: {}", rep.complete);
            let _ = writeln!(s, "{}", if rep.passed { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Report {
        code: if rep.passed { 0 } else { 2 },
        body,
        note: String::new(),
    })
}

#[derive(Serialize)]
struct CartanReport<'a> {
    labels: &'a [String],
    entries: &'a [Vec<usize>],
    block_size: usize,
    blocks: Vec<Vec<Vec<Vec<usize>>>>,
    symmetric: bool,
    note: Option<String>,
}

fn cartan(c: &Common) -> Result<Report, Failure> {
    let s = setup(c)?;
    let m = cartan_matrix(&s);
    let note = discrepancy_note(&s, &m);
    let block = s.characters();
    let blocks = block_view(&m, block).expect("r divides r·n");
    let differs = note.as_deref().is_some_and(|n| n.contains("differs"));
    let body = match c.format {
        Format::Csv => m.to_csv(c.header),
        Format::Json => json(&CartanReport {
            labels: &m.labels,
            entries: &m.entries,
            block_size: block,
            blocks,
            symmetric: m.is_symmetric(),
            note: note.clone(),
        }),
        Format::Text => {
            let mut s = m.to_text();
            if let Some(n) = &note {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
    };
    let note_line = match (&note, c.format) {
        (Some(n), Format::Csv) => format!("note: {n}\n"),
        _ => String::new(),
    };
    Ok(Report {
        code: if c.paper_strict && differs { 2 } else { 0 },
        body,
        note: note_line,
    })
}

fn codes(c: &Common) -> Result<Report, Failure> {
    let s = setup(c)?;
    let reports = enumerate_idempotent_codes(&s, c.side.into(), DEFAULT_GENERATOR_CAP, c.cap)
        .map_err(|e| usage(e.to_string()))?;
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let body = match c.format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut out = String::new();
            if c.header {
                out.push_str("mask,side,generator,dimension,support_size,min_weight,is_minimal,mask_sum_dimension,additive,paper_value_dimension,paper_value_weight,dimension_discrepancy,weight_discrepancy\n");
            }
            for r in &reports {
                out.push_str(&csv_line(&[
                    r.mask.clone(),
                    r.side.to_string(),
                    r.generator.clone(),
                    r.dimension.to_string(),
                    r.support_size.to_string(),
                    r.min_weight.to_string(),
                    r.is_minimal.to_string(),
                    r.mask_sum_dimension.to_string(),
                    r.additive.to_string(),
                    opt(r.paper_value_dimension),
                    opt(r.paper_value_weight),
                    r.dimension_discrepancy.to_string(),
                    r.weight_discrepancy.to_string(),
                ]));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{} ideals of B({}, {})\n",
                c.side.to_possible_value().unwrap().get_name(),
                s.context().group().name(),
                s.context().n()
            );
            out.push_str("mask  dim  supp  wt  minimal  printed  flags\n");
            for r in &reports {
                let printed = match (r.paper_value_dimension, r.paper_value_weight) {
                    (Some(d), Some(w)) => format!("{d}/{w}"),
                    _ => "-".into(),
                };
                let mut flags = Vec::new();
                if r.dimension_discrepancy {
                    flags.push("dimension");
                }
                if r.weight_discrepancy {
                    flags.push("weight");
                }
                if !r.additive {
                    flags.push("non-additive");
                }
                let line = format!(
                    "{:<5} {:>3}  {:>4}  {:>2}  {:<7}  {:<7}  {}",
                    r.mask,
                    r.dimension,
                    r.support_size,
                    r.min_weight,
                    r.is_minimal,
                    printed,
                    flags.join(",")
                );
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
    };
    let strict_fail = c.paper_strict && reports.iter().any(|r| r.has_discrepancy());
    Ok(Report {
        code: if strict_fail { 2 } else { 0 },
        body,
        note: String::new(),
    })
}

#[derive(Serialize)]
struct MinWeightReport {
    side: Side,
    generator: String,
    dimension: usize,
    min_weight: usize,
    subset: Vec<String>,
    codeword: String,
}

fn minweight(c: &Common, mask: Option<&str>, element: Option<&str>) -> Result<Report, Failure> {
    let s = setup(c)?;
    let ctx: &Arc<BrandtContext> = s.context();
    let generator = match (mask, element) {
        (Some(m), None) => {
            if m.len() != s.len() || !m.chars().all(|ch| ch == '0' || ch == '1') {
                return Err(usage(format!(
                    "--mask needs {} characters of 0/1, got '{m}'",
                    s.len()
                )));
            }
            mask_generator(&s, u64::from_str_radix(m, 2).expect("checked binary"))
        }
        (None, Some(e)) => AlgebraElement::parse(ctx, e).map_err(|e| usage(e.to_string()))?,
        _ => return Err(usage("minweight needs --mask or --element")),
    };
    let code = ideal_on(&generator, c.side.into());
    let mw = min_weight(&code, c.cap).map_err(|e| usage(e.to_string()))?;
    let rep = MinWeightReport {
        side: code.side(),
        generator: generator.to_string(),
        dimension: code.dimension(),
        min_weight: mw.weight,
        subset: mw.subset.iter().map(|&t| ctx.format_triple(t)).collect(),
        codeword: mw.codeword.to_string(),
    };
    let body = match c.format {
        Format::Json => json(&rep),
        Format::Csv => {
            let mut out = String::new();
            if c.header {
                out.push_str("side,generator,dimension,min_weight,subset,codeword\n");
            }
            out.push_str(&csv_line(&[
                rep.side.to_string(),
                rep.generator.clone(),
                rep.dimension.to_string(),
                rep.min_weight.to_string(),
                rep.subset.join(" "),
                rep.codeword.clone(),
            ]));
            out
        }
        Format::Text => format!(
            "dimension {}\nminimum weight {}\nsubset {}\nwitness {}\n",
            rep.dimension,
            rep.min_weight,
            rep.subset.join(" "),
            rep.codeword
        ),
    };
    Ok(Report::ok(body))
}
