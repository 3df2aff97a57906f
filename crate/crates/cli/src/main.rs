//! Command-line interface to the surface-kernel toolkit.
//!
//! Every command reads a TOML job file (see [`job`]) describing a finite
//! group, an orbifold signature, and a tuple of images, and reports on the
//! kernel surface it defines: validation, genus, the rewritten presentation,
//! its simplification, the homology action, move programs, orbits, and the
//! adapted-basis classification.
//!
//! Exit codes: 0 success, 2 parse error (malformed job file, unknown
//! element, bad move name, bad flags), 3 validation failure (the images do
//! not satisfy the surface-kernel conditions, a supplied transversal is not
//! minimal, a move precondition fails), 4 simplification incomplete,
//! 5 internal inconsistency.

use clap::{Parser, Subcommand, ValueEnum};
use skmap_cli::job;
use skmap_cli::machine::Doc;
use skmap::homology::{
    adapted_check, block_structure_check, check_representation, homology_matrices,
};
use skmap::kernel::{kernel_genus, validate};
use skmap::moves::{apply_op, enumerate_orbit};
use skmap::schreier::{
    linkedness_check, minimal_transversal, raw_presentation, simplify, validate_transversal,
};
use skmap::{
    AdaptedCase, FiniteGroup, GeneratingVector, HarveyOp, HomologyError, IntMatrix, KernelGen,
    KernelPresentation, KernelWord, MoveError, OrbifoldSignature, RelationSource, SchreierError,
    SchreierTransversal, ValidationReport,
};
use std::fmt::Write as _;
use std::path::PathBuf;

const EXIT_PARSE: i32 = 2;
const EXIT_VALIDATION: i32 = 3;
const EXIT_INCOMPLETE: i32 = 4;
const EXIT_INTERNAL: i32 = 5;

#[derive(Parser)]
#[command(
    name = "skmap",
    version,
    about = "Surface-kernel maps: presentations, homology actions, and moves"
)]
struct Cli {
    /// Job file (TOML) with the group, signature, and images
    #[arg(long, global = true, value_name = "FILE")]
    job: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Transversal override file (TOML with a `words` array in element order)
    #[arg(long, global = true, value_name = "FILE")]
    transversal: Option<PathBuf>,

    /// Maximum number of vectors to enumerate in an orbit
    #[arg(long, global = true, default_value_t = 10_000)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// Line-oriented machine format (stable token grammar)
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check the surface-kernel conditions for the job's images
    Validate,
    /// Print the genus of the kernel surface
    Genus,
    /// Print the rewritten kernel presentation over the transversal
    Present,
    /// Print the simplified presentation: 2g generators, one relation
    Simplify,
    /// Print the homology matrices and their checks
    Homology,
    /// Apply a comma-separated move program (e.g. "V1,V2,Bhat:1")
    Harvey {
        /// Move program; defaults to the job file's [harvey] program
        program: Option<String>,
    },
    /// Enumerate the orbit of the images under a comma-separated move set
    Orbit {
        /// Moves to close under; defaults to the job file's [harvey] program
        ops: Option<String>,
    },
    /// Classify each homology basis element against the deck action
    Adapted,
}

/// A failure with its process exit code; printed to stderr.
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
    fn incomplete(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INCOMPLETE,
            message: message.into(),
        }
    }
    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

fn from_schreier(e: SchreierError) -> CliError {
    match e {
        SchreierError::SimplificationIncomplete { .. } => CliError::incomplete(e.to_string()),
        _ => CliError::internal(e.to_string()),
    }
}

fn from_homology(e: HomologyError) -> CliError {
    CliError::internal(e.to_string())
}

fn from_move(e: MoveError) -> CliError {
    match e {
        MoveError::BadOpName { .. } => CliError::parse(e.to_string()),
        MoveError::InapplicableSignature { .. }
        | MoveError::PreconditionFailed { .. }
        | MoveError::VectorShape { .. } => CliError::validation(e.to_string()),
        _ => CliError::internal(e.to_string()),
    }
}

/// Command output: the rendered stdout payload and the process exit code
/// (nonzero when the command ran to completion but its verdict is negative,
/// as for `validate` on an invalid vector).
struct Output {
    stdout: String,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(out.code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let path = cli
        .job
        .as_ref()
        .ok_or_else(|| CliError::parse("missing --job <FILE>"))?;
    let job = job::load(path).map_err(CliError::parse)?;
    match &cli.command {
        Command::Validate => cmd_validate(cli, &job),
        Command::Genus => cmd_genus(cli, &job),
        Command::Present => cmd_present(cli, &job),
        Command::Simplify => cmd_simplify(cli, &job),
        Command::Homology => cmd_homology(cli, &job),
        Command::Harvey { program } => cmd_harvey(cli, &job, program.as_deref()),
        Command::Orbit { ops } => cmd_orbit(cli, &job, ops.as_deref()),
        Command::Adapted => cmd_adapted(cli, &job),
    }
}

/// Describe every failed surface-kernel condition, naming periods by symbol.
fn failure_summary(
    group: &FiniteGroup,
    sig: &OrbifoldSignature,
    vec: &GeneratingVector,
    report: &ValidationReport,
) -> String {
    let mut parts = Vec::new();
    if !report.long_relation_ok {
        parts.push("the long relation does not map to the identity".to_string());
    }
    for (j, &ok) in report.period_orders_ok.iter().enumerate() {
        if !ok {
            let image = vec.elliptic()[j];
            parts.push(format!(
                "the image of x{} ({}) has order {}, expected {}",
                j + 1,
                group.name(image),
                group.elem_order(image),
                sig.periods()[j]
            ));
        }
    }
    if !report.surjective {
        parts.push("the images do not generate the whole group".to_string());
    }
    parts.join("; ")
}

/// Validate the job's images, or fail with exit code 3 and a diagnostic.
fn require_valid(job: &job::Job) -> Result<(), CliError> {
    let report = validate(&job.group, &job.sig, &job.vec)
        .map_err(|e| CliError::validation(e.to_string()))?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::validation(format!(
            "invalid surface-kernel map: {}",
            failure_summary(&job.group, &job.sig, &job.vec, &report)
        )))
    }
}

/// Resolve the transversal: the `--transversal` flag wins, then the job
/// file's `[transversal]` table, then the minimal breadth-first one. A
/// supplied transversal must pass the full minimality validation.
fn transversal_for(cli: &Cli, job: &job::Job) -> Result<SchreierTransversal, CliError> {
    let words = match &cli.transversal {
        Some(path) => Some(job::load_transversal(path).map_err(CliError::parse)?),
        None => job.transversal_words.clone(),
    };
    match words {
        Some(words) => {
            let t = SchreierTransversal::from_words(words);
            validate_transversal(&job.group, &job.sig, &job.vec, &t)
                .map_err(|e| CliError::validation(format!("supplied transversal rejected: {e}")))?;
            Ok(t)
        }
        None => minimal_transversal(&job.group, &job.sig, &job.vec).map_err(from_schreier),
    }
}

fn signature_text(sig: &OrbifoldSignature) -> String {
    let periods: Vec<String> = sig.periods().iter().map(|m| m.to_string()).collect();
    if periods.is_empty() {
        format!("({}; -)", sig.genus())
    } else {
        format!("({}; {})", sig.genus(), periods.join(", "))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Tokens of a kernel word for the machine format: `1` for the empty word.
fn word_tokens(group: &FiniteGroup, w: &KernelWord) -> Vec<String> {
    if w.is_empty() {
        return vec!["1".to_string()];
    }
    w.letters()
        .iter()
        .map(|&(g, e)| {
            let mut t = g.label(group);
            if e < 0 {
                t.push_str("^-1");
            }
            t
        })
        .collect()
}

fn relation_head_text(group: &FiniteGroup, source: &RelationSource) -> String {
    match source {
        RelationSource::LongConjugate { coset } => {
            format!("long relation at coset {}", group.name(*coset))
        }
        RelationSource::EllipticPower {
            period_index,
            base_coset,
        } => format!(
            "period x{} power at coset {}",
            period_index + 1,
            group.name(*base_coset)
        ),
        RelationSource::TrivialGenerator { gen } => {
            format!("tree edge {}", gen.label(group))
        }
    }
}

fn relation_machine_tokens(
    group: &FiniteGroup,
    source: &RelationSource,
    word: &KernelWord,
) -> Vec<String> {
    let mut tokens: Vec<String> = match source {
        RelationSource::LongConjugate { coset } => {
            vec!["long-conjugate".into(), group.name(*coset).into()]
        }
        RelationSource::EllipticPower {
            period_index,
            base_coset,
        } => vec![
            "elliptic-power".into(),
            (period_index + 1).to_string(),
            group.name(*base_coset).into(),
        ],
        RelationSource::TrivialGenerator { gen } => {
            vec!["trivial-generator".into(), gen.label(group)]
        }
    };
    tokens.push(":".into());
    tokens.extend(word_tokens(group, word));
    tokens
}

fn labels(group: &FiniteGroup, gens: &[KernelGen]) -> Vec<String> {
    gens.iter().map(|g| g.label(group)).collect()
}

fn names(group: &FiniteGroup, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&e| group.name(e).to_string()).collect()
}

/// Shared header lines for presentation-bearing machine documents.
fn machine_header(doc: &mut Doc, stage: &str, job: &job::Job) {
    doc.push("stage", [stage]);
    doc.push("group-order", [job.group.order().to_string()]);
    doc.push("base-genus", [job.sig.genus().to_string()]);
    doc.push(
        "periods",
        job.sig.periods().iter().map(|m| m.to_string()),
    );
}

fn render(cli: &Cli, text: String, doc: Doc) -> String {
    match cli.format {
        Format::Text => text,
        Format::Machine => doc.dump(),
    }
}

fn cmd_validate(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    let report = validate(&job.group, &job.sig, &job.vec)
        .map_err(|e| CliError::validation(e.to_string()))?;
    let valid = report.is_valid();

    let mut text = String::new();
    let _ = writeln!(text, "surface-kernel validation");
    let _ = writeln!(text, "  group order: {}", job.group.order());
    let _ = writeln!(text, "  signature: {}", signature_text(&job.sig));
    let _ = writeln!(
        text,
        "  long relation maps to the identity: {}",
        yes_no(report.long_relation_ok)
    );
    for (j, &ok) in report.period_orders_ok.iter().enumerate() {
        let image = job.vec.elliptic()[j];
        if ok {
            let _ = writeln!(
                text,
                "  period x{}: ok (image {} has order {})",
                j + 1,
                job.group.name(image),
                job.sig.periods()[j]
            );
        } else {
            let _ = writeln!(
                text,
                "  period x{}: FAILED (image {} has order {}, expected {})",
                j + 1,
                job.group.name(image),
                job.group.elem_order(image),
                job.sig.periods()[j]
            );
        }
    }
    let _ = writeln!(
        text,
        "  images generate the whole group: {}",
        yes_no(report.surjective)
    );
    let _ = writeln!(
        text,
        "  verdict: {}",
        if valid { "valid" } else { "invalid" }
    );

    let mut doc = Doc::new();
    machine_header(&mut doc, "validate", job);
    doc.push("long-relation", [report.long_relation_ok.to_string()]);
    for (j, &ok) in report.period_orders_ok.iter().enumerate() {
        doc.push("period-order", [(j + 1).to_string(), ok.to_string()]);
    }
    doc.push("surjective", [report.surjective.to_string()]);
    doc.push("valid", [valid.to_string()]);

    Ok(Output {
        stdout: render(cli, text, doc),
        code: if valid { 0 } else { EXIT_VALIDATION },
    })
}

fn cmd_genus(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    let g = kernel_genus(&job.sig, job.group.order())
        .map_err(|e| CliError::validation(e.to_string()))?;
    let text = format!("{g}\n");
    let mut doc = Doc::new();
    doc.push("stage", ["genus"]);
    doc.push("group-order", [job.group.order().to_string()]);
    doc.push("genus", [g.to_string()]);
    Ok(Output::ok(render(cli, text, doc)))
}

fn push_presentation(doc: &mut Doc, group: &FiniteGroup, p: &KernelPresentation) {
    doc.push("genus", [p.genus_expected.to_string()]);
    doc.push("generators", [p.generators.len().to_string()]);
    for g in &p.generators {
        doc.push("generator", [g.label(group)]);
    }
    doc.push("relations", [p.relations.len().to_string()]);
    for rel in &p.relations {
        doc.push(
            "relation",
            relation_machine_tokens(group, &rel.source, &rel.word),
        );
    }
    for (g, w) in &p.eliminated {
        let mut tokens = vec![g.label(group), ":".to_string()];
        tokens.extend(word_tokens(group, w));
        doc.push("eliminated", tokens);
    }
}

fn presentation_text(title: &str, job: &job::Job, p: &KernelPresentation) -> String {
    let group = &job.group;
    let mut text = String::new();
    let _ = writeln!(text, "{title}");
    let _ = writeln!(text, "  group order: {}", group.order());
    let _ = writeln!(text, "  signature: {}", signature_text(&job.sig));
    let _ = writeln!(text, "  kernel genus: {}", p.genus_expected);
    let _ = writeln!(
        text,
        "  generators ({}): {}",
        p.generators.len(),
        labels(group, &p.generators).join(" ")
    );
    let _ = writeln!(text, "  relations ({}):", p.relations.len());
    for rel in &p.relations {
        let _ = writeln!(
            text,
            "    {}: {} = 1",
            relation_head_text(group, &rel.source),
            rel.word.label(group)
        );
    }
    if !p.eliminated.is_empty() {
        let _ = writeln!(text, "  elimination steps ({}):", p.eliminated.len());
        for (g, w) in &p.eliminated {
            let _ = writeln!(text, "    {} -> {}", g.label(group), w.label(group));
        }
    }
    text
}

fn cmd_present(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    require_valid(job)?;
    let t = transversal_for(cli, job)?;
    let p = raw_presentation(&job.group, &job.sig, &job.vec, &t).map_err(from_schreier)?;

    let mut text = presentation_text("rewritten kernel presentation", job, &p);
    let mut coset_lines = String::new();
    let _ = writeln!(coset_lines, "  coset representatives:");
    for c in job.group.elements() {
        let _ = writeln!(coset_lines, "    {}: {}", job.group.name(c), t.rep(c));
    }
    // Splice the representatives after the signature line for readability.
    let insert_at = text
        .find("  kernel genus:")
        .expect("presentation text has a genus line");
    text.insert_str(insert_at, &coset_lines);

    let mut doc = Doc::new();
    machine_header(&mut doc, "present", job);
    for c in job.group.elements() {
        let mut tokens = vec![job.group.name(c).to_string()];
        let rep = t.rep(c);
        if rep.is_empty() {
            tokens.push("1".to_string());
        } else {
            tokens.extend(rep.to_string().split_whitespace().map(str::to_string));
        }
        doc.push("coset", tokens);
    }
    push_presentation(&mut doc, &job.group, &p);
    Ok(Output::ok(render(cli, text, doc)))
}

fn simplified_for(cli: &Cli, job: &job::Job) -> Result<(SchreierTransversal, KernelPresentation), CliError> {
    let t = transversal_for(cli, job)?;
    let raw = raw_presentation(&job.group, &job.sig, &job.vec, &t).map_err(from_schreier)?;
    let p = simplify(&raw).map_err(from_schreier)?;
    Ok((t, p))
}

fn cmd_simplify(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    require_valid(job)?;
    let (_, p) = simplified_for(cli, job)?;
    let linked = linkedness_check(&p).map_err(from_schreier)?;

    let mut text = presentation_text("simplified kernel presentation", job, &p);
    let _ = writeln!(text, "  linked pairing: {}", yes_no(linked));

    let mut doc = Doc::new();
    machine_header(&mut doc, "simplify", job);
    push_presentation(&mut doc, &job.group, &p);
    doc.push("linked", [linked.to_string()]);
    Ok(Output::ok(render(cli, text, doc)))
}

fn matrix_text(m: &IntMatrix) -> String {
    let dim = m.dim();
    let width = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for i in 0..dim {
        let row: Vec<String> = (0..dim)
            .map(|j| format!("{:>width$}", m.get(i, j)))
            .collect();
        let _ = writeln!(out, "    {}", row.join(" "));
    }
    out
}

fn cmd_homology(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    require_valid(job)?;
    let (t, p) = simplified_for(cli, job)?;
    let action = homology_matrices(&job.group, &job.vec, &t, &p).map_err(from_homology)?;
    let rep_ok = check_representation(&action, &job.group).map_err(from_homology)?;
    let block = if job.sig.genus() >= 1 {
        Some(block_structure_check(&job.group, &job.sig, &job.vec, &action).map_err(from_homology)?)
    } else {
        None
    };

    let group = &job.group;
    let mut text = String::new();
    let _ = writeln!(text, "homology action of the group on the kernel surface");
    let _ = writeln!(text, "  group order: {}", group.order());
    let _ = writeln!(text, "  signature: {}", signature_text(&job.sig));
    let _ = writeln!(text, "  dimension: {}", action.dim());
    let _ = writeln!(text, "  basis: {}", labels(group, &action.basis).join(" "));
    for g in group.elements() {
        let _ = writeln!(text, "  matrix {}:", group.name(g));
        text.push_str(&matrix_text(action.matrix(g)));
    }
    let _ = writeln!(text, "  representation check: {}", yes_no(rep_ok));
    if let Some(b) = block {
        let _ = writeln!(
            text,
            "  block structure (base genus {}): {}",
            job.sig.genus(),
            yes_no(b)
        );
    }

    let mut doc = Doc::new();
    machine_header(&mut doc, "homology", job);
    doc.push("genus", [p.genus_expected.to_string()]);
    doc.push("dimension", [action.dim().to_string()]);
    doc.push("basis", labels(group, &action.basis));
    for g in group.elements() {
        doc.push("matrix", [group.name(g).to_string()]);
        let m = action.matrix(g);
        for i in 0..m.dim() {
            doc.push("row", (0..m.dim()).map(|j| m.get(i, j).to_string()));
        }
    }
    doc.push("representation", [rep_ok.to_string()]);
    if let Some(b) = block {
        doc.push("block", [b.to_string()]);
    }

    Ok(Output {
        stdout: render(cli, text, doc),
        code: if rep_ok { 0 } else { EXIT_INTERNAL },
    })
}

fn parse_program(text: &str) -> Result<Vec<HarveyOp>, CliError> {
    let ops: Result<Vec<HarveyOp>, MoveError> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(HarveyOp::parse)
        .collect();
    let ops = ops.map_err(from_move)?;
    if ops.is_empty() {
        return Err(CliError::parse("empty move program"));
    }
    Ok(ops)
}

/// The move program: the command-line argument wins, then the job file's
/// `[harvey] program`.
fn program_for<'a>(job: &'a job::Job, arg: Option<&'a str>) -> Result<&'a str, CliError> {
    arg.or(job.program.as_deref()).ok_or_else(|| {
        CliError::parse("no move program: pass one as an argument or set [harvey] program")
    })
}

fn push_vector(doc: &mut Doc, group: &FiniteGroup, vec: &GeneratingVector) {
    doc.push("a", names(group, vec.handle_a()));
    doc.push("b", names(group, vec.handle_b()));
    doc.push("xi", names(group, vec.elliptic()));
}

fn vector_text(group: &FiniteGroup, vec: &GeneratingVector) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "  a: {}", names(group, vec.handle_a()).join(" "));
    let _ = writeln!(text, "  b: {}", names(group, vec.handle_b()).join(" "));
    let _ = writeln!(text, "  xi: {}", names(group, vec.elliptic()).join(" "));
    text
}

fn cmd_harvey(cli: &Cli, job: &job::Job, arg: Option<&str>) -> Result<Output, CliError> {
    let program = program_for(job, arg)?;
    let ops = parse_program(program)?;
    require_valid(job)?;

    let mut current = job.vec.clone();
    for (i, &op) in ops.iter().enumerate() {
        let res = apply_op(op, &current, &job.group).map_err(from_move)?;
        if !res.applied {
            return Err(CliError::validation(format!(
                "step {} ({op}) skipped: {}",
                i + 1,
                res.reason.unwrap_or_else(|| "precondition failed".into())
            )));
        }
        current = res.vector;
    }

    let compact: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    let compact = compact.join(",");
    let mut text = String::new();
    let _ = writeln!(text, "images after move program {compact}");
    text.push_str(&vector_text(&job.group, &current));

    let mut doc = Doc::new();
    machine_header(&mut doc, "harvey", job);
    doc.push("program", [compact]);
    push_vector(&mut doc, &job.group, &current);
    Ok(Output::ok(render(cli, text, doc)))
}

fn cmd_orbit(cli: &Cli, job: &job::Job, arg: Option<&str>) -> Result<Output, CliError> {
    let program = program_for(job, arg)?;
    let ops = parse_program(program)?;
    require_valid(job)?;
    let orbit = enumerate_orbit(&job.group, &job.vec, &ops, cli.cap).map_err(from_move)?;

    let compact: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    let compact = compact.join(",");
    let group = &job.group;
    let mut text = String::new();
    let _ = writeln!(text, "orbit under {compact} (cap {})", cli.cap);
    let _ = writeln!(
        text,
        "  vectors reached: {}{}",
        orbit.vectors.len(),
        if orbit.truncated {
            " (truncated at the cap)"
        } else {
            ""
        }
    );
    for v in &orbit.vectors {
        let _ = writeln!(text, "  vector: {}", names(group, &v.flatten()).join(" "));
    }

    let mut doc = Doc::new();
    machine_header(&mut doc, "orbit", job);
    doc.push("ops", [compact]);
    doc.push("cap", [cli.cap.to_string()]);
    doc.push("count", [orbit.vectors.len().to_string()]);
    doc.push("truncated", [orbit.truncated.to_string()]);
    for v in &orbit.vectors {
        doc.push("vector", names(group, &v.flatten()));
    }
    Ok(Output::ok(render(cli, text, doc)))
}

fn case_name(case: &Option<AdaptedCase>) -> &'static str {
    match case {
        None => "unclassified",
        Some(AdaptedCase::FreeOrbit) => "free-orbit",
        Some(AdaptedCase::CyclicCosetSum) => "cyclic-coset-sum",
        Some(AdaptedCase::PowerSweepImage) => "power-sweep-image",
        Some(AdaptedCase::StabilizedBasis) => "stabilized-basis",
    }
}

fn cmd_adapted(cli: &Cli, job: &job::Job) -> Result<Output, CliError> {
    require_valid(job)?;
    let (t, p) = simplified_for(cli, job)?;
    let action = homology_matrices(&job.group, &job.vec, &t, &p).map_err(from_homology)?;
    let report = adapted_check(&action, &job.group);

    let group = &job.group;
    let mut text = String::new();
    let _ = writeln!(text, "adapted-basis classification");
    let _ = writeln!(text, "  dimension: {}", action.dim());
    for (g, case) in action.basis.iter().zip(&report.classes) {
        let _ = writeln!(text, "  {}: {}", g.label(group), case_name(case));
    }
    let _ = writeln!(text, "  adapted: {}", yes_no(report.adapted));
    let _ = writeln!(
        text,
        "  witness: {}",
        report
            .witness
            .map(|w| w.label(group))
            .unwrap_or_else(|| "none".to_string())
    );

    let mut doc = Doc::new();
    machine_header(&mut doc, "adapted", job);
    doc.push("dimension", [action.dim().to_string()]);
    for (g, case) in action.basis.iter().zip(&report.classes) {
        doc.push("class", [g.label(group), case_name(case).to_string()]);
    }
    doc.push("adapted", [report.adapted.to_string()]);
    doc.push(
        "witness",
        [report
            .witness
            .map(|w| w.label(group))
            .unwrap_or_else(|| "none".to_string())],
    );
    Ok(Output::ok(render(cli, text, doc)))
}
