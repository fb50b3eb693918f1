//! `sepref` — command-line front end for the finite separation-reflection
//! workbench.
//!
//! Instances travel as JSON documents (`kind`, `points`, `opens`, and for
//! monoids a `table`); every command accepts `--json` for canonical
//! machine-readable output. Exit codes: 0 on success or a holding verdict,
//! 1 when a law fails or a counterexample is found, 2 on usage or
//! validation errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepref_core::instance::{
    digest, doc_from_monoid, doc_from_space, doc_from_table, instance_from_doc, to_canonical_json,
    InstanceDoc, ParsedInstance,
};
use sepref_core::laws::{LawId, LawInstance, LawOptions, Selection, Verdict};
use sepref_core::reflections::{
    certify_universal, reflect_monoid, reflect_space, ReflectionArrow, SeparationAxiom,
};
use sepref_core::{
    enum_spaces, enum_tables, enum_topmonoids, run_suite, search, Congruence, Error, FiniteSpace,
    Partition, ProfileFilter, SearchSpec, SpaceMap, TopMonoid,
};

#[derive(Parser)]
#[command(
    name = "sepref",
    version,
    about = "Separation reflections, quotients, and executable laws for finite topologized monoids"
)]
struct Cli {
    /// Emit canonical JSON instead of prose.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance file and summarize its structure.
    Check { file: PathBuf },
    /// Compute a separation reflection (t0, t1, t2, t3, regular — or c0..c3, cr).
    Reflect {
        file: PathBuf,
        #[arg(long)]
        axiom: String,
        /// Also certify the universal property against every small target.
        #[arg(long)]
        certify: bool,
        /// Largest target size the certification sweeps.
        #[arg(long, default_value_t = 3)]
        max_target_size: usize,
    },
    /// Quotient an instance by a partition of its points.
    Quotient {
        file: PathBuf,
        /// Blocks as comma-separated names joined by '|', e.g. "a,b|c".
        #[arg(long)]
        blocks: String,
    },
    /// Product of two instances of the same kind.
    Product { left: PathBuf, right: PathBuf },
    /// Size of the largest pairwise-disjoint family of nonempty open sets.
    Cellularity { file: PathBuf },
    /// Coarsen to the topology generated by the regular open sets.
    Semiregularize { file: PathBuf },
    /// Run executable laws against an instance.
    Verify {
        file: PathBuf,
        /// "all" or a comma-separated list such as "L1,L3".
        #[arg(long, default_value = "all")]
        laws: String,
        /// Back HOLDS verdicts of reflection laws with certification.
        #[arg(long)]
        certify: bool,
        /// Largest target size the certification sweeps.
        #[arg(long, default_value_t = 3)]
        max_target_size: usize,
    },
    /// Sweep small instances for a counterexample to a law.
    Search {
        #[arg(long)]
        law: String,
        /// Largest carrier size swept.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Hypothesis flags to drop, comma separated.
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        /// Cap on the number of instances examined.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Stream generated instances in canonical order.
    Enum {
        #[arg(long)]
        kind: EnumKind,
        #[arg(long)]
        size: usize,
        /// Profile flags to require, comma separated (monoids only):
        /// monoid, semitopological, topological, open_shifts,
        /// one_sided_open_shifts, cancellative.
        #[arg(long, value_delimiter = ',')]
        filter: Vec<String>,
        /// Emit at most this many instances.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Spaces,
    Tables,
    Monoids,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Ordinary errors become exit code 2 with a diagnostic; verdict-bearing
/// commands return their own code.
fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check { file } => check(cli, file),
        Command::Reflect {
            file,
            axiom,
            certify,
            max_target_size,
        } => reflect(cli, file, axiom, *certify, *max_target_size),
        Command::Quotient { file, blocks } => quotient(cli, file, blocks),
        Command::Product { left, right } => product(cli, left, right),
        Command::Cellularity { file } => cellularity(cli, file),
        Command::Semiregularize { file } => semiregularize(cli, file),
        Command::Verify {
            file,
            laws,
            certify,
            max_target_size,
        } => verify(cli, file, laws, *certify, *max_target_size),
        Command::Search {
            law,
            max_size,
            drop,
            budget,
        } => run_search(cli, law, *max_size, drop, *budget),
        Command::Enum {
            kind,
            size,
            filter,
            limit,
        } => run_enum(cli, *kind, *size, filter, *limit),
    }
}

// ---------------------------------------------------------------------
// Instance loading with located diagnostics
// ---------------------------------------------------------------------

/// Point the user at the first offending field of a structurally invalid
/// document.
fn field_path(doc: &InstanceDoc, error: &Error) -> String {
    let locate_name = |name: &str| -> Option<String> {
        for (i, open) in doc.opens.iter().enumerate() {
            if let Some(j) = open.iter().position(|p| p == name) {
                return Some(format!("$.opens[{i}][{j}]"));
            }
        }
        if let Some(table) = &doc.table {
            for (i, row) in table.iter().enumerate() {
                if let Some(j) = row.iter().position(|p| p == name) {
                    return Some(format!("$.table[{i}][{j}]"));
                }
            }
        }
        None
    };
    match error {
        Error::DuplicatePoint(_) => "$.points".to_string(),
        Error::TopologyAxiomViolation(_) => "$.opens".to_string(),
        Error::AssociativityViolation { .. } => "$.table".to_string(),
        Error::ForeignPoint(name) => locate_name(name).unwrap_or_else(|| "$".to_string()),
        Error::Document(_) => "$".to_string(),
        _ => "$".to_string(),
    }
}

fn load_instance(path: &Path) -> Result<ParsedInstance, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: InstanceDoc = serde_json::from_str(&text).map_err(|e| {
        format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    instance_from_doc(&doc)
        .map_err(|e| format!("{}: {} at {}", path.display(), e, field_path(&doc, &e)))
}

// ---------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------

fn emit(cli: &Cli, payload: &Value, prose: String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string(payload).expect("reports serialize")
        );
    } else {
        print!("{prose}");
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn morphism_pairs(map: &SpaceMap) -> Vec<(String, String)> {
    map.assignment()
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            (
                map.source().points()[i].clone(),
                map.target().points()[j].clone(),
            )
        })
        .collect()
}

fn profile_value(tm: &TopMonoid) -> Value {
    serde_json::to_value(tm.profile()).expect("profiles serialize")
}

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

fn check(cli: &Cli, file: &Path) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let doc = instance.doc();
    let space = instance.space();
    let flags = space.separation_profile();
    let mut payload = json!({
        "kind": instance.kind(),
        "digest": digest(&doc),
        "points": space.n(),
        "opens": space.opens().len(),
        "separation": serde_json::to_value(flags).expect("flags serialize"),
        "cellularity": space.cellularity(),
        "instance": doc,
    });
    let mut prose = String::new();
    let _ = writeln!(prose, "kind: {}", instance.kind());
    let _ = writeln!(
        prose,
        "points ({}): {}",
        space.n(),
        space.points().join(", ")
    );
    let _ = writeln!(prose, "open sets: {}", space.opens().len());
    let _ = writeln!(
        prose,
        "separation: t0 {} | t1 {} | t2 {} | t3 {} | regular {} | quasiregular {}",
        yes_no(flags.t0),
        yes_no(flags.t1),
        yes_no(flags.t2),
        yes_no(flags.t3),
        yes_no(flags.regular),
        yes_no(flags.quasiregular),
    );
    if let ParsedInstance::Monoid(tm) = &instance {
        payload["profile"] = profile_value(tm);
        let p = tm.profile();
        let _ = writeln!(
            prose,
            "profile: semitopological {} | topological {} | open shifts {} (left {}, right {}) | cancellative {}",
            yes_no(p.semitopological),
            yes_no(p.topological),
            yes_no(p.open_shifts),
            yes_no(p.left_open_shifts),
            yes_no(p.right_open_shifts),
            yes_no(p.cancellative),
        );
    }
    let _ = writeln!(prose, "cellularity: {}", space.cellularity());
    let _ = writeln!(prose, "digest: {}", digest(&doc));
    emit(cli, &payload, prose);
    Ok(ExitCode::SUCCESS)
}

fn reflect(
    cli: &Cli,
    file: &Path,
    axiom: &str,
    certify: bool,
    max_target_size: usize,
) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let axiom = SeparationAxiom::from_str(axiom).map_err(|e| e.to_string())?;
    let (arrow, source_doc) = match &instance {
        ParsedInstance::Space(space) => (
            ReflectionArrow::from(reflect_space(space, axiom).map_err(|e| e.to_string())?),
            doc_from_space(space),
        ),
        ParsedInstance::Monoid(tm) => (
            ReflectionArrow::from(reflect_monoid(tm, axiom).map_err(|e| e.to_string())?),
            doc_from_monoid(tm),
        ),
    };
    let (target_doc, map, blocks, target_profile) = match &arrow {
        ReflectionArrow::Space(r) => (
            doc_from_space(r.target()),
            r.morphism(),
            r.partition().block_names(),
            None,
        ),
        ReflectionArrow::Monoid(r) => (
            doc_from_monoid(r.target()),
            r.morphism(),
            r.partition().block_names(),
            Some(profile_value(r.target())),
        ),
    };
    let pairs = morphism_pairs(map);
    let mut payload = json!({
        "axiom": axiom,
        "source": source_doc,
        "target": target_doc,
        "target_digest": digest(&target_doc),
        "morphism": pairs
            .iter()
            .map(|(a, b)| json!([a, b]))
            .collect::<Vec<_>>(),
        "blocks": blocks,
    });
    if let Some(profile) = target_profile {
        payload["target_profile"] = profile;
    }
    let mut prose = String::new();
    let _ = writeln!(prose, "axiom: {axiom}");
    let _ = writeln!(prose, "blocks: {}", blocks.join(" "));
    let _ = writeln!(prose, "target: {}", to_canonical_json(&target_doc));
    let _ = writeln!(
        prose,
        "morphism: {}",
        pairs
            .iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let mut code = ExitCode::SUCCESS;
    if certify {
        let report = certify_universal(&arrow, max_target_size).map_err(|e| e.to_string())?;
        let _ = writeln!(
            prose,
            "certification: {} ({} targets, {} maps, bound {})",
            if report.pass { "PASS" } else { "FAIL" },
            report.targets_checked,
            report.maps_checked,
            report.bound,
        );
        if !report.pass {
            code = ExitCode::from(1);
        }
        payload["certification"] = serde_json::to_value(&report).expect("reports serialize");
    }
    emit(cli, &payload, prose);
    Ok(code)
}

fn parse_blocks(space: &FiniteSpace, blocks: &str) -> Result<Partition, String> {
    let mut masks = Vec::new();
    for block in blocks.split('|') {
        let names: Vec<String> = block
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mask = space
            .subset_from_names(&names)
            .map_err(|e| format!("--blocks: {e}"))?;
        masks.push(mask);
    }
    Partition::from_blocks(space.points().to_vec(), masks)
        .map_err(|e| format!("--blocks: {e}"))
}

fn quotient(cli: &Cli, file: &Path, blocks: &str) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let partition = parse_blocks(instance.space(), blocks)?;
    let (target_doc, map, target_profile) = match &instance {
        ParsedInstance::Space(space) => {
            let (target, map) = space.quotient(&partition).map_err(|e| e.to_string())?;
            (doc_from_space(&target), map, None)
        }
        ParsedInstance::Monoid(tm) => {
            let congruence =
                Congruence::new(tm.algebra(), partition.clone()).map_err(|e| e.to_string())?;
            let (target, map) = tm.quotient(&congruence).map_err(|e| e.to_string())?;
            (doc_from_monoid(&target), map, Some(profile_value(&target)))
        }
    };
    let flags = map.profile();
    let mut payload = json!({
        "target": target_doc,
        "target_digest": digest(&target_doc),
        "blocks": partition.block_names(),
        "map": serde_json::to_value(flags).expect("flags serialize"),
    });
    if let Some(profile) = target_profile {
        payload["target_profile"] = profile;
    }
    let mut prose = String::new();
    let _ = writeln!(prose, "blocks: {}", partition.block_names().join(" "));
    let _ = writeln!(prose, "target: {}", to_canonical_json(&target_doc));
    let _ = writeln!(
        prose,
        "projection: continuous {} | open {} | closed {} | quotient {}",
        yes_no(flags.continuous),
        yes_no(flags.open),
        yes_no(flags.closed),
        yes_no(flags.quotient),
    );
    emit(cli, &payload, prose);
    Ok(ExitCode::SUCCESS)
}

fn product(cli: &Cli, left: &Path, right: &Path) -> Result<ExitCode, String> {
    let a = load_instance(left)?;
    let b = load_instance(right)?;
    let (doc, profile) = match (&a, &b) {
        (ParsedInstance::Space(x), ParsedInstance::Space(y)) => (
            doc_from_space(&x.product(y).map_err(|e| e.to_string())?),
            None,
        ),
        (ParsedInstance::Monoid(x), ParsedInstance::Monoid(y)) => {
            let p = x.product(y).map_err(|e| e.to_string())?;
            (doc_from_monoid(&p), Some(profile_value(&p)))
        }
        _ => {
            return Err(format!(
                "cannot multiply a {} by a {}",
                a.kind(),
                b.kind()
            ))
        }
    };
    let mut payload = json!({
        "product": doc,
        "digest": digest(&doc),
    });
    if let Some(profile) = profile {
        payload["profile"] = profile;
    }
    let prose = format!("{}\n", to_canonical_json(&doc));
    emit(cli, &payload, prose);
    Ok(ExitCode::SUCCESS)
}

fn cellularity(cli: &Cli, file: &Path) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let c = instance.space().cellularity();
    emit(
        cli,
        &json!({ "cellularity": c }),
        format!("cellularity: {c}\n"),
    );
    Ok(ExitCode::SUCCESS)
}

fn semiregularize(cli: &Cli, file: &Path) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let (doc, profile) = match &instance {
        ParsedInstance::Space(space) => (doc_from_space(&space.semiregularization()), None),
        ParsedInstance::Monoid(tm) => {
            let coarsened =
                TopMonoid::assemble(tm.space().semiregularization(), tm.algebra().clone())
                    .map_err(|e| e.to_string())?;
            (doc_from_monoid(&coarsened), Some(profile_value(&coarsened)))
        }
    };
    let mut payload = json!({
        "semiregularization": doc,
        "digest": digest(&doc),
    });
    if let Some(profile) = profile {
        payload["profile"] = profile;
    }
    let prose = format!("{}\n", to_canonical_json(&doc));
    emit(cli, &payload, prose);
    Ok(ExitCode::SUCCESS)
}

fn parse_selection(laws: &str) -> Result<Selection, String> {
    if laws.trim().eq_ignore_ascii_case("all") {
        return Ok(Selection::All);
    }
    let mut ids = Vec::new();
    for part in laws.split(',') {
        let id = LawId::from_str(part).map_err(|e| e.to_string())?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err("--laws: no law selected".to_string());
    }
    Ok(Selection::Ids(ids))
}

fn verify(
    cli: &Cli,
    file: &Path,
    laws: &str,
    certify: bool,
    max_target_size: usize,
) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let selection = parse_selection(laws)?;
    let options = LawOptions {
        certify,
        certify_bound: max_target_size,
    };
    let law_instance = match &instance {
        ParsedInstance::Space(space) => LawInstance::Space(space),
        ParsedInstance::Monoid(tm) => LawInstance::Monoid(tm),
    };
    let reports =
        run_suite(&law_instance, &selection, &options).map_err(|e| e.to_string())?;
    let failures = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fails)
        .count();
    let payload = serde_json::to_value(&reports).expect("reports serialize");
    let mut prose = String::new();
    for report in &reports {
        let detail = match report.verdict {
            Verdict::HypothesisNotMet => format!(
                "missing {}",
                report.failed_hypothesis.as_deref().unwrap_or("?")
            ),
            Verdict::Fails => "see witness in --json output".to_string(),
            Verdict::Holds => report.note.clone().unwrap_or_default(),
        };
        let verdict = match report.verdict {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::HypothesisNotMet => "HYPOTHESIS_NOT_MET",
        };
        let _ = writeln!(
            prose,
            "{:<4} {:<19} {}",
            report.law_id.to_string(),
            verdict,
            detail
        );
    }
    let _ = writeln!(
        prose,
        "{} checked, {} failing",
        reports.len(),
        failures
    );
    emit(cli, &payload, prose);
    Ok(if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_search(
    cli: &Cli,
    law: &str,
    max_size: usize,
    drop: &[String],
    budget: Option<usize>,
) -> Result<ExitCode, String> {
    let law = LawId::from_str(law).map_err(|e| e.to_string())?;
    let spec = SearchSpec {
        law,
        max_size,
        drop: drop.to_vec(),
        budget,
    };
    let outcome = search(&spec).map_err(|e| e.to_string())?;
    let payload = json!({
        "law": law,
        "examined": outcome.examined,
        "complete": outcome.complete,
        "counterexample": outcome
            .counterexample
            .as_ref()
            .map(|r| serde_json::to_value(r).expect("reports serialize")),
    });
    let mut prose = String::new();
    match &outcome.counterexample {
        Some(report) => {
            let _ = writeln!(
                prose,
                "counterexample found after {} instances",
                outcome.examined
            );
            if let Some(witness) = &report.witness {
                let _ = writeln!(
                    prose,
                    "witness: {}",
                    serde_json::to_string(witness).expect("witnesses serialize")
                );
            }
        }
        None => {
            let _ = writeln!(
                prose,
                "no counterexample; examined {} instances ({})",
                outcome.examined,
                if outcome.complete {
                    "exhaustive"
                } else {
                    "budget exhausted"
                }
            );
        }
    }
    emit(cli, &payload, prose);
    Ok(if outcome.counterexample.is_some() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_filter(flags: &[String]) -> Result<ProfileFilter, String> {
    let mut filter = ProfileFilter::default();
    for flag in flags {
        match flag.trim() {
            "monoid" => filter.monoid = Some(true),
            "semitopological" => filter.semitopological = Some(true),
            "topological" => filter.topological = Some(true),
            "open_shifts" => filter.open_shifts = Some(true),
            "one_sided_open_shifts" => filter.one_sided_open_shifts = Some(true),
            "cancellative" => filter.cancellative = Some(true),
            other => {
                return Err(format!(
                    "--filter: unknown flag `{other}` (expected monoid, semitopological, \
                     topological, open_shifts, one_sided_open_shifts, cancellative)"
                ))
            }
        }
    }
    Ok(filter)
}

fn run_enum(
    cli: &Cli,
    kind: EnumKind,
    size: usize,
    filter: &[String],
    limit: Option<usize>,
) -> Result<ExitCode, String> {
    let cap = limit.unwrap_or(usize::MAX);
    let docs: Vec<Value> = match kind {
        EnumKind::Spaces => {
            if !filter.is_empty() {
                return Err("--filter applies only to --kind monoids".to_string());
            }
            enum_spaces(size)
                .map_err(|e| e.to_string())?
                .iter()
                .take(cap)
                .map(|s| serde_json::to_value(doc_from_space(s)).expect("docs serialize"))
                .collect()
        }
        EnumKind::Tables => {
            if !filter.is_empty() {
                return Err("--filter applies only to --kind monoids".to_string());
            }
            enum_tables(size)
                .map_err(|e| e.to_string())?
                .iter()
                .take(cap)
                .map(|t| {
                    // A bare table has no topology; pair it with the
                    // discrete one so the document parses as an instance.
                    let points = t.points().to_vec();
                    json!({
                        "points": points,
                        "table": doc_from_table(
                            &FiniteSpace::make_space(points.clone(), &discrete_opens(&points))
                                .expect("discrete topologies are valid"),
                            t,
                        ),
                    })
                })
                .collect()
        }
        EnumKind::Monoids => {
            let filter = parse_filter(filter)?;
            enum_topmonoids(size, filter)
                .map_err(|e| e.to_string())?
                .take(cap)
                .map(|tm| serde_json::to_value(doc_from_monoid(&tm)).expect("docs serialize"))
                .collect()
        }
    };
    let payload = json!({
        "count": docs.len(),
        "instances": docs,
    });
    let mut prose = String::new();
    for doc in payload["instances"].as_array().expect("built above") {
        let _ = writeln!(
            prose,
            "{}",
            serde_json::to_string(doc).expect("docs serialize")
        );
    }
    let _ = writeln!(prose, "count: {}", payload["count"]);
    emit(cli, &payload, prose);
    Ok(ExitCode::SUCCESS)
}

/// Every subset of the carrier, as name lists — the discrete topology.
fn discrete_opens(points: &[String]) -> Vec<Vec<String>> {
    let n = points.len();
    (0u64..(1 << n))
        .map(|bits| {
            (0..n)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| points[i].clone())
                .collect()
        })
        .collect()
}
