//! Subcommand dispatch for the `pbu` binary.
//!
//! Exit status: 0 on success or pass, 1 when verification or appraisal
//! produced findings, 2 on usage, parse, or I/O errors. All report output
//! goes to standard output as plain UTF-8, diagnostics to standard error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pbu_core::analysis::{
    corpus_frequencies, coupling_stats, extract_cross_references, reference_matrix, AreaDocument,
    MiningConfig, StemmerChoice,
};
use pbu_core::coverage::{
    appraisal_report, coverage_report, instance_census, record_exclusion, AppraisalVerdict,
    InstanceStatus,
};
use pbu_core::export::{
    containment_graph, export_dot, export_textual, export_xml, flow_graph, matrix_graph,
};
use pbu_core::mapping::{add_mapping, trace_to_process, trace_to_sources, verify_mappings};
use pbu_core::model::{normalize_conformance, ConformanceLevel, EdgeRelation};
use pbu_core::process::{
    decompose_activity, node_census, split_data_object, split_role, validate_process, ChildKind,
    SplitSide,
};
use pbu_core::versioning::{diff_versions, rebind_mapping, stale_mapping_report, VersionDiff};
use pbu_core::workspace::{
    append_decision, init_workspace, load_workspace, save_workspace, Workspace, WorkspaceLock,
};

#[derive(Parser)]
#[command(
    name = "pbu",
    about = "Process-based unification: map quality approaches to a unified process model",
    version,
    color = clap::ColorChoice::Never
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WorkspaceArg {
    /// Workspace directory; falls back to $PBU_WORKSPACE, then the current
    /// directory.
    #[arg(long)]
    workspace: Option<PathBuf>,
}

impl WorkspaceArg {
    fn dir(&self) -> PathBuf {
        if let Some(dir) = &self.workspace {
            return dir.clone();
        }
        if let Ok(dir) = std::env::var("PBU_WORKSPACE") {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        PathBuf::from(".")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotGraphKind {
    Containment,
    Flow,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StemArg {
    None,
    Porter,
}

#[derive(Subcommand)]
enum Command {
    /// Create an empty workspace directory.
    Init(WorkspaceArg),
    /// Check mapping consistency and process structure.
    Verify {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
    },
    /// Coverage of one approach: mapped / excluded / unaccounted counts.
    Coverage {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        approach: String,
        /// Restrict to one conformance level (shall, should, may).
        #[arg(long)]
        level: Option<String>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Per-instance appraisal evidence with a pass/fail verdict.
    Appraise {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        approach: String,
        /// Fail when an instance at or above this level is unaccounted.
        #[arg(long, value_name = "shall|should|may")]
        fail_level: String,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Follow the mapping from an instance or back from a process node.
    Trace {
        #[command(flatten)]
        ws: WorkspaceArg,
        /// Quality approach instance id.
        #[arg(long, conflicts_with = "from_node")]
        from_source: Option<String>,
        /// Process node id.
        #[arg(long)]
        from_node: Option<String>,
    },
    /// Instance counts per kind (--approach) or node counts (--process).
    Census {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long, conflicts_with = "process")]
        approach: Option<String>,
        #[arg(long)]
        process: Option<String>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Diff two versions of a quality approach by instance id.
    Diff {
        #[command(flatten)]
        ws: WorkspaceArg,
        /// The old snapshot.
        #[arg(long)]
        approach: String,
        /// The new snapshot.
        #[arg(long)]
        against: String,
        /// Workspace holding the new snapshot, when not the same directory.
        #[arg(long)]
        against_workspace: Option<PathBuf>,
    },
    /// Mappings broken or made reviewable by a version diff.
    Stale {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long)]
        approach: String,
        #[arg(long)]
        against: String,
        #[arg(long)]
        against_workspace: Option<PathBuf>,
    },
    /// Replace one instance id inside a mapping after a version bump.
    Rebind {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long)]
        mapping: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "pbu")]
        actor: String,
    },
    /// Convert an activity into a subprocess of sequenced children.
    Decompose {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long)]
        activity: String,
        /// Child as kind:name, e.g. activity:Collect forms. Repeatable.
        #[arg(long = "child", required = true)]
        children: Vec<String>,
    },
    /// Split a role's responsibilities into two roles.
    SplitRole {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long)]
        role: String,
        /// Zero-based responsibility indices that move to the new role.
        #[arg(long, value_delimiter = ',', required = true)]
        move_items: Vec<usize>,
        #[arg(long)]
        new_role: String,
        /// Performs edges (by target node id) that move to the new role.
        #[arg(long = "move-edge")]
        move_edges: Vec<String>,
    },
    /// Split a data object's items into two data objects.
    SplitData {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long)]
        object: String,
        #[arg(long, value_delimiter = ',', required = true)]
        move_items: Vec<usize>,
        #[arg(long)]
        new_object: String,
        /// Edges (node:input or node:output) that move to the new object.
        #[arg(long = "move-edge")]
        move_edges: Vec<String>,
    },
    /// Export a process as text tables, XML, or a DOT graph.
    Export {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        #[arg(long, conflicts_with_all = ["xml", "dot"])]
        textual: bool,
        #[arg(long, conflicts_with = "dot")]
        xml: bool,
        #[arg(long, value_enum)]
        dot: Option<DotGraphKind>,
    },
    /// Extract cross-references from a corpus of area documents.
    Xref {
        /// Directory of <area_id>.txt files.
        #[arg(long)]
        corpus: PathBuf,
        /// Area names, one per line.
        #[arg(long)]
        areas: PathBuf,
        /// Exclusion phrases, one per line.
        #[arg(long)]
        exclude: Option<PathBuf>,
        /// Print the (from, to, count) matrix instead of raw edges.
        #[arg(long)]
        matrix: bool,
        /// Print in/out reference rankings.
        #[arg(long)]
        rankings: bool,
        /// Print coupling pairs and the fraction with total over K.
        #[arg(long, value_name = "K")]
        coupling: Option<u64>,
        /// Render the reference matrix as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Word frequency table over a corpus file or directory.
    Wordfreq {
        #[arg(long)]
        corpus: PathBuf,
        /// Stopwords, one per line, case-insensitive.
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        min_len: usize,
        #[arg(long, value_enum, default_value = "none")]
        stem: StemArg,
        /// Print only the first N entries.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Append one entry to the decision ledger.
    LogDecision {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        actor: String,
        #[arg(long)]
        context: String,
        #[arg(long)]
        decision: String,
        #[arg(long)]
        rationale: String,
    },
    /// Map instances to process nodes.
    Map {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        process: String,
        /// Quality approach instance id. Repeatable.
        #[arg(long = "source", required = true)]
        sources: Vec<String>,
        /// Process node id. Repeatable.
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
        #[arg(long)]
        primary: Option<String>,
        #[arg(long, default_value = "")]
        note: String,
        #[arg(long, default_value = "pbu")]
        actor: String,
    },
    /// Record a deliberate exclusion from the mapping.
    Exclude {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long)]
        source: String,
        #[arg(long)]
        rationale: String,
    },
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help to stdout (exit 0) and usage errors to
            // stderr (exit 2).
            let _ = err.print();
            return if err.exit_code() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn fail<E: Display>(err: E) -> String {
    err.to_string()
}

fn load(dir: &Path) -> Result<Workspace, String> {
    load_workspace(dir).map_err(fail)
}

fn parse_level(raw: &str) -> Result<ConformanceLevel, String> {
    normalize_conformance(raw).map_err(fail)
}

fn read_lines(path: &Path) -> Result<Vec<String>, String> {
    let content =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn read_corpus(path: &Path) -> Result<Vec<AreaDocument>, String> {
    let mut docs = Vec::new();
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().map(|e| e == "txt").unwrap_or(false))
            .collect();
        files.sort();
        for file in files {
            let area_id = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            docs.push(AreaDocument { area_id, text });
        }
    } else {
        let area_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        docs.push(AreaDocument { area_id, text });
    }
    Ok(docs)
}

fn approach_snapshot<'a>(
    ws: &'a Workspace,
    other: &'a Option<Workspace>,
    id: &str,
) -> Result<&'a pbu_core::workspace::ApproachData, String> {
    let source = other.as_ref().unwrap_or(ws);
    source
        .approaches
        .get(id)
        .ok_or_else(|| format!("unknown quality approach {id:?}"))
}

fn compute_diff(
    ws: &Workspace,
    old_id: &str,
    new_id: &str,
    against_workspace: &Option<PathBuf>,
) -> Result<VersionDiff, String> {
    let other = match against_workspace {
        Some(dir) => Some(load(dir)?),
        None => None,
    };
    let old = ws
        .approaches
        .get(old_id)
        .ok_or_else(|| format!("unknown quality approach {old_id:?}"))?;
    let new = approach_snapshot(ws, &other, new_id)?;
    Ok(diff_versions(old, new))
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Init(ws) => {
            init_workspace(&ws.dir()).map_err(fail)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { ws, process } => {
            let workspace = load(&ws.dir())?;
            let mapping = verify_mappings(&workspace, &process).map_err(fail)?;
            let structure = validate_process(&workspace, &process).map_err(fail)?;
            let mut any = false;
            for finding in mapping.findings.iter().chain(structure.findings.iter()) {
                any = true;
                println!(
                    "{}\t{}\t{}\t{}",
                    finding.severity.as_str(),
                    finding.code,
                    finding.subject_ids.join(";"),
                    finding.message
                );
            }
            Ok(if any {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Coverage {
            ws,
            approach,
            level,
            format,
        } => {
            let workspace = load(&ws.dir())?;
            let level = level.as_deref().map(parse_level).transpose()?;
            let report = coverage_report(&workspace, &approach, level).map_err(fail)?;
            match format {
                Format::Tsv => {
                    for (lvl, counts) in &report.per_level {
                        println!(
                            "level\t{lvl}\t{}\t{}\t{}\t{}\t{}\t{}",
                            counts.total,
                            counts.mapped,
                            counts.excluded,
                            counts.unaccounted,
                            counts.mapped_ratio(),
                            counts.accounted_ratio()
                        );
                    }
                    for (kind, counts) in &report.per_kind {
                        println!(
                            "kind\t{kind}\t{}\t{}\t{}\t{}\t{}\t{}",
                            counts.total,
                            counts.mapped,
                            counts.excluded,
                            counts.unaccounted,
                            counts.mapped_ratio(),
                            counts.accounted_ratio()
                        );
                    }
                    let t = &report.total;
                    println!(
                        "total\t\t{}\t{}\t{}\t{}\t{}\t{}",
                        t.total,
                        t.mapped,
                        t.excluded,
                        t.unaccounted,
                        t.mapped_ratio(),
                        t.accounted_ratio()
                    );
                }
                Format::Text => {
                    println!("Coverage of {}", report.approach_id);
                    if let Some(filter) = report.level_filter {
                        println!("Restricted to conformance level: {filter}");
                    }
                    let t = &report.total;
                    println!(
                        "Instances: {} total, {} mapped, {} excluded, {} unaccounted",
                        t.total, t.mapped, t.excluded, t.unaccounted
                    );
                    println!("Mapped ratio: {}", t.mapped_ratio());
                    println!("Accounted ratio: {}", t.accounted_ratio());
                    for (lvl, counts) in &report.per_level {
                        println!(
                            "  {lvl}: {}/{} mapped, {} excluded, {} unaccounted",
                            counts.mapped, counts.total, counts.excluded, counts.unaccounted
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Appraise {
            ws,
            approach,
            fail_level,
            format,
        } => {
            let workspace = load(&ws.dir())?;
            let level = parse_level(&fail_level)?;
            let report = appraisal_report(&workspace, &approach, level).map_err(fail)?;
            match format {
                Format::Tsv => {
                    for row in &report.rows {
                        println!(
                            "{}\t{}\t{}\t{}",
                            row.qa_id,
                            row.conformance,
                            row.status.as_str(),
                            row.targets.join(";")
                        );
                    }
                    println!(
                        "verdict\t{}",
                        if report.verdict == AppraisalVerdict::Pass {
                            "pass"
                        } else {
                            "fail"
                        }
                    );
                }
                Format::Text => {
                    let unaccounted = report
                        .rows
                        .iter()
                        .filter(|r| r.status == InstanceStatus::Unaccounted)
                        .count();
                    println!(
                        "Appraisal of {} at fail level {}: {}",
                        report.approach_id,
                        report.fail_level,
                        if report.verdict == AppraisalVerdict::Pass {
                            "pass"
                        } else {
                            "fail"
                        }
                    );
                    println!(
                        "{} instances, {} unaccounted",
                        report.rows.len(),
                        unaccounted
                    );
                }
            }
            Ok(if report.verdict == AppraisalVerdict::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Trace {
            ws,
            from_source,
            from_node,
        } => {
            let workspace = load(&ws.dir())?;
            match (from_source, from_node) {
                (Some(qa_id), None) => {
                    let nodes = trace_to_process(&workspace, &qa_id).map_err(fail)?;
                    for node in nodes {
                        for (pid, process) in &workspace.processes {
                            if process.nodes.contains_key(&node) {
                                println!("{pid}\t{node}");
                            }
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(node_id)) => {
                    let sources = trace_to_sources(&workspace, &node_id).map_err(fail)?;
                    for (aid, qa_ids) in sources {
                        for qa_id in qa_ids {
                            println!("{aid}\t{qa_id}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err("exactly one of --from-source and --from-node is required".to_string()),
            }
        }

        Command::Census {
            ws,
            approach,
            process,
            format,
        } => {
            let workspace = load(&ws.dir())?;
            match (approach, process) {
                (Some(aid), None) => {
                    let census = instance_census(&workspace, &aid).map_err(fail)?;
                    match format {
                        Format::Tsv => {
                            for (kind, count) in &census.by_kind {
                                println!("{kind}\t{count}");
                            }
                            println!("total\t{}", census.total);
                        }
                        Format::Text => {
                            println!("{} instances in {}", census.total, census.approach_id);
                            for (kind, count) in &census.by_kind {
                                println!("  {kind}: {count}");
                            }
                        }
                    }
                }
                (None, Some(pid)) => {
                    let census = node_census(&workspace, &pid).map_err(fail)?;
                    match format {
                        Format::Tsv => {
                            for (kind, count) in &census.by_kind {
                                println!("{kind}\t{count}");
                            }
                            println!("criteria items\t{}", census.criteria_items);
                            println!("total\t{}", census.total);
                        }
                        Format::Text => {
                            println!("{} nodes in process {pid}", census.total);
                            for (kind, count) in &census.by_kind {
                                println!("  {kind}: {count}");
                            }
                            println!("  criteria items: {}", census.criteria_items);
                        }
                    }
                }
                _ => return Err("exactly one of --approach and --process is required".to_string()),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Diff {
            ws,
            approach,
            against,
            against_workspace,
        } => {
            let workspace = load(&ws.dir())?;
            let diff = compute_diff(&workspace, &approach, &against, &against_workspace)?;
            for id in &diff.added {
                println!("added\t{id}\t");
            }
            for id in &diff.removed {
                println!("removed\t{id}\t");
            }
            for (id, fields) in &diff.modified {
                let fields: Vec<&str> = fields.iter().map(|f| f.as_str()).collect();
                println!("modified\t{id}\t{}", fields.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Stale {
            ws,
            process,
            approach,
            against,
            against_workspace,
        } => {
            let workspace = load(&ws.dir())?;
            let diff = compute_diff(&workspace, &approach, &against, &against_workspace)?;
            let report = stale_mapping_report(&workspace, &process, &diff).map_err(fail)?;
            for (mapping, qa_id) in &report.broken {
                println!("broken\t{mapping}\t{qa_id}");
            }
            for (mapping, qa_id) in &report.review {
                println!("review\t{mapping}\t{qa_id}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Rebind {
            ws,
            process,
            mapping,
            from,
            to,
            actor,
        } => {
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            rebind_mapping(&mut workspace, &process, &mapping, &from, &to).map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            append_decision(
                &dir,
                &actor,
                &format!("rebind/{process}/{mapping}"),
                &format!("rebound {from:?} to {to:?}"),
                "stale mapping remediation after a version change",
            )
            .map_err(fail)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Decompose {
            ws,
            process,
            activity,
            children,
        } => {
            let mut parsed = Vec::new();
            for child in &children {
                let (kind, name) = child
                    .split_once(':')
                    .ok_or_else(|| format!("child {child:?} is not kind:name"))?;
                let kind = match kind {
                    "activity" => ChildKind::Activity,
                    "gateway" => ChildKind::Gateway,
                    other => return Err(format!("unknown child kind {other:?}")),
                };
                parsed.push((kind, name.to_string()));
            }
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            decompose_activity(&mut workspace, &process, &activity, &parsed).map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::SplitRole {
            ws,
            process,
            role,
            move_items,
            new_role,
            move_edges,
        } => {
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            let moved: BTreeSet<String> = move_edges.into_iter().collect();
            let mut reassignment: BTreeMap<String, SplitSide> = BTreeMap::new();
            if let Some(data) = workspace.processes.get(&process) {
                for edge in &data.edges {
                    if edge.relation == EdgeRelation::Performs && edge.from_id == role {
                        let side = if moved.contains(&edge.to_id) {
                            SplitSide::New
                        } else {
                            SplitSide::Original
                        };
                        reassignment.insert(edge.to_id.clone(), side);
                    }
                }
            }
            let indices: BTreeSet<usize> = move_items.into_iter().collect();
            let new_id = split_role(
                &mut workspace,
                &process,
                &role,
                &indices,
                &new_role,
                &reassignment,
            )
            .map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            println!("{new_id}");
            Ok(ExitCode::SUCCESS)
        }

        Command::SplitData {
            ws,
            process,
            object,
            move_items,
            new_object,
            move_edges,
        } => {
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            let mut moved: BTreeSet<(String, EdgeRelation)> = BTreeSet::new();
            for spec in &move_edges {
                let (node, relation) = spec
                    .split_once(':')
                    .ok_or_else(|| format!("edge {spec:?} is not node:input|output"))?;
                let relation = match relation {
                    "input" => EdgeRelation::Input,
                    "output" => EdgeRelation::Output,
                    other => return Err(format!("unknown edge relation {other:?}")),
                };
                moved.insert((node.to_string(), relation));
            }
            let mut reassignment: BTreeMap<(String, EdgeRelation), SplitSide> = BTreeMap::new();
            if let Some(data) = workspace.processes.get(&process) {
                for edge in &data.edges {
                    let key = match edge.relation {
                        EdgeRelation::Input if edge.from_id == object => {
                            (edge.to_id.clone(), EdgeRelation::Input)
                        }
                        EdgeRelation::Output if edge.to_id == object => {
                            (edge.from_id.clone(), EdgeRelation::Output)
                        }
                        _ => continue,
                    };
                    let side = if moved.contains(&key) {
                        SplitSide::New
                    } else {
                        SplitSide::Original
                    };
                    reassignment.insert(key, side);
                }
            }
            let indices: BTreeSet<usize> = move_items.into_iter().collect();
            let new_id = split_data_object(
                &mut workspace,
                &process,
                &object,
                &indices,
                &new_object,
                &reassignment,
            )
            .map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            println!("{new_id}");
            Ok(ExitCode::SUCCESS)
        }

        Command::Export {
            ws,
            process,
            textual,
            xml,
            dot,
        } => {
            let workspace = load(&ws.dir())?;
            let output = if xml {
                export_xml(&workspace, &process).map_err(fail)?
            } else if let Some(kind) = dot {
                let graph = match kind {
                    DotGraphKind::Containment => {
                        containment_graph(&workspace, &process).map_err(fail)?
                    }
                    DotGraphKind::Flow => flow_graph(&workspace, &process).map_err(fail)?,
                };
                export_dot(&graph)
            } else {
                // --textual is the default exporter
                let _ = textual;
                export_textual(&workspace, &process).map_err(fail)?
            };
            print!("{output}");
            Ok(ExitCode::SUCCESS)
        }

        Command::Xref {
            corpus,
            areas,
            exclude,
            matrix,
            rankings,
            coupling,
            dot,
        } => {
            let docs = read_corpus(&corpus)?;
            let area_names = read_lines(&areas)?;
            let exclusions = match exclude {
                Some(path) => read_lines(&path)?,
                None => Vec::new(),
            };
            let edges = extract_cross_references(&docs, &area_names, &exclusions);
            let reference = reference_matrix(&edges);
            if dot {
                print!("{}", export_dot(&matrix_graph(&reference.cells)));
                return Ok(ExitCode::SUCCESS);
            }
            if let Some(k) = coupling {
                let stats = coupling_stats(&reference, k);
                for pair in &stats.pairs {
                    println!(
                        "{}\t{}\t{}\t{}\t{}",
                        pair.area_a,
                        pair.area_b,
                        pair.a_to_b,
                        pair.b_to_a,
                        pair.total()
                    );
                }
                println!("fraction_over_{k}\t{}", stats.fraction_over_k);
                return Ok(ExitCode::SUCCESS);
            }
            if matrix {
                for ((from, to), count) in &reference.cells {
                    println!("{from}\t{to}\t{count}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            if rankings {
                for (area, count) in &reference.in_ranking {
                    println!("in\t{area}\t{count}");
                }
                for (area, count) in &reference.out_ranking {
                    println!("out\t{area}\t{count}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            for edge in &edges {
                println!("{}\t{}\t{}", edge.from_area, edge.to_area, edge.count);
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Wordfreq {
            corpus,
            stopwords,
            min_len,
            stem,
            top,
        } => {
            let docs = read_corpus(&corpus)?;
            let stopwords = match stopwords {
                Some(path) => read_lines(&path)?,
                None => Vec::new(),
            };
            let config = MiningConfig {
                stopwords,
                min_token_length: min_len,
                stemmer: match stem {
                    StemArg::None => StemmerChoice::None,
                    StemArg::Porter => StemmerChoice::Porter,
                },
            };
            let table = corpus_frequencies(&docs, &config);
            let limit = top.unwrap_or(table.entries.len());
            for (token, count) in table.entries.iter().take(limit) {
                println!("{token}\t{count}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::LogDecision {
            ws,
            actor,
            context,
            decision,
            rationale,
        } => {
            append_decision(&ws.dir(), &actor, &context, &decision, &rationale).map_err(fail)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Map {
            ws,
            process,
            sources,
            targets,
            primary,
            note,
            actor,
        } => {
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            let qa_ids: BTreeSet<String> = sources.into_iter().collect();
            let node_ids: BTreeSet<String> = targets.into_iter().collect();
            let added = add_mapping(
                &mut workspace,
                &process,
                &qa_ids,
                &node_ids,
                primary.as_deref(),
                &note,
            )
            .map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            for exclusion in &added.retired_exclusions {
                append_decision(
                    &dir,
                    &actor,
                    &format!("map/{process}/{}", added.mapping_id),
                    &format!(
                        "retired the exclusion of {:?}; mapped supersedes excluded",
                        exclusion.qa_id
                    ),
                    &format!("previous rationale: {}", exclusion.rationale),
                )
                .map_err(fail)?;
            }
            println!("{}", added.mapping_id);
            Ok(ExitCode::SUCCESS)
        }

        Command::Exclude {
            ws,
            source,
            rationale,
        } => {
            let dir = ws.dir();
            let _lock = WorkspaceLock::acquire(&dir).map_err(fail)?;
            let mut workspace = load(&dir)?;
            record_exclusion(&mut workspace, &source, &rationale).map_err(fail)?;
            save_workspace(&workspace, &dir).map_err(fail)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
