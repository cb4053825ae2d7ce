//! End-to-end checks of the command line surface: exit codes, output
//! determinism, and the mutating workflows against a scratch copy of the
//! fixture.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/peer-review")
}

fn pbu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbu"))
        .args(args)
        .output()
        .expect("spawn pbu")
}

fn pbu_in(dir: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--workspace", dir.to_str().unwrap()];
    // subcommand first, then the workspace flag
    let mut command = vec![args[0]];
    command.append(&mut full);
    command.extend_from_slice(&args[1..]);
    pbu(&command)
}

fn copy_fixture(target: &Path) {
    fn copy_tree(from: &Path, to: &Path) {
        fs::create_dir_all(to).unwrap();
        for entry in fs::read_dir(from).unwrap() {
            let entry = entry.unwrap();
            let dest = to.join(entry.file_name());
            if entry.path().is_dir() {
                copy_tree(&entry.path(), &dest);
            } else {
                fs::copy(entry.path(), &dest).unwrap();
            }
        }
    }
    copy_tree(&fixture_dir(), target);
}

#[test]
fn unknown_subcommand_prints_usage_and_exits_2() {
    let output = pbu(&["frobnicate"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.to_lowercase().contains("usage"), "stderr: {stderr}");
}

#[test]
fn unknown_flag_exits_2() {
    let output = pbu(&["census", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_on_pristine_fixture_exits_0_with_no_output() {
    let output = pbu_in(&fixture_dir(), &["verify", "--process", "peer-review"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    assert!(output.stdout.is_empty());
}

#[test]
fn verify_reports_findings_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(dir.path());
    // Duplicate an existing mapping record by hand.
    let mappings_path = dir.path().join("mappings/peer-review.tsv");
    let mut content = fs::read_to_string(&mappings_path).unwrap();
    let record = content.lines().nth(1).unwrap().to_string();
    let duplicate = record.replacen("m-0001", "m-9999", 1);
    content.push_str(&duplicate);
    content.push('\n');
    fs::write(&mappings_path, content).unwrap();

    let output = pbu_in(dir.path(), &["verify", "--process", "peer-review"]);
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("DuplicateMapping"), "stdout: {stdout}");
}

#[test]
fn census_output_is_deterministic() {
    let first = pbu_in(&fixture_dir(), &["census", "--approach", "ieee-1028"]);
    let second = pbu_in(&fixture_dir(), &["census", "--approach", "ieee-1028"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn trace_from_source_and_back() {
    let output = pbu_in(
        &fixture_dir(),
        &["trace", "--from-source", "IEEE1028-2008 6.5.3 1"],
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&output.stdout),
        "peer-review\tassign-roles\n"
    );

    let output = pbu_in(&fixture_dir(), &["trace", "--from-node", "assign-roles"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        rows,
        vec![
            "cmmi-dev-12\tVER GP 2.4",
            "cmmi-dev-12\tVER GP 2.7",
            "ieee-1028\tIEEE1028-2008 6.5.3 1",
        ]
    );
}

#[test]
fn trace_unknown_source_exits_2() {
    let output = pbu_in(&fixture_dir(), &["trace", "--from-source", "NO-SUCH"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty());
}

#[test]
fn appraise_fail_level_may_passes_on_fixture() {
    // Everything in the IEEE fixture is mapped, so even the strictest
    // threshold passes.
    let output = pbu_in(
        &fixture_dir(),
        &["appraise", "--approach", "ieee-1028", "--fail-level", "may"],
    );
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.ends_with("verdict\tpass\n"));
}

#[test]
fn coverage_text_format_renders_summary_block() {
    let output = pbu_in(
        &fixture_dir(),
        &[
            "coverage",
            "--approach",
            "process-impact",
            "--format",
            "text",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("Coverage of process-impact"));
    assert!(stdout.contains("160 total"));
}

#[test]
fn init_creates_loadable_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let ws_dir = dir.path().join("fresh");
    let output = pbu(&["init", "--workspace", ws_dir.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(ws_dir.join("workspace.meta").is_file());
    let output = pbu_in(&ws_dir, &["census", "--approach", "missing"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn log_decision_appends_to_the_ledger() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(dir.path());
    let before = fs::read_to_string(dir.path().join("decisions.log")).unwrap();
    let output = pbu_in(
        dir.path(),
        &[
            "log-decision",
            "--actor",
            "zdk",
            "--context",
            "map/peer-review",
            "--decision",
            "used PI term 'moderator'",
            "--rationale",
            "clearest of the three synonyms",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let after = fs::read_to_string(dir.path().join("decisions.log")).unwrap();
    assert!(after.starts_with(&before));
    assert_eq!(after.lines().count(), before.lines().count() + 1);
    assert!(after.contains("used PI term 'moderator'"));
}

#[test]
fn map_exclude_and_rebind_workflow() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(dir.path());

    // The participants text is excluded in the shipped fixture; mapping it
    // retires the exclusion and logs that as a decision.
    let output = pbu_in(
        dir.path(),
        &[
            "map",
            "--process",
            "peer-review",
            "--source",
            "PI par",
            "--target",
            "author",
            "--note",
            "participants text folded into the role descriptions",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let mapping_id = String::from_utf8_lossy(&output.stdout).trim().to_string();
    assert!(mapping_id.starts_with("m-"));
    let exclusions = fs::read_to_string(dir.path().join("exclusions/process-impact.tsv")).unwrap();
    assert_eq!(exclusions.lines().count(), 1, "only the header remains");
    let log = fs::read_to_string(dir.path().join("decisions.log")).unwrap();
    assert!(log.contains("mapped supersedes excluded"));

    // Excluding a mapped instance is refused.
    let output = pbu_in(
        dir.path(),
        &["exclude", "--source", "PI par", "--rationale", "again"],
    );
    assert_eq!(output.status.code(), Some(2));

    // Rebind inside the fresh mapping.
    let output = pbu_in(
        dir.path(),
        &[
            "rebind",
            "--process",
            "peer-review",
            "--mapping",
            &mapping_id,
            "--from",
            "PI par",
            "--to",
            "PI ov",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let output = pbu_in(dir.path(), &["trace", "--from-source", "PI ov"]);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("author"));

    // The workspace is still verification-clean after the whole workflow.
    let output = pbu_in(dir.path(), &["verify", "--process", "peer-review"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn decompose_and_splits_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(dir.path());

    let output = pbu_in(
        dir.path(),
        &[
            "decompose",
            "--process",
            "peer-review",
            "--activity",
            "collect-inspection-data",
            "--child",
            "activity:Collect forms",
            "--child",
            "activity:File forms",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{output:?}");

    let output = pbu_in(
        dir.path(),
        &[
            "split-role",
            "--process",
            "peer-review",
            "--role",
            "moderator",
            "--move-items",
            "5,6,7",
            "--new-role",
            "Appraisal lead",
            "--move-edge",
            "make-exit-decision",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let new_role = String::from_utf8_lossy(&output.stdout).trim().to_string();
    assert_eq!(new_role, "appraisal-lead");

    let output = pbu_in(
        dir.path(),
        &[
            "split-data",
            "--process",
            "peer-review",
            "--object",
            "issue-log",
            "--move-items",
            "3,4",
            "--new-object",
            "Anomaly detail",
            "--move-edge",
            "review-anomaly-list:input",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{output:?}");

    let output = pbu_in(dir.path(), &["verify", "--process", "peer-review"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
}

#[test]
fn export_variants_and_determinism() {
    for args in [
        vec!["export", "--process", "peer-review", "--textual"],
        vec!["export", "--process", "peer-review", "--xml"],
        vec!["export", "--process", "peer-review", "--dot", "containment"],
        vec!["export", "--process", "peer-review", "--dot", "flow"],
    ] {
        let first = pbu_in(&fixture_dir(), &args);
        let second = pbu_in(&fixture_dir(), &args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn diff_and_stale_between_workspaces() {
    // Build a second workspace holding the renamed v1.3 snapshot.
    let dir = tempfile::tempdir().unwrap();
    let mut ws = pbu_core::workspace::Workspace::default();
    let v13 = pbu_core::fixture::cmmi_dev_13();
    ws.approaches.insert(v13.meta.id.clone(), v13);
    pbu_core::workspace::save_workspace(&ws, dir.path()).unwrap();

    let output = pbu(&[
        "diff",
        "--workspace",
        fixture_dir().to_str().unwrap(),
        "--approach",
        "cmmi-dev-12",
        "--against",
        "cmmi-dev-13",
        "--against-workspace",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.lines().count(), 11);
    assert!(stdout
        .lines()
        .all(|l| l.starts_with("modified\t") && l.ends_with("\tkind_name")));

    let output = pbu(&[
        "stale",
        "--workspace",
        fixture_dir().to_str().unwrap(),
        "--process",
        "peer-review",
        "--approach",
        "cmmi-dev-12",
        "--against",
        "cmmi-dev-13",
        "--against-workspace",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.lines().count() > 0);
    assert!(stdout.lines().all(|l| l.starts_with("review\t")));
}

#[test]
fn xref_and_wordfreq_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir_all(&corpus).unwrap();
    fs::write(
        corpus.join("CM.txt"),
        "Refer to the Project Planning process area for more information. \
         Other text. Refer to the Project Planning process area again!",
    )
    .unwrap();
    fs::write(
        corpus.join("PP.txt"),
        "The organization can refer to the standard processes established at the \
         organization level process area.",
    )
    .unwrap();
    let areas = dir.path().join("areas.txt");
    fs::write(
        &areas,
        "Project Planning\nConfiguration Management\nstandard processes established at the organization level\n",
    )
    .unwrap();
    let exclude = dir.path().join("exclude.txt");
    fs::write(&exclude, "can refer to the standard processes\n").unwrap();

    let output = pbu(&[
        "xref",
        "--corpus",
        corpus.to_str().unwrap(),
        "--areas",
        areas.to_str().unwrap(),
        "--exclude",
        exclude.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    assert_eq!(
        String::from_utf8_lossy(&output.stdout),
        "CM\tProject Planning\t2\n"
    );

    let output = pbu(&[
        "xref",
        "--corpus",
        corpus.to_str().unwrap(),
        "--areas",
        areas.to_str().unwrap(),
        "--exclude",
        exclude.to_str().unwrap(),
        "--dot",
    ]);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("\"CM\" -> \"Project Planning\" [label=\"2\"];"));

    let stopwords = dir.path().join("stop.txt");
    fs::write(&stopwords, "the\nto\nfor\n").unwrap();
    let output = pbu(&[
        "wordfreq",
        "--corpus",
        corpus.to_str().unwrap(),
        "--stopwords",
        stopwords.to_str().unwrap(),
        "--min-len",
        "2",
        "--stem",
        "porter",
        "--top",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.lines().count(), 3);
    assert!(stdout.starts_with("process\t"), "stdout: {stdout}");
}

#[test]
fn second_writer_is_locked_out() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(dir.path());
    fs::write(dir.path().join(".lock"), b"").unwrap();
    let output = pbu_in(
        dir.path(),
        &["exclude", "--source", "PI ov", "--rationale", "r"],
    );
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("locked"), "stderr: {stderr}");
}
