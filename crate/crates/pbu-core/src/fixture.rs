//! The shipped peer-review example workspace: three quality approaches
//! (CMMI-DEV v1.2, IEEE 1028-2008, the Process Impact peer review
//! description) decomposed into element instances, one unified peer review
//! process, and the mapping between them.
//!
//! Standard-derived instance texts are truncated to id plus short title;
//! the instance counts and the mapping topology are what the reports and
//! acceptance checks lean on.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{
    normalize_conformance, Decision, EdgeRelation, ElementKind, Exclusion, Mapping, NodeKind,
    ProcessEdge, ProcessNode, ProcessTarget, QaInstance, QaRelation, QaRelationType,
    QualityApproach,
};
use crate::workspace::{ApproachData, ProcessData, Workspace};

pub const PROCESS_ID: &str = "peer-review";
pub const CMMI: &str = "cmmi-dev-12";
pub const IEEE: &str = "ieee-1028";
pub const PI: &str = "process-impact";

// ---------------------------------------------------------------------------
// CMMI-DEV v1.2
// ---------------------------------------------------------------------------

#[rustfmt::skip]
const CMMI_SUBPRACTICES: &[(&str, &str, &str)] = &[
    ("VER SP2.1 SUBP1", "VER SP2.1", "Determine what type of peer review will be conducted."),
    ("VER SP2.1 SUBP2", "VER SP2.1", "Define requirements for collecting data during the peer review."),
    ("VER SP2.1 SUBP3", "VER SP2.1", "Establish and maintain entry and exit criteria for the peer review."),
    ("VER SP2.1 SUBP4", "VER SP2.1", "Establish and maintain criteria for requiring another peer review."),
    ("VER SP2.1 SUBP5", "VER SP2.1", "Establish and maintain checklists to ensure that the work products are reviewed consistently."),
    ("VER SP2.1 SUBP6", "VER SP2.1", "Develop a detailed peer review schedule."),
    ("VER SP2.1 SUBP7", "VER SP2.1", "Ensure that the work product satisfies the peer review entry criteria prior to distribution."),
    ("VER SP2.1 SUBP8", "VER SP2.1", "Distribute the work product to be reviewed and its related information to the participants."),
    ("VER SP2.1 SUBP9", "VER SP2.1", "Assign roles for the peer review as appropriate."),
    ("VER SP2.1 SUBP10", "VER SP2.1", "Prepare for the peer review by reviewing the work product prior to conducting the peer review."),
    ("VER SP2.2 SUBP1", "VER SP2.2", "Perform the assigned roles in the peer review."),
    ("VER SP2.2 SUBP2", "VER SP2.2", "Identify and document defects and other issues in the work product."),
    ("VER SP2.2 SUBP3", "VER SP2.2", "Record the results of the peer review, including the action items."),
    ("VER SP2.2 SUBP4", "VER SP2.2", "Collect peer review data."),
    ("VER SP2.2 SUBP5", "VER SP2.2", "Identify action items and communicate the issues to relevant stakeholders."),
    ("VER SP2.2 SUBP6", "VER SP2.2", "Conduct an additional peer review if the defined criteria indicate the need."),
    ("VER SP2.2 SUBP7", "VER SP2.2", "Ensure that the exit criteria for the peer review are satisfied."),
    ("VER SP2.3 SUBP1", "VER SP2.3", "Record data related to the preparation, conduct, and results of the peer reviews."),
    ("VER SP2.3 SUBP2", "VER SP2.3", "Store the data for future reference and analysis."),
    ("VER SP2.3 SUBP3", "VER SP2.3", "Protect the data to ensure that peer review data are not used inappropriately."),
    ("VER SP2.3 SUBP4", "VER SP2.3", "Analyze the peer review data."),
];

const CMMI_WORK_PRODUCTS: &[(&str, &str, &str)] = &[
    ("VER SP2.1 TWP1", "VER SP2.1", "Peer review schedule"),
    ("VER SP2.1 TWP2", "VER SP2.1", "Peer review checklist"),
    (
        "VER SP2.1 TWP3",
        "VER SP2.1",
        "Entry and exit criteria for work products",
    ),
    (
        "VER SP2.1 TWP4",
        "VER SP2.1",
        "Criteria for requiring another peer review",
    ),
    (
        "VER SP2.1 TWP5",
        "VER SP2.1",
        "Peer review training material",
    ),
    (
        "VER SP2.1 TWP6",
        "VER SP2.1",
        "Selected work products to be reviewed",
    ),
    ("VER SP2.2 TWP1", "VER SP2.2", "Peer review results"),
    ("VER SP2.2 TWP2", "VER SP2.2", "Peer review issues"),
    ("VER SP2.2 TWP3", "VER SP2.2", "Peer review data"),
    ("VER SP2.3 TWP1", "VER SP2.3", "Peer review data"),
    ("VER SP2.3 TWP2", "VER SP2.3", "Peer review action items"),
];

const CMMI_GENERIC_PRACTICES: &[(&str, &str)] = &[
    ("VER GP 2.2", "Plan the Process"),
    ("VER GP 2.3", "Provide Resources"),
    ("VER GP 2.4", "Assign Responsibility"),
    ("VER GP 2.6", "Manage Configurations"),
    ("VER GP 2.7", "Identify and Involve Relevant Stakeholders"),
    ("VER GP 2.10", "Review Status with Higher Level Management"),
];

fn cmmi_kind(kind: &str, target: Option<ProcessTarget>) -> (String, ElementKind) {
    (
        kind.to_string(),
        ElementKind {
            kind_name: kind.to_string(),
            default_process_target: target,
        },
    )
}

fn plain_instance(
    id: &str,
    kind: &str,
    conformance: &str,
    parent: Option<&str>,
    order: Option<u32>,
    text: &str,
) -> (String, QaInstance) {
    (
        id.to_string(),
        QaInstance {
            id: id.to_string(),
            kind_name: kind.to_string(),
            conformance: normalize_conformance(conformance).expect("fixture conformance"),
            parent_id: parent.map(str::to_string),
            order,
            text: text.to_string(),
        },
    )
}

fn cmmi_approach() -> ApproachData {
    let mut instances = BTreeMap::new();
    let mut insert = |entry: (String, QaInstance)| {
        instances.insert(entry.0, entry.1);
    };
    insert(plain_instance(
        "VER SG2",
        "specific goal",
        "",
        None,
        None,
        "Perform Peer Reviews",
    ));
    insert(plain_instance(
        "VER SP2.1",
        "specific practice",
        "",
        Some("VER SG2"),
        Some(1),
        "Prepare for Peer Reviews",
    ));
    insert(plain_instance(
        "VER SP2.2",
        "specific practice",
        "",
        Some("VER SG2"),
        Some(2),
        "Conduct Peer Reviews",
    ));
    insert(plain_instance(
        "VER SP2.3",
        "specific practice",
        "",
        Some("VER SG2"),
        Some(3),
        "Analyze Peer Review Data",
    ));
    for (index, (id, parent, text)) in CMMI_SUBPRACTICES.iter().enumerate() {
        insert(plain_instance(
            id,
            "subpractice",
            "",
            Some(parent),
            Some(index as u32 + 1),
            text,
        ));
    }
    for (id, parent, text) in CMMI_WORK_PRODUCTS {
        insert(plain_instance(
            id,
            "typical work product",
            "",
            Some(parent),
            None,
            text,
        ));
    }
    for (id, text) in CMMI_GENERIC_PRACTICES {
        insert(plain_instance(id, "generic practice", "", None, None, text));
    }
    insert(plain_instance(
        "VER SG2 roles",
        "role list",
        "",
        Some("VER SG2"),
        None,
        "Leader, Reader, Recorder and Author",
    ));

    let mut relations = BTreeSet::new();
    relations.insert(QaRelation {
        from_id: "VER SP2.3 SUBP4".to_string(),
        to_id: "VER SP2.2 SUBP4".to_string(),
        relation_type: QaRelationType::RefersTo,
    });
    relations.insert(QaRelation {
        from_id: "VER SP2.2 SUBP6".to_string(),
        to_id: "VER SP2.1 SUBP4".to_string(),
        relation_type: QaRelationType::Requires,
    });

    ApproachData {
        meta: QualityApproach {
            id: CMMI.to_string(),
            name: "CMMI for Development".to_string(),
            version_label: "1.2".to_string(),
            attributes: vec![
                ("origin".to_string(), "SEI".to_string()),
                ("scope".to_string(), "Development".to_string()),
                ("assessment approach".to_string(), "SCAMPI".to_string()),
            ],
        },
        kinds: [
            cmmi_kind("specific goal", Some(ProcessTarget::Process)),
            cmmi_kind("specific practice", Some(ProcessTarget::Subprocess)),
            cmmi_kind("subpractice", Some(ProcessTarget::Activity)),
            cmmi_kind("typical work product", Some(ProcessTarget::DataObject)),
            cmmi_kind("generic practice", None),
            cmmi_kind("role list", Some(ProcessTarget::Role)),
        ]
        .into_iter()
        .collect(),
        instances,
        relations,
    }
}

/// The v1.3 snapshot of the same approach: identical instances except that
/// the kind "typical work product" is named "example work product".
pub fn cmmi_dev_13() -> ApproachData {
    let mut data = cmmi_approach();
    data.meta.id = "cmmi-dev-13".to_string();
    data.meta.version_label = "1.3".to_string();
    let twp = data.kinds.remove("typical work product").unwrap();
    data.kinds.insert(
        "example work product".to_string(),
        ElementKind {
            kind_name: "example work product".to_string(),
            ..twp
        },
    );
    for instance in data.instances.values_mut() {
        if instance.kind_name == "typical work product" {
            instance.kind_name = "example work product".to_string();
        }
    }
    data
}

// ---------------------------------------------------------------------------
// IEEE 1028-2008, chapter 6 (inspections)
// ---------------------------------------------------------------------------

const IEEE_SUBPROCESSES: &[(&str, &str)] = &[
    ("IEEE1028-2008 6.5.1 (title)", "Management preparation"),
    ("IEEE1028-2008 6.5.2 (title)", "Planning the inspection"),
    (
        "IEEE1028-2008 6.5.3 (title)",
        "Overview of inspection procedures",
    ),
    (
        "IEEE1028-2008 6.5.4 (title)",
        "Overview of inspection product",
    ),
    ("IEEE1028-2008 6.5.5 (title)", "Preparation"),
    ("IEEE1028-2008 6.5.6 (title)", "Examination"),
    ("IEEE1028-2008 6.5.7 (title)", "Rework and follow-up"),
    ("IEEE1028-2008 6.8 (title)", "Data collection"),
    ("IEEE1028-2008 6.9 (title)", "Improvement"),
];

/// (id, parent subprocess, conformance keyword, short text)
#[rustfmt::skip]
const IEEE_ACTIVITIES: &[(&str, &str, &str, &str)] = &[
    ("IEEE1028-2008 6.5.1", "IEEE1028-2008 6.5.1 (title)", "shall", "Management shall ensure that the inspection is performed as required."),
    ("IEEE1028-2008 6.5.1 a", "IEEE1028-2008 6.5.1 (title)", "shall", "Plan time and resources required for inspection, including support functions."),
    ("IEEE1028-2008 6.5.1 b", "IEEE1028-2008 6.5.1 (title)", "shall", "Provide funding, infrastructure, and facilities required to plan, define, execute, and manage the inspection."),
    ("IEEE1028-2008 6.5.1 c", "IEEE1028-2008 6.5.1 (title)", "shall", "Provide training and orientation on inspection procedures."),
    ("IEEE1028-2008 6.5.1 d", "IEEE1028-2008 6.5.1 (title)", "shall", "Ensure that inspection team members possess appropriate levels of expertise and knowledge."),
    ("IEEE1028-2008 6.5.1 e", "IEEE1028-2008 6.5.1 (title)", "shall", "Ensure that inspections are planned, and that planned inspections are conducted."),
    ("IEEE1028-2008 6.5.1 f", "IEEE1028-2008 6.5.1 (title)", "shall", "Act on inspection team recommendations in a timely manner."),
    ("IEEE1028-2008 6.5.2 1", "IEEE1028-2008 6.5.2 (title)", "shall", "The author shall assemble the inspection materials for the inspection leader."),
    ("IEEE1028-2008 6.5.2 a", "IEEE1028-2008 6.5.2 (title)", "shall", "Identify, with appropriate management support, the inspection team."),
    ("IEEE1028-2008 6.5.2 b", "IEEE1028-2008 6.5.2 (title)", "shall", "Assign specific responsibilities to the inspection team members."),
    ("IEEE1028-2008 6.5.2 c", "IEEE1028-2008 6.5.2 (title)", "shall", "Schedule the meeting date and time, select the meeting place, and notify the inspection team."),
    ("IEEE1028-2008 6.5.2 d", "IEEE1028-2008 6.5.2 (title)", "shall", "Distribute inspection materials to participants, and allow adequate time for their preparation."),
    ("IEEE1028-2008 6.5.2 e", "IEEE1028-2008 6.5.2 (title)", "shall", "Set a timetable for distribution of inspection material and for the return of comments."),
    ("IEEE1028-2008 6.5.2 f", "IEEE1028-2008 6.5.2 (title)", "shall", "Specify the scope of the inspection."),
    ("IEEE1028-2008 6.5.2 g", "IEEE1028-2008 6.5.2 (title)", "shall", "Establish the anticipated inspection rate for preparation and meeting."),
    ("IEEE1028-2008 6.5.3 1", "IEEE1028-2008 6.5.3 (title)", "shall", "Roles shall be assigned by the inspection leader."),
    ("IEEE1028-2008 6.5.3 2", "IEEE1028-2008 6.5.3 (title)", "shall", "The inspection leader shall answer questions about any checklists and the role assignments and should present inspection data."),
    ("IEEE1028-2008 6.5.4", "IEEE1028-2008 6.5.4 (title)", "should", "The author should present an overview of the software product to be inspected."),
    ("IEEE1028-2008 6.5.5 1", "IEEE1028-2008 6.5.5 (title)", "shall", "Each inspection team member shall examine the software product and other inputs prior to the review meeting."),
    ("IEEE1028-2008 6.5.5 2", "IEEE1028-2008 6.5.5 (title)", "shall", "Anomalies detected during this examination shall be documented and sent to the inspection leader."),
    ("IEEE1028-2008 6.5.5 3", "IEEE1028-2008 6.5.5 (title)", "should", "The inspection leader should classify anomalies, may cancel the inspection, and should forward the anomalies to the author."),
    ("IEEE1028-2008 6.5.5 4", "IEEE1028-2008 6.5.5 (title)", "shall", "The inspection leader or reader shall specify a suitable order in which the software product will be inspected."),
    ("IEEE1028-2008 6.5.5 5", "IEEE1028-2008 6.5.5 (title)", "shall", "The reader shall prepare sufficiently to be able to present the software product at the inspection meeting."),
    ("IEEE1028-2008 6.5.5 6", "IEEE1028-2008 6.5.5 (title)", "shall", "The inspection leader shall verify that inspectors are prepared, shall reschedule if not, and should gather preparation times."),
    ("IEEE1028-2008 6.5.6.1 (title)", "IEEE1028-2008 6.5.6 (title)", "shall", "Introduce meeting."),
    ("IEEE1028-2008 6.5.6.2 (title)", "IEEE1028-2008 6.5.6 (title)", "shall", "Review general items."),
    ("IEEE1028-2008 6.5.6.3 (title)", "IEEE1028-2008 6.5.6 (title)", "shall", "Review software product and record anomalies."),
    ("IEEE1028-2008 6.5.6.4 (title)", "IEEE1028-2008 6.5.6 (title)", "shall", "Review the anomaly list."),
    ("IEEE1028-2008 6.5.6.5 (title)", "IEEE1028-2008 6.5.6 (title)", "shall", "Make exit decision."),
    ("IEEE1028-2008 6.5.7", "IEEE1028-2008 6.5.7 (title)", "shall", "The inspection leader shall verify that the action items assigned in the meeting are closed."),
    ("IEEE1028-2008 6.8", "IEEE1028-2008 6.8 (title)", "shall", "Inspections shall provide data for the analysis of the quality of the software product and of the inspection itself."),
    ("IEEE1028-2008 6.9", "IEEE1028-2008 6.9 (title)", "shall", "Inspection data shall be analyzed regularly in order to improve the inspection process itself."),
    ("IEEE1028-2008 6.9 f", "IEEE1028-2008 6.9 (title)", "should", "Benefits achieved should be assessed regularly, and the inspection process should be continually adapted."),
];

#[rustfmt::skip]
const IEEE_INPUTS: &[(&str, &str, &str)] = &[
    ("IEEE 1028 In should a", "should", "Inspection statement of objectives"),
    ("IEEE 1028 In should b", "should", "Software product to be inspected"),
    ("IEEE 1028 In should c", "should", "Documented inspection procedure"),
    ("IEEE 1028 In should d", "should", "Inspection reporting forms"),
    ("IEEE 1028 In should e", "should", "Anomalies or issues list"),
    ("IEEE 1028 In should f", "should", "Source documents used as inputs to the software product"),
    ("IEEE 1028 In should g", "should", "Inspection checklists"),
    ("IEEE 1028 In may h", "may", "Quality criteria for requiring a reinspection"),
    ("IEEE 1028 In may i", "may", "Predecessor software product previously inspected"),
    ("IEEE 1028 In may j", "may", "Regulations, standards, guidelines, plans, specifications, and procedures"),
    ("IEEE 1028 In may k", "may", "Hardware, instrumentation, or other software product specifications"),
    ("IEEE 1028 In may l", "may", "Performance data"),
    ("IEEE 1028 In may m", "may", "Anomaly categories"),
];

#[rustfmt::skip]
const IEEE_OUTPUTS: &[(&str, &str, &str)] = &[
    ("IEEE 1028 Out shall a", "shall", "The project that created the software product under inspection"),
    ("IEEE 1028 Out shall b", "shall", "The inspection team members"),
    ("IEEE 1028 Out shall c", "shall", "The inspection meeting duration"),
    ("IEEE 1028 Out shall d", "shall", "The software product inspected"),
    ("IEEE 1028 Out shall e", "shall", "The size of the materials inspected"),
    ("IEEE 1028 Out shall f", "shall", "Specific inputs to the inspection"),
    ("IEEE 1028 Out shall g", "shall", "Inspection objectives and whether they were met"),
    ("IEEE 1028 Out shall h", "shall", "The anomaly list, containing each anomaly location, description, and classification"),
    ("IEEE 1028 Out shall i", "shall", "The disposition of the software product"),
    ("IEEE 1028 Out shall j", "shall", "Any waivers granted or waivers requested"),
    ("IEEE 1028 Out shall k", "shall", "Individual and total preparation time of the inspection team"),
    ("IEEE 1028 Out shall l", "shall", "The total rework time"),
    ("IEEE 1028 Out should m", "should", "The inspection anomaly summary by anomaly category"),
    ("IEEE 1028 Out should n", "should", "An estimate of the rework effort and rework completion date"),
    ("IEEE 1028 Out may o", "may", "An estimate of the savings by fixing items found in inspection"),
];

const IEEE_ROLES: &[(&str, &str)] = &[
    ("author", "Author"),
    ("inspection leader", "Inspection leader"),
    ("reader", "Reader"),
    ("recorder", "Recorder"),
    ("inspector", "Inspector"),
];

fn ieee_approach() -> ApproachData {
    let mut instances = BTreeMap::new();
    let mut insert = |entry: (String, QaInstance)| {
        instances.insert(entry.0, entry.1);
    };
    insert(plain_instance(
        "IEEE1028-2008 6 intro",
        "introduction",
        "",
        None,
        None,
        "Introduction to inspections",
    ));
    for (id, title) in IEEE_SUBPROCESSES {
        insert(plain_instance(
            id,
            "subprocess",
            "",
            Some("IEEE1028-2008 6 intro"),
            None,
            title,
        ));
    }
    let mut order_in_parent: BTreeMap<&str, u32> = BTreeMap::new();
    for (id, parent, conformance, text) in IEEE_ACTIVITIES {
        let order = order_in_parent.entry(parent).or_insert(0);
        *order += 1;
        insert(plain_instance(
            id,
            "activity",
            conformance,
            Some(parent),
            Some(*order),
            text,
        ));
    }
    for (id, conformance, text) in IEEE_INPUTS {
        insert(plain_instance(id, "input", conformance, None, None, text));
    }
    for (id, conformance, text) in IEEE_OUTPUTS {
        insert(plain_instance(id, "output", conformance, None, None, text));
    }
    for (key, name) in IEEE_ROLES {
        insert(plain_instance(
            &format!("IEEE 1028 Role {key}"),
            "role",
            "",
            None,
            None,
            name,
        ));
        insert(plain_instance(
            &format!("IEEE 1028 Resp {key}"),
            "responsibility",
            "shall",
            Some(&format!("IEEE 1028 Role {key}")),
            None,
            &format!("Responsibilities of the {name} role"),
        ));
    }
    insert(plain_instance(
        "IEEE1028-2008 6.4 entry",
        "entry criteria",
        "shall",
        None,
        None,
        "Inspection entry criteria of chapters 6.4.1 through 6.4.3",
    ));
    insert(plain_instance(
        "IEEE1028-2008 6.6 exit",
        "exit criteria",
        "shall",
        None,
        None,
        "An inspection shall be considered complete when the activities listed in 6.5 have been accomplished and the output described in 6.7 exists",
    ));

    ApproachData {
        meta: QualityApproach {
            id: IEEE.to_string(),
            name: "IEEE Standard for Software Reviews and Audits".to_string(),
            version_label: "2008".to_string(),
            attributes: vec![
                ("origin".to_string(), "IEEE".to_string()),
                ("scope".to_string(), "Software reviews".to_string()),
            ],
        },
        kinds: [
            cmmi_kind("introduction", None),
            cmmi_kind("subprocess", Some(ProcessTarget::Subprocess)),
            cmmi_kind("activity", Some(ProcessTarget::Activity)),
            cmmi_kind("input", Some(ProcessTarget::DataObject)),
            cmmi_kind("output", Some(ProcessTarget::DataObject)),
            cmmi_kind("role", Some(ProcessTarget::Role)),
            cmmi_kind("responsibility", Some(ProcessTarget::Role)),
            cmmi_kind("entry criteria", Some(ProcessTarget::Criteria)),
            cmmi_kind("exit criteria", Some(ProcessTarget::Criteria)),
        ]
        .into_iter()
        .collect(),
        instances,
        relations: BTreeSet::new(),
    }
}

// ---------------------------------------------------------------------------
// Process Impact peer review description
// ---------------------------------------------------------------------------

const PI_PHASES: &[(&str, &str)] = &[
    ("PI1", "Planning"),
    ("PI2", "Overview"),
    ("PI3", "Preparation"),
    ("PI4", "Inspection Meeting"),
    ("PI5", "Rework"),
    ("PI6", "Follow-Up"),
];

/// (task id, phase, title)
#[rustfmt::skip]
const PI_TASKS: &[(&str, &str, &str)] = &[
    ("PI11", "PI1", "Initiate inspection by asking the peer review coordinator to assign a moderator"),
    ("PI12", "PI1", "Select moderator"),
    ("PI13", "PI1", "Schedule the inspection meeting"),
    ("PI14", "PI1", "Assemble inspection package"),
    ("PI15", "PI1", "Determine whether an overview meeting is required"),
    ("PI16", "PI1", "Select inspectors"),
    ("PI17", "PI1", "Deliver work product and its specification to the moderator"),
    ("PI18", "PI1", "Deliver inspection package to inspectors at least 3 days prior to the meeting"),
    ("PI21", "PI2", "Describe the important features of the work product to the rest of the inspection team"),
    ("PI22", "PI2", "Evaluate the assumptions, history, and context of the work product"),
    ("PI31", "PI3", "Examine work product prior to the inspection meeting to find defects"),
    ("PI32", "PI3", "Record preparation time"),
    ("PI41", "PI4", "Open the Meeting"),
    ("PI42", "PI4", "Establish Preparedness"),
    ("PI43", "PI4", "Present Work Product"),
    ("PI44", "PI4", "Raise Defects and Issues"),
    ("PI45", "PI4", "Record Issues"),
    ("PI46", "PI4", "Answer Questions"),
    ("PI47", "PI4", "Make Product Appraisal"),
    ("PI48", "PI4", "Sign Inspection Summary Report"),
    ("PI49", "PI4", "Collect Inspection Feedback"),
    ("PI51", "PI5", "Correct defects and typos found, resolve issues raised, and modify work product accordingly"),
    ("PI52", "PI5", "Correct any other project documents based on defects identified in the inspected work product"),
    ("PI53", "PI5", "Record any uncorrected defects in the project's defect tracking system"),
    ("PI54", "PI5", "If rework verification is not needed, report the defects found and corrected to the moderator"),
    ("PI55", "PI5", "Record the actual rework effort on the Inspection Summary Report"),
    ("PI61", "PI6", "Confirm that the author has addressed every item on the Issue Log"),
    ("PI62", "PI6", "Examine the modified work product to judge whether the rework has been performed correctly"),
    ("PI63", "PI6", "Report the number of major and minor defects found and corrected and the actual rework effort"),
    ("PI64", "PI6", "Check whether the exit criteria for the inspection and for the peer review process have been satisfied"),
    ("PI65", "PI6", "Check the baselined work product into the project's configuration management system"),
    ("PI66", "PI6", "Deliver Inspection Summary Report and counts of defects to the peer review coordinator"),
];

const PI_WORK_AIDS: &[(&str, &str)] = &[
    ("PI WA1", "Inspection Summary Report"),
    ("PI WA2", "Issue Log"),
    ("PI WA3", "Typo List"),
    ("PI WA4", "Inspection Moderator's Checklist"),
    ("PI WA5", "Inspection Lessons Learned Questionnaire"),
    ("PI WA6", "Review checklist"),
];

const PI_DELIVERABLES: &[(&str, &str)] = &[
    ("PID1", "Work product that was inspected"),
    ("PID2", "Completed Inspection Summary Report"),
    ("PID3", "Completed Issue Log"),
    ("PID4", "Completed Typo List"),
    ("PID5", "Counts of defects found and defects corrected"),
];

const PI_ROLES: &[(&str, &str)] = &[
    ("author", "Author"),
    ("moderator", "Moderator"),
    ("reader", "Reader"),
    ("recorder", "Recorder"),
    ("inspector", "Inspector"),
    ("verifier", "Verifier"),
    ("peer review coordinator", "Peer review coordinator"),
];

fn pi_approach() -> ApproachData {
    let mut instances = BTreeMap::new();
    let mut insert = |entry: (String, QaInstance)| {
        instances.insert(entry.0, entry.1);
    };
    insert(plain_instance(
        "PI ov",
        "overview",
        "",
        None,
        None,
        "Overview of the peer review process",
    ));
    insert(plain_instance(
        "PI risk",
        "risk assessment guidance",
        "",
        None,
        None,
        "Risk assessment guidance for selecting the review approach",
    ));
    insert(plain_instance(
        "PI par",
        "participants",
        "",
        None,
        None,
        "Participants: the roles and responsibilities shown below pertain to the inspection process; all participants are inspectors",
    ));
    for (id, name) in PI_WORK_AIDS {
        insert(plain_instance(id, "work aid", "", None, None, name));
    }
    for (id, name) in PI_DELIVERABLES {
        insert(plain_instance(id, "deliverable", "", None, None, name));
    }
    for (index, (id, name)) in PI_PHASES.iter().enumerate() {
        insert(plain_instance(
            id,
            "phase",
            "",
            None,
            Some(index as u32 + 1),
            name,
        ));
    }
    let mut order_in_phase: BTreeMap<&str, u32> = BTreeMap::new();
    for (id, phase, title) in PI_TASKS {
        let order = order_in_phase.entry(phase).or_insert(0);
        *order += 1;
        insert(plain_instance(
            id,
            "task",
            "",
            Some(phase),
            Some(*order),
            title,
        ));
        insert(plain_instance(
            &format!("{id} order"),
            "task order",
            "",
            Some(id),
            None,
            &format!("Position of {id} within its phase"),
        ));
        insert(plain_instance(
            &format!("{id} roles"),
            "task-role association",
            "",
            Some(id),
            None,
            &format!("Roles performing {id}"),
        ));
    }
    for (key, name) in PI_ROLES {
        insert(plain_instance(
            &format!("PI Role {key}"),
            "role",
            "",
            None,
            None,
            name,
        ));
        insert(plain_instance(
            &format!("PI Resp {key}"),
            "responsibility",
            "",
            Some(&format!("PI Role {key}")),
            None,
            &format!("Responsibilities of the {name} role"),
        ));
    }
    insert(plain_instance(
        "PI ent",
        "entry criteria",
        "",
        None,
        None,
        "Entry criteria of the inspection process",
    ));
    insert(plain_instance(
        "PI ex",
        "exit criteria",
        "",
        None,
        None,
        "Exit criteria of the inspection process",
    ));
    for i in 1..=12u32 {
        insert(plain_instance(
            &format!("PI Dat{i}"),
            "data item",
            "",
            None,
            Some(i),
            &format!("Measurable data item {i}"),
        ));
        insert(plain_instance(
            &format!("PI Met{i}"),
            "metric",
            "",
            None,
            Some(i),
            &format!("Inspection metric {i}"),
        ));
    }
    insert(plain_instance(
        "PI meas",
        "process measurement",
        "",
        None,
        None,
        "Description of process measurement",
    ));
    insert(plain_instance(
        "PI maint",
        "process maintenance",
        "",
        None,
        None,
        "Description of process maintenance",
    ));
    insert(plain_instance(
        "PI Def",
        "defect recording",
        "",
        None,
        None,
        "Information to record for each defect found",
    ));
    insert(plain_instance(
        "PI App",
        "appraisal",
        "",
        None,
        None,
        "Possible appraisals of inspected work products",
    ));

    ApproachData {
        meta: QualityApproach {
            id: PI.to_string(),
            name: "Process Impact peer review process description".to_string(),
            version_label: "2010".to_string(),
            attributes: vec![
                ("origin".to_string(), "Process Impact".to_string()),
                ("scope".to_string(), "Peer reviews".to_string()),
            ],
        },
        kinds: [
            cmmi_kind("overview", None),
            cmmi_kind("work aid", Some(ProcessTarget::DataObject)),
            cmmi_kind("risk assessment guidance", None),
            cmmi_kind("participants", Some(ProcessTarget::Role)),
            cmmi_kind("role", Some(ProcessTarget::Role)),
            cmmi_kind("responsibility", Some(ProcessTarget::Role)),
            cmmi_kind("entry criteria", Some(ProcessTarget::Criteria)),
            cmmi_kind("phase", Some(ProcessTarget::Subprocess)),
            cmmi_kind("task", Some(ProcessTarget::Activity)),
            cmmi_kind("task order", None),
            cmmi_kind("task-role association", None),
            cmmi_kind("deliverable", Some(ProcessTarget::DataObject)),
            cmmi_kind("exit criteria", Some(ProcessTarget::Criteria)),
            cmmi_kind("data item", None),
            cmmi_kind("metric", None),
            cmmi_kind("process measurement", None),
            cmmi_kind("process maintenance", None),
            cmmi_kind("defect recording", None),
            cmmi_kind("appraisal", None),
        ]
        .into_iter()
        .collect(),
        instances,
        relations: BTreeSet::new(),
    }
}

// ---------------------------------------------------------------------------
// The unified peer review process
// ---------------------------------------------------------------------------

/// (id, kind, parent, name) for every node that carries no items.
#[rustfmt::skip]
const NODES: &[(&str, NodeKind, Option<&str>, &str)] = &[
    ("peer-review", NodeKind::Process, None, "Peer Review Process"),
    // root scope flow
    ("pr-start", NodeKind::StartEvent, Some("peer-review"), "Start"),
    ("pr-end", NodeKind::EndEvent, Some("peer-review"), "End"),
    ("what-type-of-peer-review", NodeKind::Gateway, Some("peer-review"), "What type of peer review is needed?"),
    ("further-peer-review-needed", NodeKind::Gateway, Some("peer-review"), "Is further peer review needed?"),
    ("perform-inspection", NodeKind::Subprocess, Some("peer-review"), "Perform Inspection"),
    ("perform-other-peer-review", NodeKind::Subprocess, Some("peer-review"), "Perform other type of peer review"),
    // inspection scope
    ("pi-start", NodeKind::StartEvent, Some("perform-inspection"), "Start"),
    ("pi-end", NodeKind::EndEvent, Some("perform-inspection"), "End"),
    ("check-entry-criteria", NodeKind::Activity, Some("perform-inspection"), "Check entry criteria"),
    ("procedure-overview-needed", NodeKind::Gateway, Some("perform-inspection"), "Is a procedure overview meeting required?"),
    ("product-overview-needed", NodeKind::Gateway, Some("perform-inspection"), "Is a product overview meeting required?"),
    ("management-preparation", NodeKind::Subprocess, Some("perform-inspection"), "Management Preparation"),
    ("planning-the-inspection", NodeKind::Subprocess, Some("perform-inspection"), "Planning the inspection"),
    ("overview-procedures", NodeKind::Subprocess, Some("perform-inspection"), "Overview of inspection procedures"),
    ("overview-product", NodeKind::Subprocess, Some("perform-inspection"), "Overview of inspection product"),
    ("preparation", NodeKind::Subprocess, Some("perform-inspection"), "Preparation"),
    ("examination", NodeKind::Subprocess, Some("perform-inspection"), "Examination"),
    ("rework-and-follow-up", NodeKind::Subprocess, Some("perform-inspection"), "Rework and follow-up"),
    ("data-collection", NodeKind::Subprocess, Some("perform-inspection"), "Data Collection"),
    ("improvement", NodeKind::Subprocess, Some("perform-inspection"), "Improvement"),
    // other peer review scope
    ("po-start", NodeKind::StartEvent, Some("perform-other-peer-review"), "Start"),
    ("po-end", NodeKind::EndEvent, Some("perform-other-peer-review"), "End"),
    // management preparation
    ("mp-start", NodeKind::StartEvent, Some("management-preparation"), "Start"),
    ("mp-end", NodeKind::EndEvent, Some("management-preparation"), "End"),
    ("plan-inspection-time-and-resources", NodeKind::Activity, Some("management-preparation"), "Plan time and resources required for inspection"),
    ("provide-inspection-resources", NodeKind::Activity, Some("management-preparation"), "Provide funding, infrastructure, and facilities"),
    ("provide-inspection-training", NodeKind::Activity, Some("management-preparation"), "Provide training and orientation on inspection procedures"),
    ("ensure-team-expertise", NodeKind::Activity, Some("management-preparation"), "Ensure that inspection team members possess appropriate expertise"),
    ("ensure-inspections-planned-and-conducted", NodeKind::Activity, Some("management-preparation"), "Ensure that inspections are planned and conducted"),
    // planning
    ("pl-start", NodeKind::StartEvent, Some("planning-the-inspection"), "Start"),
    ("pl-end", NodeKind::EndEvent, Some("planning-the-inspection"), "End"),
    ("initiate-inspection", NodeKind::Activity, Some("planning-the-inspection"), "Initiate the inspection"),
    ("select-moderator", NodeKind::Activity, Some("planning-the-inspection"), "Select moderator"),
    ("assemble-inspection-materials", NodeKind::Activity, Some("planning-the-inspection"), "Assemble the inspection materials"),
    ("identify-inspection-team", NodeKind::Activity, Some("planning-the-inspection"), "Identify the inspection team"),
    ("assign-specific-responsibilities", NodeKind::Activity, Some("planning-the-inspection"), "Assign specific responsibilities to the inspection team members"),
    ("schedule-inspection-meeting", NodeKind::Activity, Some("planning-the-inspection"), "Schedule the meeting and notify the inspection team"),
    ("distribute-inspection-materials", NodeKind::Activity, Some("planning-the-inspection"), "Distribute inspection materials to participants"),
    ("set-comment-timetable", NodeKind::Activity, Some("planning-the-inspection"), "Set a timetable for distribution of material and return of comments"),
    ("specify-inspection-scope", NodeKind::Activity, Some("planning-the-inspection"), "Specify the scope of the inspection"),
    ("establish-inspection-rate", NodeKind::Activity, Some("planning-the-inspection"), "Establish the anticipated inspection rate"),
    // overview of procedures
    ("op-start", NodeKind::StartEvent, Some("overview-procedures"), "Start"),
    ("op-end", NodeKind::EndEvent, Some("overview-procedures"), "End"),
    ("assign-roles", NodeKind::Activity, Some("overview-procedures"), "Assign roles"),
    ("answer-checklist-and-role-questions", NodeKind::Activity, Some("overview-procedures"), "Answer questions about checklists and role assignments"),
    ("present-inspection-data", NodeKind::Activity, Some("overview-procedures"), "Present inspection data such as minimal preparation times"),
    // overview of product
    ("ov-start", NodeKind::StartEvent, Some("overview-product"), "Start"),
    ("ov-end", NodeKind::EndEvent, Some("overview-product"), "End"),
    ("describe-work-product-features", NodeKind::Activity, Some("overview-product"), "Describe the important features of the work product to the rest of the inspection team"),
    ("evaluate-assumptions-history-context", NodeKind::Activity, Some("overview-product"), "Evaluate the assumptions, history, and context of the work product"),
    // preparation
    ("pp-start", NodeKind::StartEvent, Some("preparation"), "Start"),
    ("pp-end", NodeKind::EndEvent, Some("preparation"), "End"),
    ("examine-product-before-meeting", NodeKind::Activity, Some("preparation"), "Examine the software product and other inputs prior to the meeting"),
    ("document-and-send-anomalies", NodeKind::Activity, Some("preparation"), "Document detected anomalies and send them to the inspection leader"),
    ("classify-anomalies", NodeKind::Activity, Some("preparation"), "Classify anomalies"),
    ("anomalies-extent-high", NodeKind::Gateway, Some("preparation"), "Extent or seriousness of the anomalies is high?"),
    ("cancel-inspection-request-later", NodeKind::Activity, Some("preparation"), "Cancel inspection, request later inspection"),
    ("forward-anomalies-to-author", NodeKind::Activity, Some("preparation"), "Forward the anomalies to the author for disposition"),
    ("specify-inspection-order", NodeKind::Activity, Some("preparation"), "Specify a suitable order in which the software product will be inspected"),
    ("prepare-product-presentation", NodeKind::Activity, Some("preparation"), "Prepare to present the software product at the inspection meeting"),
    ("inspectors-prepared", NodeKind::Gateway, Some("preparation"), "Are inspectors prepared for the inspection?"),
    ("reschedule-inspection-meeting", NodeKind::Activity, Some("preparation"), "Reschedule the meeting"),
    ("gather-preparation-times", NodeKind::Activity, Some("preparation"), "Gather individual preparation times and record the total"),
    // examination
    ("ex-start", NodeKind::StartEvent, Some("examination"), "Start"),
    ("ex-end", NodeKind::EndEvent, Some("examination"), "End"),
    ("introduce-meeting", NodeKind::Activity, Some("examination"), "Introduce meeting"),
    ("establish-preparedness", NodeKind::Activity, Some("examination"), "Establish preparedness"),
    ("review-general-items", NodeKind::Activity, Some("examination"), "Review general items"),
    ("present-product-to-team", NodeKind::Activity, Some("examination"), "Present the software product to the inspection team"),
    ("raise-defects-and-issues", NodeKind::Activity, Some("examination"), "Raise defects and issues"),
    ("examine-product-objectively", NodeKind::Activity, Some("examination"), "Examine the software product objectively and thoroughly"),
    ("enter-anomalies-to-list", NodeKind::Activity, Some("examination"), "Enter anomalies to anomaly list"),
    ("answer-specific-questions", NodeKind::Activity, Some("examination"), "Answer specific questions"),
    ("disagreement-about-anomaly", NodeKind::Gateway, Some("examination"), "Is there disagreement about an anomaly?"),
    ("review-anomaly-list", NodeKind::Activity, Some("examination"), "Review the anomaly list"),
    ("make-exit-decision", NodeKind::Activity, Some("examination"), "Make exit decision"),
    ("exit-decision-outcome", NodeKind::Gateway, Some("examination"), "Exit decision outcome"),
    ("sign-inspection-summary-report", NodeKind::Activity, Some("examination"), "Sign Inspection Summary Report"),
    ("collect-inspection-feedback", NodeKind::Activity, Some("examination"), "Collect inspection feedback"),
    ("record-peer-review-results", NodeKind::Activity, Some("examination"), "Record the results of the peer review, including the action items"),
    // rework and follow-up
    ("rf-start", NodeKind::StartEvent, Some("rework-and-follow-up"), "Start"),
    ("rf-end", NodeKind::EndEvent, Some("rework-and-follow-up"), "End"),
    ("rework-verification-needed", NodeKind::Gateway, Some("rework-and-follow-up"), "Is rework verification needed?"),
    ("take-corrective-actions", NodeKind::Subprocess, Some("rework-and-follow-up"), "Take corrective actions based on action items"),
    ("verify-action-items-closed", NodeKind::Subprocess, Some("rework-and-follow-up"), "Verify that the action items assigned in the meeting are closed"),
    // take corrective actions
    ("ca-start", NodeKind::StartEvent, Some("take-corrective-actions"), "Start"),
    ("ca-end", NodeKind::EndEvent, Some("take-corrective-actions"), "End"),
    ("correct-defects-and-typos", NodeKind::Activity, Some("take-corrective-actions"), "Correct defects and typos found and modify the work product"),
    ("correct-other-project-documents", NodeKind::Activity, Some("take-corrective-actions"), "Correct any other project documents based on identified defects"),
    ("report-rework-without-verification", NodeKind::Activity, Some("take-corrective-actions"), "Report defects found and corrected when no rework verification is needed"),
    ("record-rework-effort", NodeKind::Activity, Some("take-corrective-actions"), "Record the actual rework effort"),
    ("record-uncorrected-defects", NodeKind::Activity, Some("take-corrective-actions"), "Record any uncorrected defects"),
    // verify action items closed
    ("va-start", NodeKind::StartEvent, Some("verify-action-items-closed"), "Start"),
    ("va-end", NodeKind::EndEvent, Some("verify-action-items-closed"), "End"),
    ("confirm-issue-log-addressed", NodeKind::Activity, Some("verify-action-items-closed"), "Confirm that the author has addressed every item on the Issue Log"),
    ("examine-modified-work-product", NodeKind::Activity, Some("verify-action-items-closed"), "Examine the modified work product to judge whether rework was performed correctly"),
    ("report-defect-counts", NodeKind::Activity, Some("verify-action-items-closed"), "Report the number of defects found and corrected and the rework effort"),
    ("check-exit-criteria", NodeKind::Activity, Some("verify-action-items-closed"), "Check exit criteria"),
    ("exit-criteria-satisfied", NodeKind::Gateway, Some("verify-action-items-closed"), "Are the exit criteria satisfied?"),
    ("check-product-into-cm", NodeKind::Activity, Some("verify-action-items-closed"), "Check the baselined work product into the configuration management system"),
    ("deliver-summary-report-to-coordinator", NodeKind::Activity, Some("verify-action-items-closed"), "Deliver the Inspection Summary Report and defect counts to the peer review coordinator"),
    // data collection
    ("dc-start", NodeKind::StartEvent, Some("data-collection"), "Start"),
    ("dc-end", NodeKind::EndEvent, Some("data-collection"), "End"),
    ("collect-inspection-data", NodeKind::Activity, Some("data-collection"), "Collect inspection data"),
    ("store-peer-review-data", NodeKind::Activity, Some("data-collection"), "Store the data for future reference and analysis"),
    ("protect-peer-review-data", NodeKind::Activity, Some("data-collection"), "Protect the data against inappropriate use"),
    // improvement
    ("im-start", NodeKind::StartEvent, Some("improvement"), "Start"),
    ("im-end", NodeKind::EndEvent, Some("improvement"), "End"),
    ("act-on-team-recommendations", NodeKind::Activity, Some("improvement"), "Act on inspection team recommendations in a timely manner"),
    ("analyze-inspection-data", NodeKind::Activity, Some("improvement"), "Analyze inspection data"),
    ("include-frequent-anomalies-in-checklists", NodeKind::Activity, Some("improvement"), "Include frequently occurring anomalies in the inspection checklists"),
    ("inspect-checklists", NodeKind::Activity, Some("improvement"), "Inspect checklists"),
    ("analyze-waivers", NodeKind::Activity, Some("improvement"), "Analyze consistently granted or requested waivers"),
    ("analyze-preparation-and-meeting-times", NodeKind::Activity, Some("improvement"), "Analyze preparation times, meeting times, and number of participants"),
    ("assess-inspection-benefits", NodeKind::Activity, Some("improvement"), "Assess benefits achieved and improve the inspection process"),
    ("establish-reinspection-criteria", NodeKind::Activity, Some("improvement"), "Establish and maintain criteria for requiring another peer review"),
    ("establish-entry-exit-criteria", NodeKind::Activity, Some("improvement"), "Establish and maintain entry and exit criteria for the peer review"),
    ("define-data-collection-requirements", NodeKind::Activity, Some("improvement"), "Define requirements for collecting data during the peer review"),
];

/// (id, name, items) for the roles of the unified process.
fn role_nodes() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    vec![
        (
            "author",
            "Author",
            vec![
                "Creator or maintainer of the work product to be inspected",
                "States his objectives for the inspection",
                "Delivers work product and its specification to the moderator",
                "Works with the moderator to select inspectors and assign roles",
                "Addresses items on the Issue Log and Typo List",
                "Reports rework time and defect counts to the moderator",
            ],
        ),
        (
            "moderator",
            "Moderator",
            vec![
                "Plans, schedules, and leads the inspection events",
                "Works with author to select inspectors and assign roles",
                "Assembles inspection package and delivers it to inspectors at least 3 days prior to the inspection meeting",
                "Determines whether preparation is sufficient to hold the meeting",
                "Facilitates the inspection meeting and corrects any inappropriate behavior",
                "Leads inspection team in determining the work product appraisal",
                "Serves as verifier or delegates this responsibility",
                "Delivers completed Inspection Summary Report to the peer review coordinator",
            ],
        ),
        (
            "reader",
            "Reader",
            vec!["Presents portions of the work product to the inspection team"],
        ),
        (
            "recorder",
            "Recorder",
            vec![
                "Records and classifies issues raised during the inspection meeting",
                "Records inspection data required for process analysis",
            ],
        ),
        (
            "inspector",
            "Inspector",
            vec![
                "Examines the work product prior to the meeting to find defects",
                "Records preparation time",
                "Participates during the meeting to identify defects, raise issues, and suggest improvements",
            ],
        ),
        (
            "verifier",
            "Verifier",
            vec!["Performs follow-up to determine whether rework has been performed appropriately and correctly"],
        ),
        (
            "peer-review-coordinator",
            "Peer review coordinator",
            vec![
                "Custodian of the organization's inspection metrics database",
                "Maintains records of inspections conducted",
                "Generates reports on inspection data",
            ],
        ),
    ]
}

/// (id, name, items) for the data objects; only the Issue Log carries items.
fn data_object_nodes() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    vec![
        (
            "inspection-summary-report",
            "Inspection Summary Report",
            vec![],
        ),
        (
            "issue-log",
            "Issue Log",
            vec!["Origin", "Type", "Severity", "Location", "Description"],
        ),
        ("typo-list", "Typo List", vec![]),
        (
            "moderators-checklist",
            "Inspection Moderator's Checklist",
            vec![],
        ),
        (
            "lessons-learned-questionnaire",
            "Inspection Lessons Learned Questionnaire",
            vec![],
        ),
        ("review-checklist", "Review checklist", vec![]),
        ("work-product", "Work product to be inspected", vec![]),
        ("peer-review-schedule", "Peer review schedule", vec![]),
        (
            "entry-exit-criteria",
            "Entry and exit criteria for work products",
            vec![],
        ),
        (
            "reinspection-criteria",
            "Criteria for requiring another peer review",
            vec![],
        ),
        ("training-material", "Peer review training material", vec![]),
        ("action-items", "Peer review action items", vec![]),
        ("inspection-procedure", "Inspection procedure", vec![]),
        (
            "source-products",
            "Source products of the software product to be inspected",
            vec![],
        ),
        (
            "predecessor-product",
            "Predecessor software product",
            vec![],
        ),
        (
            "regulations-standards",
            "Regulations, standards, guidelines, plans, and procedures",
            vec![],
        ),
        ("product-specification", "Product specification", vec![]),
        ("performance-data", "Performance data", vec![]),
        ("waivers", "Waivers granted or requested", vec![]),
    ]
}

const ENTRY_CRITERIA: &[&str] = &[
    "Inspections are planned and documented in the appropriate project planning documents",
    "The relevant inspection inputs are available",
    "The software product to be inspected is complete and conforms to project standards for format",
    "Prior milestones upon which the software product depends are satisfied",
    "Required supporting documentation is available",
    "For a reinspection, all items noted on the anomaly list that affect the product are resolved",
    "The author selected an inspection approach for the product being reviewed",
    "The author has stated his objectives for this inspection",
    "Reviewers are trained in the peer review process",
    "Documents to be inspected are identified with a version number and have been spell-checked",
    "Source code to be inspected is identified with a version number and compiles without errors",
];

const EXIT_CRITERIA: &[&str] = &[
    "The activities of the inspection procedure have been accomplished and the required output exists",
    "The moderator agrees that the inspection objectives have been met",
    "Issues raised during the inspection are tracked to closure",
    "All major defects are corrected",
    "Uncorrected defects are logged in the project's defect tracking system",
    "The modified work product is checked into the project's configuration management system",
    "Earlier deliverables affected by changes are modified, checked in, and regression tested",
    "The moderator has collected and recorded the inspection data",
    "The completed Inspection Summary Report and defect counts are delivered to the peer review coordinator",
];

/// Sequence chains per scope; each window of two becomes an edge.
#[rustfmt::skip]
const CHAINS: &[&[&str]] = &[
    &["pr-start", "what-type-of-peer-review"],
    &["perform-inspection", "further-peer-review-needed"],
    &["perform-other-peer-review", "further-peer-review-needed"],
    &[
        "pi-start",
        "management-preparation",
        "planning-the-inspection",
        "check-entry-criteria",
        "procedure-overview-needed",
    ],
    &["overview-procedures", "product-overview-needed"],
    &[
        "overview-product",
        "preparation",
        "examination",
        "rework-and-follow-up",
        "data-collection",
        "improvement",
        "pi-end",
    ],
    &["po-start", "po-end"],
    &[
        "mp-start",
        "plan-inspection-time-and-resources",
        "provide-inspection-resources",
        "provide-inspection-training",
        "ensure-team-expertise",
        "ensure-inspections-planned-and-conducted",
        "mp-end",
    ],
    &[
        "pl-start",
        "initiate-inspection",
        "select-moderator",
        "assemble-inspection-materials",
        "identify-inspection-team",
        "assign-specific-responsibilities",
        "schedule-inspection-meeting",
        "distribute-inspection-materials",
        "set-comment-timetable",
        "specify-inspection-scope",
        "establish-inspection-rate",
        "pl-end",
    ],
    &[
        "op-start",
        "assign-roles",
        "answer-checklist-and-role-questions",
        "present-inspection-data",
        "op-end",
    ],
    &[
        "ov-start",
        "describe-work-product-features",
        "evaluate-assumptions-history-context",
        "ov-end",
    ],
    &[
        "pp-start",
        "examine-product-before-meeting",
        "document-and-send-anomalies",
        "classify-anomalies",
        "anomalies-extent-high",
    ],
    &["cancel-inspection-request-later", "pp-end"],
    &[
        "forward-anomalies-to-author",
        "specify-inspection-order",
        "prepare-product-presentation",
        "inspectors-prepared",
    ],
    &["gather-preparation-times", "pp-end"],
    &[
        "ex-start",
        "introduce-meeting",
        "establish-preparedness",
        "review-general-items",
        "present-product-to-team",
        "raise-defects-and-issues",
        "examine-product-objectively",
        "enter-anomalies-to-list",
        "answer-specific-questions",
        "disagreement-about-anomaly",
    ],
    &["review-anomaly-list", "make-exit-decision", "exit-decision-outcome"],
    &[
        "sign-inspection-summary-report",
        "collect-inspection-feedback",
        "record-peer-review-results",
        "ex-end",
    ],
    &["rf-start", "take-corrective-actions", "rework-verification-needed"],
    &["verify-action-items-closed", "rf-end"],
    &[
        "ca-start",
        "correct-defects-and-typos",
        "correct-other-project-documents",
        "report-rework-without-verification",
        "record-rework-effort",
        "record-uncorrected-defects",
        "ca-end",
    ],
    &[
        "va-start",
        "confirm-issue-log-addressed",
        "examine-modified-work-product",
        "report-defect-counts",
        "check-exit-criteria",
        "exit-criteria-satisfied",
    ],
    &["check-product-into-cm", "deliver-summary-report-to-coordinator", "va-end"],
    &[
        "dc-start",
        "collect-inspection-data",
        "store-peer-review-data",
        "protect-peer-review-data",
        "dc-end",
    ],
    &[
        "im-start",
        "act-on-team-recommendations",
        "analyze-inspection-data",
        "include-frequent-anomalies-in-checklists",
        "inspect-checklists",
        "analyze-waivers",
        "analyze-preparation-and-meeting-times",
        "assess-inspection-benefits",
        "establish-reinspection-criteria",
        "establish-entry-exit-criteria",
        "define-data-collection-requirements",
        "im-end",
    ],
];

/// Guarded sequence edges out of gateways.
#[rustfmt::skip]
const GUARDED: &[(&str, &str, &str)] = &[
    ("what-type-of-peer-review", "perform-inspection", "inspection"),
    ("what-type-of-peer-review", "perform-other-peer-review", "other review type"),
    ("further-peer-review-needed", "pr-end", "no"),
    ("further-peer-review-needed", "what-type-of-peer-review", "yes"),
    ("procedure-overview-needed", "overview-procedures", "yes"),
    ("procedure-overview-needed", "product-overview-needed", "no"),
    ("product-overview-needed", "overview-product", "yes"),
    ("product-overview-needed", "preparation", "no"),
    ("anomalies-extent-high", "cancel-inspection-request-later", "yes"),
    ("anomalies-extent-high", "forward-anomalies-to-author", "no"),
    ("inspectors-prepared", "reschedule-inspection-meeting", "no"),
    ("inspectors-prepared", "gather-preparation-times", "yes"),
    ("reschedule-inspection-meeting", "prepare-product-presentation", ""),
    ("disagreement-about-anomaly", "enter-anomalies-to-list", "log and mark for resolution"),
    ("disagreement-about-anomaly", "review-anomaly-list", "no"),
    ("exit-decision-outcome", "sign-inspection-summary-report", "accept"),
    ("exit-decision-outcome", "introduce-meeting", "reinspect"),
    ("rework-verification-needed", "verify-action-items-closed", "yes"),
    ("rework-verification-needed", "rf-end", "no"),
    ("exit-criteria-satisfied", "check-product-into-cm", "yes"),
    ("exit-criteria-satisfied", "examine-modified-work-product", "no"),
];

const PERFORMS: &[(&str, &str)] = &[
    ("moderator", "introduce-meeting"),
    ("moderator", "establish-preparedness"),
    ("moderator", "schedule-inspection-meeting"),
    ("moderator", "distribute-inspection-materials"),
    ("moderator", "make-exit-decision"),
    ("moderator", "gather-preparation-times"),
    ("moderator", "reschedule-inspection-meeting"),
    ("moderator", "deliver-summary-report-to-coordinator"),
    ("moderator", "sign-inspection-summary-report"),
    ("author", "initiate-inspection"),
    ("author", "describe-work-product-features"),
    ("author", "answer-specific-questions"),
    ("author", "correct-defects-and-typos"),
    ("author", "sign-inspection-summary-report"),
    ("reader", "present-product-to-team"),
    ("recorder", "enter-anomalies-to-list"),
    ("recorder", "record-peer-review-results"),
    ("inspector", "examine-product-before-meeting"),
    ("inspector", "raise-defects-and-issues"),
    ("inspector", "examine-product-objectively"),
    ("inspector", "sign-inspection-summary-report"),
    ("verifier", "examine-modified-work-product"),
    ("peer-review-coordinator", "collect-inspection-data"),
];

/// (data object, flow node) pairs: the object is an input of the node.
const INPUTS: &[(&str, &str)] = &[
    ("work-product", "examine-product-before-meeting"),
    ("work-product", "present-product-to-team"),
    ("work-product", "examine-modified-work-product"),
    ("work-product", "distribute-inspection-materials"),
    ("issue-log", "review-anomaly-list"),
    ("issue-log", "confirm-issue-log-addressed"),
    ("typo-list", "correct-defects-and-typos"),
    (
        "inspection-summary-report",
        "deliver-summary-report-to-coordinator",
    ),
    ("moderators-checklist", "establish-preparedness"),
    ("review-checklist", "examine-product-before-meeting"),
    ("review-checklist", "inspect-checklists"),
    ("entry-exit-criteria", "check-entry-criteria"),
    ("entry-exit-criteria", "check-exit-criteria"),
    ("training-material", "provide-inspection-training"),
    ("action-items", "confirm-issue-log-addressed"),
    (
        "inspection-procedure",
        "answer-checklist-and-role-questions",
    ),
    ("source-products", "examine-product-objectively"),
    (
        "predecessor-product",
        "evaluate-assumptions-history-context",
    ),
    ("regulations-standards", "examine-product-objectively"),
    ("product-specification", "examine-product-before-meeting"),
    ("performance-data", "analyze-inspection-data"),
    ("waivers", "analyze-waivers"),
];

/// (flow node, data object) pairs: the node produces the object.
const OUTPUTS: &[(&str, &str)] = &[
    ("enter-anomalies-to-list", "issue-log"),
    ("enter-anomalies-to-list", "typo-list"),
    ("correct-defects-and-typos", "issue-log"),
    (
        "sign-inspection-summary-report",
        "inspection-summary-report",
    ),
    ("record-rework-effort", "inspection-summary-report"),
    (
        "collect-inspection-feedback",
        "lessons-learned-questionnaire",
    ),
    (
        "include-frequent-anomalies-in-checklists",
        "review-checklist",
    ),
    ("schedule-inspection-meeting", "peer-review-schedule"),
    ("establish-entry-exit-criteria", "entry-exit-criteria"),
    ("establish-reinspection-criteria", "reinspection-criteria"),
    ("record-peer-review-results", "action-items"),
    ("make-exit-decision", "waivers"),
];

/// Short descriptions for the nodes where the textual export benefits from
/// one; everything else stays terse.
#[rustfmt::skip]
const DESCRIPTIONS: &[(&str, &str)] = &[
    ("peer-review", "Unified peer review process combining CMMI-DEV, IEEE 1028 and the Process Impact peer review description"),
    ("perform-inspection", "Inspection, the most formal peer review type"),
    ("perform-other-peer-review", "Placeholder for walkthroughs and other less formal review types"),
    ("management-preparation", "Management ensures the inspection is resourced, planned and staffed"),
    ("planning-the-inspection", "The inspection leader plans, schedules and distributes the inspection"),
    ("overview-procedures", "The inspection leader introduces procedures, roles and checklists"),
    ("overview-product", "The author introduces the work product to the inspectors"),
    ("preparation", "Inspectors examine the product individually before the meeting"),
    ("examination", "The inspection meeting: present, examine, record anomalies, decide"),
    ("rework-and-follow-up", "The author corrects defects and the rework is verified"),
    ("take-corrective-actions", "Rework of the product and related documents"),
    ("verify-action-items-closed", "Follow-up until every action item is closed"),
    ("data-collection", "Inspection data is recorded, stored and protected"),
    ("improvement", "The inspection process itself is analyzed and improved"),
    ("check-entry-criteria", "Added activity without a source instance; both entry and exit criteria exist, so checking them is symmetric"),
    ("assign-roles", "Inspection roles are assigned by the inspection leader"),
    ("describe-work-product-features", "Renamed from the IEEE overview wording to the clearer Process Impact task"),
];

fn peer_review_process() -> ProcessData {
    let mut nodes = BTreeMap::new();
    for (id, kind, parent, name) in NODES {
        nodes.insert(
            id.to_string(),
            ProcessNode {
                id: id.to_string(),
                kind: *kind,
                parent_id: parent.map(str::to_string),
                name: name.to_string(),
                description: String::new(),
                items: Vec::new(),
            },
        );
    }
    for (id, name, items) in role_nodes() {
        nodes.insert(
            id.to_string(),
            ProcessNode {
                id: id.to_string(),
                kind: NodeKind::Role,
                parent_id: Some("peer-review".to_string()),
                name: name.to_string(),
                description: String::new(),
                items: items.iter().map(|s| s.to_string()).collect(),
            },
        );
    }
    for (id, name, items) in data_object_nodes() {
        nodes.insert(
            id.to_string(),
            ProcessNode {
                id: id.to_string(),
                kind: NodeKind::DataObject,
                parent_id: Some("peer-review".to_string()),
                name: name.to_string(),
                description: String::new(),
                items: items.iter().map(|s| s.to_string()).collect(),
            },
        );
    }
    nodes.insert(
        "entry-criteria".to_string(),
        ProcessNode {
            id: "entry-criteria".to_string(),
            kind: NodeKind::CriteriaSet,
            parent_id: Some("perform-inspection".to_string()),
            name: "Entry criteria".to_string(),
            description: String::new(),
            items: ENTRY_CRITERIA.iter().map(|s| s.to_string()).collect(),
        },
    );
    nodes.insert(
        "exit-criteria".to_string(),
        ProcessNode {
            id: "exit-criteria".to_string(),
            kind: NodeKind::CriteriaSet,
            parent_id: Some("perform-inspection".to_string()),
            name: "Exit criteria".to_string(),
            description: String::new(),
            items: EXIT_CRITERIA.iter().map(|s| s.to_string()).collect(),
        },
    );
    for (id, description) in DESCRIPTIONS {
        nodes.get_mut(*id).unwrap().description = description.to_string();
    }

    let mut edges = BTreeSet::new();
    for chain in CHAINS {
        for pair in chain.windows(2) {
            edges.insert(ProcessEdge {
                from_id: pair[0].to_string(),
                to_id: pair[1].to_string(),
                relation: EdgeRelation::Sequence,
                guard: None,
            });
        }
    }
    for (from, to, guard) in GUARDED {
        edges.insert(ProcessEdge {
            from_id: from.to_string(),
            to_id: to.to_string(),
            relation: EdgeRelation::Sequence,
            guard: if guard.is_empty() {
                None
            } else {
                Some(guard.to_string())
            },
        });
    }
    for (role, node) in PERFORMS {
        edges.insert(ProcessEdge {
            from_id: role.to_string(),
            to_id: node.to_string(),
            relation: EdgeRelation::Performs,
            guard: None,
        });
    }
    for (object, node) in INPUTS {
        edges.insert(ProcessEdge {
            from_id: object.to_string(),
            to_id: node.to_string(),
            relation: EdgeRelation::Input,
            guard: None,
        });
    }
    for (node, object) in OUTPUTS {
        edges.insert(ProcessEdge {
            from_id: node.to_string(),
            to_id: object.to_string(),
            relation: EdgeRelation::Output,
            guard: None,
        });
    }

    ProcessData { nodes, edges }
}

// ---------------------------------------------------------------------------
// Mapping of the unified process to the three approaches
// ---------------------------------------------------------------------------

/// (sources, targets, primary, note). Process Impact task ids are expanded
/// with their order and role-association companions when building.
#[rustfmt::skip]
const MAPPINGS: &[(&[&str], &[&str], &str, &str)] = &[
    // process and subprocess level
    (&["IEEE1028-2008 6 intro", "PI ov"], &["perform-inspection"], "IEEE1028-2008 6 intro", "inspection chapter and process overview"),
    (&["VER SG2"], &["peer-review"], "VER SG2", ""),
    (&["IEEE1028-2008 6.5.1 (title)", "VER GP 2.10"], &["management-preparation"], "IEEE1028-2008 6.5.1 (title)", ""),
    (&["IEEE1028-2008 6.5.2 (title)", "VER SP2.1", "PI1"], &["planning-the-inspection"], "IEEE1028-2008 6.5.2 (title)", ""),
    (&["IEEE1028-2008 6.5.3 (title)"], &["overview-procedures"], "IEEE1028-2008 6.5.3 (title)", ""),
    (&["IEEE1028-2008 6.5.4 (title)", "PI2"], &["overview-product"], "IEEE1028-2008 6.5.4 (title)", ""),
    (&["IEEE1028-2008 6.5.5 (title)", "VER SP2.1 SUBP10", "PI3"], &["preparation"], "IEEE1028-2008 6.5.5 (title)", ""),
    (&["IEEE1028-2008 6.5.6 (title)", "VER SP2.2", "VER SP2.2 SUBP1", "PI4"], &["examination"], "IEEE1028-2008 6.5.6 (title)", ""),
    (&["IEEE1028-2008 6.5.7 (title)"], &["rework-and-follow-up"], "IEEE1028-2008 6.5.7 (title)", ""),
    (&["PI5"], &["take-corrective-actions"], "PI5", "added subprocess from the Rework phase"),
    (&["PI6"], &["verify-action-items-closed"], "PI6", ""),
    (&["IEEE1028-2008 6.8 (title)", "VER SP2.3"], &["data-collection"], "IEEE1028-2008 6.8 (title)", ""),
    (&["IEEE1028-2008 6.9 (title)"], &["improvement"], "IEEE1028-2008 6.9 (title)", ""),
    // gateways
    (&["VER SP2.1 SUBP1"], &["what-type-of-peer-review"], "VER SP2.1 SUBP1", ""),
    (&["VER SP2.2 SUBP6"], &["further-peer-review-needed"], "VER SP2.2 SUBP6", ""),
    (&["PI15"], &["procedure-overview-needed", "product-overview-needed"], "PI15", "one decision in the source, two gateways in the unified flow"),
    // management preparation
    (&["IEEE1028-2008 6.5.1", "IEEE1028-2008 6.5.1 e"], &["ensure-inspections-planned-and-conducted"], "IEEE1028-2008 6.5.1 e", ""),
    (&["IEEE1028-2008 6.5.1 a", "VER GP 2.2"], &["plan-inspection-time-and-resources"], "IEEE1028-2008 6.5.1 a", ""),
    (&["IEEE1028-2008 6.5.1 b", "VER GP 2.3"], &["provide-inspection-resources"], "IEEE1028-2008 6.5.1 b", ""),
    (&["IEEE1028-2008 6.5.1 c"], &["provide-inspection-training"], "IEEE1028-2008 6.5.1 c", ""),
    (&["IEEE1028-2008 6.5.1 d"], &["ensure-team-expertise"], "IEEE1028-2008 6.5.1 d", ""),
    (&["IEEE1028-2008 6.5.1 f"], &["act-on-team-recommendations"], "IEEE1028-2008 6.5.1 f", "moved from management preparation to improvement"),
    // planning
    (&["PI11"], &["initiate-inspection"], "PI11", ""),
    (&["PI12"], &["select-moderator"], "PI12", ""),
    (&["IEEE1028-2008 6.5.2 1", "PI14", "PI17"], &["assemble-inspection-materials"], "IEEE1028-2008 6.5.2 1", ""),
    (&["IEEE1028-2008 6.5.2 a", "PI16"], &["identify-inspection-team"], "IEEE1028-2008 6.5.2 a", ""),
    (&["IEEE1028-2008 6.5.2 b", "VER SP2.1 SUBP9"], &["assign-specific-responsibilities"], "IEEE1028-2008 6.5.2 b", ""),
    (&["IEEE1028-2008 6.5.2 c", "VER SP2.1 SUBP6", "PI13"], &["schedule-inspection-meeting"], "IEEE1028-2008 6.5.2 c", ""),
    (&["IEEE1028-2008 6.5.2 d", "VER SP2.1 SUBP7", "VER SP2.1 SUBP8", "PI18"], &["distribute-inspection-materials"], "IEEE1028-2008 6.5.2 d", ""),
    (&["IEEE1028-2008 6.5.2 e"], &["set-comment-timetable"], "IEEE1028-2008 6.5.2 e", ""),
    (&["IEEE1028-2008 6.5.2 f"], &["specify-inspection-scope"], "IEEE1028-2008 6.5.2 f", ""),
    (&["IEEE1028-2008 6.5.2 g"], &["establish-inspection-rate"], "IEEE1028-2008 6.5.2 g", ""),
    (&["PI risk"], &["initiate-inspection"], "PI risk", "risk assessment guides the choice of review approach"),
    // overview of procedures
    (&["IEEE1028-2008 6.5.3 1"], &["assign-roles"], "IEEE1028-2008 6.5.3 1", ""),
    (&["VER GP 2.4", "VER GP 2.7"], &["assign-roles", "identify-inspection-team", "assign-specific-responsibilities"], "VER GP 2.4", "generic practices mapped across the staffing activities"),
    (&["IEEE1028-2008 6.5.3 2"], &["answer-checklist-and-role-questions", "present-inspection-data"], "IEEE1028-2008 6.5.3 2", ""),
    // overview of product
    (&["IEEE1028-2008 6.5.4", "PI21"], &["describe-work-product-features"], "PI21", "Process Impact wording replaced the IEEE activity name at the third iteration"),
    (&["PI22"], &["evaluate-assumptions-history-context"], "PI22", ""),
    // preparation
    (&["IEEE1028-2008 6.5.5 1", "PI31"], &["examine-product-before-meeting"], "IEEE1028-2008 6.5.5 1", ""),
    (&["IEEE1028-2008 6.5.5 2"], &["document-and-send-anomalies"], "IEEE1028-2008 6.5.5 2", ""),
    (&["IEEE1028-2008 6.5.5 3"], &["classify-anomalies", "cancel-inspection-request-later", "forward-anomalies-to-author", "anomalies-extent-high"], "IEEE1028-2008 6.5.5 3", "one source text sliced into three activities and a gateway"),
    (&["IEEE1028-2008 6.5.5 4"], &["specify-inspection-order"], "IEEE1028-2008 6.5.5 4", ""),
    (&["IEEE1028-2008 6.5.5 5"], &["prepare-product-presentation"], "IEEE1028-2008 6.5.5 5", ""),
    (&["IEEE1028-2008 6.5.5 6"], &["inspectors-prepared", "reschedule-inspection-meeting", "gather-preparation-times"], "IEEE1028-2008 6.5.5 6", ""),
    (&["PI32"], &["gather-preparation-times"], "PI32", ""),
    // examination
    (&["IEEE1028-2008 6.5.6.1 (title)", "PI41"], &["introduce-meeting"], "IEEE1028-2008 6.5.6.1 (title)", ""),
    (&["PI42"], &["establish-preparedness"], "PI42", ""),
    (&["IEEE1028-2008 6.5.6.2 (title)"], &["review-general-items"], "IEEE1028-2008 6.5.6.2 (title)", ""),
    (
        &["IEEE1028-2008 6.5.6.3 (title)", "VER SP2.2 SUBP2", "PI43", "PI44", "PI45", "PI46"],
        &["present-product-to-team", "raise-defects-and-issues", "examine-product-objectively", "enter-anomalies-to-list", "answer-specific-questions", "disagreement-about-anomaly"],
        "IEEE1028-2008 6.5.6.3 (title)",
        "examination of the product and anomaly recording",
    ),
    (&["IEEE1028-2008 6.5.6.4 (title)"], &["review-anomaly-list"], "IEEE1028-2008 6.5.6.4 (title)", ""),
    (&["IEEE1028-2008 6.5.6.5 (title)", "VER SP2.2 SUBP7", "PI47"], &["make-exit-decision", "exit-decision-outcome"], "IEEE1028-2008 6.5.6.5 (title)", ""),
    (&["PI48"], &["sign-inspection-summary-report"], "PI48", ""),
    (&["PI49"], &["collect-inspection-feedback"], "PI49", ""),
    (&["VER SP2.2 SUBP3", "VER SP2.2 SUBP5"], &["record-peer-review-results"], "VER SP2.2 SUBP3", ""),
    // rework
    (&["PI51"], &["correct-defects-and-typos"], "PI51", ""),
    (&["PI52"], &["correct-other-project-documents"], "PI52", ""),
    (&["PI54"], &["report-rework-without-verification", "rework-verification-needed"], "PI54", ""),
    (&["PI55"], &["record-rework-effort"], "PI55", ""),
    (&["PI53"], &["record-uncorrected-defects"], "PI53", ""),
    // follow-up
    (&["IEEE1028-2008 6.5.7", "PI61"], &["confirm-issue-log-addressed"], "IEEE1028-2008 6.5.7", ""),
    (&["PI62"], &["examine-modified-work-product"], "PI62", ""),
    (&["PI63"], &["report-defect-counts"], "PI63", ""),
    (&["PI64"], &["check-exit-criteria", "exit-criteria-satisfied"], "PI64", ""),
    (&["PI65"], &["check-product-into-cm"], "PI65", ""),
    (&["PI66"], &["deliver-summary-report-to-coordinator"], "PI66", ""),
    // data collection
    (&["IEEE1028-2008 6.8", "VER SP2.2 SUBP4", "VER SP2.3 SUBP1", "VER GP 2.6"], &["collect-inspection-data"], "IEEE1028-2008 6.8", ""),
    (&["VER SP2.3 SUBP2"], &["store-peer-review-data"], "VER SP2.3 SUBP2", ""),
    (&["VER SP2.3 SUBP3"], &["protect-peer-review-data"], "VER SP2.3 SUBP3", ""),
    (
        &["PI Dat1", "PI Dat2", "PI Dat3", "PI Dat4", "PI Dat5", "PI Dat6", "PI Dat7", "PI Dat8", "PI Dat9", "PI Dat10", "PI Dat11", "PI Dat12"],
        &["collect-inspection-data"],
        "PI Dat1",
        "measurable data items collected during the inspection",
    ),
    (&["PI meas"], &["data-collection"], "PI meas", ""),
    (
        &["PI Met1", "PI Met2", "PI Met3", "PI Met4", "PI Met5", "PI Met6", "PI Met7", "PI Met8", "PI Met9", "PI Met10", "PI Met11", "PI Met12"],
        &["analyze-inspection-data"],
        "PI Met1",
        "metrics computed from the collected data",
    ),
    // improvement
    (
        &["IEEE1028-2008 6.9"],
        &["analyze-inspection-data", "include-frequent-anomalies-in-checklists", "inspect-checklists", "analyze-waivers", "analyze-preparation-and-meeting-times"],
        "IEEE1028-2008 6.9",
        "the improvement chapter sliced into its activities",
    ),
    (&["VER SP2.3 SUBP4"], &["analyze-inspection-data"], "VER SP2.3 SUBP4", ""),
    (&["VER SP2.1 SUBP5"], &["inspect-checklists"], "VER SP2.1 SUBP5", ""),
    (&["IEEE1028-2008 6.9 f"], &["assess-inspection-benefits"], "IEEE1028-2008 6.9 f", ""),
    (&["VER SP2.1 SUBP4"], &["establish-reinspection-criteria"], "VER SP2.1 SUBP4", ""),
    (&["VER SP2.1 SUBP3"], &["establish-entry-exit-criteria"], "VER SP2.1 SUBP3", ""),
    (&["VER SP2.1 SUBP2"], &["define-data-collection-requirements"], "VER SP2.1 SUBP2", ""),
    (&["PI maint"], &["improvement"], "PI maint", ""),
    (&["PI Def"], &["enter-anomalies-to-list"], "PI Def", ""),
    (&["PI App"], &["make-exit-decision"], "PI App", ""),
    // criteria
    (&["IEEE1028-2008 6.4 entry", "PI ent"], &["entry-criteria"], "IEEE1028-2008 6.4 entry", ""),
    (&["IEEE1028-2008 6.6 exit", "PI ex"], &["exit-criteria"], "IEEE1028-2008 6.6 exit", ""),
    // data objects
    (
        &[
            "IEEE 1028 In should a", "IEEE 1028 In should d",
            "IEEE 1028 Out shall a", "IEEE 1028 Out shall b", "IEEE 1028 Out shall c",
            "IEEE 1028 Out shall e", "IEEE 1028 Out shall f", "IEEE 1028 Out shall i",
            "IEEE 1028 Out shall k", "IEEE 1028 Out shall l", "IEEE 1028 Out should n",
            "IEEE 1028 Out may o", "VER SP2.2 TWP1", "VER SP2.2 TWP3", "PI WA1", "PID2",
        ],
        &["inspection-summary-report"],
        "PI WA1",
        "documented evidence of the inspection",
    ),
    (
        &[
            "IEEE 1028 In should d", "IEEE 1028 In should e", "IEEE 1028 In may m",
            "IEEE 1028 Out shall h", "IEEE 1028 Out should m",
            "VER SP2.2 TWP2", "VER SP2.2 TWP3", "VER SP2.3 TWP1", "PI WA2", "PID3", "PID5",
        ],
        &["issue-log"],
        "PI WA2",
        "",
    ),
    (&["IEEE 1028 In should d", "VER SP2.2 TWP3", "PI WA3", "PID4"], &["typo-list"], "PI WA3", ""),
    (&["PI WA4"], &["moderators-checklist"], "PI WA4", ""),
    (&["IEEE 1028 Out shall g", "PI WA5"], &["lessons-learned-questionnaire"], "PI WA5", ""),
    (&["VER SP2.1 TWP2", "IEEE 1028 In should g", "PI WA6"], &["review-checklist"], "PI WA6", ""),
    (&["VER SP2.1 TWP6", "IEEE 1028 In should b", "IEEE 1028 Out shall d", "PID1"], &["work-product"], "VER SP2.1 TWP6", ""),
    (&["VER SP2.1 TWP1"], &["peer-review-schedule"], "VER SP2.1 TWP1", ""),
    (&["VER SP2.1 TWP3"], &["entry-exit-criteria"], "VER SP2.1 TWP3", ""),
    (&["VER SP2.1 TWP4", "IEEE 1028 In may h"], &["reinspection-criteria"], "VER SP2.1 TWP4", ""),
    (&["VER SP2.1 TWP5"], &["training-material"], "VER SP2.1 TWP5", ""),
    (&["VER SP2.3 TWP2"], &["action-items"], "VER SP2.3 TWP2", ""),
    (&["IEEE 1028 In should c"], &["inspection-procedure"], "IEEE 1028 In should c", ""),
    (&["IEEE 1028 In should f"], &["source-products"], "IEEE 1028 In should f", ""),
    (&["IEEE 1028 In may i"], &["predecessor-product"], "IEEE 1028 In may i", ""),
    (&["IEEE 1028 In may j"], &["regulations-standards"], "IEEE 1028 In may j", ""),
    (&["IEEE 1028 In may k"], &["product-specification"], "IEEE 1028 In may k", ""),
    (&["IEEE 1028 In may l"], &["performance-data"], "IEEE 1028 In may l", ""),
    (&["IEEE 1028 Out shall j"], &["waivers"], "IEEE 1028 Out shall j", ""),
    // roles
    (&["IEEE 1028 Role author", "IEEE 1028 Resp author", "PI Role author", "PI Resp author"], &["author"], "PI Role author", ""),
    (&["IEEE 1028 Role inspection leader", "IEEE 1028 Resp inspection leader", "PI Role moderator", "PI Resp moderator"], &["moderator"], "PI Role moderator", "the Process Impact term won over inspection leader"),
    (&["IEEE 1028 Role reader", "IEEE 1028 Resp reader", "PI Role reader", "PI Resp reader"], &["reader"], "PI Role reader", ""),
    (&["IEEE 1028 Role recorder", "IEEE 1028 Resp recorder", "PI Role recorder", "PI Resp recorder"], &["recorder"], "PI Role recorder", ""),
    (&["IEEE 1028 Role inspector", "IEEE 1028 Resp inspector", "PI Role inspector", "PI Resp inspector"], &["inspector"], "PI Role inspector", ""),
    (&["PI Role verifier", "PI Resp verifier"], &["verifier"], "PI Role verifier", ""),
    (&["PI Role peer review coordinator", "PI Resp peer review coordinator"], &["peer-review-coordinator"], "PI Role peer review coordinator", ""),
    (&["VER SG2 roles"], &["moderator", "reader", "recorder", "author"], "VER SG2 roles", "the CMMI role list names four of the unified roles"),
];

fn build_mappings(pi_task_ids: &BTreeSet<String>) -> BTreeMap<String, Mapping> {
    let mut result = BTreeMap::new();
    for (index, (sources, targets, primary, note)) in MAPPINGS.iter().enumerate() {
        let id = format!("m-{:04}", index + 1);
        let mut qa_ids: BTreeSet<String> = BTreeSet::new();
        for source in *sources {
            qa_ids.insert(source.to_string());
            // A task's order and role-association instances travel with it.
            if pi_task_ids.contains(*source) {
                qa_ids.insert(format!("{source} order"));
                qa_ids.insert(format!("{source} roles"));
            }
        }
        result.insert(
            id.clone(),
            Mapping {
                id,
                qa_ids,
                node_ids: targets.iter().map(|s| s.to_string()).collect(),
                primary_source: Some(primary.to_string()),
                note: note.to_string(),
            },
        );
    }
    result
}

/// Builds the complete peer-review example workspace.
pub fn peer_review() -> Workspace {
    let pi_task_ids: BTreeSet<String> = PI_TASKS.iter().map(|(id, _, _)| id.to_string()).collect();
    let mut ws = Workspace::default();
    for data in [cmmi_approach(), ieee_approach(), pi_approach()] {
        ws.approaches.insert(data.meta.id.clone(), data);
    }
    ws.processes
        .insert(PROCESS_ID.to_string(), peer_review_process());
    ws.mappings
        .insert(PROCESS_ID.to_string(), build_mappings(&pi_task_ids));
    ws.exclusions.entry(PI.to_string()).or_default().insert(
        "PI par".to_string(),
        Exclusion {
            qa_id: "PI par".to_string(),
            rationale:
                "General guideline regarding the application of the mapped texts; the role content is captured in the role descriptions"
                    .to_string(),
        },
    );
    ws.decisions = vec![
        Decision {
            timestamp: "2012-06-15T10:00:00Z".to_string(),
            actor: "zdk".to_string(),
            context: "map/peer-review".to_string(),
            decision: "used the Process Impact term 'moderator' for the inspection leader role"
                .to_string(),
            rationale: "clearest of the three synonyms".to_string(),
        },
        Decision {
            timestamp: "2012-06-15T10:05:00Z".to_string(),
            actor: "zdk".to_string(),
            context: "map/peer-review".to_string(),
            decision: "renamed the product overview activity to the Process Impact wording"
                .to_string(),
            rationale: "the PI21 description was found easier to understand at the third iteration"
                .to_string(),
        },
        Decision {
            timestamp: "2012-06-22T09:30:00Z".to_string(),
            actor: "zdk".to_string(),
            context: "exclusions/process-impact".to_string(),
            decision: "excluded the participants text from the mapping".to_string(),
            rationale: "general guideline about all roles; content captured per role".to_string(),
        },
    ];
    ws
}
