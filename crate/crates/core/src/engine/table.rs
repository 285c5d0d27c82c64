use std::sync::OnceLock;

use crate::model::{AiLiteracy, ContentType, ContentTypeSet, SystemGoal, UserGoal};

use ContentType::*;

/// Per-factor admissible content types. Rows are combined by union within a
/// factor and intersection across factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    system_goal_rows: [ContentTypeSet; 4],
    user_goal_rows: [ContentTypeSet; 4],
    literacy_rows: [ContentTypeSet; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    RowMissingWhy(String),
    LowLiteracyRow(ContentTypeSet),
    HighLiteracyRow(ContentTypeSet),
}

impl DecisionTable {
    /// The shipped table.
    ///
    /// The cells are a reconstruction: the smallest table consistent with the
    /// eight worked scenarios in the golden corpus and with the prose
    /// constraints (discovery includes Example and Why, error management
    /// includes How, Why and How-To, privacy excludes Certainty, reliability
    /// includes Certainty). `tests/table_oracle.rs` re-checks all of them.
    pub fn canonical() -> &'static DecisionTable {
        static TABLE: OnceLock<DecisionTable> = OnceLock::new();
        TABLE.get_or_init(|| DecisionTable {
            system_goal_rows: [
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, Example]),
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, HowTo]),
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, How, Certainty, HowTo]),
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, How, Certainty]),
            ],
            user_goal_rows: [
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, How, Certainty, HowTo]),
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, How]),
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, Certainty]),
                ContentTypeSet::all(),
            ],
            literacy_rows: [
                ContentTypeSet::of(&[InputOutput, WhyWhyNot, How, Certainty]),
                ContentTypeSet::all(),
            ],
        })
    }

    pub fn system_row(&self, goal: SystemGoal) -> ContentTypeSet {
        self.system_goal_rows[goal.index()]
    }

    pub fn user_row(&self, goal: UserGoal) -> ContentTypeSet {
        self.user_goal_rows[goal.index()]
    }

    pub fn literacy_row(&self, literacy: AiLiteracy) -> ContentTypeSet {
        self.literacy_rows[literacy.index()]
    }

    pub fn set_system_row(&mut self, goal: SystemGoal, row: ContentTypeSet) {
        self.system_goal_rows[goal.index()] = row;
    }

    pub fn set_user_row(&mut self, goal: UserGoal, row: ContentTypeSet) {
        self.user_goal_rows[goal.index()] = row;
    }

    pub fn set_literacy_row(&mut self, literacy: AiLiteracy, row: ContentTypeSet) {
        self.literacy_rows[literacy.index()] = row;
    }

    /// Structural invariants an edited table must keep.
    pub fn check_invariants(&self) -> Vec<TableViolation> {
        let mut out = Vec::new();
        let rows = SystemGoal::ALL
            .iter()
            .map(|g| (format!("system goal {g}"), self.system_row(*g)))
            .chain(UserGoal::ALL.iter().map(|g| (format!("user goal {g}"), self.user_row(*g))))
            .chain(
                AiLiteracy::ALL
                    .iter()
                    .map(|l| (format!("{l} literacy"), self.literacy_row(*l))),
            );
        for (name, row) in rows {
            if !row.contains(WhyWhyNot) {
                out.push(TableViolation::RowMissingWhy(name));
            }
        }
        let low = self.literacy_row(AiLiteracy::Low);
        if low != ContentTypeSet::of(&[InputOutput, WhyWhyNot, How, Certainty]) {
            out.push(TableViolation::LowLiteracyRow(low));
        }
        let high = self.literacy_row(AiLiteracy::High);
        if high != ContentTypeSet::all() {
            out.push(TableViolation::HighLiteracyRow(high));
        }
        out
    }
}
