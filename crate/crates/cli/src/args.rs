use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exfam::Condition;

#[derive(Debug, Parser)]
#[command(
    name = "exfam",
    version,
    about = "Construct, verify and search set systems with exchange properties"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for pair scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family file for a shipped construction.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one condition and print PASS or a violating pair.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        condition: VerifyCondition,
        /// Run pair scans even when |F|^2 exceeds 10^10.
        #[arg(long)]
        force: bool,
    },
    /// Count members, comparing with the closed form when one exists.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Size of the largest member.
    Rank {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Exact minimum size (or rank) of an atomic family satisfying a condition.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        condition: SearchCondition,
        #[arg(long, value_enum, default_value_t = YesNo::Yes)]
        downward_closed: YesNo,
        #[arg(long, default_value_t = exfam::search::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Objective::Size)]
        objective: Objective,
    },
    /// Extract the s-ary tree of distinct members.
    Extract {
        #[command(flatten)]
        family: FamilyArgs,
        /// Branching factor s.
        #[arg(
            long,
            required_unless_present = "default_params",
            conflicts_with = "default_params"
        )]
        branching: Option<usize>,
        /// Depth t.
        #[arg(
            long,
            required_unless_present = "default_params",
            conflicts_with = "default_params"
        )]
        depth: Option<usize>,
        /// Use the asymptotic parameter choice for the family's n.
        #[arg(long)]
        default_params: bool,
    },
    /// Evaluate the known bounds at n.
    Bounds {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct FamilySource {
    /// Shipped construction.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Family file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub source: FamilySource,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Aak,
    Tight,
    Thm3,
    Powerset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchCondition {
    Weak,
    Cond3,
    Ordered,
    Strong,
    Both,
    Matroid,
}

impl From<SearchCondition> for Condition {
    fn from(c: SearchCondition) -> Self {
        match c {
            SearchCondition::Weak => Condition::Weak,
            SearchCondition::Cond3 => Condition::Cond3,
            SearchCondition::Ordered => Condition::SizeOrdered,
            SearchCondition::Strong => Condition::StrongOrdered,
            SearchCondition::Both => Condition::Both,
            SearchCondition::Matroid => Condition::MatroidLike,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyCondition {
    Weak,
    Cond3,
    Ordered,
    Strong,
    Both,
    Matroid,
    Atomic,
    DownwardClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YesNo {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Size,
    Rank,
}
