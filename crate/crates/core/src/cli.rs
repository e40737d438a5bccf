//! The `verify` runner: resolves flags and an optional config file into a
//! run plan, executes the named suites and renders text and JSON reports.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::additive::{
    additive_bimonoid_laws, additive_laws, antipode_from_negatives, antipode_on_bang_laws, build_additive_bimonoid,
    deriving_naturality, distderive_laws, finrel_negatives_search, monoidal_rule_laws, multiset_nabla_oracle_laws,
    neg_one_from_antipode, negation_laws, negatives_from_unit, object_exponential_bundle, rel_deriving,
    rel_deriving_transformation, sampled_additive_laws, sampled_convolution_laws, search_witness, ADDITIVE_ANCHOR,
    ANTIPODE_NEG_ANCHOR, DERIVING_ANCHOR, NEGATIVES_ANCHOR,
};
use crate::error::{Error, Result};
use crate::hopf::{
    antipode_candidates, cartesian_monoid_to_bimonoid, count_witness, group_hopf, hopf_diagrams, ComonoidData, Group,
    HopfMonoidData, ANTIPODE_UNIQUE_ANCHOR, HOPF_ANCHOR,
};
use crate::instances::{Enumerable, FinRel, FinSet, MatQ, ZeroCat};
use crate::kernel::{
    set_default_timings, Checker, DiagramResult, Elem, Instance, Obj, Probe, Status, SuiteResult, Witness,
    DEFAULT_BUDGET,
};
use crate::lifting::{
    assemble_mell, check_exp_lifting, check_mixed_law, copies_bundle, group_algebra_bundle, regular_algebra,
    trivial_algebra, BundleMutations, LiftingMonadBundle, EXP_LIFTING_ANCHOR, MELL_ANCHOR, MIXED_ANCHOR,
};
use crate::modality::{
    check_modality, em_cartesian_laws, identity_modality, induced_comonoid_laws, lafont_factorization,
    multiset_modality, sample_maps, LAFONT_ANCHOR, MODALITY_ANCHOR,
};
use crate::monadic::{
    algebra_laws, algebra_morphism_witness, bimonoid_to_comonoidal_monad, comonoidal_laws, correspondence_laws,
    em_smc_laws, hopf_inverse_from_antipode, hopf_monad_laws, monad_laws, monoid_to_monad, Mor, MONAD_ANCHOR,
};
use crate::monoidal::{
    cartesian_comonoid, check_cartesian, check_closed, check_interchange, check_naturality, check_smc_coherence,
    Cartesian, SMC_ANCHOR,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const BUDGET_ENV: &str = "EMLIFT_BUDGET";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_DEGREE: usize = 3;
const DEFAULT_SAMPLES: usize = 50;
const DEFAULT_SEED: u64 = 0;
/// Random probes for coherence checks on matrices.
const MATQ_PROBES: usize = 200;

#[derive(Parser, Debug)]
#[command(
    name = "emlift",
    version,
    about = "Law checker for exponential modalities and their liftings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run law suites and report every diagram with its witnesses.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct VerifyArgs {
    /// Suites to run (comma separated); all suites when omitted.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Restrict instance suites to these instances.
    #[arg(long, value_delimiter = ',')]
    pub instance: Vec<String>,
    /// Restrict bundle suites to these bundles.
    #[arg(long, value_delimiter = ',')]
    pub bundle: Vec<String>,
    /// Inputs of degree ≤ N are compared exhaustively.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Seed for sampled maps and random probes.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sampled maps per naturality or convolution family.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Element budget for enumerations and images.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Deliberately break a structure map (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub mutate: Vec<String>,
    /// Print the suite, bundle and mutation catalog and exit.
    #[arg(long)]
    pub list: bool,
    /// JSON config file; explicit flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Extra group table added to the group-driven suites.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Record wall time per diagram (makes reports nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

/// The config-file form of [`VerifyArgs`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub suite: Option<Vec<String>>,
    pub instance: Option<Vec<String>>,
    pub bundle: Option<Vec<String>>,
    pub degree: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub budget: Option<usize>,
    pub report: Option<PathBuf>,
    pub mutate: Option<Vec<String>>,
    pub group: Option<PathBuf>,
    pub timings: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    SmcCoherence,
    HopfLaws,
    Monadic,
    Modality,
    MixedLaw,
    ExpLifting,
    Mell,
    Additive,
    Differential,
    Lafont,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::SmcCoherence,
        SuiteName::HopfLaws,
        SuiteName::Monadic,
        SuiteName::Modality,
        SuiteName::MixedLaw,
        SuiteName::ExpLifting,
        SuiteName::Mell,
        SuiteName::Additive,
        SuiteName::Differential,
        SuiteName::Lafont,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::SmcCoherence => "smc-coherence",
            SuiteName::HopfLaws => "hopf-laws",
            SuiteName::Monadic => "monadic",
            SuiteName::Modality => "modality",
            SuiteName::MixedLaw => "mixed-law",
            SuiteName::ExpLifting => "exp-lifting",
            SuiteName::Mell => "mell",
            SuiteName::Additive => "additive",
            SuiteName::Differential => "differential",
            SuiteName::Lafont => "lafont",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            SuiteName::SmcCoherence => SMC_ANCHOR,
            SuiteName::HopfLaws => HOPF_ANCHOR,
            SuiteName::Monadic => MONAD_ANCHOR,
            SuiteName::Modality => MODALITY_ANCHOR,
            SuiteName::MixedLaw => MIXED_ANCHOR,
            SuiteName::ExpLifting => EXP_LIFTING_ANCHOR,
            SuiteName::Mell => MELL_ANCHOR,
            SuiteName::Additive => ADDITIVE_ANCHOR,
            SuiteName::Differential => DERIVING_ANCHOR,
            SuiteName::Lafont => LAFONT_ANCHOR,
        }
    }

    pub fn parse(s: &str) -> Result<SuiteName> {
        let s = s.trim();
        let alias = match s {
            "smc" => "smc-coherence",
            "hopf" => "hopf-laws",
            other => other,
        };
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == alias)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`; see --list")))
    }

    /// Suites that run on bundles rather than on bare instances.
    pub fn takes_bundles(self) -> bool {
        matches!(self, SuiteName::MixedLaw | SuiteName::ExpLifting | SuiteName::Mell)
    }

    /// Instances an instance suite runs on.
    pub fn instances(self) -> &'static [InstanceName] {
        use InstanceName::*;
        match self {
            SuiteName::SmcCoherence | SuiteName::HopfLaws | SuiteName::Monadic => &[FinSet, FinRel, MatQ],
            SuiteName::Modality => &[FinSet, FinRel],
            SuiteName::Additive => &[FinRel, MatQ, Zero],
            SuiteName::Differential => &[FinRel],
            SuiteName::Lafont => &[FinSet],
            SuiteName::MixedLaw | SuiteName::ExpLifting | SuiteName::Mell => &[],
        }
    }

    /// Bundles a bundle suite runs on.
    pub fn bundles(self) -> &'static [BundleName] {
        use BundleName::*;
        match self {
            SuiteName::MixedLaw | SuiteName::ExpLifting => &[Z2CopiesRel, Z3CopiesRel, ExpARel],
            SuiteName::Mell => &[Z2CopiesRel, Z3CopiesRel, KZ2Matq, KZ3Matq],
            _ => &[],
        }
    }

    /// Why an instance is not a target of this suite, for error messages.
    fn refusal(self, i: InstanceName) -> String {
        match (self, i) {
            (SuiteName::Additive, InstanceName::FinSet) => "finset is not additive".into(),
            (SuiteName::Lafont, _) => {
                format!("cofree factorization is only searched exhaustively over finset, not {i}")
            }
            (SuiteName::Modality, _) => format!("no coalgebra modality is registered on {i}"),
            _ => format!("suite {} does not run on {i}", self.as_str()),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceName {
    FinSet,
    FinRel,
    MatQ,
    Zero,
}

impl InstanceName {
    pub const ALL: [InstanceName; 4] = [
        InstanceName::FinSet,
        InstanceName::FinRel,
        InstanceName::MatQ,
        InstanceName::Zero,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceName::FinSet => "finset",
            InstanceName::FinRel => "finrel",
            InstanceName::MatQ => "matq",
            InstanceName::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Result<InstanceName> {
        let s = s.trim();
        InstanceName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown instance `{s}`; see --list")))
    }

    fn describe(self) -> &'static str {
        match self {
            InstanceName::FinSet => "finite sets and functions (Cartesian, closed)",
            InstanceName::FinRel => "finite and graded sets with relations (closed, additive by union)",
            InstanceName::MatQ => "exact rational matrices (closed, additive with negatives)",
            InstanceName::Zero => "the one-object one-map category (additive with negatives)",
        }
    }
}

impl fmt::Display for InstanceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BundleName {
    Z2CopiesRel,
    Z3CopiesRel,
    ExpARel,
    KZ2Matq,
    KZ3Matq,
}

impl BundleName {
    pub const ALL: [BundleName; 5] = [
        BundleName::Z2CopiesRel,
        BundleName::Z3CopiesRel,
        BundleName::ExpARel,
        BundleName::KZ2Matq,
        BundleName::KZ3Matq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BundleName::Z2CopiesRel => "z2-copies-rel",
            BundleName::Z3CopiesRel => "z3-copies-rel",
            BundleName::ExpARel => "exp-a-rel",
            BundleName::KZ2Matq => "k-z2-matq",
            BundleName::KZ3Matq => "k-z3-matq",
        }
    }

    pub fn parse(s: &str) -> Result<BundleName> {
        let s = s.trim();
        BundleName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown bundle `{s}`; see --list")))
    }

    pub fn instance(self) -> InstanceName {
        match self {
            BundleName::KZ2Matq | BundleName::KZ3Matq => InstanceName::MatQ,
            _ => InstanceName::FinRel,
        }
    }

    fn group(self) -> Option<Group> {
        match self {
            BundleName::Z2CopiesRel | BundleName::KZ2Matq => Some(Group::cyclic(2)),
            BundleName::Z3CopiesRel | BundleName::KZ3Matq => Some(Group::cyclic(3)),
            BundleName::ExpARel => None,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            BundleName::Z2CopiesRel => "Z2⊗− over relations, multiset modality, g ↦ n·[g] coalgebra",
            BundleName::Z3CopiesRel => "Z3⊗− over relations, multiset modality, g ↦ n·[g] coalgebra",
            BundleName::ExpARel => "!A⊗− for A = {a} over relations, bimonoid (∇, u, Δ, e), cofree coalgebra",
            BundleName::KZ2Matq => "K[Z2]⊗− over rational matrices, no modality (closed and Hopf layers)",
            BundleName::KZ3Matq => "K[Z3]⊗− over rational matrices, no modality (closed and Hopf layers)",
        }
    }
}

impl fmt::Display for BundleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    AntipodeIdentity,
    DropEpsPair,
    CorruptMuSharp,
    BreakN,
    UToSingleton,
    DropEmptySplitting,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::AntipodeIdentity,
        Mutation::DropEpsPair,
        Mutation::CorruptMuSharp,
        Mutation::BreakN,
        Mutation::UToSingleton,
        Mutation::DropEmptySplitting,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mutation::AntipodeIdentity => "antipode-identity",
            Mutation::DropEpsPair => "drop-eps-pair",
            Mutation::CorruptMuSharp => "corrupt-mu-sharp",
            Mutation::BreakN => "break-n",
            Mutation::UToSingleton => "u-to-singleton",
            Mutation::DropEmptySplitting => "drop-empty-splitting",
        }
    }

    pub fn parse(s: &str) -> Result<Mutation> {
        let s = s.trim();
        let alias = match s {
            "drop-ε-pair" => "drop-eps-pair",
            "corrupt-μ♯" | "corrupt-mu♯" => "corrupt-mu-sharp",
            other => other,
        };
        Mutation::ALL
            .into_iter()
            .find(|m| m.as_str() == alias)
            .ok_or_else(|| Error::Config(format!("unknown mutation `{s}`; see --list")))
    }

    fn describe(self) -> &'static str {
        match self {
            Mutation::AntipodeIdentity => "replace the antipode S by the identity",
            Mutation::DropEpsPair => "drop the pair g ↦ [g] from the copies coalgebra",
            Mutation::CorruptMuSharp => "remove the empty-bag outputs of the lifted action μ♯",
            Mutation::BreakN => "replace one monoid factor of n by e;u",
            Mutation::UToSingleton => "let u relate ∗ to a singleton bag instead of the empty bag",
            Mutation::DropEmptySplitting => "forbid empty parts in the multiset comultiplications",
        }
    }

    /// Whether `suite` on `target` exercises the mutated structure map in a
    /// diagram that can detect it. An antipode replaced by the identity is
    /// only a change when some group element is not its own inverse.
    pub fn affects(self, suite: SuiteName, target: Target, groups: &[Group]) -> bool {
        let breaks_inverse = |gs: &[Group]| gs.iter().any(|g| g.elems().iter().any(|x| g.inv(x) != x));
        let copies = |t: Target| matches!(t, Target::Bundle(BundleName::Z2CopiesRel | BundleName::Z3CopiesRel));
        match self {
            Mutation::AntipodeIdentity => match (suite, target) {
                (SuiteName::HopfLaws, Target::Instance(_)) => breaks_inverse(groups),
                (SuiteName::Mell, Target::Bundle(b)) => b.group().is_some_and(|g| breaks_inverse(&[g])),
                (SuiteName::Additive, Target::Instance(InstanceName::FinRel)) => true,
                _ => false,
            },
            Mutation::DropEpsPair | Mutation::BreakN if suite == SuiteName::Differential => true,
            Mutation::DropEpsPair => suite.takes_bundles() && copies(target),
            Mutation::CorruptMuSharp => matches!(suite, SuiteName::MixedLaw | SuiteName::Mell) && copies(target),
            Mutation::BreakN => matches!(suite, SuiteName::ExpLifting | SuiteName::Mell) && copies(target),
            Mutation::UToSingleton => {
                matches!(suite, SuiteName::MixedLaw | SuiteName::ExpLifting)
                    && target == Target::Bundle(BundleName::ExpARel)
            }
            Mutation::DropEmptySplitting => {
                (suite.takes_bundles() && copies(target))
                    || (suite == SuiteName::Modality && target == Target::Instance(InstanceName::FinRel))
            }
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a suite runs against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Instance(InstanceName),
    Bundle(BundleName),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Instance(i) => i.fmt(f),
            Target::Bundle(b) => b.fmt(f),
        }
    }
}

/// A fully resolved configuration; echoed verbatim in the JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub suites: Vec<SuiteName>,
    pub instances: Vec<InstanceName>,
    pub bundles: Vec<BundleName>,
    pub degree: usize,
    pub seed: u64,
    pub samples: usize,
    pub budget: usize,
    pub mutations: Vec<Mutation>,
    /// Name of the extra group read from `--group`.
    pub extra_group: Option<String>,
    pub timings: bool,
    #[serde(skip)]
    pub group: Option<Group>,
    #[serde(skip)]
    pub report: Option<PathBuf>,
    #[serde(skip)]
    pub plan: Vec<(SuiteName, Target)>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config_echo: RunConfig,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        let any = |s: Status| self.suites.iter().any(|r| r.count(s) > 0);
        if any(Status::Fail) {
            EXIT_FAIL
        } else if any(Status::ResourceExceeded) {
            EXIT_RESOURCE
        } else {
            EXIT_PASS
        }
    }

    /// One summary block per suite, failures listed with their first witness.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.summary());
            out.push('\n');
        }
        let total: usize = self.suites.iter().map(|s| s.diagrams.len()).sum();
        let count = |st: Status| self.suites.iter().map(|s| s.count(st)).sum::<usize>();
        out.push_str(&format!(
            "total: {} suites, {total} diagrams, {} pass, {} fail, {} resource-exceeded, {} skipped\n",
            self.suites.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::ResourceExceeded),
            count(Status::Skipped)
        ));
        out
    }
}

fn parse_list<T: Ord>(raw: &[String], parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let set: BTreeSet<T> = raw
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(s))
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

fn env_budget() -> Result<Option<usize>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{BUDGET_ENV}=`{v}` is not a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn read_group(path: &PathBuf) -> Result<Group> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read group table {}: {e}", path.display())))?;
    let g = Group::parse(&text).map_err(|e| match e {
        Error::Config(m) | Error::Invalid(m) => Error::Config(format!("bad group table {}: {m}", path.display())),
        other => other,
    })?;
    let stock = ["Z1", "Z2", "Z3", "Z4", "V4"];
    if stock.contains(&g.name()) {
        return Err(Error::Config(format!(
            "group table {} reuses the stock name {}",
            path.display(),
            g.name()
        )));
    }
    Ok(g)
}

/// Resolves flags over the config file over `EMLIFT_BUDGET` over defaults,
/// and validates every name before anything runs.
pub fn resolve(args: &VerifyArgs) -> Result<RunConfig> {
    let file = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str::<FileConfig>(&text)
                .map_err(|e| Error::Config(format!("bad config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let pick = |flag: &Vec<String>, file: &Option<Vec<String>>| -> Vec<String> {
        if flag.is_empty() {
            file.clone().unwrap_or_default()
        } else {
            flag.clone()
        }
    };
    let suites = parse_list(&pick(&args.suite, &file.suite), SuiteName::parse)?;
    let instances = parse_list(&pick(&args.instance, &file.instance), InstanceName::parse)?;
    let bundles = parse_list(&pick(&args.bundle, &file.bundle), BundleName::parse)?;
    let mutations = parse_list(&pick(&args.mutate, &file.mutate), Mutation::parse)?;
    let budget = match args.budget.or(file.budget) {
        Some(b) => b,
        None => env_budget()?.unwrap_or(DEFAULT_BUDGET),
    };
    if budget == 0 {
        return Err(Error::Config("budget must be positive".into()));
    }
    let group_path = args.group.clone().or(file.group.clone());
    let group = group_path.as_ref().map(read_group).transpose()?;
    let mut cfg = RunConfig {
        suites: if suites.is_empty() {
            SuiteName::ALL.to_vec()
        } else {
            suites
        },
        instances,
        bundles,
        degree: args.degree.or(file.degree).unwrap_or(DEFAULT_DEGREE),
        seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        samples: args.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
        budget,
        mutations,
        extra_group: group.as_ref().map(|g| g.name().to_string()),
        timings: args.timings || file.timings.unwrap_or(false),
        group,
        report: args.report.clone().or(file.report.clone()),
        plan: Vec::new(),
    };
    cfg.plan = plan(&cfg)?;
    for m in &cfg.mutations {
        if !cfg.plan.iter().any(|&(s, t)| m.affects(s, t, &groups_for(&cfg, s, t))) {
            return Err(Error::Config(format!(
                "mutation {m} is not exercised by any selected suite; it would pass silently"
            )));
        }
    }
    Ok(cfg)
}

/// Every (suite, target) pair to run, in report order.
fn plan(cfg: &RunConfig) -> Result<Vec<(SuiteName, Target)>> {
    let bundle_suites = cfg.suites.iter().any(|s| s.takes_bundles());
    if !cfg.bundles.is_empty() && !bundle_suites && !cfg.suites.contains(&SuiteName::Differential) {
        return Err(Error::Config(
            "--bundle given but no selected suite runs on bundles".into(),
        ));
    }
    let mut out = Vec::new();
    for &s in &cfg.suites {
        if s.takes_bundles() {
            let chosen: Vec<BundleName> = s
                .bundles()
                .iter()
                .copied()
                .filter(|b| cfg.bundles.is_empty() || cfg.bundles.contains(b))
                .filter(|b| cfg.instances.is_empty() || cfg.instances.contains(&b.instance()))
                .collect();
            if chosen.is_empty() {
                let names: Vec<&str> = s.bundles().iter().map(|b| b.as_str()).collect();
                return Err(Error::Config(format!(
                    "suite {s} has no selected bundle; it runs on {}",
                    names.join(", ")
                )));
            }
            out.extend(chosen.into_iter().map(|b| (s, Target::Bundle(b))));
        } else {
            let chosen: Vec<InstanceName> = s
                .instances()
                .iter()
                .copied()
                .filter(|i| cfg.instances.is_empty() || cfg.instances.contains(i))
                .collect();
            if chosen.is_empty() {
                let why: Vec<String> = cfg.instances.iter().map(|&i| s.refusal(i)).collect();
                return Err(Error::Config(format!("suite {s} cannot run: {}", why.join("; "))));
            }
            out.extend(chosen.into_iter().map(|i| (s, Target::Instance(i))));
        }
    }
    Ok(out)
}

/// The groups an instance suite iterates over.
fn groups_for(cfg: &RunConfig, suite: SuiteName, target: Target) -> Vec<Group> {
    let mut gs = match (suite, target) {
        (SuiteName::HopfLaws, Target::Instance(InstanceName::MatQ)) => vec![Group::cyclic(2), Group::cyclic(3)],
        (SuiteName::HopfLaws, Target::Instance(_)) => {
            vec![Group::cyclic(2), Group::cyclic(3), Group::cyclic(4), Group::klein()]
        }
        (SuiteName::Monadic, _) => vec![Group::cyclic(2), Group::cyclic(3)],
        (SuiteName::Lafont, _) => vec![Group::trivial(), Group::cyclic(2), Group::cyclic(3)],
        _ => return Vec::new(),
    };
    gs.extend(cfg.group.clone());
    gs
}

fn has(cfg: &RunConfig, m: Mutation) -> bool {
    cfg.mutations.contains(&m)
}

/// Runs the plan. Construction errors inside a suite become failing (or
/// resource-exceeded) diagrams rather than aborting the run.
pub fn run(cfg: &RunConfig) -> Report {
    set_default_timings(cfg.timings);
    let mut suites: Vec<SuiteResult> = cfg
        .plan
        .iter()
        .map(|&(s, t)| {
            let mut r = run_one(cfg, s, t);
            r.name = format!("{s}@{t}");
            r.anchor = s.anchor().to_string();
            r.sort();
            r
        })
        .collect();
    suites.sort_by(|a, b| a.name.cmp(&b.name));
    Report {
        schema_version: SCHEMA_VERSION,
        config_echo: cfg.clone(),
        suites,
    }
}

fn construction_failure(suite: SuiteName, e: Error) -> SuiteResult {
    SuiteResult::new(
        suite.as_str(),
        suite.anchor(),
        vec![DiagramResult::from_outcome("construction", suite.anchor(), Err(e))],
    )
}

fn run_one(cfg: &RunConfig, suite: SuiteName, target: Target) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let groups = groups_for(cfg, suite, target);
    let (rel, set, mat) = (FinRel::new(cfg.budget), FinSet::new(cfg.budget), MatQ::new(cfg.budget));
    let out = match (suite, target) {
        (SuiteName::SmcCoherence, Target::Instance(i)) => Ok(run_smc(cfg, i, &set, &rel, &mat)),
        (SuiteName::HopfLaws, Target::Instance(InstanceName::FinSet)) => {
            Ok(run_hopf(cfg, &set, &groups, &antipode_uniqueness))
        }
        (SuiteName::HopfLaws, Target::Instance(InstanceName::FinRel)) => {
            Ok(run_hopf(cfg, &rel, &groups, &|_, _, _| {}))
        }
        (SuiteName::HopfLaws, Target::Instance(InstanceName::MatQ)) => Ok(run_hopf(cfg, &mat, &groups, &|_, _, _| {})),
        (SuiteName::Monadic, Target::Instance(InstanceName::FinSet)) => Ok(run_monadic(cfg, &set, &groups)),
        (SuiteName::Monadic, Target::Instance(InstanceName::FinRel)) => Ok(run_monadic(cfg, &rel, &groups)),
        (SuiteName::Monadic, Target::Instance(InstanceName::MatQ)) => Ok(run_monadic(cfg, &mat, &groups)),
        (SuiteName::Modality, Target::Instance(InstanceName::FinSet)) => Ok(run_modality_finset(cfg, &set)),
        (SuiteName::Modality, Target::Instance(InstanceName::FinRel)) => Ok(run_modality_finrel(cfg, &rel)),
        (SuiteName::Additive, Target::Instance(InstanceName::FinRel)) => Ok(run_additive_finrel(cfg, &rel)),
        (SuiteName::Additive, Target::Instance(InstanceName::MatQ)) => Ok(run_additive_matq(cfg, &mat)),
        (SuiteName::Additive, Target::Instance(InstanceName::Zero)) => Ok(run_additive_zero(cfg)),
        (SuiteName::Differential, Target::Instance(_)) => Ok(run_differential(cfg, &rel)),
        (SuiteName::Lafont, Target::Instance(_)) => Ok(run_lafont(cfg, &set, &groups)),
        (s, Target::Bundle(b)) if s.takes_bundles() => match b.instance() {
            InstanceName::MatQ => matq_bundle(cfg, b, &mat).and_then(|x| run_bundle_suite(&mat, s, &x, probe)),
            _ => finrel_bundle(cfg, b, &rel).and_then(|x| run_bundle_suite(&rel, s, &x, probe)),
        },
        (s, t) => Err(Error::Unsupported(format!("suite {s} does not run on {t}"))),
    };
    out.unwrap_or_else(|e| construction_failure(suite, e))
}

fn run_bundle_suite<I: crate::monoidal::Closed>(
    inst: &I,
    suite: SuiteName,
    bundle: &LiftingMonadBundle<I>,
    probe: Probe,
) -> Result<SuiteResult> {
    match suite {
        SuiteName::MixedLaw => check_mixed_law(inst, bundle, probe),
        SuiteName::ExpLifting => check_exp_lifting(inst, bundle, probe),
        SuiteName::Mell => assemble_mell(inst, bundle, probe),
        other => Err(Error::Unsupported(format!("suite {other} does not run on bundles"))),
    }
}

fn bundle_mutations(cfg: &RunConfig) -> BundleMutations {
    BundleMutations {
        antipode_identity: has(cfg, Mutation::AntipodeIdentity),
        drop_eps_pair: has(cfg, Mutation::DropEpsPair),
        corrupt_mu_sharp: has(cfg, Mutation::CorruptMuSharp),
        break_n: has(cfg, Mutation::BreakN),
        drop_empty_splitting: has(cfg, Mutation::DropEmptySplitting),
    }
}

/// Builds a FinRel bundle with the configured mutations applied.
pub fn finrel_bundle(cfg: &RunConfig, b: BundleName, inst: &FinRel) -> Result<LiftingMonadBundle<FinRel>> {
    let probe = Probe::exhaustive(cfg.degree);
    match b {
        BundleName::Z2CopiesRel | BundleName::Z3CopiesRel => copies_bundle(
            inst,
            &b.group().expect("copies bundles carry a group"),
            bundle_mutations(cfg),
            probe,
        ),
        BundleName::ExpARel => {
            object_exponential_bundle(inst, &Obj::base("A", &["a"]), has(cfg, Mutation::UToSingleton), probe)
        }
        other => Err(Error::Unsupported(format!(
            "bundle {other} lives over {}",
            other.instance()
        ))),
    }
}

/// Builds a MatQ bundle with the configured mutations applied.
pub fn matq_bundle(cfg: &RunConfig, b: BundleName, inst: &MatQ) -> Result<LiftingMonadBundle<MatQ>> {
    let probe = Probe::exhaustive(cfg.degree);
    match b.group() {
        Some(g) if b.instance() == InstanceName::MatQ => {
            group_algebra_bundle(inst, &g, has(cfg, Mutation::AntipodeIdentity), probe)
        }
        _ => Err(Error::Unsupported(format!("bundle {b} lives over {}", b.instance()))),
    }
}

fn finite_objects() -> (Obj, Obj) {
    (Obj::base("X", &["a", "b"]), Obj::base("Y", &["c", "d", "e"]))
}

fn run_smc(cfg: &RunConfig, i: InstanceName, set: &FinSet, rel: &FinRel, mat: &MatQ) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let (x, y) = finite_objects();
    let finite = vec![Obj::Unit, x.clone(), y.clone()];
    let mut out = SuiteResult::new(SuiteName::SmcCoherence.as_str(), SMC_ANCHOR, Vec::new());
    match i {
        InstanceName::FinSet => {
            out.absorb("coherence", check_smc_coherence(set, &finite, probe));
            out.absorb("interchange", check_interchange(set, &finite, probe));
            out.absorb(
                "naturality",
                check_naturality(set, &finite, cfg.samples, cfg.seed, probe),
            );
            out.absorb("cartesian", check_cartesian(set, &finite, cfg.seed, probe));
            out.absorb("closed", check_closed(set, &[Obj::Unit, x], cfg.seed, probe, true));
        }
        InstanceName::FinRel => {
            let graded = vec![Obj::Unit, x.clone(), Obj::bang(&Obj::base("A", &["a"]))];
            out.absorb("coherence", check_smc_coherence(rel, &graded, probe));
            out.absorb("interchange", check_interchange(rel, &graded, probe));
            out.absorb(
                "naturality",
                check_naturality(rel, &finite, cfg.samples, cfg.seed, probe),
            );
            out.absorb("closed", check_closed(rel, &[Obj::Unit, x], cfg.seed, probe, true));
        }
        InstanceName::MatQ => {
            let random = Probe::random(cfg.degree, cfg.samples.max(MATQ_PROBES), cfg.seed);
            out.absorb("coherence", check_smc_coherence(mat, &finite, random));
            out.absorb("interchange", check_interchange(mat, &finite, random));
            out.absorb(
                "naturality",
                check_naturality(mat, &finite, cfg.samples, cfg.seed, random),
            );
        }
        InstanceName::Zero => {}
    }
    out
}

fn mutated_hopf<I: Instance>(cfg: &RunConfig, inst: &I, g: &Group) -> Result<HopfMonoidData<I::Mor>> {
    let h = group_hopf(inst, g)?;
    if has(cfg, Mutation::AntipodeIdentity) {
        return Ok(h.with_antipode(inst.id(&g.carrier())?));
    }
    Ok(h)
}

fn tag(g: &Group) -> String {
    format!("{}:", g.name().to_lowercase())
}

type HopfExtra<I> = dyn Fn(&mut Checker<'_, I>, &str, &HopfMonoidData<Mor<I>>);

/// Exhaustive antipode count; antipodes are unique.
fn antipode_uniqueness<I: Enumerable>(ck: &mut Checker<'_, I>, t: &str, h: &HopfMonoidData<Mor<I>>) {
    let inst = ck.inst;
    ck.fact(format!("{t}antipode-unique"), ANTIPODE_UNIQUE_ANCHOR, || {
        let found = antipode_candidates(inst, &h.bimonoid)?.len();
        Ok(count_witness("antipodes by exhaustion", found, 1))
    });
}

fn run_hopf<I: Instance>(cfg: &RunConfig, inst: &I, groups: &[Group], extra: &HopfExtra<I>) -> SuiteResult {
    let mut ck = Checker::new(inst, Probe::exhaustive(cfg.degree));
    for g in groups {
        let t = tag(g);
        match mutated_hopf(cfg, inst, g) {
            Ok(h) => {
                hopf_diagrams(&mut ck, &t, &h);
                extra(&mut ck, &t, &h);
            }
            Err(e) => {
                ck.fact(format!("{t}construction"), HOPF_ANCHOR, || Err(e));
            }
        }
    }
    ck.finish(SuiteName::HopfLaws.as_str(), HOPF_ANCHOR)
}

fn run_monadic<I: Instance>(cfg: &RunConfig, inst: &I, groups: &[Group]) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(inst, probe);
    let x = Obj::base("X", &["a", "b"]);
    let objs = [Obj::Unit, x.clone()];
    for g in groups {
        let t = tag(g);
        let built = (|| -> Result<_> {
            let h = group_hopf(inst, g)?;
            let cm = bimonoid_to_comonoidal_monad(inst, &h.bimonoid, probe)?;
            let algebras = vec![
                trivial_algebra(inst, &h.bimonoid, &x)?,
                regular_algebra(&h.bimonoid.monoid),
                cm.monad.free_algebra(inst, &x)?,
            ];
            Ok((h, cm, algebras))
        })();
        let (h, cm, algebras) = match built {
            Ok(v) => v,
            Err(e) => {
                ck.fact(format!("{t}construction"), MONAD_ANCHOR, || Err(e));
                continue;
            }
        };
        let monad = monoid_to_monad(&h.bimonoid.monoid);
        monad_laws(&mut ck, &t, &monad, &objs);
        correspondence_laws(&mut ck, &t, &h.bimonoid);
        comonoidal_laws(&mut ck, &t, &cm, &objs);
        for a in &algebras {
            algebra_laws(&mut ck, &t, &cm.monad, a);
        }
        em_smc_laws(&mut ck, &t, &cm, &algebras);
        hopf_monad_laws(&mut ck, &t, &hopf_inverse_from_antipode(&h, &cm), &objs);
    }
    ck.finish(SuiteName::Monadic.as_str(), MONAD_ANCHOR)
}

/// Σ_{k≤d} C(k+n−1, n−1): bags of atoms over n letters with size ≤ d.
fn bag_count(n: usize, d: usize) -> usize {
    let choose = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
    (0..=d)
        .map(|k| {
            if n == 0 {
                usize::from(k == 0)
            } else {
                choose(k + n - 1, n - 1)
            }
        })
        .sum()
}

fn run_modality_finrel(cfg: &RunConfig, inst: &FinRel) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mmd = multiset_modality(inst, !has(cfg, Mutation::DropEmptySplitting));
    let x = Obj::base("X", &["a", "b"]);
    let y = Obj::base("Y", &["c"]);
    let mut out = check_modality(inst, &mmd, &[x.clone(), y.clone()], cfg.samples, cfg.seed, probe);
    let mut ck = Checker::new(inst, probe);
    for a in [&x, &y] {
        ck.fact(format!("bag-count[{a}]"), MODALITY_ANCHOR, || {
            let n = a.finite_elements(inst.budget)?.len();
            let found = Obj::bang(a).elements_upto(cfg.degree, inst.budget)?.len();
            Ok(count_witness(
                &format!("elements of !{a} up to degree {}", cfg.degree),
                found,
                bag_count(n, cfg.degree),
            ))
        });
        match mmd.modality.comonad.cofree(inst, a) {
            Ok(c) => induced_comonoid_laws(&mut ck, "cofree:", &mmd.modality, &c),
            Err(e) => {
                ck.fact(format!("cofree[{a}]"), MODALITY_ANCHOR, || Err(e));
            }
        }
    }
    out.diagrams.extend(ck.finish("", "").diagrams);
    out
}

fn run_modality_finset(cfg: &RunConfig, inst: &FinSet) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mmd = match identity_modality(inst) {
        Ok(m) => m,
        Err(e) => return construction_failure(SuiteName::Modality, e),
    };
    let x = Obj::base("X", &["a", "b"]);
    let y = Obj::base("Y", &["c"]);
    let mut out = check_modality(inst, &mmd, &[x.clone(), y.clone()], cfg.samples, cfg.seed, probe);
    let mut ck = Checker::new(inst, probe);
    let co = &mmd.modality.comonad;
    match (co.cofree(inst, &x), co.cofree(inst, &y)) {
        (Ok(cx), Ok(cy)) => {
            induced_comonoid_laws(&mut ck, "cofree:", &mmd.modality, &cx);
            em_cartesian_laws(&mut ck, "", &mmd, &cx, &cx, &cy, true);
        }
        (Err(e), _) | (_, Err(e)) => {
            ck.fact("cofree", MODALITY_ANCHOR, || Err(e));
        }
    }
    out.diagrams.extend(ck.finish("", "").diagrams);
    out
}

fn run_additive_finrel(cfg: &RunConfig, inst: &FinRel) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(inst, probe);
    let mmd = multiset_modality(inst, true);
    let x = Obj::base("X", &["a", "b"]);
    let y = Obj::base("Y", &["c"]);
    for a in [&x, &y] {
        multiset_nabla_oracle_laws(&mut ck, "", &mmd, a);
        match build_additive_bimonoid(inst, &mmd, a) {
            Ok(b) => additive_bimonoid_laws(&mut ck, "", &mmd, a, &b),
            Err(e) => {
                ck.fact(format!("bimonoid[{a}]"), ADDITIVE_ANCHOR, || Err(e));
            }
        }
    }
    sampled_convolution_laws(&mut ck, "", &mmd, &[x.clone(), y.clone()], cfg.samples, cfg.seed);
    sampled_additive_laws(&mut ck, "", &[Obj::Unit, x.clone(), y.clone()], cfg.samples, cfg.seed);
    ck.fact("negatives-search[K]", NEGATIVES_ANCHOR, || {
        let (n, valid) = finrel_negatives_search(inst)?;
        if let Some(w) = search_witness("relations K → K examined", n, 2) {
            return Ok(Some(w));
        }
        Ok(search_witness("candidates with 1_K ∪ r = ∅", valid.len(), 0))
    });
    ck.fact("antipode-from-negatives-refused", ANTIPODE_NEG_ANCHOR, || {
        let neg = crate::additive::Negation {
            neg_one_k: inst.id(&Obj::Unit)?,
        };
        Ok(match antipode_from_negatives(inst, &mmd, &neg, &y) {
            Err(Error::Unsupported(_)) => None,
            Err(e) => Some(Witness::new("S_Y", e.to_string(), "an unsupported-instance refusal")),
            Ok(_) => Some(Witness::new("S_Y", "constructed", "an unsupported-instance refusal")),
        })
    });
    // S = id on !Y is refuted wherever ∇ is not a projection
    ck.fact("identity-antipode-refuted[Y]", ANTIPODE_NEG_ANCHOR, || {
        let mut scratch = Checker::new(inst, probe);
        antipode_on_bang_laws(&mut scratch, "", &mmd, &y, &inst.id(&Obj::bang(&y))?);
        let refuted = scratch
            .results()
            .iter()
            .any(|d| d.status == Status::Fail && !d.witnesses.is_empty());
        Ok((!refuted).then(|| Witness::new("S = 1 on !Y", "all antipode diagrams pass", "a failing diagram")))
    });
    if has(cfg, Mutation::AntipodeIdentity) {
        match inst.id(&Obj::bang(&y)) {
            Ok(s) => antipode_on_bang_laws(&mut ck, "mutated:", &mmd, &y, &s),
            Err(e) => {
                ck.fact("mutated:construction", ANTIPODE_NEG_ANCHOR, || Err(e));
            }
        }
    }
    ck.finish(SuiteName::Additive.as_str(), ADDITIVE_ANCHOR)
}

fn run_additive_matq(cfg: &RunConfig, inst: &MatQ) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(inst, probe);
    let (x, y) = finite_objects();
    let objs = [Obj::Unit, x, y];
    sampled_additive_laws(&mut ck, "", &objs, cfg.samples, cfg.seed);
    let k = Obj::Unit;
    let neg = inst
        .id(&k)
        .map(|id| inst.scale(&crate::instances::matq::q(-1), &id))
        .and_then(|m| negatives_from_unit(inst, &m, &probe));
    match neg {
        Ok(neg) => {
            let maps = sample_maps(inst, &objs, cfg.samples, cfg.seed);
            ck.fact("negation-samples", NEGATIVES_ANCHOR, || {
                Ok(search_witness("sampled maps", maps.len(), cfg.samples))
            });
            negation_laws(&mut ck, "", &neg, &maps);
        }
        Err(e) => {
            ck.fact("negatives-from-minus-one", NEGATIVES_ANCHOR, || Err(e));
        }
    }
    ck.fact("rejects-plus-one", NEGATIVES_ANCHOR, || {
        Ok(match negatives_from_unit(inst, &inst.id(&k)?, &probe) {
            Err(Error::Invalid(_)) => None,
            Err(e) => Some(Witness::new("−1_K := 1_K", e.to_string(), "rejected")),
            Ok(_) => Some(Witness::new("−1_K := 1_K", "accepted", "rejected")),
        })
    });
    ck.finish(SuiteName::Additive.as_str(), ADDITIVE_ANCHOR)
}

fn run_additive_zero(cfg: &RunConfig) -> SuiteResult {
    let z = ZeroCat;
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(&z, probe);
    let k = Obj::Unit;
    let a = Obj::base("A", &["0"]);
    let u = z.unique(&a, &a);
    additive_laws(&mut ck, "", &u, &u, &u, &u, &u);
    let built = (|| -> Result<_> {
        let mmd = identity_modality(&z)?;
        let neg = negatives_from_unit(&z, &z.id(&k)?, &probe)?;
        let s = antipode_from_negatives(&z, &mmd, &neg, &a)?;
        let s_k = antipode_from_negatives(&z, &mmd, &neg, &k)?;
        Ok((mmd, neg, s, s_k))
    })();
    match built {
        Ok((mmd, neg, s, s_k)) => {
            antipode_on_bang_laws(&mut ck, "", &mmd, &a, &s);
            ck.fact("minus-one-round-trip", ANTIPODE_NEG_ANCHOR, || {
                let back = neg_one_from_antipode(&z, &mmd, &s_k)?;
                Ok((!z.payload_eq(&back, &neg.neg_one_k)).then(|| Witness::new("m_K;S_K;ε_K", "differs", "−1_K")))
            });
        }
        Err(e) => {
            ck.fact("construction", ANTIPODE_NEG_ANCHOR, || Err(e));
        }
    }
    ck.finish(SuiteName::Additive.as_str(), ADDITIVE_ANCHOR)
}

fn run_differential(cfg: &RunConfig, inst: &FinRel) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(inst, probe);
    let mmd = multiset_modality(inst, true);
    let d = rel_deriving_transformation();
    let x = Obj::base("X", &["a", "b"]);
    let y = Obj::base("Y", &["c"]);
    let a = Elem::atom("a");
    let adjoin_cases = [
        (Elem::empty_bag(), Elem::bag(vec![a.clone()])),
        (Elem::bag(vec![a.clone()]), Elem::bag(vec![a.clone(), a.clone()])),
    ];
    for (bag, expected) in adjoin_cases {
        let input = Elem::pair(bag, a.clone());
        ck.fact(format!("deriving-value[{}]", input.encode()), DERIVING_ANCHOR, || {
            let img = rel_deriving(&x).image(&input, expected.degree() + 1)?;
            let ok = img.len() == 1 && img[0] == expected;
            Ok((!ok).then(|| {
                let found: Vec<String> = img.iter().map(Elem::encode).collect();
                Witness::new(
                    input.encode(),
                    format!("{{{}}}", found.join(",")),
                    format!("{{{}}}", expected.encode()),
                )
            }))
        });
    }
    let objs = [x.clone(), y.clone()];
    monoidal_rule_laws(&mut ck, "", &mmd, &d, &objs);
    let maps = sample_maps(inst, &objs, cfg.samples, cfg.seed);
    deriving_naturality(&mut ck, "", &mmd, &d, &maps);
    let bundles: Vec<BundleName> = SuiteName::MixedLaw
        .bundles()
        .iter()
        .copied()
        .filter(|b| cfg.bundles.is_empty() || cfg.bundles.contains(b))
        .collect();
    for b in bundles {
        let t = format!("{b}:");
        match finrel_bundle(cfg, b, inst) {
            Ok(bundle) => match &bundle.law {
                Some(sl) => distderive_laws(&mut ck, &t, &sl.law, &sl.cm, &d, &bundle.objects),
                None => {
                    ck.fact(format!("{t}construction"), DERIVING_ANCHOR, || {
                        Err(Error::Unsupported(format!("bundle {b} carries no law")))
                    });
                }
            },
            Err(e) => {
                ck.fact(format!("{t}construction"), DERIVING_ANCHOR, || Err(e));
            }
        }
    }
    ck.finish(SuiteName::Differential.as_str(), DERIVING_ANCHOR)
}

/// For each group: every algebra map `f: C → A` between the listed G-sets
/// has exactly one comonoid-and-algebra map `f̂: C → !A` with `f̂;ε = f`.
fn run_lafont(cfg: &RunConfig, inst: &FinSet, groups: &[Group]) -> SuiteResult {
    let probe = Probe::exhaustive(cfg.degree);
    let mut ck = Checker::new(inst, probe);
    let mmd = match identity_modality(inst) {
        Ok(m) => m,
        Err(e) => return construction_failure(SuiteName::Lafont, e),
    };
    for g in groups {
        let t = tag(g);
        let built = (|| -> Result<_> {
            let b = cartesian_monoid_to_bimonoid(inst, &g.monoid().monoid_data(inst)?)?;
            let algebras = vec![
                regular_algebra(&b.monoid),
                trivial_algebra(inst, &b, &Obj::base("X", &["a", "b"]))?,
            ];
            Ok((monoid_to_monad(&b.monoid), algebras))
        })();
        let (monad, algebras) = match built {
            Ok(v) => v,
            Err(e) => {
                ck.fact(format!("{t}construction"), LAFONT_ANCHOR, || Err(e));
                continue;
            }
        };
        for c in &algebras {
            for a in &algebras {
                let name = format!("{t}cofree-factorization[{}→{}]", c.carrier, a.carrier);
                ck.fact(name, LAFONT_ANCHOR, || {
                    lafont_pair(inst, &mmd.modality, &monad, c, a, &probe)
                });
            }
        }
    }
    ck.finish(SuiteName::Lafont.as_str(), LAFONT_ANCHOR)
}

fn lafont_pair<I: Enumerable + Cartesian>(
    inst: &I,
    md: &crate::modality::CoalgebraModalityData<I>,
    monad: &crate::monadic::MonadData<I>,
    c: &crate::monadic::AlgebraData<Mor<I>>,
    a: &crate::monadic::AlgebraData<Mor<I>>,
    probe: &Probe,
) -> Result<Option<Witness>> {
    let (comult, counit) = cartesian_comonoid(inst, &c.carrier)?;
    let comonoid = ComonoidData {
        carrier: c.carrier.clone(),
        comult,
        counit,
    };
    for (k, f) in inst.all_maps(&c.carrier, &a.carrier)?.iter().enumerate() {
        if algebra_morphism_witness(inst, monad, f, c, a, probe)?.is_some() {
            continue;
        }
        let r = lafont_factorization(inst, md, &comonoid, f, Some((monad, c, a)))?;
        if !r.unique {
            return Ok(Some(Witness::new(
                format!("map #{k}"),
                format!("several factorizations among {} comonoid maps", r.candidates),
                "exactly one",
            )));
        }
    }
    Ok(None)
}

/// The static catalog printed by `--list`.
pub fn catalog() -> String {
    let mut s = String::from("suites:\n");
    for n in SuiteName::ALL {
        let targets: Vec<&str> = if n.takes_bundles() {
            n.bundles().iter().map(|b| b.as_str()).collect()
        } else {
            n.instances().iter().map(|i| i.as_str()).collect()
        };
        s.push_str(&format!(
            "  {:<14} [{}]\n      {}\n",
            n.as_str(),
            targets.join(", "),
            n.anchor()
        ));
    }
    s.push_str("instances:\n");
    for i in InstanceName::ALL {
        s.push_str(&format!("  {:<14} {}\n", i.as_str(), i.describe()));
    }
    s.push_str("bundles:\n");
    for b in BundleName::ALL {
        s.push_str(&format!("  {:<14} {}\n", b.as_str(), b.describe()));
    }
    s.push_str("mutations:\n");
    for m in Mutation::ALL {
        s.push_str(&format!("  {:<21} {}\n", m.as_str(), m.describe()));
    }
    s
}

/// Runs the CLI on already-parsed arguments, writing to the given streams.
/// Returns the process exit code.
pub fn main_with(cli: Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let Command::Verify(args) = cli.command;
    if args.list {
        let _ = out.write_all(catalog().as_bytes());
        return EXIT_PASS;
    }
    let cfg = match resolve(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = run(&cfg);
    let json = report.to_json();
    match cfg.report.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            let _ = writeln!(out, "{json}");
        }
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{json}\n")) {
                let _ = writeln!(err, "error: cannot write report {}: {e}", p.display());
                return EXIT_CONFIG;
            }
            let _ = out.write_all(report.to_text().as_bytes());
        }
        None => {
            let _ = out.write_all(report.to_text().as_bytes());
        }
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(suites: &[&str]) -> VerifyArgs {
        VerifyArgs {
            suite: suites.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn bag_count_small_cases() {
        assert_eq!(bag_count(2, 3), 10);
        assert_eq!(bag_count(1, 3), 4);
        assert_eq!(bag_count(0, 3), 1);
        assert_eq!(bag_count(3, 2), 10);
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(SuiteName::parse("smc").unwrap(), SuiteName::SmcCoherence);
        assert_eq!(SuiteName::parse("hopf").unwrap(), SuiteName::HopfLaws);
        assert_eq!(Mutation::parse("drop-ε-pair").unwrap(), Mutation::DropEpsPair);
    }

    #[test]
    fn additive_on_finset_is_a_config_error() {
        let mut a = args(&["additive"]);
        a.instance = vec!["finset".into()];
        let e = resolve(&a).unwrap_err();
        assert!(e.to_string().contains("finset is not additive"), "{e}");
    }

    #[test]
    fn vacuous_mutation_is_refused() {
        let mut a = args(&["smc"]);
        a.mutate = vec!["break-n".into()];
        assert!(matches!(resolve(&a), Err(Error::Config(_))));
        let mut a = args(&["mell"]);
        a.bundle = vec!["k-z2-matq".into()];
        a.mutate = vec!["antipode-identity".into()];
        assert!(matches!(resolve(&a), Err(Error::Config(_))));
    }

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join(format!("emlift-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("cfg.json");
        std::fs::write(&p, r#"{"suite": ["hopf"], "degree": 1, "budget": 77}"#).unwrap();
        let mut a = args(&[]);
        a.config = Some(p);
        a.degree = Some(2);
        let c = resolve(&a).unwrap();
        assert_eq!(c.suites, vec![SuiteName::HopfLaws]);
        assert_eq!(c.degree, 2);
        assert_eq!(c.budget, 77);
    }

    #[test]
    fn catalog_lists_every_suite_with_an_anchor() {
        let c = catalog();
        for n in SuiteName::ALL {
            assert!(c.contains(n.as_str()));
            assert!(!n.anchor().is_empty());
        }
        assert_eq!(c, catalog());
    }
}
