mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use bifix_core::codes::Kind;
use bifix_core::{Generator, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;
use crate::config::Config;

#[derive(Parser)]
#[command(name = "bifix", version, about = "Bifix codes in Sturmian and recurrent sets")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit a Graphviz graph instead of text.
    #[arg(long, global = true)]
    dot: bool,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest factor-set depth reached by automatic growth.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Defaults file with `key=value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    s.parse().map_err(|e: bifix_core::Error| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| e.to_string())
}

#[derive(Args, Clone)]
pub struct GenArg {
    /// Generator, e.g. `fibonacci`, `fixpoint:a->ab,b->a@a`, `pal:c,(ab)^w`.
    #[arg(long = "gen", value_parser = parse_generator)]
    pub generator: Generator,
    /// Starting factor-set depth.
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct CodeInput {
    /// Code file, one word per line.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Comma-separated words.
    #[arg(long)]
    pub words: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Factors, special words and return words of a generator.
    Factors {
        #[command(flatten)]
        gen: GenArg,
        /// Print the return words to this factor.
        #[arg(long, value_parser = parse_word)]
        returns: Option<Word>,
    },
    /// Invariant (or uniform right) distribution.
    Measure {
        #[command(flatten)]
        gen: GenArg,
        #[arg(long, conflicts_with = "words")]
        code: Option<PathBuf>,
        #[arg(long)]
        words: Option<String>,
    },
    #[command(subcommand)]
    Code(CodeCmd),
    #[command(subcommand)]
    Automaton(AutomatonCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Syntactic(SyntacticCmd),
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Subgroup counts of the free group.
    Count {
        /// Index and rank.
        #[arg(long, num_args = 2, value_names = ["D", "K"], required = true)]
        hall: Vec<usize>,
    },
    /// Runs the acceptance criteria.
    Verify {
        /// Criterion numbers; all when omitted.
        ids: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Prefix,
    Suffix,
    Bifix,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Prefix => Kind::Prefix,
            KindArg::Suffix => Kind::Suffix,
            KindArg::Bifix => Kind::Bifix,
        }
    }
}

#[derive(Subcommand)]
pub enum CodeCmd {
    /// Degree, kernel, derived code and boundary sets.
    Analyze {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
    },
    /// The derived code.
    Derive {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Rebuilds the code of a given degree from its kernel.
    FromKernel {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
        #[arg(long)]
        degree: usize,
    },
    /// All finite F-maximal bifix codes of a degree.
    Enumerate {
        #[command(flatten)]
        gen: GenArg,
        #[arg(long)]
        degree: usize,
    },
    /// Internal transformation by a word, or the list of applicable words.
    Transform {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
        #[arg(long = "word", value_parser = parse_word)]
        word: Option<Word>,
    },
    /// Completes a bifix code to an F-maximal one.
    Complete {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// F-maximality test.
    Maximal {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, value_enum, default_value = "bifix")]
        kind: KindArg,
    },
    /// Parses of a word with respect to the code.
    Parses {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long = "word", value_parser = parse_word)]
        word: Word,
    },
}

#[derive(Subcommand)]
pub enum AutomatonCmd {
    Literal {
        #[command(flatten)]
        input: CodeInput,
    },
    Minimize {
        #[command(flatten)]
        input: CodeInput,
    },
    Coset {
        #[command(flatten)]
        input: CodeInput,
    },
    Incidence {
        #[command(flatten)]
        input: CodeInput,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Stallings folding of the generated subgroup.
    Fold {
        #[command(flatten)]
        input: CodeInput,
        /// Fold the bouquet edges in a seeded random order.
        #[arg(long)]
        shuffle: bool,
    },
    /// Rank and index.
    Stats {
        #[command(flatten)]
        input: CodeInput,
    },
    /// Membership of a reduced word; uppercase letters are inverses.
    Member {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long)]
        element: String,
    },
    /// Number of subgroups of index `d` in a free group of rank `k`.
    Hall {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand)]
pub enum SyntacticCmd {
    /// Transition monoid of the minimal automaton.
    Monoid {
        #[command(flatten)]
        input: CodeInput,
    },
    /// Green's relations and the D-class met by the factor set.
    Green {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long = "gen", value_parser = parse_generator)]
        generator: Option<Generator>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// The F-group of a code.
    Fgroup {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
    },
    /// Realizes a transitive permutation group as an F-group.
    Realize {
        #[command(flatten)]
        gen: GenArg,
        /// Images of `0..n` for each letter, e.g. `1,0,3,2;2,3,0,1`.
        #[arg(long)]
        perms: String,
    },
}

#[derive(Subcommand)]
pub enum PeriodCmd {
    Least {
        #[arg(long = "word", value_parser = parse_word)]
        word: Word,
    },
    Rep {
        #[arg(long, value_parser = parse_word, default_value = "")]
        prefix: Word,
        #[arg(long, value_parser = parse_word, default_value = "")]
        suffix: Word,
    },
    Cft {
        #[arg(long = "word", value_parser = parse_word)]
        word: Word,
    },
    /// Whether every infinite word avoiding the forbidden factors is ultimately periodic.
    Forced {
        #[arg(long)]
        forbidden: PathBuf,
        /// Defaults to the letters of the forbidden words.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Degree of a code over the shifted factor sets of a generator.
    Stable {
        #[command(flatten)]
        gen: GenArg,
        #[command(flatten)]
        input: CodeInput,
    },
}

impl CodeCmd {
    fn name(&self) -> &'static str {
        match self {
            CodeCmd::Analyze { .. } => "code analyze",
            CodeCmd::Derive { .. } => "code derive",
            CodeCmd::FromKernel { .. } => "code from-kernel",
            CodeCmd::Enumerate { .. } => "code enumerate",
            CodeCmd::Transform { .. } => "code transform",
            CodeCmd::Complete { .. } => "code complete",
            CodeCmd::Maximal { .. } => "code maximal",
            CodeCmd::Parses { .. } => "code parses",
        }
    }
}

impl AutomatonCmd {
    fn name(&self) -> &'static str {
        match self {
            AutomatonCmd::Literal { .. } => "automaton literal",
            AutomatonCmd::Minimize { .. } => "automaton minimize",
            AutomatonCmd::Coset { .. } => "automaton coset",
            AutomatonCmd::Incidence { .. } => "automaton incidence",
        }
    }
}

impl GroupCmd {
    fn name(&self) -> &'static str {
        match self {
            GroupCmd::Fold { .. } => "group fold",
            GroupCmd::Stats { .. } => "group stats",
            GroupCmd::Member { .. } => "group member",
            GroupCmd::Hall { .. } => "group hall",
        }
    }
}

impl SyntacticCmd {
    fn name(&self) -> &'static str {
        match self {
            SyntacticCmd::Monoid { .. } => "syntactic monoid",
            SyntacticCmd::Green { .. } => "syntactic green",
            SyntacticCmd::Fgroup { .. } => "syntactic fgroup",
            SyntacticCmd::Realize { .. } => "syntactic realize",
        }
    }
}

impl PeriodCmd {
    fn name(&self) -> &'static str {
        match self {
            PeriodCmd::Least { .. } => "period least",
            PeriodCmd::Rep { .. } => "period rep",
            PeriodCmd::Cft { .. } => "period cft",
            PeriodCmd::Forced { .. } => "period forced",
            PeriodCmd::Stable { .. } => "period stable",
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: config: {e}");
                return ExitCode::from(2);
            }
        },
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(m) = cli.max_depth {
        config.max_depth = m;
    }
    let ctx = commands::Ctx { json: cli.json, dot: cli.dot, config };
    match commands::dispatch(&ctx, cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
