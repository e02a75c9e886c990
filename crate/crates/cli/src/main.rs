use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hairpin::format::{parse_automaton, print_dfa};
use hairpin::oracle::{enumerate_hairpin, membership_direct, WitnessFamily};
use hairpin::{
    decide_detailed, reverse_bar_dfa, Dfa, Error, HairpinNfa, Instance, Outcome, Witness,
};

/// Above this many states the `--l2` preprocessing gets a warning.
const REVERSE_BAR_WARN: usize = 1 << 12;

#[derive(Parser)]
#[command(name = "hpc", version, about = "Hairpin completion regularity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that automaton files parse and are complete
    Validate {
        files: Vec<PathBuf>,
        /// Accept partial automata (they would be completed with a sink)
        #[arg(long)]
        complete: bool,
    },
    /// Add a sink state to a partial automaton and print the result
    Complete { file: PathBuf },
    /// List the bridges with their shortest witnesses
    Bridges(Inputs),
    /// Print the bridge automaton
    DumpNfa {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        dot: bool,
        /// Dump before trimming
        #[arg(long, conflicts_with = "trimmed")]
        raw: bool,
        /// Dump after trimming (default)
        #[arg(long)]
        trimmed: bool,
    },
    /// Decide whether the hairpin completion is regular
    Decide {
        #[command(flatten)]
        inputs: Inputs,
        /// Also print the u and y words of the witness family
        #[arg(long)]
        witness: bool,
    },
    /// Test one word for membership
    Member {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-joined letters, `-` for the empty word
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        explain: bool,
    },
    /// List all members up to a length
    Enum {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
struct Inputs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long)]
    l1: PathBuf,
    #[command(flatten)]
    l2: L2Source,
    /// Complete partial automata with a sink instead of rejecting them
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct L2Source {
    /// Automaton accepting bar(L2)
    #[arg(long)]
    l2bar: Option<PathBuf>,
    /// Automaton accepting L2; reversed and complemented before use
    #[arg(long)]
    l2: Option<PathBuf>,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidAutomaton(_)
            | Error::InvalidAlphabet(_)
            | Error::AlphabetMismatch => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, complete: bool) -> Result<Dfa, Failure> {
    let text = read(path)?;
    let in_file = |e: Error| {
        let f = Failure::from(e);
        Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
    };
    let partial = parse_automaton(&text).map_err(in_file)?;
    let dfa = if complete { partial.complete() } else { partial.into_total() };
    dfa.map_err(in_file)
}

struct Loaded {
    dfa1: Dfa,
    dfa2: Dfa,
    k: usize,
}

impl Inputs {
    fn load(&self) -> Result<Loaded, Failure> {
        let dfa1 = load(&self.l1, self.complete)?;
        let dfa2 = match (&self.l2.l2bar, &self.l2.l2) {
            (Some(p), _) => load(p, self.complete)?,
            (None, Some(p)) => {
                let d = reverse_bar_dfa(&load(p, self.complete)?);
                if d.num_states() > REVERSE_BAR_WARN {
                    eprintln!(
                        "warning: automaton for bar(L2) has {} states",
                        d.num_states()
                    );
                }
                d
            }
            (None, None) => unreachable!("clap requires one of --l2bar/--l2"),
        };
        if dfa1.alphabet() != dfa2.alphabet() {
            return Err(Error::AlphabetMismatch.into());
        }
        Ok(Loaded { dfa1, dfa2, k: self.k as usize })
    }
}

fn nfa(l: Loaded) -> Result<HairpinNfa, Failure> {
    let inst = Instance::new(l.dfa1, l.dfa2, l.k)?;
    Ok(HairpinNfa::build(Arc::new(inst))?)
}

fn dump(nfa: &HairpinNfa) -> String {
    let sigma = nfa.instance().dfa1.alphabet();
    let mut out = String::new();
    for i in 0..nfa.len() {
        let mut line = format!("state {}", nfa.label(i));
        if nfa.is_initial(i) {
            line.push_str(" initial");
        }
        if nfa.is_final(i) {
            line.push_str(" final");
        }
        writeln!(out, "{line}").unwrap();
    }
    for i in 0..nfa.len() {
        for &(a, j) in nfa.arcs(i) {
            writeln!(out, "arc {} {} {}", nfa.label(i), sigma.token(a), nfa.label(j)).unwrap();
        }
    }
    out
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let mut out = String::new();
    let code = match cli.command {
        Command::Validate { files, complete } => {
            if files.is_empty() {
                return Err(Failure::usage("no files given"));
            }
            for f in &files {
                let d = load(f, complete)?;
                writeln!(out, "{}: ok, {} states", f.display(), d.num_states()).unwrap();
            }
            0
        }
        Command::Complete { file } => {
            out = print_dfa(&load(&file, true)?);
            0
        }
        Command::Bridges(inputs) => {
            let l = inputs.load()?;
            let nfa = nfa(l)?;
            let inst = nfa.instance();
            let (d1, d2) = (&inst.dfa1, &inst.dfa2);
            for (q, w) in inst.bridges.witnesses(d1, d2) {
                writeln!(
                    out,
                    "{} {} {} {} {}",
                    d1.name(q.p1),
                    d2.name(q.p2),
                    d1.name(q.q1),
                    d2.name(q.q2),
                    d1.alphabet().format_word(&w)
                )
                .unwrap();
            }
            0
        }
        Command::DumpNfa { inputs, dot, raw, .. } => {
            let full = nfa(inputs.load()?)?;
            let shown = if raw { full } else { full.trim() };
            out = if dot { shown.to_dot() } else { dump(&shown) };
            0
        }
        Command::Decide { inputs, witness } => {
            let l = inputs.load()?;
            let sigma = l.dfa1.alphabet().clone();
            let decision = decide_detailed(&l.dfa1, &l.dfa2, l.k)?;
            let verdict = &decision.verdict;
            out = verdict.render(&sigma);
            if let (true, Some(Witness::Factor(w)), Some(o)) =
                (witness, &verdict.witness, verdict.orientation)
            {
                let run = decision.run(o).expect("the firing orientation was run");
                let family = WitnessFamily::recover(&run.nfa, w)?;
                writeln!(out, "witness.u={}", sigma.format_word(&family.u)).unwrap();
                writeln!(out, "witness.y={}", sigma.format_word(&family.y)).unwrap();
            }
            match verdict.result {
                Outcome::Regular => 0,
                Outcome::NotRegular => 3,
            }
        }
        Command::Member { inputs, word, explain } => {
            let l = inputs.load()?;
            let sigma = l.dfa1.alphabet();
            let w = sigma
                .parse_word(&word)
                .map_err(|e| Failure::usage(format!("--word: {e}")))?;
            let split = membership_direct(&l.dfa1, &l.dfa2, l.k, &w);
            writeln!(out, "member={}", split.is_some()).unwrap();
            if let (true, Some(s)) = (explain, split) {
                let side = match (s.in_l1, s.in_l2) {
                    (true, true) => "L1,L2",
                    (true, false) => "L1",
                    _ => "L2",
                };
                writeln!(out, "g={}", s.g).unwrap();
                writeln!(out, "side={side}").unwrap();
            }
            if split.is_some() {
                0
            } else {
                3
            }
        }
        Command::Enum { inputs, max_len, force } => {
            let l = inputs.load()?;
            let sigma = l.dfa1.alphabet();
            for w in enumerate_hairpin(&l.dfa1, &l.dfa2, l.k, max_len, force)? {
                writeln!(out, "{}", sigma.format_word(&w)).unwrap();
            }
            0
        }
    };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("hpc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
