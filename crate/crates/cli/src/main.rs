use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use klqds::analysis::{
    default_k_max, exists_kl, find_minimal_kl, is_k_lookahead_deterministic, kl_witness, step_table, MinimalKl,
};
use klqds::dot::{nfa_dot, path_dfa_dot, qds_dot};
use klqds::family::{gap_report, FamilyInstance};
use klqds::format::{parse_any, parse_nfa, parse_qds, write_dfa, write_nfa, write_qds, Automaton};
use klqds::qds::{build_qds, dfa_to_qds, prune_unreachable};
use klqds::reduce::{equiv_fixpoint, quotient};
use klqds::trim::{compute_useful, removed_components, trim_qds, PathDfa, Removed};
use klqds::{Dfa, EdgeLabel, Nfa, Qds};

/// Exit status for a well-formed question with a negative answer.
const NEGATIVE: u8 = 1;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "klqds",
    version,
    about = "(k,l)-unambiguous automata and quasi-deterministic structures"
)]
struct Cli {
    /// Write the main result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "KLQDS_SEED", default_value_t = 0)]
    seed: u64,
    /// Machine-oriented output: bare TSV, no prose.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input file, or `-` for standard input.
    #[arg(value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args)]
struct Window {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some (k,l) pair exists.
    Exists(Input),
    /// Check one (k,l) pair.
    Check {
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        input: Input,
    },
    /// Smallest (k,l), by k then l.
    Minimal {
        /// Largest k to try; defaults to |Q|(|Q|-1)+1.
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Step index and successor for every state and window word, as TSV.
    Steptable {
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        input: Input,
    },
    /// Check k-lookahead determinism.
    Lookahead {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Build the structure of an unambiguous NFA.
    BuildQds {
        #[command(flatten)]
        window: Window,
        /// Keep states unreachable from the initial state.
        #[arg(long)]
        no_prune: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Membership of one word.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Print the sliding-window table.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Keep only states and edges on successful paths.
    Trim {
        /// Write removed states, edges and finalities as TSV.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// The accessible path automaton, as TSV or DOT.
    Pathdfa {
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Merge equivalent states.
    Reduce {
        /// Write the equivalence classes as TSV.
        #[arg(long, value_name = "PATH")]
        classes: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Embed a DFA as a window-1 structure.
    Dfa2qds(Input),
    /// Subset construction.
    Determinize(Input),
    /// Minimal DFA (determinizing first if needed).
    Minimize(Input),
    /// Size comparison for the family L_k, or the three recognizers for one k.
    Family {
        #[arg(long, default_value_t = 8, conflicts_with = "emit")]
        kmax: usize,
        /// Write the report CSV here.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Emit the NFA, minimal DFA and structure for this k.
        #[arg(long, value_name = "K")]
        emit: Option<usize>,
        /// Directory for `--emit`.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Size summary.
    Stats(Input),
    /// Graphviz export.
    Dot(Input),
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_nfa(input: &Input) -> Result<Nfa> {
    parse_nfa(&read_input(&input.input)?).with_context(|| input.input.display().to_string())
}

fn load_qds(input: &Input) -> Result<Qds> {
    parse_qds(&read_input(&input.input)?).with_context(|| input.input.display().to_string())
}

fn load_any(input: &Input) -> Result<Automaton> {
    parse_any(&read_input(&input.input)?).with_context(|| input.input.display().to_string())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        Output {
            text: text.into(),
            code: 0,
        }
    }

    fn verdict(yes: bool, text: impl Into<String>) -> Self {
        Output {
            text: text.into(),
            code: if yes { 0 } else { NEGATIVE },
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn tsv<const N: usize>(out: &mut String, cols: [&dyn std::fmt::Display; N]) {
    let row: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "{}", row.join("\t"));
}

fn label_token(s: &Qds, l: EdgeLabel) -> String {
    match l {
        EdgeLabel::Symbol(a) => s.alphabet().symbol(a).to_string(),
        EdgeLabel::Shift(n) => format!("#{n}"),
    }
}

fn run(cli: Cli) -> Result<Output> {
    let porcelain = cli.porcelain;
    Ok(match cli.command {
        Command::Exists(input) => {
            let a = load_nfa(&input)?;
            let r = exists_kl(&a)?;
            match (r.witness_pair, r.certificate) {
                (Some((k, l)), _) => Output::ok(line(format_args!("EXISTS pair=({k},{l})"))),
                (None, Some(c)) => {
                    let mut cycle = String::new();
                    for (s, &x) in c.states.iter().zip(&c.symbols) {
                        let _ = write!(
                            cycle,
                            "({},{}) -{}-> ",
                            a.name(s.first),
                            a.name(s.second),
                            a.alphabet().symbol(x)
                        );
                    }
                    let s0 = c.states[0];
                    let _ = write!(cycle, "({},{})", a.name(s0.first), a.name(s0.second));
                    Output::verdict(false, line(format_args!("NONE cycle={cycle}")))
                }
                (None, None) => bail!("existence check returned no certificate"),
            }
        }
        Command::Check {
            window: Window { k, l },
            input,
        } => {
            let a = load_nfa(&input)?;
            match kl_witness(&a, k, l)? {
                None => Output::ok(line(format_args!("UNAMBIGUOUS({k},{l})"))),
                Some((q, w)) => Output::verdict(
                    false,
                    line(format_args!(
                        "AMBIGUOUS witness=({},{})",
                        a.name(q),
                        a.alphabet().token_word(&w)
                    )),
                ),
            }
        }
        Command::Minimal { kmax, input } => {
            let a = load_nfa(&input)?;
            let kmax = kmax.unwrap_or_else(|| default_k_max(&a));
            match find_minimal_kl(&a, kmax)? {
                MinimalKl::Found { k, l } => Output::ok(line(format_args!("MINIMAL({k},{l})"))),
                MinimalKl::NoneExists => Output::verdict(false, line("NONE")),
                MinimalKl::Exhausted { k_max } => Output::verdict(false, line(format_args!("EXHAUSTED kmax={k_max}"))),
            }
        }
        Command::Steptable {
            window: Window { k, l },
            input,
        } => {
            let a = load_nfa(&input)?;
            let table = step_table(&a, k, l)?;
            let mut out = String::from("state\tword\tindex\tsuccessor\n");
            for (q, w, e) in table.rows() {
                let succ = e.successor.map_or("_", |p| a.name(p));
                tsv(&mut out, [&a.name(q), &a.alphabet().token_word(&w), &e.index, &succ]);
            }
            Output::ok(out)
        }
        Command::Lookahead { k, input } => {
            let a = load_nfa(&input)?;
            if is_k_lookahead_deterministic(&a, k)? {
                Output::ok(line(format_args!("DETERMINISTIC({k})")))
            } else {
                Output::verdict(false, line(format_args!("NOT-DETERMINISTIC({k})")))
            }
        }
        Command::BuildQds {
            window: Window { k, l },
            no_prune,
            input,
        } => {
            let a = load_nfa(&input)?;
            let s = build_qds(&a, k, l)?;
            Output::ok(write_qds(&if no_prune { s } else { prune_unreachable(&s) }))
        }
        Command::Member { word, trace, input } => member(load_any(&input)?, &word, trace, porcelain)?,
        Command::Trim { report, input } => {
            let s = load_qds(&input)?;
            let useful = compute_useful(&s);
            if let Some(path) = report {
                let mut out = String::from("kind\titem\n");
                for r in removed_components(&s, &useful) {
                    match r {
                        Removed::State(q) => tsv(&mut out, [&"state", &s.name(q)]),
                        Removed::Edge(e) => tsv(&mut out, [&"edge", &s.format_edge(&e)]),
                        Removed::Finality(q) => tsv(&mut out, [&"final", &s.name(q)]),
                    }
                }
                write_file(&path, &out)?;
            }
            Output::ok(write_qds(&trim_qds(&s)))
        }
        Command::Pathdfa { dot, input } => {
            let s = load_qds(&input)?;
            let pd = PathDfa::build(&s);
            if dot {
                Output::ok(path_dfa_dot(&s, &pd))
            } else {
                let mut out = String::from("source\tlabel\ttarget\ttarget_final\n");
                for i in 0..pd.len() {
                    for &(l, j) in pd.transitions(i) {
                        let src = pd.states()[i].render(&s);
                        let dst = pd.states()[j].render(&s);
                        tsv(&mut out, [&src, &label_token(&s, l), &dst, &u8::from(pd.is_final(j))]);
                    }
                }
                Output::ok(out)
            }
        }
        Command::Reduce { classes, input } => {
            let s = load_qds(&input)?;
            let eq = equiv_fixpoint(&s);
            if let Some(path) = classes {
                let mut out = String::from("class_id\tlayer\tmembers\n");
                for (c, members) in eq.classes().iter().enumerate() {
                    let names: Vec<&str> = members.iter().map(|&q| s.name(q)).collect();
                    tsv(&mut out, [&c, &eq.class_layer(c), &names.join(",")]);
                }
                write_file(&path, &out)?;
            }
            Output::ok(write_qds(&quotient(&s, &eq)?))
        }
        Command::Dfa2qds(input) => Output::ok(write_qds(&dfa_to_qds(&load_nfa(&input)?)?)),
        Command::Determinize(input) => Output::ok(write_dfa(&load_nfa(&input)?.determinize())),
        Command::Minimize(input) => {
            let a = load_nfa(&input)?;
            let d = match Dfa::try_from(a.clone()) {
                Ok(d) => d,
                Err(_) => a.determinize(),
            };
            Output::ok(write_dfa(&d.minimize()))
        }
        Command::Family { kmax, csv, emit, dir } => match emit {
            Some(k) => {
                let inst = FamilyInstance::new(k);
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                let files = [
                    (format!("l{k}.nfa"), write_nfa(&inst.nfa)),
                    (format!("l{k}_min.dfa"), write_dfa(&inst.dfa)),
                    (format!("s{k}.qds"), write_qds(&inst.sk)),
                ];
                let mut out = String::new();
                for (name, text) in files {
                    let path = dir.join(name);
                    write_file(&path, &text)?;
                    let _ = writeln!(out, "{}", path.display());
                }
                Output::ok(out)
            }
            None => {
                let report = gap_report(kmax, cli.seed)?;
                let text = report.to_csv();
                match csv {
                    Some(path) => {
                        write_file(&path, &text)?;
                        let cross = report.crossover().map_or("none".to_string(), |k| k.to_string());
                        Output::ok(if porcelain {
                            String::new()
                        } else {
                            line(format_args!("crossover k={cross}"))
                        })
                    }
                    None => Output::ok(text),
                }
            }
        },
        Command::Stats(input) => Output::ok(stats(load_any(&input)?, porcelain)),
        Command::Dot(input) => Output::ok(match load_any(&input)? {
            Automaton::Nfa(a) => nfa_dot(&a),
            Automaton::Qds(s) => qds_dot(&s),
        }),
    })
}

fn member(automaton: Automaton, word: &str, trace: bool, porcelain: bool) -> Result<Output> {
    match automaton {
        Automaton::Nfa(a) => {
            let w = a.alphabet().parse_word(word)?;
            let yes = a.accepts(&w)?;
            Ok(Output::verdict(yes, line(if yes { "ACCEPT" } else { "REJECT" })))
        }
        Automaton::Qds(s) => {
            let w = s.alphabet().parse_word(word)?;
            let r = if trace { s.run_traced(&w)? } else { s.run(&w)? };
            let state = r.terminal.map_or("_", |q| s.name(q));
            let verdict = if r.accepted { "ACCEPT" } else { "REJECT" };
            let mut out = if porcelain {
                let mut t = String::from("verdict\tstate\tshifts\treads\n");
                tsv(&mut t, [&verdict, &state, &r.shifts, &r.reads]);
                t
            } else {
                line(format_args!(
                    "{verdict} state={state} shifts={} reads={}",
                    r.shifts, r.reads
                ))
            };
            if let Some(t) = &r.trace {
                out.push_str(&t.render(&s, &w));
            }
            Ok(Output::verdict(r.accepted, out))
        }
    }
}

fn stats(automaton: Automaton, porcelain: bool) -> String {
    let rows: Vec<(&str, String)> = match automaton {
        Automaton::Nfa(a) => vec![
            ("type", "nfa".into()),
            ("states", a.num_states().to_string()),
            ("transitions", a.num_transitions().to_string()),
            ("alphabet", a.alphabet().len().to_string()),
            ("deterministic", a.is_deterministic().to_string()),
        ],
        Automaton::Qds(s) => {
            let st = s.stats();
            let per: Vec<String> = st.per_layer.iter().map(|n| n.to_string()).collect();
            vec![
                ("type", "qds".into()),
                ("layers", st.layers.to_string()),
                ("states", st.total.to_string()),
                ("per_layer", per.join(",")),
                ("delta_edges", st.delta_edges.to_string()),
                ("min_shift", st.min_shift.map_or("_".into(), |s| s.to_string())),
                ("bottom_gammas", st.bottom_gammas.to_string()),
            ]
        }
    };
    let mut out = String::new();
    if porcelain {
        out.push_str("key\tvalue\n");
    }
    for (k, v) in rows {
        let _ = if porcelain {
            writeln!(out, "{k}\t{v}")
        } else {
            writeln!(out, "{k}: {v}")
        };
    }
    out
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|o| emit(out.as_deref(), &o.text).map(|_| o.code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("klqds: error: {msg}");
            ExitCode::from(ERROR)
        }
    }
}
