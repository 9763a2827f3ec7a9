//! `insdel`: check, enumerate, compile, compare, replay and pump from the
//! command line.
//!
//! Exit status is 0 on success, 1 when a comparison is not `equal` or a
//! trace fails to replay, and 2 on usage, input or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use insdel::construct::{cf_approximation, compile_rc200, compile_sc22};
use insdel::engine::{enumerate_language, pump_insertion, replay, replay_forms, SearchBounds, SearchOptions, StartPolicy};
use insdel::grammar::{validate_sgnf, GrammarKind};
use insdel::text::{parse_grammar, parse_system, parse_trace, render_grammar, render_system, render_trace};
use insdel::verify::{compare_languages, AlphabetMorphism};
use insdel::{degree_of, size_of, Symbol};

#[derive(Parser)]
#[command(name = "insdel", version, about = "Conditional insertion-deletion systems workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Longest terminal string reported.
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Maximum derivation depth.
    #[arg(long, default_value_t = 64)]
    max_steps: usize,
    /// Longest sentential form kept (default: max-len + 8).
    #[arg(long)]
    max_form_len: Option<usize>,
    /// State budget; hitting it makes the result inconclusive.
    #[arg(long, default_value_t = 2_000_000)]
    max_states: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Drop forms in which a declared @nprime symbol occurs twice.
    #[arg(long)]
    assume_single_nprime: bool,
}

impl Bounds {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_terminal_len: self.max_len,
            max_form_len: self.max_form_len.unwrap_or(self.max_len + 8),
            max_steps: self.max_steps,
            max_states: self.max_states,
        }
    }

    fn options(&self) -> SearchOptions {
        let mut o = SearchOptions::default();
        if let Some(w) = self.workers {
            o.workers = w;
        }
        o.assume_single_nprime = self.assume_single_nprime;
        o
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Construction {
    Sc22,
    Rc200,
    CfApprox,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum MapKind {
    Identity,
    Unhat,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a system, grammar or trace file and summarize it.
    Check { file: PathBuf },
    /// List the terminal strings a system derives within the bounds.
    Enumerate {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Compile a grammar into a system (sc22, rc200) or a system into a
    /// context-free grammar (cf-approx).
    Compile {
        file: PathBuf,
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare a system's language with a grammar's, both bounded.
    Compare {
        grammar: PathBuf,
        system: PathBuf,
        #[arg(long, value_enum, default_value = "identity", conflicts_with = "map_file")]
        map: MapKind,
        /// Lines `from to` mapping system terminals to grammar terminals.
        #[arg(long)]
        map_file: Option<PathBuf>,
        /// Human-readable report instead of the line format.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Replay a trace against a system.
    Replay {
        system: PathBuf,
        trace: PathBuf,
        /// Accept any start form, not only axioms.
        #[arg(long)]
        any_start: bool,
        /// Print every intermediate form.
        #[arg(long)]
        verbose: bool,
    },
    /// Repeat one insertion step of a trace and replay the result.
    Pump {
        system: PathBuf,
        trace: PathBuf,
        /// Zero-based index of the insertion step.
        #[arg(long)]
        step: usize,
        /// Extra applications of that step.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        any_start: bool,
        /// Also write the pumped trace here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// An error with its exit status.
struct Failure(u8, String);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(2, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: insdel::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn policy(any_start: bool) -> StartPolicy {
    if any_start {
        StartPolicy::AnyForm
    } else {
        StartPolicy::Axiom
    }
}

/// First directive of the file, used to tell the three formats apart.
fn first_directive(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.strip_prefix('@'))
        .map(|l| l.split_whitespace().next().unwrap_or(""))
}

fn check(file: &Path) -> Result<(), Failure> {
    let text = read(file)?;
    match first_directive(&text) {
        Some("system") => {
            let s = in_file(file, parse_system(&text))?;
            println!("system {}", s.name());
            println!("alphabet {} terminals {} axioms {}", s.alphabet().len(), s.terminals().len(), s.axioms().len());
            println!("rules {} size {} degree {}", s.rules().len(), size_of(&s), degree_of(&s));
            Ok(())
        }
        Some("grammar") => {
            let g = in_file(file, parse_grammar(&text))?;
            println!("grammar {} kind={}", g.name(), g.kind());
            println!("nonterminals {} terminals {} rules {}", g.nonterminals().len(), g.terminals().len(), g.rules().len());
            if g.kind() == GrammarKind::Sgnf {
                let report = in_file(file, validate_sgnf(&g))?;
                println!("sgnf {report}");
                if !report.valid() {
                    return Err(Failure(1, format!("{}: not in special Geffert normal form", file.display())));
                }
            }
            Ok(())
        }
        Some("trace") => {
            let t = in_file(file, parse_trace(&text))?;
            println!("trace for {} from {} with {} steps", t.system_name, t.start, t.steps.len());
            Ok(())
        }
        _ => Err(usage(format!(
            "{}: expected the file to start with @system, @grammar or @trace",
            file.display()
        ))),
    }
}

fn compile(file: &Path, construction: Construction, output: &Path) -> Result<(), Failure> {
    let text = read(file)?;
    let name = match construction {
        Construction::Sc22 => "sc22",
        Construction::Rc200 => "rc200",
        Construction::CfApprox => "cf-approx",
    };
    let mut out = format!("# source: {}\n# construction: {name}\n", file.display());
    match construction {
        Construction::CfApprox => {
            let sys = in_file(file, parse_system(&text))?;
            let cf = in_file(file, cf_approximation(&sys))?;
            out.push_str(&format!("# rules: {}\n", cf.grammar.rules().len()));
            for n in &cf.notes {
                out.push_str(&format!("# note: {n}\n"));
            }
            out.push_str(&render_grammar(&cf.grammar));
        }
        _ => {
            let g = in_file(file, parse_grammar(&text))?;
            let (sys, notes) = if construction == Construction::Sc22 {
                let o = in_file(file, compile_sc22(&g))?;
                (o.system, o.notes)
            } else {
                let o = in_file(file, compile_rc200(&g))?;
                (o.system, o.notes)
            };
            out.push_str(&format!("# size: {}\n# degree: {}\n", size_of(&sys), degree_of(&sys)));
            for n in &notes {
                out.push_str(&format!("# note: {n}\n"));
            }
            out.push_str(&render_system(&sys));
            eprintln!(
                "{}: {} rules, size {}, degree {}",
                output.display(),
                sys.rules().len(),
                size_of(&sys),
                degree_of(&sys)
            );
        }
    }
    write(output, &out)
}

fn load_morphism(map: MapKind, map_file: Option<&Path>) -> Result<AlphabetMorphism, Failure> {
    let Some(path) = map_file else {
        return Ok(match map {
            MapKind::Identity => AlphabetMorphism::identity(),
            MapKind::Unhat => AlphabetMorphism::unhat(),
        });
    };
    let text = read(path)?;
    let mut pairs = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let bad = || usage(format!("{}: expected 'from to' at line {}", path.display(), i + 1));
        let mut parts = l.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let a = Symbol::new(a).map_err(|_| bad())?;
        let b = Symbol::new(b).map_err(|_| bad())?;
        pairs.push((a, b));
    }
    AlphabetMorphism::from_pairs(pairs).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Enumerate { file, bounds } => {
            let sys = in_file(&file, parse_system(&read(&file)?))?;
            let r = enumerate_language(&sys, &bounds.bounds(), &bounds.options()).map_err(usage)?;
            for w in r.listing() {
                println!("{w}");
            }
            println!("EXHAUSTED {}", r.exhausted);
            eprintln!("{}", r.stats);
            Ok(())
        }
        Command::Compile {
            file,
            construction,
            output,
        } => compile(&file, construction, &output),
        Command::Compare {
            grammar,
            system,
            map,
            map_file,
            text,
            bounds,
        } => {
            let g = in_file(&grammar, parse_grammar(&read(&grammar)?))?;
            let sys = in_file(&system, parse_system(&read(&system)?))?;
            let m = load_morphism(map, map_file.as_deref())?;
            let report = compare_languages(&sys, &g, &m, &bounds.bounds(), &bounds.options()).map_err(usage)?;
            if text {
                print!("{}", report.render_text());
            } else {
                print!("{}", report.render_machine());
            }
            if report.verdict == insdel::verify::Verdict::Equal {
                Ok(())
            } else {
                Err(Failure(1, String::new()))
            }
        }
        Command::Replay {
            system,
            trace,
            any_start,
            verbose,
        } => {
            let sys = in_file(&system, parse_system(&read(&system)?))?;
            let t = in_file(&trace, parse_trace(&read(&trace)?))?;
            let forms = replay_forms(&sys, &t, policy(any_start)).map_err(|e| Failure(1, e.to_string()))?;
            if verbose {
                for (i, f) in forms.iter().enumerate() {
                    match i.checked_sub(1).map(|k| &t.steps[k]) {
                        None => println!("{f}"),
                        Some(s) => println!("{f}  # {} @ {}", s.rule, s.position),
                    }
                }
            } else {
                println!("{}", forms.last().expect("non-empty"));
            }
            Ok(())
        }
        Command::Pump {
            system,
            trace,
            step,
            k,
            any_start,
            output,
        } => {
            let sys = in_file(&system, parse_system(&read(&system)?))?;
            let t = in_file(&trace, parse_trace(&read(&trace)?))?;
            let pumped = pump_insertion(&sys, &t, step, k, policy(any_start)).map_err(|e| Failure(1, e.to_string()))?;
            let last = replay(&sys, &pumped, policy(any_start)).map_err(|e| Failure(1, e.to_string()))?;
            println!("{last}");
            if let Some(path) = output {
                write(&path, &render_trace(&pumped))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("insdel: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_detection_skips_comments() {
        assert_eq!(first_directive("# x\n\n  @grammar g kind=cf\n"), Some("grammar"));
        assert_eq!(first_directive("@trace t"), Some("trace"));
        assert_eq!(first_directive("step r @ 1"), None);
    }

    #[test]
    fn form_length_defaults_to_eight_symbols_of_slack() {
        let cli = Cli::parse_from(["insdel", "enumerate", "f", "--max-len", "3"]);
        let Command::Enumerate { bounds, .. } = cli.command else { panic!() };
        assert_eq!(bounds.bounds().max_form_len, 11);
        assert!(!bounds.options().assume_single_nprime);
    }
}
