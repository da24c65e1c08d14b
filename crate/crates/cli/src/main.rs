use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use ggrow_core::caps::Caps;
use ggrow_core::input::GroupSpec;
use ggrow_core::pipeline::{self, Language, Options, PipelineError};
use ggrow_core::rewriting::{check_confluence, RewritingSystem};
use ggrow_core::worked;

#[derive(Parser, Debug)]
#[command(name = "ggrow", version, about = "Geodesic and conjugacy growth of graph products and amalgams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Group spec (JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "geo", value_parser = parse_language)]
    language: Language,
    #[arg(long, default_value_t = 2)]
    slack: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strict growth series of a language.
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Also fit a rational function to the coefficients.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Minimal DFA in DOT.
    Automaton {
        #[command(flatten)]
        common: Common,
        /// Write the DOT here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the automaton against the brute-force oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true)]
        debug_drop_rule: Option<usize>,
    },
    /// Rewriting system and critical-pair check.
    Kb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the rule list.
        #[arg(long)]
        rules: bool,
    },
    /// Run the built-in worked examples.
    Examples,
}

fn parse_language(s: &str) -> Result<Language, String> {
    s.parse()
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

enum Outcome {
    Ok,
    Mismatch,
}

fn load(path: &PathBuf) -> Result<GroupSpec, Usage> {
    GroupSpec::load(path).map_err(|e| Usage(e.into()))
}

fn caps() -> Result<Caps, Usage> {
    Caps::from_env().map_err(|e| Usage(e.into()))
}

fn run(cli: Cli) -> Result<Outcome, Usage> {
    match cli.command {
        Command::Series { common, order, reconstruct } => {
            let spec = load(&common.input)?;
            let opts = Options { caps: caps()?, slack: common.slack, drop_rule: None };
            let r = pipeline::series(&spec, common.language, order, reconstruct, &opts)
                .map_err(|e: PipelineError| Usage(e.into()))?;
            match common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json")),
                Format::Csv => print!("{}", r.expansion.to_csv()),
                Format::Dot => return Err(Usage(anyhow::anyhow!("dot output is only available for `automaton`"))),
                Format::Text => {
                    println!("language: {}", r.language);
                    println!("method: {:?}", r.method);
                    if let Some(rf) = &r.rational {
                        println!("series: {}", rf.render_factored());
                    }
                    let cs: Vec<String> = r.expansion.coeffs().iter().map(|c| c.to_string()).collect();
                    println!("coefficients: {}", cs.join(" "));
                    if let Some(rec) = &r.reconstructed {
                        match rec {
                            Some(f) => println!("reconstruction: verified {}", f.render_factored()),
                            None => println!("reconstruction: none"),
                        }
                    }
                    if r.method == pipeline::SeriesMethod::Oracle {
                        println!("unconfirmed classes: {}", r.unconfirmed_classes);
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Automaton { common, output } => {
            let spec = load(&common.input)?;
            let d = pipeline::automaton(&spec, common.language).map_err(|e| Usage(e.into()))?;
            let live = d.live_state_count();
            match common.format {
                Format::Dot | Format::Text => {}
                f => return Err(Usage(anyhow::anyhow!("automaton output is DOT, not {f:?}"))),
            }
            match output {
                Some(p) => {
                    fs::write(&p, d.to_dot())
                        .with_context(|| format!("writing {}", p.display()))
                        .map_err(Usage)?;
                    println!("states: {live}");
                }
                None => {
                    print!("{}", d.to_dot());
                    eprintln!("states: {live}");
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { common, max_len, report, debug_drop_rule } => {
            let spec = load(&common.input)?;
            let opts = Options { caps: caps()?, slack: common.slack, drop_rule: debug_drop_rule };
            let r = pipeline::verify(&spec, common.language, max_len, &opts).map_err(|e| Usage(e.into()))?;
            let json = serde_json::to_string_pretty(&r.to_json()).expect("json");
            if let Some(p) = report {
                fs::write(&p, &json).with_context(|| format!("writing {}", p.display())).map_err(Usage)?;
            }
            match common.format {
                Format::Json => println!("{json}"),
                _ => {
                    println!("language: {}  maxLen: {}  words: {}", r.language, r.max_len, r.words_checked);
                    if let Some(c) = r.confluent {
                        println!("confluent: {c}");
                    }
                    println!("unconfirmed classes: {}", r.unconfirmed_classes);
                    println!("mismatches: {}", r.mismatches.len());
                    println!("{}", if r.passed() { "PASS" } else { "FAIL" });
                }
            }
            Ok(if r.passed() { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Kb { input, format, rules } => {
            let spec = match load(&input)? {
                GroupSpec::GraphProduct(s) => s,
                GroupSpec::Amalgam(_) => return Err(Usage(anyhow::anyhow!("kb needs a graph product spec"))),
            };
            let sys = RewritingSystem::build(&spec, &caps()?).map_err(|e| Usage(e.into()))?;
            let rep = check_confluence(&sys);
            match format {
                Format::Json => {
                    let mut v = rep.to_json(&sys);
                    if rules {
                        v["ruleList"] = sys.rules().iter().map(|r| sys.render_rule(r)).collect();
                    }
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Text => {
                    if rules {
                        print!("{}", sys.dump());
                    }
                    print!("{}", rep.render(&sys));
                }
                f => return Err(Usage(anyhow::anyhow!("kb output is text or json, not {f:?}"))),
            }
            Ok(if rep.is_confluent() { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Examples => {
            let checks = worked::run_all().map_err(|e| Usage(e.into()))?;
            let mut ok = true;
            for c in &checks {
                println!("{}", c.line());
                ok &= c.passed();
            }
            Ok(if ok { Outcome::Ok } else { Outcome::Mismatch })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
