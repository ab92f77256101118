use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kh_core::{BraidWord, Error, DEFAULT_MAX_CROSSINGS};

mod render;

#[derive(Parser)]
#[command(name = "khbraid", version, about = "Khovanov homology of braid closures over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Emit JSON (one object per word) instead of a human table.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse words with more crossings than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    /// Print a single summary line per word.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded Betti table.
    Kh(WordArg),
    /// Basepoint action matrices and the free-of-rank-one test.
    Module(WordArg),
    /// Gradings and nonvanishing of the transverse class.
    Psi {
        #[command(flatten)]
        word: WordArg,
        /// Also report the class of the mirror.
        #[arg(long)]
        mirror: bool,
    },
    /// Trivial-braid certification pipeline.
    Certify(WordArg),
    /// Euler characteristic of the table against the state sum.
    Jones(WordArg),
    /// Admissible component counts and maximal Euler characteristic.
    Fibered {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct WordArg {
    /// Braid word such as "3: 1 -2 1", or "-" to read one word per line from stdin.
    word: String,
    #[command(flatten)]
    common: Common,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::NoStrands | Error::LetterOutOfRange { .. } => 2,
        Error::CapExceeded { .. } => 3,
        Error::Consistency(_) | Error::NotAComplex(_) | Error::ChainMap(_) | Error::DimensionMismatch(_) => 4,
        _ => 1,
    }
}

type Handler = fn(&BraidWord, &Common, bool) -> kh_core::Result<render::Output>;

fn run_words(arg: &WordArg, handler: Handler, mirror: bool) -> u8 {
    let words: Vec<String> = if arg.word == "-" {
        match io::stdin().lock().lines().collect::<io::Result<Vec<_>>>() {
            Ok(lines) => lines.into_iter().filter(|l| !l.trim().is_empty()).collect(),
            Err(e) => {
                eprintln!("error: reading stdin: {e}");
                return 1;
            }
        }
    } else {
        vec![arg.word.clone()]
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut status = 0;
    for (k, text) in words.iter().enumerate() {
        let result = text.parse::<BraidWord>().and_then(|w| handler(&w, &arg.common, mirror));
        match result {
            Ok(output) => {
                if status == 0 {
                    status = output.status;
                }
                let text = output.format(&arg.common);
                if k > 0 && !arg.common.json && !arg.common.quiet {
                    let _ = writeln!(out);
                }
                let _ = writeln!(out, "{text}");
            }
            Err(e) => {
                eprintln!("error: {}: {e}", text.trim());
                if status == 0 {
                    status = exit_code(&e);
                }
            }
        }
    }
    status
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match &cli.command {
        Command::Kh(a) => run_words(a, render::kh, false),
        Command::Module(a) => run_words(a, render::module, false),
        Command::Psi { word, mirror } => run_words(word, render::psi, *mirror),
        Command::Certify(a) => run_words(a, render::certify, false),
        Command::Jones(a) => run_words(a, render::jones, false),
        Command::Fibered { n, common } => {
            println!("{}", render::fibered(*n).format(common));
            0
        }
    };
    ExitCode::from(status)
}
