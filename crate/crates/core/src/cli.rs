//! Command-line front end. [`run`] takes argv and the three standard
//! streams so the whole program can be driven in-process.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ast::Judgment;
use crate::kernel::{check_kernel, desugar, desugar_with, negate, resugar_with, DesugarOptions, EncodingMode};
use crate::layout::{layout, render, Backend, RenderOptions};
use crate::semantics::{
    find_bounded_counterexample, propositional_counterexample, truth_table, SemanticsError, ValueStyle,
};
use crate::syntax::{parse_lbs, parse_modern, print_lbs, print_modern, ParseError, ParseErrorKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_KERNEL: i32 = 3;
pub const EXIT_OUTPUT: i32 = 4;
pub const EXIT_QUANTIFIED: i32 = 5;
pub const EXIT_TOO_LARGE: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "begriff", version, about = "Modern first-order notation and Frege's Begriffsschrift")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print back in canonical form
    Parse {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        format: Format,
        #[command(flatten)]
        input: Input,
    },
    /// Convert between modern text, the linear diagram form and the kernel
    Translate {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        from: Format,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_enum, default_value_t = Mode::Classical)]
        mode: Mode,
        #[command(flatten)]
        input: Input,
    },
    /// Draw the diagram as text or SVG
    Render {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        from: Format,
        #[arg(long, value_enum, default_value_t = BackendArg::Unicode)]
        backend: BackendArg,
        #[arg(long, value_enum, default_value_t = Mode::Faithful)]
        mode: Mode,
        /// One concavity per variable instead of one per block
        #[arg(long)]
        expand_blocks: bool,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Print the truth table of a propositional formula
    Table {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        from: Format,
        #[arg(long, value_enum, default_value_t = Values::Wf)]
        values: Values,
        #[command(flatten)]
        input: Input,
    },
    /// Check two formulas for equivalence; with --file or stdin, the two
    /// formulas are the first two non-blank lines
    Equiv {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        from: Format,
        /// Largest domain tried when either formula is first-order
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        #[arg(num_args = 0..=2, value_names = ["F1", "F2"])]
        formulas: Vec<String>,
        #[arg(long, value_name = "PATH", conflicts_with = "formulas")]
        file: Option<PathBuf>,
    },
    /// Push a negation through the formula
    Negate {
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        from: Format,
        #[arg(long, value_enum, default_value_t = Format::Modern)]
        to: Format,
        /// Encoding used when the result has to be desugared for --to lbs
        #[arg(long, value_enum, default_value_t = Mode::Classical)]
        mode: Mode,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Formula text; read from standard input when neither this nor --file is given
    #[arg(conflicts_with = "file")]
    text: Option<String>,
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Modern,
    Lbs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Modern,
    Lbs,
    Kernel,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Faithful,
    Classical,
}

impl From<Mode> for EncodingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Faithful => EncodingMode::Faithful,
            Mode::Classical => EncodingMode::Classical,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BackendArg {
    Unicode,
    Ascii,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Values {
    Wf,
    Tf,
}

/// A failed command: what goes to stderr and the exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn parse(err: ParseError, input: &str) -> Self {
        let code = match err.kind {
            ParseErrorKind::Syntax => EXIT_PARSE,
            ParseErrorKind::NonKernel => EXIT_KERNEL,
        };
        Failure::new(code, err.render(input))
    }

    fn semantics(err: SemanticsError) -> Self {
        let code = match err {
            SemanticsError::QuantifiedInput(_) => EXIT_QUANTIFIED,
            SemanticsError::SignatureTooLarge { .. } => EXIT_TOO_LARGE,
            // Unbound variables and missing symbols cannot come out of
            // parsed input; report them like a malformed formula.
            _ => EXIT_PARSE,
        };
        Failure::new(code, format!("error: {err}\n"))
    }
}

/// Successful output: payload for stdout and notices for stderr.
#[derive(Default)]
struct Output {
    stdout: String,
    stderr: String,
    code: i32,
}

impl Output {
    fn payload(text: String) -> Self {
        Output { stdout: text, ..Default::default() }
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_PARSE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stderr.write_all(out.stderr.as_bytes());
            out.code
        }
        Err(f) => {
            let _ = stderr.write_all(f.message.as_bytes());
            f.code
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    match (&input.text, &input.file) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) => read_file(path),
        (None, None) => read_stdin(stdin),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("error: cannot read {}: {e}\n", path.display())))
}

fn read_stdin(stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("error: cannot read standard input: {e}\n")))?;
    Ok(text)
}

fn parse(format: Format, text: &str) -> Result<Judgment, Failure> {
    let result = match format {
        Format::Modern => parse_modern(text),
        Format::Lbs => parse_lbs(text),
    };
    result.map_err(|e| Failure::parse(e, text))
}

fn lbs(j: &Judgment) -> Result<String, Failure> {
    print_lbs(j).map_err(|e| Failure::new(EXIT_KERNEL, format!("error: {e}\n")))
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Output, Failure> {
    match command {
        Command::Parse { format, input } => {
            let text = read_input(&input, stdin)?;
            let j = parse(format, &text)?;
            let printed = match format {
                Format::Modern => print_modern(&j),
                Format::Lbs => lbs(&j)?,
            };
            Ok(Output::payload(line(printed)))
        }
        Command::Translate { from, to, mode, input } => {
            let text = read_input(&input, stdin)?;
            let j = parse(from, &text)?;
            let mode = EncodingMode::from(mode);
            match to {
                Target::Modern => Ok(Output::payload(line(print_modern(&j.map(|f| resugar_with(&f, mode)))))),
                Target::Kernel => Ok(Output::payload(line(lbs(&j.map(|f| desugar(&f, mode)))?))),
                Target::Lbs => {
                    if check_kernel(&j.body, true).is_ok() {
                        return Ok(Output::payload(line(lbs(&j)?)));
                    }
                    let out = lbs(&j.map(|f| desugar(&f, mode)))?;
                    Ok(Output {
                        stdout: line(out),
                        stderr: format!("note: input is not in kernel form; desugared ({mode} encoding)\n"),
                        code: EXIT_OK,
                    })
                }
            }
        }
        Command::Render { from, backend, mode, expand_blocks, output, input } => {
            let text = read_input(&input, stdin)?;
            let j = parse(from, &text)?;
            let opts =
                if expand_blocks { DesugarOptions::new(mode.into()) } else { DesugarOptions::grouped(mode.into()) };
            let kernel = j.map(|f| desugar_with(&f, opts));
            let diagram = layout(&kernel).map_err(|e| Failure::new(EXIT_KERNEL, format!("error: {e}\n")))?;
            let backend = match backend {
                BackendArg::Unicode => Backend::Unicode,
                BackendArg::Ascii => Backend::Ascii,
                BackendArg::Svg => Backend::Svg,
            };
            let drawn = render(&diagram, &RenderOptions::with_backend(backend));
            match output {
                None => Ok(Output::payload(drawn)),
                Some(path) => {
                    std::fs::write(&path, drawn).map_err(|e| {
                        Failure::new(EXIT_OUTPUT, format!("error: cannot write {}: {e}\n", path.display()))
                    })?;
                    Ok(Output::default())
                }
            }
        }
        Command::Table { from, values, input } => {
            let text = read_input(&input, stdin)?;
            let j = parse(from, &text)?;
            let table = truth_table(&j.body).map_err(Failure::semantics)?;
            let style = match values {
                Values::Wf => ValueStyle::WF,
                Values::Tf => ValueStyle::TF,
            };
            Ok(Output::payload(table.render(style)))
        }
        Command::Equiv { from, max_domain, formulas, file } => {
            let texts = match (formulas.len(), &file) {
                (2, _) => formulas,
                (0, Some(path)) => two_lines(&read_file(path)?)?,
                (0, None) => two_lines(&read_stdin(stdin)?)?,
                _ => return Err(Failure::new(EXIT_PARSE, "error: equiv needs two formulas\n")),
            };
            let f1 = parse(from, &texts[0])?.body;
            let f2 = parse(from, &texts[1])?.body;
            if f1.is_propositional() && f2.is_propositional() {
                return Ok(match propositional_counterexample(&f1, &f2).map_err(Failure::semantics)? {
                    None => Output::payload("EQUIVALENT\n".into()),
                    Some(a) => Output {
                        stdout: format!("NOT EQUIVALENT (counterexample: {a})\n"),
                        code: EXIT_NOT_EQUIVALENT,
                        ..Default::default()
                    },
                });
            }
            Ok(match find_bounded_counterexample(&f1, &f2, max_domain).map_err(Failure::semantics)? {
                None => Output::payload(format!("EQUIVALENT UP TO DOMAIN {max_domain}\n")),
                Some(cx) => Output {
                    stdout: format!("NOT EQUIVALENT (counterexample: {cx})\n"),
                    code: EXIT_NOT_EQUIVALENT,
                    ..Default::default()
                },
            })
        }
        Command::Negate { from, to, mode, input } => {
            let text = read_input(&input, stdin)?;
            let j = parse(from, &text)?;
            let negated = j.map(|f| negate(&f));
            match to {
                Format::Modern => Ok(Output::payload(line(print_modern(&negated)))),
                Format::Lbs => {
                    let mode = EncodingMode::from(mode);
                    let mut out = Output::payload(line(lbs(&negated.clone().map(|f| desugar(&f, mode)))?));
                    if check_kernel(&negated.body, true).is_err() {
                        out.stderr = format!("note: negation is not in kernel form; desugared ({mode} encoding)\n");
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn two_lines(text: &str) -> Result<Vec<String>, Failure> {
    let lines: Vec<String> = text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect();
    if lines.len() != 2 {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("error: expected two formulas, one per line, found {}\n", lines.len()),
        ));
    }
    Ok(lines)
}
