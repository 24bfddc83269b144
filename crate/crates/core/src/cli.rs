//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration or parse error, 3 rejected input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::keyspace::{army_theoretical, naval_theoretical, operational_cryptvariables};
use crate::machine::{validate, Key, MachineDefinition, MachineError, PlugboardSetting, SteppingMode};
use crate::permutation::parse_letters;
use crate::search::{brute_force, normalize_text, render_report, Crib, SearchSpace, SLOTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "enigma", version, about = "Enigma simulator, keyspace analyzer and crib search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encrypt text with a machine key.
    Encrypt(CryptArgs),
    /// Decrypt text; identical to encrypt since the machine is reciprocal.
    Decrypt(CryptArgs),
    /// Print a keyspace report.
    Analyze(AnalyzeArgs),
    /// Brute-force rotor order and positions against a known-plaintext crib.
    Search(SearchArgs),
    /// Check a machine-definition file and, optionally, a key.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct CryptArgs {
    /// Machine-definition file.
    #[arg(long)]
    machine: PathBuf,
    /// Key, e.g. "MODEL=Army3; ROTORS=I,II,III; RINGS=AAA; POS=AAA; PLUG=AB; REFLECTOR=B".
    #[arg(long)]
    key: String,
    /// Text to process; read from --input or standard input when absent.
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Reject non-letters instead of dropping them.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportModel {
    Army,
    Naval,
    Operational,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Table,
    Tsv,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long, value_enum, default_value = "army")]
    model: ReportModel,
    #[arg(long, value_enum, default_value = "table")]
    format: ReportFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StepArg {
    Odometer,
    Historical,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    machine: PathBuf,
    /// File holding the ciphertext; non-letters are ignored.
    #[arg(long)]
    ciphertext: PathBuf,
    /// Known plaintext.
    #[arg(long)]
    crib: String,
    /// Letter offset of the crib in the ciphertext.
    #[arg(long, default_value_t = 0)]
    offset: usize,
    /// Comma-separated rotor ids to choose from; defaults to every rotor in the file.
    #[arg(long)]
    pool: Option<String>,
    /// Reflector id; defaults to the first reflector in the file.
    #[arg(long)]
    reflector: Option<String>,
    #[arg(long, default_value = "AAA")]
    rings: String,
    #[arg(long, default_value = "")]
    plug: String,
    #[arg(long, value_enum, default_value = "odometer")]
    step: StepArg,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 5)]
    top_k: usize,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    machine: PathBuf,
    #[arg(long)]
    key: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Input(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Input(_) => EXIT_INPUT,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Input(m) => m,
        }
    }
}

fn config_err(context: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{context}: {err}"))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| config_err(path.display(), e))
}

fn load_definition(path: &Path) -> Result<MachineDefinition, CliError> {
    read_file(path)?.parse().map_err(|e| config_err(path.display(), e))
}

fn parse_key(text: &str) -> Result<Key, CliError> {
    text.parse().map_err(|e| config_err("key", e))
}

fn strip_line_end(mut s: String) -> String {
    if s.ends_with('\n') {
        s.pop();
        if s.ends_with('\r') {
            s.pop();
        }
    }
    s
}

fn run_encrypt(args: CryptArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let definition = load_definition(&args.machine)?;
    let key = parse_key(&args.key)?;
    let machine = validate(&key.config, &definition).map_err(|e| config_err("key", e))?;
    machine.check_state(&key.state).map_err(|e| config_err("key", e))?;

    let text = match (args.text, args.input) {
        (Some(t), _) => t,
        (None, Some(path)) => strip_line_end(read_file(&path)?),
        (None, None) => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf).map_err(|e| config_err("stdin", e))?;
            strip_line_end(buf)
        }
    };
    let result = machine.encrypt_message(&key.state, &text, args.strict).map_err(|e| match e {
        MachineError::InvalidInput { .. } => CliError::Input(e.to_string()),
        other => config_err("key", other),
    })?;

    match args.output {
        Some(path) => fs::write(&path, format!("{result}\n")).map_err(|e| config_err(path.display(), e)),
        None => writeln!(out, "{result}").map_err(|e| config_err("stdout", e)),
    }
}

fn run_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = match args.model {
        ReportModel::Army => army_theoretical(),
        ReportModel::Naval => naval_theoretical(),
        ReportModel::Operational => operational_cryptvariables(),
    };
    let text = match args.format {
        ReportFormat::Table => report.render_table(),
        ReportFormat::Tsv => report.render_tsv(),
    };
    out.write_all(text.as_bytes()).map_err(|e| config_err("stdout", e))
}

fn run_search(args: SearchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let definition = load_definition(&args.machine)?;
    let ciphertext = normalize_text(&read_file(&args.ciphertext)?);
    let crib = Crib::new(&args.crib, args.offset).map_err(|e| config_err("crib", e))?;

    let pool: Vec<String> = match &args.pool {
        Some(p) => p.split(',').map(|s| s.trim().to_string()).collect(),
        None => definition.rotors().iter().map(|r| r.id.clone()).collect(),
    };
    let reflector = match args.reflector {
        Some(r) => r,
        None => definition
            .reflectors()
            .first()
            .map(|r| r.id.clone())
            .ok_or_else(|| config_err(args.machine.display(), "no reflector defined"))?,
    };
    let rings = parse_letters(&args.rings).map_err(|e| config_err("rings", e))?;
    let ring_settings: [_; SLOTS] = rings
        .try_into()
        .map_err(|r: Vec<_>| config_err("rings", format!("expected {SLOTS} letters, got {}", r.len())))?;
    let plugboard: PlugboardSetting = args.plug.parse().map_err(|e| config_err("plug", e))?;

    let mut space = SearchSpace::full(pool, reflector);
    space.ring_settings = ring_settings;
    space.plugboard = plugboard;
    space.stepping_mode = match args.step {
        StepArg::Odometer => SteppingMode::Odometer,
        StepArg::Historical => SteppingMode::HistoricalDoubleStep,
    };

    let results = brute_force(&ciphertext, &crib, &space, &definition, args.top_k, args.jobs)
        .map_err(|e| config_err("search", e))?;
    out.write_all(render_report(&space, &crib, &results).as_bytes()).map_err(|e| config_err("stdout", e))
}

fn run_validate(args: ValidateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let definition = load_definition(&args.machine)?;
    let mut text = format!(
        "machine ok: {} rotors, {} static rotors, {} reflectors\n",
        definition.rotors().len(),
        definition.statics().len(),
        definition.reflectors().len()
    );
    if let Some(k) = args.key {
        let key = parse_key(&k)?;
        let machine = validate(&key.config, &definition).map_err(|e| config_err("key", e))?;
        machine.check_state(&key.state).map_err(|e| config_err("key", e))?;
        text.push_str(&format!("key ok: {key}\n"));
    }
    out.write_all(text.as_bytes()).map_err(|e| config_err("stdout", e))
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = target.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Encrypt(a) | Command::Decrypt(a) => run_encrypt(a, stdin, out),
        Command::Analyze(a) => run_analyze(a, out),
        Command::Search(a) => run_search(a, out),
        Command::Validate(a) => run_validate(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Entry point used by the `enigma` binary.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}
