//! `qnet`: run, trace and verify netlist-style quantum circuits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};

use qnet_core::interpreter::{self, run_circuit, run_circuit_traced, RandomStream};
use qnet_core::render::{self, format_state, format_state_decimal};
use qnet_core::scalar::{parse_rational, to_decimal};
use qnet_core::teleport;
use qnet_core::{Approx, Backend, Error, Exact, QState, RandomDraw, Rational, Tolerance};

/// Exit statuses.
mod exit {
    pub const INVALID: u8 = 2;
    pub const NOT_REPRESENTABLE: u8 = 3;
    pub const STREAM_EXHAUSTED: u8 = 4;
    pub const FAIL: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(
    name = "qnet",
    version,
    about = "Quantum circuit interpreter over exact Q[sqrt 2] or rationals"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Arithmetic backend.
    #[arg(long, value_enum, default_value_t = BackendKind::Exact, global = true)]
    backend: BackendKind,
    /// Square-root tolerance for the approx backend (rational, default 1/10^12).
    #[arg(long, global = true)]
    eps: Option<String>,
    /// Output form for amplitudes.
    #[arg(long, value_enum, default_value_t = Emit::Exact, global = true)]
    emit: Emit,
    /// Decimal places for `--emit decimal` (default 6).
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Omit zero terms from printed states.
    #[arg(long, global = true)]
    sparse_output: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    Exact,
    Approx,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Exact,
    Decimal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a circuit and print the final state.
    Run(RunArgs),
    /// Run a circuit and print the state after every gate.
    Trace(RunArgs),
    /// Teleport one qubit and check that it arrives intact.
    Teleport(TeleportArgs),
    /// Check teleportation on the built-in inputs over all four branches.
    VerifyTeleport,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Circuit file.
    #[arg(long)]
    circuit: PathBuf,
    /// Initial state: a state file, `zero:<n>`, or `qubit:<cplx>,<cplx>`.
    #[arg(long)]
    state: Option<String>,
    /// Qubit count when the circuit file has no `qubits` header.
    #[arg(long)]
    qubits: Option<usize>,
    /// Measurement draws, e.g. `1/4,3/4`.
    #[arg(long, conflicts_with = "randoms_file")]
    randoms: Option<String>,
    /// File with one draw per line.
    #[arg(long)]
    randoms_file: Option<PathBuf>,
    /// Print every intermediate state (same as the `trace` subcommand).
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct TeleportArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "1/4")]
    r1: String,
    #[arg(long, default_value = "1/4")]
    r2: String,
}

/// Failure carrying the process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRepresentable(_) => exit::NOT_REPRESENTABLE,
            Error::StreamExhausted { .. } => exit::STREAM_EXHAUSTED,
            _ => exit::INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: exit::INVALID,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Rendering options shared by every command.
struct View {
    emit: Emit,
    digits: usize,
    sparse: bool,
}

impl View {
    fn state<B: Backend>(&self, s: &QState<B::Real>, backend: &B) -> Result<String, Failure> {
        let text = match self.emit {
            Emit::Exact => format_state(s, self.sparse)?,
            Emit::Decimal => format_state_decimal(s, backend, self.digits, self.sparse)?,
        };
        Ok(text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("qnet: {}", f.message);
            if f.code == exit::NOT_REPRESENTABLE {
                eprintln!("hint: rerun with `--backend approx` or `--emit decimal`");
            }
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(String, u8), Failure> {
    let g = &cli.global;
    if g.backend == BackendKind::Exact && g.eps.is_some() {
        return Err(invalid("--eps only applies to --backend approx"));
    }
    if g.emit == Emit::Exact && g.digits.is_some() {
        return Err(invalid("--digits only applies to --emit decimal"));
    }
    let digits = g.digits.unwrap_or(6);
    if digits < 1 {
        return Err(invalid("--digits must be at least 1"));
    }
    let view = View {
        emit: g.emit,
        digits,
        sparse: g.sparse_output,
    };
    match g.backend {
        BackendKind::Exact => command(&cli.command, &Exact, &view),
        BackendKind::Approx => {
            let eps = match &g.eps {
                Some(text) => Tolerance::new(parse_rational(text)?)?,
                None => Tolerance::default(),
            };
            command(&cli.command, &Approx::new(eps), &view)
        }
    }
}

fn command<B: Backend>(cmd: &Command, backend: &B, view: &View) -> Result<(String, u8), Failure> {
    match cmd {
        Command::Run(args) if args.trace => Ok((cmd_trace(args, backend, view)?, 0)),
        Command::Run(args) => Ok((cmd_run(args, backend, view)?, 0)),
        Command::Trace(args) => Ok((cmd_trace(args, backend, view)?, 0)),
        Command::Teleport(args) => cmd_teleport(args, backend, view),
        Command::VerifyTeleport => cmd_verify(backend),
    }
}

struct Loaded<B: Backend> {
    circuit: interpreter::Circuit,
    state: QState<B::Real>,
    stream: RandomStream,
}

fn load<B: Backend>(args: &RunArgs, backend: &B) -> Result<Loaded<B>, Failure> {
    let text = read(&args.circuit)?;
    let state = match &args.state {
        None => None,
        Some(spec) => Some(match render::parse_inline_state(spec, backend) {
            Some(s) => s?,
            None => render::parse_state(&read(Path::new(spec))?, backend)?,
        }),
    };
    let declared = interpreter::declared_qubits(&text);
    let width = args
        .qubits
        .or(declared)
        .or_else(|| state.as_ref().map(QState::nqubits));
    let circuit = interpreter::parse_circuit(&text, args.qubits.or(width))?;
    let state = match state {
        Some(s) => s,
        None => QState::zero_qstate(circuit.nqubits())?,
    };
    let stream = match (&args.randoms, &args.randoms_file) {
        (Some(inline), _) => RandomStream::parse(&inline.replace(',', "\n"))?,
        (None, Some(path)) => RandomStream::parse(&read(path)?)?,
        (None, None) => RandomStream::empty(),
    };
    Ok(Loaded {
        circuit,
        state,
        stream,
    })
}

fn cmd_run<B: Backend>(args: &RunArgs, backend: &B, view: &View) -> Result<String, Failure> {
    let Loaded {
        circuit,
        state,
        mut stream,
    } = load(args, backend)?;
    let out = run_circuit(&circuit, &state, &mut stream, backend)?;
    view.state(&out, backend)
}

fn cmd_trace<B: Backend>(args: &RunArgs, backend: &B, view: &View) -> Result<String, Failure> {
    let Loaded {
        circuit,
        state,
        mut stream,
    } = load(args, backend)?;
    let (out, events) = run_circuit_traced(&circuit, &state, &mut stream, backend)?;
    let mut text = String::new();
    for ev in &events {
        match &ev.draw {
            Some(r) => writeln!(text, "# step {}: {} (r = {r})", ev.step, ev.gate),
            None => writeln!(text, "# step {}: {}", ev.step, ev.gate),
        }
        .unwrap();
        text.push_str(&view.state(&ev.state, backend)?);
    }
    text.push_str("# final\n");
    text.push_str(&view.state(&out, backend)?);
    Ok(text)
}

fn draw(text: &str) -> Result<RandomDraw, Failure> {
    Ok(RandomDraw::new(parse_rational(text)?)?)
}

fn cmd_teleport<B: Backend>(
    args: &TeleportArgs,
    backend: &B,
    view: &View,
) -> Result<(String, u8), Failure> {
    let (alpha, beta) = render::parse_qubit_pair(&format!("{},{}", args.alpha, args.beta))?;
    let alpha = alpha.map(|x| backend.lift(x));
    let beta = beta.map(|x| backend.lift(x));
    let (r1, r2) = (draw(&args.r1)?, draw(&args.r2)?);

    let alice = teleport::teleport_alice(&alpha, &beta, &r1, &r2, backend)?;
    let out = teleport::teleport_bob(&alice.state, alice.m0, alice.m1, backend)?;
    let q2 = out.narrow_to_qubit(2, backend)?;
    let expected = QState::make_qubit(alpha, beta)?;
    let ok = teleport::states_agree(&q2, &expected, backend);

    let tol = Tolerance::pow10(18);
    let deviation = q2
        .amplitudes()
        .iter()
        .zip(expected.amplitudes())
        .flat_map(|(a, b)| [(&a.re, &b.re), (&a.im, &b.im)])
        .map(|(x, y)| (backend.to_rational(x, &tol) - backend.to_rational(y, &tol)).abs())
        .fold(Rational::zero(), Rational::max);

    let mut text = String::new();
    writeln!(
        text,
        "# measured qubit 0 = {}, qubit 1 = {}",
        alice.m0 as u8, alice.m1 as u8
    )
    .unwrap();
    text.push_str("# final state\n");
    text.push_str(&view.state(&out, backend)?);
    text.push_str("# qubit 2\n");
    text.push_str(&view.state(&q2, backend)?);
    text.push_str("# expected\n");
    text.push_str(&view.state(&expected, backend)?);
    let shown = if deviation.is_zero() {
        "0".to_string()
    } else {
        to_decimal(&deviation, 15)
    };
    writeln!(text, "deviation {shown}").unwrap();
    writeln!(text, "{}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok((text, if ok { 0 } else { exit::FAIL }))
}

fn cmd_verify<B: Backend>(backend: &B) -> Result<(String, u8), Failure> {
    let report = teleport::verify_teleportation(&teleport::standard_inputs(), backend);
    let mut text = String::new();
    for case in &report.cases {
        writeln!(text, "{case}").unwrap();
    }
    for case in report.failures() {
        for check in [&case.alice, &case.protocol] {
            if let teleport::Check::Fail(why) = check {
                writeln!(text, "# case {}: {why}", case.input).unwrap();
            }
        }
    }
    let passed = report.cases.iter().filter(|c| c.passed()).count();
    writeln!(
        text,
        "# {passed}/{} cases passed ({} backend)",
        report.cases.len(),
        backend.name()
    )
    .unwrap();
    Ok((text, if report.all_passed() { 0 } else { exit::FAIL }))
}
