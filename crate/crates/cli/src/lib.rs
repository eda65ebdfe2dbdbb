//! Command-line front end: argument parsing, dispatch and report rendering.

mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwb_core::blowup::{build_blowup, build_blowup_rees, MultiWeightedBlowup};
use mwb_core::invariant::{self, logord_at};
use mwb_core::monomial::{FractionalIdeal, MonomialIdeal};
use mwb_core::nondegenerate::{newton_nondegenerate, one_step_check};
use mwb_core::parse::{parse_monomial_list, parse_polynomial};
use mwb_core::poly::{LogAmbient, PolyIdeal, Rational};
use mwb_core::resolve::{self, Mode, Options, DEFAULT_DEPTH_LIMIT};

pub use report::Report;

/// Environment variable overriding the resolution depth guard.
pub const DEPTH_ENV: &str = "MWB_DEPTH_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "mwb",
    version,
    about = "Multi-weighted blow-ups and logarithmic resolution of ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Ambient declaration, ideal and output switches shared by all subcommands.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Ordinary variables, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ordinary: Vec<String>,
    /// Monomial (toroidal) variables, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub monomial: Vec<String>,
    /// Ideal generators; repeatable or comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: Vec<String>,
    /// Monomial ideal as a comma separated list of monomials.
    #[arg(long = "ideal-monomial")]
    pub ideal_monomial: Option<String>,
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
    /// Emit every intermediate ideal, center and invariant.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Total,
    Weak,
    Proper,
}

#[derive(Debug, Clone, Args)]
pub struct Weights {
    /// Weights of the exceptional rays, in ray order.
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<u64>,
    /// Blow up along the root `ideal^{1/root}` instead.
    #[arg(long)]
    pub root: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polyhedron and normal fan of a monomial ideal.
    Newton(Input),
    /// Presentation of the blow-up along a monomial ideal.
    Blowup {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        weights: Weights,
    },
    /// Transform of `--ideal` under the blow-up along `--ideal-monomial`.
    Transform {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        weights: Weights,
        #[arg(long, value_enum, default_value = "total")]
        kind: TransformKind,
    },
    /// Invariant at a point (default the origin).
    Invariant {
        #[command(flatten)]
        input: Input,
        /// Point as comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Center and reduced center at a point.
    Center {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Resolve by proper transforms.
    Resolve {
        #[command(flatten)]
        input: Input,
        /// Additional marked point; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        mark: Vec<String>,
    },
    /// Principalize by weak transforms.
    Principalize {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        mark: Vec<String>,
    },
    /// Newton non-degeneracy of a single polynomial.
    Nondegenerate(Input),
    /// One blow-up along the Newton ideal on the fully monomial ambient.
    OneStepCheck(Input),
    /// Invariant and first blow-up after adding one ordinary variable.
    ReembedCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(mwb_core::Error),
    /// A check ran to completion and failed; the report is still printed.
    Check(Report),
}

impl From<mwb_core::Error> for CliError {
    fn from(e: mwb_core::Error) -> Self {
        match e {
            mwb_core::Error::Parse { .. } | mwb_core::Error::UnknownVariable(_) => CliError::Usage(format!("{e}")),
            e => CliError::Domain(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Check(_) => 1,
        }
    }
}

fn valid_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|h| h.is_ascii_alphabetic()) && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

fn identifiers(src: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if !out.contains(&s) {
                out.push(s);
            }
        } else {
            i += 1;
        }
    }
}

impl Input {
    fn sources(&self) -> Vec<String> {
        self.ideal
            .iter()
            .flat_map(|s| s.split(','))
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }

    /// Declared ambient, or every identifier in order of appearance as ordinary.
    pub fn ambient(&self) -> Result<LogAmbient, CliError> {
        let (ord, mon) = if self.ordinary.is_empty() && self.monomial.is_empty() {
            let mut names = Vec::new();
            for s in self.sources() {
                identifiers(&s, &mut names);
            }
            if let Some(m) = &self.ideal_monomial {
                identifiers(m, &mut names);
            }
            (names, Vec::new())
        } else {
            (self.ordinary.clone(), self.monomial.clone())
        };
        if let Some(bad) = ord.iter().chain(&mon).find(|n| !valid_name(n)) {
            return Err(CliError::Usage(format!("invalid variable name `{bad}`")));
        }
        let o: Vec<&str> = ord.iter().map(String::as_str).collect();
        let m: Vec<&str> = mon.iter().map(String::as_str).collect();
        LogAmbient::from_names(&o, &m).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn ideal(&self, ambient: &LogAmbient) -> Result<PolyIdeal, CliError> {
        let names = ambient.names();
        let srcs = self.sources();
        if srcs.is_empty() {
            return Err(CliError::Usage("missing --ideal".into()));
        }
        let gens = srcs
            .iter()
            .map(|s| parse_polynomial(s, &names))
            .collect::<mwb_core::Result<Vec<_>>>()?;
        Ok(PolyIdeal::new(ambient.clone(), gens)?)
    }

    fn monomial_ideal(&self, ambient: &LogAmbient) -> Result<MonomialIdeal, CliError> {
        match &self.ideal_monomial {
            Some(m) => Ok(parse_monomial_list(m, &ambient.names())?),
            None => Err(CliError::Usage("missing --ideal-monomial".into())),
        }
    }

    /// `--ideal-monomial`, or the monomial saturation of `--ideal`.
    fn monomial_or_saturation(&self, ambient: &LogAmbient) -> Result<MonomialIdeal, CliError> {
        if self.ideal_monomial.is_some() {
            self.monomial_ideal(ambient)
        } else {
            Ok(self.ideal(ambient)?.monomial_saturation())
        }
    }
}

fn parse_point(src: Option<&String>, n: usize) -> Result<Vec<Rational>, CliError> {
    let Some(src) = src else {
        return Ok(vec![Rational::from_integer(0.into()); n]);
    };
    let coords: Vec<Rational> = src
        .split(',')
        .map(|s| {
            let s = s.trim();
            let parsed = match s.split_once('/') {
                Some((p, q)) => p.trim().parse().ok().zip(q.trim().parse().ok()),
                None => s.parse().ok().map(|p| (p, 1.into())),
            };
            match parsed {
                Some((p, q)) if q != 0.into() => Ok(Rational::new(p, q)),
                _ => Err(CliError::Usage(format!("invalid coordinate `{s}`"))),
            }
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != n {
        return Err(CliError::Usage(format!(
            "point has {} coordinates, ambient has {n}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn blowup_of(input: &Input, w: &Weights, ambient: &LogAmbient) -> Result<MultiWeightedBlowup, CliError> {
    let a = input.monomial_ideal(ambient)?;
    Ok(match w.root {
        Some(root) => build_blowup_rees(&FractionalIdeal::new(a, root)?, ambient)?,
        None => build_blowup(&a, &w.weights, ambient)?,
    })
}

fn depth_limit() -> Result<usize, CliError> {
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{DEPTH_ENV} must be a natural number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_DEPTH_LIMIT),
    }
}

fn single(input: &Input, ambient: &LogAmbient) -> Result<mwb_core::poly::Polynomial, CliError> {
    let i = input.ideal(ambient)?;
    if i.generators.len() != 1 {
        return Err(CliError::Usage("expected a single polynomial".into()));
    }
    Ok(i.generators[0].clone())
}

/// Execute a parsed command.
pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Newton(input) => {
            let amb = input.ambient()?;
            let a = input.monomial_or_saturation(&amb)?;
            Ok(report::newton(&amb, &a)?)
        }
        Command::Blowup { input, weights } => {
            let amb = input.ambient()?;
            let b = blowup_of(input, weights, &amb)?;
            Ok(report::blowup(&amb, &b, weights.root))
        }
        Command::Transform { input, weights, kind } => {
            let amb = input.ambient()?;
            let b = blowup_of(input, weights, &amb)?;
            let i = input.ideal(&amb)?;
            let (t, mult) = match kind {
                TransformKind::Total => (b.total_transform(&i)?, Vec::new()),
                TransformKind::Weak => b.weak_transform(&i)?,
                TransformKind::Proper => {
                    let (_, mult) = b.weak_transform(&i)?;
                    (b.proper_transform(&i)?, mult)
                }
            };
            Ok(report::transform(&amb, &b, &i, *kind, &t, &mult))
        }
        Command::Invariant { input, point } => {
            let amb = input.ambient()?;
            let i = input.ideal(&amb)?;
            let p = parse_point(point.as_ref(), amb.len())?;
            let (inv, _) = invariant::invariant_at(&i, &p)?;
            Ok(report::invariant(&amb, &i, &p, &inv, logord_at(&i, &p)))
        }
        Command::Center { input, point } => {
            let amb = input.ambient()?;
            let i = input.ideal(&amb)?;
            let p = parse_point(point.as_ref(), amb.len())?;
            let (inv, c) = invariant::invariant_at(&i, &p)?;
            Ok(report::center(&amb, &i, &inv, &c)?)
        }
        Command::Resolve { input, mark } | Command::Principalize { input, mark } => {
            let mode = if matches!(cmd, Command::Resolve { .. }) {
                Mode::Resolve
            } else {
                Mode::Principalize
            };
            let amb = input.ambient()?;
            let i = input.ideal(&amb)?;
            let marks = mark
                .iter()
                .map(|m| parse_point(Some(m), amb.len()))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = Options {
                mode,
                depth_limit: depth_limit()?,
                marks,
            };
            let tree = resolve::run(&i, &opts)?;
            Ok(report::tree(&amb, &i, &tree, input.trace))
        }
        Command::Nondegenerate(input) => {
            let amb = input.ambient()?;
            let f = single(input, &amb)?;
            let r = newton_nondegenerate(&f)?;
            Ok(report::nondegenerate(&amb, &f, &r))
        }
        Command::OneStepCheck(input) => {
            let amb = input.ambient()?;
            let f = single(input, &amb)?;
            let r = one_step_check(&f, &amb.names())?;
            let rep = report::one_step(&amb, &f, &r);
            if r.passed() {
                Ok(rep)
            } else {
                Err(CliError::Check(rep))
            }
        }
        Command::ReembedCheck { input, point } => {
            let amb = input.ambient()?;
            let i = input.ideal(&amb)?;
            let p = parse_point(point.as_ref(), amb.len())?;
            let r = resolve::reembed_check(&i, Some(&p))?;
            let rep = report::reembed(&amb, &i, &r);
            if r.ok() {
                Ok(rep)
            } else {
                Err(CliError::Check(rep))
            }
        }
    }
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Newton(i) | Command::Nondegenerate(i) | Command::OneStepCheck(i) => i.json,
        Command::Blowup { input, .. }
        | Command::Transform { input, .. }
        | Command::Invariant { input, .. }
        | Command::Center { input, .. }
        | Command::Resolve { input, .. }
        | Command::Principalize { input, .. }
        | Command::ReembedCheck { input, .. } => input.json,
    }
}

fn emit(rep: &Report, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", rep.to_json())
    } else {
        write!(out, "{}", rep.text)
    }
}

/// Run with `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let json = wants_json(&cli.command);
    let result = execute(&cli.command);
    let io = match &result {
        Ok(rep) => emit(rep, json, out),
        Err(CliError::Check(rep)) => emit(rep, json, out),
        Err(CliError::Usage(m)) => writeln!(err, "usage error: {m}"),
        Err(CliError::Domain(e)) => {
            if json {
                writeln!(out, "{}", report::error_json(e))
            } else {
                writeln!(err, "error[{}]: {e}", e.code())
            }
        }
    };
    if io.is_err() {
        return 1;
    }
    match result {
        Ok(_) => 0,
        Err(e) => e.exit_code(),
    }
}
