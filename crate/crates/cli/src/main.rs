use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sheafcalc_core::brillnoether::{self, BNQuery};
use sheafcalc_core::dlp::{self, moduli_dim};
use sheafcalc_core::exceptional::{self, ExceptionalTable};
use sheafcalc_core::extremal::{self, Variant};
use sheafcalc_core::kernel::{euler_char, hilbert_p_int};
use sheafcalc_core::rational::{self, Rational};
use sheafcalc_core::verify::{self, SuiteParams, VerificationReport};
use sheafcalc_core::{CharP2, Error, DEFAULT_DEPTH};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_MATH: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "sheafcalc",
    version,
    about = "Exact numerics for semistable sheaves on the projective plane"
)]
struct Cli {
    /// Dyadic depth of the exceptional-slope table
    #[arg(long, global = true, env = "SHEAFCALC_DEPTH", default_value_t = DEFAULT_DEPTH,
          value_parser = clap::value_parser!(u32).range(0..=20))]
    depth: u32,

    /// Directory holding cached exceptional tables (read, or written on miss)
    #[arg(long, global = true, env = "SHEAFCALC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Append decimal approximations to rational output
    #[arg(long, global = true)]
    decimal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stable, exceptional or unstable, with the basic invariants
    Classify {
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Slope, discriminant and Euler characteristic
    Invariants {
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Sample the curve as CSV
    Curve {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List exceptional slopes in a window
    ExcSlopes {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        to: String,
    },
    /// Brill–Noether numbers for a stable character
    Bn {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 1)]
        sections: u64,
    },
    /// Extremal decomposition and family growth rates
    Extremal {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Paper)]
        variant: VariantArg,
    },
    /// Run verification suites
    Verify {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value_t = 30)]
        r_max: i64,
        #[arg(long, default_value_t = -15, allow_hyphen_values = true)]
        a_min: i64,
        /// Denominator of the slope grid for the region checks
        #[arg(long, default_value_t = 60)]
        grid: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Paper,
    Ch,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paper => Variant::Paper,
            VariantArg::Ch => Variant::Ch,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NonPositiveRank(_) => EXIT_USAGE,
            Error::Io(_) | Error::Cache(_) => EXIT_IO,
            _ => EXIT_MATH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed pipe on stdout (e.g. `| head`) ends the run quietly
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: 0,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

struct Printer {
    decimal: bool,
    lines: Vec<String>,
}

impl Printer {
    fn new(decimal: bool, header: String) -> Self {
        Self {
            decimal,
            lines: vec![header],
        }
    }

    fn q(&self, key: &str, x: &Rational) -> String {
        if self.decimal {
            format!(
                "{key}={} {key}_approx={}",
                rational::fmt_rational(x),
                rational::to_decimal(x, 6)
            )
        } else {
            format!("{key}={}", rational::fmt_rational(x))
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn flush(self) -> io::Result<()> {
        let mut out = io::stdout().lock();
        for l in self.lines {
            writeln!(out, "{l}")?;
        }
        Ok(())
    }
}

fn parse_char(text: &str) -> Result<CharP2, Failure> {
    let v: CharP2 = text.parse()?;
    Ok(v)
}

fn cmd_classify(cli: &Cli, text: &str) -> CmdResult {
    let v = parse_char(text)?;
    let verdict = dlp::classify(&v, cli.depth)?;
    let inv = v.invariants()?;
    let mut p = Printer::new(cli.decimal, format!("# classify depth={}", cli.depth));
    let mut fields = vec![
        format!("v={v}"),
        format!("kind={}", verdict.kind),
        p.q("mu", &inv.mu),
        p.q("delta", &inv.delta),
        p.q("chi", &inv.chi),
    ];
    if verdict.kind.is_stable_character() {
        fields.push(p.q("dim_m", &moduli_dim(&v)?));
    }
    p.line(fields.join(" "));
    p.line(format!("# {}", verdict.details));
    p.flush()?;
    Ok(0)
}

fn cmd_invariants(cli: &Cli, text: &str) -> CmdResult {
    let v = parse_char(text)?;
    let mut p = Printer::new(cli.decimal, format!("# invariants depth={}", cli.depth));
    let mut fields = vec![format!("v={v}")];
    if v.is_torsion() {
        fields.push("mu=undefined delta=undefined".into());
    } else {
        let inv = v.invariants()?;
        fields.push(p.q("mu", &inv.mu));
        fields.push(p.q("delta", &inv.delta));
    }
    fields.push(p.q("chi", &euler_char(&v)));
    fields.push(format!("integral={}", sheafcalc_core::kernel::is_integral(&v)));
    p.line(fields.join(" "));
    p.flush()?;
    Ok(0)
}

fn cmd_curve(cli: &Cli, from: &str, to: &str, step: &str, out: Option<&PathBuf>) -> CmdResult {
    let (from, to, step) = (rational::parse(from)?, rational::parse(to)?, rational::parse(step)?);
    if step <= Rational::from_integer(0.into()) {
        return Err(usage("--step must be positive"));
    }
    if from >= to {
        return Err(usage("--from must be smaller than --to"));
    }
    let rows = dlp::sample_curve(&from, &to, &step, cli.depth)?;
    let csv = dlp::curve_csv(&rows);
    let summary = format!("# curve depth={} rows={}", cli.depth, rows.len());
    match out {
        Some(path) => {
            fs::write(path, csv).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", path.display()),
            })?;
            println!("{summary} out={}", path.display());
        }
        None => {
            io::stdout().lock().write_all(csv.as_bytes())?;
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn cmd_exc_slopes(cli: &Cli, from: &str, to: &str) -> CmdResult {
    let (lo, hi) = (rational::parse(from)?, rational::parse(to)?);
    let mut p = Printer::new(cli.decimal, format!("# exc-slopes depth={}", cli.depth));
    p.line("dyadic,alpha,rank,disc");
    for e in exceptional::enumerate_exceptional(cli.depth, &lo, &hi) {
        let idx = e.dyadic_index;
        let dyadic = if idx.q == 0 {
            idx.p.to_string()
        } else {
            format!("{}/2^{}", idx.p, idx.q)
        };
        p.line(format!(
            "{dyadic},{},{},{}",
            rational::fmt_rational(&e.alpha),
            e.rank,
            rational::fmt_rational(&e.disc)
        ));
    }
    p.flush()?;
    Ok(0)
}

fn cmd_bn(cli: &Cli, text: &str, sections: u64) -> CmdResult {
    let v = parse_char(text)?;
    let verdict = dlp::classify(&v, cli.depth)?;
    if !verdict.kind.is_stable_character() {
        return Err(Failure {
            code: EXIT_MATH,
            message: format!(
                "{v} is {}: {}; Brill-Noether loci need a stable character",
                verdict.kind, verdict.details
            ),
        });
    }
    let q = BNQuery::new(v.clone(), sections)?;
    let chi = euler_char(&v);
    let bound = brillnoether::h0_upper_bound(&v)?;
    let mut p = Printer::new(cli.decimal, format!("# bn depth={}", cli.depth));
    p.line(format!("v={v} kind={} sections={sections}", verdict.kind));
    p.line(p.q("chi", &chi));
    p.line(format!("h0_bound={bound}"));
    p.line(p.q("expected_codim", &brillnoether::expected_codim(&q)));
    p.line(p.q("expected_dim", &brillnoether::expected_dim(&q)?));
    if v.ch0 >= 2.into() {
        match brillnoether::gh_generic_cohomology(&v) {
            Ok(h) => {
                p.line(p.q("generic_h0", &h.h0));
                if h.h0 == Rational::from_integer(bound.clone()) {
                    p.line("# the general sheaf attains the h0 bound");
                }
            }
            Err(e) => p.line(format!("generic_h0=undefined # {e}")),
        }
    }
    if v.ch1 > 0.into() && v.ch0 >= hilbert_p_int(&v.ch1) {
        let d = brillnoether::depth_expdim_br(&v, cli.depth)?;
        p.line(format!(
            "depth_k={} {} {} consistent={}",
            d.k,
            p.q("depth_expdim", &d.formula),
            p.q("expected_dim_br", &d.expected_dim),
            d.consistent()
        ));
    }
    p.flush()?;
    Ok(0)
}

fn cmd_extremal(cli: &Cli, text: &str, variant: Variant) -> CmdResult {
    let v = parse_char(text)?;
    let t = extremal::extremal_triple(&v, variant, cli.depth)?;
    let z1 = extremal::z1_dim(&v, cli.depth)?;
    let mut p = Printer::new(cli.decimal, format!("# extremal variant={variant} depth={}", cli.depth));
    p.line(format!("v={}", t.v));
    p.line(format!("v_prime={}", t.v_prime));
    p.line(format!("v_dprime={}", t.v_dprime));
    p.line(format!("eps_prime={}", t.eps_prime));
    p.line(format!("eps={}", t.eps));
    p.line(p.q("z1_dim", &z1));
    match extremal::z2_growth(&v, variant, cli.depth) {
        Ok(z) => {
            p.line(p.q("z2_offset", &z.example_offset));
            let relation = if z.k_coefficient > v.ch0 { ">" } else { "<=" };
            p.line(format!(
                "z2_k_coeff={} {relation} z1_k_coeff={}",
                z.k_coefficient, v.ch0
            ));
        }
        Err(e) => p.line(format!("z2_k_coeff=unavailable # {e}")),
    }
    p.flush()?;
    Ok(0)
}

fn cmd_verify(cli: &Cli, suite: &str, params: SuiteParams, format: Format) -> CmdResult {
    let reports: Vec<VerificationReport> = if suite == "all" {
        verify::run_all(&params)
    } else {
        vec![verify::run_suite(suite, &params)?]
    };
    let passed = reports.iter().all(VerificationReport::passed);
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            for r in &reports {
                out.write_all(r.to_text().as_bytes())?;
            }
            writeln!(
                out,
                "# overall depth={}: {}",
                cli.depth,
                if passed { "PASS" } else { "FAIL" }
            )?;
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&reports).map_err(|e| Failure {
                code: EXIT_IO,
                message: e.to_string(),
            })?;
            writeln!(out, "{json}")?;
        }
    }
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

fn prepare_tables(cli: &Cli) -> Result<(), Failure> {
    if let Some(dir) = &cli.cache_dir {
        let table = ExceptionalTable::load_or_build(dir, cli.depth)?;
        exceptional::install(table);
    }
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    prepare_tables(cli)?;
    match &cli.command {
        Command::Classify { v } => cmd_classify(cli, v),
        Command::Invariants { v } => cmd_invariants(cli, v),
        Command::Curve { from, to, step, out } => cmd_curve(cli, from, to, step, out.as_ref()),
        Command::ExcSlopes { from, to } => cmd_exc_slopes(cli, from, to),
        Command::Bn { v, sections } => cmd_bn(cli, v, *sections),
        Command::Extremal { v, variant } => cmd_extremal(cli, v, (*variant).into()),
        Command::Verify {
            suite,
            k_max,
            r_max,
            a_min,
            grid,
            format,
        } => {
            let params = SuiteParams {
                depth: cli.depth,
                k_max: *k_max,
                r_max: *r_max,
                a_min: *a_min,
                grid_denominator: *grid,
            };
            cmd_verify(cli, suite, params, *format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("sheafcalc: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
