use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibreprod::run::{self, Format, RunConfig, Session, CONFIG_ERROR};

#[derive(Parser)]
#[command(
    name = "fibreprod",
    version,
    about = "Point counts, traces and modularity certificates for fibre-product threefolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count F_p-points.
    Count(Common),
    /// Count points and report tr2, tr3 and trU.
    Traces(Common),
    /// Certify that U matches its newform.
    Certify(Common),
    /// Verify the structure of the 2-adic comparison group.
    GroupCheck {
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
    },
    /// Print the L-function and check local zeta factors.
    Zeta(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    variety: String,
    /// Primes as a list (`3,7,13`) or range (`3-43`); defaults to the table primes.
    #[arg(long)]
    primes: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    /// TSV file of cached point counts.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Directory with surfaces.toml, threefolds.toml, fields.toml and newforms.tsv.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn config(c: Common) -> fibreprod::Result<RunConfig> {
    Ok(RunConfig {
        variety: Some(c.variety),
        primes: c.primes.as_deref().map(run::parse_primes).transpose()?,
        format: c.format.into(),
        cache: c.cache,
        data_dir: c.data_dir,
    })
}

type Cmd = fn(&mut Session, &RunConfig) -> fibreprod::Result<run::Report>;

fn execute(command: Command) -> fibreprod::Result<(String, i32)> {
    let (cmd, common): (Cmd, Common) = match command {
        Command::GroupCheck { format } => {
            let report = run::cmd_group_check();
            return Ok((report.render(format.into())?, report.status().exit_code()));
        }
        Command::Count(c) => (run::cmd_count, c),
        Command::Traces(c) => (run::cmd_traces, c),
        Command::Certify(c) => (run::cmd_certify, c),
        Command::Zeta(c) => (run::cmd_zeta, c),
    };
    let cfg = config(common)?;
    let mut session = Session::new(&cfg)?;
    let report = cmd(&mut session, &cfg)?;
    Ok((report.render(cfg.format)?, report.status().exit_code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR as u8)
        }
    }
}
