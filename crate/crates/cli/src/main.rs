//! `swclass`: command-line front end for the swclass calculus.
//!
//! Exit codes: 0 on success, 1 when a cross-check or identity sweep finds a
//! counterexample, 2 on invalid input.

mod commands;
mod report;
mod scenario;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{CliError, OutFormat, Report};
use scenario::ScenarioName;

#[derive(Debug, Parser)]
#[command(name = "swclass", version, about = "Characteristic-class calculus for families Seiberg-Witten invariants")]
pub struct Cli {
    /// Ring presentation: a JSON file, or inline JSON starting with `{`.
    #[arg(long, global = true, value_name = "FILE")]
    pub ring: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub out: OutFormat,
    /// Override the truncation degree of the ring.
    #[arg(long, global = true, value_name = "N")]
    pub trunc: Option<u32>,
    /// Sweep bound override, `key=lo..hi` or `key=n`.
    #[arg(long, global = true, value_name = "KEY=LO..HI")]
    pub range: Vec<String>,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Ring arithmetic.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Characteristic classes of a complex or real bundle.
    #[command(subcommand)]
    Classes(ClassesCmd),
    /// Steenrod squares and relations on Seiberg-Witten ledgers.
    #[command(subcommand)]
    Sw(SwCmd),
    /// Wall crossing.
    #[command(subcommand)]
    Wall(WallCmd),
    /// K-theoretic invariants and divisibility.
    #[command(subcommand)]
    Kdiv(KdivCmd),
    /// Identity sweeps and dual-route checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Worked examples end to end.
    Scenario {
        #[arg(value_enum)]
        name: ScenarioName,
        /// Scenario parameters as a JSON object.
        #[arg(long, value_name = "JSON")]
        params: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingCmd {
    /// Normal form of an expression over the ring's generators.
    Eval { expr: String },
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    #[arg(long)]
    pub rank: i64,
    /// Chern classes in order, one per flag.
    #[arg(long = "chern", value_name = "EXPR")]
    pub chern: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum ClassesCmd {
    /// Segre classes `s_0, s_1, ...` up to the truncation.
    Segre(BundleArgs),
    /// Equivariant Euler class `x^a + c_1 x^{a-1} + ... + c_a`.
    Euler {
        #[command(flatten)]
        bundle: BundleArgs,
        /// Defaults to the rank.
        #[arg(long)]
        a: Option<i64>,
    },
    /// Chern character.
    ChernChar(BundleArgs),
    /// Todd class.
    Todd(BundleArgs),
    /// Â class of a real bundle from its Pontryagin classes.
    Ahat {
        #[arg(long)]
        rank: i64,
        /// Pontryagin classes in order.
        #[arg(long = "pontryagin", value_name = "EXPR")]
        pontryagin: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SwCmd {
    /// `Sq^i(SW_m)`.
    Steenrod {
        #[arg(long, value_name = "FILE")]
        ledger: String,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        m: i64,
    },
    /// Realizability screens on a ledger.
    Relations {
        #[arg(long, value_name = "FILE")]
        ledger: String,
        /// `A:P'` with `p = 2^A P'`, `P'` odd.
        #[arg(long, value_name = "A:P'")]
        power_of_two: Option<String>,
        /// Parity of the Seiberg-Witten invariant for the `w_2` test.
        #[arg(long, value_name = "0|1")]
        sw_parity: Option<u8>,
        /// Also check `w(H^+) = c(D)` mod 2.
        #[arg(long)]
        chern_check: bool,
    },
    /// Convert between `mu` classes and `SW` classes.
    MuConvert {
        /// `mu_0, mu_1, ...`; converts to `SW` with `--segre`.
        #[arg(long = "mu", value_name = "EXPR")]
        mu: Vec<String>,
        #[arg(long = "segre", value_name = "EXPR")]
        segre: Vec<String>,
        /// `SW_0, SW_1, ...`; converts to `mu` with `--chern`.
        #[arg(long = "sw", value_name = "EXPR")]
        sw: Vec<String>,
        #[arg(long = "chern", value_name = "EXPR")]
        chern: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum WallCmd {
    /// `SW_m(phi) - SW_m(psi)`.
    Diff {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, value_name = "EXPR")]
        obs: String,
        /// `s_0(D), s_1(D), ...`.
        #[arg(long = "segre", value_name = "EXPR")]
        segre: Vec<String>,
    },
    /// Obstruction class from the sphere-bundle algebra.
    Obs {
        #[arg(long)]
        b_plus: i64,
        /// With `--e-psi` and `--lambda`; omit all three for free generators.
        #[arg(long, value_name = "EXPR")]
        e_phi: Option<String>,
        #[arg(long, value_name = "EXPR")]
        e_psi: Option<String>,
        #[arg(long, value_name = "EXPR")]
        lambda: Option<String>,
    },
    /// The `b+ = 1` wall over the Jacobian torus.
    Torus {
        /// JSON file `{"b1":..,"d":..,"M":[[..]]}`.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["b1", "matrix"])]
        input: Option<String>,
        #[arg(long)]
        b1: Option<i64>,
        #[arg(long, default_value_t = 1)]
        d: i64,
        /// Antisymmetric matrix as JSON.
        #[arg(long, value_name = "JSON")]
        matrix: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KdivCmd {
    /// `a_{p,l}` for `l = 0..count`.
    Coeffs {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
    /// `n(d, m, p)` by both routes.
    Ndmp {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        p: i64,
    },
    /// Divisibility ledger over a point, or `S^{2r}` with `--r`.
    Ledger {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: Option<i64>,
    },
    /// `Ch(SW^K_m)` of a rational ledger.
    Swk {
        #[arg(long, value_name = "FILE")]
        ledger: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_name = "EXPR", default_value = "0")]
        kappa: String,
        /// `Ahat(H^+)`.
        #[arg(long, value_name = "EXPR", default_value = "1")]
        ahat: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every sweep plus the symmetric-power pushforward grid.
    All,
    Vzero,
    Recur5,
    Recur3,
    /// Pushforward of `O(m) (1 - O(-1))^{a'}` from `P(V)` against `S_m`.
    SymPush {
        /// Rank of `V`; without `--ring` a free rational ring `c1..c_rank` is used.
        #[arg(long)]
        rank: i64,
        #[arg(long = "chern", value_name = "EXPR")]
        chern: Vec<String>,
        #[arg(long, default_value_t = 0)]
        aprime: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            // A closed downstream pipe is not an error.
            let _ = std::io::stdout().lock().write_all(report.render(cli.out).as_bytes());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub type CmdResult = Result<Report, CliError>;
