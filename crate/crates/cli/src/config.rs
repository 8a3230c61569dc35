use clap::{Args, ValueEnum};
use optce_core::{Method, OracleKind, SolverConfig};

#[derive(Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Colgen,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OracleArg {
    Auto,
    Bruteforce,
    Tree,
    ScgSymmetric,
}

/// Solver flags shared by `solve` and `poa`.
#[derive(Args)]
pub struct ConfigArgs {
    #[arg(long, value_enum, default_value = "colgen")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "auto")]
    oracle: OracleArg,
    /// Pricing slack: a column enters only if it beats the dual bound by more than this.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    master_tol: f64,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_doublings: usize,
    #[arg(long, default_value_t = 1_000_000)]
    profile_cap: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    pub master_tol: f64,
    pub max_iterations: Option<usize>,
    pub penalty_doublings: usize,
    pub profile_cap: u128,
    pub method: Method,
    pub oracle: OracleKind,
}

impl TryFrom<ConfigArgs> for RunConfig {
    type Error = String;

    fn try_from(a: ConfigArgs) -> Result<Self, String> {
        for (name, v) in [("--tol", a.tol), ("--master-tol", a.master_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if a.max_iters == Some(0) || a.profile_cap == 0 {
            return Err("--max-iters and --profile-cap must be at least 1".into());
        }
        Ok(RunConfig {
            tolerance: a.tol,
            master_tol: a.master_tol,
            max_iterations: a.max_iters,
            penalty_doublings: a.max_doublings,
            profile_cap: a.profile_cap,
            method: match a.method {
                MethodArg::Colgen => Method::Colgen,
                MethodArg::Full => Method::Full,
            },
            oracle: match a.oracle {
                OracleArg::Auto => OracleKind::Auto,
                OracleArg::Bruteforce => OracleKind::Bruteforce,
                OracleArg::Tree => OracleKind::Tree,
                OracleArg::ScgSymmetric => OracleKind::ScgSymmetric,
            },
        })
    }
}

impl RunConfig {
    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            pricing_eps: self.tolerance,
            master_tol: self.master_tol,
            max_iterations: self.max_iterations,
            max_penalty_doublings: self.penalty_doublings,
            profile_cap: self.profile_cap,
            ..SolverConfig::default()
        }
    }

    /// Residual a solve may leave before it is reported as uncertified.
    pub fn certify_tol(&self) -> f64 {
        (10.0 * self.tolerance).max(1e-6)
    }
}
