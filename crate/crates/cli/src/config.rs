use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const NOTES: &str = "\
Notes:
  MV-cycle counts (lattice mv, the lattice-mv crossval route) are derived
  from characters: the number of MV cycles of weight mu equals dim V(lambda)_mu.
  They are not computed from the geometry of the affine Grassmannian.

  The 1x2 matrix [2 1] of E_1 from the (1,1,1) to the (2,0,1) weight space of
  V(2,1,0) depends on a choice of basis. Only its rank (= 1) is checked, on the
  module induced from skew Howe duality:
    weylworks skewhowe --n 3 --m 3 --N 3 --lambda 2,1,0 --generator E1 --from 1,1,1

Environment:
  WEYLWORKS_MAX_DIM  overrides the module dimension guard (--max-dim wins)

Exit codes: 0 ok, 1 mismatch or computation error, 2 usage error";

#[derive(Debug, Parser)]
#[command(
    name = "weylworks",
    version,
    about = "Exact computations with irreducible representations of GL_n",
    after_help = NOTES,
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Args, Serialize, Deserialize)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(default)]
    pub format: Format,

    /// Largest module dimension to materialize
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,

    /// Largest |lambda| for tableau enumeration
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tableau_size: Option<usize>,

    /// Largest estimated number of echelon forms in a point count
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_echelon_forms: Option<u64>,

    /// Print the parsed configuration as JSON instead of running it
    #[arg(long, global = true)]
    #[serde(skip)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFormat {
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Character table of V(lambda): every weight with its multiplicity
    Character {
        /// Dominant weight, e.g. 3,0 or 1,0,-1
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        #[arg(short = 'n', long = "n")]
        n: usize,
    },

    /// Decompose an explicit module into irreducibles
    Decompose {
        /// Module expression: std, triv, det, adj, sym(k), ext(k), irrep(l1,..), tensor(A,B)
        #[arg(long)]
        module: String,
        #[arg(short = 'n', long = "n")]
        n: usize,
    },

    /// Build V(lambda) inside a tensor product of exterior powers
    Irrep {
        /// Partition, e.g. 2,1,0
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Also print the E_i and F_i matrices
        #[arg(long, value_enum)]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        emit_matrices: Option<MatrixFormat>,
    },

    /// Skew Howe decomposition of the N-th exterior power of C^n (x) C^m
    Skewhowe {
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'm', long = "m")]
        m: usize,
        #[arg(long = "N")]
        #[serde(rename = "N")]
        big_n: usize,
        /// gl_m highest weight; prints the induced gl_n module instead
        #[arg(long, value_delimiter = ',')]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Vec<usize>>,
        /// With --lambda: a generator such as E1 or F2 whose weight block to report
        #[arg(long, requires_all = ["lambda", "from"])]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<String>,
        /// Source weight of the reported block
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "generator")]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        from: Option<Vec<i64>>,
    },

    /// Lattice model of the affine Grassmannian
    Lattice {
        #[command(subcommand)]
        action: LatticeCommand,
    },

    /// Point counts of an n-step Springer fibre over prime fields
    Springer {
        /// Jordan type of the nilpotent operator
        #[arg(long, value_delimiter = ',', required = true)]
        nu: Vec<usize>,
        /// Dimension jumps of the flag
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<i64>,
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Primes to count over; by default primes are added until the fit is stable
        #[arg(long, value_delimiter = ',')]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        primes: Option<Vec<u64>>,
        /// Flag counting strategy
        #[arg(long, default_value = "cells")]
        counter: String,
    },

    /// Compare every construction of the weight multiplicities of V(conjugate of lambda)
    Crossval {
        /// gl_m highest weight lambda; the gl_n side is its conjugate
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'm', long = "m")]
        m: usize,
        /// Routes to compare (default: kostka,skewhowe,springer,lattice-mv)
        #[arg(long, value_delimiter = ',')]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        routes: Option<Vec<String>>,
        /// Flag counting strategy of the springer route
        #[arg(long, default_value = "cells")]
        counter: String,
        #[arg(long, value_delimiter = ',')]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        primes: Option<Vec<u64>>,
    },

    /// Run a configuration previously printed with --print-config
    Replay { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum LatticeCommand {
    /// Jordan type of X on a subspace
    Jordan {
        #[command(flatten)]
        subspace: SubspaceArgs,
    },

    /// Whether a subspace lies in the stratum of type lambda or its closure
    Stratum {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
        #[command(flatten)]
        subspace: SubspaceArgs,
    },

    /// Random X-stable subspace (X-closure of random integer vectors)
    Random {
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Degree bound: the subspace lives in the span of z^k e_i, k < D
        #[arg(short = 'D', long = "D")]
        #[serde(rename = "D")]
        d: usize,
        #[arg(long, default_value_t = 2)]
        generators: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Number of MV cycles of weight mu (the character value)
    Mv {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<i64>,
        #[arg(short = 'n', long = "n")]
        n: usize,
    },
}

/// The subspace is either the fixed point L_mu or read from a JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct SubspaceArgs {
    /// Use the fixed point L_mu
    #[arg(long, value_delimiter = ',', conflicts_with = "subspace", required_unless_present = "subspace")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<i64>>,
    #[arg(short = 'n', long = "n", required_unless_present = "subspace")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// JSON file {"n":..,"D":..,"basis":[["p/q",..],..]}
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<PathBuf>,
}

/// Everything needed to reproduce one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(flatten)]
    pub global: GlobalArgs,
    pub command: Command,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            schema_version: 1,
            global: cli.global,
            command: cli.command,
        }
    }
}
