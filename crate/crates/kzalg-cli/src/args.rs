use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "kzalg", version, about = "Affine Hecke, KLR and KZ monodromy computations", args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (defaults to stdout, or to $KZALG_OUT_DIR/<command>.<ext> when set).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Run the invariant suite of the subcommand's module instead of a computation.
    #[arg(long, global = true)]
    pub self_test: bool,
    /// Plain-text file of `key = value` lines using the flag names.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan matrix, roots and coroots of a root datum.
    Roots(RootsArgs),
    /// Clans of the arrangement D_d and D_0 for a graded root system.
    Clans(ClansArgs),
    /// Spiral attached to a point or an alcove.
    Spirals(SpiralsArgs),
    /// Nilpotent orbits of the cyclic quiver as multisegments.
    Orbits(QuiverArgs),
    /// Residue sequences and parabolic types with their shift dimensions.
    Partypes(PartypesArgs),
    /// Defining relations of the cyclic-quiver KLR algebra on its polynomial representation.
    KlrCheck(KlrArgs),
    /// Associativity and reduced-word independence of the dDAHA and the AHA.
    HeckeCheck(HeckeArgs),
    /// Cherednik operators, KZ monodromy and their comparison for SL2.
    Monodromy(MonodromyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Roots(_) => "roots",
            Command::Clans(_) => "clans",
            Command::Spirals(_) => "spirals",
            Command::Orbits(_) => "orbits",
            Command::Partypes(_) => "partypes",
            Command::KlrCheck(_) => "klr-check",
            Command::HeckeCheck(_) => "hecke-check",
            Command::Monodromy(_) => "monodromy",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Cartan type (A or C).
    #[arg(long = "type", default_value = "A")]
    pub kind: String,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RootsArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SupportArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Grading coweight in simple-coroot coordinates, e.g. `1/2` or `1,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Residues of a basis of V for gl(V) instead of a root datum, e.g. `0,1,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub residues: Option<String>,
    /// Grading modulus.
    #[arg(long)]
    pub m: Option<i64>,
    /// Degree d (nonzero).
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct ClansArgs {
    #[command(flatten)]
    pub support: SupportArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SpiralsArgs {
    #[command(flatten)]
    pub support: SupportArgs,
    /// Point y, e.g. `-1/4`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Alcove w^{-1} nu_0 given by a word in the simple affine reflections, e.g. `0,1`.
    #[arg(long)]
    pub alcove: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArgs {
    /// Number of vertices of the cyclic quiver.
    #[arg(long)]
    pub m: Option<usize>,
    /// Dimension vector, e.g. `1,1`.
    #[arg(long)]
    pub beta: Option<String>,
    /// Largest admissible |beta|.
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PartypesArgs {
    #[command(flatten)]
    pub quiver: QuiverArgs,
    /// Symplectic (self-dual) types instead of parabolic ones.
    #[arg(long)]
    pub symplectic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct KlrArgs {
    #[command(flatten)]
    pub quiver: QuiverArgs,
    /// Truncation degree of the test polynomials.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    /// Use the opposite sign in the Demazure operators (negative control).
    #[arg(long)]
    pub flipped: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticArg {
    Bernstein,
    Split,
}

#[derive(Args, Debug, Clone)]
pub struct HeckeArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Slope d/m fixing the parameters.
    #[arg(long, default_value = "1/3")]
    pub slope: String,
    /// Number of random triples.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Random seed (required).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Normalization of the quadratic relation of the affine Hecke algebra.
    #[arg(long, value_enum, default_value_t = QuadraticArg::Bernstein)]
    pub quadratic: QuadraticArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathArg {
    Tau,
    Gamma,
    Word,
}

#[derive(Args, Debug, Clone)]
pub struct MonodromyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Nilpotent order N of the weight module.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, value_enum, default_value_t = PathArg::Tau)]
    pub path: PathArg,
    /// Word in t, g (T, G inverses) for `--path word`, multiplied left to right.
    #[arg(long)]
    pub word: Option<String>,
    /// Tolerance for the relation and similarity checks.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}
