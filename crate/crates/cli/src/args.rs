use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "multicirc", version, about = "Normal forms, quotient groups and multidimensional circulants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Vertex cap for every oracle search.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Digraph,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cycles,
    Neighbourhood,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Integer matrix: rows by `;`, entries by `,` (or a JSON array of rows).
    #[arg(short = 'm', long = "matrix")]
    pub matrix: String,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub matrix: MatrixArg,
    /// Integer vector, e.g. `1,1`.
    #[arg(short = 'a', long = "element", allow_hyphen_values = true)]
    pub element: String,
}

#[derive(Debug, Args)]
pub struct CirculantArgs {
    #[command(flatten)]
    pub matrix: MatrixArg,
    /// Jump vectors separated by `|`, e.g. `1,0|0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub jumps: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Digraph)]
    pub mode: ModeArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form with transforms.
    Snf(MatrixArg),
    /// Column Hermite normal form with transform.
    Hnf(MatrixArg),
    /// Determinantal divisors and invariant factors.
    Divisors(MatrixArg),
    /// Structure of Z^n / M Z^n.
    Group {
        #[command(flatten)]
        matrix: MatrixArg,
        /// List every element in canonical form.
        #[arg(long)]
        elements: bool,
    },
    /// Order of an element.
    Order(ElementArgs),
    /// Canonical representative and Smith coordinates of an element.
    Canon(ElementArgs),
    /// Build G(M; A).
    Build(CirculantArgs),
    /// Connected components and the reduced presentation of one component.
    Components(CirculantArgs),
    /// Cartesian product of circulants; repeat -m and --jumps per factor.
    Product {
        #[arg(short = 'm', long = "matrix", required = true)]
        matrices: Vec<String>,
        #[arg(long, required = true, allow_hyphen_values = true)]
        jumps: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Digraph)]
        mode: ModeArg,
    },
    /// Adam canonical form over the Smith diagonal group.
    AdamCanon(CirculantArgs),
    /// Recover Cartesian product directions from adjacency alone.
    Directions {
        /// JSON edge list file; `-` reads stdin.
        #[arg(long, conflicts_with_all = ["matrix", "jumps"])]
        graph: Option<String>,
        #[arg(short = 'm', long = "matrix", requires = "jumps")]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        jumps: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Graph)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, value_enum, default_value_t = Method::Cycles)]
        method: Method,
    },
    /// Lower and upper bounds on the dimension.
    Bounds(CirculantArgs),
    /// Circulant test for a connected 2-jump circulant.
    IsCirculant(CirculantArgs),
    /// Dimension report; `--exact` adds the exhaustive search.
    Dimension {
        #[command(flatten)]
        circulant: CirculantArgs,
        #[arg(long)]
        exact: bool,
    },
    /// Run the verification sweeps.
    Verify {
        /// Run only these criteria (1-11).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}
