use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "frtlab",
    version,
    about = "Ordinals below ε₀ and finite Ramsey witness searches"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Also print a human-readable table on stderr.
    #[arg(long, global = true)]
    pub table: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the library's default step budget.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Also write the JSON payload to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub json_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinal calculator.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// One fundamental-sequence step `alpha[n]`.
    Fs {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u64,
    },
    /// α-largeness of finite sets.
    #[command(subcommand)]
    Large(LargeCmd),
    /// Descending sequence `alpha, alpha[f(0)], alpha[f(0)][f(1)], …`.
    Desc {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "id")]
        f: String,
    },
    /// The code vector of a d-tuple of ordinals.
    Encode {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        d: usize,
        #[arg(required = true)]
        ordinals: Vec<String>,
    },
    /// Finitary Ramsey, Paris–Harrington and Ketonen–Solovay searches.
    #[command(subcommand)]
    Frt(FrtCmd),
    /// Adjacent Ramsey searches.
    #[command(subcommand)]
    Ar(ArCmd),
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "tiny")]
        universe: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrdCmd {
    /// Compare two ordinals.
    Cmp { a: String, b: String },
    /// Maximal position and coefficient.
    Mp { a: String },
    /// Comparison position, coefficient and exponent.
    Cp { a: String, b: String },
    /// Canonical form.
    Fmt { a: String },
}

#[derive(Subcommand, Debug)]
pub enum LargeCmd {
    /// Is the set alpha-large?
    Check {
        #[arg(long)]
        alpha: String,
        /// Comma-separated, e.g. `1,2,3` or `{1,2,3}`.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// The alpha-large set `{f(start), f(start+1), …}`.
    Find {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
}

#[derive(Args, Debug)]
pub struct Shape {
    /// `cf:M`, `ui:M`, `md:FN`, `ph:FN` or `table:PATH`.
    #[arg(long)]
    pub size_fn: String,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: u32,
}

#[derive(Subcommand, Debug)]
pub enum FrtCmd {
    /// Does every coloring of `[a, R]` have a large homogeneous set?
    Holds {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        r: u64,
    },
    /// Least such R up to `--rmax`.
    MinR {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        rmax: u64,
    },
    /// Level counts of the tree of bad colorings of `[0, R]`.
    Tree {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        rmax: u64,
    },
    /// A size function defeated by the given coloring.
    CounterexampleF {
        #[arg(long, value_name = "FILE")]
        coloring: PathBuf,
    },
    /// Does every c-coloring of `[set]^d` have a relatively large homogeneous set?
    Ks {
        #[arg(long)]
        set: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArCmd {
    /// First `x_1 < … < x_{d+1}` with increasing adjacent windows.
    Search {
        #[arg(long, value_name = "FILE")]
        coloring: PathBuf,
    },
    /// The coloring `x ↦ code(seq[x_1], …, seq[x_d])`.
    FromOrdinals {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        d: usize,
        #[arg(required = true)]
        ordinals: Vec<String>,
    },
    /// The (d+1)-subset coloring recording where window codes fail to increase.
    LowerBound {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: u64,
        #[arg(required = true)]
        ordinals: Vec<String>,
    },
    /// Least R such that every coloring of `[m, R]` into c+1 colors has a
    /// homogeneous H with `|H| ≥ f(h_k)`.
    Saph {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long)]
        rmax: u64,
    },
    /// Largest code entry over tuples in `[0, x]`.
    BoundFn {
        #[arg(long, value_name = "FILE")]
        coloring: PathBuf,
        #[arg(long)]
        x: u64,
    },
}
