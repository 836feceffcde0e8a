//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fsslab", version, about = "Exact Frölicher spectral sequence pages and Hermitian metric checks")]
pub struct Cli {
    /// Worker threads; overrides FSSLAB_THREADS. Defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Emit a versioned JSON run report on stdout.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit page tables as CSV with header `r,p,q,e`.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Where a model comes from: a model file, or `catalog:<name>`.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model file path or `catalog:<name>`.
    pub model: String,

    /// Parameter binding `name=value`, value rational (repeatable).
    #[arg(long = "param", short = 'P', value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Page dimensions e_r^{p,q}.
    Pages {
        #[command(flatten)]
        model: ModelArgs,
        /// Last page to compute; defaults to n + 1.
        #[arg(long)]
        rmax: Option<usize>,
        /// Restrict the output to one bidegree `p,q`.
        #[arg(long, value_name = "P,Q")]
        bidegree: Option<String>,
    },
    /// Betti numbers of the underlying real Lie algebra.
    Betti {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Special-metric predicates and the c1 constant.
    CheckMetric {
        #[command(flatten)]
        model: ModelArgs,
        /// Metric file.
        metric: PathBuf,
        #[arg(long)]
        balanced: bool,
        #[arg(long)]
        skt: bool,
        /// k-th Gauduchon condition.
        #[arg(long, value_name = "K")]
        gauduchon: Option<usize>,
        /// Gauduchon (standard) condition.
        #[arg(long)]
        standard: bool,
        /// Print c1(F).
        #[arg(long)]
        c1: bool,
    },
    /// Whether a form defines a nonzero class on E_r.
    Class {
        #[command(flatten)]
        model: ModelArgs,
        /// A form in model-file term syntax, e.g. `(0,1) w[-1,-2] + w[-2,-4]`.
        form: String,
        #[arg(long)]
        page: usize,
        #[arg(long, value_name = "P,Q")]
        bidegree: String,
    },
    /// Named models and the real algebra list.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write the model file of a direct product.
    Product { left: String, right: String },
    /// Compare the Künneth convolution with a direct product computation.
    Kunneth {
        left: String,
        right: String,
        /// Last page compared; defaults to min(n1, n2) + 1.
        #[arg(long)]
        rmax: Option<usize>,
    },
    /// Bigraded CDGA computations.
    Cdga {
        #[command(subcommand)]
        action: CdgaAction,
    },
    /// Reproduce the E_r^{0,2} tables of the 4-dimensional families.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Exploratory computations that assert nothing.
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List catalog entries.
    List,
    /// Print a catalog model file, bound with `--param` values. Families
    /// without parameters print their parametrized template.
    Emit {
        name: String,
        #[arg(long = "param", short = 'P', value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// List the real algebras, or show one.
    Nla { name: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum CdgaAction {
    /// Check that d_2 is nonzero on the SO(9) Dolbeault model.
    So9Verify {
        /// Read the model from a CDGA file instead of the built-in one.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Override the differential of w87 in the built-in model.
        #[arg(long, value_name = "POLY")]
        delbar_w87: Option<String>,
    },
    /// Print the built-in SO(9) model as a CDGA file.
    So9Show,
    /// Slice dimensions and operator ranks of a CDGA file.
    Slices {
        file: PathBuf,
        #[arg(long, value_name = "P,Q", required = true)]
        bidegree: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TablesAction {
    Reproduce {
        #[arg(value_enum)]
        table: TableId,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TableId {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Subcommand, Debug)]
pub enum ExperimentAction {
    /// Rank of d_{n-1}: E^{0,n-2} -> E^{n-1,0} over the catalog.
    DnVanishing {
        /// Largest Bigalke–Rollenske index included. Index 3 needs d_9 in
        /// dimension 10 and runs for many minutes.
        #[arg(long, default_value_t = 2)]
        br_max: usize,
    },
}
