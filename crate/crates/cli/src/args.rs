use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gibbs_core::occupancy::StatisticsKind;
use num_rational::BigRational;

use crate::inputs::{parse_rational, parse_series_arg, parse_statistics, Series};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "gibbs", version, about = "Exact counting of particle arrangements and symmetric rewriting of finite-cardinality sentences")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "GIBBS_FORMAT", default_value = "table")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct System {
    /// Number of one-particle cells C.
    #[arg(long)]
    pub cells: u64,
    /// Number of particles N.
    #[arg(long)]
    pub particles: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count arrangements of N particles in C cells.
    Count {
        #[command(flatten)]
        system: System,
        /// distinguishable|mb, reduced-classical|rc, bose-einstein|be, fermi-dirac|fd; all when omitted.
        #[arg(long, value_parser = parse_statistics)]
        statistics: Option<StatisticsKind>,
    },
    /// List occupation vectors with their weights.
    Enumerate {
        #[command(flatten)]
        system: System,
        #[arg(long, value_parser = parse_statistics)]
        statistics: StatisticsKind,
    },
    /// Probability of each occupation vector.
    Dist {
        #[command(flatten)]
        system: System,
        #[arg(long, value_parser = parse_statistics)]
        statistics: StatisticsKind,
        /// Report only the probability that some cell holds two or more particles.
        #[arg(long)]
        coincidence: bool,
    },
    /// Two coins, two faces each.
    Coins {
        #[arg(long, value_parser = parse_statistics)]
        statistics: Option<StatisticsKind>,
    },
    /// Dimensions of the N-fold tensor power and its symmetric and antisymmetric parts.
    Dims {
        #[command(flatten)]
        system: System,
    },
    /// Particles carrying distinct stable labels.
    Labels {
        /// Phases available to each particle.
        #[arg(long)]
        base_cells: u64,
        /// Number of labels, one per particle.
        #[arg(long)]
        labels: u64,
    },
    /// Counts under fixed particle number and total energy.
    Macro {
        /// Level file: one `energy=<p/q> degeneracy=<int>` per line.
        #[arg(long)]
        levels: PathBuf,
        #[arg(long)]
        n_total: u64,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        e_total: BigRational,
        /// Cell volume.
        #[arg(long, value_parser = parse_rational)]
        tau: Option<BigRational>,
        /// List the admissible level occupations instead of the totals.
        #[arg(long)]
        list: bool,
    },
    /// Reduced phase-space volume (C tau)^N / N!.
    Volume {
        #[command(flatten)]
        system: System,
        #[arg(long, value_parser = parse_rational)]
        tau: Option<BigRational>,
    },
    /// Ratio of indistinguishable to reduced counts over a series of cell counts.
    Limit {
        /// Cell counts: `10,100,1000`, `1..50` or `10..1000:10`.
        #[arg(long, value_parser = parse_series_arg)]
        cells: Series,
        #[arg(long)]
        particles: u64,
    },
    /// Entropy with and without the 1/N! correction.
    Entropy {
        #[command(flatten)]
        system: System,
        /// Also report N ln C0 for a ground level of this degeneracy.
        #[arg(long)]
        ground_degeneracy: Option<u64>,
    },
    /// Entropy of mixing two samples.
    Mix {
        #[arg(long)]
        particles_a: u64,
        #[arg(long)]
        cells_a: u64,
        #[arg(long, default_value_t = 0)]
        species_a: u32,
        #[arg(long)]
        particles_b: u64,
        #[arg(long)]
        cells_b: u64,
        #[arg(long, default_value_t = 0)]
        species_b: u32,
    },
    /// S(mN, mC) - m S(N, C).
    Extensivity {
        #[command(flatten)]
        system: System,
        #[arg(long, default_value_t = 2)]
        scale: u64,
    },
    /// binomial(N*, N) N! / N*^N over a series of reservoir sizes.
    Grand {
        #[arg(long)]
        particles: u64,
        /// Reservoir sizes N*: `10,100,1000`, `3..50` or `10..1000:10`.
        #[arg(long, value_parser = parse_series_arg)]
        reservoir: Series,
    },
    /// ln(atoms! / prod counts!).
    EtCorrection {
        /// Molecule counts per species, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<u64>,
        #[arg(long)]
        atoms: u64,
    },
    /// Rewrite a sentence with models of one size n as exists x1..xn G.
    Symmetrize {
        #[arg(long)]
        n: usize,
        /// Sentence text, or `-` for standard input.
        #[arg(long, allow_hyphen_values = true)]
        formula: String,
        /// Predicate declarations such as `F/2, P/1`.
        #[arg(long)]
        sig: Option<String>,
        /// Largest universe size for the semantic checks.
        #[arg(long, default_value_t = 4)]
        check_max_size: usize,
        /// Skip the semantic checks.
        #[arg(long)]
        no_check: bool,
    },
    /// Compare two sentences on every model up to a size.
    CheckEquiv {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Universe sizes at which a sentence has a model.
    Cardinalities {
        #[arg(long, allow_hyphen_values = true)]
        formula: String,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}
