//! `layered`: command-line front end for layered tropical algebra.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use layered_core::{Error, SortKind};

#[derive(Parser)]
#[command(name = "layered", version, about = "Exact layered tropical algebra")]
struct Cli {
    /// Sorting semiring: unit, super, trunc:<q>, nat, posq or q.
    #[arg(long, global = true, default_value = "nat")]
    sort: SortKind,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a scalar.
    Eval {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Primary decomposition.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Corner roots with multiplicities.
    Roots {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Layered resultant of two polynomials.
    Resultant {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Also print the Sylvester matrix and, for primary pairs, the layer permanent.
        #[arg(long)]
        explain: bool,
    },
    /// Layered derivative.
    Derivative {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Layered antiderivative.
    Integrate {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Discriminant.
    Discriminant {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Separability test through the discriminant sort.
    Separable {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Raster of the layering map, or of a corner locus with --locus.
    Layermap {
        #[arg(required = true)]
        polys: Vec<String>,
        /// Comma-separated axes `start:end:step`.
        #[arg(long, allow_hyphen_values = true)]
        region: String,
        /// Comma-separated coordinate layers (default 1 on every axis).
        #[arg(long)]
        layers: Option<String>,
        /// Report the grid points where every polynomial has a corner root.
        #[arg(long)]
        locus: bool,
    },
    /// Truncate a layer at q.
    Truncate {
        layer: String,
        #[arg(long)]
        q: String,
    },
    /// Bounded search for surpassing violations of resultant multiplicativity
    /// over primary triples.
    ConjectureSearch {
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = 3)]
        max_layer: u32,
        /// Common root of the generated triples.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        root: String,
        /// Stop after this many violations.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::InvalidLayer { .. }
        | Error::NonInvertibleLayer { .. }
        | Error::LayerNotDivisible { .. }
        | Error::NotSeparable
        | Error::ReconstructionMismatch => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, cli.sort) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match e {
                Error::LayerNotDivisible { .. } if cli.sort != SortKind::PosRationals => {
                    eprintln!("error: {e} (try --sort posq)")
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
