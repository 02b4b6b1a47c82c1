//! `liftmark` command-line tool.
//!
//! Exit codes: 0 success, 1 I/O or usage errors, 2 the payload cannot be
//! embedded (capacity or pixel range), 3 the extracted payload fails its checksum.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "liftmark", version, about = "Reversible watermarking in integer wavelet subbands")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct EmbedOptions {
    /// Wavelet: haar or cdf53
    #[arg(long, default_value = "cdf53")]
    pub wavelet: String,
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Pixel narrowing margin G (0..=32); 0 disables narrowing
    #[arg(long, default_value_t = 0)]
    pub margin: u8,
    /// Side schedule: right or alternate
    #[arg(long, default_value = "right")]
    pub schedule: String,
    #[arg(long, default_value_t = 32)]
    pub max_passes: usize,
    /// Re-select the peak before every follow-up pass instead of stepping by 2
    #[arg(long)]
    pub auto_peak: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hide a payload file in a PGM image and write the image plus its key
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        payload: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[command(flatten)]
        opts: EmbedOptions,
    },
    /// Recover the payload and the original image
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out_payload: PathBuf,
        #[arg(long)]
        out_image: PathBuf,
    },
    /// Print detail-subband histograms and the capacity report as CSV
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        opts: EmbedOptions,
    },
    /// Run the embed/extract/PSNR grid over a directory of PGM images
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma separated wavelet list
        #[arg(long, default_value = "cdf53")]
        wavelets: String,
        /// Comma separated payload rates in bits per pixel
        #[arg(long, default_value = "")]
        bpp_list: String,
        /// Comma separated payload sizes in bits
        #[arg(long, default_value = "")]
        bits_list: String,
        #[arg(long)]
        out: PathBuf,
        /// Points-versus-quality CSV; defaults to <out>_points.csv
        #[arg(long)]
        points_out: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        opts: EmbedOptions,
    },
    /// Dump every coefficient plane as CSV (subband,level,row,col,value)
    Coeffs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "cdf53")]
        wavelet: String,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Embed {
            input,
            payload,
            out,
            key,
            opts,
        } => commands::embed(&input, &payload, &out, &key, &opts),
        Command::Extract {
            input,
            key,
            out_payload,
            out_image,
        } => commands::extract(&input, &key, &out_payload, &out_image),
        Command::Analyze { input, opts } => commands::analyze(&input, &opts),
        Command::Bench {
            corpus,
            wavelets,
            bpp_list,
            bits_list,
            out,
            points_out,
            seed,
            opts,
        } => commands::bench(&commands::BenchArgs {
            corpus,
            wavelets,
            bpp_list,
            bits_list,
            out,
            points_out,
            seed,
            opts,
        }),
        Command::Coeffs {
            input,
            wavelet,
            levels,
            out,
        } => commands::coeffs(&input, &wavelet, levels, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
