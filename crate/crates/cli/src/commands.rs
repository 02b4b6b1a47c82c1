use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use liftmark::bench::{bench_csv, points_csv, run_bench, BenchSpec, PayloadTarget};
use liftmark::codec::{capacity, embed as embed_payload, extract as extract_payload};
use liftmark::histogram::build_histogram;
use liftmark::metrics::quality_report;
use liftmark::{
    decode_key, encode_key, forward_iwt, read_pgm, write_pgm, BitStream, EmbedConfig, Error, GrayImage,
    PeakPolicy, SideSchedule, WaveletId,
};

use crate::EmbedOptions;

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::InsufficientCapacity { .. } | Error::PixelRangeOverflow { .. }) => 2,
            CliError::Core(Error::ChecksumMismatch { .. }) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "error: {}: {source}", path.display()),
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            // these messages lead with the error name
            CliError::Core(
                e @ (Error::InsufficientCapacity { .. }
                | Error::PixelRangeOverflow { .. }
                | Error::ChecksumMismatch { .. }),
            ) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "error: {}: {e}", e.name()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_image(path: &Path) -> CliResult<GrayImage> {
    Ok(read_pgm(&read(path)?)?)
}

fn parse_wavelet(s: &str) -> CliResult<WaveletId> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("unknown wavelet {s:?}; use haar or cdf53")))
}

impl EmbedOptions {
    fn config(&self) -> CliResult<EmbedConfig> {
        let schedule: SideSchedule = self
            .schedule
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown schedule {:?}; use right or alternate", self.schedule)))?;
        let policy = if self.auto_peak { PeakPolicy::AutoPeak } else { PeakPolicy::Literal };
        let cfg = EmbedConfig::new(parse_wavelet(&self.wavelet)?, self.levels)
            .with_schedule(schedule)
            .with_peak_policy(policy)
            .with_margin(self.margin)
            .with_max_passes(self.max_passes);
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

pub fn embed(input: &Path, payload: &Path, out: &Path, key: &Path, opts: &EmbedOptions) -> CliResult {
    let cfg = opts.config()?;
    let cover = load_image(input)?;
    let payload = BitStream::from_bytes(&read(payload)?);
    let (marked, side) = embed_payload(&cover, &payload, &cfg)?;
    let key_bytes = encode_key(&side)?;
    write(out, &write_pgm(&marked))?;
    write(key, &key_bytes)?;
    let report = quality_report(&cover, &marked, payload.len() as u64)?;
    println!("{},{:.4},{}", report.payload_bits, report.bpp, report.psnr);
    Ok(())
}

pub fn extract(input: &Path, key: &Path, out_payload: &Path, out_image: &Path) -> CliResult {
    let marked = load_image(input)?;
    let side = decode_key(&read(key)?)?;
    let (payload, restored) = extract_payload(&marked, &side)?;
    write(out_payload, &payload.to_bytes())?;
    write(out_image, &write_pgm(&restored))?;
    Ok(())
}

pub fn analyze(input: &Path, opts: &EmbedOptions) -> CliResult {
    let cfg = opts.config()?;
    let img = load_image(input)?;
    let sb = forward_iwt(&img, cfg.wavelet, cfg.levels)?;

    let mut out = String::from("subband,level,value,count\n");
    for id in sb.detail_ids() {
        let hist = build_histogram(sb.detail(id).expect("listed subband"));
        for (value, count) in hist.iter() {
            let _ = writeln!(out, "{},{},{value},{count}", id.kind, id.level);
        }
    }

    let report = capacity(&img, &cfg)?;
    out.push_str("\npass,subband,level,direction,peak,capacity_bits\n");
    for (i, pass) in report.passes.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            i + 1,
            pass.subband.kind,
            pass.subband.level,
            pass.direction,
            pass.peak,
            pass.capacity
        );
    }
    let _ = write!(out, "\ntotal_bits,bpp\n{},{:.4}\n", report.total_bits, report.bpp);
    print!("{out}");
    Ok(())
}

pub struct BenchArgs {
    pub corpus: PathBuf,
    pub wavelets: String,
    pub bpp_list: String,
    pub bits_list: String,
    pub out: PathBuf,
    pub points_out: Option<PathBuf>,
    pub seed: u64,
    pub opts: EmbedOptions,
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn load_corpus(dir: &Path) -> CliResult<Vec<(String, GrayImage)>> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?
            .path();
        let is_pgm = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
        if is_pgm && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no .pgm files in {}", dir.display())));
    }
    paths
        .into_iter()
        .map(|path| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let img = read_pgm(&read(&path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok((name, img))
        })
        .collect()
}

fn default_points_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}_points.csv"))
}

pub fn bench(args: &BenchArgs) -> CliResult {
    let config = args.opts.config()?;
    let wavelets = split_list(&args.wavelets).map(parse_wavelet).collect::<CliResult<Vec<_>>>()?;
    let mut targets = Vec::new();
    for t in split_list(&args.bpp_list) {
        let rate: f64 = t
            .parse()
            .ok()
            .filter(|r: &f64| r.is_finite() && *r >= 0.0)
            .ok_or_else(|| CliError::Usage(format!("bad bpp value {t:?}")))?;
        targets.push(PayloadTarget::Bpp(rate));
    }
    for t in split_list(&args.bits_list) {
        let bits = t.parse().map_err(|_| CliError::Usage(format!("bad bit count {t:?}")))?;
        targets.push(PayloadTarget::Bits(bits));
    }
    let corpus = load_corpus(&args.corpus)?;
    let spec = BenchSpec {
        wavelets,
        targets,
        config,
        seed: args.seed,
    };
    let rows = run_bench(&corpus, &spec)?;
    write(&args.out, bench_csv(&rows).as_bytes())?;
    let points = args.points_out.clone().unwrap_or_else(|| default_points_path(&args.out));
    write(&points, points_csv(&rows).as_bytes())?;
    Ok(())
}

pub fn coeffs(input: &Path, wavelet: &str, levels: usize, out: Option<&Path>) -> CliResult {
    let img = load_image(input)?;
    let sb = forward_iwt(&img, parse_wavelet(wavelet)?, levels)?;
    let mut csv = String::from("subband,level,row,col,value\n");
    let mut dump = |name: &str, level: usize, plane: &liftmark::CoeffPlane| {
        for row in 0..plane.height() {
            for col in 0..plane.width() {
                let _ = writeln!(csv, "{name},{level},{row},{col},{}", plane.get(col, row));
            }
        }
    };
    dump("LL", sb.levels(), &sb.ll);
    for id in sb.detail_ids() {
        dump(&id.kind.to_string(), id.level, sb.detail(id).expect("listed subband"));
    }
    match out {
        Some(path) => write(path, csv.as_bytes()),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
