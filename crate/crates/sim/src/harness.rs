//! Monte-Carlo frame-error-rate estimation.
//!
//! Every frame draws its data and its noise from two ChaCha streams keyed by
//! `(seed, frame index)`, so frame `t` is the same transmission whatever the
//! decoder variant, list size or worker count. Frames are decoded in blocks
//! on a thread pool and then scanned in index order; a point stops exactly at
//! the frame carrying the `min_errors`-th error, which makes the counts
//! independent of scheduling.

use std::ops::Range;
use std::time::Instant;

use pac_core::{pac_encode, CodeConfig, PacDecoder, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{add_noise, bpsk_modulate, channel_llr, ChannelSpec};
use crate::error::{Result, SimError};

pub const DEFAULT_MIN_ERRORS: u64 = 500;
pub const DEFAULT_MAX_FRAMES: u64 = 10_000_000;

const BLOCK: u64 = 2048;

/// Which random stream of a frame to open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Data,
    Noise,
}

/// The generator for one stream of frame `frame`.
pub fn frame_rng(seed: u64, frame: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lane = match stream {
        Stream::Data => 0,
        Stream::Noise => 1,
    };
    rng.set_stream(frame.wrapping_mul(2) | lane);
    rng
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub code: CodeConfig,
    pub list_size: usize,
    pub variant: Variant,
    pub ebn0_db: Vec<f64>,
    pub min_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(code: CodeConfig, list_size: usize, variant: Variant, ebn0_db: Vec<f64>) -> Self {
        Self {
            code,
            list_size,
            variant,
            ebn0_db,
            min_errors: DEFAULT_MIN_ERRORS,
            max_frames: DEFAULT_MAX_FRAMES,
            seed: 0,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.code.info_len() == 0 {
            return Err(SimError::param("information length must be positive"));
        }
        if self.list_size == 0 {
            return Err(SimError::param("list size must be positive"));
        }
        if self.min_errors == 0 {
            return Err(SimError::param("min-errors must be positive"));
        }
        if self.max_frames == 0 {
            return Err(SimError::param("max-frames must be positive"));
        }
        if self.workers == 0 {
            return Err(SimError::param("workers must be positive"));
        }
        if self.ebn0_db.is_empty() {
            return Err(SimError::param("no Eb/N0 points given"));
        }
        Ok(())
    }
}

/// Result of one Eb/N0 point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FerRecord {
    pub ebn0_db: f64,
    pub frames: u64,
    pub errors: u64,
    pub fer: f64,
    pub variant: String,
    pub n: usize,
    pub k: usize,
    pub list_size: usize,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

/// Data bits and channel LLRs of frame `frame`.
pub fn transmit(code: &CodeConfig, channel: &ChannelSpec, seed: u64, frame: u64) -> (Vec<u8>, Vec<f64>) {
    let mut data = frame_rng(seed, frame, Stream::Data);
    let d: Vec<u8> = (0..code.info_len()).map(|_| data.gen_range(0..=1)).collect();
    let x = pac_encode(&d, code).expect("data length matches the code");
    let sigma = channel.sigma();
    let y = add_noise(&bpsk_modulate(&x), sigma, &mut frame_rng(seed, frame, Stream::Noise));
    (d, channel_llr(&y, sigma))
}

/// Transmits frame `frame` and reports whether the decoder got it wrong.
pub fn frame_error(decoder: &mut PacDecoder, channel: &ChannelSpec, seed: u64, frame: u64) -> bool {
    let (d, llr) = transmit(decoder.code(), channel, seed, frame);
    let out = decoder.decode(&llr).expect("frame length matches the code");
    out.bits != d
}

/// Error indicators for a contiguous range of frames.
pub fn frame_errors(
    decoder: &PacDecoder,
    channel: &ChannelSpec,
    seed: u64,
    frames: Range<u64>,
) -> Vec<bool> {
    frames
        .into_par_iter()
        .map_init(|| decoder.clone(), |dec, t| frame_error(dec, channel, seed, t))
        .collect()
}

/// Runs every Eb/N0 point of `config` in order.
pub fn run_fer(config: &SimConfig) -> Result<Vec<FerRecord>> {
    config.validate()?;
    let decoder = PacDecoder::new(config.code.clone(), config.list_size, config.variant)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| SimError::param(format!("cannot start worker pool: {e}")))?;
    let rate = config.code.rate();
    config
        .ebn0_db
        .iter()
        .map(|&ebn0| {
            let channel = ChannelSpec::new(ebn0, rate)?;
            Ok(pool.install(|| run_point(config, &decoder, &channel)))
        })
        .collect()
}

fn run_point(config: &SimConfig, decoder: &PacDecoder, channel: &ChannelSpec) -> FerRecord {
    let start = Instant::now();
    let (mut frames, mut errors) = (0u64, 0u64);
    'blocks: while frames < config.max_frames {
        let end = (frames + BLOCK).min(config.max_frames);
        for failed in frame_errors(decoder, channel, config.seed, frames..end) {
            frames += 1;
            errors += u64::from(failed);
            if errors >= config.min_errors {
                break 'blocks;
            }
        }
    }
    FerRecord {
        ebn0_db: channel.ebn0_db(),
        frames,
        errors,
        fer: errors as f64 / frames as f64,
        variant: config.variant.name().to_owned(),
        n: config.code.len(),
        k: config.code.info_len(),
        list_size: config.list_size,
        seed: config.seed,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Expands `start:step:stop` (inclusive, tolerant of rounding) or a single
/// value into a list of points.
pub fn parse_ebn0_range(spec: &str) -> Result<Vec<f64>> {
    let bad = || SimError::param(format!("invalid Eb/N0 range `{spec}`, expected start:step:stop"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if parts.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    match parts[..] {
        [v] => Ok(vec![v]),
        [start, step, stop] => {
            if step <= 0.0 || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_ebn0_range("2.5").unwrap(), [2.5]);
        assert_eq!(parse_ebn0_range("1:0.5:3").unwrap(), [1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(parse_ebn0_range("0:0.1:0.3").unwrap().len(), 4);
        for bad in ["", "1:2", "1:0:2", "3:1:1", "a:1:2", "1:1:2:3", "nan"] {
            assert!(parse_ebn0_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = frame_rng(1, 0, Stream::Data);
        let mut b = frame_rng(1, 0, Stream::Noise);
        let mut c = frame_rng(1, 1, Stream::Data);
        let (x, y, z): (u64, u64, u64) = (a.gen(), b.gen(), c.gen());
        assert!(x != y && x != z && y != z);
        assert_eq!(frame_rng(1, 7, Stream::Data).gen::<u64>(), frame_rng(1, 7, Stream::Data).gen::<u64>());
    }

    #[test]
    fn rejects_bad_parameters() {
        let code = CodeConfig::rm(16, 8, &[1, 0, 1]).unwrap();
        let mut cfg = SimConfig::new(code, 2, Variant::List, vec![1.0]);
        cfg.min_errors = 0;
        assert!(matches!(run_fer(&cfg), Err(SimError::Parameter(_))));
        cfg.min_errors = 1;
        cfg.list_size = 0;
        assert!(run_fer(&cfg).is_err());
        cfg.list_size = 2;
        cfg.ebn0_db = vec![];
        assert!(run_fer(&cfg).is_err());
    }

    #[test]
    fn stops_at_target_errors() {
        let code = CodeConfig::rm(16, 8, &[1, 0, 1]).unwrap();
        let mut cfg = SimConfig::new(code, 2, Variant::Fast3, vec![-2.0]);
        cfg.min_errors = 37;
        cfg.workers = 2;
        let r = &run_fer(&cfg).unwrap()[0];
        assert_eq!(r.errors, 37);
        assert!(r.frames >= 37);

        cfg.ebn0_db = vec![20.0];
        cfg.max_frames = 300;
        let r = &run_fer(&cfg).unwrap()[0];
        assert_eq!((r.frames, r.errors, r.fer), (300, 0, 0.0));
    }
}
