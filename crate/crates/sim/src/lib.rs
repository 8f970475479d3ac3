//! Simulation harness, file formats and command line for PAC codes.

pub mod channel;
pub mod cli;
pub mod error;
pub mod harness;
pub mod profile_file;
pub mod report;

pub use channel::{add_noise, awgn_channel, bpsk_modulate, channel_llr, ChannelSpec};
pub use error::{Result, SimError};
pub use harness::{frame_error, frame_errors, frame_rng, parse_ebn0_range, run_fer, transmit, FerRecord, SimConfig, Stream};
pub use profile_file::{format_profile, parse_profile, read_profile, write_profile};
pub use report::{latency_json, latency_table, write_csv, write_json};
