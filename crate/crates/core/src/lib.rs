//! Polarization-adjusted convolutional (PAC) codes: encoding, successive
//! cancellation list decoding, and fast list decoding over constituent nodes.
//!
//! The crate is `no_std` and only needs `alloc`. Channel simulation, file
//! formats and the command-line front end live in the `pac-sim` crate.
//!
//! Bit vectors are plain `u8` slices holding `0` or `1`; LLRs are `f64` with
//! the convention that a positive value favours bit `0`.

#![no_std]

extern crate alloc;

pub mod code;
pub mod decoder;
pub mod error;
pub mod fast;
pub mod kernel;
pub mod latency;
pub mod list;

pub use code::{
    conv_bit_enc, conv_bit_inv_enc, conv_encode, pac_encode, polar_transform, rm_profile,
    CodeConfig, ImpulseResponse, RateProfile, ShiftRegister,
};
pub use decoder::{NodeStats, PacDecoder, RevEvent, SpcEvent, Trace};
pub use error::{Error, Result};
pub use fast::{classify, decode_fast_list, KindSet, NodeDescriptor, NodeKind, NodePlan, Variant};
pub use kernel::{Llr, PathMetric};
pub use latency::{node_time_steps, total_time_steps, DecoderStyle, KindSteps, TimeStepReport};
pub use list::{decode_list, forced_path_metric, prune, DecodeResult, Path, Survivor};
