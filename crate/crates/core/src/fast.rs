//! Constituent-node decomposition of a rate profile and the fast node
//! decoders for Rate-0, Rate-1, Rev and SPC nodes.
//!
//! A node is classified on its message bits `v` (not on `u`), because the
//! convolution makes the `u` values at frozen positions path dependent:
//!
//! | kind   | message pattern                  |
//! |--------|----------------------------------|
//! | Rate-0 | all frozen                       |
//! | Rate-1 | all information                  |
//! | Rev    | all frozen except the last bit   |
//! | SPC    | only the first bit frozen        |
//!
//! Rate-0, Rate-1 and Rev decoding reproduce bit-by-bit list decoding
//! exactly. SPC decoding restricts the number of path splits and is an
//! approximation.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::code::{conv_bit_enc, conv_bit_inv_enc, polar_transform_in_place, CodeConfig, RateProfile};
use crate::decoder::{PacDecoder, RevEvent, SpcEvent, Trace};
use crate::error::{Error, Result};
use crate::kernel::{bit_penalty, calc_pm, hard_bit, Llr, PathMetric};
use crate::list::{split_and_prune, DecodeResult, Path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Rate0,
    Rate1,
    Rev,
    Spc,
    /// A single leaf decoded bit by bit.
    General,
}

impl NodeKind {
    pub const ALL: [NodeKind; 5] = [
        NodeKind::Rate0,
        NodeKind::Rate1,
        NodeKind::Rev,
        NodeKind::Spc,
        NodeKind::General,
    ];

    pub(crate) fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Rate0 => "rate0",
            NodeKind::Rate1 => "rate1",
            NodeKind::Rev => "rev",
            NodeKind::Spc => "spc",
            NodeKind::General => "general",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of constituent kinds a decoder may stop at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KindSet(u8);

impl KindSet {
    pub const EMPTY: KindSet = KindSet(0);
    /// Rate-0, Rate-1 and Rev: the exact fast decoder.
    pub const FAST_THREE: KindSet = KindSet(0b0111);
    /// All four kinds.
    pub const FAST_FOUR: KindSet = KindSet(0b1111);

    pub fn with(self, kind: NodeKind) -> Self {
        match kind {
            NodeKind::General => self,
            k => KindSet(self.0 | (1 << k.index())),
        }
    }

    pub fn contains(self, kind: NodeKind) -> bool {
        kind != NodeKind::General && self.0 & (1 << kind.index()) != 0
    }
}

impl FromIterator<NodeKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = NodeKind>>(iter: I) -> Self {
        iter.into_iter().fold(KindSet::EMPTY, KindSet::with)
    }
}

/// Decoder variant: plain list decoding or a fast decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    List,
    Fast3,
    Fast4,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::List, Variant::Fast3, Variant::Fast4];

    pub fn kinds(self) -> KindSet {
        match self {
            Variant::List => KindSet::EMPTY,
            Variant::Fast3 => KindSet::FAST_THREE,
            Variant::Fast4 => KindSet::FAST_FOUR,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::List => "list",
            Variant::Fast3 => "fast3",
            Variant::Fast4 => "fast4",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "list" => Ok(Variant::List),
            "fast3" => Ok(Variant::Fast3),
            "fast4" => Ok(Variant::Fast4),
            _ => Err(Error::UnknownVariant),
        }
    }
}

/// One node of the decomposition: the subtree of width `width` at `depth`
/// covering leaves `start..start + width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeDescriptor {
    pub depth: u32,
    pub width: usize,
    pub start: usize,
    pub kind: NodeKind,
}

impl NodeDescriptor {
    pub fn range(&self) -> core::ops::Range<usize> {
        self.start..self.start + self.width
    }

    /// Position in a 1-based heap numbering of the binary tree.
    pub(crate) fn heap_index(&self) -> usize {
        (1usize << self.depth) + self.start / self.width
    }
}

/// Result of [`classify`]: the nodes at which the traversal stops, in
/// decoding order. Their leaf ranges partition `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePlan {
    len: usize,
    enabled: KindSet,
    nodes: Vec<NodeDescriptor>,
    internal: usize,
}

impl NodePlan {
    pub fn nodes(&self) -> &[NodeDescriptor] {
        &self.nodes
    }

    pub fn enabled(&self) -> KindSet {
        self.enabled
    }

    /// Code length covered by the plan.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Tree nodes above the plan nodes, each costing one `f` and one `g` pass.
    pub fn internal_nodes(&self) -> usize {
        self.internal
    }

    /// Number of plan nodes of the given kind.
    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }
}

/// Greedy top-down decomposition. At each node the first enabled kind that
/// matches is taken, in priority order Rate-0, Rate-1, Rev, SPC; otherwise
/// the traversal descends. Leaves left unmatched become `General` nodes.
/// Constituent kinds are only formed for widths of two or more.
pub fn classify(profile: &RateProfile, enabled: KindSet) -> NodePlan {
    let mut plan = NodePlan {
        len: profile.len(),
        enabled,
        nodes: Vec::new(),
        internal: 0,
    };
    classify_node(profile.frozen_mask(), 0, 0, enabled, &mut plan);
    plan
}

fn classify_node(frozen: &[bool], depth: u32, start: usize, enabled: KindSet, plan: &mut NodePlan) {
    let width = plan.len >> depth;
    let mask = &frozen[start..start + width];
    let emit = |kind| NodeDescriptor {
        depth,
        width,
        start,
        kind,
    };
    if width == 1 {
        plan.nodes.push(emit(NodeKind::General));
        return;
    }
    let (head, last) = mask.split_at(width - 1);
    let (first, tail) = mask.split_at(1);
    let kind = if mask.iter().all(|&f| f) {
        Some(NodeKind::Rate0)
    } else if mask.iter().all(|&f| !f) {
        Some(NodeKind::Rate1)
    } else if head.iter().all(|&f| f) && !last[0] && enabled.contains(NodeKind::Rev) {
        Some(NodeKind::Rev)
    } else if first[0] && tail.iter().all(|&f| !f) && enabled.contains(NodeKind::Spc) {
        Some(NodeKind::Spc)
    } else {
        None
    };
    match kind {
        Some(k) if enabled.contains(k) => plan.nodes.push(emit(k)),
        _ => {
            plan.internal += 1;
            classify_node(frozen, depth + 1, start, enabled, plan);
            classify_node(frozen, depth + 1, start + width / 2, enabled, plan);
        }
    }
}

/// Rate-0 node: every message bit is 0, so each path is simply re-encoded and
/// charged once over the node. No split.
pub fn decode_rate0(paths: &mut [Path], node: &NodeDescriptor, code: &CodeConfig, trace: &mut Trace) {
    let w = node.width;
    for p in paths.iter_mut() {
        for i in node.range() {
            let (u, next) = conv_bit_enc(0, p.register, code.conv());
            p.v_hat[i] = 0;
            p.u_hat[i] = u;
            p.register = next;
        }
        let mut beta = p.u_hat[node.range()].to_vec();
        polar_transform_in_place(&mut beta);
        p.pm = calc_pm(p.pm, p.alpha(w), &beta);
        p.beta_mut(w).copy_from_slice(&beta);
    }
    trace.record_node(node, 0);
}

/// Rate-1 node: hard decisions, then `min(L-1, N_o)` splits on the least
/// reliable positions of each path, each followed by a prune.
pub fn decode_rate1(
    paths: &mut Vec<Path>,
    node: &NodeDescriptor,
    code: &CodeConfig,
    list_size: usize,
    trace: &mut Trace,
) {
    let w = node.width;
    let mut orders: Vec<Vec<usize>> = paths
        .iter_mut()
        .map(|p| {
            let (alpha, beta) = p.alpha_beta_mut(w);
            for (b, &a) in beta.iter_mut().zip(alpha) {
                *b = hard_bit(a);
            }
            reliability_order(alpha)
        })
        .collect();
    let splits = (list_size - 1).min(w);
    for step in 0..splits {
        split_and_prune(
            paths,
            &mut orders,
            list_size,
            |p, order, bit| p.pm + bit_penalty(p.alpha(w)[order[step]], bit),
            |p, order, bit| p.beta_mut(w)[order[step]] = bit,
        );
    }
    for p in paths.iter_mut() {
        finish_from_beta(p, node, code);
    }
    trace.record_node(node, splits);
}

#[derive(Clone)]
struct RevBranches {
    beta0: Vec<u8>,
    beta1: Vec<u8>,
}

/// Rev node: the frozen prefix is re-encoded, then one split on the last
/// message bit. The two candidate partial-sum vectors are complements.
pub fn decode_rev(
    paths: &mut Vec<Path>,
    node: &NodeDescriptor,
    code: &CodeConfig,
    list_size: usize,
    trace: &mut Trace,
) {
    let w = node.width;
    let last = node.start + w - 1;
    let mut branches: Vec<RevBranches> = paths
        .iter_mut()
        .map(|p| {
            for i in node.start..last {
                let (u, next) = conv_bit_enc(0, p.register, code.conv());
                p.v_hat[i] = 0;
                p.u_hat[i] = u;
                p.register = next;
            }
            let (u_last, _) = conv_bit_enc(0, p.register, code.conv());
            let mut beta0 = p.u_hat[node.range()].to_vec();
            beta0[w - 1] = u_last;
            polar_transform_in_place(&mut beta0);
            let beta1: Vec<u8> = beta0.iter().map(|b| b ^ 1).collect();
            RevBranches { beta0, beta1 }
        })
        .collect();
    if trace.records_events() {
        for (p, b) in paths.iter().zip(&branches) {
            trace.rev_events.push(RevEvent {
                width: w,
                register: p.register,
                u_prefix: p.u_hat[node.start..last].to_vec(),
                beta0: b.beta0.clone(),
                beta1: b.beta1.clone(),
            });
        }
    }
    split_and_prune(
        paths,
        &mut branches,
        list_size,
        |p, b, bit| calc_pm(p.pm, p.alpha(w), if bit == 0 { &b.beta0 } else { &b.beta1 }),
        |p, b, bit| {
            let (u, next) = conv_bit_enc(bit, p.register, code.conv());
            p.v_hat[last] = bit;
            p.u_hat[last] = u;
            p.register = next;
            p.beta_mut(w)
                .copy_from_slice(if bit == 0 { &b.beta0 } else { &b.beta1 });
        },
    );
    trace.record_node(node, 1);
}

#[derive(Clone)]
struct SpcState {
    order: Vec<usize>,
    u0: u8,
    gamma: u8,
    least: Llr,
}

/// SPC node: hard decisions, parity repair on the least reliable bit, and
/// `min(L-1, N_o-1)` splits on the next least reliable positions. The split
/// budget makes this an approximation of list decoding.
pub fn decode_spc(
    paths: &mut Vec<Path>,
    node: &NodeDescriptor,
    code: &CodeConfig,
    list_size: usize,
    trace: &mut Trace,
) {
    let w = node.width;
    let mut states: Vec<SpcState> = paths
        .iter_mut()
        .map(|p| {
            let (u0, _) = conv_bit_enc(0, p.register, code.conv());
            let (alpha, beta) = p.alpha_beta_mut(w);
            let mut parity = u0;
            for (b, &a) in beta.iter_mut().zip(alpha) {
                *b = hard_bit(a);
                parity ^= *b;
            }
            let order = reliability_order(alpha);
            let least = alpha[order[0]].abs();
            if parity == 1 {
                p.pm += least;
            }
            SpcState {
                order,
                u0,
                gamma: parity,
                least,
            }
        })
        .collect();
    let splits = (list_size - 1).min(w - 1);
    for step in 1..=splits {
        split_and_prune(
            paths,
            &mut states,
            list_size,
            |p, s, bit| spc_split_metric(p.pm, p.alpha(w)[s.order[step]], bit, s),
            |p, s, bit| {
                let j = s.order[step];
                p.beta_mut(w)[j] = bit;
                if bit != hard_bit(p.alpha(w)[j]) {
                    s.gamma ^= 1;
                }
            },
        );
    }
    for (p, s) in paths.iter_mut().zip(&states) {
        let beta = p.beta_mut(w);
        let least = s.order[0];
        let rest = beta
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != least)
            .fold(s.u0, |acc, (_, &b)| acc ^ b);
        beta[least] = rest;
        if trace.records_events() {
            trace.spc_events.push(SpcEvent {
                width: w,
                u0: s.u0,
                beta: beta.to_vec(),
            });
        }
        finish_from_beta(p, node, code);
        debug_assert_eq!(p.v_hat[node.start], 0);
    }
    trace.record_node(node, splits);
}

fn spc_split_metric(pm: PathMetric, alpha: Llr, bit: u8, s: &SpcState) -> PathMetric {
    crate::kernel::calc_pm2(pm, &[alpha], &[bit], s.gamma, s.least)
}

/// Positions sorted by ascending `|alpha|`, ties by index.
fn reliability_order(alpha: &[Llr]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..alpha.len()).collect();
    order.sort_by(|&a, &b| alpha[a].abs().total_cmp(&alpha[b].abs()));
    order
}

/// Recovers `u` by the (self-inverse) polar transform of the node's partial
/// sums and `v` by inverse convolution from the node-entry register.
fn finish_from_beta(p: &mut Path, node: &NodeDescriptor, code: &CodeConfig) {
    let range = node.range();
    let beta = p.beta(node.width).to_vec();
    let u = &mut p.u_hat[range.clone()];
    u.copy_from_slice(&beta);
    polar_transform_in_place(u);
    let mut s = p.register;
    for i in range {
        let (v, next) = conv_bit_inv_enc(p.u_hat[i], s, code.conv());
        p.v_hat[i] = v;
        s = next;
    }
    p.register = s;
}

/// Fast list decoding that stops at the constituent nodes in `enabled`.
/// With [`KindSet::FAST_THREE`] the result equals [`crate::decode_list`].
pub fn decode_fast_list(
    llr: &[Llr],
    config: &CodeConfig,
    list_size: usize,
    enabled: KindSet,
) -> Result<DecodeResult> {
    PacDecoder::with_kinds(config.clone(), list_size, enabled)?.decode(llr)
}
