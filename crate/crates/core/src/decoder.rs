//! Successive-cancellation list traversal shared by the list and fast
//! decoders. The traversal descends the binary tree until it reaches a node
//! of the [`NodePlan`], where it dispatches to the matching node decoder.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{CodeConfig, ShiftRegister};
use crate::error::{Error, Result};
use crate::fast::{
    classify, decode_rate0, decode_rate1, decode_rev, decode_spc, KindSet, NodeDescriptor,
    NodeKind, NodePlan, Variant,
};
use crate::kernel::Llr;
use crate::list::{split_and_prune, DecodeResult, Path, Survivor};

/// Per-kind invocation and prune counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NodeStats {
    invocations: [u64; 5],
    prunes: [u64; 5],
}

impl NodeStats {
    pub fn invocations(&self, kind: NodeKind) -> u64 {
        self.invocations[kind.index()]
    }

    pub fn prunes(&self, kind: NodeKind) -> u64 {
        self.prunes[kind.index()]
    }
}

/// Partial sums of both branches at one Rev-node split, with enough context
/// to recompute them independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevEvent {
    pub width: usize,
    /// Register state before the last (information) bit.
    pub register: ShiftRegister,
    /// Convolution outputs of the frozen prefix.
    pub u_prefix: Vec<u8>,
    pub beta0: Vec<u8>,
    pub beta1: Vec<u8>,
}

/// Final partial sums of one SPC-node survivor and the convolution output
/// of its frozen first bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpcEvent {
    pub width: usize,
    pub u0: u8,
    pub beta: Vec<u8>,
}

/// One node-decoder invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRecord {
    pub kind: NodeKind,
    pub width: usize,
    pub prunes: usize,
}

/// Instrumentation collected across decode calls. Counters are always kept;
/// per-invocation records are only kept when enabled.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub stats: NodeStats,
    record: bool,
    pub nodes: Vec<NodeRecord>,
    pub rev_events: Vec<RevEvent>,
    pub spc_events: Vec<SpcEvent>,
}

impl Trace {
    pub fn recording() -> Self {
        Self {
            record: true,
            ..Self::default()
        }
    }

    pub fn records_events(&self) -> bool {
        self.record
    }

    pub(crate) fn record_node(&mut self, node: &NodeDescriptor, prunes: usize) {
        let k = node.kind.index();
        self.stats.invocations[k] += 1;
        self.stats.prunes[k] += prunes as u64;
        if self.record {
            self.nodes.push(NodeRecord {
                kind: node.kind,
                width: node.width,
                prunes,
            });
        }
    }

    pub fn clear(&mut self) {
        *self = Self {
            record: self.record,
            ..Self::default()
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Action {
    Descend,
    Stop(usize),
}

/// Reusable decoder for one code, list size and set of node kinds.
///
/// One decode runs at a time per instance; instances are `Send` and can be
/// moved to worker threads.
#[derive(Debug, Clone)]
pub struct PacDecoder {
    code: CodeConfig,
    list_size: usize,
    plan: NodePlan,
    actions: Vec<Action>,
    trace: Trace,
}

impl PacDecoder {
    pub fn new(code: CodeConfig, list_size: usize, variant: Variant) -> Result<Self> {
        Self::with_kinds(code, list_size, variant.kinds())
    }

    pub fn with_kinds(code: CodeConfig, list_size: usize, enabled: KindSet) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::ZeroListSize);
        }
        let plan = classify(code.profile(), enabled);
        let mut actions = vec![Action::Descend; 2 * code.len()];
        for (i, node) in plan.nodes().iter().enumerate() {
            actions[node.heap_index()] = Action::Stop(i);
        }
        Ok(Self {
            code,
            list_size,
            plan,
            actions,
            trace: Trace::default(),
        })
    }

    /// Keeps per-invocation records and Rev/SPC events in the trace.
    pub fn record_events(mut self, on: bool) -> Self {
        self.trace.record = on;
        self
    }

    pub fn code(&self) -> &CodeConfig {
        &self.code
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn plan(&self) -> &NodePlan {
        &self.plan
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn trace_mut(&mut self) -> &mut Trace {
        &mut self.trace
    }

    /// Decodes one frame of channel LLRs.
    pub fn decode(&mut self, llr: &[Llr]) -> Result<DecodeResult> {
        let n = self.code.len();
        if llr.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: llr.len(),
            });
        }
        let mut paths = vec![Path::new(llr, self.code.memory())];
        self.visit(&mut paths, 1, n);

        let winner = paths
            .iter()
            .enumerate()
            .min_by(|(i, a), (j, b)| a.pm.total_cmp(&b.pm).then(i.cmp(j)))
            .map(|(_, p)| p)
            .expect("list is never empty");
        Ok(DecodeResult {
            bits: self.code.profile().extract(&winner.v_hat),
            pm: winner.pm,
            survivors: paths.iter().map(Survivor::from_path).collect(),
        })
    }

    fn visit(&mut self, paths: &mut Vec<Path>, heap: usize, width: usize) {
        if let Action::Stop(i) = self.actions[heap] {
            let node = self.plan.nodes()[i];
            self.dispatch(paths, &node);
            return;
        }
        for p in paths.iter_mut() {
            p.f_step(width);
        }
        self.visit(paths, 2 * heap, width / 2);
        for p in paths.iter_mut() {
            p.g_step(width);
        }
        self.visit(paths, 2 * heap + 1, width / 2);
        for p in paths.iter_mut() {
            p.combine_step(width);
        }
    }

    fn dispatch(&mut self, paths: &mut Vec<Path>, node: &NodeDescriptor) {
        let (code, l, trace) = (&self.code, self.list_size, &mut self.trace);
        match node.kind {
            NodeKind::Rate0 => decode_rate0(paths, node, code, trace),
            NodeKind::Rate1 => decode_rate1(paths, node, code, l, trace),
            NodeKind::Rev => decode_rev(paths, node, code, l, trace),
            NodeKind::Spc => decode_spc(paths, node, code, l, trace),
            NodeKind::General => {
                let index = node.start;
                let conv = code.conv();
                if code.profile().is_frozen(index) {
                    for p in paths.iter_mut() {
                        p.decide_leaf(index, 0, conv);
                    }
                    trace.record_node(node, 0);
                } else {
                    let mut aux = vec![(); paths.len()];
                    split_and_prune(
                        paths,
                        &mut aux,
                        l,
                        |p, _, bit| p.leaf_metric(bit, conv),
                        |p, _, bit| p.decide_leaf(index, bit, conv),
                    );
                    trace.record_node(node, 1);
                }
            }
        }
    }
}
