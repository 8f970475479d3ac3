//! Time-step accounting under the unit-cost model: one `f` pass, one `g`
//! pass, or one path split each take a step, with unlimited parallelism and
//! free polar/convolutional re-encoding.

use alloc::vec::Vec;

use crate::code::RateProfile;
use crate::error::{Error, Result};
use crate::fast::{classify, NodeKind, Variant};

/// Whether a constituent node is decoded by tree traversal or by its fast
/// node decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderStyle {
    List,
    Fast,
}

/// Steps needed to decode one constituent node of width `width`.
pub fn node_time_steps(
    kind: NodeKind,
    width: usize,
    list_size: usize,
    style: DecoderStyle,
) -> Result<usize> {
    if !width.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(width));
    }
    if list_size == 0 {
        return Err(Error::ZeroListSize);
    }
    let w = width;
    let steps = match (style, kind) {
        (_, NodeKind::General) => return Err(Error::UnsupportedKind),
        (DecoderStyle::List, NodeKind::Rate0) => 2 * w - 2,
        (DecoderStyle::List, NodeKind::Rate1) => 3 * w - 2,
        (DecoderStyle::List, NodeKind::Rev) => 2 * w - 1,
        (DecoderStyle::List, NodeKind::Spc) => 3 * w - 3,
        (DecoderStyle::Fast, NodeKind::Rate0) => 1,
        (DecoderStyle::Fast, NodeKind::Rate1) => (list_size - 1).min(w),
        (DecoderStyle::Fast, NodeKind::Rev) => 2,
        (DecoderStyle::Fast, NodeKind::Spc) => list_size.min(w) + 1,
    };
    Ok(steps)
}

/// Number of nodes of one kind and the steps they take together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindSteps {
    pub kind: NodeKind,
    pub nodes: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeStepReport {
    pub variant: Variant,
    pub n: usize,
    pub k: usize,
    pub list_size: usize,
    /// `f` and `g` passes above the constituent and leaf nodes.
    pub traversal: usize,
    /// Splits at information leaves that are not part of a constituent node.
    pub splits: usize,
    /// Rate-0, Rate-1, Rev and SPC subtotals, in that order.
    pub per_kind: Vec<KindSteps>,
    pub total: usize,
}

/// Decoding latency of one code for the given variant and list size.
pub fn total_time_steps(
    profile: &RateProfile,
    list_size: usize,
    variant: Variant,
) -> Result<TimeStepReport> {
    if list_size == 0 {
        return Err(Error::ZeroListSize);
    }
    let plan = classify(profile, variant.kinds());
    let traversal = 2 * plan.internal_nodes();
    let mut splits = 0;
    let mut per_kind: Vec<KindSteps> = [NodeKind::Rate0, NodeKind::Rate1, NodeKind::Rev, NodeKind::Spc]
        .into_iter()
        .map(|kind| KindSteps {
            kind,
            nodes: 0,
            steps: 0,
        })
        .collect();
    for node in plan.nodes() {
        match node.kind {
            NodeKind::General => {
                if !profile.is_frozen(node.start) {
                    splits += 1;
                }
            }
            kind => {
                let entry = &mut per_kind[kind.index()];
                entry.nodes += 1;
                entry.steps += node_time_steps(kind, node.width, list_size, DecoderStyle::Fast)?;
            }
        }
    }
    let total = traversal + splits + per_kind.iter().map(|k| k.steps).sum::<usize>();
    Ok(TimeStepReport {
        variant,
        n: profile.len(),
        k: profile.info_len(),
        list_size,
        traversal,
        splits,
        per_kind,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::rm_profile;

    #[test]
    fn node_table_entries() {
        use DecoderStyle::*;
        assert_eq!(node_time_steps(NodeKind::Rate0, 8, 4, List), Ok(14));
        assert_eq!(node_time_steps(NodeKind::Rate0, 8, 4, Fast), Ok(1));
        assert_eq!(node_time_steps(NodeKind::Spc, 4, 64, Fast), Ok(5));
        assert_eq!(node_time_steps(NodeKind::Rate1, 4, 8, Fast), Ok(4));
        assert_eq!(node_time_steps(NodeKind::Rate1, 8, 4, List), Ok(22));
        assert_eq!(node_time_steps(NodeKind::Spc, 8, 4, List), Ok(21));
        for w in [2, 4, 8, 16, 32] {
            assert_eq!(node_time_steps(NodeKind::Rev, w, 16, Fast), Ok(2));
            assert_eq!(node_time_steps(NodeKind::Rev, w, 16, List), Ok(2 * w - 1));
        }
        assert_eq!(
            node_time_steps(NodeKind::General, 1, 4, Fast),
            Err(Error::UnsupportedKind)
        );
        assert_eq!(node_time_steps(NodeKind::Rate0, 6, 4, Fast), Err(Error::NotPowerOfTwo(6)));
    }

    #[test]
    fn list_baseline() {
        for (n, k) in [(128, 32), (128, 64), (256, 128), (16, 0), (16, 16)] {
            let r = total_time_steps(&rm_profile(n, k).unwrap(), 4, Variant::List).unwrap();
            assert_eq!(r.total, 2 * n - 2 + k);
            assert_eq!(r.traversal, 2 * n - 2);
            assert_eq!(r.splits, k);
        }
    }

    #[test]
    fn report_totals_add_up() {
        let p = rm_profile(128, 64).unwrap();
        let r = total_time_steps(&p, 4, Variant::Fast4).unwrap();
        let nodes: usize = r.per_kind.iter().map(|k| k.steps).sum();
        assert_eq!(r.total, r.traversal + r.splits + nodes);
        assert_eq!(r.total, 108);
    }
}
