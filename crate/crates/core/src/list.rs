//! Baseline list decoding: full binary-tree traversal with a path split on
//! every information leaf and pruning to the `L` smallest path metrics.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{check_bits, conv_bit_enc, CodeConfig, ImpulseResponse, ShiftRegister};
use crate::decoder::PacDecoder;
use crate::error::{Error, Result};
use crate::fast::Variant;
use crate::kernel::{bit_penalty, f_op, g_op, Llr, PathMetric};

/// One list-decoding hypothesis.
///
/// LLR and partial-sum memories use a heap layout: the node of width `w`
/// on the current root-to-leaf branch owns `[w, 2w)`, so the channel LLRs sit
/// in `[N, 2N)` and the leaf in `[1, 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub(crate) pm: PathMetric,
    pub(crate) register: ShiftRegister,
    pub(crate) v_hat: Vec<u8>,
    pub(crate) u_hat: Vec<u8>,
    alpha: Vec<Llr>,
    beta: Vec<u8>,
}

impl Path {
    /// Fresh root path fed with channel LLRs and a zero register of length `memory`.
    pub fn new(llr: &[Llr], memory: usize) -> Self {
        let n = llr.len();
        assert!(n.is_power_of_two(), "LLR length must be a power of two");
        let mut alpha = vec![0.0; 2 * n];
        alpha[n..].copy_from_slice(llr);
        Self {
            pm: 0.0,
            register: ShiftRegister::zero(memory),
            v_hat: vec![0; n],
            u_hat: vec![0; n],
            alpha,
            beta: vec![0; 2 * n],
        }
    }

    pub fn pm(&self) -> PathMetric {
        self.pm
    }

    pub fn set_pm(&mut self, pm: PathMetric) {
        self.pm = pm;
    }

    pub fn register(&self) -> ShiftRegister {
        self.register
    }

    pub fn set_register(&mut self, register: ShiftRegister) {
        self.register = register;
    }

    /// Decided message bits (positions not yet reached read as 0).
    pub fn v_hat(&self) -> &[u8] {
        &self.v_hat
    }

    /// Convolution outputs matching [`Path::v_hat`].
    pub fn u_hat(&self) -> &[u8] {
        &self.u_hat
    }

    /// LLRs at the top of the current node of the given width.
    pub fn alpha(&self, width: usize) -> &[Llr] {
        &self.alpha[width..2 * width]
    }

    pub fn alpha_mut(&mut self, width: usize) -> &mut [Llr] {
        &mut self.alpha[width..2 * width]
    }

    /// Partial sums produced by the last node decoded at this width.
    pub fn beta(&self, width: usize) -> &[u8] {
        &self.beta[width..2 * width]
    }

    pub(crate) fn beta_mut(&mut self, width: usize) -> &mut [u8] {
        &mut self.beta[width..2 * width]
    }

    pub(crate) fn alpha_beta_mut(&mut self, width: usize) -> (&[Llr], &mut [u8]) {
        (
            &self.alpha[width..2 * width],
            &mut self.beta[width..2 * width],
        )
    }

    /// Left-child LLRs of a node of width `width`.
    pub(crate) fn f_step(&mut self, width: usize) {
        let half = width / 2;
        let (lower, upper) = self.alpha.split_at_mut(width);
        let (a, b) = upper[..width].split_at(half);
        for ((out, &x), &y) in lower[half..].iter_mut().zip(a).zip(b) {
            *out = f_op(x, y);
        }
    }

    /// Saves the left child's partial sums and computes right-child LLRs.
    pub(crate) fn g_step(&mut self, width: usize) {
        let half = width / 2;
        self.beta.copy_within(half..width, width);
        let (lower, upper) = self.alpha.split_at_mut(width);
        let (a, b) = upper[..width].split_at(half);
        let left = &self.beta[width..width + half];
        for (((out, &x), &y), &bl) in lower[half..].iter_mut().zip(a).zip(b).zip(left) {
            *out = g_op(x, y, bl);
        }
    }

    /// Merges the right child's partial sums into this node's.
    pub(crate) fn combine_step(&mut self, width: usize) {
        let half = width / 2;
        let (lower, upper) = self.beta.split_at_mut(width);
        let right = &lower[half..width];
        let (first, second) = upper[..width].split_at_mut(half);
        for ((l, r_out), &r) in first.iter_mut().zip(second.iter_mut()).zip(right) {
            *l ^= r;
            *r_out = r;
        }
    }

    /// Decides message bit `index` as `v`: convolves it, charges the leaf
    /// penalty and stores the partial sum.
    pub(crate) fn decide_leaf(&mut self, index: usize, v: u8, conv: &ImpulseResponse) {
        let (u, next) = conv_bit_enc(v, self.register, conv);
        self.pm += bit_penalty(self.alpha[1], u);
        self.beta[1] = u;
        self.v_hat[index] = v;
        self.u_hat[index] = u;
        self.register = next;
    }

    pub(crate) fn leaf_metric(&self, v: u8, conv: &ImpulseResponse) -> PathMetric {
        let (u, _) = conv_bit_enc(v, self.register, conv);
        self.pm + bit_penalty(self.alpha[1], u)
    }
}

/// A finished decoding hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct Survivor {
    pub pm: PathMetric,
    /// Message vector `v`.
    pub v: Vec<u8>,
    /// Convolution output `u`.
    pub u: Vec<u8>,
    /// Re-encoded codeword (partial sums at the root).
    pub x: Vec<u8>,
    /// Register state after the last bit.
    pub register: ShiftRegister,
}

/// Outcome of one decode call.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// Information bits of the winning path.
    pub bits: Vec<u8>,
    /// Metric of the winning path.
    pub pm: PathMetric,
    /// Final list in list order.
    pub survivors: Vec<Survivor>,
}

impl Survivor {
    pub(crate) fn from_path(path: &Path) -> Self {
        let n = path.v_hat.len();
        Self {
            pm: path.pm,
            v: path.v_hat.clone(),
            u: path.u_hat.clone(),
            x: path.beta(n).to_vec(),
            register: path.register,
        }
    }
}

/// Keeps the `list_size` items of smallest metric. The sort is stable, so
/// among equal metrics the earlier item wins.
pub fn prune<T>(mut items: Vec<T>, list_size: usize, metric: impl Fn(&T) -> PathMetric) -> Vec<T> {
    items.sort_by(|a, b| metric(a).total_cmp(&metric(b)));
    items.truncate(list_size);
    items
}

#[derive(Clone, Copy)]
struct Candidate {
    parent: usize,
    bit: u8,
    pm: PathMetric,
}

/// Duplicates every path for a decision bit `0`/`1` and keeps the best
/// `list_size` candidates. Candidate order is all `0`-branches in list order,
/// then all `1`-branches; survivors are stored in ascending-metric order.
/// `aux` carries per-path scratch state that follows its path.
pub(crate) fn split_and_prune<A: Clone>(
    paths: &mut Vec<Path>,
    aux: &mut Vec<A>,
    list_size: usize,
    metric: impl Fn(&Path, &A, u8) -> PathMetric,
    mut apply: impl FnMut(&mut Path, &mut A, u8),
) {
    debug_assert_eq!(paths.len(), aux.len());
    let count = paths.len();
    let mut candidates = Vec::with_capacity(2 * count);
    for bit in 0..2u8 {
        for (parent, (p, a)) in paths.iter().zip(aux.iter()).enumerate() {
            candidates.push(Candidate {
                parent,
                bit,
                pm: metric(p, a, bit),
            });
        }
    }
    let survivors = prune(candidates, list_size, |c| c.pm);

    let mut uses = vec![0usize; count];
    for c in &survivors {
        uses[c.parent] += 1;
    }
    let mut slots: Vec<Option<(Path, A)>> = paths.drain(..).zip(aux.drain(..)).map(Some).collect();
    for c in &survivors {
        uses[c.parent] -= 1;
        let (mut p, mut a) = if uses[c.parent] == 0 {
            slots[c.parent].take().expect("parent consumed once")
        } else {
            slots[c.parent].clone().expect("parent still present")
        };
        apply(&mut p, &mut a, c.bit);
        p.pm = c.pm;
        paths.push(p);
        aux.push(a);
    }
}

/// List decoding of a PAC code with list size `list_size`. `list_size = 1`
/// is plain SC decoding.
pub fn decode_list(llr: &[Llr], config: &CodeConfig, list_size: usize) -> Result<DecodeResult> {
    PacDecoder::new(config.clone(), list_size, Variant::List)?.decode(llr)
}

/// Metric of one fully specified message hypothesis `v`: the SC recursion with
/// every leaf forced to `v`, accumulating the leaf penalties.
pub fn forced_path_metric(llr: &[Llr], v: &[u8], config: &CodeConfig) -> Result<PathMetric> {
    let n = config.len();
    for (len, expected) in [(llr.len(), n), (v.len(), n)] {
        if len != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: len,
            });
        }
    }
    check_bits(v)?;
    if let Some(index) = (0..n).find(|&i| config.profile().is_frozen(i) && v[i] != 0) {
        return Err(Error::FrozenViolation { index });
    }
    let mut state = ForcedState {
        register: ShiftRegister::zero(config.memory()),
        pm: 0.0,
        next: 0,
    };
    forced_node(llr, v, config, &mut state);
    Ok(state.pm)
}

struct ForcedState {
    register: ShiftRegister,
    pm: PathMetric,
    next: usize,
}

fn forced_node(alpha: &[Llr], v: &[u8], config: &CodeConfig, state: &mut ForcedState) -> Vec<u8> {
    if alpha.len() == 1 {
        let (u, next) = conv_bit_enc(v[state.next], state.register, config.conv());
        state.register = next;
        state.pm += bit_penalty(alpha[0], u);
        state.next += 1;
        return vec![u];
    }
    let half = alpha.len() / 2;
    let (a, b) = alpha.split_at(half);
    let left_alpha: Vec<Llr> = a.iter().zip(b).map(|(&x, &y)| f_op(x, y)).collect();
    let left = forced_node(&left_alpha, v, config, state);
    let right_alpha: Vec<Llr> = a
        .iter()
        .zip(b)
        .zip(&left)
        .map(|((&x, &y), &bl)| g_op(x, y, bl))
        .collect();
    let right = forced_node(&right_alpha, v, config, state);
    let mut out: Vec<u8> = left.iter().zip(&right).map(|(l, r)| l ^ r).collect();
    out.extend_from_slice(&right);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{conv_encode, pac_encode, polar_transform};

    fn small_code() -> CodeConfig {
        CodeConfig::from_parts(8, &[3, 5, 6, 7], &[1, 1, 1]).unwrap()
    }

    fn saturate(x: &[u8]) -> Vec<Llr> {
        x.iter().map(|&b| if b == 0 { 20.0 } else { -20.0 }).collect()
    }

    #[test]
    fn prune_keeps_smallest() {
        let kept = prune(vec![5.0, 1.0, 4.0, 2.0, 3.0, 0.5], 3, |&x| x);
        assert_eq!(kept, [0.5, 1.0, 2.0]);
        assert_eq!(prune(vec![3.0, 1.0], 4, |&x| x), [1.0, 3.0]);
    }

    #[test]
    fn prune_tie_at_boundary_keeps_lower_index() {
        let kept = prune(vec![(1.0, 'a'), (2.0, 'b'), (2.0, 'c'), (0.0, 'd')], 3, |x| x.0);
        assert_eq!(kept, [(0.0, 'd'), (1.0, 'a'), (2.0, 'b')]);
    }

    #[test]
    fn noiseless_loopback_sc() {
        let code = small_code();
        for m in 0..16u8 {
            let d: Vec<u8> = (0..4).map(|i| (m >> i) & 1).collect();
            let x = pac_encode(&d, &code).unwrap();
            let out = decode_list(&saturate(&x), &code, 1).unwrap();
            assert_eq!(out.bits, d);
            assert_eq!(out.pm, 0.0);
        }
    }

    #[test]
    fn all_frozen_code() {
        let code = CodeConfig::from_parts(8, &[], &[1, 1, 1]).unwrap();
        let llr = [1.0, -2.0, 0.5, 3.0, -0.25, 1.5, 2.0, -1.0];
        let out = decode_list(&llr, &code, 4).unwrap();
        assert!(out.bits.is_empty());
        assert_eq!(out.survivors.len(), 1);
        let expected = forced_path_metric(&llr, &[0; 8], &code).unwrap();
        assert_eq!(out.pm, expected);
    }

    #[test]
    fn forced_metric_of_transmitted_word_is_zero() {
        let code = small_code();
        let v = code.profile().insert(&[1, 0, 1, 1]).unwrap();
        let x = polar_transform(&conv_encode(&v, code.conv())).unwrap();
        assert_eq!(forced_path_metric(&saturate(&x), &v, &code).unwrap(), 0.0);
    }

    #[test]
    fn forced_metric_errors() {
        let code = small_code();
        let llr = [1.0; 8];
        assert_eq!(
            forced_path_metric(&llr, &[1, 0, 0, 0, 0, 0, 0, 0], &code),
            Err(Error::FrozenViolation { index: 0 })
        );
        assert!(forced_path_metric(&llr[..4], &[0; 8], &code).is_err());
        assert!(forced_path_metric(&llr, &[0; 4], &code).is_err());
    }

    #[test]
    fn decode_list_errors() {
        let code = small_code();
        assert_eq!(decode_list(&[0.0; 8], &code, 0), Err(Error::ZeroListSize));
        assert_eq!(
            decode_list(&[0.0; 4], &code, 2),
            Err(Error::LengthMismatch {
                expected: 8,
                actual: 4
            })
        );
    }

    #[test]
    fn split_orders_zero_branches_first() {
        let mut paths = vec![Path::new(&[1.0, 1.0], 0), Path::new(&[1.0, 1.0], 0)];
        paths[1].pm = 1.0;
        let mut aux = vec![(), ()];
        split_and_prune(&mut paths, &mut aux, 4, |p, _, _| p.pm, |p, _, b| p.v_hat[0] = b);
        let order: Vec<(f64, u8)> = paths.iter().map(|p| (p.pm, p.v_hat[0])).collect();
        assert_eq!(order, [(0.0, 0), (0.0, 1), (1.0, 0), (1.0, 1)]);
    }
}
