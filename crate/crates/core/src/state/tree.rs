use super::{MeasurementBasis, StateTensor};
use crate::measures::entropy_bits;
use crate::Result;

/// One measurement in an adaptive hierarchy: the party measured, the basis
/// chosen given the outcomes so far, and one branch per basis vector.
#[derive(Debug, Clone)]
pub struct OutcomeNode {
    pub party: usize,
    pub basis: MeasurementBasis,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone)]
pub struct Branch {
    /// Joint probability of the outcome path ending in this branch.
    pub probability: f64,
    /// Measurement of the next party, absent after the last party.
    pub child: Option<Box<OutcomeNode>>,
}

/// Adaptive local measurement hierarchy: parties are measured in `party_order`,
/// and every node may pick its basis from all earlier outcomes.
#[derive(Debug, Clone)]
pub struct OutcomeTree {
    party_order: Vec<usize>,
    root: OutcomeNode,
}

impl OutcomeTree {
    /// Measures `state` party by party in `order`. `choose` receives the
    /// normalized residual state, whose party 0 is the one about to be measured,
    /// and returns its basis. Zero-probability branches get computational bases.
    pub fn build<F>(state: &StateTensor, order: &[usize], mut choose: F) -> Result<Self>
    where
        F: FnMut(&StateTensor) -> MeasurementBasis,
    {
        let ordered = state.permute_parties(order)?;
        let root = build_node(Some(&ordered), ordered.dims(), order, 1.0, &mut choose)?;
        Ok(OutcomeTree { party_order: order.to_vec(), root })
    }

    pub fn party_order(&self) -> &[usize] {
        &self.party_order
    }

    pub fn root(&self) -> &OutcomeNode {
        &self.root
    }

    /// Probabilities of complete outcome strings, depth-first in outcome order.
    pub fn leaf_probabilities(&self) -> Vec<f64> {
        let mut out = Vec::new();
        collect_leaves(&self.root, &mut out);
        out
    }

    /// Number of basis choices in the tree.
    pub fn measurement_count(&self) -> usize {
        count_nodes(&self.root)
    }

    /// Shannon entropy (bits) of the leaf distribution.
    pub fn entropy(&self) -> f64 {
        entropy_bits(self.leaf_probabilities())
    }
}

/// `1 + d₁ + d₁d₂ + … + d₁⋯d_{N−1}` for dims listed in measurement order.
pub fn expected_measurement_count(dims: &[usize]) -> usize {
    let mut total = 0;
    let mut width = 1;
    for &d in dims {
        total += width;
        width *= d;
    }
    total
}

fn build_node<F>(
    state: Option<&StateTensor>,
    dims: &[usize],
    labels: &[usize],
    prob: f64,
    choose: &mut F,
) -> Result<OutcomeNode>
where
    F: FnMut(&StateTensor) -> MeasurementBasis,
{
    let basis = match state {
        Some(s) => choose(s),
        None => MeasurementBasis::computational(dims[0]),
    };
    let mut branches = Vec::with_capacity(dims[0]);
    for i in 0..dims[0] {
        let v = basis.vector(i);
        if labels.len() == 1 {
            let p = state.map_or(0.0, |s| {
                s.amplitudes().iter().zip(v.iter()).map(|(a, c)| c.conj() * a).sum::<num_complex::Complex64>().norm_sqr()
            });
            branches.push(Branch { probability: prob * p, child: None });
            continue;
        }
        let (p, residual) = match state {
            Some(s) => {
                let proj = s.project_party(0, v.as_slice())?;
                (proj.probability, proj.residual)
            }
            None => (0.0, None),
        };
        let child = build_node(residual.as_ref(), &dims[1..], &labels[1..], prob * p, choose)?;
        branches.push(Branch { probability: prob * p, child: Some(Box::new(child)) });
    }
    Ok(OutcomeNode { party: labels[0], basis, branches })
}

fn collect_leaves(node: &OutcomeNode, out: &mut Vec<f64>) {
    for b in &node.branches {
        match &b.child {
            Some(c) => collect_leaves(c, out),
            None => out.push(b.probability),
        }
    }
}

fn count_nodes(node: &OutcomeNode) -> usize {
    1 + node.branches.iter().filter_map(|b| b.child.as_deref()).map(count_nodes).sum::<usize>()
}
