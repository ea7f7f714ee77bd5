use crate::expr::is_finite;
use crate::ComplexValue;

use super::SeriesError;

/// How a node sequence continues past its explicit prefix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailRule {
    /// Every further node equals the limit.
    Constant,
    /// The j-th tail node (j = 1, 2, …) is `limit + offset·ratioʲ`.
    Geometric { offset: ComplexValue, ratio: ComplexValue },
}

/// Interpolation nodes (cₙ) converging to `limit`: an explicit prefix
/// followed by a tail rule.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSequence {
    prefix: Vec<ComplexValue>,
    tail: TailRule,
    limit: ComplexValue,
}

impl NodeSequence {
    pub fn new(prefix: Vec<ComplexValue>, tail: TailRule, limit: ComplexValue) -> Result<Self, SeriesError> {
        let finite = prefix.iter().all(|z| is_finite(*z)) && is_finite(limit);
        let tail_ok = match tail {
            TailRule::Constant => true,
            TailRule::Geometric { offset, ratio } => is_finite(offset) && ratio.norm() < 1.0,
        };
        if !finite || !tail_ok {
            return Err(SeriesError::BadNodeSequence(format!(
                "prefix {prefix:?}, tail {tail:?}, limit {limit}"
            )));
        }
        Ok(NodeSequence { prefix, tail, limit })
    }

    /// All nodes equal to `limit`.
    pub fn constant(limit: ComplexValue) -> Result<Self, SeriesError> {
        NodeSequence::new(Vec::new(), TailRule::Constant, limit)
    }

    /// `limit + offset·ratioᵏ` for k = 1, 2, …
    pub fn geometric(limit: ComplexValue, offset: ComplexValue, ratio: ComplexValue) -> Result<Self, SeriesError> {
        NodeSequence::new(Vec::new(), TailRule::Geometric { offset, ratio }, limit)
    }

    /// Explicit nodes followed by a constant tail at `limit`.
    pub fn list(prefix: Vec<ComplexValue>, limit: ComplexValue) -> Result<Self, SeriesError> {
        NodeSequence::new(prefix, TailRule::Constant, limit)
    }

    pub fn prefix(&self) -> &[ComplexValue] {
        &self.prefix
    }

    pub fn tail(&self) -> TailRule {
        self.tail
    }

    pub fn limit(&self) -> ComplexValue {
        self.limit
    }

    /// The k-th node, k ≥ 1.
    pub fn node(&self, k: usize) -> ComplexValue {
        assert!(k >= 1, "nodes are numbered from 1");
        if k <= self.prefix.len() {
            return self.prefix[k - 1];
        }
        match self.tail {
            TailRule::Constant => self.limit,
            TailRule::Geometric { offset, ratio } => {
                let j = (k - self.prefix.len()) as i32;
                self.limit + offset * ratio.powi(j)
            }
        }
    }

    /// The first `count` nodes.
    pub fn take(&self, count: usize) -> Vec<ComplexValue> {
        (1..=count).map(|k| self.node(k)).collect()
    }
}
