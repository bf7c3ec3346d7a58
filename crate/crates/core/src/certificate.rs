//! Replayable membership certificates for generated weighted clones.
//!
//! A construction tree records how a weighting was assembled from generator
//! weightings by nonnegative scaling, equal-arity addition and superposition.
//! Replaying evaluates the tree bottom-up; intermediate superpositions are
//! deliberately evaluated without the properness requirement (a weighted sum
//! of improper superpositions can always be rewritten as a proper one), but
//! the final result must be a valid weighting.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ops::Operation;
use crate::rational::Rational;
use crate::weighting::Weighting;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTree {
    /// A generator weighting.
    Leaf(Weighting),
    /// Nonnegative scaling of a subtree.
    Scale(Rational, Box<ConstructionTree>),
    /// Sum of two subtrees of equal arity.
    Add(Box<ConstructionTree>, Box<ConstructionTree>),
    /// Superposition of a subtree with a tuple of operations.
    Superpose(Box<ConstructionTree>, Vec<Operation>),
}

impl ConstructionTree {
    pub fn leaf(w: Weighting) -> Self {
        ConstructionTree::Leaf(w)
    }

    pub fn scale(c: Rational, t: ConstructionTree) -> Self {
        ConstructionTree::Scale(c, Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: ConstructionTree, b: ConstructionTree) -> Self {
        ConstructionTree::Add(Box::new(a), Box::new(b))
    }

    pub fn superpose(t: ConstructionTree, gs: Vec<Operation>) -> Self {
        ConstructionTree::Superpose(Box::new(t), gs)
    }

    /// Folds a head tree with further trees into a left-leaning Add chain.
    pub fn sum(head: ConstructionTree, rest: impl IntoIterator<Item = ConstructionTree>) -> Self {
        rest.into_iter().fold(head, ConstructionTree::add)
    }

    /// Evaluates the tree. The root must replay to a valid weighting.
    pub fn replay(&self) -> Result<Weighting> {
        let w = self.eval()?;
        let report = w.validate();
        if !report.zero_sum {
            return Err(Error::Certificate(format!(
                "replayed weighting does not sum to zero (sum = {})",
                report.sum
            )));
        }
        if let Some(op) = report.negative_non_projections.first() {
            return Err(Error::Certificate(format!(
                "replayed weighting places negative weight on the non-projection {op:?}"
            )));
        }
        Ok(w)
    }

    /// Replays and compares against an expected weighting.
    pub fn replay_matches(&self, expected: &Weighting) -> Result<bool> {
        Ok(self.replay()? == *expected)
    }

    fn eval(&self) -> Result<Weighting> {
        match self {
            ConstructionTree::Leaf(w) => {
                if !w.is_valid() {
                    return Err(Error::Certificate(
                        "certificate leaf is not a valid weighting".into(),
                    ));
                }
                Ok(w.clone())
            }
            ConstructionTree::Scale(c, t) => {
                if c.is_negative() {
                    return Err(Error::Certificate(format!(
                        "certificate scales by the negative constant {c}"
                    )));
                }
                let w = t.eval()?;
                Weighting::scaled_sum(&[(c.clone(), &w)])
            }
            ConstructionTree::Add(a, b) => {
                let wa = a.eval()?;
                let wb = b.eval()?;
                if wa.arity() != wb.arity() {
                    return Err(Error::Certificate(format!(
                        "certificate adds weightings of arities {} and {}",
                        wa.arity(),
                        wb.arity()
                    )));
                }
                let one = Rational::from_integer(1.into());
                Weighting::scaled_sum(&[(one.clone(), &wa), (one, &wb)])
            }
            ConstructionTree::Superpose(t, gs) => {
                let w = t.eval()?;
                w.superpose(gs, false)
            }
        }
    }

    /// Number of nodes, handy for trace summaries.
    pub fn size(&self) -> usize {
        match self {
            ConstructionTree::Leaf(_) => 1,
            ConstructionTree::Scale(_, t) => 1 + t.size(),
            ConstructionTree::Add(a, b) => 1 + a.size() + b.size(),
            ConstructionTree::Superpose(t, _) => 1 + t.size(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::FiniteDomain;
    use crate::fixtures;
    use crate::rational::{ratio, rational_from_int};

    #[test]
    fn leaf_replays_to_itself() {
        let w = fixtures::submodular_weighting();
        let t = ConstructionTree::leaf(w.clone());
        assert_eq!(t.replay().unwrap(), w);
        assert!(t.replay_matches(&w).unwrap());
    }

    #[test]
    fn zero_scale_absorbs() {
        let w = fixtures::submodular_weighting();
        let t = ConstructionTree::add(
            ConstructionTree::scale(rational_from_int(1), ConstructionTree::leaf(w.clone())),
            ConstructionTree::scale(rational_from_int(0), ConstructionTree::leaf(w.clone())),
        );
        assert_eq!(t.replay().unwrap(), w);
    }

    #[test]
    fn replay_evaluates_improper_intermediates() {
        // ω + (ω(n)/a)·ω[e1,e1,n] for ω(m) = 5/2, ω(n) = 1/2, a = 1/2:
        // the superposition node is improper on its own but the sum is a
        // valid weighting with e1 = −1/2, e2 = e3 = −1, m = 5/2, n = 0
        let d = FiniteDomain::new(2).unwrap();
        let w = fixtures::majority_minority_weighting(ratio(5, 2), ratio(1, 2));
        let n = fixtures::boolean_minority();
        let e = |i| crate::ops::Operation::projection(d, 3, i).unwrap();
        let leaf = ConstructionTree::leaf(w.clone());
        let t = ConstructionTree::add(
            leaf.clone(),
            ConstructionTree::scale(
                rational_from_int(1),
                ConstructionTree::superpose(leaf, vec![e(1), e(1), n.clone()]),
            ),
        );
        let replayed = t.replay().unwrap();
        assert_eq!(replayed.weight(&e(1)), ratio(-1, 2));
        assert_eq!(replayed.weight(&e(2)), rational_from_int(-1));
        assert_eq!(replayed.weight(&e(3)), rational_from_int(-1));
        assert_eq!(replayed.weight(&fixtures::boolean_majority()), ratio(5, 2));
        assert_eq!(replayed.weight(&n), rational_from_int(0));
    }

    #[test]
    fn invalid_final_result_is_a_certificate_error() {
        let w = fixtures::majority_minority_weighting(ratio(5, 2), ratio(1, 2));
        let n = fixtures::boolean_minority();
        let d = FiniteDomain::new(2).unwrap();
        let e = |i| crate::ops::Operation::projection(d, 3, i).unwrap();
        // the improper superposition alone does not replay
        let t = ConstructionTree::superpose(ConstructionTree::leaf(w), vec![e(1), e(1), n]);
        assert!(matches!(t.replay(), Err(Error::Certificate(_))));
    }

    #[test]
    fn invalid_leaf_is_rejected() {
        let d = FiniteDomain::new(2).unwrap();
        let bad = Weighting::new(
            d,
            2,
            [
                (fixtures::boolean_min(), rational_from_int(1)),
                (fixtures::boolean_max(), rational_from_int(-1)),
            ],
        )
        .unwrap();
        let t = ConstructionTree::leaf(bad);
        assert!(matches!(t.replay(), Err(Error::Certificate(_))));
    }
}
