//! Weighted relations `φ : D^m → Q ∪ {∞}` and valued constraint languages.

use std::collections::BTreeMap;

use crate::domain::{FiniteDomain, Label};
use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};

/// An `m`-ary weighted relation, stored as its value table in lexicographic
/// tuple order (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRelation {
    domain: FiniteDomain,
    arity: usize,
    values: Vec<ExtRational>,
}

impl WeightedRelation {
    pub fn new(domain: FiniteDomain, arity: usize, values: Vec<ExtRational>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("weighted relations must have positive arity"));
        }
        let expected = domain.tuple_count(arity)?;
        if values.len() != expected {
            return Err(Error::input(format!(
                "value table length {} does not match |D|^{arity} = {expected}",
                values.len()
            )));
        }
        Ok(WeightedRelation {
            domain,
            arity,
            values,
        })
    }

    pub fn from_fn(
        domain: FiniteDomain,
        arity: usize,
        mut f: impl FnMut(&[Label]) -> ExtRational,
    ) -> Result<Self> {
        let values = domain.tuples(arity).map(|t| f(&t)).collect();
        WeightedRelation::new(domain, arity, values)
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.values
    }

    pub fn value(&self, tuple: &[Label]) -> &ExtRational {
        &self.values[self.domain.encode(tuple)]
    }

    /// Finite-valued means every tuple is feasible.
    pub fn is_finite_valued(&self) -> bool {
        self.values.iter().all(ExtRational::is_finite)
    }

    /// The feasible tuples, in lexicographic order.
    pub fn feasible_tuples(&self) -> Vec<Vec<Label>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(idx, _)| self.domain.decode(self.arity, idx))
            .collect()
    }

    pub fn is_feasible(&self, tuple: &[Label]) -> bool {
        self.value(tuple).is_finite()
    }

    /// The underlying feasibility relation: 0 where finite, ∞ elsewhere.
    pub fn feasibility_relation(&self) -> WeightedRelation {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                ExtRational::Finite(_) => ExtRational::zero(),
                ExtRational::Infinite => ExtRational::Infinite,
            })
            .collect();
        WeightedRelation {
            domain: self.domain,
            arity: self.arity,
            values,
        }
    }

    /// Scales every value by a nonnegative rational; `0 · ∞ = ∞`.
    pub fn scaled(&self, c: &Rational) -> Result<WeightedRelation> {
        let values = self
            .values
            .iter()
            .map(|v| v.scale(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedRelation {
            domain: self.domain,
            arity: self.arity,
            values,
        })
    }

    /// Adds a rational constant to every value.
    pub fn plus_constant(&self, c: &Rational) -> WeightedRelation {
        let shift = ExtRational::Finite(c.clone());
        let values = self.values.iter().map(|v| v + &shift).collect();
        WeightedRelation {
            domain: self.domain,
            arity: self.arity,
            values,
        }
    }

    /// Restricts the relation to a sub-domain given as a sorted list of
    /// surviving labels, relabelled to `0..kept.len()`.
    pub fn restricted(&self, kept: &[Label]) -> Result<WeightedRelation> {
        let sub = FiniteDomain::new(kept.len())?;
        WeightedRelation::from_fn(sub, self.arity, |t| {
            let lifted: Vec<Label> = t.iter().map(|&x| kept[x]).collect();
            self.value(&lifted).clone()
        })
    }
}

/// A named set of weighted relations over one domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Language {
    domain: FiniteDomain,
    relations: BTreeMap<String, WeightedRelation>,
}

impl Language {
    pub fn new(
        domain: FiniteDomain,
        relations: impl IntoIterator<Item = (String, WeightedRelation)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, rel) in relations {
            if rel.domain() != domain {
                return Err(Error::input(format!(
                    "relation {name:?} lives on a different domain"
                )));
            }
            if map.insert(name.clone(), rel).is_some() {
                return Err(Error::input(format!("duplicate relation name {name:?}")));
            }
        }
        Ok(Language {
            domain,
            relations: map,
        })
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &WeightedRelation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn get(&self, name: &str) -> Option<&WeightedRelation> {
        self.relations.get(name)
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}
