//! Exact-rational weightings of clones.
//!
//! A `k`-ary weighting assigns a rational weight to every `k`-ary operation
//! (absent means zero), sums to zero, and may be negative only on
//! projections. Values of this type are allowed to violate those conditions
//! so that the improper intermediates arising inside certified constructions
//! are representable; [`Weighting::validate`] reports the status and the
//! operations that construct new weightings state what they enforce.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::ops::{cyclic_projection_tuples, superpose_op, Operation};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    domain: FiniteDomain,
    arity: usize,
    entries: BTreeMap<Operation, Rational>,
}

impl Weighting {
    /// Builds a weighting from explicit entries. Checks only structural
    /// consistency (shared domain and arity); zero entries are dropped.
    pub fn new(
        domain: FiniteDomain,
        arity: usize,
        entries: impl IntoIterator<Item = (Operation, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (op, weight) in entries {
            if op.domain() != domain {
                return Err(Error::input("weighting entry on a different domain"));
            }
            if op.arity() != arity {
                return Err(Error::input(format!(
                    "weighting of arity {arity} cannot weight an operation of arity {}",
                    op.arity()
                )));
            }
            if weight.is_zero() {
                continue;
            }
            let slot = map.entry(op).or_insert_with(Rational::zero);
            *slot += weight;
        }
        map.retain(|_, w: &mut Rational| !w.is_zero());
        Ok(Weighting {
            domain,
            arity,
            entries: map,
        })
    }

    pub fn zero(domain: FiniteDomain, arity: usize) -> Self {
        Weighting {
            domain,
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Nonzero entries in deterministic (table) order.
    pub fn entries(&self) -> impl Iterator<Item = (&Operation, &Rational)> {
        self.entries.iter()
    }

    pub fn weight(&self, op: &Operation) -> Rational {
        self.entries.get(op).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Operations with strictly positive weight.
    pub fn support(&self) -> impl Iterator<Item = &Operation> {
        self.entries
            .iter()
            .filter(|(_, w)| w.is_positive())
            .map(|(op, _)| op)
    }

    /// Positive weightings assign positive weight to some non-projection.
    pub fn is_positive(&self) -> bool {
        self.entries
            .iter()
            .any(|(op, w)| w.is_positive() && !op.is_projection())
    }

    pub fn sum(&self) -> Rational {
        self.entries.values().sum()
    }

    /// Reports zero-sum status, any non-projections carrying negative
    /// weight, and positivity.
    pub fn validate(&self) -> ValidityReport {
        let sum = self.sum();
        let negative_non_projections: Vec<Operation> = self
            .entries
            .iter()
            .filter(|(op, w)| w.is_negative() && !op.is_projection())
            .map(|(op, _)| op.clone())
            .collect();
        ValidityReport {
            zero_sum: sum.is_zero(),
            sum,
            negative_non_projections,
            positive: self.is_positive(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let r = self.validate();
        r.zero_sum && r.negative_non_projections.is_empty()
    }

    /// Raw pointwise linear combination with no sign or validity checks;
    /// the building block for [`combine`] and certificate replay.
    pub fn scaled_sum(terms: &[(Rational, &Weighting)]) -> Result<Weighting> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::input("empty linear combination of weightings"))?;
        let domain = first.domain;
        let arity = first.arity;
        let mut entries: BTreeMap<Operation, Rational> = BTreeMap::new();
        for (c, w) in terms {
            if w.domain != domain {
                return Err(Error::input("combined weightings must share one domain"));
            }
            if w.arity != arity {
                return Err(Error::input(format!(
                    "cannot add weightings of arities {arity} and {}",
                    w.arity
                )));
            }
            if c.is_zero() {
                continue;
            }
            for (op, weight) in &w.entries {
                let slot = entries.entry(op.clone()).or_insert_with(Rational::zero);
                *slot += c * weight;
            }
        }
        entries.retain(|_, w| !w.is_zero());
        Ok(Weighting {
            domain,
            arity,
            entries,
        })
    }

    /// Superposition `ω[g_1,…,g_k]`: pushes every entry's weight onto the
    /// superposed operation, summing collisions. Zero-sum is preserved for
    /// every input. With `require_proper` the result must place negative
    /// weight only on projections.
    pub fn superpose(&self, gs: &[Operation], require_proper: bool) -> Result<Weighting> {
        if gs.len() != self.arity {
            return Err(Error::input(format!(
                "superposing a {}-ary weighting needs {} inner operations, got {}",
                self.arity,
                self.arity,
                gs.len()
            )));
        }
        let result_arity = match gs.first() {
            Some(g) => g.arity(),
            // nullary superposition cannot occur: arity >= 1 always
            None => return Err(Error::input("empty superposition tuple")),
        };
        let mut entries: BTreeMap<Operation, Rational> = BTreeMap::new();
        for (op, weight) in &self.entries {
            let image = superpose_op(op, gs)?;
            let slot = entries.entry(image).or_insert_with(Rational::zero);
            *slot += weight;
        }
        entries.retain(|_, w| !w.is_zero());
        let out = Weighting {
            domain: self.domain,
            arity: result_arity,
            entries,
        };
        if require_proper {
            if let Some((op, w)) = out
                .entries
                .iter()
                .find(|(op, w)| w.is_negative() && !op.is_projection())
            {
                return Err(Error::Improper {
                    op: op.clone(),
                    weight: w.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Cyclic symmetrization of a valid positive weighting: the sum of its
    /// superpositions with all cyclic permutations of the projections,
    /// scaled so every projection gets weight exactly −1.
    ///
    /// The result `μ` satisfies `μ(e_i) = −1` for every `i`, is invariant
    /// under cyclic permutation of arguments, and its non-projection support
    /// is the closure of the input's non-projection support under cyclic
    /// variants.
    pub fn symmetrize(&self) -> Result<Weighting> {
        if !self.is_valid() {
            return Err(Error::input("symmetrize needs a valid weighting"));
        }
        if !self.is_positive() {
            return Err(Error::input("symmetrize needs a positive weighting"));
        }
        let summed = self.cyclic_sum()?;
        let e1 = Operation::projection(self.domain, self.arity, 1)?;
        let w = summed.weight(&e1);
        if !w.is_negative() {
            return Err(Error::Structural(format!(
                "cyclic sum of a positive weighting must be negative on projections, got {w}"
            )));
        }
        let scale = w.abs().recip();
        Weighting::scaled_sum(&[(scale, &summed)])
    }

    /// The unscaled cyclic sum `Σ_π ω[e_{π(1)},…,e_{π(k)}]`.
    pub fn cyclic_sum(&self) -> Result<Weighting> {
        let tuples = cyclic_projection_tuples(self.domain, self.arity)?;
        let mut parts = Vec::with_capacity(tuples.len());
        for gs in &tuples {
            parts.push(self.superpose(gs, false)?);
        }
        let terms: Vec<(Rational, &Weighting)> = parts
            .iter()
            .map(|p| (Rational::from_integer(1.into()), p))
            .collect();
        Weighting::scaled_sum(&terms)
    }
}

/// Report produced by [`Weighting::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub zero_sum: bool,
    pub sum: Rational,
    pub negative_non_projections: Vec<Operation>,
    pub positive: bool,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.zero_sum && self.negative_non_projections.is_empty()
    }
}

/// Nonnegative linear combination of same-arity weightings. The result is
/// checked: zero-sum must hold and negative weight may rest only on
/// projections.
pub fn combine(terms: &[(Rational, Weighting)]) -> Result<Weighting> {
    for (c, _) in terms {
        if c.is_negative() {
            return Err(Error::input(format!(
                "combination coefficients must be nonnegative, got {c}"
            )));
        }
    }
    let borrowed: Vec<(Rational, &Weighting)> = terms.iter().map(|(c, w)| (c.clone(), w)).collect();
    let out = Weighting::scaled_sum(&borrowed)?;
    let report = out.validate();
    if !report.zero_sum {
        return Err(Error::Validity(format!(
            "combination does not sum to zero (sum = {})",
            report.sum
        )));
    }
    if let Some(op) = report.negative_non_projections.first() {
        return Err(Error::Validity(format!(
            "combination places negative weight on the non-projection {op:?}"
        )));
    }
    Ok(out)
}
