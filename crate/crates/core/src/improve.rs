//! Polymorphism and weighted-polymorphism checking, and the unary-sum
//! decomposition of finite-valued weighted relations.

use num_traits::{Signed, Zero};

use crate::clone_gen::CloneSlice;
use crate::domain::Label;
use crate::error::{Error, Result};
use crate::ops::Operation;
use crate::rational::{ExtRational, Rational};
use crate::relation::WeightedRelation;
use crate::weighting::Weighting;

/// Outcome of a polymorphism check, with a violating tuple family on
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymorphismCheck {
    Holds,
    Fails {
        family: Vec<Vec<Label>>,
        image: Vec<Label>,
    },
}

impl PolymorphismCheck {
    pub fn holds(&self) -> bool {
        matches!(self, PolymorphismCheck::Holds)
    }
}

/// Checks whether `f` preserves the feasibility relation of `φ`, by
/// exhausting all `k`-tuples of feasible tuples.
pub fn is_polymorphism(f: &Operation, phi: &WeightedRelation) -> Result<PolymorphismCheck> {
    if f.domain() != phi.domain() {
        return Err(Error::input("operation and relation domains differ"));
    }
    let dom = phi.feasible_tuples();
    let k = f.arity();
    let mut outcome = PolymorphismCheck::Holds;
    for_each_family(&dom, k, |family| {
        let image = f.apply_tuples(family);
        if !phi.is_feasible(&image) {
            outcome = PolymorphismCheck::Fails {
                family: family.iter().map(|t| t.to_vec()).collect(),
                image,
            };
            false
        } else {
            true
        }
    });
    Ok(outcome)
}

/// Outcome of a weighted-polymorphism check. A failed polymorphism
/// precondition is reported separately from a failed improvement
/// inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpolCheck {
    Improves,
    NotPolymorphism {
        op: Operation,
        family: Vec<Vec<Label>>,
        image: Vec<Label>,
    },
    InequalityFails {
        family: Vec<Vec<Label>>,
        value: Rational,
    },
}

impl WpolCheck {
    pub fn improves(&self) -> bool {
        matches!(self, WpolCheck::Improves)
    }
}

/// Checks whether `w` improves `φ`: every operation with nonzero weight
/// (and every operation of a supplied clone slice) must be a polymorphism
/// of `φ`, and `Σ_f w(f)·φ(f(x⃗_1,…,x⃗_k)) ≤ 0` must hold for every family
/// of feasible argument tuples. All arithmetic is exact.
pub fn is_weighted_polymorphism(
    w: &Weighting,
    phi: &WeightedRelation,
    pool: Option<&CloneSlice>,
) -> Result<WpolCheck> {
    if w.domain() != phi.domain() {
        return Err(Error::input("weighting and relation domains differ"));
    }
    for (op, _) in w.entries() {
        if let PolymorphismCheck::Fails { family, image } = is_polymorphism(op, phi)? {
            return Ok(WpolCheck::NotPolymorphism {
                op: op.clone(),
                family,
                image,
            });
        }
    }
    if let Some(slice) = pool {
        for arity in 1..=slice.max_arity() {
            for op in slice.layer(arity) {
                if let PolymorphismCheck::Fails { family, image } = is_polymorphism(op, phi)? {
                    return Ok(WpolCheck::NotPolymorphism {
                        op: op.clone(),
                        family,
                        image,
                    });
                }
            }
        }
    }

    let dom = phi.feasible_tuples();
    let k = w.arity();
    let mut outcome = WpolCheck::Improves;
    for_each_family(&dom, k, |family| {
        let mut total = Rational::zero();
        for (op, weight) in w.entries() {
            let image = op.apply_tuples(family);
            let v = phi
                .value(&image)
                .as_finite()
                .expect("support operations are polymorphisms");
            total += weight * v;
        }
        if total.is_positive() {
            outcome = WpolCheck::InequalityFails {
                family: family.iter().map(|t| t.to_vec()).collect(),
                value: total,
            };
            false
        } else {
            true
        }
    });
    Ok(outcome)
}

/// Calls `visit` on every `k`-tuple (with repetition) of tuples drawn from
/// `dom`, in lexicographic order of indices, until it returns false.
pub(crate) fn for_each_family(
    dom: &[Vec<Label>],
    k: usize,
    mut visit: impl FnMut(&[&[Label]]) -> bool,
) {
    if dom.is_empty() {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        let family: Vec<&[Label]> = idx.iter().map(|&i| dom[i].as_slice()).collect();
        if !visit(&family) {
            return;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < dom.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Outcome of [`decompose_unary_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnaryDecomposition {
    /// Unary parts `ψ_1,…,ψ_m` with `Σ_i ψ_i(x_i) = φ(x)` for every tuple.
    Parts(Vec<WeightedRelation>),
    /// A witness `(x, y, i)` violating the rectangle equality
    /// `φ(x)+φ(y) = φ(x[i←y_i]) + φ(y[i←x_i])`.
    Fails {
        x: Vec<Label>,
        y: Vec<Label>,
        position: usize,
    },
}

/// Decomposes a finite-valued weighted relation into a sum of unary
/// relations when possible. The decomposition holds exactly when the
/// rectangle equality holds for all tuple pairs and positions; the parts
/// are anchored at the all-zero reference tuple, with `ψ_i(0) = 0` for
/// `i ≥ 2` and the constant surplus folded into `ψ_1`.
pub fn decompose_unary_sum(phi: &WeightedRelation) -> Result<UnaryDecomposition> {
    if !phi.is_finite_valued() {
        return Err(Error::input(
            "unary-sum decomposition is defined for finite-valued relations",
        ));
    }
    let d = phi.domain();
    let m = phi.arity();
    let finite = |t: &[Label]| -> Rational {
        phi.value(t)
            .as_finite()
            .expect("finite-valued relation")
            .clone()
    };

    for x in d.tuples(m) {
        for y in d.tuples(m) {
            for i in 0..m {
                let mut xi = x.clone();
                xi[i] = y[i];
                let mut yi = y.clone();
                yi[i] = x[i];
                if finite(&x) + finite(&y) != finite(&xi) + finite(&yi) {
                    return Ok(UnaryDecomposition::Fails {
                        x,
                        y,
                        position: i + 1,
                    });
                }
            }
        }
    }

    let reference = vec![0; m];
    let base = finite(&reference);
    let mut parts = Vec::with_capacity(m);
    for i in 0..m {
        let part = WeightedRelation::from_fn(d, 1, |t| {
            let mut probe = reference.clone();
            probe[i] = t[0];
            let v = finite(&probe);
            ExtRational::Finite(if i == 0 { v } else { v - &base })
        })?;
        parts.push(part);
    }

    // reconstruction must be exact on every tuple
    for x in d.tuples(m) {
        let mut total = Rational::zero();
        for (i, part) in parts.iter().enumerate() {
            total += part
                .value(&[x[i]])
                .as_finite()
                .expect("parts are finite-valued");
        }
        if total != finite(&x) {
            return Err(Error::Structural(format!(
                "unary reconstruction mismatch at {x:?}"
            )));
        }
    }
    Ok(UnaryDecomposition::Parts(parts))
}
