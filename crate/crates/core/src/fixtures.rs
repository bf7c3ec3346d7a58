//! Embedded example operations, weightings and relations used by the
//! verification suite, the tests and the CLI.

use crate::domain::FiniteDomain;
use crate::error::Result;
use crate::ops::Operation;
use crate::rational::{ratio, rational_from_int, ExtRational, Rational};
use crate::relation::WeightedRelation;
use crate::weighting::Weighting;

pub fn boolean_domain() -> FiniteDomain {
    FiniteDomain::new(2).expect("two-element domain")
}

pub fn three_domain() -> FiniteDomain {
    FiniteDomain::new(3).expect("three-element domain")
}

pub fn boolean_min() -> Operation {
    Operation::new(boolean_domain(), 2, vec![0, 0, 0, 1]).expect("min")
}

pub fn boolean_max() -> Operation {
    Operation::new(boolean_domain(), 2, vec![0, 1, 1, 1]).expect("max")
}

pub fn boolean_majority() -> Operation {
    Operation::new(boolean_domain(), 3, vec![0, 0, 0, 1, 0, 1, 1, 1]).expect("majority")
}

/// The Boolean minority operation `x ⊕ y ⊕ z`.
pub fn boolean_minority() -> Operation {
    Operation::new(boolean_domain(), 3, vec![0, 1, 1, 0, 1, 0, 0, 1]).expect("minority")
}

/// The submodularity weighting: −1 on both binary projections, +1 on min
/// and max. Its improved relations are exactly the submodular functions.
pub fn submodular_weighting() -> Weighting {
    let d = boolean_domain();
    Weighting::new(
        d,
        2,
        [
            (
                Operation::projection(d, 2, 1).expect("e1"),
                rational_from_int(-1),
            ),
            (
                Operation::projection(d, 2, 2).expect("e2"),
                rational_from_int(-1),
            ),
            (boolean_min(), rational_from_int(1)),
            (boolean_max(), rational_from_int(1)),
        ],
    )
    .expect("submodular weighting")
}

/// Ternary Boolean weighting with weight −1 on each projection, the given
/// total on the majority operation and the rest on the minority operation.
pub fn majority_minority_weighting(maj: Rational, min: Rational) -> Weighting {
    let d = boolean_domain();
    Weighting::new(
        d,
        3,
        [
            (
                Operation::projection(d, 3, 1).expect("e1"),
                rational_from_int(-1),
            ),
            (
                Operation::projection(d, 3, 2).expect("e2"),
                rational_from_int(-1),
            ),
            (
                Operation::projection(d, 3, 3).expect("e3"),
                rational_from_int(-1),
            ),
            (boolean_majority(), maj),
            (boolean_minority(), min),
        ],
    )
    .expect("majority/minority weighting")
}

/// `φ_xor`: cost 1 on equal pairs, 0 on unequal ones. Summing it over the
/// edges of a graph expresses Max-Cut.
pub fn xor_relation() -> WeightedRelation {
    WeightedRelation::new(
        boolean_domain(),
        2,
        vec![
            ExtRational::from_int(1),
            ExtRational::zero(),
            ExtRational::zero(),
            ExtRational::from_int(1),
        ],
    )
    .expect("xor relation")
}

/// `φ_or`: cost 0 only on (0,0).
pub fn or_relation() -> WeightedRelation {
    WeightedRelation::new(
        boolean_domain(),
        2,
        vec![
            ExtRational::zero(),
            ExtRational::from_int(1),
            ExtRational::from_int(1),
            ExtRational::from_int(1),
        ],
    )
    .expect("or relation")
}

/// The binary equality relation: 0 on the diagonal, ∞ off it.
pub fn equality_relation(domain: FiniteDomain) -> WeightedRelation {
    WeightedRelation::from_fn(domain, 2, |t| {
        if t[0] == t[1] {
            ExtRational::zero()
        } else {
            ExtRational::Infinite
        }
    })
    .expect("equality relation")
}

/// A rectangular band on `{0,1,2,3}`: idempotent, associative, and
/// satisfying `f(x, f(y, z)) = f(x, z)`.
pub fn rectangular_band_op() -> Result<Operation> {
    let d = FiniteDomain::new(4)?;
    Operation::new(
        d,
        2,
        vec![
            0, 1, 0, 1, //
            0, 1, 0, 1, //
            2, 3, 2, 3, //
            2, 3, 2, 3,
        ],
    )
}

/// The weighting −1 on both binary projections and +2 on the rectangular
/// band operation.
pub fn rectangular_band_weighting() -> Result<Weighting> {
    let f = rectangular_band_op()?;
    let d = f.domain();
    Weighting::new(
        d,
        2,
        [
            (Operation::projection(d, 2, 1)?, rational_from_int(-1)),
            (Operation::projection(d, 2, 2)?, rational_from_int(-1)),
            (f, rational_from_int(2)),
        ],
    )
}

/// Binary conservative operation on `{0,1,2}` acting as min on `{0,2}` and
/// as the first projection on the other two-element subdomains.
pub fn half_min_first() -> Operation {
    Operation::new(three_domain(), 2, vec![0, 0, 0, 1, 1, 1, 0, 2, 2]).expect("f3")
}

/// Binary conservative operation on `{0,1,2}` acting as min on `{0,2}` and
/// as the second projection on the other two-element subdomains.
pub fn half_min_second() -> Operation {
    Operation::new(three_domain(), 2, vec![0, 1, 0, 0, 1, 2, 0, 1, 2]).expect("f4")
}

/// The three-element weighting −1/2 on each binary projection and +1/2 on
/// each of the two half-min operations. Its support is conservative but not
/// commutative.
pub fn split_min_weighting() -> Weighting {
    let d = three_domain();
    Weighting::new(
        d,
        2,
        [
            (Operation::projection(d, 2, 1).expect("e1"), ratio(-1, 2)),
            (Operation::projection(d, 2, 2).expect("e2"), ratio(-1, 2)),
            (half_min_first(), ratio(1, 2)),
            (half_min_second(), ratio(1, 2)),
        ],
    )
    .expect("split-min weighting")
}

/// The three-element cost function improved by [`split_min_weighting`]:
/// cost 0 exactly on (0,1) and (1,0), cost 1 elsewhere. Its argmin set
/// makes it a Max-Cut gadget.
pub fn maxcut_gadget_relation() -> WeightedRelation {
    let vals = [1, 0, 1, 0, 1, 1, 1, 1, 1];
    WeightedRelation::new(
        three_domain(),
        2,
        vals.iter().map(|&v| ExtRational::from_int(v)).collect(),
    )
    .expect("gadget relation")
}

/// The ternary not-all-equal relation on `{0,1,2}`: feasible exactly on the
/// triples whose label set is `{0,1}`.
pub fn nae_relation() -> WeightedRelation {
    WeightedRelation::from_fn(three_domain(), 3, |t| {
        let mut saw = [false; 3];
        for &x in t {
            saw[x] = true;
        }
        if saw[0] && saw[1] && !saw[2] {
            ExtRational::zero()
        } else {
            ExtRational::Infinite
        }
    })
    .expect("nae relation")
}

/// Unary cost function (0, 0, 1) on `{0,1,2}`; its language reduces to the
/// two-element core `{0,1}`.
pub fn unary_core_fixture() -> WeightedRelation {
    WeightedRelation::new(
        three_domain(),
        1,
        vec![
            ExtRational::zero(),
            ExtRational::zero(),
            ExtRational::from_int(1),
        ],
    )
    .expect("unary fixture")
}

/// The type-1 Pixley operation on `{0,1,2}` returning its first argument
/// on pairwise-distinct triples. With the free entries inside the first
/// two arguments, superposing a related Pixley triple against projection
/// pairs collapses exactly onto projections and majority operations, so
/// the closed-form Pixley elimination lands on majority support with no
/// semiprojection residue.
pub fn pixley_type1_on_three() -> Operation {
    let d = three_domain();
    let mut table = Vec::with_capacity(27);
    for t in d.tuples(3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        // rows (x,x,y) and (y,x,x) take the first argument, row (x,y,x)
        // the second; pairwise-distinct triples also take the first
        table.push(if a == c && a != b { b } else { a });
    }
    Operation::new(d, 3, table).expect("pixley fixture")
}

/// The lexicographically least type-1 semiprojection on `{0,1,2}`.
pub fn semiprojection_type1_on_three() -> Operation {
    let class = crate::classify::SharpClass::Semiprojection(1);
    crate::enumerate::sharp_ternary_by_pattern(three_domain(), class)
        .into_iter()
        .next()
        .expect("pattern class is nonempty")
}

/// A quaternary semiprojection on `{0,1,2,3}`: the first projection except
/// on pairwise-distinct 4-tuples, where it returns the second argument.
pub fn quaternary_semiprojection() -> Result<Operation> {
    let d = FiniteDomain::new(4)?;
    let mut table = Vec::with_capacity(256);
    for t in d.tuples(4) {
        table.push(if crate::classify::pairwise_distinct(&t) {
            t[1]
        } else {
            t[0]
        });
    }
    Operation::new(d, 4, table)
}

/// Weighting −1 on each projection and +1 on each operation of a related
/// triple (the three cyclic variants of `base`).
pub fn related_triple_weighting(base: &Operation) -> Result<Weighting> {
    let d = base.domain();
    let variants = crate::ops::cyclic_variants(base);
    let mut entries: Vec<(Operation, Rational)> = (1..=3)
        .map(|i| Ok((Operation::projection(d, 3, i)?, rational_from_int(-1))))
        .collect::<Result<Vec<_>>>()?;
    for v in variants {
        entries.push((v, rational_from_int(1)));
    }
    Weighting::new(d, 3, entries)
}
