//! The bundled example-verification suite: self-contained checks of the
//! classification taxonomy, the cyclic transition law, the quaternary
//! sharpness collapse, the submodularity characterization, the rectangular
//! band identities, the three-element weighting and cost function, and the
//! not-all-equal semiprojection census.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use wclones::classify::{classify, SharpClass};
use wclones::domain::FiniteDomain;
use wclones::enumerate::{enumerate_operations, sharp_ternary_by_pattern, sharp_ternary_classes};
use wclones::error::Result;
use wclones::fixtures;
use wclones::improve::{is_polymorphism, is_weighted_polymorphism};
use wclones::instance::{Constraint, VcspInstance};
use wclones::ops::cyclic_variants;
use wclones::rational::{ExtRational, Rational};
use wclones::relation::WeightedRelation;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_owned(),
        pass,
        detail: detail.into(),
    }
}

pub fn run_paper_examples() -> Result<Vec<Check>> {
    Ok(vec![
        sharp_census()?,
        cyclic_transition_law(),
        quaternary_sharp_collapse()?,
        submodularity_characterization()?,
        rectangular_band_identities()?,
        three_element_weighting()?,
        nae_semiprojection_census()?,
    ])
}

/// Census of the sharp-ternary taxonomy: on the two-element domain the
/// three semiprojection columns coincide with projections, leaving exactly
/// five sharp operations; on three elements every column is inhabited by
/// 729 operations (728 for the semiprojection columns, which exclude the
/// projection).
fn sharp_census() -> Result<Check> {
    let d2 = FiniteDomain::new(2)?;
    let mut counts: BTreeMap<SharpClass, usize> = BTreeMap::new();
    for op in enumerate_operations(d2, 3, None, None)? {
        let op = op?;
        let c = classify(&op);
        if c.sharp {
            *counts
                .entry(c.sharp_class.expect("sharp ternary ops are classified"))
                .or_insert(0) += 1;
        }
    }
    let mut pass = true;
    for class in sharp_ternary_classes() {
        let expected = match class {
            SharpClass::Semiprojection(_) => 0,
            _ => 1,
        };
        pass &= counts.get(&class).copied().unwrap_or(0) == expected;
    }
    let total: usize = counts.values().sum();
    pass &= total == 5;

    let d3 = FiniteDomain::new(3)?;
    let mut d3_counts = Vec::new();
    for class in sharp_ternary_classes() {
        let ops = sharp_ternary_by_pattern(d3, class);
        let expected = match class {
            SharpClass::Semiprojection(_) => 728,
            _ => 729,
        };
        pass &= ops.len() == expected;
        for op in ops.iter().take(30) {
            pass &= classify(op).sharp_class == Some(class);
        }
        d3_counts.push(ops.len());
    }
    Ok(check(
        "sharp ternary census",
        pass,
        format!(
            "two-element domain: {total} sharp operations (the semiprojection \
             columns collapse onto projections); three-element column sizes {d3_counts:?}"
        ),
    ))
}

fn cyclic_transition_law() -> Check {
    let d2 = FiniteDomain::new(2).expect("two-element domain");
    let mut pass = true;
    let mut checked = 0usize;
    for class in sharp_ternary_classes() {
        for op in sharp_ternary_by_pattern(d2, class) {
            for (r, variant) in cyclic_variants(&op).iter().enumerate() {
                pass &= classify(variant).sharp_class == Some(class.cyclic_shift(r));
                checked += 1;
            }
        }
    }
    check(
        "cyclic transition law",
        pass,
        format!("{checked} transitions on the two-element domain"),
    )
}

fn quaternary_sharp_collapse() -> Result<Check> {
    let d2 = FiniteDomain::new(2)?;
    let mut total = 0usize;
    let mut exceptions = 0usize;
    for op in enumerate_operations(d2, 4, None, None)? {
        let op = op?;
        total += 1;
        let c = classify(&op);
        if c.sharp && !matches!(c.sharp_class, Some(SharpClass::Semiprojection(_))) {
            exceptions += 1;
        }
    }
    Ok(check(
        "quaternary sharp operations are semiprojections",
        total == 65_536 && exceptions == 0,
        format!("{total} operations, {exceptions} exceptions"),
    ))
}

/// A Boolean binary relation is improved by the min/max weighting exactly
/// when it satisfies the submodularity inequality.
fn submodularity_characterization() -> Result<Check> {
    let d = fixtures::boolean_domain();
    let w = fixtures::submodular_weighting();
    let min = fixtures::boolean_min();
    let max = fixtures::boolean_max();
    let mut agreement = true;
    let mut submodular_count = 0usize;
    for code in 0..4usize.pow(4) {
        let mut c = code;
        let mut values = Vec::with_capacity(4);
        for _ in 0..4 {
            values.push(ExtRational::from_int((c % 4) as i64));
            c /= 4;
        }
        let phi = WeightedRelation::new(d, 2, values)?;
        // direct submodularity: x and y range over all pairs of tuples
        let mut submodular = true;
        for x in d.tuples(2) {
            for y in d.tuples(2) {
                let lo = min.apply_tuples(&[&x, &y]);
                let hi = max.apply_tuples(&[&x, &y]);
                let lhs = phi.value(&lo).as_finite().unwrap().clone()
                    + phi.value(&hi).as_finite().unwrap();
                let rhs =
                    phi.value(&x).as_finite().unwrap().clone() + phi.value(&y).as_finite().unwrap();
                submodular &= lhs <= rhs;
            }
        }
        if submodular {
            submodular_count += 1;
        }
        let improved = is_weighted_polymorphism(&w, &phi, None)?.improves();
        agreement &= improved == submodular;
    }
    Ok(check(
        "submodularity characterization",
        agreement && submodular_count > 0,
        format!(
            "{submodular_count} of 256 sampled relations are submodular; improvement agrees on all"
        ),
    ))
}

fn rectangular_band_identities() -> Result<Check> {
    let band = fixtures::rectangular_band_op()?;
    let d = band.domain();
    let class = classify(&band);
    let mut pass = class.idempotent && class.projection.is_none();
    let mut triples = 0usize;
    for x in d.labels() {
        for y in d.labels() {
            for z in d.labels() {
                triples += 1;
                pass &= band.eval(&[band.eval(&[x, y]), z]) == band.eval(&[x, band.eval(&[y, z])]);
                pass &= band.eval(&[x, band.eval(&[y, z])]) == band.eval(&[x, z]);
            }
        }
    }
    let weighting = fixtures::rectangular_band_weighting()?;
    pass &= weighting.is_valid() && weighting.is_positive();
    Ok(check(
        "rectangular band identities",
        pass,
        format!("idempotent, associative, collapsing on all {triples} triples"),
    ))
}

fn three_element_weighting() -> Result<Check> {
    let w = fixtures::split_min_weighting();
    let phi = fixtures::maxcut_gadget_relation();
    let report = w.validate();
    let mut pass = report.is_valid() && report.positive;
    // the support is conservative but not commutative
    for op in w.support() {
        let c = classify(op);
        pass &= c.conservative && c.commutative == Some(false);
    }
    pass &= is_weighted_polymorphism(&w, &phi, None)?.improves();
    let inst = VcspInstance::new(
        fixtures::three_domain(),
        2,
        vec![Constraint {
            relation: phi,
            scope: vec![0, 1],
        }],
    )?;
    let res = inst.solve_bruteforce(None, None)?;
    pass &= res.optimum == ExtRational::Finite(Rational::from_integer(0.into()));
    pass &= res.argmin == vec![vec![0, 1], vec![1, 0]];
    Ok(check(
        "three-element weighting and cost function",
        pass,
        "valid positive non-commutative weighting improves the cost function; \
         argmin is {(0,1),(1,0)}",
    ))
}

fn nae_semiprojection_census() -> Result<Check> {
    let nae = fixtures::nae_relation();
    let d3 = fixtures::three_domain();
    let mut count = 0usize;
    let mut pass = true;
    for t in 1..=3 {
        for op in sharp_ternary_by_pattern(d3, SharpClass::Semiprojection(t)) {
            count += 1;
            pass &= is_polymorphism(&op, &nae)?.holds();
        }
    }
    pass &= count == 3 * 728;
    Ok(check(
        "not-all-equal semiprojection census",
        pass,
        format!("{count} ternary semiprojections preserve the relation"),
    ))
}

/// The embedded fixtures as a named JSON bundle.
pub fn fixture_bundle() -> Result<Value> {
    let mut map = serde_json::Map::new();
    let mut put = |name: &str, value: Value| {
        map.insert(name.to_owned(), value);
    };
    put(
        "submodular_weighting",
        serde_json::to_value(fixtures::submodular_weighting()).unwrap(),
    );
    put(
        "split_min_weighting",
        serde_json::to_value(fixtures::split_min_weighting()).unwrap(),
    );
    put(
        "maxcut_gadget_relation",
        serde_json::to_value(fixtures::maxcut_gadget_relation()).unwrap(),
    );
    put(
        "xor_relation",
        serde_json::to_value(fixtures::xor_relation()).unwrap(),
    );
    put(
        "or_relation",
        serde_json::to_value(fixtures::or_relation()).unwrap(),
    );
    put(
        "nae_relation",
        serde_json::to_value(fixtures::nae_relation()).unwrap(),
    );
    put(
        "rectangular_band_op",
        serde_json::to_value(fixtures::rectangular_band_op()?).unwrap(),
    );
    put(
        "rectangular_band_weighting",
        serde_json::to_value(fixtures::rectangular_band_weighting()?).unwrap(),
    );
    put(
        "boolean_majority",
        serde_json::to_value(fixtures::boolean_majority()).unwrap(),
    );
    put(
        "boolean_minority",
        serde_json::to_value(fixtures::boolean_minority()).unwrap(),
    );
    put(
        "pixley_type1_on_three",
        serde_json::to_value(fixtures::pixley_type1_on_three()).unwrap(),
    );
    put(
        "semiprojection_type1_on_three",
        serde_json::to_value(fixtures::semiprojection_type1_on_three()).unwrap(),
    );
    put(
        "quaternary_semiprojection",
        serde_json::to_value(fixtures::quaternary_semiprojection()?).unwrap(),
    );
    put(
        "unary_core_fixture",
        serde_json::to_value(fixtures::unary_core_fixture()).unwrap(),
    );
    Ok(Value::Object(map))
}
