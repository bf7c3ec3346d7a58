//! Searching for weighted polymorphisms as exact linear programs, and the
//! core reduction of valued constraint languages.

use num_traits::{Signed, Zero};

use crate::clone_gen::CloneSlice;
use crate::domain::{FiniteDomain, Label};
use crate::enumerate::enumerate_operations;
use crate::error::{Error, Result};
use crate::improve::{for_each_family, is_polymorphism, is_weighted_polymorphism};
use crate::ops::Operation;
use crate::rational::Rational;
use crate::relation::{Language, WeightedRelation};
use crate::simplex::{solve_standard, LpOutcome, StandardLp};
use crate::weighting::Weighting;

/// Where the candidate operations of a search come from.
pub enum WpolPool<'a> {
    /// Enumerate every operation of the arity (subject to the enumeration
    /// cap) and keep the polymorphisms of the language.
    Enumerate { cap: Option<u128> },
    /// An explicit operation list, filtered to polymorphisms.
    Ops(&'a [Operation]),
    /// The matching layer of a clone slice, filtered to polymorphisms.
    Slice(&'a CloneSlice),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpolSearchReport {
    /// Non-projection operations the LP ranged over.
    pub pool_size: usize,
    /// Candidate operations discarded because they are not polymorphisms.
    pub discarded: usize,
    /// Improvement inequalities (one per relation and argument family).
    pub families: usize,
    /// The LP optimum: total non-projection weight achievable.
    pub objective: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpolSearchOutcome {
    /// A positive weighting over the pool improving every relation.
    Found {
        weighting: Weighting,
        report: WpolSearchReport,
    },
    /// No positive weighting over this pool improves the whole language.
    None { report: WpolSearchReport },
}

impl WpolSearchOutcome {
    pub fn weighting(&self) -> Option<&Weighting> {
        match self {
            WpolSearchOutcome::Found { weighting, .. } => Some(weighting),
            WpolSearchOutcome::None { .. } => None,
        }
    }

    pub fn report(&self) -> &WpolSearchReport {
        match self {
            WpolSearchOutcome::Found { report, .. } | WpolSearchOutcome::None { report } => report,
        }
    }
}

/// Searches for a positive `arity`-ary weighting over the pool that improves
/// every relation of the language.
///
/// The search space is restricted, without loss of generality, to weightings
/// whose projection weights are nonpositive: cyclic symmetrization turns any
/// positive weighted polymorphism into one of that shape over the same
/// (cyclically closed) pool. The feasibility problem is solved as the exact
/// LP maximizing total non-projection weight under box bounds; a positive
/// optimum yields a witness weighting, optimum zero attests that none exists
/// over this pool.
pub fn find_weighted_polymorphism(
    language: &Language,
    arity: usize,
    pool: WpolPool,
) -> Result<WpolSearchOutcome> {
    let domain = language.domain();
    let candidates: Vec<Operation> = match pool {
        WpolPool::Enumerate { cap } => {
            enumerate_operations(domain, arity, None, cap)?.collect::<Result<Vec<_>>>()?
        }
        WpolPool::Ops(ops) => {
            for op in ops {
                if op.domain() != domain {
                    return Err(Error::input("pool operation on a different domain"));
                }
                if op.arity() != arity {
                    return Err(Error::input(format!(
                        "pool operation of arity {} in a search of arity {arity}",
                        op.arity()
                    )));
                }
            }
            ops.to_vec()
        }
        WpolPool::Slice(slice) => {
            if slice.domain() != domain {
                return Err(Error::input("slice on a different domain"));
            }
            if slice.max_arity() < arity {
                return Err(Error::input(format!(
                    "slice only reaches arity {}, search needs {arity}",
                    slice.max_arity()
                )));
            }
            slice.layer(arity).to_vec()
        }
    };

    let mut pool_ops: Vec<Operation> = Vec::new();
    let mut discarded = 0usize;
    'next: for op in candidates {
        if op.is_projection() {
            continue;
        }
        for (_, phi) in language.relations() {
            if !is_polymorphism(&op, phi)?.holds() {
                discarded += 1;
                continue 'next;
            }
        }
        pool_ops.push(op);
    }
    pool_ops.sort();
    pool_ops.dedup();

    let n_ops = pool_ops.len();
    let n_vars = n_ops + arity; // plus p_i = -weight(e_i) >= 0
    let one = Rational::from_integer(1.into());

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();

    // zero-sum as a pair of inequalities
    let mut zs = vec![one.clone(); n_ops];
    zs.extend(vec![-one.clone(); arity]);
    rows.push(zs.iter().map(|v| -v).collect());
    rows.push(zs);
    rhs.push(Rational::zero());
    rhs.push(Rational::zero());

    // one improvement inequality per relation and argument family
    let mut families = 0usize;
    for (_, phi) in language.relations() {
        let dom = phi.feasible_tuples();
        let mut row_err: Option<Error> = None;
        for_each_family(&dom, arity, |family| {
            let mut row = Vec::with_capacity(n_vars);
            for op in &pool_ops {
                let image = op.apply_tuples(family);
                match phi.value(&image).as_finite() {
                    Some(v) => row.push(v.clone()),
                    None => {
                        row_err = Some(Error::Structural(
                            "pool operation is not a polymorphism after filtering".into(),
                        ));
                        return false;
                    }
                }
            }
            for t in family {
                let v = phi
                    .value(t)
                    .as_finite()
                    .expect("family tuples are feasible")
                    .clone();
                row.push(-v);
            }
            rows.push(row);
            rhs.push(Rational::zero());
            families += 1;
            true
        });
        if let Some(e) = row_err {
            return Err(e);
        }
    }

    // box bounds make the homogeneous system bounded
    for j in 0..n_vars {
        let mut row = vec![Rational::zero(); n_vars];
        row[j] = one.clone();
        rows.push(row);
        rhs.push(one.clone());
    }

    let mut objective = vec![one.clone(); n_ops];
    objective.extend(vec![Rational::zero(); arity]);

    let lp = StandardLp {
        objective,
        rows,
        rhs,
    };
    let (value, primal) = match solve_standard(&lp)? {
        LpOutcome::Optimal { value, primal, .. } => (value, primal),
        LpOutcome::Unbounded => {
            return Err(Error::Structural(
                "box-bounded feasibility LP reported unbounded".into(),
            ))
        }
    };
    let report = WpolSearchReport {
        pool_size: n_ops,
        discarded,
        families,
        objective: value.clone(),
    };
    if !value.is_positive() {
        return Ok(WpolSearchOutcome::None { report });
    }

    let mut entries: Vec<(Operation, Rational)> = Vec::new();
    for (op, w) in pool_ops.iter().zip(&primal) {
        if !w.is_zero() {
            entries.push((op.clone(), w.clone()));
        }
    }
    for i in 0..arity {
        let p = &primal[n_ops + i];
        if !p.is_zero() {
            entries.push((Operation::projection(domain, arity, i + 1)?, -p));
        }
    }
    let weighting = Weighting::new(domain, arity, entries)?;
    if !weighting.is_valid() || !weighting.is_positive() {
        return Err(Error::Structural(
            "LP produced a weighting violating its own constraints".into(),
        ));
    }
    for (_, phi) in language.relations() {
        if !is_weighted_polymorphism(&weighting, phi, None)?.improves() {
            return Err(Error::Structural(
                "LP solution fails the exact improvement recheck".into(),
            ));
        }
    }
    Ok(WpolSearchOutcome::Found { weighting, report })
}

/// One step of a core reduction: the chosen unary operation and its range
/// (labels of the domain it acted on, sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryMapStep {
    pub op: Operation,
    pub range: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreReduction {
    pub language: Language,
    pub domain: FiniteDomain,
    /// The reduction steps in order; empty when the input was already a
    /// core.
    pub chain: Vec<UnaryMapStep>,
}

/// Shrinks a language to a core: while some positive unary weighted
/// polymorphism puts weight on a non-bijective operation, restrict every
/// relation to the range of such an operation with the smallest range
/// (ties broken by table order) and relabel. Ranges of size one are never
/// applied, because domains here always have at least two labels.
pub fn core_reduce(language: &Language) -> Result<CoreReduction> {
    let mut current = language.clone();
    let mut chain: Vec<UnaryMapStep> = Vec::new();
    loop {
        match reduction_step(&current)? {
            Some((next, step)) => {
                current = next;
                chain.push(step);
            }
            None => {
                let domain = current.domain();
                return Ok(CoreReduction {
                    language: current,
                    domain,
                    chain,
                });
            }
        }
    }
}

fn reduction_step(language: &Language) -> Result<Option<(Language, UnaryMapStep)>> {
    let domain = language.domain();
    let unary_pool: Vec<Operation> =
        enumerate_operations(domain, 1, None, None)?.collect::<Result<Vec<_>>>()?;
    let mut pool: Vec<Operation> = Vec::new();
    'next: for op in unary_pool {
        if op.is_projection() {
            continue;
        }
        for (_, phi) in language.relations() {
            if !is_polymorphism(&op, phi)?.holds() {
                continue 'next;
            }
        }
        pool.push(op);
    }

    // candidates in ascending (range size, table) order
    let mut candidates: Vec<(usize, &Operation, Vec<Label>)> = pool
        .iter()
        .map(|op| {
            let mut range: Vec<Label> = op.table().to_vec();
            range.sort_unstable();
            range.dedup();
            (range.len(), op, range)
        })
        .filter(|(size, _, _)| *size < domain.size())
        .collect();
    candidates.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    for (size, op, range) in candidates {
        if size < 2 {
            continue;
        }
        if unary_weighting_with(language, &pool, op)? {
            let reduced = restrict_language(language, &range)?;
            return Ok(Some((
                reduced,
                UnaryMapStep {
                    op: op.clone(),
                    range,
                },
            )));
        }
    }
    Ok(None)
}

/// Is there a valid positive unary weighted polymorphism of the language
/// giving positive weight to `target`? Unary weightings always carry
/// nonpositive weight on the single projection, so the LP over nonnegative
/// support weights is exact, not a relaxation.
fn unary_weighting_with(
    language: &Language,
    pool: &[Operation],
    target: &Operation,
) -> Result<bool> {
    let one = Rational::from_integer(1.into());
    let target_idx = pool
        .iter()
        .position(|op| op == target)
        .ok_or_else(|| Error::input("target operation missing from the pool"))?;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (_, phi) in language.relations() {
        for x in phi.feasible_tuples() {
            let base = phi.value(&x).as_finite().expect("feasible").clone();
            let row: Vec<Rational> = pool
                .iter()
                .map(|g| {
                    let image = g.apply_tuples(&[&x]);
                    let v = phi
                        .value(&image)
                        .as_finite()
                        .expect("pool operations are polymorphisms");
                    v - &base
                })
                .collect();
            rows.push(row);
            rhs.push(Rational::zero());
        }
    }
    for j in 0..pool.len() {
        let mut row = vec![Rational::zero(); pool.len()];
        row[j] = one.clone();
        rows.push(row);
        rhs.push(one.clone());
    }
    let mut objective = vec![Rational::zero(); pool.len()];
    objective[target_idx] = one;
    let lp = StandardLp {
        objective,
        rows,
        rhs,
    };
    match solve_standard(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
        LpOutcome::Unbounded => Err(Error::Structural(
            "box-bounded unary LP reported unbounded".into(),
        )),
    }
}

fn restrict_language(language: &Language, kept: &[Label]) -> Result<Language> {
    let relations: Vec<(String, WeightedRelation)> = language
        .relations()
        .map(|(name, phi)| Ok((name.to_owned(), phi.restricted(kept)?)))
        .collect::<Result<Vec<_>>>()?;
    Language::new(FiniteDomain::new(kept.len())?, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::OpFilter;
    use crate::fixtures;
    use crate::improve::is_weighted_polymorphism;

    fn lang_of(name: &str, phi: WeightedRelation) -> Language {
        Language::new(phi.domain(), [(name.to_owned(), phi)]).unwrap()
    }

    #[test]
    fn or_language_has_a_binary_weighted_polymorphism() {
        let lang = lang_of("or", fixtures::or_relation());
        let outcome =
            find_weighted_polymorphism(&lang, 2, WpolPool::Enumerate { cap: None }).unwrap();
        let w = outcome.weighting().expect("a positive weighting exists");
        assert!(w.is_valid() && w.is_positive());
        // the submodular weighting is a feasible point of the same system
        assert!(is_weighted_polymorphism(
            &fixtures::submodular_weighting(),
            &fixtures::or_relation(),
            None
        )
        .unwrap()
        .improves());
    }

    #[test]
    fn xor_has_none_over_the_idempotent_pool() {
        let lang = lang_of("xor", fixtures::xor_relation());
        let pool: Vec<Operation> = crate::enumerate::enumerate_operations(
            fixtures::boolean_domain(),
            2,
            Some(OpFilter::Idempotent),
            None,
        )
        .unwrap()
        .collect::<Result<Vec<_>>>()
        .unwrap();
        let outcome = find_weighted_polymorphism(&lang, 2, WpolPool::Ops(&pool)).unwrap();
        match outcome {
            WpolSearchOutcome::None { report } => {
                assert_eq!(report.pool_size, 2); // min and max
                assert!(report.objective.is_zero());
            }
            WpolSearchOutcome::Found { weighting, .. } => {
                panic!("no idempotent improvement should exist, got {weighting:?}")
            }
        }
    }

    #[test]
    fn empty_language_yields_some_positive_weighting() {
        let lang = Language::new(fixtures::boolean_domain(), []).unwrap();
        let o1 = find_weighted_polymorphism(&lang, 2, WpolPool::Enumerate { cap: None }).unwrap();
        let w1 = o1
            .weighting()
            .expect("unconstrained search succeeds")
            .clone();
        // deterministic: a second run returns the identical weighting
        let o2 = find_weighted_polymorphism(&lang, 2, WpolPool::Enumerate { cap: None }).unwrap();
        assert_eq!(Some(&w1), o2.weighting());
    }

    #[test]
    fn unary_fixture_reduces_to_two_labels() {
        let lang = lang_of("phi", fixtures::unary_core_fixture());
        let red = core_reduce(&lang).unwrap();
        assert_eq!(red.domain.size(), 2);
        assert_eq!(red.chain.len(), 1);
        assert_eq!(red.chain[0].range, vec![0, 1]);
        let phi = red.language.get("phi").unwrap();
        assert!(phi
            .values()
            .iter()
            .all(|v| *v == crate::rational::ExtRational::zero()));
    }

    #[test]
    fn xor_language_is_already_a_core() {
        let lang = lang_of("xor", fixtures::xor_relation());
        let red = core_reduce(&lang).unwrap();
        assert!(red.chain.is_empty());
        assert_eq!(red.language, lang);
    }

    #[test]
    fn boolean_equality_language_is_left_unchanged() {
        let d = fixtures::boolean_domain();
        let lang = lang_of("eq", fixtures::equality_relation(d));
        let red = core_reduce(&lang).unwrap();
        assert!(red.chain.is_empty());
        assert_eq!(red.domain.size(), 2);
    }
}
