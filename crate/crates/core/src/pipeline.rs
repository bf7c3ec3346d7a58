//! The constructive witness pipeline.
//!
//! Starting from a positive weighting whose support clone is a rigid core,
//! the pipeline produces a weighting whose support matches one of the
//! guaranteed shapes: binary idempotent operations, majority operations
//! only, minority operations only, majority total 2 with minority total 1,
//! or `k`-ary semiprojections. Every transformation is recorded as a
//! construction tree rooted at the input generator, so the final witness
//! carries a replayable certificate.
//!
//! The ternary eliminations follow a fixed scheme: normalize to cyclic
//! symmetric form with projection weights −1, remove Pixley weight, remove
//! semiprojection weight, then rebalance majority against minority. The
//! removals assemble a linear system over superpositions with related
//! triples and ask the Gordan solver for a nonzero nonnegative solution;
//! the kernel side is mathematically guaranteed here, so a dual outcome is
//! surfaced as a hard theorem-contradiction error rather than handled.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::certificate::ConstructionTree;
use crate::classify::{classify, SharpClass};
use crate::clone_gen::{generate_clone_on, CloneSlice, DEFAULT_OP_CAP};
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::gordan::{solve_gordan, GordanOutcome, QMatrix};
use crate::ops::{cyclic_projection_tuples, cyclic_variants, identification_tuple, Operation};
use crate::rational::{rational_from_int, Rational};
use crate::weighting::Weighting;

/// The shape of a witness weighting's support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    BinaryIdempotent,
    MajorityOnly,
    MinorityOnly,
    /// Majority operations with total weight exactly 2 and minority
    /// operations with total weight exactly 1.
    MajMin21,
    /// Semiprojections of the given arity (at least 3).
    Semiprojections(usize),
}

/// Ordered log of what the pipeline did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStep {
    SelectedGenerator {
        index: usize,
        arity: usize,
    },
    RigidCoreChecked {
        unary_clone_size: usize,
    },
    Symmetrized {
        arity: usize,
        scale: String,
    },
    IdentifiedArguments {
        i: usize,
        j: usize,
        from_arity: usize,
    },
    SliceGenerated {
        max_arity: usize,
        op_count: usize,
        op_cap: usize,
    },
    /// No support weight on the class to eliminate; the identity solution
    /// of the linear system leaves the weighting unchanged.
    EliminationSkipped {
        class: String,
    },
    AllPixleySupport {
        majority_total: String,
        semiprojection_residue: String,
    },
    GordanSolved {
        class: String,
        /// Operations of the target class in the slice layer.
        rows_total: usize,
        /// Distinct nonzero rows actually sent to the solver.
        rows: usize,
        cols: usize,
        solution: Vec<String>,
    },
    Balanced {
        majority_total: String,
        minority_total: String,
        /// Raw weight left on the first projection before the final
        /// symmetrization in the minority-heavy case.
        raw_projection_weight: Option<String>,
    },
    CaseVerified {
        case: WitnessCase,
    },
}

/// Result of a witness run: the weighting, its case, a certificate tree
/// rooted at the input generator, and the step log.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub witness: Weighting,
    pub case: WitnessCase,
    pub certificate: ConstructionTree,
    pub trace: Vec<TraceStep>,
}

/// Resource limits of a pipeline run.
#[derive(Clone, Copy, Debug)]
pub struct PipelineCaps {
    /// Cap on the operation count of generated clone slices.
    pub op_cap: usize,
}

impl Default for PipelineCaps {
    fn default() -> Self {
        PipelineCaps {
            op_cap: DEFAULT_OP_CAP,
        }
    }
}

/// A weighting together with the construction tree that produces it.
#[derive(Clone, Debug)]
pub struct CertifiedWeighting {
    weighting: Weighting,
    tree: ConstructionTree,
}

impl CertifiedWeighting {
    /// Roots a certificate at a generator weighting.
    pub fn root(w: Weighting) -> Self {
        CertifiedWeighting {
            tree: ConstructionTree::leaf(w.clone()),
            weighting: w,
        }
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn tree(&self) -> &ConstructionTree {
        &self.tree
    }

    pub fn into_parts(self) -> (Weighting, ConstructionTree) {
        (self.weighting, self.tree)
    }

    fn superpose(&self, gs: &[Operation]) -> Result<CertifiedWeighting> {
        Ok(CertifiedWeighting {
            weighting: self.weighting.superpose(gs, false)?,
            tree: ConstructionTree::superpose(self.tree.clone(), gs.to_vec()),
        })
    }

    /// `Σ c_i·t_i` with nonnegative coefficients; zero terms are dropped
    /// from the tree.
    fn combine(terms: &[(Rational, &CertifiedWeighting)]) -> Result<CertifiedWeighting> {
        let weighted: Vec<(Rational, &Weighting)> = terms
            .iter()
            .map(|(c, cw)| (c.clone(), &cw.weighting))
            .collect();
        let weighting = Weighting::scaled_sum(&weighted)?;
        let one = rational_from_int(1);
        let mut parts = terms.iter().filter(|(c, _)| !c.is_zero()).map(|(c, cw)| {
            if *c == one {
                cw.tree.clone()
            } else {
                ConstructionTree::scale(c.clone(), cw.tree.clone())
            }
        });
        let head = parts
            .next()
            .ok_or_else(|| Error::input("empty certified combination"))?;
        Ok(CertifiedWeighting {
            weighting,
            tree: ConstructionTree::sum(head, parts),
        })
    }

    fn scaled(&self, c: Rational) -> Result<CertifiedWeighting> {
        CertifiedWeighting::combine(&[(c, self)])
    }

    /// Certified cyclic symmetrization; mirrors `Weighting::symmetrize`.
    fn symmetrize(&self, trace: &mut Vec<TraceStep>) -> Result<CertifiedWeighting> {
        if !self.weighting.is_positive() {
            return Err(Error::input("symmetrize needs a positive weighting"));
        }
        let arity = self.weighting.arity();
        let tuples = cyclic_projection_tuples(self.weighting.domain(), arity)?;
        let parts = tuples
            .iter()
            .map(|gs| self.superpose(gs))
            .collect::<Result<Vec<_>>>()?;
        let one = rational_from_int(1);
        let terms: Vec<(Rational, &CertifiedWeighting)> =
            parts.iter().map(|p| (one.clone(), p)).collect();
        let summed = CertifiedWeighting::combine(&terms)?;
        let e1 = Operation::projection(self.weighting.domain(), arity, 1)?;
        let w = summed.weighting.weight(&e1);
        if !w.is_negative() {
            return Err(Error::Structural(format!(
                "cyclic sum of a positive weighting must be negative on projections, got {w}"
            )));
        }
        let scale = w.abs().recip();
        let out = summed.scaled(scale.clone())?;
        trace.push(TraceStep::Symmetrized {
            arity,
            scale: scale.to_string(),
        });
        debug_assert_eq!(out.weighting, self.weighting.symmetrize()?);
        Ok(out)
    }
}

/// Lazily generated clone slice: witness runs only pay for the ternary
/// closure when an elimination actually assembles a linear system.
pub enum SliceSource {
    Ready(CloneSlice),
    Deferred {
        domain: FiniteDomain,
        generators: Vec<Operation>,
        op_cap: usize,
        cache: Option<CloneSlice>,
    },
}

impl SliceSource {
    pub fn deferred(domain: FiniteDomain, generators: Vec<Operation>, op_cap: usize) -> Self {
        SliceSource::Deferred {
            domain,
            generators,
            op_cap,
            cache: None,
        }
    }

    /// The slice, generating it to arity 3 on first use.
    pub fn get(&mut self, trace: &mut Vec<TraceStep>) -> Result<&CloneSlice> {
        match self {
            SliceSource::Ready(slice) => Ok(slice),
            SliceSource::Deferred {
                domain,
                generators,
                op_cap,
                cache,
            } => {
                if cache.is_none() {
                    let slice = generate_clone_on(*domain, generators, 3, *op_cap)?;
                    trace.push(TraceStep::SliceGenerated {
                        max_arity: 3,
                        op_count: slice.op_count(),
                        op_cap: *op_cap,
                    });
                    *cache = Some(slice);
                }
                Ok(cache.as_ref().expect("just generated"))
            }
        }
    }
}

fn support_classes(w: &Weighting) -> Vec<(Operation, Option<SharpClass>)> {
    w.support()
        .map(|op| (op.clone(), classify(op).sharp_class))
        .collect()
}

/// Repeatedly identifies two arguments until every support operation is
/// sharp, superposing with the projection tuple that realizes the
/// identification (always proper). Each step picks the lexicographically
/// first position pair sending some support operation to a non-projection.
pub fn reduce_to_sharp(
    cw: &CertifiedWeighting,
    trace: &mut Vec<TraceStep>,
) -> Result<CertifiedWeighting> {
    let mut current = cw.clone();
    loop {
        let w = &current.weighting;
        let k = w.arity();
        if k == 1 {
            return Err(Error::Structural(
                "arity descent reached 1: a positive weighting in a rigid core \
                 cannot have unary non-projection support"
                    .into(),
            ));
        }
        let all_sharp = w.support().all(|op| classify(op).sharp);
        if all_sharp {
            return Ok(current);
        }
        let domain = w.domain();
        let mut chosen: Option<(usize, usize)> = None;
        'pairs: for i in 1..=k {
            for j in (i + 1)..=k {
                let gs = identification_tuple(domain, k, i, j)?;
                for op in w.support() {
                    let image = crate::ops::superpose_op(op, &gs)?;
                    if !image.is_projection() {
                        chosen = Some((i, j));
                        break 'pairs;
                    }
                }
            }
        }
        let (i, j) = chosen.ok_or_else(|| {
            Error::Structural(
                "no identification keeps a non-projection: support contains a \
                 non-sharp operation whose identifications are all projections"
                    .into(),
            )
        })?;
        let gs = identification_tuple(domain, k, i, j)?;
        current = current.superpose(&gs)?;
        trace.push(TraceStep::IdentifiedArguments {
            i,
            j,
            from_arity: k,
        });
        if !current.weighting.is_positive() {
            return Err(Error::Structural(
                "identification lost positivity, which positive weights cannot do".into(),
            ));
        }
    }
}

/// The related triple of a ternary sharp operation: for a type-1 Pixley
/// operation `(p, p^(3,1,2), p^(2,3,1))` lands in types (1, 2, 3); for a
/// type-1 semiprojection the same types come from `(s, s^(2,3,1),
/// s^(3,1,2))`.
fn related_triple(base: &Operation, class: SharpClass) -> Result<[Operation; 3]> {
    let variants = cyclic_variants(base);
    let [v0, v1, v2]: [Operation; 3] = variants
        .try_into()
        .map_err(|_| Error::input("related triples need ternary operations"))?;
    match class {
        SharpClass::Pixley(1) => Ok([v0, v2, v1]),
        SharpClass::Semiprojection(1) => Ok([v0, v1, v2]),
        other => Err(Error::input(format!(
            "related triples are anchored at type-1 operations, got {other:?}"
        ))),
    }
}

/// Which sharp class an elimination targets.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Pixley,
    Semiprojections,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Pixley => "pixley",
            Target::Semiprojections => "semiprojections",
        }
    }

    fn matches(self, class: Option<SharpClass>) -> bool {
        match self {
            Target::Pixley => matches!(class, Some(SharpClass::Pixley(_))),
            Target::Semiprojections => matches!(class, Some(SharpClass::Semiprojection(_))),
        }
    }

    fn type1(self) -> SharpClass {
        match self {
            Target::Pixley => SharpClass::Pixley(1),
            Target::Semiprojections => SharpClass::Semiprojection(1),
        }
    }
}

/// Shared structure of the two ternary eliminations: assemble the matrix
/// `A[op][column] = w[f,g,h](op)` over the identity column and the related
/// triples of the slice's type-1 operations, get a nonzero nonnegative
/// kernel vector, and combine the superpositions it weights.
fn eliminate_class(
    cw: &CertifiedWeighting,
    slice: &mut SliceSource,
    target: Target,
    trace: &mut Vec<TraceStep>,
) -> Result<CertifiedWeighting> {
    let w = &cw.weighting;
    let domain = w.domain();
    let has_target_weight = w
        .entries()
        .any(|(op, _)| target.matches(classify(op).sharp_class));
    if !has_target_weight {
        trace.push(TraceStep::EliminationSkipped {
            class: target.name().to_owned(),
        });
        return Ok(cw.clone());
    }

    let slice = slice.get(trace)?;
    if slice.domain() != domain {
        return Err(Error::input("slice domain does not match the weighting"));
    }
    for op in w.support() {
        if !slice.contains(op) {
            return Err(Error::input(format!(
                "support operation {op:?} is not in the supplied clone slice"
            )));
        }
    }

    let mut targets: Vec<Operation> = Vec::new();
    let mut type1: Vec<Operation> = Vec::new();
    for op in slice.layer(3) {
        let class = classify(op).sharp_class;
        if target.matches(class) {
            targets.push(op.clone());
            if class == Some(target.type1()) {
                type1.push(op.clone());
            }
        }
    }
    if targets.is_empty() {
        return Err(Error::Structural(format!(
            "weighting carries {} weight but the slice has no such operations",
            target.name()
        )));
    }

    // columns: identity triple first, then one related triple per type-1
    // operation of the slice
    let identity: Vec<Operation> = (1..=3)
        .map(|i| Operation::projection(domain, 3, i))
        .collect::<Result<Vec<_>>>()?;
    let mut columns: Vec<Vec<Operation>> = vec![identity];
    for p in &type1 {
        let triple = related_triple(p, target.type1())?;
        columns.push(triple.to_vec());
    }

    let superposed: Vec<CertifiedWeighting> = columns
        .iter()
        .map(|gs| cw.superpose(gs))
        .collect::<Result<Vec<_>>>()?;
    // most target operations receive no weight from any superposition;
    // dropping all-zero and duplicate rows changes nothing about the
    // solution set of the system but keeps the solver small
    let mut rows: Vec<Vec<Rational>> = targets
        .iter()
        .map(|op| {
            superposed
                .iter()
                .map(|s| s.weighting.weight(op))
                .collect::<Vec<Rational>>()
        })
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    rows.sort();
    rows.dedup();
    if rows.is_empty() {
        return Err(Error::Structural(format!(
            "{} weight is present but every system row vanished",
            target.name()
        )));
    }
    let matrix = QMatrix::new(rows)?;
    let solution = match solve_gordan(&matrix) {
        GordanOutcome::Kernel(x) => x,
        GordanOutcome::Dual(y) => {
            return Err(Error::TheoremContradiction(format!(
                "the {} elimination system admits a strict dual certificate {y:?}; \
                 a nonzero nonnegative kernel vector is guaranteed for symmetrized \
                 sharp weightings, so the input or the implementation is at fault",
                target.name()
            )));
        }
    };
    trace.push(TraceStep::GordanSolved {
        class: target.name().to_owned(),
        rows_total: targets.len(),
        rows: matrix.rows(),
        cols: matrix.cols(),
        solution: solution.iter().map(Rational::to_string).collect(),
    });

    let terms: Vec<(Rational, &CertifiedWeighting)> =
        solution.iter().cloned().zip(superposed.iter()).collect();
    let combined = CertifiedWeighting::combine(&terms)?;
    let out = &combined.weighting;
    if out.is_zero() {
        return Err(Error::TheoremContradiction(format!(
            "{} elimination produced the zero weighting",
            target.name()
        )));
    }
    if !out.is_valid() {
        return Err(Error::TheoremContradiction(format!(
            "{} elimination produced an invalid weighting {out:?}",
            target.name()
        )));
    }
    if !out.is_positive() {
        return Err(Error::TheoremContradiction(format!(
            "{} elimination left positive weight only on projections",
            target.name()
        )));
    }
    for op in &targets {
        if !out.weight(op).is_zero() {
            return Err(Error::TheoremContradiction(format!(
                "{} elimination left weight {} on {op:?}",
                target.name(),
                out.weight(op)
            )));
        }
    }
    combined.symmetrize(trace)
}

/// Removes all Pixley weight from a symmetrized sharp ternary weighting.
///
/// When the whole support is Pixley the explicit construction applies: the
/// result assigns −1 to each projection and total weight 3 to majority
/// operations. Otherwise the Gordan system over related Pixley triples
/// yields the eliminating combination. Either way the result is
/// re-symmetrized.
pub fn eliminate_pixley(
    cw: &CertifiedWeighting,
    slice: &mut SliceSource,
    trace: &mut Vec<TraceStep>,
) -> Result<CertifiedWeighting> {
    let w = &cw.weighting;
    let classes = support_classes(w);
    let all_pixley = !classes.is_empty()
        && classes
            .iter()
            .all(|(_, c)| matches!(c, Some(SharpClass::Pixley(_))));
    if !all_pixley {
        return eliminate_class(cw, slice, Target::Pixley, trace);
    }

    // all-Pixley branch: superpose each support operation away against a
    // projection pair chosen by its type
    let domain = w.domain();
    let e = |i: usize| Operation::projection(domain, 3, i);
    let one = rational_from_int(1);
    let mut terms: Vec<(Rational, CertifiedWeighting)> = vec![(one.clone(), cw.clone())];
    for (op, class) in &classes {
        let gs = match class {
            Some(SharpClass::Pixley(1)) => vec![e(1)?, e(2)?, op.clone()],
            Some(SharpClass::Pixley(2)) => vec![e(1)?, op.clone(), e(3)?],
            Some(SharpClass::Pixley(3)) => vec![op.clone(), e(2)?, e(3)?],
            _ => unreachable!("support is all Pixley"),
        };
        terms.push((w.weight(op), cw.superpose(&gs)?));
    }
    let borrowed: Vec<(Rational, &CertifiedWeighting)> =
        terms.iter().map(|(c, t)| (c.clone(), t)).collect();
    let combined = CertifiedWeighting::combine(&borrowed)?;

    // the images are majority- or semiprojection-patterned: the
    // projection-level equalities behind the closed form only bind the
    // pattern entries, so free entries can leave semiprojection residue,
    // which the next stage eliminates
    let out = &combined.weighting;
    let mut majority_total = Rational::zero();
    let mut residue_total = Rational::zero();
    for (op, weight) in out.entries() {
        let class = classify(op);
        if class.is_majority() {
            majority_total += weight;
        } else if class.is_semiprojection() {
            residue_total += weight;
        } else if matches!(class.sharp_class, Some(SharpClass::Pixley(_))) {
            return Err(Error::TheoremContradiction(format!(
                "all-Pixley construction left weight {weight} on the Pixley operation {op:?}"
            )));
        } else if class.projection.is_none() {
            return Err(Error::TheoremContradiction(format!(
                "all-Pixley construction left weight {weight} on {op:?}"
            )));
        }
    }
    if !out.is_valid() || !out.is_positive() {
        return Err(Error::TheoremContradiction(
            "all-Pixley construction lost validity or positivity".into(),
        ));
    }
    trace.push(TraceStep::AllPixleySupport {
        majority_total: majority_total.to_string(),
        semiprojection_residue: residue_total.to_string(),
    });
    combined.symmetrize(trace)
}

/// Outcome of the semiprojection stage: either the run ends with a
/// semiprojection-supported witness or it continues with a weighting free
/// of both Pixley and semiprojection weight.
pub enum SemiprojectionStage {
    Verdict(CertifiedWeighting),
    Continue(CertifiedWeighting),
}

/// Removes all semiprojection weight, or reports the semiprojection-only
/// verdict when the whole support already consists of semiprojections.
pub fn eliminate_semiprojections(
    cw: &CertifiedWeighting,
    slice: &mut SliceSource,
    trace: &mut Vec<TraceStep>,
) -> Result<SemiprojectionStage> {
    let classes = support_classes(&cw.weighting);
    let all_semi = !classes.is_empty()
        && classes
            .iter()
            .all(|(_, c)| matches!(c, Some(SharpClass::Semiprojection(_))));
    if all_semi {
        trace.push(TraceStep::CaseVerified {
            case: WitnessCase::Semiprojections(3),
        });
        return Ok(SemiprojectionStage::Verdict(cw.clone()));
    }
    let out = eliminate_class(cw, slice, Target::Semiprojections, trace)?;
    // the eliminating superpositions cannot reintroduce Pixley weight
    for (op, weight) in out.weighting.entries() {
        if matches!(classify(op).sharp_class, Some(SharpClass::Pixley(_))) {
            return Err(Error::TheoremContradiction(format!(
                "semiprojection elimination reintroduced Pixley weight {weight} on {op:?}"
            )));
        }
    }
    Ok(SemiprojectionStage::Continue(out))
}

/// Balances a symmetrized weighting supported on majority and minority
/// operations into one of the three final ternary shapes.
pub fn balance_majority_minority(
    cw: &CertifiedWeighting,
    trace: &mut Vec<TraceStep>,
) -> Result<(CertifiedWeighting, WitnessCase)> {
    let w = &cw.weighting;
    let domain = w.domain();
    let mut majority: Vec<(Operation, Rational)> = Vec::new();
    let mut minority: Vec<(Operation, Rational)> = Vec::new();
    for (op, weight) in w.entries() {
        if !weight.is_positive() {
            continue;
        }
        match classify(op).sharp_class {
            Some(SharpClass::Majority) => majority.push((op.clone(), weight.clone())),
            Some(SharpClass::Minority) => minority.push((op.clone(), weight.clone())),
            other => {
                return Err(Error::input(format!(
                    "balance stage needs majority/minority support, found {op:?} ({other:?})"
                )))
            }
        }
    }
    let majority_total: Rational = majority.iter().map(|(_, w)| w.clone()).sum();
    let minority_total: Rational = minority.iter().map(|(_, w)| w.clone()).sum();
    let record = |raw: Option<String>, trace: &mut Vec<TraceStep>| {
        trace.push(TraceStep::Balanced {
            majority_total: majority_total.to_string(),
            minority_total: minority_total.to_string(),
            raw_projection_weight: raw,
        });
    };

    if minority_total.is_zero() {
        record(None, trace);
        return Ok((cw.clone(), WitnessCase::MajorityOnly));
    }
    if majority_total.is_zero() {
        record(None, trace);
        return Ok((cw.clone(), WitnessCase::MinorityOnly));
    }
    let shift = &majority_total - rational_from_int(2);
    if shift.is_zero() {
        record(None, trace);
        return Ok((cw.clone(), WitnessCase::MajMin21));
    }

    let e1 = Operation::projection(domain, 3, 1)?;
    if shift.is_positive() {
        // majority-heavy: push each minority operation onto the first
        // projection through w[e1, e1, f]
        let a = shift;
        let mut terms: Vec<(Rational, CertifiedWeighting)> =
            vec![(rational_from_int(1), cw.clone())];
        for (f, weight) in &minority {
            let gs = vec![e1.clone(), e1.clone(), f.clone()];
            terms.push((weight / &a, cw.superpose(&gs)?));
        }
        let borrowed: Vec<(Rational, &CertifiedWeighting)> =
            terms.iter().map(|(c, t)| (c.clone(), t)).collect();
        let out = CertifiedWeighting::combine(&borrowed)?;
        record(None, trace);
        return Ok((out, WitnessCase::MajorityOnly));
    }

    // minority-heavy: push each majority operation away through
    // w[e1, f, f]; the raw combination can leave positive weight on the
    // first projection, which the closing symmetrization removes
    let a = -shift;
    let mut terms: Vec<(Rational, CertifiedWeighting)> = vec![(rational_from_int(1), cw.clone())];
    for (f, weight) in &majority {
        let gs = vec![e1.clone(), f.clone(), f.clone()];
        terms.push((weight / &a, cw.superpose(&gs)?));
    }
    let borrowed: Vec<(Rational, &CertifiedWeighting)> =
        terms.iter().map(|(c, t)| (c.clone(), t)).collect();
    let raw = CertifiedWeighting::combine(&borrowed)?;
    let raw_e1 = raw.weighting.weight(&e1);
    record(Some(raw_e1.to_string()), trace);
    let out = raw.symmetrize(trace)?;
    Ok((out, WitnessCase::MinorityOnly))
}

/// Checks that a witness weighting matches its case: valid, positive,
/// nonpositive projection weights, and every positive-support operation
/// classified as the case demands.
pub fn verify_case(w: &Weighting, case: WitnessCase) -> Result<()> {
    let report = w.validate();
    if !report.is_valid() {
        return Err(Error::Validity(format!(
            "witness is not a valid weighting: sum {}",
            report.sum
        )));
    }
    if !report.positive {
        return Err(Error::Validity("witness is not positive".into()));
    }
    for (op, weight) in w.entries() {
        if op.is_projection() && weight.is_positive() {
            return Err(Error::Validity(format!(
                "witness has positive weight {weight} on the projection {op:?}"
            )));
        }
    }
    let support: Vec<(Operation, Option<SharpClass>)> = support_classes(w);
    let expect = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Validity(format!("witness support is not {what}")))
        }
    };
    match case {
        WitnessCase::BinaryIdempotent => {
            expect(w.arity() == 2, "binary")?;
            for (op, _) in &support {
                let c = classify(op);
                expect(
                    c.idempotent && c.projection.is_none(),
                    "idempotent non-projections",
                )?;
            }
        }
        WitnessCase::MajorityOnly => {
            for (_, class) in &support {
                expect(*class == Some(SharpClass::Majority), "majority operations")?;
            }
        }
        WitnessCase::MinorityOnly => {
            for (_, class) in &support {
                expect(*class == Some(SharpClass::Minority), "minority operations")?;
            }
        }
        WitnessCase::MajMin21 => {
            let mut majority_total = Rational::zero();
            let mut minority_total = Rational::zero();
            for (op, class) in &support {
                match class {
                    Some(SharpClass::Majority) => majority_total += w.weight(op),
                    Some(SharpClass::Minority) => minority_total += w.weight(op),
                    _ => return Err(Error::Validity(format!("unexpected support {op:?}"))),
                }
            }
            expect(majority_total == rational_from_int(2), "majority total 2")?;
            expect(minority_total == rational_from_int(1), "minority total 1")?;
            for i in 1..=3 {
                let e = Operation::projection(w.domain(), 3, i)?;
                expect(
                    w.weight(&e) == rational_from_int(-1),
                    "projection weight -1",
                )?;
            }
        }
        WitnessCase::Semiprojections(k) => {
            expect(w.arity() == k, "of the declared arity")?;
            for (_, class) in &support {
                expect(
                    matches!(class, Some(SharpClass::Semiprojection(_))),
                    "semiprojections",
                )?;
            }
        }
    }
    Ok(())
}

/// Runs the whole pipeline: selects the first positive generator, checks
/// the rigid-core precondition, normalizes, reduces to sharp support, and
/// dispatches on the arity. The elimination slice is the support clone of
/// the generators, generated on demand.
pub fn find_witness(generators: &[Weighting], caps: &PipelineCaps) -> Result<PipelineReport> {
    find_witness_impl(generators, caps, None)
}

/// As [`find_witness`] with a caller-supplied clone slice for the ternary
/// elimination systems.
pub fn find_witness_with_slice(
    generators: &[Weighting],
    caps: &PipelineCaps,
    slice: SliceSource,
) -> Result<PipelineReport> {
    find_witness_impl(generators, caps, Some(slice))
}

fn find_witness_impl(
    generators: &[Weighting],
    caps: &PipelineCaps,
    supplied: Option<SliceSource>,
) -> Result<PipelineReport> {
    if generators.is_empty() {
        return Err(Error::input("find_witness needs at least one generator"));
    }
    let domain = generators[0].domain();
    let mut support_ops: BTreeSet<Operation> = BTreeSet::new();
    for w in generators {
        if w.domain() != domain {
            return Err(Error::input("generators must share one domain"));
        }
        if !w.is_valid() {
            return Err(Error::input("generators must be valid weightings"));
        }
        for (op, _) in w.entries() {
            if !op.is_projection() {
                support_ops.insert(op.clone());
            }
        }
    }
    let support_ops: Vec<Operation> = support_ops.into_iter().collect();

    let mut trace: Vec<TraceStep> = Vec::new();

    let unary_slice = generate_clone_on(domain, &support_ops, 1, caps.op_cap)?;
    let rigid = unary_slice.is_rigid_core();
    trace.push(TraceStep::RigidCoreChecked {
        unary_clone_size: unary_slice.layer(1).len(),
    });
    if !rigid.rigid {
        return Err(Error::input(format!(
            "support clone is not a rigid core: it contains the unary operation {:?}",
            rigid.extra_unary.expect("non-rigid cores have a witness")
        )));
    }

    let (index, generator) = generators
        .iter()
        .enumerate()
        .find(|(_, w)| w.is_positive())
        .ok_or_else(|| Error::input("no generator is positive"))?;
    trace.push(TraceStep::SelectedGenerator {
        index,
        arity: generator.arity(),
    });

    let mut slice = match supplied {
        Some(source) => source,
        None => SliceSource::deferred(domain, support_ops, caps.op_cap),
    };

    let rooted = CertifiedWeighting::root(generator.clone());
    let symmetrized = rooted.symmetrize(&mut trace)?;
    let sharp = reduce_to_sharp(&symmetrized, &mut trace)?;

    let (witness, case) = match sharp.weighting().arity() {
        2 => {
            let out = sharp.symmetrize(&mut trace)?;
            (out, WitnessCase::BinaryIdempotent)
        }
        3 => {
            let normalized = sharp.symmetrize(&mut trace)?;
            let no_pixley = eliminate_pixley(&normalized, &mut slice, &mut trace)?;
            match eliminate_semiprojections(&no_pixley, &mut slice, &mut trace)? {
                SemiprojectionStage::Verdict(w) => (w, WitnessCase::Semiprojections(3)),
                SemiprojectionStage::Continue(w) => balance_majority_minority(&w, &mut trace)?,
            }
        }
        k => {
            // all-sharp support of arity at least 4 consists of
            // semiprojections
            let out = sharp.symmetrize(&mut trace)?;
            (out, WitnessCase::Semiprojections(k))
        }
    };

    verify_case(witness.weighting(), case)?;
    trace.push(TraceStep::CaseVerified { case });
    let (weighting, tree) = witness.into_parts();
    let replayed = tree.replay()?;
    if replayed != weighting {
        return Err(Error::Certificate(
            "certificate does not replay to the witness".into(),
        ));
    }
    Ok(PipelineReport {
        witness: weighting,
        case,
        certificate: tree,
        trace,
    })
}
