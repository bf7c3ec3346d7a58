//! Bounded-arity slices of generated clones.
//!
//! The `ℓ`-ary layer of the clone generated by a set of operations is the
//! closure of the `ℓ`-ary projections under application of the generators,
//! so each layer is computed independently by a worklist fixpoint. The
//! resulting layers are closed under superposition among themselves because
//! they are exactly the layers of the generated clone up to the arity bound.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::ops::Operation;
use crate::weighting::Weighting;

pub const DEFAULT_OP_CAP: usize = 200_000;

/// The arity-`1..=max_arity` layers of a generated clone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneSlice {
    domain: FiniteDomain,
    max_arity: usize,
    /// `layers[a - 1]` holds the sorted `a`-ary operations.
    layers: Vec<Vec<Operation>>,
    generators: Vec<Operation>,
}

impl CloneSlice {
    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn generators(&self) -> &[Operation] {
        &self.generators
    }

    /// The sorted operations of the given arity.
    pub fn layer(&self, arity: usize) -> &[Operation] {
        &self.layers[arity - 1]
    }

    pub fn contains(&self, op: &Operation) -> bool {
        op.arity() <= self.max_arity && self.layers[op.arity() - 1].binary_search(op).is_ok()
    }

    pub fn op_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// True when the unary layer is exactly the unary projection; also the
    /// criterion for every generator being idempotent.
    pub fn is_rigid_core(&self) -> RigidCoreReport {
        let identity = Operation::projection(self.domain, 1, 1).expect("unary projection");
        let extra_unary = self.layers[0].iter().find(|op| **op != identity).cloned();
        RigidCoreReport {
            rigid: extra_unary.is_none(),
            generators_idempotent: self.generators.iter().all(Operation::is_idempotent),
            extra_unary,
        }
    }
}

impl CloneSlice {
    /// Structural checks for slices loaded from files: consistent domains
    /// and arities, sorted duplicate-free layers, and all projections
    /// present. Closure under superposition is the supplier's contract;
    /// slices produced by [`generate_clone`] satisfy it by construction.
    pub fn verify_structure(&self) -> Result<()> {
        if self.layers.len() != self.max_arity {
            return Err(Error::input(format!(
                "slice declares max arity {} but has {} layers",
                self.max_arity,
                self.layers.len()
            )));
        }
        for (idx, layer) in self.layers.iter().enumerate() {
            let arity = idx + 1;
            for op in layer {
                if op.domain() != self.domain {
                    return Err(Error::input("slice operation on a different domain"));
                }
                if op.arity() != arity {
                    return Err(Error::input(format!(
                        "operation of arity {} in the arity-{arity} layer",
                        op.arity()
                    )));
                }
            }
            if layer.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!(
                    "arity-{arity} layer is not sorted and duplicate-free"
                )));
            }
            for i in 1..=arity {
                let e = Operation::projection(self.domain, arity, i)?;
                if layer.binary_search(&e).is_err() {
                    return Err(Error::input(format!(
                        "arity-{arity} layer is missing a projection"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidCoreReport {
    pub rigid: bool,
    pub generators_idempotent: bool,
    pub extra_unary: Option<Operation>,
}

/// Whether the arity-1 layer of a slice is exactly the unary projection.
pub fn is_rigid_core_slice(slice: &CloneSlice) -> bool {
    slice.is_rigid_core().rigid
}

/// Least fixpoint of the generators over each arity up to `max_arity`,
/// seeded with the projections. Deterministic; fails with a resource error
/// naming the arity when the total operation count would exceed `op_cap`.
pub fn generate_clone(
    generators: &[Operation],
    max_arity: usize,
    op_cap: Option<usize>,
) -> Result<CloneSlice> {
    let op_cap = op_cap.unwrap_or(DEFAULT_OP_CAP);
    let domain = match generators.first() {
        Some(g) => g.domain(),
        None => {
            return Err(Error::input(
                "generate_clone needs at least one generator to fix the domain; \
                 use generate_clone_on for a bare projection slice",
            ))
        }
    };
    generate_clone_on(domain, generators, max_arity, op_cap)
}

/// As [`generate_clone`] with an explicit domain, allowing an empty
/// generator set (whose clone slice holds only projections).
pub fn generate_clone_on(
    domain: FiniteDomain,
    generators: &[Operation],
    max_arity: usize,
    op_cap: usize,
) -> Result<CloneSlice> {
    // generators of arity above the bound still contribute: the layers of
    // a clone are closed under applying any generator to same-arity tuples
    for g in generators {
        if g.domain() != domain {
            return Err(Error::input("generators must share one domain"));
        }
    }
    let mut total = 0usize;
    let mut layers = Vec::with_capacity(max_arity);
    for arity in 1..=max_arity {
        let layer = close_layer(domain, generators, arity, op_cap, &mut total)?;
        layers.push(layer);
    }
    Ok(CloneSlice {
        domain,
        max_arity,
        layers,
        generators: generators.to_vec(),
    })
}

/// Support-clone slice of a family of weightings: the clone generated by
/// every operation carrying nonzero weight in any of them.
pub fn support_clone(
    weightings: &[Weighting],
    max_arity: usize,
    op_cap: Option<usize>,
) -> Result<CloneSlice> {
    let domain = weightings
        .first()
        .map(Weighting::domain)
        .ok_or_else(|| Error::input("support_clone of an empty family"))?;
    let mut gens: BTreeSet<Operation> = BTreeSet::new();
    for w in weightings {
        if w.domain() != domain {
            return Err(Error::input("weightings must share one domain"));
        }
        for (op, _) in w.entries() {
            if !op.is_projection() {
                gens.insert(op.clone());
            }
        }
    }
    let gens: Vec<Operation> = gens.into_iter().collect();
    generate_clone_on(domain, &gens, max_arity, op_cap.unwrap_or(DEFAULT_OP_CAP))
}

/// FNV-1a over raw table bytes; the closure fixpoint hashes many short
/// tables and the default hasher dominates its runtime.
struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf29ce484222325)
    }
}

impl std::hash::Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
}

type FnvSet<T> = HashSet<T, std::hash::BuildHasherDefault<Fnv>>;

fn close_layer(
    domain: FiniteDomain,
    generators: &[Operation],
    arity: usize,
    op_cap: usize,
    total: &mut usize,
) -> Result<Vec<Operation>> {
    if domain.size() > u8::MAX as usize {
        return Err(Error::input(
            "clone generation supports domains of at most 256 labels",
        ));
    }
    let table_len = domain.tuple_count(arity)?;
    let mut seen: FnvSet<Box<[u8]>> = FnvSet::default();
    let mut frontier: Vec<Box<[u8]>> = Vec::new();
    for i in 1..=arity {
        let table: Box<[u8]> = Operation::projection(domain, arity, i)?
            .table()
            .iter()
            .map(|&v| v as u8)
            .collect();
        seen.insert(table.clone());
        frontier.push(table);
    }
    frontier.sort();
    let mut old: Vec<Box<[u8]>> = Vec::new();
    let mut scratch = vec![0u8; table_len].into_boxed_slice();
    while !frontier.is_empty() {
        let mut args: Vec<&[u8]> = Vec::new();
        let mut known: Vec<Box<[u8]>> = seen.iter().cloned().collect();
        known.sort();
        let mut fresh: Vec<Box<[u8]>> = Vec::new();
        for g in generators {
            let k = g.arity();
            let g_table = g.table();
            // argument tuples with their first frontier element at position
            // p: positions before p draw from older rounds, position p from
            // the frontier, positions after p from everything known
            for p in 0..k {
                let pools: Vec<&[Box<[u8]>]> = (0..k)
                    .map(|q| {
                        if q < p {
                            &old[..]
                        } else if q == p {
                            &frontier[..]
                        } else {
                            &known[..]
                        }
                    })
                    .collect();
                if pools.iter().any(|pool| pool.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; k];
                loop {
                    args.clear();
                    args.extend(idx.iter().zip(&pools).map(|(&i, pool)| &*pool[i]));
                    for (slot, out) in scratch.iter_mut().enumerate() {
                        let mut enc = 0usize;
                        for t in &args {
                            enc = enc * domain.size() + t[slot] as usize;
                        }
                        *out = g_table[enc] as u8;
                    }
                    if !seen.contains(&scratch) {
                        seen.insert(scratch.clone());
                        fresh.push(scratch.clone());
                        if *total + seen.len() > op_cap {
                            return Err(Error::resource(
                                format!("clone closure at arity {arity}"),
                                (*total + seen.len()) as u128,
                                op_cap as u128,
                            ));
                        }
                    }
                    if !bump_mixed(&mut idx, &pools) {
                        break;
                    }
                }
            }
        }
        old = known;
        fresh.sort();
        frontier = fresh;
    }
    *total += seen.len();
    let mut tables: Vec<Box<[u8]>> = seen.into_iter().collect();
    tables.sort();
    tables
        .into_iter()
        .map(|t| Operation::new(domain, arity, t.iter().map(|&v| v as usize).collect()))
        .collect()
}

fn bump_mixed(idx: &mut [usize], pools: &[&[Box<[u8]>]]) -> bool {
    for (slot, pool) in idx.iter_mut().zip(pools).rev() {
        *slot += 1;
        if *slot < pool.len() {
            return true;
        }
        *slot = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> FiniteDomain {
        FiniteDomain::new(2).unwrap()
    }

    fn bool_min() -> Operation {
        Operation::new(d2(), 2, vec![0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn empty_generators_give_projection_slice() {
        let slice = generate_clone_on(d2(), &[], 2, 1000).unwrap();
        assert_eq!(slice.layer(1).len(), 1);
        assert_eq!(slice.layer(2).len(), 2);
        assert!(slice.is_rigid_core().rigid);
    }

    #[test]
    fn min_binary_slice() {
        let slice = generate_clone(&[bool_min()], 2, None).unwrap();
        let mut expected = [
            Operation::projection(d2(), 2, 1).unwrap(),
            Operation::projection(d2(), 2, 2).unwrap(),
            bool_min(),
        ];
        expected.sort();
        assert_eq!(slice.layer(2), &expected[..]);
    }

    #[test]
    fn min_ternary_slice_has_seven_operations() {
        // three projections, three pairwise mins, one triple min
        let slice = generate_clone(&[bool_min()], 3, None).unwrap();
        assert_eq!(slice.layer(3).len(), 7);
        assert!(slice.is_rigid_core().rigid);
    }

    #[test]
    fn constant_generator_breaks_rigidity() {
        let const0 = Operation::new(d2(), 1, vec![0, 0]).unwrap();
        let slice = generate_clone(std::slice::from_ref(&const0), 1, None).unwrap();
        let report = slice.is_rigid_core();
        assert!(!report.rigid);
        assert_eq!(report.extra_unary, Some(const0));
        assert!(!report.generators_idempotent);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let slice = generate_clone(&[bool_min()], 3, None).unwrap();
        let regenerated = generate_clone(slice.layer(3), 3, None).unwrap();
        assert_eq!(slice.layer(3), regenerated.layer(3));

        let bigger = generate_clone(
            &[
                bool_min(),
                Operation::new(d2(), 2, vec![0, 1, 1, 1]).unwrap(),
            ],
            3,
            None,
        )
        .unwrap();
        for op in slice.layer(3) {
            assert!(bigger.contains(op));
        }
    }

    #[test]
    fn support_clone_examples() {
        use crate::rational::rational_from_int as q;
        use crate::weighting::Weighting;

        // the zero weighting generates only projections
        let zero = Weighting::zero(d2(), 2);
        let slice = support_clone(&[zero], 2, None).unwrap();
        assert_eq!(slice.op_count(), 3);
        assert!(slice.is_rigid_core().rigid);

        // the submodular weighting generates {e1, e2, min, max} at arity 2
        let max = Operation::new(d2(), 2, [0, 1, 1, 1].to_vec()).unwrap();
        let sub = Weighting::new(
            d2(),
            2,
            [
                (Operation::projection(d2(), 2, 1).unwrap(), q(-1)),
                (Operation::projection(d2(), 2, 2).unwrap(), q(-1)),
                (bool_min(), q(1)),
                (max.clone(), q(1)),
            ],
        )
        .unwrap();
        let slice = support_clone(std::slice::from_ref(&sub), 2, None).unwrap();
        let mut expected = [
            Operation::projection(d2(), 2, 1).unwrap(),
            Operation::projection(d2(), 2, 2).unwrap(),
            bool_min(),
            max,
        ];
        expected.sort();
        assert_eq!(slice.layer(2), &expected[..]);

        // at arity 3 the same clone contains the boolean majority (the
        // median of min/max compositions)
        let slice = support_clone(&[sub], 3, None).unwrap();
        let maj = Operation::new(d2(), 3, vec![0, 0, 0, 1, 0, 1, 1, 1]).unwrap();
        assert!(slice.contains(&maj));
    }

    #[test]
    fn cap_is_reported_with_arity() {
        let maj = Operation::new(d2(), 3, vec![0, 0, 0, 1, 0, 1, 1, 1]).unwrap();
        let err = generate_clone(&[maj], 3, Some(3)).unwrap_err();
        match err {
            Error::Resource { what, .. } => assert!(what.contains("arity")),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
