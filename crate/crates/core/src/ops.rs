//! Finite operations `f : D^k → D` stored as value tables.
//!
//! Tables are in lexicographic input order with the first argument most
//! significant, which fixes both the file format and the enumeration order.

use std::fmt;

use crate::domain::{FiniteDomain, Label};
use crate::error::{Error, Result};

/// A `k`-ary operation on a finite domain.
///
/// Ordering is by domain, then arity, then table, so sorting a set of
/// same-arity operations sorts them by table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operation {
    domain: FiniteDomain,
    arity: usize,
    table: Vec<Label>,
}

impl Operation {
    pub fn new(domain: FiniteDomain, arity: usize, table: Vec<Label>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("operations must have positive arity"));
        }
        let expected = domain.tuple_count(arity)?;
        if table.len() != expected {
            return Err(Error::input(format!(
                "table length {} does not match |D|^{arity} = {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| !domain.contains(v)) {
            return Err(Error::input(format!(
                "table entry {bad} is not a label of a domain of size {}",
                domain.size()
            )));
        }
        Ok(Operation {
            domain,
            arity,
            table,
        })
    }

    /// The `i`-th projection `e_i^(k)`; `i` is 1-based.
    pub fn projection(domain: FiniteDomain, arity: usize, i: usize) -> Result<Self> {
        if i == 0 || i > arity {
            return Err(Error::input(format!(
                "projection index {i} out of range 1..={arity}"
            )));
        }
        let mut table = Vec::with_capacity(domain.tuple_count(arity)?);
        for t in domain.tuples(arity) {
            table.push(t[i - 1]);
        }
        Operation::new(domain, arity, table)
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Label] {
        &self.table
    }

    pub fn eval(&self, args: &[Label]) -> Label {
        debug_assert_eq!(args.len(), self.arity);
        self.table[self.domain.encode(args)]
    }

    /// Applies the operation coordinatewise to `k` `m`-tuples.
    pub fn apply_tuples(&self, tuples: &[&[Label]]) -> Vec<Label> {
        debug_assert_eq!(tuples.len(), self.arity);
        let m = tuples[0].len();
        let mut out = Vec::with_capacity(m);
        let mut args = vec![0; self.arity];
        for coord in 0..m {
            for (slot, t) in args.iter_mut().zip(tuples) {
                *slot = t[coord];
            }
            out.push(self.eval(&args));
        }
        out
    }

    /// Returns `Some(i)` (1-based) when the operation is the projection `e_i`.
    pub fn projection_index(&self) -> Option<usize> {
        'candidates: for i in 0..self.arity {
            for (idx, &v) in self.table.iter().enumerate() {
                if self.domain.decode(self.arity, idx)[i] != v {
                    continue 'candidates;
                }
            }
            return Some(i + 1);
        }
        None
    }

    pub fn is_projection(&self) -> bool {
        self.projection_index().is_some()
    }

    pub fn is_idempotent(&self) -> bool {
        self.domain.labels().all(|x| {
            let args = vec![x; self.arity];
            self.eval(&args) == x
        })
    }
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.projection_index() {
            return write!(f, "e_{i}^({})", self.arity);
        }
        write!(f, "op{}{:?}", self.arity, self.table)
    }
}

/// Superposition `f[g_1,…,g_k]` of a `k`-ary `f` with `k` `ℓ`-ary inner
/// operations, defined pointwise by
/// `f[g_1,…,g_k](x⃗) = f(g_1(x⃗),…,g_k(x⃗))`.
pub fn superpose_op(f: &Operation, gs: &[Operation]) -> Result<Operation> {
    if gs.len() != f.arity {
        return Err(Error::input(format!(
            "superposition needs {} inner operations, got {}",
            f.arity,
            gs.len()
        )));
    }
    let inner_arity = gs[0].arity;
    for g in gs {
        if g.domain != f.domain {
            return Err(Error::input("superposition across distinct domains"));
        }
        if g.arity != inner_arity {
            return Err(Error::input(
                "inner operations of a superposition must share one arity",
            ));
        }
    }
    let len = f.domain.tuple_count(inner_arity)?;
    let mut table = Vec::with_capacity(len);
    let mut args = vec![0; f.arity];
    for idx in 0..len {
        for (slot, g) in args.iter_mut().zip(gs) {
            *slot = g.table[idx];
        }
        table.push(f.eval(&args));
    }
    Operation::new(f.domain, inner_arity, table)
}

/// Equates arguments `i` and `j` (1-based, `i < j`) of a `k`-ary operation,
/// producing the `(k−1)`-ary operation
/// `g(x_1,…,x_{k−1}) = f(x_1,…,x_{j−1}, x_i, x_j,…,x_{k−1})`.
pub fn identify_args(f: &Operation, i: usize, j: usize) -> Result<Operation> {
    if f.arity < 2 {
        return Err(Error::input(
            "cannot identify arguments of a unary operation",
        ));
    }
    if i == 0 || j <= i || j > f.arity {
        return Err(Error::input(format!(
            "identification positions must satisfy 1 <= i < j <= {}, got ({i}, {j})",
            f.arity
        )));
    }
    let gs = identification_tuple(f.domain, f.arity, i, j)?;
    superpose_op(f, &gs)
}

/// The projection tuple realizing [`identify_args`] as a superposition.
pub fn identification_tuple(
    domain: FiniteDomain,
    arity: usize,
    i: usize,
    j: usize,
) -> Result<Vec<Operation>> {
    let mut gs = Vec::with_capacity(arity);
    for pos in 1..=arity {
        let src = if pos < j {
            pos
        } else if pos == j {
            i
        } else {
            pos - 1
        };
        gs.push(Operation::projection(domain, arity - 1, src)?);
    }
    Ok(gs)
}

/// The `k` cyclic permutations of `{1,…,k}` as projection tuples, identity
/// first. Superposing with the `r`-th tuple realizes
/// `f^π(x_1,…,x_k) = f(x_{π(1)},…,x_{π(k)})` for `π(i) = ((i−1+r) mod k)+1`.
pub fn cyclic_projection_tuples(domain: FiniteDomain, arity: usize) -> Result<Vec<Vec<Operation>>> {
    let mut out = Vec::with_capacity(arity);
    for r in 0..arity {
        let mut tuple = Vec::with_capacity(arity);
        for i in 0..arity {
            tuple.push(Operation::projection(domain, arity, (i + r) % arity + 1)?);
        }
        out.push(tuple);
    }
    Ok(out)
}

/// The operations `f^π` for each cyclic permutation `π`, identity first.
pub fn cyclic_variants(f: &Operation) -> Vec<Operation> {
    cyclic_projection_tuples(f.domain, f.arity)
        .and_then(|tuples| {
            tuples
                .iter()
                .map(|gs| superpose_op(f, gs))
                .collect::<Result<Vec<_>>>()
        })
        .expect("cyclic variants of a valid operation cannot fail")
}
