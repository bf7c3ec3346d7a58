//! Deterministic enumeration of operations.
//!
//! Enumeration walks tables in ascending lexicographic order. Without a
//! filter the full space `|D|^(|D|^k)` must fit under the cap; with a filter
//! the walk is a depth-first search over partial tables and the filter's
//! pruning rule cuts branches early, which is what makes spaces like the
//! sharp ternary operations on a three-element domain enumerable.

use crate::classify::{classify, SharpClass};
use crate::domain::{FiniteDomain, Label};
use crate::error::{Error, Result};
use crate::ops::Operation;

pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// Class predicates usable as enumeration filters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpFilter {
    Idempotent,
    IdempotentNonProjection,
    Sharp,
    NearUnanimity,
    Majority,
    Minority,
    Semiprojection,
}

impl OpFilter {
    pub fn admits(&self, f: &Operation) -> bool {
        let c = classify(f);
        match self {
            OpFilter::Idempotent => c.idempotent,
            OpFilter::IdempotentNonProjection => c.idempotent && c.projection.is_none(),
            OpFilter::Sharp => c.sharp,
            OpFilter::NearUnanimity => c.near_unanimity,
            OpFilter::Majority => c.is_majority(),
            OpFilter::Minority => c.is_minority(),
            OpFilter::Semiprojection => c.is_semiprojection(),
        }
    }

    /// Whether a partial table (a lexicographic prefix) can still extend to
    /// an operation admitted by the filter. Must never reject a prefix of an
    /// admissible table.
    fn admits_partial(&self, domain: FiniteDomain, arity: usize, prefix: &[Label]) -> bool {
        match self {
            OpFilter::Idempotent | OpFilter::IdempotentNonProjection => {
                idempotent_prefix_ok(domain, arity, prefix)
            }
            OpFilter::Sharp | OpFilter::Semiprojection => {
                idempotent_prefix_ok(domain, arity, prefix)
                    && identifications_can_be_projections(domain, arity, prefix)
            }
            OpFilter::Majority | OpFilter::Minority | OpFilter::NearUnanimity => {
                near_unanimity_prefix_ok(domain, arity, prefix, *self)
            }
        }
    }
}

fn idempotent_prefix_ok(domain: FiniteDomain, arity: usize, prefix: &[Label]) -> bool {
    let last = prefix.len() - 1;
    let t = domain.decode(arity, last);
    if t.iter().all(|&v| v == t[0]) {
        return prefix[last] == t[0];
    }
    true
}

/// Checks only the most recently fixed entry against the values the filter
/// forces on tuples with a repeated argument.
fn near_unanimity_prefix_ok(
    domain: FiniteDomain,
    arity: usize,
    prefix: &[Label],
    filter: OpFilter,
) -> bool {
    if arity < 3 {
        return true;
    }
    let last = prefix.len() - 1;
    let t = domain.decode(arity, last);
    let v = prefix[last];
    match filter {
        OpFilter::NearUnanimity | OpFilter::Majority => {
            // a label repeated on all but at most one position forces itself
            let mut counts = vec![0usize; domain.size()];
            for &x in &t {
                counts[x] += 1;
            }
            match (0..domain.size()).find(|&x| counts[x] >= arity - 1) {
                Some(rep) => v == rep,
                None => true,
            }
        }
        OpFilter::Minority => {
            if arity != 3 {
                return true;
            }
            let (a, b, c) = (t[0], t[1], t[2]);
            if a == b && b == c {
                v == a
            } else if a == b {
                v == c
            } else if a == c {
                v == b
            } else if b == c {
                v == a
            } else {
                true
            }
        }
        _ => true,
    }
}

/// For every pair of argument positions, the identification of a sharp
/// operation must be some projection. Tracks, per pair, the set of still
/// viable projection indices of the identified operation and prunes when a
/// pair runs out of candidates.
fn identifications_can_be_projections(
    domain: FiniteDomain,
    arity: usize,
    prefix: &[Label],
) -> bool {
    if arity < 2 {
        return true;
    }
    let mut scratch = Vec::new();
    for a in 0..arity {
        for b in (a + 1)..arity {
            // candidate projection positions of the (k-1)-ary identification
            let mut viable = vec![true; arity - 1];
            let mut any = true;
            for (idx, &v) in prefix.iter().enumerate() {
                scratch.clear();
                scratch.extend(domain.decode(arity, idx));
                if scratch[a] != scratch[b] {
                    continue;
                }
                // identified tuple = tuple with position b removed
                let mut alive = false;
                let mut pos = 0;
                for (orig, &x) in scratch.iter().enumerate() {
                    if orig == b {
                        continue;
                    }
                    if viable[pos] && x != v {
                        viable[pos] = false;
                    }
                    alive |= viable[pos];
                    pos += 1;
                }
                if !alive {
                    any = false;
                    break;
                }
            }
            if !any {
                return false;
            }
        }
    }
    true
}

/// Enumerates the operations of the given arity in ascending table order.
///
/// Without a filter the operation count `|D|^(|D|^k)` must be at most `cap`.
/// With a filter the search is pruned and only the yielded operations count
/// against the cap.
pub fn enumerate_operations(
    domain: FiniteDomain,
    arity: usize,
    filter: Option<OpFilter>,
    cap: Option<u128>,
) -> Result<OpEnumerator> {
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    let table_len = domain.tuple_count(arity)?;
    if filter.is_none() {
        let mut count: u128 = 1;
        for _ in 0..table_len {
            count = count.saturating_mul(domain.size() as u128);
            if count > cap {
                return Err(Error::resource(
                    format!(
                        "enumerating all {arity}-ary operations on a domain of size {}",
                        domain.size()
                    ),
                    count,
                    cap,
                ));
            }
        }
    }
    Ok(OpEnumerator {
        domain,
        arity,
        filter,
        cap,
        yielded: 0,
        table_len,
        stack: vec![0],
        done: false,
    })
}

/// Depth-first walk over tables; see [`enumerate_operations`].
#[derive(Debug)]
pub struct OpEnumerator {
    domain: FiniteDomain,
    arity: usize,
    filter: Option<OpFilter>,
    cap: u128,
    yielded: u128,
    table_len: usize,
    /// Partial table; the last entry is the one being tried.
    stack: Vec<Label>,
    done: bool,
}

impl OpEnumerator {
    /// Backtracks to the next unexplored branch. Returns false when the
    /// search space is exhausted.
    fn advance(&mut self) -> bool {
        loop {
            match self.stack.last_mut() {
                None => return false,
                Some(v) => {
                    *v += 1;
                    if *v < self.domain.size() {
                        return true;
                    }
                    self.stack.pop();
                }
            }
        }
    }
}

impl Iterator for OpEnumerator {
    type Item = Result<Operation>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let prefix_ok = match self.filter {
                Some(f) => f.admits_partial(self.domain, self.arity, &self.stack),
                None => true,
            };
            if !prefix_ok {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            if self.stack.len() == self.table_len {
                let op = Operation::new(self.domain, self.arity, self.stack.clone())
                    .expect("enumerated tables are well-formed");
                let keep = self.filter.is_none_or(|f| f.admits(&op));
                if !self.advance() {
                    self.done = true;
                }
                if keep {
                    self.yielded += 1;
                    if self.yielded > self.cap {
                        self.done = true;
                        return Some(Err(Error::resource(
                            "filtered operation enumeration",
                            self.yielded,
                            self.cap,
                        )));
                    }
                    return Some(Ok(op));
                }
                if self.done {
                    return None;
                }
            } else {
                self.stack.push(0);
            }
        }
    }
}

/// All sharp ternary operations of one class, built from the column pattern:
/// the pattern fixes every entry on tuples with a repeated argument and the
/// entries on pairwise-distinct tuples are free. Projections (which arise
/// for the semiprojection patterns on two-element domains) are skipped.
///
/// This is an independent construction route from [`enumerate_operations`]
/// with the sharp filter.
pub fn sharp_ternary_by_pattern(domain: FiniteDomain, class: SharpClass) -> Vec<Operation> {
    let n = domain.tuple_count(3).expect("small table");
    let free: Vec<usize> = (0..n)
        .filter(|&idx| crate::classify::pairwise_distinct(&domain.decode(3, idx)))
        .collect();

    let mut base = vec![usize::MAX; n];
    for (idx, slot) in base.iter_mut().enumerate() {
        let t = domain.decode(3, idx);
        let (a, b, c) = (t[0], t[1], t[2]);
        if a == b && b == c {
            *slot = a;
        } else if a == b {
            *slot = pattern_value(class, 0, a, c);
        } else if a == c {
            *slot = pattern_value(class, 1, a, b);
        } else if b == c {
            *slot = pattern_value(class, 2, b, a);
        }
    }

    let mut out = Vec::new();
    let mut assignment = vec![0; free.len()];
    loop {
        let mut table = base.clone();
        for (&idx, &v) in free.iter().zip(&assignment) {
            table[idx] = v;
        }
        let op = Operation::new(domain, 3, table).expect("pattern tables are well-formed");
        if !op.is_projection() {
            out.push(op);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < domain.size() {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

/// Value of a class column on pattern row `row` (0: `(x,x,y)`, 1: `(x,y,x)`,
/// 2: `(y,x,x)`), where `x` is the repeated label and `y` the lone one.
fn pattern_value(class: SharpClass, row: usize, x: Label, y: Label) -> Label {
    let takes_y = match class {
        SharpClass::Majority => [false, false, false],
        SharpClass::Semiprojection(1) => [false, false, true],
        SharpClass::Semiprojection(2) => [false, true, false],
        SharpClass::Semiprojection(3) => [true, false, false],
        SharpClass::Pixley(1) => [false, true, true],
        SharpClass::Pixley(2) => [true, false, true],
        SharpClass::Pixley(3) => [true, true, false],
        SharpClass::Minority => [true, true, true],
        _ => panic!("not a ternary sharp class"),
    };
    if takes_y[row] {
        y
    } else {
        x
    }
}

/// The eight ternary sharp classes in taxonomy column order.
pub fn sharp_ternary_classes() -> [SharpClass; 8] {
    [
        SharpClass::Majority,
        SharpClass::Semiprojection(1),
        SharpClass::Semiprojection(2),
        SharpClass::Semiprojection(3),
        SharpClass::Pixley(1),
        SharpClass::Pixley(2),
        SharpClass::Pixley(3),
        SharpClass::Minority,
    ]
}
