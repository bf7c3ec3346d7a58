//! Classification of finite operations.
//!
//! A `k`-ary operation (`k ≥ 2`) is *sharp* when it is not a projection but
//! every identification of two arguments is one. Sharp ternary operations
//! split into eight classes by their values on the argument patterns
//! `(x,x,y)`, `(x,y,x)`, `(y,x,x)`: majority, minority, three Pixley types
//! and three semiprojection types. For arity at least four, every sharp
//! operation is a semiprojection (Świerczkowski).

use serde::{Deserialize, Serialize};

use crate::domain::Label;
use crate::ops::{identify_args, Operation};

/// The class of a sharp operation of arity at least three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpClass {
    Majority,
    Minority,
    /// Pixley operation of the given type, 1-based.
    Pixley(usize),
    /// Semiprojection of the given type: every identification of two
    /// arguments yields the projection onto that index.
    Semiprojection(usize),
}

impl SharpClass {
    /// Class of `f^π` for the cyclic permutation shifting argument indices
    /// by `r` (so `r = 1` is `π = (2,3,…,k,1)`). Ternary classes only.
    pub fn cyclic_shift(self, r: usize) -> SharpClass {
        let r = r % 3;
        match self {
            SharpClass::Majority | SharpClass::Minority => self,
            // S1 -> S2 -> S3 -> S1 under r = 1
            SharpClass::Semiprojection(i) => SharpClass::Semiprojection((i - 1 + r) % 3 + 1),
            // P1 -> P3 -> P2 -> P1 under r = 1
            SharpClass::Pixley(i) => SharpClass::Pixley((i - 1 + 2 * r) % 3 + 1),
        }
    }
}

/// Eagerly computed classification flags of an operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpClass {
    /// 1-based index when the operation is a projection.
    pub projection: Option<usize>,
    pub idempotent: bool,
    pub sharp: bool,
    /// Arity ≥ 3 only.
    pub near_unanimity: bool,
    pub conservative: bool,
    /// Binary operations only.
    pub commutative: Option<bool>,
    /// Set exactly for sharp operations of arity ≥ 3.
    pub sharp_class: Option<SharpClass>,
}

impl OpClass {
    pub fn is_majority(&self) -> bool {
        self.sharp_class == Some(SharpClass::Majority)
    }

    pub fn is_minority(&self) -> bool {
        self.sharp_class == Some(SharpClass::Minority)
    }

    pub fn is_pixley(&self) -> bool {
        matches!(self.sharp_class, Some(SharpClass::Pixley(_)))
    }

    pub fn is_semiprojection(&self) -> bool {
        matches!(self.sharp_class, Some(SharpClass::Semiprojection(_)))
    }
}

/// Classifies `f` by exhaustively checking the defining identities of every
/// flag.
pub fn classify(f: &Operation) -> OpClass {
    let projection = f.projection_index();
    let idempotent = f.is_idempotent();
    let conservative = is_conservative(f);
    let commutative = if f.arity() == 2 {
        Some(is_commutative(f))
    } else {
        None
    };
    let near_unanimity = f.arity() >= 3 && is_near_unanimity(f);

    let sharp = projection.is_none() && f.arity() >= 2 && identifications_are_projections(f);
    let sharp_class = if sharp && f.arity() >= 3 {
        Some(sharp_class_of(f))
    } else {
        None
    };

    OpClass {
        projection,
        idempotent,
        sharp,
        near_unanimity,
        conservative,
        commutative,
        sharp_class,
    }
}

fn is_conservative(f: &Operation) -> bool {
    let d = f.domain();
    let k = f.arity();
    f.table()
        .iter()
        .enumerate()
        .all(|(idx, &v)| d.decode(k, idx).contains(&v))
}

fn is_commutative(f: &Operation) -> bool {
    let d = f.domain();
    d.labels()
        .all(|x| d.labels().all(|y| f.eval(&[x, y]) == f.eval(&[y, x])))
}

fn is_near_unanimity(f: &Operation) -> bool {
    let d = f.domain();
    let k = f.arity();
    for x in d.labels() {
        for y in d.labels() {
            let mut args = vec![x; k];
            for pos in 0..k {
                args[pos] = y;
                if f.eval(&args) != x {
                    return false;
                }
                args[pos] = x;
            }
        }
    }
    true
}

fn identifications_are_projections(f: &Operation) -> bool {
    let k = f.arity();
    for i in 1..=k {
        for j in (i + 1)..=k {
            let g = identify_args(f, i, j).expect("positions in range");
            if !g.is_projection() {
                return false;
            }
        }
    }
    true
}

/// The class of a sharp operation of arity ≥ 3.
///
/// Ternary operations are read off the three argument patterns; for higher
/// arities all identifications are checked to map back to one common witness
/// index, which exists by Świerczkowski's lemma.
fn sharp_class_of(f: &Operation) -> SharpClass {
    if f.arity() == 3 {
        ternary_pattern_class(f).expect("sharp ternary operations match a column pattern")
    } else {
        let i = semiprojection_type(f).expect("sharp operations of arity >= 4 are semiprojections");
        SharpClass::Semiprojection(i)
    }
}

/// Reads the values of `f` on `(x,x,y)`, `(x,y,x)`, `(y,x,x)` over all pairs
/// `x ≠ y`. Returns `None` when any pattern row is not uniformly `x` or `y`.
pub fn ternary_pattern_class(f: &Operation) -> Option<SharpClass> {
    debug_assert_eq!(f.arity(), 3);
    let d = f.domain();
    // row -> takes the value y (true) or x (false)
    let mut row_is_y = [false; 3];
    let mut initialized = false;
    for x in d.labels() {
        for y in d.labels() {
            if x == y {
                continue;
            }
            let rows = [f.eval(&[x, x, y]), f.eval(&[x, y, x]), f.eval(&[y, x, x])];
            let mut here = [false; 3];
            for (slot, &v) in here.iter_mut().zip(&rows) {
                if v == x {
                    *slot = false;
                } else if v == y {
                    *slot = true;
                } else {
                    return None;
                }
            }
            if initialized {
                if here != row_is_y {
                    return None;
                }
            } else {
                row_is_y = here;
                initialized = true;
            }
        }
    }
    Some(match row_is_y {
        [false, false, false] => SharpClass::Majority,
        [false, false, true] => SharpClass::Semiprojection(1),
        [false, true, false] => SharpClass::Semiprojection(2),
        [true, false, false] => SharpClass::Semiprojection(3),
        [false, true, true] => SharpClass::Pixley(1),
        [true, false, true] => SharpClass::Pixley(2),
        [true, true, false] => SharpClass::Pixley(3),
        [true, true, true] => SharpClass::Minority,
    })
}

/// The common witness index of a semiprojection, via the identifications.
///
/// Identifying arguments `(a, b)` of the projection `e_i^(k)` yields
/// `e_{m(i)}^(k−1)` with `m(i) = i` for `i < b`, `m(b) = a`, and
/// `m(i) = i−1` for `i > b`; a semiprojection of type `i` must produce
/// `e_{m(i)}` under every identification. Returns `None` when `f` is a
/// projection or some identification is not a projection or no common
/// witness exists.
pub fn semiprojection_type(f: &Operation) -> Option<usize> {
    let k = f.arity();
    if k < 3 || f.is_projection() {
        return None;
    }
    let mut candidates: Vec<usize> = (1..=k).collect();
    for a in 1..=k {
        for b in (a + 1)..=k {
            let g = identify_args(f, a, b).expect("positions in range");
            let j = g.projection_index()?;
            candidates.retain(|&i| {
                let m = if i < b {
                    i
                } else if i == b {
                    a
                } else {
                    i - 1
                };
                m == j
            });
            if candidates.is_empty() {
                return None;
            }
        }
    }
    candidates.first().copied()
}

/// Checks the defining property of a semiprojection directly: `f` returns
/// its `witness`-th argument on every tuple whose entries are not pairwise
/// distinct. Used as an independent oracle for [`semiprojection_type`].
pub fn is_semiprojection_by_definition(f: &Operation, witness: usize) -> bool {
    if f.is_projection() {
        return false;
    }
    let d = f.domain();
    let k = f.arity();
    for (idx, &v) in f.table().iter().enumerate() {
        let t = d.decode(k, idx);
        if pairwise_distinct(&t) {
            continue;
        }
        if v != t[witness - 1] {
            return false;
        }
    }
    true
}

pub fn pairwise_distinct(t: &[Label]) -> bool {
    for (i, a) in t.iter().enumerate() {
        if t[i + 1..].contains(a) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::FiniteDomain;

    fn d2() -> FiniteDomain {
        FiniteDomain::new(2).unwrap()
    }

    fn bool_majority() -> Operation {
        Operation::new(d2(), 3, vec![0, 0, 0, 1, 0, 1, 1, 1]).unwrap()
    }

    fn bool_xor3() -> Operation {
        Operation::new(d2(), 3, vec![0, 1, 1, 0, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn boolean_majority_is_majority() {
        let c = classify(&bool_majority());
        assert_eq!(c.sharp_class, Some(SharpClass::Majority));
        assert!(c.sharp && c.idempotent && c.near_unanimity && c.conservative);
        assert_eq!(c.projection, None);
    }

    #[test]
    fn boolean_xor3_is_minority() {
        let c = classify(&bool_xor3());
        assert_eq!(c.sharp_class, Some(SharpClass::Minority));
        assert!(c.sharp && c.idempotent);
        assert!(!c.near_unanimity);
    }

    #[test]
    fn projections_are_not_sharp() {
        let e1 = Operation::projection(d2(), 3, 1).unwrap();
        let c = classify(&e1);
        assert_eq!(c.projection, Some(1));
        assert!(!c.sharp);
        assert_eq!(c.sharp_class, None);
    }

    #[test]
    fn binary_flags() {
        let min = Operation::new(d2(), 2, vec![0, 0, 0, 1]).unwrap();
        let c = classify(&min);
        assert_eq!(c.commutative, Some(true));
        assert!(c.sharp && c.idempotent && c.conservative);
        assert_eq!(c.sharp_class, None);
    }

    #[test]
    fn ternary_semiprojection_on_three_elements() {
        let d = FiniteDomain::new(3).unwrap();
        // type-1 semiprojection: first argument on non-distinct tuples, 1 on
        // the pairwise-distinct ones (which e_1 maps to 0, 1, 1, 1, 2, 2)
        let mut table = Vec::new();
        for t in d.tuples(3) {
            table.push(if pairwise_distinct(&t) { 1 } else { t[0] });
        }
        let s = Operation::new(d, 3, table).unwrap();
        let c = classify(&s);
        assert_eq!(c.sharp_class, Some(SharpClass::Semiprojection(1)));
        assert!(is_semiprojection_by_definition(&s, 1));
        assert_eq!(semiprojection_type(&s), Some(1));
    }

    #[test]
    fn cyclic_shift_matches_transition_table() {
        use SharpClass::*;
        // identity row
        for c in [Majority, Minority, Pixley(1), Semiprojection(2)] {
            assert_eq!(c.cyclic_shift(0), c);
        }
        // shift by one: Mj S2 S3 S1 P3 P1 P2 Mn
        assert_eq!(Semiprojection(1).cyclic_shift(1), Semiprojection(2));
        assert_eq!(Semiprojection(3).cyclic_shift(1), Semiprojection(1));
        assert_eq!(Pixley(1).cyclic_shift(1), Pixley(3));
        assert_eq!(Pixley(2).cyclic_shift(1), Pixley(1));
        // shift by two: Mj S3 S1 S2 P2 P3 P1 Mn
        assert_eq!(Semiprojection(1).cyclic_shift(2), Semiprojection(3));
        assert_eq!(Pixley(1).cyclic_shift(2), Pixley(2));
        assert_eq!(Pixley(3).cyclic_shift(2), Pixley(1));
    }
}
