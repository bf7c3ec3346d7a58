use crate::error::{Error, Result};

/// A label of a finite domain; labels are always `0..size`.
pub type Label = usize;

/// A fixed finite set of labels `{0, …, size−1}` with at least two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteDomain {
    size: usize,
}

impl FiniteDomain {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::input(format!(
                "domain must have at least two labels, got {size}"
            )));
        }
        Ok(FiniteDomain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone {
        0..self.size
    }

    pub fn contains(&self, l: Label) -> bool {
        l < self.size
    }

    /// Number of `arity`-tuples over the domain, checked against overflow.
    pub fn tuple_count(&self, arity: usize) -> Result<usize> {
        let mut n: usize = 1;
        for _ in 0..arity {
            n = n.checked_mul(self.size).ok_or_else(|| {
                Error::input(format!("|D|^{arity} overflows for |D| = {}", self.size))
            })?;
        }
        Ok(n)
    }

    /// Encodes a tuple as a table index, first coordinate most significant.
    pub fn encode(&self, tuple: &[Label]) -> usize {
        let mut idx = 0;
        for &t in tuple {
            debug_assert!(t < self.size);
            idx = idx * self.size + t;
        }
        idx
    }

    /// Inverse of [`encode`](Self::encode) for tuples of length `arity`.
    pub fn decode(&self, arity: usize, mut idx: usize) -> Vec<Label> {
        let mut tuple = vec![0; arity];
        for slot in tuple.iter_mut().rev() {
            *slot = idx % self.size;
            idx /= self.size;
        }
        tuple
    }

    /// All `arity`-tuples in lexicographic order.
    pub fn tuples(&self, arity: usize) -> Tuples {
        Tuples {
            size: self.size,
            arity,
            next: Some(vec![0; arity]),
        }
    }
}

/// Lexicographic odometer over `{0,…,size−1}^arity`.
pub struct Tuples {
    size: usize,
    arity: usize,
    next: Option<Vec<Label>>,
}

impl Iterator for Tuples {
    type Item = Vec<Label>;

    fn next(&mut self) -> Option<Vec<Label>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.arity;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.size {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial_domains() {
        assert!(FiniteDomain::new(0).is_err());
        assert!(FiniteDomain::new(1).is_err());
        assert!(FiniteDomain::new(2).is_ok());
    }

    #[test]
    fn encode_decode_round_trip() {
        let d = FiniteDomain::new(3).unwrap();
        for (i, t) in d.tuples(3).enumerate() {
            assert_eq!(d.encode(&t), i);
            assert_eq!(d.decode(3, i), t);
        }
        assert_eq!(d.tuples(3).count(), 27);
    }

    #[test]
    fn first_coordinate_most_significant() {
        let d = FiniteDomain::new(2).unwrap();
        assert_eq!(d.encode(&[1, 0, 0]), 4);
        assert_eq!(d.encode(&[0, 0, 1]), 1);
    }
}
