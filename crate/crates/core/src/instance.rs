//! VCSP instances: sums of valued constraints, brute-force optimization and
//! expressibility.

use crate::domain::{FiniteDomain, Label};
use crate::error::{Error, Result};
use crate::rational::ExtRational;
use crate::relation::WeightedRelation;

pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub relation: WeightedRelation,
    pub scope: Vec<usize>,
}

/// An objective function `I(x_1,…,x_n) = Σ_i φ_i(scope_i)`; constraints may
/// repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspInstance {
    domain: FiniteDomain,
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl VcspInstance {
    pub fn new(
        domain: FiniteDomain,
        num_vars: usize,
        constraints: Vec<Constraint>,
    ) -> Result<Self> {
        for (i, c) in constraints.iter().enumerate() {
            if c.relation.domain() != domain {
                return Err(Error::input(format!(
                    "constraint {i} uses a relation on a different domain"
                )));
            }
            if c.scope.len() != c.relation.arity() {
                return Err(Error::input(format!(
                    "constraint {i} scope has {} variables but the relation is {}-ary",
                    c.scope.len(),
                    c.relation.arity()
                )));
            }
            if let Some(&v) = c.scope.iter().find(|&&v| v >= num_vars) {
                return Err(Error::input(format!(
                    "constraint {i} references variable {v} but the instance has {num_vars}"
                )));
            }
        }
        Ok(VcspInstance {
            domain,
            num_vars,
            constraints,
        })
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn evaluate(&self, assignment: &[Label]) -> ExtRational {
        debug_assert_eq!(assignment.len(), self.num_vars);
        let mut total = ExtRational::zero();
        let mut args = Vec::new();
        for c in &self.constraints {
            args.clear();
            args.extend(c.scope.iter().map(|&v| assignment[v]));
            total = &total + c.relation.value(&args);
            if total == ExtRational::Infinite {
                return total;
            }
        }
        total
    }

    fn check_cap(&self, cap: Option<u128>) -> Result<()> {
        let cap = cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP);
        let mut count: u128 = 1;
        for _ in 0..self.num_vars {
            count = count.saturating_mul(self.domain.size() as u128);
        }
        if count > cap {
            return Err(Error::resource(
                format!(
                    "brute force over {} assignments of {} variables",
                    count, self.num_vars
                ),
                count,
                cap,
            ));
        }
        Ok(())
    }

    /// Exhaustive minimization. Returns the exact optimum and the set of
    /// minimizing assignments in lexicographic order (all of them, or the
    /// first `max_argmin` when given).
    pub fn solve_bruteforce(
        &self,
        cap: Option<u128>,
        max_argmin: Option<usize>,
    ) -> Result<BruteForceResult> {
        self.check_cap(cap)?;
        let mut best = ExtRational::Infinite;
        let mut argmin: Vec<Vec<Label>> = Vec::new();
        let mut truncated = false;
        for assignment in self.domain.tuples(self.num_vars) {
            let cost = self.evaluate(&assignment);
            if cost < best {
                best = cost;
                argmin.clear();
                argmin.push(assignment);
                truncated = false;
            } else if cost == best {
                if max_argmin.is_none_or(|r| argmin.len() < r) {
                    argmin.push(assignment);
                } else {
                    truncated = true;
                }
            }
        }
        if let Some(r) = max_argmin {
            if argmin.len() > r {
                argmin.truncate(r);
                truncated = true;
            }
        }
        Ok(BruteForceResult {
            optimum: best,
            argmin,
            truncated,
        })
    }

    /// Expresses a weighted relation over the ordered free variables by
    /// minimizing the objective over all the others. An entry is ∞ when no
    /// finite completion exists (in particular when the instance is over the
    /// empty set of constraints the result is identically 0).
    pub fn express(&self, free_vars: &[usize], cap: Option<u128>) -> Result<WeightedRelation> {
        if free_vars.is_empty() {
            return Err(Error::input("express needs at least one free variable"));
        }
        let mut seen = vec![false; self.num_vars];
        for &v in free_vars {
            if v >= self.num_vars {
                return Err(Error::input(format!(
                    "free variable {v} out of range 0..{}",
                    self.num_vars
                )));
            }
            if seen[v] {
                return Err(Error::input(format!("free variable {v} repeated")));
            }
            seen[v] = true;
        }
        self.check_cap(cap)?;
        let bound: Vec<usize> = (0..self.num_vars).filter(|v| !seen[*v]).collect();

        let mut assignment = vec![0; self.num_vars];
        WeightedRelation::from_fn(self.domain, free_vars.len(), |free_tuple| {
            for (&v, &x) in free_vars.iter().zip(free_tuple) {
                assignment[v] = x;
            }
            let mut best = ExtRational::Infinite;
            if bound.is_empty() {
                return self.evaluate(&assignment);
            }
            for bound_tuple in self.domain.tuples(bound.len()) {
                for (&v, &x) in bound.iter().zip(&bound_tuple) {
                    assignment[v] = x;
                }
                let cost = self.evaluate(&assignment);
                if cost < best {
                    best = cost;
                }
            }
            best
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceResult {
    pub optimum: ExtRational,
    pub argmin: Vec<Vec<Label>>,
    pub truncated: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn d2() -> FiniteDomain {
        FiniteDomain::new(2).unwrap()
    }

    #[test]
    fn empty_instance_minimizes_to_zero_everywhere() {
        let inst = VcspInstance::new(d2(), 2, vec![]).unwrap();
        let res = inst.solve_bruteforce(None, None).unwrap();
        assert_eq!(res.optimum, ExtRational::zero());
        assert_eq!(res.argmin.len(), 4);
        assert!(!res.truncated);
    }

    #[test]
    fn maxcut_gadget_optimum_and_argmin() {
        let d3 = FiniteDomain::new(3).unwrap();
        let inst = VcspInstance::new(
            d3,
            2,
            vec![Constraint {
                relation: fixtures::maxcut_gadget_relation(),
                scope: vec![0, 1],
            }],
        )
        .unwrap();
        let res = inst.solve_bruteforce(None, None).unwrap();
        assert_eq!(res.optimum, ExtRational::zero());
        assert_eq!(res.argmin, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn xor_triangle_optimum_is_one() {
        let xor = fixtures::xor_relation();
        let edges = [(0, 1), (1, 2), (0, 2)];
        let constraints = edges
            .iter()
            .map(|&(a, b)| Constraint {
                relation: xor.clone(),
                scope: vec![a, b],
            })
            .collect();
        let inst = VcspInstance::new(d2(), 3, constraints).unwrap();
        let res = inst.solve_bruteforce(None, None).unwrap();
        assert_eq!(res.optimum, ExtRational::from_int(1));
    }

    #[test]
    fn express_without_auxiliaries_reproduces_relation() {
        let xor = fixtures::xor_relation();
        let inst = VcspInstance::new(
            d2(),
            2,
            vec![Constraint {
                relation: xor.clone(),
                scope: vec![0, 1],
            }],
        )
        .unwrap();
        assert_eq!(inst.express(&[0, 1], None).unwrap(), xor);
    }

    #[test]
    fn express_chain_of_xors_gives_equality_cost() {
        // xor(y1, x) + xor(x, y2) minimized over x: 0 on equal pairs, 1 on
        // unequal ones
        let xor = fixtures::xor_relation();
        let inst = VcspInstance::new(
            d2(),
            3,
            vec![
                Constraint {
                    relation: xor.clone(),
                    scope: vec![0, 2],
                },
                Constraint {
                    relation: xor,
                    scope: vec![2, 1],
                },
            ],
        )
        .unwrap();
        let expressed = inst.express(&[0, 1], None).unwrap();
        assert_eq!(
            expressed.values(),
            &[
                ExtRational::zero(),
                ExtRational::from_int(1),
                ExtRational::from_int(1),
                ExtRational::zero(),
            ]
        );
    }

    #[test]
    fn brute_force_cap_is_enforced() {
        let inst = VcspInstance::new(d2(), 40, vec![]).unwrap();
        assert!(matches!(
            inst.solve_bruteforce(Some(1000), None),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn argmin_truncation_flag() {
        let inst = VcspInstance::new(d2(), 3, vec![]).unwrap();
        let res = inst.solve_bruteforce(None, Some(2)).unwrap();
        assert_eq!(res.argmin.len(), 2);
        assert!(res.truncated);
    }
}
