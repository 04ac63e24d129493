use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// One letter of a word: a group constant, or a variable with exponent
/// +1 or -1. Words are kept unreduced; only their images in the finite
/// group matter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    Const {
        #[serde(rename = "const")]
        konst: u32,
    },
    Var {
        var: usize,
        exp: i8,
    },
}

/// A word in group constants and variables, evaluated left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn validate(&self, group: &FiniteGroup, variables: usize) -> Result<()> {
        for l in &self.letters {
            match *l {
                Letter::Const { konst } => {
                    if konst >= group.order() {
                        return Err(Error::Usage(format!(
                            "constant {konst} out of range for order {}",
                            group.order()
                        )));
                    }
                }
                Letter::Var { var, exp } => {
                    if var >= variables {
                        return Err(Error::Usage(format!(
                            "variable x{var} out of range for {variables} variables"
                        )));
                    }
                    if exp != 1 && exp != -1 {
                        return Err(Error::Usage("exponents must be +1 or -1".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Left-to-right product after substituting the assignment.
    pub fn evaluate(&self, group: &FiniteGroup, assignment: &[u32]) -> u32 {
        let mut acc = FiniteGroup::IDENTITY;
        for l in &self.letters {
            let factor = match *l {
                Letter::Const { konst } => konst,
                Letter::Var { var, exp } => {
                    let v = assignment[var];
                    if exp == 1 {
                        v
                    } else {
                        group.inv(v)
                    }
                }
            };
            acc = group.mul(acc, factor);
        }
        acc
    }
}

/// An exhaustively computed solution set: all n-tuples satisfying every
/// word of the system, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub group: Arc<FiniteGroup>,
    pub variables: usize,
    pub tuples: Vec<Vec<u32>>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        self.tuples.iter().any(|t| t == tuple)
    }
}

/// Filters the full assignment space; |G|^n is capped.
pub fn solutions(
    system: &[Word],
    group: &Arc<FiniteGroup>,
    variables: usize,
    caps: &Caps,
) -> Result<SolutionSet> {
    for w in system {
        w.validate(group, variables)?;
    }
    let space = (group.order() as u64).saturating_pow(variables as u32);
    if space > caps.max_solution_space {
        return Err(Error::SizeLimit {
            what: "assignment space",
            needed: space,
            limit: caps.max_solution_space,
        });
    }
    let mut tuples = Vec::new();
    let mut assignment = vec![0u32; variables];
    loop {
        if system
            .iter()
            .all(|w| w.evaluate(group, &assignment) == FiniteGroup::IDENTITY)
        {
            tuples.push(assignment.clone());
        }
        let mut k = variables;
        loop {
            if k == 0 {
                return Ok(SolutionSet {
                    group: group.clone(),
                    variables,
                    tuples,
                });
            }
            k -= 1;
            assignment[k] += 1;
            if assignment[k] < group.order() {
                break;
            }
            assignment[k] = 0;
        }
    }
}

/// The words g x_i g^{-1} x_i^{-1} for i = 0..n: their common solution
/// set is the n-fold product of the centralizer of g.
pub fn commutation_system(group: &FiniteGroup, g: u32, variables: usize) -> Vec<Word> {
    (0..variables)
        .map(|i| {
            Word::new(vec![
                Letter::Const { konst: g },
                Letter::Var { var: i, exp: 1 },
                Letter::Const {
                    konst: group.inv(g),
                },
                Letter::Var { var: i, exp: -1 },
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::subgroup::centralizer;
    use proptest::prelude::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn sym(n: usize) -> Arc<FiniteGroup> {
        let big: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let gens = vec![
            Perm::from_cycles(n, "(0 1)").unwrap(),
            Perm::from_cycles(n, &format!("({})", big.join(" "))).unwrap(),
        ];
        FiniteGroup::from_permutations(format!("sym:{n}"), n, gens, &caps()).unwrap()
    }

    fn elem(g: &Arc<FiniteGroup>, cycles: &str) -> u32 {
        let degree = g.perm_repr().unwrap().degree;
        g.elem_index(&Perm::from_cycles(degree, cycles).unwrap())
            .unwrap()
    }

    #[test]
    fn empty_word_evaluates_to_identity() {
        let g = sym(4);
        let w = Word::new(vec![]);
        assert_eq!(w.evaluate(&g, &[]), 0);
    }

    #[test]
    fn free_reduction_is_immaterial() {
        let g = sym(4);
        let a = elem(&g, "(0 1 2)");
        // x0 * x0^{-1} * a evaluates to a for every assignment.
        let w = Word::new(vec![
            Letter::Var { var: 0, exp: 1 },
            Letter::Var { var: 0, exp: -1 },
            Letter::Const { konst: a },
        ]);
        for x in 0..g.order() {
            assert_eq!(w.evaluate(&g, &[x]), a);
        }
    }

    #[test]
    fn commutator_word_on_commuting_pair() {
        let g = sym(4);
        let t = elem(&g, "(0 1)");
        let w = Word::new(vec![
            Letter::Const { konst: t },
            Letter::Var { var: 0, exp: 1 },
            Letter::Const { konst: g.inv(t) },
            Letter::Var { var: 0, exp: -1 },
        ]);
        assert_eq!(w.evaluate(&g, &[t]), 0);
    }

    #[test]
    fn empty_system_is_solved_by_everything() {
        let g = sym(3);
        let s = solutions(&[], &g, 2, &caps()).unwrap();
        assert_eq!(s.len(), 36);
    }

    #[test]
    fn single_linear_equation_has_unique_solution() {
        let g = sym(4);
        let a = elem(&g, "(0 1 2 3)");
        let w = Word::new(vec![
            Letter::Var { var: 0, exp: 1 },
            Letter::Const { konst: a },
        ]);
        let s = solutions(&[w], &g, 1, &caps()).unwrap();
        assert_eq!(s.tuples, vec![vec![g.inv(a)]]);
    }

    #[test]
    fn commutation_solutions_are_centralizer_powers() {
        let g = sym(4);
        let t = elem(&g, "(0 1)");
        let system = commutation_system(&g, t, 2);
        let s = solutions(&system, &g, 2, &caps()).unwrap();
        assert_eq!(s.len(), 16);
        let c = centralizer(&g, t);
        for tuple in &s.tuples {
            assert!(tuple.iter().all(|&x| c.contains(x)));
        }
        let three = elem(&g, "(0 1 2)");
        let s1 = solutions(&commutation_system(&g, three, 1), &g, 1, &caps()).unwrap();
        assert_eq!(s1.len(), 3);
    }

    #[test]
    fn zero_variable_commutation_system_is_empty() {
        let g = sym(4);
        assert!(commutation_system(&g, 1, 0).is_empty());
        let s = solutions(&[], &g, 0, &caps()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.tuples, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn identity_commutation_is_solved_by_all_tuples() {
        let g = sym(3);
        let system = commutation_system(&g, 0, 1);
        let s = solutions(&system, &g, 1, &caps()).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let g = sym(5);
        let mut tight = caps();
        tight.max_solution_space = 100;
        assert!(matches!(
            solutions(&[], &g, 2, &tight),
            Err(Error::SizeLimit { .. })
        ));
    }

    prop_compose! {
        fn arb_word(order: u32, variables: usize)(
            letters in proptest::collection::vec(
                prop_oneof![
                    (0..order).prop_map(|konst| Letter::Const { konst }),
                    (0..variables, prop_oneof![Just(1i8), Just(-1i8)])
                        .prop_map(|(var, exp)| Letter::Var { var, exp }),
                ],
                0..5,
            )
        ) -> Word {
            Word::new(letters)
        }
    }

    proptest! {
        // Solutions of a union are the intersection of solutions.
        #[test]
        fn union_of_systems_intersects_solutions(
            a in proptest::collection::vec(arb_word(6, 2), 0..3),
            b in proptest::collection::vec(arb_word(6, 2), 0..3),
        ) {
            let g = sym(3);
            let sa = solutions(&a, &g, 2, &caps()).unwrap();
            let sb = solutions(&b, &g, 2, &caps()).unwrap();
            let mut joined = a.clone();
            joined.extend(b.clone());
            let sj = solutions(&joined, &g, 2, &caps()).unwrap();
            let expected: Vec<Vec<u32>> = sa
                .tuples
                .iter()
                .filter(|t| sb.tuples.contains(t))
                .cloned()
                .collect();
            prop_assert_eq!(sj.tuples, expected);
        }

        // Conjugating every constant bijects solution sets coordinatewise.
        #[test]
        fn conjugation_bijects_solutions(
            system in proptest::collection::vec(arb_word(6, 2), 0..3),
            h in 0u32..6,
        ) {
            let g = sym(3);
            let conjugated: Vec<Word> = system
                .iter()
                .map(|w| Word::new(
                    w.letters
                        .iter()
                        .map(|l| match *l {
                            Letter::Const { konst } => Letter::Const { konst: g.conj(h, konst) },
                            v => v,
                        })
                        .collect(),
                ))
                .collect();
            let s = solutions(&system, &g, 2, &caps()).unwrap();
            let sc = solutions(&conjugated, &g, 2, &caps()).unwrap();
            let mut mapped: Vec<Vec<u32>> = s
                .tuples
                .iter()
                .map(|t| t.iter().map(|&x| g.conj(h, x)).collect())
                .collect();
            mapped.sort();
            let mut actual = sc.tuples.clone();
            actual.sort();
            prop_assert_eq!(actual, mapped);
        }
    }
}
