use std::sync::Arc;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::Morphism;

/// A subgroup of a fixed parent group, stored as a member bitset plus a
/// generating list with `members == closure(generators)`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: BitSet,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> u32 {
        self.members.count() as u32
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn member_ids(&self) -> Vec<u32> {
        self.members.iter().map(|i| i as u32).collect()
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: BitSet::singleton(parent.order() as usize, 0),
            gens: Vec::new(),
        }
    }

    pub fn full(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: BitSet::full(parent.order() as usize),
            gens: parent.gens().to_vec(),
        }
    }

    /// Wraps an already-closed member set, deriving generators greedily.
    /// Panics in debug builds if the set is not closed.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: BitSet) -> Subgroup {
        debug_assert!(members.contains(0));
        let gens = greedy_generators(parent, &members);
        debug_assert_eq!(close_set(parent, &gens).count(), members.count());
        Subgroup {
            parent: parent.clone(),
            members,
            gens,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.parent.gens().iter().all(|&g| {
            self.gens
                .iter()
                .all(|&x| self.members.contains(self.parent.conj(g, x) as usize))
        })
    }

    /// (order, members) canonical comparison.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.members.canonical_cmp(&other.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.order(),
            self.parent.label()
        )
    }
}

fn close_set(g: &FiniteGroup, seed: &[u32]) -> BitSet {
    let n = g.order() as usize;
    let mut members = BitSet::new(n);
    members.insert(0);
    let mut list = vec![0u32];
    let mut cursor = 0;
    while cursor < list.len() {
        for &s in seed {
            let y = g.mul(list[cursor], s);
            if members.insert(y as usize) {
                list.push(y);
            }
        }
        cursor += 1;
    }
    members
}

fn greedy_generators(g: &FiniteGroup, members: &BitSet) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut closed = BitSet::new(g.order() as usize);
    closed.insert(0);
    for x in members.iter() {
        if closed.contains(x) {
            continue;
        }
        gens.push(x as u32);
        closed = close_set(g, &gens);
        if closed.count() == members.count() {
            break;
        }
    }
    gens
}

/// Smallest subgroup containing the seed.
pub fn subgroup_closure(parent: &Arc<FiniteGroup>, seed: &[u32]) -> Subgroup {
    let members = close_set(parent, seed);
    // Keep only the seed elements that enlarge the closure, in order.
    let mut gens = Vec::new();
    let mut sofar = BitSet::new(parent.order() as usize);
    sofar.insert(0);
    for &s in seed {
        if !sofar.contains(s as usize) {
            gens.push(s);
            sofar = close_set(parent, &gens);
        }
    }
    Subgroup {
        parent: parent.clone(),
        members,
        gens,
    }
}

/// Smallest subgroup containing the seed and stable under conjugation by
/// every member of `under`: the seed's conjugation orbit is closed first,
/// then the orbit set is closed under products. A subgroup generated by a
/// conjugation-stable set is itself conjugation-stable.
pub fn normal_closure(parent: &Arc<FiniteGroup>, under: &Subgroup, seed: &[u32]) -> Subgroup {
    let n = parent.order() as usize;
    let mut orbit = BitSet::new(n);
    let mut list: Vec<u32> = Vec::new();
    for &s in seed {
        if orbit.insert(s as usize) {
            list.push(s);
        }
    }
    let mut cursor = 0;
    while cursor < list.len() {
        for &g in under.gens() {
            let y = parent.conj(g, list[cursor]);
            if orbit.insert(y as usize) {
                list.push(y);
            }
        }
        cursor += 1;
    }
    let members = close_set(parent, &list);
    let mut gens = Vec::new();
    let mut sofar = BitSet::new(n);
    sofar.insert(0);
    for &s in &list {
        if !sofar.contains(s as usize) {
            gens.push(s);
            sofar = close_set(parent, &gens);
        }
    }
    Subgroup {
        parent: parent.clone(),
        members,
        gens,
    }
}

/// Subgroup generated by all commutators [a, b] with a in A, b in B.
pub fn commutator_subgroup(parent: &Arc<FiniteGroup>, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let n = parent.order() as usize;
    let mut comms = BitSet::new(n);
    let mut list = Vec::new();
    for x in a.members.iter() {
        for y in b.members.iter() {
            let c = parent.commutator(x as u32, y as u32);
            if c != 0 && comms.insert(c as usize) {
                list.push(c);
            }
        }
    }
    list.sort_unstable();
    subgroup_closure(parent, &list)
}

/// [I, J] for normal I, J: the normal closure of the generator-level
/// commutators. Valid because two subgroups commute elementwise exactly
/// when their generators do (in any quotient), so the member-level and
/// generator-level commutator sets generate the same normal subgroup.
pub fn normal_commutator_subgroup(
    parent: &Arc<FiniteGroup>,
    i: &Subgroup,
    j: &Subgroup,
) -> Subgroup {
    debug_assert!(i.is_normal() && j.is_normal());
    let mut seed = Vec::new();
    for &a in i.gens() {
        for &b in j.gens() {
            let c = parent.commutator(a, b);
            if c != 0 && !seed.contains(&c) {
                seed.push(c);
            }
        }
    }
    normal_closure(parent, &Subgroup::full(parent), &seed)
}

/// Whether the subgroups generated by `a` and `b` commute elementwise,
/// i.e. their commutator subgroup is trivial.
pub fn subgroups_commute(parent: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    for x in a.members.iter() {
        for y in b.members.iter() {
            let (x, y) = (x as u32, y as u32);
            if parent.mul(x, y) != parent.mul(y, x) {
                return false;
            }
        }
    }
    true
}

/// {g : gx = xg}
pub fn centralizer(parent: &Arc<FiniteGroup>, x: u32) -> Subgroup {
    let n = parent.order() as usize;
    let mut members = BitSet::new(n);
    for g in 0..parent.order() {
        if parent.mul(g, x) == parent.mul(x, g) {
            members.insert(g as usize);
        }
    }
    Subgroup::from_members(parent, members)
}

/// {h : h K h^{-1} = K}
pub fn normalizer(parent: &Arc<FiniteGroup>, k: &Subgroup) -> Subgroup {
    let n = parent.order() as usize;
    let mut members = BitSet::new(n);
    for h in 0..parent.order() {
        let stable = k
            .gens()
            .iter()
            .all(|&x| k.members.contains(parent.conj(h, x) as usize));
        if stable {
            members.insert(h as usize);
        }
    }
    Subgroup::from_members(parent, members)
}

/// The complete list of normal subgroups, sorted by (order, members).
///
/// Every normal subgroup is a union of conjugacy classes, so the normal
/// lattice is generated by walking: start from the trivial subgroup and
/// repeatedly close a known normal subgroup together with one more class.
/// Each target N is reached along the chain that adds its classes one at
/// a time, and the walk cost is bounded by (normals x classes) closures
/// rather than by the number of class subsets.
pub fn normal_subgroups(parent: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<Subgroup>> {
    let classes = parent.conjugacy_classes();
    if classes.len() > caps.max_class_count {
        return Err(Error::SizeLimit {
            what: "conjugacy class count",
            needed: classes.len() as u64,
            limit: caps.max_class_count as u64,
        });
    }
    let mut found: Vec<Subgroup> = vec![Subgroup::trivial(parent)];
    let mut queue = vec![0usize];
    while let Some(idx) = queue.pop() {
        let base = found[idx].clone();
        for class in &classes {
            if class.iter().all(|&x| base.members.contains(x as usize)) {
                continue;
            }
            // Generators suffice as the seed; the class completes it.
            let mut seed: Vec<u32> = base.gens.clone();
            seed.extend(class.iter().copied());
            let bigger = subgroup_closure(parent, &seed);
            if !found.iter().any(|s| s.members == bigger.members) {
                found.push(bigger);
                queue.push(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok(found)
}

/// Cayley-table quotient by a normal subgroup, with coset ids ordered by
/// least member (so the identity coset is id 0), plus the projection.
pub fn quotient(parent: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, Morphism)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = parent.order() as usize;
    let mut coset_of = vec![u32::MAX; order];
    let mut reps: Vec<u32> = Vec::new();
    for x in 0..order as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for m in n.members.iter() {
            let y = parent.mul(x, m as u32);
            debug_assert_eq!(coset_of[y as usize], u32::MAX);
            coset_of[y as usize] = id;
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            mul[a * q + b] = coset_of[parent.mul(reps[a], reps[b]) as usize];
        }
    }
    let mut gens = Vec::new();
    for &g in parent.gens() {
        let img = coset_of[g as usize];
        if img != 0 && !gens.contains(&img) {
            gens.push(img);
        }
    }
    let label = format!("{}/{}", parent.label(), n.order());
    let quotient_group = FiniteGroup::from_table_unchecked(label, mul, q, gens);
    let projection = Morphism::new_unchecked(parent.clone(), quotient_group.clone(), coset_of);
    Ok((quotient_group, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

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
    fn closure_of_three_cycle_in_s3() {
        let g = sym(3);
        let c = subgroup_closure(&g, &[elem(&g, "(0 1 2)")]);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn closure_of_empty_seed_is_trivial() {
        let g = sym(4);
        assert_eq!(subgroup_closure(&g, &[]).order(), 1);
    }

    #[test]
    fn transposition_and_four_cycle_generate_s4() {
        let g = sym(4);
        let c = subgroup_closure(&g, &[elem(&g, "(0 1)"), elem(&g, "(0 1 2 3)")]);
        assert_eq!(c.order(), 24);
    }

    #[test]
    fn closure_is_idempotent_on_members() {
        let g = sym(4);
        let c = subgroup_closure(&g, &[elem(&g, "(0 1 2)"), elem(&g, "(0 1)")]);
        let again = subgroup_closure(&g, &c.member_ids());
        assert_eq!(again, c);
    }

    #[test]
    fn normal_closure_of_double_transposition_is_klein() {
        let g = sym(4);
        let full = Subgroup::full(&g);
        let k = normal_closure(&g, &full, &[elem(&g, "(0 1)(2 3)")]);
        assert_eq!(k.order(), 4);
        assert!(k.is_normal());
    }

    #[test]
    fn normal_closure_of_three_cycle_in_s5_is_alternating() {
        let g = sym(5);
        let full = Subgroup::full(&g);
        let a5 = normal_closure(&g, &full, &[elem(&g, "(0 1 2)")]);
        assert_eq!(a5.order(), 60);
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let g = sym(4);
        let full = Subgroup::full(&g);
        assert!(normal_closure(&g, &full, &[0]).is_trivial());
    }

    #[test]
    fn commutator_of_klein_with_itself_is_trivial() {
        let g = sym(4);
        let full = Subgroup::full(&g);
        let k = normal_closure(&g, &full, &[elem(&g, "(0 1)(2 3)")]);
        assert!(commutator_subgroup(&g, &k, &k).is_trivial());
        assert!(subgroups_commute(&g, &k, &k));
    }

    #[test]
    fn alternating_five_is_perfect() {
        let g = sym(5);
        let full = Subgroup::full(&g);
        let a5 = normal_closure(&g, &full, &[elem(&g, "(0 1 2)")]);
        let derived = commutator_subgroup(&g, &a5, &a5);
        assert_eq!(derived, a5);
    }

    #[test]
    fn commutator_with_trivial_is_trivial() {
        let g = sym(4);
        let t = Subgroup::trivial(&g);
        let f = Subgroup::full(&g);
        assert!(commutator_subgroup(&g, &t, &f).is_trivial());
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let g = sym(4);
        let normals = normal_subgroups(&g, &caps()).unwrap();
        let orders: Vec<u32> = normals.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(normals.iter().all(|s| s.is_normal()));
    }

    #[test]
    fn alternating_five_is_simple() {
        let g = sym(5);
        let full = Subgroup::full(&g);
        let a5 = normal_closure(&g, &full, &[elem(&g, "(0 1 2)")]);
        // Work inside A5: rebuild it as its own parent group.
        let gens: Vec<Perm> = a5
            .gens()
            .iter()
            .map(|&x| g.perm_of(x).unwrap().clone())
            .collect();
        let alt = FiniteGroup::from_permutations("alt:5", 5, gens, &caps()).unwrap();
        let normals = normal_subgroups(&alt, &caps()).unwrap();
        assert_eq!(
            normals.iter().map(|s| s.order()).collect::<Vec<_>>(),
            vec![1, 60]
        );
    }

    #[test]
    fn cyclic_six_has_four_normals() {
        let c6 = FiniteGroup::from_permutations(
            "cyc:6",
            6,
            vec![Perm::from_cycles(6, "(0 1 2 3 4 5)").unwrap()],
            &caps(),
        )
        .unwrap();
        let normals = normal_subgroups(&c6, &caps()).unwrap();
        assert_eq!(
            normals.iter().map(|s| s.order()).collect::<Vec<_>>(),
            vec![1, 2, 3, 6]
        );
    }

    #[test]
    fn quotient_of_s4_by_klein_is_s3_shaped() {
        let g = sym(4);
        let full = Subgroup::full(&g);
        let k = normal_closure(&g, &full, &[elem(&g, "(0 1)(2 3)")]);
        let (q, proj) = quotient(&g, &k).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(proj.kernel().members(), k.members());
        assert_eq!(g.order(), k.order() * q.order());
    }

    #[test]
    fn quotient_by_trivial_is_bijective() {
        let g = sym(3);
        let t = Subgroup::trivial(&g);
        let (q, proj) = quotient(&g, &t).unwrap();
        assert_eq!(q.order(), g.order());
        assert!(proj.is_bijective());
    }

    #[test]
    fn quotient_by_full_is_trivial() {
        let g = sym(3);
        let f = Subgroup::full(&g);
        let (q, _) = quotient(&g, &f).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = sym(3);
        let s2 = subgroup_closure(&g, &[elem(&g, "(0 1)")]);
        assert!(matches!(quotient(&g, &s2), Err(Error::NotNormal)));
    }

    #[test]
    fn quotient_projections_are_homomorphisms() {
        let g = sym(4);
        for n in normal_subgroups(&g, &caps()).unwrap() {
            let (_, proj) = quotient(&g, &n).unwrap();
            proj.validate().unwrap();
        }
    }

    #[test]
    fn normal_commutator_matches_member_level_route() {
        let g = sym(4);
        let normals = normal_subgroups(&g, &caps()).unwrap();
        for a in &normals {
            for b in &normals {
                assert_eq!(
                    normal_commutator_subgroup(&g, a, b),
                    commutator_subgroup(&g, a, b)
                );
            }
        }
    }

    #[test]
    fn centralizer_of_transposition_in_s4() {
        let g = sym(4);
        let c = centralizer(&g, elem(&g, "(0 1)"));
        assert_eq!(c.order(), 4);
    }

    #[test]
    fn normalizer_of_full_group_is_full() {
        let g = sym(4);
        let f = Subgroup::full(&g);
        assert_eq!(normalizer(&g, &f), f);
    }
}
