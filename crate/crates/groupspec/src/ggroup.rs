use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::Morphism;
use crate::subgroup::{subgroup_closure, subgroups_commute, Subgroup};

/// A group with a distinguished injective embedding of a base group.
///
/// The embedding image drives everything downstream: orbit subgroups are
/// normal closures under conjugation by the image, and zero divisors,
/// domains, and primes are defined through them.
#[derive(Clone)]
pub struct GGroup {
    base: Arc<FiniteGroup>,
    ambient: Arc<FiniteGroup>,
    embedding: Morphism,
    image: Subgroup,
}

impl GGroup {
    /// Rejects non-injective embeddings.
    pub fn new(embedding: Morphism) -> Result<GGroup> {
        if !embedding.is_injective() {
            return Err(Error::NotInjective);
        }
        let base = embedding.source().clone();
        let ambient = embedding.target().clone();
        let image_members = embedding.image_set(&BitSet::full(base.order() as usize));
        let image = Subgroup::from_members(&ambient, image_members);
        Ok(GGroup {
            base,
            ambient,
            embedding,
            image,
        })
    }

    pub fn identity_structure(group: &Arc<FiniteGroup>) -> GGroup {
        GGroup::new(Morphism::identity(group)).expect("identity is injective")
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn embedding(&self) -> &Morphism {
        &self.embedding
    }

    /// The embedded copy of the base inside the ambient group.
    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    /// Partition of the ambient group into conjugation orbits under the
    /// embedded base, with the orbit subgroup of each orbit.
    ///
    /// The orbit subgroup G(x) is conjugation-stable, so every member of
    /// an orbit shares it; zero-divisor scans only ever need one orbit
    /// representative per side.
    pub fn orbit_analysis(&self) -> OrbitAnalysis {
        let n = self.ambient.order() as usize;
        let gens: Vec<u32> = self.image.gens().to_vec();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if orbit_of[start as usize] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            orbit_of[start as usize] = id;
            let mut cursor = 0;
            while cursor < members.len() {
                for &g in &gens {
                    let y = self.ambient.conj(g, members[cursor]);
                    if orbit_of[y as usize] == usize::MAX {
                        orbit_of[y as usize] = id;
                        members.push(y);
                    }
                }
                cursor += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        let mut subgroups: Vec<Subgroup> = Vec::new();
        let mut subgroup_of_orbit = Vec::with_capacity(orbits.len());
        for members in &orbits {
            let sub = subgroup_closure(&self.ambient, members);
            let idx = subgroups
                .iter()
                .position(|s| s == &sub)
                .unwrap_or_else(|| {
                    subgroups.push(sub);
                    subgroups.len() - 1
                });
            subgroup_of_orbit.push(idx);
        }
        OrbitAnalysis {
            orbit_of,
            orbits,
            subgroup_of_orbit,
            subgroups,
        }
    }

    /// G(x): the subgroup generated by the conjugates of x by the
    /// embedded base.
    pub fn orbit_subgroup(&self, x: u32) -> Subgroup {
        let n = self.ambient.order() as usize;
        let mut orbit = BitSet::new(n);
        let mut list = vec![x];
        orbit.insert(x as usize);
        let mut cursor = 0;
        while cursor < list.len() {
            for &g in self.image.gens() {
                let y = self.ambient.conj(g, list[cursor]);
                if orbit.insert(y as usize) {
                    list.push(y);
                }
            }
            cursor += 1;
        }
        list.sort_unstable();
        subgroup_closure(&self.ambient, &list)
    }

    /// Whether G(x) meets the embedded base nontrivially.
    pub fn is_invertible(&self, x: u32) -> bool {
        let orbit = self.orbit_subgroup(x);
        orbit.members().intersection(self.image.members()).count() > 1
    }

    /// For nontrivial x: the least nontrivial y with [G(x), G(y)] trivial,
    /// if any. The witness may equal x, and may lie in the embedded base.
    pub fn zero_divisor_witness(&self, x: u32) -> Result<Option<u32>> {
        if x == FiniteGroup::IDENTITY {
            return Err(Error::Usage(
                "zero-divisor test is defined for nontrivial elements".into(),
            ));
        }
        let analysis = self.orbit_analysis();
        Ok(analysis.least_commuting_partner(self.ambient.as_ref(), x))
    }

    pub fn is_zero_divisor(&self, x: u32) -> Result<bool> {
        Ok(self.zero_divisor_witness(x)?.is_some())
    }

    /// Scans for a zero divisor, pruned to one representative per
    /// conjugation orbit on each side.
    pub fn domain_verdict(&self) -> DomainVerdict {
        let analysis = self.orbit_analysis();
        let k = analysis.subgroups.len();
        let mut commute = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i..k {
                let c = subgroups_commute(
                    self.ambient.as_ref(),
                    &analysis.subgroups[i],
                    &analysis.subgroups[j],
                );
                commute[i][j] = c;
                commute[j][i] = c;
            }
        }
        // Orbits are discovered in ascending order of least member, and
        // orbit 0 is the identity singleton; the first qualifying orbit
        // pair therefore yields the least witness pair.
        for oi in 1..analysis.orbits.len() {
            let si = analysis.subgroup_of_orbit[oi];
            let qualifies = (1..analysis.orbits.len()).any(|oj| {
                commute[si][analysis.subgroup_of_orbit[oj]]
            });
            if qualifies {
                let x = analysis.orbits[oi][0];
                let y = (1..analysis.orbits.len())
                    .filter(|&oj| commute[si][analysis.subgroup_of_orbit[oj]])
                    .map(|oj| analysis.orbits[oj][0])
                    .min()
                    .expect("qualifying orbit");
                return DomainVerdict {
                    is_domain: false,
                    witness: Some(ZeroDivisorWitness {
                        x,
                        y,
                        orbit_subgroup_order: analysis.subgroups[si].order(),
                    }),
                };
            }
        }
        DomainVerdict {
            is_domain: true,
            witness: None,
        }
    }

    pub fn is_domain(&self) -> bool {
        self.domain_verdict().is_domain
    }
}

impl std::fmt::Debug for GGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GGroup({} in {})",
            self.base.label(),
            self.ambient.label()
        )
    }
}

/// Conjugation-orbit data for one G-group: the orbit partition of the
/// ambient group and the (deduplicated) orbit subgroups.
pub struct OrbitAnalysis {
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<u32>>,
    subgroup_of_orbit: Vec<usize>,
    subgroups: Vec<Subgroup>,
}

impl OrbitAnalysis {
    pub fn orbit_of(&self, x: u32) -> usize {
        self.orbit_of[x as usize]
    }

    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    pub fn orbit_subgroup(&self, x: u32) -> &Subgroup {
        &self.subgroups[self.subgroup_of_orbit[self.orbit_of[x as usize]]]
    }

    pub fn subgroup_index_of_orbit(&self, orbit: usize) -> usize {
        self.subgroup_of_orbit[orbit]
    }

    pub fn distinct_subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    fn least_commuting_partner(&self, ambient: &FiniteGroup, x: u32) -> Option<u32> {
        let sx = &self.subgroups[self.subgroup_of_orbit[self.orbit_of[x as usize]]];
        let mut qualifying: Vec<bool> = vec![false; self.subgroups.len()];
        for (i, s) in self.subgroups.iter().enumerate() {
            qualifying[i] = subgroups_commute(ambient, sx, s);
        }
        (1..self.orbits.len())
            .filter(|&oj| qualifying[self.subgroup_of_orbit[oj]])
            .map(|oj| self.orbits[oj][0])
            .min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroDivisorWitness {
    pub x: u32,
    pub y: u32,
    pub orbit_subgroup_order: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct DomainVerdict {
    pub is_domain: bool,
    pub witness: Option<ZeroDivisorWitness>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::morphism::make_morphism_canonical;
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

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        let big: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_permutations(
            format!("cyc:{n}"),
            n,
            vec![Perm::from_cycles(n, &format!("({})", big.join(" "))).unwrap()],
            &caps(),
        )
        .unwrap()
    }

    fn elem(g: &Arc<FiniteGroup>, cycles: &str) -> u32 {
        let degree = g.perm_repr().unwrap().degree;
        g.elem_index(&Perm::from_cycles(degree, cycles).unwrap())
            .unwrap()
    }

    /// sym:n embedded in prod:sym:n,cyc:2 as the first factor.
    fn sym_times_c2(n: usize) -> GGroup {
        let s = sym(n);
        let c2 = cyc(2);
        let h = FiniteGroup::direct_product(
            format!("prod:sym:{n},cyc:2"),
            s.clone(),
            c2,
            &caps(),
        )
        .unwrap();
        let images: Vec<u32> = s.gens().iter().map(|&g| g * 2).collect();
        GGroup::new(make_morphism_canonical(&s, &h, &images).unwrap()).unwrap()
    }

    #[test]
    fn orbit_of_transposition_in_s5_is_everything() {
        let x = GGroup::identity_structure(&sym(5));
        let orbit = x.orbit_subgroup(elem(x.ambient(), "(0 1)"));
        assert_eq!(orbit.order(), 120);
    }

    #[test]
    fn abelian_base_orbits_are_cyclic() {
        let x = GGroup::identity_structure(&cyc(2));
        let orbit = x.orbit_subgroup(1);
        assert_eq!(orbit.order(), 2);
    }

    #[test]
    fn central_factor_orbit_has_order_two() {
        let x = sym_times_c2(5);
        // (1, c) is id 1 under pair encoding.
        let orbit = x.orbit_subgroup(1);
        assert_eq!(orbit.order(), 2);
        assert_eq!(orbit.member_ids(), vec![0, 1]);
    }

    #[test]
    fn invertibility_examples() {
        let x5 = GGroup::identity_structure(&sym(5));
        assert!(x5.is_invertible(elem(x5.ambient(), "(0 1)")));
        let xc = sym_times_c2(5);
        assert!(!xc.is_invertible(1));
        // A nontrivial element of the embedded base is always invertible.
        let in_base = xc.image().gens()[0];
        assert!(xc.is_invertible(in_base));
    }

    #[test]
    fn three_cycle_in_s3_is_a_zero_divisor() {
        let x = GGroup::identity_structure(&sym(3));
        let t = elem(x.ambient(), "(0 1 2)");
        let w = x.zero_divisor_witness(t).unwrap();
        let witness = w.expect("three-cycle has an abelian orbit subgroup");
        // The witness is itself a 3-cycle.
        assert_eq!(x.ambient().element_order(witness), 3);
    }

    #[test]
    fn s5_has_no_zero_divisors() {
        let x = GGroup::identity_structure(&sym(5));
        for t in 1..x.ambient().order() {
            assert!(!x.is_zero_divisor(t).unwrap());
        }
    }

    #[test]
    fn central_element_is_its_own_witness() {
        let x = sym_times_c2(5);
        assert_eq!(x.zero_divisor_witness(1).unwrap(), Some(1));
    }

    #[test]
    fn zero_divisor_rejects_identity() {
        let x = GGroup::identity_structure(&sym(3));
        assert!(x.zero_divisor_witness(0).is_err());
    }

    #[test]
    fn domain_examples() {
        assert!(GGroup::identity_structure(&sym(5)).is_domain());
        assert!(!GGroup::identity_structure(&sym(3)).is_domain());
        let v4 = GGroup::identity_structure(&sym(4)).domain_verdict();
        assert!(!v4.is_domain);
        let w = v4.witness.unwrap();
        // Witness is a double transposition with Klein orbit subgroup.
        assert_eq!(w.orbit_subgroup_order, 4);
        assert_eq!(GGroup::identity_structure(&sym(4)).ambient().element_order(w.x), 2);
    }

    #[test]
    fn zero_divisor_status_is_orbit_invariant() {
        for g in [sym(3), sym(4)] {
            let x = GGroup::identity_structure(&g);
            let analysis = x.orbit_analysis();
            for orbit in analysis.orbits().iter().skip(1) {
                let verdicts: Vec<bool> = orbit
                    .iter()
                    .map(|&m| x.is_zero_divisor(m).unwrap())
                    .collect();
                assert!(verdicts.iter().all(|&v| v == verdicts[0]));
            }
        }
    }

    #[test]
    fn rejects_non_injective_embedding() {
        let s3 = sym(3);
        let c2 = cyc(2);
        let sign = make_morphism_canonical(&s3, &c2, &[1, 0]).unwrap();
        assert!(matches!(GGroup::new(sign), Err(Error::NotInjective)));
    }
}
