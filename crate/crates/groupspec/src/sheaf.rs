use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::{enumerate_mod_ring, CoeffRing, RingElem};
use crate::morphism::Morphism;
use crate::spectrum::{InducedMap, Spectrum};
use crate::subgroup::{quotient, Subgroup};
use crate::topology::FiniteTopology;

/// A finite space of quotient-bearing points: the topology plus, for each
/// point, the quotient group and projection. Built from a spectrum or
/// synthetically from any family of normal subgroups with a chosen
/// closed-set family.
pub struct SpecSpace {
    ambient: Arc<FiniteGroup>,
    points: Vec<Subgroup>,
    topology: FiniteTopology,
    quotients: Vec<PointQuotient>,
}

pub struct PointQuotient {
    pub group: Arc<FiniteGroup>,
    pub projection: Morphism,
    /// Ambient elements grouped by their image class, ascending.
    pub class_members: Vec<Vec<u32>>,
}

impl PointQuotient {
    /// Least ambient element projecting to the class.
    pub fn class_rep(&self, class: u32) -> u32 {
        self.class_members[class as usize][0]
    }
}

impl SpecSpace {
    pub fn from_spectrum(spec: &Spectrum) -> Result<SpecSpace> {
        let points: Vec<Subgroup> = spec.points().iter().map(|p| p.subgroup.clone()).collect();
        SpecSpace::synthetic(
            spec.ggroup().ambient().clone(),
            points,
            spec.closed_sets().to_vec(),
        )
    }

    /// Any family of normal subgroups as points, under any closed-set
    /// family satisfying the topology axioms.
    pub fn synthetic(
        ambient: Arc<FiniteGroup>,
        points: Vec<Subgroup>,
        closed_sets: Vec<BitSet>,
    ) -> Result<SpecSpace> {
        for p in &points {
            if !p.is_normal() {
                return Err(Error::NotNormal);
            }
        }
        let topology = FiniteTopology::from_closed_sets(points.len(), closed_sets)?;
        let mut quotients = Vec::with_capacity(points.len());
        for p in &points {
            let (group, projection) = quotient(&ambient, p)?;
            let mut class_members = vec![Vec::new(); group.order() as usize];
            for h in 0..ambient.order() {
                class_members[projection.apply(h) as usize].push(h);
            }
            quotients.push(PointQuotient {
                group,
                projection,
                class_members,
            });
        }
        Ok(SpecSpace {
            ambient,
            points,
            topology,
            quotients,
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn points(&self) -> &[Subgroup] {
        &self.points
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn quotient(&self, point: usize) -> &PointQuotient {
        &self.quotients[point]
    }

    fn require_open(&self, u: &BitSet) -> Result<()> {
        if !self.topology.is_open(u) {
            return Err(Error::NotOpen);
        }
        Ok(())
    }
}

/// A section of the quotient-valued sheaf: one quotient element per point
/// of the domain, locally representable by a single ambient element on
/// each minimal neighborhood. The representatives are carried along as a
/// verification certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSection {
    pub domain: BitSet,
    pub values: BTreeMap<usize, u32>,
    pub reps: BTreeMap<usize, u32>,
}

/// Decides membership by the minimal-neighborhood criterion: for each
/// point P of U there must be an ambient element projecting to the given
/// values everywhere on minOpen(P) (which lies inside U since U is open).
/// Returns the section with found representatives, or None.
pub fn check_l_section(
    space: &SpecSpace,
    u: &BitSet,
    values: &BTreeMap<usize, u32>,
) -> Result<Option<LSection>> {
    space.require_open(u)?;
    if values.len() != u.count() || !values.keys().all(|&p| u.contains(p)) {
        return Err(Error::Usage(
            "section values must cover exactly the domain".into(),
        ));
    }
    let mut reps = BTreeMap::new();
    for p in u.iter() {
        let hood = space.topology.min_open(p).intersection(u);
        // Candidates are confined to one coset of the first constrained
        // point, so the scan is linear in the coset, not the group.
        let first = hood.first().expect("minimal neighborhood contains p");
        let candidates = &space.quotients[first].class_members[values[&first] as usize];
        let found = candidates.iter().copied().find(|&h| {
            hood.iter()
                .all(|q| space.quotients[q].projection.apply(h) == values[&q])
        });
        match found {
            Some(h) => {
                reps.insert(p, h);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(LSection {
        domain: u.clone(),
        values: values.clone(),
        reps,
    }))
}

/// Every section over U, enumerated in lexicographic value order. The
/// product of quotient orders over U is capped.
pub fn l_sections(space: &SpecSpace, u: &BitSet, caps: &Caps) -> Result<Vec<LSection>> {
    space.require_open(u)?;
    let points: Vec<usize> = u.iter().collect();
    let mut product: u64 = 1;
    for &p in &points {
        product = product.saturating_mul(space.quotients[p].group.order() as u64);
        if product > caps.max_section_product {
            return Err(Error::SizeLimit {
                what: "section enumeration",
                needed: product,
                limit: caps.max_section_product,
            });
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0u32; points.len()];
    loop {
        let values: BTreeMap<usize, u32> = points
            .iter()
            .copied()
            .zip(digits.iter().copied())
            .collect();
        if let Some(section) = check_l_section(space, u, &values)? {
            out.push(section);
        }
        let mut k = points.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < space.quotients[points[k]].group.order() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Pointwise restriction to an open subset; representatives remain valid
/// because minimal neighborhoods only shrink.
pub fn restrict_l(space: &SpecSpace, section: &LSection, smaller: &BitSet) -> Result<LSection> {
    space.require_open(smaller)?;
    if !smaller.is_subset(&section.domain) {
        return Err(Error::Usage("restriction target is not a subset".into()));
    }
    Ok(LSection {
        domain: smaller.clone(),
        values: section
            .values
            .iter()
            .filter(|(p, _)| smaller.contains(**p))
            .map(|(&p, &v)| (p, v))
            .collect(),
        reps: section
            .reps
            .iter()
            .filter(|(p, _)| smaller.contains(**p))
            .map(|(&p, &v)| (p, v))
            .collect(),
    })
}

/// Glues a compatible family into the unique section over the union of
/// the domains. Disagreement on an overlap is an input error; failure of
/// the glued values to form a section would contradict the sheaf
/// property, so it is reported as an invariant violation.
pub fn glue_l(space: &SpecSpace, parts: &[LSection]) -> Result<LSection> {
    let n = space.points.len();
    let mut domain = BitSet::new(n);
    let mut values: BTreeMap<usize, u32> = BTreeMap::new();
    for part in parts {
        for (&p, &v) in &part.values {
            match values.get(&p) {
                Some(&seen) if seen != v => {
                    return Err(Error::IncompatibleSections { point: p })
                }
                _ => {
                    values.insert(p, v);
                }
            }
        }
        domain.union_with(&part.domain);
    }
    match check_l_section(space, &domain, &values)? {
        Some(section) => Ok(section),
        None => Err(Error::InvariantViolation(
            "compatible family failed to glue".into(),
        )),
    }
}

/// Pushes a section forward along an induced point map: the value at a
/// point P' is the image of the value at its preimage point under the
/// injection of quotients, computed on representatives.
pub fn l_pushforward(
    f: &Morphism,
    induced: &InducedMap,
    src_space: &SpecSpace,
    dst_space: &SpecSpace,
    section: &LSection,
) -> Result<LSection> {
    // Domain upstairs: all points of the destination spectrum whose
    // preimage point lies in the section's domain.
    let n = dst_space.points.len();
    let domain = BitSet::from_iter(
        n,
        (0..n).filter(|&pp| section.domain.contains(induced.point_map[pp])),
    );
    let mut values = BTreeMap::new();
    for pp in domain.iter() {
        let p = induced.point_map[pp];
        let value_downstairs = section.values[&p];
        // Lift to an ambient element, push through f, project at P'.
        let lift = src_space.quotients[p].class_rep(value_downstairs);
        values.insert(pp, dst_space.quotients[pp].projection.apply(f.apply(lift)));
    }
    match check_l_section(dst_space, &domain, &values)? {
        Some(s) => Ok(s),
        None => Err(Error::InvariantViolation(
            "pushforward of a section is not a section".into(),
        )),
    }
}

/// A section of the group-ring-valued sheaf, with explicit ring-element
/// representatives as the membership certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASection {
    pub domain: BitSet,
    pub values: BTreeMap<usize, RingElem>,
    pub reps: BTreeMap<usize, RingElem>,
}

/// Certifies membership with caller-supplied representatives: each rep
/// must project to the given value at every point of the corresponding
/// minimal neighborhood. Over integer coefficients this is the only
/// decidable route; no enumeration is attempted.
pub fn verify_a_section(
    space: &SpecSpace,
    u: &BitSet,
    values: &BTreeMap<usize, RingElem>,
    reps: &BTreeMap<usize, RingElem>,
) -> Result<bool> {
    space.require_open(u)?;
    if values.len() != u.count() || !values.keys().all(|&p| u.contains(p)) {
        return Err(Error::Usage(
            "section values must cover exactly the domain".into(),
        ));
    }
    for p in u.iter() {
        let rep = match reps.get(&p) {
            Some(r) => r,
            None => return Ok(false),
        };
        let hood = space.topology.min_open(p).intersection(u);
        for q in hood.iter() {
            if rep.project(&space.quotients[q].projection) != values[&q] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for representatives exhaustively; only possible over mod-m
/// coefficients, where the ambient group ring is finite.
pub fn find_a_section(
    space: &SpecSpace,
    ring: CoeffRing,
    u: &BitSet,
    values: &BTreeMap<usize, RingElem>,
    caps: &Caps,
) -> Result<Option<ASection>> {
    space.require_open(u)?;
    if values.len() != u.count() || !values.keys().all(|&p| u.contains(p)) {
        return Err(Error::Usage(
            "section values must cover exactly the domain".into(),
        ));
    }
    let m = match ring {
        CoeffRing::Mod(m) => m,
        CoeffRing::Int => return Err(Error::RepsRequired),
    };
    let count = (m as u64).saturating_pow(space.ambient.order());
    if count > caps.max_section_product {
        return Err(Error::SizeLimit {
            what: "ring-section search",
            needed: count,
            limit: caps.max_section_product,
        });
    }
    let candidates = enumerate_mod_ring(m, space.ambient.order());
    let mut reps = BTreeMap::new();
    for p in u.iter() {
        let hood = space.topology.min_open(p).intersection(u);
        let found = candidates.iter().find(|r| {
            hood.iter()
                .all(|q| r.project(&space.quotients[q].projection) == values[&q])
        });
        match found {
            Some(r) => {
                reps.insert(p, r.clone());
            }
            None => return Ok(None),
        }
    }
    Ok(Some(ASection {
        domain: u.clone(),
        values: values.clone(),
        reps,
    }))
}

pub fn restrict_a(space: &SpecSpace, section: &ASection, smaller: &BitSet) -> Result<ASection> {
    space.require_open(smaller)?;
    if !smaller.is_subset(&section.domain) {
        return Err(Error::Usage("restriction target is not a subset".into()));
    }
    Ok(ASection {
        domain: smaller.clone(),
        values: section
            .values
            .iter()
            .filter(|(p, _)| smaller.contains(**p))
            .map(|(&p, v)| (p, v.clone()))
            .collect(),
        reps: section
            .reps
            .iter()
            .filter(|(p, _)| smaller.contains(**p))
            .map(|(&p, v)| (p, v.clone()))
            .collect(),
    })
}

pub fn glue_a(space: &SpecSpace, parts: &[ASection]) -> Result<ASection> {
    let n = space.points.len();
    let mut domain = BitSet::new(n);
    let mut values: BTreeMap<usize, RingElem> = BTreeMap::new();
    let mut reps: BTreeMap<usize, RingElem> = BTreeMap::new();
    for part in parts {
        for (&p, v) in &part.values {
            match values.get(&p) {
                Some(seen) if seen != v => {
                    return Err(Error::IncompatibleSections { point: p })
                }
                _ => {
                    values.insert(p, v.clone());
                }
            }
        }
        for (&p, r) in &part.reps {
            reps.entry(p).or_insert_with(|| r.clone());
        }
        domain.union_with(&part.domain);
    }
    space.require_open(&domain)?;
    let glued = ASection {
        domain,
        values,
        reps,
    };
    if !verify_a_section(space, &glued.domain, &glued.values, &glued.reps)? {
        return Err(Error::InvariantViolation(
            "compatible ring-valued family failed to glue".into(),
        ));
    }
    Ok(glued)
}

/// Ring-valued pushforward: representatives map through the ring
/// morphism induced by f on basis symbols.
pub fn a_pushforward(
    f: &Morphism,
    induced: &InducedMap,
    dst_space: &SpecSpace,
    section: &ASection,
) -> Result<ASection> {
    let n = dst_space.points.len();
    let domain = BitSet::from_iter(
        n,
        (0..n).filter(|&pp| section.domain.contains(induced.point_map[pp])),
    );
    let mut values = BTreeMap::new();
    let mut reps = BTreeMap::new();
    for pp in domain.iter() {
        let p = induced.point_map[pp];
        let rep = section.reps.get(&p).ok_or(Error::RepsRequired)?;
        let pushed = rep.project(f);
        values.insert(pp, pushed.project(&dst_space.quotients[pp].projection));
        reps.insert(pp, pushed);
    }
    let out = ASection {
        domain,
        values,
        reps,
    };
    if !verify_a_section(dst_space, &out.domain, &out.values, &out.reps)? {
        return Err(Error::InvariantViolation(
            "ring-valued pushforward is not a section".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::subgroup::subgroup_closure;

    fn caps() -> Caps {
        Caps::default()
    }

    /// C2 x C2 with the two coordinate subgroups as points.
    fn klein_space(closed: Vec<BitSet>) -> SpecSpace {
        let c2 = FiniteGroup::from_permutations(
            "cyc:2",
            2,
            vec![Perm::from_cycles(2, "(0 1)").unwrap()],
            &caps(),
        )
        .unwrap();
        let h = FiniteGroup::direct_product("prod:cyc:2,cyc:2", c2.clone(), c2, &caps()).unwrap();
        let p1 = subgroup_closure(&h, &[2]); // first coordinate
        let p2 = subgroup_closure(&h, &[1]); // second coordinate
        SpecSpace::synthetic(h, vec![p1, p2], closed).unwrap()
    }

    fn discrete_closed(n: usize) -> Vec<BitSet> {
        (0u64..(1 << n))
            .map(|mask| BitSet::from_iter(n, (0..n).filter(|&i| mask & (1 << i) != 0)))
            .collect()
    }

    fn sierpinski_closed() -> Vec<BitSet> {
        vec![BitSet::new(2), BitSet::from_iter(2, [0]), BitSet::full(2)]
    }

    #[test]
    fn empty_domain_has_exactly_one_section() {
        let space = klein_space(discrete_closed(2));
        let sections = l_sections(&space, &BitSet::new(2), &caps()).unwrap();
        assert_eq!(sections.len(), 1);
        assert!(sections[0].values.is_empty());
    }

    #[test]
    fn discrete_sections_are_all_value_families() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::full(2);
        let sections = l_sections(&space, &u, &caps()).unwrap();
        // Two points with order-2 quotients: 4 families, all sections.
        assert_eq!(sections.len(), 4);
    }

    #[test]
    fn constant_families_are_always_sections() {
        let space = klein_space(sierpinski_closed());
        let u = BitSet::full(2);
        for h in 0..space.ambient().order() {
            let values: BTreeMap<usize, u32> = (0..2)
                .map(|p| (p, space.quotient(p).projection.apply(h)))
                .collect();
            assert!(check_l_section(&space, &u, &values).unwrap().is_some());
        }
    }

    #[test]
    fn sierpinski_constrains_the_closed_point() {
        let space = klein_space(sierpinski_closed());
        let u = BitSet::full(2);
        // minOpen(0) is the whole space, so the value pair must lift
        // jointly; a mismatch that no single ambient element realizes is
        // rejected. H = C2xC2 projects onto each factor, and (a, b) is
        // realizable for every pair, so all 4 families are sections here.
        let sections = l_sections(&space, &u, &caps()).unwrap();
        assert_eq!(sections.len(), 4);
        // But over the open {1} alone there are exactly 2.
        let u1 = BitSet::from_iter(2, [1]);
        assert_eq!(l_sections(&space, &u1, &caps()).unwrap().len(), 2);
    }

    #[test]
    fn restriction_to_empty_is_empty() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::full(2);
        let s = &l_sections(&space, &u, &caps()).unwrap()[0];
        let r = restrict_l(&space, s, &BitSet::new(2)).unwrap();
        assert!(r.values.is_empty());
    }

    #[test]
    fn glue_of_own_restrictions_is_identity() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::full(2);
        for s in l_sections(&space, &u, &caps()).unwrap() {
            let a = restrict_l(&space, &s, &BitSet::from_iter(2, [0])).unwrap();
            let b = restrict_l(&space, &s, &BitSet::from_iter(2, [1])).unwrap();
            let glued = glue_l(&space, &[a, b]).unwrap();
            assert_eq!(glued.values, s.values);
        }
    }

    #[test]
    fn incompatible_parts_fail_to_glue() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::full(2);
        let all = l_sections(&space, &u, &caps()).unwrap();
        let a = restrict_l(&space, &all[0], &BitSet::from_iter(2, [0])).unwrap();
        // A full-domain part disagreeing with `a` at point 0.
        let clash = all
            .iter()
            .find(|s| s.values[&0] != all[0].values[&0])
            .unwrap();
        match glue_l(&space, &[a, clash.clone()]) {
            Err(Error::IncompatibleSections { point: 0 }) => {}
            other => panic!("expected incompatibility, got {other:?}"),
        }
    }

    #[test]
    fn a_section_with_global_representative() {
        let space = klein_space(sierpinski_closed());
        let u = BitSet::full(2);
        let r = RingElem::from_pairs(CoeffRing::Int, [(0, 2), (3, -1)]);
        let values: BTreeMap<usize, RingElem> = (0..2)
            .map(|p| (p, r.project(&space.quotient(p).projection)))
            .collect();
        let reps: BTreeMap<usize, RingElem> = (0..2).map(|p| (p, r.clone())).collect();
        assert!(verify_a_section(&space, &u, &values, &reps).unwrap());
    }

    #[test]
    fn a_section_over_empty_domain() {
        let space = klein_space(discrete_closed(2));
        let empty = BitSet::new(2);
        assert!(verify_a_section(&space, &empty, &BTreeMap::new(), &BTreeMap::new()).unwrap());
    }

    #[test]
    fn integer_search_requires_reps() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::from_iter(2, [0]);
        let values: BTreeMap<usize, RingElem> =
            [(0, RingElem::basis(CoeffRing::Int, 0))].into();
        assert!(matches!(
            find_a_section(&space, CoeffRing::Int, &u, &values, &caps()),
            Err(Error::RepsRequired)
        ));
    }

    #[test]
    fn mod2_search_finds_pointwise_sections_on_discrete_space() {
        let space = klein_space(discrete_closed(2));
        let u = BitSet::full(2);
        // Arbitrary pointwise values lift independently on a discrete
        // space.
        let values: BTreeMap<usize, RingElem> = [
            (0usize, RingElem::from_pairs(CoeffRing::Mod(2), [(0, 1), (1, 1)])),
            (1usize, RingElem::basis(CoeffRing::Mod(2), 1)),
        ]
        .into();
        let found = find_a_section(&space, CoeffRing::Mod(2), &u, &values, &caps()).unwrap();
        let section = found.expect("pointwise lift");
        assert!(verify_a_section(&space, &u, &section.values, &section.reps).unwrap());
    }

    #[test]
    fn non_open_domain_is_rejected() {
        let space = klein_space(sierpinski_closed());
        // {0} is closed but not open in the Sierpinski-like family.
        let u = BitSet::from_iter(2, [0]);
        assert!(matches!(
            l_sections(&space, &u, &caps()),
            Err(Error::NotOpen)
        ));
    }
}
