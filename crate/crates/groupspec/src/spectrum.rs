use std::sync::Arc;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ggroup::GGroup;
use crate::group::FiniteGroup;
use crate::morphism::Morphism;
use crate::subgroup::{normal_closure, normal_subgroups, quotient, Subgroup};

/// A prime: a normal subgroup meeting the embedded base trivially whose
/// quotient has no zero divisors.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub subgroup: Subgroup,
}

/// The set of primes of a G-group with its closed-set family.
///
/// Closed sets are exactly the vanishing sets V(I) over the normal
/// lattice; the family is closed under union (V of the commutator
/// subgroup) and intersection (V of the join), so no completion step is
/// needed. Points are sorted by (order, members).
#[derive(Clone)]
pub struct Spectrum {
    ggroup: GGroup,
    points: Vec<PrimeIdeal>,
    closed_sets: Vec<BitSet>,
    specialization: Vec<(usize, usize)>,
}

impl Spectrum {
    pub fn ggroup(&self) -> &GGroup {
        &self.ggroup
    }

    pub fn points(&self) -> &[PrimeIdeal] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn closed_sets(&self) -> &[BitSet] {
        &self.closed_sets
    }

    pub fn is_closed(&self, s: &BitSet) -> bool {
        self.closed_sets.iter().any(|c| c == s)
    }

    /// Containment pairs (i, j) with point i strictly inside point j; the
    /// closure of a point is the set of its specializations.
    pub fn specialization(&self) -> &[(usize, usize)] {
        &self.specialization
    }

    /// Whether every point set is closed (and hence open).
    pub fn is_discrete(&self) -> bool {
        self.closed_sets.len() == 1 << self.points.len()
    }

    pub fn point_index(&self, members: &BitSet) -> Option<usize> {
        self.points.iter().position(|p| p.subgroup.members() == members)
    }
}

/// Both primality conditions: trivial intersection with the embedded
/// base, and a zero-divisor-free quotient.
pub fn is_prime(x: &GGroup, p: &Subgroup) -> Result<bool> {
    if !p.is_normal() {
        return Err(Error::NotNormal);
    }
    if p.members().intersection(x.image().members()).count() != 1 {
        return Ok(false);
    }
    if p.is_trivial() {
        // The quotient by the trivial subgroup is the structure itself.
        return Ok(x.is_domain());
    }
    Ok(quotient_structure(x, p)?.is_domain())
}

/// The quotient G-group (base, ambient/p) with the composed embedding.
/// Requires p normal with trivial image intersection.
pub fn quotient_structure(x: &GGroup, p: &Subgroup) -> Result<GGroup> {
    let (_, projection) = quotient(x.ambient(), p)?;
    let embedding = projection.compose_after(x.embedding());
    GGroup::new(embedding)
}

/// The quantified form of primality: for all x, y in the ambient group,
/// [G(x), G(y)] inside P forces x in P or y in P. Quantifiers collapse to
/// conjugation orbits because P, being normal, is a union of orbits and
/// orbit subgroups are constant along orbits; within an orbit pair, the
/// subgroup-level containment is tested on generators, which suffices
/// for a normal P.
pub fn quantified_prime(x: &GGroup, p: &Subgroup) -> Result<bool> {
    if !p.is_normal() {
        return Err(Error::NotNormal);
    }
    let h = x.ambient();
    let analysis = x.orbit_analysis();
    let orbits = analysis.orbits();
    // Orbit subgroups whose orbit has a representative outside P.
    let mut outside = vec![false; analysis.distinct_subgroups().len()];
    for (oi, orbit) in orbits.iter().enumerate().skip(1) {
        if !p.contains(orbit[0]) {
            outside[analysis.subgroup_index_of_orbit(oi)] = true;
        }
    }
    let subs = analysis.distinct_subgroups();
    for (a, sa) in subs.iter().enumerate() {
        if !outside[a] {
            continue;
        }
        for (b, sb) in subs.iter().enumerate().skip(a) {
            if !outside[b] {
                continue;
            }
            let contained = sa.gens().iter().all(|&s| {
                sb.gens().iter().all(|&t| p.contains(h.commutator(s, t)))
            });
            if contained {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verification hook: the quotient-domain route and the quantified route
/// must agree on every normal subgroup with trivial image intersection.
pub fn prime_equivalence_check(x: &GGroup, p: &Subgroup) -> Result<bool> {
    let via_quotient = is_prime(x, p)?;
    let via_commutators = quantified_prime(x, p)?;
    Ok(via_quotient == via_commutators)
}

/// All primes with the closed-set family and specialization order.
pub fn spectrum(x: &GGroup, caps: &Caps) -> Result<Spectrum> {
    let normals = normal_subgroups(x.ambient(), caps)?;
    let mut points = Vec::new();
    for n in &normals {
        if is_prime(x, n)? {
            points.push(PrimeIdeal {
                subgroup: n.clone(),
            });
        }
    }
    let k = points.len();
    let mut closed_sets: Vec<BitSet> = vec![BitSet::new(k)];
    for n in &normals {
        let v = BitSet::from_iter(
            k,
            (0..k).filter(|&i| n.members().is_subset(points[i].subgroup.members())),
        );
        if !closed_sets.contains(&v) {
            closed_sets.push(v);
        }
    }
    closed_sets.sort_by(|a, b| a.canonical_cmp(b));
    let mut specialization = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j
                && points[i].subgroup.members().is_subset(points[j].subgroup.members())
            {
                specialization.push((i, j));
            }
        }
    }
    Ok(Spectrum {
        ggroup: x.clone(),
        points,
        closed_sets,
        specialization,
    })
}

/// V(I): the primes containing I.
pub fn vanishing_set(spec: &Spectrum, i: &Subgroup) -> Result<BitSet> {
    if !i.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(BitSet::from_iter(
        spec.points.len(),
        (0..spec.points.len())
            .filter(|&k| i.members().is_subset(spec.points[k].subgroup.members())),
    ))
}

/// The quotient morphism onto a zero-divisor-free target whose kernel is
/// the given prime.
pub struct LPoint {
    pub projection: Morphism,
    pub target: GGroup,
}

pub fn l_point(spec: &Spectrum, index: usize) -> Result<LPoint> {
    let p = &spec.points[index].subgroup;
    let (_, projection) = quotient(spec.ggroup.ambient(), p)?;
    let target = quotient_structure(&spec.ggroup, p)?;
    if !target.is_domain() {
        return Err(Error::InvariantViolation(
            "quotient by a prime has a zero divisor".into(),
        ));
    }
    Ok(LPoint { projection, target })
}

/// The point map induced by a morphism of G-groups over the same base:
/// preimages of primes, with an exhaustive continuity certificate.
pub struct InducedMap {
    /// Spectrum of the morphism's target group.
    pub source: Spectrum,
    /// Spectrum of the morphism's source group.
    pub target: Spectrum,
    /// For each point of `source`, the index of its preimage in `target`.
    pub point_map: Vec<usize>,
}

pub fn induced_map(f: &Morphism, x: &GGroup, y: &GGroup, caps: &Caps) -> Result<InducedMap> {
    if !Arc::ptr_eq(x.base(), y.base()) {
        return Err(Error::NotAGMorphism);
    }
    if !Arc::ptr_eq(f.source(), x.ambient()) || !Arc::ptr_eq(f.target(), y.ambient()) {
        return Err(Error::NotAGMorphism);
    }
    for a in 0..x.base().order() {
        if f.apply(x.embedding().apply(a)) != y.embedding().apply(a) {
            return Err(Error::NotAGMorphism);
        }
    }
    let spec_x = spectrum(x, caps)?;
    let spec_y = spectrum(y, caps)?;
    let mut point_map = Vec::with_capacity(spec_y.points.len());
    for p in &spec_y.points {
        let pre_members = f.preimage_set(p.subgroup.members());
        let pre = Subgroup::from_members(x.ambient(), pre_members);
        if !is_prime(x, &pre)? {
            return Err(Error::InvariantViolation(
                "preimage of a prime is not prime".into(),
            ));
        }
        let idx = spec_x
            .point_index(pre.members())
            .ok_or_else(|| Error::InvariantViolation("preimage prime not enumerated".into()))?;
        point_map.push(idx);
    }
    // Continuity: the pullback of every closed V(I) is the vanishing set
    // of the normal closure of f(I), hence closed.
    let normals = normal_subgroups(x.ambient(), caps)?;
    let full_target = Subgroup::full(y.ambient());
    for i in &normals {
        let v = vanishing_set(&spec_x, i)?;
        let pulled = BitSet::from_iter(
            spec_y.points.len(),
            (0..spec_y.points.len()).filter(|&k| v.contains(point_map[k])),
        );
        let image: Vec<u32> = i.members().iter().map(|m| f.apply(m as u32)).collect();
        let pushed = normal_closure(y.ambient(), &full_target, &image);
        let expected = vanishing_set(&spec_y, &pushed)?;
        if pulled != expected {
            return Err(Error::InvariantViolation(
                "pullback of a closed set is not the expected vanishing set".into(),
            ));
        }
    }
    Ok(InducedMap {
        source: spec_y,
        target: spec_x,
        point_map,
    })
}

/// The embedding-free spectrum of a bare group: proper normal subgroups P
/// such that [I, J] inside P forces I inside P or J inside P, over all
/// pairs of normal subgroups.
pub struct AbsoluteSpectrum {
    pub group: Arc<FiniteGroup>,
    pub points: Vec<Subgroup>,
    pub closed_sets: Vec<BitSet>,
    pub specialization: Vec<(usize, usize)>,
}

pub fn absolute_spectrum(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<AbsoluteSpectrum> {
    let normals = normal_subgroups(g, caps)?;
    let commutator_in = |a: &Subgroup, b: &Subgroup, p: &Subgroup| -> bool {
        a.gens()
            .iter()
            .all(|&s| b.gens().iter().all(|&t| p.contains(g.commutator(s, t))))
    };
    let mut points: Vec<Subgroup> = Vec::new();
    for p in &normals {
        if p.is_full() {
            continue;
        }
        let prime = normals.iter().all(|i| {
            normals.iter().all(|j| {
                !commutator_in(i, j, p)
                    || i.members().is_subset(p.members())
                    || j.members().is_subset(p.members())
            })
        });
        if prime {
            points.push(p.clone());
        }
    }
    let k = points.len();
    let mut closed_sets: Vec<BitSet> = vec![BitSet::new(k)];
    for n in &normals {
        let v = BitSet::from_iter(
            k,
            (0..k).filter(|&i| n.members().is_subset(points[i].members())),
        );
        if !closed_sets.contains(&v) {
            closed_sets.push(v);
        }
    }
    closed_sets.sort_by(|a, b| a.canonical_cmp(b));
    let mut specialization = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && points[i].members().is_subset(points[j].members()) {
                specialization.push((i, j));
            }
        }
    }
    Ok(AbsoluteSpectrum {
        group: g.clone(),
        points,
        closed_sets,
        specialization,
    })
}
