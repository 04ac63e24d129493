use std::sync::Arc;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroup::{subgroup_closure, Subgroup};

/// A group homomorphism given by its full image table.
#[derive(Clone)]
pub struct Morphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
}

impl Morphism {
    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// Validates the image table exhaustively before accepting it.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<u32>) -> Result<Morphism> {
        let m = Morphism::new_unchecked(source, target, images);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<u32>,
    ) -> Morphism {
        debug_assert_eq!(images.len(), source.order() as usize);
        Morphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Morphism {
        Morphism {
            source: group.clone(),
            target: group.clone(),
            images: (0..group.order()).collect(),
        }
    }

    /// Checks f(xy) = f(x)f(y) on every pair and f(1) = 1.
    pub fn validate(&self) -> Result<()> {
        if self.images[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        let n = self.source.order();
        for x in 0..n {
            for y in 0..n {
                let lhs = self.images[self.source.mul(x, y) as usize];
                let rhs = self.target.mul(self.images[x as usize], self.images[y as usize]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Subgroup {
        let members = BitSet::from_iter(
            self.source.order() as usize,
            (0..self.source.order() as usize).filter(|&x| self.images[x] == 0),
        );
        Subgroup::from_members(&self.source, members)
    }

    pub fn image(&self) -> Subgroup {
        let members = BitSet::from_iter(
            self.target.order() as usize,
            self.images.iter().map(|&y| y as usize),
        );
        Subgroup::from_members(&self.target, members)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BitSet::new(self.target.order() as usize);
        self.images.iter().all(|&y| seen.insert(y as usize))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Preimage of a member set of the target.
    pub fn preimage_set(&self, targets: &BitSet) -> BitSet {
        BitSet::from_iter(
            self.source.order() as usize,
            (0..self.source.order() as usize).filter(|&x| targets.contains(self.images[x] as usize)),
        )
    }

    /// Elementwise image of a member set of the source.
    pub fn image_set(&self, sources: &BitSet) -> BitSet {
        BitSet::from_iter(
            self.target.order() as usize,
            sources.iter().map(|x| self.images[x] as usize),
        )
    }

    /// self after other: (f.compose_after(g))(x) = f(g(x)).
    pub fn compose_after(&self, other: &Morphism) -> Morphism {
        debug_assert_eq!(
            other.target.order(),
            self.source.order(),
            "composition shape"
        );
        Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Morphism({} -> {})",
            self.source.label(),
            self.target.label()
        )
    }
}

/// Breadth-first parent links for extending generator images over a group.
struct CayleyWords {
    /// For each non-identity element: (previous element, generator index).
    parents: Vec<Option<(u32, usize)>>,
    order: Vec<u32>,
}

fn cayley_words(g: &FiniteGroup, gens: &[u32]) -> Option<CayleyWords> {
    let n = g.order() as usize;
    let mut parents: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut order = vec![0u32];
    let mut seen = BitSet::new(n);
    seen.insert(0);
    let mut cursor = 0;
    while cursor < order.len() {
        let x = order[cursor];
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if seen.insert(y as usize) {
                parents[y as usize] = Some((x, gi));
                order.push(y);
            }
        }
        cursor += 1;
    }
    if order.len() == n {
        Some(CayleyWords { parents, order })
    } else {
        None
    }
}

/// Extends generator images to the unique candidate map and validates it
/// exhaustively. Errors if the generators do not generate the source or
/// the images are inconsistent with some product.
pub fn make_morphism(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    gens: &[u32],
    images: &[u32],
) -> Result<Morphism> {
    if gens.len() != images.len() {
        return Err(Error::Usage(format!(
            "got {} generators but {} images",
            gens.len(),
            images.len()
        )));
    }
    let words = cayley_words(source, gens).ok_or(Error::NotGenerating)?;
    let mut table = vec![0u32; source.order() as usize];
    for &x in &words.order {
        if let Some((prev, gi)) = words.parents[x as usize] {
            table[x as usize] = target.mul(table[prev as usize], images[gi]);
        }
    }
    Morphism::new(source.clone(), target.clone(), table)
}

/// Convenience form using the source's canonical generators.
pub fn make_morphism_canonical(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    images: &[u32],
) -> Result<Morphism> {
    make_morphism(source, target, &source.gens().to_vec(), images)
}

/// All automorphisms by exhaustive search over generator images, pruned
/// to images of equal element order and to generating tuples.
pub fn automorphism_group(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<Vec<Morphism>> {
    if g.order() > caps.max_aut_order {
        return Err(Error::SizeLimit {
            what: "automorphism search order",
            needed: g.order() as u64,
            limit: caps.max_aut_order as u64,
        });
    }
    // Minimize the generating set first: dropping redundant generators
    // shrinks the candidate space geometrically.
    let mut gens: Vec<u32> = g.gens().to_vec();
    let mut i = 0;
    while i < gens.len() {
        let mut pruned = gens.clone();
        pruned.remove(i);
        if subgroup_closure(g, &pruned).is_full() {
            gens = pruned;
        } else {
            i += 1;
        }
    }
    let orders: Vec<u32> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let pools: Vec<Vec<u32>> = gens
        .iter()
        .map(|&gen| {
            (0..g.order())
                .filter(|&x| orders[x as usize] == orders[gen as usize])
                .collect()
        })
        .collect();
    let words = cayley_words(g, &gens).expect("canonical generators generate");
    let mut found = Vec::new();
    let mut choice = vec![0usize; pools.len()];
    loop {
        let tuple: Vec<u32> = choice.iter().zip(&pools).map(|(&c, p)| p[c]).collect();
        if subgroup_closure(g, &tuple).is_full() {
            let mut table = vec![0u32; g.order() as usize];
            for &x in &words.order {
                if let Some((prev, gi)) = words.parents[x as usize] {
                    table[x as usize] = g.mul(table[prev as usize], tuple[gi]);
                }
            }
            let candidate = Morphism::new_unchecked(g.clone(), g.clone(), table);
            if candidate.validate().is_ok() && candidate.is_injective() {
                found.push(candidate);
            }
        }
        // Odometer step.
        let mut k = pools.len();
        loop {
            if k == 0 {
                found.sort_by(|a, b| a.images.cmp(&b.images));
                return Ok(found);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < pools[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Complete means trivial center and Aut(G) = Inn(G); with a trivial
/// center that reduces to |Aut(G)| = |G|.
pub fn is_complete(g: &Arc<FiniteGroup>, caps: &Caps) -> Result<bool> {
    if g.center().len() != 1 {
        return Ok(false);
    }
    let auts = automorphism_group(g, caps)?;
    Ok(auts.len() == g.order() as usize)
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

    #[test]
    fn sign_map_has_kernel_of_order_three() {
        let s3 = sym(3);
        let c2 = cyc(2);
        // Canonical generators of S3 are the transposition then the 3-cycle.
        let m = make_morphism_canonical(&s3, &c2, &[1, 0]).unwrap();
        assert_eq!(m.kernel().order(), 3);
        assert!(m.is_surjective());
    }

    #[test]
    fn identity_images_give_identity_morphism() {
        let s3 = sym(3);
        let gens = s3.gens().to_vec();
        let m = make_morphism(&s3, &s3.clone(), &gens, &gens).unwrap();
        assert!(m.is_bijective());
        assert_eq!(m.images(), Morphism::identity(&s3).images());
    }

    #[test]
    fn transposition_to_three_cycle_is_rejected() {
        let s3 = sym(3);
        let c3 = cyc(3);
        // Sending an order-2 element to an order-3 element cannot extend.
        match make_morphism_canonical(&s3, &c3, &[1, 0]) {
            Err(Error::NotAHomomorphism { .. }) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn non_generating_set_is_rejected() {
        let s3 = sym(3);
        let c2 = cyc(2);
        let transposition = s3.gens()[0];
        match make_morphism(&s3, &c2, &[transposition], &[1]) {
            Err(Error::NotGenerating) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn s3_is_complete_with_six_automorphisms() {
        let s3 = sym(3);
        let auts = automorphism_group(&s3, &caps()).unwrap();
        assert_eq!(auts.len(), 6);
        assert!(is_complete(&s3, &caps()).unwrap());
    }

    #[test]
    fn c3_has_two_automorphisms_and_is_not_complete() {
        let c3 = cyc(3);
        let auts = automorphism_group(&c3, &caps()).unwrap();
        assert_eq!(auts.len(), 2);
        assert!(!is_complete(&c3, &caps()).unwrap());
    }

    #[test]
    fn s5_is_complete() {
        let s5 = sym(5);
        assert!(is_complete(&s5, &caps()).unwrap());
    }

    #[test]
    fn automorphism_cap_is_enforced() {
        let s5 = sym(5);
        let mut tight = caps();
        tight.max_aut_order = 100;
        assert!(matches!(
            automorphism_group(&s5, &tight),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn preimage_and_image_sets_roundtrip_for_bijections() {
        let s3 = sym(3);
        let m = Morphism::identity(&s3);
        let set = BitSet::from_iter(6, [0, 2, 4]);
        assert_eq!(m.preimage_set(&set), set);
        assert_eq!(m.image_set(&set), set);
    }
}
