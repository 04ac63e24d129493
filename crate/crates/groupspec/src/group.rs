use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Orders up to this bound get a materialized multiplication table even
/// when permutation-backed; above it products go through the perm index.
const TABLE_CACHE_LIMIT: u32 = 1024;

/// Orders up to this bound get the full cubic associativity check; above
/// it tables are spot-checked with seeded random triples.
const ASSOC_EXHAUSTIVE_LIMIT: u32 = 512;

/// A finite group on dense element ids `0..order`, with id 0 the identity.
///
/// Three backends share the same interface: an explicit multiplication
/// table, a permutation group closed by breadth-first search from its
/// generators, and a direct product evaluated componentwise. Ids are
/// stable and deterministic for each construction path.
pub struct FiniteGroup {
    label: String,
    order: u32,
    gens: Vec<u32>,
    backend: Backend,
    perm_repr: Option<PermRepr>,
}

/// Permutation images per element id, available for permutation-built
/// groups and products of such.
pub struct PermRepr {
    pub degree: usize,
    pub elements: Vec<Perm>,
}

enum Backend {
    Table {
        mul: Vec<u32>,
        inv: Vec<u32>,
    },
    Perm {
        index: HashMap<Perm, u32>,
        inv: Vec<u32>,
        table: Option<Vec<u32>>,
    },
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
}

impl FiniteGroup {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub const IDENTITY: u32 = 0;

    /// Canonical generating set fixed at construction time.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.order as usize;
        match &self.backend {
            Backend::Table { mul, .. } => mul[a as usize * n + b as usize],
            Backend::Perm { index, table, .. } => {
                if let Some(t) = table {
                    t[a as usize * n + b as usize]
                } else {
                    let repr = self.perm_repr.as_ref().expect("perm backend has repr");
                    let p = repr.elements[a as usize].compose(&repr.elements[b as usize]);
                    index[&p]
                }
            }
            Backend::Product { left, right } => {
                let nr = right.order;
                let (al, ar) = (a / nr, a % nr);
                let (bl, br) = (b / nr, b % nr);
                left.mul(al, bl) * nr + right.mul(ar, br)
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        match &self.backend {
            Backend::Table { inv, .. } => inv[a as usize],
            Backend::Perm { inv, .. } => inv[a as usize],
            Backend::Product { left, right } => {
                let nr = right.order;
                left.inv(a / nr) * nr + right.inv(a % nr)
            }
        }
    }

    /// g x g^{-1}
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// a b a^{-1} b^{-1}
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, x: u32) -> u32 {
        let mut k = 1;
        let mut p = x;
        while p != Self::IDENTITY {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn perm_repr(&self) -> Option<&PermRepr> {
        self.perm_repr.as_ref()
    }

    pub fn perm_of(&self, id: u32) -> Option<&Perm> {
        self.perm_repr.as_ref().map(|r| &r.elements[id as usize])
    }

    /// Looks an element up by its permutation image, for perm-backed groups.
    pub fn elem_index(&self, p: &Perm) -> Option<u32> {
        match &self.backend {
            Backend::Perm { index, .. } => index.get(p).copied(),
            _ => self.perm_repr.as_ref().and_then(|r| {
                r.elements.iter().position(|q| q == p).map(|i| i as u32)
            }),
        }
    }

    /// Closes a generator list under composition, breadth-first from the
    /// identity with generators applied in input order; element ids are
    /// the discovery order, so id 0 is the identity and the generators
    /// come first.
    pub fn from_permutations(
        label: impl Into<String>,
        degree: usize,
        generators: Vec<Perm>,
        caps: &Caps,
    ) -> Result<Arc<FiniteGroup>> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::BadPermutation(format!(
                    "generator degree {} does not match {degree}",
                    g.degree()
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0u32);
        let mut cursor = 0usize;
        while cursor < elements.len() {
            for g in &generators {
                // x * g applies g first under the composition convention.
                let next = elements[cursor].compose(g);
                if !index.contains_key(&next) {
                    if elements.len() as u64 >= caps.max_group_order as u64 {
                        return Err(Error::SizeLimit {
                            what: "group order",
                            needed: elements.len() as u64 + 1,
                            limit: caps.max_group_order as u64,
                        });
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                }
            }
            cursor += 1;
        }
        let order = elements.len() as u32;
        let inv: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut gens = Vec::new();
        for g in &generators {
            let id = index[g];
            if id != 0 && !gens.contains(&id) {
                gens.push(id);
            }
        }
        let table = if order <= TABLE_CACHE_LIMIT {
            let n = order as usize;
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&elements[a].compose(&elements[b])];
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Arc::new(FiniteGroup {
            label: label.into(),
            order,
            gens,
            backend: Backend::Perm { index, inv, table },
            perm_repr: Some(PermRepr { degree, elements }),
        }))
    }

    /// Builds from an explicit table, validating the identity row/column,
    /// two-sided inverses, and associativity (exhaustively up to order
    /// 512, by seeded random triples above).
    pub fn from_table(
        label: impl Into<String>,
        rows: Vec<Vec<u32>>,
        caps: &Caps,
    ) -> Result<Arc<FiniteGroup>> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        if n as u64 > caps.max_group_order as u64 {
            return Err(Error::SizeLimit {
                what: "group order",
                needed: n as u64,
                limit: caps.max_group_order as u64,
            });
        }
        let mut mul = vec![0u32; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadTable(format!("row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(Error::BadTable(format!("entry ({i},{j}) = {v} out of range")));
                }
                mul[i * n + j] = v;
            }
        }
        for x in 0..n as u32 {
            if mul[x as usize] != x || mul[x as usize * n] != x {
                return Err(Error::BadTable("id 0 is not a two-sided identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            let found = (0..n).find(|&y| mul[x * n + y] == 0 && mul[y * n + x] == 0);
            match found {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::BadTable(format!("element {x} has no inverse"))),
            }
        }
        let check = |a: usize, b: usize, c: usize| -> bool {
            mul[mul[a * n + b] as usize * n + c] == mul[a * n + mul[b * n + c] as usize]
        };
        if n as u32 <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::BadTable(format!(
                                "associativity fails on ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(Error::BadTable(format!(
                        "associativity fails on ({a},{b},{c})"
                    )));
                }
            }
        }
        let gens = greedy_generators_table(&mul, n);
        Ok(Arc::new(FiniteGroup {
            label: label.into(),
            order: n as u32,
            gens,
            backend: Backend::Table { mul, inv },
            perm_repr: None,
        }))
    }

    /// Direct product with ids `(a, b) -> a * |right| + b`; the identity
    /// pair is id 0 and products evaluate componentwise.
    pub fn direct_product(
        label: impl Into<String>,
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
        caps: &Caps,
    ) -> Result<Arc<FiniteGroup>> {
        let order = left.order as u64 * right.order as u64;
        if order > caps.max_group_order as u64 {
            return Err(Error::SizeLimit {
                what: "group order",
                needed: order,
                limit: caps.max_group_order as u64,
            });
        }
        let nr = right.order;
        let mut gens: Vec<u32> = left.gens.iter().map(|&g| g * nr).collect();
        gens.extend(right.gens.iter().copied());
        let perm_repr = match (&left.perm_repr, &right.perm_repr) {
            (Some(l), Some(r)) => {
                let degree = l.degree + r.degree;
                let mut elements = Vec::with_capacity(order as usize);
                for a in 0..left.order {
                    for b in 0..right.order {
                        let mut images: Vec<u32> =
                            l.elements[a as usize].images().to_vec();
                        images.extend(
                            r.elements[b as usize]
                                .images()
                                .iter()
                                .map(|&x| x + l.degree as u32),
                        );
                        elements.push(Perm::from_images(images).expect("stacked bijection"));
                    }
                }
                Some(PermRepr { degree, elements })
            }
            _ => None,
        };
        Ok(Arc::new(FiniteGroup {
            label: label.into(),
            order: order as u32,
            gens,
            backend: Backend::Product { left, right },
            perm_repr,
        }))
    }

    /// Used by quotient construction: table already known valid.
    pub(crate) fn from_table_unchecked(
        label: String,
        mul: Vec<u32>,
        n: usize,
        gens: Vec<u32>,
    ) -> Arc<FiniteGroup> {
        let mut inv = vec![0u32; n];
        for x in 0..n {
            inv[x] = (0..n).find(|&y| mul[x * n + y] == 0).expect("inverse") as u32;
        }
        Arc::new(FiniteGroup {
            label,
            order: n as u32,
            gens,
            backend: Backend::Table { mul, inv },
            perm_repr: None,
        })
    }

    /// Conjugation orbits, canonically ordered by least member; members
    /// of each class ascend.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order as usize;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut members = vec![start];
            seen[start as usize] = true;
            let mut cursor = 0;
            while cursor < members.len() {
                let x = members[cursor];
                for &g in &self.gens {
                    let y = self.conj(g, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        members.push(y);
                    }
                }
                cursor += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Elements commuting with every generator (hence with the group).
    pub fn center(&self) -> Vec<u32> {
        (0..self.order)
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// JSON descriptor matching the group input schema where a faithful
    /// permutation form is available, falling back to a table for small
    /// orders and to a summary otherwise.
    pub fn descriptor(&self) -> Value {
        if let Some(repr) = &self.perm_repr {
            let gens: Vec<Vec<u32>> = self
                .gens
                .iter()
                .map(|&g| repr.elements[g as usize].images().to_vec())
                .collect();
            return json!({
                "kind": "permutation",
                "label": self.label,
                "order": self.order,
                "degree": repr.degree,
                "generators": gens,
            });
        }
        if self.order <= 64 {
            let n = self.order as usize;
            let mut rows = Vec::with_capacity(n);
            for a in 0..n as u32 {
                rows.push((0..n as u32).map(|b| self.mul(a, b)).collect::<Vec<_>>());
            }
            return json!({
                "kind": "table",
                "label": self.label,
                "order": self.order,
                "mul": rows,
            });
        }
        json!({ "kind": "summary", "label": self.label, "order": self.order })
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

fn greedy_generators_table(mul: &[u32], n: usize) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = vec![false; n];
    closed[0] = true;
    let mut reached = 1usize;
    for x in 1..n as u32 {
        if closed[x as usize] {
            continue;
        }
        gens.push(x);
        // Re-close with the enlarged generating set.
        let mut list: Vec<u32> = vec![0];
        let mut members = vec![false; n];
        members[0] = true;
        let mut cursor = 0;
        while cursor < list.len() {
            for &g in &gens {
                let y = mul[list[cursor] as usize * n + g as usize];
                if !members[y as usize] {
                    members[y as usize] = true;
                    list.push(y);
                }
            }
            cursor += 1;
        }
        reached = list.len();
        closed = members;
        if reached == n {
            break;
        }
    }
    debug_assert_eq!(reached, n);
    gens
}
