use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::Morphism;

/// Coefficient ring for group-ring elements: the integers, or integers
/// mod m. The mod form is what makes exhaustive section search possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffRing {
    Int,
    Mod(u32),
}

impl CoeffRing {
    pub fn parse(text: &str) -> Result<CoeffRing> {
        if text == "z" {
            return Ok(CoeffRing::Int);
        }
        if let Some(m) = text.strip_prefix("zmod:") {
            let m: u32 = m
                .parse()
                .map_err(|_| Error::Usage(format!("bad modulus in coefficient ring {text:?}")))?;
            if m < 2 {
                return Err(Error::Usage("modulus must be at least 2".into()));
            }
            return Ok(CoeffRing::Mod(m));
        }
        Err(Error::Usage(format!(
            "coefficient ring must be 'z' or 'zmod:<m>', got {text:?}"
        )))
    }

    fn normalize(&self, c: i64) -> i64 {
        match self {
            CoeffRing::Int => c,
            CoeffRing::Mod(m) => c.rem_euclid(*m as i64),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoeffRing::Int => "z".into(),
            CoeffRing::Mod(m) => format!("zmod:{m}"),
        }
    }
}

/// A group-ring element: a finite formal sum of basis symbols `1_h` with
/// nonzero coefficients, multiplied by `1_g * 1_h = 1_{gh}` extended
/// bilinearly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: CoeffRing,
    coeffs: BTreeMap<u32, i64>,
}

impl RingElem {
    pub fn zero(ring: CoeffRing) -> RingElem {
        RingElem {
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis symbol 1_h.
    pub fn basis(ring: CoeffRing, h: u32) -> RingElem {
        RingElem::from_pairs(ring, [(h, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, i64)>>(ring: CoeffRing, pairs: I) -> RingElem {
        let mut coeffs = BTreeMap::new();
        for (h, c) in pairs {
            let entry = coeffs.entry(h).or_insert(0);
            *entry = ring.normalize(*entry + c);
        }
        coeffs.retain(|_, c| *c != 0);
        RingElem { ring, coeffs }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, h: u32) -> i64 {
        self.coeffs.get(&h).copied().unwrap_or(0)
    }

    fn check_ring(&self, other: &RingElem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_ring(other)?;
        Ok(RingElem::from_pairs(
            self.ring,
            self.coeffs
                .iter()
                .map(|(&h, &c)| (h, c))
                .chain(other.coeffs.iter().map(|(&h, &c)| (h, c))),
        ))
    }

    pub fn neg(&self) -> RingElem {
        RingElem::from_pairs(self.ring, self.coeffs.iter().map(|(&h, &c)| (h, -c)))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg())
    }

    /// Convolution product over the given group.
    pub fn mul(&self, other: &RingElem, group: &FiniteGroup) -> Result<RingElem> {
        self.check_ring(other)?;
        let mut pairs = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (&g, &a) in &self.coeffs {
            for (&h, &b) in &other.coeffs {
                pairs.push((group.mul(g, h), a * b));
            }
        }
        Ok(RingElem::from_pairs(self.ring, pairs))
    }

    /// Pushes basis symbols through a morphism, merging coefficients;
    /// for a quotient projection this is the canonical ring morphism
    /// onto the group ring of the quotient.
    pub fn project(&self, morphism: &Morphism) -> RingElem {
        RingElem::from_pairs(
            self.ring,
            self.coeffs.iter().map(|(&h, &c)| (morphism.apply(h), c)),
        )
    }

    /// Sorted sparse form for reports.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&h, &c)| json!({"elem": h, "coeff": c}))
            .collect();
        json!(terms)
    }
}

/// Enumerates every element of the mod-m group ring over a group of the
/// given order, in lexicographic coefficient order. The count is
/// m^order, so callers must cap it first.
pub fn enumerate_mod_ring(m: u32, order: u32) -> Vec<RingElem> {
    let n = order as usize;
    let total = (m as u64).pow(order);
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0i64; n];
    loop {
        out.push(RingElem::from_pairs(
            CoeffRing::Mod(m),
            digits.iter().enumerate().map(|(h, &c)| (h as u32, c)),
        ));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < m as i64 {
                break;
            }
            digits[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::perm::Perm;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        let big: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_permutations(
            format!("cyc:{n}"),
            n,
            vec![Perm::from_cycles(n, &format!("({})", big.join(" "))).unwrap()],
            &Caps::default(),
        )
        .unwrap()
    }

    #[test]
    fn basis_symbols_multiply_by_group_law() {
        let c4 = cyc(4);
        let a = RingElem::basis(CoeffRing::Int, 1);
        let b = RingElem::basis(CoeffRing::Int, 2);
        let ab = a.mul(&b, &c4).unwrap();
        assert_eq!(ab, RingElem::basis(CoeffRing::Int, 3));
    }

    #[test]
    fn projection_kills_coset_differences() {
        use crate::subgroup::{quotient, subgroup_closure};
        let c4 = cyc(4);
        let n = subgroup_closure(&c4, &[2]);
        let (_, proj) = quotient(&c4, &n).unwrap();
        // 1_x - 1_{xn} projects to zero when n lies in the kernel.
        let x = 1u32;
        let xn = c4.mul(x, 2);
        let diff = RingElem::basis(CoeffRing::Int, x)
            .sub(&RingElem::basis(CoeffRing::Int, xn))
            .unwrap();
        assert!(diff.project(&proj).is_zero());
    }

    #[test]
    fn square_of_one_plus_involution_over_c2() {
        let c2 = cyc(2);
        let s = RingElem::from_pairs(CoeffRing::Int, [(0, 1), (1, 1)]);
        let sq = s.mul(&s, &c2).unwrap();
        assert_eq!(sq, RingElem::from_pairs(CoeffRing::Int, [(0, 2), (1, 2)]));
    }

    #[test]
    fn mod_ring_normalizes_and_drops_zeros() {
        let a = RingElem::from_pairs(CoeffRing::Mod(2), [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(a.coeff(0), 1);
        assert_eq!(a.coeff(1), 0);
        assert_eq!(a.coeff(2), 1);
        assert_eq!(a.coeffs().len(), 2);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = RingElem::basis(CoeffRing::Int, 0);
        let b = RingElem::basis(CoeffRing::Mod(2), 0);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch)));
    }

    #[test]
    fn mod_enumeration_has_full_count() {
        let all = enumerate_mod_ring(2, 3);
        assert_eq!(all.len(), 8);
        // All distinct.
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn coeff_ring_parse_roundtrip() {
        assert_eq!(CoeffRing::parse("z").unwrap(), CoeffRing::Int);
        assert_eq!(CoeffRing::parse("zmod:4").unwrap(), CoeffRing::Mod(4));
        assert!(CoeffRing::parse("zmod:1").is_err());
        assert!(CoeffRing::parse("q").is_err());
    }

    fn arb_elem(order: u32) -> impl Strategy<Value = RingElem> {
        proptest::collection::btree_map(0..order, -4i64..5, 0..4).prop_map(|m| {
            RingElem::from_pairs(CoeffRing::Int, m)
        })
    }

    proptest! {
        // The quotient projection is a ring morphism.
        #[test]
        fn projection_preserves_ring_ops(a in arb_elem(4), b in arb_elem(4)) {
            use crate::subgroup::{quotient, subgroup_closure};
            let c4 = cyc(4);
            let n = subgroup_closure(&c4, &[2]);
            let (q, proj) = quotient(&c4, &n).unwrap();
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(sum.project(&proj), a.project(&proj).add(&b.project(&proj)).unwrap());
            let prod = a.mul(&b, &c4).unwrap();
            prop_assert_eq!(prod.project(&proj), a.project(&proj).mul(&b.project(&proj), &q).unwrap());
        }
    }
}
