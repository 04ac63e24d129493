use num_rational::Ratio;

/// Ground field for Lie-algebra coefficients. Prime fields support
/// exhaustive element enumeration (what subspace-lattice enumeration
/// needs); the rationals support arithmetic only.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    type Elem: Copy + PartialEq + Eq + Ord + std::fmt::Debug + std::hash::Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    /// All field elements in canonical order, if the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn label(&self) -> String;
}

/// The field with p elements, p prime, on residues 0..p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Option<PrimeField> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0);
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        result as u32
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }

    fn label(&self) -> String {
        format!("F{}", self.p)
    }
}

/// The rational numbers on machine-word ratios. Arithmetic panics on
/// overflow, which is acceptable at desk scale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Ratio<i64>;

    fn zero(&self) -> Ratio<i64> {
        Ratio::from_integer(0)
    }

    fn one(&self) -> Ratio<i64> {
        Ratio::from_integer(1)
    }

    fn add(&self, a: Ratio<i64>, b: Ratio<i64>) -> Ratio<i64> {
        a + b
    }

    fn neg(&self, a: Ratio<i64>) -> Ratio<i64> {
        -a
    }

    fn mul(&self, a: Ratio<i64>, b: Ratio<i64>) -> Ratio<i64> {
        a * b
    }

    fn inv(&self, a: Ratio<i64>) -> Ratio<i64> {
        Ratio::from_integer(1) / a
    }

    fn elements(&self) -> Option<Vec<Ratio<i64>>> {
        None
    }

    fn label(&self) -> String {
        "Q".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        assert!(PrimeField::new(2).is_some());
        assert!(PrimeField::new(3).is_some());
        assert!(PrimeField::new(5).is_some());
        assert!(PrimeField::new(1).is_none());
        assert!(PrimeField::new(4).is_none());
        assert!(PrimeField::new(9).is_none());
    }

    #[test]
    fn inverses_mod_five() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rational_arithmetic() {
        let q = Rationals;
        let half = Ratio::new(1, 2);
        assert_eq!(q.add(half, half), q.one());
        assert_eq!(q.inv(half), Ratio::from_integer(2));
        assert!(q.elements().is_none());
    }
}
