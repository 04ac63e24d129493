use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image table.
///
/// Composition convention: `a.compose(&b)` applies `b` first, then `a`,
/// matching the group product used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from an image table, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y as usize >= n || seen[y as usize] {
                return Err(Error::BadPermutation(format!(
                    "image table {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[y as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from cycle notation over `0..degree`, e.g. `(0 1)(2 3 4)`.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let cleaned = text.trim();
        if cleaned.is_empty() || cleaned == "()" {
            return Ok(Perm { images });
        }
        let mut rest = cleaned;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::BadPermutation(format!("expected '(' in {text:?}")))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::BadPermutation(format!("unclosed cycle in {text:?}")))?
                + open;
            let body = &rest[open + 1..close];
            let points: Vec<usize> = body
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::BadPermutation(format!("bad point {t:?} in {text:?}")))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(Error::BadPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
            }
            for w in 0..points.len() {
                let from = points[w];
                let to = points[(w + 1) % points.len()];
                images[from] = to as u32;
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        debug_assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images }
    }

    /// Cycle notation with fixed points omitted; identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
                first = false;
                p = self.images[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycles(3, "(0 1)").unwrap();
        let b = Perm::from_cycles(3, "(1 2)").unwrap();
        // b sends 1->2, then a fixes 2.
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(0), 1);
    }

    #[test]
    fn inverse_and_roundtrip() {
        let p = Perm::from_cycles(5, "(0 1 2 3 4)").unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Perm::from_cycles(5, &p.cycle_string()).unwrap(), p);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_cycles(3, "(0 5)").is_err());
    }

    #[test]
    fn identity_prints_as_unit() {
        assert_eq!(Perm::identity(4).cycle_string(), "()");
    }
}
