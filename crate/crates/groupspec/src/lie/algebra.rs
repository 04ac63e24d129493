use crate::caps::Caps;
use crate::error::{Error, Result};

use super::field::Field;
use super::subspace::{enumerate_subspaces, vec_add, vec_is_zero, vec_scale, vec_zero, Subspace};

/// A finite-dimensional Lie algebra by structure constants: the bracket
/// of each basis pair, validated antisymmetric and Jacobi at build time.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra<F: Field> {
    label: String,
    field: F,
    dim: usize,
    /// bracket[i][j] = coordinates of [e_i, e_j].
    bracket: Vec<Vec<Vec<F::Elem>>>,
}

/// A linear map between coordinate spaces, by images of basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap<F: Field> {
    field: F,
    src_dim: usize,
    dst_dim: usize,
    /// images[i] = image of source basis vector i.
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(field: F, src_dim: usize, dst_dim: usize, images: Vec<Vec<F::Elem>>) -> Self {
        debug_assert_eq!(images.len(), src_dim);
        debug_assert!(images.iter().all(|v| v.len() == dst_dim));
        LinearMap {
            field,
            src_dim,
            dst_dim,
            images,
        }
    }

    pub fn identity(field: F, dim: usize) -> Self {
        let images = (0..dim)
            .map(|i| {
                let mut v = vec_zero(&field, dim);
                v[i] = field.one();
                v
            })
            .collect();
        LinearMap::new(field, dim, dim, images)
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn dst_dim(&self) -> usize {
        self.dst_dim
    }

    pub fn images(&self) -> &[Vec<F::Elem>] {
        &self.images
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec_zero(&self.field, self.dst_dim);
        for (i, &c) in v.iter().enumerate() {
            if !self.field.is_zero(c) {
                out = vec_add(&self.field, &out, &vec_scale(&self.field, c, &self.images[i]));
            }
        }
        out
    }

    /// self after other.
    pub fn compose_after(&self, other: &LinearMap<F>) -> LinearMap<F> {
        debug_assert_eq!(other.dst_dim, self.src_dim);
        LinearMap::new(
            self.field.clone(),
            other.src_dim,
            self.dst_dim,
            other.images.iter().map(|v| self.apply(v)).collect(),
        )
    }

    pub fn image_space(&self) -> Subspace<F> {
        Subspace::span(self.field.clone(), self.dst_dim, &self.images)
    }

    pub fn kernel(&self) -> Subspace<F> {
        super::subspace::kernel_basis(&self.field, self.src_dim, &self.images)
    }

    pub fn is_injective(&self) -> bool {
        self.image_space().dim() == self.src_dim
    }

    pub fn preimage_of_subspace(&self, target: &Subspace<F>) -> Subspace<F> {
        // Kernel of (project mod target) after self.
        let reduced_images: Vec<Vec<F::Elem>> = self
            .images
            .iter()
            .map(|v| target.reduce(v))
            .collect();
        super::subspace::kernel_basis(&self.field, self.src_dim, &reduced_images)
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Builds and validates. Entries give [e_i, e_j] for i < j (or any
    /// i != j; the antisymmetric mirror is checked or filled). Reports a
    /// witness triple on a Jacobi failure.
    pub fn new(
        label: impl Into<String>,
        field: F,
        dim: usize,
        entries: &[(usize, usize, Vec<F::Elem>)],
    ) -> Result<LieAlgebra<F>> {
        let zero = vec_zero(&field, dim);
        let mut bracket = vec![vec![zero.clone(); dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, coeffs) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || coeffs.len() != dim {
                return Err(Error::BadLieAlgebra(format!(
                    "entry ({i},{j}) out of range for dimension {dim}"
                )));
            }
            if i == j {
                if !vec_is_zero(&field, coeffs) {
                    return Err(Error::BadLieAlgebra(format!(
                        "bracket [e_{i}, e_{i}] must vanish"
                    )));
                }
                continue;
            }
            if given[i][j] {
                return Err(Error::BadLieAlgebra(format!("duplicate entry ({i},{j})")));
            }
            given[i][j] = true;
            let negated: Vec<F::Elem> = coeffs.iter().map(|&c| field.neg(c)).collect();
            if given[j][i] && bracket[j][i] != negated {
                return Err(Error::BadLieAlgebra(format!(
                    "entries ({i},{j}) and ({j},{i}) are not antisymmetric"
                )));
            }
            bracket[i][j] = coeffs.clone();
            if !given[j][i] {
                bracket[j][i] = negated;
                given[j][i] = true;
            }
        }
        let algebra = LieAlgebra {
            label: label.into(),
            field,
            dim,
            bracket,
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = algebra.bracket_vec(&algebra.bracket[i][j], &algebra.basis_vec(k));
                    let b = algebra.bracket_vec(&algebra.bracket[j][k], &algebra.basis_vec(i));
                    let c = algebra.bracket_vec(&algebra.bracket[k][i], &algebra.basis_vec(j));
                    let total = vec_add(
                        &algebra.field,
                        &vec_add(&algebra.field, &a, &b),
                        &c,
                    );
                    if !vec_is_zero(&algebra.field, &total) {
                        return Err(Error::BadLieAlgebra(format!(
                            "Jacobi identity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(algebra)
    }

    pub fn abelian(label: impl Into<String>, field: F, dim: usize) -> LieAlgebra<F> {
        LieAlgebra::new(label, field, dim, &[]).expect("zero brackets satisfy the axioms")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_vec(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec_zero(&self.field, self.dim);
        v[i] = self.field.one();
        v
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.bracket[i][j]
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket_vec(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec_zero(f, self.dim);
        for (i, &a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let c = f.mul(a, b);
                out = vec_add(f, &out, &vec_scale(f, c, &self.bracket[i][j]));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket
            .iter()
            .all(|row| row.iter().all(|v| vec_is_zero(&self.field, v)))
    }

    /// {x : [L, x] = 0}
    pub fn center(&self) -> Subspace<F> {
        // Kernel of x -> ([e_0, x], ..., [e_{d-1}, x]) stacked.
        let stacked_dim = self.dim * self.dim;
        let images: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|j| {
                let mut row = Vec::with_capacity(stacked_dim);
                for i in 0..self.dim {
                    row.extend_from_slice(&self.bracket[i][j]);
                }
                row
            })
            .collect();
        super::subspace::kernel_basis(&self.field, self.dim, &images)
    }

    pub fn is_ideal(&self, v: &Subspace<F>) -> bool {
        (0..self.dim).all(|i| {
            v.rows()
                .iter()
                .all(|r| v.contains(&self.bracket_vec(&self.basis_vec(i), r)))
        })
    }

    /// Least ideal containing the seed vectors: close the span under
    /// bracketing with the basis until stable.
    pub fn ideal_closure(&self, seed: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut space = Subspace::span(self.field.clone(), self.dim, seed);
        loop {
            let mut grew = false;
            let rows: Vec<Vec<F::Elem>> = space.rows().to_vec();
            for i in 0..self.dim {
                for r in &rows {
                    let b = self.bracket_vec(&self.basis_vec(i), r);
                    if !space.contains(&b) {
                        space.insert(&b);
                        grew = true;
                    }
                }
            }
            if !grew {
                return space;
            }
        }
    }

    /// [L, L] as an ideal.
    pub fn derived(&self) -> Subspace<F> {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                brackets.push(self.bracket[i][j].clone());
            }
        }
        self.ideal_closure(&brackets)
    }

    /// All ideals, canonically ordered, by filtering the subspace
    /// lattice. The vector count |F|^dim is capped.
    pub fn ideals(&self, caps: &Caps) -> Result<Vec<Subspace<F>>> {
        let field_size = self
            .field
            .elements()
            .ok_or(Error::NonEnumerableField)?
            .len() as u64;
        let vectors = field_size.saturating_pow(self.dim as u32);
        if vectors > caps.max_lie_vectors {
            return Err(Error::SizeLimit {
                what: "subspace lattice",
                needed: vectors,
                limit: caps.max_lie_vectors,
            });
        }
        let all = enumerate_subspaces(&self.field, self.dim).ok_or(Error::NonEnumerableField)?;
        let mut ideals: Vec<Subspace<F>> = all.into_iter().filter(|s| self.is_ideal(s)).collect();
        ideals.sort_by(|a, b| a.canonical_cmp(b));
        Ok(ideals)
    }

    /// Quotient by an ideal, on the complement coordinates of the ideal's
    /// pivot columns, together with the projection.
    pub fn quotient(&self, p: &Subspace<F>) -> Result<(LieAlgebra<F>, LinearMap<F>)> {
        if !self.is_ideal(p) {
            return Err(Error::NotAnIdeal);
        }
        let f = &self.field;
        let coords: Vec<usize> = (0..self.dim).filter(|c| !p.pivots().contains(c)).collect();
        let qdim = coords.len();
        let project = |v: &[F::Elem]| -> Vec<F::Elem> {
            let reduced = p.reduce(v);
            coords.iter().map(|&c| reduced[c]).collect()
        };
        let proj_images: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|i| project(&self.basis_vec(i)))
            .collect();
        let mut entries = Vec::new();
        for a in 0..qdim {
            for b in a + 1..qdim {
                let lifted =
                    self.bracket_vec(&self.basis_vec(coords[a]), &self.basis_vec(coords[b]));
                entries.push((a, b, project(&lifted)));
            }
        }
        let quotient = LieAlgebra::new(
            format!("{}/{}", self.label, p.dim()),
            f.clone(),
            qdim,
            &entries,
        )
        .map_err(|e| {
            Error::InvariantViolation(format!("quotient bracket failed validation: {e}"))
        })?;
        let projection = LinearMap::new(f.clone(), self.dim, qdim, proj_images);
        Ok((quotient, projection))
    }

    /// Direct sum with block-diagonal brackets.
    pub fn direct_sum(&self, other: &LieAlgebra<F>) -> LieAlgebra<F> {
        let f = &self.field;
        let dim = self.dim + other.dim;
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let mut v = self.bracket[i][j].clone();
                v.extend(vec_zero(f, other.dim));
                entries.push((i, j, v));
            }
        }
        for i in 0..other.dim {
            for j in i + 1..other.dim {
                let mut v = vec_zero(f, self.dim);
                v.extend(other.bracket[i][j].clone());
                entries.push((self.dim + i, self.dim + j, v));
            }
        }
        LieAlgebra::new(
            format!("sum({},{})", self.label, other.label),
            f.clone(),
            dim,
            &entries,
        )
        .expect("block sums preserve the axioms")
    }

    /// Left-factor inclusion into a direct sum of this algebra with one
    /// of dimension `other_dim`.
    pub fn left_inclusion(&self, other_dim: usize) -> LinearMap<F> {
        let f = &self.field;
        let images = (0..self.dim)
            .map(|i| {
                let mut v = vec_zero(f, self.dim + other_dim);
                v[i] = f.one();
                v
            })
            .collect();
        LinearMap::new(f.clone(), self.dim, self.dim + other_dim, images)
    }

    pub fn right_inclusion(&self, left_dim: usize) -> LinearMap<F> {
        let f = &self.field;
        let images = (0..self.dim)
            .map(|i| {
                let mut v = vec_zero(f, left_dim + self.dim);
                v[left_dim + i] = f.one();
                v
            })
            .collect();
        LinearMap::new(f.clone(), self.dim, left_dim + self.dim, images)
    }
}

impl<F: Field> std::fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.label, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, Rationals};
    use super::*;
    use num_rational::Ratio;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    /// Basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2(p: u32) -> LieAlgebra<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        let two = f.from_int(2);
        let minus_two = f.from_int(-2);
        LieAlgebra::new(
            format!("lie:sl2@{p}"),
            f,
            3,
            &[
                (1, 0, vec![two, 0, 0]),
                (1, 2, vec![0, 0, minus_two]),
                (0, 2, vec![0, 1, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sl2_is_valid_and_nonabelian() {
        let a = sl2(5);
        assert_eq!(a.dim(), 3);
        assert!(!a.is_abelian());
        assert_eq!(a.derived().dim(), 3);
    }

    #[test]
    fn abelian_algebra_is_valid() {
        let a = LieAlgebra::abelian("lie:abelian:4@3", PrimeField::new(3).unwrap(), 4);
        assert!(a.is_abelian());
        assert_eq!(a.center().dim(), 4);
    }

    #[test]
    fn self_bracket_must_vanish() {
        let f = f5();
        let bad = LieAlgebra::new("bad", f, 2, &[(0, 0, vec![0, 1])]);
        assert!(matches!(bad, Err(Error::BadLieAlgebra(_))));
    }

    #[test]
    fn jacobi_failure_is_reported_with_a_triple() {
        let f = f5();
        // [e0,e1]=e2, [e1,e2]=e1, [e0,e2]=0: the (0,1,2) cycle sums to -e2.
        let bad = LieAlgebra::new(
            "bad",
            f,
            3,
            &[
                (0, 1, vec![0, 0, 1]),
                (1, 2, vec![0, 1, 0]),
                (0, 2, vec![0, 0, 0]),
            ],
        );
        match bad {
            Err(Error::BadLieAlgebra(msg)) => assert!(msg.contains("Jacobi")),
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn heisenberg_center_is_the_bracket_line() {
        let f3 = PrimeField::new(3).unwrap();
        let heis =
            LieAlgebra::new("lie:heis@3", f3, 3, &[(0, 1, vec![0, 0, 1])]).unwrap();
        let z = heis.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&[0, 0, 1]));
        assert_eq!(heis.ideals(&Caps::default()).unwrap().len(), 7);
    }

    #[test]
    fn sl2_over_rationals_validates() {
        let q = Rationals;
        let two = Ratio::from_integer(2);
        let a = LieAlgebra::new(
            "sl2@Q",
            q,
            3,
            &[
                (1, 0, vec![two, Ratio::from_integer(0), Ratio::from_integer(0)]),
                (1, 2, vec![Ratio::from_integer(0), Ratio::from_integer(0), -two]),
                (0, 2, vec![Ratio::from_integer(0), Ratio::from_integer(1), Ratio::from_integer(0)]),
            ],
        )
        .unwrap();
        assert!(!a.is_abelian());
        assert!(matches!(
            a.ideals(&Caps::default()),
            Err(Error::NonEnumerableField)
        ));
    }

    #[test]
    fn quotient_dimensions_add_up() {
        let a = sl2(5);
        let ideals = a.ideals(&Caps::default()).unwrap();
        for p in &ideals {
            let (q, proj) = a.quotient(p).unwrap();
            assert_eq!(q.dim(), a.dim() - p.dim());
            assert!(p.rows().iter().all(|r| vec_is_zero(&f5(), &proj.apply(r))));
        }
    }

    #[test]
    fn ideal_closure_grows_to_ideals() {
        let a = sl2(5);
        // sl2 over F5 is simple: any nonzero seed closes to everything.
        let c = a.ideal_closure(&[vec![1, 0, 0]]);
        assert_eq!(c.dim(), 3);
    }
}
