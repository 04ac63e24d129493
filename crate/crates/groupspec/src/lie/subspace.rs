use super::field::Field;

pub fn vec_zero<F: Field>(field: &F, n: usize) -> Vec<F::Elem> {
    vec![field.zero(); n]
}

pub fn vec_is_zero<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|&x| field.is_zero(x))
}

pub fn vec_add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn vec_scale<F: Field>(field: &F, c: F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|&x| field.mul(c, x)).collect()
}

/// A subspace in reduced row echelon form: rows sorted by pivot column,
/// pivots normalized to 1 and cleared above and below. The form is
/// unique per subspace, so equality is row-by-row comparison.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        let mut rows = Vec::with_capacity(ambient_dim);
        for i in 0..ambient_dim {
            let mut r = vec_zero(&field, ambient_dim);
            r[i] = field.one();
            rows.push(r);
        }
        Subspace {
            field,
            ambient_dim,
            rows,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(field: F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let mut s = Subspace::zero(field, ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero_space(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// Reduces a vector against the rows: the result has zeros at every
    /// pivot column, and is the zero vector exactly when v lies in the
    /// subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = out[piv];
            if !f.is_zero(c) {
                out = vec_sub(f, &out, &vec_scale(f, c, row));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        vec_is_zero(&self.field, &self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Inserts a vector, returning true if the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let reduced = self.reduce(v);
        let piv = match reduced.iter().position(|&x| !f.is_zero(x)) {
            Some(p) => p,
            None => return false,
        };
        let lead = reduced[piv];
        let normalized = vec_scale(&f, f.inv(lead), &reduced);
        // Clear the new pivot column from existing rows.
        for row in &mut self.rows {
            let c = row[piv];
            if !f.is_zero(c) {
                *row = vec_sub(&f, row, &vec_scale(&f, c, &normalized));
            }
        }
        let at = self.pivots.iter().position(|&p| p > piv).unwrap_or(self.pivots.len());
        self.rows.insert(at, normalized);
        self.pivots.insert(at, piv);
        true
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection_dim(&self, other: &Subspace<F>) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn meets_trivially(&self, other: &Subspace<F>) -> bool {
        self.intersection_dim(other) == 0
    }

    /// (dim, rows) canonical comparison for deterministic listings.
    pub fn canonical_cmp(&self, other: &Subspace<F>) -> std::cmp::Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient_dim)
    }
}

/// All subspaces of F^n in canonical order: by dimension, then pivot
/// pattern, then free entries. Enumerating reduced echelon forms hits
/// each subspace exactly once.
pub fn enumerate_subspaces<F: Field>(field: &F, n: usize) -> Option<Vec<Subspace<F>>> {
    let elems = field.elements()?;
    let mut out = vec![Subspace::zero(field.clone(), n)];
    for k in 1..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // Free positions: (row r, col c) with c > pivots[r], c not a pivot.
            let mut free = Vec::new();
            for r in 0..k {
                for c in pivots[r] + 1..n {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let mut choice = vec![0usize; free.len()];
            loop {
                let mut rows = Vec::with_capacity(k);
                for r in 0..k {
                    let mut row = vec_zero(field, n);
                    row[pivots[r]] = field.one();
                    rows.push(row);
                }
                for (slot, &(r, c)) in free.iter().enumerate() {
                    rows[r][c] = elems[choice[slot]];
                }
                out.push(Subspace {
                    field: field.clone(),
                    ambient_dim: n,
                    rows,
                    pivots: pivots.clone(),
                });
                let mut s = free.len();
                let mut done = true;
                while s > 0 {
                    s -= 1;
                    choice[s] += 1;
                    if choice[s] < elems.len() {
                        done = false;
                        break;
                    }
                    choice[s] = 0;
                }
                if done {
                    break;
                }
            }
            // Next pivot combination in lexicographic order.
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if pivots[i] < n - (k - i) {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Some(out)
}

/// Kernel of the linear map sending basis vector i to `images[i]`:
/// row-reduce the image matrix while mirroring each row operation on an
/// identity block; rows that reduce to zero expose kernel vectors.
pub fn kernel_basis<F: Field>(
    field: &F,
    src_dim: usize,
    images: &[Vec<F::Elem>],
) -> Subspace<F> {
    debug_assert_eq!(images.len(), src_dim);
    let mut kernel_vectors: Vec<Vec<F::Elem>> = Vec::new();
    // (reduced image row, tracked source row, pivot)
    let mut reduced: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new();
    for i in 0..src_dim {
        let mut row = images[i].clone();
        let mut track = vec_zero(field, src_dim);
        track[i] = field.one();
        for (r, t, piv) in &reduced {
            let c = row[*piv];
            if !field.is_zero(c) {
                row = vec_sub(field, &row, &vec_scale(field, c, r));
                track = vec_sub(field, &track, &vec_scale(field, c, t));
            }
        }
        match row.iter().position(|&x| !field.is_zero(x)) {
            Some(piv) => {
                let inv = field.inv(row[piv]);
                reduced.push((
                    vec_scale(field, inv, &row),
                    vec_scale(field, inv, &track),
                    piv,
                ));
            }
            None => kernel_vectors.push(track),
        }
    }
    Subspace::span(field.clone(), src_dim, &kernel_vectors)
}
