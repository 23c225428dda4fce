use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::ExactMatrix;
use super::vector::SparseVec;

/// A subspace of `ℚ(i)^ambient` held as a reduced echelon basis.
///
/// Row `k` is `1` at `pivots[k]` and vanishes at every other pivot, so the
/// coefficient of row `k` in a member is simply its entry at `pivots[k]`.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<usize>,
}

const NO_ROW: usize = usize::MAX;

/// Dense scratch space for reductions, reset after every use.
struct Scratch {
    acc: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Scratch {
    fn new(len: usize) -> Self {
        Scratch {
            acc: vec![Scalar::ZERO; len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    fn touch(&mut self, i: usize) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            if !self.acc[i].is_zero() {
                out.push((i, std::mem::take(&mut self.acc[i])));
            }
        }
        self.touched.clear();
        SparseVec::from_pairs(out)
    }
}

/// Cheapest entry by bit size, lowest index on ties. Returns the index and
/// the inverse of the entry.
fn choose_pivot(v: &SparseVec) -> (usize, Scalar) {
    let (i, c) = v
        .entries()
        .iter()
        .min_by_key(|(i, c)| (c.height(), *i))
        .expect("nonzero vector");
    (*i, c.inv().expect("pivot is nonzero"))
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NO_ROW; ambient],
        }
    }

    /// Wraps rows already in reduced echelon form with the given pivots.
    pub(crate) fn from_echelon(ambient: usize, rows: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let mut pivot_row = vec![NO_ROW; ambient];
        for (k, &p) in pivots.iter().enumerate() {
            pivot_row[p] = k;
        }
        debug_assert!(rows.iter().zip(&pivots).all(|(r, &p)| r.get(p).is_one()));
        Subspace {
            ambient,
            rows,
            pivots,
            pivot_row,
        }
    }

    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut span = Subspace::new(ambient);
        let mut scratch = Scratch::new(ambient);
        for v in vectors {
            debug_assert!(v.support_end() <= ambient, "vector outside ambient space");
            let reduced = span.reduce_with(&v, &mut scratch);
            span.push_reduced(reduced);
        }
        span
    }

    /// The whole space.
    pub fn full(ambient: usize) -> Self {
        Subspace::from_echelon(
            ambient,
            (0..ambient).map(SparseVec::unit).collect(),
            (0..ambient).collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of the complement of the pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&j| self.pivot_row[j] == NO_ROW)
            .collect()
    }

    fn reduce_with(&self, v: &SparseVec, scratch: &mut Scratch) -> SparseVec {
        for (i, c) in v.entries() {
            scratch.acc[*i] = c.clone();
            scratch.touch(*i);
        }
        for (i, c) in v.entries() {
            let k = self.pivot_row[*i];
            if k == NO_ROW {
                continue;
            }
            for (j, x) in self.rows[k].entries() {
                scratch.touch(*j);
                scratch.acc[*j].sub_mul(c, x);
            }
        }
        scratch.drain()
    }

    /// Appends a reduced nonzero vector as a new row and clears its pivot
    /// from the older rows. Returns whether the dimension grew.
    fn push_reduced(&mut self, reduced: SparseVec) -> bool {
        if reduced.is_zero() {
            return false;
        }
        let (pivot, inv) = choose_pivot(&reduced);
        let row = reduced.scale(&inv);
        for old in &mut self.rows {
            let x = old.get(pivot);
            if !x.is_zero() {
                *old = old.axpy(&-&x, &row);
            }
        }
        self.pivot_row[pivot] = self.rows.len();
        self.rows.push(row);
        self.pivots.push(pivot);
        true
    }

    /// Residual of `v` after clearing every pivot position.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v, &mut Scratch::new(self.ambient))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let reduced = self.reduce(v);
        self.push_reduced(reduced)
    }

    /// Null space of the linear map whose rows span `self`, i.e. the
    /// vectors annihilated by every basis row, read off the free columns.
    pub fn annihilator(&self) -> Subspace {
        let free = self.free_columns();
        let mut slot = vec![NO_ROW; self.ambient];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut pairs: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&f| vec![(f, Scalar::ONE)]).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (j, x) in row.entries() {
                if *j != p {
                    pairs[slot[*j]].push((p, -x));
                }
            }
        }
        let rows = pairs.into_iter().map(SparseVec::from_pairs).collect();
        Subspace::from_echelon(self.ambient, rows, free)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::usage(format!(
                "subspaces of dimension-{} and dimension-{} spaces",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(v);
        }
        Ok(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|v| self.contains(v)))
    }

    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_subspace(other)?)
    }

    /// `dim(A ∩ B) = dim A + dim B - dim(A + B)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// Explicit basis of `A ∩ B`, from the relations `Σ a_k u_k = Σ b_k v_k`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let na = self.rows.len();
        let columns = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|v| v.scale(&Scalar::from_int(-1))))
            .collect();
        let relations = ExactMatrix::from_columns(self.ambient, columns)?.kernel();
        let vectors = relations.basis().iter().map(|coeffs| {
            coeffs
                .entries()
                .iter()
                .filter(|(k, _)| *k < na)
                .fold(SparseVec::new(), |acc, (k, c)| acc.axpy(c, &self.rows[*k]))
        });
        Ok(Subspace::from_vectors(self.ambient, vectors))
    }

    /// `dim(self / sub)`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.check_ambient(sub)?;
        if let Some(bad) = sub.rows.iter().position(|v| !self.contains(v)) {
            return Err(Error::Containment(format!(
                "basis vector {bad} of a {}-dimensional subspace is not in the {}-dimensional superspace",
                sub.dim(),
                self.dim()
            )));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Coordinates of a member in the echelon basis, `None` if not a member.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut acc = v.to_dense(self.ambient);
        let mut coords = vec![Scalar::ZERO; self.rows.len()];
        for (k, row) in self.rows.iter().enumerate() {
            let p = self.pivots[k];
            if acc[p].is_zero() {
                continue;
            }
            let c = acc[p].clone();
            for (i, x) in row.entries() {
                acc[*i].sub_mul(&c, x);
            }
            coords[k] = c;
        }
        acc.iter().all(Scalar::is_zero).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn quotient_examples() {
        let a = Subspace::from_vectors(3, [v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(a.quotient_dim(&a).unwrap(), 0);
        assert_eq!(a.quotient_dim(&Subspace::new(3)).unwrap(), 2);
        let b = Subspace::from_vectors(3, [v(&[1, 1, 0])]);
        assert!(matches!(a.quotient_dim(&b), Err(Error::Containment(_))));
        let c = Subspace::from_vectors(3, [v(&[1, 1, 2])]);
        assert_eq!(a.quotient_dim(&c).unwrap(), 1);
    }

    #[test]
    fn intersection_basis() {
        let a = Subspace::from_vectors(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
    }

    #[test]
    fn rows_are_reduced() {
        let a = Subspace::from_vectors(4, [v(&[1, 2, 0, 1]), v(&[2, 4, 1, 0]), v(&[3, 6, 1, 1])]);
        assert_eq!(a.dim(), 2);
        for (k, row) in a.basis().iter().enumerate() {
            for (l, &p) in a.pivots().iter().enumerate() {
                assert_eq!(row.get(p), if k == l { Scalar::ONE } else { Scalar::ZERO });
            }
        }
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let a = Subspace::from_vectors(4, [v(&[1, 2, 0, 1]), v(&[0, 1, 1, 3])]);
        let k = a.annihilator();
        assert_eq!(k.dim(), 2);
        for x in k.basis() {
            for r in a.basis() {
                let dot = x
                    .entries()
                    .iter()
                    .fold(Scalar::ZERO, |acc, (i, c)| acc + &(c * &r.get(*i)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn coordinates_reconstruct() {
        let a = Subspace::from_vectors(3, [v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let w = v(&[2, 7, 9]);
        let coords = a.coordinates(&w).unwrap();
        let mut back = SparseVec::new();
        for (c, row) in coords.iter().zip(a.basis()) {
            back = back.axpy(c, row);
        }
        assert_eq!(back, w);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
