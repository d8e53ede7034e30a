use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse::{RowReducer, SparseVec};

/// `F^n / span(relations)`, with quotient coordinates on the non-pivot
/// columns of the reduced relation rows.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    relations: RowReducer,
    basis: Vec<usize>,
    coord: Vec<Option<usize>>,
}

impl QuotientSpace {
    pub fn new(relations: RowReducer) -> Self {
        let dim = relations.dim();
        let mut basis = Vec::new();
        let mut coord = vec![None; dim];
        for (c, slot) in coord.iter_mut().enumerate() {
            if !relations.is_pivot(c) {
                *slot = Some(basis.len());
                basis.push(c);
            }
        }
        QuotientSpace {
            relations,
            basis,
            coord,
        }
    }

    pub fn field(&self) -> Field {
        self.relations.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn relations(&self) -> &RowReducer {
        &self.relations
    }

    /// Ambient coordinate lifted by quotient basis vector `j`.
    pub fn section(&self, j: usize) -> usize {
        self.basis[j]
    }

    pub fn section_vector(&self, j: usize) -> SparseVec {
        vec![(self.basis[j], self.field().one())]
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (c, x) in self.relations.reduce(v) {
            out[self.coord[c].expect("reduced vectors avoid pivots")] = x;
        }
        out
    }

    pub fn project_sparse(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (self.coord[c].expect("reduced vectors avoid pivots"), x))
            .collect()
    }

    pub fn is_zero_in_quotient(&self, v: &[(usize, Scalar)]) -> bool {
        self.relations.contains(v)
    }

    /// The reduced relation rows, which span the relation submodule.
    pub fn relation_rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.relations
            .pivots()
            .into_iter()
            .map(move |p| self.relations.pivot_row(p).unwrap())
    }

    /// Matrix (in quotient coordinates) of the map `target ∘ f ∘ section`,
    /// where `f` sends ambient basis vectors of `self` into the ambient space
    /// of `target`.
    pub fn induced_map(&self, target: &QuotientSpace, f: impl Fn(usize) -> SparseVec) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|j| target.project_sparse(&f(self.section(j))))
            .collect();
        Matrix::from_columns(self.field(), target.dim(), &cols)
    }

    /// Checks that `f` maps every relation of `self` to a relation of
    /// `target`; returns the first offending pivot otherwise.
    pub fn check_descends(
        &self,
        target: &QuotientSpace,
        f: impl Fn(usize) -> SparseVec,
    ) -> Result<(), usize> {
        for p in self.relations.pivots() {
            let row = self.relations.pivot_row(p).unwrap();
            let image = apply(row, &f);
            if !target.is_zero_in_quotient(&image) {
                return Err(p);
            }
        }
        Ok(())
    }
}

/// Linear extension of a basis map to a sparse vector.
pub fn apply(v: &[(usize, Scalar)], f: impl Fn(usize) -> SparseVec) -> SparseVec {
    let mut out = Vec::new();
    for (i, x) in v {
        for (j, y) in f(*i) {
            out.push((j, x * &y));
        }
    }
    super::sparse::normalize(out)
}

/// Quotient of `F^n` by the span of dense relation vectors.
pub fn quotient_by(field: Field, ambient_dim: usize, relations: &[Vec<Scalar>]) -> QuotientSpace {
    let mut red = RowReducer::new(field, ambient_dim);
    for r in relations {
        assert_eq!(r.len(), ambient_dim, "relation length");
        let sparse: SparseVec = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        red.insert(&sparse);
    }
    QuotientSpace::new(red)
}
