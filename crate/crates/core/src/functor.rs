//! Functors from a biset's groupoid to vector spaces, the bimodule `Σ(F)`,
//! the tensor product of two such functors over the middle group, and the
//! comparison maps between `Σ(N ⊗_H M)` and `Σ(N) ⊗_{RH} Σ(M)`.

use crate::biset::{compose_bisets, Biset, ComposedBiset, TransitiveBiset};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::sparse::{kron, normalize};
use crate::linalg::{Field, Matrix, QuotientSpace, RowReducer, SparseVec};
use crate::rep::{BimoduleRep, Rep, TensorOverH};

/// `F(u)` for each point and `F(x): F(u) → F(x·u)` for each composite
/// `x = (h, g)`, where `x·u = h·u·g⁻¹`.
#[derive(Clone, Debug)]
pub struct FunctorOverBiset {
    biset: Biset,
    field: Field,
    dims: Vec<usize>,
    transports: Vec<Matrix>,
}

impl FunctorOverBiset {
    pub fn new(
        biset: Biset,
        field: Field,
        dims: Vec<usize>,
        transports: Vec<Matrix>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(biset, field, dims, transports)?;
        f.check_functoriality()?;
        Ok(f)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        biset: Biset,
        field: Field,
        dims: Vec<usize>,
        transports: Vec<Matrix>,
    ) -> Result<Self> {
        let m = biset.points();
        let order = biset.product().order();
        if dims.len() != m || transports.len() != order * m {
            return Err(Error::Shape("functor data has the wrong size".into()));
        }
        for x in 0..order {
            for u in 0..m {
                let t = &transports[x * m + u];
                if t.field() != field {
                    return Err(Error::FieldMismatch(t.field(), field));
                }
                if t.rows() != dims[biset.act(x, u)] || t.cols() != dims[u] {
                    return Err(Error::Shape(format!(
                        "transport of {x} at point {u} has the wrong shape"
                    )));
                }
            }
        }
        Ok(FunctorOverBiset {
            biset,
            field,
            dims,
            transports,
        })
    }

    pub fn biset(&self) -> &Biset {
        &self.biset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, u: usize) -> usize {
        self.dims[u]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offset of each point's block in `Σ(F)`.
    pub fn offsets(&self) -> Vec<usize> {
        prefix_sums(&self.dims)
    }

    #[inline]
    pub fn transport(&self, x: usize, u: usize) -> &Matrix {
        &self.transports[x * self.biset.points() + u]
    }

    /// Identity goes to identity, and `F(s·x) = F(s)·F(x)` for every
    /// generator `s`, every `x` and every point. This implies the full
    /// composition law.
    pub fn check_functoriality(&self) -> Result<()> {
        let gens = Subgroup::whole(self.biset.product().group()).generators();
        self.check_against(&gens)
    }

    /// The composition law for every composable pair.
    pub fn check_functoriality_exhaustive(&self) -> Result<()> {
        let all: Vec<usize> = self.biset.product().group().elements().collect();
        self.check_against(&all)
    }

    fn check_against(&self, firsts: &[usize]) -> Result<()> {
        let grp = self.biset.product().group().clone();
        for u in 0..self.biset.points() {
            if !self.transport(0, u).is_identity() {
                return Err(Error::Functoriality(format!(
                    "identity is not sent to 1 at point {u}"
                )));
            }
        }
        for &s in firsts {
            for x in grp.elements() {
                for u in 0..self.biset.points() {
                    let v = self.biset.act(x, u);
                    let lhs = self.transport(grp.mul(s, x), u);
                    if *lhs != self.transport(s, v).mul(self.transport(x, u))? {
                        return Err(Error::Functoriality(format!(
                            "F({s}·{x}) differs from F({s})∘F({x}) at point {u}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `F(u)` as a module over the automorphism group `A(u)`.
    pub fn point_rep(&self, u: usize) -> Result<Rep> {
        let a = self.biset.aut_group(u)?;
        let images = a
            .elements()
            .iter()
            .map(|&x| self.transport(x, u).clone())
            .collect();
        Rep::from_images_unchecked(a.subgroup().clone(), self.field, self.dims[u], images)
    }

    /// Test hook: overwrite one transport matrix without any checks.
    #[doc(hidden)]
    pub fn corrupt_transport(&mut self, x: usize, u: usize, m: Matrix) {
        let n = self.biset.points();
        self.transports[x * n + u] = m;
    }
}

fn prefix_sums(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        out.push(acc);
        acc += d;
    }
    out
}

/// The functor `M̃` on `(H×G)/X` attached to an `X`-module: each point
/// `c·X` carries `M`, and `(h,g)` acts from `c·X` to `c'·X` by `M(y)` where
/// `(h,g)·c = c'·y`, `y ∈ X`.
pub fn functor_from_module(u: &TransitiveBiset, m: &Rep) -> Result<FunctorOverBiset> {
    if m.domain() != u.subgroup().subgroup() {
        return Err(Error::GroupMismatch(
            "module is not over the stabilizer of the biset".into(),
        ));
    }
    let b = u.biset();
    let grp = b.product().group().clone();
    let n = b.points();
    let mut transports = Vec::with_capacity(grp.order() * n);
    for x in grp.elements() {
        for (i, &c) in u.coset_reps().iter().enumerate() {
            let (j, y) = u.factor(grp.mul(x, c));
            debug_assert_eq!(j, b.act(x, i));
            transports.push(m.image(y).clone());
        }
    }
    FunctorOverBiset::new_unchecked(b.clone(), m.field(), vec![m.dim(); n], transports)
}

/// `Σ(F) = ⊕_u F(u)`, `(h,g)` moving block `u` to block `h·u·g⁻¹`.
pub fn sigma(f: &FunctorOverBiset) -> Result<BimoduleRep> {
    let product = f.biset.product().clone();
    let grp = product.group().clone();
    let offsets = f.offsets();
    let n = f.total_dim();
    let images = grp
        .elements()
        .map(|x| {
            let mut out = Matrix::zeros(f.field, n, n);
            for u in 0..f.biset.points() {
                let v = f.biset.act(x, u);
                let t = f.transport(x, u);
                for i in 0..t.rows() {
                    for j in 0..t.cols() {
                        let e = t.get(i, j);
                        if !e.is_zero() {
                            out.set(offsets[v] + i, offsets[u] + j, e.clone());
                        }
                    }
                }
            }
            out
        })
        .collect();
    let rep = Rep::from_images_unchecked(Subgroup::whole(&grp), f.field, n, images)?;
    BimoduleRep::new(product, rep)
}

/// `⊕_{u ∈ [H\U/G]} Ind_{A(u)}^{H×G} F(u) → Σ(F)`, sending `c ⊗ f` to
/// `F(c)·f` in block `c·u`. Orbit representatives are the minimum points
/// and each induced block uses minimum-id coset representatives.
pub fn orbit_decomposition_map(f: &FunctorOverBiset) -> Result<Matrix> {
    let grp = f.biset.product().group().clone();
    let offsets = f.offsets();
    let mut cols: Vec<SparseVec> = Vec::new();
    for u in f.biset.orbit_reps() {
        let a = f.biset.aut_group(u)?;
        let (reps, _) = crate::rep::cosets_within(&Subgroup::whole(&grp), a.subgroup());
        for c in reps {
            let v = f.biset.act(c, u);
            let t = f.transport(c, u);
            for j in 0..f.dims[u] {
                cols.push(
                    t.column(j)
                        .into_iter()
                        .map(|(i, x)| (offsets[v] + i, x))
                        .collect(),
                );
            }
        }
    }
    Ok(Matrix::from_columns(f.field, f.total_dim(), &cols))
}

/// One point `w` of `V ×_H U`, presented through its representative pair
/// `(v, u)`: the ambient space `⊕_{h ∈ H} N(v·h) ⊗ M(h⁻¹·u)` and its quotient.
#[derive(Clone, Debug)]
pub struct TensorComponent {
    pair: (usize, usize),
    block_offsets: Vec<usize>,
    block_points: Vec<(usize, usize)>,
    ambient_dim: usize,
    quotient: QuotientSpace,
}

impl TensorComponent {
    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// `(v·h, h⁻¹·u)` for block `h`.
    pub fn block_points(&self, h: usize) -> (usize, usize) {
        self.block_points[h]
    }

    pub fn block_offset(&self, h: usize) -> usize {
        self.block_offsets[h]
    }

    /// `(h, index inside N(v·h) ⊗ M(h⁻¹·u))` of an ambient index.
    fn locate(&self, i: usize) -> (usize, usize) {
        let h = self.block_offsets.partition_point(|&o| o <= i) - 1;
        (h, i - self.block_offsets[h])
    }
}

/// `N ⊗_H M` as a functor on `V ×_H U`.
#[derive(Clone, Debug)]
pub struct TensorFunctor {
    composed: ComposedBiset,
    components: Vec<TensorComponent>,
    total: QuotientSpace,
    ambient_offsets: Vec<usize>,
    functor: FunctorOverBiset,
}

impl TensorFunctor {
    pub fn composed(&self) -> &ComposedBiset {
        &self.composed
    }

    pub fn components(&self) -> &[TensorComponent] {
        &self.components
    }

    pub fn functor(&self) -> &FunctorOverBiset {
        &self.functor
    }

    /// All components side by side; its quotient coordinates are those
    /// of `Σ` of the tensor functor.
    pub fn total_space(&self) -> &QuotientSpace {
        &self.total
    }
}

/// Builds `N ⊗_H M`. Each component is `⊕_h N(vh) ⊗ M(h⁻¹u)` modulo
/// `[n·y ⊗ y⁻¹·m]_{hy} − [n ⊗ m]_h` for all `y, h ∈ H`, and modulo
/// `[x]_h − [x]_{h'}` whenever blocks `h` and `h'` sit over the same pair
/// of points. Transports are `k·[n ⊗ m]_h·g = [k·n ⊗ m·g]_h`, re-expressed
/// in the target's representative pair.
pub fn tensor_functors(nf: &FunctorOverBiset, mf: &FunctorOverBiset) -> Result<TensorFunctor> {
    let (vb, ub) = (nf.biset(), mf.biset());
    if nf.field != mf.field {
        return Err(Error::FieldMismatch(nf.field, mf.field));
    }
    let composed = compose_bisets(vb, ub)?;
    let field = nf.field;
    let (vp, up) = (vb.product().clone(), ub.product().clone());
    let h = vp.right().clone();
    let mut components = Vec::with_capacity(composed.orbit_pairs().len());
    for &(v, u) in composed.orbit_pairs() {
        let block_points: Vec<(usize, usize)> = h
            .elements()
            .map(|y| (vb.right(v, y), ub.left(h.inv(y), u)))
            .collect();
        let block_dims: Vec<usize> = block_points
            .iter()
            .map(|&(a, b)| nf.dims[a] * mf.dims[b])
            .collect();
        let block_offsets = prefix_sums(&block_dims);
        let ambient_dim: usize = block_dims.iter().sum();
        let mut red = RowReducer::new(field, ambient_dim);
        for y in h.elements() {
            let right_y = vp.pair(0, h.inv(y));
            let left_y = up.pair(h.inv(y), 0);
            for hh in h.elements() {
                let (a, b) = block_points[hh];
                let hy = h.mul(hh, y);
                let (na, nb) = (
                    nf.transport(right_y, a).columns(),
                    mf.transport(left_y, b).columns(),
                );
                let dm_out = mf.dims[block_points[hy].1];
                for i in 0..nf.dims[a] {
                    for j in 0..mf.dims[b] {
                        let mut rel: SparseVec = kron(&na[i], &nb[j], dm_out)
                            .into_iter()
                            .map(|(k, x)| (block_offsets[hy] + k, x))
                            .collect();
                        rel.push((block_offsets[hh] + i * mf.dims[b] + j, -field.one()));
                        red.insert(&normalize(rel));
                    }
                }
            }
        }
        for h1 in h.elements() {
            for h2 in h1 + 1..h.order() {
                if block_points[h1] == block_points[h2] {
                    for i in 0..block_dims[h1] {
                        let rel = vec![
                            (block_offsets[h1] + i, field.one()),
                            (block_offsets[h2] + i, -field.one()),
                        ];
                        red.insert(&rel);
                    }
                }
            }
        }
        components.push(TensorComponent {
            pair: (v, u),
            block_offsets,
            block_points,
            ambient_dim,
            quotient: QuotientSpace::new(red),
        });
    }

    let ambient_offsets =
        prefix_sums(&components.iter().map(|c| c.ambient_dim).collect::<Vec<_>>());
    let mut total_red = RowReducer::new(field, components.iter().map(|c| c.ambient_dim).sum());
    for (c, &off) in components.iter().zip(&ambient_offsets) {
        for row in c.quotient.relation_rows() {
            let shifted: SparseVec = row.iter().map(|(i, x)| (off + i, x.clone())).collect();
            total_red.insert(&shifted);
        }
    }
    let total = QuotientSpace::new(total_red);

    let cb = composed.biset().clone();
    let kg = cb.product().clone();
    let g = kg.right().clone();
    let points = cb.points();
    let (h, g) = (&h, &g);
    let transport_basis = |x: usize, w: usize| -> (usize, Box<dyn Fn(usize) -> SparseVec + '_>) {
        let (k, gg) = kg.unpair(x);
        let comp = &components[w];
        let (v, u) = comp.pair;
        let (kv, ug) = (vb.left(k, v), ub.right(u, g.inv(gg)));
        let target = composed.point_of_pair(kv, ug);
        let h0 = composed.witness(kv, ug);
        let tcomp = &components[target];
        let kx = vp.pair(k, 0);
        let gx = up.pair(0, gg);
        let f = move |i: usize| -> SparseVec {
            let (hh, r) = comp.locate(i);
            let (a, b) = comp.block_points[hh];
            let dmb = mf.dims[b];
            let (ia, ib) = (r / dmb, r % dmb);
            let na = nf.transport(kx, a).column(ia);
            let mb = mf.transport(gx, b).column(ib);
            let th = h.mul(h0, hh);
            debug_assert_eq!(
                tcomp.block_points[th],
                (vb.left(k, a), ub.right(b, g.inv(gg)))
            );
            let dm_out = mf.dims[tcomp.block_points[th].1];
            kron(&na, &mb, dm_out)
                .into_iter()
                .map(|(k2, x2)| (tcomp.block_offsets[th] + k2, x2))
                .collect()
        };
        (target, Box::new(f))
    };

    for s in Subgroup::whole(kg.group()).generators() {
        for w in 0..points {
            let (target, f) = transport_basis(s, w);
            components[w]
                .quotient
                .check_descends(&components[target].quotient, &f)
                .map_err(|p| {
                    Error::WellDefinedness(format!(
                        "transport of {s} at point {w} does not respect relation {p}"
                    ))
                })?;
        }
    }
    let mut transports = Vec::with_capacity(kg.order() * points);
    for x in kg.group().elements() {
        for w in 0..points {
            let (target, f) = transport_basis(x, w);
            debug_assert_eq!(target, cb.act(x, w));
            transports.push(
                components[w]
                    .quotient
                    .induced_map(&components[target].quotient, f),
            );
        }
    }
    let dims = components.iter().map(TensorComponent::dim).collect();
    let functor = FunctorOverBiset::new_unchecked(cb, field, dims, transports)?;
    Ok(TensorFunctor {
        composed,
        components,
        total,
        ambient_offsets,
        functor,
    })
}

/// Point and local index of a basis vector of `Σ(F)` given block offsets.
fn split(offsets: &[usize], i: usize) -> (usize, usize) {
    let p = offsets.partition_point(|&o| o <= i) - 1;
    (p, i - offsets[p])
}

/// `Σ(N ⊗_H M) → Σ(N) ⊗_{RH} Σ(M)`, `[n ⊗ m]_h ↦ n ⊗ m` with `n ∈ N(vh)`,
/// `m ∈ M(h⁻¹u)`. Checks that relations go to zero.
pub fn alpha(
    tf: &TensorFunctor,
    nf: &FunctorOverBiset,
    mf: &FunctorOverBiset,
    lhs: &TensorOverH,
) -> Result<Matrix> {
    let (no, mo) = (nf.offsets(), mf.offsets());
    let qdim = mf.total_dim();
    let f = |i: usize| -> SparseVec {
        let (w, r) = split(&tf.ambient_offsets, i);
        let comp = &tf.components[w];
        let (hh, r) = comp.locate(r);
        let (a, b) = comp.block_points[hh];
        let dmb = mf.dims[b];
        vec![((no[a] + r / dmb) * qdim + mo[b] + r % dmb, nf.field.one())]
    };
    let target = lhs.quotient.space();
    tf.total
        .check_descends(target, f)
        .map_err(|p| Error::WellDefinedness(format!("alpha does not respect relation {p}")))?;
    Ok(tf.total.induced_map(target, f))
}

/// `Σ(N) ⊗_{RH} Σ(M) → Σ(N ⊗_H M)`, `n ⊗ m ↦ [n ⊗ m]_h` for the minimum
/// `h` with `(v, u) = (v_r·h, h⁻¹·u_r)`. Checks that relations go to zero.
pub fn beta(
    tf: &TensorFunctor,
    nf: &FunctorOverBiset,
    mf: &FunctorOverBiset,
    lhs: &TensorOverH,
) -> Result<Matrix> {
    let (no, mo) = (nf.offsets(), mf.offsets());
    let qdim = mf.total_dim();
    let f = |i: usize| -> SparseVec {
        let (v, a) = split(&no, i / qdim);
        let (u, b) = split(&mo, i % qdim);
        let w = tf.composed.point_of_pair(v, u);
        let hh = tf.composed.witness(v, u);
        let comp = &tf.components[w];
        debug_assert_eq!(comp.block_points[hh], (v, u));
        let idx = tf.ambient_offsets[w] + comp.block_offsets[hh] + a * mf.dims[u] + b;
        vec![(idx, nf.field.one())]
    };
    let source = lhs.quotient.space();
    source
        .check_descends(&tf.total, f)
        .map_err(|p| Error::WellDefinedness(format!("beta does not respect relation {p}")))?;
    Ok(source.induced_map(&tf.total, f))
}

/// `T·A(s) = B(s)·T` for every generator `s` of the (common) domain.
pub fn is_equivariant(t: &Matrix, a: &Rep, b: &Rep) -> Result<bool> {
    if a.domain() != b.domain() {
        return Err(Error::GroupMismatch(
            "equivariance between different groups".into(),
        ));
    }
    for s in a.domain().generators() {
        if t.mul(a.image(s))? != b.image(s).mul(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The block map `Σ(M̃) → Ind_X^{H×G} M`: block `c·X` goes to the induced
/// block of the same coset. Both sides list cosets by minimum
/// representative, so this is a permutation of blocks.
pub fn sigma_to_induced(u: &TransitiveBiset, m: &Rep) -> Matrix {
    let grp = u.biset().product().group().clone();
    let (reps, coset_of) = crate::rep::cosets_within(&Subgroup::whole(&grp), m.domain());
    let d = m.dim();
    let n = reps.len() * d;
    let mut perm = vec![0; n];
    for (p, &c) in u.coset_reps().iter().enumerate() {
        let target = coset_of[c];
        // c and reps[target] span the same coset, and both are minimal
        debug_assert_eq!(reps[target], c);
        for b in 0..d {
            perm[p * d + b] = target * d + b;
        }
    }
    Matrix::permutation(m.field(), &perm)
}

/// `Σ(N ⊗_H M)` together with the objects it is compared against.
#[derive(Clone, Debug)]
pub struct LemmaData {
    pub tensor: TensorFunctor,
    pub sigma_tensor: BimoduleRep,
    pub sigma_n: BimoduleRep,
    pub sigma_m: BimoduleRep,
    pub sigma_product: TensorOverH,
    pub alpha: Matrix,
    pub beta: Matrix,
}

/// Builds both sides of the lemma and the maps between them.
pub fn lemma_data(nf: &FunctorOverBiset, mf: &FunctorOverBiset) -> Result<LemmaData> {
    let tensor = tensor_functors(nf, mf)?;
    let sigma_tensor = sigma(tensor.functor())?;
    let sigma_n = sigma(nf)?;
    let sigma_m = sigma(mf)?;
    let sigma_product = crate::rep::tensor_over_h(&sigma_n, &sigma_m)?;
    let alpha = alpha(&tensor, nf, mf, &sigma_product)?;
    let beta = beta(&tensor, nf, mf, &sigma_product)?;
    Ok(LemmaData {
        tensor,
        sigma_tensor,
        sigma_n,
        sigma_m,
        sigma_product,
        alpha,
        beta,
    })
}

impl LemmaData {
    pub fn alpha_beta_identity(&self) -> Result<bool> {
        Ok(self.alpha.mul(&self.beta)?.is_identity())
    }

    pub fn beta_alpha_identity(&self) -> Result<bool> {
        Ok(self.beta.mul(&self.alpha)?.is_identity())
    }

    pub fn alpha_equivariant(&self) -> Result<bool> {
        is_equivariant(
            &self.alpha,
            self.sigma_tensor.rep(),
            self.sigma_product.bimodule.rep(),
        )
    }
}
