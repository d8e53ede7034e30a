//! Matrix representations of finite groups, bimodules read through
//! `h·m·g⁻¹ = (h,g)·m`, induction, amalgamated tensor products, characters
//! and isomorphism tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{all_subgroups, Group, ProductGroup, Subgroup};
use crate::linalg::sparse::{kron, normalize};
use crate::linalg::{Field, Matrix, QuotientSpace, RowReducer, Scalar, SparseVec};

/// A representation of a subgroup `D` of some ambient group. Images are
/// stored for every element of `D`, in the order of `D.elements()`.
#[derive(Clone, Debug)]
pub struct Rep {
    domain: Subgroup,
    field: Field,
    dim: usize,
    images: Arc<Vec<Matrix>>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.field == other.field && self.images == other.images
    }
}

impl Rep {
    pub fn new(domain: Subgroup, field: Field, dim: usize, images: Vec<Matrix>) -> Result<Self> {
        let r = Self::from_images_unchecked(domain, field, dim, images)?;
        r.validate()?;
        Ok(r)
    }

    /// Shape and field checks only; the homomorphism property is the
    /// caller's responsibility (see [`Rep::validate`]).
    pub fn from_images_unchecked(
        domain: Subgroup,
        field: Field,
        dim: usize,
        images: Vec<Matrix>,
    ) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::NotARepresentation(format!(
                "{} images for a group of order {}",
                images.len(),
                domain.order()
            )));
        }
        for m in &images {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field(), field));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!(
                    "image is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep {
            domain,
            field,
            dim,
            images: Arc::new(images),
        })
    }

    /// Builds all images from generator images by walking the Cayley graph.
    /// Fails if two paths to the same element disagree, which makes this an
    /// exhaustive homomorphism check.
    pub fn from_generators(
        domain: Subgroup,
        field: Field,
        dim: usize,
        gens: &[(usize, Matrix)],
    ) -> Result<Self> {
        let g = domain.ambient().clone();
        let mut images: Vec<Option<Matrix>> = vec![None; domain.order()];
        images[0] = Some(Matrix::identity(field, dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut visited = 1;
        while let Some(x) = queue.pop_front() {
            let xi = domain.elements()[x];
            let mx = images[x].clone().unwrap();
            for (s, ms) in gens {
                let y = g.mul(*s, xi);
                let ly = domain.local_index(y).ok_or_else(|| {
                    Error::NotARepresentation(format!("generator {s} outside the domain"))
                })?;
                let my = ms.mul(&mx)?;
                match &images[ly] {
                    Some(prev) if *prev != my => {
                        return Err(Error::NotARepresentation(format!(
                            "generator images violate a relation at element {y}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        images[ly] = Some(my);
                        visited += 1;
                        queue.push_back(ly);
                    }
                }
            }
        }
        if visited != domain.order() {
            return Err(Error::NotARepresentation(
                "generators do not generate the domain".into(),
            ));
        }
        Self::from_images_unchecked(
            domain,
            field,
            dim,
            images.into_iter().map(Option::unwrap).collect(),
        )
    }

    /// `ρ(1) = 1` and `ρ(s·x) = ρ(s)·ρ(x)` for every generator `s` and every
    /// element `x`; together these imply the full homomorphism property.
    pub fn validate(&self) -> Result<()> {
        if !self.images[0].is_identity() {
            return Err(Error::NotARepresentation(
                "identity does not act trivially".into(),
            ));
        }
        let g = self.domain.ambient();
        for s in self.domain.generators() {
            let ms = self.image(s);
            for (lx, &x) in self.domain.elements().iter().enumerate() {
                if *self.image(g.mul(s, x)) != ms.mul(&self.images[lx])? {
                    return Err(Error::NotARepresentation(format!(
                        "image({}·{}) is not image({})·image({})",
                        g.element_name(s),
                        g.element_name(x),
                        g.element_name(s),
                        g.element_name(x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn ambient(&self) -> &Arc<Group> {
        self.domain.ambient()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Image of an ambient element id; panics if it lies outside the domain.
    pub fn image(&self, x: usize) -> &Matrix {
        let i = self
            .domain
            .local_index(x)
            .unwrap_or_else(|| panic!("element {x} is outside the domain"));
        &self.images[i]
    }

    pub fn try_image(&self, x: usize) -> Option<&Matrix> {
        self.domain.local_index(x).map(|i| &self.images[i])
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// `P⁻¹ ρ(x) P` for an invertible `P`.
    pub fn twist(&self, p: &Matrix) -> Result<Rep> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Shape("basis change is not invertible".into()))?;
        let images = self
            .images
            .iter()
            .map(|m| pinv.mul(m)?.mul(p))
            .collect::<Result<Vec<_>>>()?;
        Rep::from_images_unchecked(self.domain.clone(), self.field, self.dim, images)
    }

    /// Test hook: replace the image of one element without validation.
    #[doc(hidden)]
    pub fn with_image_replaced(&self, x: usize, m: Matrix) -> Rep {
        let mut images = (*self.images).clone();
        images[self.domain.local_index(x).expect("element in domain")] = m;
        Rep {
            images: Arc::new(images),
            ..self.clone()
        }
    }
}

pub fn direct_sum(parts: &[&Rep]) -> Result<Rep> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Shape("direct sum of no representations".into()))?;
    for p in parts {
        if p.domain != first.domain {
            return Err(Error::GroupMismatch(
                "direct sum over different groups".into(),
            ));
        }
        if p.field != first.field {
            return Err(Error::FieldMismatch(p.field, first.field));
        }
    }
    let dim = parts.iter().map(|p| p.dim).sum();
    let images = (0..first.domain.order())
        .map(|i| {
            Matrix::direct_sum(
                first.field,
                &parts.iter().map(|p| &p.images[i]).collect::<Vec<_>>(),
            )
        })
        .collect();
    Rep::from_images_unchecked(first.domain.clone(), first.field, dim, images)
}

/// Left cosets `xA` inside `domain`: minimum-id representatives in
/// ascending order, and the coset index of every ambient element of `domain`.
pub(crate) fn cosets_within(domain: &Subgroup, a: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let g = domain.ambient();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &x in domain.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &y in a.elements() {
            coset_of[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    (reps, coset_of)
}

pub fn trivial_rep(domain: &Subgroup, field: Field) -> Rep {
    let images = vec![Matrix::identity(field, 1); domain.order()];
    Rep::from_images_unchecked(domain.clone(), field, 1, images).expect("well-formed")
}

/// Left translation on the basis `domain.elements()`.
pub fn regular_rep(domain: &Subgroup, field: Field) -> Rep {
    let g = domain.ambient();
    let images = domain
        .elements()
        .iter()
        .map(|&x| {
            let perm: Vec<usize> = domain
                .elements()
                .iter()
                .map(|&y| domain.local_index(g.mul(x, y)).unwrap())
                .collect();
            Matrix::permutation(field, &perm)
        })
        .collect();
    Rep::from_images_unchecked(domain.clone(), field, domain.order(), images).expect("well-formed")
}

/// Permutation module on the left cosets of `a` in `domain`.
pub fn perm_rep(domain: &Subgroup, a: &Subgroup, field: Field) -> Result<Rep> {
    if !a.is_subgroup_of(domain) || a.ambient() != domain.ambient() {
        return Err(Error::NotSubgroup(
            "perm_rep: A is not contained in the domain".into(),
        ));
    }
    let g = domain.ambient();
    let (reps, coset_of) = cosets_within(domain, a);
    let images = domain
        .elements()
        .iter()
        .map(|&x| {
            let perm: Vec<usize> = reps.iter().map(|&c| coset_of[g.mul(x, c)]).collect();
            Matrix::permutation(field, &perm)
        })
        .collect();
    Rep::from_images_unchecked(domain.clone(), field, reps.len(), images)
}

/// One-dimensional: `+1` on `a`, `-1` off it. `a` must have index 2.
pub fn sign_rep(domain: &Subgroup, a: &Subgroup, field: Field) -> Result<Rep> {
    if !a.is_subgroup_of(domain) || domain.order() != 2 * a.order() {
        return Err(Error::NotSubgroup(
            "sign_rep needs a subgroup of index 2".into(),
        ));
    }
    let images = domain
        .elements()
        .iter()
        .map(|&x| Matrix::from_i64(field, &[&[if a.contains(x) { 1 } else { -1 }]]))
        .collect();
    Rep::from_images_unchecked(domain.clone(), field, 1, images)
}

/// Seeded direct sum of catalog pieces with total dimension `dim`,
/// conjugated by a random invertible matrix.
pub fn random_rep(domain: &Subgroup, dim: usize, seed: u64, field: Field) -> Result<Rep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs: Vec<Subgroup> = all_subgroups(domain.ambient())?
        .into_iter()
        .filter(|s| s.is_subgroup_of(domain) && s.order() > 1 && s.order() < domain.order())
        .collect();
    let mut parts = Vec::new();
    let mut left = dim;
    while left > 0 {
        let mut options = vec![trivial_rep(domain, field)];
        if domain.order() <= left {
            options.push(regular_rep(domain, field));
        }
        for s in &subs {
            if domain.order() / s.order() <= left {
                options.push(perm_rep(domain, s, field)?);
            }
        }
        let pick = options.swap_remove(rng.gen_range(0..options.len()));
        left -= pick.dim();
        parts.push(pick);
    }
    if parts.is_empty() {
        let images = vec![Matrix::zeros(field, 0, 0); domain.order()];
        return Rep::from_images_unchecked(domain.clone(), field, 0, images);
    }
    let sum = direct_sum(&parts.iter().collect::<Vec<_>>())?;
    loop {
        let p = Matrix::from_fn(field, dim, dim, |_, _| {
            field.from_i64(rng.gen_range(-2..=2))
        });
        if p.is_invertible()? {
            return sum.twist(&p);
        }
    }
}

/// Same matrices, indexed by the subgroup `a` of the domain.
pub fn restrict(m: &Rep, a: &Subgroup) -> Result<Rep> {
    if !a.is_subgroup_of(&m.domain) || a.ambient() != m.ambient() {
        return Err(Error::NotSubgroup(
            "restrict: not a subgroup of the domain".into(),
        ));
    }
    let images = a.elements().iter().map(|&x| m.image(x).clone()).collect();
    Rep::from_images_unchecked(a.clone(), m.field, m.dim, images)
}

/// `Ind_X^Γ M` with basis `(s, b)` at index `s·dim M + b`, `s` running over
/// the minimum-id left coset representatives of `X` in `Γ`, and
/// `γ·(s ⊗ m) = s' ⊗ x·m` where `γs = s'x`.
pub fn induce(target: &Subgroup, m: &Rep) -> Result<Rep> {
    let x = m.domain();
    if x.ambient() != target.ambient() || !x.is_subgroup_of(target) {
        return Err(Error::NotSubgroup(
            "induce: X is not a subgroup of the target".into(),
        ));
    }
    let g = target.ambient();
    let (reps, coset_of) = cosets_within(target, x);
    let d = m.dim;
    let n = reps.len() * d;
    let images = target
        .elements()
        .iter()
        .map(|&gamma| {
            let mut out = Matrix::zeros(m.field, n, n);
            for (i, &s) in reps.iter().enumerate() {
                let gs = g.mul(gamma, s);
                let j = coset_of[gs];
                let xx = g.mul(g.inv(reps[j]), gs);
                let mx = m.image(xx);
                for b in 0..d {
                    for a in 0..d {
                        let v = mx.get(a, b);
                        if !v.is_zero() {
                            out.set(j * d + a, i * d + b, v.clone());
                        }
                    }
                }
            }
            out
        })
        .collect();
    Rep::from_images_unchecked(target.clone(), m.field, n, images)
}

/// A representation of a subgroup of `H × G`, read as a bimodule.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleRep {
    product: Arc<ProductGroup>,
    rep: Rep,
}

impl BimoduleRep {
    pub fn new(product: Arc<ProductGroup>, rep: Rep) -> Result<Self> {
        if **rep.ambient() != **product.group() {
            return Err(Error::GroupMismatch(
                "representation is not over the product group".into(),
            ));
        }
        Ok(BimoduleRep { product, rep })
    }

    pub fn product(&self) -> &Arc<ProductGroup> {
        &self.product
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn into_rep(self) -> Rep {
        self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn field(&self) -> Field {
        self.rep.field
    }

    /// `(h, g)·m`, which is `h·m·g⁻¹`.
    pub fn act(&self, h: usize, g: usize) -> &Matrix {
        self.rep.image(self.product.pair(h, g))
    }

    /// `m ↦ h·m`, the image of `(h, 1)`.
    pub fn left(&self, h: usize) -> &Matrix {
        self.act(h, 0)
    }

    /// `m ↦ m·g`, the image of `(1, g⁻¹)`.
    pub fn right(&self, g: usize) -> &Matrix {
        self.act(0, self.product.right().inv(g))
    }
}

/// Quotient of `N ⊗ M` (index `a·dim M + b`) by `(n·l)⊗m − n⊗(l·m)`.
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    space: QuotientSpace,
    n_dim: usize,
    m_dim: usize,
}

impl TensorQuotient {
    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    /// Quotient matrix of `a ⊗ b` into `target`, after checking that the
    /// relations of `self` land in those of `target`.
    pub fn map_to(&self, target: &TensorQuotient, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        let f = tensor_basis_map(a, b);
        self.space.check_descends(&target.space, &f).map_err(|p| {
            Error::WellDefinedness(format!("tensor map does not descend (relation pivot {p})"))
        })?;
        Ok(self.space.induced_map(&target.space, &f))
    }

    /// As [`TensorQuotient::map_to`] without the descent check.
    pub fn map_to_unchecked(&self, target: &TensorQuotient, a: &Matrix, b: &Matrix) -> Matrix {
        self.space
            .induced_map(&target.space, tensor_basis_map(a, b))
    }
}

fn tensor_basis_map(a: &Matrix, b: &Matrix) -> impl Fn(usize) -> SparseVec {
    let (ac, bc) = (a.columns(), b.columns());
    let (bd_in, bd_out) = (b.cols(), b.rows());
    move |i| kron(&ac[i / bd_in], &bc[i % bd_in], bd_out)
}

/// `N ⊗_{RL} M`: `right(l)` is the matrix of `n ↦ n·l`, `left(l)` that of
/// `m ↦ l·m`. Every `l` in `l_elems` contributes relations.
pub fn tensor_over_subgroup(
    field: Field,
    n_dim: usize,
    m_dim: usize,
    l_elems: &[usize],
    right: impl Fn(usize) -> Matrix,
    left: impl Fn(usize) -> Matrix,
) -> Result<TensorQuotient> {
    let mut red = RowReducer::new(field, n_dim * m_dim);
    for &l in l_elems {
        let (r, lm) = (right(l), left(l));
        if r.field() != field || lm.field() != field {
            return Err(Error::FieldMismatch(r.field(), field));
        }
        let (rc, lc) = (r.columns(), lm.columns());
        for a in 0..n_dim {
            for b in 0..m_dim {
                let mut rel = kron(&rc[a], &[(b, field.one())].to_vec(), m_dim);
                for (j, x) in &lc[b] {
                    rel.push((a * m_dim + j, -x));
                }
                red.insert(&normalize(rel));
            }
        }
    }
    Ok(TensorQuotient {
        space: QuotientSpace::new(red),
        n_dim,
        m_dim,
    })
}

/// `P ⊗_{RH} Q` as a `(K,G)`-bimodule, together with its quotient data.
#[derive(Clone, Debug)]
pub struct TensorOverH {
    pub quotient: TensorQuotient,
    pub bimodule: BimoduleRep,
}

/// `P ⊗_{RH} Q` for a `(K,H)`-bimodule `P` and an `(H,G)`-bimodule `Q`, both
/// defined on the whole product group.
pub fn tensor_over_h(p: &BimoduleRep, q: &BimoduleRep) -> Result<TensorOverH> {
    let (pp, qp) = (p.product(), q.product());
    if pp.right() != qp.left() {
        return Err(Error::GroupMismatch(format!(
            "tensor over H: middle groups {} and {} differ",
            pp.right().name(),
            qp.left().name()
        )));
    }
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(p.field(), q.field()));
    }
    let h = pp.right().clone();
    let elems: Vec<usize> = h.elements().collect();
    let quotient = tensor_over_subgroup(
        p.field(),
        p.dim(),
        q.dim(),
        &elems,
        |y| p.right(y).clone(),
        |y| q.left(y).clone(),
    )?;
    let kg = Arc::new(crate::group::direct_product(pp.left(), qp.right())?);
    let bimodule = outer_action(&kg, &quotient, |k| p.left(k), |g| q.right(g))?;
    Ok(TensorOverH { quotient, bimodule })
}

/// Installs `(k,g)·(x⊗y) = k·x ⊗ y·g⁻¹` on a tensor quotient, checking
/// descent on generators of `K × G`.
fn outer_action<'a>(
    kg: &Arc<ProductGroup>,
    tq: &TensorQuotient,
    left: impl Fn(usize) -> &'a Matrix,
    right: impl Fn(usize) -> &'a Matrix,
) -> Result<BimoduleRep> {
    let whole = Subgroup::whole(kg.group());
    let g = kg.right();
    let mat = |x: usize| {
        let (a, b) = kg.unpair(x);
        (left(a), right(g.inv(b)))
    };
    for s in whole.generators() {
        let (a, b) = mat(s);
        tq.map_to(tq, a, b)?;
    }
    let images = kg
        .group()
        .elements()
        .map(|x| {
            let (a, b) = mat(x);
            tq.map_to_unchecked(tq, a, b)
        })
        .collect();
    let field = tq.space.field();
    let rep = Rep::from_images_unchecked(whole, field, tq.dim(), images)?;
    BimoduleRep::new(kg.clone(), rep)
}

/// Trace per conjugacy class of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    #[serde(skip)]
    domain: Subgroup,
    classes: Vec<String>,
    values: Vec<Scalar>,
}

impl Character {
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Name of the minimum element of each class.
    pub fn class_names(&self) -> &[String] {
        &self.classes
    }
}

/// Conjugacy classes of `domain` (conjugating inside `domain`), ordered by
/// minimum element.
pub fn classes_within(domain: &Subgroup) -> Vec<Vec<usize>> {
    let g = domain.ambient();
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for &x in domain.elements() {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = domain.elements().iter().map(|&d| g.conj(d, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        out.push(class);
    }
    out
}

pub fn character(m: &Rep) -> Character {
    let classes = classes_within(&m.domain);
    let g = m.ambient();
    Character {
        domain: m.domain.clone(),
        classes: classes
            .iter()
            .map(|c| g.element_name(c[0]).to_string())
            .collect(),
        values: classes.iter().map(|c| m.image(c[0]).trace()).collect(),
    }
}

/// Character equality. Decisive over `Q`; over `F_p` the answer is
/// advisory only.
pub fn iso_by_character(m: &Rep, n: &Rep) -> Result<bool> {
    if m.domain != n.domain {
        return Err(Error::GroupMismatch(
            "characters of different groups".into(),
        ));
    }
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    Ok(m.dim == n.dim && character(m) == character(n))
}

/// Outcome of [`find_intertwiner_iso`].
#[derive(Clone, Debug, PartialEq)]
pub enum IsoSearch {
    /// `T` with `T·M(g) = N(g)·T` for all `g`, verified invertible.
    Found(Matrix),
    NotIsomorphic,
    Undecided,
}

impl IsoSearch {
    pub fn found(&self) -> Option<&Matrix> {
        match self {
            IsoSearch::Found(t) => Some(t),
            _ => None,
        }
    }
}

const ISO_ATTEMPTS: usize = 32;
const GREEDY_PASSES: usize = 32;
const ISO_EXHAUSTIVE_LIMIT: u64 = 1024;
const CERT_PRIME: u64 = 2_147_483_647;

/// Basis of `{T : T·M(g) = N(g)·T for every generator g}`, `T` stored as a
/// sparse vector with `T[i][k]` at `i·dim M + k`.
pub fn intertwiner_space(m: &Rep, n: &Rep) -> Result<Vec<SparseVec>> {
    if m.domain != n.domain {
        return Err(Error::GroupMismatch(
            "intertwiners between different groups".into(),
        ));
    }
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    let (dm, dn) = (m.dim, n.dim);
    let field = m.field;
    let mut red = RowReducer::new(field, dn * dm);
    for s in m.domain.generators() {
        let a_cols = m.image(s).columns();
        let b = n.image(s);
        let b_rows: Vec<SparseVec> = (0..dn)
            .map(|i| {
                (0..dn)
                    .filter(|&k| !b.get(i, k).is_zero())
                    .map(|k| (k, b.get(i, k).clone()))
                    .collect()
            })
            .collect();
        for i in 0..dn {
            for j in 0..dm {
                let mut eq: SparseVec = a_cols[j]
                    .iter()
                    .map(|(k, x)| (i * dm + k, x.clone()))
                    .collect();
                for (k, y) in &b_rows[i] {
                    eq.push((k * dm + j, -y));
                }
                red.insert(&normalize(eq));
            }
        }
    }
    Ok(red.kernel_basis())
}

fn invertible(t: &Matrix) -> bool {
    if t.field() == Field::Rational && t.rank_mod_prime(CERT_PRIME) == Some(t.rows()) {
        return true;
    }
    t.rank() == t.rows()
}

fn intertwines(t: &Matrix, m: &Rep, n: &Rep) -> Result<bool> {
    for s in m.domain.generators() {
        if t.mul(m.image(s))? != n.image(s).mul(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches the intertwiner space for an invertible element using seeded
/// random combinations, then greedy rank-raising passes. Small spaces over `F_p` are enumerated outright, so
/// a negative answer there is certain.
pub fn find_intertwiner_iso(m: &Rep, n: &Rep, seed: u64) -> Result<IsoSearch> {
    if m.domain != n.domain {
        return Err(Error::GroupMismatch(
            "intertwiners between different groups".into(),
        ));
    }
    if m.dim != n.dim {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let d = m.dim;
    let field = m.field;
    if d == 0 {
        return Ok(IsoSearch::Found(Matrix::zeros(field, 0, 0)));
    }
    if field == Field::Rational && character(m) != character(n) {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let basis = intertwiner_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let combine = |coeffs: &[Scalar]| {
        let mut t = Matrix::zeros(field, d, d);
        for (c, v) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (idx, x) in v {
                let mut y = t.get(idx / d, idx % d).clone();
                y.add_mul(c, x);
                t.set(idx / d, idx % d, y);
            }
        }
        t
    };
    let accept = |t: Matrix| -> Result<Option<Matrix>> {
        Ok((invertible(&t) && intertwines(&t, m, n)?).then_some(t))
    };
    let k = basis.len() as u32;
    if let Field::Prime(p) = field {
        let p = p as u64;
        if let Some(total) = p.checked_pow(k).filter(|&t| t <= ISO_EXHAUSTIVE_LIMIT) {
            for code in 1..total {
                let mut c = code;
                let coeffs: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let v = field.from_i64((c % p) as i64);
                        c /= p;
                        v
                    })
                    .collect();
                if let Some(t) = accept(combine(&coeffs))? {
                    return Ok(IsoSearch::Found(t));
                }
            }
            return Ok(IsoSearch::NotIsomorphic);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_ATTEMPTS {
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| match field {
                Field::Rational => field.from_i64(rng.gen_range(-1000..=1000)),
                Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
            })
            .collect();
        if let Some(t) = accept(combine(&coeffs))? {
            return Ok(IsoSearch::Found(t));
        }
    }
    // Over small fields a random element of a split endomorphism algebra is
    // rarely invertible. Build one up instead, keeping `c·B_i` only when it
    // raises the rank.
    let single = |i: usize| {
        let mut coeffs = vec![field.zero(); k as usize];
        coeffs[i] = field.one();
        combine(&coeffs)
    };
    for pass in 0..GREEDY_PASSES {
        let mut order: Vec<usize> = (0..k as usize).collect();
        if pass > 0 {
            order.shuffle(&mut rng);
        }
        let mut t = Matrix::zeros(field, d, d);
        let mut rank = 0;
        for i in order {
            let b = single(i);
            let scalars: Vec<Scalar> = match field {
                Field::Prime(p) if p <= 7 => (1..p as i64).map(|c| field.from_i64(c)).collect(),
                Field::Prime(p) => vec![field.one(), field.from_i64(rng.gen_range(2..p as i64))],
                Field::Rational => vec![field.one(), field.from_i64(rng.gen_range(2..=1000))],
            };
            for c in scalars {
                let cand = t.add(&b.scale(&c))?;
                let r = cand.rank();
                if r > rank {
                    (t, rank) = (cand, r);
                }
            }
            if rank == d {
                break;
            }
        }
        if rank == d && intertwines(&t, m, n)? {
            return Ok(IsoSearch::Found(t));
        }
    }
    Ok(IsoSearch::Undecided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, direct_product};
    use crate::product::ProductSubgroup;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};

    const Q: Field = Field::Rational;

    fn whole(s: &str) -> Subgroup {
        Subgroup::whole(&Arc::new(build_group(s).unwrap()))
    }

    fn ints(c: &Character) -> Vec<String> {
        c.values().iter().map(|x| x.to_string()).collect()
    }

    /// `(1/|X|) Σ_{g : g⁻¹γg ∈ X} χ(g⁻¹γg)`
    fn induced_character_oracle(target: &Subgroup, m: &Rep, gamma: usize) -> Scalar {
        let g = target.ambient();
        let mut acc = Q.zero();
        for &x in target.elements() {
            let c = g.mul(g.inv(x), g.mul(gamma, x));
            if m.domain().contains(c) {
                acc = &acc + &m.image(c).trace();
            }
        }
        &acc * &Q.from_i64(m.domain().order() as i64).inv().unwrap()
    }

    #[test]
    fn catalog_examples() {
        let c2 = whole("C2");
        assert_eq!(ints(&character(&regular_rep(&c2, Q))), ["2", "0"]);
        let s3 = whole("S3");
        assert_eq!(ints(&character(&regular_rep(&s3, Q))), ["6", "0", "0"]);
        let c3 = Subgroup::generated(s3.ambient(), &[2]).unwrap();
        assert_eq!(perm_rep(&s3, &c3, Q).unwrap().dim(), 2);
        assert!(iso_by_character(&perm_rep(&s3, &s3, Q).unwrap(), &trivial_rep(&s3, Q)).unwrap());
        let one = Subgroup::trivial(c2.ambient());
        assert!(!iso_by_character(&trivial_rep(&c2, Q), &sign_rep(&c2, &one, Q).unwrap()).unwrap());
        for r in [regular_rep(&s3, Q), perm_rep(&s3, &c3, Q).unwrap()] {
            r.validate().unwrap();
        }
    }

    #[test]
    fn conjugate_subgroups_give_equal_characters() {
        let s3 = whole("S3");
        let g = s3.ambient();
        let a = Subgroup::generated(g, &[1]).unwrap();
        let b = crate::group::conjugate_subgroup(g, &a, 2).unwrap();
        assert_ne!(a, b);
        assert_eq!(
            character(&perm_rep(&s3, &a, Q).unwrap()),
            character(&perm_rep(&s3, &b, Q).unwrap())
        );
    }

    #[test]
    fn random_reps_are_deterministic_and_keep_characters() {
        let s3 = whole("S3");
        let a = random_rep(&s3, 5, 7, Q).unwrap();
        let b = random_rep(&s3, 5, 7, Q).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 5);
        a.validate().unwrap();
        let r = regular_rep(&s3, Q);
        let p = Matrix::from_fn(Q, 6, 6, |i, j| {
            Q.from_i64(if i <= j { 1 + (i * j % 3) as i64 } else { 0 })
        });
        assert_eq!(character(&r.twist(&p).unwrap()), character(&r));
    }

    #[test]
    fn restriction() {
        let s3 = whole("S3");
        let t = trivial_rep(&s3, Q);
        let c2 = Subgroup::generated(s3.ambient(), &[1]).unwrap();
        assert_eq!(restrict(&t, &c2).unwrap(), trivial_rep(&c2, Q));
        assert_eq!(restrict(&t, &s3).unwrap(), t);
        let r = restrict(&regular_rep(&s3, Q), &c2).unwrap();
        let three = direct_sum(&[&regular_rep(&c2, Q); 3]).unwrap();
        assert_eq!(character(&r), character(&three));
    }

    #[test]
    fn induction_matches_the_induced_character_formula() {
        let s3 = whole("S3");
        let g = s3.ambient();
        for sub in all_subgroups(g).unwrap() {
            for m in [trivial_rep(&sub, Q), regular_rep(&sub, Q)] {
                let ind = induce(&s3, &m).unwrap();
                ind.validate().unwrap();
                assert_eq!(ind.dim(), s3.order() / sub.order() * m.dim());
                for x in g.elements() {
                    assert_eq!(ind.image(x).trace(), induced_character_oracle(&s3, &m, x));
                }
            }
        }
        let t = trivial_rep(&s3, Q);
        assert_eq!(induce(&s3, &t).unwrap(), t);
    }

    #[test]
    fn induction_is_additive() {
        let s3 = whole("S3");
        let c2 = Subgroup::generated(s3.ambient(), &[1]).unwrap();
        let (a, b) = (trivial_rep(&c2, Q), regular_rep(&c2, Q));
        let lhs = induce(&s3, &direct_sum(&[&a, &b]).unwrap()).unwrap();
        let rhs = direct_sum(&[&induce(&s3, &a).unwrap(), &induce(&s3, &b).unwrap()]).unwrap();
        assert_eq!(character(&lhs), character(&rhs));
    }

    #[test]
    fn induce_from_diagonal_is_the_regular_bimodule() {
        let c2 = Arc::new(build_group("C2").unwrap());
        let cc = Arc::new(direct_product(&c2, &c2).unwrap());
        let d = ProductSubgroup::diagonal(cc.clone()).unwrap();
        let ind = induce(&Subgroup::whole(cc.group()), &trivial_rep(d.subgroup(), Q)).unwrap();
        assert_eq!(ind.dim(), 2);
        let bim = BimoduleRep::new(cc.clone(), ind).unwrap();
        // R[C2] with h·a·g⁻¹: left and right multiplication both swap
        let reg = regular_rep(&Subgroup::whole(&c2), Q);
        assert_eq!(bim.left(1), reg.image(1));
        assert_eq!(bim.right(1), reg.image(1));
        assert_eq!(ints(&character(bim.rep())), ["2", "0", "0", "2"]);
    }

    #[test]
    fn convention_round_trip() {
        let s3 = Arc::new(build_group("S3").unwrap());
        let ss = Arc::new(direct_product(&s3, &s3).unwrap());
        let reg =
            BimoduleRep::new(ss.clone(), regular_rep(&Subgroup::whole(ss.group()), Q)).unwrap();
        for h in s3.elements() {
            for g in s3.elements() {
                let via = reg.left(h).mul(reg.right(s3.inv(g))).unwrap();
                assert_eq!(&via, reg.act(h, g));
            }
        }
    }

    #[test]
    fn tensor_over_subgroup_examples() {
        let c2 = whole("C2");
        let t = trivial_rep(&c2, Q);
        let one = Subgroup::trivial(c2.ambient());
        let s = sign_rep(&c2, &one, Q).unwrap();
        let reg = regular_rep(&c2, Q);
        let plain = tensor_over_subgroup(
            Q,
            2,
            2,
            &[0],
            |_| Matrix::identity(Q, 2),
            |_| Matrix::identity(Q, 2),
        )
        .unwrap();
        assert_eq!(plain.dim(), 4);
        // n·l = n, l·m = -m forces n⊗m = -n⊗m
        let zero = tensor_over_subgroup(
            Q,
            1,
            1,
            &[0, 1],
            |l| t.image(l).clone(),
            |l| s.image(l).clone(),
        )
        .unwrap();
        assert_eq!(zero.dim(), 0);
        let rr = tensor_over_subgroup(
            Q,
            2,
            2,
            &[0, 1],
            |l| reg.image(l).clone(),
            |l| reg.image(l).clone(),
        )
        .unwrap();
        assert_eq!(rr.dim(), 2);
    }

    #[test]
    fn tensor_over_h_examples() {
        let c2 = Arc::new(build_group("C2").unwrap());
        let cc = Arc::new(direct_product(&c2, &c2).unwrap());
        let d = ProductSubgroup::diagonal(cc.clone()).unwrap();
        let rc2 = BimoduleRep::new(
            cc.clone(),
            induce(&Subgroup::whole(cc.group()), &trivial_rep(d.subgroup(), Q)).unwrap(),
        )
        .unwrap();
        let t = tensor_over_h(&rc2, &rc2).unwrap();
        assert_eq!(t.bimodule.dim(), 2);
        t.bimodule.rep().validate().unwrap();
        assert_eq!(character(t.bimodule.rep()), character(rc2.rep()));

        let one = Arc::new(Group::trivial());
        let a = Arc::new(direct_product(&c2, &one).unwrap());
        let b = Arc::new(direct_product(&one, &c2).unwrap());
        let p = BimoduleRep::new(a.clone(), regular_rep(&Subgroup::whole(a.group()), Q)).unwrap();
        let q = BimoduleRep::new(b.clone(), regular_rep(&Subgroup::whole(b.group()), Q)).unwrap();
        assert_eq!(tensor_over_h(&p, &q).unwrap().bimodule.dim(), 4);
        assert!(tensor_over_h(&q, &q).is_err());
    }

    #[test]
    fn intertwiner_search() {
        let s3 = whole("S3");
        let r = regular_rep(&s3, Q);
        let t = find_intertwiner_iso(&r, &r, 1).unwrap();
        let t = t.found().unwrap();
        assert!(intertwines(t, &r, &r).unwrap());
        let p = Matrix::from_fn(Q, 6, 6, |i, j| {
            Q.from_i64(if i >= j {
                1 + (i + 2 * j) as i64 % 4
            } else {
                0
            })
        });
        let tw = r.twist(&p).unwrap();
        let t = find_intertwiner_iso(&r, &tw, 2).unwrap();
        let t = t.found().unwrap();
        let tinv = t.inverse().unwrap();
        for x in s3.elements() {
            assert_eq!(
                &tinv.mul(tw.image(*x)).unwrap().mul(t).unwrap(),
                r.image(*x)
            );
        }

        let c2 = whole("C2");
        let one = Subgroup::trivial(c2.ambient());
        let (tr, sg) = (trivial_rep(&c2, Q), sign_rep(&c2, &one, Q).unwrap());
        assert_eq!(
            find_intertwiner_iso(&tr, &sg, 0).unwrap(),
            IsoSearch::NotIsomorphic
        );
        // over F2 trivial and sign coincide; over F3 they do not
        let f2 = Field::Prime(2);
        let ok = find_intertwiner_iso(&trivial_rep(&c2, f2), &sign_rep(&c2, &one, f2).unwrap(), 0)
            .unwrap();
        assert!(ok.found().is_some());
        let f3 = Field::Prime(3);
        let no = find_intertwiner_iso(&trivial_rep(&c2, f3), &sign_rep(&c2, &one, f3).unwrap(), 0)
            .unwrap();
        assert_eq!(no, IsoSearch::NotIsomorphic);
        // regular F2[C2] is indecomposable, so not trivial ⊕ trivial
        let two = direct_sum(&[&trivial_rep(&c2, f2), &trivial_rep(&c2, f2)]).unwrap();
        assert_eq!(
            find_intertwiner_iso(&regular_rep(&c2, f2), &two, 0).unwrap(),
            IsoSearch::NotIsomorphic
        );
    }

    #[test]
    fn from_generators_checks_relations() {
        let c2 = whole("C2");
        let bad = Rep::from_generators(c2.clone(), Q, 1, &[(1, Matrix::from_i64(Q, &[&[2]]))]);
        assert!(bad.is_err());
        let ok =
            Rep::from_generators(c2.clone(), Q, 1, &[(1, Matrix::from_i64(Q, &[&[-1]]))]).unwrap();
        ok.validate().unwrap();
        let broken = regular_rep(&c2, Q)
            .with_image_replaced(1, Matrix::identity(Q, 2).scale(&Q.from_i64(2)));
        assert!(broken.validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn tensor_dimension_ignores_relation_order(seed in 0u64..1000) {
            let s3 = whole("S3");
            let r = regular_rep(&s3, Q);
            let mut elems: Vec<usize> = s3.elements().to_vec();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..elems.len()).rev() {
                elems.swap(i, Rng::gen_range(&mut rng, 0..=i));
            }
            let g = s3.ambient();
            // n·l is left multiplication by l⁻¹, which is a right action
            let tq = tensor_over_subgroup(Q, 6, 6, &elems, |l| r.image(g.inv(l)).clone(), |l| r.image(l).clone()).unwrap();
            prop_assert_eq!(tq.dim(), 6);
        }

        #[test]
        fn random_rep_character_is_basis_free(seed in 0u64..500, dim in 1usize..6) {
            let s3 = whole("S3");
            let a = random_rep(&s3, dim, seed, Q).unwrap();
            prop_assert_eq!(a.dim(), dim);
            prop_assert!(a.validate().is_ok());
        }
    }
}
