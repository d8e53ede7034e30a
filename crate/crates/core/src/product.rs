//! Subgroups of direct products: projections, kernels, the `(t,1)`-conjugate
//! and the star product `Y ∗ X`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{conjugate_subgroup, direct_product, Group, ProductGroup, Subgroup};

/// `X ≤ H × G` with its projections `p₁, p₂` and kernels `k₁, k₂`.
#[derive(Clone)]
pub struct ProductSubgroup {
    ambient: Arc<ProductGroup>,
    sub: Subgroup,
    p1: Subgroup,
    p2: Subgroup,
    k1: Subgroup,
    k2: Subgroup,
    local: Arc<Group>,
}

impl PartialEq for ProductSubgroup {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.sub.elements() == other.sub.elements()
    }
}

impl Eq for ProductSubgroup {}

impl fmt::Debug for ProductSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = self
            .sub
            .elements()
            .iter()
            .map(|&x| self.ambient.unpair(x))
            .collect();
        write!(
            f,
            "ProductSubgroup({pairs:?} ≤ {})",
            self.ambient.group().name()
        )
    }
}

impl ProductSubgroup {
    pub fn new(ambient: Arc<ProductGroup>, elements: Vec<usize>) -> Result<Self> {
        let sub = Subgroup::new(ambient.group().clone(), elements)?;
        Ok(Self::from_subgroup(ambient, sub))
    }

    /// Wraps a subgroup of `ambient.group()`; the four factor subgroups are
    /// computed eagerly.
    pub fn from_subgroup(ambient: Arc<ProductGroup>, sub: Subgroup) -> Self {
        assert!(
            **sub.ambient() == **ambient.group(),
            "subgroup of a different group"
        );
        let (h, g) = (ambient.left().clone(), ambient.right().clone());
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        let mut k1 = Vec::new();
        let mut k2 = Vec::new();
        for &x in sub.elements() {
            let (a, b) = ambient.unpair(x);
            p1.push(a);
            p2.push(b);
            if b == 0 {
                k1.push(a);
            }
            if a == 0 {
                k2.push(b);
            }
        }
        let close = |grp: &Arc<Group>, e: Vec<usize>| {
            Subgroup::new(grp.clone(), e).expect("image of a subgroup")
        };
        let local = Arc::new(sub.as_group());
        ProductSubgroup {
            p1: close(&h, p1),
            p2: close(&g, p2),
            k1: close(&h, k1),
            k2: close(&g, k2),
            ambient,
            sub,
            local,
        }
    }

    /// Subgroup generated by the given `(a, b)` pairs.
    pub fn generated(ambient: Arc<ProductGroup>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut gens = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            ambient.left().check_element(a)?;
            ambient.right().check_element(b)?;
            gens.push(ambient.pair(a, b));
        }
        let sub = Subgroup::generated(ambient.group(), &gens)?;
        Ok(Self::from_subgroup(ambient, sub))
    }

    pub fn whole(ambient: Arc<ProductGroup>) -> Self {
        let sub = Subgroup::whole(ambient.group());
        Self::from_subgroup(ambient, sub)
    }

    pub fn trivial(ambient: Arc<ProductGroup>) -> Self {
        let sub = Subgroup::trivial(ambient.group());
        Self::from_subgroup(ambient, sub)
    }

    /// `Δ(G) = {(g, g)}` in `G × G`.
    pub fn diagonal(ambient: Arc<ProductGroup>) -> Result<Self> {
        if ambient.left() != ambient.right() {
            return Err(Error::GroupMismatch("diagonal needs equal factors".into()));
        }
        let elems = ambient
            .left()
            .elements()
            .map(|g| ambient.pair(g, g))
            .collect();
        Self::new(ambient, elems)
    }

    pub fn ambient(&self) -> &Arc<ProductGroup> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Composite ids, sorted.
    pub fn elements(&self) -> &[usize] {
        self.sub.elements()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sub.elements().iter().map(|&x| self.ambient.unpair(x))
    }

    pub fn order(&self) -> usize {
        self.sub.order()
    }

    pub fn index(&self) -> usize {
        self.sub.index()
    }

    pub fn contains_pair(&self, a: usize, b: usize) -> bool {
        self.sub.contains(self.ambient.pair(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.sub.contains(x)
    }

    pub fn p1(&self) -> &Subgroup {
        &self.p1
    }

    pub fn p2(&self) -> &Subgroup {
        &self.p2
    }

    pub fn k1(&self) -> &Subgroup {
        &self.k1
    }

    pub fn k2(&self) -> &Subgroup {
        &self.k2
    }

    /// The subgroup as an abstract group; element `i` is `elements()[i]`.
    pub fn local_group(&self) -> &Arc<Group> {
        &self.local
    }

    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.sub.local_index(x)
    }
}

/// `(t,1) X (t,1)⁻¹ = {(t h t⁻¹, g) : (h, g) ∈ X}` for `t ∈ H`.
pub fn conj_t1(x: &ProductSubgroup, t: usize) -> Result<ProductSubgroup> {
    let amb = x.ambient();
    let h = amb.left();
    h.check_element(t)?;
    let elems = x.pairs().map(|(a, b)| amb.pair(h.conj(t, a), b)).collect();
    ProductSubgroup::new(amb.clone(), elems)
}

/// `Y ∗ X = {(k, g) : ∃ h, (k, h) ∈ Y, (h, g) ∈ X}` for `Y ≤ K×H`, `X ≤ H×G`.
/// Closure of the result is checked rather than assumed.
pub fn star(y: &ProductSubgroup, x: &ProductSubgroup) -> Result<ProductSubgroup> {
    let (ya, xa) = (y.ambient(), x.ambient());
    if ya.right() != xa.left() {
        return Err(Error::GroupMismatch(format!(
            "star: middle groups {} and {} differ",
            ya.right().name(),
            xa.left().name()
        )));
    }
    let kg = Arc::new(direct_product(ya.left(), xa.right())?);
    let star = star_in(&kg, y, x)?;
    Ok(star)
}

/// `star` into a caller-supplied `K × G`.
pub fn star_in(
    kg: &Arc<ProductGroup>,
    y: &ProductSubgroup,
    x: &ProductSubgroup,
) -> Result<ProductSubgroup> {
    let (ya, xa) = (y.ambient(), x.ambient());
    if ya.right() != xa.left() || kg.left() != ya.left() || kg.right() != xa.right() {
        return Err(Error::GroupMismatch(
            "star: incompatible product groups".into(),
        ));
    }
    let middle = ya.right().order();
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); middle];
    for (h, g) in x.pairs() {
        by_first[h].push(g);
    }
    let mut elems: Vec<usize> = y
        .pairs()
        .flat_map(|(k, h)| by_first[h].iter().map(move |&g| kg.pair(k, g)))
        .collect();
    elems.sort_unstable();
    elems.dedup();
    ProductSubgroup::new(kg.clone(), elems)
        .map_err(|e| Error::WellDefinedness(format!("star product is not a subgroup: {e}")))
}

/// `k₂(Y) ∩ ᵗk₁(X)`, a subgroup of the middle group `H`.
pub fn middle_section(y: &ProductSubgroup, x: &ProductSubgroup, t: usize) -> Result<Subgroup> {
    let h = y.ambient().right();
    if h != x.ambient().left() {
        return Err(Error::GroupMismatch(
            "middle_section: middle groups differ".into(),
        ));
    }
    let conj = conjugate_subgroup(h, x.k1(), t)?;
    Ok(y.k2().intersect(&conj))
}
