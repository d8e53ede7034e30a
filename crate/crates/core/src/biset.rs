//! Finite bisets, their groupoids, transitive bisets `(H×G)/X`, and the
//! composition `V ×_H U`.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{direct_product, left_coset_reps, ProductGroup};
use crate::product::ProductSubgroup;

/// An `(H,G)`-biset on points `0..m` with explicit action tables.
#[derive(Clone, Debug)]
pub struct Biset {
    product: Arc<ProductGroup>,
    points: usize,
    left_act: Vec<u32>,
    right_act: Vec<u32>,
}

impl Biset {
    /// `left_act[h·m + u] = h·u`, `right_act[u·|G| + g] = u·g`. Checks both
    /// actions and that they commute, exhaustively.
    pub fn new(
        product: Arc<ProductGroup>,
        points: usize,
        left_act: Vec<usize>,
        right_act: Vec<usize>,
    ) -> Result<Self> {
        let b = Self::new_unchecked(product, points, left_act, right_act)?;
        b.validate()?;
        Ok(b)
    }

    /// Shape checks only. Exists so that tests can feed deliberately broken
    /// tables through the rest of the pipeline.
    pub fn new_unchecked(
        product: Arc<ProductGroup>,
        points: usize,
        left_act: Vec<usize>,
        right_act: Vec<usize>,
    ) -> Result<Self> {
        let (nh, ng) = (product.left().order(), product.right().order());
        if left_act.len() != nh * points || right_act.len() != points * ng {
            return Err(Error::Biset("action tables have the wrong size".into()));
        }
        if left_act.iter().chain(&right_act).any(|&u| u >= points) {
            return Err(Error::Biset("action table leaves the point set".into()));
        }
        Ok(Biset {
            product,
            points,
            left_act: left_act.into_iter().map(|u| u as u32).collect(),
            right_act: right_act.into_iter().map(|u| u as u32).collect(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let (h, g) = (self.product.left(), self.product.right());
        for u in 0..self.points {
            if self.left(0, u) != u || self.right(u, 0) != u {
                return Err(Error::Biset(format!("identity moves point {u}")));
            }
            for a in h.elements() {
                for b in h.elements() {
                    if self.left(a, self.left(b, u)) != self.left(h.mul(a, b), u) {
                        return Err(Error::Biset(format!("left action fails at ({a},{b},{u})")));
                    }
                }
            }
            for a in g.elements() {
                for b in g.elements() {
                    if self.right(self.right(u, a), b) != self.right(u, g.mul(a, b)) {
                        return Err(Error::Biset(format!("right action fails at ({u},{a},{b})")));
                    }
                }
            }
            for a in h.elements() {
                for b in g.elements() {
                    if self.right(self.left(a, u), b) != self.left(a, self.right(u, b)) {
                        return Err(Error::Biset(format!(
                            "actions do not commute at ({a},{u},{b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn product(&self) -> &Arc<ProductGroup> {
        &self.product
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn left(&self, h: usize, u: usize) -> usize {
        self.left_act[h * self.points + u] as usize
    }

    #[inline]
    pub fn right(&self, u: usize, g: usize) -> usize {
        self.right_act[u * self.product.right().order() + g] as usize
    }

    /// `h·u·g⁻¹` for the composite id `x = (h, g)`: the target of the
    /// morphism `x` out of `u`.
    #[inline]
    pub fn act(&self, x: usize, u: usize) -> usize {
        let (h, g) = self.product.unpair(x);
        let ginv = self.product.right().inv(g);
        self.left(h, self.right(u, ginv))
    }

    /// `Hom(u, v) = {(h, g) : h·u = v·g}`, as sorted composite ids.
    pub fn hom_set(&self, u: usize, v: usize) -> Vec<usize> {
        let (h, g) = (self.product.left(), self.product.right());
        let mut out = Vec::new();
        for a in h.elements() {
            let au = self.left(a, u);
            for b in g.elements() {
                if au == self.right(v, b) {
                    out.push(self.product.pair(a, b));
                }
            }
        }
        out
    }

    /// `(h', g') ∘ (h, g) = (h'h, g'g)`.
    pub fn compose_morphisms(&self, second: usize, first: usize) -> usize {
        self.product.group().mul(second, first)
    }

    pub fn identity_morphism(&self) -> usize {
        0
    }

    /// `A(u) = Hom(u, u)`.
    pub fn aut_group(&self, u: usize) -> Result<ProductSubgroup> {
        ProductSubgroup::new(self.product.clone(), self.hom_set(u, u))
            .map_err(|e| Error::WellDefinedness(format!("A({u}) is not a subgroup: {e}")))
    }

    /// Orbit index of each point, orbits numbered by their minimum point.
    pub fn orbits(&self) -> Vec<usize> {
        let (h, g) = (self.product.left(), self.product.right());
        let mut orbit = vec![usize::MAX; self.points];
        let mut next = 0;
        for start in 0..self.points {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let moves = h
                    .elements()
                    .map(|a| self.left(a, u))
                    .chain(g.elements().map(|b| self.right(u, b)));
                for w in moves.collect::<Vec<_>>() {
                    if orbit[w] == usize::MAX {
                        orbit[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        orbit
    }

    /// Minimum point of each `(H,G)`-orbit.
    pub fn orbit_reps(&self) -> Vec<usize> {
        let orbit = self.orbits();
        let mut reps = Vec::new();
        for (u, &o) in orbit.iter().enumerate() {
            if o == reps.len() {
                reps.push(u);
            }
        }
        reps
    }

    pub fn disjoint_union(&self, other: &Biset) -> Result<Biset> {
        if *self.product != *other.product {
            return Err(Error::GroupMismatch(
                "disjoint union of bisets over different groups".into(),
            ));
        }
        let (nh, ng) = (self.product.left().order(), self.product.right().order());
        let m = self.points + other.points;
        let mut left = vec![0; nh * m];
        let mut right = vec![0; m * ng];
        for a in 0..nh {
            for u in 0..m {
                left[a * m + u] = if u < self.points {
                    self.left(a, u)
                } else {
                    self.points + other.left(a, u - self.points)
                };
            }
        }
        for u in 0..m {
            for b in 0..ng {
                right[u * ng + b] = if u < self.points {
                    self.right(u, b)
                } else {
                    self.points + other.right(u - self.points, b)
                };
            }
        }
        Biset::new(self.product.clone(), m, left, right)
    }

    /// Test hook: overwrite one left-action entry without validation.
    #[doc(hidden)]
    pub fn corrupt_left_entry(&mut self, h: usize, u: usize, value: usize) {
        self.left_act[h * self.points + u] = value as u32;
    }
}

/// `U = (H×G)/X` with `h·(t,s)X·g = (ht, g⁻¹s)X`; point `i` is the coset of
/// the `i`-th minimum-id representative, so point 0 is `X` itself.
#[derive(Clone, Debug)]
pub struct TransitiveBiset {
    biset: Biset,
    subgroup: ProductSubgroup,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl TransitiveBiset {
    pub fn biset(&self) -> &Biset {
        &self.biset
    }

    pub fn biset_mut(&mut self) -> &mut Biset {
        &mut self.biset
    }

    pub fn subgroup(&self) -> &ProductSubgroup {
        &self.subgroup
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Point holding the composite element `x`, i.e. the coset `xX`.
    pub fn point_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// `(point of y, x)` with `y = rep · x`, `x ∈ X`.
    pub fn factor(&self, y: usize) -> (usize, usize) {
        let grp = self.subgroup.ambient().group();
        let p = self.coset_of[y];
        let x = grp.mul(grp.inv(self.coset_reps[p]), y);
        debug_assert!(self.subgroup.contains(x));
        (p, x)
    }
}

pub fn transitive_biset(x: &ProductSubgroup) -> Result<TransitiveBiset> {
    let product = x.ambient().clone();
    let grp = product.group();
    let reps = left_coset_reps(grp, x.subgroup())?;
    let mut coset_of = vec![usize::MAX; grp.order()];
    for (i, &c) in reps.iter().enumerate() {
        for &y in x.elements() {
            coset_of[grp.mul(c, y)] = i;
        }
    }
    let (h, g) = (product.left(), product.right());
    let m = reps.len();
    let mut left = vec![0; h.order() * m];
    for a in h.elements() {
        let ha = product.pair(a, 0);
        for (i, &c) in reps.iter().enumerate() {
            left[a * m + i] = coset_of[grp.mul(ha, c)];
        }
    }
    let mut right = vec![0; m * g.order()];
    for (i, &c) in reps.iter().enumerate() {
        for b in g.elements() {
            let gb = product.pair(0, g.inv(b));
            right[i * g.order() + b] = coset_of[grp.mul(gb, c)];
        }
    }
    let biset = Biset::new(product, m, left, right)?;
    Ok(TransitiveBiset {
        biset,
        subgroup: x.clone(),
        coset_reps: reps,
        coset_of,
    })
}

/// `V ×_H U`: `H`-orbits of `V × U` under `(v,u)·h = (vh, h⁻¹u)`.
#[derive(Clone, Debug)]
pub struct ComposedBiset {
    biset: Biset,
    v_points: usize,
    u_points: usize,
    orbit_pairs: Vec<(usize, usize)>,
    pair_point: Vec<usize>,
    pair_witness: Vec<usize>,
}

impl ComposedBiset {
    pub fn biset(&self) -> &Biset {
        &self.biset
    }

    /// Lexicographically minimal `(v, u)` in each orbit.
    pub fn orbit_pairs(&self) -> &[(usize, usize)] {
        &self.orbit_pairs
    }

    pub fn point_of_pair(&self, v: usize, u: usize) -> usize {
        self.pair_point[v * self.u_points + u]
    }

    /// Minimum `h` with `(v, u) = (v_r·h, h⁻¹·u_r)` for the orbit
    /// representative `(v_r, u_r)`.
    pub fn witness(&self, v: usize, u: usize) -> usize {
        self.pair_witness[v * self.u_points + u]
    }

    pub fn v_points(&self) -> usize {
        self.v_points
    }

    pub fn u_points(&self) -> usize {
        self.u_points
    }
}

pub fn compose_bisets(v: &Biset, u: &Biset) -> Result<ComposedBiset> {
    let (vp, up) = (v.product(), u.product());
    if vp.right() != up.left() {
        return Err(Error::GroupMismatch(format!(
            "compose: middle groups {} and {} differ",
            vp.right().name(),
            up.left().name()
        )));
    }
    let h = vp.right();
    let (nv, nu) = (v.points(), u.points());
    let mut pair_point = vec![usize::MAX; nv * nu];
    let mut pair_witness = vec![usize::MAX; nv * nu];
    let mut orbit_pairs = Vec::new();
    for a in 0..nv {
        for b in 0..nu {
            if pair_point[a * nu + b] != usize::MAX {
                continue;
            }
            let w = orbit_pairs.len();
            orbit_pairs.push((a, b));
            for y in h.elements() {
                let (a2, b2) = (v.right(a, y), u.left(h.inv(y), b));
                let idx = a2 * nu + b2;
                if pair_point[idx] == usize::MAX {
                    pair_point[idx] = w;
                    pair_witness[idx] = y;
                }
            }
        }
    }
    let kg = Arc::new(direct_product(vp.left(), up.right())?);
    let (k, g) = (kg.left().clone(), kg.right().clone());
    let m = orbit_pairs.len();
    let mut left = vec![0; k.order() * m];
    for z in k.elements() {
        for (w, &(a, b)) in orbit_pairs.iter().enumerate() {
            left[z * m + w] = pair_point[v.left(z, a) * nu + b];
        }
    }
    let mut right = vec![0; m * g.order()];
    for (w, &(a, b)) in orbit_pairs.iter().enumerate() {
        for x in g.elements() {
            right[w * g.order() + x] = pair_point[a * nu + u.right(b, x)];
        }
    }
    let biset = Biset::new(kg, m, left, right)?;
    Ok(ComposedBiset {
        biset,
        v_points: nv,
        u_points: nu,
        orbit_pairs,
        pair_point,
        pair_witness,
    })
}

/// `{(k, g) : k·w = w·g}`, the automorphism group of `w` in the composed
/// biset's groupoid.
pub fn stabilizer(c: &ComposedBiset, w: usize) -> Result<ProductSubgroup> {
    c.biset.aut_group(w)
}
