//! Finite groups as dense multiplication tables.
//!
//! Elements are ids `0..order`, the identity is always `0`. Subgroups are
//! sorted element sets over a shared ambient group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 1024;
pub const DEFAULT_SUBGROUP_CAP: usize = 64;

/// Exhaustive associativity check up to this order, sampled above.
const EXHAUSTIVE_ASSOC: usize = 64;

#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

impl Group {
    /// Builds and validates a group from a row-major table.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::GroupLaw("table has the wrong size".into()));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidElement(bad));
        }
        let mul: Vec<u32> = mul.into_iter().map(|x| x as u32).collect();
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::GroupLaw(format!(
                    "0 is not a two-sided identity at {a}"
                )));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let b = (0..order).find(|&b| mul[a * order + b] == 0);
            match b {
                Some(b) if mul[b * order + a] == 0 => inv[a] = b as u32,
                _ => {
                    return Err(Error::GroupLaw(format!(
                        "element {a} has no two-sided inverse"
                    )))
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        let g = Group {
            name: name.into(),
            order,
            mul,
            inv,
            names,
        };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOC {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::GroupLaw(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..20_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if bad(a, b, c) {
                    return Err(Error::GroupLaw(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        Ok(())
    }

    /// Enumerates the group generated by concrete elements: identity first,
    /// then the generators in order, then breadth-first products.
    pub fn from_generators<T, M, N>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        op: M,
        namer: N,
        cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        N: Fn(&T) -> String,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = op(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCap {
                            order: elems.len() + 1,
                            cap,
                        });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(index[&op(a, b)]);
            }
        }
        let names = elems.iter().map(namer).collect();
        Group::from_table(name, n, mul, Some(names))
    }

    pub fn trivial() -> Self {
        Group::from_table("C1", 1, vec![0], Some(vec!["e".into()])).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `t a t⁻¹`
    #[inline]
    pub fn conj(&self, t: usize, a: usize) -> usize {
        self.mul(self.mul(t, a), self.inv(t))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element by name, or by numeric id.
    pub fn element_by_name(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        self.names
            .iter()
            .position(|n| n == s)
            .or_else(|| s.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement(a))
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: the smallest id not yet generated, repeatedly.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order];
        covered[0] = true;
        for g in 0..self.order {
            if !covered[g] {
                gens.push(g);
                for x in closure(self, &gens) {
                    covered[x] = true;
                }
            }
        }
        gens
    }

    /// Text dump: the order, then one row of the table per line.
    pub fn cayley_dump(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Sorted closure of a generating set.
fn closure(g: &Group, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut out = vec![0];
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A subgroup, as a sorted element set of an ambient group.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<Group>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.ambient == *other.ambient
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup({:?} of {})",
            self.elements,
            self.ambient.name()
        )
    }
}

impl Subgroup {
    /// Validates closure under multiplication (finite, so inverses follow).
    pub fn new(ambient: Arc<Group>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        for &a in &elements {
            ambient.check_element(a)?;
        }
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        let mut member = vec![false; ambient.order()];
        for &a in &elements {
            member[a] = true;
        }
        for &a in &elements {
            for &b in &elements {
                if !member[ambient.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} escapes the set")));
                }
            }
        }
        Ok(Subgroup {
            ambient,
            elements,
            member,
        })
    }

    fn from_closed(ambient: Arc<Group>, elements: Vec<usize>) -> Self {
        let mut member = vec![false; ambient.order()];
        for &a in &elements {
            member[a] = true;
        }
        Subgroup {
            ambient,
            elements,
            member,
        }
    }

    pub fn whole(g: &Arc<Group>) -> Self {
        Subgroup::from_closed(g.clone(), g.elements().collect())
    }

    pub fn trivial(g: &Arc<Group>) -> Self {
        Subgroup::from_closed(g.clone(), vec![0])
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(g: &Arc<Group>, gens: &[usize]) -> Result<Self> {
        for &s in gens {
            g.check_element(s)?;
        }
        Ok(Subgroup::from_closed(g.clone(), closure(g, gens)))
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.member.get(a).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|&a| other.contains(a))
            .collect();
        Subgroup::from_closed(self.ambient.clone(), elems)
    }

    pub fn is_normal(&self) -> bool {
        self.ambient.elements().all(|t| {
            self.elements
                .iter()
                .all(|&a| self.contains(self.ambient.conj(t, a)))
        })
    }

    /// Position of `a` in the sorted element list.
    pub fn local_index(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    /// The subgroup as a group in its own right, element `i` being
    /// `elements()[i]` (so the identity stays at 0).
    pub fn as_group(&self) -> Group {
        let n = self.order();
        let g = &self.ambient;
        let mut mul = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                mul.push(self.local_index(g.mul(a, b)).unwrap());
            }
        }
        let names = self
            .elements
            .iter()
            .map(|&a| g.element_name(a).to_string())
            .collect();
        Group::from_table(format!("<{}>", self.elements.len()), n, mul, Some(names))
            .expect("subgroup of a valid group")
    }

    /// Small generating set (greedy on ids).
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = Subgroup::trivial(&self.ambient);
        for &a in &self.elements {
            if !covered.contains(a) {
                gens.push(a);
                covered =
                    Subgroup::from_closed(self.ambient.clone(), closure(&self.ambient, &gens));
            }
        }
        gens
    }
}

/// Every subgroup exactly once, sorted by (order, element set). Joins of
/// cyclic subgroups are closed under repeated joining until nothing new
/// appears.
pub fn all_subgroups(g: &Arc<Group>) -> Result<Vec<Subgroup>> {
    all_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

pub fn all_subgroups_with_cap(g: &Arc<Group>, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCap {
            order: g.order(),
            cap,
        });
    }
    let mut cyclic: Vec<Vec<usize>> = g.elements().map(|a| closure(g, &[a])).collect();
    cyclic.sort();
    cyclic.dedup();
    let mut seen: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let member: HashSet<usize> = s.iter().copied().collect();
            for c in &cyclic {
                if c.iter().all(|a| member.contains(a)) {
                    continue;
                }
                let gens: Vec<usize> = s.iter().chain(c.iter()).copied().collect();
                let joined = closure(g, &gens);
                if seen.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all
        .into_iter()
        .map(|e| Subgroup::from_closed(g.clone(), e))
        .collect())
}

fn check_ambient(g: &Arc<Group>, a: &Subgroup) -> Result<()> {
    if **a.ambient() != **g {
        return Err(Error::NotSubgroup(format!(
            "{a:?} does not live in {}",
            g.name()
        )));
    }
    Ok(())
}

/// Minimum-id representative of each left coset `gA`, ascending.
pub fn left_coset_reps(g: &Arc<Group>, a: &Subgroup) -> Result<Vec<usize>> {
    check_ambient(g, a)?;
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::with_capacity(a.index());
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &y in a.elements() {
            seen[g.mul(x, y)] = true;
        }
    }
    Ok(reps)
}

/// Minimum-id representative of each double coset `A t B`, ascending.
pub fn double_coset_reps(g: &Arc<Group>, a: &Subgroup, b: &Subgroup) -> Result<Vec<usize>> {
    check_ambient(g, a)?;
    check_ambient(g, b)?;
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for t in g.elements() {
        if seen[t] {
            continue;
        }
        reps.push(t);
        for &x in a.elements() {
            let xt = g.mul(x, t);
            for &y in b.elements() {
                seen[g.mul(xt, y)] = true;
            }
        }
    }
    Ok(reps)
}

/// The double coset `A t B` as a sorted element list.
pub fn double_coset(g: &Group, a: &Subgroup, t: usize, b: &Subgroup) -> Vec<usize> {
    let mut out: Vec<usize> = a
        .elements()
        .iter()
        .flat_map(|&x| b.elements().iter().map(move |&y| g.mul(g.mul(x, t), y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Conjugacy classes, ordered by their minimum element (identity first).
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in g.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut cls: Vec<usize> = g.elements().map(|x| g.conj(x, a)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            class_of[c] = classes.len();
        }
        classes.push(cls);
    }
    classes
}

/// `t A t⁻¹`.
pub fn conjugate_subgroup(g: &Arc<Group>, a: &Subgroup, t: usize) -> Result<Subgroup> {
    check_ambient(g, a)?;
    g.check_element(t)?;
    let mut elems: Vec<usize> = a.elements().iter().map(|&x| g.conj(t, x)).collect();
    elems.sort_unstable();
    Ok(Subgroup::from_closed(g.clone(), elems))
}

/// `A × B` together with the pairing `(a, b) ↦ a·|B| + b`.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    group: Arc<Group>,
    left: Arc<Group>,
    right: Arc<Group>,
}

impl PartialEq for ProductGroup {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl ProductGroup {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn left(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Group> {
        &self.right
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    #[inline]
    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }

    #[inline]
    pub fn first(&self, x: usize) -> usize {
        x / self.right.order()
    }

    #[inline]
    pub fn second(&self, x: usize) -> usize {
        x % self.right.order()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

pub fn direct_product(a: &Arc<Group>, b: &Arc<Group>) -> Result<ProductGroup> {
    direct_product_with_cap(a, b, DEFAULT_ORDER_CAP)
}

pub fn direct_product_with_cap(a: &Arc<Group>, b: &Arc<Group>, cap: usize) -> Result<ProductGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > cap {
        return Err(Error::OrderCap { order: n, cap });
    }
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            mul.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    let names = (0..n)
        .map(|x| format!("{}.{}", a.element_name(x / nb), b.element_name(x % nb)))
        .collect();
    let group = Group::from_table(format!("{} x {}", a.name(), b.name()), n, mul, Some(names))?;
    Ok(ProductGroup {
        group: Arc::new(group),
        left: a.clone(),
        right: b.clone(),
    })
}

// ---------------------------------------------------------------------------
// Catalog

/// Parses a group spec: `C<n>`, `S<n>` (n ≤ 5), `D<n>` (order 2n), `Q8`, or
/// products `A x B x ...` of those.
pub fn build_group(spec: &str) -> Result<Group> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &str, cap: usize) -> Result<Group> {
    let factors: Vec<&str> = spec.split('x').map(str::trim).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("malformed group spec `{spec}`")));
    }
    let mut acc = Arc::new(catalog_group(factors[0], cap)?);
    for f in &factors[1..] {
        let next = Arc::new(catalog_group(f, cap)?);
        acc = direct_product_with_cap(&acc, &next, cap)?.group.clone();
    }
    let mut g = Arc::try_unwrap(acc).unwrap_or_else(|a| (*a).clone());
    g.name = factors.join(" x ");
    Ok(g)
}

fn parse_param(token: &str, prefix: &str) -> Option<usize> {
    token.strip_prefix(prefix).and_then(|d| {
        if d.is_empty() || !d.chars().all(|c| c.is_ascii_digit()) {
            None
        } else {
            d.parse().ok()
        }
    })
}

fn catalog_group(token: &str, cap: usize) -> Result<Group> {
    let bad = || Error::Parse(format!("unknown group `{token}`"));
    if token == "Q8" {
        return quaternion();
    }
    if let Some(n) = parse_param(token, "C") {
        if n == 0 {
            return Err(bad());
        }
        if n > cap {
            return Err(Error::OrderCap { order: n, cap });
        }
        return cyclic(n);
    }
    if let Some(n) = parse_param(token, "S") {
        if n == 0 || n > 5 {
            return Err(bad());
        }
        return symmetric(n);
    }
    if let Some(n) = parse_param(token, "D") {
        if n == 0 {
            return Err(bad());
        }
        if 2 * n > cap {
            return Err(Error::OrderCap { order: 2 * n, cap });
        }
        return dihedral(n);
    }
    Err(bad())
}

fn power_name(letter: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}{k}"),
    }
}

fn cyclic(n: usize) -> Result<Group> {
    let gens: Vec<usize> = if n > 1 { vec![1] } else { vec![] };
    Group::from_generators(
        format!("C{n}"),
        0usize,
        &gens,
        |a, b| (a + b) % n,
        |&k| {
            if k == 0 {
                "e".into()
            } else {
                power_name("a", k)
            }
        },
        usize::MAX,
    )
}

fn dihedral(n: usize) -> Result<Group> {
    // (k, s) = r^k s^s with s r s = r^-1
    let op = move |x: &(usize, usize), y: &(usize, usize)| {
        let k = if x.1 == 0 {
            (x.0 + y.0) % n
        } else {
            (x.0 + n - y.0) % n
        };
        (k, (x.1 + y.1) % 2)
    };
    let r = (1 % n, 0);
    let gens = if r == (0, 0) {
        vec![(0, 1)]
    } else {
        vec![r, (0, 1)]
    };
    Group::from_generators(
        format!("D{n}"),
        (0, 0),
        &gens,
        op,
        |&(k, s)| {
            let w = format!("{}{}", power_name("r", k), if s == 1 { "s" } else { "" });
            if w.is_empty() {
                "e".into()
            } else {
                w
            }
        },
        usize::MAX,
    )
}

fn symmetric(n: usize) -> Result<Group> {
    let id: Vec<u8> = (0..n as u8).collect();
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(t);
    }
    if n >= 3 {
        let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
        gens.push(c);
    }
    // (σ τ)(i) = σ(τ(i))
    let op = |s: &Vec<u8>, t: &Vec<u8>| t.iter().map(|&i| s[i as usize]).collect::<Vec<u8>>();
    Group::from_generators(
        format!("S{n}"),
        id,
        &gens,
        op,
        |p| cycle_name(p),
        usize::MAX,
    )
}

fn cycle_name(p: &[u8]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn quaternion() -> Result<Group> {
    // 2x2 matrices over Z[i], entries (re, im)
    type M = [[(i8, i8); 2]; 2];
    fn cmul(a: (i8, i8), b: (i8, i8)) -> (i8, i8) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }
    fn cadd(a: (i8, i8), b: (i8, i8)) -> (i8, i8) {
        (a.0 + b.0, a.1 + b.1)
    }
    let op = |x: &M, y: &M| {
        let mut z = [[(0i8, 0i8); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                z[i][j] = cadd(cmul(x[i][0], y[0][j]), cmul(x[i][1], y[1][j]));
            }
        }
        z
    };
    let one: M = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    let i: M = [[(0, 1), (0, 0)], [(0, 0), (0, -1)]];
    let j: M = [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]];
    let k = op(&i, &j);
    let neg = |m: &M| m.map(|r| r.map(|(a, b)| (-a, -b)));
    let table = [
        (one, "1"),
        (neg(&one), "-1"),
        (i, "i"),
        (neg(&i), "-i"),
        (j, "j"),
        (neg(&j), "-j"),
        (k, "k"),
        (neg(&k), "-k"),
    ];
    Group::from_generators(
        "Q8",
        one,
        &[i, j],
        op,
        |m| table.iter().find(|(x, _)| x == m).unwrap().1.to_string(),
        usize::MAX,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> Arc<Group> {
        Arc::new(build_group(spec).unwrap())
    }

    /// Brute force: closure of every subset of elements.
    fn subgroups_by_subsets(g: &Group) -> usize {
        let n = g.order();
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        for mask in 0u32..(1 << n) {
            let gens: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            found.insert(closure(g, &gens));
        }
        found.len()
    }

    #[test]
    fn catalog_basics() {
        let c2 = g("C2");
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.mul(1, 1), 0);
        let s3 = g("S3");
        assert_eq!(s3.order(), 6);
        assert_eq!(conjugacy_classes(&s3).len(), 3);
        let v4 = g("C2 x C2");
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|a| v4.element_order(a) == 2));
        assert_eq!(g("D4").order(), 8);
        assert_eq!(g("D1").order(), 2);
        assert_eq!(g("D2").order(), 4);
        assert_eq!(g("S5").order(), 120);
        assert_eq!(g("Q8").order(), 8);
    }

    #[test]
    fn s3_classes_by_brute_force() {
        // enumerate S3 directly as permutations of {0,1,2}
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let comp = |s: &[usize; 3], t: &[usize; 3]| [s[t[0]], s[t[1]], s[t[2]]];
        let inv = |s: &[usize; 3]| {
            let mut r = [0; 3];
            for i in 0..3 {
                r[s[i]] = i;
            }
            r
        };
        let mut classes: Vec<Vec<[usize; 3]>> = Vec::new();
        for p in &perms {
            if classes.iter().any(|c| c.contains(p)) {
                continue;
            }
            let mut c: Vec<[usize; 3]> = perms.iter().map(|x| comp(&comp(x, p), &inv(x))).collect();
            c.sort();
            c.dedup();
            classes.push(c);
        }
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let s3 = g("S3");
        let mut ours: Vec<usize> = conjugacy_classes(&s3).iter().map(Vec::len).collect();
        assert_eq!(ours[0], 1);
        ours.sort();
        assert_eq!(ours, sizes);
    }

    #[test]
    fn quaternion_classes() {
        assert_eq!(conjugacy_classes(&g("Q8")).len(), 5);
        assert_eq!(conjugacy_classes(&g("C2 x C2")).len(), 4);
    }

    #[test]
    fn malformed_specs() {
        for bad in ["C", "C0", "S6", "X3", "C2 x", "", "c2", "C2 y C3"] {
            assert!(matches!(build_group(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!(
            build_group_with_cap("C4 x C4", 8),
            Err(Error::OrderCap { .. })
        ));
        assert!(matches!(build_group("C2000"), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn generators_get_small_ids() {
        let s3 = g("S3");
        assert_eq!(s3.element_name(0), "e");
        assert_eq!(s3.element_name(1), "(12)");
        assert_eq!(s3.element_name(2), "(123)");
    }

    #[test]
    fn products() {
        let c2 = g("C2");
        let c3 = g("C3");
        let p = direct_product(&c2, &c2).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.group().mul(p.pair(1, 0), p.pair(0, 1)), p.pair(1, 1));
        assert_eq!(direct_product(&g("S3"), &c2).unwrap().order(), 12);
        let c6 = direct_product(&c2, &c3).unwrap();
        assert!(c6
            .group()
            .elements()
            .any(|x| c6.group().element_order(x) == 6));
        for x in c6.group().elements() {
            let (a, b) = c6.unpair(x);
            assert_eq!(c6.pair(a, b), x);
        }
    }

    #[test]
    fn generated_subgroups() {
        let s3 = g("S3");
        assert_eq!(Subgroup::generated(&s3, &[1]).unwrap().order(), 2);
        assert_eq!(Subgroup::generated(&s3, &[2]).unwrap().order(), 3);
        assert_eq!(Subgroup::generated(&s3, &[]).unwrap().elements(), &[0]);
        assert!(Subgroup::generated(&s3, &[9]).is_err());
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for (spec, expect) in [
            ("C2", 2),
            ("C2 x C2", 5),
            ("S3", 6),
            ("C4", 3),
            ("Q8", 6),
            ("D4", 10),
        ] {
            let grp = g(spec);
            let subs = all_subgroups(&grp).unwrap();
            assert_eq!(subs.len(), expect, "{spec}");
            assert_eq!(subgroups_by_subsets(&grp), expect, "{spec}");
            assert!(subs
                .windows(2)
                .all(|w| (w[0].order(), w[0].elements()) < (w[1].order(), w[1].elements())));
        }
        assert!(all_subgroups(&g("S5")).is_err());
    }

    #[test]
    fn coset_reps() {
        let c4 = g("C4");
        let c2 = Subgroup::generated(&c4, &[2]).unwrap();
        assert_eq!(left_coset_reps(&c4, &c2).unwrap(), vec![0, 1]);
        let s3 = g("S3");
        let c3 = Subgroup::generated(&s3, &[2]).unwrap();
        assert_eq!(left_coset_reps(&s3, &c3).unwrap().len(), 2);
        assert_eq!(
            left_coset_reps(&s3, &Subgroup::trivial(&s3)).unwrap(),
            (0..6).collect::<Vec<_>>()
        );
    }

    #[test]
    fn double_cosets() {
        let s3 = g("S3");
        let whole = Subgroup::whole(&s3);
        assert_eq!(double_coset_reps(&s3, &whole, &whole).unwrap(), vec![0]);
        let t = Subgroup::generated(&s3, &[1]).unwrap();
        let reps = double_coset_reps(&s3, &t, &t).unwrap();
        let mut sizes: Vec<usize> = reps
            .iter()
            .map(|&r| double_coset(&s3, &t, r, &t).len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let triv = Subgroup::trivial(&s3);
        assert_eq!(double_coset_reps(&s3, &triv, &triv).unwrap().len(), 6);
    }

    #[test]
    fn conjugates() {
        let s3 = g("S3");
        let t12 = Subgroup::generated(&s3, &[1]).unwrap();
        assert_eq!(conjugate_subgroup(&s3, &t12, 0).unwrap(), t12);
        let c3 = Subgroup::generated(&s3, &[2]).unwrap();
        for t in s3.elements() {
            assert_eq!(conjugate_subgroup(&s3, &c3, t).unwrap(), c3);
        }
        let cyc = s3.element_by_name("(123)").unwrap();
        let conj = conjugate_subgroup(&s3, &t12, cyc).unwrap();
        let t23 = s3.element_by_name("(23)").unwrap();
        assert_eq!(conj.elements(), &[0, t23]);
    }

    #[test]
    fn cayley_dump_format() {
        assert_eq!(g("C2").cayley_dump(), "2\n0 1\n1 0\n");
    }

    #[test]
    fn group_law_violations() {
        assert!(Group::from_table("bad", 2, vec![0, 1, 1, 1], None).is_err());
        assert!(Group::from_table("bad", 2, vec![1, 0, 0, 1], None).is_err());
    }
}
