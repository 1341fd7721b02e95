//! Permutations and permutation groups on the points `0..n`.
//!
//! Groups are given by generators; orders, membership tests and element
//! enumeration go through a stabilizer chain built with Schreier's lemma.
//! Subgroup enumeration up to conjugacy works by extending known classes
//! with elements of prime-power order, which reaches every subgroup at the
//! desk scales this crate is meant for.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use once_cell::sync::OnceCell;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array of length {0} is not a bijection")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("cycle entries must be distinct points within the degree")]
    BadCycle,
    #[error("domain is not closed under the group action")]
    DomainNotClosed,
    #[error("domain is empty")]
    EmptyDomain,
    #[error("group order {order} exceeds the configured ceiling {ceiling}")]
    OrderCeiling { order: u64, ceiling: u64 },
    #[error("{0} does not divide the group order {1}")]
    NotADivisor(u64, u64),
}

/// A bijection on `{0, …, n-1}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                let y = cyc[(i + 1) % cyc.len()];
                if x >= degree || y >= degree || touched[x] {
                    return Err(PermError::BadCycle);
                }
                touched[x] = true;
                images[x] = y;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image of an unordered point pair, normalised to `(min, max)`.
    pub fn apply_edge(&self, e: (usize, usize)) -> (usize, usize) {
        let a = self.images[e.0];
        let b = self.images[e.1];
        (a.min(b), a.max(b))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(p ∘ q)(x) = p(q(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// One level of a stabilizer chain. `gens` generate the stabilizer of all
/// earlier base points; `transversal[p]` maps `base` to `p`.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    transversal: BTreeMap<usize, Permutation>,
}

#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation], forced_base: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let mut gens: Vec<Permutation> = {
            let mut set = HashSet::new();
            generators
                .iter()
                .filter(|g| !g.is_identity() && set.insert(g.images().to_vec()))
                .cloned()
                .collect()
        };
        let mut forced: VecDeque<usize> = forced_base.iter().copied().collect();
        while !gens.is_empty() {
            let base = pick_base(degree, &gens, &mut forced);
            let transversal = transversal_from(base, &gens);
            // Schreier generators for the stabilizer of `base`.
            let mut next: Vec<Permutation> = Vec::new();
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            for rep in transversal.values() {
                for s in &gens {
                    let target = s.apply(rep.apply(base));
                    let u = transversal[&target].inverse().mul(&s.mul(rep));
                    debug_assert_eq!(u.apply(base), base);
                    if !u.is_identity() && seen.insert(u.images().to_vec()) {
                        next.push(u);
                    }
                }
            }
            chain.levels.push(Level {
                base,
                gens,
                transversal,
            });
            gens = next;
        }
        chain
    }

    fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u64)
            .product()
    }

    fn contains(&self, p: &Permutation) -> bool {
        let mut g = p.clone();
        for level in &self.levels {
            let target = g.apply(level.base);
            match level.transversal.get(&target) {
                Some(rep) => g = rep.inverse().mul(&g),
                None => return false,
            }
        }
        g.is_identity()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        fn rec(
            levels: &[Level],
            i: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            if i == levels.len() {
                f(acc);
                return;
            }
            for rep in levels[i].transversal.values() {
                rec(levels, i + 1, &acc.mul(rep), f);
            }
        }
        rec(&self.levels, 0, &Permutation::identity(self.degree), f);
    }
}

/// Prefer a forced base point that is actually moved; otherwise take a moved
/// point lying in the largest orbit, which keeps chains shallow on the
/// transitive actions this crate works with.
fn pick_base(degree: usize, gens: &[Permutation], forced: &mut VecDeque<usize>) -> usize {
    while let Some(&b) = forced.front() {
        forced.pop_front();
        if gens.iter().any(|g| g.apply(b) != b) {
            return b;
        }
    }
    let mut orbit_id = vec![usize::MAX; degree];
    let mut best = (0usize, 0usize);
    let mut next_id = 0;
    for start in 0..degree {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        orbit_id[start] = next_id;
        let mut size = 1;
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if orbit_id[y] == usize::MAX {
                    orbit_id[y] = next_id;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        if size > best.1 {
            best = (start, size);
        }
        next_id += 1;
    }
    debug_assert!(best.1 > 1);
    best.0
}

fn transversal_from(base: usize, gens: &[Permutation]) -> BTreeMap<usize, Permutation> {
    let degree = gens[0].degree();
    let mut transversal = BTreeMap::new();
    transversal.insert(base, Permutation::identity(degree));
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        let rep = transversal[&x].clone();
        for g in gens {
            let y = g.apply(x);
            if let std::collections::btree_map::Entry::Vacant(e) = transversal.entry(y) {
                e.insert(g.mul(&rep));
                queue.push_back(y);
            }
        }
    }
    transversal
}

/// A permutation group on `0..degree`, with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceCell<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceCell::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceCell::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn membership_test(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    pub fn orbit(&self, x: usize) -> Result<BTreeSet<usize>, PermError> {
        if x >= self.degree {
            return Err(PermError::OutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let mut orbit = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if orbit.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        Ok(orbit)
    }

    /// Orbit of an unordered pair, acted on elementwise.
    pub fn orbit_edge(&self, e: (usize, usize)) -> Result<BTreeSet<(usize, usize)>, PermError> {
        for x in [e.0, e.1] {
            if x >= self.degree {
                return Err(PermError::OutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        let start = (e.0.min(e.1), e.0.max(e.1));
        let mut orbit = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply_edge(p);
                if orbit.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        Ok(orbit)
    }

    /// Orbit identifier per point, for counting orbits of the natural action.
    pub fn orbit_partition(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.degree];
        let mut next = 0;
        for start in 0..self.degree {
            if id[start] != usize::MAX {
                continue;
            }
            id[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if id[y] == usize::MAX {
                        id[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_partition().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_transitive(&self, domain: &BTreeSet<usize>) -> Result<bool, PermError> {
        let first = *domain.iter().next().ok_or(PermError::EmptyDomain)?;
        for &x in domain {
            for g in &self.generators {
                if !domain.contains(&g.apply(x)) {
                    return Err(PermError::DomainNotClosed);
                }
            }
        }
        Ok(self.orbit(first)?.len() == domain.len())
    }

    pub fn is_transitive_edges(&self, edges: &[(usize, usize)]) -> Result<bool, PermError> {
        let first = *edges.first().ok_or(PermError::EmptyDomain)?;
        let set: BTreeSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for &e in &set {
            for g in &self.generators {
                if !set.contains(&g.apply_edge(e)) {
                    return Err(PermError::DomainNotClosed);
                }
            }
        }
        Ok(self.orbit_edge(first)?.len() == set.len())
    }

    /// Visit every group element exactly once, in a deterministic order.
    pub fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        self.chain().for_each_element(f);
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(&mut |p| out.push(p.clone()));
        out
    }

    /// Some element mapping `x` to `y`, if one exists.
    pub fn transporter(&self, x: usize, y: usize) -> Option<Permutation> {
        if x >= self.degree || y >= self.degree {
            return None;
        }
        if x == y {
            return Some(Permutation::identity(self.degree));
        }
        if self.generators.is_empty() {
            return None;
        }
        let transversal = transversal_from(x, &self.generators);
        transversal.get(&y).cloned()
    }

    /// Pointwise stabilizer of `x`.
    pub fn stabilizer_point(&self, x: usize) -> Result<PermGroup, PermError> {
        if x >= self.degree {
            return Err(PermError::OutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        if self.generators.iter().all(|g| g.apply(x) == x) {
            return Ok(self.clone());
        }
        let chain = StabChain::build(self.degree, &self.generators, &[x]);
        debug_assert_eq!(chain.levels[0].base, x);
        let gens = if chain.levels.len() > 1 {
            reduce_generators(self.degree, &chain.levels[1].gens)
        } else {
            Vec::new()
        };
        PermGroup::new(self.degree, gens)
    }

    /// Setwise stabilizer of an unordered pair.
    pub fn stabilizer_edge(&self, e: (usize, usize)) -> Result<PermGroup, PermError> {
        let (a, b) = (e.0, e.1);
        if a >= self.degree || b >= self.degree {
            return Err(PermError::OutOfRange {
                point: a.max(b),
                degree: self.degree,
            });
        }
        let sa = self.stabilizer_point(a)?;
        let sab = sa.stabilizer_point(b)?;
        let mut gens = sab.generators.clone();
        // A transposing element, if the pair can be swapped: r maps a to b,
        // corrected inside Stab(a) so that b returns to a.
        if let Some(r) = self.transporter(a, b) {
            let want = r.inverse().apply(a);
            if let Some(h) = sa.transporter(b, want) {
                let tau = r.mul(&h);
                debug_assert_eq!(tau.apply(a), b);
                debug_assert_eq!(tau.apply(b), a);
                gens.push(tau);
            }
        }
        PermGroup::new(self.degree, reduce_generators(self.degree, &gens))
    }

    /// Subgroup of all elements satisfying `keep`, found by scanning the
    /// element list. Refuses groups above `ceiling`.
    pub fn stabilizer_where(
        &self,
        ceiling: u64,
        keep: impl Fn(&Permutation) -> bool,
    ) -> Result<PermGroup, PermError> {
        let order = self.order();
        if order > ceiling {
            return Err(PermError::OrderCeiling { order, ceiling });
        }
        let mut found: Vec<Permutation> = Vec::new();
        self.for_each_element(&mut |p| {
            if !p.is_identity() && keep(p) {
                found.push(p.clone());
            }
        });
        PermGroup::new(self.degree, reduce_generators(self.degree, &found))
    }

    /// True iff `a` and `b` are conjugate subgroups of this group.
    pub fn are_conjugate(&self, a: &PermGroup, b: &PermGroup) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let mut found = false;
        self.for_each_element(&mut |x| {
            if found {
                return;
            }
            let xi = x.inverse();
            if a.generators
                .iter()
                .all(|g| b.membership_test(&x.mul(g).mul(&xi)))
            {
                found = true;
            }
        });
        found
    }

    /// Conjugacy class representatives of subgroups of order exactly `k`.
    pub fn subgroups_of_order(&self, k: u64, ceiling: u64) -> Result<Vec<PermGroup>, PermError> {
        let order = self.order();
        if k == 0 || !order.is_multiple_of(k) {
            return Err(PermError::NotADivisor(k, order));
        }
        let allowed: BTreeSet<u64> = (1..=k).filter(|d| k.is_multiple_of(*d) && order.is_multiple_of(*d)).collect();
        let classes = self.subgroup_classes(&allowed, ceiling)?;
        Ok(classes.into_iter().filter(|h| h.order() == k).collect())
    }

    /// Conjugacy class representatives of all subgroups whose order lies in
    /// `allowed`, provided `allowed` is closed under divisors (any order in
    /// the set has all its divisors that divide the group order in the set).
    /// Classes are found by repeatedly extending known subgroups with
    /// elements of prime-power order.
    pub fn subgroup_classes(
        &self,
        allowed: &BTreeSet<u64>,
        ceiling: u64,
    ) -> Result<Vec<PermGroup>, PermError> {
        let order = self.order();
        if order > ceiling {
            return Err(PermError::OrderCeiling { order, ceiling });
        }
        let max_allowed = match allowed.iter().max() {
            Some(&m) => m,
            None => return Ok(Vec::new()),
        };
        let elements = self.elements();
        let index: HashMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        let elem_orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
        let seeds: Vec<usize> = (0..elements.len())
            .filter(|&i| {
                let o = elem_orders[i];
                is_prime_power(o) && allowed.iter().any(|&a| a % o == 0)
            })
            .collect();

        struct Class {
            members: Vec<bool>,
            member_ids: Vec<usize>,
            gens: Vec<usize>,
            fingerprint: BTreeMap<u64, usize>,
        }
        let trivial_members = {
            let mut m = vec![false; elements.len()];
            let id = index[&Permutation::identity(self.degree).images().to_vec()];
            m[id] = true;
            m
        };
        let mut classes: Vec<Class> = vec![Class {
            members: trivial_members,
            member_ids: vec![index[&Permutation::identity(self.degree).images().to_vec()]],
            gens: Vec::new(),
            fingerprint: BTreeMap::from([(1, 1)]),
        }];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);

        while let Some(ci) = queue.pop_front() {
            if classes[ci].member_ids.len() as u64 == max_allowed {
                continue;
            }
            for &s in &seeds {
                if classes[ci].members[s] {
                    continue;
                }
                let mut gens = classes[ci].gens.clone();
                gens.push(s);
                let closure = match closure_indices(&elements, &index, &gens, max_allowed) {
                    Some(c) => c,
                    None => continue, // grew past every allowed order
                };
                let sz = closure.len() as u64;
                if !allowed.contains(&sz) {
                    continue;
                }
                let mut members = vec![false; elements.len()];
                for &i in &closure {
                    members[i] = true;
                }
                let mut fingerprint: BTreeMap<u64, usize> = BTreeMap::new();
                for &i in &closure {
                    *fingerprint.entry(elem_orders[i]).or_insert(0) += 1;
                }
                let duplicate = classes.iter().any(|c| {
                    c.fingerprint == fingerprint
                        && subgroups_conjugate_by_indices(&elements, &index, &gens, &c.members)
                });
                if !duplicate {
                    classes.push(Class {
                        members,
                        member_ids: closure,
                        gens,
                        fingerprint,
                    });
                    queue.push_back(classes.len() - 1);
                }
            }
        }

        let mut result: Vec<(u64, Vec<usize>, PermGroup)> = classes
            .into_iter()
            .map(|c| {
                let gens: Vec<Permutation> =
                    c.gens.iter().map(|&i| elements[i].clone()).collect();
                let group = PermGroup::new(self.degree, gens).expect("degrees match");
                (c.member_ids.len() as u64, c.member_ids, group)
            })
            .collect();
        result.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(result.into_iter().map(|(_, _, g)| g).collect())
    }
}

/// Generating-set reduction by sifting: keep a permutation only if it is not
/// already in the group generated by the kept ones.
pub(crate) fn reduce_generators(degree: usize, perms: &[Permutation]) -> Vec<Permutation> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut chain: Option<StabChain> = None;
    for p in perms {
        if p.is_identity() {
            continue;
        }
        let known = chain.as_ref().is_some_and(|c| c.contains(p));
        if !known {
            kept.push(p.clone());
            chain = Some(StabChain::build(degree, &kept, &[]));
        }
    }
    kept
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 0;
    for d in 2..=n {
        if d * d > n {
            p = n;
            break;
        }
        if n.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Subgroup closure in element-index space; `None` once the closure exceeds
/// `cap`.
fn closure_indices(
    elements: &[Permutation],
    index: &HashMap<Vec<usize>, usize>,
    gens: &[usize],
    cap: u64,
) -> Option<Vec<usize>> {
    let id = index[&Permutation::identity(elements[0].degree()).images().to_vec()];
    let mut members: HashSet<usize> = HashSet::from([id]);
    let mut queue: VecDeque<usize> = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let prod = elements[x].mul(&elements[g]);
            let i = index[prod.images()];
            if members.insert(i) {
                if members.len() as u64 > cap {
                    return None;
                }
                queue.push_back(i);
            }
        }
    }
    let mut v: Vec<usize> = members.into_iter().collect();
    v.sort_unstable();
    Some(v)
}

/// True iff conjugating the subgroup generated by `gens` by some group
/// element lands inside `target_members` (equal orders are assumed).
fn subgroups_conjugate_by_indices(
    elements: &[Permutation],
    index: &HashMap<Vec<usize>, usize>,
    gens: &[usize],
    target_members: &[bool],
) -> bool {
    elements.iter().any(|x| {
        let xi = x.inverse();
        gens.iter().all(|&g| {
            let conj = x.mul(&elements[g]).mul(&xi);
            target_members[index[conj.images()]]
        })
    })
}
