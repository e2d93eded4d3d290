//! Automorphism groups as explicit, sorted element lists, plus the subgroups
//! of `Aut(G)` cut out by "moves every element within `M`" and "fixes `N`
//! pointwise" conditions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::abelian::AbelianInvariants;
use crate::arith::{factorize, lcm};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::search::{Deadline, HomSearch};

/// Default cap on `|Aut(G)|` before enumeration gives up.
pub const DEFAULT_AUT_CAP: usize = 1 << 20;

/// A bijective endomorphism, stored as its image array. Ordering and
/// equality are those of the image arrays.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    img: Box<[u16]>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.img.iter()).finish()
    }
}

impl Automorphism {
    pub fn identity(n: usize) -> Automorphism {
        Automorphism { img: (0..n as u16).collect() }
    }

    pub(crate) fn from_raw(img: &[u16]) -> Automorphism {
        Automorphism { img: img.into() }
    }

    /// Checked constructor.
    pub fn from_images(g: &Group, img: &[usize]) -> Result<Automorphism> {
        if img.len() != g.order() || img.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidParameter("image array has the wrong shape".into()));
        }
        let a = Automorphism { img: img.iter().map(|&x| x as u16).collect() };
        if !a.is_automorphism_of(g) {
            return Err(Error::InvalidParameter("map is not an automorphism".into()));
        }
        Ok(a)
    }

    /// Conjugation `y -> x y x^-1`.
    pub fn inner(g: &Group, x: usize) -> Automorphism {
        Automorphism { img: (0..g.order()).map(|y| g.conjugate(y, x) as u16).collect() }
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut img = vec![0u16; self.img.len()].into_boxed_slice();
        for (x, &y) in self.img.iter().enumerate() {
            img[y as usize] = x as u16;
        }
        Automorphism { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Order as a permutation: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.img.len()];
        let mut result = 1;
        for start in 0..self.img.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            result = lcm(result, len);
        }
        result
    }

    /// Bijective, fixes 0, and respects every Cayley-graph edge for the
    /// group's generating sequence (which is equivalent to being a
    /// homomorphism).
    pub fn is_automorphism_of(&self, g: &Group) -> bool {
        let n = g.order();
        if self.img.len() != n || self.img[0] != 0 {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in self.img.iter() {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        let gens = g.generating_sequence();
        (0..n).all(|x| {
            gens.iter()
                .all(|&s| self.image(g.mul(x, s)) == g.mul(self.image(x), self.image(s)))
        })
    }

    /// Homomorphism check over all `n^2` pairs.
    pub fn is_automorphism_exhaustive(&self, g: &Group) -> bool {
        let n = g.order();
        self.is_automorphism_of(g)
            && (0..n).all(|i| {
                (0..n).all(|j| self.image(g.mul(i, j)) == g.mul(self.image(i), self.image(j)))
            })
            && (0..n).all(|i| g.elem_order(self.image(i)) == g.elem_order(i))
    }
}

/// `[x, α] = x^-1 α(x)`.
pub fn autocommutator(g: &Group, x: usize, alpha: &Automorphism) -> usize {
    g.mul(g.inv(x), alpha.image(x))
}

/// A subgroup of `Aut(G)` held as a sorted list, with a greedily chosen
/// generating set.
#[derive(Clone)]
pub struct AutomorphismSet<'g> {
    parent: &'g Group,
    elements: Vec<Automorphism>,
    generators: Vec<usize>,
}

impl fmt::Debug for AutomorphismSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutomorphismSet")
            .field("parent", &self.parent.label())
            .field("order", &self.elements.len())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PartialEq for AutomorphismSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.elements == other.elements
    }
}

impl Eq for AutomorphismSet<'_> {}

impl<'g> AutomorphismSet<'g> {
    /// Sorts, deduplicates and picks generators. Fails if the elements do not
    /// form a group.
    pub fn from_elements(parent: &'g Group, mut elements: Vec<Automorphism>) -> Result<AutomorphismSet<'g>> {
        elements.sort_unstable();
        elements.dedup();
        let identity = Automorphism::identity(parent.order());
        if elements.binary_search(&identity).is_err() {
            return Err(Error::InvalidParameter("automorphism set lacks the identity".into()));
        }
        if elements.iter().any(|a| a.degree() != parent.order()) {
            return Err(Error::InvalidParameter("automorphism degree differs from the group order".into()));
        }
        let mut set = AutomorphismSet { parent, elements, generators: Vec::new() };
        set.generators = set.pick_generators()?;
        Ok(set)
    }

    fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.elements.binary_search(a).ok()
    }

    /// Walks the elements in sorted order, adding each one not yet generated.
    /// The incremental closure doubles as the closure check.
    fn pick_generators(&self) -> Result<Vec<usize>> {
        let not_closed = || Error::InvalidParameter("automorphism set is not closed under composition".into());
        let n = self.elements.len();
        let mut reached = vec![false; n];
        let id = self.index_of(&Automorphism::identity(self.parent.order())).expect("identity present");
        reached[id] = true;
        let mut list = vec![id];
        let mut gens: Vec<usize> = Vec::new();
        for cand in 0..n {
            if reached[cand] {
                continue;
            }
            gens.push(cand);
            let old = list.len();
            let mut i = 0;
            while i < list.len() {
                let x = &self.elements[list[i]];
                let apply: &[usize] = if i < old { std::slice::from_ref(&cand) } else { &gens };
                for &t in apply {
                    let y = x.compose(&self.elements[t]);
                    let j = self.index_of(&y).ok_or_else(not_closed)?;
                    if !reached[j] {
                        reached[j] = true;
                        list.push(j);
                    }
                }
                i += 1;
            }
        }
        Ok(gens)
    }

    pub fn parent(&self) -> &'g Group {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn generators(&self) -> impl Iterator<Item = &Automorphism> + '_ {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.index_of(a).is_some()
    }

    pub fn is_subset_of(&self, other: &AutomorphismSet<'g>) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }

    /// Closed under composition with generators and under inverses, and the
    /// generators reach every element.
    pub fn is_closed(&self) -> bool {
        let closed = self
            .elements
            .iter()
            .all(|a| self.generators().all(|s| self.contains(&a.compose(s))) && self.contains(&a.inverse()));
        closed && self.pick_generators().is_ok_and(|g| g.len() == self.generators.len())
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<&Automorphism> = self.generators().collect();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Normal in `ambient`: conjugating each generator by each generator of
    /// `ambient` stays inside.
    pub fn is_normal_in(&self, ambient: &AutomorphismSet<'g>) -> bool {
        self.is_subset_of(ambient)
            && ambient.generators().all(|s| {
                let s_inv = s.inverse();
                self.generators().all(|t| self.contains(&s.compose(t).compose(&s_inv)))
            })
    }

    /// Invariant factors; only defined for abelian sets.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let orders: Vec<u64> = self.elements.iter().map(Automorphism::order).collect();
        AbelianInvariants::from_element_orders(&orders)
    }

    /// Elements fixed by every member.
    pub fn fixed_points(&self) -> Subgroup<'g> {
        let g = self.parent;
        let members = (0..g.order()).map(|x| self.generators().all(|a| a.image(x) == x)).collect();
        Subgroup::from_closed_members(g, members)
    }

    /// Subset satisfying `keep`. The caller guarantees the result is a subgroup.
    fn filter(&self, keep: impl Fn(&Automorphism) -> bool) -> AutomorphismSet<'g> {
        let elements: Vec<Automorphism> = self.elements.iter().filter(|a| keep(a)).cloned().collect();
        AutomorphismSet::from_elements(self.parent, elements).expect("filtered set is a subgroup")
    }
}

/// Automorphism-invariant label of an element used to prune candidate images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    order: u32,
    class_size: u32,
    power_class_size: u32,
    root_count: u32,
}

/// Fingerprints `(order, class size, class size of x^q, #q-th roots)` where
/// `q` is the smallest prime dividing `|G|` (2 for the trivial group).
pub fn fingerprints(g: &Group) -> Vec<Fingerprint> {
    let n = g.order();
    let q = factorize(n as u64).first().map(|&(p, _)| p).unwrap_or(2);
    let class_size: Vec<u32> = (0..n)
        .map(|x| {
            let centraliser = (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (n / centraliser) as u32
        })
        .collect();
    let mut roots = vec![0u32; n];
    let powers: Vec<usize> = (0..n).map(|x| g.pow(x, q)).collect();
    for &y in &powers {
        roots[y] += 1;
    }
    (0..n)
        .map(|x| Fingerprint {
            order: g.elem_order(x) as u32,
            class_size: class_size[x],
            power_class_size: class_size[powers[x]],
            root_count: roots[x],
        })
        .collect()
}

/// Limits for [`automorphism_group`].
#[derive(Debug, Clone, Copy)]
pub struct AutConfig {
    pub cap: usize,
    pub deadline: Deadline,
    pub parallel: bool,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig { cap: DEFAULT_AUT_CAP, deadline: Deadline::none(), parallel: true }
    }
}

/// Runs an injective search, fanning out over the first generator's
/// candidates when `parallel` is set, and merges the leaves in sorted order.
fn collect_bijections(search: &HomSearch<'_>, config: &AutConfig) -> Result<Vec<Automorphism>> {
    let found = AtomicUsize::new(0);
    let branch = |first: Option<usize>| -> Result<Vec<Automorphism>> {
        let mut out = Vec::new();
        let mut emit = |map: &[u16]| -> Result<ControlFlow<()>> {
            let total = found.fetch_add(1, AtomicOrdering::Relaxed) + 1;
            if total > config.cap {
                return Err(Error::EnumerationCapExceeded { cap: config.cap, attained: total - 1 });
            }
            out.push(Automorphism::from_raw(map));
            Ok(ControlFlow::Continue(()))
        };
        match first {
            Some(c) => search.run_branch(c, &config.deadline, &mut emit)?,
            None => search.run(&config.deadline, &mut emit)?,
        };
        Ok(out)
    };
    let mut all: Vec<Automorphism> = if search.gens.is_empty() || !config.parallel {
        branch(None)?
    } else {
        let parts: Result<Vec<Vec<Automorphism>>> =
            search.candidates[0].par_iter().map(|&c| branch(Some(c))).collect();
        match parts {
            Ok(parts) => parts.into_iter().flatten().collect(),
            Err(Error::EnumerationCapExceeded { cap, .. }) => {
                let attained = found.load(AtomicOrdering::Relaxed).min(cap);
                return Err(Error::EnumerationCapExceeded { cap, attained });
            }
            Err(e) => return Err(e),
        }
    };
    all.sort_unstable();
    Ok(all)
}

/// Full automorphism group by pruned backtracking over generator images.
pub fn automorphism_group<'g>(g: &'g Group, config: &AutConfig) -> Result<AutomorphismSet<'g>> {
    let fp = fingerprints(g);
    let gens = g.generating_sequence();
    let candidates = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&y| fp[y] == fp[s]).collect())
        .collect();
    let search = HomSearch { source: g, target: g, gens, candidates, injective: true };
    let elements = collect_bijections(&search, config)?;
    AutomorphismSet::from_elements(g, elements)
}

/// `L(G)`: elements fixed by every automorphism.
pub fn absolute_centre<'g>(aut: &AutomorphismSet<'g>) -> Subgroup<'g> {
    aut.fixed_points()
}

/// `Inn(G)`, deduplicated.
pub fn inner_automorphisms(g: &Group) -> AutomorphismSet<'_> {
    let elements = (0..g.order()).map(|x| Automorphism::inner(g, x)).collect();
    AutomorphismSet::from_elements(g, elements).expect("inner automorphisms form a group")
}

/// `Aut^M_N`: members `α` with `x^-1 α(x) ∈ M` for all `x` and `α(y) = y` on `N`.
pub fn restricted_automorphisms<'g>(
    aut: &AutomorphismSet<'g>,
    m: &Subgroup<'g>,
    n: &Subgroup<'g>,
) -> Result<AutomorphismSet<'g>> {
    let g = aut.parent();
    if !std::ptr::eq(m.parent(), g) || !std::ptr::eq(n.parent(), g) {
        return Err(Error::ParentMismatch);
    }
    Ok(aut.filter(|a| {
        (0..g.order()).all(|x| m.contains(autocommutator(g, x, a)))
            && n.elements().iter().all(|&y| a.image(y) == y)
    }))
}

/// `Aut_c(G)`: automorphisms moving each element within its coset of `Z(G)`.
pub fn central_automorphisms<'g>(aut: &AutomorphismSet<'g>, centre: &Subgroup<'g>) -> Result<AutomorphismSet<'g>> {
    restricted_automorphisms(aut, centre, &Subgroup::trivial(aut.parent()))
}

/// `Aut_l(G)`: automorphisms moving each element within its coset of `L(G)`.
pub fn absolute_central_automorphisms<'g>(
    aut: &AutomorphismSet<'g>,
    absolute_centre: &Subgroup<'g>,
) -> Result<AutomorphismSet<'g>> {
    restricted_automorphisms(aut, absolute_centre, &Subgroup::trivial(aut.parent()))
}

/// `Aut^{L(G)}_{Z(G)}`: absolute central automorphisms fixing the centre pointwise.
pub fn absolute_central_fixing_centre<'g>(
    aut: &AutomorphismSet<'g>,
    absolute_centre: &Subgroup<'g>,
    centre: &Subgroup<'g>,
) -> Result<AutomorphismSet<'g>> {
    restricted_automorphisms(aut, absolute_centre, centre)
}

/// `Aut_l(G)` without enumerating `Aut(G)`: each generator `g_i` may only go
/// to `g_i l` with `l ∈ L`. Since `L` is central, this forces
/// `x^-1 α(x) ∈ L` for every `x`.
pub fn constrained_autl<'g>(
    g: &'g Group,
    absolute_centre: &Subgroup<'g>,
    config: &AutConfig,
) -> Result<AutomorphismSet<'g>> {
    if !std::ptr::eq(absolute_centre.parent(), g) {
        return Err(Error::ParentMismatch);
    }
    let gens = g.generating_sequence();
    let candidates = gens
        .iter()
        .map(|&s| {
            let mut c: Vec<usize> = absolute_centre.elements().iter().map(|&l| g.mul(s, l)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let search = HomSearch { source: g, target: g, gens, candidates, injective: true };
    let elements = collect_bijections(&search, config)?;
    AutomorphismSet::from_elements(g, elements)
}

/// An isomorphism `G -> H` as an image array, if one exists.
pub fn find_isomorphism(g: &Group, h: &Group, deadline: &Deadline) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let (fg, fh) = (fingerprints(g), fingerprints(h));
    let (mut sg, mut sh) = (fg.clone(), fh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg.cmp(&sh) != Ordering::Equal {
        return Ok(None);
    }
    let gens = g.generating_sequence();
    let candidates = gens
        .iter()
        .map(|&s| (0..h.order()).filter(|&y| fh[y] == fg[s]).collect())
        .collect();
    let search = HomSearch { source: g, target: h, gens, candidates, injective: true };
    let mut found = None;
    search.run(deadline, &mut |map| {
        found = Some(map.iter().map(|&x| x as usize).collect());
        Ok(ControlFlow::Break(()))
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, dihedral, generalized_quaternion, heisenberg};

    #[test]
    fn small_automorphism_groups() {
        let c2 = cyclic(2).unwrap();
        assert_eq!(automorphism_group(&c2, &AutConfig::default()).unwrap().order(), 1);
        let t = cyclic(1).unwrap();
        let aut = automorphism_group(&t, &AutConfig::default()).unwrap();
        assert_eq!(aut.order(), 1);
        assert_eq!(absolute_centre(&aut).order(), 1);
    }

    #[test]
    fn enumeration_cap_reports_partial_count() {
        let q8 = generalized_quaternion(8).unwrap();
        let cfg = AutConfig { cap: 10, ..AutConfig::default() };
        match automorphism_group(&q8, &cfg) {
            Err(Error::EnumerationCapExceeded { cap: 10, attained }) => assert!(attained <= 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn timeout_is_reported() {
        let g = heisenberg(5).unwrap();
        let cfg = AutConfig {
            deadline: Deadline::after(std::time::Duration::ZERO),
            parallel: false,
            ..AutConfig::default()
        };
        assert!(matches!(automorphism_group(&g, &cfg), Err(Error::Timeout { .. })));
    }

    #[test]
    fn autocommutator_examples() {
        let q8 = generalized_quaternion(8).unwrap();
        let id = Automorphism::identity(8);
        assert!((0..8).all(|x| autocommutator(&q8, x, &id) == 0));
        // In the builder, a = 1 (order 4) and b = 4; conjugating a by b inverts it.
        let (i, j) = (1, 4);
        let conj = Automorphism::inner(&q8, j);
        let minus_one = q8.mul(i, i);
        assert_eq!(autocommutator(&q8, i, &conj), minus_one);
        let centre_elem = minus_one;
        assert_eq!(autocommutator(&q8, centre_elem, &conj), 0);
    }

    #[test]
    fn restriction_edge_cases() {
        let d8 = dihedral(8).unwrap();
        let aut = automorphism_group(&d8, &AutConfig::default()).unwrap();
        let whole = Subgroup::whole(&d8);
        let triv = Subgroup::trivial(&d8);
        assert_eq!(restricted_automorphisms(&aut, &whole, &triv).unwrap(), aut);
        assert_eq!(restricted_automorphisms(&aut, &triv, &triv).unwrap().order(), 1);
        let other = dihedral(8).unwrap();
        assert_eq!(
            restricted_automorphisms(&aut, &Subgroup::trivial(&other), &triv).unwrap_err(),
            Error::ParentMismatch
        );
    }

    #[test]
    fn non_closed_sets_are_rejected() {
        let c4 = cyclic(4).unwrap();
        let id = Automorphism::identity(4);
        let inv = Automorphism::from_images(&c4, &[0, 3, 2, 1]).unwrap();
        assert!(Automorphism::from_images(&c4, &[0, 2, 1, 3]).is_err());
        assert!(AutomorphismSet::from_elements(&c4, vec![inv.clone()]).is_err());
        let s = AutomorphismSet::from_elements(&c4, vec![id, inv]).unwrap();
        assert!(s.is_closed());
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn isomorphism_search() {
        let d8 = dihedral(8).unwrap();
        let q8 = generalized_quaternion(8).unwrap();
        let sd = crate::constructions::semidirect_cyclic(4, 2, 3).unwrap();
        assert!(find_isomorphism(&d8, &q8, &Deadline::none()).unwrap().is_none());
        let iso = find_isomorphism(&sd, &d8, &Deadline::none()).unwrap().unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(iso[sd.mul(x, y)], d8.mul(iso[x], iso[y]));
            }
        }
    }
}
