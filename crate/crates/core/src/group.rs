//! Finite groups stored as Cayley tables, with the subgroup and quotient
//! machinery the rest of the crate builds on.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Products
//! are read from a flat `order * order` table, so every operation here is exact
//! and deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{lcm, prime_power};
use crate::error::{Error, Result};

/// Largest group order the crate accepts.
pub const MAX_ORDER: usize = 2048;

/// Default cap on the closure built by [`group_from_permutations`].
pub const DEFAULT_CLOSURE_CAP: usize = 2048;

/// Tables up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

/// Sampled associativity checks use `ASSOCIATIVITY_SAMPLES_PER_SQUARE * n^2` triples.
const ASSOCIATIVITY_SAMPLES_PER_SQUARE: usize = 10;

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    elem_order: Vec<u32>,
    label: String,
    gen_hint: Option<Vec<usize>>,
    generating_sequence: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a flat row-major table, re-verifying every group
    /// axiom. Index 0 must be the identity.
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::InvalidTable(format!(
                "order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|&x| x >= order) {
            return Err(Error::InvalidTable(format!(
                "entry ({}, {}) = {} is out of range",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
        let table: Vec<u16> = table.into_iter().map(|x| x as u16).collect();
        Group::assemble(label.into(), order, table, true)
    }

    /// Same as [`Group::from_table`] but takes one `Vec` per row.
    pub fn from_rows(label: impl Into<String>, rows: &[Vec<usize>]) -> Result<Group> {
        let order = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(Error::InvalidTable(format!(
                "row {i} has {} entries, expected {order}",
                r.len()
            )));
        }
        Group::from_table(label, order, rows.concat())
    }

    /// Identity, Latin-square, inverse and (optionally) associativity checks;
    /// computes inverses and orders.
    fn assemble(label: String, order: usize, table: Vec<u16>, check_associativity: bool) -> Result<Group> {
        let n = order;
        for i in 0..n {
            if table[i] as usize != i || table[i * n] as usize != i {
                return Err(Error::InvalidTable(format!(
                    "identity: index 0 is not a two-sided identity at element {i}"
                )));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = table[i * n + j] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!(
                        "latin square: row {i} repeats element {x}"
                    )));
                }
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!(
                        "latin square: column {j} repeats element {x}"
                    )));
                }
            }
        }
        let mut inverse = vec![0u16; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("latin row contains the identity");
            if table[j * n + i] != 0 {
                return Err(Error::InvalidTable(format!(
                    "inverse: right inverse {j} of {i} is not a left inverse"
                )));
            }
            inverse[i] = j as u16;
        }
        if check_associativity {
            associativity(n, &table)?;
        }
        let mut elem_order = vec![0u32; n];
        for i in 0..n {
            let mut y = i;
            let mut k = 1u32;
            while y != 0 {
                y = table[y * n + i] as usize;
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidTable(format!(
                        "element order: powers of {i} never reach the identity"
                    )));
                }
            }
            if !n.is_multiple_of(k as usize) {
                return Err(Error::InvalidTable(format!(
                    "element order: order {k} of element {i} does not divide {n}"
                )));
            }
            elem_order[i] = k;
        }
        Ok(Group {
            order,
            table,
            inverse,
            elem_order,
            label,
            gen_hint: None,
            generating_sequence: OnceLock::new(),
        })
    }

    /// Re-runs the full invariant suite on an existing group.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Group::assemble(self.label.clone(), self.order, self.table.clone(), true)?;
        if rebuilt.inverse != self.inverse || rebuilt.elem_order != self.elem_order {
            return Err(Error::InvalidTable("cached inverses or orders are stale".into()));
        }
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn with_gen_hint(mut self, gens: Vec<usize>) -> Group {
        self.gen_hint = Some(gens);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gen_hint(&self) -> Option<&[usize]> {
        self.gen_hint.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn elem_orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.elem_order.iter().map(|&o| o as u64)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.elem_order(a) as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `x a x^-1`
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Raw table bytes (little-endian `u16` entries), the input to cache keys.
    pub fn table_bytes(&self) -> Vec<u8> {
        self.table.iter().flat_map(|x| x.to_le_bytes()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        self.elem_orders().fold(1, lcm)
    }

    /// The prime `p` when the order is `p^k` with `k >= 1`; the trivial group has none.
    pub fn is_p_group(&self) -> Option<u64> {
        prime_power(self.order as u64).map(|(p, _)| p)
    }

    pub fn is_cyclic(&self) -> bool {
        self.elem_order.iter().any(|&o| o as usize == self.order)
    }

    /// Greedy generating sequence: each step adds the element whose adjunction
    /// grows the generated subgroup the most, lowest index on ties.
    pub fn generating_sequence(&self) -> &[usize] {
        self.generating_sequence.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut current = Subgroup::trivial(self);
            while current.order() < self.order {
                let mut best: Option<(usize, Subgroup<'_>)> = None;
                let mut covered = vec![false; self.order];
                for x in 0..self.order {
                    if current.contains(x) || covered[x] {
                        continue;
                    }
                    let mut trial = gens.clone();
                    trial.push(x);
                    let candidate = Subgroup::generated(self, trial);
                    // Anything inside <current, x> can only tie or lose to x.
                    for &y in candidate.elements() {
                        if y > x {
                            covered[y] = true;
                        }
                    }
                    if best.as_ref().is_none_or(|(_, b)| candidate.order() > b.order()) {
                        let full = candidate.order() == self.order;
                        best = Some((x, candidate));
                        if full {
                            break;
                        }
                    }
                }
                let (x, next) = best.expect("a proper subgroup misses some element");
                gens.push(x);
                current = next;
            }
            gens
        })
    }

    pub fn centre(&self) -> Subgroup<'_> {
        let n = self.order;
        let members: Vec<bool> = (0..n)
            .map(|z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_closed_members(self, members)
    }

    pub fn derived_subgroup(&self) -> Subgroup<'_> {
        let whole = Subgroup::whole(self);
        commutator_subgroup(&whole, &whole)
    }

    /// Subgroup generated by all `m`-th powers.
    pub fn power_subgroup(&self, m: u64) -> Subgroup<'_> {
        let mut seen = vec![false; self.order];
        for g in 0..self.order {
            seen[self.pow(g, m)] = true;
        }
        Subgroup::generated(self, (0..self.order).filter(|&x| seen[x]))
    }

    /// Length of the lower central series down to the trivial subgroup.
    pub fn nilpotency_class(&self) -> Result<usize> {
        let whole = Subgroup::whole(self);
        let mut term = whole.clone();
        let mut class = 0;
        while term.order() > 1 {
            let next = commutator_subgroup(&term, &whole);
            if next.order() == term.order() {
                return Err(Error::NotNilpotent { stalled_at: term.order() });
            }
            term = next;
            class += 1;
        }
        Ok(class)
    }

    /// Quotient by a normal subgroup. Cosets are numbered in order of their
    /// smallest member, so the identity coset is 0.
    pub fn quotient<'g>(&'g self, kernel: &Subgroup<'g>) -> Result<QuotientMap<'g>> {
        if !std::ptr::eq(kernel.parent, self) {
            return Err(Error::ParentMismatch);
        }
        if !kernel.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = self.order;
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / kernel.order());
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            for &k in kernel.elements() {
                projection[self.mul(x, k)] = id;
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)]);
            }
        }
        let label = format!("{}/N{}", self.label, kernel.order());
        let image = Group::from_table(label, m, table)?;
        Ok(QuotientMap {
            source: self,
            kernel: kernel.clone(),
            image,
            projection,
        })
    }
}

/// Exhaustive up to order 256, `10 n^2` seeded random triples above.
fn associativity(n: usize, table: &[u16]) -> Result<()> {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let fail = |i: usize, j: usize, k: usize| {
        Err(Error::InvalidTable(format!("associativity fails for triple ({i}, {j}, {k})")))
    };
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for i in 0..n {
            for j in 0..n {
                let ij = mul(i, j);
                for k in 0..n {
                    if mul(ij, k) != mul(i, mul(j, k)) {
                        return fail(i, j, k);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..ASSOCIATIVITY_SAMPLES_PER_SQUARE * n * n {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if mul(mul(i, j), k) != mul(i, mul(j, k)) {
                return fail(i, j, k);
            }
        }
    }
    Ok(())
}

/// `[A, B]`: the subgroup generated by commutators `[a, b]`.
fn commutator_subgroup<'g>(a: &Subgroup<'g>, b: &Subgroup<'g>) -> Subgroup<'g> {
    let g = a.parent;
    let mut seen = vec![false; g.order()];
    for &x in a.elements() {
        for &y in b.elements() {
            seen[g.commutator(x, y)] = true;
        }
    }
    Subgroup::generated(g, (0..g.order()).filter(|&x| seen[x]))
}

/// A subgroup of a parent group, stored as a membership bitset plus the
/// sorted member list.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g Group,
    members: Vec<bool>,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.label)
            .field("elements", &self.elements)
            .finish()
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl<'g> Subgroup<'g> {
    pub fn trivial(parent: &'g Group) -> Subgroup<'g> {
        let mut members = vec![false; parent.order()];
        members[0] = true;
        Subgroup { parent, members, elements: vec![0] }
    }

    pub fn whole(parent: &'g Group) -> Subgroup<'g> {
        Subgroup {
            parent,
            members: vec![true; parent.order()],
            elements: (0..parent.order()).collect(),
        }
    }

    /// Worklist closure of `gens` under right multiplication. Generators
    /// already inside the running subgroup are skipped.
    pub fn generated(parent: &'g Group, gens: impl IntoIterator<Item = usize>) -> Subgroup<'g> {
        let mut members = vec![false; parent.order()];
        members[0] = true;
        let mut elements = vec![0];
        let mut accepted: Vec<usize> = Vec::new();
        for s in gens {
            if members[s] {
                continue;
            }
            accepted.push(s);
            let mut i = 0;
            while i < elements.len() {
                let x = elements[i];
                for &t in &accepted {
                    let y = parent.mul(x, t);
                    if !members[y] {
                        members[y] = true;
                        elements.push(y);
                    }
                }
                i += 1;
            }
        }
        elements.sort_unstable();
        Subgroup { parent, members, elements }
    }

    /// Trusts the caller that `members` is already a subgroup.
    pub(crate) fn from_closed_members(parent: &'g Group, members: Vec<bool>) -> Subgroup<'g> {
        let elements = (0..members.len()).filter(|&i| members[i]).collect();
        Subgroup { parent, members, elements }
    }

    /// Checked constructor from an arbitrary element set.
    pub fn from_elements(parent: &'g Group, elems: &[usize]) -> Result<Subgroup<'g>> {
        let mut members = vec![false; parent.order()];
        for &e in elems {
            if e >= parent.order() {
                return Err(Error::InvalidParameter(format!("element {e} out of range")));
            }
            members[e] = true;
        }
        let sub = Subgroup::from_closed_members(parent, members);
        sub.check_closed()?;
        Ok(sub)
    }

    /// Contains the identity, closed under products and inverses, Lagrange.
    pub fn check_closed(&self) -> Result<()> {
        let g = self.parent;
        if !self.members[0] {
            return Err(Error::InvalidParameter("subgroup misses the identity".into()));
        }
        for &a in &self.elements {
            if !self.members[g.inv(a)] {
                return Err(Error::InvalidParameter(format!("inverse of {a} missing")));
            }
            for &b in &self.elements {
                if !self.members[g.mul(a, b)] {
                    return Err(Error::InvalidParameter(format!("product {a}*{b} escapes")));
                }
            }
        }
        if !g.order().is_multiple_of(self.order()) {
            return Err(Error::InvalidParameter("order does not divide the parent order".into()));
        }
        Ok(())
    }

    pub fn parent(&self) -> &'g Group {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup<'g>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn join(&self, other: &Subgroup<'g>) -> Result<Subgroup<'g>> {
        if !std::ptr::eq(self.parent, other.parent) {
            return Err(Error::ParentMismatch);
        }
        Ok(Subgroup::generated(
            self.parent,
            self.elements.iter().chain(other.elements.iter()).copied(),
        ))
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&a| self.contains(g.conjugate(a, x))))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|&x| self.parent.elem_order(x) == self.order())
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.parent;
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .map(|&x| self.parent.elem_order(x) as u64)
            .fold(1, lcm)
    }

    /// Re-indexes the subgroup as a standalone group (members in increasing
    /// parent index order, so the identity stays at 0).
    pub fn to_group(&self, label: impl Into<String>) -> Group {
        let g = self.parent;
        let index: HashMap<usize, usize> =
            self.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = self.order();
        let mut table = Vec::with_capacity(m * m);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(index[&g.mul(a, b)]);
            }
        }
        let table = table.into_iter().map(|x| x as u16).collect();
        Group::assemble(label.into(), m, table, false)
            .expect("a closed subset of a group is a group")
    }
}

/// A projection `G -> G/N` together with the quotient group.
#[derive(Debug, Clone)]
pub struct QuotientMap<'g> {
    source: &'g Group,
    kernel: Subgroup<'g>,
    image: Group,
    projection: Vec<usize>,
}

impl<'g> QuotientMap<'g> {
    pub fn source(&self) -> &'g Group {
        self.source
    }

    pub fn kernel(&self) -> &Subgroup<'g> {
        &self.kernel
    }

    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn into_image(self) -> Group {
        self.image
    }
}

/// Closure of permutation generators under composition. The product `x * y`
/// applies `x` first, then `y`. Elements are numbered in BFS order from the
/// identity.
pub fn group_from_permutations(
    label: impl Into<String>,
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<Group> {
    for (k, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {k} has length {}, expected degree {degree}",
                g.len()
            )));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "generator {k} is not a bijection of 0..{degree}"
                )));
            }
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for s in generators {
            let p = compose(&elements[i], s);
            if !index.contains_key(&p) {
                if elements.len() >= cap.min(MAX_ORDER) {
                    return Err(Error::ClosureCapExceeded { cap: cap.min(MAX_ORDER) });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&compose(a, b)]);
        }
    }
    let hint = generators.iter().map(|s| index[s]).collect();
    Ok(Group::from_table(label, n, table)?.with_gen_hint(hint))
}
