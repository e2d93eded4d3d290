//! Deliberately simple reference computations on raw multiplication tables.
//! Nothing here calls into the library beyond reading the table.

#![allow(dead_code)]

use std::collections::BTreeSet;

use autl_core::Group;

pub struct Table {
    pub n: usize,
    pub t: Vec<Vec<usize>>,
    pub e: usize,
}

impl Table {
    pub fn of(g: &Group) -> Table {
        let t = g.rows();
        let n = t.len();
        let e = (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x)).expect("identity");
        Table { n, t, e }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.t[a][b] == self.e).expect("inverse")
    }

    pub fn order_of(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.e {
            x = self.t[x][a];
            k += 1;
        }
        k
    }

    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[self.e] = true;
        let mut list = vec![self.e];
        let mut i = 0;
        while i < list.len() {
            for &s in gens {
                let y = self.t[list[i]][s];
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        inside
    }

    /// Greedy: keep adding the smallest element not yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        while let Some(x) = (0..self.n).find(|&x| !inside[x]) {
            gens.push(x);
            inside = self.closure(&gens);
        }
        gens
    }

    pub fn centre(&self) -> BTreeSet<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.t[z][x] == self.t[x][z]))
            .collect()
    }

    pub fn commutator_subgroup(&self) -> BTreeSet<usize> {
        let mut comms = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.push(c);
            }
        }
        members(&self.closure(&comms))
    }

    /// Every map `G -> H` that respects the full multiplication table,
    /// found by trying every image tuple for the generators.
    pub fn homs_into(&self, h: &Table, injective: bool) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        let total = h.n.pow(gens.len() as u32);
        for code in 0..total {
            let mut c = code;
            for slot in images.iter_mut() {
                *slot = c % h.n;
                c /= h.n;
            }
            if let Some(map) = self.extend(h, &gens, &images) {
                if injective && map.iter().collect::<BTreeSet<_>>().len() != self.n {
                    continue;
                }
                out.push(map);
            }
        }
        out.sort();
        out
    }

    fn extend(&self, h: &Table, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.e] = h.e;
        let mut queue = vec![self.e];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, &img) in gens.iter().zip(images) {
                let y = self.t[x][*s];
                if map[y] == usize::MAX {
                    map[y] = h.t[map[x]][img];
                    queue.push(y);
                }
            }
            i += 1;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.t[a][b]] != h.t[map[a]][map[b]] {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.homs_into(self, true)
    }

    pub fn inner(&self) -> BTreeSet<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|a| self.mul(self.mul(x, a), self.inv(x))).collect())
            .collect()
    }

    pub fn fixed_by_all(&self, auts: &[Vec<usize>]) -> BTreeSet<usize> {
        (0..self.n).filter(|&x| auts.iter().all(|a| a[x] == x)).collect()
    }

    /// Automorphisms moving every element within its coset of `l`.
    pub fn moving_within(&self, auts: &[Vec<usize>], l: &BTreeSet<usize>) -> BTreeSet<Vec<usize>> {
        auts.iter()
            .filter(|a| (0..self.n).all(|x| l.contains(&self.mul(self.inv(x), a[x]))))
            .cloned()
            .collect()
    }
}

pub fn members(mask: &[bool]) -> BTreeSet<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Counts of each element order, sorted.
pub fn order_statistics(t: &Table) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for x in 0..t.n {
        *counts.entry(t.order_of(x)).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}
