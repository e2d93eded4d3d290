//! Finite abelian groups up to isomorphism: invariant factors, rank and
//! `Hom` groups, computed both by the gcd formula and by exhaustive
//! enumeration of homomorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, prime_power, valuation};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::search::{Deadline, HomSearch};

/// Default cap on candidate maps visited by [`brute_force_homs`].
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 16;

/// Invariant factors `d_1 | d_2 | ... | d_k`, all `d_i >= 2`. Empty for the
/// trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants { factors: Vec::new() }
    }

    /// Checked constructor from an explicit divisor chain.
    pub fn new(factors: Vec<u64>) -> Result<AbelianInvariants> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameter("invariant factors must be >= 2".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidParameter(format!("{factors:?} is not a divisor chain")));
        }
        Ok(AbelianInvariants { factors })
    }

    /// Normalises any multiset of cyclic orders `C_{m_1} x ... x C_{m_t}` into
    /// invariant factor form. Entries equal to 1 are dropped.
    pub fn from_cyclic_factors(orders: impl IntoIterator<Item = u64>) -> AbelianInvariants {
        let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for m in orders {
            for (p, e) in factorize(m) {
                primary.entry(p).or_default().push(p.pow(e));
            }
        }
        AbelianInvariants::merge_primary(primary)
    }

    /// Largest primary parts pair with each other (CRT), giving `d_k` first.
    fn merge_primary(mut primary: BTreeMap<u64, Vec<u64>>) -> AbelianInvariants {
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        for parts in primary.values_mut() {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut factors: Vec<u64> = (0..len)
            .map(|i| primary.values().filter_map(|parts| parts.get(i)).product())
            .collect();
        factors.reverse();
        AbelianInvariants { factors }
    }

    /// Recovers invariants from the element orders of an abelian group: for
    /// each prime `p` the counts `#{x : x^(p^k) = 1}` fix the p-primary type.
    pub fn from_element_orders(orders: &[u64]) -> Result<AbelianInvariants> {
        let n = orders.len() as u64;
        let mut primary = BTreeMap::new();
        for (p, e) in factorize(n) {
            let vals: Vec<u32> = orders.iter().map(|&o| valuation(o, p)).collect();
            // counts[k] = #{x : p-part of ord(x) divides p^k}
            let counts: Vec<u64> = (0..=e)
                .map(|k| vals.iter().filter(|&&v| v <= k).count() as u64)
                .collect();
            let mut at_least = Vec::new(); // at_least[k-1] = #factors with exponent >= k
            for k in 1..=e as usize {
                let ratio = counts[k] / counts[k - 1];
                if !counts[k].is_multiple_of(counts[k - 1]) {
                    return Err(Error::InvalidParameter("element orders are not those of an abelian group".into()));
                }
                match prime_power(ratio) {
                    Some((q, t)) if q == p => at_least.push(t as usize),
                    None if ratio == 1 => at_least.push(0),
                    _ => {
                        return Err(Error::InvalidParameter(
                            "element orders are not those of an abelian group".into(),
                        ))
                    }
                }
            }
            if counts[e as usize] != n {
                return Err(Error::InvalidParameter("order census is inconsistent".into()));
            }
            let mut parts = Vec::new();
            for k in 1..=e as usize {
                let exactly = at_least[k - 1]
                    .checked_sub(at_least.get(k).copied().unwrap_or(0))
                    .ok_or_else(|| Error::InvalidParameter("order census is inconsistent".into()))?;
                parts.extend(std::iter::repeat_n(p.pow(k as u32), exactly));
            }
            primary.insert(p, parts);
        }
        let inv = AbelianInvariants::merge_primary(primary);
        if inv.order() != n as u128 {
            return Err(Error::InvalidParameter("element orders are not those of an abelian group".into()));
        }
        Ok(inv)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Number of invariant factors (minimal generator count).
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

/// Invariant factors of an abelian group.
pub fn abelian_invariants(g: &Group) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders: Vec<u64> = g.elem_orders().collect();
    AbelianInvariants::from_element_orders(&orders)
}

/// Invariant factors of an abelian subgroup.
pub fn subgroup_invariants(s: &Subgroup<'_>) -> Result<AbelianInvariants> {
    if !s.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let g = s.parent();
    let orders: Vec<u64> = s.elements().iter().map(|&x| g.elem_order(x) as u64).collect();
    AbelianInvariants::from_element_orders(&orders)
}

/// Rank of an abelian p-group (0 for the trivial group).
pub fn rank(g: &Group) -> Result<usize> {
    let inv = abelian_invariants(g)?;
    if g.order() > 1 && g.is_p_group().is_none() {
        return Err(Error::NotPGroup);
    }
    Ok(inv.num_factors())
}

/// `|Hom(A, B)| = prod_{i,j} gcd(d_i, e_j)`.
pub fn hom_order(a: &AbelianInvariants, b: &AbelianInvariants) -> u128 {
    a.factors
        .iter()
        .flat_map(|&d| b.factors.iter().map(move |&e| gcd(d, e) as u128))
        .product()
}

/// Invariant factors of `Hom(A, B)`: `Hom(C_d, C_e) = C_gcd(d,e)` summed over
/// all pairs.
pub fn hom_invariants(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_factors(
        a.factors
            .iter()
            .flat_map(|&d| b.factors.iter().map(move |&e| gcd(d, e))),
    )
}

/// `Hom(A, B)` described as an abstract abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDescriptor {
    pub source_invariants: AbelianInvariants,
    pub target_invariants: AbelianInvariants,
    pub hom_invariants: AbelianInvariants,
    pub hom_order: u128,
}

impl HomDescriptor {
    pub fn new(source: &AbelianInvariants, target: &AbelianInvariants) -> HomDescriptor {
        HomDescriptor {
            source_invariants: source.clone(),
            target_invariants: target.clone(),
            hom_invariants: hom_invariants(source, target),
            hom_order: hom_order(source, target),
        }
    }
}

/// Every homomorphism `A -> B`, found by assigning images to a generating
/// sequence of `A` and pruning on relation conflicts. The image of generator
/// `g` must have order dividing `ord(g)`.
///
/// `cap` bounds the product of per-generator candidate counts.
pub fn brute_force_homs(a: &Group, b: &Group, cap: u128) -> Result<Vec<Vec<usize>>> {
    if !a.is_abelian() && !b.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let gens = a.generating_sequence();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.elem_order(g);
            (0..b.order()).filter(|&y| o.is_multiple_of(b.elem_order(y))).collect()
        })
        .collect();
    let search = HomSearch { source: a, target: b, gens, candidates, injective: false };
    let candidates = search.candidate_product();
    if candidates > cap {
        return Err(Error::OracleCapExceeded { candidates, cap });
    }
    let mut out = Vec::new();
    search.run(&Deadline::none(), &mut |map| {
        out.push(map.iter().map(|&x| x as usize).collect());
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// Invariants of a set of maps into an abelian group under pointwise product.
pub fn pointwise_hom_invariants(b: &Group, homs: &[Vec<usize>]) -> Result<AbelianInvariants> {
    if !b.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders: Vec<u64> = homs
        .iter()
        .map(|f| f.iter().map(|&y| b.elem_order(y) as u64).fold(1, crate::arith::lcm))
        .collect();
    AbelianInvariants::from_element_orders(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, direct_product};

    fn inv(f: &[u64]) -> AbelianInvariants {
        AbelianInvariants::new(f.to_vec()).unwrap()
    }

    #[test]
    fn normalisation_merges_primes() {
        assert_eq!(AbelianInvariants::from_cyclic_factors([2, 3]), inv(&[6]));
        assert_eq!(AbelianInvariants::from_cyclic_factors([2, 4, 1, 3]), inv(&[2, 12]));
        assert_eq!(AbelianInvariants::from_cyclic_factors([1, 1]), AbelianInvariants::trivial());
        assert!(AbelianInvariants::new(vec![4, 2]).is_err());
        assert!(AbelianInvariants::new(vec![1]).is_err());
    }

    #[test]
    fn invariants_of_small_groups() {
        assert_eq!(abelian_invariants(&cyclic(1).unwrap()).unwrap(), AbelianInvariants::trivial());
        assert_eq!(abelian_invariants(&cyclic(6).unwrap()).unwrap(), inv(&[6]));
        let g = direct_product(&direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()), &cyclic(2).unwrap());
        assert_eq!(abelian_invariants(&g).unwrap(), inv(&[2, 2, 4]));
        assert_eq!(rank(&g).unwrap(), 3);
        assert_eq!(rank(&cyclic(9).unwrap()).unwrap(), 1);
        assert_eq!(rank(&cyclic(1).unwrap()).unwrap(), 0);
        assert_eq!(rank(&cyclic(6).unwrap()).unwrap_err(), Error::NotPGroup);
    }

    #[test]
    fn hom_examples() {
        let c4c2 = inv(&[2, 4]);
        let c8 = inv(&[8]);
        assert_eq!(hom_order(&AbelianInvariants::trivial(), &c8), 1);
        assert_eq!(hom_order(&c4c2, &c8), 8);
        assert_eq!(hom_order(&inv(&[2, 2]), &inv(&[2])), 4);
        assert_eq!(hom_invariants(&c4c2, &c8), c4c2);
        assert_eq!(hom_invariants(&c4c2, &AbelianInvariants::trivial()), AbelianInvariants::trivial());
        let d = HomDescriptor::new(&c4c2, &c8);
        assert_eq!(d.hom_invariants.order(), d.hom_order);
    }

    #[test]
    fn brute_force_examples() {
        let c2 = cyclic(2).unwrap();
        let c4 = cyclic(4).unwrap();
        let v4 = direct_product(&c2, &c2);
        let triv = cyclic(1).unwrap();
        assert_eq!(brute_force_homs(&c4, &c2, DEFAULT_ORACLE_CAP).unwrap().len(), 2);
        assert_eq!(brute_force_homs(&v4, &c2, DEFAULT_ORACLE_CAP).unwrap().len(), 4);
        assert_eq!(brute_force_homs(&c4, &triv, DEFAULT_ORACLE_CAP).unwrap().len(), 1);
        assert_eq!(brute_force_homs(&triv, &c4, DEFAULT_ORACLE_CAP).unwrap().len(), 1);
        assert!(matches!(
            brute_force_homs(&v4, &c2, 1),
            Err(Error::OracleCapExceeded { .. })
        ));
    }

    #[test]
    fn non_abelian_rejected() {
        let d8 = crate::constructions::dihedral(8).unwrap();
        assert_eq!(abelian_invariants(&d8).unwrap_err(), Error::NotAbelian);
        assert_eq!(brute_force_homs(&d8, &d8, DEFAULT_ORACLE_CAP).unwrap_err(), Error::NotAbelian);
    }
}
