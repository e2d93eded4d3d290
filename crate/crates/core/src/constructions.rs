//! Deterministic builders for the small p-groups the verification corpus
//! uses. Every table is written straight from a normal form `a^i b^j ...`
//! and then passes through the checked [`Group::from_table`] constructor.

use crate::arith::{factorize, gcd, is_prime, pow_mod, prime_power};
use crate::error::{Error, Result};
use crate::group::{Group, MAX_ORDER};

fn build(label: String, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Group> {
    if n > MAX_ORDER {
        return Err(Error::InvalidParameter(format!("order {n} exceeds {MAX_ORDER}")));
    }
    let table = (0..n * n).map(|k| mul(k / n, k % n)).collect();
    Group::from_table(label, n, table)
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    build(format!("C{n}"), n, |a, b| (a + b) % n)
}

/// `(g, h)` is stored at index `g * |H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Group {
    let m = h.order();
    let n = g.order() * m;
    build(format!("{}x{}", g.label(), h.label()), n, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
    .expect("direct product of groups is a group")
}

/// Dihedral group of order `order = 2n`, elements `r^i s^j` at `i + n j`.
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("dihedral order {order} must be even and >= 4")));
    }
    let n = order / 2;
    build(format!("D{order}"), order, |x, y| {
        let (i, a) = (x % n, x / n);
        let (k, b) = (y % n, y / n);
        let k = if a == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((a + b) % 2)
    })
}

/// `<a, b | a^(2^(k-1)), b^2 = a^(2^(k-2)), b a b^-1 = a^-1>` of order `2^k`, `k >= 3`.
pub fn generalized_quaternion(order: usize) -> Result<Group> {
    match prime_power(order as u64) {
        Some((2, k)) if k >= 3 => {}
        _ => {
            return Err(Error::InvalidParameter(format!(
                "generalized quaternion order {order} must be 2^k with k >= 3"
            )))
        }
    }
    let n = order / 2;
    build(format!("Q{order}"), order, |x, y| {
        let (i, a) = (x % n, x / n);
        let (k, b) = (y % n, y / n);
        let k = if a == 1 { (n - k) % n } else { k };
        let twist = if a == 1 && b == 1 { n / 2 } else { 0 };
        (i + k + twist) % n + n * ((a + b) % 2)
    })
}

/// `C_m ⋊ C_n` with `b a b^-1 = a^k`; needs `gcd(k, m) = 1` and `k^n = 1 mod m`.
/// Elements `a^i b^j` sit at `i + m j`.
pub fn semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<Group> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("factor orders must be positive".into()));
    }
    let (m64, n64, k64) = (m as u64, n as u64, k as u64);
    if gcd(k64 % m64, m64) != 1 || pow_mod(k64, n64, m64) != 1 % m64 {
        return Err(Error::InvalidParameter(format!(
            "a -> a^{k} is not an automorphism of order dividing {n} on C{m}"
        )));
    }
    let powers: Vec<usize> = (0..n).map(|j| pow_mod(k64, j as u64, m64) as usize).collect();
    build(format!("C{m}:C{n}"), m * n, |x, y| {
        let (i, j) = (x % m, x / m);
        let (u, v) = (y % m, y / m);
        (i + powers[j] * u) % m + m * ((j + v) % n)
    })
}

/// Extraspecial group of order `p^3` and exponent `p` (unitriangular 3x3
/// matrices over `F_p`), `p` odd.
pub fn heisenberg(p: usize) -> Result<Group> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("heisenberg({p}) needs an odd prime")));
    }
    // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b'), stored a + p b + p^2 c.
    build(format!("heisenberg{p}"), p * p * p, |x, y| {
        let (a, b, c) = (x % p, x / p % p, x / (p * p));
        let (a2, b2, c2) = (y % p, y / p % p, y / (p * p));
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    })
}

/// Extraspecial group of order `p^3` and exponent `p^2`, `p` odd:
/// `C_{p^2} ⋊ C_p` with `a -> a^(1+p)`.
pub fn extraspecial_p2(p: usize) -> Result<Group> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("extraspecial_p2({p}) needs an odd prime")));
    }
    Ok(semidirect_cyclic(p * p, p, 1 + p)?.with_label(format!("extraspecial{}", p * p * p)))
}

/// Modular group `M_{p^k} = <a, b | a^(p^(k-1)), b^p, b a b^-1 = a^(1 + p^(k-2))>`,
/// `k >= 4` for `p = 2` and `k >= 3` for odd `p`.
pub fn modular_group(order: usize) -> Result<Group> {
    let (p, k) = prime_power(order as u64)
        .ok_or_else(|| Error::InvalidParameter(format!("modular group order {order} is not a prime power")))?;
    if (p == 2 && k < 4) || k < 3 {
        return Err(Error::InvalidParameter(format!("modular group order {order} is too small")));
    }
    let p = p as usize;
    let m = order / p;
    Ok(semidirect_cyclic(m, p, 1 + m / p)?.with_label(format!("M{order}")))
}

fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// Product of cyclic groups in the given order.
pub fn abelian_from_factors(factors: &[u64]) -> Result<Group> {
    let mut g = cyclic(1)?;
    for (i, &d) in factors.iter().enumerate() {
        let c = cyclic(d as usize)?;
        g = if i == 0 { c } else { direct_product(&g, &c) };
    }
    Ok(g)
}

/// Every abelian group of order at most `max_order`, one per isomorphism
/// class, listed by order and then by invariant factors.
pub fn abelian_inventory(max_order: usize) -> Vec<Group> {
    let mut out = Vec::new();
    for n in 1..=max_order.min(MAX_ORDER) {
        let primes = factorize(n as u64);
        // One partition per prime, combined by cartesian product.
        let mut combos: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
        for &(p, e) in &primes {
            let mut next = Vec::new();
            for combo in &combos {
                for part in partitions(e) {
                    let mut c = combo.clone();
                    c.push(part.iter().map(|&x| p.pow(x)).collect());
                    next.push(c);
                }
            }
            combos = next;
        }
        for combo in combos {
            let inv = crate::abelian::AbelianInvariants::from_cyclic_factors(combo.into_iter().flatten());
            let g = abelian_from_factors(inv.factors()).expect("valid cyclic orders");
            let label = if inv.factors().is_empty() {
                "C1".to_string()
            } else {
                inv.factors().iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
            };
            out.push(g.with_label(label));
        }
    }
    out
}

/// Abelian p-groups from [`abelian_inventory`].
pub fn abelian_p_groups(max_order: usize) -> Vec<Group> {
    abelian_inventory(max_order)
        .into_iter()
        .filter(|g| g.is_p_group().is_some())
        .collect()
}

/// A named entry of the built-in corpus.
pub struct Builtin {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub order: usize,
    build: fn() -> Result<Group>,
}

impl Builtin {
    pub fn build(&self) -> Result<Group> {
        Ok((self.build)()?.with_label(self.name))
    }
}

fn product(a: Result<Group>, b: Result<Group>) -> Result<Group> {
    Ok(direct_product(&a?, &b?))
}

macro_rules! builtin {
    ($name:expr, $order:expr, [$($alias:expr),*], $body:expr) => {
        Builtin { name: $name, aliases: &[$($alias),*], order: $order, build: || $body }
    };
}

/// The built-in corpus, ordered by group order. Entries are pairwise
/// non-isomorphic.
pub static BUILTINS: &[Builtin] = &[
    builtin!("C2", 2, [], cyclic(2)),
    builtin!("C3", 3, [], cyclic(3)),
    builtin!("C4", 4, [], cyclic(4)),
    builtin!("C2xC2", 4, ["V4"], abelian_from_factors(&[2, 2])),
    builtin!("C6", 6, [], cyclic(6)),
    builtin!("S3", 6, ["D6"], dihedral(6)),
    builtin!("C8", 8, [], cyclic(8)),
    builtin!("C4xC2", 8, [], abelian_from_factors(&[4, 2])),
    builtin!("C2xC2xC2", 8, [], abelian_from_factors(&[2, 2, 2])),
    builtin!("D8", 8, ["dihedral8"], dihedral(8)),
    builtin!("Q8", 8, ["quaternion8"], generalized_quaternion(8)),
    builtin!("C9", 9, [], cyclic(9)),
    builtin!("C3xC3", 9, [], abelian_from_factors(&[3, 3])),
    builtin!("C3:C4", 12, ["dicyclic12"], semidirect_cyclic(3, 4, 2)),
    builtin!("C16", 16, [], cyclic(16)),
    builtin!("C8xC2", 16, [], abelian_from_factors(&[8, 2])),
    builtin!("C4xC4", 16, [], abelian_from_factors(&[4, 4])),
    builtin!("C4xC2xC2", 16, [], abelian_from_factors(&[4, 2, 2])),
    builtin!("D16", 16, ["dihedral16"], dihedral(16)),
    builtin!("Q16", 16, ["quaternion16"], generalized_quaternion(16)),
    builtin!("SD16", 16, ["semidihedral16"], semidirect_cyclic(8, 2, 3)),
    builtin!("M16", 16, ["modular16"], modular_group(16)),
    builtin!("C4:C4", 16, [], semidirect_cyclic(4, 4, 3)),
    builtin!("D8xC2", 16, [], product(dihedral(8), cyclic(2))),
    builtin!("Q8xC2", 16, [], product(generalized_quaternion(8), cyclic(2))),
    builtin!("C27", 27, [], cyclic(27)),
    builtin!("C9xC3", 27, [], abelian_from_factors(&[9, 3])),
    builtin!("heisenberg3", 27, ["extraspecial27a"], heisenberg(3)),
    builtin!("extraspecial27", 27, ["M27", "extraspecial27b"], extraspecial_p2(3)),
    builtin!("D32", 32, ["dihedral32"], dihedral(32)),
    builtin!("Q32", 32, ["quaternion32"], generalized_quaternion(32)),
    builtin!("SD32", 32, ["semidihedral32"], semidirect_cyclic(16, 2, 7)),
    builtin!("M32", 32, ["modular32"], modular_group(32)),
    builtin!("C8:C4", 32, [], semidirect_cyclic(8, 4, 5)),
    builtin!("C4:C8", 32, [], semidirect_cyclic(4, 8, 3)),
    builtin!("D8xC4", 32, [], product(dihedral(8), cyclic(4))),
    builtin!("Q8xC4", 32, [], product(generalized_quaternion(8), cyclic(4))),
    builtin!("D64", 64, ["dihedral64"], dihedral(64)),
    builtin!("Q64", 64, ["quaternion64"], generalized_quaternion(64)),
    builtin!("SD64", 64, ["semidihedral64"], semidirect_cyclic(32, 2, 15)),
    builtin!("M64", 64, ["modular64"], modular_group(64)),
    builtin!("C8:C8", 64, [], semidirect_cyclic(8, 8, 5)),
    builtin!("C16:C4", 64, [], semidirect_cyclic(16, 4, 5)),
    builtin!("M81", 81, ["modular81"], modular_group(81)),
    builtin!("C9:C9", 81, [], semidirect_cyclic(9, 9, 4)),
    builtin!("heisenberg3xC3", 81, [], product(heisenberg(3), cyclic(3))),
    builtin!("extraspecial27xC3", 81, [], product(extraspecial_p2(3), cyclic(3))),
    builtin!("heisenberg5", 125, ["extraspecial125a"], heisenberg(5)),
    builtin!("extraspecial125", 125, ["M125", "extraspecial125b"], extraspecial_p2(5)),
    builtin!("M243", 243, ["modular243"], modular_group(243)),
    builtin!("C27:C9", 243, [], semidirect_cyclic(27, 9, 4)),
];

/// Looks up a built-in group by name or alias (case-insensitive).
pub fn builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| {
        b.name.eq_ignore_ascii_case(name) || b.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    })
}

/// Every built-in group of order at most `max_order`, in corpus order.
pub fn builtin_corpus(max_order: usize) -> Result<Vec<Group>> {
    BUILTINS
        .iter()
        .filter(|b| b.order <= max_order)
        .map(Builtin::build)
        .collect()
}
