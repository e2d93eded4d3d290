//! One checker per claim, each behind the [`Check`] trait and registered by
//! id in a [`CheckRegistry`].
//!
//! A checker returns `not_applicable` when the claim's hypotheses fail (the
//! `gate` names which one), `holds` when the claim is confirmed, and
//! `fails` with a witness otherwise.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{
    abelian_invariants, brute_force_homs, hom_invariants, hom_order, pointwise_hom_invariants,
    AbelianInvariants, DEFAULT_ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::group::Group;

use super::analysis::GroupAnalysis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// Reproducible description of a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub elements: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub automorphisms: Vec<Vec<usize>>,
    pub quantities: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub result_id: String,
    pub status: Status,
    /// The unmet hypothesis when `status` is `not_applicable`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(id: &str) -> Verdict {
        Verdict { result_id: id.into(), status: Status::Holds, gate: None, witness: None }
    }

    pub fn not_applicable(id: &str, gate: &str) -> Verdict {
        Verdict { result_id: id.into(), status: Status::NotApplicable, gate: Some(gate.into()), witness: None }
    }

    pub fn fails(id: &str, witness: Witness) -> Verdict {
        Verdict { result_id: id.into(), status: Status::Fails, gate: None, witness: Some(witness) }
    }

    fn decide(id: &str, ok: bool, witness: impl FnOnce() -> Witness) -> Verdict {
        if ok {
            Verdict::holds(id)
        } else {
            Verdict::fails(id, witness())
        }
    }
}

fn witness(group: &str, detail: &str, quantities: &[(&str, String)]) -> Witness {
    Witness {
        group: group.into(),
        detail: detail.into(),
        elements: Vec::new(),
        automorphisms: Vec::new(),
        quantities: quantities.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    }
}

/// A single verifiable claim about a group.
pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Names of every `not_applicable` gate this checker can report.
    fn gates(&self) -> &'static [&'static str] {
        &[]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict;
}

pub const GATE_NOT_P_GROUP: &str = "not-p-group";
pub const GATE_ABELIAN: &str = "abelian";
pub const GATE_NOT_CLASS_TWO: &str = "class-not-2";
pub const GATE_EXPONENT_BOUND: &str = "exp-quotient-exceeds-exp-absolute-centre";
pub const GATE_AUTL_NE_INN: &str = "autl-ne-inn";
pub const GATE_EVEN_PRIME: &str = "p-even";
pub const GATE_TRIVIAL_EXPONENT: &str = "exponent-one";
pub const GATE_SOURCE_NOT_ABELIAN_P: &str = "source-not-abelian-p-group";
pub const GATE_TARGET_NOT_CYCLIC: &str = "target-not-cyclic";
pub const GATE_EXPONENT_NOT_DIVIDING: &str = "exponent-not-dividing-target-order";
pub const GATE_JOIN_NOT_CENTRAL: &str = "join-not-in-centre";

fn p_group_gate(a: &GroupAnalysis<'_>) -> Option<&'static str> {
    if a.prime.is_none() {
        Some(GATE_NOT_P_GROUP)
    } else if !a.nonabelian {
        Some(GATE_ABELIAN)
    } else {
        None
    }
}

/// `Hom(H, K) ≅ H` for an abelian p-group `H` of exponent `p^c` and a cyclic
/// `K` with `p^c | |K|`. The formula answer is cross-checked against
/// exhaustive enumeration whenever the oracle fits under `oracle_cap`.
pub fn check_hom_into_cyclic(h: &Group, k: &Group, oracle_cap: u128) -> Verdict {
    const ID: &str = HomIntoCyclic::ID;
    let Some(p) = h.is_p_group() else {
        let gate = if h.order() == 1 { GATE_TRIVIAL_EXPONENT } else { GATE_SOURCE_NOT_ABELIAN_P };
        return Verdict::not_applicable(ID, gate);
    };
    let Ok(inv_h) = abelian_invariants(h) else {
        return Verdict::not_applicable(ID, GATE_SOURCE_NOT_ABELIAN_P);
    };
    if !k.is_cyclic() {
        return Verdict::not_applicable(ID, GATE_TARGET_NOT_CYCLIC);
    }
    let exp = h.exponent();
    debug_assert_eq!(exp % p, 0);
    if !(k.order() as u64).is_multiple_of(exp) {
        return Verdict::not_applicable(ID, GATE_EXPONENT_NOT_DIVIDING);
    }
    let inv_k = abelian_invariants(k).expect("cyclic groups are abelian");
    let formula = hom_invariants(&inv_h, &inv_k);
    let label = format!("{} -> {}", h.label(), k.label());
    if formula != inv_h {
        return Verdict::fails(
            ID,
            witness(&label, "Hom(H, K) invariants differ from those of H", &[
                ("hom_invariants", formula.to_string()),
                ("source_invariants", inv_h.to_string()),
            ]),
        );
    }
    match brute_force_homs(h, k, oracle_cap) {
        Ok(homs) => {
            let enumerated = pointwise_hom_invariants(k, &homs).ok();
            Verdict::decide(ID, homs.len() == h.order() && enumerated.as_ref() == Some(&inv_h), || {
                witness(&label, "enumerated Hom(H, K) disagrees with H", &[
                    ("enumerated_count", homs.len().to_string()),
                    ("source_order", h.order().to_string()),
                    (
                        "enumerated_invariants",
                        enumerated.map(|i| i.to_string()).unwrap_or_else(|| "not abelian".into()),
                    ),
                ])
            })
        }
        Err(Error::OracleCapExceeded { .. }) => Verdict::holds(ID),
        Err(e) => Verdict::fails(ID, witness(&label, &format!("oracle error: {e}"), &[])),
    }
}

/// Applies [`check_hom_into_cyclic`] to `H = G/Z(G)`, `K = L(G)`.
pub struct HomIntoCyclic;

impl HomIntoCyclic {
    pub const ID: &'static str = "hom-into-cyclic";
}

impl Check for HomIntoCyclic {
    fn id(&self) -> &'static str {
        Self::ID
    }

    fn description(&self) -> &'static str {
        "Hom(H, K) is isomorphic to H for abelian p-group H and cyclic K with exp(H) | |K| (H = G/Z, K = L)"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[
            GATE_TRIVIAL_EXPONENT,
            GATE_SOURCE_NOT_ABELIAN_P,
            GATE_TARGET_NOT_CYCLIC,
            GATE_EXPONENT_NOT_DIVIDING,
        ]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let k = a.absolute_centre.to_group(format!("L({})", a.group.label()));
        let h = a.mod_centre.clone().with_label(format!("{}/Z", a.group.label()));
        check_hom_into_cyclic(&h, &k, DEFAULT_ORACLE_CAP)
    }
}

/// `Aut_l(G) ≅ Hom(G/L(G), L(G))`, compared by order and by invariant factors.
pub struct AutlHomStructure;

impl Check for AutlHomStructure {
    fn id(&self) -> &'static str {
        "autl-hom-structure"
    }

    fn description(&self) -> &'static str {
        "Aut_l(G) is isomorphic to Hom(G/L(G), L(G))"
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let expected = hom_invariants(&a.ab_mod_absolute_centre, &a.inv_absolute_centre);
        let order = hom_order(&a.ab_mod_absolute_centre, &a.inv_absolute_centre);
        let actual = a.autl.abelian_invariants();
        let ok = actual.as_ref() == Ok(&expected) && a.autl.order() as u128 == order;
        Verdict::decide(self.id(), ok, || {
            witness(a.group.label(), "Aut_l(G) does not match Hom(G/L, L)", &[
                ("autl_order", a.autl.order().to_string()),
                ("hom_order", order.to_string()),
                ("autl_invariants", fmt_invariants(&actual)),
                ("hom_invariants", expected.to_string()),
            ])
        })
    }
}

/// `Aut^{L(G)}_{Z(G)}(G) ≅ Hom(G/Z(G), L(G))`.
pub struct AutlzHomStructure;

impl Check for AutlzHomStructure {
    fn id(&self) -> &'static str {
        "autlz-hom-structure"
    }

    fn description(&self) -> &'static str {
        "absolute central automorphisms fixing Z(G) are isomorphic to Hom(G/Z(G), L(G))"
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let expected = hom_invariants(&a.ab_mod_centre, &a.inv_absolute_centre);
        let actual = a.autlz.abelian_invariants();
        Verdict::decide(self.id(), actual.as_ref() == Ok(&expected), || {
            witness(a.group.label(), "Aut^L_Z(G) does not match Hom(G/Z, L)", &[
                ("autlz_order", a.autlz.order().to_string()),
                ("autlz_invariants", fmt_invariants(&actual)),
                ("hom_invariants", expected.to_string()),
            ])
        })
    }
}

fn fmt_invariants(r: &Result<AbelianInvariants>) -> String {
    match r {
        Ok(i) => i.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Shared gate and bound for the two lower-bound checkers.
struct LowerBound {
    r: usize,
    s: usize,
    /// `|G/Z(G)| p^{r(s-1)}`
    bound: u128,
}

fn lower_bound(a: &GroupAnalysis<'_>) -> Result<LowerBound, &'static str> {
    if let Some(gate) = p_group_gate(a) {
        return Err(gate);
    }
    if a.class != Some(2) {
        return Err(GATE_NOT_CLASS_TWO);
    }
    if a.exp_mod_centre() > a.exp_absolute_centre {
        return Err(GATE_EXPONENT_BOUND);
    }
    let p = a.prime.expect("gated on p-group") as u128;
    let r = a.ab_mod_centre.num_factors();
    let s = a.inv_absolute_centre.num_factors();
    let extra = p.checked_pow((r * s.saturating_sub(1)) as u32).unwrap_or(u128::MAX);
    let bound = (a.mod_centre.order() as u128).saturating_mul(extra);
    Ok(LowerBound { r, s, bound })
}

const LOWER_BOUND_GATES: &[&str] = &[GATE_NOT_P_GROUP, GATE_ABELIAN, GATE_NOT_CLASS_TWO, GATE_EXPONENT_BOUND];

/// `|Hom(G/Z, L)| >= |G/Z| p^{r(s-1)}` on class-2 groups with
/// `exp(G/Z) <= exp(L)`; also `r >= 2`.
pub struct HomLowerBound;

impl Check for HomLowerBound {
    fn id(&self) -> &'static str {
        "hom-lower-bound"
    }

    fn description(&self) -> &'static str {
        "|Hom(G/Z, L)| >= |G/Z| p^(r(s-1)) with r = rank(G/Z), s = rank(L), and r >= 2"
    }

    fn gates(&self) -> &'static [&'static str] {
        LOWER_BOUND_GATES
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let b = match lower_bound(a) {
            Ok(b) => b,
            Err(gate) => return Verdict::not_applicable(self.id(), gate),
        };
        let hom = hom_order(&a.ab_mod_centre, &a.inv_absolute_centre);
        Verdict::decide(self.id(), b.r >= 2 && hom >= b.bound, || {
            witness(a.group.label(), "lower bound on |Hom(G/Z, L)| violated", &[
                ("r", b.r.to_string()),
                ("s", b.s.to_string()),
                ("hom_order", hom.to_string()),
                ("bound", b.bound.to_string()),
            ])
        })
    }
}

/// `|Aut_l(G)| >= |G/Z| p^{r(s-1)}` under the same hypotheses.
pub struct AutlLowerBound;

impl Check for AutlLowerBound {
    fn id(&self) -> &'static str {
        "autl-lower-bound"
    }

    fn description(&self) -> &'static str {
        "|Aut_l(G)| >= |G/Z| p^(r(s-1)) with r = rank(G/Z), s = rank(L), and r >= 2"
    }

    fn gates(&self) -> &'static [&'static str] {
        LOWER_BOUND_GATES
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let b = match lower_bound(a) {
            Ok(b) => b,
            Err(gate) => return Verdict::not_applicable(self.id(), gate),
        };
        let autl = a.autl.order() as u128;
        Verdict::decide(self.id(), b.r >= 2 && autl >= b.bound, || {
            witness(a.group.label(), "lower bound on |Aut_l(G)| violated", &[
                ("r", b.r.to_string()),
                ("s", b.s.to_string()),
                ("autl_order", autl.to_string()),
                ("bound", b.bound.to_string()),
            ])
        })
    }
}

/// `G/L(G)` abelian iff `Inn(G) <= Aut_l(G)`.
pub struct InnerInAutl;

impl Check for InnerInAutl {
    fn id(&self) -> &'static str {
        "inner-in-autl"
    }

    fn description(&self) -> &'static str {
        "G/L(G) is abelian iff Inn(G) is contained in Aut_l(G)"
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        let quotient_abelian = a.mod_absolute_centre.is_abelian();
        let contained = a.inn.is_subset_of(&a.autl);
        Verdict::decide(self.id(), quotient_abelian == contained, || {
            let mut w = witness(a.group.label(), "abelian quotient and containment disagree", &[
                ("quotient_abelian", quotient_abelian.to_string()),
                ("inn_in_autl", contained.to_string()),
            ]);
            w.automorphisms = a
                .inn
                .elements()
                .iter()
                .filter(|x| !a.autl.contains(x))
                .take(1)
                .map(|x| x.images().iter().map(|&y| y as usize).collect())
                .collect();
            w
        })
    }
}

/// Nonabelian p-groups with `Aut_l = Inn` have cyclic `L(G)`.
pub struct AbsoluteCentreCyclic;

impl Check for AbsoluteCentreCyclic {
    fn id(&self) -> &'static str {
        "absolute-centre-cyclic"
    }

    fn description(&self) -> &'static str {
        "if Aut_l(G) = Inn(G) for a nonabelian p-group then L(G) is cyclic"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[GATE_NOT_P_GROUP, GATE_ABELIAN, GATE_AUTL_NE_INN]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        if let Some(gate) = p_group_gate(a) {
            return Verdict::not_applicable(self.id(), gate);
        }
        if !a.autl_eq_inn() {
            return Verdict::not_applicable(self.id(), GATE_AUTL_NE_INN);
        }
        Verdict::decide(self.id(), a.absolute_centre_cyclic(), || {
            witness(a.group.label(), "L(G) is not cyclic", &[(
                "absolute_centre_invariants",
                a.inv_absolute_centre.to_string(),
            )])
        })
    }
}

/// For odd `p`, `Aut_l = Inn` forces `exp(G/Z) = exp(L)`.
pub struct ExponentMatch;

impl Check for ExponentMatch {
    fn id(&self) -> &'static str {
        "exponent-match"
    }

    fn description(&self) -> &'static str {
        "if Aut_l(G) = Inn(G) for a nonabelian p-group with p odd then exp(G/Z) = exp(L)"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[GATE_NOT_P_GROUP, GATE_ABELIAN, GATE_EVEN_PRIME, GATE_AUTL_NE_INN]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        if let Some(gate) = p_group_gate(a) {
            return Verdict::not_applicable(self.id(), gate);
        }
        if a.prime == Some(2) {
            return Verdict::not_applicable(self.id(), GATE_EVEN_PRIME);
        }
        if !a.autl_eq_inn() {
            return Verdict::not_applicable(self.id(), GATE_AUTL_NE_INN);
        }
        Verdict::decide(self.id(), a.exp_mod_centre() == a.exp_absolute_centre, || {
            witness(a.group.label(), "exponents differ", &[
                ("exp_mod_centre", a.exp_mod_centre().to_string()),
                ("exp_absolute_centre", a.exp_absolute_centre.to_string()),
            ])
        })
    }
}

/// `Inn = Aut^L_Z` iff `G' <= L` and `L` cyclic.
pub struct InnerEqAutlz;

impl Check for InnerEqAutlz {
    fn id(&self) -> &'static str {
        "inner-eq-autlz"
    }

    fn description(&self) -> &'static str {
        "for nonabelian p-groups, Inn(G) = Aut^L_Z(G) iff G' <= L(G) and L(G) is cyclic"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[GATE_NOT_P_GROUP, GATE_ABELIAN]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        if let Some(gate) = p_group_gate(a) {
            return Verdict::not_applicable(self.id(), gate);
        }
        let lhs = a.inn_eq_autlz();
        let rhs = a.derived_in_absolute_centre() && a.absolute_centre_cyclic();
        Verdict::decide(self.id(), lhs == rhs, || {
            witness(a.group.label(), "sides of the equivalence disagree", &[
                ("inn_eq_autlz", lhs.to_string()),
                ("derived_in_absolute_centre", a.derived_in_absolute_centre().to_string()),
                ("absolute_centre_cyclic", a.absolute_centre_cyclic().to_string()),
            ])
        })
    }
}

/// `Aut_l = Inn` iff `G' <= L`, `L` cyclic and `Z = L G^{p^n}`.
pub struct AutlEqInner;

impl Check for AutlEqInner {
    fn id(&self) -> &'static str {
        "autl-eq-inner"
    }

    fn description(&self) -> &'static str {
        "for nonabelian p-groups, Aut_l(G) = Inn(G) iff G' <= L, L cyclic and Z = L G^(p^n) with p^n = exp(L)"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[GATE_NOT_P_GROUP, GATE_ABELIAN]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        if let Some(gate) = p_group_gate(a) {
            return Verdict::not_applicable(self.id(), gate);
        }
        let lhs = a.autl_eq_inn();
        let rhs = a.derived_in_absolute_centre()
            && a.absolute_centre_cyclic()
            && a.centre_eq_absolute_centre_power();
        Verdict::decide(self.id(), lhs == rhs, || {
            witness(a.group.label(), "sides of the equivalence disagree", &[
                ("autl_eq_inn", lhs.to_string()),
                ("derived_in_absolute_centre", a.derived_in_absolute_centre().to_string()),
                ("absolute_centre_cyclic", a.absolute_centre_cyclic().to_string()),
                ("centre_eq_join", a.centre_eq_absolute_centre_power().to_string()),
                ("exp_absolute_centre", a.exp_absolute_centre.to_string()),
            ])
        })
    }
}

/// The two `Aut_l` routes agree as sets.
pub struct AutlDualRoute;

impl Check for AutlDualRoute {
    fn id(&self) -> &'static str {
        "autl-dual-route"
    }

    fn description(&self) -> &'static str {
        "filtering Aut(G) and the coset-constrained search give the same Aut_l(G)"
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        Verdict::decide(self.id(), a.autl == a.autl_alternate, || {
            let mut w = witness(a.group.label(), "Aut_l routes disagree", &[
                (a.autl_route, a.autl.order().to_string()),
                (a.autl_alternate_route, a.autl_alternate.order().to_string()),
            ]);
            w.automorphisms = a
                .autl
                .elements()
                .iter()
                .filter(|x| !a.autl_alternate.contains(x))
                .chain(a.autl_alternate.elements().iter().filter(|x| !a.autl.contains(x)))
                .take(2)
                .map(|x| x.images().iter().map(|&y| y as usize).collect())
                .collect();
            w
        })
    }
}

/// `|Hom(G/Z, L)| <= |Hom(G/(L G^{p^n}), L)| <= |Hom(G/L, L)|` whenever
/// `L G^{p^n} <= Z(G)`, on class-2 p-groups.
pub struct HomInjectionChain;

impl Check for HomInjectionChain {
    fn id(&self) -> &'static str {
        "hom-injection-chain"
    }

    fn description(&self) -> &'static str {
        "|Hom(G/Z, L)| <= |Hom(G/L G^(p^n), L)| <= |Hom(G/L, L)| when L G^(p^n) <= Z"
    }

    fn gates(&self) -> &'static [&'static str] {
        &[GATE_NOT_P_GROUP, GATE_ABELIAN, GATE_NOT_CLASS_TWO, GATE_JOIN_NOT_CENTRAL]
    }

    fn check(&self, a: &GroupAnalysis<'_>) -> Verdict {
        if let Some(gate) = p_group_gate(a) {
            return Verdict::not_applicable(self.id(), gate);
        }
        if a.class != Some(2) {
            return Verdict::not_applicable(self.id(), GATE_NOT_CLASS_TWO);
        }
        if !a.absolute_centre_power.is_subset_of(&a.centre) {
            return Verdict::not_applicable(self.id(), GATE_JOIN_NOT_CENTRAL);
        }
        let l = &a.inv_absolute_centre;
        let lo = hom_order(&a.ab_mod_centre, l);
        let mid = hom_order(&a.ab_mod_absolute_centre_power, l);
        let hi = hom_order(&a.ab_mod_absolute_centre, l);
        Verdict::decide(self.id(), lo <= mid && mid <= hi, || {
            witness(a.group.label(), "Hom orders are not monotone", &[
                ("hom_mod_centre", lo.to_string()),
                ("hom_mod_join", mid.to_string()),
                ("hom_mod_absolute_centre", hi.to_string()),
            ])
        })
    }
}

/// Named collection of checkers, run in registration order.
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        CheckRegistry::standard()
    }
}

impl CheckRegistry {
    pub fn empty() -> CheckRegistry {
        CheckRegistry { checks: Vec::new() }
    }

    /// Every built-in checker.
    pub fn standard() -> CheckRegistry {
        let mut r = CheckRegistry::empty();
        r.register(Box::new(HomIntoCyclic));
        r.register(Box::new(AutlHomStructure));
        r.register(Box::new(AutlzHomStructure));
        r.register(Box::new(HomLowerBound));
        r.register(Box::new(AutlLowerBound));
        r.register(Box::new(InnerInAutl));
        r.register(Box::new(AbsoluteCentreCyclic));
        r.register(Box::new(ExponentMatch));
        r.register(Box::new(InnerEqAutlz));
        r.register(Box::new(AutlEqInner));
        r.register(Box::new(AutlDualRoute));
        r.register(Box::new(HomInjectionChain));
        r
    }

    /// Adds a checker; an existing one with the same id is replaced in place.
    pub fn register(&mut self, check: Box<dyn Check>) {
        match self.checks.iter().position(|c| c.id() == check.id()) {
            Some(i) => self.checks[i] = check,
            None => self.checks.push(check),
        }
    }

    pub fn get(&self, id: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.id() == id).map(|c| c.as_ref())
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.iter().map(|c| c.as_ref())
    }

    /// Keeps only the listed ids, in the order given.
    pub fn select(mut self, ids: &[String]) -> Result<CheckRegistry> {
        let mut out = CheckRegistry::empty();
        for id in ids {
            let pos = self
                .checks
                .iter()
                .position(|c| c.id() == id)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown check `{id}`")))?;
            out.register(self.checks.remove(pos));
        }
        Ok(out)
    }

    pub fn run(&self, a: &GroupAnalysis<'_>) -> Vec<Verdict> {
        self.checks.iter().map(|c| c.check(a)).collect()
    }
}
