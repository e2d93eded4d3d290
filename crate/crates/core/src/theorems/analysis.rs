//! Everything the checkers need about one group, computed once.

use std::fmt;

use crate::abelian::{abelian_invariants, subgroup_invariants, AbelianInvariants};
use crate::automorphism::{
    absolute_central_automorphisms, absolute_central_fixing_centre, automorphism_group,
    central_automorphisms, constrained_autl, inner_automorphisms, AutConfig, AutomorphismSet,
};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Where `Aut(G)` comes from. The default runs the backtracking engine; the
/// CLI layers a disk cache on top.
pub trait AutomorphismSource: Sync {
    fn automorphisms<'g>(&self, g: &'g Group, config: &AutConfig) -> Result<AutomorphismSet<'g>>;
}

/// Direct enumeration with no caching.
#[derive(Debug, Default, Clone, Copy)]
pub struct Backtracking;

impl AutomorphismSource for Backtracking {
    fn automorphisms<'g>(&self, g: &'g Group, config: &AutConfig) -> Result<AutomorphismSet<'g>> {
        automorphism_group(g, config)
    }
}

/// One way of computing `Aut_l(G)` once `Aut(G)` and `L(G)` are known.
pub trait AutlRoute: Send + Sync {
    fn name(&self) -> &'static str;

    fn compute<'g>(
        &self,
        aut: &AutomorphismSet<'g>,
        absolute_centre: &Subgroup<'g>,
        config: &AutConfig,
    ) -> Result<AutomorphismSet<'g>>;
}

/// Filters the full `Aut(G)` list.
pub struct FilterRoute;

impl AutlRoute for FilterRoute {
    fn name(&self) -> &'static str {
        "filter"
    }

    fn compute<'g>(
        &self,
        aut: &AutomorphismSet<'g>,
        absolute_centre: &Subgroup<'g>,
        _config: &AutConfig,
    ) -> Result<AutomorphismSet<'g>> {
        absolute_central_automorphisms(aut, absolute_centre)
    }
}

/// Searches generator images inside cosets of `L(G)` directly.
pub struct ConstrainedRoute;

impl AutlRoute for ConstrainedRoute {
    fn name(&self) -> &'static str {
        "constrained"
    }

    fn compute<'g>(
        &self,
        aut: &AutomorphismSet<'g>,
        absolute_centre: &Subgroup<'g>,
        config: &AutConfig,
    ) -> Result<AutomorphismSet<'g>> {
        constrained_autl(aut.parent(), absolute_centre, config)
    }
}

static ROUTES: [&dyn AutlRoute; 2] = [&FilterRoute, &ConstrainedRoute];

/// All registered `Aut_l` routes, primary first.
pub fn autl_routes() -> &'static [&'static dyn AutlRoute] {
    &ROUTES
}

pub fn autl_route(name: &str) -> Option<&'static dyn AutlRoute> {
    ROUTES.iter().copied().find(|r| r.name() == name)
}

/// Computed invariants of a single group.
pub struct GroupAnalysis<'g> {
    pub group: &'g Group,
    /// `Some(p)` for a nontrivial p-group.
    pub prime: Option<u64>,
    pub nonabelian: bool,
    /// `None` when the group is not nilpotent.
    pub class: Option<usize>,
    pub centre: Subgroup<'g>,
    pub derived: Subgroup<'g>,
    pub absolute_centre: Subgroup<'g>,
    /// `p^n = exp(L(G))`, 1 when `L(G)` is trivial.
    pub exp_absolute_centre: u64,
    /// `G^{p^n}`.
    pub power: Subgroup<'g>,
    /// `L(G) G^{p^n}`.
    pub absolute_centre_power: Subgroup<'g>,
    pub mod_centre: Group,
    pub mod_absolute_centre: Group,
    pub mod_absolute_centre_power: Group,
    /// Invariants of the abelianised quotients; `Hom` into an abelian
    /// group only sees the abelianisation.
    pub ab_mod_centre: AbelianInvariants,
    pub ab_mod_absolute_centre: AbelianInvariants,
    pub ab_mod_absolute_centre_power: AbelianInvariants,
    pub inv_absolute_centre: AbelianInvariants,
    pub aut: AutomorphismSet<'g>,
    pub inn: AutomorphismSet<'g>,
    pub autc: AutomorphismSet<'g>,
    pub autl: AutomorphismSet<'g>,
    /// `Aut_l` by the other registered route, for the dual-route check.
    pub autl_alternate: AutomorphismSet<'g>,
    pub autl_route: &'static str,
    pub autl_alternate_route: &'static str,
    pub autlz: AutomorphismSet<'g>,
}

impl fmt::Debug for GroupAnalysis<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAnalysis")
            .field("group", &self.group.label())
            .field("aut", &self.aut.order())
            .field("autl", &self.autl.order())
            .field("inn", &self.inn.order())
            .finish()
    }
}

/// Invariants of `G / [G, G]`.
pub fn abelianization_invariants(g: &Group) -> AbelianInvariants {
    let q = g
        .quotient(&g.derived_subgroup())
        .expect("the derived subgroup is normal");
    abelian_invariants(q.image()).expect("G/G' is abelian")
}

impl<'g> GroupAnalysis<'g> {
    /// Computes everything with `route` as the primary `Aut_l` route.
    pub fn compute(
        group: &'g Group,
        source: &dyn AutomorphismSource,
        route: &dyn AutlRoute,
        config: &AutConfig,
    ) -> Result<GroupAnalysis<'g>> {
        let prime = group.is_p_group();
        let nonabelian = !group.is_abelian();
        let class = match group.nilpotency_class() {
            Ok(c) => Some(c),
            Err(Error::NotNilpotent { .. }) => None,
            Err(e) => return Err(e),
        };
        let centre = group.centre();
        let derived = group.derived_subgroup();

        let aut = source.automorphisms(group, config)?;
        let absolute_centre = aut.fixed_points();
        let exp_absolute_centre = absolute_centre.exponent();
        let power = group.power_subgroup(exp_absolute_centre);
        let absolute_centre_power = absolute_centre.join(&power)?;

        let mod_centre = group.quotient(&centre)?.into_image();
        let mod_absolute_centre = group.quotient(&absolute_centre)?.into_image();
        let mod_absolute_centre_power = group.quotient(&absolute_centre_power)?.into_image();

        let inn = inner_automorphisms(group);
        let autc = central_automorphisms(&aut, &centre)?;
        let autl = route.compute(&aut, &absolute_centre, config)?;
        let alternate = autl_routes()
            .iter()
            .copied()
            .find(|r| r.name() != route.name())
            .expect("at least two routes are registered");
        let autl_alternate = alternate.compute(&aut, &absolute_centre, config)?;
        let autlz = absolute_central_fixing_centre(&aut, &absolute_centre, &centre)?;

        Ok(GroupAnalysis {
            group,
            prime,
            nonabelian,
            class,
            ab_mod_centre: abelianization_invariants(&mod_centre),
            ab_mod_absolute_centre: abelianization_invariants(&mod_absolute_centre),
            ab_mod_absolute_centre_power: abelianization_invariants(&mod_absolute_centre_power),
            inv_absolute_centre: subgroup_invariants(&absolute_centre)?,
            centre,
            derived,
            absolute_centre,
            exp_absolute_centre,
            power,
            absolute_centre_power,
            mod_centre,
            mod_absolute_centre,
            mod_absolute_centre_power,
            aut,
            inn,
            autc,
            autl,
            autl_alternate,
            autl_route: route.name(),
            autl_alternate_route: alternate.name(),
            autlz,
        })
    }

    /// A nonabelian group of prime-power order: the standing hypothesis of the
    /// main equivalences.
    pub fn is_nonabelian_p_group(&self) -> bool {
        self.prime.is_some() && self.nonabelian
    }

    pub fn autl_eq_inn(&self) -> bool {
        self.autl == self.inn
    }

    pub fn inn_eq_autlz(&self) -> bool {
        self.inn == self.autlz
    }

    pub fn derived_in_absolute_centre(&self) -> bool {
        self.derived.is_subset_of(&self.absolute_centre)
    }

    pub fn absolute_centre_cyclic(&self) -> bool {
        self.absolute_centre.is_cyclic()
    }

    pub fn centre_eq_absolute_centre_power(&self) -> bool {
        self.centre == self.absolute_centre_power
    }

    pub fn exp_mod_centre(&self) -> u64 {
        self.mod_centre.exponent()
    }
}
