//! Per-group verification reports and the census that aggregates them.

mod analysis;
mod checks;

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianInvariants;
use crate::automorphism::{AutConfig, DEFAULT_AUT_CAP};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::search::Deadline;

pub use analysis::{
    abelianization_invariants, autl_route, autl_routes, AutlRoute, AutomorphismSource, Backtracking,
    ConstrainedRoute, FilterRoute, GroupAnalysis,
};
pub use checks::*;

/// Everything computed for one group, with the verdict of every checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub label: String,
    pub order: usize,
    pub prime: Option<u64>,
    pub nonabelian: bool,
    pub class: Option<usize>,
    pub centre_order: usize,
    pub derived_order: usize,
    pub absolute_centre_order: usize,
    /// `p^n = exp(L(G))`.
    pub exp_absolute_centre: u64,
    pub exp_mod_centre: u64,
    /// `|G^{p^n}|`
    pub power_order: usize,
    /// `|L(G) G^{p^n}|`
    pub join_order: usize,
    /// `None` when the quotient is not abelian.
    pub invariants_mod_centre: Option<AbelianInvariants>,
    pub invariants_mod_absolute_centre: Option<AbelianInvariants>,
    pub invariants_absolute_centre: AbelianInvariants,
    pub aut_order: usize,
    pub inn_order: usize,
    pub autc_order: usize,
    pub autl_order: usize,
    pub autlz_order: usize,
    pub l_cyclic: bool,
    pub gprime_in_l: bool,
    pub z_eq_lgpn: bool,
    pub autl_eq_inn: bool,
    pub inn_eq_autlz: bool,
    pub verdicts: Vec<Verdict>,
}

impl TheoremReport {
    pub fn from_analysis(a: &GroupAnalysis<'_>, registry: &CheckRegistry) -> TheoremReport {
        let quotient_invariants = |g: &Group, inv: &AbelianInvariants| g.is_abelian().then(|| inv.clone());
        TheoremReport {
            label: a.group.label().to_string(),
            order: a.group.order(),
            prime: a.prime,
            nonabelian: a.nonabelian,
            class: a.class,
            centre_order: a.centre.order(),
            derived_order: a.derived.order(),
            absolute_centre_order: a.absolute_centre.order(),
            exp_absolute_centre: a.exp_absolute_centre,
            exp_mod_centre: a.exp_mod_centre(),
            power_order: a.power.order(),
            join_order: a.absolute_centre_power.order(),
            invariants_mod_centre: quotient_invariants(&a.mod_centre, &a.ab_mod_centre),
            invariants_mod_absolute_centre: quotient_invariants(&a.mod_absolute_centre, &a.ab_mod_absolute_centre),
            invariants_absolute_centre: a.inv_absolute_centre.clone(),
            aut_order: a.aut.order(),
            inn_order: a.inn.order(),
            autc_order: a.autc.order(),
            autl_order: a.autl.order(),
            autlz_order: a.autlz.order(),
            l_cyclic: a.absolute_centre_cyclic(),
            gprime_in_l: a.derived_in_absolute_centre(),
            z_eq_lgpn: a.centre_eq_absolute_centre_power(),
            autl_eq_inn: a.autl_eq_inn(),
            inn_eq_autlz: a.inn_eq_autlz(),
            verdicts: registry.run(a),
        }
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.result_id == id)
    }

    pub fn has_failure(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fails)
    }
}

/// Limits and strategy choices for verification runs.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub aut_cap: usize,
    pub timeout: Duration,
    /// Worker threads; 0 means all logical cores.
    pub jobs: usize,
    /// Name of the primary `Aut_l` route.
    pub autl_route: String,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            aut_cap: DEFAULT_AUT_CAP,
            timeout: Duration::from_secs(30),
            jobs: 0,
            autl_route: FilterRoute.name().to_string(),
        }
    }
}

impl RunSettings {
    /// Enumeration limits with a fresh deadline.
    pub fn aut_config(&self) -> AutConfig {
        AutConfig { cap: self.aut_cap, deadline: Deadline::after(self.timeout), parallel: self.jobs != 1 }
    }

    pub fn route(&self) -> Result<&'static dyn AutlRoute> {
        autl_route(&self.autl_route)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown Aut_l route `{}`", self.autl_route)))
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
    }
}

/// Analyses one group and runs every registered checker on it. The time
/// budget starts when the analysis does.
pub fn verify_group(
    g: &Group,
    registry: &CheckRegistry,
    source: &dyn AutomorphismSource,
    settings: &RunSettings,
) -> Result<TheoremReport> {
    let route = settings.route()?;
    settings.pool().install(|| {
        let analysis = GroupAnalysis::compute(g, source, route, &settings.aut_config())?;
        Ok(TheoremReport::from_analysis(&analysis, registry))
    })
}

/// Outcome for one corpus entry: a report, or the error that stopped it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GroupOutcome {
    Report(Box<TheoremReport>),
    Error {
        label: String,
        order: usize,
        error: String,
        resource_limit: bool,
    },
}

impl GroupOutcome {
    pub fn label(&self) -> &str {
        match self {
            GroupOutcome::Report(r) => &r.label,
            GroupOutcome::Error { label, .. } => label,
        }
    }

    pub fn report(&self) -> Option<&TheoremReport> {
        match self {
            GroupOutcome::Report(r) => Some(r.as_ref()),
            GroupOutcome::Error { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
}

/// `exp(G/Z)` against `exp(L)` for a group with `Aut_l = Inn`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentObservation {
    pub label: String,
    pub prime: u64,
    pub exp_mod_centre: u64,
    pub exp_absolute_centre: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub groups: usize,
    pub analysed: usize,
    pub errors: usize,
    pub nonabelian_p_groups: usize,
    pub per_check: BTreeMap<String, StatusCounts>,
    /// Counts of `not_applicable` verdicts per `check/gate`.
    pub gate_hits: BTreeMap<String, usize>,
    pub total_fails: usize,
    pub autl_eq_inn: Vec<String>,
    /// Even-prime groups with `Aut_l = Inn`: recorded, not checked.
    pub even_prime_exponents: Vec<ExponentObservation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub outcomes: Vec<GroupOutcome>,
    pub summary: CensusSummary,
}

impl Census {
    pub fn summarize(outcomes: Vec<GroupOutcome>, registry: &CheckRegistry) -> Census {
        let mut s = CensusSummary {
            groups: outcomes.len(),
            per_check: registry.ids().into_iter().map(|id| (id.to_string(), StatusCounts::default())).collect(),
            ..CensusSummary::default()
        };
        for o in &outcomes {
            let Some(r) = o.report() else {
                s.errors += 1;
                continue;
            };
            s.analysed += 1;
            if r.prime.is_some() && r.nonabelian {
                s.nonabelian_p_groups += 1;
            }
            for v in &r.verdicts {
                let c = s.per_check.entry(v.result_id.clone()).or_default();
                match v.status {
                    Status::Holds => c.holds += 1,
                    Status::Fails => {
                        c.fails += 1;
                        s.total_fails += 1;
                    }
                    Status::NotApplicable => {
                        c.not_applicable += 1;
                        let gate = v.gate.as_deref().unwrap_or("unspecified");
                        *s.gate_hits.entry(format!("{}/{}", v.result_id, gate)).or_default() += 1;
                    }
                }
            }
            if r.nonabelian && r.autl_eq_inn && r.prime.is_some() {
                s.autl_eq_inn.push(r.label.clone());
                if r.prime == Some(2) {
                    s.even_prime_exponents.push(ExponentObservation {
                        label: r.label.clone(),
                        prime: 2,
                        exp_mod_centre: r.exp_mod_centre,
                        exp_absolute_centre: r.exp_absolute_centre,
                    });
                }
            }
        }
        Census { outcomes, summary: s }
    }
}

/// Runs every checker on every group. Per-group failures are recorded in
/// the outcome list and never abort the run; outcomes keep corpus order.
pub fn census(
    groups: &[Group],
    registry: &CheckRegistry,
    source: &dyn AutomorphismSource,
    settings: &RunSettings,
) -> Result<Census> {
    use rayon::prelude::*;

    let route = settings.route()?;
    let outcomes = settings.pool().install(|| {
        groups
            .par_iter()
            .map(|g| {
                let analysis = GroupAnalysis::compute(g, source, route, &settings.aut_config());
                match analysis {
                    Ok(a) => GroupOutcome::Report(Box::new(TheoremReport::from_analysis(&a, registry))),
                    Err(e) => GroupOutcome::Error {
                        label: g.label().to_string(),
                        order: g.order(),
                        error: e.to_string(),
                        resource_limit: e.is_resource_limit(),
                    },
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(Census::summarize(outcomes, registry))
}
