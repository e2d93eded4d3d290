//! Rendering of reports as JSON, CSV or Markdown. Output depends only on the
//! data, never on timing or thread count.

use std::fmt::Write as _;

use autl_core::abelian::subgroup_invariants;
use autl_core::theorems::{Census, GroupAnalysis, GroupOutcome, Status, TheoremReport, Verdict};
use autl_core::AbelianInvariants;
use serde::Serialize;

use crate::config::ReportFormat;

/// Fixed leading CSV columns; one column per checker follows, then `error`.
pub const CSV_COLUMNS: &[&str] = &[
    "label",
    "order",
    "prime",
    "nonabelian",
    "class",
    "centre_order",
    "derived_order",
    "absolute_centre_order",
    "exp_absolute_centre",
    "exp_mod_centre",
    "power_order",
    "join_order",
    "invariants_mod_centre",
    "invariants_mod_absolute_centre",
    "invariants_absolute_centre",
    "aut_order",
    "inn_order",
    "autc_order",
    "autl_order",
    "autlz_order",
    "l_cyclic",
    "gprime_in_l",
    "z_eq_lgpn",
    "autl_eq_inn",
    "inn_eq_autlz",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn verdict_cell(v: Option<&Verdict>) -> String {
    match v {
        None => String::new(),
        Some(v) => match (v.status, &v.gate) {
            (Status::Holds, _) => "holds".into(),
            (Status::Fails, _) => "fails".into(),
            (Status::NotApplicable, Some(g)) => format!("not_applicable:{g}"),
            (Status::NotApplicable, None) => "not_applicable".into(),
        },
    }
}

fn report_row(r: &TheoremReport, check_ids: &[String]) -> Vec<String> {
    let mut row = vec![
        r.label.clone(),
        r.order.to_string(),
        opt(&r.prime),
        r.nonabelian.to_string(),
        opt(&r.class),
        r.centre_order.to_string(),
        r.derived_order.to_string(),
        r.absolute_centre_order.to_string(),
        r.exp_absolute_centre.to_string(),
        r.exp_mod_centre.to_string(),
        r.power_order.to_string(),
        r.join_order.to_string(),
        opt(&r.invariants_mod_centre),
        opt(&r.invariants_mod_absolute_centre),
        r.invariants_absolute_centre.to_string(),
        r.aut_order.to_string(),
        r.inn_order.to_string(),
        r.autc_order.to_string(),
        r.autl_order.to_string(),
        r.autlz_order.to_string(),
        r.l_cyclic.to_string(),
        r.gprime_in_l.to_string(),
        r.z_eq_lgpn.to_string(),
        r.autl_eq_inn.to_string(),
        r.inn_eq_autlz.to_string(),
    ];
    row.extend(check_ids.iter().map(|id| verdict_cell(r.verdict(id))));
    row.push(String::new());
    row
}

fn outcome_row(o: &GroupOutcome, check_ids: &[String]) -> Vec<String> {
    match o {
        GroupOutcome::Report(r) => report_row(r, check_ids),
        GroupOutcome::Error { label, order, error, .. } => {
            let mut row = vec![String::new(); CSV_COLUMNS.len() + check_ids.len() + 1];
            row[0] = label.clone();
            row[1] = order.to_string();
            *row.last_mut().expect("nonempty") = error.clone();
            row
        }
    }
}

fn csv_table(outcomes: &[GroupOutcome], check_ids: &[String]) -> String {
    let mut header: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(check_ids.iter().cloned());
    header.push("error".into());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for o in outcomes {
        w.write_record(outcome_row(o, check_ids)).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    format!(
        "# autl report v1; columns fixed in this order: {}; checker columns hold holds, fails or not_applicable:<gate>\n{body}",
        header.join(",")
    )
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn markdown_verdicts(out: &mut String, r: &TheoremReport) {
    out.push_str("| check | status | gate |\n|---|---|---|\n");
    for v in &r.verdicts {
        let status = verdict_cell(Some(v));
        let status = status.split(':').next().unwrap_or_default();
        let _ = writeln!(out, "| {} | {} | {} |", v.result_id, status, v.gate.as_deref().unwrap_or(""));
    }
    for v in r.verdicts.iter().filter(|v| v.status == Status::Fails) {
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "\n**{}** fails on {}: {}", v.result_id, w.group, w.detail);
            for (k, val) in &w.quantities {
                let _ = writeln!(out, "- {k} = {val}");
            }
        }
    }
}

fn markdown_report(out: &mut String, r: &TheoremReport) {
    let _ = writeln!(out, "## {}\n", r.label);
    let rows = [
        ("order", r.order.to_string()),
        ("prime", opt(&r.prime)),
        ("nonabelian", r.nonabelian.to_string()),
        ("class", opt(&r.class)),
        ("|Z(G)|", r.centre_order.to_string()),
        ("|G'|", r.derived_order.to_string()),
        ("|L(G)|", r.absolute_centre_order.to_string()),
        ("exp L(G)", r.exp_absolute_centre.to_string()),
        ("exp G/Z(G)", r.exp_mod_centre.to_string()),
        ("|Aut|", r.aut_order.to_string()),
        ("|Inn|", r.inn_order.to_string()),
        ("|Aut_c|", r.autc_order.to_string()),
        ("|Aut_l|", r.autl_order.to_string()),
        ("|Aut^L_Z|", r.autlz_order.to_string()),
        ("Aut_l = Inn", r.autl_eq_inn.to_string()),
        ("Inn = Aut^L_Z", r.inn_eq_autlz.to_string()),
    ];
    out.push_str("| property | value |\n|---|---|\n");
    for (k, v) in rows {
        let _ = writeln!(out, "| {k} | {v} |");
    }
    out.push('\n');
    markdown_verdicts(out, r);
    out.push('\n');
}

pub fn render_verify(r: &TheoremReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(r),
        ReportFormat::Csv => {
            let ids: Vec<String> = r.verdicts.iter().map(|v| v.result_id.clone()).collect();
            csv_table(&[GroupOutcome::Report(Box::new(r.clone()))], &ids)
        }
        ReportFormat::Markdown => {
            let mut s = String::new();
            markdown_report(&mut s, r);
            s
        }
    }
}

pub fn render_census(c: &Census, check_ids: &[String], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(c),
        ReportFormat::Csv => csv_table(&c.outcomes, check_ids),
        ReportFormat::Markdown => census_markdown(c, check_ids),
    }
}

/// One outcome on its own, for per-group report files.
pub fn render_outcome(o: &GroupOutcome, check_ids: &[String], format: ReportFormat) -> String {
    match (format, o) {
        (ReportFormat::Json, _) => json(o),
        (ReportFormat::Csv, _) => csv_table(std::slice::from_ref(o), check_ids),
        (ReportFormat::Markdown, GroupOutcome::Report(r)) => render_verify(r, format),
        (ReportFormat::Markdown, GroupOutcome::Error { label, error, .. }) => {
            format!("## {label}\n\nerror: {error}\n")
        }
    }
}

fn census_markdown(c: &Census, check_ids: &[String]) -> String {
    let s = &c.summary;
    let mut out = String::from("# Census\n\n");
    let _ = writeln!(
        out,
        "groups: {}, analysed: {}, errors: {}, nonabelian p-groups: {}, fails: {}\n",
        s.groups, s.analysed, s.errors, s.nonabelian_p_groups, s.total_fails
    );
    out.push_str("| check | holds | fails | not_applicable |\n|---|---|---|---|\n");
    for id in check_ids {
        if let Some(k) = s.per_check.get(id) {
            let _ = writeln!(out, "| {id} | {} | {} | {} |", k.holds, k.fails, k.not_applicable);
        }
    }
    if !s.gate_hits.is_empty() {
        out.push_str("\n| gate | hits |\n|---|---|\n");
        for (gate, n) in &s.gate_hits {
            let _ = writeln!(out, "| {gate} | {n} |");
        }
    }
    let _ = writeln!(out, "\nAut_l = Inn: {}", if s.autl_eq_inn.is_empty() { "none".into() } else { s.autl_eq_inn.join(", ") });
    if !s.even_prime_exponents.is_empty() {
        out.push_str("\n| p = 2 group | exp G/Z(G) | exp L(G) |\n|---|---|---|\n");
        for e in &s.even_prime_exponents {
            let _ = writeln!(out, "| {} | {} | {} |", e.label, e.exp_mod_centre, e.exp_absolute_centre);
        }
    }
    out.push_str("\n| group | order | |Aut| | |Inn| | |Aut_l| | |L| | Aut_l = Inn | fails |\n|---|---|---|---|---|---|---|---|\n");
    for o in &c.outcomes {
        match o {
            GroupOutcome::Report(r) => {
                let fails: Vec<&str> = r
                    .verdicts
                    .iter()
                    .filter(|v| v.status == Status::Fails)
                    .map(|v| v.result_id.as_str())
                    .collect();
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.label,
                    r.order,
                    r.aut_order,
                    r.inn_order,
                    r.autl_order,
                    r.absolute_centre_order,
                    r.autl_eq_inn,
                    fails.join(" ")
                );
            }
            GroupOutcome::Error { label, order, error, .. } => {
                let _ = writeln!(out, "| {label} | {order} | | | | | | error: {error} |");
            }
        }
    }
    for r in c.outcomes.iter().filter_map(GroupOutcome::report).filter(|r| r.has_failure()) {
        out.push('\n');
        markdown_report(&mut out, r);
    }
    out
}

/// Automorphism data for inspection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutDump {
    pub label: String,
    pub order: usize,
    pub aut_order: usize,
    pub inn_order: usize,
    pub autc_order: usize,
    pub autl_order: usize,
    pub autlz_order: usize,
    pub centre_order: usize,
    pub derived_order: usize,
    pub absolute_centre_order: usize,
    pub invariants_centre: AbelianInvariants,
    pub invariants_absolute_centre: AbelianInvariants,
    /// `None` when `G'` is not abelian.
    pub invariants_derived: Option<AbelianInvariants>,
    pub invariants_autl: AbelianInvariants,
    pub invariants_autlz: AbelianInvariants,
    /// `None` when `Inn` is not abelian.
    pub invariants_inn: Option<AbelianInvariants>,
    pub aut_generators: Vec<Vec<u16>>,
}

impl AutDump {
    pub fn from_analysis(a: &GroupAnalysis<'_>) -> AutDump {
        AutDump {
            label: a.group.label().into(),
            order: a.group.order(),
            aut_order: a.aut.order(),
            inn_order: a.inn.order(),
            autc_order: a.autc.order(),
            autl_order: a.autl.order(),
            autlz_order: a.autlz.order(),
            centre_order: a.centre.order(),
            derived_order: a.derived.order(),
            absolute_centre_order: a.absolute_centre.order(),
            invariants_centre: subgroup_invariants(&a.centre).expect("the centre is abelian"),
            invariants_absolute_centre: a.inv_absolute_centre.clone(),
            invariants_derived: subgroup_invariants(&a.derived).ok(),
            invariants_autl: a.autl.abelian_invariants().expect("Aut_l is abelian"),
            invariants_autlz: a.autlz.abelian_invariants().expect("Aut^L_Z is abelian"),
            invariants_inn: a.inn.abelian_invariants().ok(),
            aut_generators: a.aut.generators().map(|g| g.images().to_vec()).collect(),
        }
    }
}

pub fn render_aut(d: &AutDump, format: ReportFormat) -> String {
    let rows: Vec<(&str, String)> = vec![
        ("label", d.label.clone()),
        ("order", d.order.to_string()),
        ("aut_order", d.aut_order.to_string()),
        ("inn_order", d.inn_order.to_string()),
        ("autc_order", d.autc_order.to_string()),
        ("autl_order", d.autl_order.to_string()),
        ("autlz_order", d.autlz_order.to_string()),
        ("centre_order", d.centre_order.to_string()),
        ("derived_order", d.derived_order.to_string()),
        ("absolute_centre_order", d.absolute_centre_order.to_string()),
        ("invariants_centre", d.invariants_centre.to_string()),
        ("invariants_absolute_centre", d.invariants_absolute_centre.to_string()),
        ("invariants_derived", opt(&d.invariants_derived)),
        ("invariants_autl", d.invariants_autl.to_string()),
        ("invariants_autlz", d.invariants_autlz.to_string()),
        ("invariants_inn", opt(&d.invariants_inn)),
    ];
    match format {
        ReportFormat::Json => json(d),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(rows.iter().map(|r| r.0)).expect("in-memory write");
            w.write_record(rows.iter().map(|r| r.1.as_str())).expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        ReportFormat::Markdown => {
            let mut out = format!("## {}\n\n| quantity | value |\n|---|---|\n", d.label);
            for (k, v) in rows.iter().skip(1) {
                let _ = writeln!(out, "| {k} | {v} |");
            }
            out
        }
    }
}
