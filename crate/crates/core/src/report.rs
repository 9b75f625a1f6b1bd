//! Text renderings of checker results.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::checker::{BoundVerdict, FamilyMember, InvariantReport, PlanarReport, TheoremReport, Verdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!("unknown format `{s}`"))),
        }
    }
}

fn f5(x: f64) -> String {
    format!("{x:.5}")
}

fn opt5(x: Option<f64>) -> String {
    x.map(f5).unwrap_or_default()
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::InconclusiveWithinTolerance => "inconclusive",
    }
}

fn row_verdict(r: &InvariantReport, name: &str) -> &'static str {
    r.verdict(name).map(|v| verdict_str(v.verdict)).unwrap_or("")
}

const COLUMNS: [&str; 12] = [
    "row", "lattice", "V", "E", "nu_diamond/2pi", "z", "nu_bar/2pi", "vol_perp/2pi",
    "d_nu_diamond", "d_z", "d_nu_bar", "bounds",
];

fn cells(r: &InvariantReport) -> Vec<String> {
    let bounds = match &r.error {
        Some(e) => format!("error: {e}"),
        None => format!("{}/{}", row_verdict(r, "lower"), row_verdict(r, "upper")),
    };
    vec![
        r.expected.map(|x| x.row.to_string()).unwrap_or_default(),
        r.name.clone(),
        r.vertices.to_string(),
        r.edges.to_string(),
        f5(r.nu_diamond_over_2pi),
        opt5(r.z),
        f5(r.nu_bar_over_2pi),
        opt5(r.vol_perp_over_2pi),
        opt5(r.deviations.map(|d| d.nu_diamond)),
        opt5(r.deviations.map(|d| d.z)),
        opt5(r.deviations.map(|d| d.nu_bar)),
        bounds,
    ]
}

/// Table of invariant reports in the requested format, five decimals.
pub fn render_table(reports: &[InvariantReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            for r in reports {
                let row: Vec<String> = cells(r).into_iter().map(|c| csv_escape(&c)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("| {} |\n", COLUMNS.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(COLUMNS.len())));
            for r in reports {
                out.push_str(&format!("| {} |\n", cells(r).join(" | ")));
            }
            out
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_verdicts(verdicts: &[BoundVerdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let rel = if v.strict { "<" } else { "<=" };
        let _ = writeln!(
            out,
            "{:<26} {} = {:.5} {rel} {} = {:.5}  margin {:+.2e} (err {:.1e})  {}{}",
            v.name,
            v.lhs_name,
            v.lhs,
            v.rhs_name,
            v.rhs,
            v.margin,
            v.error,
            verdict_str(v.verdict),
            if v.asserted { "" } else { " [info]" },
        );
    }
    out
}

pub fn render_invariants(r: &InvariantReport) -> String {
    let mut out = format!("{}: |V| = {}, |E| = {}\n", r.name, r.vertices, r.edges);
    let _ = writeln!(out, "  nu_diamond/2pi = {}", f5(r.nu_diamond_over_2pi));
    let _ = writeln!(out, "  nu_bar/2pi     = {}", f5(r.nu_bar_over_2pi));
    if let Some(v) = r.vol_perp_over_2pi {
        let _ = writeln!(out, "  vol_perp/2pi   = {}", f5(v));
    }
    if let (Some(z), Some(e)) = (r.z, r.z_error) {
        let _ = writeln!(out, "  z              = {} (+/- {e:.1e})", f5(z));
    }
    if let Some(d) = r.deviations {
        let _ = writeln!(
            out,
            "  deviation from table: nu_diamond {:+.5}, z {:+.5}, nu_bar {:+.5}",
            d.nu_diamond, d.z, d.nu_bar
        );
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
    }
    out.push_str(&render_verdicts(&r.verdicts));
    out
}

pub fn render_theorem(t: &TheoremReport) -> String {
    let mut out = format!("== {} ==\n", t.name);
    out.push_str(&render_invariants(&t.base));
    out.push_str(&render_invariants(&t.derived));
    for c in &t.identities {
        let _ = writeln!(
            out,
            "{:<26} expected {:.8} computed {:.8} (tol {:.1e})  {}",
            c.name,
            c.expected,
            c.computed,
            c.tolerance,
            if c.passed { "ok" } else { "MISMATCH" }
        );
    }
    out.push_str(&render_verdicts(&t.verdicts));
    out
}

pub fn render_family(members: &[FamilyMember], format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(members).expect("family serializes");
    }
    let header = ["n", "V(G_n)", "V(G'_n)", "E(G'_n)", "z_fd", "nu_diamond/2pi", "z", "nu_bar/2pi", "upper"];
    let rows = members.iter().map(|m| {
        vec![
            m.n.to_string(),
            m.truncated_vertices.to_string(),
            m.medial_vertices.to_string(),
            m.medial_edges.to_string(),
            f5(m.z_fd_closed_form),
            f5(m.nu_diamond_over_2pi),
            f5(m.z),
            f5(m.nu_bar_over_2pi),
            verdict_str(m.upper.verdict).to_string(),
        ]
    });
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(&header.join(","));
        out.push('\n');
        for r in rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
    } else {
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for r in rows {
            let _ = writeln!(out, "| {} |", r.join(" | "));
        }
    }
    out
}

pub fn render_planar(r: &PlanarReport) -> String {
    let mut out = format!("|V| = {}, |E| = {}\n", r.vertices, r.edges);
    if let Some(t) = &r.tau {
        let _ = writeln!(out, "tau = {t}");
    }
    let _ = writeln!(out, "log tau = {:.5}", r.log_tau);
    let _ = writeln!(out, "vol_diamond = {:.5}, dual = {:.5}", r.vol_diamond, r.vol_diamond_dual);
    let _ = writeln!(out, "hyperbolic = {}", r.hyperbolic);
    out.push_str(&render_verdicts(&r.verdicts));
    out
}
