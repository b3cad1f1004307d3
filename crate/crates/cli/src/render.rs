//! Human-readable output.

use std::fmt::Write as _;

use coreep::{AffineFn, CoreEpDecomposition, Validity};
use nalgebra::DMatrix;

use crate::files::{Overall, ReportFile};

/// Significant digits for numbers in text reports.
pub const REPORT_DIGITS: usize = 12;

/// `v` rounded to `digits` significant digits in shortest decimal form;
/// magnitudes at or below `noise` print as `0`.
pub fn format_number(v: f64, digits: usize, noise: f64) -> String {
    if v.abs() <= noise || v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    rounded.to_string()
}

/// `c0 + c1r` with the zero terms dropped, e.g. `5 - r`, `2r`, `-4`.
pub fn format_affine(f: &AffineFn, noise: f64) -> String {
    let c0 = format_number(f.c0, REPORT_DIGITS, noise);
    let c1 = format_number(f.c1, REPORT_DIGITS, noise);
    if c1 == "0" {
        return c0;
    }
    let (negative, mag) = match c1.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, c1.as_str()),
    };
    let term = if mag == "1" { "r".to_string() } else { format!("{mag}r") };
    match (c0.as_str(), negative) {
        ("0", false) => term,
        ("0", true) => format!("-{term}"),
        (_, false) => format!("{c0} + {term}"),
        (_, true) => format!("{c0} - {term}"),
    }
}

fn verdict_text(v: &Validity) -> String {
    match v {
        Validity::Valid => "valid".into(),
        Validity::Invalid(violations) => {
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            format!("invalid: {}", list.join("; "))
        }
    }
}

fn vector_line(v: &[f64], noise: f64) -> String {
    let items: Vec<String> = v.iter().map(|&x| format_number(x, REPORT_DIGITS, noise)).collect();
    format!("[{}]", items.join(", "))
}

pub fn render_report(r: &ReportFile) -> String {
    let c = &r.classification;
    let crisp = &r.crisp_solution;
    let scale = crisp.x0.iter().chain(&crisp.x1).fold(1.0_f64, |m, v| m.max(v.abs()));
    let noise = 1e-12 * scale;

    let mut out = String::new();
    let _ = writeln!(out, "classification: {}", c.kind);
    let _ = writeln!(
        out,
        "  rank S = {}, rank [S | y0 | y1] = {}, index of S = {}",
        c.rank_s, c.rank_aug, c.index_s
    );
    let _ = writeln!(out, "method: {}", r.method);
    let generalized = if r.is_generalized { "yes" } else { "no" };
    let _ = writeln!(out, "generalized solution: {generalized}");
    let _ = writeln!(out, "residual: {:.3e} (max over {} values of r)", r.residual, r.grid);
    let _ = writeln!(out, "crisp solution X(r) = x0 + r x1");
    let _ = writeln!(out, "  x0 = {}", vector_line(&crisp.x0, noise));
    let _ = writeln!(out, "  x1 = {}", vector_line(&crisp.x1, noise));
    let _ = writeln!(out, "fuzzy solution");
    let lines: Vec<String> = r
        .fuzzy_numbers()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            format!(
                "x{} = ({}, {})",
                i + 1,
                format_affine(&z.lower, noise),
                format_affine(&z.upper, noise)
            )
        })
        .collect();
    let width = lines.iter().map(String::len).max().unwrap_or(0);
    for (line, verdict) in lines.iter().zip(&r.verdicts) {
        let _ = writeln!(out, "  {line:<width$}  {}", verdict_text(verdict));
    }
    let overall = match r.overall {
        Overall::Strong => "strong",
        Overall::Weak => "weak",
    };
    let _ = writeln!(out, "overall: {overall}");
    let t = &r.tolerances;
    let _ = writeln!(
        out,
        "tolerances: rank_rel_tol {:e}, residual_tol {:e}, equality_tol {:e}",
        t.rank_rel_tol, t.residual_tol, t.equality_tol
    );
    out
}

/// Rows of `m`, right-aligned, indented by two spaces.
pub fn render_matrix(m: &DMatrix<f64>, digits: usize, noise: f64) -> String {
    if m.is_empty() {
        return format!("  (empty, {}x{})\n", m.nrows(), m.ncols());
    }
    let cells: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| format_number(m[(i, j)], digits, noise)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", padded.join("  "));
    }
    out
}

pub fn render_decomposition(dec: &CoreEpDecomposition, digits: usize, noise: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "core-EP decomposition A = U [[T, S], [0, N]] U^T");
    let _ = writeln!(out, "index k = {}, rank(A^k) = {}", dec.k, dec.rho());
    for (name, block) in [
        ("U", &dec.u),
        ("T", &dec.t),
        ("S", &dec.s_block),
        ("N", &dec.n_block),
    ] {
        let _ = writeln!(out, "{name} ({}x{})", block.nrows(), block.ncols());
        out.push_str(&render_matrix(block, digits, noise));
    }
    out
}
