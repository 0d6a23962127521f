use std::fmt::Write;

use planar_switch::classifier::{Certificate, RatioBranch};
use planar_switch::collinearity::ZSet;
use planar_switch::report::{NormalFormReport, Report};
use planar_switch::VerdictKind;

fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub fn verdict(kind: VerdictKind, color: bool) -> String {
    let code = match kind {
        VerdictKind::Guas => "32",
        VerdictKind::UniformlyStableNotGuas => "33",
        VerdictKind::Unbounded => "31",
    };
    paint(kind.label(), code, color)
}

fn zset(z: &ZSet) -> String {
    match z {
        ZSet::OriginOnly => "origin only".into(),
        ZSet::OneLine(m) => format!("one line, slope {m}"),
        ZSet::TwoLines { plus, minus } => format!("two lines, slopes m+ = {plus}, m- = {minus}"),
    }
}

pub fn certificate(c: &Certificate) -> String {
    match c {
        Certificate::StaticInstability { u0, unstable_eigenvalue } => {
            format!("StaticInstability: u0 = {u0}, unstable eigenvalue = {unstable_eigenvalue}")
        }
        Certificate::RatioRotation(r) => {
            let branch = match r.formula_branch {
                RatioBranch::GenericBranch => "generic",
                RatioBranch::DegenerateBranch => "degenerate",
            };
            format!("RatioRotation: R = {}, t1 = {}, t2 = {} ({branch} branch)", r.r, r.t1, r.t2)
        }
        Certificate::ProjectiveCone(arc) => {
            format!("ProjectiveCone: arc from {} to {} rad (m+ = {}, m- = {})", arc.start, arc.end, arc.m_plus, arc.m_minus)
        }
        Certificate::SemidefiniteLyapunov { v_coeffs, v_matrix } => format!(
            "SemidefiniteLyapunov: V = {} y1^2 + {} y2^2 in normal form, P = [[{}, {}], [{}, {}]]",
            v_coeffs[0], v_coeffs[1], v_matrix.a11, v_matrix.a12, v_matrix.a21, v_matrix.a22
        ),
        other => other.name().to_string(),
    }
}

pub fn report(r: &Report, color: bool) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "label:        {label}");
    }
    if let Some(case) = r.case {
        let note = if r.swapped { " (B is the nondiagonalizable mode)" } else { "" };
        let _ = writeln!(s, "case:         {case}{note}");
    }
    if let Some(inv) = &r.invariants {
        let _ = writeln!(
            s,
            "invariants:   eta = {}, rho = {}, k = {}, delta = {}, Delta = {}",
            inv.eta, inv.rho, inv.k, inv.delta, inv.big_delta
        );
    }
    if let Some(o) = r.orientation {
        let _ = writeln!(s, "orientation:  {o:?}");
    }
    if let Some(z) = &r.slopes {
        let _ = writeln!(s, "Z:            {}", zset(z));
    }
    if let (Some(p), Some(m)) = (r.alpha_plus, r.alpha_minus) {
        let _ = writeln!(s, "alpha:        alpha+ = {p}, alpha- = {m}");
    }
    let _ = writeln!(s, "verdict:      {}", verdict(r.verdict, color));
    let _ = writeln!(s, "certificate:  {}", certificate(&r.certificate));
    for w in &r.warnings {
        let _ = writeln!(s, "warning:      {w}");
    }
    let _ = writeln!(s, "tolerances:   degenerate = {}, ratio = {}", r.tolerances.degenerate, r.tolerances.ratio);
    let _ = writeln!(s, "version:      {}", r.version);
    s
}

fn matrix(m: &[[f64; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

pub fn normal_form(r: &NormalFormReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "label:     {label}");
    }
    let note = if r.swapped { " (inputs swapped)" } else { "" };
    let _ = writeln!(s, "case:      {}{note}", r.case);
    let _ = writeln!(s, "eta, rho:  {}, {}", r.eta, r.rho);
    let _ = writeln!(s, "k:         {}", r.k);
    let _ = writeln!(s, "delta:     {}", r.delta);
    let _ = writeln!(s, "tau:       {}", r.tau);
    let _ = writeln!(s, "T:         {}", matrix(&r.t));
    let _ = writeln!(s, "A_nf:      {}", matrix(&r.a_nf));
    let _ = writeln!(s, "B_nf:      {}", matrix(&r.b_nf));
    let _ = writeln!(s, "residuals: A {}, B {}", r.residual_a, r.residual_b);
    for w in &r.warnings {
        let _ = writeln!(s, "warning:   {w}");
    }
    s
}
