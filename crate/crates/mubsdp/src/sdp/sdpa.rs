//! SDPA sparse format (`.dat-s`) export and solver status parsing.
//!
//! The exported problem is `Σ y_i F_i - F_0 ⪰ 0` with zero objective. One-by-one
//! blocks are merged into a single diagonal block (negative size).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{SdpError, SdpInstance};
use crate::scalar::rational_to_decimal;
use crate::word::format_word;

pub const DEFAULT_DIGITS: usize = 40;

/// Solver verdicts on the feasibility problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    Feasible,
    Infeasible,
    Unknown,
}

impl std::fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverStatus::Feasible => "feasible",
            SolverStatus::Infeasible => "infeasible",
            SolverStatus::Unknown => "unknown",
        })
    }
}

/// Maps an SDPA phase string.
pub fn status_of_phase(phase: &str) -> SolverStatus {
    match phase {
        "pINF" | "dINF" | "pdINF" => SolverStatus::Infeasible,
        "pdOPT" | "pdFEAS" => SolverStatus::Feasible,
        _ => SolverStatus::Unknown,
    }
}

/// Reads the `phase.value = ...` line of an SDPA output file.
pub fn parse_solver_output(text: &str) -> Result<SolverStatus, SdpError> {
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("phase.value") {
            let phase = rest
                .trim_start()
                .strip_prefix('=')
                .map(str::trim)
                .and_then(|s| s.split_whitespace().next())
                .ok_or_else(|| SdpError::SolverOutput(format!("no phase after {line:?}")))?;
            return Ok(status_of_phase(phase));
        }
    }
    Err(SdpError::SolverOutput("no phase.value line".into()))
}

pub fn parse_solver_output_file(path: &Path) -> Result<SolverStatus, SdpError> {
    parse_solver_output(&fs::read_to_string(path)?)
}

struct Layout {
    /// For each instance block: (SDPA block number, offset within it).
    place: Vec<(usize, usize)>,
    sizes: Vec<i64>,
}

fn layout(inst: &SdpInstance) -> Layout {
    let mut place = Vec::new();
    let mut sizes = Vec::new();
    let n_diag = inst.blocks.iter().filter(|b| b.size() == 1).count();
    let diag_no = inst.blocks.iter().filter(|b| b.size() > 1).count() + 1;
    let mut diag_used = 0;
    for b in &inst.blocks {
        if b.size() == 1 {
            place.push((diag_no, diag_used));
            diag_used += 1;
        } else {
            sizes.push(b.size() as i64);
            place.push((sizes.len(), 0));
        }
    }
    if n_diag > 0 {
        sizes.push(-(n_diag as i64));
    }
    Layout { place, sizes }
}

/// Renders the instance. With no free variable a dummy `y_1 >= 0` is added so
/// the file stays well formed.
pub fn render_sdpa(inst: &SdpInstance, digits: usize) -> String {
    let pr = &inst.problem;
    let m = inst.free.len();
    let dummy = m == 0;
    let mut lay = layout(inst);
    let dummy_block = lay.sizes.len() + 1;
    if dummy {
        lay.sizes.push(-1);
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "\"mubsdp d={} k={} t={} mode={} vars={}{}\"",
        pr.d,
        pr.k,
        pr.level,
        pr.mode,
        m,
        if dummy { " (dummy variable)" } else { "" }
    );
    let _ = writeln!(s, "{}", m.max(1));
    let _ = writeln!(s, "{}", lay.sizes.len());
    let _ = writeln!(
        s,
        "{}",
        lay.sizes.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(s, "{}", vec!["0"; m.max(1)].join(" "));

    // matno -> lines; F_0 = -constant part.
    let mut per_mat: Vec<Vec<(usize, usize, usize, BigRational)>> = vec![Vec::new(); m.max(1) + 1];
    for (bi, b) in inst.blocks.iter().enumerate() {
        let (blk, off) = lay.place[bi];
        let n = b.size();
        for a in 0..n {
            for c in a..n {
                let f = &b.entries[a][c];
                let (i, j) = (off + a + 1, off + c + 1);
                if !f.constant.is_zero() {
                    per_mat[0].push((blk, i, j, -f.constant.clone()));
                }
                for (&v, coef) in &f.coeffs {
                    per_mat[v + 1].push((blk, i, j, coef.clone()));
                }
            }
        }
    }
    if dummy {
        per_mat[1].push((dummy_block, 1, 1, BigRational::from_integer(1.into())));
    }
    for (matno, lines) in per_mat.iter_mut().enumerate() {
        lines.sort_by_key(|a| (a.0, a.1, a.2));
        for (blk, i, j, v) in lines.iter() {
            let _ = writeln!(s, "{matno} {blk} {i} {j} {}", render_value(v, digits));
        }
    }
    s
}

fn render_value(v: &BigRational, digits: usize) -> String {
    if v.is_integer() && v.numer().abs().bits() < 64 {
        v.numer().to_string()
    } else if v.is_negative() {
        format!("-{}", rational_to_decimal(&v.abs(), digits))
    } else {
        rational_to_decimal(v, digits)
    }
}

/// Writes the `.dat-s` file.
pub fn export_sdpa(inst: &SdpInstance, path: &Path, digits: usize) -> Result<(), SdpError> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, render_sdpa(inst, digits))?;
    Ok(())
}

/// Key-value sidecar: variable order and the back-substitution map.
pub fn render_sidecar(inst: &SdpInstance) -> String {
    let pr = &inst.problem;
    let mut s = String::new();
    let _ = writeln!(s, "d={}\nk={}\nt={}\nmode={}", pr.d, pr.k, pr.level, pr.mode);
    let _ = writeln!(s, "size={}", pr.size());
    let _ = writeln!(s, "verdict=undetermined");
    let _ = writeln!(s, "variables={}", inst.variables.len());
    let _ = writeln!(s, "free={}", inst.free.len());
    let _ = writeln!(s, "linear={}", inst.constraints.len());
    let _ = writeln!(
        s,
        "blocks={}",
        inst.block_sizes()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    for (l, &g) in inst.free.iter().enumerate() {
        let _ = writeln!(s, "y{}={}", l + 1, format_word(&inst.variables[g]));
    }
    for (&v, f) in &inst.substitution {
        let _ = writeln!(s, "subst.{}={}", format_word(&inst.variables[v]), render_form(f, inst));
    }
    s
}

fn render_form(f: &crate::reducer::Form, inst: &SdpInstance) -> String {
    let mut parts = vec![f.constant.to_string()];
    for (&v, c) in &f.coeffs {
        parts.push(format!("({c})*{}", format_word(&inst.variables[v])));
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reducer::Form;
    use crate::scalar::rat;
    use crate::sdp::{Block, Level, Mode, Problem};
    use std::collections::BTreeMap;

    fn one_var() -> SdpInstance {
        let mut f = Form::variable(0);
        f.constant = rat(-1, 1);
        SdpInstance {
            problem: Problem::new(2, 2, Level::integer(1), Mode::Full).unwrap(),
            variables: vec![vec![]],
            free: vec![0],
            substitution: BTreeMap::new(),
            constraints: vec![],
            blocks: vec![Block {
                name: "a".into(),
                labels: vec!["a".into()],
                entries: vec![vec![f]],
            }],
        }
    }

    #[test]
    fn smoke_format() {
        let text = render_sdpa(&one_var(), 10);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(&lines[1..], &["1", "1", "-1", "0", "0 1 1 1 1", "1 1 1 1 1"]);
    }

    #[test]
    fn phases() {
        assert_eq!(
            parse_solver_output("phase.value = pdOPT").unwrap(),
            SolverStatus::Feasible
        );
        assert_eq!(
            parse_solver_output("x\nphase.value  = dINF\n").unwrap(),
            SolverStatus::Infeasible
        );
        assert_eq!(
            parse_solver_output("phase.value = noINFO").unwrap(),
            SolverStatus::Unknown
        );
        assert!(parse_solver_output("objValPrimal = 0").is_err());
    }

    #[test]
    fn fractional_values() {
        assert_eq!(render_value(&rat(-1, 3), 5), "-3.3333e-1");
        assert_eq!(render_value(&rat(7, 1), 5), "7");
    }
}
