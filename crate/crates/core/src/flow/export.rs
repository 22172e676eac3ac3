use std::io::{self, Write};

use super::model::LinearProgram;

const TERMS_PER_LINE: usize = 8;

/// Writes `lp` in CPLEX LP text format with stable names
/// (`theta`, `f_s_d_i_j`, `g_s_i_j`; rows `src_*`, `dst_*`, `cons_*`, `bal_*`, `cap_*`).
pub fn write_lp(lp: &LinearProgram, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "\\ max-concurrent-flow throughput LP")?;
    writeln!(w, "\\ {} columns, {} rows", lp.columns.len(), lp.rows.len())?;
    writeln!(w, "Maximize")?;
    let objective: Vec<(usize, f64)> = lp
        .columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.cost != 0.0)
        .map(|(k, c)| (k, c.cost))
        .collect();
    write!(w, " obj:")?;
    write_terms(lp, &objective, &mut w)?;
    writeln!(w)?;
    writeln!(w, "Subject To")?;
    for row in &lp.rows {
        let name = row.constraint.name();
        let bounds: Vec<(&str, &str, f64)> = if row.lower == row.upper {
            vec![("", "=", row.lower)]
        } else {
            let mut b = Vec::new();
            if row.lower.is_finite() {
                b.push((if row.upper.is_finite() { "_lo" } else { "" }, ">=", row.lower));
            }
            if row.upper.is_finite() {
                b.push((if row.lower.is_finite() { "_hi" } else { "" }, "<=", row.upper));
            }
            b
        };
        for (suffix, op, rhs) in bounds {
            write!(w, " {name}{suffix}:")?;
            write_terms(lp, &row.coeffs, &mut w)?;
            writeln!(w, " {op} {rhs}")?;
        }
    }
    let bounded: Vec<_> = lp
        .columns
        .iter()
        .filter(|c| c.lower != 0.0 || c.upper.is_finite())
        .collect();
    if !bounded.is_empty() {
        writeln!(w, "Bounds")?;
        for c in bounded {
            let lo = if c.lower.is_finite() {
                c.lower.to_string()
            } else {
                "-inf".into()
            };
            let hi = if c.upper.is_finite() {
                c.upper.to_string()
            } else {
                "+inf".into()
            };
            writeln!(w, " {lo} <= {} <= {hi}", c.var.name())?;
        }
    }
    writeln!(w, "End")
}

fn write_terms(lp: &LinearProgram, terms: &[(usize, f64)], w: &mut impl Write) -> io::Result<()> {
    if terms.is_empty() {
        return write!(w, " 0 theta");
    }
    for (k, &(col, coef)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            write!(w, "\n   ")?;
        }
        let sign = if coef < 0.0 { '-' } else { '+' };
        let name = lp.columns[col].var.name();
        let mag = coef.abs();
        if mag == 1.0 {
            write!(w, " {sign} {name}")?;
        } else {
            write!(w, " {sign} {mag} {name}")?;
        }
    }
    Ok(())
}
