//! CSV, JSON and Markdown output for tables. Fractions stay exact everywhere:
//! CSV and Markdown print `p/q`, JSON carries numerator and denominator as
//! decimal strings.

use orbigw::correlators::tables::{Cell, CellValue};
use orbigw::correlators::{Insertion, InvariantRecord};
use orbigw::exact::rational::format_rational;
use orbigw::tde::OrbifoldStructure;
use serde::Serialize;

pub const TRUNC: &str = "TRUNC";

/// `<tau_1(phi_1)^5>_(g=0,d=3)`, repeated insertions collapsed.
pub fn record_label(r: &InvariantRecord) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut n = 0;
    while n < r.insertions.len() {
        let x = r.insertions[n];
        let run = r.insertions[n..].iter().take_while(|y| **y == x).count();
        let base = format!("tau_{}(phi_{})", x.i, x.a);
        parts.push(if run > 1 { format!("{base}^{run}") } else { base });
        n += run;
    }
    match r.d {
        Some(d) => format!("<{}>_(g={},d={})", parts.join(" "), r.g, d),
        None => format!("<{}>_(g={})", parts.join(" "), r.g),
    }
}

fn cell_text(c: &Cell) -> String {
    match &c.value {
        CellValue::Trunc => TRUNC.to_string(),
        CellValue::Value(_) if c.d.is_none() => String::new(),
        CellValue::Value(v) => format_rational(v),
    }
}

pub fn csv(cells: &[Cell]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "g", "d", "value"])?;
    for c in cells {
        let d = c.d.map(|d| d.to_string()).unwrap_or_default();
        w.write_record([c.k.to_string(), c.g.to_string(), d, cell_text(c)])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

#[derive(Serialize)]
struct JsonTable {
    m1: usize,
    m2: usize,
    sector: usize,
    level: usize,
    order: usize,
    cells: Vec<JsonCell>,
}

#[derive(Serialize)]
struct JsonCell {
    k: usize,
    g: usize,
    d: Option<u64>,
    /// `value`, `vanishes` or `trunc`.
    status: &'static str,
    value: Option<JsonRational>,
}

#[derive(Serialize)]
struct JsonRational {
    num: String,
    den: String,
}

pub fn json(st: &OrbifoldStructure, fixed: Insertion, order: usize, cells: &[Cell]) -> String {
    let cells = cells
        .iter()
        .map(|c| {
            let (status, value) = match &c.value {
                CellValue::Trunc => ("trunc", None),
                CellValue::Value(_) if c.d.is_none() => ("vanishes", None),
                CellValue::Value(v) => ("value", Some(JsonRational { num: v.numer().to_string(), den: v.denom().to_string() })),
            };
            JsonCell { k: c.k, g: c.g, d: c.d, status, value }
        })
        .collect();
    let t = JsonTable { m1: st.m1, m2: st.m2, sector: fixed.a, level: fixed.i, order, cells };
    let mut s = serde_json::to_string_pretty(&t).expect("serializable");
    s.push('\n');
    s
}

/// Rows `k`, columns `g`; blank where the degree-dimension rule has no solution.
pub fn markdown(st: &OrbifoldStructure, fixed: Insertion, k_max: usize, g_max: usize, cells: &[Cell]) -> String {
    let mut out = format!(
        "<tau_{}(phi_{})^k>_g for ({},{})\n\n| k \\ g |",
        fixed.i, fixed.a, st.m1, st.m2
    );
    for g in 0..=g_max {
        out.push_str(&format!(" {g} |"));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(g_max + 1));
    out.push('\n');
    for k in 1..=k_max {
        out.push_str(&format!("| {k} |"));
        for g in 0..=g_max {
            let text = cells.iter().find(|c| c.k == k && c.g == g).map(cell_text).unwrap_or_default();
            out.push_str(&format!(" {text} |"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbigw::exact::rational::rat;

    #[test]
    fn labels_collapse_repeats() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let t = Insertion::new(1, 1);
        let r = InvariantRecord::new(&st, vec![t, Insertion::new(2, 0), t], 0, rat(1, 2));
        assert_eq!(record_label(&r), "<tau_1(phi_1)^2 tau_0(phi_2)>_(g=0,d=2)");
    }

    #[test]
    fn cells_render_exactly() {
        let cells = vec![
            Cell { k: 2, g: 0, d: Some(2), value: CellValue::Value(rat(-7, 24)) },
            Cell { k: 2, g: 1, d: None, value: CellValue::Value(rat(0, 1)) },
            Cell { k: 3, g: 0, d: Some(1), value: CellValue::Trunc },
        ];
        assert_eq!(csv(&cells).unwrap(), "k,g,d,value\n2,0,2,-7/24\n2,1,,\n3,0,1,TRUNC\n");
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let j = json(&st, Insertion::new(1, 1), 9, &cells);
        assert!(j.contains("\"num\": \"-7\"") && j.contains("\"den\": \"24\""));
        let md = markdown(&st, Insertion::new(1, 1), 3, 1, &cells);
        assert!(md.contains("| 2 | -7/24 |  |"));
        assert!(md.contains("| 3 | TRUNC |  |"));
    }
}
