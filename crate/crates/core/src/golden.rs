//! Published invariant tables and primary lists, embedded as reference data.

use crate::correlators::Insertion;
use crate::error::{Error, Result};
use crate::exact::rational::{parse_rational, Rational};
use crate::tde::OrbifoldStructure;

const TABLES: &str = include_str!("../data/golden_tables.txt");

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub id: String,
    pub structure: OrbifoldStructure,
    pub fixed: Insertion,
    /// `(k, g, value)`; zero marks a cell with no invariant.
    pub cells: Vec<(usize, usize, Rational)>,
}

impl GoldenTable {
    pub fn get(&self, k: usize, g: usize) -> Option<&Rational> {
        self.cells.iter().find(|c| c.0 == k && c.1 == g).map(|c| &c.2)
    }
}

fn parse_tables(text: &str) -> Result<Vec<GoldenTable>> {
    let bad = |line: &str| Error::Parse(format!("golden tables: {line}"));
    let mut out: Vec<GoldenTable> = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts[0] == "table" {
            let field = |key: &str| {
                parts.iter().find_map(|p| p.strip_prefix(key)).ok_or_else(|| bad(line))
            };
            let (m1, m2) = field("structure=")?.split_once(',').ok_or_else(|| bad(line))?;
            let st = OrbifoldStructure::new(m1.parse().map_err(|_| bad(line))?, m2.parse().map_err(|_| bad(line))?)?;
            let a = field("a=")?.parse().map_err(|_| bad(line))?;
            let i = field("i=")?.parse().map_err(|_| bad(line))?;
            out.push(GoldenTable { id: parts[1].to_string(), structure: st, fixed: Insertion::new(a, i), cells: Vec::new() });
        } else {
            let [k, g, v] = parts[..] else { return Err(bad(line)) };
            let table = out.last_mut().ok_or_else(|| bad(line))?;
            table.cells.push((k.parse().map_err(|_| bad(line))?, g.parse().map_err(|_| bad(line))?, parse_rational(v)?));
        }
    }
    Ok(out)
}

pub fn golden_tables() -> Vec<GoldenTable> {
    parse_tables(TABLES).expect("embedded tables parse")
}

/// Looks a table up by id; `P21-tau11` and `p21tau11` name the same table.
pub fn golden_table(id: &str) -> Option<GoldenTable> {
    let id = id.replace('-', "");
    golden_tables().into_iter().find(|t| t.id.eq_ignore_ascii_case(&id))
}

/// A printed cell that disagrees with the computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub table: &'static str,
    pub k: usize,
    pub g: usize,
    pub printed: Rational,
    pub computed: Rational,
}

pub fn errata() -> Vec<Erratum> {
    use crate::exact::rational::rat;
    vec![
        Erratum { table: "P21tau12", k: 2, g: 1, printed: rat(7, 4), computed: rat(7, 24) },
        Erratum { table: "P21tau12", k: 7, g: 4, printed: rat(-177821, 9216), computed: rat(177821, 9216) },
    ]
}

pub fn erratum(table: &str, k: usize, g: usize) -> Option<Erratum> {
    errata().into_iter().find(|e| e.table == table && e.k == k && e.g == g)
}

/// One entry of a primary list: `<tau_0(phi_a)^k>_(g,d) = value`.
#[derive(Clone, Debug)]
pub struct PrimaryEntry {
    pub m1: usize,
    pub m2: usize,
    pub a: usize,
    pub k: usize,
    pub g: usize,
    /// The degree as printed next to the value.
    pub d: u64,
    pub value: Rational,
    /// The `(2,2)` list was partly obtained by guesswork.
    pub conjectural: bool,
}

/// Nonzero entries of the primary lists; every other `<tau_0(phi_a)^k>_g`
/// is listed as zero. For `(2,2)` the family `2^(k-1)` at `(a,g,d) = (2,0,2)`
/// is expanded for `k <= 6`.
pub fn primary_entries() -> Vec<PrimaryEntry> {
    use crate::exact::rational::{int, rat};
    let e = |m1, m2, a, k, g, d, value, conjectural| PrimaryEntry { m1, m2, a, k, g, d, value, conjectural };
    let mut v = vec![
        e(2, 1, 1, 1, 0, 2, int(1), false),
        e(2, 1, 1, 4, 0, 0, rat(-1, 4), false),
        e(2, 1, 2, 1, 1, 0, rat(-1, 24), false),
        e(3, 1, 1, 1, 0, 1, int(1), false),
        e(3, 1, 1, 3, 0, 0, rat(1, 3), false),
        e(3, 1, 2, 2, 0, 1, rat(1, 3), false),
        e(3, 1, 2, 6, 0, 0, rat(-1, 27), false),
        e(3, 1, 3, 1, 1, 0, rat(-1, 24), false),
        e(2, 2, 1, 3, 0, 0, rat(-1, 4), true),
        e(2, 2, 2, 2, 0, 1, rat(-1, 4), true),
        e(2, 2, 2, 1, 1, 0, rat(-1, 24), true),
    ];
    for k in 1..=6 {
        v.push(e(2, 2, 2, k, 0, 2, int(1 << (k - 1)), true));
    }
    v
}
