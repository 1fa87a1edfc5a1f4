//! On-disk cache of `M_a` series under `GW_CACHE_DIR`.
//!
//! One text file per structure and sector:
//!
//! ```text
//! orbigw-mseries v1
//! structure 2,1
//! sector 1
//! order 10
//! offset 1/2
//! c <n> <i> <j> <exp>=<coeff> <exp>=<coeff> ...
//! ```
//!
//! Only nonzero coefficients are listed; `i`, `j` are 1-based.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{LaurentPoly, MatSeries, Var};
use crate::tde::{MSolution, OrbifoldStructure};

pub const ENV_VAR: &str = "GW_CACHE_DIR";
const MAGIC: &str = "orbigw-mseries v1";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn file_name(st: &OrbifoldStructure, a: usize) -> String {
    format!("m_{}_{}_{}.txt", st.m1, st.m2, a)
}

pub fn render(sol: &MSolution) -> String {
    let st = &sol.structure;
    let mut out = format!(
        "{MAGIC}\nstructure {}\nsector {}\norder {}\noffset {}\n",
        st.id(),
        sol.a,
        sol.order,
        format_rational(sol.m.offset())
    );
    let l = st.l;
    for n in 0..sol.order {
        for i in 0..l {
            for j in 0..l {
                let c = &sol.m.get(i, j).tail()[n];
                if c.is_zero() {
                    continue;
                }
                out.push_str(&format!("c {n} {} {}", i + 1, j + 1));
                for (e, x) in c.terms() {
                    out.push_str(&format!(" {e}={}", format_rational(x)));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse(text: &str) -> Result<MSolution> {
    let bad = |what: &str| Error::Parse(format!("cache file: {what}"));
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("unknown header"));
    }
    let mut field = |name: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated header"))?;
        line.strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(&format!("expected {name}")))
    };
    let structure = field("structure")?;
    let (m1, m2) = structure.split_once(',').ok_or_else(|| bad("structure"))?;
    let st = OrbifoldStructure::new(m1.parse().map_err(|_| bad("m1"))?, m2.parse().map_err(|_| bad("m2"))?)?;
    let a: usize = field("sector")?.parse().map_err(|_| bad("sector"))?;
    st.check_sector(a)?;
    let order: usize = field("order")?.parse().map_err(|_| bad("order"))?;
    let offset = parse_rational(&field("offset")?)?;
    let l = st.l;
    let mut coeffs = vec![vec![LaurentPoly::zero(Var::S); l * l]; order];
    for line in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("c") {
            return Err(bad("expected coefficient row"));
        }
        let mut idx = || -> Result<usize> { parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("index")) };
        let (n, i, j) = (idx()?, idx()?, idx()?);
        if n >= order || i == 0 || j == 0 || i > l || j > l {
            return Err(bad("index out of range"));
        }
        let mut terms = Vec::new();
        for t in parts {
            let (e, x) = t.split_once('=').ok_or_else(|| bad("term"))?;
            terms.push((e.parse::<i64>().map_err(|_| bad("exponent"))?, parse_rational(x)?));
        }
        coeffs[n][(i - 1) * l + j - 1] = LaurentPoly::from_terms(Var::S, terms);
    }
    let m = MatSeries::from_coeff_matrices(l, Var::S, offset, coeffs);
    Ok(MSolution { structure: st, a, order, m })
}

/// Reads a cached solution; `Ok(None)` when no file exists.
pub fn load(dir: &Path, st: &OrbifoldStructure, a: usize) -> Result<Option<MSolution>> {
    let path = dir.join(file_name(st, a));
    match fs::read_to_string(&path) {
        Ok(text) => {
            let sol = parse(&text)?;
            if &sol.structure != st || sol.a != a {
                return Err(Error::Parse(format!("{} describes another series", path.display())));
            }
            Ok(Some(sol))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Writes through a temporary file so readers never see a partial file.
pub fn store(dir: &Path, sol: &MSolution) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(file_name(&sol.structure, sol.a));
    let tmp = dir.join(format!("{}.{}.tmp", file_name(&sol.structure, sol.a), std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(render(sol).as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tde::m_matrix;

    #[test]
    fn round_trip() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let sol = m_matrix(&st, 1, 6).unwrap();
        assert_eq!(parse(&render(&sol)).unwrap(), sol);
        let dir = tempfile::tempdir().unwrap();
        assert!(load(dir.path(), &st, 1).unwrap().is_none());
        store(dir.path(), &sol).unwrap();
        assert_eq!(load(dir.path(), &st, 1).unwrap(), Some(sol));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("hello").is_err());
        assert!(parse("orbigw-mseries v1\nstructure 2,1\nsector 9\norder 1\noffset 0\n").is_err());
    }
}
