//! Verification suites. Each check prints one PASS/FAIL line.

use orbigw::correlators::one_point::{one_point_closed, one_point_series};
use orbigw::correlators::tables::{compute_table, CellValue, TableRequest};
use orbigw::correlators::{extract_invariant, kpoint_invariant, Insertion};
use orbigw::exact::rational::{format_rational, rat};
use orbigw::golden::{erratum, golden_table, golden_tables, GoldenTable};
use orbigw::tde::linear::specialize;
use orbigw::tde::*;
use orbigw::{Error, Result};

use crate::{Suite, VerifyArgs, EXIT_BUDGET, EXIT_FAIL};

#[derive(Default)]
struct Report {
    pass: usize,
    fail: usize,
    trunc: usize,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool) {
        if ok {
            self.pass += 1;
            println!("PASS {name}");
        } else {
            self.fail += 1;
            println!("FAIL {name}");
        }
    }
}

fn tde(st: &OrbifoldStructure, order: usize, r: &mut Report) -> Result<()> {
    for a in st.sectors() {
        let rep = verify_tde(&solution(st, a, order + 1)?)?;
        r.check(
            &format!("tde ({},{}) a={a} residual vanishes to order {}", st.m1, st.m2, rep.vanishing_order),
            rep.vanishing_order >= order,
        );
    }
    Ok(())
}

fn symmetry(st: &OrbifoldStructure, order: usize, r: &mut Report) -> Result<()> {
    for a in st.sectors() {
        let id = format!("({},{}) a={a}", st.m1, st.m2);
        r.check(&format!("symmetry transpose {id}"), check_transpose_symmetry(st, a, order)?);
        r.check(&format!("symmetry reflection {id}"), check_reflection_symmetry(st, a, order)?);
    }
    Ok(())
}

fn algebra(st: &OrbifoldStructure, order: usize, r: &mut Report) -> Result<()> {
    for a in st.sectors() {
        let sol = solution(st, a, order)?;
        let id = format!("({},{}) a={a}", st.m1, st.m2);
        r.check(&format!("algebra trace {id}"), check_trace(&sol)?);
        r.check(&format!("algebra det {id}"), check_det(&sol)?);
        r.check(&format!("algebra polynomial {id}"), checks::check_polynomial(&sol));
        r.check(&format!("algebra power {id}"), check_power_relation(st, a, order)?);
    }
    r.check(&format!("algebra annihilation ({},{})", st.m1, st.m2), check_annihilation(st, order)?);
    Ok(())
}

fn routes(st: &OrbifoldStructure, order: usize, r: &mut Report) -> Result<()> {
    let seeds = [rat(3, 7), rat(-11, 5)];
    for a in st.sectors() {
        let id = format!("({},{}) a={a}", st.m1, st.m2);
        let closed = m_matrix(st, a, order)?.m;
        r.check(&format!("routes gamma {id}"), m_matrix_via_gamma(st, a, order)?.m == closed);
        for s0 in &seeds {
            let lin = solve_tde_linear(st, a, order, s0)?;
            r.check(&format!("routes linear s={s0} {id}"), lin == specialize(&closed, s0));
        }
        if st.m1 == st.m2 {
            r.check(&format!("routes equal-weights {id}"), m_matrix_equal_weights(st, a, order)?.m == closed);
        }
        r.check(
            &format!("routes one-point {id} i<=2 g<=3"),
            one_point_series(st, a, 2, 3)? == one_point_closed(st, a, 2, 3)?,
        );
        let f = Insertion::new(a, 1);
        let mut agree = true;
        for g in 0..=3 {
            agree &= extract_invariant(st, f, 0, f, f, g)? == kpoint_invariant(st, &[f, f], g)?;
        }
        r.check(&format!("routes two-point tau_1(phi_{a})^2 {id} g<=3"), agree);
    }
    Ok(())
}

fn golden_one(t: &GoldenTable, k_max: usize, g_max: usize, r: &mut Report) -> Result<()> {
    let ks: Vec<usize> = (1..=k_max).filter(|k| t.cells.iter().any(|c| c.0 == *k)).collect();
    let gs: Vec<usize> = (0..=g_max).filter(|g| t.cells.iter().any(|c| c.1 == *g)).collect();
    if ks.is_empty() || gs.is_empty() {
        return Ok(());
    }
    let req = TableRequest { structure: t.structure.clone(), fixed: t.fixed, ks, gs, order: None };
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let mut cells = 0;
    for cell in compute_table(&req)? {
        let Some(printed) = t.get(cell.k, cell.g) else { continue };
        cells += 1;
        let CellValue::Value(v) = &cell.value else {
            r.trunc += 1;
            notes.push(format!("k={} g={} TRUNC", cell.k, cell.g));
            continue;
        };
        match erratum(&t.id, cell.k, cell.g) {
            Some(e) if &e.computed == v => notes.push(format!(
                "k={} g={} printed {} is a known erratum, computed {}",
                cell.k,
                cell.g,
                format_rational(printed),
                format_rational(v)
            )),
            _ if v == printed => {}
            _ => bad.push(format!("k={} g={} computed {} printed {}", cell.k, cell.g, format_rational(v), format_rational(printed))),
        }
    }
    r.check(&format!("golden {} ({cells} cells)", t.id), bad.is_empty());
    for line in bad.iter().chain(&notes) {
        println!("    {line}");
    }
    Ok(())
}

fn golden(args: &VerifyArgs, r: &mut Report) -> Result<()> {
    let tables = if args.table_id.eq_ignore_ascii_case("all") {
        golden_tables()
    } else {
        vec![golden_table(&args.table_id).ok_or_else(|| Error::Precondition(format!("unknown table id {:?}", args.table_id)))?]
    };
    for t in &tables {
        golden_one(t, args.kmax, args.gmax, r)?;
    }
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<u8> {
    let st = OrbifoldStructure::new(args.m1, args.m2)?;
    let mut r = Report::default();
    let want = |s: Suite| args.suite == s || args.suite == Suite::All;
    if want(Suite::Tde) {
        tde(&st, args.order, &mut r)?;
    }
    if want(Suite::Symmetry) {
        symmetry(&st, args.order, &mut r)?;
    }
    if want(Suite::Algebra) {
        algebra(&st, args.order, &mut r)?;
    }
    if want(Suite::Routes) {
        routes(&st, args.order, &mut r)?;
    }
    if want(Suite::Golden) {
        golden(args, &mut r)?;
    }
    println!("{} passed, {} failed, {} truncated", r.pass, r.fail, r.trunc);
    Ok(if r.fail > 0 {
        EXIT_FAIL
    } else if r.trunc > 0 {
        EXIT_BUDGET
    } else {
        0
    })
}
