use orbigw::correlators::tables::{compute_table, CellValue, TableRequest};
use orbigw::golden::{erratum, golden_table, golden_tables, GoldenTable};

fn run(t: &GoldenTable, ks: Vec<usize>, gs: Vec<usize>) -> Vec<String> {
    let mut bad = Vec::new();
    let req = TableRequest { structure: t.structure.clone(), fixed: t.fixed, ks, gs, order: None };
    for cell in compute_table(&req).unwrap() {
        let printed = t.get(cell.k, cell.g).unwrap();
        let fixed = erratum(&t.id, cell.k, cell.g);
        let CellValue::Value(v) = &cell.value else {
            bad.push(format!("{} k={} g={}: truncated", t.id, cell.k, cell.g));
            continue;
        };
        match fixed {
            Some(e) => {
                let want = e.computed;
                assert_ne!(&want, printed);
                if v != &want {
                    bad.push(format!("{} k={} g={}: got {v}, erratum {want}", t.id, cell.k, cell.g));
                }
            }
            None if v != printed => bad.push(format!("{} k={} g={}: got {v}, printed {printed}", t.id, cell.k, cell.g)),
            None => {}
        }
    }
    bad
}

#[test]
fn tables_small_grid() {
    let mut bad = Vec::new();
    for t in golden_tables() {
        let ks: Vec<usize> = (1..=6).filter(|k| t.cells.iter().any(|c| c.0 == *k)).collect();
        let gs: Vec<usize> = (0..=3).filter(|g| t.cells.iter().any(|c| c.1 == *g)).collect();
        bad.extend(run(&t, ks, gs));
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn sign_erratum_outside_small_grid() {
    let t = golden_table("P21tau12").unwrap();
    let bad = run(&t, vec![7], vec![4]);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn every_table_has_the_minimum_grid() {
    let tables = golden_tables();
    assert_eq!(tables.len(), 14);
    for t in &tables {
        // Tables with a parity rule only print the surviving k.
        let ks = (1..=6).filter(|&k| (0..=3).any(|g| t.get(k, g).is_some())).count();
        assert!(ks >= 3, "{}", t.id);
    }
}
