use fsslab_core::catalog::{nla_record, tables};
use fsslab_core::exec::Exec;
use fsslab_core::fss::page_dims;

fn check(rows: Vec<tables::TableRow>) {
    let mut bad = Vec::new();
    for row in rows {
        for s in &row.samples {
            let m = s.tuple.model().unwrap();
            let t = page_dims(&m, 3, Exec::Parallel).unwrap();
            let got = [t.get(1, 0, 2), t.get(2, 0, 2), t.get(3, 0, 2)];
            if got != row.expected {
                bad.push(format!("{} {}: got {:?} want {:?}", row.row, s.tuple, got, row.expected));
            }
            if let Some((name, params)) = &s.nla {
                let real = nla_record(name).unwrap().real_model(params).unwrap();
                let b_real = real.betti(Exec::Parallel);
                let b_cx = m.de_rham_betti(Exec::Parallel);
                if b_real != b_cx {
                    bad.push(format!("{} {}: betti {:?} vs {name} {:?}", row.row, s.tuple, b_cx, b_real));
                }
                let asc = m.cochains().ascending_type();
                if asc != real.ascending_type() {
                    bad.push(format!("{} {}: ascending {:?} vs {:?}", row.row, s.tuple, asc, real.ascending_type()));
                }
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn table1_rows() {
    check(tables::table1());
}

#[test]
fn table2_rows() {
    check(tables::table2());
}
