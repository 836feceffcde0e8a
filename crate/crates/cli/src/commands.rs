//! One function per subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use fsslab_core::catalog::{self, nla_record, tables, CATALOG, NLA_RECORDS};
use fsslab_core::cdga::{parse_cdga, pittie_so9, pittie_so9_with, CdgaModel, Which};
use fsslab_core::exec::Exec;
use fsslab_core::fss::{class_membership, degeneration_report, dr_rank, entry, page_dims};
use fsslab_core::hermitian::{c1_constant, is_balanced, is_kth_gauduchon, is_skt, is_standard, parse_metric};
use fsslab_core::linalg::{parse_rational, rank_info, Rational};
use fsslab_core::model::{parse_form, parse_model, ComplexModel};
use fsslab_core::products::{kunneth_page, product_model};
use serde_json::{json, Value};

use crate::args::{CatalogAction, CdgaAction, ModelArgs, TableId};
use crate::report::{grid, table_json, CliError, Outcome};

const EXEC: Exec = Exec::Parallel;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse_bindings(raw: &[String]) -> Result<BTreeMap<String, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| CliError::Input(format!("expected NAME=VALUE, got '{item}'")))?;
        let v = parse_rational(v.trim()).ok_or_else(|| CliError::Input(format!("'{v}' is not a rational number")))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(CliError::Input(format!("parameter '{k}' given twice")));
        }
    }
    Ok(out)
}

fn show(b: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    b.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn parse_pair(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("expected P,Q, got '{s}'"));
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

/// A model from a file or `catalog:<name>`, with parameters bound.
pub fn load_model(spec: &str, bindings: &BTreeMap<String, Rational>) -> Result<ComplexModel, CliError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog::emit(name, bindings)?);
    }
    let text = read(Path::new(spec))?;
    let parsed = parse_model(&text, bindings).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
    let declared: Vec<&str> = parsed.params.iter().map(|p| p.name.as_str()).collect();
    if let Some(k) = bindings.keys().find(|k| !declared.contains(&k.as_str())) {
        return Err(CliError::Input(format!("{spec} declares no parameter '{k}'")));
    }
    Ok(parsed.model)
}

fn model_of(args: &ModelArgs) -> Result<(ComplexModel, BTreeMap<String, Rational>), CliError> {
    let b = parse_bindings(&args.params)?;
    Ok((load_model(&args.model, &b)?, b))
}

pub fn pages(args: &ModelArgs, rmax: Option<usize>, bidegree: Option<&str>) -> Result<Outcome, CliError> {
    let (m, b) = model_of(args)?;
    let r_max = rmax.unwrap_or(m.dim() + 1);
    let t = page_dims(&m, r_max, EXEC)?;
    let only = bidegree.map(parse_pair).transpose()?;
    let mut text = format!("{} (n = {}), pages 1..{r_max}\n\n", m.name(), m.dim());
    let outputs = match only {
        Some((p, q)) => {
            if p > m.dim() || q > m.dim() {
                return Err(CliError::Input(format!("bidegree ({p},{q}) is outside [0,{}]^2", m.dim())));
            }
            let seq: Vec<usize> = (1..=r_max).map(|r| t.get(r, p, q)).collect();
            for (r, e) in seq.iter().enumerate() {
                let _ = writeln!(text, "e_{}^({p},{q}) = {e}", r + 1);
            }
            json!({ "bidegree": [p, q], "e": seq })
        }
        None => {
            text.push_str(&grid(&t));
            let mut o = table_json(&t);
            if r_max > m.dim() {
                let rep = degeneration_report(&t);
                let _ = writeln!(text, "degenerates at E_{}", rep.degenerates_at);
                for (r, p, q, a, b) in &rep.drops {
                    let _ = writeln!(text, "  e_{r}^({p},{q}) = {a} -> e_{}^({p},{q}) = {b}", r + 1);
                }
                o["degenerates_at"] = json!(rep.degenerates_at);
                o["drops"] = json!(rep.drops);
            }
            o
        }
    };
    let bits = t.max_bits();
    let mut out = Outcome::new("pages", outputs, text).input("model", &args.model).params(show(&b)).bits(bits).table(t);
    out.report.inputs.insert("r_max".into(), r_max.to_string());
    if let Some(s) = bidegree {
        out.report.inputs.insert("bidegree".into(), s.to_string());
    }
    Ok(out)
}

pub fn betti(args: &ModelArgs) -> Result<Outcome, CliError> {
    let (m, b) = model_of(args)?;
    let betti = m.de_rham_betti(EXEC);
    let text = format!("{}: b = {:?}\n", m.name(), betti);
    Ok(Outcome::new("betti", json!({ "betti": betti }), text).input("model", &args.model).params(show(&b)))
}

pub struct MetricChecks {
    pub balanced: bool,
    pub skt: bool,
    pub gauduchon: Option<usize>,
    pub standard: bool,
    pub c1: bool,
}

/// With no selection every predicate is reported and none gates the exit
/// code; selected predicates must all hold.
pub fn check_metric(args: &ModelArgs, metric: &Path, sel: MetricChecks) -> Result<Outcome, CliError> {
    let (m, b) = model_of(args)?;
    let g = parse_metric(&read(metric)?).map_err(|e| CliError::Input(format!("{}: {e}", metric.display())))?;
    if g.dim() != m.dim() {
        return Err(CliError::Input(format!("metric has dimension {}, model has {}", g.dim(), m.dim())));
    }
    let n = m.dim();
    let all = !(sel.balanced || sel.skt || sel.gauduchon.is_some() || sel.standard || sel.c1);
    let mut results = serde_json::Map::new();
    let mut text = format!("{} with metric {}\n", m.name(), g.name());
    let mut ok = true;
    let mut record = |name: String, value: bool, gate: bool, text: &mut String| {
        let _ = writeln!(text, "{name}: {}", if value { "yes" } else { "no" });
        results.insert(name, json!(value));
        if gate && !value {
            ok = false;
        }
    };
    if all || sel.balanced {
        record("balanced".into(), is_balanced(&m, &g)?, !all, &mut text);
    }
    if all || sel.skt {
        record("skt".into(), is_skt(&m, &g)?, !all, &mut text);
    }
    if let Some(k) = sel.gauduchon {
        record(format!("gauduchon_{k}"), is_kth_gauduchon(&m, &g, k)?, true, &mut text);
    } else if all {
        for k in 1..n {
            record(format!("gauduchon_{k}"), is_kth_gauduchon(&m, &g, k)?, false, &mut text);
        }
    }
    if (all && n >= 2) || sel.standard {
        record("standard".into(), is_standard(&m, &g)?, !all, &mut text);
    }
    if (all && n >= 2) || sel.c1 {
        let c = c1_constant(&m, &g)?;
        let _ = writeln!(text, "c1 = {c}");
        results.insert("c1".into(), json!(c.to_string()));
    }
    Ok(Outcome::new("check-metric", Value::Object(results), text)
        .input("model", &args.model)
        .input("metric", metric.display().to_string())
        .params(show(&b))
        .passed(ok))
}

pub fn class(args: &ModelArgs, form: &str, r: usize, bidegree: &str) -> Result<Outcome, CliError> {
    let (m, b) = model_of(args)?;
    let (p, q) = parse_pair(bidegree)?;
    let x = parse_form(form, m.dim()).map_err(|e| CliError::Input(format!("form: {e}")))?;
    let mem = class_membership(&m, r, p as i64, q as i64, &x)?;
    let verdict = match (mem.in_x, mem.in_y) {
        (false, _) => format!("not in X_{r}: does not survive to E_{r}"),
        (true, true) => format!("zero class on E_{r}"),
        (true, false) => format!("nonzero class on E_{r}"),
    };
    let text = format!("{x} in bidegree ({p},{q}): {verdict}\n");
    let outputs = json!({ "in_x": mem.in_x, "in_y": mem.in_y, "nonzero_class": mem.is_nonzero_class() });
    Ok(Outcome::new("class", outputs, text)
        .input("model", &args.model)
        .input("form", form)
        .input("page", r.to_string())
        .input("bidegree", bidegree)
        .params(show(&b))
        .passed(mem.in_x))
}

pub fn catalog_cmd(action: &CatalogAction) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in CATALOG {
                let params = if e.params.is_empty() { String::new() } else { format!(" [{}]", e.params.join(", ")) };
                let _ = writeln!(text, "{:<22} {}{params}", e.name, e.description);
                rows.push(json!({ "name": e.name, "params": e.params, "description": e.description }));
            }
            Ok(Outcome::new("catalog list", json!(rows), text))
        }
        CatalogAction::Emit { name, params } => {
            let b = parse_bindings(params)?;
            let text = match catalog::template(name) {
                Some(t) if b.is_empty() => t.to_string(),
                _ => catalog::emit(name, &b)?.to_model_file(),
            };
            Ok(Outcome::new("catalog emit", json!({ "model_file": text }), text.clone()).input("name", name).params(show(&b)))
        }
        CatalogAction::Nla { name } => {
            let recs: Vec<_> = match name {
                Some(n) => vec![nla_record(n).ok_or_else(|| CliError::Input(format!("unknown algebra '{n}'")))?],
                None => NLA_RECORDS.iter().collect(),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in recs {
                let _ =
                    writeln!(text, "{:<5} family {:?}  ascending {:?}  ({})  {}", r.name, r.family, r.ascending, r.equations, r.constraint);
                rows.push(json!({
                    "name": r.name, "family": format!("{:?}", r.family), "params": r.params,
                    "equations": r.equations, "ascending": r.ascending, "constraint": r.constraint,
                }));
            }
            Ok(Outcome::new("catalog nla", json!(rows), text))
        }
    }
}

pub fn product(left: &str, right: &str) -> Result<Outcome, CliError> {
    let none = BTreeMap::new();
    let (a, b) = (load_model(left, &none)?, load_model(right, &none)?);
    let text = product_model(&a, &b)?.to_model_file();
    Ok(Outcome::new("product", json!({ "model_file": text }), text.clone()).input("left", left).input("right", right))
}

pub fn kunneth(left: &str, right: &str, rmax: Option<usize>) -> Result<Outcome, CliError> {
    let none = BTreeMap::new();
    let (a, b) = (load_model(left, &none)?, load_model(right, &none)?);
    let r_max = rmax.unwrap_or(a.dim().min(b.dim()) + 1);
    let (ta, tb) = (page_dims(&a, r_max, EXEC)?, page_dims(&b, r_max, EXEC)?);
    let prod = product_model(&a, &b)?;
    let direct = page_dims(&prod, r_max, EXEC)?;
    let mut text = String::new();
    let mut ok = true;
    let mut per_page = Vec::new();
    for r in 1..=r_max {
        let conv = kunneth_page(&ta, &tb, r)?;
        let same = conv == direct.page(r);
        ok &= same;
        let _ = writeln!(text, "E_{r}: convolution {} direct computation", if same { "matches" } else { "DIFFERS from" });
        per_page.push(json!({ "r": r, "matches": same, "convolution": conv, "direct": direct.page(r) }));
    }
    let bits = ta.max_bits().max(tb.max_bits()).max(direct.max_bits());
    Ok(Outcome::new("kunneth", json!({ "product": prod.name(), "pages": per_page }), text)
        .input("left", left)
        .input("right", right)
        .passed(ok)
        .bits(bits))
}

fn slice_ranks(m: &CdgaModel, p: usize, q: usize) -> Result<(usize, usize, usize), CliError> {
    let dim = m.slice_basis(p, q).len();
    let del = rank_info(&*m.slice_matrix(Which::Del, p, q)?).rank;
    let delbar = rank_info(&*m.slice_matrix(Which::Delbar, p, q)?).rank;
    Ok((dim, del, delbar))
}

pub fn cdga_cmd(action: &CdgaAction) -> Result<Outcome, CliError> {
    match action {
        CdgaAction::So9Verify { file, delbar_w87 } => {
            let m = match (file, delbar_w87) {
                (Some(_), Some(_)) => return Err(CliError::Input("--file and --delbar-w87 are exclusive".into())),
                (Some(f), None) => parse_cdga(&read(f)?)?,
                (None, Some(s)) => pittie_so9_with(s)?,
                (None, None) => pittie_so9(),
            };
            let rep = fsslab_core::cdga::verify_so9_d2(&m)?;
            let mut text = format!("{}\n", m.name());
            for w in &rep.inconsistencies {
                let _ = writeln!(text, "warning: {w}");
            }
            for c in &rep.checks {
                let _ = writeln!(text, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.label, c.detail);
            }
            for ((p, q), d) in &rep.slice_dims {
                let _ = writeln!(text, "dim slice ({p},{q}) = {d}");
            }
            let checks: Vec<Value> =
                rep.checks.iter().map(|c| json!({ "label": c.label, "passed": c.passed, "detail": c.detail })).collect();
            let slices: Vec<Value> = rep.slice_dims.iter().map(|((p, q), d)| json!({ "bidegree": [p, q], "dim": d })).collect();
            let outputs = json!({ "checks": checks, "slices": slices, "inconsistencies": rep.inconsistencies });
            let mut out = Outcome::new("cdga so9-verify", outputs, text).passed(rep.passed());
            if let Some(f) = file {
                out = out.input("file", f.display().to_string());
            }
            if let Some(s) = delbar_w87 {
                out = out.input("delbar_w87", s);
            }
            Ok(out)
        }
        CdgaAction::So9Show => {
            let text = pittie_so9().to_cdga_file();
            Ok(Outcome::new("cdga so9-show", json!({ "cdga_file": text }), text.clone()))
        }
        CdgaAction::Slices { file, bidegree } => {
            let m = parse_cdga(&read(file)?)?;
            let mut text = format!("{}\n", m.name());
            for w in m.inconsistencies() {
                let _ = writeln!(text, "warning: {w}");
            }
            let mut rows = Vec::new();
            for s in bidegree {
                let (p, q) = parse_pair(s)?;
                let (dim, del, delbar) = slice_ranks(&m, p, q)?;
                let _ = writeln!(text, "({p},{q}): dim {dim}, rank del {del}, rank delbar {delbar}");
                rows.push(json!({ "bidegree": [p, q], "dim": dim, "rank_del": del, "rank_delbar": delbar }));
            }
            Ok(Outcome::new("cdga slices", json!(rows), text).input("file", file.display().to_string()))
        }
    }
}

pub fn tables_reproduce(id: TableId) -> Result<Outcome, CliError> {
    let k: u8 = match id {
        TableId::One => 1,
        TableId::Two => 2,
    };
    let mut text = format!("Table {k}: (e1, e2, e3) at bidegree (0,2)\n");
    let mut ok = true;
    let mut rows = Vec::new();
    let mut bits = 0;
    for row in tables::table(k).ok_or_else(|| CliError::Input(format!("no table {k}")))? {
        let mut samples = Vec::new();
        let mut row_ok = true;
        for s in &row.samples {
            let m = s.tuple.model()?;
            let t = page_dims(&m, 3, EXEC)?;
            bits = bits.max(t.max_bits());
            let got = [t.get(1, 0, 2), t.get(2, 0, 2), t.get(3, 0, 2)];
            let mut sample_ok = got == row.expected;
            let mut real = Value::Null;
            if let Some((name, vals)) = &s.nla {
                let rec = nla_record(name).ok_or_else(|| CliError::Input(format!("unknown algebra '{name}'")))?;
                let cx = rec.real_model(vals)?;
                let betti_ok = cx.betti(EXEC) == m.de_rham_betti(EXEC);
                let asc_ok = cx.ascending_type() == m.cochains().ascending_type();
                sample_ok &= betti_ok && asc_ok;
                let vals: Vec<String> = vals.iter().map(ToString::to_string).collect();
                real = json!({ "algebra": name, "params": vals, "betti_match": betti_ok, "ascending_match": asc_ok });
            }
            row_ok &= sample_ok;
            samples.push(json!({ "tuple": s.tuple.to_string(), "computed": got, "matches": sample_ok, "real_model": real }));
        }
        ok &= row_ok;
        let _ = writeln!(
            text,
            "[{}] {:<28} expected {:?}  {} sample(s)  {}  {}",
            if row_ok { "ok" } else { "MISMATCH" },
            row.row,
            row.expected,
            row.samples.len(),
            row.sequence,
            row.nla
        );
        rows.push(json!({
            "row": row.row, "ascending": row.ascending, "expected": row.expected,
            "sequence": row.sequence, "algebra": row.nla, "matches": row_ok, "samples": samples,
        }));
    }
    let _ = writeln!(text, "{}", if ok { "all rows match" } else { "some rows do not match" });
    Ok(Outcome::new("tables reproduce", json!({ "table": k, "rows": rows }), text).input("table", k.to_string()).passed(ok).bits(bits))
}

/// Reports the rank of `d_{n-1}` from `(0,n-2)` on each model; asserts nothing.
pub fn dn_vanishing(br_max: usize) -> Result<Outcome, CliError> {
    let mut models = catalog::small_models();
    for k in 3..=br_max {
        models.push(catalog::bigalke_rollenske(k)?.model);
    }
    let mut text = String::from("rank of d_{n-1}: E_{n-1}^{0,n-2} -> E_{n-1}^{n-1,0}\n");
    let mut rows = Vec::new();
    let mut nonzero = 0;
    for m in models.iter().filter(|m| m.dim() >= 3) {
        let n = m.dim();
        let r = n - 1;
        let source = entry(m, r, 0, (n - 2) as i64)?.dim;
        let rank = dr_rank(m, r, 0, (n - 2) as i64)?;
        nonzero += usize::from(rank > 0);
        let _ = writeln!(text, "{:<32} n = {n:>2}  e = {source:>3}  rank = {rank}", m.name());
        rows.push(json!({ "model": m.name(), "n": n, "source_dim": source, "rank": rank }));
    }
    let _ = writeln!(text, "{} model(s), {nonzero} with nonzero d_(n-1)", rows.len());
    Ok(Outcome::new("experiment dn-vanishing", json!({ "models": rows, "nonzero": nonzero }), text).input("br_max", br_max.to_string()))
}
