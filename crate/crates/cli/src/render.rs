use std::fmt::Write;

use kh_core::basepoint::ModuleStructure;
use kh_core::transverse::SideReport;
use kh_core::{
    admissible_component_counts, betti_table, certify as run_certify, graded_euler_characteristic, is_free_rank_one,
    kauffman_state_sum, max_fibered_euler_char, module_structure, psi_bidegree, psi_is_nonzero, BettiTable, Bidegree,
    BraidWord, Error, F2Matrix, FreenessTest, HomologyTable, KhComplex, Result,
};
use serde_json::{json, Map, Value};

use crate::Common;

pub struct Output {
    json: Map<String, Value>,
    human: String,
    summary: String,
    pub status: u8,
}

impl Output {
    pub fn format(&self, common: &Common) -> String {
        if common.json {
            serde_json::to_string(&self.json).expect("JSON values serialize")
        } else if common.quiet {
            self.summary.clone()
        } else {
            self.human.trim_end().to_string()
        }
    }
}

fn bidegree(b: Bidegree) -> Value {
    json!({ "i": b.i, "j": b.j })
}

fn betti_json(t: &BettiTable) -> Value {
    t.iter().map(|(b, d)| json!({ "i": b.i, "j": b.j, "dim": d })).collect()
}

fn header(w: &BraidWord) -> (Map<String, Value>, String) {
    let mut m = Map::new();
    m.insert("word".into(), json!(w.to_string()));
    m.insert("n_strands".into(), json!(w.n_strands()));
    m.insert("writhe".into(), json!(w.writhe().writhe));
    m.insert("components".into(), json!(w.component_count()));
    let human = format!(
        "word {w}\nstrands {}  writhe {}  components {}\n",
        w.n_strands(),
        w.writhe().writhe,
        w.component_count()
    );
    (m, human)
}

fn betti_human(t: &BettiTable, out: &mut String) {
    let _ = writeln!(out, "{:>4} {:>4} {:>5}", "i", "j", "dim");
    for (b, d) in t.iter() {
        let _ = writeln!(out, "{:>4} {:>4} {:>5}", b.i, b.j, d);
    }
    let _ = writeln!(out, "total {}", t.total());
}

fn table(w: &BraidWord, common: &Common) -> Result<(KhComplex, HomologyTable)> {
    let c = KhComplex::from_word(w, common.max_crossings)?;
    let t = betti_table(&c)?;
    Ok((c, t))
}

pub fn kh(w: &BraidWord, common: &Common, _: bool) -> Result<Output> {
    let (_, t) = table(w, common)?;
    let (mut json, mut human) = header(w);
    json.insert("betti".into(), betti_json(t.betti()));
    betti_human(t.betti(), &mut human);
    Ok(Output {
        json,
        human,
        summary: format!("{w}\ttotal {}", t.total_dim()),
        status: 0,
    })
}

fn matrix_rows(m: &F2Matrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect())
        .collect()
}

fn freeness_json(f: &FreenessTest) -> Value {
    json!({
        "free_rank_one": f.free_rank_one,
        "witness_bidegree": f.witness.as_ref().map(|w| bidegree(w.bidegree)),
        "total_dim": f.total_dim,
        "expected_dim": f.expected_dim,
        "top_product_nonzero": f.top_product_nonzero,
    })
}

fn actions_json(m: &ModuleStructure) -> Value {
    m.actions()
        .iter()
        .map(|a| {
            let maps: Vec<Value> = a
                .matrices()
                .filter(|(_, mat)| mat.rows() > 0)
                .map(|(b, mat)| json!({ "source": bidegree(b), "rows": matrix_rows(mat) }))
                .collect();
            json!({ "basepoint": a.basepoint(), "maps": maps })
        })
        .collect()
}

fn witness_human(f: &FreenessTest) -> String {
    match &f.witness {
        Some(w) => format!("witness at {} (representative {})", w.bidegree, w.index),
        None => "witness none".to_string(),
    }
}

pub fn module(w: &BraidWord, common: &Common, _: bool) -> Result<Output> {
    let (c, t) = table(w, common)?;
    let m = module_structure(&t, &c)?;
    let f = is_free_rank_one(&t, &m);
    let (mut json, mut human) = header(w);
    json.insert("betti".into(), betti_json(t.betti()));
    let mut module = freeness_json(&f);
    module["squares_vanish"] = json!(m.squares_vanish());
    module["commute"] = json!(m.commute());
    module["actions"] = actions_json(&m);
    json.insert("module".into(), module);

    betti_human(t.betti(), &mut human);
    for a in m.actions() {
        for (b, mat) in a.matrices().filter(|(_, mat)| mat.rows() > 0 && !mat.is_zero()) {
            let _ = writeln!(human, "x{} {} -> {}", a.basepoint(), b, b.shift(0, -2));
            for row in matrix_rows(mat) {
                let _ = writeln!(human, "  {row}");
            }
        }
    }
    let _ = writeln!(
        human,
        "squares vanish {}  commute {}\ntotal {} of {}  top product nonzero {}\nfree rank one {}\n{}",
        m.squares_vanish(),
        m.commute(),
        f.total_dim,
        f.expected_dim,
        f.top_product_nonzero,
        f.free_rank_one,
        witness_human(&f)
    );
    Ok(Output {
        json,
        human,
        summary: format!("{w}\tfree_rank_one {}", f.free_rank_one),
        status: 0,
    })
}

fn psi_json(b: Bidegree, nonzero: bool) -> Value {
    json!({ "i": b.i, "j": b.j, "nonzero": nonzero })
}

pub fn psi(w: &BraidWord, common: &Common, mirror: bool) -> Result<Output> {
    let b = psi_bidegree(w)?;
    let nonzero = psi_is_nonzero(w, common.max_crossings)?;
    let (mut json, mut human) = header(w);
    json.insert("psi".into(), psi_json(b, nonzero));
    let _ = writeln!(human, "psi at {b}  nonzero {nonzero}");
    let mut summary = format!("{w}\tpsi {b} {}", if nonzero { "nonzero" } else { "zero" });
    if mirror {
        let m = w.mirror();
        let mb = psi_bidegree(&m)?;
        let mnonzero = psi_is_nonzero(&m, common.max_crossings)?;
        json.insert("mirror_psi".into(), psi_json(mb, mnonzero));
        let _ = writeln!(human, "mirror psi at {mb}  nonzero {mnonzero}");
        let _ = write!(summary, "\tmirror {mb} {}", if mnonzero { "nonzero" } else { "zero" });
    }
    Ok(Output {
        json,
        human,
        summary,
        status: 0,
    })
}

fn side_evidence(s: &SideReport) -> Value {
    let check = s.product_check.as_ref();
    json!({
        "word": s.word.to_string(),
        "psi": psi_json(s.psi_bidegree, s.psi_nonzero),
        "module": s.freeness.as_ref().map(freeness_json),
        "psi_plus_coefficient": check.map(|c| c.psi_plus_coefficient),
        "top_product_is_psi": check.map(|c| c.product_is_psi),
        "top_class_is_psi": check.map(|c| c.class_is_psi),
    })
}

pub fn certify(w: &BraidWord, common: &Common, _: bool) -> Result<Output> {
    let r = run_certify(w, common.max_crossings)?;
    let (mut json, mut human) = header(w);
    json.insert("betti".into(), betti_json(&r.side.betti));
    json.insert(
        "module".into(),
        r.side.freeness.as_ref().map_or_else(
            || json!({ "free_rank_one": false, "witness_bidegree": null }),
            |f| json!({ "free_rank_one": f.free_rank_one, "witness_bidegree": f.witness.as_ref().map(|x| bidegree(x.bidegree)) }),
        ),
    );
    json.insert("psi".into(), psi_json(r.side.psi_bidegree, r.psi_nonzero));
    json.insert("verdict".into(), json!(r.verdict.as_str()));
    json.insert(
        "certificate".into(),
        json!({
            "component_ok": r.component_ok,
            "module_free": r.module_free,
            "psi_nonzero": r.psi_nonzero,
            "mirror_psi_nonzero": r.mirror_psi_nonzero,
            "right_veering": r.right_veering,
            "left_veering": r.left_veering,
            "evidence": { "braid": side_evidence(&r.side), "mirror": side_evidence(&r.mirror) },
        }),
    );

    betti_human(&r.side.betti, &mut human);
    let _ = writeln!(human, "closure permutation identity  {}", r.component_ok);
    let _ = writeln!(human, "free of rank one              {}", r.module_free);
    if let Some(f) = &r.side.freeness {
        let _ = writeln!(human, "  {}", witness_human(f));
    }
    let _ = writeln!(human, "psi at {}  nonzero {}", r.side.psi_bidegree, r.psi_nonzero);
    let _ = writeln!(
        human,
        "mirror psi at {}  nonzero {}",
        r.mirror.psi_bidegree, r.mirror_psi_nonzero
    );
    let _ = writeln!(
        human,
        "right-veering {}  left-veering {}",
        r.right_veering, r.left_veering
    );
    let _ = writeln!(human, "verdict {}", r.verdict);
    Ok(Output {
        json,
        human,
        summary: format!("{w}\t{}", r.verdict),
        status: 0,
    })
}

pub fn jones(w: &BraidWord, common: &Common, _: bool) -> Result<Output> {
    let (_, t) = table(w, common)?;
    let from_homology = graded_euler_characteristic(&t);
    let state_sum = kauffman_state_sum(w, common.max_crossings)?;
    let agree = from_homology == state_sum;
    let (mut json, mut human) = header(w);
    json.insert("betti".into(), betti_json(t.betti()));
    json.insert(
        "jones".into(),
        json!({ "homology": from_homology.to_string(), "state_sum": state_sum.to_string(), "agree": agree }),
    );
    let _ = writeln!(
        human,
        "homology   {from_homology}\nstate sum  {state_sum}\nagree {agree}"
    );
    if !agree {
        eprintln!(
            "{}",
            Error::Consistency(format!("Euler characteristic mismatch for {w}"))
        );
    }
    Ok(Output {
        json,
        human,
        summary: format!("{w}\tagree {agree}"),
        status: if agree { 0 } else { 4 },
    })
}

pub fn fibered(n: u32) -> Output {
    let set: Vec<u32> = admissible_component_counts(n).into_iter().collect();
    let chi = max_fibered_euler_char(n);
    let list = set.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
    let line = format!("L_{n} = {{{list}}}; max chi = {chi}");
    let mut json = Map::new();
    json.insert("n".into(), json!(n));
    json.insert("admissible_components".into(), json!(set));
    json.insert("max_chi".into(), json!(chi));
    Output {
        json,
        human: line.clone(),
        summary: line,
        status: 0,
    }
}
