use anyhow::Result;
use hecke_core::clifford::algebra::{
    cyclic_group_algebra, diagonal_pairs_swap, diagonal_pairs_trivial, ground_field_z2, verify_corner, z4_inversion,
    AlgebraJson, FiniteDimAlgebra,
};
use hecke_core::clifford::decompose_all;
use hecke_core::clifford::projective::{cyclic_character, klein_pauli, schur_pairing};
use hecke_core::cyclotomic::{
    center_reconstruct, center_values, check_semisimple, fixed_subalgebra_dimension, modules_inventory, transport,
    tuple_text, verify_cyclotomic, verify_jm, CyclotomicSpec, TransportedModule,
};
use hecke_core::foldings::{fixed_affine_presentation, fixed_images, g2_obstruction, GeneratorMap};
use hecke_core::scalar::Scalar;
use hecke_core::seminormal::{verify_relations, CalibratedModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::params::{read_json, read_shape, InputContext, Params};

pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub ok: bool,
}

fn texts(v: &[Scalar], order: u32) -> Vec<String> {
    v.iter().map(|s| s.to_text_at(order)).collect()
}

fn has_spec(p: &Params) -> bool {
    p.r.is_some() || p.u.is_some() || p.x.is_some()
}

pub fn tableaux(shape: &str, params: &Params) -> Result<Outcome> {
    let s = read_shape(shape, params)?;
    let ts = s.standard_tableaux();
    Ok(Outcome {
        summary: format!("{} standard tableaux on {} boxes", ts.len(), s.size()),
        json: json!({
            "shape": s.to_json(),
            "count": ts.len(),
            "tableaux": ts.iter().map(|t| t.to_json(&s)).collect::<Vec<_>>(),
        }),
        ok: true,
    })
}

fn transported(m: &CalibratedModule, params: &Params) -> Result<Option<(CyclotomicSpec, TransportedModule)>> {
    if !has_spec(params) {
        return Ok(None);
    }
    let spec = params.cyclotomic()?;
    let tm = transport(m, &spec).input()?;
    Ok(Some((spec, tm)))
}

pub fn rep(shape: &str, params: &Params) -> Result<Outcome> {
    let s = read_shape(shape, params)?;
    let m = CalibratedModule::build(&s).input()?;
    let mut json = json!({ "shape": s.to_json(), "module": m.to_json() });
    if let Some((spec, tm)) = transported(&m, params)? {
        json["T1"] = json!(tm.ti(1).to_text_rows(spec.order()));
    }
    Ok(Outcome {
        summary: format!("module of dimension {}", m.dimension()),
        json,
        ok: true,
    })
}

/// Adds a random nonzero integer to one random entry of one generator and
/// reports whether the relation suite notices.
fn perturbation(m: &CalibratedModule, seed: u64) -> Value {
    if m.n() < 2 {
        return json!({ "seed": seed, "skipped": "no relations with a single box" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = m.generators();
    let g = rng.gen_range(0..gens.len());
    let d = m.dimension();
    let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
    let delta = rng.gen_range(1..=5i64);
    let bumped = gens[g].get(i, j).add(&Scalar::from_int(delta));
    gens[g].set(i, j, bumped);
    let (t, x) = gens.split_at(m.n() - 1);
    let report = verify_relations(t, x);
    let name = if g < m.n() - 1 { format!("T{}", g + 2) } else { format!("X{}", g + 2 - m.n()) };
    json!({
        "seed": seed,
        "generator": name,
        "row": i,
        "col": j,
        "delta": delta,
        "detected": !report.all_hold(),
        "failing": report.failures().map(|c| c.name.clone()).collect::<Vec<_>>(),
    })
}

pub fn verify(shape: &str, params: &Params, seed: Option<u64>) -> Result<Outcome> {
    let s = read_shape(shape, params)?;
    let m = CalibratedModule::build(&s).input()?;
    let order = s.order();
    let report = m.verify();
    let simple = m.is_simple();
    let mut ok = report.all_hold() && simple;
    let mut json = json!({
        "shape": s.to_json(),
        "dimension": m.dimension(),
        "relations": report.to_json(order),
        "simple": simple,
    });
    if let Some((spec, tm)) = transported(&m, params)? {
        let cyc = verify_cyclotomic(&tm.t, &spec.u, &spec.q_scalar());
        let jm = verify_jm(&tm);
        ok &= cyc.all_hold() && jm.all_hold();
        json["cyclotomic_relations"] = json!(cyc.to_json(spec.order()));
        json["jm"] = json!(jm.to_json(spec.order()));
    }
    if let Some(seed) = seed {
        let control = perturbation(&m, seed);
        ok &= control.get("detected").and_then(Value::as_bool).unwrap_or(true);
        json["negative_control"] = control;
    }
    let failed = report.failures().count();
    Ok(Outcome {
        summary: format!(
            "dimension {}, {} relations checked, {failed} failed, simple: {simple}",
            m.dimension(),
            report.checks.len()
        ),
        json,
        ok,
    })
}

fn not_semisimple(spec: &CyclotomicSpec, n: usize) -> Option<Outcome> {
    check_semisimple(spec, n).err().map(|cert| Outcome {
        summary: format!("parameters are not semisimple: {cert}"),
        json: json!({ "semisimple": false, "certificate": cert }),
        ok: false,
    })
}

pub fn inventory(params: &Params) -> Result<Outcome> {
    let spec = params.cyclotomic()?;
    let n = params.n()?;
    if let Some(o) = not_semisimple(&spec, n) {
        return Ok(o);
    }
    let order = spec.order();
    let inv = modules_inventory(&spec, n)?;
    let q = spec.q_scalar();
    let mut ok = inv.sum_dim_squared() == inv.expected();
    let modules: Vec<Value> = inv
        .entries
        .iter()
        .map(|e| {
            let rel = verify_cyclotomic(&e.module.t, &spec.u, &q);
            let jm = verify_jm(&e.module);
            ok &= rel.all_hold() && jm.all_hold();
            json!({
                "tuple": tuple_text(&e.tuple),
                "dimension": e.module.dimension(),
                "relations_ok": rel.all_hold(),
                "jm_ok": jm.all_hold(),
                "jm_spectrum": e.module.module.weights().iter().map(|w| texts(w, order)).collect::<Vec<_>>(),
                "central_character": center_values(&e.module).map(|a| texts(&a, order)),
            })
        })
        .collect();
    Ok(Outcome {
        summary: format!(
            "{} simple modules, sum of squared dimensions {} (expected {})",
            inv.entries.len(),
            inv.sum_dim_squared(),
            inv.expected()
        ),
        json: json!({
            "r": spec.r,
            "n": n,
            "u": texts(&spec.u, order),
            "semisimple": true,
            "modules": modules,
            "sum_dim_squared": inv.sum_dim_squared(),
            "expected": inv.expected(),
        }),
        ok,
    })
}

pub fn center(params: &Params) -> Result<Outcome> {
    let spec = params.cyclotomic()?;
    let n = params.n()?;
    if let Some(o) = not_semisimple(&spec, n) {
        return Ok(o);
    }
    let order = spec.order();
    let inv = modules_inventory(&spec, n)?;
    let mut ok = true;
    let mut seen: Vec<Vec<Scalar>> = Vec::new();
    let mut modules = Vec::new();
    for e in &inv.entries {
        let Some(a) = center_values(&e.module) else {
            ok = false;
            modules.push(json!({ "tuple": tuple_text(&e.tuple), "scalar": false }));
            continue;
        };
        let back = center_reconstruct(&a, &spec).ok();
        let roundtrip = back.as_ref().is_some_and(|(t, _)| *t == e.tuple);
        ok &= roundtrip && !seen.contains(&a);
        modules.push(json!({
            "tuple": tuple_text(&e.tuple),
            "scalar": true,
            "a": texts(&a, order),
            "reconstructed": back.as_ref().map(|(t, _)| tuple_text(t)),
            "contents": back.as_ref().map(|(_, c)| texts(c, order)),
            "roundtrip": roundtrip,
        }));
        seen.push(a);
    }
    Ok(Outcome {
        summary: format!("{} central characters, all distinct and reconstructed: {ok}", modules.len()),
        json: json!({ "r": spec.r, "n": n, "modules": modules, "ok": ok }),
        ok,
    })
}

pub fn decompose(params: &Params) -> Result<Outcome> {
    let spec = params.hrpn()?;
    let n = params.n()?;
    if let Some(o) = not_semisimple(&spec.cyclotomic(), n) {
        return Ok(o);
    }
    let full = decompose_all(&spec, n)?;
    let pres = (n >= 2).then(|| fixed_affine_presentation(spec.p, n));
    let mut relations_ok = true;
    let classes: Vec<Value> = full
        .classes
        .iter()
        .map(|c| {
            let mut class_ok = true;
            if let Some(pres) = &pres {
                for piece in c.report.pieces.iter().filter(|p| p.dim > 0) {
                    let map = GeneratorMap {
                        presentation: pres,
                        images: fixed_images(&piece.gens),
                    };
                    class_ok &= map.check().map(|r| r.all_hold()).unwrap_or(false);
                }
            }
            relations_ok &= class_ok;
            let mut v = serde_json::to_value(c.to_json()).expect("serializable");
            v["mates_isomorphic"] = json!(c.mates_isomorphic);
            v["relations_ok"] = json!(class_ok);
            v
        })
        .collect();
    Ok(Outcome {
        summary: format!(
            "{} orbit classes, sum of squared piece dimensions {} (expected {})",
            full.classes.len(),
            full.sum_dim_squared,
            full.expected
        ),
        json: json!({
            "r": spec.r,
            "p": spec.p,
            "n": n,
            "classes": classes,
            "sum_dim_squared": full.sum_dim_squared,
            "expected": full.expected,
            "pieces_distinct": full.pieces_distinct,
        }),
        ok: full.all_ok() && relations_ok,
    })
}

pub fn fixed_dim(params: &Params) -> Result<Outcome> {
    let spec = params.hrpn()?;
    let n = params.n()?;
    if let Some(o) = not_semisimple(&spec.cyclotomic(), n) {
        return Ok(o);
    }
    let f = fixed_subalgebra_dimension(&spec, n)?;
    Ok(Outcome {
        summary: format!("fixed subalgebra dimension {} (expected {}, graded count {})", f.dimension, f.expected, f.graded),
        ok: f.dimension == f.expected && f.dimension == f.graded,
        json: serde_json::to_value(&f)?,
    })
}

fn algebra_entry(name: &str, a: &FiniteDimAlgebra) -> (Value, bool) {
    let corner = verify_corner(a);
    let skew = a.skew_group_ring();
    let e = a.averaging_idempotent();
    let idempotent = skew.mul(&e, &e) == e;
    let ok = corner.all_ok() && idempotent;
    let v = json!({
        "name": name,
        "dim": a.dim(),
        "group_order": a.group_order(),
        "skew_ring_dim": skew.dim(),
        "skew_ring_center_dim": skew.center_dimension(),
        "averaging_idempotent": idempotent,
        "corner": corner,
    });
    (v, ok)
}

pub fn skewring_check(algebra: Option<&str>, params: &Params) -> Result<Outcome> {
    let mut entries = Vec::new();
    let mut ok = true;
    let mut push = |name: &str, a: &FiniteDimAlgebra| {
        let (v, good) = algebra_entry(name, a);
        ok &= good;
        entries.push(v);
    };
    if let Some(arg) = algebra {
        let j: AlgebraJson = serde_json::from_value(read_json(arg)?).input()?;
        let a = FiniteDimAlgebra::from_json(&j, params.order.unwrap_or(1)).input()?;
        push("input", &a);
    } else {
        push("ground field, trivial Z/2", &ground_field_z2());
        push("diagonal pairs, swap", &diagonal_pairs_swap());
        push("diagonal pairs, trivial", &diagonal_pairs_trivial());
        push("group algebra of Z/4, inversion", &z4_inversion());
        push("group algebra of Z/3, trivial", &cyclic_group_algebra(3));
    }
    let mut pairings = Vec::new();
    for (a, b) in [(0, 0), (1, 1), (1, 2), (0, 2)] {
        let got = schur_pairing(&cyclic_character(3, a), &cyclic_character(3, b));
        let expect = usize::from(a == b);
        ok &= got == expect;
        pairings.push(json!({ "left": format!("Z/3 character {a}"), "right": format!("Z/3 character {b}"), "value": got }));
    }
    let pauli = schur_pairing(&klein_pauli(false), &klein_pauli(true));
    ok &= pauli == 1;
    pairings.push(json!({ "left": "Klein four, Pauli", "right": "Klein four, Pauli twisted", "value": pauli }));
    Ok(Outcome {
        summary: format!("{} algebras and {} pairings checked, all ok: {ok}", entries.len(), pairings.len()),
        json: json!({ "algebras": entries, "pairings": pairings }),
        ok,
    })
}

pub fn g2() -> Result<Outcome> {
    let cert = g2_obstruction()?;
    let ok = cert.all_candidates_fail()
        && cert.candidates.len() == 2
        && cert.commutant_is_diagonal
        && cert.t2_quadratic;
    Ok(Outcome {
        summary: format!(
            "{} candidates after the spectrum filter, every one fails: {}",
            cert.candidates.len(),
            cert.all_candidates_fail()
        ),
        json: serde_json::to_value(cert.to_json())?,
        ok,
    })
}
