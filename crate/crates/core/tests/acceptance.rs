//! Acceptance criteria 1 to 12. Runs without the libtest harness so each
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::time::Instant;

use rayon::prelude::*;

use hecke_core::clifford::algebra::{
    cyclic_group_algebra, diagonal_pairs_swap, diagonal_pairs_trivial, ground_field_z2, verify_corner, z4_inversion,
};
use hecke_core::clifford::projective::{cyclic_character, klein_pauli, schur_pairing};
use hecke_core::clifford::{decompose_all, projectors_are_orthogonal};
use hecke_core::cyclotomic::{
    center_reconstruct, center_values, check_semisimple, fixed_subalgebra_dimension, group_algebra_mode,
    modules_inventory, verify_cyclotomic, verify_jm, Certificate, CyclotomicSpec, HrpnSpec, Inventory, RTuple,
};
use hecke_core::foldings::{
    affine_presentation, fixed_affine_presentation, fixed_images, g2_obstruction, GeneratorMap,
};
use hecke_core::matrix::Matrix;
use hecke_core::scalar::{CycRat, Scalar};
use hecke_core::seminormal::{relations_hold, CalibratedModule};
use hecke_core::shapes::{Page, PlacedSkewShape, SkewShape};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn tok(text: &str) -> Scalar {
    hecke_core::scalar::parse_scalar(text, 1).expect("token")
}

/// Every placed shape with `n` boxes over one or two of the given tokens.
fn shapes_over(tokens: &[&str], n: usize) -> Vec<PlacedSkewShape> {
    let page = |t: &str, s: &SkewShape| Page {
        token: tok(t),
        shape: s.clone(),
    };
    let mut out = Vec::new();
    for t in tokens {
        for s in SkewShape::all_normalized(n) {
            out.push(PlacedSkewShape::new(vec![page(t, &s)]).expect("one page"));
        }
    }
    if let [a, b] = tokens {
        for k in 1..n {
            for s in SkewShape::all_normalized(k) {
                for s2 in SkewShape::all_normalized(n - k) {
                    out.push(PlacedSkewShape::new(vec![page(a, &s), page(b, &s2)]).expect("separated"));
                }
            }
        }
    }
    out
}

fn suite_shapes() -> Vec<PlacedSkewShape> {
    let mut all = Vec::new();
    for n in 1..=4 {
        all.extend(shapes_over(&["1"], n));
        for second in ["-1", "q^3"] {
            let two = shapes_over(&["1", second], n);
            // single pages on token 1 are already present
            all.extend(two.into_iter().filter(|s| s.pages().len() == 2 || s.pages()[0].token != tok("1")));
        }
    }
    all
}

fn criterion_1(mods: &[CalibratedModule]) -> Check {
    mods.par_iter().try_for_each(|m| {
        let r = m.verify();
        ensure(r.all_hold(), || {
            let bad: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
            format!("{:?}: {bad:?}", m.shape().to_json())
        })
    })?;
    Ok(format!("{} modules", mods.len()))
}

fn criterion_2(mods: &[CalibratedModule]) -> Check {
    mods.par_iter().try_for_each(|m| {
        ensure(m.is_simple(), || format!("{:?} has commutant dimension > 1", m.shape().to_json()))
    })?;
    Ok(format!("{} modules, largest dimension {}", mods.len(), mods.iter().map(|m| m.dimension()).max().unwrap_or(0)))
}

const INVENTORY_CASES: [(usize, usize); 13] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 1),
    (4, 2),
];

/// Hook length formula for the number of standard tableaux of a partition.
fn hook_count(parts: &[usize]) -> usize {
    let n: usize = parts.iter().sum();
    let conj = |c: usize| parts.iter().filter(|&&p| p > c).count();
    let hooks: usize = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..p).map(move |j| (i, j, p)))
        .map(|(i, j, p)| (p - j - 1) + (conj(j) - i - 1) + 1)
        .product();
    factorial(n) / hooks
}

fn tuple_dimension(t: &RTuple) -> usize {
    let sizes: Vec<usize> = t.iter().map(|p| p.size()).collect();
    let multinomial = factorial(sizes.iter().sum()) / sizes.iter().map(|&s| factorial(s)).product::<usize>();
    multinomial * t.iter().map(|p| hook_count(p.parts())).product::<usize>()
}

fn criterion_3(invs: &[Inventory]) -> Check {
    let mut sums = Vec::new();
    for inv in invs {
        let expected = inv.spec.r.pow(inv.n as u32) * factorial(inv.n);
        for e in &inv.entries {
            ensure(e.module.dimension() == tuple_dimension(&e.tuple), || {
                format!("dimension mismatch for {:?}", e.tuple)
            })?;
        }
        ensure(inv.sum_dim_squared() == expected, || {
            format!("(r,n)=({},{}): {} != {expected}", inv.spec.r, inv.n, inv.sum_dim_squared())
        })?;
        sums.push(format!("({},{})={}", inv.spec.r, inv.n, expected));
    }
    Ok(sums.join(" "))
}

fn criterion_4(invs: &[Inventory]) -> Check {
    let mut count = 0;
    for inv in invs {
        let pres = affine_presentation(inv.n);
        for e in &inv.entries {
            let r = verify_jm(&e.module);
            ensure(r.all_hold(), || format!("{:?}: {:?}", e.tuple, r.failures().next().map(|c| &c.name)))?;
            let map = GeneratorMap {
                presentation: &pres,
                images: e.module.t.clone(),
            };
            ensure(map.check().is_ok_and(|r| r.all_hold()), || {
                format!("affine relations fail through T1 on {:?}", e.tuple)
            })?;
            let cyc = verify_cyclotomic(&e.module.t, &inv.spec.u, &inv.spec.q_scalar());
            ensure(cyc.all_hold(), || format!("cyclotomic relations fail on {:?}", e.tuple))?;
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

/// `e_1..e_n` of a list, by expanding `∏ (1 + v t)`.
fn esym(values: &[Scalar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::one()];
    for v in values {
        let mut next = c.clone();
        next.push(Scalar::zero());
        for k in 1..next.len() {
            next[k] = next[k].add(&c[k - 1].mul(v));
        }
        c = next;
    }
    c[1..].to_vec()
}

fn criterion_5(invs: &[Inventory]) -> Check {
    let mut count = 0;
    for inv in invs.iter().filter(|i| i.spec.r <= 3) {
        let mut seen: Vec<Vec<Scalar>> = Vec::new();
        for e in &inv.entries {
            let a = center_values(&e.module).ok_or_else(|| format!("{:?}: e_k not scalar", e.tuple))?;
            let oracle = esym(&e.module.module.weights()[0]);
            ensure(a == oracle, || format!("{:?}: center values differ from content oracle", e.tuple))?;
            ensure(!seen.contains(&a), || format!("{:?}: repeated character", e.tuple))?;
            let (back, _) = center_reconstruct(&a, &inv.spec).map_err(|err| format!("{:?}: {err}", e.tuple))?;
            ensure(back == e.tuple, || format!("{:?} reconstructs to {back:?}", e.tuple))?;
            seen.push(a);
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn q_integer_at(k: usize, q: &CycRat) -> CycRat {
    let mut s = CycRat::zero(q.order());
    for j in 0..k as i64 {
        s = s.add(&q.pow(k as i64 - 1 - 2 * j).expect("nonzero"));
    }
    s
}

fn certificate_valid(cert: &Certificate, spec: &CyclotomicSpec, n: usize) -> bool {
    match *cert {
        Certificate::QInteger { k } => {
            k >= 1 && k <= n && spec.q.as_ref().is_some_and(|q| q_integer_at(k, q).is_zero())
        }
        Certificate::Ratio { i, j, power } => {
            let (ui, uj) = (&spec.u[i - 1], &spec.u[j - 1]);
            let qp = spec.q_scalar().pow(2 * power as i64).expect("nonzero");
            power <= n && i != j && *ui == uj.mul(&qp)
        }
    }
}

fn criterion_6() -> Check {
    let mut planted = 0;
    for r in 1..=4 {
        for n in 1..=4 {
            ensure(check_semisimple(&CyclotomicSpec::generic(r), n).is_ok(), || format!("generic ({r},{n}) rejected"))?;
        }
    }
    for r in 2..=3usize {
        for n in 1..=3usize {
            for k in 0..=n {
                for i in 0..r {
                    for j in 0..r {
                        if i == j {
                            continue;
                        }
                        let mut u = CyclotomicSpec::generic(r).u;
                        u[i] = u[j].mul(&Scalar::q_pow(2 * k as i32));
                        let spec = CyclotomicSpec::new(u, None).expect("nonzero");
                        let cert = check_semisimple(&spec, n).err().ok_or_else(|| format!("missed u_{i}=u_{j}q^{}", 2 * k))?;
                        ensure(certificate_valid(&cert, &spec, n), || format!("bad certificate {cert}"))?;
                        planted += 1;
                    }
                }
            }
        }
    }
    for n in 2..=4usize {
        for k in 2..=n {
            let q = CycRat::zeta(1, 2 * k as u32);
            let spec = CyclotomicSpec::new(CyclotomicSpec::generic(2).u, Some(q)).expect("valid");
            let cert = check_semisimple(&spec, n).err().ok_or_else(|| format!("missed q = exp(pi i/{k}) at n={n}"))?;
            ensure(certificate_valid(&cert, &spec, n), || format!("bad certificate {cert}"))?;
            ensure(check_semisimple(&spec, k - 1).is_ok(), || format!("q = exp(pi i/{k}) rejected at n={}", k - 1))?;
            planted += 1;
        }
    }
    Ok(format!("{planted} planted violations certified"))
}

const HRPN_CASES: [(usize, usize, usize); 4] = [(2, 2, 2), (2, 2, 3), (3, 3, 2), (4, 2, 2)];

fn criterion_7() -> Check {
    let mut parts = Vec::new();
    for (r, p, n) in HRPN_CASES {
        let spec = HrpnSpec::generic(r, p).map_err(|e| e.to_string())?;
        let full = decompose_all(&spec, n).map_err(|e| format!("({r},{p},{n}): {e}"))?;
        let expected = r.pow(n as u32) * factorial(n) / p;
        ensure(full.sum_dim_squared == expected, || format!("({r},{p},{n}): {} != {expected}", full.sum_dim_squared))?;
        ensure(full.all_ok(), || format!("({r},{p},{n}): decomposition check failed"))?;
        let pres = fixed_affine_presentation(p, n);
        for c in &full.classes {
            let rep = &c.report;
            ensure(rep.kappa * rep.k == p && p % rep.kappa == 0, || format!("inertia {} {}", rep.kappa, rep.k))?;
            for pj in &rep.projectors {
                ensure(&(pj * pj) == pj, || "projector not idempotent".into())?;
            }
            for piece in rep.pieces.iter().filter(|x| x.dim > 0) {
                let map = GeneratorMap {
                    presentation: &pres,
                    images: fixed_images(&piece.gens),
                };
                ensure(map.check().is_ok_and(|r| r.all_hold()), || format!("({r},{p},{n}): fixed relations fail"))?;
            }
        }
        parts.push(format!("({r},{p},{n}) classes={} sum={expected}", full.classes.len()));
    }
    Ok(parts.join("; "))
}

fn criterion_8() -> Check {
    let mut parts = Vec::new();
    for (r, p, n) in HRPN_CASES {
        let spec = HrpnSpec::generic(r, p).map_err(|e| e.to_string())?;
        let f = fixed_subalgebra_dimension(&spec, n).map_err(|e| e.to_string())?;
        // brute-force grading count over {0..r-1}^n
        let mut graded = 0;
        for code in 0..r.pow(n as u32) {
            let (mut c, mut s) = (code, 0);
            for _ in 0..n {
                s += c % r;
                c /= r;
            }
            graded += usize::from(s % p == 0);
        }
        let graded = graded * factorial(n);
        let expected = r.pow(n as u32) * factorial(n) / p;
        ensure(f.dimension == expected && graded == expected, || {
            format!("({r},{p},{n}): closure {} graded {graded} expected {expected}", f.dimension)
        })?;
        parts.push(format!("({r},{p},{n})={expected}"));
    }
    Ok(parts.join(" "))
}

fn criterion_9() -> Check {
    let beds = [
        ("ground field", ground_field_z2(), 1),
        ("diagonal pairs swap", diagonal_pairs_swap(), 1),
        ("diagonal pairs trivial", diagonal_pairs_trivial(), 2),
        ("Z/4 inversion", z4_inversion(), 3),
        ("Z/3 trivial", cyclic_group_algebra(3), 3),
    ];
    for (name, a, fixed) in &beds {
        let c = verify_corner(a);
        ensure(c.all_ok(), || format!("{name}: {c:?}"))?;
        ensure(c.fixed_dim == *fixed && c.corner_dim == *fixed, || format!("{name}: fixed dimension {}", c.fixed_dim))?;
    }
    ensure(diagonal_pairs_swap().skew_group_ring().center_dimension() == 1, || "swap skew ring center".into())?;
    for k in [2usize, 3, 4] {
        for a in 0..k as i64 {
            for b in 0..k as i64 {
                let v = schur_pairing(&cyclic_character(k, a), &cyclic_character(k, b));
                ensure(v == usize::from(a == b), || format!("Z/{k} characters {a},{b}: {v}"))?;
            }
        }
    }
    ensure(schur_pairing(&klein_pauli(false), &klein_pauli(true)) == 1, || "Pauli pairing".into())?;
    Ok(format!("{} testbeds", beds.len()))
}

fn criterion_10() -> Check {
    let c = g2_obstruction().map_err(|e| e.to_string())?;
    ensure(c.t2_quadratic, || "printed T2 violates the quadratic relation".into())?;
    ensure(c.commutant_is_diagonal, || "commutant of T1 is not the diagonal family".into())?;
    ensure(c.candidates.len() == 2 && c.all_candidates_fail(), || format!("{} candidates", c.candidates.len()))?;
    Ok("2 candidates, both residuals nonzero".into())
}

fn criterion_11() -> Check {
    let mut count = 0;
    for (r, n) in [(2, 2), (2, 3), (3, 2)] {
        let entries = group_algebra_mode(r, n).map_err(|e| format!("({r},{n}): {e}"))?;
        for e in &entries {
            ensure(e.report.all_hold(), || format!("({r},{n}) {:?}", e.tuple))?;
        }
        count += entries.len();
    }
    Ok(format!("{count} specialized modules"))
}

/// Entries to perturb: all of them for small modules, a fixed spread
/// otherwise.
fn probe_entries(d: usize) -> Vec<(usize, usize)> {
    if d <= 4 {
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect()
    } else {
        vec![(0, 0), (d - 1, d - 1), (0, d - 1), (d / 2, (3 * d / 4 + 1) % d)]
    }
}

fn criterion_12(mods: &[CalibratedModule]) -> Check {
    let one = Scalar::one();
    let probe = |m: &CalibratedModule| -> Result<usize, String> {
        let gens = m.generators();
        let split = m.n() - 1;
        let mut count = 0;
        for g in 0..gens.len() {
            for (i, j) in probe_entries(m.dimension()) {
                let mut bent = gens.clone();
                let v = bent[g].get(i, j).add(&Scalar::one());
                bent[g].set(i, j, v);
                let (t, x) = bent.split_at(split);
                ensure(!relations_hold(t, x), || {
                    format!("{:?}: perturbing generator {g} at ({i},{j}) went unnoticed", m.shape().to_json())
                })?;
                count += 1;
            }
        }
        Ok(count)
    };
    let probes: usize = mods
        .par_iter()
        .filter(|m| m.n() >= 2)
        .map(probe)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    let spec = HrpnSpec::generic(2, 2).map_err(|e| e.to_string())?;
    let full = decompose_all(&spec, 2).map_err(|e| e.to_string())?;
    let mut corrupted = 0;
    for c in full.classes.iter().filter(|c| c.report.k > 1) {
        let mut ps: Vec<Matrix> = c.report.projectors.clone();
        ensure(projectors_are_orthogonal(&ps), || "clean projectors rejected".into())?;
        let v = ps[0].get(0, 0).add(&one);
        ps[0].set(0, 0, v);
        ensure(!projectors_are_orthogonal(&ps), || "corrupted projector accepted".into())?;
        corrupted += 1;
    }
    ensure(corrupted > 0, || "no class with nontrivial inertia".into())?;
    Ok(format!("{probes} perturbations, {corrupted} corrupted projector sets"))
}

fn report(k: usize, f: &dyn Fn() -> Check) -> bool {
    let start = Instant::now();
    let r = f();
    let secs = start.elapsed().as_secs_f64();
    match &r {
        Ok(detail) => println!("criterion {k:>2}: PASS ({secs:.1}s) {detail}"),
        Err(why) => println!("criterion {k:>2}: FAIL ({secs:.1}s) {why}"),
    }
    r.is_ok()
}

fn main() {
    let t0 = Instant::now();
    let shapes = suite_shapes();
    let mods: Vec<CalibratedModule> = shapes
        .par_iter()
        .map(|s| CalibratedModule::build(s).expect("valid shape"))
        .collect();
    println!("acceptance: built {} shape modules in {:.1}s", mods.len(), t0.elapsed().as_secs_f64());

    let mut passed = Vec::new();
    passed.push(report(1, &|| criterion_1(&mods)));
    passed.push(report(2, &|| criterion_2(&mods)));

    let t0 = Instant::now();
    let invs: Vec<Inventory> = INVENTORY_CASES
        .iter()
        .map(|&(r, n)| modules_inventory(&CyclotomicSpec::generic(r), n).expect("generic parameters"))
        .collect();
    println!("acceptance: built inventories in {:.1}s", t0.elapsed().as_secs_f64());

    passed.push(report(3, &|| criterion_3(&invs)));
    passed.push(report(4, &|| criterion_4(&invs)));
    passed.push(report(5, &|| criterion_5(&invs)));
    passed.push(report(6, &criterion_6));
    passed.push(report(7, &criterion_7));
    passed.push(report(8, &criterion_8));
    passed.push(report(9, &criterion_9));
    passed.push(report(10, &criterion_10));
    passed.push(report(11, &criterion_11));
    passed.push(report(12, &|| criterion_12(&mods)));

    let failed = passed.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", passed.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
