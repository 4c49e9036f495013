//! Acceptance suite: one pass/fail line per criterion, each with a pinned
//! time bound. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use icanon_core::hecke::Hecke;
use icanon_core::linalg::{row_from_laurent, Echelon};
use icanon_core::positivity::{canonical_cross_check, expand_mixed, expand_pure, kl_cross_check, mixed_report, pure_report, expand_simple, verify_round_trip, SplitSpec};
use icanon_core::ring::{q_minus_qinv, qinv_minus_q, LaurentPoly};
use icanon_core::sparse::SparseVec;
use icanon_core::tensor::simple::host_descriptor;
use icanon_core::tensor::*;
use icanon_core::weyl::{CosetKind, CoxType};
use icanon_core::Error;

type Check = Box<dyn FnOnce() -> Result<String, String>>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn braid_order(ty: CoxType, s: u8, t: u8) -> usize {
    match (s.min(t), s.abs_diff(t)) {
        (0, 1) if ty.family == icanon_core::weyl::Family::B => 4,
        (_, 1) => 3,
        _ => 2,
    }
}

fn c1_hecke_relations() -> Result<String, String> {
    let mut checked = 0;
    for ty in [CoxType::a(4), CoxType::b(3)] {
        let h = Hecke::get(ty);
        let n = h.group().order();
        let gens = ty.generators();
        for w in 0..n {
            let v = h.standard(w);
            for &s in &gens {
                let vs = h.mul_simple(&v, s);
                let quad = &(&h.mul_simple(&vs, s) + &vs.scaled(&q_minus_qinv())) - &v;
                ensure(quad.is_zero(), || format!("{ty}: quadratic relation fails at {} s{s}", h.group().element(w)))?;
                for &t in &gens {
                    if t <= s {
                        continue;
                    }
                    let m = braid_order(ty, s, t);
                    let (mut a, mut b) = (v.clone(), v.clone());
                    for k in 0..m {
                        a = h.mul_simple(&a, if k % 2 == 0 { s } else { t });
                        b = h.mul_simple(&b, if k % 2 == 0 { t } else { s });
                    }
                    ensure(a == b, || format!("{ty}: braid relation s{s} s{t} fails"))?;
                    checked += 1;
                }
            }
            ensure(h.bar(h.bar_standard(w)) == v, || format!("{ty}: bar not involutive"))?;
        }
        h.bar_system().check_involution().map_err(err)?;
    }
    Ok(format!("{checked} braid checks on A4 and B3"))
}

fn c2_longest_parabolic() -> Result<String, String> {
    let mut count = 0;
    for ty in [CoxType::a(3), CoxType::b(3)] {
        let h = Hecke::get(ty);
        let g = h.group();
        for j in ty.full_set().subsets() {
            let wj = g.longest(j);
            let expected: SparseVec = g.parabolic_elements(j).iter().map(|&w| (w, LaurentPoly::q_pow(g.length(wj) as i32 - g.length(w) as i32))).collect();
            ensure(*h.kl_basis(wj).map_err(err)? == expected, || format!("{ty} J={j}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} parabolic subgroups"))
}

fn c3_embedding_identity() -> Result<String, String> {
    let mut count = 0;
    for ty in [CoxType::a(3), CoxType::b(3)] {
        let h = Hecke::get(ty);
        let g = h.group();
        for j in ty.full_set().subsets() {
            let m = h.parabolic(j).map_err(err)?;
            let wj = g.longest(j);
            for &w in m.reps() {
                let lhs = h.embed_pj(j, &*m.kl(w).map_err(err)?).map_err(err)?;
                ensure(lhs == *h.kl_basis(g.mul(wj, w)).map_err(err)?, || format!("{ty} J={j} w={}", g.element(w)))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs (J, w)"))
}

fn c4_hybrid_lemma() -> Result<String, String> {
    let mut count = 0;
    for ty in [CoxType::a(3), CoxType::b(3)] {
        let h = Hecke::get(ty);
        let g = h.group();
        let subsets = ty.full_set().subsets();
        for &i in &subsets {
            for &j in &subsets {
                for &pm in &g.min_coset_reps(j, i, CosetKind::Double) {
                    let k = g.conjugate_into(g.inverse(pm), j, i).map_err(err)?;
                    for &w in g.parabolic_elements(i).iter() {
                        if g.has_left_descent_in(w, k) {
                            continue;
                        }
                        let lhs = h.embed_pj(j, &h.parabolic_hybrid(i, j, g.mul(pm, w)).map_err(err)?).map_err(err)?;
                        let rhs = h.lemma_p_plus(i, j, pm, w).map_err(err)?;
                        ensure(lhs == rhs, || format!("{ty} I={i} J={j} p={} w={}", g.element(pm), g.element(w)))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} tuples (I, J, p, w)"))
}

fn c5_hybrid_positivity() -> Result<String, String> {
    let mut count = 0;
    for ty in [CoxType::a(3), CoxType::b(3)] {
        let h = Hecke::get(ty);
        for i in ty.full_set().subsets() {
            for w in 0..h.group().order() {
                let d = h.decompose_gh(i, w).map_err(err)?;
                ensure(d.is_nonneg(), || format!("{ty} I={i} w={}: {d:?}", h.group().element(w)))?;
                count += d.len();
            }
        }
    }
    Ok(format!("{count} coefficients in N[q]"))
}

fn c6_parabolic_hybrid_positivity() -> Result<String, String> {
    let ty = CoxType::b(3);
    let h = Hecke::get(ty);
    let subsets = ty.full_set().subsets();
    let (mut coeffs, mut identities) = (0, 0);
    for &i in &subsets {
        for &j in &subsets {
            for &w in h.parabolic(j).map_err(err)?.reps() {
                let d = h.decompose_mj(i, j, w).map_err(err)?;
                ensure(d.is_nonneg(), || format!("I={i} J={j} w={}", h.group().element(w)))?;
                coeffs += d.len();
            }
            identities += h.verify_scalar_identity(i, j).map_err(err)?;
        }
    }
    Ok(format!("{coeffs} coefficients in N[q], {identities} scalar identities"))
}

fn commute(a: &Operator, b: &Operator) -> bool {
    a.compose(b) == b.compose(a)
}

fn c7_dualities() -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=3 {
        for m in 2..=4 {
            let s = tensor_space(n, &vec![Factor::V; m]).map_err(err)?;
            let us: Vec<Operator> = UGen::all(n).into_iter().map(|g| s.u_action(g)).collect::<Result<_, _>>().map_err(err)?;
            for i in 1..m {
                let h = s.hecke_a_action(i).map_err(err)?;
                for u in &us {
                    ensure(commute(&h, u), || format!("U and H{i} do not commute, n={n} m={m}"))?;
                    pairs += 1;
                }
            }
        }
        for m in 1..=3 {
            let s = tensor_space(n, &vec![Factor::V; m]).map_err(err)?;
            for v in [Variant::Bw13, Variant::Bao17] {
                let h0 = s.hecke_b0_action(v).map_err(err)?;
                let mut hecke = vec![h0.clone()];
                for i in 1..m {
                    hecke.push(s.hecke_a_action(i).map_err(err)?);
                }
                for i in 1..=n {
                    for b in [s.iota_action(v, i).map_err(err)?, s.theta_cartan(i).map_err(err)?] {
                        for h in &hecke {
                            ensure(commute(h, &b), || format!("coideal and Hecke do not commute, n={n} m={m} {v}"))?;
                            pairs += 1;
                        }
                    }
                }
                if m >= 2 {
                    let h1 = &hecke[1];
                    ensure(h0.compose(h1).compose(&h0).compose(h1) == h1.compose(&h0).compose(h1).compose(&h0), || format!("braid H0 H1 fails n={n} {v}"))?;
                }
                let id = Operator::identity(s.dim());
                let quad = if v == Variant::Bw13 { id.add(&h0.scaled(&qinv_minus_q())) } else { id };
                ensure(h0.compose(&h0) == quad, || format!("H0 quadratic relation fails n={n} {v}"))?;
            }
        }
    }
    Ok(format!("{pairs} commuting pairs"))
}

fn c8_characterizations() -> Result<String, String> {
    let mut elements = 0;
    for n in 1..=2 {
        for m in 1..=3 {
            let a = canonical_cross_check(n, m).map_err(err)?;
            ensure(a.passed(), || format!("canonical vs type A, n={n} m={m}: {:?}", a.mismatches))?;
            let b = kl_cross_check(n, m).map_err(err)?;
            ensure(b.passed(), || format!("ι-canonical vs type B, n={n} m={m}: {:?}", b.mismatches))?;
            elements += b.elements;
            for v in [Variant::Bw13, Variant::Bao17] {
                let module = build_space(&ModuleDescriptor::tensor_power(n, m, v)).map_err(err)?;
                for b in 0..module.dim() {
                    let x = module.iota_vector(b);
                    ensure(module.psi_iota_apply(&x) == x, || format!("B^ι element not ψ_ι-invariant, n={n} m={m} {v}"))?;
                    for (r, t) in module.iota.column(b) {
                        let ok = if *r == b { t.is_one() } else { t.in_q_zq() && module.space.rank(*r) < module.space.rank(b) };
                        ensure(ok, || format!("B^ι not unitriangular over B◇, n={n} m={m} {v}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{elements} ι-canonical elements matched with parabolic KL of type B"))
}

fn basis_vectors(m: &BasedModule, iota: bool) -> Vec<SparseVec> {
    (0..m.dim()).map(|b| if iota { m.iota_vector(b) } else { m.canonical_vector(b) }).collect()
}

fn c9_based_morphisms() -> Result<String, String> {
    let cases: &[(usize, &str, &str)] = &[
        (2, "V,V", "wedge2"),
        (2, "V,V,V", "wedge2,V"),
        (2, "V,V,V", "V,wedge2"),
        (2, "V,V,V,V", "wedge2,wedge2"),
        (2, "V,V,V,V", "V,wedge2,V"),
        (1, "V,V", "V,V"),
    ];
    let mut images = 0;
    for &(n, src, dst) in cases {
        for v in [Variant::Bw13, Variant::Bao17] {
            let a = build_space(&ModuleDescriptor::new(n, ModuleDescriptor::parse_factors(src).unwrap(), v).map_err(err)?).map_err(err)?;
            let b = build_space(&ModuleDescriptor::new(n, ModuleDescriptor::parse_factors(dst).unwrap(), v).map_err(err)?).map_err(err)?;
            for iota in [false, true] {
                let target = basis_vectors(&b, iota);
                let mut zeros = 0;
                for x in basis_vectors(&a, iota) {
                    let img = wedge_project(&a.space, &b.space, &x).map_err(err)?;
                    if img.is_zero() {
                        zeros += 1;
                    } else {
                        ensure(target.contains(&img), || format!("{src} -> {dst} {v}: image is not a basis element"))?;
                    }
                    images += 1;
                }
                ensure(zeros == a.dim() - b.dim(), || format!("{src} -> {dst}: {zeros} zero images"))?;
            }
        }
    }
    Ok(format!("{images} basis images checked"))
}

/// The grid of criteria 10, 11 and 13. Descriptors rejected by the
/// `wedge(m)` with `m ≤ n` contract are returned separately.
fn grid(v: Variant) -> (Vec<ModuleDescriptor>, Vec<String>) {
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for n in 1..=2 {
        for f in ["V,V", "V,V,V", "wedge2,V", "V,wedge2,V"] {
            if f == "V,wedge2,V" && n != 2 {
                continue;
            }
            match ModuleDescriptor::new(n, ModuleDescriptor::parse_factors(f).unwrap(), v) {
                Ok(d) => ok.push(d),
                Err(Error::RankTooSmall { .. }) => rejected.push(format!("n={n} [{f}]")),
                Err(e) => panic!("{e}"),
            }
        }
    }
    (ok, rejected)
}

fn positivity_grid(v: Variant, pure: bool) -> Result<String, String> {
    let (descs, rejected) = grid(v);
    let mut coeffs = 0;
    for d in &descs {
        for l in 0..=d.factors.len() {
            let spec = SplitSpec::new(d.clone(), l).map_err(err)?;
            let report = if pure { pure_report(&spec) } else { mixed_report(&spec) }.map_err(err)?;
            ensure(report.all_positive(), || format!("{d} l={l}: {:?}", report.failures))?;
            let exp = if pure { expand_pure(&spec) } else { expand_mixed(&spec) }.map_err(err)?;
            verify_round_trip(&spec, &exp, !pure).map_err(err)?;
            coeffs += report.coefficients;
        }
    }
    Ok(format!("{coeffs} coefficients in N[q] over {} spaces; outside the m ≤ n contract: {}", descs.len(), rejected.join(", ")))
}

fn c12_simple_modules() -> Result<String, String> {
    let mut out = Vec::new();
    for (n, lambda, weyl_dim) in [(1, vec![1], 2), (1, vec![2], 3), (2, vec![1, 0], 3), (2, vec![1, 1], 8)] {
        for v in [Variant::Bw13, Variant::Bao17] {
            let report = expand_simple(n, &lambda, v).map_err(err)?;
            ensure(report.all_positive(), || format!("λ={lambda:?} {v}: {:?}", report.failures))?;
            // brute force: close v⁺ under every Chevalley generator
            let host = build_space(&host_descriptor(n, &lambda, v).map_err(err)?).map_err(err)?;
            let s = &host.space;
            let mut top = Vec::new();
            for f in &host.descriptor.factors {
                top.extend(1..=f.width() as u8);
            }
            let gens: Vec<Operator> = UGen::all(n).into_iter().map(|g| s.u_action(g)).collect::<Result<_, _>>().map_err(err)?;
            let mut span = Echelon::new();
            let start = SparseVec::basis(s.index_of(&top).unwrap());
            span.insert(row_from_laurent(start.iter().map(|(i, c)| (i, c.clone()))));
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                for g in &gens {
                    let y = g.apply(&x);
                    if !y.is_zero() && span.insert(row_from_laurent(y.iter().map(|(i, c)| (i, c.clone())))).is_some() {
                        queue.push(y);
                    }
                }
            }
            ensure(span.rank() == report.elements && span.rank() == weyl_dim, || {
                format!("λ={lambda:?}: |B(λ)| = {}, brute force {}, Weyl {weyl_dim}", report.elements, span.rank())
            })?;
        }
        out.push(format!("{lambda:?}:{weyl_dim}"));
    }
    Ok(format!("|B(λ)| = dim U·v⁺ for {}", out.join(" ")))
}

fn c14_determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_icanon");
    let dir = tempfile::tempdir().map_err(err)?;
    let runs: &[&[&str]] = &[
        &["kl", "--family", "B", "--rank", "3", "--format", "json"],
        &["pkl", "--family", "A", "--rank", "3", "--J", "s1,s3", "--format", "csv"],
        &["hybrid", "--family", "B", "--rank", "3", "--I", "s1,s2", "--J", "s0"],
        &["basis", "--n", "2", "--factors", "V,wedge2,V", "--kind", "iota", "--variant", "bao17", "--format", "json"],
        &["positivity", "--n", "2", "--factors", "V,V,V", "--split", "2", "--variant", "bao17", "--format", "csv"],
        &["positivity", "--n", "2", "--expansion", "simple", "--lambda", "1,1"],
    ];
    for args in runs {
        let run = |extra: &[&str]| {
            let out = Command::new(bin).args(*args).args(extra).output().expect("binary runs");
            (out.status.code(), out.stdout)
        };
        let cache = dir.path().to_str().unwrap();
        let first = run(&["--no-cache"]);
        let second = run(&["--no-cache"]);
        let cold = run(&["--cache-dir", cache]);
        let warm = run(&["--cache-dir", cache]);
        ensure(first.0 == Some(0), || format!("{args:?} exited with {:?}", first.0))?;
        ensure(first == second, || format!("{args:?}: outputs differ between runs"))?;
        ensure(first == cold && cold == warm, || format!("{args:?}: cached output differs"))?;
    }
    Ok(format!("{} commands byte-identical across runs and cache states", runs.len()))
}

fn main() {
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("1 Hecke relations and bar involution (A4, B3)", Duration::from_secs(10), Box::new(c1_hecke_relations)),
        ("2 KL of longest parabolic elements (A3, B3)", Duration::from_secs(30), Box::new(c2_longest_parabolic)),
        ("3 parabolic embedding identity (A3, B3)", Duration::from_secs(120), Box::new(c3_embedding_identity)),
        ("4 hybrid expansion of embedded parabolic hybrid elements (A3, B3)", Duration::from_secs(300), Box::new(c4_hybrid_lemma)),
        ("5 hybrid basis positivity (A3, B3)", Duration::from_secs(300), Box::new(c5_hybrid_positivity)),
        ("6 parabolic hybrid positivity and scalar identity (B3)", Duration::from_secs(600), Box::new(c6_parabolic_hybrid_positivity)),
        ("7 Schur and coideal dualities", Duration::from_secs(300), Box::new(c7_dualities)),
        ("8 canonical and ι-canonical bases vs parabolic KL", Duration::from_secs(600), Box::new(c8_characterizations)),
        ("9 wedge projections are based morphisms", Duration::from_secs(300), Box::new(c9_based_morphisms)),
        ("10 mixed expansion positivity, bw13", Duration::from_secs(900), Box::new(|| positivity_grid(Variant::Bw13, false))),
        ("11 mixed expansion positivity, bao17", Duration::from_secs(900), Box::new(|| positivity_grid(Variant::Bao17, false))),
        ("12 simple modules: positivity and dimension", Duration::from_secs(600), Box::new(c12_simple_modules)),
        ("13 canonical basis tensor positivity", Duration::from_secs(600), Box::new(|| {
            let a = positivity_grid(Variant::Bw13, true)?;
            let b = positivity_grid(Variant::Bao17, true)?;
            Ok(format!("{a}; {b}"))
        })),
        ("14 CLI determinism", Duration::from_secs(120), Box::new(c14_determinism)),
    ];
    let mut failed = 0;
    for (name, bound, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= bound => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {bound:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {name}: {} in {:.2}s (bound {}s): {detail}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64(), bound.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
