use std::collections::BTreeMap;

use icanon_core::positivity::*;
use icanon_core::ring::LaurentPoly;
use icanon_core::tensor::*;

fn desc(n: usize, f: &str, v: Variant) -> ModuleDescriptor {
    ModuleDescriptor::new(n, ModuleDescriptor::parse_factors(f).unwrap(), v).unwrap()
}

fn rows(r: &PositivityReport) -> Vec<String> {
    r.records.iter().map(|x| format!("{} {} {} {}", x.b, x.b_alpha, x.b_beta, x.t)).collect()
}

#[test]
fn two_factor_mixed_expansion() {
    let d = desc(1, "V,V", Variant::Bw13);
    let r = mixed_report(&SplitSpec::new(d.clone(), 1).unwrap()).unwrap();
    assert_eq!(
        rows(&r),
        [
            "(2,2) (2) (2) 1",
            "(1,2) (1) (2) 1",
            "(2,1) (2) (1) 1",
            "(2,1) (1) (2) q",
            "(1,1) (1) (1) 1",
            "(1,1) (1) (2) q^2",
        ]
    );
    assert!(r.all_positive());
    let l0 = mixed_report(&SplitSpec::new(d, 0).unwrap()).unwrap();
    assert!(rows(&l0).contains(&"(1,1) () (2,2) q^3".to_string()));
}

#[test]
fn pure_expansion_of_two_factors() {
    let r = pure_report(&SplitSpec::new(desc(1, "V,V", Variant::Bw13), 1).unwrap()).unwrap();
    assert!(rows(&r).contains(&"(2,1) (1) (2) q".to_string()));
    assert!(r.all_positive());
    let w = pure_report(&SplitSpec::new(desc(2, "wedge2,V", Variant::Bw13), 1).unwrap()).unwrap();
    assert!(w.all_positive());
}

#[test]
fn positivity_and_round_trip_on_small_grid() {
    for (n, f) in [(1, "V,V,V"), (2, "V,V"), (2, "wedge2,V"), (2, "V,wedge2,V")] {
        for v in [Variant::Bw13, Variant::Bao17] {
            let d = desc(n, f, v);
            for l in 0..=d.factors.len() {
                let s = SplitSpec::new(d.clone(), l).unwrap();
                let mixed = expand_mixed(&s).unwrap();
                verify_round_trip(&s, &mixed, true).unwrap();
                verify_round_trip(&s, &expand_pure(&s).unwrap(), false).unwrap();
                assert!(mixed_report(&s).unwrap().all_positive(), "{d} l={l}");
                assert!(pure_report(&s).unwrap().all_positive(), "{d} l={l}");
            }
        }
    }
}

#[test]
fn trivial_splits() {
    let d = desc(2, "V,V", Variant::Bao17);
    let r = mixed_report(&SplitSpec::new(d.clone(), 2).unwrap()).unwrap();
    assert_eq!(r.coefficients, r.elements);
    let p0 = pure_report(&SplitSpec::new(d.clone(), 0).unwrap()).unwrap();
    assert_eq!(p0.coefficients, p0.elements);
    assert!(SplitSpec::new(d, 3).is_err());
}

/// Refining the α-side of a split at `l` by a split at `l′ < l` gives the
/// direct split at `l′`.
#[test]
fn splits_are_associative() {
    for v in [Variant::Bw13, Variant::Bao17] {
        let d = desc(2, "V,V,V", v);
        let outer = expand_mixed(&SplitSpec::new(d.clone(), 2).unwrap()).unwrap();
        let (alpha, _) = d.split(2).unwrap();
        let inner: BTreeMap<usize, BTreeMap<(usize, usize), LaurentPoly>> = expand_mixed(&SplitSpec::new(alpha.clone(), 1).unwrap()).unwrap().into_iter().collect();
        let direct: BTreeMap<usize, BTreeMap<(usize, usize), LaurentPoly>> = expand_mixed(&SplitSpec::new(d.clone(), 1).unwrap()).unwrap().into_iter().collect();
        let x = tensor_space(2, &d.factors).unwrap();
        let v1 = tensor_space(2, &[Factor::V]).unwrap();
        let vv = tensor_space(2, &[Factor::V, Factor::V]).unwrap();
        // b_γ ⊗ b_β in the canonical basis of the last two factors
        let vv_mod = canonical_data(2, &[Factor::V, Factor::V]).unwrap();
        for (b, coeffs) in &outer {
            let mut acc: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
            for ((a, c), t) in coeffs {
                for ((a1, g), s) in &inner[a] {
                    // the canonical basis of V is standard
                    let w = [v1.word(*g)[0], v1.word(*c)[0]];
                    let col = vv_mod.canonical_inv.column(vv.index_of(&w).unwrap());
                    for (r, e) in col {
                        *acc.entry((*a1, *r)).or_default() += &(t * s) * e;
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            assert_eq!(acc, direct[b], "{}", x.format_word(*b));
        }
    }
}

#[test]
fn simple_module_expansions() {
    let r = expand_simple(1, &[1], Variant::Bw13).unwrap();
    assert_eq!(rows(&r), ["(2) (2) () 1", "(1) (1) () 1", "(1) (2) () q"]);
    let zero = expand_simple(2, &[0, 0], Variant::Bw13).unwrap();
    assert_eq!(zero.elements, 1);
    assert_eq!(zero.coefficients, 1);
    for v in [Variant::Bw13, Variant::Bao17] {
        let r = expand_simple(1, &[2], v).unwrap();
        assert_eq!(r.elements, 3);
        assert!(r.all_positive());
    }
}

#[test]
fn agrees_with_parabolic_kazhdan_lusztig() {
    for n in 1..=2 {
        for m in 1..=3 {
            let b = kl_cross_check(n, m).unwrap();
            assert!(b.passed(), "n={n} m={m}: {:?}", b.mismatches);
            assert_eq!(b.elements, (n + 1).pow(m as u32));
            let a = canonical_cross_check(n, m).unwrap();
            assert!(a.passed(), "n={n} m={m}: {:?}", a.mismatches);
        }
    }
}

#[test]
fn report_serializes() {
    let r = mixed_report(&SplitSpec::new(desc(1, "V", Variant::Bw13), 0).unwrap()).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["kind"], "mixed");
    assert_eq!(j["coefficients"], 3);
    assert_eq!(j["records"][2]["t"], serde_json::json!([[1, 1]]));
}
