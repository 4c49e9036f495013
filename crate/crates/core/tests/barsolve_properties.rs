use icanon_core::barsolve::{BarSystem, BasisFamily, Column, TransitionMatrix};
use icanon_core::hecke::Hecke;
use icanon_core::ring::LaurentPoly;
use icanon_core::weyl::CoxType;
use proptest::prelude::*;

fn bar_columns(h: &Hecke) -> Vec<Column> {
    (0..h.group().order()).map(|w| h.bar_standard(w).to_column()).collect()
}

/// A linear extension of Bruhat order different from the index order:
/// sort by length, breaking ties by a permutation-dependent key.
fn shuffled_order(h: &Hecke, salt: u64) -> Vec<usize> {
    let g = h.group();
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&w| (g.length(w), (w as u64).wrapping_mul(salt | 1).rotate_left(17)));
    order
}

#[test]
fn canonical_basis_is_independent_of_the_linear_extension() {
    for ty in [CoxType::a(3), CoxType::b(3)] {
        let h = Hecke::get(ty);
        let base = BarSystem::new(bar_columns(&h), (0..h.group().order()).collect()).unwrap().canonicalize().unwrap();
        for salt in [3u64, 977, 65_537] {
            let alt = BarSystem::new(bar_columns(&h), shuffled_order(&h, salt)).unwrap().canonicalize().unwrap();
            assert_eq!(alt.columns(), base.columns(), "{ty} salt {salt}");
        }
    }
}

#[test]
fn non_involution_is_rejected() {
    let cols = vec![vec![(0, LaurentPoly::one())], vec![(0, LaurentPoly::q()), (1, LaurentPoly::one())]];
    let sys = BarSystem::new(cols, vec![0, 1]).unwrap();
    assert!(sys.check_involution().is_err());
    let bad = vec![vec![(0, LaurentPoly::one()), (1, LaurentPoly::one())], vec![(1, LaurentPoly::one())]];
    assert!(BarSystem::new(bad, vec![0, 1]).is_err());
}

fn unitriangular(n: usize) -> impl Strategy<Value = TransitionMatrix> {
    prop::collection::vec(prop::collection::vec((-3i32..=3, -4i64..=4), 0..3), n * n).prop_map(move |raw| {
        let cols = (0..n)
            .map(|b| {
                let mut col: Column = (0..b)
                    .map(|r| (r, LaurentPoly::from_terms(raw[b * n + r].clone())))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                col.push((b, LaurentPoly::one()));
                col
            })
            .collect();
        TransitionMatrix::from_columns(cols, (0..n).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn inverse_and_expansion_round_trip(m in unitriangular(5)) {
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.compose(&inv), TransitionMatrix::identity(5));
        let fam = BasisFamily::new(m.columns().to_vec(), (0..5).collect()).unwrap();
        let v: Column = vec![(1, "q + 2".parse().unwrap()), (4, "q^-3".parse().unwrap())];
        let x = fam.expand(&v).unwrap();
        prop_assert_eq!(fam.synthesize(&x), v);
    }
}
