use std::collections::BTreeMap;

use facerel::coeffring::HalfLaurent;
use facerel::cover::LatticeVector;
use facerel::graphmap::{prism, tetrahedron};
use facerel::qtorus::{torus_mul, ChargeSign, TorusElement};
use facerel::waverep::{series_action, RepresentationChoice};
use proptest::prelude::*;

type T = TorusElement<HalfLaurent>;

fn choices() -> Vec<RepresentationChoice> {
    let mut out = Vec::new();
    for map in [tetrahedron(), prism(3)] {
        for sign in [ChargeSign::Plus, ChargeSign::Minus] {
            let c = RepresentationChoice::standard(&map, sign).unwrap();
            let g = c.genus();
            out.push(c.with_framing(vec![1; g], vec![-1; g]));
            out.push(c);
        }
    }
    out
}

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-3i64..=3, -2i64..=2), 1..=2).prop_map(HalfLaurent::from_terms)
}

fn element() -> impl Strategy<Value = T> {
    prop::collection::vec((prop::collection::vec(-1i64..=1, 9), laurent()), 1..=3)
        .prop_map(|ts| T::from_terms(9, ts.into_iter().map(|(v, c)| (LatticeVector(v), c))))
}

fn series() -> impl Strategy<Value = BTreeMap<Vec<i64>, HalfLaurent>> {
    prop::collection::btree_map(prop::collection::vec(0i64..=3, 2), laurent(), 1..=3)
}

fn fit(x: &T, dim: usize) -> T {
    T::from_terms(dim, x.terms().map(|(n, c)| (LatticeVector(n.coords()[..dim].to_vec()), c.clone())))
}

fn fit_series(f: &BTreeMap<Vec<i64>, HalfLaurent>, g: usize) -> BTreeMap<Vec<i64>, HalfLaurent> {
    let mut out: BTreeMap<Vec<i64>, HalfLaurent> = BTreeMap::new();
    for (m, c) in f {
        let slot = out.entry(m[..g].to_vec()).or_insert_with(HalfLaurent::zero);
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn action_is_a_representation(idx in 0usize..8, x in element(), y in element(), f in series()) {
        let cs = choices();
        let choice = &cs[idx];
        let dim = choice.form.dim();
        let (x, y, f) = (fit(&x, dim), fit(&y, dim), fit_series(&f, choice.genus()));
        let xy = torus_mul(&x, &y, &choice.form).unwrap();
        let lhs = series_action(&xy, choice, &f).unwrap();
        let rhs = series_action(&x, choice, &series_action(&y, choice, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_linear(idx in 0usize..8, x in element(), y in element(), f in series()) {
        let cs = choices();
        let choice = &cs[idx];
        let dim = choice.form.dim();
        let (x, y, f) = (fit(&x, dim), fit(&y, dim), fit_series(&f, choice.genus()));
        let lhs = series_action(&x.add(&y), choice, &f).unwrap();
        let mut rhs = series_action(&x, choice, &f).unwrap();
        for (k, c) in series_action(&y, choice, &f).unwrap() {
            let slot = rhs.entry(k).or_insert_with(HalfLaurent::zero);
            *slot = &*slot + &c;
        }
        rhs.retain(|_, c| !c.is_zero());
        prop_assert_eq!(lhs, rhs);
    }
}
