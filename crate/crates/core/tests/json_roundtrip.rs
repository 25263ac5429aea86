//! Encoding round trips and rejection of malformed documents.

use proptest::prelude::*;

use orbikit::exactnum::{rat, Cyclotomic, IntMatrix};
use orbikit::json::*;
use orbikit::mtorus::{EigenSector, HolonomyData, Turn};
use orbikit::{ClassFunction, FiniteAbelianGroup, RepRingElement};

fn group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::sample::select(vec![vec![2u64], vec![3], vec![4], vec![2, 2], vec![2, 3]]).prop_map(|o| FiniteAbelianGroup::new(o).unwrap())
}

proptest! {
    #[test]
    fn matrices(rows in 1usize..4, cols in 1usize..4, seed in prop::collection::vec(-50i64..50, 16)) {
        let m = IntMatrix::from_fn(rows, cols, |i, j| seed[i * 4 + j]);
        prop_assert_eq!(parse_matrix(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn characters_and_class_functions(g in group(), c in prop::collection::vec(-4i64..=4, 6), q in 1i64..=5) {
        let terms: Vec<(Vec<i64>, i64)> =
            g.irreps().iter().zip(&c).map(|(pi, &n)| (pi.labels().iter().map(|&l| l as i64).collect(), n)).collect();
        let x = RepRingElement::from_terms(&g, terms.iter().map(|(l, n)| (l.as_slice(), *n))).unwrap();
        prop_assert_eq!(parse_rep(&rep_to_json(&x), None).unwrap(), x.clone());
        let f = x.ch().scale(&Cyclotomic::from_rational(rat(1, q))).unwrap();
        prop_assert_eq!(parse_classfun(&classfun_to_json(&f), None).unwrap(), f);
    }

    #[test]
    fn holonomy(g in group(), records in prop::collection::vec((0usize..6, 0i64..6, -5i64..5, 1i64..5), 0..5)) {
        let mut d = HolonomyData::new(&g);
        for (i, m, p, q) in records {
            let x = g.element_at(i % g.order());
            let o = x.order() as i64;
            let mut one = HolonomyData::new(&g);
            one.insert(&x, EigenSector::new(rat(m % o, o), vec![Turn::Exact(rat(p, q))], vec![])).unwrap();
            d = d.direct_sum(&one).unwrap();
        }
        prop_assert_eq!(parse_holonomy(&holonomy_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn arbitrary_text_never_panics(s in ".{0,64}") {
        if let Ok(v) = parse_str(&s) {
            let _ = parse_rep(&v, None);
            let _ = parse_classfun(&v, None);
            let _ = parse_holonomy(&v);
            let _ = parse_subgroup(&v);
        }
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let bad = [
        r#"{"group": {"orders": [0]}, "coeffs": {}}"#,
        r#"{"group": {"orders": [3]}, "coeffs": {"1,1": 1}}"#,
        r#"{"group": {"orders": [3]}, "coeffs": {"x": 1}}"#,
        r#"{"group": {"orders": [3]}, "values": {"0": {"conductor": 3, "coeffs": {"0": "1/0"}}}}"#,
        r#"{"group": {"orders": [2]}, "sectors": {"1": [{"theta": "1/3", "plus": [], "minus": []}]}}"#,
        r#"{"rows": 2, "cols": 2, "entries": [[1, 2]]}"#,
    ];
    for text in bad {
        let v = parse_str(text).unwrap();
        let rejected = parse_rep(&v, None).is_err()
            && parse_classfun(&v, None).is_err()
            && parse_holonomy(&v).is_err()
            && parse_matrix(&v).is_err();
        assert!(rejected, "accepted {text}");
    }
    assert_eq!(
        parse_classfun(&parse_str(r#"{"group": {"orders": [1]}, "values": {"0": "3/2"}}"#).unwrap(), None).unwrap(),
        ClassFunction::constant(&FiniteAbelianGroup::trivial(), Cyclotomic::from_rational(rat(3, 2)))
    );
}
