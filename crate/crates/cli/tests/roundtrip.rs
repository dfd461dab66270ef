use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use gradid_cli::grammar::{parse_poly, Elem, PolySource};
use gradid_core::degree::RawDegree;

/// A bracket tree over the given variable indices, each used once.
fn arb_elem(indices: Vec<u32>, pairs: bool) -> BoxedStrategy<Elem> {
    let degree = move || -> BoxedStrategy<RawDegree> {
        if pairs {
            (-9i64..9, -9i64..9).prop_map(|(i, j)| RawDegree::Pair(i, j)).boxed()
        } else {
            (-99i64..99).prop_map(RawDegree::Int).boxed()
        }
    };
    if indices.len() == 1 {
        let index = indices[0];
        return degree().prop_map(move |degree| Elem::Var { index, degree }).boxed();
    }
    let n = indices.len();
    (Just(indices).prop_shuffle(), 1..n, 0..3usize)
        .prop_flat_map(move |(idx, cut, shape)| {
            let (l, r) = idx.split_at(cut);
            let left = arb_elem(l.to_vec(), pairs);
            let right = arb_elem(r.to_vec(), pairs);
            (left, right, Just(shape))
        })
        .prop_map(|(l, r, shape)| match (shape, l) {
            // Sometimes flatten into a left-normed node with three or more children.
            (0, Elem::Bracket(mut c)) => {
                c.push(r);
                Elem::Bracket(c)
            }
            (_, l) => Elem::Bracket(vec![l, r]),
        })
        .boxed()
}

fn arb_poly() -> impl Strategy<Value = PolySource> {
    (1usize..=6, any::<bool>())
        .prop_flat_map(|(n, pairs)| {
            let term = ((-50i64..50), (1i64..20), arb_elem((1..=n as u32).collect(), pairs))
                .prop_map(|(a, b, e)| (BigRational::new(BigInt::from(a), BigInt::from(b)), e));
            prop::collection::vec(term, 1..5)
        })
        .prop_map(|terms| PolySource { terms })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_print_parse_is_stable(p in arb_poly()) {
        let text = p.to_string();
        let q = parse_poly(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.to_string(), text);
    }

    #[test]
    fn whitespace_is_insignificant(p in arb_poly()) {
        let text = p.to_string();
        let tight: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_poly(&tight).unwrap(), p.clone());
        let mut spaced = String::new();
        for c in text.chars() {
            if "[],:()*/+".contains(c) {
                spaced.extend([' ', c, '\t', '\n']);
            } else {
                spaced.push(c);
            }
        }
        prop_assert_eq!(parse_poly(&spaced).unwrap(), p);
    }
}
