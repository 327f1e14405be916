use proptest::prelude::*;

use quartic_core::cohomology::cohomology_table;
use quartic_core::groebner::Gb;
use quartic_core::hilbert::{hilbert_function, hilbert_polynomial};
use quartic_core::homology::Window;
use quartic_core::ops::ideal_matrix;
use quartic_core::parse::parse_poly;
use quartic_core::session::Session;
use quartic_core::walls::{slope, wall_candidates, CurveChiTable, PairClass};
use quartic_core::{Field, Mon, MonOrder, Poly, Presentation, Ring, Q};

fn term() -> impl Strategy<Value = (Vec<u32>, i64)> {
    (prop::collection::vec(0u32..3, 4), -4i64..=4)
}

fn poly() -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(term(), 0..5).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(e, c)| (Mon::from_exps(&e), Q::from_i64(c))).collect())
    })
}

/// Homogeneous polynomial of the given degree.
fn homogeneous(deg: u32) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec((prop::collection::vec(0usize..4, deg as usize), -3i64..=3), 1..4).prop_map(|ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|(vars, c)| {
                    let mut e = [0u32; 4];
                    for v in vars {
                        e[v] += 1;
                    }
                    (Mon::from_exps(&e), Q::from_i64(c))
                })
                .collect(),
        )
    })
}

fn ideal() -> impl Strategy<Value = Vec<Poly<Q>>> {
    prop::collection::vec((1u32..=3).prop_flat_map(homogeneous), 1..4)
        .prop_map(|v| v.into_iter().filter(|p| !p.is_zero()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn format_parse_round_trip(p in poly()) {
        let r = Ring::p3();
        let back: Poly<Q> = parse_poly(&p.format(&r.names), &r).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gb_reduces_ideal_multiples(gens in ideal(), f in homogeneous(1)) {
        prop_assume!(!gens.is_empty());
        let mat = ideal_matrix(&gens);
        for order in [MonOrder::GrevLex, MonOrder::Lex] {
            let gb = Gb::of_columns(&mat, order);
            for g in &gens {
                let col = vec![(0u32, g.mul(&f))];
                prop_assert!(gb.contains_column(&col));
            }
        }
    }

    #[test]
    fn hilbert_polynomial_agrees_past_regularity(gens in ideal()) {
        let m = Presentation::quotient(Ring::p3(), &gens).unwrap();
        let hp = hilbert_polynomial(&m);
        let reg = quartic_core::FreeResolution::minimal(&m, 5).betti().regularity();
        for d in reg.max(0)..reg.max(0) + 8 {
            prop_assert_eq!(Q::from_i64(hilbert_function(&m, d) as i64), hp.eval(d as i64));
        }
    }

    #[test]
    fn cohomology_window_independent(gens in ideal(), lo in -3i32..0, hi in 0i32..3) {
        let m = Presentation::quotient(Ring::p3(), &gens).unwrap();
        let small = cohomology_table(&m, Window::new(lo, hi));
        let big = cohomology_table(&m, Window::new(lo - 1, hi + 1));
        for q in 0..4 {
            for d in lo..=hi {
                prop_assert_eq!(small.get(q, d), big.get(q, d));
            }
        }
    }

    #[test]
    fn wall_slopes_agree(d in 2i64..6, chi in -3i64..4) {
        for w in wall_candidates(d, chi, (chi - 2 * d, chi + 2 * d), &CurveChiTable::default()).unwrap() {
            let total = PairClass { d, chi, has_section: true };
            prop_assert_eq!(slope(&w.sub, w.alpha), slope(&total, w.alpha));
            prop_assert_eq!(w.sub.d + w.quotient.d, d);
            prop_assert_eq!(w.sub.chi + w.quotient.chi, chi);
        }
    }

    #[test]
    fn session_parser_never_panics(text in "[a-z =,;\\[\\]0-9:*^+\\-\n]{0,80}") {
        let _ = Session::<Q>::parse(&format!("ring QQ[x,y,z,w]\n{text}"));
    }
}
