mod common;

use common::symbolic;
use ncps::random::PolyGen;
use ncps::render::{from_json, render_json};
use ncps::{parse, parse_poly, render_text, NCPoly};
use proptest::prelude::*;

#[test]
fn five_hundred_seeded_round_trips() {
    let mut gen = PolyGen::new(12);
    for _ in 0..500 {
        let f = gen.symbolic(5);
        let text = render_text(&f);
        assert_eq!(parse_poly(&text).unwrap(), f, "{text}");
        assert_eq!(from_json(&render_json(&f)).unwrap(), f);
    }
}

#[test]
fn operator_division_points_at_denominator() {
    let src = "p^2/(2*x)";
    let err = parse_poly(src).unwrap_err();
    assert_eq!(&src[err.span.start..err.span.end], "(2*x)");
}

proptest! {
    #[test]
    fn text_round_trip(f in symbolic(6)) {
        prop_assert_eq!(parse_poly(&render_text(&f)).unwrap(), f);
    }

    #[test]
    fn rendering_is_deterministic(f in symbolic(4)) {
        let g: NCPoly = NCPoly::from_terms(f.iter().map(|((a, b), c)| (a, b, c.clone())).rev().collect::<Vec<_>>());
        prop_assert_eq!(render_text(&f), render_text(&g));
    }

    #[test]
    fn errors_point_inside_the_source(src in "[xpimhbar0-9+*/^()\\[\\], -]{0,16}") {
        if let Err(e) = parse(&src).map(|_| ()).and_then(|_| parse_poly(&src).map(|_| ())) {
            prop_assert!(e.span.start <= e.span.end && e.span.end <= src.len(), "{:?} in {:?}", e, src);
            prop_assert!(e.line == 1 && e.column <= src.chars().count() + 1);
        }
    }
}
