use hk_cli::{parse_polynomial, parse_problem};
use hk_core::{PolyRing, Polynomial, TermOrder};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// An expression string together with the polynomial it denotes, built
/// directly from the term list.
fn random_case(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>) -> (String, Polynomial) {
    let n = ring.nvars();
    let p = ring.characteristic() as i64;
    let nterms = rng.gen_range(1..=4);
    let mut text = String::new();
    let mut terms = Vec::new();
    for k in 0..nterms {
        let negative = rng.gen_bool(0.4);
        if k == 0 {
            if negative {
                text.push_str(if rng.gen_bool(0.5) { "-" } else { "- " });
            }
        } else {
            text.push_str(if negative { " - " } else { " + " });
        }
        let mut exps = vec![0u32; n];
        let mut factors = Vec::new();
        let explicit_coeff = rng.gen_bool(0.5);
        let coeff: i64 = if explicit_coeff { rng.gen_range(0..1000) } else { 1 };
        if explicit_coeff {
            factors.push(coeff.to_string());
        }
        let nfactors = if explicit_coeff { rng.gen_range(0..=3) } else { rng.gen_range(1..=3) };
        for _ in 0..nfactors {
            let v = rng.gen_range(0..n);
            let e: u32 = match rng.gen_range(0..3) {
                0 => 1,
                1 => rng.gen_range(2..10),
                _ => rng.gen_range(10..200),
            };
            exps[v] += e;
            let name = &ring.vars()[v];
            factors.push(if e == 1 && rng.gen_bool(0.5) { name.clone() } else { format!("{name}^{e}") });
        }
        text.push_str(&factors.join(if rng.gen_bool(0.8) { "*" } else { " * " }));
        terms.push((if negative { (p - coeff % p) % p } else { coeff % p }, exps));
    }
    let poly = Polynomial::from_terms(ring, TermOrder::Grevlex, terms).unwrap();
    (text, poly)
}

fn corpus_rings() -> Vec<Arc<PolyRing>> {
    vec![
        PolyRing::standard(2, &["x", "y"]).unwrap(),
        PolyRing::standard(3, &["x", "y", "z"]).unwrap(),
        PolyRing::weighted(5, &["a", "b1", "c_2"], &[1, 2, 3]).unwrap(),
        PolyRing::weighted(7, &["u", "v", "w", "t"], &[2, 1, 1, 3]).unwrap(),
        PolyRing::standard(2147483647, &["x", "y"]).unwrap(),
    ]
}

#[test]
fn round_trip_corpus_of_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let rings = corpus_rings();
    let mut reductions = 0;
    for k in 0..200 {
        let ring = &rings[k % rings.len()];
        let (text, expected) = random_case(&mut rng, ring);
        let parsed = parse_polynomial(&text, ring).unwrap_or_else(|e| panic!("`{text}`: {e}"));
        assert_eq!(parsed, expected, "`{text}`");
        let printed = parsed.to_string();
        let reparsed = parse_polynomial(&printed, ring).unwrap();
        assert_eq!(reparsed, parsed, "`{text}` printed as `{printed}`");
        assert_eq!(reparsed.to_string(), printed);
        if text.split(|c: char| !c.is_ascii_digit()).any(|d| d.parse::<u64>().is_ok_and(|v| v >= ring.characteristic() as u64)) {
            reductions += 1;
        }
    }
    assert!(reductions > 20);
}

#[test]
fn problem_echo_round_trips() {
    let texts = [
        "p=2 vars=x,y gens=x^2, x*y, y^3",
        "p=3 vars=x,y,z quotient=x*y-z^2 gens=x,y,z",
        "p=5\nvars=a,b\nweights=2,3\ngens=a^3 - b^2, 7*a*b\norder=lex\n",
        "p=3 vars=x,y,z quotient=x*y-z^2 gens=x,y regular_sequence=true e_max=3 degree_budget=90",
    ];
    for t in texts {
        let pr = parse_problem(t).unwrap();
        let again = parse_problem(&pr.to_text()).unwrap();
        assert_eq!(again.echo(), pr.echo(), "{t}");
        assert_eq!(again.ideal.generators(), pr.ideal.generators());
    }
}

fn grammar_soup() -> impl Strategy<Value = String> {
    proptest::collection::vec(
        prop_oneof![
            Just("x".to_string()),
            Just("y".to_string()),
            Just("zz".to_string()),
            Just("^".to_string()),
            Just("*".to_string()),
            Just("+".to_string()),
            Just("-".to_string()),
            Just(" ".to_string()),
            Just("(".to_string()),
            Just("é".to_string()),
            "[0-9]{1,12}",
        ],
        0..16,
    )
    .prop_map(|v| v.concat())
}

proptest! {
    #[test]
    fn expressions_never_panic(s in grammar_soup()) {
        let ring = PolyRing::standard(3, &["x", "y"]).unwrap();
        match parse_polynomial(&s, &ring) {
            Ok(f) => prop_assert_eq!(parse_polynomial(&f.to_string(), &ring).unwrap(), f),
            Err(e) => prop_assert!(e.offset <= s.chars().count()),
        }
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,60}") {
        let ring = PolyRing::standard(5, &["x", "y"]).unwrap();
        let _ = parse_polynomial(&s, &ring);
        if let Err(e) = parse_problem(&s) {
            prop_assert!(!e.code.is_empty());
        }
    }

    #[test]
    fn problem_soup_yields_structured_errors(
        p in prop_oneof![Just("2"), Just("4"), Just("3"), Just("x"), Just("")],
        vars in prop_oneof![Just("x,y"), Just("x,,y"), Just("1x"), Just("x,x")],
        gens in grammar_soup(),
        extra in prop_oneof![Just(""), Just(" weights=1"), Just(" order=banana"), Just(" e_max=-1"), Just(" foo=1"), Just(" # c")],
    ) {
        let text = format!("p={p} vars={vars} gens={gens}{extra}");
        if let Err(e) = parse_problem(&text) {
            prop_assert!(!e.code.is_empty());
            if let (Some(l), Some(c)) = (e.line, e.column) {
                prop_assert_eq!(l, 1);
                prop_assert!(c >= 1 && c <= text.chars().count() + 1);
            }
        }
    }
}
