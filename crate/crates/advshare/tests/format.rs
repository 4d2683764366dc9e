use advshare::format::{
    parse_classical, parse_matrix, parse_triple, write_classical, write_matrix, write_triple, FormatError,
};
use advshare_core::classical::{one_time_pad, ramp_shamir};
use advshare_core::field::{Field, Fq};
use advshare_core::fixtures::{example3b, gottesman};
use advshare_core::rs::{build_rs_scheme, RsParams};
use advshare_core::symplectic::random_triple;
use advshare_core::{Error, Layout, MatrixFq, ShareSet};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn shipped_fixtures_parse() {
    let g = parse_triple(&data("gottesman.triple")).unwrap();
    assert_eq!(g.triple.c_max, gottesman().c_max);
    assert_eq!(g.advance, Some(ShareSet::prefix(1)));
    let e = parse_triple(&data("example3b.triple")).unwrap();
    assert_eq!((e.triple.c_r.clone(), e.triple.c_max.clone()), (example3b().c_r, example3b().c_max));
    let rs = parse_triple(&data("rs_5_2_1.triple")).unwrap();
    assert_eq!(rs.triple.c_max, build_rs_scheme(&RsParams { q: 5, k: 2, s: 1 }, false).unwrap().c_max);
    let c = parse_classical(&data("one_time_pad.classical")).unwrap();
    assert_eq!((c.c1.clone(), c.c2.clone()), (one_time_pad().c1, one_time_pad().c2));
    let s = parse_classical(&data("shamir_5_2_1.classical")).unwrap();
    assert_eq!(s.c1, ramp_shamir(5, 5, 2, 1).unwrap().c1);
    assert_eq!(s.c2, ramp_shamir(5, 5, 2, 1).unwrap().c2);
}

#[test]
fn triple_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [2, 3, 4, 5, 9] {
        let f = Field::with_order(q).unwrap();
        for (n, k, s) in [(3, 1, 1), (4, 2, 0), (2, 2, 0), (4, 1, 2)] {
            let t = random_triple(&f, n, k, s, &mut rng).unwrap();
            for adv in [None, Some(ShareSet::from_one_based(&[1, n]))] {
                let text = write_triple(&t, adv);
                let back = parse_triple(&text).unwrap();
                assert_eq!(back.advance, adv);
                assert_eq!(back.triple.c_s, t.c_s);
                assert_eq!(back.triple.c_r, t.c_r);
                assert_eq!(back.triple.c_max, t.c_max);
                assert_eq!(write_triple(&back.triple, adv), text);
            }
        }
    }
}

#[test]
fn classical_round_trip() {
    for s in [one_time_pad(), ramp_shamir(5, 5, 2, 1).unwrap(), ramp_shamir(4, 3, 1, 0).unwrap()] {
        let text = write_classical(&s);
        let back = parse_classical(&text).unwrap();
        assert_eq!((back.c1.clone(), back.c2.clone()), (s.c1.clone(), s.c2.clone()));
        assert_eq!(write_classical(&back), text);
    }
}

fn line_of(e: FormatError) -> usize {
    match e {
        FormatError::Parse { line, .. } => line,
        other => panic!("not a parse error: {other}"),
    }
}

#[test]
fn parse_errors_point_at_lines() {
    let good = data("gottesman.triple");
    let swap = good.replace("1 1 | 0 0\n0 0 | 1 1\nC_MAX", "1 1 | 0 0\n0 0 | 1 7\nC_MAX");
    assert_eq!(line_of(parse_triple(&swap).unwrap_err()), 7);
    let short = good.replacen("1 1 | 0 0", "1 1 | 0", 1);
    assert_eq!(line_of(parse_triple(&short).unwrap_err()), 6);
    let bar = good.replacen("1 1 | 0 0", "1 | 1 0 0", 1);
    assert!(matches!(parse_triple(&bar), Err(FormatError::Parse { .. })));
    let label = good.replace("C_R", "C_X");
    assert_eq!(line_of(parse_triple(&label).unwrap_err()), 4);
    let truncated: String = good.lines().take(8).map(|l| format!("{l}\n")).collect();
    assert!(matches!(parse_triple(&truncated), Err(FormatError::Parse { .. })));
    let bad_adv = good.replace("advance 1", "advance 3");
    assert!(matches!(parse_triple(&bad_adv), Err(FormatError::Parse { .. })));
    let field = good.replace("params 2", "params 6");
    assert!(matches!(
        parse_triple(&field),
        Err(FormatError::Core(Error::NonPrimeCharacteristic(_)) | FormatError::Core(_))
    ));
}

#[test]
fn invalid_triple_reports_violations() {
    let good = data("gottesman.triple");
    let bad = good.replace("params 2 2 2 0", "params 2 2 1 0");
    match parse_triple(&bad) {
        Err(FormatError::Core(Error::InvalidTriple(v))) => assert!(!v.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn comments_and_blank_lines() {
    let text = "# header\n\nq 3 rows 1 cols 4  # trailing\n1 2 | 0 1\n";
    let (f, m) = parse_matrix(text, Layout::Symplectic).unwrap();
    assert_eq!(f.order(), 3);
    assert_eq!(m.row(0), &[Fq(1), Fq(2), Fq(0), Fq(1)][..]);
    assert_eq!(write_matrix(&f, &m, Layout::Symplectic), "q 3 rows 1 cols 4\n1 2 | 0 1\n");
}

proptest! {
    #[test]
    fn matrix_round_trip(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), rows in 0usize..5, half in 1usize..4, seed in any::<u64>()) {
        let f = Field::with_order(q).unwrap();
        let mut state = seed;
        let mut m = MatrixFq::zeros(rows, 2 * half);
        for r in 0..rows {
            for c in 0..2 * half {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                m.set(r, c, Fq(((state >> 33) % q as u64) as u32));
            }
        }
        for layout in [Layout::Plain, Layout::Symplectic] {
            let text = write_matrix(&f, &m, layout);
            let (_, back) = parse_matrix(&text, layout).unwrap();
            prop_assert_eq!(&back, &m);
        }
    }
}
