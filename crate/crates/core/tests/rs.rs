use advshare_core::field::Field;
use advshare_core::rs::{build_rs_scheme, default_points, rs_code, rs_thresholds, shamir_thresholds, table1, RsParams};
use advshare_core::scheme::{is_advance_shareable, leakage_dim};
use advshare_core::symplectic::{coset_distance, css_code, symplectic_dual};
use advshare_core::{EnumLimit, Layout, ShareSet, Subspace};

fn euclidean_dual(f: &Field, c: &Subspace) -> Subspace {
    let k = advshare_core::linalg::kernel(f, c.basis());
    Subspace::span(f, Layout::Plain, &k)
}

#[test]
fn rs_duality() {
    for q in [2, 3, 4, 5, 7, 8] {
        let f = Field::with_order(q).unwrap();
        let pts = default_points(&f);
        for k in 0..=q as usize {
            let c = rs_code(&f, k, &pts).unwrap();
            assert_eq!(c.dim(), k);
            let d = if k == 0 { Subspace::full(Layout::Plain, q as usize) } else { euclidean_dual(&f, &c) };
            assert_eq!(d, rs_code(&f, q as usize - k, &pts).unwrap(), "q = {q}, k = {k}");
        }
    }
}

fn valid_params(q: u32) -> Vec<RsParams> {
    let n = q as usize;
    let mut out = Vec::new();
    for k in (2..=n).step_by(2) {
        for s in 0..=n - k {
            if (n - s) % 2 == 0 {
                out.push(RsParams { q, k, s });
            }
        }
    }
    out
}

#[test]
fn thresholds_match_ground_truth() {
    let mut checked = 0;
    for q in [2, 3, 5, 7] {
        for p in valid_params(q) {
            let t = build_rs_scheme(&p, false).unwrap();
            let n = p.n();
            let th = rs_thresholds(n, p.k, p.s).unwrap();
            for a in ShareSet::all(n) {
                let l = leakage_dim(&t, a).unwrap();
                if a.len() <= th.forbidden_max {
                    assert_eq!(l, 0, "{p:?} {a}");
                }
                if a.len() >= th.qualified_min {
                    assert_eq!(l, p.k, "{p:?} {a}");
                }
                assert_eq!(is_advance_shareable(&t, a).unwrap(), a.len() <= th.advance_guaranteed, "{p:?} {a}");
            }
            let d = coset_distance(&t.field, &t.c_max, &t.c_s, EnumLimit { max_log2: 24 }).unwrap();
            assert_eq!(d, n / 2 + 1, "{p:?}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn ceil_threshold_fails_for_odd_length() {
    for q in [3, 5, 7] {
        for p in valid_params(q) {
            let t = build_rs_scheme(&p, false).unwrap();
            let n = p.n();
            let th = rs_thresholds(n, p.k, p.s).unwrap();
            assert_eq!(th.advance_max, th.advance_guaranteed + 1);
            for a in ShareSet::all(n).filter(|a| a.len() == th.advance_max) {
                assert!(!is_advance_shareable(&t, a).unwrap(), "{p:?} {a}");
            }
        }
    }
}

#[test]
fn even_length_thresholds_are_tight() {
    for q in [2, 4, 8] {
        for p in valid_params(q) {
            let th = rs_thresholds(p.n(), p.k, p.s).unwrap();
            assert_eq!(th.advance_max, th.advance_guaranteed);
        }
    }
}

#[test]
fn dual_display() {
    for p in valid_params(5).into_iter().chain(valid_params(7)) {
        let t = build_rs_scheme(&p, false).unwrap();
        let f = &t.field;
        let pts = default_points(f);
        let n = p.n();
        let big = rs_code(f, (n + p.s) / 2, &pts).unwrap();
        assert_eq!(symplectic_dual(f, &t.c_r).unwrap(), css_code(f, &big, &big).unwrap());
    }
}

#[test]
fn table_rows() {
    let t = table1(5, 2, 1).unwrap();
    assert_eq!(
        (t.quantum.thresholds.forbidden_max, t.quantum.thresholds.qualified_min, t.quantum.thresholds.advance_max),
        (3, 4, 3)
    );
    assert_eq!(
        (t.shamir.thresholds.forbidden_max, t.shamir.thresholds.qualified_min, t.shamir.thresholds.advance_max),
        (2, 4, 2)
    );
    assert!(t.advantage);
    assert!((t.quantum.secret_bits - 2.0 * 5f64.log2()).abs() < 1e-12);
    let t = table1(4, 2, 2).unwrap();
    assert!(!t.advantage);
    assert_eq!(t.shamir.thresholds, shamir_thresholds(4, 2, 2).unwrap());
    for q in [3u32, 4, 5, 7, 8, 9] {
        for p in valid_params(q) {
            let t = table1(q, p.k, p.s).unwrap();
            assert_eq!(t.advantage, p.s < p.k);
            let n = q as usize;
            assert_eq!(t.advantage_guaranteed, n / 2 > (n + p.s - p.k) / 2);
        }
    }
}
