use advshare_core::field::{Field, Fq};
use advshare_core::fixtures;
use advshare_core::linalg::{Layout, MatrixFq, Subspace};
use advshare_core::scheme::{
    advance_sufficient, build_scheme, classify, is_advance_shareable, leakage_dim, Access, Scheme,
};
use advshare_core::symplectic::{random_triple, CodeTriple};
use advshare_core::{EnumLimit, ShareSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(xs: &[u32]) -> Vec<Fq> {
    xs.iter().map(|&x| Fq(x)).collect()
}

#[test]
fn example_h_matrix_up_to_basis_order() {
    let t = fixtures::example3b();
    let s = build_scheme(&t, ShareSet::prefix(2)).unwrap();
    let shown = MatrixFq::from_u32_rows(
        8,
        &[&[0, 0, 0, 0, 2, 2, 2, 0], &[1, 1, 1, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 2, 0, 2], &[2, 1, 0, 1, 0, 0, 0, 0]],
    )
    .unwrap();
    // the displayed H is built from (v1|0), (0|v1), (v2|0), (0|v2)
    let basis = MatrixFq::from_u32_rows(
        8,
        &[&[1, 1, 1, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 1, 1, 0], &[2, 1, 0, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 2, 1, 0, 1]],
    )
    .unwrap();
    assert_eq!(advshare_core::symplectic::form_matrix(&t.field, &basis), shown);
    let ours = Subspace::span(&t.field, Layout::Plain, &s.h);
    assert_eq!(ours, Subspace::span(&t.field, Layout::Plain, &shown));
    assert_eq!(ours.dim(), 4);
    t.c_max.for_each_vector(&t.field, |c, _| assert!(s.h.mul_vec(&t.field, c).iter().all(|x| x.is_zero())));
}

#[test]
fn example_solver_all_81_cosets() {
    let t = fixtures::example3b();
    let f = &t.field;
    let s = build_scheme(&t, ShareSet::prefix(2)).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for a1 in 0..3 {
        for a2 in 0..3 {
            for m1 in 0..3 {
                for m2 in 0..3 {
                    let label = v(&[a1, a1, 0, m1, a2, a2, 0, m2]);
                    let z = s.advance_rep(&label).unwrap();
                    let want = v(&[0, 0, 2 * a1 % 3, m1, 0, 0, 2 * a2 % 3, m2]);
                    assert!(s.same_coset(&z, &want));
                    assert!(s.same_coset(&label, &want));
                    assert!(z[0].is_zero() && z[1].is_zero() && z[4].is_zero() && z[5].is_zero());
                    // each label lies in its own coset of C_max
                    seen.insert(t.c_max.reduce(f, &label));
                }
            }
        }
    }
    assert_eq!(seen.len(), 81);
}

#[test]
fn example_labels_from_secret_map() {
    let t = fixtures::example3b();
    let s = build_scheme(&t, ShareSet::prefix(2)).unwrap();
    let f = &t.field;
    // different randomness: same coset of C_R^⊥s; different secrets: not
    for m in [[0, 0], [1, 2], [2, 1]] {
        let m = v(&m);
        let base = s.encode_label(&m, &v(&[0, 0])).unwrap();
        for r in [[1, 0], [0, 1], [2, 2]] {
            let l = s.encode_label(&m, &v(&r)).unwrap();
            let d = advshare_core::linalg::sub_vec(f, &l.vector, &base.vector);
            assert!(t.c_r_dual.contains(f, &d));
            assert!(!t.c_max.contains(f, &d));
        }
        let other = s.encode_label(&v(&[1, 1]), &v(&[0, 0])).unwrap();
        let d = advshare_core::linalg::sub_vec(f, &other.vector, &base.vector);
        assert!(t.c_s_dual.contains(f, &d) && !t.c_r_dual.contains(f, &d));
    }
    assert_eq!(s.encode_label(&v(&[0, 0]), &v(&[0, 0])).unwrap().vector, v(&[0; 8]));
    assert!(s.encode_label(&v(&[0]), &v(&[0, 0])).is_err());
}

#[test]
fn example_classification() {
    let t = fixtures::example3b();
    for a in ShareSet::all(4) {
        let c = classify(&t, a).unwrap();
        if a.len() <= 2 {
            assert_eq!(c, Access::Forbidden, "{a}");
        }
    }
    assert_eq!(classify(&t, ShareSet::full(4)).unwrap(), Access::Qualified);
    assert_eq!(leakage_dim(&t, ShareSet::from_one_based(&[1, 2, 3])).unwrap(), 2);
    assert_eq!(leakage_dim(&t, ShareSet::from_one_based(&[2, 3, 4])).unwrap(), 0);
    assert!(advance_sufficient(&t, ShareSet::prefix(2), EnumLimit::default()).unwrap());
}

fn sum_condition(t: &CodeTriple, b: ShareSet) -> bool {
    let f = &t.field;
    let rest = b.complement(t.n);
    let part = t.c_s_dual.restrict_support(f, rest).unwrap();
    part.sum(f, &t.c_max).unwrap() == t.c_s_dual
}

fn random_ensemble(count: usize, seed: u64) -> Vec<(CodeTriple, ShareSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let q = [2u32, 3][rng.gen_range(0..2)];
        let f = Field::with_order(q).unwrap();
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=n);
        let s = rng.gen_range(0..=n - k);
        let t = random_triple(&f, n, k, s, &mut rng).unwrap();
        let b = ShareSet(rng.gen_range(0..1u64 << n));
        out.push((t, b));
    }
    out
}

#[test]
fn ensemble_advance_conditions_agree() {
    let mut shareable = 0;
    for (t, b) in random_ensemble(300, 31) {
        let f = &t.field;
        let sch: Scheme = build_scheme(&t, b).unwrap();
        let thm4 = is_advance_shareable(&t, b).unwrap();
        let per_coset = sch.all_cosets_solvable(EnumLimit::default()).unwrap();
        let sum_cond = sum_condition(&t, b);
        assert_eq!(per_coset, sum_cond, "per-coset solvability");
        assert_eq!(sum_cond, thm4, "sum condition vs dimension test");
        shareable += thm4 as usize;

        let rest = b.complement(t.n);
        for w in [&t.c_r_dual, &t.c_max] {
            let vb = t.c_s_dual.restrict_support(f, rest).unwrap();
            let wb = w.restrict_support(f, rest).unwrap();
            let lhs = vb.dim() - wb.dim();
            let rhs = vb.sum(f, &t.c_max).unwrap().dim() - wb.sum(f, &t.c_max).unwrap().dim();
            assert_eq!(lhs, rhs, "quotient by C_max");
        }

        let top =
            t.c_s_dual.restrict_support(f, rest).unwrap().dim() - t.c_max.restrict_support(f, rest).unwrap().dim();
        let proj = t.c_max.project(f, rest).unwrap().dim() - t.c_s.project(f, rest).unwrap().dim();
        assert_eq!(top, proj, "shortened vs punctured");

        if advance_sufficient(&t, b, EnumLimit::default()).unwrap() {
            assert!(thm4, "sufficient condition");
        }
        if thm4 {
            assert_eq!(classify(&t, b).unwrap(), Access::Forbidden, "advance set must be forbidden");
        }

        // the representative differs from the label by an element of C_max
        let mut rng = ChaCha8Rng::seed_from_u64(b.0);
        for _ in 0..4 {
            let m: Vec<Fq> = (0..t.k).map(|_| Fq(rng.gen_range(0..f.order()))).collect();
            let r: Vec<Fq> = (0..t.s).map(|_| Fq(rng.gen_range(0..f.order()))).collect();
            let l = sch.encode_label(&m, &r).unwrap();
            match sch.advance_rep(&l.vector) {
                Ok(z) => {
                    let diff = advshare_core::linalg::sub_vec(f, &l.vector, &z);
                    assert!(sch.h.mul_vec(f, &diff).iter().all(|x| x.is_zero()));
                    assert!(t.c_s_dual.contains(f, &z));
                    for i in b.indices() {
                        assert!(z[i].is_zero() && z[t.n + i].is_zero());
                    }
                }
                Err(e) => {
                    assert!(!thm4);
                    assert_eq!(e, advshare_core::Error::NoAdvanceRepresentative);
                }
            }
        }
    }
    assert!(shareable > 30, "ensemble should exercise both outcomes: {shareable}");
}

#[test]
fn scheme_invariants_on_ensemble() {
    for (t, b) in random_ensemble(100, 32) {
        let f = &t.field;
        let s = build_scheme(&t, b).unwrap();
        let g = Subspace::span(f, Layout::Symplectic, &s.secret_transversal);
        assert_eq!(g.sum(f, &t.c_r_dual).unwrap().dim(), t.c_r_dual.dim() + t.k);
        let h = Subspace::span(f, Layout::Symplectic, &s.randomness_transversal);
        assert_eq!(h.sum(f, &t.c_max).unwrap().dim(), t.c_max.dim() + t.s);
        assert_eq!(Subspace::span(f, Layout::Plain, &s.h).dim(), t.n);
        for c in t.c_max.basis().iter_rows() {
            for row in s.h.iter_rows() {
                // row (d|-c) pairs with u as <u, (c|d)>_s, so H u = 0 on C_max
                let dotp = row.iter().zip(c).fold(Fq::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert!(dotp.is_zero());
            }
        }
    }
}

#[test]
fn gottesman_paths() {
    let t = fixtures::gottesman();
    let b = ShareSet::prefix(1);
    assert!(is_advance_shareable(&t, b).unwrap());
    assert!(advance_sufficient(&t, b, EnumLimit::default()).unwrap());
    assert!(!advance_sufficient(&t, ShareSet::full(2), EnumLimit::default()).unwrap());
    assert!(!is_advance_shareable(&t, ShareSet::full(2)).unwrap());
    assert!(is_advance_shareable(&t, ShareSet::EMPTY).unwrap());
    let s = build_scheme(&t, ShareSet::EMPTY).unwrap();
    assert!(s.all_cosets_solvable(EnumLimit::default()).unwrap());
}
