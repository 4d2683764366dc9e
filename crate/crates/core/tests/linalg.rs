use advshare_core::field::{Field, Fq};
use advshare_core::linalg::{rref, solve, Layout, MatrixFq, Subspace};
use advshare_core::symplectic::{
    coset_distance, swt, symplectic_dual, symplectic_ip, validate_triple, witt_complete, witt_complete_with,
};
use advshare_core::{EnumLimit, ShareSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> MatrixFq {
    let mut m = MatrixFq::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            // sparse-ish entries so that rank deficiency is common
            if rng.gen_bool(0.6) {
                m.set(r, c, Fq(rng.gen_range(0..f.order())));
            }
        }
    }
    m
}

fn random_subspace(f: &Field, layout: Layout, ambient: usize, rng: &mut impl Rng) -> Subspace {
    let rows = rng.gen_range(0..=ambient);
    Subspace::span(f, layout, &random_matrix(f, rows, ambient, rng))
}

#[test]
fn rref_hand_example() {
    let f = Field::with_order(3).unwrap();
    let m = MatrixFq::from_u32_rows(4, &[&[1, 1, 1, 0], &[2, 1, 0, 1]]).unwrap();
    let (r, rank) = rref(&f, &m);
    assert_eq!(rank, 2);
    assert_eq!(r, MatrixFq::from_u32_rows(4, &[&[1, 0, 2, 1], &[0, 1, 2, 2]]).unwrap());
    let v = Subspace::span(&f, Layout::Plain, &m);
    let w = Subspace::from_vectors(&f, Layout::Plain, 4, &[[Fq(1), Fq(1), Fq(1), Fq(0)]]).unwrap();
    assert_eq!(v.quotient_dim(&f, &w).unwrap(), 1);
}

#[test]
fn random_rref_solve_and_subspace_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for q in [2, 3, 4, 5] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..300 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..7);
            let a = random_matrix(&f, rows, cols, &mut rng);
            let (r, rank) = rref(&f, &a);
            assert_eq!(rref(&f, &r), (r.clone(), rank));

            // A x = b for b in the column space
            let x: Vec<Fq> = (0..cols).map(|_| Fq(rng.gen_range(0..q))).collect();
            let b = a.mul_vec(&f, &x);
            let sol = solve(&f, &a, &b).unwrap();
            assert_eq!(a.mul_vec(&f, &sol.particular), b);
            assert_eq!(sol.kernel.rows(), cols - rank);
            for k in sol.kernel.iter_rows() {
                assert!(a.mul_vec(&f, k).iter().all(|v| v.is_zero()));
            }

            let v = random_subspace(&f, Layout::Plain, cols, &mut rng);
            let w = random_subspace(&f, Layout::Plain, cols, &mut rng);
            let s = v.sum(&f, &w).unwrap();
            let i = v.intersect(&f, &w).unwrap();
            assert_eq!(s.dim() + i.dim(), v.dim() + w.dim());
            assert!(i.is_subspace_of(&f, &v) && i.is_subspace_of(&f, &w));
            assert!(v.is_subspace_of(&f, &s) && w.is_subspace_of(&f, &s));
        }
    }
}

#[test]
fn support_rank_nullity() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for q in [2, 3] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(1..5);
            let v = random_subspace(&f, Layout::Symplectic, 2 * n, &mut rng);
            for a in ShareSet::all(n) {
                let inside = v.restrict_support(&f, a).unwrap();
                let proj = v.project(&f, a.complement(n)).unwrap();
                assert_eq!(v.dim() - inside.dim(), proj.dim());
                assert_eq!(proj.ambient_dim(), 2 * (n - a.len()));
            }
            assert_eq!(v.restrict_support(&f, ShareSet::full(n)).unwrap(), v);
            assert_eq!(v.restrict_support(&f, ShareSet::EMPTY).unwrap().dim(), 0);
            assert!(matches!(
                v.restrict_support(&f, ShareSet::from_one_based(&[n + 1])),
                Err(advshare_core::Error::IndexOutOfRange { .. })
            ));
        }
    }
}

#[test]
fn dual_involution_and_alternation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for q in [2, 3, 4] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..1000 {
            let n = rng.gen_range(1..4);
            let c = random_subspace(&f, Layout::Symplectic, 2 * n, &mut rng);
            let d = symplectic_dual(&f, &c).unwrap();
            assert_eq!(c.dim() + d.dim(), 2 * n);
            assert_eq!(symplectic_dual(&f, &d).unwrap(), c);
            for u in c.basis().iter_rows() {
                assert!(symplectic_ip(&f, u, u).unwrap().is_zero());
                for w in d.basis().iter_rows() {
                    assert!(symplectic_ip(&f, u, w).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn alternating_exhaustive_small() {
    for q in [2, 3, 4] {
        let f = Field::with_order(q).unwrap();
        Subspace::full(Layout::Symplectic, 4).for_each_vector(&f, |v, _| {
            assert!(symplectic_ip(&f, v, v).unwrap().is_zero());
        });
    }
}

#[test]
fn witt_completion_always_validates() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for q in [2, 3, 5] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(1..5);
            // random self-orthogonal seed: greedy inside its own dual
            let mut c = Subspace::zero(Layout::Symplectic, 2 * n);
            let target = rng.gen_range(0..=n);
            while c.dim() < target {
                let d = symplectic_dual(&f, &c).unwrap();
                let v = random_matrix(&f, 1, d.dim(), &mut rng);
                let w = d.basis().left_mul(&f, v.row(0));
                if !c.contains(&f, &w) {
                    let mut g = c.basis().clone();
                    g.push_row(&w).unwrap();
                    c = Subspace::span(&f, Layout::Symplectic, &g);
                }
            }
            for css in [false, true] {
                let cmax = witt_complete(&f, &c, css).unwrap();
                assert!(c.is_subspace_of(&f, &cmax));
                let t = validate_triple(&f, Subspace::zero(Layout::Symplectic, 2 * n), cmax.clone(), cmax, n, n, 0);
                assert!(t.is_ok());
            }
        }
    }
}

#[test]
fn witt_on_css_input_gives_css() {
    let f = Field::with_order(3).unwrap();
    let t = advshare_core::fixtures::example3b();
    let hints: Vec<Vec<Fq>> = vec![
        [2, 1, 0, 1, 0, 0, 0, 0].iter().map(|&x| Fq(x)).collect(),
        [0, 0, 0, 0, 2, 1, 0, 1].iter().map(|&x| Fq(x)).collect(),
    ];
    assert_eq!(witt_complete_with(&f, &t.c_r, true, &hints).unwrap(), t.c_max);
    let c = witt_complete(&f, &t.c_r, true).unwrap();
    assert!(advshare_core::symplectic::css_parts(&f, &c).is_some());
}

#[test]
fn coset_distance_is_min_weight_over_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let f = Field::with_order(2).unwrap();
    for _ in 0..100 {
        let c = random_subspace(&f, Layout::Symplectic, 6, &mut rng);
        if c.dim() == 0 {
            continue;
        }
        let zero = Subspace::zero(Layout::Symplectic, 6);
        let d = coset_distance(&f, &c, &zero, EnumLimit::default()).unwrap();
        let mut best = usize::MAX;
        c.for_each_vector(&f, |v, _| {
            if v.iter().any(|x| !x.is_zero()) {
                best = best.min(swt(v));
            }
        });
        assert_eq!(d, best);
        assert!(d >= 1);
    }
}

proptest! {
    #[test]
    fn swt_counts_nonzero_pairs(v in proptest::collection::vec(0u32..3, 8)) {
        let w = (0..4).filter(|&i| v[i] != 0 || v[4 + i] != 0).count();
        let fv: Vec<Fq> = v.iter().map(|&x| Fq(x)).collect();
        prop_assert_eq!(swt(&fv), w);
    }
}
