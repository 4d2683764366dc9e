use advshare_core::field::{Field, Fq};
use advshare_core::symplectic::symplectic_ip;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    [2, 3, 4, 5, 7, 8, 9, 16, 25, 27].iter().map(|&q| Field::with_order(q).unwrap()).collect()
}

// Independent polynomial arithmetic on coefficient vectors.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate() {
            let idx = d - m + k;
            prod[idx] = (prod[idx] + p * p - c * mk % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for f in fields() {
        for a in f.elements() {
            for b in f.elements() {
                let want = poly_mul_mod(&f.coords(a), &f.coords(b), f.modulus(), f.p());
                assert_eq!(f.coords(f.mul(a, b)), want, "GF({}) {a}*{b}", f.order());
            }
        }
    }
}

#[test]
fn gf4_trace_of_generator() {
    let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
    let alpha = Fq(2);
    // α + α² with α² = α + 1 gives 1
    let a2 = poly_mul_mod(&[0, 1], &[0, 1], &[1, 1, 1], 2);
    assert_eq!(a2, vec![1, 1]);
    let sum: Vec<u32> = [0u32, 1].iter().zip(&a2).map(|(x, y)| (x + y) % 2).collect();
    assert_eq!(f.from_coords(&sum), Fq(1));
    assert_eq!(f.trace(alpha), Fq(1));
    assert_eq!(f.trace(Fq(0)), Fq(0));
}

#[test]
fn trace_is_additive_and_frobenius_invariant() {
    for f in fields() {
        for x in f.elements() {
            assert!(f.trace(x).0 < f.p());
            assert_eq!(f.trace(f.pow(x, f.p() as u64)), f.trace(x));
            for y in f.elements() {
                assert_eq!(f.trace(f.add(x, y)), f.add(f.trace(x), f.trace(y)));
            }
        }
    }
}

#[test]
fn gram_matrix_is_invertible_over_fp() {
    for f in fields() {
        let m = f.m() as usize;
        let (g, gi) = (f.gram(), f.gram_inverse());
        for i in 0..m {
            for j in 0..m {
                let s: u64 = (0..m).map(|l| g[i * m + l] as u64 * gi[l * m + j] as u64).sum();
                assert_eq!((s % f.p() as u64) as u32, (i == j) as u32);
            }
        }
    }
}

fn random_vec(f: &Field, len: usize, rng: &mut impl Rng) -> Vec<Fq> {
    (0..len).map(|_| Fq(rng.gen_range(0..f.order()))).collect()
}

#[test]
fn phi_round_trips_and_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [4, 8, 9] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..10_000 {
            let n = rng.gen_range(1..4);
            let v = random_vec(&f, 2 * n, &mut rng);
            let w = random_vec(&f, 2 * n, &mut rng);
            let e = f.phi_expand(&v).unwrap();
            assert_eq!(f.phi_compress(&e).unwrap(), v);
            assert_eq!(f.phi_expand(&f.phi_compress(&e).unwrap()).unwrap(), e);
            let sum: Vec<Fq> = v.iter().zip(&w).map(|(&a, &b)| f.add(a, b)).collect();
            let ew = f.phi_expand(&w).unwrap();
            let esum: Vec<u32> = e.iter().zip(&ew).map(|(a, b)| (a + b) % f.p()).collect();
            assert_eq!(f.phi_expand(&sum).unwrap(), esum);
        }
    }
}

fn fp_symplectic(u: &[u32], v: &[u32], p: u32) -> u32 {
    let h = u.len() / 2;
    let ad: u64 = (0..h).map(|i| u[i] as u64 * v[h + i] as u64).sum();
    let cb: u64 = (0..h).map(|i| v[i] as u64 * u[h + i] as u64).sum();
    ((ad % p as u64 + p as u64 - cb % p as u64) % p as u64) as u32
}

#[test]
fn phi_is_symplectic_exhaustive_gf4() {
    let f = Field::with_order(4).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let x = [Fq(a), Fq(b)];
                    let y = [Fq(c), Fq(d)];
                    let lhs = fp_symplectic(&f.phi_expand(&x).unwrap(), &f.phi_expand(&y).unwrap(), 2);
                    assert_eq!(Fq(lhs), f.trace(symplectic_ip(&f, &x, &y).unwrap()));
                }
            }
        }
    }
}

#[test]
fn phi_is_symplectic_random_gf8_gf9() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [8, 9] {
        let f = Field::with_order(q).unwrap();
        for _ in 0..10_000 {
            let n = rng.gen_range(1..4);
            let x = random_vec(&f, 2 * n, &mut rng);
            let y = random_vec(&f, 2 * n, &mut rng);
            let lhs = fp_symplectic(&f.phi_expand(&x).unwrap(), &f.phi_expand(&y).unwrap(), f.p());
            assert_eq!(Fq(lhs), f.trace(symplectic_ip(&f, &x, &y).unwrap()));
        }
    }
}

#[test]
fn gf4_expansion_of_alpha_one() {
    // a-block: coords(α) = (0, 1); b-block: coords(1) M = (1, 0) [[0, 1], [1, 1]] = (0, 1)
    let f = Field::with_order(4).unwrap();
    assert_eq!(f.phi_expand(&[Fq(2), Fq(1)]).unwrap(), vec![0, 1, 0, 1]);
    assert_eq!(f.phi_expand(&[Fq(0), Fq(0)]).unwrap(), vec![0; 4]);
    assert_eq!(f.phi_expand(&[Fq(0)]), Err(advshare_core::Error::OddLengthVector(1)));
}

proptest! {
    #[test]
    fn field_axioms(qi in 0usize..10, a in 0u32..1 << 16, b in 0u32..1 << 16, c in 0u32..1 << 16) {
        let f = &fields()[qi];
        let q = f.order();
        let (a, b, c) = (Fq(a % q), Fq(b % q), Fq(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
        }
    }
}
