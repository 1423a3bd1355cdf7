use std::sync::Arc;

use proptest::prelude::*;
use schurcodes::attack::distinguish;
use schurcodes::code::random_full_rank;
use schurcodes::io;
use schurcodes::rng::{random_vector, rng_from_seed};
use schurcodes::{ClosureMethod, Field, GrsSpec, LinearCode, Matrix};

const ORDERS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn field(i: usize) -> Arc<Field> {
    Field::of_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn random_matrix(f: &Arc<Field>, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    let data = (0..rows).flat_map(|_| random_vector(f, cols, &mut rng)).collect();
    Matrix::from_vec(f, rows, cols, data).unwrap()
}

fn random_code(f: &Arc<Field>, n: usize, k: usize, seed: u64) -> LinearCode {
    LinearCode::span_of(&random_matrix(f, k, n, seed))
}

#[test]
fn field_axioms_exhaustive() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = Field::of_order(q).unwrap();
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert!(f.inv(0).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(fi in 0usize..8, rows in 1usize..8, cols in 1usize..10, seed: u64) {
        let f = field(fi);
        let m = random_matrix(&f, rows, cols, seed);
        let r = m.rref();
        prop_assert!(r.matrix.is_rref());
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
    }

    #[test]
    fn rank_plus_nullity(fi in 0usize..8, rows in 1usize..8, cols in 1usize..10, seed: u64) {
        let f = field(fi);
        let m = random_matrix(&f, rows, cols, seed);
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.rows(), cols);
        for v in ker.row_iter() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn double_annihilator(fi in 0usize..8, n in 1usize..12, k in 0usize..12, seed: u64) {
        let f = field(fi);
        let c = random_code(&f, n, k.min(n), seed);
        let d = c.dual();
        prop_assert_eq!(c.dim() + d.dim(), n);
        prop_assert_eq!(d.dual(), c);
    }

    #[test]
    fn schur_is_monotone(fi in 0usize..8, n in 2usize..12, seed: u64) {
        let f = field(fi);
        let d = random_code(&f, n, n / 2 + 1, seed);
        let c = d.random_subcode(1.max(d.dim() / 2), seed ^ 1).unwrap();
        let e = random_code(&f, n, 2, seed ^ 2);
        prop_assert!(d.schur(&e).unwrap().contains(&c.schur(&e).unwrap()).unwrap());
        prop_assert!(d.square().contains(&c.square()).unwrap());
    }

    #[test]
    fn closure_contains_code_and_routes_agree(fi in 0usize..8, n in 2usize..10, k in 1usize..6, seed: u64) {
        let f = field(fi);
        let c = random_code(&f, n, k.min(n), seed);
        let a = c.closure_with(2, ClosureMethod::DualFormula).unwrap();
        let b = c.closure_with(2, ClosureMethod::Definitional).unwrap();
        prop_assert!(a.contains(&c).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn shorten_puncture_duality(fi in 0usize..8, n in 3usize..12, k in 1usize..8, seed: u64, mask: u16) {
        let f = field(fi);
        let c = random_code(&f, n, k.min(n), seed);
        let positions: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).take(n - 1).collect();
        let s = c.shorten(&positions).unwrap();
        prop_assert_eq!(s.dual(), c.dual().puncture(&positions).unwrap());
        prop_assert!(c.contains(&s.extend_by_zeros(&positions, n).unwrap()).unwrap());
    }

    #[test]
    fn grs_square_law(qi in 0usize..3, seed: u64, kf in 0.0f64..1.0) {
        let q = [5u32, 11, 16][qi];
        let f = Field::of_order(q).unwrap();
        let n = (q - 1) as usize;
        let k = 1 + ((n as f64 / 2.0) * kf) as usize;
        let s = GrsSpec::random(&f, n, k, seed).unwrap();
        prop_assert_eq!(s.code().square(), s.square_spec().code());
    }

    #[test]
    fn text_formats_roundtrip(fi in 0usize..8, rows in 1usize..6, cols in 1usize..9, seed: u64) {
        let f = field(fi);
        let m = random_matrix(&f, rows, cols, seed);
        prop_assert_eq!(io::parse_field_matrix(&io::write_field_matrix(&m)).unwrap(), m.clone());
        let c = LinearCode::span_of(&m);
        let text = io::write_code(&c);
        let back = io::parse_code(&text).unwrap();
        prop_assert_eq!(io::write_code(&back), text);
        prop_assert_eq!(back, c);
    }
}

#[test]
fn distinguisher_is_monotone_along_chains() {
    let f = Field::of_order(49).unwrap();
    let g = random_full_rank(&f, 12, 40, 5).unwrap();
    let mut last = 0;
    for l in 1..=12 {
        let c = LinearCode::span_of(&g.select_rows(&(0..l).collect::<Vec<_>>()));
        let r = distinguish(&c);
        assert!(r.sq_dim >= last);
        last = r.sq_dim;
    }
}
