mod common;

use std::sync::OnceLock;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use positroid::affine::format_window;
use positroid::cobordism;
use positroid::poset::{self, Chain};
use positroid::{BoundedAffinePermutation, RationalMatrix, Side};

fn pool() -> &'static Vec<BoundedAffinePermutation> {
    static POOL: OnceLock<Vec<BoundedAffinePermutation>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut all = Vec::new();
        for (k, n) in [(2, 4), (2, 5), (3, 6), (1, 3), (3, 5)] {
            all.extend(poset::enumerate(k, n).unwrap());
        }
        all
    })
}

fn bound_2_5() -> &'static Vec<BoundedAffinePermutation> {
    static ALL: OnceLock<Vec<BoundedAffinePermutation>> = OnceLock::new();
    ALL.get_or_init(|| poset::enumerate(2, 5).unwrap())
}

fn element() -> impl Strategy<Value = BoundedAffinePermutation> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn triple() -> impl Strategy<Value = [BoundedAffinePermutation; 3]> {
    let n = bound_2_5().len();
    (0..n, 0..n, 0..n).prop_map(|(a, b, c)| [a, b, c].map(|i| bound_2_5()[i].clone()))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=5).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn matrix(k: usize, n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec(rational(), n), k)
        .prop_map(|rows| RationalMatrix::new(rows).unwrap())
        .prop_filter("full rank", move |m| m.rank() == k)
}

fn det2(t: &RationalMatrix) -> BigRational {
    t.entry(0, 0) * t.entry(1, 1) - t.entry(0, 1) * t.entry(1, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn length_matches_definition_and_is_bounded(f in element()) {
        let w = f.window();
        prop_assert_eq!(f.length(), brute_length(w));
        prop_assert!(f.length() <= f.k() * (f.n() - f.k()));
        prop_assert_eq!(f.length() == 0, w.iter().enumerate().all(|(i, &v)| v == i as i64 + 1 + f.k() as i64));
    }

    #[test]
    fn length_is_shift_invariant(f in element()) {
        let g = f.rotate();
        prop_assert_eq!(g.length(), f.length());
        prop_assert_eq!((g.k(), g.n()), (f.k(), f.n()));
        // Rotation by n steps is the identity.
        let mut h = f.clone();
        for _ in 0..f.n() {
            h = h.rotate();
        }
        prop_assert_eq!(h, f);
    }

    #[test]
    fn transpositions_preserve_parameters(f in element(), t in 1usize..8, left in any::<bool>()) {
        let t = (t - 1) % f.n() + 1;
        let side = if left { Side::Left } else { Side::Right };
        let raw = f.apply_transposition(t, side).unwrap();
        if let Ok(g) = BoundedAffinePermutation::new(raw.clone()) {
            prop_assert_eq!((g.k(), g.n()), (f.k(), f.n()));
            // An involution: applying it again returns f.
            prop_assert_eq!(g.apply_transposition(t, side).unwrap(), f.window().to_vec());
        }
    }

    #[test]
    fn cycles_partition_positions(f in element()) {
        let c = f.cycles();
        let mut seen: Vec<usize> = c.cycles.iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, (1..=f.n()).collect::<Vec<_>>());
        let nonfixed: usize = c.cycles.iter().filter(|cy| !(cy.len() == 1 && f.is_fixed(cy[0]))).map(Vec::len).sum();
        prop_assert_eq!(c.fixed_points.len() + nonfixed, f.n());
        prop_assert_eq!(c.nonfixed_cycle_count, brute_components(f.window()));
    }

    #[test]
    fn window_text_round_trips(f in element(), spaced in any::<bool>()) {
        let text = if spaced {
            format!("[ {} ]", f.window().iter().map(i64::to_string).collect::<Vec<_>>().join(" , "))
        } else {
            format_window(f.window())
        };
        let back: BoundedAffinePermutation = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), format_window(f.window()));
    }

    #[test]
    fn order_is_reflexive_antisymmetric_transitive([a, b, c] in triple()) {
        prop_assert!(poset::is_leq(&a, &a).unwrap());
        let ab = poset::is_leq(&a, &b).unwrap();
        let ba = poset::is_leq(&b, &a).unwrap();
        if ab && ba {
            prop_assert_eq!(&a, &b);
        }
        if ab && poset::is_leq(&b, &c).unwrap() {
            prop_assert!(poset::is_leq(&a, &c).unwrap());
        }
        if ab {
            prop_assert!(a.length() <= b.length());
        }
    }

    #[test]
    fn plucker_scales_with_row_operations(m in matrix(2, 4), t in matrix(2, 2)) {
        let moved = m.left_multiply(&t);
        let d = det2(&t);
        for cols in positroid::grassmann::subsets(4, 2) {
            prop_assert_eq!(moved.plucker(&cols).unwrap(), &d * m.plucker(&cols).unwrap());
        }
        prop_assert_eq!(moved.bap_of_matrix().unwrap(), m.bap_of_matrix().unwrap());
    }

    #[test]
    fn plucker_scales_with_columns(m in matrix(2, 5), col in 1usize..=5, c in rational()) {
        prop_assume!(!c.is_zero());
        let scaled = m.scale_column(col, &c);
        for cols in positroid::grassmann::subsets(5, 2) {
            let factor = if cols.contains(&col) { c.clone() } else { BigRational::from_integer(1.into()) };
            prop_assert_eq!(scaled.plucker(&cols).unwrap(), factor * m.plucker(&cols).unwrap());
        }
        prop_assert_eq!(scaled.bap_of_matrix().unwrap(), m.bap_of_matrix().unwrap());
    }

    #[test]
    fn matrix_lands_in_its_own_stratum(m in matrix(3, 6)) {
        let f = m.bap_of_matrix().unwrap();
        prop_assert_eq!((f.k(), f.n()), (3, 6));
        prop_assert!(m.stratum_membership(&f).unwrap());
    }
}

/// Walks down from `g` through random covers that stay above `f`.
fn random_descent(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation, rng: &mut StdRng) -> Chain {
    let mut path = vec![g.clone()];
    while path.last().unwrap() != f {
        let below: Vec<_> = poset::covers_down(path.last().unwrap())
            .into_iter()
            .filter(|h| poset::is_leq(f, h).unwrap())
            .collect();
        path.push(below[rng.gen_range(0..below.len())].clone());
    }
    path.reverse();
    Chain::new(path).unwrap()
}

#[test]
fn chi_is_path_independent() {
    let all = poset::enumerate(3, 6).unwrap();
    let mut rng = StdRng::seed_from_u64(100);
    let mut pairs = 0;
    while pairs < 100 {
        let f = &all[rng.gen_range(0..all.len())];
        let mut g = f.clone();
        for _ in 0..rng.gen_range(1..=5) {
            let up = poset::covers_up(&g);
            if up.is_empty() {
                break;
            }
            g = up[rng.gen_range(0..up.len())].clone();
        }
        if &g == f {
            continue;
        }
        let first = poset::find_chain(f, &g).unwrap().unwrap();
        let second = random_descent(f, &g, &mut rng);
        let a = cobordism::compile_path(&first).unwrap();
        let b = cobordism::compile_path(&second).unwrap();
        assert_eq!(a.chi, b.chi, "{f} .. {g}");
        assert_eq!(a.epsilon, b.epsilon);
        assert_eq!(a.boundary_components, b.boundary_components);
        pairs += 1;
    }
}

#[test]
fn chains_have_one_length_step_per_cover() {
    let f = bap(&[3, 4, 5, 6]);
    for g in poset::enumerate(2, 4).unwrap() {
        let chain = poset::find_chain(&f, &g).unwrap().unwrap();
        assert_eq!(chain.len(), g.length());
        for pair in chain.elements().windows(2) {
            assert_eq!(pair[1].length(), pair[0].length() + 1);
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (k, n) in [(1, 1), (1, 2), (2, 4), (2, 5), (3, 6), (4, 6)] {
        let got: Vec<Vec<i64>> = poset::enumerate(k, n).unwrap().iter().map(|f| f.window().to_vec()).collect();
        assert_eq!(got, brute_enumerate(k, n), "Bound({k},{n})");
    }
}
