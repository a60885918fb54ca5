use approx::assert_relative_eq;
use hyperspectra::combinatorics::{multiset_count, permutations, DenseMultiindices};
use hyperspectra::hypermatrix::HypermatrixJson;
use hyperspectra::hypermatrix::{apply_vector_power, contract, frobenius, tensor_power_vector};
use hyperspectra::{Complex64, DenseHypermatrix, Hypergraph, Hypermatrix};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 1usize..=4)
}

fn entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len)
}

fn filled(n: usize, k: usize, vals: Vec<(f64, f64)>) -> Hypermatrix {
    let mut it = vals.into_iter();
    Hypermatrix::from_fn(n, k, |_| {
        let (re, im) = it.next().unwrap();
        Complex64::new(re, im)
    })
    .unwrap()
}

fn symmetric() -> impl Strategy<Value = Hypermatrix> {
    shape().prop_flat_map(|(n, k)| entries(multiset_count(n, k) as usize).prop_map(move |v| filled(n, k, v)))
}

fn same_shape_pair() -> impl Strategy<Value = (Hypermatrix, Hypermatrix)> {
    shape().prop_flat_map(|(n, k)| {
        let len = multiset_count(n, k) as usize;
        (entries(len), entries(len)).prop_map(move |(x, y)| (filled(n, k, x), filled(n, k, y)))
    })
}

fn naive_vector_power(a: &Hypermatrix, v: &[Complex64]) -> Vec<Complex64> {
    let (n, k) = (a.dim(), a.order());
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for idx in DenseMultiindices::new(n, k) {
        let tail = idx[1..].iter().fold(Complex64::new(1.0, 0.0), |acc, &j| acc * v[j]);
        y[idx[0]] += a.get(&idx) * tail;
    }
    y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permuting_a_multiindex_never_changes_the_entry(a in symmetric()) {
        let k = a.order();
        for (idx, value) in a.iter() {
            for sigma in permutations(k) {
                let permuted: Vec<usize> = sigma.iter().map(|&s| idx[s]).collect();
                prop_assert_eq!(a.get(&permuted), *value);
            }
        }
    }

    #[test]
    fn dense_round_trip_is_symmetric(a in symmetric()) {
        let g = a.to_general().unwrap();
        prop_assert!(g.is_symmetric());
        prop_assert_eq!(g.len(), a.dim().pow(a.order() as u32));
        for (idx, value) in g.iter() {
            prop_assert_eq!(a.get(&idx), *value);
        }
    }

    #[test]
    fn vector_power_matches_nested_loops(a in symmetric(), seed in 0u64..1000) {
        prop_assume!(a.order() >= 2);
        let n = a.dim();
        let v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(((seed + i as u64) % 7) as f64 * 0.3 - 1.0, (i as f64 * 0.7).sin()))
            .collect();
        let fast = apply_vector_power(&a, &v, a.order() - 1).unwrap();
        let slow = naive_vector_power(&a, &v);
        for (x, y) in fast.values().iter().zip(&slow) {
            prop_assert!((x - y).norm() <= 1e-12 * y.norm().max(1.0));
        }
    }

    #[test]
    fn full_contraction_is_frobenius((a, b) in same_shape_pair()) {
        let slots: Vec<usize> = (0..a.order()).collect();
        let c = contract(&a, &slots, &b).unwrap();
        let f = frobenius(&a, &b).unwrap();
        prop_assert!((c.data()[0] - f).norm() <= 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn json_round_trip(a in symmetric()) {
        let text = HypermatrixJson::from_hypermatrix(&a).to_json_string();
        let back = HypermatrixJson::from_json_str(&text).unwrap().to_hypermatrix::<f64>().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn rank_one_contraction_is_a_power_of_the_inner_product() {
    let u = [
        Complex64::new(0.3, -0.2),
        Complex64::new(-1.1, 0.4),
        Complex64::new(0.5, 0.9),
    ];
    let v = [
        Complex64::new(1.0, 0.5),
        Complex64::new(0.2, 0.0),
        Complex64::new(-0.7, 0.1),
    ];
    let k = 4;
    let tu = tensor_power_vector(&u, k).unwrap();
    let tv = tensor_power_vector(&v, k).unwrap();
    let inner: Complex64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let f = frobenius(&tu, &tv).unwrap();
    assert_relative_eq!(f.re, inner.powu(k as u32).re, max_relative = 1e-12);
    assert_relative_eq!(f.im, inner.powu(k as u32).im, max_relative = 1e-12);
}

#[test]
fn general_and_symmetric_contractions_agree() {
    let a = Hypermatrix::from_fn(3, 3, |i| {
        Complex64::new((i[0] + 2 * i[1] * i[2]) as f64, i[0] as f64 * 0.5)
    })
    .unwrap();
    let g: DenseHypermatrix = a.to_general().unwrap();
    let v = tensor_power_vector(
        &[
            Complex64::new(0.2, 0.1),
            Complex64::new(-0.4, 0.0),
            Complex64::new(1.0, -1.0),
        ],
        2,
    )
    .unwrap();
    for slots in [[1, 2], [0, 2], [0, 1]] {
        let from_sym = contract(&a, &slots, &v).unwrap();
        let from_dense = contract(&g, &slots, &v).unwrap();
        assert!(from_sym.approx_eq(&from_dense, 1e-12));
    }
}

#[test]
fn hypergraph_text_round_trip() {
    let h = Hypergraph::random(9, 3, 0.4, 12).unwrap();
    let back = Hypergraph::from_text(&h.to_text()).unwrap();
    assert_eq!(back, h);
}
