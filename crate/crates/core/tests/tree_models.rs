use merw::chain::{harmonicity_residual, identity_residual, path_probability, MarkovKernel};
use merw::diagram::{Dimensions, PathIter};
use merw::rng::stream;
use merw::scalar::Exact;
use merw::tree::*;
use merw::Scalar;
use num_traits::{One, Zero};

fn trees_up_to(d: u8, n: usize) -> Vec<PrefixTree> {
    (1..=n).flat_map(|k| enumerate_dary_trees(d, k).unwrap()).collect()
}

#[test]
fn hook_dimension_matches_diagram_counts() {
    let plain = DaryTreeModel::<Exact>::new(2).unwrap();
    let weights =
        PreferentialWeights::binary(Exact::from_u64(1), Exact::ratio(5, 2)).unwrap();
    let weighted = DaryTreeModel::weighted(weights.clone());
    let dims_plain = Dimensions::new(&plain);
    let dims_weighted = Dimensions::new(&weighted);
    let all = trees_up_to(2, 6);
    for tau in all.iter().filter(|t| t.size() <= 3) {
        for sigma in all.iter().filter(|s| tau.is_subset(s)) {
            let a: Exact = increasing_tree_dimension(tau, sigma, None).unwrap();
            assert_eq!(a, dims_plain.to_vertex(tau, sigma).unwrap(), "{tau} -> {sigma}");
            let b = increasing_tree_dimension(tau, sigma, Some(&weights)).unwrap();
            assert_eq!(b, dims_weighted.to_vertex(tau, sigma).unwrap(), "{tau} -> {sigma}");
        }
    }
}

#[test]
fn chain_of_three_has_one_labeling() {
    let sigma = PrefixTree::parse("1,11").unwrap();
    let d: Exact = increasing_tree_dimension(&PrefixTree::root(), &sigma, None).unwrap();
    assert!(d.is_one());
}

#[test]
fn weighted_size_three_total_is_t3() {
    let (x, y) = (Exact::from_u64(2), Exact::from_u64(5));
    let w = PreferentialWeights::binary(x.clone(), y.clone()).unwrap();
    let total = enumerate_dary_trees(2, 3)
        .unwrap()
        .iter()
        .map(|s| increasing_tree_dimension(&PrefixTree::root(), s, Some(&w)).unwrap())
        .fold(Exact::zero(), |a, b| a + b);
    let t3 = &x * &x + Exact::from_u64(2) * &x * &y + &y * &y + &x + &y;
    assert_eq!(total, t3);
}

#[test]
fn uniform_labels_give_power_product() {
    let labels = LabelField::<Exact>::uniform(2, 6);
    let phi = label_harmonic(labels, None).unwrap();
    use merw::chain::HarmonicFn;
    for tau in trees_up_to(2, 5) {
        let expect = tau
            .nodes()
            .map(|v| Scalar::pow(&Exact::ratio(1, 2), tau.subtree_size(v) as u32 - 1))
            .fold(Exact::one(), |a, b| a * b);
        assert_eq!(phi.eval(&tau), expect);
    }
}

#[test]
fn random_labels_satisfy_comb2_both_ways() {
    let mut rng = stream(11, 0);
    for _ in 0..3 {
        let labels = LabelField::random_rational(2, 7, 6, &mut rng);
        for n in 1..=7 {
            assert!(comb2_residual(&labels, n).unwrap().is_zero());
            assert!(comb2_residual_via_diagram(&labels, n, 1_000_000).unwrap().is_zero());
        }
    }
}

#[test]
fn weighted_label_harmonic_is_harmonic() {
    let mut rng = stream(5, 1);
    let labels = LabelField::random_rational(2, 7, 5, &mut rng);
    let w = PreferentialWeights::binary(Exact::from_u64(1), Exact::from_u64(3)).unwrap();
    let model = DaryTreeModel::weighted(w.clone());
    let phi = label_harmonic(labels, Some(w)).unwrap();
    for (tau, r) in harmonicity_residual(&model, &phi, &trees_up_to(2, 5)) {
        assert!(r.is_zero(), "{tau}");
    }
    for n in 0..6 {
        assert!(identity_residual(&model, &phi, n, 1_000_000).unwrap().is_zero());
    }
}

#[test]
fn han_identities() {
    for n in 1..=8 {
        assert!(comb3_residual(2, n).unwrap().is_zero());
        assert!(comb3_residual(3, n).unwrap().is_zero());
    }
    for n in 1..=6 {
        let w = [Exact::from_u64(1), Exact::ratio(7, 3)];
        assert!(comb4_residual(&w, n).unwrap().is_zero());
    }
    let unit = [Exact::one(), Exact::one()];
    assert!(comb4_residual(&unit, 3).unwrap().is_zero());
}

#[test]
fn search_tree_paths_are_exchangeable() {
    let k = bst_kernel::<Exact>(3, None).unwrap();
    for n in 1..=4 {
        let expect = (1..=n as u64).fold(Exact::one(), |a, j| a / Exact::from_u64(1 + 2 * j));
        for (path, _) in PathIter::new(k.model(), PrefixTree::root(), n) {
            assert_eq!(path_probability(&k, &path).unwrap(), expect);
        }
    }
    // d = 3, n = 2 gives 1/15
    let two = (1..=2u64).fold(Exact::one(), |a, j| a / Exact::from_u64(1 + 2 * j));
    assert_eq!(two, Exact::ratio(1, 15));
}

#[test]
fn weighted_search_tree_kernel_follows_weights() {
    let w = PreferentialWeights::binary(Exact::ratio(1, 2), Exact::ratio(3, 2)).unwrap();
    let k = bst_kernel(2, Some(w)).unwrap();
    for tau in trees_up_to(2, 5) {
        let row = k.checked_transitions(&tau).unwrap();
        for (sigma, p) in row {
            let (node, j) = k
                .model()
                .slots(&tau)
                .into_iter()
                .find(|(v, j)| tau.with(PrefixTree::child(v, *j)) == sigma)
                .unwrap();
            assert_eq!(p, bst_slot_probability(k.model(), &tau, &node, j));
        }
    }
    let bad = PreferentialWeights::binary(Exact::one(), Exact::from_u64(3)).unwrap();
    assert!(bst_kernel(2, Some(bad)).is_err());
}

#[test]
fn idla_closed_form_and_reduction() {
    let a = vec![Exact::from_u64(1), Exact::from_u64(2)];
    let k = idla_annealed_kernel(a.clone()).unwrap();
    for tau in trees_up_to(2, 5) {
        for (node, j) in k.model().slots(&tau) {
            let sigma = tau.with(PrefixTree::child(&node, j));
            let row = k.transitions(&tau).unwrap();
            let p = row.into_iter().find(|(s, _)| *s == sigma).unwrap().1;
            assert_eq!(p, idla_transition(&a, &tau, &node, j));
            let ratio = (idla_log_phi(&[1.0, 2.0], &sigma) - idla_log_phi(&[1.0, 2.0], &tau)).exp();
            assert!((ratio - p.to_f64()).abs() < 1e-12);
        }
    }
    // a_j = 1/(d-1) reproduces the search tree process
    let third = vec![Exact::ratio(1, 2); 3];
    let idla = idla_annealed_kernel(third).unwrap();
    let bst = bst_kernel::<Exact>(3, None).unwrap();
    for tau in trees_up_to(3, 4) {
        assert_eq!(idla.transitions(&tau).unwrap(), bst.transitions(&tau).unwrap());
    }
}

#[test]
fn weighted_bst_is_exactly_harmonic() {
    for (x, y) in [(1, 3), (2, 5), (7, 2)] {
        let (x, y) = (Exact::from_u64(x), Exact::from_u64(y));
        let k = weighted_bst_merw(x.clone(), y.clone()).unwrap();
        let trees = trees_up_to(2, 6);
        for (tau, r) in harmonicity_residual(k.model(), k.harmonic(), &trees) {
            assert!(r.is_zero(), "{tau}");
        }
        for tau in &trees {
            for (node, j) in k.model().slots(tau) {
                let sigma = tau.with(PrefixTree::child(&node, j));
                let p = k
                    .transitions(tau)
                    .unwrap()
                    .into_iter()
                    .find(|(s, _)| *s == sigma)
                    .unwrap()
                    .1;
                assert_eq!(p, weighted_bst_transition(&x, &y, tau, &node, j));
            }
        }
    }
}

#[test]
fn series_identities() {
    let t = SeriesT::new(40).unwrap();
    assert!(t.ode_holds());
    let two = Exact::from_u64(2);
    for n in 1..=20u64 {
        assert_eq!(
            t.eval_exact(n as usize, &two),
            Exact::from_big(&merw::scalar::factorial(n))
        );
    }
    // d(root, X_{n-1}) on the weighted model equals T_n
    let (x, y) = (Exact::from_u64(1), Exact::from_u64(2));
    let model = DaryTreeModel::weighted(PreferentialWeights::binary(x.clone(), y.clone()).unwrap());
    let dims = Dimensions::new(&model);
    for n in 1..=7 {
        let dp = dims.to_level(&PrefixTree::root(), n - 1).unwrap();
        assert_eq!(dp, t.eval_exact(n, &(&x + &y)));
    }
}

#[test]
fn asymptotic_ratio_converges() {
    for s in [1.0, 3.0] {
        let r = asymptotic_ratios(s, 200).unwrap();
        assert!((r[199] - 1.0).abs() < 0.05, "s={s}: {}", r[199]);
    }
    let r = asymptotic_ratios(2.0, 50).unwrap();
    assert!(r.iter().all(|v| (v - 1.0).abs() < 1e-12));
}

#[test]
fn subtree_generating_function() {
    let one = Exact::one();
    for (tau, x, y, n) in [
        ("", one.clone(), one.clone(), 5),
        ("1", one.clone(), one.clone(), 4),
        ("1,2", one.clone(), Exact::from_u64(2), 6),
        ("1,12", Exact::ratio(1, 3), Exact::from_u64(2), 6),
    ] {
        let tau = PrefixTree::parse(tau).unwrap();
        let (dp, series) = subtree_dimension_generating_check(&tau, &x, &y, n).unwrap();
        assert_eq!(dp, series, "{tau}");
    }
}
