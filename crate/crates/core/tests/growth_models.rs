use merw::chain::{
    conditional_uniformity_check, harmonicity_residual, identity_residual, max_relative_residual,
    MarkovKernel,
};
use merw::diagram::{forward_level, DiagramModel};
use merw::growth::*;
use merw::scalar::Exact;
use merw::Scalar;
use num_bigint::BigUint;
use num_traits::{One, Zero};

const BUDGET: usize = 5_000_000;

fn level_states<M: DiagramModel>(m: &M, max: usize) -> Vec<M::Vertex> {
    (0..=max)
        .flat_map(|n| forward_level(m, &m.root(), n, None, BUDGET).unwrap().into_keys())
        .collect()
}

/// Set partitions of `{1..n}` by restricted growth strings.
fn set_partitions_by_blocks(n: usize) -> Vec<u64> {
    fn rec(i: usize, n: usize, blocks: usize, out: &mut Vec<u64>) {
        if i == n {
            out[blocks] += 1;
            return;
        }
        for b in 0..=blocks {
            rec(i + 1, n, blocks.max(b + 1), out);
        }
    }
    let mut out = vec![0; n + 1];
    rec(0, n, 0, &mut out);
    out
}

#[test]
fn bell_and_stirling_match_brute_force() {
    for n in 1..=10 {
        let brute = set_partitions_by_blocks(n);
        let bell: u64 = brute.iter().sum();
        assert_eq!(bell_from_diagram(n, BUDGET).unwrap(), BigUint::from(bell));
        let s = stirling_from_diagram(n, BUDGET).unwrap();
        for k in 1..=n {
            assert_eq!(s[k - 1], BigUint::from(brute[k]));
        }
    }
    let first: Vec<BigUint> = (1..=6).map(|n| bell_from_diagram(n, BUDGET).unwrap()).collect();
    let expect: Vec<BigUint> = [1u32, 2, 5, 15, 52, 203].map(BigUint::from).to_vec();
    assert_eq!(first, expect);
}

#[test]
fn stirling_identity_holds() {
    for n in 1..=9 {
        for x in 1..=10 {
            let r = stirling_identity_residual(n, &Exact::from_u64(x), BUDGET).unwrap();
            assert!(r.is_zero(), "n={n}, X={x}");
        }
    }
    assert!(stirling_identity_residual(5, &Exact::from_u64(7), BUDGET).unwrap().is_zero());
}

#[test]
fn comb_kernels_are_central() {
    let theta = vec![Exact::ratio(1, 3), Exact::ratio(1, 4), Exact::ratio(1, 6)];
    let k = comb_kernel(theta).unwrap();
    for (x, r) in harmonicity_residual(k.model(), k.harmonic(), &level_states(k.model(), 6)) {
        assert!(r.is_zero(), "{x}");
    }
    for n in 0..=7 {
        assert!(identity_residual(k.model(), k.harmonic(), n, BUDGET).unwrap().is_zero());
    }
    let target = Composition::new(vec![2, 1, 2]).unwrap();
    let rep = conditional_uniformity_check(k.model(), &k, &k.model().root(), &target, 10_000).unwrap();
    assert!(rep.holds);

    let bounded = bounded_comb_kernel::<Exact>(3).unwrap();
    let row = bounded.transitions(&Composition::new(vec![1, 1, 1]).unwrap()).unwrap();
    assert_eq!(row.len(), 3);
    assert!(row.iter().all(|(_, p)| *p == Exact::ratio(1, 3)));
}

#[test]
fn crp_matches_closed_form_and_log_gamma() {
    for g in [Exact::ratio(1, 2), Exact::one(), Exact::from_u64(2)] {
        let k = crp_kernel(g.clone()).unwrap();
        let states = level_states(k.model(), 7);
        for (x, r) in harmonicity_residual(k.model(), k.harmonic(), &states) {
            assert!(r.is_zero(), "{x}");
        }
        for x in &states {
            assert_eq!(k.transitions(x).unwrap(), crp_transitions(&g, x));
        }
        let float = CrpLogGamma::new(g.to_f64()).unwrap();
        let model = CombModel::<f64>::new();
        let fstates = level_states(&model, 7);
        assert!(max_relative_residual(&model, &float, &fstates) <= 1e-8);
    }
}

#[test]
fn two_sided_is_harmonic() {
    let params = TwoSidedParams::new(
        Exact::ratio(1, 5),
        vec![Exact::ratio(1, 10), Exact::ratio(1, 20)],
        vec![Exact::ratio(1, 8)],
        Exact::ratio(1, 2),
        Exact::ratio(3, 10),
    )
    .unwrap();
    let k = two_sided_kernel(params).unwrap();
    for (x, r) in harmonicity_residual(k.model(), k.harmonic(), &level_states(k.model(), 6)) {
        assert!(r.is_zero(), "{x}");
    }
    for n in 0..=6 {
        assert!(identity_residual(k.model(), k.harmonic(), n, BUDGET).unwrap().is_zero());
    }
    // with beta = 0 the chain never opens a column on the left
    let one_sided = TwoSidedParams::new(
        Exact::ratio(1, 2),
        vec![Exact::ratio(1, 4)],
        vec![],
        Exact::ratio(1, 2),
        Exact::zero(),
    )
    .unwrap();
    let k = two_sided_kernel(one_sided).unwrap();
    let comb = comb_kernel(vec![Exact::ratio(1, 2), Exact::ratio(1, 4)]).unwrap();
    let row = k.transitions(&Profile::new(0, vec![2, 1]).unwrap()).unwrap();
    let comb_row = comb.transitions(&Composition::new(vec![2, 1]).unwrap()).unwrap();
    let probs: Vec<Exact> = row.into_iter().map(|(_, p)| p).collect();
    let comb_probs: Vec<Exact> = comb_row.into_iter().map(|(_, p)| p).collect();
    assert_eq!(probs, comb_probs);
}

#[test]
fn pyramid_table_counts() {
    let m = pyramid_model(None).unwrap();
    let counts: Vec<u64> = (1..=8)
        .map(|n| {
            forward_level(&m, &m.root(), n, None, BUDGET)
                .unwrap()
                .values()
                .fold(Exact::zero(), |a, b| a + b)
                .to_integer()
                .try_into()
                .unwrap()
        })
        .collect();
    // the n = 7 entry of the printed table reads 26077
    assert_eq!(counts, vec![3, 11, 47, 213, 1013, 5047, 26277, 143067]);
}

#[test]
fn pyramid_states_stay_unimodal() {
    let m = pyramid_model(None).unwrap();
    for v in level_states(&m, 7) {
        assert!(v.is_unimodal(), "{v}");
        assert_eq!(m.out_degree(&v), m.children(&v).len());
    }
}

#[test]
fn frame_matches_kreweras() {
    let frame = FrameModel;
    let walks = kreweras_counts(20).unwrap();
    for n in 0..=20 {
        let total = forward_level(&frame, &frame.root(), n, None, BUDGET)
            .unwrap()
            .values()
            .fold(Exact::zero(), |a, b| a + b);
        assert_eq!(total.to_integer().to_biguint().unwrap(), walks[n], "n={n}");
    }
    for n in 0..=8 {
        assert_eq!(walks[n], BigUint::from(kreweras_brute_force(n)));
    }
}

#[test]
fn kreweras_growth_ratio_rises_per_residue_class() {
    let d = kreweras_diagnostics(120).unwrap();
    let ratios: Vec<f64> = d.iter().map(|r| r.growth_ratio).collect();
    // consecutive ratios oscillate with period 3; each class rises
    for class in 0..3 {
        let seq: Vec<f64> = ratios.iter().skip(6 + class).step_by(3).copied().collect();
        assert!(seq.windows(2).all(|w| w[1] > w[0]), "class {class}");
    }
    assert!(ratios[6..].iter().all(|&r| r < 3.0));
}

#[test]
fn h_solver_respects_constraints() {
    let sol = kreweras_h_solver(Stencil::Forward, 8, 200, 1e-10).unwrap();
    assert_eq!(sol.label, "EXPLORATORY");
    for &(i, j, h) in &sol.values {
        if i < 0 && j < 0 {
            assert_eq!(h, 0.0);
        }
        if i == 0 && j == 0 {
            assert!((h - 1.0).abs() < 1e-12);
        }
    }
}
