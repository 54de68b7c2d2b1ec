//! Knuth's estimator, the out-degree proposals and the approximate MERW.

use merw::diagram::{DiagramModel, Dimensions};
use merw::growth::{pyramid_model, Profile, PyramidState};
use merw::knuth::{
    knuth_estimate_exact, pyramid_merw_approx_sample, table1_experiment, ApproxParams, FiniteHorizon, Grw,
    OutDegreePower, ProposalKernel,
};
use merw::lattice::{Partition, YoungModel};
use merw::rng::derive;
use merw::shape::Heatmap;
use merw::{Exact, Scalar};
use num_traits::{One, Zero};

fn q(p: i64, d: i64) -> Exact {
    Exact::new(p.into(), d.into())
}

#[test]
fn exact_proposal_has_constant_cost() {
    let pyramid = pyramid_model(None).unwrap();
    let dims = Dimensions::new(&pyramid);
    let x = Profile::new(0, vec![2]).unwrap();
    let depth = 4;
    let target = dims.to_level(&x, pyramid.level(&x) + depth).unwrap();
    let est = knuth_estimate_exact(&pyramid, &x, depth, &FiniteHorizon::new(&dims), 300, 3).unwrap();
    assert!(est.costs.iter().all(|c| *c == target));
    assert_eq!(est.mean, target);
    assert_eq!(est.sample_std(), Some(Exact::zero()));

    let young = YoungModel;
    let ydims = Dimensions::new(&young);
    let lam = Partition::new(vec![2, 1]).unwrap();
    let target = ydims.to_level(&lam, 6).unwrap();
    let est = knuth_estimate_exact(&young, &lam, 3, &FiniteHorizon::new(&ydims), 200, 8).unwrap();
    assert!(est.costs.iter().all(|c| *c == target));
    assert_eq!(est.variance, Exact::zero());
}

/// Every depth-`depth` trajectory from `x` with its exact probability.
fn enumerate<P: ProposalKernel<merw::growth::PyramidModel>>(
    proposal: &P,
    x: &PyramidState,
    depth: usize,
) -> Vec<(PyramidState, Exact)> {
    let model = pyramid_model(None).unwrap();
    let mut frontier = vec![(x.clone(), Exact::one())];
    for step in 0..depth {
        let mut next = Vec::new();
        for (v, pr) in frontier {
            let kids = model.children(&v);
            let probs = proposal.probabilities(&model, &v, &kids, step, depth).unwrap();
            for (e, p) in kids.into_iter().zip(probs) {
                next.push((e.child, pr.clone() * p));
            }
        }
        frontier = next;
    }
    frontier
}

#[test]
fn grw_is_exactly_unbiased() {
    let paths = enumerate(&Grw, &PyramidState::single(), 3);
    assert_eq!(paths.len(), 47);
    let total = paths.iter().fold(Exact::zero(), |a, (_, p)| a + p);
    assert_eq!(total, Exact::one());
    // E_q[c] = sum_s q(s) / q(s)
    let mean = paths.iter().fold(Exact::zero(), |a, (_, p)| a + p.clone() * (Exact::one() / p));
    assert_eq!(mean, Exact::from_integer(47.into()));

    // the library's trajectory costs are exactly the reciprocals 1/q(s)
    let model = pyramid_model(None).unwrap();
    let est = knuth_estimate_exact(&model, &PyramidState::single(), 3, &Grw, 400, 17).unwrap();
    let allowed: Vec<Exact> = paths.iter().map(|(_, p)| Exact::one() / p).collect();
    assert!(est.costs.iter().all(|c| allowed.contains(c)));
}

#[test]
fn out_degree_weights_of_a_column_of_two() {
    let model = pyramid_model(None).unwrap();
    let x = Profile::new(0, vec![2]).unwrap();
    let kids = model.children(&x);
    let probs = OutDegreePower::constant(1.0)
        .probabilities(&model, &x, &kids, 0, 5)
        .unwrap();
    let mut got: Vec<Exact> = probs;
    got.sort();
    assert_eq!(got, vec![q(3, 11), q(4, 11), q(4, 11)]);
    // the column grown upward has out-degree 3
    let up = kids.iter().position(|e| e.child.heights == vec![3]).unwrap();
    let probs = OutDegreePower::constant(1.0).probabilities(&model, &x, &kids, 0, 5).unwrap();
    assert_eq!(probs[up], q(3, 11));
}

#[test]
fn first_step_tracks_the_continuation_counts() {
    let model = pyramid_model(None).unwrap();
    let dims = Dimensions::new(&model);
    let root = PyramidState::single();
    let depth = 3;
    let kids = model.moves(&root);
    let counts: Vec<f64> = kids
        .iter()
        .map(|y| dims.to_level(y, model.level(y) + depth).unwrap().to_f64())
        .collect();
    let total: f64 = counts.iter().sum();

    let runs = 1500;
    let mut hits = vec![0usize; kids.len()];
    for r in 0..runs {
        let params = ApproxParams { n: 1, depth, samples: 1000, seed: derive(99, r) };
        let s = pyramid_merw_approx_sample(&model, &merw::knuth::WalkRule::Grw, &params).unwrap();
        let last = s.sample.vertices.last().unwrap();
        hits[kids.iter().position(|k| k == last).unwrap()] += 1;
    }
    for (j, c) in counts.iter().enumerate() {
        let p = c / total;
        let freq = hits[j] as f64 / runs as f64;
        let sigma = (p * (1.0 - p) / runs as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * sigma + 0.01, "child {j}: {freq} vs {p}");
    }
}

#[test]
fn table_rows_at_small_n() {
    let rows = table1_experiment(&[1, 3], 500, &[4]).unwrap();
    assert_eq!(rows[0].exact.to_string(), "3");
    assert_eq!(rows[0].rw0_std, 0.0);
    assert!((rows[0].rw0_mean - 3.0).abs() < 1e-12);
    assert_eq!(rows[0].rw1_std, 0.0);
    assert_eq!(rows[1].exact.to_string(), "47");
    assert!((rows[1].rw0_mean - 47.0).abs() < 5.0);
    assert!((rows[1].rw1_mean - 47.0).abs() < 5.0);
}

/// The full-size heat map run: 500 pyramids of 500 steps, d = 30, N = 100.
#[test]
#[ignore = "takes hours"]
fn long_heatmap_run() {
    let model = pyramid_model(None).unwrap();
    let mut heat = Heatmap::empty(501);
    for k in 0..500 {
        let params = ApproxParams { n: 500, depth: 30, samples: 100, seed: derive(1, k) };
        let s = pyramid_merw_approx_sample(&model, &merw::knuth::WalkRule::rw1(), &params).unwrap();
        heat.add(s.sample.vertices.last().unwrap());
    }
    assert!((heat.mass() - 1.0).abs() < 1e-12);
}
