//! Randomized invariants.

use merw::chain::{CentralKernel, HarmonicFn, MarkovKernel};
use merw::cli::{parse_rational, RunConfig};
use merw::diagram::{forward_level, DiagramModel, Dimensions};
use merw::growth::{crp_kernel, is_unimodal, pyramid_model, PyramidState};
use merw::lattice::{pascal_merw_harmonic, pascal_model, PascalParams};
use merw::shape::Heatmap;
use merw::tree::bst_kernel;
use merw::Exact;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Follows `choices` through the kernel, checking that every row sums to
/// exactly one and that every probability is positive.
fn rows_are_stochastic<K>(kernel: &K, choices: &[usize]) -> Result<(), TestCaseError>
where
    K: MarkovKernel<Prob = Exact>,
{
    let mut x = kernel.start();
    for &c in choices {
        let row = kernel.transitions(&x).unwrap();
        prop_assert!(!row.is_empty());
        prop_assert!(row.iter().all(|(_, p)| *p > Exact::zero()));
        let total = row.iter().fold(Exact::zero(), |acc, (_, p)| acc + p);
        prop_assert_eq!(total, Exact::one(), "row of {}", x);
        x = row[c % row.len()].0.clone();
    }
    Ok(())
}

fn walk(choices: &[usize]) -> PyramidState {
    let model = pyramid_model(None).unwrap();
    choices.iter().fold(PyramidState::single(), |s, &c| {
        let moves = model.moves(&s);
        moves[c % moves.len()].clone()
    })
}

/// Every profile obtained from `s` by one box, filtered by unimodality.
fn brute_moves(s: &PyramidState) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in 0..s.heights.len() {
        let mut h = s.heights.clone();
        h[k] += 1;
        out.push(h);
    }
    out.push([vec![1], s.heights.clone()].concat());
    out.push([s.heights.clone(), vec![1]].concat());
    out.retain(|h| is_unimodal(h));
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pyramid_walks_stay_unimodal(choices in prop::collection::vec(any::<usize>(), 0..40)) {
        let s = walk(&choices);
        prop_assert!(s.is_unimodal());
        prop_assert_eq!(s.size() as usize, choices.len() + 1);
    }

    #[test]
    fn pyramid_moves_match_brute_force(choices in prop::collection::vec(any::<usize>(), 0..25)) {
        let s = walk(&choices);
        let model = pyramid_model(None).unwrap();
        let mut fast: Vec<Vec<u32>> = model.moves(&s).into_iter().map(|m| m.heights).collect();
        fast.sort();
        prop_assert_eq!(fast, brute_moves(&s));
        // the diagram view lists the same children
        prop_assert_eq!(model.children(&s).len(), model.moves(&s).len());
    }

    #[test]
    fn pascal_rows_sum_to_one(a in 1i64..6, b in 1i64..6, den in 1i64..5,
                              choices in prop::collection::vec(any::<usize>(), 0..12)) {
        let params = PascalParams::new(Exact::new(a.into(), den.into()), Exact::new(b.into(), den.into())).unwrap();
        let phi = match pascal_merw_harmonic(&params) {
            Ok(phi) => phi,
            // s is irrational for this gamma
            Err(_) => return Ok(()),
        };
        let kernel = CentralKernel::new(pascal_model(Some(params)), phi).unwrap();
        rows_are_stochastic(&kernel, &choices)?;
    }

    #[test]
    fn bst_rows_sum_to_one(d in 2u8..5, choices in prop::collection::vec(any::<usize>(), 0..10)) {
        rows_are_stochastic(&bst_kernel::<Exact>(d, None).unwrap(), &choices)?;
    }

    #[test]
    fn crp_rows_sum_to_one(p in 1i64..9, q in 1i64..5, choices in prop::collection::vec(any::<usize>(), 0..10)) {
        rows_are_stochastic(&crp_kernel(Exact::new(p.into(), q.into())).unwrap(), &choices)?;
    }

    #[test]
    fn harmonic_value_is_the_mean_of_the_next_level(choices in prop::collection::vec(any::<usize>(), 0..8)) {
        // phi(x) = sum_y d(x, y) phi(y) two levels down
        let kernel = crp_kernel(Exact::new(3.into(), 2.into())).unwrap();
        let model = kernel.model();
        let mut x = model.root();
        for &c in &choices {
            let kids = model.children(&x);
            x = kids[c % kids.len()].child.clone();
        }
        let level = model.level(&x) + 2;
        let layer = forward_level(model, &x, level, None, 1_000_000).unwrap();
        let dims = Dimensions::new(model);
        let total = layer.values().fold(Exact::zero(), |a, b| a + b);
        prop_assert_eq!(dims.to_level(&x, level).unwrap(), total);
        let sum = layer
            .iter()
            .fold(Exact::zero(), |acc, (y, d)| acc + d.clone() * kernel.harmonic().eval(y));
        prop_assert!(layer.keys().all(|y| model.level(y) == level));
        prop_assert_eq!(sum, kernel.harmonic().eval(&x));
    }

    #[test]
    fn heatmap_mass_is_one(walks in prop::collection::vec(prop::collection::vec(any::<usize>(), 19), 1..8)) {
        let mut h = Heatmap::empty(20);
        for w in &walks {
            h.add(&walk(w));
        }
        prop_assert!((h.mass() - 1.0).abs() < 1e-12);
        let total: f64 = h.counts.keys().map(|&(c, r)| h.frequency(c, r)).sum();
        prop_assert!((total - 20.0).abs() < 1e-9);
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = Exact::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_rational(&format!("{p}/{q}")).unwrap(), x);
    }

    #[test]
    fn decimals_parse_exactly(int in 0u32..1000, frac in 0u32..1000) {
        let parsed = parse_rational(&format!("{int}.{frac:03}")).unwrap();
        prop_assert_eq!(parsed, Exact::new((int as i64 * 1000 + frac as i64).into(), 1000.into()));
    }

    #[test]
    fn flags_override_config(flag in proptest::option::of(0usize..100), file in proptest::option::of(0usize..100),
                             seed_flag in proptest::option::of(any::<u64>()), seed_file in proptest::option::of(any::<u64>())) {
        let flags = RunConfig { n: flag, seed: seed_flag, ..Default::default() };
        let from_file = RunConfig { n: file, seed: seed_file, model: Some("pyramid".into()), ..Default::default() };
        let merged = flags.merged(from_file);
        prop_assert_eq!(merged.n, flag.or(file));
        prop_assert_eq!(merged.seed, seed_flag.or(seed_file));
        prop_assert_eq!(merged.model.as_deref(), Some("pyramid"));
    }
}
