use pa_clique::pa_graph::{FenwickTree, PaGenerator};
use pa_clique::{generate, PaParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Upper 0.1% point of chi-square with `df` degrees of freedom
/// (Wilson-Hilferty).
fn chi_square_critical(df: usize) -> f64 {
    let k = df as f64;
    let z = 3.09;
    k * (1.0 - 2.0 / (9.0 * k) + z * (2.0 / (9.0 * k)).sqrt()).powi(3)
}

/// Pearson statistic after pooling cells with expected count below 5.
fn chi_square(observed: &[u64], probs: &[f64], draws: u64) -> (f64, usize) {
    let mut cells = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        o_acc += o as f64;
        e_acc += p * draws as f64;
        if e_acc >= 5.0 {
            cells.push((o_acc, e_acc));
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += o_acc;
                last.1 += e_acc;
            }
            None => cells.push((o_acc, e_acc)),
        }
    }
    let stat = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    (stat, cells.len() - 1)
}

#[test]
fn first_edge_follows_the_attachment_distribution() {
    for (m, delta) in [(3, -1.0), (7, -5.0), (2, 4.0)] {
        let g = generate(PaParams::new(40, m, delta, 1)).unwrap();
        let next = PaParams::new(41, m, delta, 0);
        let probs = PaGenerator::resume(&g, next).unwrap().attachment_distribution();
        assert_eq!(probs.len(), 40);
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (v, p) in probs.iter().enumerate() {
            let expect = (g.degree(v as u32 + 1) as f64 + delta) / (2.0 * m as f64 * 39.0 + 40.0 * delta);
            assert!((p - expect).abs() < 1e-12);
        }

        let draws = 20_000u64;
        let mut observed = vec![0u64; 40];
        for seed in 0..draws {
            let mut gen = PaGenerator::resume(&g, PaParams { seed, ..next }).unwrap();
            let (source, target) = gen.step_edge().unwrap();
            assert_eq!(source, 41);
            observed[target as usize - 1] += 1;
        }
        let (stat, df) = chi_square(&observed, &probs, draws);
        assert!(stat < chi_square_critical(df), "m={m} delta={delta}: chi2 {stat:.1} with {df} df");
    }
}

#[test]
fn fenwick_search_samples_proportionally() {
    let weights = [0.5, 3.0, 0.0, 1.5, 7.25, 2.0, 0.75];
    let mut tree = FenwickTree::with_capacity(weights.len());
    for w in weights {
        tree.push(w);
    }
    let total: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let draws = 100_000;
    let mut observed = vec![0u64; weights.len()];
    for _ in 0..draws {
        let u: f64 = rng.gen();
        observed[tree.search(u * tree.total())] += 1;
    }
    assert_eq!(observed[2], 0);
    let (stat, df) = chi_square(&observed, &probs, draws);
    assert!(stat < chi_square_critical(df), "chi2 {stat:.1} with {df} df");
}

#[test]
fn resume_keeps_the_prefix() {
    let g = generate(PaParams::new(30, 4, -2.0, 9)).unwrap();
    let grown = PaGenerator::resume(&g, PaParams::new(80, 4, -2.0, 17)).unwrap().finish();
    assert_eq!(grown.prefix(30), g);
    assert_eq!(grown.total_multiplicity(), 4 * 79);
    let same = PaGenerator::resume(&g, PaParams::new(30, 4, -2.0, 0)).unwrap().finish();
    assert_eq!(same, g);
    assert!(PaGenerator::resume(&g, PaParams::new(80, 5, -2.0, 0)).is_err());
    assert!(PaGenerator::resume(&g, PaParams::new(20, 4, -2.0, 0)).is_err());
}
