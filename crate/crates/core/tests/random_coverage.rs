//! The generator reaches both the supermodular and the submodular cone. Each
//! occurs with probability near 5e-4 per sample at n = 4, so the sample is
//! large enough that missing either has negligible probability.

use capgraph::random::{random_batch, GeneratorConfig};

#[test]
fn both_cones_are_reached() {
    let batch = random_batch(&GeneratorConfig::new(4, 0x5EED_C0DE, 40_000).unwrap()).unwrap();
    let sup = batch.iter().filter(|mu| mu.is_supermodular(1e-12)).count();
    let sub = batch.iter().filter(|mu| mu.is_submodular(1e-12)).count();
    println!("{sup} supermodular, {sub} submodular in {}", batch.len());
    assert!(sup > 0 && sub > 0, "{sup} supermodular, {sub} submodular");
}
