//! Lists both rule catalogs and checks one random instance of each rule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zxw::rules::{catalog, instantiate, sample_params, soundness_check};
use zxw::{Calculus, DEFAULT_TOL};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for calculus in [Calculus::Zx, Calculus::Zw] {
        println!("{calculus} rules");
        for rule in catalog(calculus) {
            let inst = loop {
                let params = sample_params(rule.name, &mut rng, &[2, 3, 4]).expect("catalog rule");
                if let Ok(inst) = instantiate(rule.name, &params) {
                    break inst;
                }
            };
            let sound = soundness_check(&inst, DEFAULT_TOL);
            let mutant = soundness_check(&inst.mutated(), DEFAULT_TOL);
            let kind = if rule.derived { "derived" } else { "axiom" };
            println!(
                "  {:<12} {kind:<7} sound {:<5} mutant caught {:<5} {}",
                rule.name,
                sound.ok(),
                !mutant.ok(),
                rule.summary
            );
        }
    }
}
