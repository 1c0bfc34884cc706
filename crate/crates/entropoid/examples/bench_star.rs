use entropoid::{Entropoid128, Entropoid64, PrimeModulus};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

fn main() {
    let p: num_bigint::BigUint = "330408645472524569317013323017805641587".parse().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let e = Entropoid128::random(PrimeModulus::new(p).unwrap(), &mut rng).unwrap();
    let mut x = e.random_unit(&mut rng);
    let y = e.random_unit(&mut rng);
    let n = 1_000_000;
    let t = Instant::now();
    for _ in 0..n {
        x = e.star(&x, &y);
    }
    println!("mont2 star {:?}/op {:?}", t.elapsed() / n, e.pair(&x).0.bits());
    let e = Entropoid64::from_u64(49223, 33170, 13052, 12476, 19648).unwrap();
    let mut x = e.random_unit(&mut rng);
    let y = e.random_unit(&mut rng);
    let t = Instant::now();
    for _ in 0..n {
        x = e.star(&x, &y);
    }
    println!("u64 star {:?}/op {:?}", t.elapsed() / n, x);
}
