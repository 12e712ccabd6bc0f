//! Times `decide` on generated connected instances.
//!
//! `scaling <n> [seeds]` decides each seed's instance at the fan
//! triangulation's diameter and at half of it.
use std::time::Instant;

use opdi_core::{decide, random_outerplanar, star_triangulate};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("number"));
    let n = args.next().unwrap_or(200) as usize;
    let seeds = args.next().unwrap_or(3);
    for seed in 0..seeds {
        let g = random_outerplanar(n, seed, true);
        let d = star_triangulate(&g).unwrap().diameter.finite().unwrap();
        for bound in [d, (d / 2).max(1)] {
            let t = Instant::now();
            let yes = decide(&g, bound).unwrap();
            println!("n={n} seed={seed} D={bound} {yes} {:.3}s", t.elapsed().as_secs_f64());
        }
    }
}
