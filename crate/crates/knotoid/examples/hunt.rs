//! Search a shard of the n=8 stream for non-vacuous interior-chain
//! instances, scanning every minimal shortcut of every prime diagram.

use knotoid::enumerate::{generate_flat_codes_sharded, Shard};
use knotoid::{gamma, planar, primality};

fn main() {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(8);
    let shard: u32 = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(0);
    let count: u32 = std::env::args().nth(3).map(|s| s.parse().unwrap()).unwrap_or(1);
    let mut found = 0;
    for f in generate_flat_codes_sharded(n, Shard { index: shard, count }) {
        if !primality::is_prime(&f).0 {
            continue;
        }
        let set = planar::enumerate_minimal_shortcuts(&f, 10_000);
        for sc in &set.shortcuts {
            let Ok(r) = gamma::classify(&f, sc) else { continue };
            let a = gamma::audit(&f, &r);
            if a.chain_interior_instances > 0 {
                println!(
                    "instance {} shortcut {:?} failures {}",
                    f.code(),
                    sc.crossed_arcs,
                    a.chain_interior_failures
                );
                found += 1;
                if found >= 5 {
                    return;
                }
                break;
            }
        }
    }
    println!("shard {shard}/{count} done, found {found}");
}
