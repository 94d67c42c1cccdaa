//! Enumerates finite distance monoids by size and prints a census.
//!
//! `cargo run --example enumeration_census -- 4`

use urysohn::enumeration::{census, enumerate_monoids, verify_classsize, verify_unique};

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("size must be a number"))
        .unwrap_or(4);
    for n in 1..=max_n {
        let c = census(n);
        println!(
            "n = {n}: {} monoids, by arch {:?}, by class {:?}",
            c.summary.total, c.summary.by_arch, c.summary.by_class
        );
        let ms = enumerate_monoids(n);
        let unique = verify_unique(n, &ms).expect("uniqueness of the extremes");
        let sizes = verify_classsize(&ms).expect("class-size bound");
        println!(
            "  unique extremes: arch 1 x{}, arch {n} x{}; class sizes checked on {}",
            unique.arch_one, unique.arch_n, sizes.checked
        );
    }
    if max_n >= 3 {
        println!("\nn = 3 census:");
        print!("{}", census(3).to_csv());
    }
}
