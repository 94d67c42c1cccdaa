//! Theory profiles of the built-in families, with one explained field each.
//!
//! `cargo run --example classify_families -- R:3 MAX:2 Q1`

use urysohn::classify::{classify, explain};
use urysohn::Monoid;

fn main() {
    let mut tags: Vec<String> = std::env::args().skip(1).collect();
    if tags.is_empty() {
        tags = ["R:2", "R:3", "MAX:3", "Q1", "QT:5/2", "Q", "N"].map(String::from).to_vec();
    }
    for tag in tags {
        let monoid = match Monoid::from_tag(&tag) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("{tag}: {e}");
                continue;
            }
        };
        let p = classify(&monoid);
        println!(
            "{:<8} stable {:<5} simple {:<5} su_rank {:<4} so_rank {:<2} wei {:<5} heq {:?}",
            tag,
            p.stable,
            p.simple,
            p.su_rank.map_or("-".into(), |r| r.to_string()),
            p.so_rank.to_string(),
            p.wei,
            p.heq_nonempty
        );
        if let Some(ex) = explain(&p, "simple") {
            match ex.witness {
                Some(w) => println!("         {}; witness {w}", ex.citation),
                None => println!("         {}", ex.citation),
            }
        }
    }
}
