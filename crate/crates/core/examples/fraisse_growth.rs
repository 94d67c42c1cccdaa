//! Grows a finite space with the k-point extension property.
//!
//! `cargo run --example fraisse_growth -- R:2 2 0`

use urysohn::space::text::format_space;
use urysohn::space::{check_extension_property, fraisse_grow, GrowError};
use urysohn::Monoid;

fn main() {
    let mut args = std::env::args().skip(1);
    let tag = args.next().unwrap_or_else(|| "R:2".into());
    let k: usize = args.next().map_or(2, |s| s.parse().expect("k is a number"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed is a number"));
    let monoid = Monoid::from_tag(&tag).expect("known family tag");

    match fraisse_grow(monoid, k, 500, seed) {
        Ok(space) => {
            print!("{}", format_space(&space, &tag));
            let missing = check_extension_property(&space, k).expect("finite carrier");
            println!("# {} points, {k}-point extension property: {}", space.len(), missing.is_none());
        }
        Err(GrowError::BudgetExceeded { partial, unrealized }) => {
            println!("# budget reached at {} points, {unrealized} maps unrealized", partial.len());
        }
        Err(e) => eprintln!("{e}"),
    }
}
