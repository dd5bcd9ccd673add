//! Reads the shipped corpus and round-trips a lattice through JSON,
//! including one with a 100-bit entry.
//!
//!     cargo run --example lattice_files

use k3lattice::claims::io;
use k3lattice::exact::{diagonal, int};
use k3lattice::Lattice;
use num_bigint::BigInt;

fn main() -> k3lattice::Result<()> {
    let t = io::load_data("T.lattice")?;
    println!("{} from {}: det {}", t.name().unwrap_or("?"), io::data_dir().display(), t.det());

    let e = io::load_data("Lp17_in_Lambda3.lattice")?;
    println!("{} sits in {}", e.name().unwrap_or("?"), e.embedding().and_then(|x| x.ambient.name()).unwrap_or("?"));

    let big = BigInt::from(2).pow(100) + 6;
    let l = Lattice::new(diagonal(&[big, int(-2)]))?.named("big");
    let text = io::to_json(&l);
    print!("{text}");
    assert_eq!(io::parse(&text)?.gram(), l.gram());
    Ok(())
}
