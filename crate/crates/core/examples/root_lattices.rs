//! Root lattices and their discriminant groups, plus the K3 lattice.
//!
//!     cargo run --example root_lattices

use k3lattice::k3embed::build_v;
use k3lattice::lattice::{root_lattice, RootKind};

fn main() -> k3lattice::Result<()> {
    let cases = [
        (RootKind::A, 1),
        (RootKind::A, 2),
        (RootKind::A, 5),
        (RootKind::D, 4),
        (RootKind::D, 8),
        (RootKind::E, 6),
        (RootKind::E, 7),
        (RootKind::E, 8),
    ];
    println!("{:<6}{:>6}{:>8}   disc group", "root", "rank", "det");
    for (kind, n) in cases {
        let l = root_lattice(kind, n)?;
        let d = l.discriminant_group()?;
        let factors: Vec<String> = d.invariant_factors.iter().map(|f| f.to_string()).collect();
        println!("{:<6}{:>6}{:>8}   [{}]", format!("{kind:?}{n}"), l.rank(), l.det(), factors.join(","));
    }

    let v = build_v();
    let (p, n) = v.signature();
    println!("\nV = U^3 + E8^2: rank {}, det {}, signature ({p},{n}), even {}", v.rank(), v.det(), v.is_even());
    Ok(())
}
