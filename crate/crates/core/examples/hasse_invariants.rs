//! Hilbert symbols, Hasse invariants and local Witt indices.
//!
//!     cargo run --example hasse_invariants

use k3lattice::claims::fixtures;
use k3lattice::exact::int;
use k3lattice::glue::named;
use k3lattice::quadform::{self, hilbert_symbol_int, Place};

fn main() -> k3lattice::Result<()> {
    println!("Hilbert symbols (a,b)_p:");
    for (a, b) in [(-1, -1), (2, 3), (5, 7), (-3, 17)] {
        let row: Vec<String> =
            [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7), Place::Prime(17)]
                .into_iter()
                .map(|v| format!("{v}:{:+}", hilbert_symbol_int(&int(a), &int(b), v).unwrap()))
                .collect();
        println!("  ({a},{b})  {}", row.join(" "));
    }

    let forms = [
        ("Lambda(3)", named::lambda(3)?.gram().clone()),
        ("diag(-1,-1,-2,-6,7,7)", fixtures::counterexample_diag()),
        ("R", fixtures::r1156().gram().clone()),
        ("T", fixtures::t().gram().clone()),
    ];
    println!();
    for (name, g) in &forms {
        let inv = quadform::invariants(g)?;
        let minus: Vec<String> = inv.hasse_minus.iter().map(|p| p.to_string()).collect();
        println!(
            "{name}: signature {:?}, disc class {}, Hasse -1 at {{{}}}",
            inv.signature,
            inv.disc_class.0,
            minus.join(",")
        );
        for p in [2u64, 3, 17] {
            println!("    Witt index at {p}: {}", quadform::witt_index(g, Some(Place::Prime(p)))?);
        }
    }
    let same = quadform::rationally_equivalent(&forms[0].1, &forms[1].1)?;
    println!("\nLambda(3) and the diagonal form equivalent over Q: {same}");
    Ok(())
}
