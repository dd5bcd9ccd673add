//! Discriminant forms of the glued lattices and a search for isometries
//! between them.
//!
//!     cargo run --example discriminant_forms

use k3lattice::glue::{build_named, NamedLattice};

fn main() -> k3lattice::Result<()> {
    let names = ["L2", "N1", "N2", "M16", "KummerK"];
    let mut forms = Vec::new();
    for name in names {
        let l = build_named(&name.parse::<NamedLattice>()?)?;
        let q = l.discriminant_group()?;
        let factors: Vec<String> = q.invariant_factors.iter().map(|f| f.to_string()).collect();
        println!("{name:<8} det {:>5}  group [{}]  length {}", l.det(), factors.join(","), q.length());
        if let Some(values) = &q.q_values {
            let v: Vec<String> = values.iter().map(|x| x.to_string()).collect();
            println!("         q on generators (mod 2): {}", v.join(" "));
        }
        forms.push((name, q));
    }

    // L2, N1 and N2 share rank and determinant; the forms tell them apart.
    println!();
    for i in 0..3 {
        for j in i + 1..3 {
            let iso = forms[i].1.is_isomorphic(&forms[j].1)?;
            println!("q({}) ~ q({}): {iso}", forms[i].0, forms[j].0);
        }
    }
    Ok(())
}
