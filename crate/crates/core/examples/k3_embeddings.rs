//! Primitive sublattices of E8 and of the K3 lattice, with their
//! orthogonal complements.
//!
//!     cargo run --example k3_embeddings

use k3lattice::claims::fixtures;
use k3lattice::k3embed::{self, StandardEmbedding};
use k3lattice::quadform::{self, Place};

fn main() -> k3lattice::Result<()> {
    for spec in [
        StandardEmbedding::A5A1InE8,
        StandardEmbedding::A2A1CubedInE8,
        StandardEmbedding::UE8A5A1InV,
        StandardEmbedding::Rank17PicardInV,
    ] {
        let e = k3embed::embed_standard(&spec)?;
        let sub = e.lattice()?;
        let t = k3embed::transcendental_of(&e)?;
        println!(
            "{:<16} rank {:>2} det {:>5} primitive {}  complement rank {} det {} gram {:?}",
            spec.to_string(),
            sub.rank(),
            sub.det(),
            e.is_primitive()?,
            t.rank(),
            t.det(),
            k3embed::pair_reduce(t.gram()).0.to_rows()
        );
    }

    let e = k3embed::embed_standard(&StandardEmbedding::Rank17PicardInV)?;
    let t = k3embed::transcendental_of(&e)?;
    let target = k3embed::rank17_expected_transcendental();
    let m = k3embed::find_isometry_in_box(&target, &t, 3)?;
    println!("\ncomplement of the rank-17 lattice ~ A1+A2(2)+<2>+<2>: {}", m.is_some());
    println!("its Witt index over Q_2: {}", quadform::witt_index(t.gram(), Some(Place::Prime(2)))?);

    let lp = fixtures::lp_in_lambda3(17)?;
    println!("L_17 inside Lambda(3) primitive: {}", lp.is_primitive()?);
    Ok(())
}
