//! Runs the claim registry, optionally restricted to one tag.
//!
//!     cargo run --release --example verify_claims -- quadform

use k3lattice::claims;

fn main() {
    let tag = std::env::args().nth(1);
    let results = claims::run_all(tag.as_deref());
    for r in &results {
        println!("{:<4}  {}", r.status, r.id);
    }
    let failed: Vec<&str> =
        results.iter().filter(|r| r.status == claims::Status::Fail).map(|r| r.id.as_str()).collect();
    println!("{} claims, failing: {:?}", results.len(), failed);
}
