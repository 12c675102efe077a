//! Rate bounds: exact capacity and finite-length converses, plus the
//! asymptotic envelopes (random-coding lower bound against the binary
//! linear-programming upper bound).
//!
//! ```bash
//! cargo run --example rate_bounds
//! ```

use secstore::bounds::{
    capacity, dimension_upper, distance_upper, sample_curves, BoundKind,
};

fn main() {
    // Finite-length: what any 2-collusion secure system on 6 nodes with 2
    // files can achieve.
    println!("capacity at minimal access: C = {}", capacity(2, 2));
    for kind in [BoundKind::Singleton, BoundKind::Hamming, BoundKind::Plotkin] {
        let d = distance_upper(7, 6, 2, 2, kind);
        println!("distance bound {kind:?}: d <= {d:?}");
    }
    println!(
        "dimension bound (Singleton) at d=3: k_d <= {}",
        dimension_upper(7, 6, 2, 3, BoundKind::Singleton).unwrap()
    );

    // Asymptotic envelopes for tau = 1% colluding nodes.
    let curve = sample_curves(2, 0.01, 11).unwrap();
    let e = curve.endpoints.unwrap();
    println!("\nbinary envelopes at tau = 0.01:");
    println!("  A = ({:.6}, {:.6})  upper curve at delta = 0", e.a.0, e.a.1);
    println!("  B = ({:.6}, {:.6})  lower curve at delta = 0", e.b.0, e.b.1);
    println!("  C = ({:.6}, {:.6})  upper curve root", e.c.0, e.c.1);
    println!("  D = ({:.6}, {:.6})  lower curve root", e.d.0, e.d.1);
    println!("\n  delta    R_lower  R_upper");
    for s in &curve.samples {
        println!(
            "  {:.4}   {:.4}   {:.4}",
            s.delta,
            s.rate_lower,
            s.rate_upper.unwrap()
        );
    }
    println!("\nwrite a dense grid with: secstore bounds --q 2 --tau 0.01 --steps 500 --out curve.csv");
}
