//! High-rate regime: when the rate exceeds one half it pays to read
//! n - k_d + 1 nodes per file instead of reconstructing everything from
//! k_d + t nodes.
//!
//! ```bash
//! cargo run --example high_rate_scheme
//! ```

use secstore::gf::Field;
use secstore::secure::{construction1, verify};
use secstore::sim::load_report;

fn main() {
    // Four files on six nodes over GF(7), one-node collusion resistance.
    let field = Field::new(7).unwrap();
    let code = construction1(&field, 6, 4, 1, 0).unwrap();

    println!(
        "n={} k_d={} t={} d={} rate={}",
        code.n(),
        code.k_d(),
        code.t(),
        code.d(),
        code.rate()
    );
    println!(
        "access complexity r = {} beats full reconstruction from k_d + t = {}",
        code.r(),
        code.k_d() + code.t()
    );
    println!("\naccess structure:\n{:?}", code.access_matrix());
    let load = load_report(&code);
    println!(
        "per-node load: {:?} (worst gap {})",
        load.histogram, load.worst_gap
    );
    assert!(verify(&code).all_passed());
    println!("verification: pass");
}
