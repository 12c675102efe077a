//! Seeded random search for a secure storage code over a small field:
//! sample secrecy parity checks until one passes every exact check, then
//! read the access structure off its systematic form.
//!
//! ```bash
//! cargo run --example random_code_search
//! ```

use secstore::gf::Field;
use secstore::secure::{construct_random, verify};

fn main() {
    let field = Field::new(2).unwrap();
    let outcome = construct_random(&field, 8, 2, 2, 0, 10_000).unwrap();
    let code = &outcome.code;

    println!("accepted after {} tries", outcome.tries);
    println!(
        "n={} k_d={} k_s={} t={} d={} r={} (row-weight bound k_s + 1 = {})",
        code.n(),
        code.k_d(),
        code.k_s(),
        code.t(),
        code.d(),
        code.r(),
        code.k_s() + 1
    );
    println!("\naccess structure from the systematized parity check:");
    print!("{:?}", code.access_matrix());

    // The acceptance tests are the verifiers themselves.
    let report = verify(code);
    print!("\n{}", report.to_text());
}
