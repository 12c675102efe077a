//! Build a collusion-secure storage code from a Reed-Solomon code and
//! inspect every piece of it.
//!
//! ```bash
//! cargo run --example grs_scheme
//! ```

use secstore::gf::Field;
use secstore::secure::{access_complexity, construct_grs, verify};

fn main() {
    // Six nodes storing two files over GF(7), secure against any two
    // colluding nodes. Evaluation points 1..6 keep the matrices small.
    let field = Field::new(7).unwrap();
    let code = construct_grs(&field, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();

    println!(
        "scheme: n={} k_d={} k_s={} t={} d={} r={}",
        code.n(),
        code.k_d(),
        code.k_s(),
        code.t(),
        code.d(),
        code.r()
    );
    println!("\ndata rows G_D:\n{:?}", code.data_generator());
    println!("secrecy rows G_S:\n{:?}", code.secrecy_generator());
    println!("access structure B:\n{:?}", code.access_matrix());
    println!("mixing matrix M:\n{:?}", code.mixing_matrix());

    for (file, set) in code.recovery_sets().iter().enumerate() {
        println!("file {file} is read from nodes {set:?}");
    }

    // The subset search confirms that no smaller recovery sets exist.
    let access = access_complexity(&code, code.n()).unwrap();
    println!("\nexact access complexity: {}", access.r);

    let report = verify(&code);
    print!("\n{}", report.to_text());
}
