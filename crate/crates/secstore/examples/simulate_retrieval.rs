//! Operate a scheme end to end: encode files with fresh randomness, read
//! them back through the access structure, and watch an eavesdropping
//! coalition learn nothing.
//!
//! ```bash
//! cargo run --example simulate_retrieval
//! ```

use secstore::gf::Field;
use secstore::secure::construct_grs;
use secstore::sim::{encode, erasure_check, secrecy_exhaustive};

fn main() {
    let field = Field::new(7).unwrap();
    let code = construct_grs(&field, 6, 2, 2, Some(&[1, 2, 3, 4, 5, 6])).unwrap();

    // Store the files (3, 5).
    let files = [3u64, 5];
    let mut nodes = encode(&code, &files, 42).unwrap();
    println!("node contents: {:?}", nodes.symbols());

    for (file, &expected) in files.iter().enumerate() {
        let got = nodes.retrieve(file).unwrap();
        println!(
            "retrieve file {file} via nodes {:?} -> {got} (stored {expected})",
            code.recovery_sets()[file]
        );
        assert_eq!(got.value(), expected);
    }
    println!("per-node reads so far: {:?}", nodes.access_counts());

    // The exact oracle enumerates every coalition and every message: no
    // two colluding nodes see anything message-dependent.
    let secrecy = secrecy_exhaustive(&code, 2).unwrap();
    println!(
        "\nsecrecy at t=2: {} ({} coalitions, {} encodings each)",
        if secrecy.passed { "pass" } else { "fail" },
        secrecy.coalitions_tested,
        secrecy.encodings_per_coalition
    );
    // Three nodes are one too many.
    let leak = secrecy_exhaustive(&code, 3).unwrap();
    let witness = leak.witness.unwrap();
    println!(
        "at t=3 the coalition {:?} distinguishes {:?} from {:?}",
        witness.coalition,
        witness.x_a,
        witness.x_b.unwrap()
    );

    // Any n - d + 1 = 4 surviving nodes still determine everything.
    let erasure = erasure_check(&code).unwrap();
    println!(
        "\nerasure tolerance: {} ({} surviving sets checked)",
        if erasure.passed { "pass" } else { "fail" },
        erasure.subsets_tested
    );
}
