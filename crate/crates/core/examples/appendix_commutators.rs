//! Every identity in the catalog, checked exactly and by the differential
//! oracle.
//!
//! Run with `cargo run --example appendix_commutators`.

use repind::opcore::catalog::{catalog, check};
use repind::verify::differential_oracle;

fn main() -> repind::Result<()> {
    let mut failures = 0;
    for id in catalog() {
        let exact = check(&id)?;
        let oracle = differential_oracle(&id, 42)?;
        let ok = exact.holds && oracle.pass;
        failures += usize::from(!ok);
        println!(
            "{:40} exact={:5} oracle={:.1e} {}",
            id.key,
            exact.holds,
            oracle.residual,
            if ok { "ok" } else { "FAIL" }
        );
    }
    println!("\n{failures} failures");
    Ok(())
}
