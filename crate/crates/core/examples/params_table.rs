//! Parameter schedule for a range of security parameters, plus the desk preset.
//!
//! ```text
//! cargo run --example params_table
//! ```

use hsproof::Params;

fn main() -> hsproof::Result<()> {
    println!("{:>7} {:>12} {:>4} {:>7} {:>9} {:>3}  verdict", "lambda", "q", "Q", "m", "tau", "d");
    for lambda in [4u64, 8, 16, 32, 64, 128, 256] {
        let p = Params::asymptotic(lambda)?;
        let verdict = match p.check_runnable() {
            Ok(()) => "runnable".to_string(),
            Err(e) => e.to_string(),
        };
        println!("{:>7} {:>12} {:>4} {:>7} {:>9} {:>3}  {verdict}", lambda, p.q, p.big_q, p.m, p.tau, p.d);
    }

    let desk = Params::desk_default();
    println!("\ndesk preset\n{desk}");
    println!("gadget error bound {} vs q/6 = {}", desk.gadget_error_bound(), desk.q / 6);

    // sigma above tau is refused up front
    if let Err(e) = Params::desk(8, desk.q, 6, 1e6) {
        println!("rejected: {e}");
    }
    Ok(())
}
