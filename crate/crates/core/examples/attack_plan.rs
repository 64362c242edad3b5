//! Cost and threshold arithmetic for the rewinding attack, in both logarithm bases.

use hsproof::protocol::attack::{attack_plan, sampling_bound};

fn main() {
    for base2 in [false, true] {
        let plan = attack_plan(40, 0.05, 400_000, base2);
        println!("{} log", if base2 { "base-2" } else { "natural" });
        println!("  ceiling   {:.6}", plan.ceiling);
        println!("  slack     {:.6}", plan.slack);
        println!("  threshold {:.6}", plan.threshold);
        println!(
            "  decode work {:.3e}, stripped to {} columns {:.3e}",
            plan.decode_work, plan.stripped_columns, plan.decode_work_stripped
        );
        println!("  P[weight(x) >= {}] = {:.5}", plan.stripped_columns, plan.weight_tail);
    }

    println!("\nslack at |S| = 2^40, base-2 log\n{:>8} {:>10}", "alpha", "slack");
    for alpha in [1_000u64, 10_000, 100_000, 400_000, 1_000_000] {
        println!("{alpha:>8} {:>10.5}", sampling_bound(alpha, 40.0, true));
    }
}
