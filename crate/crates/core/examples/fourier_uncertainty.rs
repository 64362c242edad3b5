//! Fourier identities and uncertainty inequalities on `Z_4^3`, with the coset functions
//! that make the bounds tight.

use hsproof::checks::{coset_indicator, run_check, subgroups, FourierCheck};
use hsproof::fourier::uncertainty_bound_check;
use hsproof::rng::stream;

fn main() -> hsproof::Result<()> {
    let (m, n) = (4, 3);
    let mut rng = stream(1, "fourier-example", 0);
    for check in [FourierCheck::Parseval, FourierCheck::Convolution, FourierCheck::Donoho, FourierCheck::Uncertainty] {
        let r = run_check(check, m, n, 500, &mut rng)?;
        println!(
            "{check:<12} cases {:>4}  violations {}  worst margin {:.3e}  equality cases {}",
            r.cases,
            r.violations(),
            r.worst_margin,
            r.equality_cases.len()
        );
    }

    // a coset of a subgroup H: |Supp f| |Supp f^| = |G| and nu = eta = 1
    let groups = subgroups(m, n);
    let h = groups.iter().find(|h| h.len() == 8).expect("an order-8 subgroup");
    let f = coset_indicator(m, n, h, &[1, 2, 3]);
    let g = f.dft();
    println!("\n|H| = {}, |Supp f| = {}, |Supp f^| = {}", h.len(), f.support_size(1e-9), g.support_size(1e-9));
    println!("nu(f) = {:.6}, eta(f) = {:.6}", f.uniformity_nu()?, f.linearity_eta()?);
    let u = uncertainty_bound_check(&f, &g)?;
    println!("{u:?}");
    Ok(())
}
