//! Trapdoor generation, inversion and the encryption scheme on the desk preset.

use hsproof::algebra::ZqVec;
use hsproof::lattice::{decrypt, encrypt, fake_encrypt, gen_trap, invert, uniform_ciphertext};
use hsproof::rng::stream;
use hsproof::{BitString, Params};
use rand::Rng;

fn main() -> hsproof::Result<()> {
    let p = Params::desk_default();
    let mut rng = stream(3, "lattice-example", 0);

    let (a, key) = gen_trap(&p, &mut rng);
    let s = ZqVec::random(p.n, p.q, &mut rng);
    let e: Vec<i64> = (0..p.m).map(|_| rng.gen_range(-(2 * p.tau as i64)..=2 * p.tau as i64)).collect();
    let v = a.mul_vec(&s)?.add(&ZqVec::from_signed(&e, p.q))?;
    let back = invert(&a, &key, &v, p.tau)?;
    println!("A is {}x{}; invert recovers s: {}", a.rows(), a.cols(), back.as_ref() == Some(&s));

    let noise = ZqVec::random(p.m, p.q, &mut rng);
    println!("uniform v inverts to {:?}", invert(&a, &key, &noise, p.tau)?.map(|_| "something"));

    let h = BitString::random(p.d, &mut rng);
    let enc = encrypt(&h, &p, &mut rng)?;
    let got = decrypt(&enc.ciphertext, &enc.trapdoor, &p)?;
    println!("h = {h}, decrypted = {}", got.map_or("-".to_string(), |g| g.to_string()));

    let fake = fake_encrypt(&h, &p, &mut rng)?;
    let unif = uniform_ciphertext(&p, &mut rng);
    println!("fake ciphertext v[0] = {}, uniform v[0] = {}", fake.v.get(0), unif.v.get(0));
    Ok(())
}
