//! Products of generated irreducibles come apart into the same pieces.

use expoly::{factor_epoly, verify_factorization, Config, CycloNumber, EPoly};
use expoly_harness::random::rng;
use expoly_harness::span::rank;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn int(k: i64) -> EPoly {
    EPoly::constant(&CycloNumber::from_int(k, 1), 2, 1)
}

/// `a x + b y` with `a, b ∈ {-1, 0, 1}`, not both zero. Larger entries skew
/// the exponent lattice and push the power search past the degree cap.
fn small_exponent(r: &mut ChaCha8Rng) -> EPoly {
    loop {
        let (a, b) = (r.gen_range(-1i64..=1), r.gen_range(-1i64..=1));
        if (a, b) != (0, 0) {
            let v = |i, k| EPoly::var(i, 2, 1).scale(&CycloNumber::from_int(k, 1));
            return v(0, a).add(&v(1, b)).unwrap();
        }
    }
}

/// `E(α) + a·E(β) + c` with `α, β` independent: the associate is
/// `y1 + a·y2 + c` in the basis `(α, β)`, irreducible for every power
/// substitution.
fn trinomial(r: &mut ChaCha8Rng) -> EPoly {
    loop {
        let a = small_exponent(r);
        let b = small_exponent(r);
        if rank(&[a.to_exponent(), b.to_exponent()]) < 2 {
            continue;
        }
        let k = r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 };
        let c = r.gen_range(1..=3);
        return a.exp().add(&b.exp().scale(&CycloNumber::from_int(k, 1))).unwrap().add(&int(c)).unwrap();
    }
}

/// `E(α) - c` with `c` not a root of unity power: simple.
fn binomial(r: &mut ChaCha8Rng) -> EPoly {
    let a = small_exponent(r);
    a.exp().sub(&int(r.gen_range(2..=3))).unwrap()
}

fn key(g: &EPoly) -> String {
    format!("{:?}", g.normalize().1.terms())
}

#[test]
fn products_of_generated_irreducibles() {
    let mut r = rng(2024);
    let (mut done, mut skipped) = (0, 0);
    while done < 200 {
        let pick = |r: &mut ChaCha8Rng| if r.gen_bool(0.7) { (trinomial(r), false) } else { (binomial(r), true) };
        let (g, g_simple) = pick(&mut r);
        let (h, h_simple) = pick(&mut r);
        let f = g.mul(&h).unwrap();
        let fac = match factor_epoly(&f, &Config::default()) {
            Ok(fac) => fac,
            Err(e) if e.is_resource() => {
                skipped += 1;
                assert!(skipped <= 20, "too many inputs out of range after {done}: {e}");
                continue;
            }
            Err(e) => panic!("{e}"),
        };
        assert!(verify_factorization(&f, &fac));
        assert!(fac.classical.is_empty());
        let mut want: Vec<String> = [(&g, g_simple), (&h, h_simple)].iter().filter(|(_, s)| !s).map(|(p, _)| key(p)).collect();
        let mut got: Vec<String> = fac
            .nonsimple
            .iter()
            .flat_map(|(p, m)| std::iter::repeat(key(p)).take(*m as usize))
            .collect();
        want.sort();
        got.sort();
        assert_eq!(got, want, "nonsimple parts of {g:?} * {h:?}");
        // The simple pieces are regrouped by support line.
        let mut simple = EPoly::one(2, fac.ambient_order);
        for (p, s) in [(&g, g_simple), (&h, h_simple)] {
            if s {
                simple = simple.mul(&p.embed(fac.ambient_order)).unwrap();
            }
        }
        let mut blocks = EPoly::one(2, fac.ambient_order);
        for b in &fac.simple_blocks {
            assert_eq!(b.block.support().unwrap().dimension, 1);
            blocks = blocks.mul(&b.block).unwrap();
        }
        assert_eq!(key(&blocks), key(&simple));
        done += 1;
    }
    println!("{done} products checked, {skipped} out of range");
}
