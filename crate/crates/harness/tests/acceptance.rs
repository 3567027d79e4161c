//! Acceptance run: one PASS/FAIL line per criterion.
//!
//!     cargo test -p expoly-harness --test acceptance -- --oracle-budget 50
//!
//! `--oracle-budget N` caps the instance count of each randomized suite.

use std::time::{Duration, Instant};

use expoly::factor::associate_normal_form;
use expoly::{
    factor_epoly, factor_multivariate, orbit_check, parse_epoly, supports_contained, verify_factorization, BasisOrder,
    CoeffPoly, Config, CycloNumber, EPoly, Factorization, LaurentPoly, PowerSearchRecord,
};
use expoly_harness::oracle::{best_tuple, from_mpoly, to_mpoly};
use expoly_harness::span::support_within;
use expoly_harness::{
    differential_instance, invariance_instance, oracle_factor_bounded, oracle_power_search, random_epoly, RandomSpec,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn ep(src: &str) -> EPoly {
    parse_epoly(src).expect("valid input").0
}

fn lp(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(nvars, terms)
}

/// Lex-leading coefficient 1, computed with the oracle's arithmetic.
fn oracle_monic(f: &LaurentPoly) -> LaurentPoly {
    let (m, _) = to_mpoly(f).expect("rational");
    from_mpoly(&m.monic(), f.nvars(), f.nx())
}

fn factor_keys(fs: &[(LaurentPoly, u32)]) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = fs.iter().map(|(f, m)| (format!("{:?}", f.terms()), *m)).collect();
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let q = lp(2, &[(&[3, 0], 1), (&[0, 6], -1)]);
    let Ok(over_q) = factor_multivariate(&q, 1, 24) else { return outcome(false, "kernel error over Q") };
    let expected = factor_keys(&[
        (oracle_monic(&lp(2, &[(&[1, 0], 1), (&[0, 2], -1)])), 1),
        (oracle_monic(&lp(2, &[(&[2, 0], 1), (&[1, 2], 1), (&[0, 4], 1)])), 1),
    ]);
    let oracle = oracle_factor_bounded(&q, 6).map(|c| factor_keys(&c.factors));
    let Ok(over_3) = factor_multivariate(&q, 3, 24) else { return outcome(false, "kernel error over Q(zeta_3)") };
    let ok = factor_keys(&over_q.factors) == expected
        && oracle.as_ref() == Ok(&expected)
        && over_3.count() == 3
        && over_3.expand(2, 0) == q.embed(3);
    outcome(ok, format!("{} factors over Q, {} over Q(zeta_3)", over_q.count(), over_3.count()))
}

/// Per-variable exponent gcds, recomputed from the term list.
fn gcds(q: &LaurentPoly) -> Vec<i64> {
    (0..q.nvars())
        .map(|i| {
            let g = q.terms().keys().fold(0i64, |g, e| num_integer::gcd(g, e[i]));
            if g == 0 {
                1
            } else {
                g
            }
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let a = lp(2, &[(&[2, 1], 3), (&[0, 3], -5), (&[3, 0], 1)]);
    let b = lp(2, &[(&[2, 1], 3), (&[0, 3], -5), (&[4, 0], 1)]);
    let p = lp(2, &[(&[1, 1], 3), (&[0, 3], -5), (&[2, 0], 1)]);
    let (Ok((pa, da)), Ok((pb, db))) = (a.primary_decompose(), b.primary_decompose()) else {
        return outcome(false, "kernel error");
    };
    let ok = a.is_primary()
        && pa == a
        && da == vec![1, 1]
        && gcds(&a) == da
        && pb == p
        && db == vec![2, 1]
        && gcds(&b) == db
        && pb.power_substitute(&db) == b;
    outcome(ok, format!("d = {da:?} and d = {db:?}"))
}

fn criterion_3() -> Outcome {
    let inner = lp(2, &[(&[3, 9], 3), (&[2, 6], -2), (&[0, 0], 1)]);
    let q = inner.mul(&lp(2, &[(&[2, 1], 1)])).unwrap();
    let Ok(Some(w)) = q.essentially_one_variable() else { return outcome(false, "no witness") };
    let want: Vec<CoeffPoly> = [1, 0, -2, 3].iter().map(|&k| CoeffPoly::constant(CycloNumber::from_int(k, 1), 0)).collect();
    let ok = w.tau1 == vec![2, 1] && w.tau2 == vec![1, 3] && w.p == want;
    outcome(ok, format!("tau1 = {:?}, tau2 = {:?}", w.tau1, w.tau2))
}

fn normalized(src: &str) -> EPoly {
    ep(src).normalize().1
}

/// Multiplies the parts back with plain ring arithmetic.
fn expand(fac: &Factorization) -> EPoly {
    let (n, order) = (fac.nvars, fac.ambient_order);
    let mut acc = fac.unit.to_epoly(n, order);
    for (c, m) in &fac.classical {
        acc = acc.mul(&EPoly::from_coeff(c.clone(), order).pow(*m)).unwrap();
    }
    for b in &fac.simple_blocks {
        acc = acc.mul(&b.block).unwrap();
    }
    for (g, m) in &fac.nonsimple {
        acc = acc.mul(&g.pow(*m)).unwrap();
    }
    acc
}

fn criterion_4(records: &mut Vec<(PowerSearchRecord, u32)>) -> Outcome {
    let f = ep("E(4*x)+2*E(2*x)+1-E(2*x+2*y)");
    let Ok(fac) = factor_epoly(&f, &Config::default()) else { return outcome(false, "kernel error") };
    let mut got: Vec<EPoly> = fac.nonsimple.iter().map(|(g, _)| g.clone()).collect();
    let mut want = vec![normalized("E(2*x)+E(x+y)+1"), normalized("E(2*x)-E(x+y)+1")];
    got.sort_by_key(|g| format!("{:?}", g.terms()));
    want.sort_by_key(|g| format!("{:?}", g.terms()));
    let shape = fac.classical.is_empty()
        && fac.simple_blocks.is_empty()
        && fac.nonsimple.iter().all(|(_, m)| *m == 1)
        && got == want
        && verify_factorization(&f, &fac)
        && expand(&fac) == f.embed(fac.ambient_order);
    let Some(rec) = fac.power_searches.first() else { return outcome(false, "no power search recorded") };
    let r = &rec.result;
    let search = fac.power_searches.len() == 1
        && r.t_star == vec![2, 2]
        && r.q == 2
        && r.m == 2
        && r.t_star.iter().all(|&t| t <= r.m * r.m);
    // The oracle recomputes the whole table over the same box.
    let table = oracle_power_search(&rec.v, r.m * r.m);
    let oracle_ok = match &table {
        Ok(t) => best_tuple(t) == Some((r.t_star.clone(), r.q)),
        Err(_) => false,
    };
    records.extend(fac.power_searches.iter().map(|p| (p.clone(), fac.ambient_order)));
    outcome(
        shape && search && oracle_ok,
        format!("2 nonsimple factors, t* = {:?}, q = {}, M = {}, oracle table agrees: {oracle_ok}", r.t_star, r.q, r.m),
    )
}

fn single_block(src: &str) -> bool {
    let f = ep(src);
    let Ok(fac) = factor_epoly(&f, &Config::default()) else { return false };
    fac.classical.is_empty()
        && fac.nonsimple.is_empty()
        && fac.simple_blocks.len() == 1
        && fac.simple_blocks[0].block.normalize().1 == f.normalize().1
        && verify_factorization(&f, &fac)
}

fn criterion_5() -> Outcome {
    let a = single_block("E(2*x)-1");
    let b = single_block("E(3*x)-E(2*x)-E(x)+1");
    outcome(a && b, "E(2x)-1 and E(3x)-E(2x)-E(x)+1 each stay one block")
}

fn criterion_6(count: usize) -> Outcome {
    let mut bad = 0;
    for i in 0..count as u64 {
        let spec = |seed| RandomSpec {
            seed,
            max_height: 1 + (i % 2) as u32,
            max_support_dim: 1 + (i % 3) as usize,
            ambient_order: if i % 5 == 0 { 4 } else { 1 },
            ..RandomSpec::default()
        };
        // Factors are taken up to units: E(x)·E(-x) = 1 shows the
        // containment needs normalized g and h.
        let g = random_epoly(&spec(2 * i + 1_000)).normalize().1;
        let h = random_epoly(&spec(2 * i + 1_001)).normalize().1;
        let f = g.mul(&h).unwrap();
        let ours = support_within(&g, &f) && support_within(&h, &f);
        let theirs = supports_contained(&g.exponents(), &f.exponents())
            && supports_contained(&h.exponents(), &f.exponents());
        if !(ours && theirs) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/{count} products of normalized factors", count - bad))
}

/// Part-wise comparison up to units, using only public accessors.
fn same_parts(a: &Factorization, b: &Factorization) -> bool {
    let classical = |f: &Factorization| {
        let mut v: Vec<String> = f
            .classical
            .iter()
            .map(|(c, m)| {
                let lc = c.leading().unwrap().1.inv().unwrap();
                format!("{:?}^{m}", c.scale(&lc).terms())
            })
            .collect();
        v.sort();
        v
    };
    let blocks = |f: &Factorization| {
        let mut v: Vec<String> = f
            .simple_blocks
            .iter()
            .map(|b| format!("{:?}", b.block.normalize().1.terms()))
            .collect();
        v.sort();
        v
    };
    let nonsimple = |f: &Factorization| {
        let mut v: Vec<String> = f.nonsimple.iter().map(|(g, m)| format!("{:?}^{m}", g.normalize().1.terms())).collect();
        v.sort();
        v
    };
    a.ambient_order == b.ambient_order
        && classical(a) == classical(b)
        && blocks(a) == blocks(b)
        && nonsimple(a) == nonsimple(b)
}

struct Suite7 {
    outcome: Outcome,
    nonsimple: Vec<EPoly>,
}

fn criterion_7(count: usize, records: &mut Vec<(PowerSearchRecord, u32)>) -> Suite7 {
    let mut agree = 0;
    let mut failures = Vec::new();
    let mut nonsimple = Vec::new();
    let mut with_search = 0;
    for i in 0..count as u64 {
        let f = invariance_instance(i);
        let fwd = factor_epoly(&f, &Config { basis_order: BasisOrder::Forward, ..Config::default() });
        let rev = factor_epoly(&f, &Config { basis_order: BasisOrder::Reversed, ..Config::default() });
        match (fwd, rev) {
            (Ok(a), Ok(b)) => {
                let sound = verify_factorization(&f, &a) && verify_factorization(&f, &b);
                if sound && same_parts(&a, &b) {
                    agree += 1;
                } else if failures.len() < 3 {
                    failures.push(format!("seed {i}"));
                }
                if !a.power_searches.is_empty() {
                    with_search += 1;
                }
                for fac in [&a, &b] {
                    records.extend(fac.power_searches.iter().map(|p| (p.clone(), fac.ambient_order)));
                }
                nonsimple.extend(a.nonsimple.iter().map(|(g, _)| g.clone()));
            }
            (x, y) => {
                if failures.len() < 3 {
                    let err = x.err().or(y.err()).unwrap();
                    failures.push(format!("seed {i}: {err}"));
                }
            }
        }
    }
    let mut detail = format!("{agree}/{count} agree, {with_search} with a power search, {} nonsimple factors", nonsimple.len());
    if !failures.is_empty() {
        detail += &format!("; first failures: {}", failures.join(", "));
    }
    Suite7 { outcome: outcome(agree == count, detail), nonsimple }
}

fn criterion_8(count: usize) -> Outcome {
    let mut agree = 0;
    let mut failures = Vec::new();
    for i in 0..count as u64 {
        let q = differential_instance(i);
        let kernel = factor_multivariate(&q, 1, 6);
        let oracle = oracle_factor_bounded(&q, 6);
        let same = match (&kernel, &oracle) {
            (Ok(k), Ok(o)) => k.unit == o.unit && k.monomial == o.monomial && factor_keys(&k.factors) == factor_keys(&o.factors),
            _ => false,
        };
        if same {
            agree += 1;
        } else if failures.len() < 3 {
            failures.push(format!("seed {i}"));
        }
    }
    let mut detail = format!("{agree}/{count} agree");
    if !failures.is_empty() {
        detail += &format!("; first failures: {}", failures.join(", "));
    }
    outcome(agree == count, detail)
}

fn criterion_9(records: &[(PowerSearchRecord, u32)]) -> Outcome {
    let mut ok = 0;
    for (rec, order) in records {
        let recorded = rec.orbit_ok == Some(true);
        let fresh = orbit_check(&rec.v, &rec.result, *order, 24).unwrap_or(false);
        // The reported factors multiply back to V(y^t*), checked with the oracle's normal form.
        let mut prod = LaurentPoly::one(rec.v.nvars(), rec.v.nx(), *order);
        for f in &rec.result.factors {
            prod = prod.mul(f).unwrap();
        }
        let target = rec.v.power_substitute(&rec.result.t_star);
        let product_ok = associate_normal_form(&prod).ok() == associate_normal_form(&target).ok();
        if recorded && fresh && product_ok {
            ok += 1;
        }
    }
    outcome(ok == records.len() && !records.is_empty(), format!("{ok}/{} power searches", records.len()))
}

fn criterion_10(factors: &[EPoly]) -> Outcome {
    let mut ok = 0;
    for g in factors {
        let cfg = Config { ambient_order: g.order(), ..Config::default() };
        let same = match factor_epoly(g, &cfg) {
            Ok(fac) => {
                fac.classical.is_empty()
                    && fac.simple_blocks.is_empty()
                    && fac.nonsimple == vec![(g.clone(), 1)]
                    && fac.unit.scalar.is_one()
                    && fac.unit.exponent.is_zero()
            }
            Err(_) => false,
        };
        if same {
            ok += 1;
        }
    }
    outcome(ok == factors.len() && !factors.is_empty(), format!("{ok}/{} nonsimple factors unchanged", factors.len()))
}

fn budget_from_args() -> Option<usize> {
    let args: Vec<String> = std::env::args().collect();
    for (i, a) in args.iter().enumerate() {
        if let Some(v) = a.strip_prefix("--oracle-budget=") {
            return v.parse().ok();
        }
        if a == "--oracle-budget" {
            return args.get(i + 1).and_then(|v| v.parse().ok());
        }
    }
    None
}

fn main() {
    let budget = budget_from_args();
    let size = |full: usize| budget.map_or(full, |b| b.min(full));
    let mut records = Vec::new();
    let mut failed = 0;
    let mut report = |n: u32, title: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome, full: Option<usize>| {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if let Some(l) = limit {
            if took > l {
                out.ok = false;
                out.detail += &format!("; over the {l:?} limit");
            }
        }
        let reduced = match full {
            Some(f) if size(f) < f => format!(" [budget {} of {f}]", size(f)),
            _ => String::new(),
        };
        println!(
            "{} {n:>2}. {title}: {} ({:.2} s){reduced}",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
        if !out.ok {
            failed += 1;
        }
    };
    let secs = Duration::from_secs;
    let ms = Duration::from_millis;
    report(1, "x^3 - y^6 over Q and Q(zeta_3)", Some(secs(1)), &mut criterion_1, None);
    report(2, "primary decomposition", Some(ms(100)), &mut criterion_2, None);
    report(3, "essentially 1-variable witness", Some(ms(100)), &mut criterion_3, None);
    report(4, "running example end to end", Some(secs(5)), &mut || criterion_4(&mut records), None);
    report(5, "simple factors stay in blocks", Some(secs(1)), &mut criterion_5, None);
    report(6, "support containment of products", Some(secs(60)), &mut || criterion_6(size(500)), Some(500));
    let mut nonsimple = Vec::new();
    report(
        7,
        "basis scan order invariance",
        None,
        &mut || {
            let s = criterion_7(size(100), &mut records);
            nonsimple = s.nonsimple;
            s.outcome
        },
        Some(100),
    );
    report(8, "classical kernel against the oracle", Some(secs(600)), &mut || criterion_8(size(500)), Some(500));
    report(9, "orbit cross-check of every power search", None, &mut || criterion_9(&records), None);
    report(10, "nonsimple factors refactor to themselves", None, &mut || criterion_10(&nonsimple), None);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
