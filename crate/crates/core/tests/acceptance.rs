//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mptq::fixtures;
use mptq::search::{
    certify_sequence, density_estimate, excluded_primes, exhaustive_search,
    explore_multiplier_space, fibonacci_powers_of_two, prime_subset_audit, signed_fibonacci_powers,
    SearchMode, SearchOptions,
};
use mptq::setops::{
    adjoin_analysis, classify, product_identity, quotient_identity, trivial_bounds,
    ClassificationReport,
};
use mptq::transforms::{base_expansion, geometric_set, log_power, mptq_family, prime_switch};
use mptq::{FactoredNonzero, MultiplicativeSet, Verdict};
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sizes(r: &ClassificationReport) -> (usize, usize) {
    match (
        r.product_size,
        r.quotient_size,
        r.sum_size,
        r.difference_size,
    ) {
        (Some(p), Some(q), _, _) => (p, q),
        (_, _, Some(s), Some(d)) => (s, d),
        _ => unreachable!(),
    }
}

fn n(text: &str) -> FactoredNonzero {
    text.parse().unwrap()
}

fn conway_classifies() -> Outcome {
    let conway = fixtures::conway();
    let report = classify(&conway).map_err(|e| e.to_string())?;
    ensure!(sizes(&report) == (26, 25), "sizes {:?}", sizes(&report));
    ensure!(
        report.verdict == Verdict::Mstd,
        "verdict {}",
        report.verdict
    );
    let mut best = Duration::MAX;
    for _ in 0..20 {
        let t = Instant::now();
        let _ = classify(&conway);
        best = best.min(t.elapsed());
    }
    ensure!(best < Duration::from_millis(1), "took {best:?}");
    Ok(format!("26/25 MSTD in {best:?}"))
}

fn worked_example() -> Outcome {
    let a = fixtures::worked();
    let report = classify(&a).map_err(|e| e.to_string())?;
    ensure!(sizes(&report) == (12, 13), "sizes {:?}", sizes(&report));
    let q = quotient_identity(&a).map_err(|e| e.to_string())?;
    let p = product_identity(&a).map_err(|e| e.to_string())?;
    ensure!(
        q.lhs == Ratio::from_integer(4) && q.holds(),
        "quotient identity {q:?}"
    );
    ensure!(
        p.lhs == Ratio::from_integer(3) && p.holds(),
        "product identity {p:?}"
    );
    Ok("12/13; identities 4 = 4 and 3 = 3".into())
}

fn grid_sets_and_prime_switch() -> Outcome {
    for (i, set) in fixtures::grid_sets().iter().enumerate() {
        let r = classify(set).map_err(|e| e.to_string())?;
        ensure!(r.is_mptq(), "grid set {} is {}", i + 1, r.verdict);
    }
    let switched = prime_switch(&fixtures::s2(), 2, 5).map_err(|e| e.to_string())?;
    ensure!(switched == fixtures::s3(), "switch gave {:?}", switched);
    ensure!(
        classify(&switched).unwrap().is_mptq(),
        "switched set not MPTQ"
    );
    Ok("5 grid sets MPTQ; (2,5)-switch of S2 = S3, MPTQ".into())
}

fn exponential_of_conway() -> Outcome {
    let s4 = fixtures::s4();
    let r = classify(&s4).map_err(|e| e.to_string())?;
    ensure!(r.is_mptq(), "S4 is {}", r.verdict);
    let back = log_power(&s4, &n("2")).map_err(|e| e.to_string())?;
    ensure!(back == fixtures::conway(), "log_2 S4 = {:?}", back);
    Ok(format!("S4 MPTQ {:?}; log_2 S4 = Conway", sizes(&r)))
}

fn exhaustive_thirty() -> Outcome {
    let t = Instant::now();
    let options = SearchOptions {
        workers: Some(8),
        ..Default::default()
    };
    let report = exhaustive_search(30, &options).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure!(report.is_complete(), "status {:?}", report.status);
    ensure!(
        report.subsets_examined == 1 << 26,
        "examined {}",
        report.subsets_examined
    );
    ensure!(
        report.expanded_total == 0,
        "expanded_total {}",
        report.expanded_total
    );
    ensure!(elapsed < Duration::from_secs(15 * 60), "took {elapsed:?}");
    ensure!(
        excluded_primes(36) == [19, 23, 29, 31],
        "excluded primes for 36"
    );
    Ok(format!(
        "2^26 subsets, expanded_total 0, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn mstd_fifteen() -> Outcome {
    let t = Instant::now();
    let options = SearchOptions {
        mode: SearchMode::Mstd,
        ..Default::default()
    };
    let report = exhaustive_search(15, &options).map_err(|e| e.to_string())?;
    ensure!(report.found_count >= 1, "no MSTD subset of {{1..15}}");
    // {1..15} is a translate of {0..14}; translation preserves both sizes.
    let small = SearchOptions {
        mode: SearchMode::Mstd,
        max_size: Some(7),
        ..Default::default()
    };
    let small = exhaustive_search(15, &small).map_err(|e| e.to_string())?;
    ensure!(
        small.found_count == 0,
        "{} MSTD subsets below size 8",
        small.found_count
    );
    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    let smallest = report.found.iter().map(|f| f.elements.len()).min().unwrap();
    Ok(format!(
        "{} MSTD sets, smallest has {smallest} elements",
        report.found_count
    ))
}

fn excluded_prime_adjoin_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let universe_max = 36;
    let excluded = excluded_primes(universe_max);
    let values: Vec<i64> = (1..=universe_max)
        .filter(|v| !excluded.contains(v))
        .map(|v| v as i64)
        .collect();
    let mut trials = 0;
    while trials < 10_000 {
        let density = rng.gen_range(0.05..0.95);
        let subset: Vec<i64> = values
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(density))
            .collect();
        if subset.is_empty() {
            continue;
        }
        let a = MultiplicativeSet::from_integers(subset).unwrap();
        let p = FactoredNonzero::from_u64(excluded[rng.gen_range(0..excluded.len())]).unwrap();
        let counts = adjoin_analysis(&a, &p).map_err(|e| e.to_string())?.counts();
        ensure!(
            counts == (a.len() + 1, 2 * a.len()),
            "A = {:?}, p = {p}: {counts:?}",
            a
        );
        trials += 1;
    }
    Ok(format!("{trials} samples, 0 exceptions"))
}

fn geometric_adjoin_law() -> Outcome {
    let mut cases = 0;
    for base in ["2", "-2", "3", "-3", "3/2", "5/2"] {
        let r = n(base);
        for len in 2..=8usize {
            let g = geometric_set(len, &r).map_err(|e| e.to_string())?;
            for k in 1..len {
                let x = r.pow((len - 1 + k) as i64).unwrap();
                let counts = adjoin_analysis(&g, &x).map_err(|e| e.to_string())?.counts();
                ensure!(
                    counts == (k + 1, 2 * k),
                    "r={base} n={len} k={k}: {counts:?}"
                );
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn random_mixed_set(rng: &mut ChaCha8Rng) -> MultiplicativeSet {
    let size = rng.gen_range(1..=10);
    let mut set = MultiplicativeSet::new();
    while set.len() < size {
        let pairs = [
            (2, rng.gen_range(-3..=3)),
            (3, rng.gen_range(-2..=2)),
            (5, rng.gen_range(-1..=1)),
        ];
        let x = FactoredNonzero::from_parts(
            rng.gen_bool(0.5),
            pairs.into_iter().filter(|&(_, e)| e != 0),
        )
        .unwrap();
        set.insert(x);
    }
    set
}

fn bounds_identities_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let a = random_mixed_set(&mut rng);
        let r = classify(&a).map_err(|e| e.to_string())?;
        let (p, q) = sizes(&r);
        let (p_max, q_max) = trivial_bounds(a.len());
        ensure!(
            p as u64 <= p_max && q as u64 <= q_max,
            "bounds fail on {:?}",
            a
        );
        ensure!(
            product_identity(&a).unwrap().holds(),
            "product identity fails on {:?}",
            a
        );
        ensure!(
            quotient_identity(&a).unwrap().holds(),
            "quotient identity fails on {:?}",
            a
        );
        let c = random_mixed_set(&mut rng).first().unwrap().clone();
        let sym = a.union(&a.reflect(&c));
        let v = classify(&sym).unwrap().verdict;
        ensure!(v == Verdict::Balanced, "a/A ∪ A is {v} for {:?}", a);
    }
    Ok("10000 random sets".into())
}

fn minimal_cardinality() -> Outcome {
    let t = Instant::now();
    let mixed: Vec<FactoredNonzero> = [
        "-1", "2", "-2", "3", "-3", "3/2", "-3/2", "5/2", "-5/2", "4", "-4",
    ]
    .map(n)
    .to_vec();
    let positive: Vec<FactoredNonzero> = ["2", "3", "4", "5", "3/2", "4/3", "5/2", "5/3"]
        .map(n)
        .to_vec();
    let mut examined = 0;
    for size in 1..=4 {
        let r = explore_multiplier_space(size, &mixed, &FactoredNonzero::ONE)
            .map_err(|e| e.to_string())?;
        ensure!(r.found.is_empty(), "size {size} mixed-sign: {:?}", r.found);
        examined += r.sequences_examined;
    }
    for size in 1..=7 {
        let r = explore_multiplier_space(size, &positive, &FactoredNonzero::ONE)
            .map_err(|e| e.to_string())?;
        ensure!(r.found.is_empty(), "size {size} positive: {:?}", r.found);
        examined += r.sequences_examined;
    }
    let s4 = fixtures::s4();
    ensure!(classify(&s4).unwrap().is_mptq(), "S4 not MPTQ");
    let ratios = ["2", "4", "8", "16"].map(n).to_vec();
    let r =
        explore_multiplier_space(8, &ratios, &FactoredNonzero::ONE).map_err(|e| e.to_string())?;
    ensure!(r.found.contains(&s4), "size 8 exploration missed S4");
    Ok(format!(
        "{examined} sequences, none MPTQ; S4 found at size 8 ({:.1}s)",
        t.elapsed().as_secs_f64()
    ))
}

fn prime_audit() -> Outcome {
    let audit = prime_subset_audit(12, None).map_err(|e| e.to_string())?;
    ensure!(
        audit.subsets_examined == 4096,
        "examined {}",
        audit.subsets_examined
    );
    ensure!(
        audit.mptq_found.is_empty(),
        "MPTQ subsets {:?}",
        audit.mptq_found
    );
    ensure!(
        audit.step_violations.is_empty(),
        "step violations {:?}",
        audit.step_violations
    );
    for c in &audit.lattice {
        ensure!(!c.mstd, "lattice n={} is MSTD", c.n);
        ensure!(
            (c.sum_size, c.difference_size) == (c.n * (c.n + 1) / 2, c.n * (c.n - 1) + 1),
            "lattice n={} sizes {}/{}",
            c.n,
            c.sum_size,
            c.difference_size
        );
    }
    Ok("4096 subsets, 0 MPTQ; basis sets n <= 12 not MSTD".into())
}

fn brute_force_mptq_free(prefix: &[FactoredNonzero], max_size: usize) -> Result<u64, String> {
    let mut checked = 0;
    for mask in 1u32..1 << prefix.len() {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let set = MultiplicativeSet::from_elements(
            (0..prefix.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| prefix[i].clone()),
        );
        ensure!(!classify(&set).unwrap().is_mptq(), "MPTQ subset {:?}", set);
        checked += 1;
    }
    Ok(checked)
}

fn sequence_certificates() -> Outcome {
    let fib2 = fibonacci_powers_of_two(12).map_err(|e| e.to_string())?;
    let cert = certify_sequence(&fib2, 3).map_err(|e| e.to_string())?;
    ensure!(cert.is_certified(), "fib2: {:?}", cert.verdict);
    let signed = signed_fibonacci_powers(10, 1).map_err(|e| e.to_string())?;
    ensure!(
        signed.iter().any(|x| x.is_negative()),
        "no negative term drawn"
    );
    let cert = certify_sequence(&signed, 2).map_err(|e| e.to_string())?;
    ensure!(cert.is_certified(), "signed powers: {:?}", cert.verdict);
    let a = brute_force_mptq_free(&fib2, 7)?;
    let b = brute_force_mptq_free(&signed, 7)?;
    Ok(format!(
        "both certified; {a} + {b} subsets of size <= 7 checked"
    ))
}

fn base_expansion_law() -> Outcome {
    let expanded =
        base_expansion(&fixtures::conway(), 2, &BigInt::from(29)).map_err(|e| e.to_string())?;
    let r = classify(&expanded).map_err(|e| e.to_string())?;
    ensure!(
        expanded.len() == 64 && sizes(&r) == (676, 625),
        "{} / {:?}",
        expanded.len(),
        sizes(&r)
    );
    let family = mptq_family(&fixtures::s4(), &[2]).map_err(|e| e.to_string())?;
    let f = classify(&family[0]).map_err(|e| e.to_string())?;
    ensure!(
        family[0].len() == 64 && f.is_mptq(),
        "family set {} elements, {}",
        family[0].len(),
        f.verdict
    );
    Ok("64 / 676 / 625; family(S4, 2) is a 64-element MPTQ set".into())
}

fn density() -> Outcome {
    let small = density_estimate(36, 10_000, 2024).map_err(|e| e.to_string())?;
    ensure!(
        small.mptq_hits() == 0,
        "n=36: {} MPTQ hits",
        small.mptq_hits()
    );
    let again = density_estimate(36, 10_000, 2024).map_err(|e| e.to_string())?;
    ensure!(small == again, "n=36 not deterministic");
    let large = density_estimate(60, 100_000, 2024).map_err(|e| e.to_string())?;
    ensure!(large.mstd_hits() > 0, "n=60: no MSTD hits");
    ensure!(
        large.mptq_hits() <= large.mstd_hits(),
        "n=60: {} MPTQ vs {} MSTD",
        large.mptq_hits(),
        large.mstd_hits()
    );
    Ok(format!(
        "n=36: 0 MPTQ; n=60: {} MPTQ, {} MSTD of 100000; repeatable",
        large.mptq_hits(),
        large.mstd_hits()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("Conway set classification", conway_classifies),
        ("worked example and multiplicity identities", worked_example),
        ("grid sets and prime switch", grid_sets_and_prime_switch),
        ("exponential of the Conway set", exponential_of_conway),
        ("exhaustive MPTQ search, N = 30", exhaustive_thirty),
        ("exhaustive MSTD search, N = 15", mstd_fifteen),
        ("excluded-prime adjoin law", excluded_prime_adjoin_law),
        ("geometric adjoin law", geometric_adjoin_law),
        (
            "bounds, identities, symmetric sets",
            bounds_identities_symmetry,
        ),
        ("minimal-cardinality probes", minimal_cardinality),
        ("prime audit", prime_audit),
        ("sequence certificates", sequence_certificates),
        ("base-expansion law", base_expansion_law),
        ("density estimates", density),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
