//! Acceptance gate: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use qlp_core::feasibility::{eligible_half_pairs, eligible_quarter_pairs, FeasiblePsdPair};
use qlp_core::numtheory::{admissible_residues, check_norm_condition, factorize};
use qlp_core::pairs::explicit_pairs;
use qlp_core::quat::{paf, GaussInt, QuatSeq, Unit4};
use qlp_core::search::{
    brute_force_search, expand_pair, filter_t1, filter_t2, filter_t3, jp30_pair, run_search,
    side_cascade, verify_pair, SearchConfig, Side,
};

const QLP: &str = env!("CARGO_BIN_EXE_qlp");

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn values(pairs: &[FeasiblePsdPair]) -> Vec<(u64, u64)> {
    pairs.iter().map(|p| (p.value_a, p.value_b)).collect()
}

fn explicit_pair_verification() -> Check {
    let start = Instant::now();
    let mut pairs = explicit_pairs();
    ensure(pairs.len() == 6, "expected six bundled pairs")?;
    pairs.push(jp30_pair());
    for (a, b) in &pairs {
        let d = verify_pair(a, b).map_err(|e| e.to_string())?;
        ensure(d.holds, format!("length {} pair fails: {d}", a.len()))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} pairs verified in {:?}", pairs.len(), start.elapsed()))
}

fn feasible_lists() -> Check {
    let half: [(usize, &[(u64, u64)]); 5] = [
        (6, &[(4, 10)]),
        (28, &[(0, 58), (32, 26)]),
        (30, &[(4, 58), (36, 26), (52, 10)]),
        (32, &[(16, 50), (32, 34), (64, 2)]),
        (34, &[(20, 50), (36, 34), (52, 18), (68, 2)]),
    ];
    for (len, want) in half {
        let got = values(&eligible_half_pairs(len).map_err(|e| e.to_string())?);
        ensure(got == want, format!("half l={len}: {got:?}"))?;
    }
    let quarter: [(usize, &[(u64, u64)]); 2] = [
        (28, &[(0, 58), (8, 50), (32, 26), (40, 18)]),
        (32, &[(8, 58), (16, 50), (32, 34), (40, 26), (64, 2)]),
    ];
    for (len, want) in quarter {
        let got = values(&eligible_quarter_pairs(len).map_err(|e| e.to_string())?);
        ensure(got == want, format!("quarter l={len}: {got:?}"))?;
    }
    Ok("all lists exact".into())
}

fn all_sequences(len: usize) -> impl Iterator<Item = QuatSeq> {
    (0..1u32 << (2 * len)).map(move |code| {
        let e: Vec<u8> = (0..len).map(|j| ((code >> (2 * j)) & 3) as u8).collect();
        QuatSeq::from_exponents(&e).unwrap()
    })
}

fn length_six_cascade() -> Check {
    let start = Instant::now();
    let c = side_cascade(6, Side::B, Some(Unit4::ONE)).map_err(|e| e.to_string())?;
    let counts = (c.balanced, c.forced_half, c.t1, c.t3);
    ensure(counts == (100, 36, 20, 4), format!("B cascade {counts:?}"))?;
    let g = |re| GaussInt::new(re, 0);
    for b in &c.survivors {
        let p: Vec<GaussInt> = (1..=3).map(|s| paf(b, s).unwrap()).collect();
        ensure(p == [g(0), g(0), g(-4)], format!("{b} has PAF {p:?}"))?;
    }
    let a_count = all_sequences(6)
        .filter(|a| a.as_slice()[0] == Unit4::ONE)
        .filter(|a| (1..=3).map(|s| paf(a, s).unwrap()).eq([g(-2), g(-2), g(2)]))
        .count();
    ensure(a_count == 12, format!("A count {a_count}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("100/36/20/4 and 12 in {:?}", start.elapsed()))
}

fn length_28_norms() -> Check {
    let start = Instant::now();
    let (a, b) = explicit_pairs().into_iter().find(|(a, _)| a.len() == 28).ok_or("no length-28 pair")?;
    let mut products = Vec::new();
    for seq in [&a, &b] {
        let out = Command::new(QLP)
            .args(["norms", "--length", "28", "--seq", &seq.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("norms exited {}", out.status))?;
        for line in String::from_utf8_lossy(&out.stdout).lines() {
            if line.contains(" n=28 own ") {
                let value = line.split("value=").nth(1).ok_or("missing value")?;
                let (value, rest) = value.split_once(" = ").ok_or("missing factorization")?;
                let factors = rest.split(" squarefree=").next().unwrap().to_string();
                let sqf: u128 = rest
                    .split("squarefree=")
                    .nth(1)
                    .and_then(|t| t.split_whitespace().next())
                    .and_then(|t| t.parse().ok())
                    .ok_or("missing squarefree part")?;
                for p in factorize(sqf).primes() {
                    ensure(p % 28 == 1, format!("square-free prime {p} is not 1 mod 28"))?;
                }
                products.push(format!("{value}={factors}"));
            }
        }
    }
    let want = [
        "164204096=2^6 * 7^2 * 52361",
        "340963904=2^6 * 29 * 183709",
        "120847168=2^6 * 13^2 * 11173",
        "288564032=2^6 * 113 * 39901",
        "315341888=2^6 * 1933 * 2549",
        "20892992=2^6 * 29 * 11257",
        "510607168=2^6 * 7978237",
        "36675136=2^6 * 757^2",
    ];
    ensure(products == want, format!("products {products:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("eight products exact in {:?}", start.elapsed()))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn closed_forms() -> Check {
    let forms: [(u64, u64, &[u64], &[u64]); 5] = [
        (12, 12, &[1], &[]),
        (20, 20, &[1], &[5]),
        (28, 28, &[1, 9, 25], &[2]),
        (60, 60, &[1], &[]),
        (68, 68, &[1], &[17]),
    ];
    for (n, modulus, classes, exceptional) in forms {
        let r = admissible_residues(n, 10_000).map_err(|e| e.to_string())?;
        ensure(
            r.modulus == modulus && r.classes == classes && r.exceptional == exceptional,
            format!("n={n}: {r}"),
        )?;
        for p in (2..10_000).filter(|&p| is_prime(p)) {
            let direct = check_norm_condition(p as u128, n).map_err(|e| e.to_string())?.holds;
            ensure(direct == r.admits(p), format!("n={n} disagrees at p={p}"))?;
        }
    }
    Ok("closed forms agree for all primes below 10^4".into())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for len in [2, 4, 6] {
        let oracle: BTreeSet<_> = brute_force_search(len).map_err(|e| e.to_string())?.into_iter().collect();
        for (a, b) in &oracle {
            let safe = filter_t1(a) && filter_t1(b) && filter_t2(a, Side::A) && filter_t2(b, Side::B)
                && filter_t3(a) && filter_t3(b);
            ensure(safe, format!("a filter rejects oracle pair {a} {b}"))?;
        }
        let mut found = BTreeSet::new();
        for half in eligible_half_pairs(len).map_err(|e| e.to_string())? {
            let config = SearchConfig::new(len, half.value_a).map_err(|e| e.to_string())?;
            for (a, b) in run_search(&config).map_err(|e| e.to_string())?.pairs {
                found.extend(expand_pair(&a, &b));
            }
        }
        ensure(found == oracle, format!("l={len}: search {} vs oracle {}", found.len(), oracle.len()))?;
        sizes.push(format!("l={len}:{}", oracle.len()));
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} in {:?}", sizes.join(" "), start.elapsed()))
}

fn search_capability() -> Check {
    let mut times = Vec::new();
    for len in (2..=16).step_by(2) {
        let start = Instant::now();
        let out = Command::new(QLP)
            .args(["search", "--length", &len.to_string(), "--limit", "1"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("l={len} exited {}", out.status))?;
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        let pairs = qlp_core::pairs::parse_pairs(&text).map_err(|e| e.to_string())?;
        ensure(pairs.len() == 1, format!("l={len}: {} pairs", pairs.len()))?;
        let (a, b) = &pairs[0];
        ensure(verify_pair(a, b).map(|d| d.holds).unwrap_or(false), format!("l={len}: bad pair"))?;
        within(start, Duration::from_secs(600))?;
        times.push(format!("{len}:{:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(times.join(" "))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 explicit pairs verify", explicit_pair_verification),
        ("2 eligible lists", feasible_lists),
        ("3 length-6 cascade counts", length_six_cascade),
        ("4 length-28 norm products", length_28_norms),
        ("5 closed-form admissibility", closed_forms),
        ("6 oracle equivalence", oracle_equivalence),
        ("7 search --limit 1 up to length 16", search_capability),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "SKIP criterion 8 out of scope: exhaustive length-28 totals and raw candidate counts \
         (covered by the invariant suites)"
    );
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
