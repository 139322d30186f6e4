//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion.

mod common;

use std::process::ExitCode;

use common::*;
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqsubset::bounds::{self, BoundValue};
use seqsubset::channel::{apply_channel, pattern_bound, ErrorPattern};
use seqsubset::constructions::{
    construct1, construct2, construct3, construct4, construct4_prime, Indexing,
};
use seqsubset::distance::{
    bruteforce_distance, distance, injection_cost, seqsubset_distance, Side,
};
use seqsubset::{AlphabetParams, Code, DecodeOptions, Error, Pool, Sequence};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn random_sequence(rng: &mut ChaCha8Rng, p: AlphabetParams) -> Sequence {
    let symbols = (0..p.len()).map(|_| rng.random_range(0..p.q())).collect();
    Sequence::new(symbols, &p).unwrap()
}

fn random_set(rng: &mut ChaCha8Rng, p: AlphabetParams, max: usize) -> Pool {
    let space = p.space_size().unwrap() as usize;
    let size = rng.random_range(0..=max).min(space);
    let all = p.enumerate(1 << 24).unwrap();
    Pool::new(
        p,
        sample(rng, space, size).into_iter().map(|i| all[i].clone()),
    )
    .unwrap()
}

fn random_bag(rng: &mut ChaCha8Rng, p: AlphabetParams, max: usize) -> Pool {
    let size = rng.random_range(0..=max);
    Pool::new_multiset(
        p,
        (0..size)
            .map(|_| random_sequence(rng, p))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> AlphabetParams {
    params(rng.random_range(2..=4), rng.random_range(1..=6))
}

fn ac1() -> Outcome {
    let x1 = pool(2, &["1010", "0010", "1101"]);
    let x2 = pool(2, &["1101", "0011", "1011", "1100"]);
    let e1 = distance(&x1, &x2).map_err(|e| e.to_string())?;
    ensure!(e1 == 6, "four-sequence example gave {e1}");

    let x = pool(2, &["0011", "1010"]);
    let y = pool(2, &["0111", "1010", "1100"]);
    let ch = distance(&x, &y).unwrap();
    let pb = pattern_bound(&ErrorPattern::new(1, 0, 1), 4);
    ensure!(ch == 5 && pb == 5, "channel example gave {ch}, bound {pb}");

    let m1 = multiset(2, &["0101", "0101", "1011"]);
    let m2 = multiset(2, &["0111", "1101", "1001", "1001"]);
    let ms = distance(&m1, &m2).unwrap();
    ensure!(ms == 7, "multiset example gave {ms}");

    let c = three_codeword_code();
    let pairs: Vec<u64> = c
        .pairwise_distances()
        .unwrap()
        .into_iter()
        .map(|t| t.2)
        .collect();
    let min = c.min_distance().unwrap();
    ensure!(
        pairs == [6, 6, 4] && min == 4,
        "code pairs {pairs:?}, min {min}"
    );
    Ok(format!("6 / 5 (bound 5) / 7 / pairs {pairs:?}, min {min}"))
}

fn ac2() -> Outcome {
    let c = three_codeword_code();
    let a = c
        .decode(&pool(2, &["01101", "10001"]), DecodeOptions::default())
        .unwrap();
    ensure!(
        a.index == 0 && a.distance == 1 && !a.ambiguous,
        "two-read decode {a:?}"
    );
    let b = c
        .decode(&pool(2, &["01101"]), DecodeOptions::default())
        .unwrap();
    ensure!(
        b.index == 0 && b.distance == 6 && b.runner_up_distance == Some(7) && !b.ambiguous,
        "one-read decode {b:?}"
    );
    Ok("X1 at 1; X1 at 6 with runner-up 7".into())
}

fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC03);
    let mut checked = 0;
    for round in 0..1300 {
        let multi = round >= 1000;
        let p = random_params(&mut rng);
        let (a, b) = if multi {
            (random_bag(&mut rng, p, 5), random_bag(&mut rng, p, 5))
        } else {
            (random_set(&mut rng, p, 5), random_set(&mut rng, p, 5))
        };
        let fast = seqsubset_distance(&a, &b).unwrap();
        let brute = bruteforce_distance(&a, &b).unwrap();
        let oracle = oracle_distance(&raw(&a), &raw(&b), p.len());
        ensure!(
            fast == brute && fast.distance == oracle,
            "mismatch on {a} vs {b}: solver {fast:?}, brute force {brute:?}, oracle {oracle}"
        );
        let (dom, cod) = match fast.domain {
            Side::First => (&a, &b),
            Side::Second => (&b, &a),
        };
        ensure!(
            injection_cost(dom, cod, &fast.witness).unwrap() == fast.distance,
            "witness cost on {a} vs {b}"
        );
        checked += 1;
    }
    Ok(format!(
        "{checked} instances (1000 set, 300 multiset), 0 mismatches"
    ))
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC04);
    let d = |a: &Pool, b: &Pool| distance(a, b).unwrap();
    for i in 0..10_000 {
        let p = random_params(&mut rng);
        let multi = i % 5 == 4;
        let draw = |rng: &mut ChaCha8Rng| {
            if multi {
                random_bag(rng, p, 6)
            } else {
                random_set(rng, p, 6)
            }
        };
        let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let xy = d(&x, &y);
        ensure!(xy == d(&y, &x), "symmetry fails on {x}, {y}");
        ensure!((xy == 0) == (x == y), "identity fails on {x}, {y}");
        ensure!(
            xy <= d(&x, &z) + d(&z, &y),
            "triangle fails on {x}, {y}, {z}"
        );
    }
    for _ in 0..2000 {
        let p = random_params(&mut rng);
        let (x, y) = (random_set(&mut rng, p, 6), random_set(&mut rng, p, 6));
        let reduced = d(&x.difference(&y).unwrap(), &y.difference(&x).unwrap());
        ensure!(d(&x, &y) == reduced, "common members matter for {x}, {y}");
        let keep: Vec<Sequence> = y
            .members()
            .iter()
            .filter(|_| rng.random_bool(0.7))
            .cloned()
            .collect();
        let y_sub = Pool::new(p, keep).unwrap();
        if x.len() <= y_sub.len() {
            ensure!(
                d(&x, &y_sub) <= d(&x, &y),
                "subset monotonicity fails for {x}, {y_sub} within {y}"
            );
        }
    }
    Ok("10000 triples, 2000 pairs, 0 violations".into())
}

fn ac5() -> Outcome {
    let (big, mut cert) = construct1(16, 4, 16, None).map_err(|e| e.to_string())?;
    cert.verify(&big).map_err(|e| e.to_string())?;
    let pairs = big.pairwise_distances().unwrap();
    ensure!(big.len() == 8, "N = {}", big.len());
    ensure!(pairs.iter().all(|t| t.2 == 64), "pair distances {pairs:?}");
    // disjoint blocks: every cross pair differs in all four positions
    let cws: Vec<Vec<Vec<u16>>> = big.codewords().iter().map(raw).collect();
    for i in 0..cws.len() {
        for j in i + 1..cws.len() {
            let all_far = cws[i]
                .iter()
                .all(|a| cws[j].iter().all(|b| oracle_hamming(a, b) == 4));
            ensure!(all_far, "codewords {i} and {j} share a symbol block");
        }
    }

    let (small, mut cert) = construct1(4, 2, 4, None).map_err(|e| e.to_string())?;
    cert.verify(&small).map_err(|e| e.to_string())?;
    let cap = bounds::special_case_bound(4, 2, 4).unwrap();
    ensure!(
        small.len() == 2 && small.min_distance().unwrap() == 8,
        "small code {small:?}"
    );
    ensure!(BigUint::from(small.len()) == cap, "cap {cap} not met");
    Ok(format!("N=8 with 28 pairs at 64; N=2, d=8, cap {cap}"))
}

fn ac6() -> Outcome {
    let (c2, mut cert) = construct2(&g1_code(), &g2_code()).map_err(|e| e.to_string())?;
    let g2 = g2_code();
    let idx = |w: &str| {
        g2.codewords()
            .iter()
            .position(|x| x.to_string() == w)
            .unwrap()
    };
    let pair = distance(
        &c2.codewords()[idx("10011100")],
        &c2.codewords()[idx("11101110")],
    )
    .unwrap();
    cert.verify(&c2).map_err(|e| e.to_string())?;
    let min2 = c2.min_distance().unwrap();
    ensure!(pair == 12, "support construction pair distance {pair}");
    ensure!(
        min2 >= 4 && cert.claimed_min_distance == Some(4),
        "support construction min {min2}"
    );
    ensure!(
        min2 == oracle_min_distance(&c2),
        "oracle disagrees on the support construction"
    );

    let inner = conv(2, &["0000", "0101", "1010", "1111"]);
    let (c3, mut cert) =
        construct3(&g1_code(), &inner, &Indexing::Canonical).map_err(|e| e.to_string())?;
    let pair3 = distance(&c3.codewords()[0], &c3.codewords()[1]).unwrap();
    cert.verify(&c3).map_err(|e| e.to_string())?;
    let min3 = c3.min_distance().unwrap();
    ensure!(pair3 == 6, "index-symbol pair distance {pair3}");
    ensure!(
        min3 >= 4 && cert.claimed_min_distance == Some(4),
        "index-symbol min {min3}"
    );
    ensure!(
        min3 == oracle_min_distance(&c3),
        "oracle disagrees on the index-symbol construction"
    );
    Ok(format!("pair 12, min {min2} >= 4; pair 6, min {min3} >= 4"))
}

fn sequence_index_inputs() -> (
    seqsubset::conventional::ConventionalCode,
    seqsubset::conventional::ConventionalCode,
) {
    (
        conv(2, &["0000", "1111"]),
        conv(2, &["00000000", "11111000", "01010111"]),
    )
}

fn ac7() -> Outcome {
    let (s, u) = sequence_index_inputs();
    let (c4, mut cert) = construct4(&s, &u).map_err(|e| e.to_string())?;
    cert.verify(&c4).map_err(|e| e.to_string())?;
    let min4 = c4.min_distance().unwrap();
    ensure!(
        min4 == 5 && oracle_min_distance(&c4) == 5,
        "sequence-index min {min4}"
    );

    let (c4p, mut cert) = construct4_prime(&s, &u, 2).map_err(|e| e.to_string())?;
    cert.verify(&c4p).map_err(|e| e.to_string())?;
    let min4p = c4p.min_distance().unwrap();
    ensure!(c4p.len() == 9, "folded code has {} codewords", c4p.len());
    ensure!(
        min4p == 5 && oracle_min_distance(&c4p) == 5,
        "folded min {min4p}"
    );
    Ok(format!("min {min4}; 9 codewords with min {min4p}"))
}

fn round_trips(
    code: &Code,
    patterns: &[ErrorPattern],
    trials: u64,
    seed: u64,
) -> Result<u64, String> {
    let mut runs = 0;
    for (pi, p) in patterns.iter().enumerate() {
        for t in 0..trials {
            let i = (t as usize + pi) % code.len();
            let x = &code.codewords()[i];
            let s = seed ^ (pi as u64) << 32 ^ t;
            let tr = match apply_channel(x, p, s) {
                Ok(tr) => tr,
                Err(e) => return Err(format!("channel failed on pattern {p:?}: {e}")),
            };
            let out = code.decode(&tr.output, DecodeOptions::default()).unwrap();
            ensure!(
                out.index == i && !out.ambiguous,
                "pattern {p:?} seed {s}: sent {i}, decoded {} (ambiguous {})",
                out.index,
                out.ambiguous
            );
            runs += 1;
        }
    }
    Ok(runs)
}

fn admissible(len: usize, radius: u64, max_members: u64) -> Vec<ErrorPattern> {
    let mut out = Vec::new();
    for n_i in 0..=radius {
        for n_d in 0..=radius.min(max_members) {
            for n_s in 0..=radius {
                let p = ErrorPattern::new(n_i, n_d, n_s);
                if p.bound(len) <= radius {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn ac8() -> Outcome {
    let small = three_codeword_code();
    let r_small = small.correction_radius().unwrap();
    let p_small = admissible(5, r_small, 2);
    let mut runs = round_trips(&small, &p_small, 100, 0xAC08)?;

    let mut kinds = [false; 3];
    for (q, len, m) in [(6u32, 2usize, 4usize), (4, 3, 8)] {
        let (c1, _) = construct1(q, len, m, None).unwrap();
        let r = c1.correction_radius().unwrap();
        ensure!(r >= len as u64, "radius {r} below L = {len}");
        let ps = admissible(len, r, m as u64);
        for p in &ps {
            kinds[0] |= p.n_s > 0 && p.n_i == 0 && p.n_d == 0;
            kinds[1] |= p.n_d > 0 && p.n_i == 0 && p.n_s == 0;
            kinds[2] |= p.n_i > 0 && p.n_d == 0 && p.n_s == 0;
        }
        runs += round_trips(&c1, &ps, 100, 0xAC08 + q as u64)?;
    }
    ensure!(kinds.iter().all(|&k| k), "pattern kinds covered {kinds:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(0xAC18);
    let mut transcripts = 0;
    let mut skipped = 0;
    while transcripts < 1000 {
        let q = if rng.random_bool(0.5) { 2 } else { 4 };
        let len = rng.random_range(4..=8);
        let p = params(q, len);
        let mut input = random_set(&mut rng, p, 10);
        while input.len() < 2 {
            input = random_set(&mut rng, p, 10);
        }
        let n = input.len() as u64;
        let n_d = rng.random_range(0..=n);
        let pattern = ErrorPattern::new(
            rng.random_range(0..=3),
            n_d,
            rng.random_range(0..=(n - n_d) * len as u64),
        );
        match apply_channel(&input, &pattern, rng.random()) {
            Ok(t) => {
                let (d, bound) = t.distance_and_bound().unwrap();
                ensure!(d <= bound, "bound violated: {d} > {bound} on {t:?}");
                ensure!(t.is_consistent(), "inconsistent transcript {t:?}");
                transcripts += 1;
            }
            Err(Error::Infeasible(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "{runs} round trips exact, 0 ambiguous; {transcripts} transcripts within bound ({skipped} infeasible draws redrawn)"
    ))
}

fn constructed_codes() -> Vec<(&'static str, Code)> {
    let (s, u) = sequence_index_inputs();
    vec![
        ("c1(16,4,16)", construct1(16, 4, 16, None).unwrap().0),
        ("c1(4,2,4)", construct1(4, 2, 4, None).unwrap().0),
        ("c1(6,2,4)", construct1(6, 2, 4, None).unwrap().0),
        ("c2", construct2(&g1_code(), &g2_code()).unwrap().0),
        (
            "c3",
            construct3(
                &g1_code(),
                &conv(2, &["0000", "0101", "1010", "1111"]),
                &Indexing::Canonical,
            )
            .unwrap()
            .0,
        ),
        ("c4", construct4(&s, &u).unwrap().0),
        ("c4p", construct4_prime(&s, &u, 2).unwrap().0),
    ]
}

fn ac9() -> Outcome {
    for q in 2..=12u32 {
        for len in 1..=6usize {
            for m in 1..=10u64 {
                let v = bounds::plotkin_like_bound(q, len, m, len as u64 * m).unwrap();
                ensure!(
                    v == BigUint::from(q),
                    "Plotkin-type bound at d = LM is {v} for q={q}, L={len}, M={m}"
                );
                let s = bounds::singleton_like_bound(q, len, m, len as u64 * m);
                if BigUint::from(q).pow(len as u32) >= BigUint::from(m) {
                    let s = s.unwrap();
                    let sp = bounds::special_case_bound(q, len, m).unwrap();
                    ensure!(
                        s == sp,
                        "Singleton-type {s} vs special {sp} at q={q}, L={len}, M0={m}"
                    );
                }
            }
        }
    }
    let hand = bounds::singleton_like_bound(2, 4, 3, 7).unwrap();
    ensure!(
        hand == BigUint::from(12u32),
        "singleton_like_bound(2,4,3,7) = {hand}"
    );

    let mut checked = 0;
    let mut red_checked = 0;
    for (name, code) in constructed_codes() {
        if !code.is_constant_size() {
            continue;
        }
        let check = bounds::check_code_against_bounds(&code).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            check.contradictions.is_empty(),
            "{name}: {:?}",
            check.contradictions
        );
        checked += 1;
        let p = code.params();
        let actual: f64 = code.redundancy();
        let reports = bounds::redundancy_lower_bounds(
            p.q(),
            p.len(),
            code.max_size() as u64,
            check.min_distance,
        )
        .map_err(|e| format!("{name}: {e}"))?;
        for r in reports {
            if let Some(BoundValue::Real(b)) = r.value() {
                let within = *b <= actual + 1e-9;
                ensure!(
                    within,
                    "{name}: {} bound {b} exceeds redundancy {actual}",
                    r.kind
                );
                red_checked += 1;
            }
        }
    }
    Ok(format!(
        "Plotkin-type = q on 660 points; singleton(2,4,3,7) = 12; {checked} constant-size codes, 0 contradictions, {red_checked} redundancy bounds respected"
    ))
}

fn ac10() -> Outcome {
    let mut codes = vec![three_codeword_code()];
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC10);
    while codes.len() < 4 {
        let len = rng.random_range(2..=4);
        let p = params(2, len);
        let n = rng.random_range(2..=4);
        let cws: Vec<Pool> = (0..n).map(|_| random_set(&mut rng, p, 4)).collect();
        if let Ok(c) = Code::new(p, cws) {
            codes.push(c);
        }
    }
    let mut seen = Vec::new();
    for c in &codes {
        let d = c.min_distance().unwrap();
        let dc = c.complement_code().unwrap().min_distance().unwrap();
        ensure!(d == dc, "complement min distance {dc} vs {d} for {c:?}");
        seen.push(d);
    }
    Ok(format!("min distances {seen:?} preserved"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "golden distances", ac1),
        ("AC2", "decoder goldens", ac2),
        ("AC3", "solver equals exhaustive injections", ac3),
        (
            "AC4",
            "metric axioms, disjointification, subset monotonicity",
            ac4,
        ),
        ("AC5", "disjoint-alphabet construction meets the cap", ac5),
        ("AC6", "support and index-symbol constructions", ac6),
        ("AC7", "sequence-index constructions", ac7),
        ("AC8", "channel round trips and pattern bound", ac8),
        ("AC9", "bounds", ac9),
        ("AC10", "complement symmetry", ac10),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
