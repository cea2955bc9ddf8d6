//! Acceptance suite. Runs without the libtest harness so that one line per
//! criterion is always printed; exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use plactrop::identity::{
    falsify, sample_check, verify_witness, Certificate, Identity, IdentityWitness, Plactic,
    SampleOutcome, SearchBudget, UpperTriangular,
};
use plactrop::representation::{
    block_leq, check_abcd, decode_triangular, imentries_formula, max_readable, represent_singleton,
    Representation,
};
use plactrop::subset::{block_chain_length, chain_length_bound};
use plactrop::{Label, Subset, Tableau, Trop, TropMatrix, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, u64, Box<dyn FnOnce() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(tag);
    r
}

fn set(n: usize, xs: &[usize]) -> Subset {
    Subset::new(n, xs).unwrap()
}

// Published image of the generator 3 in rank 4, one diagonal block at a
// time; `.` is -inf. The last cell of the third block is printed as 0.
const PRINTED_BLOCKS: [&[&str]; 5] = [
    &["1"],
    &["1 1 1 1", ". 0 1 1", ". . 1 1", ". . . 1"],
    &[
        "0 1 1 1 1 1",
        ". 1 1 1 1 1",
        ". . 1 . 1 1",
        ". . . 0 0 1",
        ". . . . 0 1",
        ". . . . . 0",
    ],
    &["0 0 1 1", ". 0 1 1", ". . 1 1", ". . . 0"],
    &["0"],
];

fn printed_matrix() -> Vec<Vec<Option<i64>>> {
    let mut out = vec![vec![None; 16]; 16];
    let mut offset = 0;
    for block in PRINTED_BLOCKS {
        for (i, line) in block.iter().enumerate() {
            for (j, cell) in line.split(' ').enumerate() {
                out[offset + i][offset + j] = cell.parse().ok();
            }
        }
        offset += block.len();
    }
    out
}

fn c1_generator_layout() -> Outcome {
    let rep = Representation::new(4).map_err(|e| e.to_string())?;
    let order: Vec<Vec<usize>> = rep.order().iter().map(Subset::members).collect();
    let expected_order: Vec<Vec<usize>> = vec![
        vec![1, 2, 3, 4],
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 4],
        vec![2, 3, 4],
        vec![1, 2],
        vec![1, 3],
        vec![2, 3],
        vec![1, 4],
        vec![2, 4],
        vec![3, 4],
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![],
    ];
    ensure(order == expected_order, || format!("row order {order:?}"))?;
    let g = rep.generator(3).map_err(|e| e.to_string())?;
    let printed = printed_matrix();
    let mut diffs = Vec::new();
    for i in 0..16 {
        for j in 0..16 {
            if g.get(i, j).finite() != printed[i][j] {
                diffs.push((i, j));
            }
        }
    }
    let misprint = (rep.index_of(&set(4, &[3, 4])), rep.index_of(&set(4, &[3, 4])));
    ensure(diffs == vec![misprint], || format!("cells differing from the printed matrix: {diffs:?}"))?;
    ensure(g.get(misprint.0, misprint.1) == Trop::Fin(1), || "misprinted cell is not 1".into())?;
    Ok("255 cells match; ({3,4},{3,4}) = 1 where 0 is printed".into())
}

/// All Knuth relation instances over `[n]` as (left, right) triples.
fn knuth_instances(n: usize) -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                if a < b && b <= c {
                    out.push(([b, c, a], [b, a, c]));
                }
                if a <= b && b < c {
                    out.push(([c, a, b], [a, c, b]));
                }
            }
        }
    }
    out
}

fn c2_morphism() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        let rep = Representation::new(n).map_err(|e| e.to_string())?;
        let mut r = rng(200 + n as u64);
        for (lhs, rhs) in knuth_instances(n) {
            for _ in 0..20 {
                let total = r.gen_range(0..=5);
                let split = r.gen_range(0..=total);
                let pre: Vec<usize> = (0..split).map(|_| r.gen_range(1..=n)).collect();
                let post: Vec<usize> = (split..total).map(|_| r.gen_range(1..=n)).collect();
                let build = |mid: &[usize]| {
                    Word::new(n, [pre.as_slice(), mid, post.as_slice()].concat()).unwrap()
                };
                let (u, v) = (build(&lhs), build(&rhs));
                let (mu, mv) = (rep.represent(&u).unwrap(), rep.represent(&v).unwrap());
                ensure(mu == mv, || format!("rho({u}) != rho({v})"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} relation instances in context"))
}

/// Apply a few random Knuth moves.
fn knuth_walk(r: &mut ChaCha8Rng, w: &[usize], steps: usize) -> Vec<usize> {
    let mut cur = w.to_vec();
    for _ in 0..steps {
        let next = knuth_neighbours(&cur);
        if let Some(v) = next.choose(r) {
            cur = v.clone();
        }
    }
    cur
}

fn c3_faithful(sampled: &mut Vec<(usize, TropMatrix)>) -> Outcome {
    let mut equal_pairs = 0;
    for n in 2..=4 {
        let rep = Representation::new(n).map_err(|e| e.to_string())?;
        let mut r = rng(300 + n as u64);
        for _ in 0..500 {
            let w = random_word(&mut r, n, 10);
            let m = rep.represent(&w).unwrap();
            let t = rep.decode(&m).map_err(|e| format!("decode({w}): {e}"))?;
            ensure(t == Tableau::from_word(&w), || format!("decode({w}) = {t:?}"))?;
            sampled.push((n, m));
        }
        for i in 0..500 {
            let u = random_word(&mut r, n, 10);
            // every other pair is Knuth-related, so both directions are exercised
            let v = if i % 2 == 0 {
                Word::new(n, knuth_walk(&mut r, u.letters(), 6)).unwrap()
            } else {
                random_word(&mut r, n, 10)
            };
            let same_matrix = rep.represent(&u).unwrap() == rep.represent(&v).unwrap();
            let same_tableau = Tableau::from_word(&u) == Tableau::from_word(&v);
            ensure(same_matrix == same_tableau, || {
                format!("{u} vs {v}: matrices equal {same_matrix}, tableaux equal {same_tableau}")
            })?;
            equal_pairs += same_tableau as usize;
        }
    }
    Ok(format!("1500 decodes, 1500 pairs ({equal_pairs} plactically equal)"))
}

fn c4_entries() -> Outcome {
    let mut cells = 0;
    for n in 2..=4 {
        let rep = Representation::new(n).map_err(|e| e.to_string())?;
        let order = rep.order().to_vec();
        let mut r = rng(400 + n as u64);
        for _ in 0..100 {
            let w = random_word(&mut r, n, 8);
            let m = rep.represent(&w).unwrap();
            for (i, p) in order.iter().enumerate() {
                for (j, q) in order.iter().enumerate() {
                    let (pm, qm) = (p.members(), q.members());
                    let want = brute_entry(n, w.letters(), &pm, &qm);
                    ensure(m.get(i, j) == want, || {
                        format!("rho({w}) at ({p}, {q}) is {} but oracle says {want}", m.get(i, j))
                    })?;
                    if set_le(&pm, &qm) && !w.is_empty() {
                        let lib = max_readable(&w, p, q).unwrap() as i64;
                        ensure(Trop::Fin(lib) == want, || format!("max_readable({w}, {p}, {q})"))?;
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} entries against subword enumeration"))
}

fn c5_row_counts() -> Outcome {
    let check = |t: &Tableau| -> Result<(), String> {
        let n = t.rank();
        let rep = Representation::new(n).map_err(|e| e.to_string())?;
        let table = rep.row_counts(&rep.represent_tableau(t).unwrap()).map_err(|e| e.to_string())?;
        for k in 1..=n {
            for m in k..=n {
                let direct = direct_row_count(t, k, m);
                ensure(table.get(k, m) == direct, || {
                    format!("N({k},{m}) of {t:?}: {} vs {direct}", table.get(k, m))
                })?;
            }
        }
        Ok(())
    };
    let mut r = rng(500);
    for i in 0..200 {
        let n = 1 + i % 5;
        check(&random_tableau(&mut r, n, 15))?;
    }
    let left = Tableau::new(4, vec![vec![1, 2, 3, 3], vec![2, 3, 4], vec![4, 4]]).unwrap();
    let right = Tableau::new(4, vec![vec![1, 2, 3, 3], vec![2, 3, 4, 4], vec![4]]).unwrap();
    check(&left)?;
    check(&right)?;
    let rep = Representation::new(4).unwrap();
    let (p, q) = (set(4, &[1, 2]), set(4, &[3, 4]));
    let entry = |t: &Tableau| rep.represent_tableau(t).unwrap().at(&Label::Set(p), &Label::Set(q)).unwrap();
    ensure(entry(&left) == Trop::Fin(7) && entry(&right) == Trop::Fin(8), || {
        format!("({{1,2}},{{3,4}}) entries {} and {}", entry(&left), entry(&right))
    })?;
    let oracle = |t: &Tableau| brute_entry(4, t.column_reading().letters(), &vec![1, 2], &vec![3, 4]);
    ensure(oracle(&left) == Trop::Fin(7) && oracle(&right) == Trop::Fin(8), || {
        "subword oracle disagrees on the 7/8 pair".into()
    })?;
    Ok("200 random tableaux; the 7 vs 8 pair reproduced".into())
}

fn c6_triangular_round_trip() -> Outcome {
    let mut r = rng(600);
    for i in 0..200 {
        let n = 1 + i % 5;
        let t = random_diagonal_tableau(&mut r, n);
        let params = t.parameters();
        ensure(params.is_diagonally_increasing(), || format!("generator produced {t:?}"))?;
        let x = represent_singleton(n, &t.column_reading()).unwrap();
        if let Some(v) = check_abcd(&x).unwrap() {
            return Err(format!("{t:?}: singleton image fails {v}"));
        }
        let back = decode_triangular(&x).map_err(|e| format!("{t:?}: {e}"))?;
        ensure(back == t, || format!("decode_triangular gave {back:?} for {t:?}"))?;
        for p in 1..=n {
            for q in p..=n {
                let f = imentries_formula(&params, p, q).unwrap();
                ensure(x.get(p - 1, q - 1) == Trop::Fin(f), || {
                    format!("{t:?}: entry ({p},{q}) is {} but formula gives {f}", x.get(p - 1, q - 1))
                })?;
            }
        }
    }
    Ok("200 tableaux with i_(x+1,y+1) >= i_(x,y)".into())
}

const ADIAN: &str = "xyyxxyxyyx=xyyxyxxyyx";

fn c7_falsify() -> Outcome {
    let id: Identity = ADIAN.parse().unwrap();
    let w = falsify(&id, 3, &SearchBudget::default(), 0)
        .map_err(|e| e.to_string())?
        .ok_or("search budget exhausted")?;
    let Certificate::Tropical { u, matrix_lhs, matrix_rhs, .. } = &w.certificate else {
        return Err("expected a tropical certificate".into());
    };
    ensure(matrix_lhs != matrix_rhs, || "matrices do not falsify the identity in UT_3".into())?;
    ensure(w.tableau_lhs != w.tableau_rhs, || "tableau evaluations agree".into())?;
    let text = serde_json::to_string(&w).unwrap();
    let parsed: IdentityWitness = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(parsed == w, || "witness JSON does not round trip".into())?;
    verify_witness(&parsed).map_err(|e| e.to_string())?;
    Ok(format!("u = {u}, witness of {} bytes re-verified", text.len()))
}

fn c8_bicyclic() -> Outcome {
    let id: Identity = ADIAN.parse().unwrap();
    match sample_check(&id, &Plactic::new(2), 10_000, 0, 1).map_err(|e| e.to_string())? {
        SampleOutcome::Held { trials } => Ok(format!("held in P_2 over {trials} trials")),
        SampleOutcome::Counterexample { trial, .. } => Err(format!("counterexample at trial {trial}")),
    }
}

fn c9_chains(sampled: &[(usize, TropMatrix)]) -> Outcome {
    for n in 1..=8 {
        let d = chain_length_bound(n).map_err(|e| e.to_string())?;
        ensure(d == n * n / 4 + 1, || format!("chain_length_bound({n}) = {d}"))?;
        if n <= 6 {
            let brute = (0..=n).map(|k| brute_longest_chain(n, k)).max().unwrap();
            ensure(brute == d, || format!("n = {n}: enumeration gives {brute}, formula {d}"))?;
            for k in 0..=n {
                let b = block_chain_length(n, k).unwrap();
                ensure(b == brute_longest_chain(n, k), || format!("block ({n},{k}) = {b}"))?;
            }
        }
    }
    ensure(!sampled.is_empty(), || "criterion 3 produced no matrices".into())?;
    for (n, m) in sampled {
        ensure(m.is_chain_structured(block_leq), || format!("rank {n} matrix is not chain-structured"))?;
    }
    Ok(format!("n = 1..8; enumeration to n = 6; {} sampled matrices chain-structured", sampled.len()))
}

/// `(u, v) -> (uvuuv, uvvuv)` applied `levels` times to `(xy, yx)`; one
/// level gives the Adian identity.
fn nested_adian(levels: usize) -> String {
    let (mut u, mut v) = ("xy".to_string(), "yx".to_string());
    for _ in 0..levels {
        (u, v) = (format!("{u}{v}{u}{u}{v}"), format!("{u}{v}{v}{u}{v}"));
    }
    format!("{u}={v}")
}


fn c10_cross() -> Outcome {
    let nested = nested_adian(2);
    let identities = ["xy=yx", "xxy=xyx", "xyxy=yxyx", ADIAN, nested.as_str()];
    let mut survivors = 0;
    for (i, text) in identities.iter().enumerate() {
        let id: Identity = text.parse().unwrap();
        let ut = sample_check(&id, &UpperTriangular::new(5), 1000, i as u64, 1).map_err(|e| e.to_string())?;
        if let SampleOutcome::Held { .. } = ut {
            survivors += 1;
            let p = sample_check(&id, &Plactic::new(4), 1000, i as u64, 1).map_err(|e| e.to_string())?;
            ensure(matches!(p, SampleOutcome::Held { .. }), || {
                format!("{text} survives UT_5 but fails in P_4")
            })?;
        }
    }
    Ok(format!("{survivors} of {} identities survive UT_5; no violations", identities.len()))
}

fn main() {
    let mut sampled = Vec::new();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 generator layout", 1, Box::new(c1_generator_layout)),
        ("2 morphism", 30, Box::new(c2_morphism)),
        ("3 faithfulness", 60, Box::new(|| c3_faithful(&mut sampled))),
        ("4 entry oracle", 60, Box::new(c4_entries)),
        ("5 row counts", 10, Box::new(c5_row_counts)),
        ("6 triangular decoder round trip", 30, Box::new(c6_triangular_round_trip)),
        ("7 end-to-end falsification", 300, Box::new(c7_falsify)),
        ("8 bicyclic-direction sampling", 60, Box::new(c8_bicyclic)),
    ];
    let mut failures = run(criteria);
    let rest: Vec<Criterion<'_>> = vec![
        ("9 chain bounds", 30, Box::new(|| c9_chains(&sampled))),
        ("10 identities across ranks", 120, Box::new(c10_cross)),
    ];
    failures += run(rest);
    println!("acceptance: {} failed", failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

fn run(criteria: Vec<Criterion<'_>>) -> usize {
    let mut failures = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {limit:?} limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {name} ({:.2}s, limit {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    failures
}
