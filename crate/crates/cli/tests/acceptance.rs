//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use roughspace::harness::{run_suite, Direction, PropositionId, SuiteReport, SweepConfig};
use roughspace::{
    generate_topology, induced_topology, is_topology, neighborhood_family, BinaryRelation,
    ElementSet, Error, NeighborhoodKind, SetFamily, Universe,
};

use PropositionId::*;

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(120);
const RANDOM_SUBBASES: usize = 1000;
const SUBBASE_SEED: u64 = 20_240_601;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roughspace"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sweep(props: &[PropositionId]) -> SuiteReport {
    let mut cfg = SweepConfig::exhaustive(4).with_props(props);
    cfg.max_counterexamples = 50;
    run_suite(&cfg).expect("sweep runs")
}

fn zero_counterexamples(suite: &SuiteReport, props: &[PropositionId]) -> Result<(), String> {
    for &p in props {
        for n in 1..=4 {
            let r = suite.get(p, n).ok_or(format!("{p} n={n} missing"))?;
            ensure(
                r.relations_checked == 1 << (n * n),
                format!("{p} n={n}: {} relations checked", r.relations_checked),
            )?;
            ensure(
                r.holds && r.counterexample_count == 0,
                format!("{p} n={n}: {} counterexamples", r.counterexample_count),
            )?;
        }
    }
    Ok(())
}

fn golden() -> Verdict {
    let expected: BTreeMap<&str, &[&str]> = [
        ("R_s(a)", &["a", "c"][..]),
        ("R_s(b)", &["c"]),
        ("R_s(c)", &["a", "d"]),
        ("R_s(d)", &[]),
        ("R_p(a)", &["a", "c"]),
        ("R_p(b)", &[]),
        ("R_p(c)", &["a", "b"]),
        ("R_p(d)", &["c"]),
        ("R_s∧p(a)", &["a", "c"]),
        ("R_s∧p(b)", &[]),
        ("R_s∧p(c)", &["a"]),
        ("R_s∧p(d)", &[]),
        ("R_s∨p(a)", &["a", "c"]),
        ("R_s∨p(b)", &["c"]),
        ("R_s∨p(c)", &["a", "b", "d"]),
        ("R_s∨p(d)", &["c"]),
        ("lower_s(X)", &["a", "b", "c", "d"]),
        ("upper_s(X)", &["a", "b", "c"]),
        ("lower_p(X)", &["a", "b", "d"]),
        ("upper_p(X)", &["a", "c", "d"]),
        ("lower_s∧p(X)", &["a", "b", "c", "d"]),
        ("upper_s∧p(X)", &["a", "c"]),
        ("lower_s∨p(X)", &["a", "b", "d"]),
        ("upper_s∨p(X)", &["a", "b", "c", "d"]),
    ]
    .into_iter()
    .collect();

    let start = Instant::now();
    let out = bin()
        .args(["example", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let entries = v["entries"].as_array().ok_or("no entries")?;
    ensure(
        entries.len() == expected.len(),
        format!("{} entries", entries.len()),
    )?;
    for e in entries {
        let name = e["name"].as_str().ok_or("entry without name")?;
        let want = expected
            .get(name)
            .ok_or(format!("unexpected entry {name}"))?;
        let got: Vec<&str> = e["computed"]
            .as_array()
            .ok_or("no computed")?
            .iter()
            .filter_map(Value::as_str)
            .collect();
        ensure(got == *want, format!("{name}: got {got:?}, want {want:?}"))?;
    }
    ensure(
        v["lower_exceeds_upper"] == true,
        "lower_s(X) ⊋ upper_s(X) not flagged",
    )?;
    ensure(elapsed < GOLDEN_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("24/24 sets match, {} ms", elapsed.as_millis()))
}

fn core_laws() -> Verdict {
    let props = [P01, P02, P03, P07, P15];
    let start = Instant::now();
    let suite = sweep(&props);
    let elapsed = start.elapsed();
    zero_counterexamples(&suite, &props)?;
    ensure(elapsed < SWEEP_BUDGET, format!("took {elapsed:?}"))?;
    let subsets: u64 = suite
        .reports
        .iter()
        .filter(|r| r.prop == P03)
        .map(|r| r.subsets_checked)
        .sum();
    let relations: u64 = (1..=4).map(|n| 1u64 << (n * n)).sum();
    Ok(format!(
        "0 counterexamples over {relations} relations, {subsets} (R, X) pairs for P03, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn conditional_laws() -> Verdict {
    let props = [P04, P05, P06, P16, P17, P18, P19, P20];
    let suite = sweep(&props);
    zero_counterexamples(&suite, &props)?;
    let mut reflexive = 0;
    for n in 1..=4u32 {
        let r = suite.get(P04, n as usize).unwrap();
        let want = 1u64 << (n * n - n);
        ensure(
            r.hypothesis_satisfied == want,
            format!(
                "n={n}: {} reflexive relations, want {want}",
                r.hypothesis_satisfied
            ),
        )?;
        reflexive += want;
    }
    Ok(format!(
        "0 counterexamples, {reflexive} reflexive relations (2^(n²−n) per n)"
    ))
}

fn comparisons() -> Verdict {
    let suite = sweep(&[P08, P09, P10, P11]);
    for n in 1..=4 {
        for p in [P08, P09] {
            let r = suite.get(p, n).unwrap();
            ensure(
                r.holds,
                format!("{p} n={n}: {} counterexamples", r.counterexample_count),
            )?;
        }
        for p in [P10, P11] {
            let r = suite.get(p, n).unwrap();
            ensure(
                r.gating_holds,
                format!("{p} n={n}: forward direction fails"),
            )?;
        }
    }
    let r = suite.get(P11, 2).unwrap();
    let single = r
        .counterexamples
        .iter()
        .find(|c| {
            c.direction == Direction::Converse
                && c.relation.pairs == [["1".to_string(), "2".to_string()]]
        })
        .ok_or("no converse counterexample R = {(1,2)} at n = 2")?;
    ensure(
        single.replays(P11).map_err(|e| e.to_string())?,
        "counterexample does not replay",
    )?;
    ensure(
        suite.get(P11, 1).unwrap().holds,
        "converse already fails at n = 1",
    )?;
    Ok(format!(
        "P08/P09 hold both ways, P10/P11 forward hold, P11 converse fails at n=2 on R={{(1,2)}} ({} such relations)",
        r.counterexample_count
    ))
}

fn powerset_closure(n: usize, subbase: &[u64]) -> Vec<u64> {
    let size = 1usize << n;
    let mut open = vec![false; size];
    open[0] = true;
    open[size - 1] = true;
    for &s in subbase {
        open[s as usize] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..size {
            for b in 0..size {
                if open[a] && open[b] {
                    for c in [a | b, a & b] {
                        if !open[c] {
                            open[c] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    (0..size as u64).filter(|&o| open[o as usize]).collect()
}

fn sorted_bits(f: &SetFamily) -> Vec<u64> {
    let mut v: Vec<u64> = f.iter().map(ElementSet::bits).collect();
    v.sort_unstable();
    v
}

fn topologies() -> Verdict {
    let mut checked = 0usize;
    for n in 1..=4 {
        let u = Universe::numbered(n).unwrap().shared();
        let full = (1u64 << n) - 1;
        for code in 0..1u64 << (n * n) {
            let r = BinaryRelation::from_code(u.clone(), code);
            for kind in NeighborhoodKind::ALL {
                let members = sorted_bits(&neighborhood_family(&r, kind));
                let covers = members.iter().fold(0, |a, &b| a | b) == full;
                match induced_topology(&r, kind) {
                    Ok(t) => {
                        ensure(
                            covers,
                            format!("n={n} code={code} {kind}: generated without a cover"),
                        )?;
                        ensure(
                            is_topology(t.opens()),
                            format!("n={n} code={code} {kind}: not a topology"),
                        )?;
                        ensure(
                            sorted_bits(t.opens()) == powerset_closure(n, &members),
                            format!("n={n} code={code} {kind}: differs from oracle"),
                        )?;
                        checked += 1;
                    }
                    Err(Error::NotACover { .. }) => {
                        ensure(!covers, format!("n={n} code={code} {kind}: cover rejected"))?
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }

    let n = 5;
    let full = (1u64 << n) - 1;
    let u = Universe::numbered(n).unwrap().shared();
    let mut rng = ChaCha8Rng::seed_from_u64(SUBBASE_SEED);
    for i in 0..RANDOM_SUBBASES {
        let count = rng.gen_range(1..=8);
        let mut members: Vec<u64> = (0..count).map(|_| rng.gen::<u64>() & full).collect();
        let union = members.iter().fold(0, |a, &b| a | b);
        if union != full {
            members.push(full & !union);
        }
        let family = SetFamily::new(
            u.clone(),
            members.iter().map(|&b| ElementSet::from_bits(n, b)),
        );
        let t = generate_topology(&family).map_err(|e| format!("subbase {i}: {e}"))?;
        ensure(
            is_topology(t.opens()),
            format!("subbase {i}: not a topology"),
        )?;
        ensure(
            sorted_bits(t.opens()) == powerset_closure(n, &members),
            format!("subbase {i}: differs from oracle"),
        )?;
    }
    Ok(format!("{checked} induced topologies (n ≤ 4) and {RANDOM_SUBBASES} seeded n=5 subbases match the powerset oracle"))
}

fn symmetric_collapse() -> Verdict {
    let props = [P13, P20];
    let suite = sweep(&props);
    zero_counterexamples(&suite, &props)?;

    // Direct check: on symmetric relations all four families coincide.
    let mut symmetric = 0;
    for n in 1..=4 {
        let u = Universe::numbered(n).unwrap().shared();
        for code in 0..1u64 << (n * n) {
            let r = BinaryRelation::from_code(u.clone(), code);
            if r != r.transpose() {
                continue;
            }
            symmetric += 1;
            let families = NeighborhoodKind::ALL.map(|k| sorted_bits(&neighborhood_family(&r, k)));
            ensure(
                families.iter().all(|f| *f == families[0]),
                format!("n={n} code={code}: families differ"),
            )?;
        }
    }
    Ok(format!(
        "0 counterexamples, {symmetric} symmetric relations with a single family"
    ))
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("roughspace-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for (tag, workers) in [("a", "0"), ("b", "0"), ("one", "1"), ("many", "8")] {
        let path = dir.join(format!("{tag}.json"));
        let out = bin()
            .args(["verify", "--max-n", "4", "--workers", workers, "--report"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            out.status.code() == Some(0),
            format!("verify exit {:?}", out.status.code()),
        )?;
        reports.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(reports[0] == reports[1], "two default runs differ")?;
    ensure(reports[2] == reports[3], "workers=1 and workers=8 differ")?;
    ensure(reports[0] == reports[2], "default and workers=1 differ")?;
    Ok(format!(
        "4 runs byte-identical ({} bytes)",
        reports[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("golden example", golden),
        ("unconditional laws P01 P02 P03 P07 P15", core_laws),
        ("conditional laws P04 P05 P06 P16-P20", conditional_laws),
        ("comparison theorems P08-P11", comparisons),
        ("induced topologies", topologies),
        ("symmetric collapse P13 P20", symmetric_collapse),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
