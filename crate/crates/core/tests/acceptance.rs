use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use minusclass_core::verify::{verify, Suite, CHECK_NAMES};

const PARAMS: [(u64, u64); 6] = [(3, 2), (5, 2), (5, 4), (7, 3), (7, 6), (13, 12)];
const K: u32 = 6;
const SEED: u64 = 0;
/// Wall-clock ceilings; criterion 1 over all parameter sets, and the whole run.
const CLASSIFY_BUDGET_MS: u64 = 60_000;
const TOTAL_BUDGET_MS: u64 = 600_000;

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut failures: BTreeMap<u8, Vec<String>> = BTreeMap::new();
    let mut millis: BTreeMap<u8, u64> = BTreeMap::new();
    for (p, r) in PARAMS {
        let report = verify(p, r, None, K, Suite::All, SEED).expect("valid parameters");
        for c in &report.checks {
            *millis.entry(c.criterion).or_default() += c.millis;
            if !c.passed {
                failures
                    .entry(c.criterion)
                    .or_default()
                    .push(format!("(p, r) = ({p}, {r}): expected {} / computed {}", c.expected, c.computed));
            }
        }
    }
    if millis[&1] > CLASSIFY_BUDGET_MS {
        failures.entry(1).or_default().push(format!("took {} ms, budget {CLASSIFY_BUDGET_MS} ms", millis[&1]));
    }
    // Written to the raw handle so the table shows even when the test passes.
    let mut out = std::io::stderr();
    for (i, name) in CHECK_NAMES.iter().enumerate() {
        let c = i as u8 + 1;
        match failures.get(&c) {
            None => writeln!(out, "criterion {c:>2} {name:<28} PASS ({} ms)", millis[&c]).unwrap(),
            Some(why) => writeln!(out, "criterion {c:>2} {name:<28} FAIL {}", why.join("; ")).unwrap(),
        }
    }
    let total = start.elapsed().as_millis() as u64;
    writeln!(out, "total {total} ms").unwrap();
    assert!(total <= TOTAL_BUDGET_MS, "acceptance run took {total} ms");
    assert!(failures.is_empty(), "failing criteria: {:?}", failures.keys().collect::<Vec<_>>());
}
