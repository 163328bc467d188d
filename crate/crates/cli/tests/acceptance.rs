//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use edgedepth::formulas::{path_depth_unweighted, BranchVariant};
use edgedepth::graph::path;
use edgedepth::verify::{
    branch_variant_finding, check_additivity, check_colon, check_colon_bound, check_monotonicity,
    check_oracle_agreement, check_polarization, check_remark, check_theorem1, check_theorem2,
    BranchSelection, CaseResult, SweepSpec, Verdict,
};
use edgedepth::{depth, EngineConfig};
use serde_json::Value;

const BOTH_CHARS: [u32; 2] = [0, 2];

struct Outcome {
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Tally {
    matched: usize,
    mismatch: usize,
    skipped: usize,
}

fn tally(cases: &[CaseResult]) -> Tally {
    let mut t = Tally::default();
    for c in cases {
        match c.verdict {
            Verdict::Match => t.matched += 1,
            Verdict::Mismatch => t.mismatch += 1,
            Verdict::SkippedResource | Verdict::SkippedRange => t.skipped += 1,
        }
    }
    t
}

fn first_failure(cases: &[CaseResult]) -> String {
    cases
        .iter()
        .find(|c| c.verdict != Verdict::Match)
        .map(|c| {
            format!(
                "; first failure {:?} expected {} actual {} {:?}",
                c.params, c.expected, c.actual, c.note
            )
        })
        .unwrap_or_default()
}

fn all_match(cases: &[CaseResult], extra: &str) -> Outcome {
    let t = tally(cases);
    Outcome {
        pass: !cases.is_empty() && t.mismatch == 0 && t.skipped == 0,
        detail: format!(
            "{} cases, {} match, {} mismatch, {} skipped{extra}{}",
            cases.len(),
            t.matched,
            t.mismatch,
            t.skipped,
            first_failure(cases)
        ),
    }
}

/// Char 0 and char 2 must give the same engine value on every case run in both.
fn characteristic_disagreements(cases: &[CaseResult]) -> usize {
    let mut by_params: BTreeMap<Vec<(String, String)>, Vec<&Value>> = BTreeMap::new();
    for c in cases
        .iter()
        .filter(|c| c.verdict != Verdict::SkippedResource)
    {
        let key = c
            .params
            .iter()
            .filter(|(k, _)| *k != "char")
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        by_params.entry(key).or_default().push(&c.actual);
    }
    by_params
        .values()
        .filter(|v| v.windows(2).any(|w| w[0] != w[1]))
        .count()
}

fn criterion_path_depth() -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for n in 2..=12 {
        let expected = path_depth_unweighted(n).unwrap() as usize;
        let got = depth(&path(n).edge_ideal(), &EngineConfig::default())
            .unwrap()
            .depth;
        if got != expected {
            wrong.push(format!("n={n}: {got} != {expected}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: wrong.is_empty() && elapsed < Duration::from_secs(60),
        detail: format!(
            "n=2..12, {} wrong, {:.1}s {}",
            wrong.len(),
            elapsed.as_secs_f64(),
            wrong.join(", ")
        ),
    }
}

/// Cases where the two readings of the exceptional one-weight branch disagree, plus n=10 where they agree.
fn exceptional_branch_cases() -> Vec<CaseResult> {
    let grids = [(8, vec![2, 3]), (10, vec![2]), (11, vec![2])];
    grids
        .into_iter()
        .flat_map(|(n, weights)| {
            let spec = SweepSpec {
                n_min: n,
                n_max: n,
                t_min: 2,
                t_max: 2,
                positions: Some(vec![4]),
                weights,
                characteristics: BOTH_CHARS.to_vec(),
                branch_variant: BranchSelection::Both,
                ..SweepSpec::default()
            };
            check_theorem1(&spec).unwrap()
        })
        .collect()
}

fn criterion_exceptional_branch(cases: &[CaseResult]) -> (Outcome, Option<BranchVariant>) {
    let finding = branch_variant_finding(cases);
    let t = tally(cases);
    // Each discriminating instance runs in two characteristics.
    let instances = finding.discriminating_cases / BOTH_CHARS.len();
    let pass = instances >= 3 && finding.supported.is_some() && t.skipped == 0;
    let detail = format!(
        "{instances} discriminating instances x {} chars; mod4 matches {}, mod3 matches {}; engine supports {}",
        BOTH_CHARS.len(),
        finding.mod4_matches,
        finding.mod3_matches,
        finding.supported.map_or("no unique variant".to_string(), |v| v.to_string()),
    );
    (Outcome { pass, detail }, finding.supported)
}

fn criterion_theorem1(variant: BranchVariant) -> (Outcome, Vec<CaseResult>) {
    let selection = match variant {
        BranchVariant::Mod4 => BranchSelection::Mod4,
        BranchVariant::Mod3 => BranchSelection::Mod3,
    };
    let grid = SweepSpec {
        n_min: 4,
        n_max: 8,
        t_min: 2,
        t_max: 3,
        characteristics: BOTH_CHARS.to_vec(),
        branch_variant: selection,
        ..SweepSpec::default()
    };
    let spot = SweepSpec {
        n_max: 6,
        t_min: 4,
        t_max: 4,
        ..grid.clone()
    };
    let mut cases = check_theorem1(&grid).unwrap();
    cases.extend(check_theorem1(&spot).unwrap());
    let out = all_match(
        &cases,
        &format!(" (compared against the {variant} reading)"),
    );
    (out, cases)
}

fn criterion_theorem2() -> (Outcome, Vec<CaseResult>) {
    let spec = SweepSpec {
        n_min: 5,
        n_max: 8,
        t_min: 2,
        t_max: 3,
        characteristics: BOTH_CHARS.to_vec(),
        ..SweepSpec::default()
    };
    let cases = check_theorem2(&spec).unwrap();
    (all_match(&cases, ""), cases)
}

fn criterion_remark() -> (Outcome, Vec<CaseResult>) {
    let spec = SweepSpec {
        characteristics: BOTH_CHARS.to_vec(),
        case_budget: Duration::from_secs(600),
        ..SweepSpec::default()
    };
    let (cases, info) = check_remark(&spec).unwrap();
    let slow = cases
        .iter()
        .filter(|c| c.elapsed >= Duration::from_secs(600))
        .count();
    let mut out = all_match(
        &cases,
        &format!(", integrally closed: {}", info["integrally_closed"]),
    );
    out.pass &= slow == 0 && cases.iter().all(|c| c.actual == 1);
    (out, cases)
}

fn criterion_colon() -> Outcome {
    let spec = SweepSpec {
        n_max: 6,
        t_min: 2,
        t_max: 3,
        leaf_weights: vec![1, 2],
        witness_n_max: 9,
        weights: vec![2, 3],
        ..SweepSpec::default()
    };
    let cases = check_colon(&spec).unwrap();
    let mut families: BTreeMap<String, usize> = BTreeMap::new();
    for c in &cases {
        let key = c.param("family").or(c.param("identity")).unwrap_or("?");
        *families.entry(key.to_string()).or_default() += 1;
    }
    let mut out = all_match(&cases, &format!(" {families:?}"));
    out.pass &= families.len() == 8;
    out
}

fn criterion_oracle() -> Outcome {
    let spec = SweepSpec {
        characteristics: BOTH_CHARS.to_vec(),
        oracle_samples: 50,
        ..SweepSpec::default()
    };
    let cases = check_oracle_agreement(&spec);
    let mut out = all_match(&cases, "");
    // 50 random ideals and P2..P6, in each characteristic.
    out.pass &= cases.len() == 55 * BOTH_CHARS.len();
    out
}

fn criterion_polarization() -> Outcome {
    let spec = SweepSpec {
        characteristics: BOTH_CHARS.to_vec(),
        polarization_samples: 20,
        ..SweepSpec::default()
    };
    let cases = check_polarization(&spec);
    let mut out = all_match(&cases, "");
    out.pass &= cases.len() == 20 * BOTH_CHARS.len();
    out
}

fn criterion_structural() -> Outcome {
    let spec = SweepSpec {
        characteristics: vec![0],
        samples: 30,
        ..SweepSpec::default()
    };
    let checks = [
        ("additivity", check_additivity(&spec)),
        ("colon-bound", check_colon_bound(&spec)),
        ("monotonicity", check_monotonicity(&spec)),
    ];
    let counts: Vec<String> = checks
        .iter()
        .map(|(name, cases)| format!("{name} {}", cases.len()))
        .collect();
    let all: Vec<CaseResult> = checks.iter().flat_map(|(_, c)| c.clone()).collect();
    let mut out = all_match(&all, &format!(" ({})", counts.join(", ")));
    out.pass &= checks.iter().all(|(_, cases)| cases.len() >= 30);
    out
}

fn run_verify_all(out: &std::path::Path) -> Value {
    let status = Command::new(env!("CARGO_BIN_EXE_edgedepth"))
        .args(["verify", "--suite", "all", "--out"])
        .arg(out)
        .env_remove("EDGEDEPTH_CONFIG")
        .output()
        .expect("run edgedepth");
    assert!(
        status.status.success(),
        "verify failed: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn criterion_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let a = run_verify_all(&dir.path().join("a.json"));
    let b = run_verify_all(&dir.path().join("b.json"));
    let cases = a["summary"]["cases"].as_u64().unwrap_or(0);
    Outcome {
        pass: a == b && cases > 0,
        detail: format!(
            "{cases} cases per run, reports {}",
            if a == b { "identical" } else { "differ" }
        ),
    }
}

fn main() {
    let start = Instant::now();
    let mut lines: Vec<(u8, &str, Outcome)> = Vec::new();
    let mut char_checked = Vec::new();

    lines.push((1, "path depth equals ceil(n/3)", criterion_path_depth()));

    let exceptional = exceptional_branch_cases();
    let (branch, supported) = criterion_exceptional_branch(&exceptional);
    let variant = supported.unwrap_or(BranchVariant::Mod4);
    let (t1, t1_cases) = criterion_theorem1(variant);
    lines.push((2, "one-weight depth formula sweep", t1));
    lines.push((3, "exceptional one-weight branch", branch));
    let (t2, t2_cases) = criterion_theorem2();
    lines.push((4, "two-weight depth formula sweep", t2));
    let (remark, remark_cases) = criterion_remark();
    lines.push((5, "depth of I(P(2,1,1,2))^t is 1 for t = 4, 5", remark));
    lines.push((6, "colon identities", criterion_colon()));
    lines.push((
        7,
        "lattice/Koszul Betti tables equal the Taylor oracle",
        criterion_oracle(),
    ));
    lines.push((8, "polarization invariance", criterion_polarization()));
    lines.push((
        9,
        "additivity, colon bound, monotonicity",
        criterion_structural(),
    ));
    lines.push((
        10,
        "verify --suite all is deterministic",
        criterion_determinism(),
    ));

    char_checked.extend(t1_cases);
    char_checked.extend(exceptional);
    char_checked.extend(t2_cases);
    char_checked.extend(remark_cases);
    let disagreements = characteristic_disagreements(&char_checked);

    let mut failed = 0;
    for (id, title, out) in &lines {
        failed += usize::from(!out.pass);
        println!(
            "{} [{id:>2}] {title}: {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!(
        "note: char 0 and char 2 depths disagree on {disagreements} of the depth instances above"
    );
    println!(
        "acceptance: {} passed, {failed} failed, {:.1}s",
        lines.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
