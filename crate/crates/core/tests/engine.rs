use std::fs;

use qlp_core::feasibility::{eligible_half_pairs, enumerate_subsums};
use qlp_core::pairs::explicit_pairs;
use qlp_core::quat::GaussInt;
use qlp_core::search::{
    canonicalize, run_search, FilterReport, SearchConfig, Side, Stage,
};
use qlp_core::Error;

fn config(len: usize) -> SearchConfig {
    let half = eligible_half_pairs(len).unwrap()[0];
    let mut c = SearchConfig::new(len, half.value_a).unwrap();
    c.chunk_size = 4;
    c
}

#[test]
fn infeasible_and_bad_configs() {
    assert!(matches!(SearchConfig::new(6, 12), Err(Error::Infeasible { .. })));
    assert!(matches!(SearchConfig::new(7, 0), Err(Error::OddLength(7))));
    assert!(SearchConfig::new(66, 0).is_err());
    let mut c = config(6);
    c.subsum = Some(99);
    assert!(matches!(run_search(&c), Err(Error::SubsumOutOfRange { .. })));
}

#[test]
fn output_is_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in [1, 3] {
        let mut c = config(10);
        c.threads = threads;
        c.output = Some(dir.path().join(format!("out{threads}.txt")));
        run_search(&c).unwrap();
        texts.push(fs::read(c.output.unwrap()).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let text = String::from_utf8(texts.remove(0)).unwrap();
    assert!(text.starts_with("# qlp l=10 psd_half="));
}

#[test]
fn limit_is_deterministic() {
    let mut full = config(10);
    full.limit = 0;
    let all = run_search(&full).unwrap();
    assert!(all.exhausted);
    assert!(all.pairs.len() > 2);
    let mut results = Vec::new();
    for threads in [1, 4] {
        let mut c = config(10);
        c.limit = 2;
        c.threads = threads;
        let o = run_search(&c).unwrap();
        assert_eq!(o.pairs.len(), 2);
        assert!(o.pairs.iter().all(|p| all.pairs.contains(p)));
        results.push(o.pairs);
    }
    assert_eq!(results[0], results[1]);
}

#[test]
fn spill_join_matches_memory_join() {
    let memory = run_search(&config(10)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(10);
    c.memory_budget = 0;
    c.spill_dir = Some(dir.path().to_path_buf());
    let spilled = run_search(&c).unwrap();
    assert!(!memory.pairs.is_empty());
    assert_eq!(memory.pairs, spilled.pairs);
}

#[test]
fn checkpoint_resume_reproduces_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let fresh = run_search(&config(10)).unwrap();

    let mut c = config(10);
    c.checkpoint = Some(path.clone());
    let first = run_search(&c).unwrap();
    assert_eq!(first.pairs, fresh.pairs);
    // Everything is complete now; a rerun only replays survivors.
    let again = run_search(&c).unwrap();
    assert_eq!(again.pairs, fresh.pairs);
    assert_eq!(again.report.a, first.report.a);

    // Drop half of the completed chunks and resume.
    let text = fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    for entry in doc["completed"].as_array_mut().unwrap() {
        let ranges = entry["ranges"].as_array_mut().unwrap();
        let end = ranges[0][1].as_u64().unwrap();
        ranges[0][1] = serde_json::json!(end / 2);
    }
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let resumed = run_search(&c).unwrap();
    assert_eq!(resumed.pairs, fresh.pairs);

    let mut other = config(10);
    other.checkpoint = Some(path);
    other.toggles.t3 = false;
    assert!(matches!(run_search(&other), Err(Error::CheckpointMismatch { .. })));
}

#[test]
fn disabling_filters_keeps_the_pair_set() {
    let baseline = run_search(&config(8)).unwrap();
    let mut c = config(8);
    c.toggles.t2 = false;
    c.toggles.t3 = false;
    let loose = run_search(&c).unwrap();
    assert_eq!(baseline.pairs, loose.pairs);
    assert!(loose.report.a.count(Stage::T3) >= baseline.report.a.count(Stage::T3));
}

#[test]
fn report_counters_are_monotone_and_render() {
    let o = run_search(&config(12)).unwrap();
    assert!(o.report.is_monotone());
    let parsed = FilterReport::parse(&o.report.to_text()).unwrap();
    assert_eq!(parsed.a.counts, o.report.a.counts);
    assert_eq!(parsed.matched, o.report.matched);
}

#[test]
fn length_34_pair_is_reachable_from_its_subsum() {
    let (a, b) = explicit_pairs().pop().unwrap();
    assert_eq!(a.len(), 34);
    let half = eligible_half_pairs(34).unwrap().into_iter().find(|p| p.value_a == 36).unwrap();
    let subs = enumerate_subsums(34, &half);
    let idx = subs
        .iter()
        .position(|s| s.alpha0 == GaussInt::new(0, -3) && s.beta0 == GaussInt::new(-1, -2))
        .unwrap();
    let mut c = SearchConfig::new(34, 36).unwrap();
    c.subsum = Some(idx);
    let (alphas, betas) = qlp_core::search::subsum_representatives(&c).unwrap();
    // The representatives of the pair lie in the enumerated subsum classes.
    let (ca, _) = canonicalize(&a, Side::A);
    let (cb, _) = canonicalize(&b, Side::B);
    let even = |s: &qlp_core::quat::QuatSeq| qlp_core::quat::QuatSeq::new(s.even_part()).unwrap().sum();
    assert_eq!(alphas, vec![even(&ca)]);
    assert_eq!(betas, vec![even(&cb)]);
    assert!(qlp_core::search::CandidateRecord::new(ca, Side::A).passes(true, true, true));
    assert!(qlp_core::search::CandidateRecord::new(cb, Side::B).passes(true, true, true));
}
