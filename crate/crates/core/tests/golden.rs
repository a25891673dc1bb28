//! Verdict summary of the zoo under the default plan, compared against a
//! checked-in file. Only discrete outcomes are recorded so the file does
//! not depend on floating-point formatting. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test --test golden`.

use std::fmt::Write;
use std::path::Path;

use kahler_core::classifier::SamplePlan;
use kahler_core::report::run;
use kahler_core::zoo::zoo;

fn summary() -> String {
    let plan = SamplePlan::default();
    let mut out = String::new();
    for spec in zoo() {
        let v = run(&spec, &plan).unwrap().verdict;
        let rungs: Vec<String> = v.rungs().iter().map(|(_, verdict)| format!("{verdict:?}").to_lowercase()).collect();
        let h = &v.holo_ricci_pseudosymmetric;
        writeln!(
            out,
            "{:<26} class={:<22} rungs={} deszcz={}/{}",
            spec.name,
            v.class.name(),
            rungs.join(","),
            h.defined_samples,
            h.attempted_samples
        )
        .unwrap();
    }
    out
}

#[test]
fn zoo_verdicts_match_golden_file() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/zoo_verdicts.txt");
    let got = summary();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(got, want);
}
