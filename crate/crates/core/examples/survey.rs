use origami::search::{run_survey, SurveyConfig};

fn main() {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let report = run_survey(&SurveyConfig::new(n_max, 2)).expect("survey");
    println!("{}", serde_json::to_string(&report.counts).unwrap());
    println!("violations: {}", report.implication_violations.len());
    for s in &report.runtime_stats {
        eprintln!("n={} {:.0} ms", s.n, s.wall_ms);
    }
}
