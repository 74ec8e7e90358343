//! Print the closed-form audit as CSV. Used once to freeze the verdict
//! manifest pinned by the acceptance suite; also a minimal library demo.

fn main() {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let l_max = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let report = pdspec::audit(n_max, l_max).expect("audit failed");
    print!("{}", report.to_csv().expect("finite values"));
    eprintln!(
        "match {} / mismatch {} / degenerate {} (total {})",
        report.summary.matches,
        report.summary.mismatches,
        report.summary.degenerate,
        report.summary.total
    );
}
