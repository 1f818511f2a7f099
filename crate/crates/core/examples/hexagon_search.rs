//! Random hexagons on and off a conic, tabulated against mdr.

use ziegler::search::{run, summarize, write_csv, SearchMode};

fn main() {
    let count = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let samples = run(count, SearchMode::Mixed, 7);
    write_csv(&samples, std::io::stdout()).expect("stdout");
    eprintln!("{:?}", summarize(&samples));
}
