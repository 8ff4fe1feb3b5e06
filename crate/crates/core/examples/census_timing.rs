use std::time::Instant;

use cubal::Enumerator;

fn main() {
    let jobs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    for m in 1..=5 {
        let start = Instant::now();
        let count = Enumerator::new(m).unwrap().jobs(jobs).count();
        println!("m={m} tau={count} jobs={jobs} {:.3}s", start.elapsed().as_secs_f64());
    }
}
