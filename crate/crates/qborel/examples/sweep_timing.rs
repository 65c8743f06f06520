use std::time::Instant;

use qborel::coideal::conj_a_sweep;
use qborel::uqalg::{Uq, DEFAULT_BOUND};

fn main() {
    for name in std::env::args().skip(1) {
        let uq = Uq::new(name.parse().unwrap(), DEFAULT_BOUND);
        let start = Instant::now();
        let reports = conj_a_sweep(&uq, 4, &|_| {}).unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.is_confirmed()).collect();
        let slowest = reports.iter().max_by_key(|r| r.elapsed_ms).unwrap();
        println!("{name}: {} cases, {} not confirmed, {:?}, slowest {} {} {}ms", reports.len(), bad.len(), start.elapsed(), slowest.w, slowest.support, slowest.elapsed_ms);
        for r in bad {
            println!("  {} {} {:?}", r.w, r.support, r.verdict);
        }
    }
}
