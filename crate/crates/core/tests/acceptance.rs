//! One line per acceptance criterion; every criterion must pass within its
//! time bound.

use std::time::Duration;

use multicirc::oracle::Limits;
use multicirc::sweep::{self, SweepOutcome};

fn report(out: &SweepOutcome) {
    println!("{}", out.summary_line());
    for f in out.failures.iter().skip(1).take(5) {
        println!("       also: {f}");
    }
}

#[test]
fn acceptance() {
    let limits = Limits::default();
    let outcomes = sweep::run_all(&limits);
    for out in &outcomes {
        report(out);
    }

    let bounds: [(u32, Duration); 11] = [
        (1, Duration::from_millis(1)),
        (2, Duration::from_secs(1)),
        (3, Duration::from_secs(600)),
        (4, Duration::from_secs(60)),
        (5, Duration::from_secs(60)),
        (6, Duration::from_secs(300)),
        (7, Duration::from_secs(300)),
        (8, Duration::from_secs(60)),
        (9, Duration::from_secs(120)),
        (10, Duration::from_secs(120)),
        (11, Duration::from_secs(60)),
    ];
    assert_eq!(outcomes.len(), bounds.len());
    for (out, (id, limit)) in outcomes.iter().zip(bounds) {
        assert_eq!(out.id, id);
        assert_eq!(out.limit, limit, "criterion {id} bound");
    }

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn sweep_sizes_meet_minimums() {
    // random sweeps cover at least the required sample counts
    let l = Limits::default();
    assert!(sweep::order_sweep().checked >= 200);
    assert!(sweep::component_sweep(&l).checked >= 100);
    assert!(sweep::normal_form_suite().checked >= 500);
}
