//! Inputs shared by the benchmarks.

use szlam_core::exactnum::{int, rat};
use szlam_core::{build_hadwiger, Atom, CellSet, Coloring, Hadwiger, PeriodicLine, PeriodicSet};

/// `n` scattered spans with denominators up to 8 on a line of period `2n`.
pub fn scattered_spans(n: i64) -> Vec<Atom> {
    (0..n)
        .map(|i| {
            let lo = rat(i * 13 % (16 * n), 8);
            let len = rat(1 + (i * 7) % 11, 8);
            Atom::half_open(lo.clone(), lo + len)
        })
        .collect()
}

pub fn scattered_set(n: i64) -> PeriodicSet {
    PeriodicSet::normalize(int(2 * n), scattered_spans(n)).expect("positive period")
}

/// The three-class coloring `[0,3)`, `[3,5)`, `[5,6)` of the line mod 6.
pub fn example_coloring() -> Coloring<PeriodicLine> {
    let l = PeriodicLine::new(int(6)).expect("positive period");
    let ho = |a, b| Atom::half_open(int(a), int(b));
    Coloring::new(
        l.clone(),
        vec!["green".into(), "yellow".into(), "white".into()],
        vec![l.set([ho(0, 3)]), l.set([ho(3, 5)]), l.set([ho(5, 6)])],
    )
    .expect("partition")
}

/// A `k`-class coloring of the line mod `k` by unit intervals.
pub fn unit_coloring(k: i64) -> Coloring<PeriodicLine> {
    let l = PeriodicLine::new(int(k)).expect("positive period");
    let labels = (0..k).map(|i| format!("c{i}")).collect();
    let classes = (0..k).map(|i| l.set([Atom::half_open(int(i), int(i + 1))])).collect();
    Coloring::new(l, labels, classes).expect("partition")
}

pub fn hadwiger() -> Hadwiger {
    build_hadwiger(rat(4, 5)).expect("positive diameter")
}

pub fn central_cells() -> CellSet {
    CellSet::new(7, [0]).expect("in range")
}
