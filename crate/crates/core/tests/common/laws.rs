//! Algebraic laws of periodic sets, checked structurally and against a
//! pointwise membership oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szlam_core::exactnum::{int, mod_period, rat, Rational};
use szlam_core::{Atom, PeriodicSet};

use super::member;

/// A span in grid units: start, length, endpoint flags.
pub type RawSpan = (i64, i64, bool, bool);

pub const PROBES: usize = 200;

#[derive(Clone, Debug)]
pub struct Instance {
    pub period: Rational,
    pub a: PeriodicSet,
    pub b: PeriodicSet,
    pub s: PeriodicSet,
    pub t: Rational,
    pub probes: Vec<Rational>,
}

/// The grid has 8 steps per `1/den`; the period is `n/den`.
fn build_set(period: &Rational, den: i64, spans: &[RawSpan]) -> PeriodicSet {
    let unit = |u: i64| rat(u, 8 * den);
    let atoms = spans.iter().map(|&(lo, len, lc, hc)| {
        let (lc, hc) = if len == 0 { (true, true) } else { (lc, hc) };
        Atom::new(unit(lo), unit(lo + len), lc, hc)
    });
    PeriodicSet::normalize(period.clone(), atoms).expect("positive period")
}

pub fn instance(
    n: i64,
    den: i64,
    spans: [&[RawSpan]; 3],
    t_units: i64,
    probe_seed: u64,
) -> Instance {
    let period = rat(n, den);
    let [a, b, s] = spans.map(|sp| build_set(&period, den, sp));
    let t = rat(t_units, 8 * den);
    let mut r = ChaCha8Rng::seed_from_u64(probe_seed);
    let mut probes: Vec<Rational> = Vec::with_capacity(PROBES);
    let mut edges: Vec<Rational> = [&a, &b, &s].iter().flat_map(|x| x.endpoints()).collect();
    edges.push(mod_period(&t, &period));
    while probes.len() < PROBES {
        let x = match r.gen_range(0..3) {
            0 if !edges.is_empty() => edges[r.gen_range(0..edges.len())].clone(),
            1 => rat(r.gen_range(0..16 * n), 16 * den),
            _ => {
                let d = r.gen_range(1..=97);
                rat(r.gen_range(0..n * d), d * den)
            }
        };
        probes.push(mod_period(&x, &period));
    }
    Instance { period, a, b, s, t, probes }
}

pub fn random_spans(r: &mut impl Rng, units: i64, max: usize) -> Vec<RawSpan> {
    let count = r.gen_range(0..=max);
    (0..count)
        .map(|_| {
            let len = if r.gen_bool(0.1) { r.gen_range(0..=2 * units) } else { r.gen_range(0..=units / 2) };
            (r.gen_range(0..units), len, r.gen_bool(0.5), r.gen_bool(0.5))
        })
        .collect()
}

pub fn random_instance(r: &mut ChaCha8Rng) -> Instance {
    let n = r.gen_range(1..=12);
    let den = r.gen_range(1..=3);
    let units = 8 * n;
    let a = random_spans(r, units, 4);
    let b = random_spans(r, units, 4);
    let mut s = random_spans(r, units, 2);
    if s.is_empty() {
        s.push((r.gen_range(0..units), r.gen_range(0..=units / 3), true, r.gen_bool(0.5)));
    }
    let t = r.gen_range(-3 * units..3 * units);
    instance(n, den, [&a, &b, &s], t, r.gen())
}

/// `x ∈ A ⊕ S`, from the atoms: the sum of two atoms is the span of the sums
/// of their endpoints, closed at an end only when both summands are.
fn minkowski_member(a: &PeriodicSet, s: &PeriodicSet, x: &Rational, period: &Rational) -> bool {
    let shifted = [x.clone(), x + period];
    a.atoms().iter().any(|p| {
        s.atoms().iter().any(|q| {
            let (lo, hi) = (&p.lo + &q.lo, &p.hi + &q.hi);
            let (lc, hc) = (p.lo_closed && q.lo_closed, p.hi_closed && q.hi_closed);
            shifted.iter().any(|y| (lo < *y && *y < hi) || (lo == *y && lc) || (hi == *y && hc))
        })
    })
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: szlam_core::Result<T>) -> T {
    r.expect("operands share a period")
}

pub fn check_boolean(i: &Instance) -> Result<(), String> {
    let (a, b, s) = (&i.a, &i.b, &i.s);
    ensure!(PeriodicSet::normalize(i.period.clone(), a.atoms().to_vec()).as_ref() == Ok(a), "normalize not idempotent on {a}");
    let u = ok(a.union(b));
    let n = ok(a.intersect(b));
    let d = ok(a.difference(b));
    let c = a.complement();
    for x in &i.probes {
        let (ma, mb) = (member(a, x), member(b, x));
        ensure!(member(&u, x) == (ma || mb), "union at {x}: {a} | {b} = {u}");
        ensure!(member(&n, x) == (ma && mb), "intersection at {x}: {a} & {b} = {n}");
        ensure!(member(&d, x) == (ma && !mb), "difference at {x}: {a} - {b} = {d}");
        ensure!(member(&c, x) == !ma, "complement at {x}: ~{a} = {c}");
    }
    ensure!(c.complement() == *a, "double complement of {a}");
    ensure!(u.complement() == ok(c.intersect(&b.complement())), "De Morgan for {a}, {b}");
    ensure!(ok(a.union(&ok(b.intersect(s)))) == ok(u.intersect(&ok(a.union(s)))), "distributivity for {a}, {b}, {s}");
    ensure!(u == ok(b.union(a)) && n == ok(b.intersect(a)), "commutativity for {a}, {b}");
    ensure!(ok(u.union(s)) == ok(a.union(&ok(b.union(s)))), "associativity for {a}, {b}, {s}");
    ensure!(ok(a.intersect(&c)).is_empty() && ok(a.union(&c)).is_full(), "complement laws for {a}");
    Ok(())
}

pub fn check_translation(i: &Instance) -> Result<(), String> {
    let (a, b, t, p) = (&i.a, &i.b, &i.t, &i.period);
    let moved = a.translate(t);
    let mirrored = a.reflect();
    for x in &i.probes {
        ensure!(member(&moved, x) == member(a, &mod_period(&(x - t), p)), "translate at {x}: {a} + {t} = {moved}");
        ensure!(member(&mirrored, x) == member(a, &mod_period(&-x, p)), "reflect at {x}: -({a}) = {mirrored}");
    }
    ensure!(moved.translate(&-t) == *a, "translate back for {a} by {t}");
    ensure!(a.translate(&(t + p)) == moved, "translate by a period for {a}");
    ensure!(a.translate(&int(0)) == *a, "zero translate of {a}");
    ensure!(mirrored.reflect() == *a, "double reflection of {a}");
    ensure!(ok(a.union(b)).translate(t) == ok(moved.union(&b.translate(t))), "translate over union for {a}, {b}");
    ensure!(a.complement().translate(t) == moved.complement(), "translate over complement for {a}");
    Ok(())
}

pub fn check_dilation(i: &Instance) -> Result<(), String> {
    let (a, b, s, t, p) = (&i.a, &i.b, &i.s, &i.t, &i.period);
    let dil = ok(a.dilate(s));
    for x in &i.probes {
        ensure!(member(&dil, x) == minkowski_member(a, s, x, p), "dilate at {x}: {a} + {s} = {dil}");
        let hit = !ok(s.reflect().translate(x).is_disjoint(a));
        ensure!(member(&dil, x) == hit, "dilate at {x} disagrees with (x - S) meeting A for {a}, {s}");
    }
    let bigger = ok(a.union(b));
    ensure!(ok(dil.is_subset(&ok(bigger.dilate(s)))), "dilate not monotone in A for {a}, {b}, {s}");
    ensure!(ok(dil.is_subset(&ok(a.dilate(&ok(s.union(b)))))), "dilate not monotone in S for {a}, {b}, {s}");
    ensure!(dil == ok(s.dilate(a)), "dilate not commutative for {a}, {s}");
    ensure!(ok(dil.dilate(b)) == ok(a.dilate(&ok(s.dilate(b)))), "dilate not associative for {a}, {s}, {b}");
    let point = PeriodicSet::normalize(p.clone(), [Atom::point(t.clone())]).unwrap();
    ensure!(ok(a.dilate(&point)) == a.translate(t), "dilate by a point for {a}, {t}");
    ensure!(ok(a.translate(t).dilate(s)) == dil.translate(t), "dilate not translation covariant for {a}, {s}");
    Ok(())
}

pub fn check_erosion(i: &Instance) -> Result<(), String> {
    let (a, b, s) = (&i.a, &i.b, &i.s);
    let er = ok(a.erode(s));
    for x in &i.probes {
        let fits = ok(s.translate(x).is_subset(a));
        ensure!(member(&er, x) == fits, "erode at {x}: {a} - {s} = {er}");
    }
    // adjunction: X ⊕ S ⊆ A  iff  X ⊆ A ⊖ S
    for x in [b.clone(), ok(b.intersect(&er)), er.clone()] {
        let lhs = ok(ok(x.dilate(s)).is_subset(a));
        let rhs = ok(x.is_subset(&er));
        ensure!(lhs == rhs, "adjunction fails for X = {x}, A = {a}, S = {s}");
    }
    ensure!(ok(ok(er.dilate(s)).is_subset(a)), "opening not below {a} for {s}");
    ensure!(ok(a.is_subset(&ok(ok(a.dilate(s)).erode(s)))), "closing not above {a} for {s}");
    Ok(())
}

pub fn check_all(i: &Instance) -> Result<(), String> {
    check_boolean(i)?;
    check_translation(i)?;
    check_dilation(i)?;
    check_erosion(i)
}
