//! Periodic subsets of the real line.
//!
//! A [`PeriodicSet`] is a finite union of intervals inside one period
//! `[0, period)`, repeated with that period. Each interval ([`Atom`]) carries
//! its own open/closed endpoint flags, so erosion (which produces closed
//! intervals) and dilation (which produces open ones) are both exact.
//!
//! Canonical form: atoms are disjoint, sorted by `lo`, maximal, and split at
//! the seam `0 ≡ period`. An atom may end at `period` only with an open upper
//! end. Two sets are equal iff their atom lists are identical.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, mod_period, Rational};

/// One interval with independent endpoint flags. `lo == hi` with both ends
/// closed is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Atom {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Self {
        Atom { lo, hi, lo_closed, hi_closed }
    }

    /// `[lo, hi]`
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, true)
    }

    /// `[lo, hi)`
    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, false)
    }

    /// `(lo, hi]`
    pub fn left_open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, false, true)
    }

    /// `(lo, hi)`
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn point(x: Rational) -> Self {
        Self::new(x.clone(), x, true, true)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && !self.is_empty()
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Membership on the line (no periodic reduction).
    pub fn contains(&self, x: &Rational) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        above
            && match x.cmp(&self.hi) {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn shifted(&self, t: &Rational) -> Self {
        Atom::new(&self.lo + t, &self.hi + t, self.lo_closed, self.hi_closed)
    }

    /// Image under `x ↦ -x`.
    pub fn reflected(&self) -> Self {
        Atom::new(-&self.hi, -&self.lo, self.hi_closed, self.lo_closed)
    }

    /// Minkowski sum of two intervals. Each endpoint of the sum is attained
    /// iff it is attained in both summands.
    pub fn minkowski(&self, other: &Atom) -> Self {
        Atom::new(
            &self.lo + &other.lo,
            &self.hi + &other.hi,
            self.lo_closed && other.lo_closed,
            self.hi_closed && other.hi_closed,
        )
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Exact periodic union of intervals. See the module docs for the canonical
/// form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    period: Rational,
    atoms: Vec<Atom>,
}

impl PeriodicSet {
    pub fn empty(period: Rational) -> Result<Self> {
        check_period(&period)?;
        Ok(PeriodicSet { period, atoms: Vec::new() })
    }

    pub fn full(period: Rational) -> Result<Self> {
        check_period(&period)?;
        let atoms = vec![Atom::half_open(Rational::zero(), period.clone())];
        Ok(PeriodicSet { period, atoms })
    }

    /// Builds the canonical set covering every span modulo `period`. Spans may
    /// lie anywhere on the line, overlap, wrap, or exceed one period.
    pub fn normalize<I>(period: Rational, spans: I) -> Result<Self>
    where
        I: IntoIterator<Item = Atom>,
    {
        check_period(&period)?;
        let mut pieces = Vec::new();
        let mut full = false;
        for span in spans {
            if unfold(&span, &period, &mut pieces) {
                full = true;
                break;
            }
        }
        if full {
            return Self::full(period);
        }
        let atoms = merge_pieces(pieces);
        Ok(PeriodicSet { period, atoms })
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.atoms.len() == 1 && {
            let a = &self.atoms[0];
            a.lo.is_zero() && a.lo_closed && a.hi == self.period
        }
    }

    /// True when the set is a finite collection of points.
    pub fn is_finite(&self) -> bool {
        self.atoms.iter().all(Atom::is_point)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let r = mod_period(x, &self.period);
        let idx = self.atoms.partition_point(|a| a.lo <= r);
        idx > 0 && self.atoms[idx - 1].contains(&r)
    }

    /// Total length of one period's worth of the set.
    pub fn measure(&self) -> Rational {
        self.atoms.iter().map(Atom::length).sum()
    }

    /// Interval endpoints in `[0, period)`, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .atoms
            .iter()
            .flat_map(|a| [a.lo.clone(), mod_period(&a.hi, &self.period)])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    fn same_period(&self, other: &PeriodicSet) -> Result<()> {
        if self.period == other.period {
            Ok(())
        } else {
            Err(Error::PeriodMismatch(Box::new((self.period.clone(), other.period.clone()))))
        }
    }

    pub fn complement(&self) -> PeriodicSet {
        let mut atoms = Vec::with_capacity(self.atoms.len() + 1);
        let mut cursor = Rational::zero();
        let mut cursor_closed = true;
        for a in &self.atoms {
            let gap = Atom::new(cursor.clone(), a.lo.clone(), cursor_closed, !a.lo_closed);
            if !gap.is_empty() {
                atoms.push(gap);
            }
            cursor = a.hi.clone();
            cursor_closed = !a.hi_closed;
        }
        let tail = Atom::new(cursor, self.period.clone(), cursor_closed, false);
        if !tail.is_empty() {
            atoms.push(tail);
        }
        PeriodicSet { period: self.period.clone(), atoms }
    }

    pub fn union(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        self.same_period(other)?;
        let pieces = self.atoms.iter().chain(&other.atoms).cloned().collect();
        Ok(PeriodicSet { period: self.period.clone(), atoms: merge_pieces(pieces) })
    }

    pub fn intersect(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        Ok(self.complement().union(&other.complement())?.complement())
    }

    pub fn difference(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &PeriodicSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &PeriodicSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// `{x + t : x ∈ self}`.
    pub fn translate(&self, t: &Rational) -> PeriodicSet {
        let t = mod_period(t, &self.period);
        if t.is_zero() {
            return self.clone();
        }
        let spans = self.atoms.iter().map(|a| a.shifted(&t));
        Self::normalize(self.period.clone(), spans).expect("period already validated")
    }

    /// `{-x : x ∈ self}`.
    pub fn reflect(&self) -> PeriodicSet {
        let spans = self.atoms.iter().map(Atom::reflected);
        Self::normalize(self.period.clone(), spans).expect("period already validated")
    }

    /// Minkowski sum `{a + s : a ∈ self, s ∈ other}` modulo the period.
    pub fn dilate(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        self.same_period(other)?;
        let spans = self
            .atoms
            .iter()
            .flat_map(|a| other.atoms.iter().map(move |s| a.minkowski(s)));
        Self::normalize(self.period.clone(), spans)
    }

    /// `{t : other + t ⊆ self}`, via `complement(dilate(complement(self), -other))`.
    pub fn erode(&self, other: &PeriodicSet) -> Result<PeriodicSet> {
        self.same_period(other)?;
        if other.is_empty() {
            return Err(Error::EmptyStructuringSet);
        }
        Ok(self.complement().dilate(&other.reflect())?.complement())
    }

    /// Midpoint of the first atom (the point itself for a point atom).
    pub fn pick_point(&self) -> Result<Rational> {
        self.atoms.first().map(Atom::midpoint).ok_or(Error::EmptySet)
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("{}");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

fn check_period(period: &Rational) -> Result<()> {
    if period.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositivePeriod(period.clone()))
    }
}

/// Pushes the pieces of `span` reduced into `[0, period)`. Returns true if
/// the span covers the whole circle.
fn unfold(span: &Atom, period: &Rational, out: &mut Vec<Atom>) -> bool {
    if span.is_empty() {
        return false;
    }
    let len = span.length();
    match len.cmp(period) {
        Ordering::Greater => return true,
        Ordering::Equal if span.lo_closed || span.hi_closed => return true,
        _ => {}
    }
    let zero = Rational::zero();
    let lo = mod_period(&span.lo, period);
    if len == *period {
        // Both ends open: the circle minus one point.
        if lo > zero {
            out.push(Atom::half_open(zero, lo.clone()));
        }
        out.push(Atom::open(lo, period.clone()));
        return false;
    }
    let hi = &lo + &len;
    match hi.cmp(period) {
        Ordering::Less => out.push(Atom::new(lo, hi, span.lo_closed, span.hi_closed)),
        Ordering::Equal => {
            out.push(Atom::new(lo, period.clone(), span.lo_closed, false));
            if span.hi_closed {
                out.push(Atom::point(zero));
            }
        }
        Ordering::Greater => {
            let wrapped = &hi - period;
            out.push(Atom::new(lo, period.clone(), span.lo_closed, false));
            out.push(Atom::new(zero, wrapped, true, span.hi_closed));
        }
    }
    false
}

/// Sorts and merges pieces that lie inside `[0, period]` into canonical atoms.
fn merge_pieces(mut pieces: Vec<Atom>) -> Vec<Atom> {
    pieces.retain(|p| !p.is_empty());
    pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<Atom> = Vec::with_capacity(pieces.len());
    for piece in pieces {
        if let Some(last) = out.last_mut() {
            let touches = piece.lo < last.hi
                || (piece.lo == last.hi && (last.hi_closed || piece.lo_closed));
            if touches {
                match piece.hi.cmp(&last.hi) {
                    Ordering::Greater => {
                        last.hi = piece.hi;
                        last.hi_closed = piece.hi_closed;
                    }
                    Ordering::Equal => last.hi_closed |= piece.hi_closed,
                    Ordering::Less => {}
                }
                continue;
            }
        }
        out.push(piece);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn set(period: i64, atoms: Vec<Atom>) -> PeriodicSet {
        PeriodicSet::normalize(int(period), atoms).unwrap()
    }

    fn ho(a: i64, b: i64) -> Atom {
        Atom::half_open(int(a), int(b))
    }

    // Membership oracle straight from the span definitions: x is covered if
    // some integer shift of x by the period lands in a span.
    fn probe(period: i64, spans: &[Atom], x: &Rational) -> bool {
        spans.iter().any(|s| (-3..=3).any(|k| s.contains(&(x + int(k * period)))))
    }

    #[test]
    fn normalize_sorts_disjoint_spans() {
        let s = set(6, vec![ho(5, 6), ho(0, 3)]);
        assert_eq!(s.atoms(), &[ho(0, 3), ho(5, 6)]);
    }

    #[test]
    fn normalize_merges_adjacent() {
        let s = set(6, vec![ho(1, 2), ho(2, 3)]);
        assert_eq!(s.atoms(), &[ho(1, 3)]);
    }

    #[test]
    fn normalize_splits_wrapping_span() {
        let spans = vec![ho(4, 7)];
        let s = set(6, spans.clone());
        for x in [rat(1, 2), rat(3, 2), rat(9, 2), rat(11, 2)] {
            assert_eq!(s.contains(&x), probe(6, &spans, &x));
        }
        assert_eq!(s.atoms(), &[ho(0, 1), ho(4, 6)]);
    }

    #[test]
    fn normalize_is_idempotent() {
        let s = set(6, vec![ho(4, 7), Atom::point(int(2)), Atom::open(int(2), int(3))]);
        let again = PeriodicSet::normalize(int(6), s.atoms().to_vec()).unwrap();
        assert_eq!(s, again);
        assert_eq!(s.atoms()[1], Atom::half_open(int(2), int(3)));
    }

    #[test]
    fn normalize_rejects_bad_period() {
        assert_eq!(
            PeriodicSet::normalize(int(0), vec![]),
            Err(Error::NonPositivePeriod(int(0)))
        );
        assert!(PeriodicSet::empty(int(-1)).is_err());
    }

    #[test]
    fn long_spans() {
        assert!(set(6, vec![ho(1, 8)]).is_full());
        assert!(set(6, vec![ho(1, 7)]).is_full());
        let punctured = set(6, vec![Atom::open(int(1), int(7))]);
        assert!(!punctured.contains(&int(1)));
        assert!(punctured.contains(&int(0)));
        assert_eq!(punctured.complement(), set(6, vec![Atom::point(int(1))]));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(6, vec![ho(0, 3)]).complement(), set(6, vec![ho(3, 6)]));
        let everything = PeriodicSet::empty(int(6)).unwrap().complement();
        assert_eq!(everything.atoms(), &[ho(0, 6)]);
        let c = set(6, vec![Atom::point(int(4))]).complement();
        assert_eq!(c.atoms(), &[ho(0, 4), Atom::open(int(4), int(6))]);
    }

    #[test]
    fn boolean_examples() {
        let a = set(6, vec![ho(2, 5)]);
        let b = set(6, vec![ho(0, 3)]);
        let d = a.difference(&b).unwrap();
        for x in [rat(5, 2), rat(7, 2), rat(9, 2)] {
            assert_eq!(d.contains(&x), a.contains(&x) && !b.contains(&x));
        }
        assert_eq!(d, set(6, vec![ho(3, 5)]));
        assert!(b.intersect(&b.complement()).unwrap().is_empty());

        let closed = set(6, vec![Atom::closed(int(3), int(4))]);
        let open = set(6, vec![Atom::open(int(0), int(4))]);
        assert_eq!(closed.difference(&open).unwrap(), set(6, vec![Atom::point(int(4))]));
    }

    #[test]
    fn binary_ops_reject_period_mismatch() {
        let a = set(6, vec![ho(0, 1)]);
        let b = set(4, vec![ho(0, 1)]);
        assert_eq!(a.union(&b), Err(Error::PeriodMismatch(Box::new((int(6), int(4))))));
        assert!(a.dilate(&b).is_err());
        assert!(a.erode(&b).is_err());
    }

    #[test]
    fn translate_examples() {
        let g = set(6, vec![ho(0, 3)]);
        let shifted = g.translate(&int(-2));
        assert!(shifted.contains(&rat(1, 2)));
        assert!(!shifted.contains(&int(2)));
        assert!(shifted.contains(&rat(9, 2)));
        assert_eq!(shifted, set(6, vec![ho(0, 1), ho(4, 6)]));
        assert_eq!(g.translate(&int(0)), g);
        assert_eq!(g.translate(&int(6)), g);
    }

    #[test]
    fn reflect_examples() {
        let w = set(6, vec![ho(5, 6)]);
        let r = w.reflect();
        assert!(r.contains(&rat(1, 2)) && r.contains(&int(1)) && !r.contains(&int(0)));
        assert_eq!(r, set(6, vec![Atom::left_open(int(0), int(1))]));
        let origin = set(6, vec![Atom::point(int(0))]);
        assert_eq!(origin.reflect(), origin);
        assert_eq!(
            set(6, vec![ho(0, 3)]).reflect(),
            set(6, vec![Atom::point(int(0)), Atom::open(int(3), int(6))])
        );
    }

    #[test]
    fn dilate_examples() {
        let unit = set(6, vec![ho(0, 1)]);
        assert_eq!(unit.dilate(&unit).unwrap(), set(6, vec![ho(0, 2)]));
        let g = set(6, vec![ho(0, 3)]);
        let minus_w = set(6, vec![Atom::left_open(int(0), int(1))]);
        assert_eq!(g.dilate(&minus_w).unwrap(), set(6, vec![Atom::open(int(0), int(4))]));
        let origin = set(6, vec![Atom::point(int(0))]);
        assert_eq!(g.dilate(&origin).unwrap(), g);
    }

    // Brute-force erosion oracle: test every translater on the 1/8 grid plus
    // the atom endpoints, checking containment by probing membership on a
    // 1/16 grid (all boundaries in these examples are integers).
    fn erode_oracle(a: &PeriodicSet, s: &PeriodicSet) -> Vec<Rational> {
        let period = a.period().clone();
        let probes: Vec<Rational> = (0..16 * 6).map(|k| rat(k, 16)).collect();
        (0..48)
            .map(|k| rat(k, 8))
            .filter(|t| {
                probes
                    .iter()
                    .filter(|x| s.contains(x))
                    .all(|x| a.contains(&mod_period(&(x + t), &period)))
            })
            .collect()
    }

    #[test]
    fn erode_examples() {
        let g = set(6, vec![ho(0, 3)]);
        let y = set(6, vec![ho(3, 5)]);
        let w = set(6, vec![ho(5, 6)]);

        let e = g.erode(&y).unwrap();
        assert_eq!(e, set(6, vec![Atom::closed(int(3), int(4))]));
        let oracle = erode_oracle(&g, &y);
        assert_eq!(oracle.first(), Some(&int(3)));
        assert_eq!(oracle.last(), Some(&int(4)));
        assert!(oracle.iter().all(|t| e.contains(t)));

        let e = g.erode(&w).unwrap();
        assert_eq!(e, set(6, vec![Atom::closed(int(1), int(3))]));
        let oracle = erode_oracle(&g, &w);
        assert_eq!((oracle.first(), oracle.last()), (Some(&int(1)), Some(&int(3))));
        assert!(e.contains(&int(-3)));

        let e = g.erode(&g).unwrap();
        assert_eq!(e, set(6, vec![Atom::point(int(0))]));
        assert_eq!(erode_oracle(&g, &g), vec![int(0)]);

        assert_eq!(g.erode(&PeriodicSet::empty(int(6)).unwrap()), Err(Error::EmptyStructuringSet));
    }

    #[test]
    fn pick_point_examples() {
        assert_eq!(set(6, vec![Atom::point(int(4))]).pick_point(), Ok(int(4)));
        assert_eq!(set(6, vec![Atom::closed(int(1), int(3))]).pick_point(), Ok(int(2)));
        assert_eq!(set(6, vec![ho(0, 3), ho(5, 6)]).pick_point(), Ok(rat(3, 2)));
        assert_eq!(PeriodicSet::empty(int(6)).unwrap().pick_point(), Err(Error::EmptySet));
    }

    #[test]
    fn display_uses_interval_literals() {
        let s = set(6, vec![Atom::point(int(5)), ho(0, 3), Atom::open(int(9), rat(21, 2))]);
        assert_eq!(s.to_string(), "[0,3), (3,9/2), {5}");
        assert_eq!(PeriodicSet::empty(int(1)).unwrap().to_string(), "{}");
    }
}
