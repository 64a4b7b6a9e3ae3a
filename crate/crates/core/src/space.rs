//! The set-algebra contract shared by the line and cellular backends.
//!
//! Szlam data, colorings and dominance certificates are generic over a
//! [`SetSpace`]. Operations assume their set arguments belong to the space
//! (checked once by the constructors of [`crate::szlam::Coloring`] and
//! [`crate::szlam::SzlamData`]).

use std::fmt::{Debug, Display};

use num_traits::Zero;

use crate::exactnum::{int, mod_period, Rational};
use crate::periodic1d::{Atom, PeriodicSet};

pub trait SetSpace: Clone + Debug + PartialEq {
    type Set: Clone + Debug + PartialEq + Display;
    /// Translation vectors (and group elements) of the space.
    type Shift: Clone + Debug + PartialEq + Display;
    /// Points of the underlying geometric space.
    type Point: Clone + Debug;

    fn owns(&self, set: &Self::Set) -> bool;
    fn empty(&self) -> Self::Set;
    fn full(&self) -> Self::Set;
    fn is_empty(&self, a: &Self::Set) -> bool;
    fn complement(&self, a: &Self::Set) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn intersect(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn difference(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn translate(&self, a: &Self::Set, t: &Self::Shift) -> Self::Set;
    fn reflect(&self, a: &Self::Set) -> Self::Set;
    fn dilate(&self, a: &Self::Set, s: &Self::Set) -> Self::Set;
    /// `{t : s + t ⊆ a}`; `None` when `s` is empty.
    fn erode(&self, a: &Self::Set, s: &Self::Set) -> Option<Self::Set>;

    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool {
        self.is_empty(&self.difference(a, b))
    }

    fn is_disjoint(&self, a: &Self::Set, b: &Self::Set) -> bool {
        self.is_empty(&self.intersect(a, b))
    }

    fn zero(&self) -> Self::Shift;
    /// Canonical representative of a shift (reduction mod period in 1-D).
    fn canonical(&self, t: &Self::Shift) -> Self::Shift;
    fn neg(&self, t: &Self::Shift) -> Self::Shift;
    /// `a - b`, canonicalized.
    fn sub(&self, a: &Self::Shift, b: &Self::Shift) -> Self::Shift;
    fn singleton(&self, t: &Self::Shift) -> Self::Set;
    fn contains_shift(&self, a: &Self::Set, t: &Self::Shift) -> bool;
    fn contains_point(&self, a: &Self::Set, p: &Self::Point) -> bool;
    fn pick(&self, a: &Self::Set) -> Option<Self::Shift>;

    /// Index of the first of `classes` containing `p`.
    fn locate(&self, classes: &[Self::Set], p: &Self::Point) -> Option<usize> {
        classes.iter().position(|c| self.contains_point(c, p))
    }
    /// Distinct members of `a`, starting with [`SetSpace::pick`]: every member
    /// when `a` is finite, otherwise at least `want` of them.
    fn representatives(&self, a: &Self::Set, want: usize) -> Vec<Self::Shift>;
}

/// The real line modulo a positive rational period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicLine {
    period: Rational,
}

impl PeriodicLine {
    pub fn new(period: Rational) -> crate::Result<Self> {
        PeriodicSet::empty(period.clone())?;
        Ok(PeriodicLine { period })
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    /// Builds a set of this space from raw spans.
    pub fn set<I: IntoIterator<Item = Atom>>(&self, spans: I) -> PeriodicSet {
        PeriodicSet::normalize(self.period.clone(), spans).expect("period validated")
    }
}

// Binary operations only fail on a period mismatch, which `owns` rules out.
const SAME_PERIOD: &str = "sets of one space share its period";

impl SetSpace for PeriodicLine {
    type Set = PeriodicSet;
    type Shift = Rational;
    type Point = Rational;

    fn owns(&self, set: &PeriodicSet) -> bool {
        *set.period() == self.period
    }

    fn empty(&self) -> PeriodicSet {
        PeriodicSet::empty(self.period.clone()).expect(SAME_PERIOD)
    }

    fn full(&self) -> PeriodicSet {
        PeriodicSet::full(self.period.clone()).expect(SAME_PERIOD)
    }

    fn is_empty(&self, a: &PeriodicSet) -> bool {
        a.is_empty()
    }

    fn complement(&self, a: &PeriodicSet) -> PeriodicSet {
        a.complement()
    }

    fn union(&self, a: &PeriodicSet, b: &PeriodicSet) -> PeriodicSet {
        a.union(b).expect(SAME_PERIOD)
    }

    fn intersect(&self, a: &PeriodicSet, b: &PeriodicSet) -> PeriodicSet {
        a.intersect(b).expect(SAME_PERIOD)
    }

    fn difference(&self, a: &PeriodicSet, b: &PeriodicSet) -> PeriodicSet {
        a.difference(b).expect(SAME_PERIOD)
    }

    fn translate(&self, a: &PeriodicSet, t: &Rational) -> PeriodicSet {
        a.translate(t)
    }

    fn reflect(&self, a: &PeriodicSet) -> PeriodicSet {
        a.reflect()
    }

    fn dilate(&self, a: &PeriodicSet, s: &PeriodicSet) -> PeriodicSet {
        a.dilate(s).expect(SAME_PERIOD)
    }

    fn erode(&self, a: &PeriodicSet, s: &PeriodicSet) -> Option<PeriodicSet> {
        a.erode(s).ok()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn canonical(&self, t: &Rational) -> Rational {
        mod_period(t, &self.period)
    }

    fn neg(&self, t: &Rational) -> Rational {
        mod_period(&-t, &self.period)
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        mod_period(&(a - b), &self.period)
    }

    fn singleton(&self, t: &Rational) -> PeriodicSet {
        self.set([Atom::point(t.clone())])
    }

    fn contains_shift(&self, a: &PeriodicSet, t: &Rational) -> bool {
        a.contains(t)
    }

    fn contains_point(&self, a: &PeriodicSet, p: &Rational) -> bool {
        a.contains(p)
    }

    fn pick(&self, a: &PeriodicSet) -> Option<Rational> {
        a.pick_point().ok()
    }

    fn representatives(&self, a: &PeriodicSet, want: usize) -> Vec<Rational> {
        let mut reps: Vec<Rational> = self.pick(a).into_iter().collect();
        let push = |x: Rational, reps: &mut Vec<Rational>| {
            if !reps.contains(&x) {
                reps.push(x);
            }
        };
        if let Some(wide) = a.atoms().iter().find(|at| !at.is_point()) {
            let steps = want as i64 + 2;
            for m in 1..steps {
                let x = &wide.lo + wide.length() * int(m) / int(steps);
                push(x, &mut reps);
            }
        }
        for at in a.atoms().iter().filter(|at| at.is_point()) {
            push(at.lo.clone(), &mut reps);
        }
        reps
    }
}
