//! Szlam data, colorings, and the ordered Szlam construction.
//!
//! Szlam data is a partition `(R, B)` of the space, given by `B`, together
//! with an ordered finite set `F = (f_1, …, f_k)` of shifts such that no
//! translate of `F` lies in `R`. The ordered Szlam coloring sends `v` to the
//! smallest `i` with `v + f_i ∈ B`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::SetSpace;

/// A partition of the space into labelled classes `A_1, …, A_k`. Empty
/// classes are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Coloring<S: SetSpace> {
    space: S,
    labels: Vec<String>,
    classes: Vec<S::Set>,
}

impl<S: SetSpace> Coloring<S> {
    pub fn new(space: S, labels: Vec<String>, classes: Vec<S::Set>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidColoring(msg));
        if labels.is_empty() {
            return bad("a coloring needs at least one class".into());
        }
        if labels.len() != classes.len() {
            return bad(format!("{} labels for {} classes", labels.len(), classes.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return bad("empty label".into());
            }
            if labels[..i].contains(l) {
                return bad(format!("duplicate label `{l}`"));
            }
        }
        if !classes.iter().all(|c| space.owns(c)) {
            return Err(Error::ForeignSet);
        }
        let mut covered = space.empty();
        for (i, c) in classes.iter().enumerate() {
            for (j, earlier) in classes[..i].iter().enumerate() {
                let overlap = space.intersect(earlier, c);
                if !space.is_empty(&overlap) {
                    return bad(format!(
                        "classes `{}` and `{}` overlap on {}",
                        labels[j], labels[i], overlap
                    ));
                }
            }
            covered = space.union(&covered, c);
        }
        let gap = space.complement(&covered);
        if !space.is_empty(&gap) {
            return bad(format!("classes do not cover {gap}"));
        }
        Ok(Coloring { space, labels, classes })
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn classes(&self) -> &[S::Set] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn class(&self, label: &str) -> Option<&S::Set> {
        self.index_of(label).map(|i| &self.classes[i])
    }

    /// Class indices in the order given by `ordering`, which must be a
    /// permutation of the labels.
    pub fn permutation(&self, ordering: &[String]) -> Result<Vec<usize>> {
        if ordering.len() != self.len() {
            return Err(Error::InvalidCertificate(format!(
                "ordering names {} colors, coloring has {}",
                ordering.len(),
                self.len()
            )));
        }
        let mut seen = vec![false; self.len()];
        ordering
            .iter()
            .map(|l| {
                let i = self
                    .index_of(l)
                    .ok_or_else(|| Error::InvalidCertificate(format!("unknown color `{l}`")))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidCertificate(format!("color `{l}` repeated")));
                }
                Ok(i)
            })
            .collect()
    }

    /// The same partition with every class translated by `t`.
    pub fn translated(&self, t: &S::Shift) -> Self {
        Coloring {
            space: self.space.clone(),
            labels: self.labels.clone(),
            classes: self.classes.iter().map(|c| self.space.translate(c, t)).collect(),
        }
    }

    /// Label of the class containing `p`.
    pub fn color_of(&self, p: &S::Point) -> Option<&str> {
        self.space.locate(&self.classes, p).map(|i| self.labels[i].as_str())
    }
}

/// `B` plus the ordered shifts `f_1, …, f_k`. `R` is the complement of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SzlamData<S: SetSpace> {
    space: S,
    b: S::Set,
    f: Vec<S::Shift>,
}

impl<S: SetSpace> SzlamData<S> {
    pub fn new(space: S, b: S::Set, f: Vec<S::Shift>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidSzlamData("F must be nonempty".into()));
        }
        if !space.owns(&b) {
            return Err(Error::ForeignSet);
        }
        if space.is_empty(&b) {
            return Err(Error::InvalidSzlamData("B must be nonempty".into()));
        }
        if let Some((i, j)) = duplicate_shifts(&space, &f).first() {
            return Err(Error::InvalidSzlamData(format!(
                "f_{} and f_{} coincide ({})",
                i + 1,
                j + 1,
                f[*j]
            )));
        }
        Ok(SzlamData { space, b, f })
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn b(&self) -> &S::Set {
        &self.b
    }

    pub fn r(&self) -> S::Set {
        self.space.complement(&self.b)
    }

    pub fn f(&self) -> &[S::Shift] {
        &self.f
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    /// `B - f_i` for each `i`, in order.
    fn pullbacks(&self) -> Vec<S::Set> {
        self.f.iter().map(|fi| self.space.translate(&self.b, &self.space.neg(fi))).collect()
    }

    /// Index (0-based) of the smallest `i` with `p + f_i ∈ B`, for `p` a shift.
    pub fn ordered_color_of_shift(&self, p: &S::Shift) -> Option<usize> {
        let zero = self.space.zero();
        self.f.iter().position(|fi| {
            let moved = self.space.sub(p, &self.space.sub(&zero, fi));
            self.space.contains_shift(&self.b, &moved)
        })
    }
}

/// Pairs `(i, j)`, `i < j`, of shifts equal after canonicalization.
fn duplicate_shifts<S: SetSpace>(space: &S, f: &[S::Shift]) -> Vec<(usize, usize)> {
    let canon: Vec<S::Shift> = f.iter().map(|x| space.canonical(x)).collect();
    let mut out = Vec::new();
    for j in 0..canon.len() {
        for i in 0..j {
            if canon[i] == canon[j] {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidityReport<S: SetSpace> {
    /// Points `v` with `v + F ⊆ R`; empty iff the covering condition holds.
    pub uncovered: S::Set,
    /// Index pairs of coinciding shifts.
    pub duplicates: Vec<(usize, usize)>,
    uncovered_empty: bool,
}

impl<S: SetSpace> ValidityReport<S> {
    pub fn is_valid(&self) -> bool {
        self.uncovered_empty && self.duplicates.is_empty()
    }
}

/// Checks that `⋃ (B - f_i)` is the whole space, i.e. no translate of `F`
/// lies in `R`.
pub fn validate_szlam<S: SetSpace>(data: &SzlamData<S>) -> ValidityReport<S> {
    let space = &data.space;
    let covered = data.pullbacks().iter().fold(space.empty(), |acc, p| space.union(&acc, p));
    let uncovered = space.complement(&covered);
    ValidityReport {
        uncovered_empty: space.is_empty(&uncovered),
        uncovered,
        duplicates: duplicate_shifts(space, &data.f),
    }
}

/// The ordered Szlam coloring: `A_1 = B - f_1` and
/// `A_j = (B - f_j) ∖ ⋃_{i<j} (B - f_i)`. Labels are `1..=k`.
pub fn build_ordered_coloring<S: SetSpace>(data: &SzlamData<S>) -> Result<Coloring<S>> {
    let report = validate_szlam(data);
    if !report.is_valid() {
        return Err(Error::InvalidSzlamData(format!(
            "translates of F inside R start at {}",
            report.uncovered
        )));
    }
    let space = &data.space;
    let mut seen = space.empty();
    let mut classes = Vec::with_capacity(data.k());
    for pullback in data.pullbacks() {
        classes.push(space.difference(&pullback, &seen));
        seen = space.union(&seen, &pullback);
    }
    let labels = (1..=data.k()).map(|i| i.to_string()).collect();
    Coloring::new(space.clone(), labels, classes)
}

/// Checks the pointwise condition `v + φ(v) ∈ B` in set form: each class,
/// moved by its assigned shift, lies in `B`. Assigned shifts outside `F`
/// make the answer `false`.
pub fn is_szlam_coloring<S: SetSpace>(
    phi: &Coloring<S>,
    data: &SzlamData<S>,
    assignment: &BTreeMap<String, S::Shift>,
) -> Result<bool> {
    if phi.space != data.space {
        return Err(Error::InvalidColoring("coloring and data live in different spaces".into()));
    }
    let space = &data.space;
    let f_canon: Vec<S::Shift> = data.f.iter().map(|x| space.canonical(x)).collect();
    for (label, class) in phi.labels.iter().zip(&phi.classes) {
        let Some(f) = assignment.get(label) else {
            if space.is_empty(class) {
                continue;
            }
            return Err(Error::InvalidColoring(format!("no element of F assigned to `{label}`")));
        };
        if !f_canon.contains(&space.canonical(f)) {
            return Ok(false);
        }
        if !space.is_subset(&space.translate(class, f), &data.b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `phi` is, class by class in its own order, the ordered Szlam
/// coloring of `data`.
pub fn is_ordered_szlam_coloring<S: SetSpace>(
    phi: &Coloring<S>,
    data: &SzlamData<S>,
) -> Result<bool> {
    if phi.space != data.space {
        return Err(Error::InvalidColoring("coloring and data live in different spaces".into()));
    }
    if phi.len() != data.k() {
        return Err(Error::InvalidColoring(format!(
            "{} colors for |F| = {}",
            phi.len(),
            data.k()
        )));
    }
    let built = build_ordered_coloring(data)?;
    Ok(built.classes == phi.classes)
}
