//! Finite quotients of a planar translation lattice and cell sets on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::geometry::QPoint;
use crate::error::{Error, Result};
use crate::exactnum::{floor_div, QuadNum, Rational};

/// Integer coordinates with respect to the fine basis.
pub type LatticeCoords = [i64; 2];

/// Exhaustive group-law verification is skipped above this order.
const VERIFY_LIMIT: usize = 64;

/// `Z² / L` for a full-rank sublattice `L`, with the fine lattice embedded in
/// the plane by `fine_basis`.
///
/// Elements are numbered `0..order`. When the first fine basis vector
/// generates the quotient, element `k` is the coset of `k·u`; otherwise the
/// numbering follows the sorted fundamental-domain representatives with the
/// identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    fine_basis: [QPoint; 2],
    coarse_basis: [LatticeCoords; 2],
    order: usize,
    reps: Vec<LatticeCoords>,
    lookup: HashMap<LatticeCoords, usize>,
    add_table: Vec<usize>,
    neg_table: Vec<usize>,
}

impl LatticeQuotient {
    pub fn new(fine_basis: [QPoint; 2], coarse_basis: [LatticeCoords; 2]) -> Result<Self> {
        let [[p, q], [r, s]] = coarse_basis;
        let det = (p as i128) * (s as i128) - (r as i128) * (q as i128);
        if det == 0 {
            return Err(Error::InvalidLattice("coarse basis is singular".into()));
        }
        if fine_basis[0].cross(&fine_basis[1]).is_zero() {
            return Err(Error::InvalidLattice("fine basis is degenerate".into()));
        }
        let order = usize::try_from(det.unsigned_abs())
            .map_err(|_| Error::InvalidLattice("index too large".into()))?;

        let mut quotient = LatticeQuotient {
            fine_basis,
            coarse_basis,
            order,
            reps: Vec::new(),
            lookup: HashMap::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };

        // Integer points of the half-open fundamental parallelogram.
        let xs = [0, p, r, p + r];
        let ys = [0, q, s, q + s];
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let mut domain = Vec::new();
        for a in x0..=x1 {
            for b in y0..=y1 {
                if quotient.reduce(&BigInt::from(a), &BigInt::from(b)) == [a, b] {
                    domain.push([a, b]);
                }
            }
        }
        if domain.len() != order {
            return Err(Error::InvalidLattice(format!(
                "found {} coset representatives for index {order}",
                domain.len()
            )));
        }

        let mut labelled = Vec::with_capacity(order);
        let mut cursor = [0i64, 0];
        loop {
            labelled.push(cursor);
            cursor = quotient.reduce(&BigInt::from(cursor[0] + 1), &BigInt::from(cursor[1]));
            if cursor == [0, 0] {
                break;
            }
        }
        if labelled.len() != order {
            domain.sort();
            labelled = std::iter::once([0, 0])
                .chain(domain.into_iter().filter(|c| *c != [0, 0]))
                .collect();
        }
        for (i, c) in labelled.iter().enumerate() {
            quotient.lookup.insert(*c, i);
        }
        quotient.reps = labelled.iter().map(|c| quotient.shortest_in_coset(*c)).collect();

        let mut add = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                let [a1, b1] = quotient.reps[i];
                let [a2, b2] = quotient.reps[j];
                add[i * order + j] = quotient.element_of_i64(a1 + a2, b1 + b2);
            }
        }
        quotient.add_table = add;
        quotient.neg_table = (0..order)
            .map(|i| {
                let [a, b] = quotient.reps[i];
                quotient.element_of_i64(-a, -b)
            })
            .collect();
        if order <= VERIFY_LIMIT {
            quotient.verify_group_laws()?;
        }
        Ok(quotient)
    }

    /// Reduces fine coordinates into the fundamental parallelogram of the
    /// coarse lattice.
    fn reduce(&self, a: &BigInt, b: &BigInt) -> LatticeCoords {
        let [[p, q], [r, s]] = self.coarse_basis;
        let (p, q, r, s) = (BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(s));
        let det = &p * &s - &r * &q;
        // (a, b) = x·(p, q) + y·(r, s)
        let x = floor_div(&(&s * a - &r * b), &det);
        let y = floor_div(&(&p * b - &q * a), &det);
        let ra = a - &x * &p - &y * &r;
        let rb = b - &x * &q - &y * &s;
        [
            ra.to_i64().expect("reduced coordinate is bounded by the coarse basis"),
            rb.to_i64().expect("reduced coordinate is bounded by the coarse basis"),
        ]
    }

    fn element_of_i64(&self, a: i64, b: i64) -> usize {
        self.element_of(&BigInt::from(a), &BigInt::from(b))
    }

    /// Coset of the fine lattice vector `a·u + b·v`.
    pub fn element_of(&self, a: &BigInt, b: &BigInt) -> usize {
        self.lookup[&self.reduce(a, b)]
    }

    fn shortest_in_coset(&self, c: LatticeCoords) -> LatticeCoords {
        let [[p, q], [r, s]] = self.coarse_basis;
        let mut best: Option<(LatticeCoords, QPoint, QuadNum)> = None;
        for i in -2..=2 {
            for j in -2..=2 {
                let cand = [c[0] + i * p + j * r, c[1] + i * q + j * s];
                let pt = self.point(cand);
                let len = pt.norm_sq();
                let better = match &best {
                    None => true,
                    Some((_, bp, bl)) => len < *bl || (len == *bl && pt.cmp_yx(bp).is_lt()),
                };
                if better {
                    best = Some((cand, pt, len));
                }
            }
        }
        best.unwrap().0
    }

    fn verify_group_laws(&self) -> Result<()> {
        let n = self.order;
        let fail = |what: &str| Err(Error::InvalidLattice(format!("group table fails {what}")));
        for i in 0..n {
            if self.add(i, 0) != i || self.add(0, i) != i {
                return fail("identity");
            }
            if self.add(i, self.neg(i)) != 0 {
                return fail("inverses");
            }
            for j in 0..n {
                if self.add(i, j) != self.add(j, i) {
                    return fail("commutativity");
                }
                for k in 0..n {
                    if self.add(self.add(i, j), k) != self.add(i, self.add(j, k)) {
                        return fail("associativity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn fine_basis(&self) -> &[QPoint; 2] {
        &self.fine_basis
    }

    pub fn coarse_basis(&self) -> [LatticeCoords; 2] {
        self.coarse_basis
    }

    pub fn determinant(&self) -> i128 {
        let [[p, q], [r, s]] = self.coarse_basis;
        (p as i128) * (s as i128) - (r as i128) * (q as i128)
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add_table[i * self.order + j]
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg_table[i]
    }

    /// Shortest fine-lattice vector of the coset (ties broken by `(y, x)`).
    pub fn representative(&self, e: usize) -> LatticeCoords {
        self.reps[e]
    }

    /// Plane position of a fine lattice vector.
    pub fn point(&self, c: LatticeCoords) -> QPoint {
        let [u, v] = &self.fine_basis;
        let a = QuadNum::rational(Rational::from_integer(c[0].into()));
        let b = QuadNum::rational(Rational::from_integer(c[1].into()));
        &u.scale(&a) + &v.scale(&b)
    }

    pub fn big_point(&self, a: &BigInt, b: &BigInt) -> QPoint {
        let [u, v] = &self.fine_basis;
        let a = QuadNum::rational(Rational::from_integer(a.clone()));
        let b = QuadNum::rational(Rational::from_integer(b.clone()));
        &u.scale(&a) + &v.scale(&b)
    }

    pub fn center(&self, e: usize) -> QPoint {
        self.point(self.reps[e])
    }

    fn check(&self, set: &CellSet) -> Result<()> {
        if set.order == self.order {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    fn check_element(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(g, self.order))
        }
    }

    /// `{s + g : s ∈ set}`.
    pub fn cell_translate(&self, set: &CellSet, g: usize) -> Result<CellSet> {
        self.check(set)?;
        self.check_element(g)?;
        Ok(self.translate_unchecked(set, g))
    }

    pub(crate) fn translate_unchecked(&self, set: &CellSet, g: usize) -> CellSet {
        CellSet {
            order: self.order,
            members: set.members.iter().map(|&s| self.add(s, g)).collect(),
        }
    }

    /// `{g : s + g ⊆ a}`.
    pub fn cell_erode(&self, a: &CellSet, s: &CellSet) -> Result<CellSet> {
        self.check(a)?;
        self.check(s)?;
        if s.is_empty() {
            return Err(Error::EmptyStructuringSet);
        }
        let members = (0..self.order)
            .filter(|&g| s.members.iter().all(|&x| a.contains(self.add(x, g))))
            .collect();
        Ok(CellSet { order: self.order, members })
    }

    pub fn cell_dilate(&self, a: &CellSet, s: &CellSet) -> Result<CellSet> {
        self.check(a)?;
        self.check(s)?;
        let members = a
            .members
            .iter()
            .flat_map(|&x| s.members.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.add(x, y))
            .collect();
        Ok(CellSet { order: self.order, members })
    }

    pub fn cell_reflect(&self, a: &CellSet) -> Result<CellSet> {
        self.check(a)?;
        Ok(CellSet { order: self.order, members: a.members.iter().map(|&x| self.neg(x)).collect() })
    }
}

/// A subset of the elements of a [`LatticeQuotient`]: a union of cell
/// classes of a lattice-periodic cell coloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellSet {
    order: usize,
    members: BTreeSet<usize>,
}

impl CellSet {
    pub fn new<I: IntoIterator<Item = usize>>(order: usize, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= order) {
            return Err(Error::ElementOutOfRange(bad, order));
        }
        Ok(CellSet { order, members })
    }

    pub fn empty(order: usize) -> Self {
        CellSet { order, members: BTreeSet::new() }
    }

    pub fn full(order: usize) -> Self {
        CellSet { order, members: (0..order).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> CellSet {
        CellSet { order: self.order, members: (0..self.order).filter(|e| !self.contains(*e)).collect() }
    }

    fn combine(&self, other: &CellSet, f: impl Fn(bool, bool) -> bool) -> CellSet {
        debug_assert_eq!(self.order, other.order);
        CellSet {
            order: self.order,
            members: (0..self.order).filter(|&e| f(self.contains(e), other.contains(e))).collect(),
        }
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.combine(other, |a, b| a && !b)
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Lattice coordinates `(a, b)` with `a·u + b·v = p`, for the basis `[u, v]`.
pub(crate) fn solve_coords(basis: &[QPoint; 2], p: &QPoint) -> (QuadNum, QuadNum) {
    let [u, v] = basis;
    let det = u.cross(v);
    let a = p.cross(v) / &det;
    let b = u.cross(p) / &det;
    (a, b)
}
