//! The hexagonal Hadwiger tiling: regular hexagons of diameter `d` centred on
//! a triangular lattice, repeated by an index-7 sublattice.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::geometry::{max_sq_distance, min_sq_distance, QPoint};
use super::quotient::{solve_coords, CellSet, LatticeCoords, LatticeQuotient};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, QuadNum, Rational};
use crate::space::SetSpace;
use crate::szlam::Coloring;

/// Coarse basis of the Hadwiger tile lattice in `(u, v)` coordinates:
/// `u + 2v` and its 60° rotation `-2u + 3v`.
pub const HADWIGER_COARSE: [LatticeCoords; 2] = [[1, 2], [-2, 3]];

/// A regular hexagon of diameter `d` centred at the origin, with vertices at
/// `(0, ±d/2)` and `(±√3·d/4, ±d/4)`, listed counter-clockwise from the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexPrototile {
    diameter: Rational,
    circumradius: Rational,
    vertices: [QPoint; 6],
}

impl HexPrototile {
    pub fn new(diameter: Rational) -> Result<Self> {
        if !diameter.is_positive() {
            return Err(Error::NonPositiveDiameter(diameter));
        }
        let r = &diameter / int(2);
        let half = &r / int(2);
        let dx = QuadNum::new(int(0), &r / int(2)); // √3·r/2
        let y = |v: &Rational| QuadNum::rational(v.clone());
        let vertices = [
            QPoint::new(QuadNum::zero(), y(&r)),
            QPoint::new(-&dx, y(&half)),
            QPoint::new(-&dx, y(&-&half)),
            QPoint::new(QuadNum::zero(), y(&-&r)),
            QPoint::new(dx.clone(), y(&-&half)),
            QPoint::new(dx, y(&half)),
        ];
        Ok(HexPrototile { diameter, circumradius: r, vertices })
    }

    pub fn diameter(&self) -> &Rational {
        &self.diameter
    }

    pub fn circumradius(&self) -> &Rational {
        &self.circumradius
    }

    pub fn vertices(&self) -> &[QPoint; 6] {
        &self.vertices
    }

    /// The prototile translated to `center`.
    pub fn placed(&self, center: &QPoint) -> Vec<QPoint> {
        self.vertices.iter().map(|v| v + center).collect()
    }
}

/// Cell colorings of the plane that are periodic under the Hadwiger tile
/// lattice. Sets are [`CellSet`]s; shifts are quotient elements; points are
/// exact plane points.
#[derive(Clone, Debug)]
pub struct HexSpace {
    quotient: Arc<LatticeQuotient>,
    prototile: Arc<HexPrototile>,
}

impl PartialEq for HexSpace {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.quotient, &other.quotient) || self.quotient == other.quotient)
            && self.prototile == other.prototile
    }
}

impl HexSpace {
    /// Fine basis `u = (√3·d/2, 0)`, `v = (√3·d/4, 3d/4)` modulo
    /// [`HADWIGER_COARSE`].
    pub fn hadwiger(diameter: Rational) -> Result<Self> {
        let prototile = HexPrototile::new(diameter.clone())?;
        let u = QPoint::new(QuadNum::new(int(0), &diameter / int(2)), QuadNum::zero());
        let v = QPoint::new(
            QuadNum::new(int(0), &diameter / int(4)),
            QuadNum::rational(&diameter * rat(3, 4)),
        );
        let quotient = LatticeQuotient::new([u, v], HADWIGER_COARSE)?;
        Ok(HexSpace { quotient: Arc::new(quotient), prototile: Arc::new(prototile) })
    }

    pub fn quotient(&self) -> &LatticeQuotient {
        &self.quotient
    }

    pub fn prototile(&self) -> &HexPrototile {
        &self.prototile
    }

    pub fn diameter(&self) -> &Rational {
        self.prototile.diameter()
    }

    pub fn order(&self) -> usize {
        self.quotient.order()
    }

    /// Closure of the hexagon centred at the fine lattice vector `c`.
    pub fn cell_polygon(&self, c: LatticeCoords) -> Vec<QPoint> {
        self.prototile.placed(&self.quotient.point(c))
    }

    /// Fine lattice vectors of one coarse domain (the representatives of the
    /// quotient, in element order) followed by the ring of cells around it.
    pub fn patch(&self) -> Vec<LatticeCoords> {
        let q = &self.quotient;
        let mut cells: Vec<LatticeCoords> = (0..q.order()).map(|e| q.representative(e)).collect();
        for e in 0..q.order() {
            let [a, b] = q.representative(e);
            for (i, j) in [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)] {
                let c = [a + i, b + j];
                if !cells.contains(&c) {
                    cells.push(c);
                }
            }
        }
        cells
    }

    /// The cell owning `p`: the one whose closed hexagon contains it, ties on
    /// shared boundaries going to the incident cell whose center is smallest
    /// in `(y, x)` order.
    pub fn point_to_cell(&self, p: &QPoint) -> usize {
        match self.shortlist(p) {
            Some(cands) if cands.len() == 1 => self.quotient.element_of(&cands[0].0, &cands[0].1),
            Some(cands) => self.nearest_exact(p, cands),
            None => {
                let (a, b) = solve_coords(self.quotient.fine_basis(), p);
                let (fa, fb) = (a.floor(), b.floor());
                let window = (-1..=2).flat_map(|i| (-1..=2).map(move |j| (i, j)));
                let cands = window.map(|(i, j)| (&fa + i, &fb + j)).collect();
                self.nearest_exact(p, cands)
            }
        }
    }

    /// Centers whose `f64` distance to `p` is within a rounding margin of the
    /// smallest one. The exact nearest center is always among them. `None`
    /// when the coordinates are too large for the margin to be sound.
    fn shortlist(&self, p: &QPoint) -> Option<Vec<(BigInt, BigInt)>> {
        let (px, py) = p.to_f64();
        let scale = px.abs().max(py.abs());
        if !scale.is_finite() || scale > 1e6 {
            return None;
        }
        let [u, v] = self.quotient.fine_basis();
        let ((ux, uy), (vx, vy)) = (u.to_f64(), v.to_f64());
        let det = ux * vy - uy * vx;
        let a = (px * vy - py * vx) / det;
        let b = (ux * py - uy * px) / det;
        // the float floors may be one off, so widen the exact window by one
        let (fa, fb) = (a.floor() as i64, b.floor() as i64);
        let mut cands: Vec<(i64, i64, f64)> = Vec::with_capacity(36);
        for i in -2..=3 {
            for j in -2..=3 {
                let (ca, cb) = ((fa + i) as f64, (fb + j) as f64);
                let (dx, dy) = (px - (ca * ux + cb * vx), py - (ca * uy + cb * vy));
                cands.push((fa + i, fb + j, dx * dx + dy * dy));
            }
        }
        let best = cands.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
        let margin = 1e-9 * (1.0 + scale * scale);
        Some(
            cands
                .into_iter()
                .filter(|c| c.2 <= best + margin)
                .map(|(a, b, _)| (BigInt::from(a), BigInt::from(b)))
                .collect(),
        )
    }

    fn nearest_exact(&self, p: &QPoint, cands: Vec<(BigInt, BigInt)>) -> usize {
        let mut best: Option<(BigInt, BigInt, QPoint, QuadNum)> = None;
        for (ca, cb) in cands {
            let center = self.quotient.big_point(&ca, &cb);
            let dist = p.dist_sq(&center);
            let better = match &best {
                None => true,
                Some((_, _, bc, bd)) => {
                    dist < *bd || (dist == *bd && center.cmp_yx(bc).is_lt())
                }
            };
            if better {
                best = Some((ca, cb, center, dist));
            }
        }
        let (ca, cb, _, _) = best.expect("candidate window is nonempty");
        self.quotient.element_of(&ca, &cb)
    }
}

/// Output of [`build_hadwiger`].
#[derive(Clone, Debug)]
pub struct Hadwiger {
    pub space: HexSpace,
    /// Cell `k` gets color `c{k+1}`.
    pub coloring: Coloring<HexSpace>,
    /// Set when `d` lies outside `(2/√7, 1]`, where the seven colors are no
    /// longer guaranteed to forbid distance 1.
    pub warning: Option<String>,
}

pub fn build_hadwiger(diameter: Rational) -> Result<Hadwiger> {
    let space = HexSpace::hadwiger(diameter.clone())?;
    let n = space.order();
    let labels = (1..=n).map(|i| format!("c{i}")).collect();
    let classes = (0..n).map(|k| CellSet::new(n, [k]).expect("k < order")).collect();
    let coloring = Coloring::new(space.clone(), labels, classes)?;
    // 2/√7 < d  ⇔  4/7 < d²
    let d2 = &diameter * &diameter;
    let warning = if d2 <= rat(4, 7) || diameter > Rational::one() {
        Some(format!("diameter {diameter} is outside (2/sqrt7, 1]"))
    } else {
        None
    };
    Ok(Hadwiger { space, coloring, warning })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceVerdict {
    /// No two points of `B` are at distance 1.
    Safe,
    /// Distance 1 occurs between points of `B`, but only on cell boundaries.
    BoundaryCritical,
    /// Some pair of interior points of `B` is at distance 1.
    Violated,
}

impl std::fmt::Display for DistanceVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceVerdict::Safe => "safe",
            DistanceVerdict::BoundaryCritical => "boundary_critical",
            DistanceVerdict::Violated => "violated",
        })
    }
}

fn classify(lo: &QuadNum, hi: &QuadNum) -> DistanceVerdict {
    let one = QuadNum::one();
    if *lo > one || *hi < one {
        DistanceVerdict::Safe
    } else if *lo < one && *hi > one {
        DistanceVerdict::Violated
    } else {
        DistanceVerdict::BoundaryCritical
    }
}

/// Decides whether the union of closed `B`-cells contains two points at
/// Euclidean distance exactly 1.
///
/// Same-cell pairs realize every squared distance in `[0, d²]`; distinct
/// cells are compared through the exact min/max distance of their closed
/// hexagons, over every `B`-cell whose center lies within `1 + d`.
pub fn b_forbids_unit_distance(space: &HexSpace, b: &CellSet) -> DistanceVerdict {
    if b.is_empty() {
        return DistanceVerdict::Safe;
    }
    let d = space.diameter();
    let d2 = QuadNum::rational(d * d);
    let mut verdict = classify(&QuadNum::zero(), &d2);
    if verdict == DistanceVerdict::Violated {
        return verdict;
    }

    // |a·u + b·v|² = (3d²/4)(a² + ab + b²) ≥ (3d²/8)·max(|a|,|b|)²
    let reach = (Rational::one() + d) * (Rational::one() + d);
    let floor_coeff = d * d * rat(3, 8);
    let mut radius: i64 = 0;
    while &floor_coeff * int((radius + 1) * (radius + 1)) <= reach {
        radius += 1;
    }
    let reach = QuadNum::rational(reach);
    let q = space.quotient();
    for e in b.iter() {
        let c0 = q.representative(e);
        let poly0 = space.cell_polygon(c0);
        for i in -radius..=radius {
            for j in -radius..=radius {
                if (i, j) == (0, 0) {
                    continue;
                }
                let c = [c0[0] + i, c0[1] + j];
                if !b.contains(q.element_of(&c[0].into(), &c[1].into())) {
                    continue;
                }
                if q.point([i, j]).norm_sq() > reach {
                    continue;
                }
                let poly = space.cell_polygon(c);
                let lo = min_sq_distance(&poly0, &poly).expect("hexagons are proper polygons");
                let hi = max_sq_distance(&poly0, &poly).expect("hexagons are proper polygons");
                match classify(&lo, &hi) {
                    DistanceVerdict::Violated => return DistanceVerdict::Violated,
                    DistanceVerdict::BoundaryCritical => verdict = DistanceVerdict::BoundaryCritical,
                    DistanceVerdict::Safe => {}
                }
            }
        }
    }
    verdict
}

impl SetSpace for HexSpace {
    type Set = CellSet;
    type Shift = usize;
    type Point = QPoint;

    fn owns(&self, set: &CellSet) -> bool {
        set.order() == self.order()
    }

    fn empty(&self) -> CellSet {
        CellSet::empty(self.order())
    }

    fn full(&self) -> CellSet {
        CellSet::full(self.order())
    }

    fn is_empty(&self, a: &CellSet) -> bool {
        a.is_empty()
    }

    fn complement(&self, a: &CellSet) -> CellSet {
        a.complement()
    }

    fn union(&self, a: &CellSet, b: &CellSet) -> CellSet {
        a.union(b)
    }

    fn intersect(&self, a: &CellSet, b: &CellSet) -> CellSet {
        a.intersect(b)
    }

    fn difference(&self, a: &CellSet, b: &CellSet) -> CellSet {
        a.difference(b)
    }

    fn translate(&self, a: &CellSet, t: &usize) -> CellSet {
        self.quotient.translate_unchecked(a, *t)
    }

    fn reflect(&self, a: &CellSet) -> CellSet {
        self.quotient.cell_reflect(a).expect("owned set")
    }

    fn dilate(&self, a: &CellSet, s: &CellSet) -> CellSet {
        self.quotient.cell_dilate(a, s).expect("owned sets")
    }

    fn erode(&self, a: &CellSet, s: &CellSet) -> Option<CellSet> {
        self.quotient.cell_erode(a, s).ok()
    }

    fn zero(&self) -> usize {
        0
    }

    fn canonical(&self, t: &usize) -> usize {
        *t
    }

    fn neg(&self, t: &usize) -> usize {
        self.quotient.neg(*t)
    }

    fn sub(&self, a: &usize, b: &usize) -> usize {
        self.quotient.add(*a, self.quotient.neg(*b))
    }

    fn singleton(&self, t: &usize) -> CellSet {
        CellSet::new(self.order(), [*t]).expect("element in range")
    }

    fn contains_shift(&self, a: &CellSet, t: &usize) -> bool {
        a.contains(*t)
    }

    fn contains_point(&self, a: &CellSet, p: &QPoint) -> bool {
        a.contains(self.point_to_cell(p))
    }

    fn locate(&self, classes: &[CellSet], p: &QPoint) -> Option<usize> {
        let cell = self.point_to_cell(p);
        classes.iter().position(|c| c.contains(cell))
    }

    fn pick(&self, a: &CellSet) -> Option<usize> {
        a.iter().next()
    }

    fn representatives(&self, a: &CellSet, _want: usize) -> Vec<usize> {
        a.iter().collect()
    }
}
