//! Exact plane geometry over Q(√3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoint {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl QPoint {
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        QPoint { x, y }
    }

    pub fn rational(x: Rational, y: Rational) -> Self {
        QPoint { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        Self::default()
    }

    pub fn scale(&self, k: &QuadNum) -> QPoint {
        QPoint { x: &self.x * k, y: &self.y * k }
    }

    pub fn dot(&self, other: &QPoint) -> QuadNum {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &QPoint) -> QuadNum {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_sq(&self) -> QuadNum {
        self.dot(self)
    }

    pub fn dist_sq(&self, other: &QPoint) -> QuadNum {
        (self - other).norm_sq()
    }

    /// Order by `y`, then `x`.
    pub fn cmp_yx(&self, other: &QPoint) -> Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add<&QPoint> for &QPoint {
    type Output = QPoint;
    fn add(self, rhs: &QPoint) -> QPoint {
        QPoint { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub<&QPoint> for &QPoint {
    type Output = QPoint;
    fn sub(self, rhs: &QPoint) -> QPoint {
        QPoint { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Add for QPoint {
    type Output = QPoint;
    fn add(self, rhs: QPoint) -> QPoint {
        &self + &rhs
    }
}

impl Sub for QPoint {
    type Output = QPoint;
    fn sub(self, rhs: QPoint) -> QPoint {
        &self - &rhs
    }
}

/// Sign of the turn `a → b → c` (positive for counter-clockwise).
pub fn orient(a: &QPoint, b: &QPoint, c: &QPoint) -> i8 {
    (b - a).cross(&(c - a)).sign()
}

fn within(lo: &QuadNum, hi: &QuadNum, v: &QuadNum) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= v && v <= hi
}

/// `p` lies on the closed segment `a b`, given collinearity.
fn on_segment(a: &QPoint, b: &QPoint, p: &QPoint) -> bool {
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

pub fn segments_intersect(p1: &QPoint, p2: &QPoint, q1: &QPoint, q2: &QPoint) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(q1, q2, p1))
        || (d2 == 0 && on_segment(q1, q2, p2))
        || (d3 == 0 && on_segment(p1, p2, q1))
        || (d4 == 0 && on_segment(p1, p2, q2))
}

/// Closed containment in a convex polygon of either orientation.
pub fn point_in_convex(p: &QPoint, poly: &[QPoint]) -> bool {
    let n = poly.len();
    let mut seen = 0i8;
    for i in 0..n {
        let s = orient(&poly[i], &poly[(i + 1) % n], p);
        if s != 0 {
            if seen != 0 && s != seen {
                return false;
            }
            seen = s;
        }
    }
    true
}

/// Squared distance from `p` to the closed segment `a b`.
pub fn point_segment_sq_dist(p: &QPoint, a: &QPoint, b: &QPoint) -> QuadNum {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq.is_zero() {
        return p.dist_sq(a);
    }
    let t = (p - a).dot(&ab) / &len_sq;
    if t.sign() <= 0 {
        p.dist_sq(a)
    } else if t >= QuadNum::one() {
        p.dist_sq(b)
    } else {
        let foot = a + &ab.scale(&t);
        p.dist_sq(&foot)
    }
}

fn check_polygon(poly: &[QPoint]) -> Result<()> {
    if poly.len() < 3 {
        Err(Error::DegeneratePolygon(poly.len()))
    } else {
        Ok(())
    }
}

fn edges(poly: &[QPoint]) -> impl Iterator<Item = (&QPoint, &QPoint)> {
    poly.iter().zip(poly.iter().cycle().skip(1))
}

/// Exact minimum squared distance between the closures of two convex
/// polygons; zero when they meet.
pub fn min_sq_distance(p: &[QPoint], q: &[QPoint]) -> Result<QuadNum> {
    check_polygon(p)?;
    check_polygon(q)?;
    let touching = p.iter().any(|v| point_in_convex(v, q))
        || q.iter().any(|v| point_in_convex(v, p))
        || edges(p).any(|(a, b)| edges(q).any(|(c, d)| segments_intersect(a, b, c, d)));
    if touching {
        return Ok(QuadNum::zero());
    }
    let one_way = |from: &[QPoint], to: &[QPoint]| {
        from.iter()
            .flat_map(|v| edges(to).map(move |(a, b)| point_segment_sq_dist(v, a, b)))
            .min()
    };
    let best = one_way(p, q).into_iter().chain(one_way(q, p)).min();
    Ok(best.expect("polygons have vertices"))
}

/// Exact maximum squared distance between the closures of two convex
/// polygons, attained at a vertex pair.
pub fn max_sq_distance(p: &[QPoint], q: &[QPoint]) -> Result<QuadNum> {
    check_polygon(p)?;
    check_polygon(q)?;
    let best = p.iter().flat_map(|a| q.iter().map(move |b| a.dist_sq(b))).max();
    Ok(best.expect("polygons have vertices"))
}
