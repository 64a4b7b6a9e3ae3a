//! Unit-distance graphs on finite exact point sets, and properness checks of
//! colorings on them.
//!
//! Pair search buckets points on a fine grid using `f64` shadows of the
//! coordinates and only compares buckets whose distance range straddles 1;
//! every candidate is then decided exactly.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cellular::{HexSpace, QPoint};
use crate::exactnum::{int, rat, to_f64, QuadNum, Rational};
use crate::space::{PeriodicLine, SetSpace};
use crate::szlam::Coloring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormTag {
    L1,
    L2,
    LInf,
}

impl NormTag {
    pub const ALL: [NormTag; 3] = [NormTag::L1, NormTag::L2, NormTag::LInf];

    fn of(self, dx: f64, dy: f64) -> f64 {
        let (dx, dy) = (dx.abs(), dy.abs());
        match self {
            NormTag::L1 => dx + dy,
            NormTag::L2 => dx.hypot(dy),
            NormTag::LInf => dx.max(dy),
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormTag::L1 => "l1",
            NormTag::L2 => "l2",
            NormTag::LInf => "linf",
        })
    }
}

impl FromStr for NormTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormTag::L1),
            "l2" => Ok(NormTag::L2),
            "linf" => Ok(NormTag::LInf),
            _ => Err(format!("unknown norm `{s}` (expected l1, l2 or linf)")),
        }
    }
}

/// Exact points with an `f64` shadow for bucketing.
pub trait MetricPoint: Clone + fmt::Debug + fmt::Display + Eq + Hash {
    fn approx(&self) -> [f64; 2];
    fn is_unit_apart(&self, other: &Self, norm: NormTag) -> bool;
    /// A few points at distance exactly 1 from `self` under `norm`.
    fn unit_partners(&self, norm: NormTag) -> Vec<Self>;
}

impl MetricPoint for Rational {
    fn approx(&self) -> [f64; 2] {
        [to_f64(self), 0.0]
    }

    fn is_unit_apart(&self, other: &Self, _norm: NormTag) -> bool {
        (self - other).abs().is_one()
    }

    fn unit_partners(&self, _norm: NormTag) -> Vec<Self> {
        vec![self + int(1), self - int(1)]
    }
}

fn unit_directions(norm: NormTag) -> Vec<(QuadNum, QuadNum)> {
    let q = |n, d| QuadNum::rational(rat(n, d));
    let half_root3 = QuadNum::new(int(0), rat(1, 2));
    let base: Vec<(QuadNum, QuadNum)> = match norm {
        NormTag::L2 => vec![
            (q(1, 1), q(0, 1)),
            (q(3, 5), q(4, 5)),
            (q(4, 5), q(3, 5)),
            (q(5, 13), q(12, 13)),
            (q(1, 2), half_root3.clone()),
            (half_root3, q(1, 2)),
        ],
        NormTag::L1 => vec![(q(1, 1), q(0, 1)), (q(1, 2), q(1, 2)), (q(1, 4), q(3, 4))],
        NormTag::LInf => vec![(q(1, 1), q(0, 1)), (q(1, 1), q(1, 1)), (q(1, 1), q(1, 3))],
    };
    let mut dirs = Vec::new();
    for (x, y) in base {
        for (a, b) in [(x.clone(), y.clone()), (y.clone(), x.clone())] {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let d = (a.scale(&int(sa)), b.scale(&int(sb)));
                if !dirs.contains(&d) {
                    dirs.push(d);
                }
            }
        }
    }
    dirs
}

impl MetricPoint for QPoint {
    fn approx(&self) -> [f64; 2] {
        let (x, y) = self.to_f64();
        [x, y]
    }

    fn is_unit_apart(&self, other: &Self, norm: NormTag) -> bool {
        let d = self - other;
        match norm {
            NormTag::L2 => d.norm_sq() == QuadNum::one(),
            NormTag::L1 => d.x.abs() + d.y.abs() == QuadNum::one(),
            NormTag::LInf => std::cmp::max(d.x.abs(), d.y.abs()) == QuadNum::one(),
        }
    }

    fn unit_partners(&self, norm: NormTag) -> Vec<Self> {
        unit_directions(norm)
            .into_iter()
            .map(|(dx, dy)| QPoint::new(&self.x + &dx, &self.y + &dy))
            .collect()
    }
}

/// Points with one color label each.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredPointSet<P> {
    points: Vec<P>,
    colors: Vec<String>,
}

impl<P: MetricPoint> ColoredPointSet<P> {
    pub fn new(points: Vec<P>, colors: Vec<String>) -> Option<Self> {
        (points.len() == colors.len()).then_some(ColoredPointSet { points, colors })
    }

    /// Colors every point by `phi`.
    pub fn from_coloring<S: SetSpace<Point = P>>(phi: &Coloring<S>, points: Vec<P>) -> Self {
        let colors = points.iter().map(|p| point_color(phi, p).to_string()).collect();
        ColoredPointSet { points, colors }
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Label of the class containing `p`.
pub fn point_color<'a, S: SetSpace>(phi: &'a Coloring<S>, p: &S::Point) -> &'a str {
    phi.color_of(p).expect("the classes of a coloring partition the space")
}

const BUCKET: f64 = 1.0 / 16.0;
// Relative to the largest coordinate; far above `f64` rounding of exact inputs.
const SLACK: f64 = 1e-7;

fn bucket_of(p: [f64; 2]) -> (i64, i64) {
    ((p[0] / BUCKET).floor() as i64, (p[1] / BUCKET).floor() as i64)
}

/// Bucket offsets whose point-to-point distance range meets 1.
fn ring_offsets(norm: NormTag, flat: bool, slack: f64) -> Vec<(i64, i64)> {
    let reach = (1.0 / BUCKET).ceil() as i64 + 2;
    let ys = if flat { 0..=0 } else { -reach..=reach };
    let mut out = Vec::new();
    for j in ys {
        for i in -reach..=reach {
            let near = |k: i64| (k.abs() - 1).max(0) as f64 * BUCKET;
            let far = |k: i64| (k.abs() + 1) as f64 * BUCKET;
            let lo = norm.of(near(i), near(j));
            let hi = norm.of(far(i), far(j));
            if lo <= 1.0 + slack && hi >= 1.0 - slack && (i, j) >= (0, 0) {
                out.push((i, j));
            }
        }
    }
    out
}

fn pairs_of<P: MetricPoint>(points: &[P], norm: NormTag) -> Vec<(usize, usize)> {
    let shadows: Vec<[f64; 2]> = points.iter().map(|p| p.approx()).collect();
    let scale = shadows.iter().flatten().fold(0.0f64, |m, c| m.max(c.abs()));
    if !scale.is_finite() {
        return all_pairs(points, norm);
    }
    let slack = SLACK * (1.0 + scale);
    let flat = shadows.iter().all(|s| s[1] == 0.0);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, s) in shadows.iter().enumerate() {
        buckets.entry(bucket_of(*s)).or_default().push(i);
    }
    let offsets = ring_offsets(norm, flat, slack);
    let mut pairs = BTreeSet::new();
    for (&(bx, by), members) in &buckets {
        for &(di, dj) in &offsets {
            let Some(others) = buckets.get(&(bx + di, by + dj)) else { continue };
            for &a in members {
                for &b in others {
                    if a == b {
                        continue;
                    }
                    let (sa, sb) = (shadows[a], shadows[b]);
                    let approx = norm.of(sa[0] - sb[0], sa[1] - sb[1]);
                    if (approx - 1.0).abs() > slack {
                        continue;
                    }
                    if points[a].is_unit_apart(&points[b], norm) {
                        pairs.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    pairs.into_iter().collect()
}

fn all_pairs<P: MetricPoint>(points: &[P], norm: NormTag) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].is_unit_apart(&points[j], norm) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every unordered index pair `(i, j)`, `i < j`, at distance exactly 1.
pub fn unit_pairs<P: MetricPoint>(ps: &ColoredPointSet<P>, norm: NormTag) -> Vec<(usize, usize)> {
    pairs_of(&ps.points, norm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReport {
    pub norm: NormTag,
    pub points: usize,
    pub unit_pairs: usize,
    /// Unit pairs whose endpoints share a color.
    pub violations: Vec<(usize, usize)>,
}

impl ProperReport {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ProperReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} points, {} unit pairs under {}, {} monochromatic",
            self.points,
            self.unit_pairs,
            self.norm,
            self.violations.len()
        )
    }
}

pub fn check_proper<P: MetricPoint>(ps: &ColoredPointSet<P>, norm: NormTag) -> ProperReport {
    let pairs = unit_pairs(ps, norm);
    let violations = pairs.iter().copied().filter(|&(a, b)| ps.colors[a] == ps.colors[b]).collect();
    ProperReport { norm, points: ps.len(), unit_pairs: pairs.len(), violations }
}

/// Spaces that can produce deterministic exact witness points for a coloring.
pub trait Sampling: SetSpace<Point: MetricPoint> {
    /// Grid points with seeded jitter of bounded denominator, plus the
    /// boundary points of `classes` where violations concentrate.
    fn sample_points(&self, classes: &[Self::Set], count_hint: usize, seed: u64) -> Vec<Self::Point>;
}

const JITTER_DENOM: i64 = 64;

impl Sampling for PeriodicLine {
    /// Points in `[0, period)`: every class endpoint, then `count_hint` grid
    /// cells each holding one point at a random multiple of a 64th of the cell.
    fn sample_points(&self, classes: &[Self::Set], count_hint: usize, seed: u64) -> Vec<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<Rational> = vec![Rational::zero()];
        for c in classes {
            points.extend(c.endpoints());
        }
        let n = count_hint.max(1) as i64;
        for k in 0..n {
            let m = rng.gen_range(0..JITTER_DENOM);
            points.push(self.period() * Rational::new((k * JITTER_DENOM + m).into(), (n * JITTER_DENOM).into()));
        }
        dedup(points)
    }
}

impl Sampling for HexSpace {
    /// Centers, vertices and edge midpoints of the cells of one coarse
    /// domain and its surrounding ring, plus a jittered grid over the domain.
    fn sample_points(&self, _classes: &[Self::Set], count_hint: usize, seed: u64) -> Vec<QPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.quotient();
        let mut points = Vec::new();
        let cells = self.patch();
        let half = QuadNum::rational(rat(1, 2));
        for c in &cells {
            let center = q.point(*c);
            let poly = self.cell_polygon(*c);
            points.push(center);
            for (i, v) in poly.iter().enumerate() {
                let w = &poly[(i + 1) % poly.len()];
                points.push(v.clone());
                points.push((v + w).scale(&half));
            }
        }
        let [c1, c2] = q.coarse_basis();
        let (g1, g2) = (q.point(c1), q.point(c2));
        let n = (count_hint.max(1) as f64).sqrt().ceil() as i64;
        for i in 0..n {
            for j in 0..n {
                let mut coord = |k: i64| {
                    let m = rng.gen_range(0..JITTER_DENOM);
                    QuadNum::rational(Rational::new((k * JITTER_DENOM + m).into(), (n * JITTER_DENOM).into()))
                };
                let (s, t) = (coord(i), coord(j));
                points.push(&g1.scale(&s) + &g2.scale(&t));
            }
        }
        dedup(points)
    }
}

fn dedup<P: Clone + Eq + Hash>(points: Vec<P>) -> Vec<P> {
    let mut seen = HashSet::with_capacity(points.len());
    points.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

/// Deterministic exact sample of points for `phi`'s space.
pub fn sample_lattice_points<S>(phi: &Coloring<S>, count_hint: usize, seed: u64) -> Vec<S::Point>
where
    S: Sampling,
{
    phi.space().sample_points(phi.classes(), count_hint, seed)
}

/// [`sample_lattice_points`] plus unit-distance partners of every sample, so
/// that the witness set actually contains unit pairs.
pub fn witness_points<S>(phi: &Coloring<S>, count_hint: usize, seed: u64, norm: NormTag) -> Vec<S::Point>
where
    S: Sampling,
{
    let base = sample_lattice_points(phi, count_hint, seed);
    let mut out = base.clone();
    for p in &base {
        out.extend(p.unit_partners(norm));
    }
    dedup(out)
}
