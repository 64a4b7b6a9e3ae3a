//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod docs;
pub mod laws;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szlam_core::exactnum::{int, rat, Rational};
use szlam_core::{build_ordered_coloring, Atom, Coloring, PeriodicLine, PeriodicSet, SetSpace, SzlamData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A span with endpoints on the `1/denom` grid, random endpoint flags and
/// length below `max_len` (possibly wrapping past the period).
pub fn random_atom(r: &mut ChaCha8Rng, period: i64, denom: i64, max_len: i64) -> Atom {
    let lo = r.gen_range(0..period * denom);
    let len = r.gen_range(0..=max_len * denom);
    let (lc, hc) = if len == 0 { (true, true) } else { (r.gen_bool(0.5), r.gen_bool(0.5)) };
    Atom::new(rat(lo, denom), rat(lo + len, denom), lc, hc)
}

pub fn random_set(r: &mut ChaCha8Rng, period: i64, denom: i64, pieces: usize) -> PeriodicSet {
    let atoms: Vec<Atom> = (0..pieces).map(|_| random_atom(r, period, denom, period.max(2) / 2)).collect();
    PeriodicSet::normalize(int(period), atoms).expect("positive period")
}

/// Valid Szlam data with integer period at most `max_period`, endpoints and
/// shifts on the `1/denom` grid, and `1..=max_k` shifts. Coverage is forced
/// by adding the uncovered part back into `B`.
pub fn random_szlam(r: &mut ChaCha8Rng, max_period: i64, denom: i64, max_k: usize) -> SzlamData<PeriodicLine> {
    let period = r.gen_range(1..=max_period);
    let space = PeriodicLine::new(int(period)).expect("positive period");
    let k = r.gen_range(1..=max_k).min((period * denom) as usize);
    let mut grid: Vec<i64> = (0..period * denom).collect();
    grid.shuffle(r);
    let f: Vec<Rational> = grid[..k].iter().map(|&g| rat(g, denom) - int(r.gen_range(0..2) * period)).collect();
    let pieces = r.gen_range(1..=3);
    let mut b = random_set(r, period, denom, pieces);
    let covered = f.iter().fold(space.empty(), |acc, fi| space.union(&acc, &space.translate(&b, &-fi)));
    let gap = space.complement(&covered);
    b = space.union(&b, &space.translate(&gap, &f[0]));
    SzlamData::new(space, b, f).expect("distinct shifts, nonempty B")
}

/// A partition of `[0, period)` cut at random `1/denom` grid points; open
/// pieces and cut points get random colors among `k` labels.
pub fn random_partition(r: &mut ChaCha8Rng, period: i64, denom: i64, k: usize) -> Coloring<PeriodicLine> {
    let space = PeriodicLine::new(int(period)).expect("positive period");
    let cuts_wanted = r.gen_range(1..=(2 * k).min((period * denom) as usize));
    let mut grid: Vec<i64> = (1..period * denom).collect();
    grid.shuffle(r);
    let mut cuts: Vec<i64> = std::iter::once(0).chain(grid.into_iter().take(cuts_wanted - 1)).collect();
    cuts.sort();
    let mut atoms: Vec<Vec<Atom>> = vec![Vec::new(); k];
    let n = cuts.len();
    let mut piece_color = Vec::with_capacity(n);
    for i in 0..n {
        let lo = rat(cuts[i], denom);
        let hi = if i + 1 < n { rat(cuts[i + 1], denom) } else { int(period) };
        let c = r.gen_range(0..k);
        piece_color.push(c);
        atoms[c].push(Atom::open(lo, hi));
    }
    for i in 0..n {
        let left = piece_color[(i + n - 1) % n];
        let right = piece_color[i];
        let c = match r.gen_range(0..4) {
            0 => r.gen_range(0..k),
            1 => left,
            _ => right,
        };
        atoms[c].push(Atom::point(rat(cuts[i], denom)));
    }
    let labels = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let classes = atoms.into_iter().map(|a| space.set(a)).collect();
    Coloring::new(space, labels, classes).expect("pieces partition the period")
}

/// The ordered Szlam coloring of random data, with labels shuffled so that
/// the dominant ordering is not the declared one.
pub fn random_dominant(r: &mut ChaCha8Rng, max_period: i64, denom: i64, max_k: usize) -> Coloring<PeriodicLine> {
    let data = random_szlam(r, max_period, denom, max_k);
    let phi = build_ordered_coloring(&data).expect("valid data");
    let mut idx: Vec<usize> = (0..phi.len()).collect();
    idx.shuffle(r);
    let labels = idx.iter().map(|&i| format!("x{}", phi.labels()[i])).collect();
    let classes = idx.iter().map(|&i| phi.classes()[i].clone()).collect();
    Coloring::new(phi.space().clone(), labels, classes).expect("relabeling a coloring")
}

/// Membership of `x ∈ [0, period)` straight from the atoms.
pub fn member(set: &PeriodicSet, x: &Rational) -> bool {
    set.atoms().iter().any(|a| {
        (a.lo < *x && *x < a.hi) || (a.lo == *x && a.lo_closed) || (a.hi == *x && a.hi_closed)
    })
}

/// Sample of `set` at the points `j / res`, `0 <= j < res * period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn sample(set: &PeriodicSet, period: i64, res: i64) -> Bits {
        let len = (period * res) as usize;
        let mut b = Bits { len, words: vec![0; len.div_ceil(64)] };
        for j in 0..len {
            if member(set, &rat(j as i64, res)) {
                b.words[j / 64] |= 1 << (j % 64);
            }
        }
        b
    }

    pub fn get(&self, j: usize) -> bool {
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    /// The sample of the set translated by `s / res`.
    pub fn rotated(&self, s: usize) -> Bits {
        let mut out = Bits { len: self.len, words: vec![0; self.words.len()] };
        for j in 0..self.len {
            if self.get(j) {
                let k = (j + s) % self.len;
                out.words[k / 64] |= 1 << (k % 64);
            }
        }
        out
    }

    pub fn subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn disjoint(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

/// Brute-force dominance over translaters on the `1/grid` lattice. Exact
/// whenever every endpoint lies on that lattice: sampling at `1/(2·grid)`
/// sees every point and every open gap of sets with such endpoints.
pub struct GridOracle {
    grid: i64,
    period: i64,
    /// `moved[c][m]`: class `c` translated by `m / grid`.
    moved: Vec<Vec<Bits>>,
}

impl GridOracle {
    pub fn new(phi: &Coloring<PeriodicLine>, grid: i64) -> Self {
        let period: i64 = phi.space().period().to_integer().try_into().expect("integer period");
        assert!(phi.space().period().is_integer(), "grid oracle needs an integer period");
        let bits: Vec<Bits> = phi.classes().iter().map(|c| Bits::sample(c, period, 2 * grid)).collect();
        let moved = bits
            .iter()
            .map(|b| (0..grid * period).map(|m| b.rotated((2 * m) as usize)).collect())
            .collect();
        GridOracle { grid, period, moved }
    }

    /// Admissible `m` (`0 < m < grid·period`) at each position `2..=k` of
    /// `ordering` (indices into the coloring's classes).
    pub fn admissible(&self, ordering: &[usize]) -> Vec<Vec<i64>> {
        let head = &self.moved[ordering[0]][0];
        let mut admissible = vec![Vec::new(); ordering.len().saturating_sub(1)];
        for m in 1..self.grid * self.period {
            let mu = m as usize;
            for i in 1..ordering.len() {
                let inside = self.moved[ordering[i]][mu].subset_of(head);
                if inside && ordering[i + 1..].iter().all(|&j| self.moved[j][mu].disjoint(head)) {
                    admissible[i - 1].push(m);
                }
            }
        }
        admissible
    }

    pub fn dominant(&self, ordering: &[usize]) -> bool {
        has_sdr(&self.admissible(ordering))
    }
}

/// Distinct representatives by backtracking; a set with at least as many
/// members as there are sets can always be served last, so candidates are
/// capped at that size.
pub fn has_sdr(sets: &[Vec<i64>]) -> bool {
    fn go(i: usize, sets: &[Vec<i64>], used: &mut Vec<i64>) -> bool {
        if i == sets.len() {
            return true;
        }
        for &m in sets[i].iter().take(sets.len()) {
            if !used.contains(&m) {
                used.push(m);
                if go(i + 1, sets, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    go(0, sets, &mut Vec::new())
}

/// Brute-force dominance decision for one ordering (indices into the
/// coloring's classes).
pub fn grid_dominant(phi: &Coloring<PeriodicLine>, ordering: &[usize], grid: i64) -> bool {
    GridOracle::new(phi, grid).dominant(ordering)
}

/// Every permutation of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

pub fn labels_of<S: SetSpace>(phi: &Coloring<S>, ordering: &[usize]) -> Vec<String> {
    ordering.iter().map(|&i| phi.labels()[i].clone()).collect()
}
