//! Dominance certificates: verification, exact synthesis, and conversion to
//! and from Szlam data.
//!
//! A coloring with classes `A_1, …, A_k` (in some ordering of its colors) is
//! dominant when there are distinct nonzero translaters `t_2, …, t_k` with
//!
//! * `A_i + t_i ⊆ A_1` for every `i ≥ 2`, and
//! * `(A_j + t_i) ∩ A_1 = ∅` for every `2 ≤ i < j`.
//!
//! Dominant colorings are exactly the ordered Szlam colorings: `B = A_1`,
//! `F = (0, t_2, …, t_k)` rebuilds the coloring, and conversely the
//! differences `f_j - f_1` of Szlam data witness dominance.
//!
//! For a fixed ordering the admissible translaters for position `i` form the
//! set `E_i = erode(A_1, A_i) ∖ ⋃_{j>i} dilate(A_1, -A_j)`, so synthesis is
//! a set computation followed by a choice of distinct representatives.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::SetSpace;
use crate::szlam::{build_ordered_coloring, Coloring, SzlamData};

/// Default cap on the number of colors for ordering enumeration.
pub const DEFAULT_ORDER_GUARD: usize = 8;

/// An ordering `c_1, …, c_k` of the colors plus translaters `t_2, …, t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceCertificate<T> {
    pub ordering: Vec<String>,
    pub translaters: Vec<T>,
}

impl<T: fmt::Display> fmt::Display for DominanceCertificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ordering {}; t ", self.ordering.join(","))?;
        for (i, t) in self.translaters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn ordered_classes<'a, S: SetSpace>(phi: &'a Coloring<S>, ordering: &[String]) -> Result<Vec<&'a S::Set>> {
    let perm = phi.permutation(ordering)?;
    Ok(perm.into_iter().map(|i| &phi.classes()[i]).collect())
}

/// Checks both dominance conditions plus distinctness and nonzero-ness of
/// the translaters (compared after canonicalization).
pub fn verify_dominance<S: SetSpace>(
    phi: &Coloring<S>,
    cert: &DominanceCertificate<S::Shift>,
) -> Result<bool> {
    let classes = ordered_classes(phi, &cert.ordering)?;
    let k = classes.len();
    if cert.translaters.len() + 1 != k {
        return Err(Error::InvalidCertificate(format!(
            "{} translaters for {k} colors",
            cert.translaters.len()
        )));
    }
    let space = phi.space();
    let t: Vec<S::Shift> = cert.translaters.iter().map(|x| space.canonical(x)).collect();
    let zero = space.zero();
    for (i, ti) in t.iter().enumerate() {
        if *ti == zero || t[..i].contains(ti) {
            return Ok(false);
        }
    }
    let a1 = classes[0];
    for i in 1..k {
        let ti = &t[i - 1];
        if !space.is_subset(&space.translate(classes[i], ti), a1) {
            return Ok(false);
        }
        for aj in &classes[i + 1..] {
            if !space.is_disjoint(&space.translate(aj, ti), a1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The admissible set `E_i` for one position of an ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct Admissible<S: SetSpace> {
    pub set: S::Set,
    /// `A_i` is empty, so the containment condition holds for every `t`.
    pub vacuous: bool,
}

fn admissible_at<S: SetSpace>(space: &S, classes: &[&S::Set], i: usize) -> Admissible<S> {
    let a1 = classes[0];
    let (base, vacuous) = match space.erode(a1, classes[i]) {
        Some(e) => (e, false),
        None => (space.full(), true),
    };
    let set = classes[i + 1..]
        .iter()
        .fold(base, |acc, aj| space.difference(&acc, &space.dilate(a1, &space.reflect(aj))));
    Admissible { set, vacuous }
}

/// Every `t` with `A_i + t ⊆ A_1` and `(A_j + t) ∩ A_1 = ∅` for all `j > i`.
/// `position` is 1-based, as in `t_2, …, t_k`, so it must lie in `2..=k`.
pub fn admissible_translaters<S: SetSpace>(
    phi: &Coloring<S>,
    ordering: &[String],
    position: usize,
) -> Result<Admissible<S>> {
    let classes = ordered_classes(phi, ordering)?;
    if position < 2 || position > classes.len() {
        return Err(Error::InvalidCertificate(format!(
            "position {position} outside 2..={}",
            classes.len()
        )));
    }
    Ok(admissible_at(phi.space(), &classes, position - 1))
}

/// Distinct representatives, one per set, trying candidates in order
/// (augmenting paths). `None` if no system of distinct representatives
/// exists among the candidates.
fn distinct_representatives<T: Clone + PartialEq>(candidates: &[Vec<T>]) -> Option<Vec<T>> {
    let mut values: Vec<T> = Vec::new();
    let ids: Vec<Vec<usize>> = candidates
        .iter()
        .map(|cands| {
            cands
                .iter()
                .map(|c| match values.iter().position(|v| v == c) {
                    Some(i) => i,
                    None => {
                        values.push(c.clone());
                        values.len() - 1
                    }
                })
                .collect()
        })
        .collect();

    fn augment(i: usize, ids: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &v in &ids[i] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|other| augment(other, ids, owner, seen)) {
                owner[v] = Some(i);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; values.len()];
    for i in 0..ids.len() {
        let mut seen = vec![false; values.len()];
        if !augment(i, &ids, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut chosen: Vec<Option<T>> = vec![None; ids.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            chosen[*i] = Some(values[v].clone());
        }
    }
    chosen.into_iter().collect()
}

/// `E_i ∖ {0}` for position index `i` (0-based, `i ≥ 1`).
fn nonzero_admissible<S: SetSpace>(space: &S, classes: &[&S::Set], i: usize) -> S::Set {
    let e = admissible_at(space, classes, i).set;
    space.difference(&e, &space.singleton(&space.zero()))
}

fn certificate_from_sets<S: SetSpace>(
    space: &S,
    ordering: &[String],
    sets: &[S::Set],
) -> Option<DominanceCertificate<S::Shift>> {
    let k = ordering.len();
    let candidates: Vec<Vec<S::Shift>> =
        sets.iter().map(|e| space.representatives(e, k)).collect();
    let translaters = distinct_representatives(&candidates)?;
    Some(DominanceCertificate { ordering: ordering.to_vec(), translaters })
}

fn checked<S: SetSpace>(
    phi: &Coloring<S>,
    cert: DominanceCertificate<S::Shift>,
) -> Result<DominanceCertificate<S::Shift>> {
    if verify_dominance(phi, &cert)? {
        Ok(cert)
    } else {
        Err(Error::Defect(format!("synthesized certificate fails verification: {cert}")))
    }
}

/// Decides dominance for one ordering and returns a witnessing certificate.
///
/// `None` is a refutation for the line backend. For cellular spaces it means
/// no certificate with lattice translaters exists.
pub fn synthesize_certificate<S: SetSpace>(
    phi: &Coloring<S>,
    ordering: &[String],
) -> Result<Option<DominanceCertificate<S::Shift>>> {
    let classes = ordered_classes(phi, ordering)?;
    let space = phi.space();
    let mut sets = Vec::with_capacity(classes.len().saturating_sub(1));
    for i in 1..classes.len() {
        let e = nonzero_admissible(space, &classes, i);
        if space.is_empty(&e) {
            return Ok(None);
        }
        sets.push(e);
    }
    match certificate_from_sets(space, ordering, &sets) {
        Some(cert) => checked(phi, cert).map(Some),
        None => Ok(None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    /// Refuse to enumerate orderings of more colors than this.
    pub order_guard: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { order_guard: DEFAULT_ORDER_GUARD }
    }
}

/// Walks orderings in lexicographic order of the colors' declared positions,
/// pruning every prefix whose last admissible set is empty (`E_i` depends
/// only on `A_1`, `A_i` and the set of later classes). Calls `visit` for each
/// dominant ordering until it returns `false`.
fn for_each_dominant<S, F>(phi: &Coloring<S>, opts: SynthOptions, mut visit: F) -> Result<()>
where
    S: SetSpace,
    F: FnMut(DominanceCertificate<S::Shift>) -> Result<bool>,
{
    let k = phi.len();
    if k > opts.order_guard {
        return Err(Error::OrderGuard(k, opts.order_guard));
    }
    let space = phi.space();
    let all = phi.classes();

    // A color can head an ordering only if every nonempty class erodes into it.
    let head_ok: Vec<bool> = (0..k)
        .map(|h| {
            (0..k).all(|j| {
                j == h || space.erode(&all[h], &all[j]).is_none_or(|e| !space.is_empty(&e))
            })
        })
        .collect();

    struct Walk<'a, S: SetSpace> {
        phi: &'a Coloring<S>,
        prefix: Vec<usize>,
        sets: Vec<S::Set>,
    }

    fn step<S, F>(w: &mut Walk<'_, S>, visit: &mut F) -> Result<bool>
    where
        S: SetSpace,
        F: FnMut(DominanceCertificate<S::Shift>) -> Result<bool>,
    {
        let k = w.phi.len();
        let space = w.phi.space();
        let all = w.phi.classes();
        if w.prefix.len() == k {
            let ordering: Vec<String> =
                w.prefix.iter().map(|&i| w.phi.labels()[i].clone()).collect();
            if let Some(cert) = certificate_from_sets(space, &ordering, &w.sets) {
                return visit(checked(w.phi, cert)?);
            }
            return Ok(true);
        }
        for next in 0..k {
            if w.prefix.contains(&next) {
                continue;
            }
            w.prefix.push(next);
            let rest: Vec<&S::Set> = (0..k).filter(|j| !w.prefix.contains(j)).map(|j| &all[j]).collect();
            let mut keep_going = true;
            let mut order: Vec<&S::Set> = w.prefix.iter().map(|&i| &all[i]).collect();
            order.extend(rest);
            let e = nonzero_admissible(space, &order, w.prefix.len() - 1);
            if !space.is_empty(&e) {
                w.sets.push(e);
                keep_going = step(w, visit)?;
                w.sets.pop();
            }
            w.prefix.pop();
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    for head in (0..k).filter(|&h| head_ok[h]) {
        let mut walk = Walk { phi, prefix: vec![head], sets: Vec::new() };
        if !step(&mut walk, &mut visit)? {
            break;
        }
    }
    Ok(())
}

/// First dominant ordering (lexicographic in the colors' declared order)
/// together with its certificate.
pub fn synthesize_any<S: SetSpace>(
    phi: &Coloring<S>,
    opts: SynthOptions,
) -> Result<Option<DominanceCertificate<S::Shift>>> {
    let mut found = None;
    for_each_dominant(phi, opts, |cert| {
        found = Some(cert);
        Ok(false)
    })?;
    Ok(found)
}

/// Reads the Szlam data off a verified certificate: `B = A_1` and
/// `F = (0, t_2, …, t_k)`.
pub fn to_szlam_data<S: SetSpace>(
    phi: &Coloring<S>,
    cert: &DominanceCertificate<S::Shift>,
) -> Result<SzlamData<S>> {
    if !verify_dominance(phi, cert)? {
        return Err(Error::InvalidCertificate("certificate does not verify".into()));
    }
    let space = phi.space();
    let b = phi.class(&cert.ordering[0]).expect("verified ordering").clone();
    let f = std::iter::once(space.zero())
        .chain(cert.translaters.iter().map(|t| space.canonical(t)))
        .collect();
    SzlamData::new(space.clone(), b, f)
}

/// The ordered Szlam coloring of `data` with its certificate
/// `t_j = f_j - f_1`.
pub fn from_szlam<S: SetSpace>(
    data: &SzlamData<S>,
) -> Result<(Coloring<S>, DominanceCertificate<S::Shift>)> {
    let phi = build_ordered_coloring(data)?;
    let space = data.space();
    let f1 = &data.f()[0];
    let cert = DominanceCertificate {
        ordering: phi.labels().to_vec(),
        translaters: data.f()[1..].iter().map(|fj| space.sub(fj, f1)).collect(),
    };
    if !verify_dominance(&phi, &cert)? {
        return Err(Error::Defect(format!(
            "ordered Szlam coloring is not dominant under t_j = f_j - f_1: {cert}"
        )));
    }
    Ok((phi, cert))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripEntry<T> {
    pub ordering: Vec<String>,
    /// `None` when the ordering admits no certificate.
    pub certificate: Option<DominanceCertificate<T>>,
    /// Whether the rebuilt coloring equals the original, class by class.
    pub equal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport<T> {
    pub entries: Vec<RoundtripEntry<T>>,
}

impl<T> RoundtripReport<T> {
    pub fn is_dominant(&self) -> bool {
        self.entries.iter().any(|e| e.certificate.is_some())
    }

    /// Entries whose rebuilt coloring differs from the original.
    pub fn contradictions(&self) -> impl Iterator<Item = &RoundtripEntry<T>> {
        self.entries.iter().filter(|e| e.equal == Some(false))
    }

    pub fn is_consistent(&self) -> bool {
        self.contradictions().next().is_none()
    }
}

impl<T: fmt::Display> fmt::Display for RoundtripReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "no dominant ordering");
        }
        for e in &self.entries {
            let verdict = match (&e.certificate, e.equal) {
                (None, _) => "not dominant".to_string(),
                (Some(_), Some(true)) => "psi = phi".to_string(),
                (Some(_), _) => "CONTRADICTION: psi != phi".to_string(),
            };
            write!(f, "ordering {}: {verdict}", e.ordering.join(","))?;
            if let Some(c) = &e.certificate {
                let ts: Vec<String> = c.translaters.iter().map(|t| t.to_string()).collect();
                write!(f, " (t = {})", ts.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn rebuild_matches<S: SetSpace>(
    phi: &Coloring<S>,
    cert: &DominanceCertificate<S::Shift>,
) -> Result<bool> {
    let data = to_szlam_data(phi, cert)?;
    let psi = build_ordered_coloring(&data)?;
    let perm = phi.permutation(&cert.ordering)?;
    Ok(perm.iter().zip(psi.classes()).all(|(&i, c)| phi.classes()[i] == *c))
}

/// Rebuilds `phi` from each of up to `max_orderings` dominant orderings and
/// compares class by class.
pub fn roundtrip_check<S: SetSpace>(
    phi: &Coloring<S>,
    max_orderings: usize,
    opts: SynthOptions,
) -> Result<RoundtripReport<S::Shift>> {
    let mut entries = Vec::new();
    if max_orderings == 0 {
        return Ok(RoundtripReport { entries });
    }
    for_each_dominant(phi, opts, |cert| {
        let equal = rebuild_matches(phi, &cert)?;
        entries.push(RoundtripEntry {
            ordering: cert.ordering.clone(),
            certificate: Some(cert),
            equal: Some(equal),
        });
        Ok(entries.len() < max_orderings)
    })?;
    Ok(RoundtripReport { entries })
}

/// Round trip for the given orderings; orderings without a certificate are
/// reported as such.
pub fn roundtrip_orderings<S: SetSpace>(
    phi: &Coloring<S>,
    orderings: &[Vec<String>],
) -> Result<RoundtripReport<S::Shift>> {
    let mut entries = Vec::with_capacity(orderings.len());
    for ordering in orderings {
        let cert = synthesize_certificate(phi, ordering)?;
        let equal = match &cert {
            Some(c) => Some(rebuild_matches(phi, c)?),
            None => None,
        };
        entries.push(RoundtripEntry { ordering: ordering.clone(), certificate: cert, equal });
    }
    Ok(RoundtripReport { entries })
}
