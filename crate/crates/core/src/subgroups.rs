//! Subgroups, cosets, conjugation, complements, and full subgroup enumeration.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default ceiling on `|G|` for [`all_subgroups`].
pub const DEFAULT_SUBGROUP_BOUND: usize = 512;

/// A subgroup of some parent group, stored as its element set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: ElementSet,
    list: Vec<ElementId>,
}

impl Subgroup {
    /// Caller guarantees `set` is closed and contains the identity.
    pub(crate) fn from_closed_set(g: &FiniteGroup, set: ElementSet) -> Self {
        debug_assert!(is_closed(g, &set));
        let list = set.to_vec();
        Subgroup { elements: set, list }
    }

    /// Checks closure before accepting `set` as a subgroup.
    pub fn new(g: &FiniteGroup, set: ElementSet) -> Result<Self> {
        if set.universe() != g.order() {
            return Err(Error::NotSubgroup(format!(
                "set is over {} elements but the group has order {}",
                set.universe(),
                g.order()
            )));
        }
        if !set.contains(ElementId::IDENTITY) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{} * {} = {} is outside the set",
                        g.label(a),
                        g.label(b),
                        g.label(g.mul(a, b))
                    )));
                }
            }
        }
        Ok(Subgroup::from_closed_set(g, set))
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut set = g.empty_set();
        set.insert(ElementId::IDENTITY);
        Subgroup::from_closed_set(g, set)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup::from_closed_set(g, g.full_set())
    }

    pub fn order(&self) -> usize {
        self.list.len()
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    /// Elements in ascending index order.
    pub fn list(&self) -> &[ElementId] {
        &self.list
    }

    #[inline]
    pub fn contains(&self, a: ElementId) -> bool {
        self.elements.contains(a)
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self, g: &FiniteGroup) -> bool {
        self.order() == g.order()
    }

    pub fn labels<'g>(&self, g: &'g FiniteGroup) -> Vec<&'g str> {
        self.list.iter().map(|&a| g.label(a)).collect()
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Subgroup::from_closed_set(g, self.elements.intersection(&other.elements))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.list.cmp(&other.list))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

fn is_closed(g: &FiniteGroup, set: &ElementSet) -> bool {
    set.contains(ElementId::IDENTITY) && set.iter().all(|a| set.iter().all(|b| set.contains(g.mul(a, b))))
}

/// Grows `set` (already containing `e`) under right multiplication by
/// `gens` until it stops changing. In a finite group this is `⟨set ∪ gens⟩`
/// whenever `set` is itself generated by a subset of `gens`.
fn close_under(g: &FiniteGroup, mut set: ElementSet, gens: &[ElementId]) -> ElementSet {
    let mut list = set.to_vec();
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for &s in gens {
            let p = g.mul(a, s);
            if set.insert(p) {
                list.push(p);
            }
        }
        i += 1;
    }
    set
}

/// Smallest subgroup containing `gens`.
pub fn generated_subgroup<I>(g: &FiniteGroup, gens: I) -> Result<Subgroup>
where
    I: IntoIterator<Item = ElementId>,
{
    let gens: Vec<ElementId> = gens.into_iter().collect();
    for &x in &gens {
        g.check_element(x)?;
    }
    let mut start = g.empty_set();
    start.insert(ElementId::IDENTITY);
    Ok(Subgroup::from_closed_set(g, close_under(g, start, &gens)))
}

/// Every subgroup of `g` exactly once, sorted by `(order, elements)`.
///
/// Seeds with the cyclic subgroups, then repeatedly joins each known
/// subgroup with each cyclic subgroup it does not contain, until no new
/// subgroup appears.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: g.order(),
            bound,
        });
    }

    struct Found {
        set: ElementSet,
        gens: Vec<ElementId>,
    }
    let mut found: Vec<Found> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic_gens = Vec::new();

    for x in g.elements() {
        let set = generated_subgroup(g, [x])?.elements;
        let key = set.blocks().to_vec();
        if seen.insert(key) {
            found.push(Found { set, gens: vec![x] });
            cyclic_gens.push(x);
        }
    }

    let mut next = 0;
    while next < found.len() {
        let base = found[next].set.clone();
        let base_gens = found[next].gens.clone();
        next += 1;
        for &x in &cyclic_gens {
            if base.contains(x) {
                continue;
            }
            let mut gens = base_gens.clone();
            gens.push(x);
            let set = close_under(g, base.clone(), &gens);
            let key = set.blocks().to_vec();
            if seen.insert(key) {
                found.push(Found { set, gens });
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|f| Subgroup::from_closed_set(g, f.set)).collect();
    subgroups.sort();
    Ok(subgroups)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `xH`
    Left,
    /// `Hx`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coset {
    /// Least element of the coset.
    pub representative: ElementId,
    pub side: Side,
    pub elements: ElementSet,
}

/// `xH` or `Hx`.
pub fn coset_of(g: &FiniteGroup, h: &Subgroup, x: ElementId, side: Side) -> ElementSet {
    let mut set = g.empty_set();
    for &k in h.list() {
        set.insert(match side {
            Side::Left => g.mul(x, k),
            Side::Right => g.mul(k, x),
        });
    }
    set
}

/// Partition of `g` into cosets of `h`, ordered by least element.
pub fn cosets(g: &FiniteGroup, h: &Subgroup, side: Side) -> Vec<Coset> {
    let mut covered = g.empty_set();
    let mut out = Vec::with_capacity(h.index_in(g));
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        let elements = coset_of(g, h, x, side);
        covered = covered.union(&elements);
        out.push(Coset {
            representative: x,
            side,
            elements,
        });
    }
    out
}

/// Maps each element to the position of its coset in [`cosets`] order.
pub fn coset_index(g: &FiniteGroup, h: &Subgroup, side: Side) -> Vec<usize> {
    let mut index = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in g.elements() {
        if index[x.index()] != usize::MAX {
            continue;
        }
        for &k in h.list() {
            let y = match side {
                Side::Left => g.mul(x, k),
                Side::Right => g.mul(k, x),
            };
            index[y.index()] = next;
        }
        next += 1;
    }
    index
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.is_abelian()
        || g.elements()
            .all(|x| h.list().iter().all(|&k| h.contains(g.conjugate(k, x))))
}

/// `H^x = x⁻¹Hx`.
pub fn conjugate_subgroup(g: &FiniteGroup, h: &Subgroup, x: ElementId) -> Subgroup {
    let mut set = g.empty_set();
    for &k in h.list() {
        set.insert(g.conjugate(k, x));
    }
    Subgroup::from_closed_set(g, set)
}

/// A subgroup `K` with `HK = G` and `H ∩ K = {e}`, if one exists. The first
/// such `K` in [`all_subgroups`] order is returned.
pub fn has_complement(g: &FiniteGroup, h: &Subgroup, bound: usize) -> Result<Option<Subgroup>> {
    if h.is_trivial() {
        return Ok(Some(Subgroup::whole(g)));
    }
    if h.is_whole(g) {
        return Ok(Some(Subgroup::trivial(g)));
    }
    let index = h.index_in(g);
    // |HK| = |H||K| / |H ∩ K|, so the order and trivial intersection suffice.
    Ok(all_subgroups(g, bound)?
        .into_iter()
        .filter(|k| k.order() == index)
        .find(|k| h.elements().intersection(k.elements()).len() == 1))
}
