//! Inverse-closed transversals: the two constructions (one for `⟨x⟩` with `x`
//! a non-square involution, one for groups without elements of order 4), an
//! exhaustive backtracking search used as an independent oracle, and the
//! coset obstruction that certifies non-existence.

use serde::Serialize;

use crate::cayley::ConnectionSet;
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subgroups::{coset_index, cosets, generated_subgroup, Coset, Side, Subgroup};

/// Default node budget for [`search_transversal`].
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// A set of coset representatives, one per coset on `side`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transversal {
    side: Side,
    /// Ascending, so `reps[0] = e` whenever the identity is present.
    reps: Vec<ElementId>,
}

impl Transversal {
    pub fn new(side: Side, reps: impl IntoIterator<Item = ElementId>) -> Self {
        let mut reps: Vec<ElementId> = reps.into_iter().collect();
        reps.sort_unstable();
        reps.dedup();
        Transversal { side, reps }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn reps(&self) -> &[ElementId] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn to_set(&self, g: &FiniteGroup) -> ElementSet {
        ElementSet::from_ids(g.order(), self.reps.iter().copied()).expect("reps are group elements")
    }

    pub fn contains_identity(&self) -> bool {
        self.reps.first() == Some(&ElementId::IDENTITY)
    }

    pub fn is_inverse_closed(&self, g: &FiniteGroup) -> bool {
        self.reps.iter().all(|&t| self.reps.binary_search(&g.inv(t)).is_ok())
    }

    /// Transversal of `h` on its side, containing `e`, inverse-closed.
    pub fn certify(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        self.contains_identity()
            && self.is_inverse_closed(g)
            && crate::cayley::is_transversal(g, h, &self.to_set(g), self.side)
    }
}

/// `S = T ∖ {e}` for an inverse-closed `T` containing `e`.
pub fn connection_set_from_transversal(g: &FiniteGroup, t: &Transversal) -> Result<ConnectionSet> {
    if !t.contains_identity() {
        return Err(Error::MissingIdentity);
    }
    let mut set = t.to_set(g);
    if let Some(element) = set.iter().find(|&x| !set.contains(g.inv(x))) {
        return Err(Error::NotInverseClosed { element });
    }
    set.remove(ElementId::IDENTITY);
    ConnectionSet::new(g, set)
}

/// Right transversal of `⟨x⟩` for an involution `x` that is not a square.
///
/// Cosets are processed in ascending order of their least element `y`:
/// * `y` an involution: represent `Hy` by `y`;
/// * `xy` an involution: represent `Hy` by `xy`;
/// * otherwise, if `x` and `y` commute, represent `Hy`, `Hy⁻¹` by `y`, `y⁻¹`;
///   if not, represent `Hy`, `H(xy)⁻¹`, `H(xy⁻¹x)⁻¹`, `H(yx)⁻¹` by
///   `y`, `xy⁻¹x`, `xyx`, `y⁻¹`.
pub fn involution_transversal(g: &FiniteGroup, x: ElementId) -> Result<Transversal> {
    g.check_element(x)?;
    if !g.is_involution(x) {
        return Err(Error::NotInvolution(x));
    }
    if let Some(root) = g.square_root(x) {
        return Err(Error::IsSquare { involution: x, root });
    }
    let h = generated_subgroup(g, [x])?;
    let coset = coset_index(g, &h, Side::Right);
    let mut done = vec![false; h.index_in(g)];
    let mut reps = vec![ElementId::IDENTITY];
    done[coset[0]] = true;

    let mut take = |rep: ElementId, done: &mut Vec<bool>| -> Result<()> {
        let c = coset[rep.index()];
        if done[c] {
            return Err(Error::Internal(format!("coset of {} selected twice", g.label(rep))));
        }
        done[c] = true;
        reps.push(rep);
        Ok(())
    };

    for y in g.elements() {
        if done[coset[y.index()]] {
            continue;
        }
        let xy = g.mul(x, y);
        if g.is_involution(y) {
            take(y, &mut done)?;
        } else if g.is_involution(xy) {
            take(xy, &mut done)?;
        } else if g.commutes(x, y) {
            take(y, &mut done)?;
            take(g.inv(y), &mut done)?;
        } else {
            let yi = g.inv(y);
            take(y, &mut done)?;
            take(g.mul(g.mul(x, yi), x), &mut done)?;
            take(g.mul(xy, x), &mut done)?;
            take(yi, &mut done)?;
        }
    }
    let t = Transversal::new(Side::Right, reps);
    if !t.certify(g, &h) {
        return Err(Error::Internal(
            "involution construction produced an invalid transversal".into(),
        ));
    }
    Ok(t)
}

/// Right cosets other than `H` split by whether they contain an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetClass {
    /// `H` itself.
    Trivial,
    /// Contains an element of order 2.
    WithInvolution,
    /// Contains no element of order 2.
    InvolutionFree,
}

/// Right cosets of `h` in [`cosets`] order with their classes.
pub fn classify_cosets(g: &FiniteGroup, h: &Subgroup) -> Vec<(Coset, CosetClass)> {
    cosets(g, h, Side::Right)
        .into_iter()
        .map(|c| {
            let class = if c.elements.contains(ElementId::IDENTITY) {
                CosetClass::Trivial
            } else if c.elements.iter().any(|y| g.is_involution(y)) {
                CosetClass::WithInvolution
            } else {
                CosetClass::InvolutionFree
            };
            (c, class)
        })
        .collect()
}

/// One paired block of involution-free cosets: the orbit of `Hx` under
/// right multiplication by `H`, and the orbit of `Hx⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPairing {
    pub base: ElementId,
    /// Coset positions (in [`cosets`] order) of `Hx·h_j`.
    pub orbit_plus: Vec<usize>,
    /// Coset positions of `Hx⁻¹·g_j`.
    pub orbit_minus: Vec<usize>,
    /// `h_j`, with `h_0 = e`.
    pub h_multipliers: Vec<ElementId>,
    /// `g_j`, with `g_0 = e`.
    pub g_multipliers: Vec<ElementId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Order4FreeConstruction {
    pub transversal: Transversal,
    pub classes: Vec<CosetClass>,
    pub pairings: Vec<OrbitPairing>,
}

/// Right transversal of `h` containing `e` and closed under inverses, for
/// a group with no element of order 4.
pub fn order4free_transversal(g: &FiniteGroup, h: &Subgroup) -> Result<Transversal> {
    order4free_construction(g, h).map(|c| c.transversal)
}

/// [`order4free_transversal`] together with the coset classes and orbit
/// pairings it used.
///
/// `H` is represented by `e` and each coset containing an involution by its
/// least involution. The involution-free cosets are taken in ascending order
/// of least element `x`; the orbits of `Hx` and `Hx⁻¹` under `H` are listed
/// as `Hx·h_j` and `Hx⁻¹·g_j` (first `h`, `g` reaching each coset), and
/// `Hx·h_j`, `Hx⁻¹·g_j` are represented by the mutually inverse elements
/// `g_j⁻¹·x·h_j` and `h_j⁻¹·x⁻¹·g_j`.
pub fn order4free_construction(g: &FiniteGroup, h: &Subgroup) -> Result<Order4FreeConstruction> {
    if let Some(y) = g.element_of_order_4() {
        return Err(Error::HasOrder4Element(y));
    }
    let classified = classify_cosets(g, h);
    let coset = coset_index(g, h, Side::Right);
    let classes: Vec<CosetClass> = classified.iter().map(|(_, c)| *c).collect();
    let mut reps: Vec<Option<ElementId>> = vec![None; classified.len()];

    for (i, (c, class)) in classified.iter().enumerate() {
        match class {
            CosetClass::Trivial => reps[i] = Some(ElementId::IDENTITY),
            CosetClass::WithInvolution => reps[i] = c.elements.iter().find(|&y| g.is_involution(y)),
            CosetClass::InvolutionFree => {}
        }
    }

    let broken = |what: String| Error::Internal(format!("orbit pairing: {what}"));
    let orbit = |x: ElementId| -> (Vec<usize>, Vec<ElementId>) {
        let mut cs = Vec::new();
        let mut ms = Vec::new();
        for &k in h.list() {
            let c = coset[g.mul(x, k).index()];
            if !cs.contains(&c) {
                cs.push(c);
                ms.push(k);
            }
        }
        (cs, ms)
    };

    let mut pairings = Vec::new();
    for i in 0..classified.len() {
        if classes[i] != CosetClass::InvolutionFree || reps[i].is_some() {
            continue;
        }
        let x = classified[i].0.representative;
        let xi = g.inv(x);
        if coset[xi.index()] == i {
            return Err(broken(format!("H{0} = H{0}⁻¹", g.label(x))));
        }
        let (plus, hs) = orbit(x);
        let (minus, gs) = orbit(xi);
        if plus.len() != minus.len() {
            return Err(broken(format!("orbit sizes {} and {} differ", plus.len(), minus.len())));
        }
        if plus.iter().any(|c| minus.contains(c)) {
            return Err(broken(format!("orbits of H{0} and H{0}⁻¹ meet", g.label(x))));
        }
        for &c in plus.iter().chain(&minus) {
            if classes[c] != CosetClass::InvolutionFree {
                return Err(broken(format!("orbit leaves the involution-free cosets at {c}")));
            }
            if reps[c].is_some() {
                return Err(broken(format!("coset {c} already represented")));
            }
        }
        for j in 0..plus.len() {
            let r = g.mul(g.mul(g.inv(gs[j]), x), hs[j]);
            reps[plus[j]] = Some(r);
            reps[minus[j]] = Some(g.inv(r));
        }
        pairings.push(OrbitPairing {
            base: x,
            orbit_plus: plus,
            orbit_minus: minus,
            h_multipliers: hs,
            g_multipliers: gs,
        });
    }

    let reps = reps
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| broken("some coset left unrepresented".into()))?;
    let transversal = Transversal::new(Side::Right, reps);
    if !transversal.certify(g, h) {
        return Err(broken("result is not an inverse-closed transversal".into()));
    }
    Ok(Order4FreeConstruction {
        transversal,
        classes,
        pairings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome {
    Witness(Transversal),
    /// The whole search space was explored without a witness.
    Exhausted,
    /// An inverse-closed, involution-free coset rules out any witness.
    Obstruction(Coset),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
}

impl SearchResult {
    pub fn witness(&self) -> Option<&Transversal> {
        match &self.outcome {
            SearchOutcome::Witness(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.witness().is_some()
    }
}

struct Search<'a> {
    g: &'a FiniteGroup,
    coset: Vec<usize>,
    members: Vec<Vec<ElementId>>,
    rep: Vec<Option<ElementId>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Every unrepresented coset still has a usable candidate.
    fn viable(&self) -> bool {
        self.members.iter().enumerate().all(|(c, ms)| {
            self.rep[c].is_some()
                || ms.iter().any(|&t| {
                    let ti = self.g.inv(t);
                    let d = self.coset[ti.index()];
                    if d == c {
                        ti == t
                    } else {
                        self.rep[d].is_none()
                    }
                })
        })
    }

    fn run(&mut self) -> Result<bool> {
        let Some(c) = self.rep.iter().position(Option::is_none) else {
            return Ok(true);
        };
        for k in 0..self.members[c].len() {
            let t = self.members[c][k];
            let ti = self.g.inv(t);
            let d = self.coset[ti.index()];
            if d == c && ti != t {
                continue;
            }
            if d != c && self.rep[d].is_some() {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            self.rep[c] = Some(t);
            self.rep[d] = Some(ti);
            if self.viable() && self.run()? {
                return Ok(true);
            }
            self.rep[c] = None;
            self.rep[d] = None;
        }
        Ok(false)
    }
}

/// Exhaustive search for an inverse-closed right transversal of `h`
/// containing `e`.
///
/// The least unrepresented coset is always filled next, trying its elements
/// in ascending order; choosing `t` also fixes `t⁻¹` for the coset of `t⁻¹`.
/// The first witness found is therefore the lexicographically least one.
pub fn search_transversal(g: &FiniteGroup, h: &Subgroup, budget: u64) -> Result<SearchResult> {
    let coset = coset_index(g, h, Side::Right);
    let mut members = vec![Vec::with_capacity(h.order()); h.index_in(g)];
    for y in g.elements() {
        members[coset[y.index()]].push(y);
    }
    let mut rep = vec![None; members.len()];
    rep[coset[0]] = Some(ElementId::IDENTITY);
    let mut search = Search {
        g,
        coset,
        members,
        rep,
        nodes: 0,
        budget,
    };
    let found = search.viable() && search.run()?;
    let outcome = if found {
        let reps = search.rep.iter().map(|r| r.expect("complete assignment"));
        SearchOutcome::Witness(Transversal::new(Side::Right, reps))
    } else {
        SearchOutcome::Exhausted
    };
    Ok(SearchResult {
        outcome,
        nodes_explored: search.nodes,
    })
}

/// A left or right coset other than `H` that is inverse-closed and has no
/// involutions. Its existence rules out an inverse-closed transversal; its
/// absence proves nothing.
pub fn coset_obstruction(g: &FiniteGroup, h: &Subgroup) -> Option<Coset> {
    [Side::Left, Side::Right].into_iter().find_map(|side| {
        cosets(g, h, side).into_iter().find(|c| {
            !c.elements.contains(ElementId::IDENTITY)
                && c.elements
                    .iter()
                    .all(|y| c.elements.contains(g.inv(y)) && !g.is_involution(y))
        })
    })
}
