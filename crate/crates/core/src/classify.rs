//! Deciding whether a subgroup is a perfect code, and whether a whole group
//! is code-perfect.
//!
//! Each decision names the method that produced it. Positive decisions always
//! carry a connection set `S` such that `Cay(G, S)` admits the subgroup as a
//! perfect code, and that witness is re-checked through the group-ring
//! product before it is returned.

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{group_ring_product_check, ConnectionSet};
use crate::construct::connection_set_from_transversal;
use crate::construct::{
    coset_obstruction, order4free_transversal, search_transversal, SearchOutcome, DEFAULT_NODE_BUDGET,
};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::families::{build_group, GroupSpec};
use crate::group::{Family, FiniteGroup};
use crate::subgroups::DEFAULT_SUBGROUP_BOUND;
use crate::subgroups::{all_subgroups, generated_subgroup, has_complement, is_normal, Side, Subgroup};

/// Environment variable overriding [`DEFAULT_SUBGROUP_BOUND`].
pub const ORDER_BOUND_ENV: &str = "PERFCODE_ORDER_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup_bound: usize,
    /// Node cap for the backtracking transversal search.
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subgroup_bound: DEFAULT_SUBGROUP_BOUND,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults, with the subgroup bound taken from `PERFCODE_ORDER_BOUND`
    /// when it is set to a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(ORDER_BOUND_ENV) {
            limits.subgroup_bound = v
                .trim()
                .parse()
                .ok()
                .filter(|&b| b > 0)
                .ok_or_else(|| Error::InvalidSpec(format!("{ORDER_BOUND_ENV}={v} is not a positive integer")))?;
        }
        Ok(limits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Trivial,
    #[serde(rename = "Normal-Criterion")]
    NormalCriterion,
    #[serde(rename = "Abelian-2Pure")]
    AbelianTwoPure,
    #[serde(rename = "Quaternion-Closed-Form")]
    QuaternionClosedForm,
    #[serde(rename = "Constructive-Order4Free")]
    ConstructiveOrder4Free,
    Complement,
    #[serde(rename = "Brute-Force")]
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NegativeWitness {
    /// A coset other than `H`, inverse-closed and without involutions.
    Obstruction { side: Side, coset: ElementSet },
    /// The exhaustive search found no inverse-closed transversal.
    Exhaustion { nodes_explored: u64 },
    /// `element² ∈ H` but `(element·h)² ≠ e` for every `h ∈ H`.
    NormalCriterion { element: ElementId },
    /// `element` is a square of the 2-part of `G` lying in `H₂` that is not a
    /// square of `H₂`.
    NotTwoPure { element: ElementId },
    /// `H = ⟨involution⟩` and `involution = root²`.
    SquareInvolution { involution: ElementId, root: ElementId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeDecision {
    pub verdict: bool,
    pub method: Method,
    pub witness: Option<ConnectionSet>,
    pub negative_witness: Option<NegativeWitness>,
}

impl CodeDecision {
    fn negative(method: Method, why: NegativeWitness) -> Self {
        CodeDecision {
            verdict: false,
            method,
            witness: None,
            negative_witness: Some(why),
        }
    }
}

/// Accepts `s` as a witness only if `(S ∪ {e})·H = G` exactly.
fn positive(g: &FiniteGroup, h: &Subgroup, method: Method, s: ConnectionSet) -> Result<CodeDecision> {
    let mu = group_ring_product_check(g, &s, h.elements());
    if !mu.is_all_ones() || (s.len() + 1) * h.order() != g.order() {
        return Err(Error::Internal(format!(
            "{method:?} produced a connection set failing the group-ring check at {:?}",
            mu.defects().first()
        )));
    }
    Ok(CodeDecision {
        verdict: true,
        method,
        witness: Some(s),
        negative_witness: None,
    })
}

/// Witness from the exhaustive search, for methods that only prove existence.
fn searched_witness(g: &FiniteGroup, h: &Subgroup, method: Method, limits: &Limits) -> Result<CodeDecision> {
    let result = search_transversal(g, h, limits.node_budget)?;
    match result.witness() {
        Some(t) => positive(g, h, method, connection_set_from_transversal(g, t)?),
        None => Err(Error::Disagreement(format!(
            "{method:?} accepts the subgroup but the transversal search is exhausted"
        ))),
    }
}

/// Strongest negative evidence the search machinery can offer.
fn searched_refutation(g: &FiniteGroup, h: &Subgroup, method: Method, limits: &Limits) -> Result<NegativeWitness> {
    if let Some(c) = coset_obstruction(g, h) {
        return Ok(NegativeWitness::Obstruction {
            side: c.side,
            coset: c.elements,
        });
    }
    let result = search_transversal(g, h, limits.node_budget)?;
    match result.outcome {
        SearchOutcome::Witness(_) => Err(Error::Disagreement(format!(
            "{method:?} rejects the subgroup but the transversal search finds a witness"
        ))),
        _ => Ok(NegativeWitness::Exhaustion {
            nodes_explored: result.nodes_explored,
        }),
    }
}

/// For normal `H`: `H` is a perfect code iff every `g` with `g² ∈ H` has
/// some `h ∈ H` with `(gh)² = e`.
pub fn decide_normal(g: &FiniteGroup, h: &Subgroup, limits: &Limits) -> Result<CodeDecision> {
    if !is_normal(g, h) {
        return Err(Error::NotNormal);
    }
    let failing = g
        .elements()
        .find(|&x| h.contains(g.square(x)) && !h.list().iter().any(|&k| g.square(g.mul(x, k)).is_identity()));
    match failing {
        Some(element) => Ok(CodeDecision::negative(
            Method::NormalCriterion,
            NegativeWitness::NormalCriterion { element },
        )),
        None => searched_witness(g, h, Method::NormalCriterion, limits),
    }
}

/// `G² ∩ H = H²` for abelian `G`.
pub fn is_2_pure(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    Ok(two_purity_violation(g, &Subgroup::whole(g), h)?.is_none())
}

/// [`is_2_pure`] with `G` replaced by a subgroup `ambient ≥ h`: the least
/// element of `ambient² ∩ H` outside `H²`, if any.
pub fn two_purity_violation(g: &FiniteGroup, ambient: &Subgroup, h: &Subgroup) -> Result<Option<ElementId>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut ambient_sq = g.empty_set();
    for &a in ambient.list() {
        ambient_sq.insert(g.square(a));
    }
    let mut h_sq = g.empty_set();
    for &a in h.list() {
        h_sq.insert(g.square(a));
    }
    Ok(ambient_sq.intersection(h.elements()).difference(&h_sq).min())
}

/// Abelian `G`: `H` is a perfect code iff `H₂` is 2-pure in `G₂`.
pub fn decide_abelian(g: &FiniteGroup, h: &Subgroup, limits: &Limits) -> Result<CodeDecision> {
    let (g2, _) = g.torsion_components_abelian()?;
    let h2 = h.intersection(g, &g2);
    match two_purity_violation(g, &g2, &h2)? {
        Some(element) => Ok(CodeDecision::negative(
            Method::AbelianTwoPure,
            NegativeWitness::NotTwoPure { element },
        )),
        None => searched_witness(g, h, Method::AbelianTwoPure, limits),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum QuaternionCase {
    /// `⟨x^t⟩` with `2n/t` odd.
    Cyclic {
        t: usize,
    },
    /// `⟨x^t, x^s·y⟩` with `t ≥ 3` odd, `0 ≤ s < t`.
    Dicyclic {
        t: usize,
        s: usize,
    },
    Whole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionCode {
    pub case: QuaternionCase,
    pub subgroup: Subgroup,
    pub connection_set: ConnectionSet,
}

/// All subgroup perfect codes of `Q_4n` with explicit connection sets, in
/// subgroup order. Indices follow the canonical layout of
/// `GroupSpec::GeneralizedQuaternion(4n)`.
pub fn quaternion_codes(n: usize) -> Result<Vec<QuaternionCode>> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    quaternion_codes_for(&build_group(&GroupSpec::GeneralizedQuaternion(4 * n))?)
}

/// [`quaternion_codes`] for a group built by the quaternion constructor.
pub fn quaternion_codes_for(g: &FiniteGroup) -> Result<Vec<QuaternionCode>> {
    let Family::Quaternion { n } = *g.family() else {
        return Err(Error::InvalidSpec("not a generalized quaternion group".into()));
    };
    let two_n = 2 * n;
    let x = |i: i64| ElementId::from(i.rem_euclid(two_n as i64) as usize);
    let xy = |i: i64| ElementId::from(two_n + i.rem_euclid(two_n as i64) as usize);
    let set = |ids: Vec<ElementId>| ElementSet::from_ids(g.order(), ids);

    let mut codes = Vec::new();
    for t in (1..=two_n).filter(|t| two_n % t == 0) {
        let (n, t_) = (n as i64, t as i64);
        if (two_n / t) % 2 == 1 {
            let mut s = vec![x(n)];
            for i in 1..t_ / 2 {
                s.extend([x(i), x(-i)]);
            }
            for i in 0..t_ / 2 {
                s.extend([xy(i), xy(n + i)]);
            }
            codes.push(QuaternionCode {
                case: QuaternionCase::Cyclic { t },
                subgroup: generated_subgroup(g, [x(t_)])?,
                connection_set: ConnectionSet::new(g, set(s)?)?,
            });
        }
        if t >= 3 && t % 2 == 1 {
            let mut s = Vec::new();
            for i in 1..=(t_ - 1) / 2 {
                s.extend([x(i), x(-i)]);
            }
            let s = ConnectionSet::new(g, set(s)?)?;
            for shift in 0..t {
                codes.push(QuaternionCode {
                    case: QuaternionCase::Dicyclic { t, s: shift },
                    subgroup: generated_subgroup(g, [x(t_), xy(shift as i64)])?,
                    connection_set: s.clone(),
                });
            }
        }
    }
    codes.push(QuaternionCode {
        case: QuaternionCase::Whole,
        subgroup: Subgroup::whole(g),
        connection_set: ConnectionSet::empty(g),
    });
    codes.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
    Ok(codes)
}

fn decide_quaternion(g: &FiniteGroup, h: &Subgroup, limits: &Limits) -> Result<CodeDecision> {
    let code = quaternion_codes_for(g)?.into_iter().find(|c| &c.subgroup == h);
    match code {
        Some(c) => positive(g, h, Method::QuaternionClosedForm, c.connection_set),
        None => {
            let why = if is_normal(g, h) {
                match decide_normal(g, h, limits)?.negative_witness {
                    Some(w) => w,
                    None => {
                        return Err(Error::Disagreement(
                            "closed form rejects a normal subgroup the normal criterion accepts".into(),
                        ))
                    }
                }
            } else {
                searched_refutation(g, h, Method::QuaternionClosedForm, limits)?
            };
            Ok(CodeDecision::negative(Method::QuaternionClosedForm, why))
        }
    }
}

/// Decides whether `h` is a perfect code of `g`, trying in order: trivial
/// subgroups, the order-4-free construction, the abelian 2-purity test, the
/// quaternion closed form, the normal-subgroup criterion, complements, and
/// finally exhaustive search.
pub fn decide(g: &FiniteGroup, h: &Subgroup, limits: &Limits) -> Result<CodeDecision> {
    if h.is_whole(g) {
        return positive(g, h, Method::Trivial, ConnectionSet::empty(g));
    }
    if h.is_trivial() {
        return positive(g, h, Method::Trivial, ConnectionSet::complete(g));
    }
    if !g.has_element_of_order_4() {
        let t = order4free_transversal(g, h)?;
        return positive(
            g,
            h,
            Method::ConstructiveOrder4Free,
            connection_set_from_transversal(g, &t)?,
        );
    }
    if g.is_abelian() {
        return decide_abelian(g, h, limits);
    }
    if matches!(g.family(), Family::Quaternion { .. }) {
        return decide_quaternion(g, h, limits);
    }
    if is_normal(g, h) {
        return decide_normal(g, h, limits);
    }
    if let Some(k) = has_complement(g, h, limits.subgroup_bound)? {
        let mut s = k.elements().clone();
        s.remove(ElementId::IDENTITY);
        return positive(g, h, Method::Complement, ConnectionSet::new(g, s)?);
    }
    let result = search_transversal(g, h, limits.node_budget)?;
    match result.witness() {
        Some(t) => positive(g, h, Method::BruteForce, connection_set_from_transversal(g, t)?),
        None => {
            let why = match coset_obstruction(g, h) {
                Some(c) => NegativeWitness::Obstruction {
                    side: c.side,
                    coset: c.elements,
                },
                None => NegativeWitness::Exhaustion {
                    nodes_explored: result.nodes_explored,
                },
            };
            Ok(CodeDecision::negative(Method::BruteForce, why))
        }
    }
}

/// [`decide`] for every subgroup, in [`all_subgroups`] order.
pub fn enumerate_codes(g: &FiniteGroup, limits: &Limits) -> Result<Vec<(Subgroup, CodeDecision)>> {
    all_subgroups(g, limits.subgroup_bound)?
        .into_par_iter()
        .map(|h| decide(g, &h, limits).map(|d| (h, d)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Answer from the order-4 test alone.
    Fast,
    /// Also decide every subgroup, both through [`decide`] and through the
    /// exhaustive search, and require all three answers to agree.
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodePerfectDecision {
    pub code_perfect: bool,
    pub reason: String,
    /// An element `y` of order 4, when one exists.
    pub order4_element: Option<ElementId>,
    /// `⟨y²⟩`, a proper subgroup that is not a perfect code.
    pub rejected_subgroup: Option<Subgroup>,
    /// Subgroups examined in verify mode.
    pub subgroups_checked: Option<usize>,
}

/// Every proper subgroup of `g` is a perfect code iff `g` has no element of
/// order 4.
pub fn is_code_perfect(g: &FiniteGroup, mode: Mode, limits: &Limits) -> Result<CodePerfectDecision> {
    let y = g.element_of_order_4();
    let mut decision = match y {
        None => CodePerfectDecision {
            code_perfect: true,
            reason: "no element of order 4".into(),
            order4_element: None,
            rejected_subgroup: None,
            subgroups_checked: None,
        },
        Some(y) => {
            let y2 = g.square(y);
            CodePerfectDecision {
                code_perfect: false,
                reason: format!(
                    "{} has order 4, so <{}> is generated by a square involution and is not a perfect code",
                    g.label(y),
                    g.label(y2)
                ),
                order4_element: Some(y),
                rejected_subgroup: Some(generated_subgroup(g, [y2])?),
                subgroups_checked: None,
            }
        }
    };
    if mode == Mode::Verify {
        let subgroups = all_subgroups(g, limits.subgroup_bound)?;
        let verdicts = subgroups
            .par_iter()
            .map(|h| -> Result<bool> {
                let d = decide(g, h, limits)?;
                let oracle = search_transversal(g, h, limits.node_budget)?.is_witness();
                if d.verdict != oracle {
                    return Err(Error::Disagreement(format!(
                        "{:?} says {} for {:?}, search says {}",
                        d.method, d.verdict, h, oracle
                    )));
                }
                Ok(d.verdict)
            })
            .collect::<Result<Vec<bool>>>()?;
        let all_codes = verdicts.iter().all(|&v| v);
        if all_codes != decision.code_perfect {
            return Err(Error::Disagreement(format!(
                "order-4 test says {}, subgroup enumeration says {}",
                decision.code_perfect, all_codes
            )));
        }
        if let Some(r) = &decision.rejected_subgroup {
            let pos = subgroups.iter().position(|h| h == r).expect("⟨y²⟩ is enumerated");
            if verdicts[pos] {
                return Err(Error::Disagreement(
                    "the square involution subgroup was accepted".into(),
                ));
            }
        }
        decision.subgroups_checked = Some(subgroups.len());
    }
    Ok(decision)
}
