//! Finite groups stored as complete multiplication tables.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::subgroups::Subgroup;

/// Orders up to this bound get the exhaustive O(n³) associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
/// Number of random triples checked above the exhaustive limit.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

/// How thoroughly a table is checked for associativity on construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Validation {
    /// Exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`], sampled above.
    #[default]
    Standard,
    /// Always exhaustive.
    Strict,
}

/// Which constructor produced a group. Decision procedures that rely on a
/// canonical element layout (the quaternion closed form) key off this.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Cyclic {
        n: usize,
    },
    Dihedral {
        order: usize,
    },
    /// Q_4n with `n ≥ 2`, laid out as x^0..x^(2n-1) then x^0*y..x^(2n-1)*y.
    Quaternion {
        n: usize,
    },
    Abelian {
        factors: Vec<usize>,
    },
    Product,
    Permutation {
        degree: usize,
    },
    Table,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `table[a * order + b] = a·b`.
    table: Vec<u32>,
    inverse: Vec<ElementId>,
    labels: Vec<String>,
    label_index: HashMap<String, ElementId>,
    abelian: bool,
    family: Family,
}

impl FiniteGroup {
    /// Validates a raw table and wraps it as a group. Identity must be index 0.
    pub fn from_table(
        order: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        family: Family,
        validation: Validation,
    ) -> Result<Self> {
        if order == 0 {
            return Err(bad_table("group order must be positive", None, None));
        }
        if table.len() != order * order {
            return Err(bad_table(
                format!("table has {} entries, expected {}", table.len(), order * order),
                None,
                None,
            ));
        }
        if labels.len() != order {
            return Err(bad_table(
                format!("{} labels for a group of order {order}", labels.len()),
                None,
                None,
            ));
        }
        for (pos, &v) in table.iter().enumerate() {
            if v as usize >= order {
                return Err(bad_table(
                    format!("entry {v} out of range"),
                    Some(pos / order),
                    Some(pos % order),
                ));
            }
        }
        check_latin_square(order, &table)?;
        for a in 0..order {
            if table[a] as usize != a {
                return Err(bad_table("index 0 is not a left identity", Some(0), Some(a)));
            }
            if table[a * order] as usize != a {
                return Err(bad_table("index 0 is not a right identity", Some(a), Some(0)));
            }
        }
        check_associativity(order, &table, validation)?;

        // In a Latin square with identity 0 each row holds 0 exactly once.
        let mut inverse = vec![ElementId::IDENTITY; order];
        for a in 0..order {
            let b = table[a * order..(a + 1) * order]
                .iter()
                .position(|&v| v == 0)
                .expect("latin square row contains identity");
            if table[b * order + a] != 0 {
                return Err(bad_table("left and right inverses differ", Some(b), Some(a)));
            }
            inverse[a] = ElementId::from(b);
        }

        let mut label_index = HashMap::with_capacity(order);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), ElementId::from(i)).is_some() {
                return Err(bad_table(format!("duplicate label `{l}`"), Some(i), None));
            }
        }

        let abelian = (0..order).all(|a| (a + 1..order).all(|b| table[a * order + b] == table[b * order + a]));

        Ok(FiniteGroup {
            order,
            table,
            inverse,
            labels,
            label_index,
            abelian,
            family,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.table[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.order as u32).map(ElementId)
    }

    pub fn contains(&self, a: ElementId) -> bool {
        a.index() < self.order
    }

    pub fn check_element(&self, a: ElementId) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: a.index(),
                order: self.order,
            })
        }
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        self.label_index.get(label).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Row-major copy of the table, as written to table files.
    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// `g^k`; negative exponents use the inverse.
    pub fn pow(&self, g: ElementId, k: i64) -> ElementId {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let mut acc = ElementId::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn square(&self, g: ElementId) -> ElementId {
        self.mul(g, g)
    }

    /// `x⁻¹·g·x`.
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Smallest `k ≥ 1` with `g^k = e`.
    pub fn element_order(&self, g: ElementId) -> usize {
        let mut k = 1;
        let mut acc = g;
        while !acc.is_identity() {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, g: ElementId) -> bool {
        !g.is_identity() && self.square(g).is_identity()
    }

    pub fn involutions(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.elements().filter(move |&g| self.is_involution(g))
    }

    /// The set of squares `{g² : g ∈ G}`.
    pub fn squares(&self) -> ElementSet {
        let mut set = self.empty_set();
        for g in self.elements() {
            set.insert(self.square(g));
        }
        set
    }

    /// Least `y` with `y² = x`, if `x` is a square.
    pub fn square_root(&self, x: ElementId) -> Option<ElementId> {
        self.elements().find(|&y| self.square(y) == x)
    }

    /// Least element of order 4, if any.
    pub fn element_of_order_4(&self) -> Option<ElementId> {
        // g has order 4 iff g² is an involution.
        self.elements().find(|&g| self.is_involution(self.square(g)))
    }

    pub fn has_element_of_order_4(&self) -> bool {
        self.element_of_order_4().is_some()
    }

    /// Splits an abelian group into its elements of 2-power order and its
    /// elements of odd order.
    pub fn torsion_components_abelian(&self) -> Result<(Subgroup, Subgroup)> {
        if !self.abelian {
            return Err(Error::NotAbelian);
        }
        let mut two = self.empty_set();
        let mut odd = self.empty_set();
        for g in self.elements() {
            let k = self.element_order(g);
            if k.is_power_of_two() {
                two.insert(g);
            }
            if k % 2 == 1 {
                odd.insert(g);
            }
        }
        Ok((
            Subgroup::from_closed_set(self, two),
            Subgroup::from_closed_set(self, odd),
        ))
    }
}

fn bad_table(message: impl Into<String>, row: Option<usize>, col: Option<usize>) -> Error {
    Error::BadTableFile {
        message: message.into(),
        row,
        col,
    }
}

fn check_latin_square(order: usize, table: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == r {
                return Err(bad_table(format!("value {v} repeats in row {r}"), Some(r), Some(c)));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == c {
                return Err(bad_table(format!("value {v} repeats in column {c}"), Some(r), Some(c)));
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn check_associativity(order: usize, table: &[u32], validation: Validation) -> Result<()> {
    let at = |a: usize, b: usize| table[a * order + b] as usize;
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if at(at(a, b), c) != at(a, at(b, c)) {
            Err(bad_table(
                format!("associativity fails for ({a}, {b}, {c})"),
                Some(a),
                Some(b),
            ))
        } else {
            Ok(())
        }
    };
    if validation == Validation::Strict || order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 1..order {
            for b in 1..order {
                for c in 1..order {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7ab1e);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            check(
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            )?;
        }
    }
    Ok(())
}
