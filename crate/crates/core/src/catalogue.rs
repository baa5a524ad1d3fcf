//! Built-in list of small groups used for batch cross-checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{is_code_perfect, Limits, Mode};
use crate::dsl::parse_spec;
use crate::error::Result;
use crate::families::{build_group, GroupSpec};
use crate::group::FiniteGroup;

pub const DEFAULT_CATALOGUE_ORDER: usize = 64;

const S3: &str = "perm{(0 1 2);(0 1)}@3";
const S4: &str = "perm{(0 1 2 3);(0 1)}@4";
const A4: &str = "perm{(0 1 2);(1 2 3)}@4";

/// Direct products and permutation groups beyond the four parametrised
/// families, with their orders.
const EXTRAS: &[(&str, usize)] = &[
    (S3, 6),
    (A4, 12),
    ("perm{(0 1 2 3 4);(1 2 4 3)}@5", 20),
    ("perm{(0 1 2 3 4 5 6);(1 2 4)(3 6 5)}@7", 21),
    (S4, 24),
    ("perm{(0 1 2 3 4 5 6 7 8 9 10);(1 3 9 5 4)(2 6 7 10 8)}@11", 55),
    ("D(6) x Z(2)", 12),
    ("D(8) x Z(2)", 16),
    ("Q(8) x Z(2)", 16),
    ("D(6) x Z(3)", 18),
    ("D(8) x Z(3)", 24),
    ("Q(8) x Z(3)", 24),
    ("Q(12) x Z(2)", 24),
    ("perm{(0 1 2);(1 2 3)}@4 x Z(2)", 24),
    ("D(6) x Z(5)", 30),
    ("D(10) x Z(3)", 30),
    ("Q(8) x Z(4)", 32),
    ("Q(8) x A(2,2)", 32),
    ("D(6) x D(6)", 36),
    ("perm{(0 1 2);(1 2 3)}@4 x Z(3)", 36),
    ("perm{(0 1 2 3);(0 1)}@4 x Z(2)", 48),
    ("Q(12) x Z(5)", 60),
    ("perm{(0 1 2);(1 2 3)}@4 x Z(5)", 60),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub order: usize,
}

impl CatalogueEntry {
    fn new(name: String, order: usize) -> Self {
        let spec = parse_spec(&name).expect("catalogue names parse");
        CatalogueEntry { name, spec, order }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        build_group(&self.spec)
    }
}

/// Invariant-factor lists `d1 | d2 | … | dk` with `k ≥ 2`, `d1 ≥ 2`, and
/// product `order`.
pub fn invariant_factor_lists(order: usize) -> Vec<Vec<usize>> {
    fn extend(first: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        // the next factor is a multiple of the previous one and divides what is left
        let mut d = first;
        while d <= remaining {
            if remaining.is_multiple_of(d) {
                prefix.push(d);
                extend(d, remaining / d, prefix, out);
                prefix.pop();
            }
            d += first;
        }
    }
    let mut out = Vec::new();
    for d in 2..=order {
        if order.is_multiple_of(d) {
            let mut prefix = vec![d];
            extend(d, order / d, &mut prefix, &mut out);
        }
    }
    out.sort();
    out
}

/// Every `Z(n)`, `D(2m)` (m ≥ 2), `Q(4m)` (m ≥ 2), non-cyclic `A(…)`, and
/// the fixed extras, up to `max_order`, sorted by order then name.
pub fn catalogue(max_order: usize) -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(CatalogueEntry::new(format!("Z({n})"), n));
        if n >= 4 && n % 2 == 0 {
            out.push(CatalogueEntry::new(format!("D({n})"), n));
        }
        if n >= 8 && n % 4 == 0 {
            out.push(CatalogueEntry::new(format!("Q({n})"), n));
        }
        for factors in invariant_factor_lists(n) {
            let parts: Vec<String> = factors.iter().map(usize::to_string).collect();
            out.push(CatalogueEntry::new(format!("A({})", parts.join(",")), n));
        }
    }
    for &(name, order) in EXTRAS {
        if order <= max_order {
            out.push(CatalogueEntry::new(name.to_string(), order));
        }
    }
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogueRow {
    pub name: String,
    pub order: usize,
    pub code_perfect: Option<bool>,
    pub subgroups: Option<usize>,
    pub pass: bool,
    pub error: Option<String>,
}

/// Runs the verify-mode code-perfect check over every catalogue group.
pub fn run_catalogue(max_order: usize, limits: &Limits) -> Vec<CatalogueRow> {
    catalogue(max_order)
        .into_par_iter()
        .map(|entry| {
            let outcome = entry.build().and_then(|g| is_code_perfect(&g, Mode::Verify, limits));
            match outcome {
                Ok(d) => CatalogueRow {
                    name: entry.name,
                    order: entry.order,
                    code_perfect: Some(d.code_perfect),
                    subgroups: d.subgroups_checked,
                    pass: true,
                    error: None,
                },
                Err(e) => CatalogueRow {
                    name: entry.name,
                    order: entry.order,
                    code_perfect: None,
                    subgroups: None,
                    pass: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}
