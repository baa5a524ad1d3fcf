//! Group specifications and the constructors that turn them into tables.

use std::collections::{HashMap, VecDeque};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::group::{Family, FiniteGroup, Validation};

/// Default ceiling on the order of a permutation-group closure.
pub const DEFAULT_PERMUTATION_BOUND: usize = 10_240;

/// A cycle, as a list of points moved `c[0] → c[1] → … → c[0]`.
pub type Cycle = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order (2m, the symmetries of an m-gon).
    Dihedral(usize),
    /// Generalized quaternion group of the given order 4n, n ≥ 2.
    GeneralizedQuaternion(usize),
    /// Direct product of cyclic groups with the given invariant factors.
    Abelian(Vec<usize>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Generators in cycle notation acting on `0..degree`.
    Permutation {
        generators: Vec<Vec<Cycle>>,
        degree: usize,
    },
    Table(PathBuf),
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub permutation_bound: usize,
    pub validation: Validation,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            permutation_bound: DEFAULT_PERMUTATION_BOUND,
            validation: Validation::Standard,
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, &BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n, opts),
        GroupSpec::Dihedral(order) => dihedral(*order, opts),
        GroupSpec::GeneralizedQuaternion(order) => quaternion(*order, opts),
        GroupSpec::Abelian(factors) => abelian(factors, opts),
        GroupSpec::Product(a, b) => {
            let a = build_group_with(a, opts)?;
            let b = build_group_with(b, opts)?;
            direct_product(&a, &b, opts)
        }
        GroupSpec::Permutation { generators, degree } => permutation(generators, *degree, opts),
        GroupSpec::Table(path) => read_table_file(path, opts),
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

/// Builds a table from a closed-form product on `0..order`.
fn tabulate(
    order: usize,
    labels: Vec<String>,
    family: Family,
    opts: &BuildOptions,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroup> {
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(mul(a, b) as u32);
        }
    }
    FiniteGroup::from_table(order, table, labels, family, opts.validation)
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn cyclic(n: usize, opts: &BuildOptions) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("cyclic group order must be at least 1"));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    tabulate(n, labels, Family::Cyclic { n }, opts, |a, b| (a + b) % n)
}

/// Rotations `r^i` occupy `0..m`, reflections `r^i*s` occupy `m..2m`.
fn dihedral(order: usize, opts: &BuildOptions) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(invalid(format!(
            "dihedral order must be even and at least 2, got {order}"
        )));
    }
    let m = order / 2;
    let labels = (0..order)
        .map(|i| {
            let (k, refl) = (i % m, i >= m);
            match (power_label("r", k), refl) {
                (r, false) if r.is_empty() => "e".to_string(),
                (r, false) => r,
                (r, true) if r.is_empty() => "s".to_string(),
                (r, true) => format!("{r}*s"),
            }
        })
        .collect();
    tabulate(order, labels, Family::Dihedral { order }, opts, |a, b| {
        let (i, s) = (a % m, a >= m);
        let (j, t) = (b % m, b >= m);
        // r^i s^s · r^j s^t = r^(i ± j) s^(s+t)
        let k = if s { (i + m - j) % m } else { (i + j) % m };
        k + if s != t { m } else { 0 }
    })
}

/// Q_4n = ⟨x, y | x^n = y², x^2n = e, y⁻¹xy = x⁻¹⟩, with `x^i` at index `i`
/// and `x^i*y` at index `2n + i`.
fn quaternion(order: usize, opts: &BuildOptions) -> Result<FiniteGroup> {
    if !order.is_multiple_of(4) || order < 8 {
        return Err(invalid(format!(
            "generalized quaternion order must be 4n with n >= 2, got {order}"
        )));
    }
    let n = order / 4;
    let two_n = 2 * n;
    let labels = (0..order)
        .map(|i| {
            let x = power_label("x", i % two_n);
            match (x.is_empty(), i >= two_n) {
                (true, false) => "e".to_string(),
                (false, false) => x,
                (true, true) => "y".to_string(),
                (false, true) => format!("{x}*y"),
            }
        })
        .collect();
    tabulate(order, labels, Family::Quaternion { n }, opts, |a, b| {
        let (i, ya) = (a % two_n, a >= two_n);
        let (j, yb) = (b % two_n, b >= two_n);
        match (ya, yb) {
            (false, false) => (i + j) % two_n,
            (false, true) => two_n + (i + j) % two_n,
            // x^i y · x^j = x^(i-j) y
            (true, false) => two_n + (i + two_n - j) % two_n,
            // x^i y · x^j y = x^(i-j) y² = x^(i-j+n)
            (true, true) => (i + two_n - j + n) % two_n,
        }
    })
}

fn abelian(factors: &[usize], opts: &BuildOptions) -> Result<FiniteGroup> {
    if factors.is_empty() {
        return Err(invalid("abelian group needs at least one invariant factor"));
    }
    if let Some(&d) = factors.iter().find(|&&d| d < 2) {
        return Err(invalid(format!("abelian invariant factors must be >= 2, got {d}")));
    }
    let order: usize = factors.iter().product();
    // Mixed radix, first factor most significant: lexicographic tuples.
    let digits = |mut i: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (slot, &d) in out.iter_mut().zip(factors).rev() {
            *slot = i % d;
            i /= d;
        }
        out
    };
    let labels = (0..order)
        .map(|i| {
            let parts: Vec<String> = digits(i).iter().map(usize::to_string).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    tabulate(
        order,
        labels,
        Family::Abelian {
            factors: factors.to_vec(),
        },
        opts,
        |a, b| {
            let (da, db) = (digits(a), digits(b));
            da.iter()
                .zip(&db)
                .zip(factors)
                .fold(0, |acc, ((x, y), d)| acc * d + (x + y) % d)
        },
    )
}

/// Direct product with elements ordered as lexicographic pairs.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, opts: &BuildOptions) -> Result<FiniteGroup> {
    let nb = b.order();
    let order = a.order() * nb;
    let labels = (0..order)
        .map(|i| {
            format!(
                "({},{})",
                a.label(ElementId::from(i / nb)),
                b.label(ElementId::from(i % nb))
            )
        })
        .collect();
    tabulate(order, labels, Family::Product, opts, |x, y| {
        let p = a.mul(ElementId::from(x / nb), ElementId::from(y / nb));
        let q = b.mul(ElementId::from(x % nb), ElementId::from(y % nb));
        p.index() * nb + q.index()
    })
}

/// Converts cycle notation into an image array on `0..degree`.
pub fn permutation_from_cycles(cycles: &[Cycle], degree: usize) -> Result<Vec<u32>> {
    let mut image: Vec<u32> = (0..degree as u32).collect();
    let mut moved = vec![false; degree];
    for cycle in cycles {
        for &p in cycle {
            if p >= degree {
                return Err(invalid(format!("point {p} out of range for degree {degree}")));
            }
            if moved[p] {
                return Err(invalid(format!("point {p} appears twice in one permutation")));
            }
            moved[p] = true;
        }
        for (k, &p) in cycle.iter().enumerate() {
            image[p] = cycle[(k + 1) % cycle.len()] as u32;
        }
    }
    Ok(image)
}

/// Canonical cycle notation: cycles start at their least point, sorted by
/// that point, fixed points omitted, identity written `()`.
pub fn cycle_notation(image: &[u32]) -> String {
    let mut seen = vec![false; image.len()];
    let mut out = String::new();
    for start in 0..image.len() {
        if seen[start] || image[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut p = image[start] as usize;
        while p != start {
            seen[p] = true;
            cycle.push(p);
            p = image[p] as usize;
        }
        let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Breadth-first closure from the identity. `p·g` applies `p` first, then `g`.
fn permutation(generators: &[Vec<Cycle>], degree: usize, opts: &BuildOptions) -> Result<FiniteGroup> {
    if degree == 0 {
        return Err(invalid("permutation degree must be at least 1"));
    }
    let gens = generators
        .iter()
        .map(|cycles| permutation_from_cycles(cycles, degree))
        .collect::<Result<Vec<_>>>()?;
    let compose = |p: &[u32], q: &[u32]| -> Vec<u32> { p.iter().map(|&i| q[i as usize]).collect() };

    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = compose(&elements[i], g);
            if !index.contains_key(&next) {
                if elements.len() >= opts.permutation_bound {
                    return Err(Error::OrderBoundExceeded {
                        order: elements.len() + 1,
                        bound: opts.permutation_bound,
                    });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    tabulate(elements.len(), labels, Family::Permutation { degree }, opts, |a, b| {
        index[&compose(&elements[a], &elements[b])]
    })
}

/// On-disk multiplication table: row-major indices, identity at index 0.
#[derive(Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<u32>>,
}

impl TableFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        TableFile {
            order: g.order(),
            labels: g.labels().to_vec(),
            table: g.table_rows(),
        }
    }

    pub fn into_group(self, opts: &BuildOptions) -> Result<FiniteGroup> {
        let bad = |message: String, row, col| Error::BadTableFile { message, row, col };
        if self.table.len() != self.order {
            return Err(bad(
                format!("{} rows for declared order {}", self.table.len(), self.order),
                None,
                None,
            ));
        }
        let mut flat = Vec::with_capacity(self.order * self.order);
        for (r, row) in self.table.iter().enumerate() {
            if row.len() != self.order {
                return Err(bad(
                    format!("row has {} entries, expected {}", row.len(), self.order),
                    Some(r),
                    None,
                ));
            }
            flat.extend_from_slice(row);
        }
        FiniteGroup::from_table(self.order, flat, self.labels, Family::Table, opts.validation)
    }
}

pub fn read_table_file(path: &Path, opts: &BuildOptions) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file: TableFile = serde_json::from_str(&text).map_err(|e| Error::BadTableFile {
        message: e.to_string(),
        row: None,
        col: None,
    })?;
    file.into_group(opts)
}
