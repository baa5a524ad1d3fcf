//! Resolving element expressions such as `x^3*y` or `(0 1)(2 3)` against a
//! group's labels.

use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::families::{cycle_notation, permutation_from_cycles};
use crate::group::{Family, FiniteGroup};

/// Splits on `sep` outside parentheses and braces.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn canonical_cycles(g: &FiniteGroup, text: &str) -> Option<String> {
    let Family::Permutation { degree } = *g.family() else {
        return None;
    };
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while let Some(body) = rest.strip_prefix('(') {
        let end = body.find(')')?;
        let points = body[..end]
            .split_whitespace()
            .map(|p| p.parse().ok())
            .collect::<Option<Vec<usize>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[end + 1..].trim_start();
    }
    if !rest.is_empty() {
        return None;
    }
    permutation_from_cycles(&cycles, degree)
        .ok()
        .map(|p| cycle_notation(&p))
}

fn atom(g: &FiniteGroup, text: &str) -> Option<ElementId> {
    let text = text.trim();
    g.find_label(text)
        .or_else(|| canonical_cycles(g, text).and_then(|l| g.find_label(&l)))
        .or_else(|| (text == "e").then_some(ElementId::IDENTITY))
}

/// Resolves one element: an exact label, a permutation in any cycle order,
/// `e`, or a `*`-separated word of such atoms each optionally raised to an
/// integer power (`x^-1`, `r^2*s`).
pub fn resolve_element(g: &FiniteGroup, expr: &str) -> Result<ElementId> {
    let expr = expr.trim();
    if let Some(a) = atom(g, expr) {
        return Ok(a);
    }
    let unknown = || Error::UnknownLabel(expr.to_string());
    let mut acc = ElementId::IDENTITY;
    for factor in split_top_level(expr, '*') {
        let factor = factor.trim();
        let value = match atom(g, factor) {
            Some(a) => a,
            None => {
                let (base, exp) = factor.rsplit_once('^').ok_or_else(unknown)?;
                let k: i64 = exp.trim().parse().map_err(|_| unknown())?;
                g.pow(atom(g, base).ok_or_else(unknown)?, k)
            }
        };
        acc = g.mul(acc, value);
    }
    Ok(acc)
}

/// Comma-separated element expressions. An empty string is the empty list.
pub fn resolve_list(g: &FiniteGroup, text: &str) -> Result<Vec<ElementId>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, ',')
        .into_iter()
        .map(|part| resolve_element(g, part))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_group, GroupSpec};

    #[test]
    fn quaternion_words() {
        let g = build_group(&GroupSpec::GeneralizedQuaternion(24)).unwrap();
        assert_eq!(resolve_element(&g, "x^4").unwrap(), ElementId(4));
        assert_eq!(resolve_element(&g, "x^3*y").unwrap(), ElementId(15));
        assert_eq!(resolve_element(&g, "x^-1").unwrap(), ElementId(11));
        assert_eq!(resolve_element(&g, "y*x").unwrap(), g.find_label("x^11*y").unwrap());
        assert_eq!(resolve_element(&g, "y^2").unwrap(), ElementId(6));
        assert_eq!(resolve_element(&g, "e").unwrap(), ElementId(0));
        assert_eq!(resolve_list(&g, "x^3, y").unwrap(), vec![ElementId(3), ElementId(12)]);
        assert!(matches!(resolve_element(&g, "z"), Err(Error::UnknownLabel(_))));
        assert!(resolve_list(&g, "  ").unwrap().is_empty());
    }

    #[test]
    fn tuple_labels_keep_commas() {
        let g = build_group(&GroupSpec::Abelian(vec![2, 4])).unwrap();
        let ids = resolve_list(&g, "(0,2),(1,1)").unwrap();
        assert_eq!(
            ids,
            vec![g.find_label("(0,2)").unwrap(), g.find_label("(1,1)").unwrap()]
        );
    }

    #[test]
    fn permutation_cycles_any_rotation() {
        let g = build_group(&GroupSpec::Permutation {
            generators: vec![vec![vec![0, 1, 2, 3]], vec![vec![0, 1]]],
            degree: 4,
        })
        .unwrap();
        let a = resolve_element(&g, "(2 3)(0 1)").unwrap();
        assert_eq!(g.label(a), "(0 1)(2 3)");
        let b = resolve_element(&g, "(1 2 3 0)").unwrap();
        assert_eq!(g.label(b), "(0 1 2 3)");
        assert_eq!(resolve_element(&g, "()").unwrap(), ElementId(0));
    }

    #[test]
    fn cyclic_labels_are_residues() {
        let g = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!(resolve_list(&g, "1,5").unwrap(), vec![ElementId(1), ElementId(5)]);
        assert_eq!(resolve_element(&g, "1^4").unwrap(), ElementId(4));
    }
}
