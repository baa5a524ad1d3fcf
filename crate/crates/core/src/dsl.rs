//! Text form of [`GroupSpec`].
//!
//! ```text
//! spec   := atom ("x" atom)*                     left-associative product
//! atom   := "Z(" n ")" | "D(" n ")" | "Q(" n ")"
//!         | "A(" n ("," n)* ")"
//!         | "perm{" gen (";" gen)* "}@" n
//!         | "table@" path
//!         | "(" spec ")"
//! gen    := "()" | ("(" n+ ")")+                 cycles, points separated by spaces
//! ```
//!
//! Whitespace between tokens is ignored. A table path runs up to the next
//! whitespace or `)`.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::families::{Cycle, GroupSpec};

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.expected(&["`x`", "end of input"]));
    }
    Ok(spec)
}

/// Inverse of [`parse_spec`].
pub fn pretty_print(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic(n) => format!("Z({n})"),
        GroupSpec::Dihedral(n) => format!("D({n})"),
        GroupSpec::GeneralizedQuaternion(n) => format!("Q({n})"),
        GroupSpec::Abelian(fs) => {
            let parts: Vec<String> = fs.iter().map(usize::to_string).collect();
            format!("A({})", parts.join(","))
        }
        GroupSpec::Product(a, b) => {
            let right = match **b {
                GroupSpec::Product(..) => format!("({})", pretty_print(b)),
                _ => pretty_print(b),
            };
            format!("{} x {}", pretty_print(a), right)
        }
        GroupSpec::Permutation { generators, degree } => {
            let gens: Vec<String> = generators
                .iter()
                .map(|cycles| {
                    if cycles.is_empty() {
                        return "()".to_string();
                    }
                    cycles
                        .iter()
                        .map(|c| {
                            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                            format!("({})", pts.join(" "))
                        })
                        .collect()
                })
                .collect();
            format!("perm{{{}}}@{degree}", gens.join(";"))
        }
        GroupSpec::Table(path) => format!("table@{}", path.display()),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expected(&self, what: &[&str]) -> Error {
        Error::Syntax {
            offset: self.pos,
            expected: what.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.expected(&[&format!("`{token}`")]))
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.expected(&["integer"]));
        }
        self.pos += len;
        let n = self.src[start..self.pos].parse().map_err(|_| Error::Semantic {
            offset: start,
            message: "integer too large".into(),
        })?;
        Ok((n, start))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut left = self.atom()?;
        loop {
            self.skip_ws();
            // `x` is the product operator only between atoms.
            if self.rest().starts_with('x') {
                self.pos += 1;
                let right = self.atom()?;
                left = GroupSpec::Product(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("Z(") {
            let (n, at) = self.number()?;
            self.expect(")")?;
            if n == 0 {
                return Err(semantic(at, "cyclic order must be at least 1"));
            }
            Ok(GroupSpec::Cyclic(n))
        } else if self.eat("D(") {
            let (n, at) = self.number()?;
            self.expect(")")?;
            if n < 2 || n % 2 != 0 {
                return Err(semantic(at, "dihedral order must be even and at least 2"));
            }
            Ok(GroupSpec::Dihedral(n))
        } else if self.eat("Q(") {
            let (n, at) = self.number()?;
            self.expect(")")?;
            if n % 4 != 0 {
                return Err(semantic(at, "quaternion order must be divisible by 4"));
            }
            if n < 8 {
                return Err(semantic(at, "quaternion order 4n needs n >= 2"));
            }
            Ok(GroupSpec::GeneralizedQuaternion(n))
        } else if self.eat("A(") {
            let mut factors = Vec::new();
            loop {
                let (d, at) = self.number()?;
                if d < 2 {
                    return Err(semantic(at, "abelian invariant factors must be at least 2"));
                }
                factors.push(d);
                if self.eat(")") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.expected(&["`,`", "`)`"]));
                }
            }
            Ok(GroupSpec::Abelian(factors))
        } else if self.eat("perm{") {
            self.permutation(start)
        } else if self.eat("table@") {
            self.skip_ws();
            let len = self
                .rest()
                .find(|c: char| c.is_whitespace() || c == ')')
                .unwrap_or(self.rest().len());
            if len == 0 {
                return Err(self.expected(&["path"]));
            }
            let path = PathBuf::from(&self.rest()[..len]);
            self.pos += len;
            Ok(GroupSpec::Table(path))
        } else if self.eat("(") {
            let inner = self.spec()?;
            self.expect(")")?;
            Ok(inner)
        } else {
            Err(self.expected(&["`Z(`", "`D(`", "`Q(`", "`A(`", "`perm{`", "`table@`", "`(`"]))
        }
    }

    fn permutation(&mut self, start: usize) -> Result<GroupSpec> {
        let mut generators: Vec<Vec<Cycle>> = Vec::new();
        loop {
            let mut cycles = Vec::new();
            self.expect("(")?;
            if !self.eat(")") {
                loop {
                    let mut cycle = Vec::new();
                    while !self.eat(")") {
                        cycle.push(self.number()?.0);
                    }
                    cycles.push(cycle);
                    if !self.eat("(") {
                        break;
                    }
                }
            }
            generators.push(cycles);
            if self.eat("}") {
                break;
            }
            if !self.eat(";") {
                return Err(self.expected(&["`(`", "`;`", "`}`"]));
            }
        }
        self.expect("@")?;
        let (degree, at) = self.number()?;
        if degree == 0 {
            return Err(semantic(at, "permutation degree must be at least 1"));
        }
        for cycles in &generators {
            let mut seen = vec![false; degree];
            for &p in cycles.iter().flatten() {
                if p >= degree {
                    return Err(semantic(start, &format!("point {p} out of range for degree {degree}")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(semantic(start, &format!("point {p} repeated within a generator")));
                }
            }
        }
        Ok(GroupSpec::Permutation { generators, degree })
    }
}

fn semantic(offset: usize, message: &str) -> Error {
    Error::Semantic {
        offset,
        message: message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn atoms() {
        assert_eq!(parse_spec("Q(24)").unwrap(), GroupSpec::GeneralizedQuaternion(24));
        assert_eq!(parse_spec("Z(1)").unwrap(), GroupSpec::Cyclic(1));
        assert_eq!(parse_spec("  D( 8 ) ").unwrap(), GroupSpec::Dihedral(8));
        assert_eq!(
            parse_spec("table@/tmp/g.json").unwrap(),
            GroupSpec::Table(PathBuf::from("/tmp/g.json"))
        );
    }

    #[test]
    fn products_associate_left() {
        let spec = parse_spec("A(2,2) x Z(5)").unwrap();
        assert_eq!(
            spec,
            GroupSpec::Product(Box::new(GroupSpec::Abelian(vec![2, 2])), Box::new(GroupSpec::Cyclic(5)))
        );
        assert_eq!(crate::families::build_group(&spec).unwrap().order(), 20);

        let spec = parse_spec("Z(2)xZ(3)xZ(5)").unwrap();
        let GroupSpec::Product(left, right) = spec else {
            panic!()
        };
        assert_eq!(*right, GroupSpec::Cyclic(5));
        assert!(matches!(*left, GroupSpec::Product(..)));

        let spec = parse_spec("Z(2) x (Z(3) x Z(5))").unwrap();
        let GroupSpec::Product(left, _) = spec else { panic!() };
        assert_eq!(*left, GroupSpec::Cyclic(2));
    }

    #[test]
    fn permutations() {
        let spec = parse_spec("perm{(0 1 2);(0 1)}@3").unwrap();
        assert_eq!(
            spec,
            GroupSpec::Permutation {
                generators: vec![vec![vec![0, 1, 2]], vec![vec![0, 1]]],
                degree: 3
            }
        );
        let spec = parse_spec("perm{(0 1)(2 3); ()}@4 x Z(2)").unwrap();
        let GroupSpec::Product(left, _) = spec else { panic!() };
        assert_eq!(
            *left,
            GroupSpec::Permutation {
                generators: vec![vec![vec![0, 1], vec![2, 3]], vec![]],
                degree: 4
            }
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_spec("Z(6) y").unwrap_err() {
            Error::Syntax { offset, expected } => {
                assert_eq!(offset, 5);
                assert!(expected.contains(&"end of input".to_string()));
            }
            e => panic!("{e:?}"),
        }
        match parse_spec("Z(").unwrap_err() {
            Error::Syntax { offset, expected } => {
                assert_eq!(offset, 2);
                assert_eq!(expected, vec!["integer".to_string()]);
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_spec("G(3)"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_spec("A(2,"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_spec("Q(10)"), Err(Error::Semantic { offset: 2, .. })));
        assert!(matches!(parse_spec("Q(4)"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("Z(0)"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("D(7)"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("A(2,1)"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("perm{(0 3)}@3"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_spec("perm{(0 1)(1 2)}@3"), Err(Error::Semantic { .. })));
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let cycle = prop::collection::vec(0usize..6, 1..4).prop_map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        });
        let leaf = prop_oneof![
            (1usize..100).prop_map(GroupSpec::Cyclic),
            (1usize..50).prop_map(|m| GroupSpec::Dihedral(2 * m)),
            (2usize..30).prop_map(|n| GroupSpec::GeneralizedQuaternion(4 * n)),
            prop::collection::vec(2usize..9, 1..4).prop_map(GroupSpec::Abelian),
            prop::collection::vec(prop::collection::vec(cycle, 0..2), 1..3).prop_map(|gens| {
                // keep points disjoint within a generator
                let generators = gens.into_iter().map(|cs| cs.into_iter().take(1).collect()).collect();
                GroupSpec::Permutation { generators, degree: 6 }
            }),
            "[a-z][a-z0-9_./-]{0,12}".prop_map(|p| GroupSpec::Table(PathBuf::from(p))),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
        })
    }

    proptest! {
        #[test]
        fn pretty_print_round_trips(spec in arb_spec()) {
            let text = pretty_print(&spec);
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }
}
