//! Proportions `a : b = c : d` and the classical rules for rewriting them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;

/// `a / b = c / d` with `b, d ≠ 0`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proportion {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `a/c = b/d`
    Alternando,
    /// `(a+b)/b = (c+d)/d`
    Componendo,
    /// `(a−b)/b = (c−d)/d`
    Dividendo,
    /// `b/a = d/c`
    Invertendo,
    /// `a/(a−b) = c/(c−d)`
    Convertendo,
    /// `a/b = (a+c)/(b+d)`
    V12Sum,
}

impl Rule {
    pub const ALL: [Rule; 6] =
        [Rule::Alternando, Rule::Componendo, Rule::Dividendo, Rule::Invertendo, Rule::Convertendo, Rule::V12Sum];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Alternando => "alternando",
            Rule::Componendo => "componendo",
            Rule::Dividendo => "dividendo",
            Rule::Invertendo => "invertendo",
            Rule::Convertendo => "convertendo",
            Rule::V12Sum => "v12sum",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Proportion {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        if b.is_zero() || d.is_zero() || &a * &d != &b * &c {
            return Err(Error::NotAProportion);
        }
        Ok(Proportion { a, b, c, d })
    }

    pub fn terms(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Both proportions have the same ratio `a/b`.
    pub fn same_ratio(&self, other: &Proportion) -> bool {
        &self.a * &other.b == &self.b * &other.a
    }

    pub fn transform(&self, rule: Rule) -> Result<Proportion> {
        let Proportion { a, b, c, d } = self;
        let (a, b, c, d) = (a.clone(), b.clone(), c.clone(), d.clone());
        let out = match rule {
            Rule::Alternando => {
                if c.is_zero() {
                    return Err(Error::RuleInapplicable("alternando needs c != 0"));
                }
                (a, c, b, d)
            }
            Rule::Componendo => (&a + &b, b, &c + &d, d),
            Rule::Dividendo => (&a - &b, b, &c - &d, d),
            Rule::Invertendo => {
                if a.is_zero() {
                    return Err(Error::RuleInapplicable("invertendo needs a != 0"));
                }
                (b, a, d, c)
            }
            Rule::Convertendo => {
                if a == b {
                    return Err(Error::RuleInapplicable("convertendo needs a != b"));
                }
                let (ab, cd) = (&a - &b, &c - &d);
                (a, ab, c, cd)
            }
            Rule::V12Sum => {
                let bd = &b + &d;
                if bd.is_zero() {
                    return Err(Error::RuleInapplicable("v12sum needs b + d != 0"));
                }
                let ac = &a + &c;
                (a, b, ac, bd)
            }
        };
        Proportion::new(out.0, out.1, out.2, out.3)
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} = {}/{}", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn prop(t: [i64; 4]) -> Proportion {
        let q = FieldSpec::RATIONALS;
        Proportion::new(q.int(t[0]), q.int(t[1]), q.int(t[2]), q.int(t[3])).unwrap()
    }

    #[test]
    fn rule_examples() {
        let p = prop([1, 2, 3, 6]);
        assert_eq!(p.transform(Rule::Alternando).unwrap(), prop([1, 3, 2, 6]));
        assert_eq!(p.transform(Rule::Componendo).unwrap(), prop([3, 2, 9, 6]));
        assert_eq!(p.transform(Rule::V12Sum).unwrap(), prop([1, 2, 4, 8]));
        assert_eq!(p.transform(Rule::Dividendo).unwrap(), prop([-1, 2, -3, 6]));
        assert_eq!(p.transform(Rule::Invertendo).unwrap(), prop([2, 1, 6, 3]));
        assert_eq!(p.transform(Rule::Convertendo).unwrap(), prop([1, -1, 3, -3]));
    }

    #[test]
    fn inapplicable_rules() {
        let zero = prop([0, 2, 0, 5]);
        assert!(matches!(zero.transform(Rule::Alternando), Err(Error::RuleInapplicable(_))));
        assert!(matches!(zero.transform(Rule::Invertendo), Err(Error::RuleInapplicable(_))));
        let unit = prop([3, 3, 4, 4]);
        assert!(matches!(unit.transform(Rule::Convertendo), Err(Error::RuleInapplicable(_))));
        let opposite = prop([1, 2, -1, -2]);
        assert!(matches!(opposite.transform(Rule::V12Sum), Err(Error::RuleInapplicable(_))));
    }

    #[test]
    fn rejects_non_proportions() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(Proportion::new(q.int(1), q.int(2), q.int(3), q.int(5)), Err(Error::NotAProportion));
        assert_eq!(Proportion::new(q.int(1), q.int(0), q.int(3), q.int(5)), Err(Error::NotAProportion));
    }
}
