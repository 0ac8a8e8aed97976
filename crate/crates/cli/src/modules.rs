//! Module names on the command line.
//!
//! `D (6,4)` or `D(6,4)` is an irreducible module, `S (5,1)` a Specht module.
//! With `--n`, `Mk` is the permutation module on `k`-subsets and `Sk`, `Dk`
//! are the two-row modules labelled by `(n-k, k)`. A trailing `dual` or `*`
//! takes the dual.

use std::str::FromStr;

use modrep_core::partitions::Partition;
use modrep_core::reps::{subset_module, ModuleLibrary};
use modrep_core::{Error, Rep, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Irreducible,
    Specht,
    Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Partition(Partition),
    TwoRow(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub kind: Kind,
    pub shape: Shape,
    pub dual: bool,
}

impl ModuleSpec {
    pub fn parse(words: &[String]) -> Result<Self> {
        let text: String = words.concat().chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("unrecognised module {:?}; try D(6,4), S(5,1), M3 or S1dual", words.join(" ")));
        let mut rest = text.as_str();
        let dual = if let Some(r) = rest.strip_suffix("dual").or_else(|| rest.strip_suffix('*')) {
            rest = r;
            true
        } else {
            false
        };
        let mut chars = rest.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            'D' => Kind::Irreducible,
            'S' => Kind::Specht,
            'M' => Kind::Permutation,
            _ => return Err(bad()),
        };
        let body = chars.as_str();
        let shape = if body.starts_with('(') {
            Shape::Partition(Partition::from_str(body)?)
        } else {
            Shape::TwoRow(body.parse().map_err(|_| bad())?)
        };
        if kind == Kind::Permutation && matches!(shape, Shape::Partition(_)) {
            return Err(Error::Unsupported("permutation modules are named by subset size, as in M2".into()));
        }
        Ok(ModuleSpec { kind, shape, dual })
    }

    /// The degree, from the partition or from `n`.
    pub fn degree(&self, n: Option<usize>) -> Result<usize> {
        match (&self.shape, n) {
            (Shape::Partition(l), Some(n)) if l.size() != n => {
                Err(Error::DimensionMismatch(format!("{l} is a partition of {}, not {n}", l.size())))
            }
            (Shape::Partition(l), _) => Ok(l.size()),
            (Shape::TwoRow(_), Some(n)) => Ok(n),
            (Shape::TwoRow(k), None) => Err(Error::Precondition(format!("the module with index {k} needs --n"))),
        }
    }

    pub fn build(&self, n: Option<usize>, p: u32, lib: &ModuleLibrary) -> Result<Rep> {
        let n = self.degree(n)?;
        let shape = match &self.shape {
            Shape::Partition(l) => l.clone(),
            Shape::TwoRow(k) if 2 * k <= n => Partition::from_parts(&[n - k, *k]),
            Shape::TwoRow(k) => return Err(Error::Precondition(format!("index {k} needs 2k <= n = {n}"))),
        };
        let rep = match self.kind {
            Kind::Irreducible => (*lib.irreducible(&shape, p)?).clone(),
            Kind::Specht => (*lib.specht(&shape, p)?).clone(),
            Kind::Permutation => subset_module(n, p, shape.part(2))?,
        };
        Ok(if self.dual { rep.dual() } else { rep })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn parses_forms() {
        let d = ModuleSpec::parse(&words(&["D", "(6,4)"])).unwrap();
        assert_eq!(d.kind, Kind::Irreducible);
        assert_eq!(d.shape, Shape::Partition(Partition::from_parts(&[6, 4])));
        let s = ModuleSpec::parse(&words(&["S1dual"])).unwrap();
        assert_eq!((s.kind, s.shape, s.dual), (Kind::Specht, Shape::TwoRow(1), true));
        assert_eq!(ModuleSpec::parse(&words(&["M3"])).unwrap().shape, Shape::TwoRow(3));
        assert!(ModuleSpec::parse(&words(&["X3"])).is_err());
        assert!(ModuleSpec::parse(&words(&["M(3,2)"])).is_err());
        assert!(ModuleSpec::parse(&words(&["M3"])).unwrap().degree(None).is_err());
    }

    #[test]
    fn builds_dimensions() {
        let lib = ModuleLibrary::new(None);
        let m = ModuleSpec::parse(&words(&["M2"])).unwrap().build(Some(6), 2, &lib).unwrap();
        assert_eq!(m.dim(), 15);
        let s = ModuleSpec::parse(&words(&["S1*"])).unwrap().build(Some(6), 3, &lib).unwrap();
        assert_eq!(s.dim(), 5);
        let bad = ModuleSpec::parse(&words(&["D(3,1)"])).unwrap();
        assert!(bad.build(Some(5), 2, &lib).is_err());
    }
}
