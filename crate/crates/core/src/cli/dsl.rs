//! Group-spec DSL.
//!
//! ```text
//! spec    := ctor "(" args ")" | "perm" "[" gen ("," gen)* "]"
//! ctor    := "cyclic" | "elemab" | "dihedral" | "quaternion" | "sym" | "alt" | "product"
//! args    := arg ("," arg)*          arg := integer | spec
//! gen     := cycle+                   cycle := "(" point* ")"   points 1-based, space or comma separated
//! ```
//!
//! `cyclic(n)` n ≥ 1; `elemab(p,k)` p prime, k ≥ 0; `dihedral(n)` the order-2n
//! symmetry group of an n-gon, n ≥ 1; `quaternion(n)` generalized quaternion,
//! n = 2^k ≥ 8; `sym(n)`, `alt(n)` n ≥ 1; `product(a,b)` direct product.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    ElemAb { p: u64, k: u64 },
    Dihedral(u64),
    Quaternion(u64),
    Sym(u64),
    Alt(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Generators, each a list of 1-based cycles.
    Perm(Vec<Vec<Vec<usize>>>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Order implied by the constructor arithmetic, when it is known
    /// without building the group.
    pub fn nominal_order(&self) -> Option<u64> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::ElemAb { p, k } => p.checked_pow(u32::try_from(*k).ok()?)?,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Quaternion(n) => *n,
            GroupSpec::Sym(n) => (1..=*n).try_fold(1u64, |a, b| a.checked_mul(b))?,
            GroupSpec::Alt(n) => {
                let f = (1..=*n).try_fold(1u64, |a, b| a.checked_mul(b))?;
                if *n >= 2 {
                    f / 2
                } else {
                    f
                }
            }
            GroupSpec::Product(a, b) => a.nominal_order()?.checked_mul(b.nominal_order()?)?,
            GroupSpec::Perm(_) => return None,
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::ElemAb { p, k } => write!(f, "elemab({p},{k})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion({n})"),
            GroupSpec::Sym(n) => write!(f, "sym({n})"),
            GroupSpec::Alt(n) => write!(f, "alt({n})"),
            GroupSpec::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupSpec::Perm(gens) => {
                write!(f, "perm[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    if g.is_empty() {
                        write!(f, "()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Arg {
    Int(u64, usize),
    Spec(GroupSpec, usize),
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a constructor name"));
        }
        Ok((String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(), start))
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error_at(start, "integer too large"))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let (name, start) = self.ident()?;
        if name == "perm" {
            return self.perm();
        }
        const KNOWN: [&str; 7] = ["cyclic", "elemab", "dihedral", "quaternion", "sym", "alt", "product"];
        if !KNOWN.contains(&name.as_str()) {
            return Err(self.error_at(start, format!("unknown constructor `{name}`")));
        }
        self.expect(b'(')?;
        let mut args = vec![self.arg()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.arg()?);
        }
        self.expect(b')')?;
        self.assemble(&name, start, args)
    }

    fn arg(&mut self) -> Result<Arg> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Arg::Int(self.integer()?, at)),
            Some(c) if c.is_ascii_alphabetic() => Ok(Arg::Spec(self.spec()?, at)),
            _ => Err(self.error("expected an integer or a group spec")),
        }
    }

    fn assemble(&self, name: &str, start: usize, args: Vec<Arg>) -> Result<GroupSpec> {
        let arity = if matches!(name, "elemab" | "product") { 2 } else { 1 };
        if args.len() != arity {
            return Err(self.error_at(
                start,
                format!("`{name}` takes {arity} argument(s), got {}", args.len()),
            ));
        }
        let mut ints = Vec::new();
        let mut specs = Vec::new();
        for a in args {
            match a {
                Arg::Int(v, at) if name != "product" => ints.push((v, at)),
                Arg::Spec(s, _) if name == "product" => specs.push(s),
                Arg::Int(_, at) => return Err(self.error_at(at, "`product` expects group specs")),
                Arg::Spec(_, at) => {
                    return Err(self.error_at(at, format!("`{name}` expects integer arguments")))
                }
            }
        }
        let positive = |(v, at): (u64, usize), what: &str| -> Result<u64> {
            if v == 0 {
                Err(self.error_at(at, format!("{what} must be at least 1")))
            } else {
                Ok(v)
            }
        };
        Ok(match name {
            "cyclic" => GroupSpec::Cyclic(positive(ints[0], "order")?),
            "dihedral" => GroupSpec::Dihedral(positive(ints[0], "polygon size")?),
            "sym" => GroupSpec::Sym(positive(ints[0], "degree")?),
            "alt" => GroupSpec::Alt(positive(ints[0], "degree")?),
            "quaternion" => {
                let (n, at) = ints[0];
                if n < 8 || !n.is_power_of_two() {
                    return Err(self.error_at(at, "quaternion order must be a power of two ≥ 8"));
                }
                GroupSpec::Quaternion(n)
            }
            "elemab" => {
                let (p, at) = ints[0];
                if !is_prime(p) {
                    return Err(self.error_at(at, format!("{p} is not prime")));
                }
                GroupSpec::ElemAb { p, k: ints[1].0 }
            }
            "product" => {
                let b = specs.pop().unwrap();
                let a = specs.pop().unwrap();
                GroupSpec::product(a, b)
            }
            _ => unreachable!(),
        })
    }

    fn perm(&mut self) -> Result<GroupSpec> {
        self.expect(b'[')?;
        let mut gens = Vec::new();
        loop {
            gens.push(self.generator()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected `,` or `]`")),
            }
        }
        Ok(GroupSpec::Perm(gens))
    }

    fn generator(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        if self.peek() != Some(b'(') {
            return Err(self.error("expected `(`"));
        }
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut points = Vec::new();
            loop {
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(b',') if !points.is_empty() => self.pos += 1,
                    Some(c) if c.is_ascii_digit() => {
                        let at = self.pos;
                        let p = self.integer()?;
                        if p == 0 {
                            return Err(self.error_at(at, "points are 1-based"));
                        }
                        if points.contains(&(p as usize)) {
                            return Err(self.error_at(at, format!("point {p} repeated in a cycle")));
                        }
                        points.push(p as usize);
                    }
                    _ => return Err(self.error("expected a point or `)`")),
                }
            }
            if points.len() > 1 {
                cycles.push(points);
            }
        }
        Ok(cycles)
    }
}
