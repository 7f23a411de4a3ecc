//! Textual group expressions.
//!
//! ```text
//! expr   := name | name "(" arg ("," arg)* ")"
//! arg    := expr | int | "action" "=" list
//! list   := "[" [item ("," item)*] "]"
//! item   := int | list
//! ```
//!
//! `Display` produces the canonical form accepted back by `parse`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u32),
    /// Dihedral group of order `n`.
    Dihedral(u32),
    Quaternion8,
    Symmetric(u32),
    Alternating(u32),
    ElementaryAbelian(u32, u32),
    ExtraspecialPlus(u32),
    Sl23,
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    /// `action[i][j]` is the image of the j-th greedy generator of `base`
    /// under the i-th greedy generator of `actor`.
    Semidirect {
        base: Box<GroupExpr>,
        actor: Box<GroupExpr>,
        action: Vec<Vec<u32>>,
    },
    AffineFrobenius(u32),
    AffineSemilinear(u32),
    Gn(u32),
    Hn(u32),
}

impl GroupExpr {
    pub fn direct(a: GroupExpr, b: GroupExpr) -> GroupExpr {
        GroupExpr::Direct(Box::new(a), Box::new(b))
    }

    pub fn semidirect(base: GroupExpr, actor: GroupExpr, action: Vec<Vec<u32>>) -> GroupExpr {
        GroupExpr::Semidirect { base: Box::new(base), actor: Box::new(actor), action }
    }

    /// The order of the evaluated group, without building it.
    pub fn order(&self) -> u128 {
        use GroupExpr::*;
        let n = |x: &u32| *x as u128;
        match self {
            Cyclic(k) | Dihedral(k) => n(k),
            Quaternion8 => 8,
            Symmetric(k) => (1..=n(k)).product(),
            Alternating(k) => ((1..=n(k)).product::<u128>() / 2).max(1),
            ElementaryAbelian(p, k) => n(p).pow(*k),
            ExtraspecialPlus(p) => n(p).pow(3),
            Sl23 => 24,
            Direct(a, b) => a.order() * b.order(),
            Semidirect { base, actor, .. } => base.order() * actor.order(),
            AffineFrobenius(q) => n(q) * (n(q) - 1),
            AffineSemilinear(q) => {
                let e = crate::group::factorize(*q as u64).first().map_or(1, |f| f.1) as u128;
                n(q) * (n(q) - 1) * e
            }
            Gn(k) => 24u128.pow(*k),
            Hn(k) => 24u128.pow(*k) / 3,
        }
    }

    pub fn parse(text: &str) -> Result<GroupExpr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupExpr> {
        GroupExpr::parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupExpr::*;
        match self {
            Cyclic(n) => write!(f, "cyclic({n})"),
            Dihedral(n) => write!(f, "dihedral({n})"),
            Quaternion8 => write!(f, "quaternion8"),
            Symmetric(n) => write!(f, "symmetric({n})"),
            Alternating(n) => write!(f, "alternating({n})"),
            ElementaryAbelian(p, k) => write!(f, "elementary_abelian({p},{k})"),
            ExtraspecialPlus(p) => write!(f, "extraspecial_plus({p})"),
            Sl23 => write!(f, "sl23"),
            Direct(a, b) => write!(f, "direct({a},{b})"),
            Semidirect { base, actor, action } => {
                write!(f, "semidirect({base},{actor},action=[")?;
                for (i, row) in action.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for (j, x) in row.iter().enumerate() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{x}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "])")
            }
            AffineFrobenius(q) => write!(f, "affine_frobenius({q})"),
            AffineSemilinear(q) => write!(f, "affine_semilinear({q})"),
            Gn(n) => write!(f, "gn({n})"),
            Hn(n) => write!(f, "hn({n})"),
        }
    }
}

enum Arg {
    Expr(GroupExpr),
    Int(u32),
    Action(Vec<Vec<u32>>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.err("expected a constructor name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn int_list(&mut self) -> Result<Vec<u32>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn action(&mut self) -> Result<Vec<Vec<u32>>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.int_list()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Arg::Int(self.int()?)),
            _ => {
                let save = self.pos;
                let name = self.ident()?;
                if name == "action" && self.eat(b'=') {
                    return Ok(Arg::Action(self.action()?));
                }
                self.pos = save;
                Ok(Arg::Expr(self.expr()?))
            }
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.eat(b'(') {
            loop {
                args.push(self.arg()?);
                if self.eat(b')') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        let bad = |what: &str| Error::Parse { pos: start, msg: format!("{name}: {what}") };
        use GroupExpr::*;
        let int1 = |args: &[Arg]| match args {
            [Arg::Int(n)] => Some(*n),
            _ => None,
        };
        let e = match name.as_str() {
            "quaternion8" | "sl23" if !args.is_empty() => return Err(bad("takes no arguments")),
            "quaternion8" => Quaternion8,
            "sl23" => Sl23,
            "cyclic" | "dihedral" | "symmetric" | "alternating" | "extraspecial_plus" | "affine_frobenius"
            | "affine_semilinear" | "gn" | "hn" => {
                let n = int1(&args).ok_or_else(|| bad("expects one integer"))?;
                match name.as_str() {
                    "cyclic" => Cyclic(n),
                    "dihedral" => Dihedral(n),
                    "symmetric" => Symmetric(n),
                    "alternating" => Alternating(n),
                    "extraspecial_plus" => ExtraspecialPlus(n),
                    "affine_frobenius" => AffineFrobenius(n),
                    "affine_semilinear" => AffineSemilinear(n),
                    "gn" => Gn(n),
                    _ => Hn(n),
                }
            }
            "elementary_abelian" => match args.as_slice() {
                [Arg::Int(p), Arg::Int(k)] => ElementaryAbelian(*p, *k),
                _ => return Err(bad("expects (p, k)")),
            },
            "direct" => match args.as_slice() {
                [Arg::Expr(a), Arg::Expr(b)] => GroupExpr::direct(a.clone(), b.clone()),
                _ => return Err(bad("expects two group expressions")),
            },
            "semidirect" => match args.as_slice() {
                [Arg::Expr(b), Arg::Expr(a), Arg::Action(act)] => {
                    GroupExpr::semidirect(b.clone(), a.clone(), act.clone())
                }
                _ => return Err(bad("expects (base, actor, action=[...])")),
            },
            _ => return Err(Error::Parse { pos: start, msg: format!("unknown constructor '{name}'") }),
        };
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "cyclic(1)",
            "sl23",
            "direct(quaternion8,cyclic(2))",
            "semidirect(cyclic(9),cyclic(3),action=[[4]])",
            "semidirect(extraspecial_plus(3),cyclic(2),action=[[1,6,18]])",
            "gn(2)",
            "affine_semilinear(9)",
            "elementary_abelian(2,3)",
        ] {
            let e = GroupExpr::parse(s).unwrap();
            assert_eq!(e.to_string(), s);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        let e = GroupExpr::parse(" direct( cyclic(2) , cyclic( 3 ) ) ").unwrap();
        assert_eq!(e.to_string(), "direct(cyclic(2),cyclic(3))");
    }

    #[test]
    fn errors_carry_position() {
        match GroupExpr::parse("direct(cyclic(2),") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 17),
            other => panic!("{other:?}"),
        }
        assert!(GroupExpr::parse("foo(3)").is_err());
        assert!(GroupExpr::parse("cyclic(2) x").is_err());
        assert!(GroupExpr::parse("sl23(1)").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(GroupExpr::parse("affine_semilinear(9)").unwrap().order(), 144);
        assert_eq!(GroupExpr::parse("affine_semilinear(8)").unwrap().order(), 168);
        assert_eq!(GroupExpr::parse("hn(2)").unwrap().order(), 192);
        assert_eq!(GroupExpr::parse("alternating(5)").unwrap().order(), 60);
    }
}
