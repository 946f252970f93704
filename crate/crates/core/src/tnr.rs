//! Words in transfers, norms and restrictions applied to `theta`.
//!
//! ```text
//! expr := term (('+' | '*') term)*        '*' binds tighter than '+'
//! term := 'theta' | ('t' | 'n' | 'r') '[' ident ']' term | '(' expr ')'
//! ```
//!
//! Map names refer to a [`MapContext`]. The name `id` is reserved for the
//! identity map of whatever level it is applied at.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bispan::EffectiveElement;
use crate::group::GroupRef;
use crate::gset::{GMap, GSet};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Transfer,
    Norm,
    Restrict,
}

impl Op {
    fn letter(self) -> char {
        match self {
            Op::Transfer => 't',
            Op::Norm => 'n',
            Op::Restrict => 'r',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TnrExpr {
    Theta,
    Apply { op: Op, map: String, arg: Box<TnrExpr> },
    Add(Box<TnrExpr>, Box<TnrExpr>),
    Mul(Box<TnrExpr>, Box<TnrExpr>),
}

impl fmt::Display for TnrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TnrExpr::Theta => f.write_str("theta"),
            TnrExpr::Apply { op, map, arg } => {
                write!(f, "{}[{}] ", op.letter(), map)?;
                match **arg {
                    TnrExpr::Add(..) | TnrExpr::Mul(..) => write!(f, "({arg})"),
                    _ => write!(f, "{arg}"),
                }
            }
            TnrExpr::Add(a, b) => {
                write!(f, "{a} + ")?;
                match **b {
                    TnrExpr::Add(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            TnrExpr::Mul(a, b) => {
                match **a {
                    TnrExpr::Add(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str(" * ")?;
                match **b {
                    TnrExpr::Add(..) | TnrExpr::Mul(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl Parser<'_> {
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
            Err(syntax(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            return Err(syntax(start, "expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<TnrExpr> {
        let mut sum = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            sum = TnrExpr::Add(Box::new(sum), Box::new(self.product()?));
        }
        Ok(sum)
    }

    fn product(&mut self) -> Result<TnrExpr> {
        let mut prod = self.term()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            prod = TnrExpr::Mul(Box::new(prod), Box::new(self.term()?));
        }
        Ok(prod)
    }

    fn term(&mut self) -> Result<TnrExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => {
                let start = self.pos;
                let word = self.ident()?;
                match word.as_str() {
                    "theta" => Ok(TnrExpr::Theta),
                    "t" | "n" | "r" => {
                        let op = match word.as_str() {
                            "t" => Op::Transfer,
                            "n" => Op::Norm,
                            _ => Op::Restrict,
                        };
                        self.expect(b'[')?;
                        let map = self.ident()?;
                        self.expect(b']')?;
                        let arg = self.term()?;
                        Ok(TnrExpr::Apply { op, map, arg: Box::new(arg) })
                    }
                    _ => Err(syntax(start, format!("unexpected `{word}`"))),
                }
            }
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

pub fn parse(text: &str) -> Result<TnrExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "trailing input"));
    }
    Ok(e)
}

/// Named G-sets and maps, with a designated generator set.
#[derive(Clone, Debug)]
pub struct MapContext {
    pub group: GroupRef,
    pub sets: BTreeMap<String, GSet>,
    /// Map name to (source name, target name, map).
    pub maps: BTreeMap<String, (String, String, GMap)>,
    pub generator: String,
}

impl MapContext {
    pub fn new(group: &GroupRef, generator: &str, t: GSet) -> Self {
        let mut sets = BTreeMap::new();
        sets.insert(generator.to_string(), t);
        MapContext { group: group.clone(), sets, maps: BTreeMap::new(), generator: generator.to_string() }
    }

    pub fn add_set(&mut self, name: &str, x: GSet) -> Result<()> {
        if self.sets.contains_key(name) {
            return Err(Error::ShapeError(format!("set `{name}` declared twice")));
        }
        self.sets.insert(name.to_string(), x);
        Ok(())
    }

    /// Adds a map between declared sets; the values are validated.
    pub fn add_map(&mut self, name: &str, source: &str, target: &str, values: Vec<usize>) -> Result<()> {
        if name == "id" || self.maps.contains_key(name) {
            return Err(Error::ShapeError(format!("map `{name}` declared twice or reserved")));
        }
        let s = self.sets.get(source).ok_or_else(|| Error::UnknownName(source.to_string()))?;
        let t = self.sets.get(target).ok_or_else(|| Error::UnknownName(target.to_string()))?;
        let f = GMap::new(s, t, values)?;
        self.maps.insert(name.to_string(), (source.to_string(), target.to_string(), f));
        Ok(())
    }

    pub fn generator_set(&self) -> &GSet {
        &self.sets[&self.generator]
    }
}

/// A node annotated with the level (set name) its value lives at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typed {
    pub level: String,
    pub children: Vec<Typed>,
}

/// Assigns levels to every node, checking map endpoints.
pub fn typecheck(e: &TnrExpr, ctx: &MapContext) -> Result<Typed> {
    match e {
        TnrExpr::Theta => Ok(Typed { level: ctx.generator.clone(), children: Vec::new() }),
        TnrExpr::Apply { op, map, arg } => {
            let inner = typecheck(arg, ctx)?;
            let level = if map == "id" {
                inner.level.clone()
            } else {
                let (src, tgt, _) = ctx.maps.get(map).ok_or_else(|| Error::UnknownName(map.clone()))?;
                let (from, to) = match op {
                    Op::Restrict => (tgt, src),
                    _ => (src, tgt),
                };
                if *from != inner.level {
                    return Err(Error::PortMismatch(format!(
                        "`{}[{map}]` expects a value at `{from}`, got one at `{}`",
                        op.letter(),
                        inner.level
                    )));
                }
                to.clone()
            };
            Ok(Typed { level, children: alloc::vec![inner] })
        }
        TnrExpr::Add(a, b) | TnrExpr::Mul(a, b) => {
            let (ta, tb) = (typecheck(a, ctx)?, typecheck(b, ctx)?);
            if ta.level != tb.level {
                return Err(Error::PortMismatch(format!("`{e}` combines values at `{}` and `{}`", ta.level, tb.level)));
            }
            Ok(Typed { level: ta.level.clone(), children: alloc::vec![ta, tb] })
        }
    }
}

/// Evaluates in `F_T` after typechecking.
pub fn evaluate(e: &TnrExpr, ctx: &MapContext, limits: &Limits) -> Result<EffectiveElement> {
    let typed = typecheck(e, ctx)?;
    eval(e, &typed, ctx, limits)
}

fn eval(e: &TnrExpr, ty: &Typed, ctx: &MapContext, limits: &Limits) -> Result<EffectiveElement> {
    match e {
        TnrExpr::Theta => Ok(EffectiveElement::theta(ctx.generator_set())),
        TnrExpr::Apply { op, map, arg } => {
            let v = eval(arg, &ty.children[0], ctx, limits)?;
            if map == "id" {
                return Ok(v);
            }
            let f = &ctx.maps[map].2;
            match op {
                Op::Transfer => v.transfer(f),
                Op::Norm => v.norm(f, limits.section_cap),
                Op::Restrict => v.restrict(f),
            }
        }
        TnrExpr::Add(a, b) => eval(a, &ty.children[0], ctx, limits)?.add(&eval(b, &ty.children[1], ctx, limits)?),
        TnrExpr::Mul(a, b) => {
            eval(a, &ty.children[0], ctx, limits)?.mul(&eval(b, &ty.children[1], ctx, limits)?, limits.section_cap)
        }
    }
}

/// Writes an element as a sum of words `t[c] n[b] r[a] theta`, one per
/// component, adding the legs to a fresh context. The zero element is
/// written as a transfer from the empty set.
pub fn element_as_word(e: &EffectiveElement, generator: &str) -> Result<(MapContext, TnrExpr)> {
    let group = e.t().group().clone();
    let mut ctx = MapContext::new(&group, generator, e.t().clone());
    ctx.add_set("X", e.x().clone())?;
    let mut words = Vec::new();
    for (i, c) in e.components().iter().enumerate() {
        let b = c.realize(e.t(), e.x());
        let (u, v) = (format!("U{i}"), format!("V{i}"));
        ctx.add_set(&u, b.u().clone())?;
        ctx.add_set(&v, b.v().clone())?;
        ctx.add_map(&format!("a{i}"), &u, generator, b.a().values().to_vec())?;
        ctx.add_map(&format!("b{i}"), &u, &v, b.b().values().to_vec())?;
        ctx.add_map(&format!("c{i}"), &v, "X", b.c().values().to_vec())?;
        words.push(format!("t[c{i}] n[b{i}] r[a{i}] theta"));
    }
    if words.is_empty() {
        ctx.add_set("E", GSet::empty(&group))?;
        ctx.add_map("e0", "E", generator, Vec::new())?;
        ctx.add_map("e1", "E", "X", Vec::new())?;
        words.push(String::from("t[e1] r[e0] theta"));
    }
    let expr = parse(&words.join(" + "))?;
    Ok((ctx, expr))
}
