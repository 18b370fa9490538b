//! Named witness constructors, selected at runtime from spec strings such as
//! `interleave(2, matched(12, 21, 10))` or `iota([3,5,8], reverse(132))`.
//!
//! Arguments are nested calls, bracketed integer lists, or atoms. A word
//! atom is a digit string (one digit per part) or `_` for the empty word;
//! longer parts go in a bracketed list.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::witness::{Affix, DynWitness, Identity, Interleave, IotaLift, Matched, Prepend, Reverse, Rotate, ShiftUp};
use crate::error::{Error, Result};
use crate::word::{Composition, IotaMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Atom(String),
    List(Vec<u64>),
    Call(Call),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub name: String,
    pub args: Vec<Arg>,
}

pub trait WitnessFactory: Send + Sync {
    fn name(&self) -> &'static str;
    fn usage(&self) -> &'static str;
    fn build(&self, args: &[Arg], registry: &Registry) -> Result<DynWitness>;
}

pub struct Registry {
    factories: BTreeMap<&'static str, Box<dyn WitnessFactory>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { factories: BTreeMap::new() }
    }

    pub fn register(&mut self, factory: Box<dyn WitnessFactory>) {
        self.factories.insert(factory.name(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = (&'static str, &'static str)> + '_ {
        self.factories.values().map(|f| (f.name(), f.usage()))
    }

    pub fn build_call(&self, call: &Call) -> Result<DynWitness> {
        let factory = self.factories.get(call.name.as_str()).ok_or_else(|| Error::UnknownWitness(call.name.clone()))?;
        factory.build(&call.args, self)
    }

    pub fn build(&self, spec: &str) -> Result<DynWitness> {
        self.build_call(&parse_spec(spec)?)
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(IdentityFactory));
        r.register(Box::new(ReverseFactory));
        r.register(Box::new(PrependFactory));
        r.register(Box::new(RotateFactory));
        r.register(Box::new(ShiftFactory));
        r.register(Box::new(InterleaveFactory));
        r.register(Box::new(AffixFactory));
        r.register(Box::new(IotaFactory));
        r.register(Box::new(MatchedFactory));
        r
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::ExprSyntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn token(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-')).unwrap_or(self.src.len() - start);
        self.pos += len;
        &self.src[start..start + len]
    }

    fn call(&mut self) -> Result<Call> {
        let name = self.token().to_string();
        if name.is_empty() {
            return Err(self.err("expected a witness name"));
        }
        if !self.eat('(') {
            return Err(self.err("expected '('"));
        }
        let mut args = Vec::new();
        if !self.eat(')') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.err("expected ',' or ')'"));
                }
            }
        }
        Ok(Call { name, args })
    }

    fn arg(&mut self) -> Result<Arg> {
        if self.eat('[') {
            let mut items = Vec::new();
            if !self.eat(']') {
                loop {
                    let t = self.token();
                    let n = t.parse::<u64>().map_err(|_| self.err("expected an integer"))?;
                    items.push(n);
                    if self.eat(']') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected ',' or ']'"));
                    }
                }
            }
            return Ok(Arg::List(items));
        }
        let save = self.pos;
        let atom = self.token().to_string();
        if atom.is_empty() {
            return Err(self.err("expected an argument"));
        }
        if self.eat('(') {
            self.pos = save;
            return Ok(Arg::Call(self.call()?));
        }
        Ok(Arg::Atom(atom))
    }
}

pub fn parse_spec(spec: &str) -> Result<Call> {
    let mut p = Parser { src: spec, pos: 0 };
    let call = p.call()?;
    p.skip_ws();
    if p.pos != spec.len() {
        return Err(p.err("trailing input"));
    }
    Ok(call)
}

fn arity(name: &str, args: &[Arg], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidParameter(format!("{name} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn word(arg: &Arg) -> Result<Composition> {
    match arg {
        Arg::Atom(s) if s == "_" => Ok(Composition::empty()),
        Arg::Atom(s) if s.chars().all(|c| c.is_ascii_digit()) => s.parse(),
        Arg::List(v) => Composition::new(v.clone()),
        other => Err(Error::InvalidParameter(format!("expected a word, got {other:?}"))),
    }
}

fn nonempty_word(arg: &Arg) -> Result<Composition> {
    let w = word(arg)?;
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(w)
}

fn integer(arg: &Arg) -> Result<u64> {
    match arg {
        Arg::Atom(s) => s.parse().map_err(|_| Error::InvalidParameter(format!("expected an integer, got {s}"))),
        other => Err(Error::InvalidParameter(format!("expected an integer, got {other:?}"))),
    }
}

fn witness(arg: &Arg, registry: &Registry) -> Result<DynWitness> {
    match arg {
        Arg::Call(call) => registry.build_call(call),
        other => Err(Error::InvalidParameter(format!("expected a witness, got {other:?}"))),
    }
}

struct IdentityFactory;
impl WitnessFactory for IdentityFactory {
    fn name(&self) -> &'static str {
        "identity"
    }
    fn usage(&self) -> &'static str {
        "identity(u): w -> w, strong witness for (u, u)"
    }
    fn build(&self, args: &[Arg], _: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 1)?;
        Ok(Arc::new(Identity::new(nonempty_word(&args[0])?)))
    }
}

struct ReverseFactory;
impl WitnessFactory for ReverseFactory {
    fn name(&self) -> &'static str {
        "reverse"
    }
    fn usage(&self) -> &'static str {
        "reverse(u): w -> reversed w, Wilf witness for (u, reversed u)"
    }
    fn build(&self, args: &[Arg], _: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 1)?;
        Ok(Arc::new(Reverse::new(nonempty_word(&args[0])?)))
    }
}

struct PrependFactory;
impl WitnessFactory for PrependFactory {
    fn name(&self) -> &'static str {
        "prepend"
    }
    fn usage(&self) -> &'static str {
        "prepend(f): by -> b f(y), gives (1u, 1v)"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 1)?;
        Ok(Arc::new(Prepend::new(witness(&args[0], r)?)?))
    }
}

struct RotateFactory;
impl WitnessFactory for RotateFactory {
    fn name(&self) -> &'static str {
        "rotate"
    }
    fn usage(&self) -> &'static str {
        "rotate(f): by -> f(y) b, gives (1u, v1)"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 1)?;
        Ok(Arc::new(Rotate::new(witness(&args[0], r)?)?))
    }
}

struct ShiftFactory;
impl WitnessFactory for ShiftFactory {
    fn name(&self) -> &'static str {
        "shift"
    }
    fn usage(&self) -> &'static str {
        "shift(f): f applied to the lowered blocks of the 2-factorization, gives (u+, v+)"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 1)?;
        Ok(Arc::new(ShiftUp::new(witness(&args[0], r)?)))
    }
}

struct InterleaveFactory;
impl WitnessFactory for InterleaveFactory {
    fn name(&self) -> &'static str {
        "interleave"
    }
    fn usage(&self) -> &'static str {
        "interleave(k, f): f applied to each residue subword mod k, gives each letter repeated k times"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 2)?;
        let k = usize::try_from(integer(&args[0])?).map_err(|_| Error::InvalidParameter("k too large".into()))?;
        Ok(Arc::new(Interleave::new(k, witness(&args[1], r)?)?))
    }
}

struct AffixFactory;
impl WitnessFactory for AffixFactory {
    fn name(&self) -> &'static str {
        "affix"
    }
    fn usage(&self) -> &'static str {
        "affix(k, y, z, f): f applied to the high blocks of the k-factorization, gives (yuz, yvz)"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 4)?;
        Ok(Arc::new(Affix::new(integer(&args[0])?, word(&args[1])?, word(&args[2])?, witness(&args[3], r)?)?))
    }
}

struct IotaFactory;
impl WitnessFactory for IotaFactory {
    fn name(&self) -> &'static str {
        "iota"
    }
    fn usage(&self) -> &'static str {
        "iota([k1,k2,...], f): lift of a rearrangement witness along an increasing map, gives (iota(u), iota(v))"
    }
    fn build(&self, args: &[Arg], r: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 2)?;
        let Arg::List(values) = &args[0] else {
            return Err(Error::InvalidParameter("iota expects a bracketed list of values".into()));
        };
        Ok(Arc::new(IotaLift::new(IotaMap::new(values.clone())?, witness(&args[1], r)?)?))
    }
}

struct MatchedFactory;
impl WitnessFactory for MatchedFactory {
    fn name(&self) -> &'static str {
        "matched"
    }
    fn usage(&self) -> &'static str {
        "matched(u, v, B): exhaustive cell-by-cell pairing on words of norm <= B"
    }
    fn build(&self, args: &[Arg], _: &Registry) -> Result<DynWitness> {
        arity(self.name(), args, 3)?;
        Ok(Arc::new(Matched::new(nonempty_word(&args[0])?, nonempty_word(&args[1])?, integer(&args[2])?)?))
    }
}
