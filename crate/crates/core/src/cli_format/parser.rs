//! Line-oriented parser for problem files.
//!
//! ```text
//! ring R = QQ[x:1, y:1]/(x*y)
//! algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
//! module N over B = <e:0, ep:4 | de = 0, dep = e*X*Y*y>
//! ```
//!
//! One statement per line, `#` starts a comment. Annotations are `name:hom` or
//! `name:hom:internal`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{NamedModule, ProblemDescription};
use crate::coefficients::{BaseRing, Exponents, Generator};
use crate::error::{Error, Result};
use crate::free_dga::{AlgebraElement, FreeDgAlgebra, VariableSpec};
use crate::scalar::GroundField;
use crate::semifree_module::{BasisElement, BasisSpec, ModuleElement, SemifreeModule};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                column,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else if "=[]()<>,:|*+-^/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), column });
            i += 1;
        } else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// The value of an expression: an algebra element or a module element.
enum Value {
    Alg(AlgebraElement),
    Mod(ModuleElement),
}

/// Names visible to an expression.
struct Scope<'a> {
    algebra: &'a FreeDgAlgebra,
    module: Option<&'a SemifreeModule>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn new(text: &str, line: usize) -> Result<Self> {
        Ok(Parser {
            toks: lex(text, line)?,
            pos: 0,
            line,
            end_column: text.chars().count() + 1,
        })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected a name"),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{word}`")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<i32> {
        let negative = self.eat_sym('-');
        let n = self.int()?;
        let Some(v) = n.to_i32() else {
            return self.error("integer out of range");
        };
        Ok(if negative { -v } else { v })
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    /// `name:hom` or `name:hom:internal`.
    fn annotation(&mut self) -> Result<(String, i32, Option<i32>)> {
        let name = self.ident()?;
        self.expect_sym(':')?;
        let h = self.small_int()?;
        let w = if self.eat_sym(':') { Some(self.small_int()?) } else { None };
        Ok((name, h, w))
    }

    fn expr(&mut self, s: &Scope) -> Result<Value> {
        let negate = self.eat_sym('-');
        let mut acc = self.term(s)?;
        if negate {
            acc = self.neg(acc);
        }
        loop {
            if self.eat_sym('+') {
                let rhs = self.term(s)?;
                acc = self.add(acc, rhs)?;
            } else if self.eat_sym('-') {
                let rhs = self.term(s)?;
                let rhs = self.neg(rhs);
                acc = self.add(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, s: &Scope) -> Result<Value> {
        let mut acc = self.factor(s)?;
        while self.eat_sym('*') {
            let rhs = self.factor(s)?;
            acc = self.mul(s, acc, rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self, s: &Scope) -> Result<Value> {
        let start = self.pos;
        let base = self.atom(s)?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        if self.eat_sym('(') {
            let n = self.int()?;
            self.expect_sym(')')?;
            let name = match (&self.toks[start].tok, self.pos - start) {
                (Tok::Ident(name), 5) => name.clone(),
                _ => return self.error("divided powers apply to a single algebra variable"),
            };
            let alg = s.algebra;
            let Some(i) = alg.variable_index(&name) else {
                return self.error(format!("`{name}` is not an algebra variable"));
            };
            let Some(n) = n.to_u32() else {
                return self.error("exponent out of range");
            };
            return Ok(Value::Alg(alg.divided_power(i, n)));
        }
        let n = self.int()?;
        let Some(n) = n.to_u32() else {
            return self.error("exponent out of range");
        };
        let Value::Alg(a) = base else {
            return self.error("powers of module elements are undefined");
        };
        let alg = s.algebra;
        let mut out = alg.one();
        for _ in 0..n {
            out = alg.mul(&out, &a);
        }
        Ok(Value::Alg(out))
    }

    fn atom(&mut self, s: &Scope) -> Result<Value> {
        let alg = s.algebra;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let field = alg.ring().field();
                if self.at_sym('/') && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Int(_))) {
                    self.pos += 1;
                    let d = self.int()?;
                    if d.is_zero() {
                        return self.error("zero denominator");
                    }
                    let Some(c) = field.from_ratio(&n, &d) else {
                        return self.error("denominator vanishes in the ground field");
                    };
                    return Ok(Value::Alg(alg.scalar(c)));
                }
                Ok(Value::Alg(alg.scalar(field.from_bigint(&n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = alg.ring().generator_index(&name) {
                    return Ok(Value::Alg(alg.from_ring(&alg.ring().generator(i))));
                }
                if let Some(i) = alg.variable_index(&name) {
                    return Ok(Value::Alg(alg.variable(i)));
                }
                if let Some(m) = s.module {
                    if let Some(i) = m.basis_index(&name) {
                        return Ok(Value::Mod(m.generator(i)));
                    }
                }
                Err(Error::UndeclaredName { line: self.line, name })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr(s)?;
                self.expect_sym(')')?;
                Ok(v)
            }
            _ => self.error("expected a number, a name or `(`"),
        }
    }

    fn neg(&self, v: Value) -> Value {
        match v {
            Value::Alg(a) => Value::Alg(-&a),
            Value::Mod(m) => Value::Mod(-&m),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Alg(x), Value::Alg(y)) => Ok(Value::Alg(&x + &y)),
            (Value::Mod(x), Value::Mod(y)) => Ok(Value::Mod(&x + &y)),
            (Value::Mod(m), Value::Alg(a)) | (Value::Alg(a), Value::Mod(m)) if a.is_zero() => Ok(Value::Mod(m)),
            _ => self.error("cannot add an algebra element to a module element"),
        }
    }

    fn mul(&self, s: &Scope, a: Value, b: Value) -> Result<Value> {
        let alg = s.algebra;
        match (a, b) {
            (Value::Alg(x), Value::Alg(y)) => Ok(Value::Alg(alg.mul(&x, &y))),
            (Value::Mod(m), Value::Alg(y)) => {
                let module = s.module.expect("module values need a module scope");
                Ok(Value::Mod(module.act_right(&m, &y)))
            }
            (Value::Alg(x), Value::Mod(m)) => {
                let module = s.module.expect("module values need a module scope");
                module.act_left(&x, &m).map(Value::Mod).map_err(|e| e.at_line(self.line))
            }
            (Value::Mod(_), Value::Mod(_)) => self.error("cannot multiply two module elements"),
        }
    }

    fn algebra_expr(&mut self, s: &Scope) -> Result<AlgebraElement> {
        match self.expr(s)? {
            Value::Alg(a) => Ok(a),
            Value::Mod(_) => self.error("expected an algebra element"),
        }
    }

    fn module_expr(&mut self, s: &Scope) -> Result<ModuleElement> {
        match self.expr(s)? {
            Value::Mod(m) => Ok(m),
            Value::Alg(a) if a.is_zero() => Ok(ModuleElement::new()),
            Value::Alg(_) => self.error("expected a combination of module basis elements"),
        }
    }
}

#[derive(Default)]
struct Names(BTreeSet<String>);

impl Names {
    fn claim(&mut self, name: &str, line: usize) -> Result<()> {
        if self.0.insert(name.to_string()) {
            Ok(())
        } else {
            Err(Error::DuplicateName(name.to_string()).at_line(line))
        }
    }
}

/// `d<name>` on the left of a differential clause.
fn differential_target(p: &mut Parser, known: &dyn Fn(&str) -> bool) -> Result<String> {
    let column = p.column();
    let word = p.ident()?;
    match word.strip_prefix('d') {
        Some(rest) if known(rest) => Ok(rest.to_string()),
        Some(rest) if !rest.is_empty() => Err(Error::UndeclaredName {
            line: p.line,
            name: rest.to_string(),
        }),
        _ => Err(Error::Syntax {
            line: p.line,
            column,
            message: "expected `d<name>`".into(),
        }),
    }
}

fn parse_ring(p: &mut Parser) -> Result<BaseRing> {
    let line = p.line;
    let field = match p.ident()?.as_str() {
        "QQ" => GroundField::Rationals,
        "FF" => {
            p.expect_sym('(')?;
            let n = p.int()?;
            p.expect_sym(')')?;
            let modulus = n.to_u64().ok_or_else(|| Error::InvalidField(n.to_string()).at_line(line))?;
            GroundField::prime(modulus).map_err(|e| e.at_line(line))?
        }
        other => return p.error(format!("unknown ground field `{other}`")),
    };
    let mut generators = Vec::new();
    if p.eat_sym('[') {
        if !p.at_sym(']') {
            loop {
                let (name, degree, extra) = p.annotation()?;
                if extra.is_some() {
                    return p.error("ring generators take a single degree");
                }
                generators.push(Generator { name, degree });
                if !p.eat_sym(',') {
                    break;
                }
            }
        }
        p.expect_sym(']')?;
    }
    let free = BaseRing::new(field, generators.clone(), Vec::new()).map_err(|e| e.at_line(line))?;
    let mut relations = Vec::new();
    if p.eat_sym('/') {
        p.expect_sym('(')?;
        let ambient = FreeDgAlgebra::trivial(free.clone());
        loop {
            let start = p.pos;
            let r = p.algebra_expr(&Scope {
                algebra: &ambient,
                module: None,
            })?;
            let text: Vec<String> = p.toks[start..p.pos]
                .iter()
                .map(|t| match &t.tok {
                    Tok::Ident(s) => s.clone(),
                    Tok::Int(n) => n.to_string(),
                    Tok::Sym(c) => c.to_string(),
                })
                .collect();
            let mut terms = r.iter();
            match (terms.next(), terms.next()) {
                (Some((t, c)), None) if c.is_one() => relations.push(Exponents(t.ring.0.clone())),
                _ => return Err(Error::NonMonomialRelation(text.concat()).at_line(line)),
            }
            if !p.eat_sym(',') {
                break;
            }
        }
        p.expect_sym(')')?;
    }
    BaseRing::new(field, generators, relations).map_err(|e| e.at_line(line))
}

fn parse_algebra(p: &mut Parser, ring: &BaseRing, names: &mut Names) -> Result<FreeDgAlgebra> {
    let line = p.line;
    p.expect_sym('<')?;
    let mut decls: Vec<(String, i32, Option<i32>)> = Vec::new();
    if !p.at_sym('|') && !p.at_sym('>') {
        loop {
            let a = p.annotation()?;
            names.claim(&a.0, line)?;
            decls.push(a);
            if !p.eat_sym(',') {
                break;
            }
        }
    }
    let skeleton = FreeDgAlgebra::skeleton(
        ring.clone(),
        &decls.iter().map(|(n, h, _)| (n.clone(), *h)).collect::<Vec<_>>(),
    );
    let mut diffs: BTreeMap<String, AlgebraElement> = BTreeMap::new();
    if p.eat_sym('|') && !p.at_sym('>') {
        loop {
            let target = differential_target(p, &|s| decls.iter().any(|(n, _, _)| n == s))?;
            p.expect_sym('=')?;
            let value = p.algebra_expr(&Scope {
                algebra: &skeleton,
                module: None,
            })?;
            if diffs.insert(target.clone(), value).is_some() {
                return p.error(format!("d{target} is given twice"));
            }
            if !p.eat_sym(',') {
                break;
            }
        }
    }
    p.expect_sym('>')?;
    let specs = decls
        .into_iter()
        .map(|(name, hom_degree, int_degree)| VariableSpec {
            differential: diffs.remove(&name).unwrap_or_default(),
            name,
            hom_degree,
            int_degree,
        })
        .collect();
    FreeDgAlgebra::new(ring.clone(), specs).map_err(|e| e.at_line(line))
}

fn parse_module(p: &mut Parser, algebra: &Arc<FreeDgAlgebra>) -> Result<SemifreeModule> {
    let line = p.line;
    p.expect_sym('<')?;
    let mut decls: Vec<(String, i32, Option<i32>)> = Vec::new();
    let mut local = Names::default();
    if !p.at_sym('|') && !p.at_sym('>') {
        loop {
            let a = p.annotation()?;
            if algebra.variable_index(&a.0).is_some() || algebra.ring().generator_index(&a.0).is_some() {
                return Err(Error::DuplicateName(a.0).at_line(line));
            }
            local.claim(&a.0, line)?;
            decls.push(a);
            if !p.eat_sym(',') {
                break;
            }
        }
    }
    let skeleton = SemifreeModule::new_unchecked(
        algebra.clone(),
        decls
            .iter()
            .map(|(label, h, _)| BasisElement {
                label: label.clone(),
                hom_degree: *h,
                int_degree: 0,
            })
            .collect(),
        BTreeMap::new(),
    );
    let mut entries = BTreeMap::new();
    let mut done = BTreeSet::new();
    if p.eat_sym('|') && !p.at_sym('>') {
        loop {
            let target = differential_target(p, &|s| skeleton.basis_index(s).is_some())?;
            p.expect_sym('=')?;
            let value = p.module_expr(&Scope {
                algebra,
                module: Some(&skeleton),
            })?;
            if !done.insert(target.clone()) {
                return p.error(format!("d{target} is given twice"));
            }
            let lambda = skeleton.basis_index(&target).expect("checked by differential_target");
            for mu in 0..skeleton.rank() {
                let c = skeleton.coefficient(&value, mu);
                if !c.is_zero() {
                    entries.insert((mu, lambda), c);
                }
            }
            if !p.eat_sym(',') {
                break;
            }
        }
    }
    p.expect_sym('>')?;
    let specs = decls
        .into_iter()
        .map(|(label, hom_degree, int_degree)| BasisSpec {
            label,
            hom_degree,
            int_degree,
        })
        .collect();
    SemifreeModule::new(algebra.clone(), specs, entries).map_err(|e| e.at_line(line))
}

/// Parses and validates a whole problem file.
pub fn parse_problem(text: &str) -> Result<ProblemDescription> {
    let mut names = Names::default();
    let mut ring: Option<(String, BaseRing)> = None;
    let mut algebra: Option<(String, Arc<FreeDgAlgebra>)> = None;
    let mut modules = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut p = Parser::new(raw, line)?;
        let Some(Tok::Ident(kw)) = p.peek().cloned() else {
            if p.peek().is_none() {
                continue;
            }
            return p.error("expected `ring`, `algebra` or `module`");
        };
        p.pos += 1;
        match kw.as_str() {
            "ring" => {
                if ring.is_some() {
                    return p.error("only one ring may be declared");
                }
                let name = p.ident()?;
                names.claim(&name, line)?;
                p.expect_sym('=')?;
                let r = parse_ring(&mut p)?;
                for g in r.generators() {
                    names.claim(&g.name, line)?;
                }
                p.finish()?;
                ring = Some((name, r));
            }
            "algebra" => {
                if algebra.is_some() {
                    return p.error("only one algebra may be declared");
                }
                let name = p.ident()?;
                p.expect_sym('=')?;
                let over = p.ident()?;
                let Some((ring_name, r)) = &ring else {
                    return Err(Error::UndeclaredName { line, name: over });
                };
                if &over != ring_name {
                    return Err(Error::UndeclaredName { line, name: over });
                }
                names.claim(&name, line)?;
                let b = parse_algebra(&mut p, r, &mut names)?;
                p.finish()?;
                algebra = Some((name, Arc::new(b)));
            }
            "module" => {
                let name = p.ident()?;
                p.keyword("over")?;
                let over = p.ident()?;
                let Some((alg_name, b)) = &algebra else {
                    return Err(Error::UndeclaredName { line, name: over });
                };
                if &over != alg_name {
                    return Err(Error::UndeclaredName { line, name: over });
                }
                names.claim(&name, line)?;
                p.expect_sym('=')?;
                let m = parse_module(&mut p, b)?;
                p.finish()?;
                modules.push(NamedModule { name, module: m });
            }
            other => return p.error(format!("unknown statement `{other}`")),
        }
    }
    let missing = |what: &str| Error::Syntax {
        line: last_line.max(1),
        column: 1,
        message: format!("missing {what} declaration"),
    };
    let (ring_name, _) = ring.ok_or_else(|| missing("ring"))?;
    let (algebra_name, algebra) = algebra.ok_or_else(|| missing("algebra"))?;
    Ok(ProblemDescription {
        ring_name,
        algebra_name,
        algebra,
        modules,
    })
}

/// Parses a single algebra expression over the problem's algebra.
pub fn parse_algebra_element(problem: &ProblemDescription, text: &str) -> Result<AlgebraElement> {
    let mut p = Parser::new(text, 1)?;
    let a = p.algebra_expr(&Scope {
        algebra: &problem.algebra,
        module: None,
    })?;
    p.finish()?;
    Ok(a)
}

/// Parses a module expression such as `e*X + ep` against one module of the problem.
pub fn parse_module_element(module: &SemifreeModule, text: &str) -> Result<ModuleElement> {
    let mut p = Parser::new(text, 1)?;
    let m = p.module_expr(&Scope {
        algebra: module.algebra(),
        module: Some(module),
    })?;
    p.finish()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIFTABLE: &str = "\
ring R = QQ[x:1, y:1]/(x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
module N over B = <e:0, ep:4 | de = 0, dep = e*X*Y*y>
";

    #[test]
    fn example_file_parses() {
        let p = parse_problem(LIFTABLE).unwrap();
        let b = &p.algebra;
        assert_eq!(b.num_variables(), 2);
        assert_eq!(b.variables()[1].int_degree, 2);
        let n = p.module("N").unwrap();
        assert_eq!(n.basis()[1].int_degree, 4);
        assert_eq!(b.format_element(&n.entry(0, 1)), "X*Y*y");
    }

    #[test]
    fn x_coefficient_is_rejected_over_xy() {
        let text = "ring R = QQ[x:1, y:1]/(x*y)\n\
                    algebra B = R<X:1, Y:2 | dX = x, dY = X*y>\n\
                    module M over B = <u:0, up:4 | du = 0, dup = u*X*Y*x>\n";
        match parse_problem(text) {
            Err(Error::AtLine { line: 3, source }) => {
                assert!(matches!(*source, Error::DifferentialSquareNonzero { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
        let fixed = text.replace("/(x*y)", "/(x^2, x*y)");
        assert!(parse_problem(&fixed).is_ok());
    }

    #[test]
    fn undeclared_names_carry_their_line() {
        let text = "ring R = QQ[x:1]\nalgebra B = R<Z:1 | dZ = W>\n";
        assert_eq!(
            parse_problem(text),
            Err(Error::UndeclaredName {
                line: 2,
                name: "W".into()
            })
        );
        let text = "ring R = QQ[x:1]\n\nalgebra B = R<X:1 | dX = x, dY = x>\n";
        assert!(matches!(parse_problem(text), Err(Error::UndeclaredName { line: 3, .. })));
    }

    #[test]
    fn syntax_errors_are_positioned() {
        match parse_problem("ring R = QQ[x:1]\nalgebra B = R<X:1 | dX = x +>\n") {
            Err(Error::Syntax { line: 2, column, .. }) => assert_eq!(column, 29),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_problem("ring R = QQ[x:1, y:1]/(x + y)\nalgebra B = R<>\n"),
            Err(Error::AtLine { line: 1, .. })
        ));
        assert!(matches!(parse_problem("ring R = QQ\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn expressions() {
        let p = parse_problem(LIFTABLE).unwrap();
        let b = &p.algebra;
        let a = parse_algebra_element(&p, "Y^(2) * 2 - 1/2*x*X + (Y)^2").unwrap();
        assert_eq!(b.format_element(&a), "-1/2*X*x + 4*Y^(2)");
        let n = p.module("N").unwrap();
        let v = parse_module_element(n, "X*e + ep*y").unwrap();
        assert_eq!(n.format_element(&v), "e*X + ep*y");
        assert!(parse_algebra_element(&p, "X^(2)*x^(2)").is_err());
    }

    #[test]
    fn printing_round_trips() {
        let p = parse_problem(LIFTABLE).unwrap();
        let printed = p.to_string();
        assert!(printed.contains("module N over B = <e:0:0, ep:4:4 | de = 0, dep = e*X*Y*y>"));
        assert_eq!(parse_problem(&printed).unwrap(), p);
    }
}
