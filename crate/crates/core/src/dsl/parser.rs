use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::lexer::{tokenize, Pos, Token};
use super::{
    BundleDecl, DeclKind, Declaration, DslDocument, DslError, ErrorKind, ExpectDecl, ProblemDecl, RingDecl,
};
use crate::abelian::AbelianGroup;
use crate::graded_ring::{GeneratorSpec, IntPolynomial, Monomial, RingPresentation, SignRule};

/// Polynomial syntax tree; names are resolved against a ring afterwards.
#[derive(Clone, Debug)]
enum PolyExpr {
    Int(BigInt),
    Var(String, Pos),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    fn eval(&self, ring: &RingPresentation) -> Result<IntPolynomial, DslError> {
        let n = ring.generators().len();
        Ok(match self {
            PolyExpr::Int(c) => IntPolynomial::monomial(c.clone(), Monomial::one(n)),
            PolyExpr::Var(name, pos) => {
                let m = ring.generator_monomial(name).ok_or_else(|| {
                    DslError::new(
                        ErrorKind::Unresolved,
                        *pos,
                        format!("`{name}` is not a generator of ring `{}`", ring.name),
                    )
                })?;
                IntPolynomial::monomial(1, m)
            }
            PolyExpr::Neg(a) => a.eval(ring)?.neg(),
            PolyExpr::Add(a, b) => a.eval(ring)?.add(&b.eval(ring)?),
            PolyExpr::Sub(a, b) => a.eval(ring)?.add(&b.eval(ring)?.neg()),
            PolyExpr::Mul(a, b) => ring.multiply(&a.eval(ring)?, &b.eval(ring)?),
            PolyExpr::Pow(a, e) => ring.power(&a.eval(ring)?, *e),
        })
    }
}

struct RawRing {
    name: String,
    gens: Vec<(String, u32, Pos)>,
    rels: Vec<(PolyExpr, Pos)>,
    top: u32,
    sign: SignRule,
}

struct RawBundle {
    name: String,
    base: (String, Pos),
    fiber_dim: u32,
    euler: (PolyExpr, Pos),
}

enum RawKind {
    Ring(RawRing),
    Bundle(RawBundle),
    Problem(ProblemDecl, Option<Pos>),
    Expect(ExpectDecl),
}

struct RawDecl {
    kind: RawKind,
    cite: Option<String>,
    pos: Pos,
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Token, Pos) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> DslError {
        DslError::new(ErrorKind::Syntax, self.pos(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Token) -> Result<Pos, DslError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Token::Ident(s) => Ok((s, self.bump().1)),
            _ => Err(self.error("a name")),
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Token::Ident(s) if s == word)
    }

    fn big(&mut self) -> Result<(BigUint, Pos), DslError> {
        match self.peek().clone() {
            Token::Int(n) => Ok((n, self.bump().1)),
            _ => Err(self.error("an integer")),
        }
    }

    fn int(&mut self) -> Result<u32, DslError> {
        let pos = self.pos();
        let (n, _) = self.big()?;
        n.to_u32().ok_or_else(|| DslError::new(ErrorKind::Syntax, pos, format!("integer {n} is too large")))
    }

    fn document(&mut self) -> Result<Vec<RawDecl>, DslError> {
        let mut decls = Vec::new();
        while *self.peek() != Token::Eof {
            let pos = self.pos();
            let (word, _) = self.ident()?;
            let kind = match word.as_str() {
                "ring" => RawKind::Ring(self.ring()?),
                "bundle" => RawKind::Bundle(self.bundle()?),
                "problem" => {
                    let (p, target_pos) = self.problem()?;
                    RawKind::Problem(p, target_pos)
                }
                "expect" => RawKind::Expect(self.expect_block()?),
                other => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `ring`, `bundle`, `problem` or `expect`, found `{other}`"),
                    ))
                }
            };
            let cite = if self.is_keyword("cite") {
                self.bump();
                match self.bump() {
                    (Token::Str(s), _) => Some(s),
                    (_, p) => return Err(DslError::new(ErrorKind::Syntax, p, "expected a quoted citation")),
                }
            } else {
                None
            };
            self.eat(&Token::Semi);
            decls.push(RawDecl { kind, cite, pos });
        }
        Ok(decls)
    }

    fn ring(&mut self) -> Result<RawRing, DslError> {
        let (name, _) = self.ident()?;
        self.expect(Token::LBrace)?;
        let (mut gens, mut rels, mut top, mut sign) = (Vec::new(), Vec::new(), None, SignRule::default());
        while !self.eat(&Token::RBrace) {
            let (item, pos) = self.ident()?;
            match item.as_str() {
                "gen" => loop {
                    let (g, gpos) = self.ident()?;
                    self.expect(Token::Colon)?;
                    gens.push((g, self.int()?, gpos));
                    if !self.eat(&Token::Comma) {
                        break;
                    }
                },
                "rel" => {
                    let p = self.pos();
                    rels.push((self.poly()?, p));
                }
                "top" => top = Some(self.int()?),
                "sign" => {
                    let (rule, rpos) = self.ident()?;
                    sign = match rule.as_str() {
                        "graded" => SignRule::GradedCommutative,
                        "commutative" => SignRule::Commutative,
                        _ => {
                            return Err(DslError::new(
                                ErrorKind::Syntax,
                                rpos,
                                "expected `graded` or `commutative`",
                            ))
                        }
                    };
                }
                other => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `gen`, `rel`, `top` or `sign`, found `{other}`"),
                    ))
                }
            }
            self.expect(Token::Semi)?;
        }
        let top = top.ok_or_else(|| {
            DslError::new(ErrorKind::Syntax, self.tokens[self.at - 1].1, format!("ring `{name}` has no `top`"))
        })?;
        Ok(RawRing { name, gens, rels, top, sign })
    }

    fn bundle(&mut self) -> Result<RawBundle, DslError> {
        let (name, start) = self.ident()?;
        self.expect(Token::LBrace)?;
        let (mut base, mut fiber, mut euler) = (None, None, None);
        while !self.eat(&Token::RBrace) {
            let (item, pos) = self.ident()?;
            match item.as_str() {
                "base" => base = Some(self.ident()?),
                "fiber" => fiber = Some(self.sphere()?),
                "euler" => {
                    let p = self.pos();
                    euler = Some((self.poly()?, p));
                }
                other => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("expected `base`, `fiber` or `euler`, found `{other}`"),
                    ))
                }
            }
            self.expect(Token::Semi)?;
        }
        let missing = |what: &str| DslError::new(ErrorKind::Syntax, start, format!("bundle `{name}` has no `{what}`"));
        Ok(RawBundle {
            base: base.ok_or_else(|| missing("base"))?,
            fiber_dim: fiber.ok_or_else(|| missing("fiber"))?,
            euler: euler.ok_or_else(|| missing("euler"))?,
            name: name.clone(),
        })
    }

    /// `S2`, `S 2` or `S^2`.
    fn sphere(&mut self) -> Result<u32, DslError> {
        let (word, pos) = self.ident()?;
        if word == "S" {
            self.eat(&Token::Caret);
            return self.int();
        }
        word.strip_prefix('S')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| DslError::new(ErrorKind::Syntax, pos, format!("expected a sphere like `S2`, found `{word}`")))
    }

    fn problem(&mut self) -> Result<(ProblemDecl, Option<Pos>), DslError> {
        let (name, start) = self.ident()?;
        self.expect(Token::LBrace)?;
        let mut p = ProblemDecl { name: name.clone(), ..Default::default() };
        let (mut have_n, mut have_betti, mut target_pos) = (false, false, None);
        while !self.eat(&Token::RBrace) {
            let (item, pos) = self.ident()?;
            match item.as_str() {
                "n" => {
                    p.n = self.int()?;
                    have_n = true;
                }
                "betti" => {
                    p.betti = self.list(|s| s.int().map(|v| v as usize))?;
                    have_betti = true;
                }
                "mod2" => p.mod2 = self.assoc(|s| s.int().map(|v| v as usize))?,
                "sphere_target" => {
                    let (t, tpos) = self.ident()?;
                    p.sphere_target = Some(t);
                    target_pos = Some(tpos);
                }
                "so3_vanish" => p.so3_vanish = self.list(Parser::int)?,
                "candidates" => p.candidates = Some(self.list(Parser::group)?),
                other => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!(
                            "expected `n`, `betti`, `mod2`, `sphere_target`, `so3_vanish` or `candidates`, found `{other}`"
                        ),
                    ))
                }
            }
            self.expect(Token::Semi)?;
        }
        if !have_n || !have_betti {
            return Err(DslError::new(ErrorKind::Syntax, start, format!("problem `{name}` needs `n` and `betti`")));
        }
        Ok((p, target_pos))
    }

    fn expect_block(&mut self) -> Result<ExpectDecl, DslError> {
        let (target, _) = self.ident()?;
        let entries = self.assoc(Parser::group)?;
        Ok(ExpectDecl { target, entries })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        self.expect(Token::LBracket)?;
        let mut out = Vec::new();
        while !self.eat(&Token::RBracket) {
            out.push(item(self)?);
            if !self.eat(&Token::Comma) {
                self.expect(Token::RBracket)?;
                break;
            }
        }
        Ok(out)
    }

    fn assoc<T>(
        &mut self,
        mut value: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<BTreeMap<u32, T>, DslError> {
        self.expect(Token::LBrace)?;
        let mut out = BTreeMap::new();
        while !self.eat(&Token::RBrace) {
            let pos = self.pos();
            let k = self.int()?;
            self.expect(Token::Colon)?;
            if out.insert(k, value(self)?).is_some() {
                return Err(DslError::new(ErrorKind::Duplicate, pos, format!("degree {k} given twice")));
            }
            if !self.eat(&Token::Comma) {
                self.expect(Token::RBrace)?;
                break;
            }
        }
        Ok(out)
    }

    /// `0`, `Z`, `Z^2`, `Z_4`, `Z_2^3`, joined by `+` or `⊕`.
    fn group(&mut self) -> Result<AbelianGroup, DslError> {
        let mut g = AbelianGroup::trivial();
        loop {
            let pos = self.pos();
            let term = match self.bump().0 {
                Token::Int(n) if n <= BigUint::one() => AbelianGroup::trivial(),
                Token::Ident(s) if s == "Z" => AbelianGroup::free(1),
                Token::Ident(s) if s.starts_with("Z_") => {
                    let d: BigUint = s[2..].parse().map_err(|_| {
                        DslError::new(ErrorKind::Syntax, pos, format!("bad cyclic group `{s}`"))
                    })?;
                    AbelianGroup::from_cyclic_orders([d])
                }
                t => return Err(DslError::new(ErrorKind::Syntax, pos, format!("expected a group, found {t}"))),
            };
            let times = if self.eat(&Token::Caret) { self.int()? } else { 1 };
            for _ in 0..times {
                g = g.direct_sum(&term);
            }
            if !self.eat(&Token::Plus) {
                return Ok(g);
            }
        }
    }

    fn poly(&mut self) -> Result<PolyExpr, DslError> {
        let mut acc = if self.eat(&Token::Minus) {
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Token::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Token::Minus) {
                acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, DslError> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyExpr, DslError> {
        let pos = self.pos();
        let base = match self.bump().0 {
            Token::Int(n) => PolyExpr::Int(n.into()),
            Token::Ident(s) => PolyExpr::Var(s, pos),
            Token::LParen => {
                let inner = self.poly()?;
                self.expect(Token::RParen)?;
                inner
            }
            t => return Err(DslError::new(ErrorKind::Syntax, pos, format!("expected a polynomial term, found {t}"))),
        };
        if self.eat(&Token::Caret) {
            Ok(PolyExpr::Pow(Box::new(base), self.int()?))
        } else {
            Ok(base)
        }
    }
}

fn resolve_ring(raw: &RawRing, pos: Pos) -> Result<RingPresentation, DslError> {
    let mut seen = HashMap::new();
    for (g, d, gpos) in &raw.gens {
        if seen.insert(g.as_str(), ()).is_some() {
            return Err(DslError::new(ErrorKind::Duplicate, *gpos, format!("generator `{g}` declared twice")));
        }
        if *d == 0 {
            return Err(DslError::new(ErrorKind::Invalid, *gpos, format!("generator `{g}` needs a positive degree")));
        }
    }
    let gens: Vec<GeneratorSpec> = raw.gens.iter().map(|(g, d, _)| GeneratorSpec::new(g.clone(), *d)).collect();
    let shell = RingPresentation::new(raw.name.clone(), gens.clone(), Vec::new(), raw.top, raw.sign)
        .map_err(|e| DslError::new(ErrorKind::Invalid, pos, e.to_string()))?;
    let degrees = shell.degrees();
    let mut rels = Vec::new();
    for (expr, rpos) in &raw.rels {
        let r = expr.eval(&shell)?;
        let ds = r.degrees(&degrees);
        if ds.len() > 1 {
            let listed: Vec<String> = ds.iter().map(u32::to_string).collect();
            return Err(DslError::new(
                ErrorKind::NotHomogeneous,
                *rpos,
                format!("relation `{}` mixes degrees {}", shell.format_polynomial(&r), listed.join(" and ")),
            ));
        }
        rels.push(r);
    }
    RingPresentation::new(raw.name.clone(), gens, rels, raw.top, raw.sign)
        .map_err(|e| DslError::new(ErrorKind::Invalid, pos, e.to_string()))
}

/// Parses a document and resolves every name.
pub fn parse(text: &str) -> Result<DslDocument, DslError> {
    parse_in(text, &DslDocument::default())
}

/// Parses `text` with the names of `context` in scope. Declarations in
/// `text` may shadow those of `context`.
pub fn parse_in(text: &str, context: &DslDocument) -> Result<DslDocument, DslError> {
    let mut parser = Parser { tokens: tokenize(text)?, at: 0 };
    let raw = parser.document()?;

    let mut names: HashMap<String, Pos> = HashMap::new();
    let mut rings: HashMap<String, RingPresentation> = HashMap::new();
    let mut outer: HashSet<&str> = HashSet::new();
    for d in &context.declarations {
        if let DeclKind::Ring(r) = &d.kind {
            rings.insert(r.presentation.name.clone(), r.presentation.clone());
        }
        outer.insert(d.name());
    }
    for d in &raw {
        let name = match &d.kind {
            RawKind::Ring(r) => &r.name,
            RawKind::Bundle(b) => &b.name,
            RawKind::Problem(p, _) => &p.name,
            RawKind::Expect(_) => continue,
        };
        if let Some(first) = names.insert(name.clone(), d.pos) {
            return Err(DslError::new(
                ErrorKind::Duplicate,
                d.pos,
                format!("`{name}` already declared at {first}"),
            ));
        }
        if let RawKind::Ring(r) = &d.kind {
            rings.insert(r.name.clone(), resolve_ring(r, d.pos)?);
        }
    }

    let mut declarations = Vec::new();
    for d in raw {
        let kind = match d.kind {
            RawKind::Ring(r) => DeclKind::Ring(RingDecl { presentation: rings[&r.name].clone() }),
            RawKind::Bundle(b) => {
                let base = rings.get(&b.base.0).ok_or_else(|| {
                    DslError::new(ErrorKind::Unresolved, b.base.1, format!("no ring named `{}`", b.base.0))
                })?;
                let euler = b.euler.0.eval(base)?;
                let ds = euler.degrees(&base.degrees());
                if ds.len() > 1 || ds.first().is_some_and(|&e| e != b.fiber_dim + 1) {
                    return Err(DslError::new(
                        ErrorKind::NotHomogeneous,
                        b.euler.1,
                        format!("euler class must be homogeneous of degree {}", b.fiber_dim + 1),
                    ));
                }
                DeclKind::Bundle(BundleDecl { name: b.name, base: b.base.0, fiber_dim: b.fiber_dim, euler })
            }
            RawKind::Problem(p, target_pos) => {
                if let (Some(t), Some(tpos)) = (&p.sphere_target, target_pos) {
                    if !rings.contains_key(t) {
                        return Err(DslError::new(ErrorKind::Unresolved, tpos, format!("no ring named `{t}`")));
                    }
                }
                DeclKind::Problem(p)
            }
            RawKind::Expect(e) => {
                if !names.contains_key(&e.target) && !outer.contains(e.target.as_str()) {
                    return Err(DslError::new(
                        ErrorKind::Unresolved,
                        d.pos,
                        format!("expectation for unknown `{}`", e.target),
                    ));
                }
                DeclKind::Expect(e)
            }
        };
        declarations.push(Declaration { kind, cite: d.cite, pos: d.pos });
    }
    Ok(DslDocument { declarations })
}

/// Parses a polynomial in the generators of `ring`.
pub fn parse_polynomial_in(ring: &RingPresentation, text: &str) -> Result<IntPolynomial, DslError> {
    let mut parser = Parser { tokens: tokenize(text)?, at: 0 };
    let expr = parser.poly()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.error("end of polynomial"));
    }
    expr.eval(ring)
}

/// Parses a single group such as `Z + Z_2`.
pub fn parse_group(text: &str) -> Result<AbelianGroup, DslError> {
    let mut parser = Parser { tokens: tokenize(text)?, at: 0 };
    let g = parser.group()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.error("end of group"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G83: &str = "ring G83 { gen y3:3; gen x4:4; gen x7:7; rel 2*y3; rel y3*x4; rel y3^3; rel x4^3; rel x7^2; top 15; }";

    #[test]
    fn parses_ring() {
        let doc = parse(G83).unwrap();
        let r = doc.ring("G83").unwrap();
        assert_eq!(r.generators().len(), 3);
        assert_eq!(r.relations().len(), 5);
        assert_eq!(r.top_degree(), 15);
        assert_eq!(r.format_polynomial(&r.relations()[4]), "x7^2");
    }

    #[test]
    fn empty_document() {
        assert!(parse("").unwrap().declarations.is_empty());
        assert!(parse("  # only a comment\n").unwrap().declarations.is_empty());
    }

    #[test]
    fn error_kinds() {
        let e = parse("ring Bad { gen a:2; rel a + 1; top 4; }").unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotHomogeneous);
        assert_eq!(e.pos, Pos { line: 1, column: 25 });
        assert!(e.message.contains("2 and 0") || e.message.contains("0 and 2"));
        assert_eq!(parse("ring { }").unwrap_err().kind, ErrorKind::Syntax);
        assert_eq!(parse("ring R { gen a:2; rel b; top 4; }").unwrap_err().kind, ErrorKind::Unresolved);
        assert_eq!(parse("bundle B { base Nope; fiber S2; euler a; }").unwrap_err().kind, ErrorKind::Unresolved);
        assert_eq!(parse("ring R { gen a:2; gen a:4; top 4; }").unwrap_err().kind, ErrorKind::Duplicate);
        assert_eq!(
            parse("ring R { gen a:2; top 4; } ring R { gen b:2; top 4; }").unwrap_err().kind,
            ErrorKind::Duplicate
        );
        assert_eq!(parse("ring R { gen a:2; top 4; ").unwrap_err().kind, ErrorKind::Syntax);
    }

    #[test]
    fn forward_references() {
        let src = format!("bundle W {{ base G83; fiber S2; euler y3; }} expect W {{ 0: Z }}\n{G83}");
        let doc = parse(&src).unwrap();
        let b = doc.bundle("W").unwrap();
        assert_eq!(b.fiber_dim, 2);
        assert_eq!(b.base, "G83");
    }

    #[test]
    fn names_from_a_context() {
        let context = parse(G83).unwrap();
        let doc = parse_in("bundle W { base G83; fiber S2; euler y3; } expect G83 { 3: Z_2 }", &context).unwrap();
        assert_eq!(doc.declarations.len(), 2);
        assert_eq!(parse("bundle W { base G83; fiber S2; euler y3; }").unwrap_err().kind, ErrorKind::Unresolved);
        // A local ring shadows the context.
        let doc = parse_in("ring G83 { gen a:2; top 4; } bundle B { base G83; fiber S1; euler a; }", &context).unwrap();
        assert_eq!(doc.bundle("B").unwrap().euler.degrees(&doc.ring("G83").unwrap().degrees()), vec![2]);
    }

    #[test]
    fn problem_block() {
        let src = "problem p { n 8; betti [1, 0, 0]; mod2 {6: 1}; so3_vanish [14, 18]; candidates [0, Z_2, Z_2 + Z_2, Z_3]; } cite \"groups\";";
        let doc = parse(src).unwrap();
        let p = doc.problem("p").unwrap();
        assert_eq!(p.betti, vec![1, 0, 0]);
        assert_eq!(p.mod2[&6], 1);
        assert_eq!(p.candidates.as_ref().unwrap()[2], "Z_2 + Z_2".parse().unwrap());
        assert_eq!(doc.declarations[0].cite.as_deref(), Some("groups"));
    }

    #[test]
    fn groups_and_polynomials() {
        assert_eq!(parse_group("Z^2 ⊕ Z_2^2").unwrap(), "Z^2 + Z_2 + Z_2".parse().unwrap());
        let r = parse(G83).unwrap().ring("G83").unwrap().clone();
        let p = parse_polynomial_in(&r, "-(x4 - y3)^2 + 2*x4^2").unwrap();
        assert_eq!(r.format_polynomial(&p), "-y3^2 + 2*y3*x4 + x4^2");
    }
}
