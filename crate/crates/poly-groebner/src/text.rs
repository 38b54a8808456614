use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::frac::FracElem;
use crate::mono::MonoOrder;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    Char(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error("bad exponent {0:?}")]
    Exponent(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
}

/// `z0, z1, ..., z(n-1)`.
pub fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("z{i}")).collect()
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("z{i}"))
}

/// Prints terms in descending order, e.g. `z1*z5 + z5 + 1` or `z9^2 - z9 - 1`.
pub fn format_poly<C: Coeff>(p: &Poly<C>, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        let mag = c.abs_text();
        if m.is_one() || mag != "1" {
            factors.push(mag);
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_name(names, i)),
                _ => factors.push(format!("{}^{}", var_name(names, i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[st..i].iter().collect();
            out.push((Tok::Num(txt.parse().expect("digits")), st));
        } else if ch.is_alphabetic() || ch == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[st..i].iter().collect()), st));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), i));
            i += 1;
        } else {
            return Err(ParseError::Char(ch, i));
        }
    }
    Ok(out)
}

struct Parser<'a, C: Coeff> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    ord: MonoOrder,
    _c: std::marker::PhantomData<C>,
}

impl<C: Coeff> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FracElem<C>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FracElem<C>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).ok_or(ParseError::DivisionByZero)?;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // juxtaposition such as `2z7` or `2(z0+1)`
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FracElem<C>, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<FracElem<C>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => n.clone(),
                Some((t, _)) => return Err(ParseError::Exponent(format!("{t:?}"))),
                None => return Err(ParseError::Eof),
            };
            self.pos += 1;
            let k: i32 = e.to_string().parse().map_err(|_| ParseError::Exponent(e.to_string()))?;
            let k = if neg { -k } else { k };
            return base.pow(k).ok_or(ParseError::DivisionByZero);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FracElem<C>, ParseError> {
        let (tok, at) = self.toks.get(self.pos).cloned().ok_or(ParseError::Eof)?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let c = C::from_rational(&BigRational::from_integer(n)).expect("integers map into every field");
                Ok(FracElem::constant(c, self.ord))
            }
            Tok::Ident(name) => {
                let i = self.names.iter().position(|x| *x == name).ok_or(ParseError::UnknownVar(name))?;
                Ok(FracElem::from_poly(Poly::var(i, self.ord)))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return match self.toks.get(self.pos) {
                        Some((Tok::Op(c), at)) => Err(ParseError::Char(*c, *at)),
                        Some((_, at)) => Err(ParseError::Char('?', *at)),
                        None => Err(ParseError::Eof),
                    };
                }
                Ok(e)
            }
            Tok::Op(c) => Err(ParseError::Char(c, at)),
        }
    }
}

/// Parses a rational expression over the named variables.
pub fn parse_frac<C: Coeff>(s: &str, names: &[String], ord: MonoOrder) -> Result<FracElem<C>, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, names, ord, _c: std::marker::PhantomData };
    let e = p.expr()?;
    if let Some((t, at)) = p.toks.get(p.pos) {
        let c = match t {
            Tok::Op(c) => *c,
            _ => '?',
        };
        return Err(ParseError::Char(c, *at));
    }
    Ok(e)
}

/// Parses a polynomial; constant denominators are allowed.
pub fn parse_poly<C: Coeff>(s: &str, names: &[String], ord: MonoOrder) -> Result<Poly<C>, ParseError> {
    let f = parse_frac::<C>(s, names, ord)?;
    if !f.is_polynomial() {
        return Err(ParseError::NotPolynomial(s.to_string()));
    }
    Ok(f.num().clone())
}
