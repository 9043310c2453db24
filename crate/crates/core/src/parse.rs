//! Textual grammars: exact scalars, group values, cut bounds, ideals,
//! field elements, rational functions in X, field specs and sequence
//! specs. Parsing and canonical printing round-trip.
//!
//! Operator precedence: `^` binds tighter than `*`/`/`, which bind tighter
//! than `+`/`-`. Exponents are integers or parenthesized rationals;
//! fractional exponents apply to `t` only.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, FieldElem, LaurentBase};
use crate::ordgroup::{CutPoint, GroupDescriptor, GroupValue, IdealSpec, Tail};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::sequences::{make_sequence, PMSeq, SeqKind};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().map(|c| c.is_ascii_whitespace()).unwrap_or(false) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    /// `digits (/ digits)?` with an optional leading sign.
    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let neg = self.eat('-');
        if !neg {
            let _ = self.eat('+');
        }
        let num = self.digits()?;
        let den = if self.eat('/') { self.digits()? } else { BigInt::one() };
        if den.is_zero() {
            return self.err("zero denominator");
        }
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    /// A scalar: rational, `sqrt(d)`, `b*sqrt(d)`, or `a+b*sqrt(d)` forms.
    fn scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        if self.eat_keyword("sqrt") {
            let d = self.sqrt_radicand()?;
            return Ok(Scalar::quad(BigRational::zero(), BigRational::one(), d));
        }
        let a = self.rational()?;
        self.skip_ws();
        let save = self.pos;
        // a*sqrt(d) or a +/- [b*]sqrt(d)
        if self.eat('*') {
            if self.eat_keyword("sqrt") {
                let d = self.sqrt_radicand()?;
                return Ok(Scalar::quad(BigRational::zero(), a, d));
            }
            self.pos = save;
            return Ok(Scalar::rat(a));
        }
        for sign in ['+', '-'] {
            if self.peek() == Some(sign) {
                let save = self.pos;
                self.pos += 1;
                self.skip_ws();
                let b = if self.eat_keyword("sqrt") {
                    Some(BigRational::one())
                } else if self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                    let b = self.rational()?;
                    if self.eat('*') && self.eat_keyword("sqrt") {
                        Some(b)
                    } else {
                        self.pos = save;
                        return Ok(Scalar::rat(a));
                    }
                } else {
                    self.pos = save;
                    return Ok(Scalar::rat(a));
                };
                if let Some(b) = b {
                    let d = self.sqrt_radicand()?;
                    let b = if sign == '-' { -b } else { b };
                    return Ok(Scalar::quad(a, b, d));
                }
            }
        }
        Ok(Scalar::rat(a))
    }

    fn sqrt_radicand(&mut self) -> Result<u32> {
        self.expect('(')?;
        let d = self.digits()?;
        self.expect(')')?;
        let d: u32 = d
            .to_string()
            .parse()
            .map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "radicand out of range".into(),
            })?;
        if !crate::scalar::is_square_free(d) {
            return self.err("radicand must be square-free and at least 2");
        }
        Ok(d)
    }

    /// Comma-separated scalars with an optional trailing `inf` / `-inf`.
    fn cut_point(&mut self) -> Result<CutPoint> {
        let mut prefix = Vec::new();
        let mut tail = Tail::Finite;
        loop {
            self.skip_ws();
            if self.eat_keyword("-inf") {
                tail = Tail::MinusInf;
                break;
            }
            if self.eat_keyword("inf") {
                tail = Tail::PlusInf;
                break;
            }
            prefix.push(self.scalar()?);
            if !self.eat(',') {
                break;
            }
        }
        if prefix.is_empty() && tail == Tail::Finite {
            return self.err("empty bound");
        }
        Ok(CutPoint::with_tail(prefix, tail))
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut c = Cursor::new(text);
    let s = c.scalar()?;
    c.expect_end()?;
    Ok(s)
}

pub fn parse_group_value(text: &str) -> Result<GroupValue> {
    let mut c = Cursor::new(text);
    let mut coords = vec![c.scalar()?];
    while c.eat(',') {
        coords.push(c.scalar()?);
    }
    c.expect_end()?;
    Ok(GroupValue::new(coords))
}

/// `K`, `0`, `>=bound` or `>bound`; the bound is a cut point.
pub fn parse_ideal(text: &str, g: &GroupDescriptor) -> Result<IdealSpec> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.eat_keyword("K") {
        c.expect_end()?;
        return Ok(IdealSpec::all());
    }
    if c.src[c.pos..].trim() == "0" {
        return Ok(IdealSpec::zero());
    }
    let closed = if c.eat_keyword(">=") {
        true
    } else if c.eat_keyword(">") {
        false
    } else {
        return c.err("expected 'K', '0', '>=' or '>'");
    };
    let point = c.cut_point()?;
    c.expect_end()?;
    IdealSpec::new(point, closed, g)
}

/// `laurentQ`, `laurentQ:fp:<q>`, `laurentQ:padic:<p>`, `padic:<p>`,
/// `composite:<p>`.
pub fn parse_field(text: &str) -> Result<FieldDescriptor> {
    let t = text.trim();
    let prime_after = |prefix: &str| -> Result<u32> {
        let rest = &t[prefix.len()..];
        let p: u32 = rest.parse().map_err(|_| Error::Parse {
            pos: prefix.len(),
            msg: "expected a prime number".into(),
        })?;
        if !is_prime(p) {
            return Err(Error::Parse {
                pos: prefix.len(),
                msg: format!("{p} is not prime"),
            });
        }
        Ok(p)
    };
    if t == "laurentQ" {
        Ok(FieldDescriptor::LaurentQ(LaurentBase::Rationals))
    } else if let Some(_) = t.strip_prefix("laurentQ:fp:") {
        Ok(FieldDescriptor::LaurentQ(LaurentBase::PrimeField(
            prime_after("laurentQ:fp:")?,
        )))
    } else if let Some(_) = t.strip_prefix("laurentQ:padic:") {
        Ok(FieldDescriptor::LaurentQ(LaurentBase::PadicRationals(
            prime_after("laurentQ:padic:")?,
        )))
    } else if let Some(_) = t.strip_prefix("padic:") {
        Ok(FieldDescriptor::PadicQ(prime_after("padic:")?))
    } else if let Some(_) = t.strip_prefix("composite:") {
        Ok(FieldDescriptor::Composite(prime_after("composite:")?))
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: format!("unknown field spec '{t}'"),
        })
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Expression AST shared by element and rational-function parsing.
enum Expr {
    Num(BigRational),
    T,
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
}

impl<'a> Cursor<'a> {
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.peek() == Some('-') {
                self.pos += 1;
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<BigRational> {
        self.skip_ws();
        if self.eat('(') {
            let r = self.rational()?;
            self.expect(')')?;
            return Ok(r);
        }
        let neg = self.eat('-');
        let n = self.digits()?;
        let r = BigRational::from_integer(n);
        Ok(if neg { -r } else { r })
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('t') => {
                self.bump();
                Ok(Expr::T)
            }
            Some('X') => {
                self.bump();
                Ok(Expr::X)
            }
            // Integer literals only: `p/q` falls out of term-level
            // division, which is exact.
            Some(c) if c.is_ascii_digit() => {
                Ok(Expr::Num(BigRational::from_integer(self.digits()?)))
            }
            _ => self.err("expected a number, 't', 'X' or '('"),
        }
    }
}

fn lower_to_ratfunc(e: &Expr, f: &FieldDescriptor, pos: usize) -> Result<RatFunc> {
    let perr = |msg: &str| Error::Parse {
        pos,
        msg: msg.into(),
    };
    Ok(match e {
        Expr::Num(r) => RatFunc::constant(FieldElem::from_rational(r.clone(), f)?),
        Expr::T => RatFunc::constant(FieldElem::t_pow(BigRational::one(), f)?),
        Expr::X => RatFunc::x(),
        Expr::Neg(a) => lower_to_ratfunc(a, f, pos)?.neg(),
        Expr::Add(a, b) => lower_to_ratfunc(a, f, pos)?.add(&lower_to_ratfunc(b, f, pos)?, f)?,
        Expr::Sub(a, b) => lower_to_ratfunc(a, f, pos)?.sub(&lower_to_ratfunc(b, f, pos)?, f)?,
        Expr::Mul(a, b) => lower_to_ratfunc(a, f, pos)?.mul(&lower_to_ratfunc(b, f, pos)?, f)?,
        Expr::Div(a, b) => {
            let d = lower_to_ratfunc(b, f, pos)?;
            if d.is_zero() {
                return Err(perr("division by zero"));
            }
            lower_to_ratfunc(a, f, pos)?.div(&d, f)?
        }
        Expr::Pow(base, exp) => {
            if matches!(**base, Expr::T) {
                return Ok(RatFunc::constant(FieldElem::t_pow(exp.clone(), f)?));
            }
            if !exp.is_integer() {
                return Err(perr("fractional exponents apply to t only"));
            }
            let k: i64 = exp.to_integer().to_string().parse().map_err(|_| {
                perr("exponent out of range")
            })?;
            let b = lower_to_ratfunc(base, f, pos)?;
            if b.is_zero() && k <= 0 {
                return Err(perr("zero to a nonpositive power"));
            }
            let mut acc = RatFunc::constant(FieldElem::one());
            let base = if k < 0 { b.inv(f)? } else { b };
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&base, f)?;
            }
            acc
        }
    })
}

/// A rational function in X over the field.
pub fn parse_ratfunc(text: &str, f: &FieldDescriptor) -> Result<RatFunc> {
    let mut c = Cursor::new(text);
    let e = c.expr()?;
    let pos = c.pos;
    c.expect_end()?;
    lower_to_ratfunc(&e, f, pos)
}

/// A field element (the same grammar with X forbidden).
pub fn parse_elem(text: &str, f: &FieldDescriptor) -> Result<FieldElem> {
    let phi = parse_ratfunc(text, f)?;
    if phi.num().degree() > 0 || phi.den().degree() > 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a field element, found the variable X".into(),
        });
    }
    let den = phi.den().coeff(0);
    phi.num().coeff(0).div(&den, f)
}

/// Sequence spec: `pcv(alpha=<elem>, breadth="<ideal>")`,
/// `pdv(...)`, `pst(...)`, or `cauchy(limit=<elem>)`, optionally followed
/// by `field=<fieldspec>`. The field defaults to `laurentQ`.
pub fn parse_sequence(text: &str, default_field: Option<FieldDescriptor>) -> Result<PMSeq> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    let kind = if c.eat_keyword("pcv") {
        SeqKind::Pcv
    } else if c.eat_keyword("pdv") {
        SeqKind::Pdv
    } else if c.eat_keyword("pst") {
        SeqKind::Pst
    } else if c.eat_keyword("cauchy") {
        SeqKind::Cauchy
    } else {
        return c.err("expected one of pcv, pdv, pst, cauchy");
    };
    c.expect('(')?;
    let mut alpha_text: Option<String> = None;
    let mut breadth_text: Option<String> = None;
    loop {
        c.skip_ws();
        if c.eat(')') {
            break;
        }
        if c.eat_keyword("alpha=") || c.eat_keyword("limit=") {
            alpha_text = Some(c.bare_value()?);
        } else if c.eat_keyword("breadth=") {
            breadth_text = Some(c.quoted_or_bare()?);
        } else {
            return c.err("expected alpha=, limit= or breadth=");
        }
        let _ = c.eat(',');
    }
    // Optional trailing field=...
    let field = if c.eat_keyword("field=") {
        let rest = c.src[c.pos..].trim();
        parse_field(rest)?
    } else {
        c.expect_end()?;
        default_field.unwrap_or_else(FieldDescriptor::laurent_q)
    };

    let alpha = match &alpha_text {
        Some(t) => parse_elem(t, &field)?,
        None => FieldElem::zero(),
    };
    let ideal = match kind {
        SeqKind::Cauchy => {
            if breadth_text.is_some() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "a Cauchy spec takes limit= only".into(),
                });
            }
            IdealSpec::zero()
        }
        _ => {
            let Some(bt) = &breadth_text else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "missing breadth=\"...\"".into(),
                });
            };
            parse_ideal(bt, &field.group())?
        }
    };
    make_sequence(kind, alpha, ideal, field)
}

impl<'a> Cursor<'a> {
    /// Reads a value up to the next ',' or ')' at depth zero.
    fn bare_value(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(ch) = self.peek() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                ',' if depth == 0 => break,
                _ => {}
            }
            self.pos += ch.len_utf8();
        }
        if start == self.pos {
            return self.err("expected a value");
        }
        Ok(self.src[start..self.pos].trim().to_string())
    }

    /// A double-quoted string, or a bare token.
    fn quoted_or_bare(&mut self) -> Result<String> {
        self.skip_ws();
        if self.peek() == Some('"') {
            self.pos += 1;
            let start = self.pos;
            while let Some(ch) = self.peek() {
                if ch == '"' {
                    let s = self.src[start..self.pos].to_string();
                    self.pos += 1;
                    return Ok(s);
                }
                self.pos += ch.len_utf8();
            }
            return self.err("unterminated string");
        }
        self.bare_value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::{int_value, sqrt_value};
    use crate::scalar::ratio;
    use crate::sequences::SeqKind;

    #[test]
    fn scalars_and_values() {
        assert_eq!(parse_scalar("3/4").unwrap(), Scalar::rat(ratio(3, 4)));
        assert_eq!(
            parse_scalar("sqrt(2)").unwrap(),
            Scalar::quad(ratio(0, 1), ratio(1, 1), 2)
        );
        assert_eq!(
            parse_scalar("1-2*sqrt(3)").unwrap(),
            Scalar::quad(ratio(1, 1), ratio(-2, 1), 3)
        );
        assert_eq!(
            parse_group_value("3/2,-1").unwrap().to_string(),
            "3/2,-1"
        );
        assert!(parse_scalar("sqrt(4)").is_err());
    }

    #[test]
    fn ideals_round_trip() {
        let g = FieldDescriptor::laurent_q().group();
        for text in [">=1", ">0", ">sqrt(2)", "K", "0"] {
            let i = parse_ideal(text, &g).unwrap();
            assert_eq!(i.to_string(), text);
        }
        let g2 = FieldDescriptor::Composite(5).group();
        for text in [">1,inf", ">1,-inf", ">=1,0"] {
            let i = parse_ideal(text, &g2).unwrap();
            assert_eq!(i.to_string(), text);
        }
        // Canonicalization on parse: closed cut at sqrt(2) prints open.
        assert_eq!(parse_ideal(">=sqrt(2)", &g).unwrap().to_string(), ">sqrt(2)");
    }

    #[test]
    fn elements_round_trip() {
        let f = FieldDescriptor::laurent_q();
        for text in [
            "t^(1/2)+2*t^(2/3)",
            "-1/2",
            "(1+t)/(1-t)",
            "t^(-1)",
            "0",
            "(t^(1/2)-7)/(1+3*t^2)",
        ] {
            let e = parse_elem(text, &f).unwrap();
            let printed = e.to_string();
            let back = parse_elem(&printed, &f).unwrap();
            assert_eq!(e, back, "text {text} printed {printed}");
        }
        // Example from the element grammar.
        let e = parse_elem("t^(1/2)+2*t^(2/3)", &f).unwrap();
        assert_eq!(
            e.value(&f),
            crate::ordgroup::Val::Fin(crate::ordgroup::rational_value(1, 2))
        );
    }

    #[test]
    fn ratfuncs_round_trip() {
        let f = FieldDescriptor::laurent_q();
        for text in [
            "(X-t)/t",
            "X^2-t",
            "(X)/(X-1)",
            "1/X",
            "(X+1)/(X-1)",
            "X^3+2*t^(1/2)*X-5",
        ] {
            let phi = parse_ratfunc(text, &f).unwrap();
            let printed = phi.to_string();
            let back = parse_ratfunc(&printed, &f).unwrap();
            assert_eq!(phi, back, "text {text} printed {printed}");
        }
        // Power notation and division interact predictably.
        let a = parse_ratfunc("X^-2", &f).unwrap();
        let b = parse_ratfunc("1/X^2", &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn padic_elements() {
        let f = FieldDescriptor::PadicQ(5);
        let e = parse_elem("50/3", &f).unwrap();
        assert_eq!(
            e.value(&f),
            crate::ordgroup::Val::Fin(int_value(2))
        );
        assert!(parse_elem("t", &f).is_err());
    }

    #[test]
    fn sequence_specs() {
        let seq = parse_sequence("pcv(alpha=0, breadth=\">=1\")", None).unwrap();
        assert_eq!(seq.kind(), SeqKind::Pcv);
        assert_eq!(seq.breadth_ideal().to_string(), ">=1");
        // Round trip through display.
        let printed = seq.to_string();
        let back = parse_sequence(&printed, None).unwrap();
        assert_eq!(back.kind(), seq.kind());
        assert_eq!(back.breadth_ideal(), seq.breadth_ideal());

        let seq = parse_sequence("pdv(alpha=0, breadth=\">0\") field=laurentQ", None).unwrap();
        assert_eq!(seq.kind(), SeqKind::Pdv);

        let seq = parse_sequence("cauchy(limit=-1/4) field=padic:5", None).unwrap();
        assert_eq!(seq.kind(), SeqKind::Cauchy);

        let seq = parse_sequence("pcv(alpha=0, breadth=\">sqrt(2)\")", None).unwrap();
        assert_eq!(seq.breadth_ideal(), &IdealSpec::open_at(sqrt_value(2), &FieldDescriptor::laurent_q().group()).unwrap());

        // Stationary over a finite residue field: the constructor refuses.
        let err = parse_sequence("pst(alpha=0, breadth=\">=1\") field=padic:5", None).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("residue")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let f = FieldDescriptor::laurent_q();
        let err = parse_ratfunc("X^2 + * 3", &f).unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert!(pos >= 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_field("laurentQ:fp:6").is_err());
        assert!(parse_ideal(">=junk", &f.group()).is_err());
    }
}
