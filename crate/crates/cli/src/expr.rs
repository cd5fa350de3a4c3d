//! Expression language for `compute`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' '-'? int)?
//! atom   := int | 'q' | 'p' | 't' | '(' expr ')' | '[' int (',' int)* ']'
//! ```

use qgrass::scalar::{p_power, q_power};
use qgrass::{maximal_minor, IndexSet, LaurentScalar, NCPoly};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Scalar(LaurentScalar),
    Poly(NCPoly),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(char),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| CliError::Parse(format!("integer {text} is too large")))?;
                out.push((start, Token::Int(v)));
            }
            'q' | 'p' | 't' => {
                out.push((i, Token::Ident(c)));
                i += 1;
            }
            '+' | '-' | '*' | '^' | '(' | ')' | '[' | ']' | ',' => {
                out.push((i, Token::Sym(c)));
                i += 1;
            }
            _ => return Err(CliError::Parse(format!("unexpected character '{c}' at {i}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    m: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> String {
        self.tokens
            .get(self.pos)
            .map_or("end of input".to_string(), |(o, _)| format!("position {o}"))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(CliError::Parse(format!("expected '{c}' at {}", self.offset())))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.peek() {
            Some(&Token::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(CliError::Parse(format!("expected an integer at {}", self.offset()))),
        }
    }

    fn expr(&mut self) -> Result<Value, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, false);
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, CliError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, CliError> {
        if self.eat('-') {
            let v = self.factor()?;
            return Ok(negate(v));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let k = self.int()?;
        let k = if negative { -k } else { k };
        match base {
            Value::Scalar(s) => s
                .powi(k)
                .map(Value::Scalar)
                .ok_or_else(|| CliError::Parse(format!("({s})^{k} is not a Laurent polynomial"))),
            Value::Poly(p) if k >= 0 => {
                let k = u32::try_from(k).map_err(|_| CliError::Parse(format!("exponent {k} is too large")))?;
                Ok(Value::Poly(p.pow(k)))
            }
            Value::Poly(_) => Err(CliError::Parse(
                "negative powers of matrix elements are not defined".into(),
            )),
        }
    }

    fn atom(&mut self) -> Result<Value, CliError> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(CliError::Parse("unexpected end of input".into()));
        };
        self.pos += 1;
        match tok {
            Token::Int(v) => Ok(Value::Scalar(LaurentScalar::from_int(v))),
            Token::Ident('q') => Ok(Value::Scalar(q_power(1, self.m))),
            Token::Ident('p') => Ok(Value::Scalar(p_power(1))),
            Token::Ident(_) => Ok(Value::Scalar(LaurentScalar::t_pow(1))),
            Token::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Token::Sym('[') => {
                let mut elems = Vec::new();
                loop {
                    let v = self.int()?;
                    let v = usize::try_from(v).map_err(|_| CliError::Parse(format!("index {v} is negative")))?;
                    elems.push(v);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                let set = IndexSet::new(elems, self.n).map_err(|e| CliError::Parse(e.to_string()))?;
                let minor = maximal_minor(&set, self.m, self.n).map_err(|e| CliError::Parse(e.to_string()))?;
                Ok(Value::Poly(minor))
            }
            Token::Sym(c) => Err(CliError::Parse(format!("unexpected '{c}' at {offset}"))),
        }
    }

    fn to_poly(&self, v: Value) -> NCPoly {
        match v {
            Value::Scalar(s) => NCPoly::scalar(self.m, self.n, s),
            Value::Poly(p) => p,
        }
    }

    fn add(&self, a: Value, b: Value, subtract: bool) -> Value {
        let b = if subtract { negate(b) } else { b };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (a, b) => Value::Poly(&self.to_poly(a) + &self.to_poly(b)),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(x), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(x)) => Value::Poly(p.scale(&x)),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(&x * &y),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Poly(p) => Value::Poly(-&p),
    }
}

/// Evaluates `src` in `O_q(M_{m,n})`; minor literals are maximal minors.
pub fn evaluate(src: &str, m: usize, n: usize) -> Result<NCPoly, CliError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        m,
        n,
    };
    if parser.tokens.is_empty() {
        return Err(CliError::Parse("empty expression".into()));
    }
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(CliError::Parse(format!("trailing input at {}", parser.offset())));
    }
    Ok(parser.to_poly(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgrass::scalar::q_minus_q_inv;

    fn minor(v: &[usize]) -> NCPoly {
        maximal_minor(&IndexSet::new(v.to_vec(), 4).unwrap(), 2, 4).unwrap()
    }

    #[test]
    fn commutation_is_zero() {
        assert!(evaluate("[1,2]*[1,3] - q*[1,3]*[1,2]", 2, 4).unwrap().is_zero());
    }

    #[test]
    fn correction_term() {
        let v = evaluate("[1,3]*[2,4] - [2,4]*[1,3]", 2, 4).unwrap();
        assert_eq!(v, (&minor(&[1, 4]) * &minor(&[2, 3])).scale(&q_minus_q_inv(2)));
    }

    #[test]
    fn scalars_and_powers() {
        assert_eq!(evaluate("q^-1 * q", 2, 4).unwrap(), NCPoly::one(2, 4));
        assert_eq!(evaluate("p^2 - q^2", 2, 4).unwrap(), NCPoly::zero(2, 4));
        assert_eq!(evaluate("t^2 - q", 2, 4).unwrap(), NCPoly::zero(2, 4));
        assert_eq!(evaluate("([1,2])^2", 2, 4).unwrap(), &minor(&[1, 2]) * &minor(&[1, 2]));
        assert_eq!(
            evaluate("-(3 - 1)", 2, 4).unwrap(),
            NCPoly::scalar(2, 4, LaurentScalar::from_int(-2))
        );
        assert_eq!(
            evaluate("(q - q^-1) * [1,4]", 2, 4).unwrap(),
            minor(&[1, 4]).scale(&q_minus_q_inv(2))
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "[1,1]", "[1,5]", "[1]", "", "[1,2] *", "(1", "1 2", "x", "[1,2]^-1", "(1+q)^-1",
        ] {
            assert!(matches!(evaluate(bad, 2, 4), Err(CliError::Parse(_))), "{bad}");
        }
    }
}
