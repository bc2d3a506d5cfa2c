//! Text expressions for cohomology classes.
//!
//! ```text
//! EXPR   := ["+" | "-"] TERM (("+" | "-") TERM)*
//! TERM   := [INT "*"] FACTOR ("*" FACTOR)*
//! FACTOR := "w(" INT "," INT ")"
//! ```
//!
//! Whitespace is ignored and the Unicode minus sign is accepted for `-`.

use num_bigint::BigInt;

use super::{straighten, ArnoldError, CohomologyClass, Generator};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at character {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Arnold(#[from] ArnoldError),
}

/// Parse an expression and straighten it on `n` strands.
pub fn parse_expression(text: &str, n: usize) -> Result<CohomologyClass, ExprError> {
    let chars: Vec<char> = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let mut parser = ExprParser { chars, pos: 0 };
    let mut total = CohomologyClass::zero(n);

    let mut negative = match parser.peek() {
        Some('-') => {
            parser.pos += 1;
            true
        }
        Some('+') => {
            parser.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (coeff, factors) = parser.term()?;
        let coeff = if negative { -coeff } else { coeff };
        total = total.checked_add(&straighten(n, &factors)?.scale(&coeff))?;
        match parser.peek() {
            None => return Ok(total),
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => return Err(parser.error("expected '+', '-' or '*'")),
        }
        parser.pos += 1;
    }
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn index(&mut self) -> Result<usize, ExprError> {
        let start = self.pos;
        let value = self.integer()?;
        usize::try_from(value).map_err(|_| ExprError::Syntax {
            pos: start,
            msg: "strand index is too large".to_string(),
        })
    }

    fn factor(&mut self) -> Result<Generator, ExprError> {
        self.expect('w')?;
        self.expect('(')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect(')')?;
        Ok(Generator::new(i, j)?)
    }

    fn term(&mut self) -> Result<(BigInt, Vec<Generator>), ExprError> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.integer()?;
            self.expect('*')?;
            c
        } else {
            BigInt::from(1)
        };
        let mut factors = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((coeff, factors))
    }
}
