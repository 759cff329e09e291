//! A bra-ket expression mini-language, so states can be typed in the way
//! papers print them: `(|000>+|111>)/sqrt(2)`.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff? ket | coeff '(' expr ')' | '(' expr ')' ('/' coeff)?
//! coeff  := factor ('/' factor)?
//! factor := number 'i'? | 'i' | 'sqrt(' number ')' | '(' number ('+'|'-') number 'i' ')'
//! ket    := '|' [01]+ '>'
//! number := digits ('.' digits)? | '.' digits
//! ```
//!
//! `+`/`-` associate left to right; a coefficient binds tighter than either.
//! Division after a parenthesized group covers the common `( ... )/sqrt(2)`
//! form, and the parenthesized complex form covers round-tripping rendered
//! complex amplitudes.

use num_complex::Complex64;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::states::{StateVector, MAX_QUBITS};

/// Parse tree of a ket expression.
#[derive(Clone, Debug, PartialEq)]
pub enum KetExpr {
    /// A basis ket, stored as its bitstring, e.g. `"011"`.
    Ket(String),
    /// Scalar multiple; parse-time division is folded into the scalar.
    Scaled(Complex64, Box<KetExpr>),
    Sum(Box<KetExpr>, Box<KetExpr>),
    Diff(Box<KetExpr>, Box<KetExpr>),
}

/// Parse `text` into a [`StateVector`].
///
/// With `normalize` set the amplitude vector is rescaled to unit norm;
/// otherwise its norm must already be 1 within 1e-9.
pub fn parse_ket(text: &str, normalize: bool) -> Result<StateVector> {
    let expr = parse_ket_expr(text)?;
    let (len, amps) = eval(&expr)?;
    if len > MAX_QUBITS {
        return Err(Error::SizeOutOfRange {
            what: "ket length",
            value: len,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let dim = 1usize << len;
    let mut vec = vec![Complex64::new(0.0, 0.0); dim];
    for (idx, amp) in amps {
        vec[idx] += amp;
    }
    let norm = vec.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-14 {
        return Err(Error::ZeroVector);
    }
    if !normalize && (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm });
    }
    // Rescaling the residual slack keeps the StateVector invariant exact.
    StateVector::normalized(len, vec)
}

/// Parse `text` into its expression tree without evaluating it.
pub fn parse_ket_expr(text: &str) -> Result<KetExpr> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

/// Render a state as a sum of basis kets, omitting amplitudes below `tol`.
///
/// Coefficients are printed with eight decimal places (trailing zeros
/// trimmed), so `render_ket` output feeds back through [`parse_ket`] with a
/// per-amplitude error no larger than 5e-9. Complex amplitudes render as
/// `(re+imi)`.
pub fn render_ket(psi: &StateVector, tol: f64) -> String {
    assert!(tol >= 0.0, "tol must be nonnegative");
    let n = psi.n_qubits();
    let mut out = String::new();
    for (idx, amp) in psi.amplitudes().iter().enumerate() {
        if amp.norm() < tol || amp.norm() == 0.0 {
            continue;
        }
        let bits: String = (0..n)
            .map(|q| if idx >> (n - 1 - q) & 1 == 1 { '1' } else { '0' })
            .collect();
        let (joiner, coeff) = fmt_amplitude(*amp);
        if out.is_empty() {
            if joiner == '-' {
                out.push('-');
            }
        } else {
            out.push(' ');
            out.push(joiner);
            out.push(' ');
        }
        out.push_str(&coeff);
        out.push('|');
        out.push_str(&bits);
        out.push('>');
    }
    if out.is_empty() {
        // Every amplitude fell below tol; print an explicit zero term.
        out = format!("0|{}>", "0".repeat(n));
    }
    out
}

/// Sign to join with, plus the unsigned coefficient text.
fn fmt_amplitude(a: Complex64) -> (char, String) {
    let re_small = a.re.abs() < 1e-15;
    let im_small = a.im.abs() < 1e-15;
    if im_small {
        (if a.re < 0.0 { '-' } else { '+' }, fmt_f64(a.re.abs()))
    } else if re_small {
        (
            if a.im < 0.0 { '-' } else { '+' },
            format!("{}i", fmt_f64(a.im.abs())),
        )
    } else {
        let im_sign = if a.im < 0.0 { '-' } else { '+' };
        (
            '+',
            format!("({}{}{}i)", fmt_signed(a.re), im_sign, fmt_f64(a.im.abs())),
        )
    }
}

fn fmt_f64(x: f64) -> String {
    let mut s = format!("{x:.8}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

fn fmt_signed(x: f64) -> String {
    if x < 0.0 {
        format!("-{}", fmt_f64(-x))
    } else {
        fmt_f64(x)
    }
}

/// Evaluate a tree to (ket length, sparse amplitudes).
fn eval(expr: &KetExpr) -> Result<(usize, HashMap<usize, Complex64>)> {
    match expr {
        KetExpr::Ket(bits) => {
            let mut idx = 0usize;
            for b in bits.chars() {
                idx = (idx << 1) | usize::from(b == '1');
            }
            let mut m = HashMap::new();
            m.insert(idx, Complex64::new(1.0, 0.0));
            Ok((bits.len(), m))
        }
        KetExpr::Scaled(factor, inner) => {
            let (len, mut m) = eval(inner)?;
            for v in m.values_mut() {
                *v *= factor;
            }
            Ok((len, m))
        }
        KetExpr::Sum(a, b) => combine(a, b, Complex64::new(1.0, 0.0)),
        KetExpr::Diff(a, b) => combine(a, b, Complex64::new(-1.0, 0.0)),
    }
}

fn combine(
    a: &KetExpr,
    b: &KetExpr,
    sign: Complex64,
) -> Result<(usize, HashMap<usize, Complex64>)> {
    let (len_a, mut m) = eval(a)?;
    let (len_b, m_b) = eval(b)?;
    if len_a != len_b {
        return Err(Error::DimensionMismatch {
            expected: len_a,
            found: len_b,
        });
    }
    for (idx, amp) in m_b {
        *m.entry(idx).or_insert(Complex64::new(0.0, 0.0)) += sign * amp;
    }
    Ok((len_a, m))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", ch as char)))
        }
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KetExpr> {
        self.skip_ws();
        // Optional leading sign, so rendered states with a negative first
        // amplitude parse back.
        let negate = if self.eat(b'-') {
            true
        } else {
            let _ = self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = KetExpr::Scaled(Complex64::new(-1.0, 0.0), Box::new(acc));
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = KetExpr::Sum(Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = KetExpr::Diff(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<KetExpr> {
        self.skip_ws();
        match self.peek() {
            Some(b'|') => Ok(KetExpr::Ket(self.ket()?)),
            Some(b'(') => {
                // Either a complex coefficient like (0.5-0.2i) or a group.
                if let Some(z) = self.try_complex_coeff() {
                    self.scaled_operand(z)
                } else {
                    self.group()
                }
            }
            Some(b) if b.is_ascii_digit() || b == b'.' || b == b's' || b == b'i' => {
                let z = self.coeff()?;
                self.scaled_operand(z)
            }
            Some(b) => Err(self.err(&format!(
                "expected ket, coefficient, or `(`, found `{}`",
                b as char
            ))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// After a coefficient: a ket or a parenthesized group.
    fn scaled_operand(&mut self, z: Complex64) -> Result<KetExpr> {
        self.skip_ws();
        match self.peek() {
            Some(b'|') => Ok(KetExpr::Scaled(z, Box::new(KetExpr::Ket(self.ket()?)))),
            Some(b'(') => {
                let g = self.group()?;
                Ok(KetExpr::Scaled(z, Box::new(g)))
            }
            _ => Err(self.err("expected ket or `(` after coefficient")),
        }
    }

    /// `'(' expr ')' ('/' coeff)?`
    fn group(&mut self) -> Result<KetExpr> {
        self.expect(b'(')?;
        let inner = self.expr()?;
        self.skip_ws();
        self.expect(b')')?;
        self.skip_ws();
        if self.eat(b'/') {
            let d = self.coeff()?;
            if d.norm() < 1e-300 {
                return Err(self.err("division by zero"));
            }
            Ok(KetExpr::Scaled(
                Complex64::new(1.0, 0.0) / d,
                Box::new(inner),
            ))
        } else {
            Ok(inner)
        }
    }

    fn ket(&mut self) -> Result<String> {
        self.expect(b'|')?;
        let start = self.pos;
        while matches!(self.peek(), Some(b'0') | Some(b'1')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected bitstring of 0s and 1s"));
        }
        let bits = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii bits")
            .to_string();
        self.expect(b'>')?;
        Ok(bits)
    }

    /// `factor ('/' factor)?`
    fn coeff(&mut self) -> Result<Complex64> {
        let num = self.factor()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let den = self.factor()?;
            if den.norm() < 1e-300 {
                return Err(self.err("division by zero"));
            }
            Ok(num / den)
        } else {
            Ok(num)
        }
    }

    /// `number 'i'? | 'i' | 'sqrt(' number ')'`
    fn factor(&mut self) -> Result<Complex64> {
        self.skip_ws();
        match self.peek() {
            Some(b's') => {
                self.keyword("sqrt")?;
                self.expect(b'(')?;
                let x = self.number()?;
                self.expect(b')')?;
                Ok(Complex64::new(x.sqrt(), 0.0))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Complex64::new(0.0, 1.0))
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let x = self.number()?;
                if self.eat(b'i') {
                    Ok(Complex64::new(0.0, x))
                } else {
                    Ok(Complex64::new(x, 0.0))
                }
            }
            _ => Err(self.err("expected coefficient")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        if self.bytes[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{word}`")))
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start || (self.pos == start + 1 && self.bytes[start] == b'.') {
            return Err(self.err("expected number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<f64>().map_err(|_| self.err("bad number"))
    }

    /// Tentatively parse `(a+bi)` / `(a-bi)`; rolls back on any mismatch.
    fn try_complex_coeff(&mut self) -> Option<Complex64> {
        let saved = self.pos;
        let attempt = (|| -> Result<Complex64> {
            self.expect(b'(')?;
            self.skip_ws();
            let re_neg = self.eat(b'-');
            let re = self.number()?;
            self.skip_ws();
            let im_neg = match self.bump() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Err(self.err("not a complex coefficient")),
            };
            self.skip_ws();
            let im = self.number()?;
            self.expect(b'i')?;
            self.skip_ws();
            self.expect(b')')?;
            Ok(Complex64::new(
                if re_neg { -re } else { re },
                if im_neg { -im } else { im },
            ))
        })();
        match attempt {
            Ok(z) => Some(z),
            Err(_) => {
                self.pos = saved;
                None
            }
        }
    }
}
