//! Weighted-homogeneous polynomials in `ℂ[x, y, z, w]` with grading
//! `(1, 1, 2, 5)`, exact over `ℚ(i)`, and the equation parser.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binary::BinaryForm;
use crate::coeff::Coefficient;
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::surface::SurfaceForm;

/// Grading of `(x, y, z, w)`.
pub const WEIGHTS: [u32; 4] = [1, 1, 2, 5];
/// Degree of the defining equation.
pub const SURFACE_DEGREE: u32 = 10;

/// `x^ex · y^ey · z^ez · w^ew`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
    pub ew: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial::new(0, 0, 0, 0);

    pub const fn new(ex: u32, ey: u32, ez: u32, ew: u32) -> Self {
        Self { ex, ey, ez, ew }
    }

    pub fn weighted_degree(&self) -> u32 {
        weighted_degree(self)
    }

    fn print_key(
        &self,
    ) -> (
        core::cmp::Reverse<u32>,
        core::cmp::Reverse<u32>,
        core::cmp::Reverse<u32>,
        u32,
    ) {
        use core::cmp::Reverse;
        (
            Reverse(self.ew),
            Reverse(self.ez),
            Reverse(self.ex),
            self.ey,
        )
    }
}

/// `ex + ey + 2·ez + 5·ew`.
pub fn weighted_degree(m: &Monomial) -> u32 {
    m.ex * WEIGHTS[0] + m.ey * WEIGHTS[1] + m.ez * WEIGHTS[2] + m.ew * WEIGHTS[3]
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(
            self.ex + rhs.ex,
            self.ey + rhs.ey,
            self.ez + rhs.ez,
            self.ew + rhs.ew,
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in [
            ('x', self.ex),
            ('y', self.ey),
            ('z', self.ez),
            ('w', self.ew),
        ] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial stored as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WPolynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl WPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Coefficient) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coefficient)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Adds `c·m`, merging with an existing term and dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coefficient> {
        self.terms.get(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    /// `Some(d)` when every term has weighted degree `d`; `None` for the
    /// zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(weighted_degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, a)| (*m, a * c)))
    }

    /// Terms sorted the way they are printed: by decreasing power of `w`,
    /// then of `z`, then of `x`.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|(m, _)| m.print_key());
        v
    }
}

impl Add for &WPolynomial {
    type Output = WPolynomial;
    fn add(self, rhs: &WPolynomial) -> WPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &WPolynomial {
    type Output = WPolynomial;
    fn sub(self, rhs: &WPolynomial) -> WPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &WPolynomial {
    type Output = WPolynomial;
    fn mul(self, rhs: &WPolynomial) -> WPolynomial {
        let mut out = WPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &WPolynomial {
    type Output = WPolynomial;
    fn neg(self) -> WPolynomial {
        WPolynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, -c)))
    }
}

impl fmt::Display for WPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative_real();
            let mag = if negative { -c } else { c };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_unit_real() == Some(true);
            if m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for WPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> core::result::Result<Self, ParseError> {
        parse_polynomial(s)
    }
}

/// Parses an equation such as `w^2 - z^5 - 3/2*x^2y^6z` or
/// `(1+2i)x^10 + y^10`. Like terms are merged.
pub fn parse_polynomial(text: &str) -> core::result::Result<WPolynomial, ParseError> {
    Parser::new(text).polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn polynomial(mut self) -> core::result::Result<WPolynomial, ParseError> {
        let mut poly = WPolynomial::zero();
        let mut negative = false;
        if self.eat(b'-') {
            negative = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let (m, c) = self.term()?;
            poly.add_term(m, &if negative { -c } else { c });
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(other) => {
                    return Err(ParseError::syntax(
                        self.pos,
                        alloc::format!("unexpected '{}'", other as char),
                    ))
                }
            }
            self.pos += 1;
        }
        Ok(poly)
    }

    fn term(&mut self) -> core::result::Result<(Monomial, Coefficient), ParseError> {
        let start = self.pos;
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.rational()?),
            Some(b'(') => Some(self.complex()?),
            _ => None,
        };
        let mut mono = Monomial::ONE;
        let mut factors = 0usize;
        loop {
            let star = self.eat(b'*');
            match self.peek() {
                Some(b) if b.is_ascii_alphabetic() => {
                    mono = mono * self.factor()?;
                    factors += 1;
                }
                _ if star => {
                    return Err(ParseError::syntax(
                        self.pos,
                        "expected a variable after '*'",
                    ));
                }
                _ => break,
            }
        }
        if coeff.is_none() && factors == 0 {
            self.skip_ws();
            return Err(ParseError::syntax(start.max(self.pos), "expected a term"));
        }
        Ok((mono, coeff.unwrap_or_else(Coefficient::one)))
    }

    fn factor(&mut self) -> core::result::Result<Monomial, ParseError> {
        let at = self.pos;
        let name = self.src[self.pos];
        self.pos += 1;
        let idx = match name {
            b'x' => 0,
            b'y' => 1,
            b'z' => 2,
            b'w' => 3,
            other => {
                return Err(ParseError {
                    pos: at,
                    kind: ParseErrorKind::UnknownVariable(other as char),
                })
            }
        };
        let mut e = 1u32;
        if self.eat(b'^') {
            if self.peek() == Some(b'-') {
                return Err(ParseError {
                    pos: self.pos,
                    kind: ParseErrorKind::NegativeExponent,
                });
            }
            let digits_at = self.pos;
            let n = self.integer()?;
            e = u32::try_from(&n)
                .map_err(|_| ParseError::syntax(digits_at, "exponent too large"))?;
        }
        let mut ex = [0u32; 4];
        ex[idx] = e;
        Ok(Monomial::new(ex[0], ex[1], ex[2], ex[3]))
    }

    fn integer(&mut self) -> core::result::Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::syntax(start, "expected digits"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        s.parse::<BigInt>()
            .map_err(|_| ParseError::syntax(start, "bad integer"))
    }

    fn rational(&mut self) -> core::result::Result<Coefficient, ParseError> {
        Ok(Coefficient::real(self.rational_value()?))
    }

    fn rational_value(&mut self) -> core::result::Result<BigRational, ParseError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(ParseError::syntax(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `(a+bi)`, `(a)`, `(bi)`, `(-i)` and similar.
    fn complex(&mut self) -> core::result::Result<Coefficient, ParseError> {
        let open = self.pos;
        self.eat(b'(');
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        let mut first = true;
        loop {
            if self.eat(b')') {
                if first {
                    return Err(ParseError::syntax(open, "empty parentheses"));
                }
                break;
            }
            let negative = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                return Err(ParseError::syntax(self.pos, "expected '+', '-' or ')'"));
            };
            let at = self.pos;
            let (value, imaginary) = match self.peek() {
                Some(b'i') => {
                    self.pos += 1;
                    (BigRational::one(), true)
                }
                Some(b) if b.is_ascii_digit() => {
                    let v = self.rational_value()?;
                    let imag = self.eat(b'i');
                    (v, imag)
                }
                None => return Err(ParseError::syntax(self.pos, "unclosed parenthesis")),
                Some(_) => return Err(ParseError::syntax(at, "expected a number or 'i'")),
            };
            let value = if negative { -value } else { value };
            let slot = if imaginary { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(ParseError::syntax(
                    at,
                    "repeated part in complex coefficient",
                ));
            }
            *slot = Some(value);
            first = false;
        }
        Ok(Coefficient::new(
            re.unwrap_or_else(BigRational::zero),
            im.unwrap_or_else(BigRational::zero),
        ))
    }
}

/// Splits `c·w² − Σ qᵢ(x,y) zⁱ` into its slices.
pub fn slice_decompose(p: &WPolynomial) -> Result<SurfaceForm> {
    let w2 = Monomial::new(0, 0, 0, 2);
    let mut q: [BinaryForm; 6] = core::array::from_fn(|i| BinaryForm::zero(slice_degree(i)));
    let mut w2_coeff = None;
    for (m, c) in p.terms() {
        let d = weighted_degree(m);
        if d != SURFACE_DEGREE {
            return Err(Error::NotHomogeneous { found: d });
        }
        match m.ew {
            0 => {
                let i = m.ez as usize;
                q[i].set(m.ex as usize, -c);
            }
            1 => return Err(Error::ResidualWTerms),
            _ if *m == w2 => w2_coeff = Some(c.clone()),
            _ => unreachable!("degree 10 forces ew <= 2"),
        }
    }
    let w2_coeff = w2_coeff.ok_or(Error::MissingW2)?;
    Ok(SurfaceForm { q, w2_coeff })
}

/// Degree of the binary form multiplying `zⁱ`.
pub const fn slice_degree(i: usize) -> usize {
    10 - 2 * i
}

/// Convenience: `parse_polynomial` mapped into the crate error.
pub fn parse(text: &str) -> Result<WPolynomial> {
    Ok(parse_polynomial(text)?)
}
