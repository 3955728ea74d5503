//! Exact arithmetic in `K = Q[c]/(c^2 - 5/4)`.
//!
//! Every coefficient in the crate lives here. The golden ratio is
//! `phi = 1/2 + c`, so `sqrt(5) = 2c`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `c * c`
fn c_squared() -> Rational {
    Rational::new(BigInt::from(5), BigInt::from(4))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a rational, always `p/q` with `q > 0`.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("rational `{s}` lacks a `/`")))?;
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// An element `a + b*c` of `K`, with `c^2 = 5/4`.
///
/// Both components are reduced rationals, so the derived `Eq` and `Hash`
/// agree with field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        FieldElement { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The generator `c` with `c^2 = 5/4`.
    pub fn c() -> Self {
        FieldElement { a: Rational::zero(), b: Rational::one() }
    }

    /// The golden ratio `1/2 + c`.
    pub fn phi() -> Self {
        FieldElement { a: rat(1, 2), b: Rational::one() }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn c_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        FieldElement { a: self.a.clone(), b: -&self.b }
    }

    /// `N(a + bc) = a^2 - (5/4) b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - c_squared() * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Ok(FieldElement { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        FieldElement { a: &self.a * r, b: &self.b * r }
    }

    /// Deterministic text form `p/q+r/s*c`.
    pub fn canonical_string(&self) -> String {
        format!("{}+{}*c", rational_string(&self.a), rational_string(&self.b))
    }

    pub fn parse_canonical(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_suffix("*c")
            .ok_or_else(|| Error::Parse(format!("field element `{s}` must end in `*c`")))?;
        let (a, b) = body
            .split_once('+')
            .ok_or_else(|| Error::Parse(format!("field element `{s}` lacks `+`")))?;
        let a = parse_rational(a)?;
        let b = parse_rational(b)?;
        let fe = FieldElement { a, b };
        // reject non-reduced input so that print(parse(s)) == s
        if fe.canonical_string() != s.trim() {
            return Err(Error::Parse(format!("field element `{s}` is not in canonical form")));
        }
        Ok(fe)
    }

    /// Bit size of the four integers in the representation; used to pick
    /// small pivots during elimination.
    pub fn height(&self) -> u64 {
        self.a.numer().bits() + self.a.denom().bits() + self.b.numer().bits() + self.b.denom().bits()
    }

    /// `sign(a + b*sqrt(5)/2)` as a real number.
    pub fn signum(&self) -> i8 {
        // compare a with -b*c; square both sides when signs agree
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let a2 = &self.a * &self.a;
        let b2 = c_squared() * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else if a2 < b2 {
            sb
        } else {
            0
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        fn f(r: &Rational) -> f64 {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
        f(&self.a) + f(&self.b) * 5f64.sqrt() / 2.0
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement { a: Rational::one(), b: Rational::zero() }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl FromStr for FieldElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_canonical(s)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &'a FieldElement) -> FieldElement {
        FieldElement { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &'a FieldElement) -> FieldElement {
        FieldElement { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &'a FieldElement) -> FieldElement {
        // (a1 + b1 c)(a2 + b2 c) = a1 a2 + (5/4) b1 b2 + (a1 b2 + a2 b1) c
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => FieldElement::from_rational(&self.a * &o.a),
            (true, false) => FieldElement { a: &self.a * &o.a, b: &self.a * &o.b },
            (false, true) => FieldElement { a: &self.a * &o.a, b: &self.b * &o.a },
            (false, false) => FieldElement {
                a: &self.a * &o.a + c_squared() * (&self.b * &o.b),
                b: &self.a * &o.b + &o.a * &self.b,
            },
        }
    }
}

impl<'a> Div<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, o: &'a FieldElement) -> FieldElement {
        self * &o.inverse().expect("division by zero in K")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -&self.a, b: -&self.b }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &'a FieldElement) {
        self.a += &o.a;
        if !o.b.is_zero() {
            self.b += &o.b;
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, o: FieldElement) {
        *self += &o;
    }
}

impl<'a> SubAssign<&'a FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &'a FieldElement) {
        self.a -= &o.a;
        if !o.b.is_zero() {
            self.b -= &o.b;
        }
    }
}

impl<'a> MulAssign<&'a FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &'a FieldElement) {
        *self = &*self * o;
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for FieldElement {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}
