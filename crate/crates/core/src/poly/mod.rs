//! Exact sparse polynomials and the polynomial invariants built on them.

pub mod identities;
pub mod invariants;
mod laurent;

pub use laurent::Laurent;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// Polynomial variables, in serialization order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    A,
    B,
    T,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::A, Var::B, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z', 'a', 'b', 't'][self.index()]
    }
}

/// Exponents in half units: `n` stands for the exponent `n/2`.
pub type Exponents = [u32; 6];

/// A polynomial in `x, y, z, a, b, t` with integer coefficients and
/// non-negative half-integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0; 6], c)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 6];
        e[v.index()] = 2;
        Self::monomial(e, 1)
    }

    /// `c * v^(half/2)`.
    pub fn var_pow_half(v: Var, half: u32) -> Self {
        let mut e = [0; 6];
        e[v.index()] = half;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * c);
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Highest exponent of `v`, in half units.
    pub fn degree_half(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    /// Whether every exponent is a whole number.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|k| k % 2 == 0))
    }

    /// Coefficient of `v^(half/2)` as a polynomial in the other variables.
    pub fn coefficient(&self, v: Var, half: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[v.index()] == half {
                let mut rest = *e;
                rest[v.index()] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Exact value at `point`. Odd half-unit exponents use the supplied
    /// square roots.
    pub fn eval(&self, point: &Point) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let k = e[v.index()];
                if k != 0 {
                    term *= point.power_half(v, k as i64);
                }
            }
            total += term;
        }
        total
    }

    /// Substitutes a Laurent polynomial in `t` for each variable. All
    /// exponents must be whole numbers.
    pub fn eval_laurent(&self, subs: &[Laurent; 6]) -> Option<Laurent> {
        let mut total = Laurent::zero();
        for (e, c) in &self.terms {
            let mut term = Laurent::constant(c.clone());
            for v in Var::ALL {
                let k = e[v.index()];
                if k % 2 != 0 {
                    return None;
                }
                if k != 0 {
                    term = &term * &subs[v.index()].pow(k / 2);
                }
            }
            total = &total + &term;
        }
        Some(total)
    }
}

/// `(v + shift)^k`, expanded.
pub fn shifted_power(v: Var, shift: i64, k: u32) -> MPolynomial {
    let mut out = MPolynomial::zero();
    let mut binom = BigInt::one();
    let s = BigInt::from(shift);
    for i in 0..=k {
        // term C(k,i) v^i shift^(k-i)
        let c = &binom * Pow::pow(&s, k - i);
        let mut e = [0; 6];
        e[v.index()] = 2 * i;
        out.add_term(e, c);
        binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    out
}

/// Expands `Σ count · Π_v (v + shift_v)^(e_v/2)` from a table of exponent
/// counts. Shifted variables must have whole exponents.
pub fn expand_counts<'a, I>(counts: I, shift: [i64; 6]) -> MPolynomial
where
    I: IntoIterator<Item = (&'a Exponents, &'a u64)>,
{
    let mut cache: BTreeMap<(usize, u32), MPolynomial> = BTreeMap::new();
    let mut out = MPolynomial::zero();
    for (e, &n) in counts {
        let mut plain = [0; 6];
        let mut term = MPolynomial::constant(n);
        for v in Var::ALL {
            let i = v.index();
            if shift[i] == 0 {
                plain[i] = e[i];
            } else {
                assert!(e[i] % 2 == 0, "shifted variable with half exponent");
                let f = cache
                    .entry((i, e[i]))
                    .or_insert_with(|| shifted_power(v, shift[i], e[i] / 2));
                term = &term * &*f;
            }
        }
        out = &out + &(&term * &MPolynomial::monomial(plain, 1));
    }
    out
}

impl Add for &MPolynomial {
    type Output = MPolynomial;
    fn add(self, rhs: &MPolynomial) -> MPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MPolynomial {
    type Output = MPolynomial;
    fn sub(self, rhs: &MPolynomial) -> MPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MPolynomial {
    type Output = MPolynomial;
    fn neg(self) -> MPolynomial {
        MPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &MPolynomial {
    type Output = MPolynomial;
    fn mul(self, rhs: &MPolynomial) -> MPolynomial {
        let mut out = MPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..6 {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPolynomial {
            type Output = MPolynomial;
            fn $m(self, rhs: MPolynomial) -> MPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    for v in Var::ALL {
        let k = e[v.index()];
        match k {
            0 => {}
            2 => write!(f, "{}", v.name())?,
            k if k % 2 == 0 => write!(f, "{}^{}", v.name(), k / 2)?,
            k => write!(f, "{}^({}/2)", v.name(), k)?,
        }
    }
    Ok(())
}

/// Terms in increasing lexicographic order of exponent vectors over
/// `x, y, z, a, b, t`, e.g. `1 + 3z + 2z^2 + xz^2`.
impl fmt::Display for MPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let constant = e.iter().all(|&k| k == 0);
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write_monomial(f, e)?;
        }
        Ok(())
    }
}

/// An evaluation point. Each variable has a rational value and optionally
/// a rational square root, needed for half-integer exponents.
#[derive(Clone, Debug)]
pub struct Point {
    values: [BigRational; 6],
    roots: [Option<BigRational>; 6],
}

impl Point {
    pub fn new(values: [BigRational; 6]) -> Self {
        Point {
            values,
            roots: Default::default(),
        }
    }

    pub fn zeros() -> Self {
        Self::new(std::array::from_fn(|_| BigRational::zero()))
    }

    #[must_use]
    pub fn with(mut self, v: Var, value: BigRational) -> Self {
        self.values[v.index()] = value;
        self.roots[v.index()] = None;
        self
    }

    /// Sets `v = root^2`, keeping the root for half exponents.
    #[must_use]
    pub fn with_root(mut self, v: Var, root: BigRational) -> Self {
        self.values[v.index()] = &root * &root;
        self.roots[v.index()] = Some(root);
        self
    }

    pub fn value(&self, v: Var) -> &BigRational {
        &self.values[v.index()]
    }

    /// `v^(half/2)`; `half` may be negative.
    pub fn power_half(&self, v: Var, half: i64) -> BigRational {
        let i = v.index();
        let (base, n) = if half % 2 == 0 {
            (&self.values[i], half / 2)
        } else {
            let r = self.roots[i]
                .as_ref()
                .unwrap_or_else(|| panic!("half exponent of {} without a square root", v.name()));
            (r, half)
        };
        pow_rational(base, n)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| !self.values[v.index()].is_zero() || self.roots[v.index()].is_some())
            .map(|v| match &self.roots[v.index()] {
                Some(r) => format!("{}=({})^2", v.name(), r),
                None => format!("{}={}", v.name(), self.values[v.index()]),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `base^n` for any integer `n`; panics on `0^n` with `n < 0`.
pub fn pow_rational(base: &BigRational, n: i64) -> BigRational {
    if n >= 0 {
        Pow::pow(base, n as u64)
    } else {
        assert!(!base.is_zero(), "division by zero in evaluation");
        Pow::pow(base.recip(), n.unsigned_abs())
    }
}
